//! Command implementations behind the `hydrowallis` binary.

pub mod commands;
pub mod formats;
pub mod verify;

use std::fmt;
use std::io;

/// Why a command stopped; each kind maps to a process exit code.
#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Verification(String),
    Io(io::Error),
}

impl Failure {
    pub fn exit_code(&self) -> u8 {
        match self {
            Failure::Verification(_) => 1,
            Failure::Usage(_) => 2,
            Failure::Io(_) => 3,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Usage(m) => write!(f, "usage error: {m}"),
            Failure::Verification(m) => write!(f, "verification failed: {m}"),
            Failure::Io(e) => write!(f, "i/o error: {e}"),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

impl From<hydrowallis::Error> for Failure {
    fn from(e: hydrowallis::Error) -> Self {
        use hydrowallis::Error;
        match e {
            Error::Domain(_) | Error::ResourceLimit { .. } | Error::ExponentMismatch { .. } => {
                Failure::Usage(e.to_string())
            }
            _ => Failure::Verification(e.to_string()),
        }
    }
}
