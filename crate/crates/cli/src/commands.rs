//! `ratio`, `pi` and `scan`.

use std::io::Write;

use hydrowallis::exactnum::Enclosure;
use hydrowallis::wallis::MIN_FLOAT_BITS;
use hydrowallis::{accuracy_ratio, pi_estimate_enclosure, ScanSweep};

use crate::formats::{self, JsonArray};
use crate::Failure;

/// Significant decimal digits carried by `bits` binary digits.
pub fn decimal_digits(bits: u32) -> usize {
    ((bits as f64) * std::f64::consts::LOG10_2).floor().max(1.0) as usize
}

fn check_precision(bits: u32) -> Result<(), Failure> {
    if bits < 53 {
        return Err(Failure::Usage(format!("precision must be at least 53 bits, got {bits}")));
    }
    Ok(())
}

/// Exact accuracy ratio and its value, e.g. `8/3 * pi^-1 = 0.848826...`.
pub fn ratio(out: &mut impl Write, ell: u64, dim: u32, bits: u32) -> Result<(), Failure> {
    check_precision(bits)?;
    let r = accuracy_ratio(ell, dim)?;
    let v = r.to_float(bits)?;
    writeln!(out, "{r} = {v:.prec$}", prec = decimal_digits(bits))?;
    Ok(())
}

/// `2 P(L)`, its distance from π, and that distance in units of `π/(4L)`.
pub fn pi(out: &mut impl Write, terms: u64, bits: u32) -> Result<(), Failure> {
    check_precision(bits)?;
    let bits = bits.max(MIN_FLOAT_BITS);
    let est = pi_estimate_enclosure(terms, bits + 16)?;
    let work = bits + 16;
    let pi = Enclosure::pi(work + 32);
    let err = pi.sub(&est, work);
    let scaled = err
        .mul_ratio(4 * terms, 1, work)
        .div(&pi, work)
        .expect("pi is nonzero");
    let digits = decimal_digits(bits);
    writeln!(out, "terms: {terms}")?;
    writeln!(out, "estimate: {:.digits$}", est.midpoint(work).round(bits, hydrowallis::Rounding::NearestEven))?;
    writeln!(out, "abs_error: {:.17}", err.midpoint(work))?;
    writeln!(out, "scaled_error: {:.17}", scaled.midpoint(work))?;
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
    Plot,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ScanRequest {
    pub ell_max: u64,
    pub dim: u32,
    pub step: u64,
    pub format: Format,
    pub precision_bits: u32,
}

/// Streams one record per `ℓ ∈ {0, step, 2·step, ...} ≤ ell_max`.
pub fn scan(out: &mut impl Write, req: &ScanRequest) -> Result<(), Failure> {
    check_precision(req.precision_bits)?;
    let sweep = ScanSweep::new(req.dim, req.ell_max, req.step, req.precision_bits)?;
    match req.format {
        Format::Csv => {
            formats::write_csv_header(out)?;
            for r in sweep {
                formats::write_csv_row(out, &r)?;
            }
        }
        Format::Json => {
            let mut arr = JsonArray::new(&mut *out)?;
            for r in sweep {
                arr.push(&r)?;
            }
            arr.finish()?;
        }
        Format::Plot => {
            formats::write_plot_header(out, req.dim)?;
            for r in sweep {
                formats::write_plot_row(out, &r)?;
            }
        }
    }
    out.flush()?;
    Ok(())
}
