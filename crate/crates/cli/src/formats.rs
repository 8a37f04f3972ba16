//! Output formats for convergence tables.

use std::io::{self, Write};

use hydrowallis::ConvergenceRecord;

pub const CSV_HEADER: &str = "ell,dim,ratio,partial_product,pi_estimate,abs_error";

/// 17 significant digits, enough to round-trip any `f64`. Positional
/// notation for decimal exponents in `[-5, 16]`, scientific otherwise.
pub fn format_f64(x: f64) -> String {
    assert!(x.is_finite(), "table values are finite");
    if x == 0.0 {
        return "0.0".to_string();
    }
    let sci = format!("{:.16e}", x);
    let (mantissa, exp) = sci.split_once('e').expect("scientific format");
    let exp: i32 = exp.parse().expect("integer exponent");
    let negative = mantissa.starts_with('-');
    let digits: String = mantissa.chars().filter(|c| c.is_ascii_digit()).collect();
    let digits = digits.trim_end_matches('0');
    let digits = if digits.is_empty() { "0" } else { digits };
    let sign = if negative { "-" } else { "" };

    if (-5..=16).contains(&exp) {
        let point = exp + 1;
        let body = if point <= 0 {
            format!("0.{}{}", "0".repeat((-point) as usize), digits)
        } else if point as usize >= digits.len() {
            format!("{}{}.0", digits, "0".repeat(point as usize - digits.len()))
        } else {
            let (int, frac) = digits.split_at(point as usize);
            format!("{int}.{frac}")
        };
        format!("{sign}{body}")
    } else {
        let (lead, rest) = digits.split_at(1);
        let rest = if rest.is_empty() { "0" } else { rest };
        format!("{sign}{lead}.{rest}e{exp}")
    }
}

/// Index `L` of the partial product paired with a record: `ℓ + ⌊N/2⌋`.
pub fn product_terms(r: &ConvergenceRecord) -> u64 {
    r.ell + (r.dim / 2) as u64
}

pub fn write_csv_header(w: &mut impl Write) -> io::Result<()> {
    writeln!(w, "{CSV_HEADER}")
}

pub fn write_csv_row(w: &mut impl Write, r: &ConvergenceRecord) -> io::Result<()> {
    writeln!(
        w,
        "{},{},{},{},{},{}",
        r.ell,
        r.dim,
        format_f64(r.ratio),
        format_f64(r.partial),
        format_f64(r.pi_estimate),
        format_f64(r.abs_error())
    )
}

pub fn json_object(r: &ConvergenceRecord) -> String {
    format!(
        "{{\"ell\":{},\"dim\":{},\"ratio\":{},\"partial_product\":{},\"pi_estimate\":{},\"abs_error\":{}}}",
        r.ell,
        r.dim,
        format_f64(r.ratio),
        format_f64(r.partial),
        format_f64(r.pi_estimate),
        format_f64(r.abs_error())
    )
}

pub fn write_plot_header(w: &mut impl Write, dim: u32) -> io::Result<()> {
    writeln!(w, "# dim={dim} columns: L abs_error")
}

pub fn write_plot_row(w: &mut impl Write, r: &ConvergenceRecord) -> io::Result<()> {
    writeln!(w, "{} {}", product_terms(r), format_f64(r.abs_error()))
}

/// Streams records as a JSON array, one object per line.
pub struct JsonArray<W: Write> {
    out: W,
    first: bool,
}

impl<W: Write> JsonArray<W> {
    pub fn new(mut out: W) -> io::Result<Self> {
        out.write_all(b"[")?;
        Ok(JsonArray { out, first: true })
    }

    pub fn push(&mut self, r: &ConvergenceRecord) -> io::Result<()> {
        let sep = if self.first { "\n" } else { ",\n" };
        self.first = false;
        write!(self.out, "{sep}{}", json_object(r))
    }

    pub fn finish(mut self) -> io::Result<W> {
        self.out.write_all(b"\n]\n")?;
        Ok(self.out)
    }
}
