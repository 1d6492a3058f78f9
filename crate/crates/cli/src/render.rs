//! Matrix and table rendering for the command-line output formats.
//!
//! JSON and CSV use 17-significant-digit floats so values round-trip
//! exactly; the text format favors alignment and readability.

use nalgebra::{DMatrix, Dim, Matrix, RawStorage, Scalar};
use num_complex::Complex64;
use relmodes::numerics::{format_g, format_g17};
use relmodes::ReportFormat;

/// Copy a statically-sized matrix into a dynamically-sized one so payloads
/// of different dimensions share one rendering path.
pub fn to_dynamic<T, R, C, S>(m: &Matrix<T, R, C, S>) -> DMatrix<T>
where
    T: Scalar,
    R: Dim,
    C: Dim,
    S: RawStorage<T, R, C>,
{
    DMatrix::from_fn(m.nrows(), m.ncols(), |i, j| m[(i, j)].clone())
}

/// A named matrix ready for printing.
pub enum Payload {
    Real(DMatrix<f64>),
    Complex(DMatrix<Complex64>),
}

impl Payload {
    fn rows(&self) -> usize {
        match self {
            Payload::Real(m) => m.nrows(),
            Payload::Complex(m) => m.nrows(),
        }
    }

    fn cols(&self) -> usize {
        match self {
            Payload::Real(m) => m.ncols(),
            Payload::Complex(m) => m.ncols(),
        }
    }
}

/// Render a labeled matrix in the requested format.
pub fn render_matrix(format: ReportFormat, label: &str, payload: &Payload) -> String {
    match format {
        ReportFormat::Text => matrix_text(label, payload),
        ReportFormat::Json => matrix_json(label, payload),
        ReportFormat::Csv => matrix_csv(payload),
    }
}

fn matrix_text(label: &str, payload: &Payload) -> String {
    let (r, c) = (payload.rows(), payload.cols());
    let cells: Vec<Vec<String>> = (0..r)
        .map(|i| {
            (0..c)
                .map(|j| match payload {
                    Payload::Real(m) => format_g(m[(i, j)], 6),
                    Payload::Complex(m) => complex_text(m[(i, j)], 6),
                })
                .collect()
        })
        .collect();
    let width = cells
        .iter()
        .flatten()
        .map(String::len)
        .max()
        .unwrap_or(1);
    let mut out = format!("{label} ({r}x{c}):");
    for row in &cells {
        out.push_str("\n  [");
        for (j, cell) in row.iter().enumerate() {
            if j > 0 {
                out.push_str("  ");
            }
            out.push_str(&format!("{cell:>width$}"));
        }
        out.push(']');
    }
    out
}

fn matrix_json(label: &str, payload: &Payload) -> String {
    let (r, c) = (payload.rows(), payload.cols());
    let mut out = String::from("{\n");
    out.push_str(&format!("  \"label\": \"{label}\",\n"));
    out.push_str(&format!("  \"rows\": {r},\n"));
    out.push_str(&format!("  \"cols\": {c},\n"));
    out.push_str("  \"entries\": [\n");
    for i in 0..r {
        out.push_str("    [");
        for j in 0..c {
            if j > 0 {
                out.push_str(", ");
            }
            match payload {
                Payload::Real(m) => out.push_str(&format_g17(m[(i, j)])),
                Payload::Complex(m) => out.push_str(&format!(
                    "[{}, {}]",
                    format_g17(m[(i, j)].re),
                    format_g17(m[(i, j)].im)
                )),
            }
        }
        out.push_str(if i + 1 == r { "]\n" } else { "],\n" });
    }
    out.push_str("  ]\n}");
    out
}

/// CSV rows of the matrix; complex entries expand to `re,im` column pairs.
fn matrix_csv(payload: &Payload) -> String {
    let (r, c) = (payload.rows(), payload.cols());
    let mut out = String::new();
    for i in 0..r {
        if i > 0 {
            out.push('\n');
        }
        for j in 0..c {
            if j > 0 {
                out.push(',');
            }
            match payload {
                Payload::Real(m) => out.push_str(&format_g17(m[(i, j)])),
                Payload::Complex(m) => out.push_str(&format!(
                    "{},{}",
                    format_g17(m[(i, j)].re),
                    format_g17(m[(i, j)].im)
                )),
            }
        }
    }
    out
}

/// `a+bi` with `sig` significant digits.
pub fn complex_text(z: Complex64, sig: usize) -> String {
    let sign = if z.im.is_sign_negative() { "-" } else { "+" };
    format!("{}{}{}i", format_g(z.re, sig), sign, format_g(z.im.abs(), sig))
}

/// A list of `(key, value)` pairs rendered as a keyed table, JSON object, or
/// two-column CSV. `None` values are omitted from text/CSV and rendered as
/// `null` in JSON.
pub fn render_pairs(
    format: ReportFormat,
    label: &str,
    pairs: &[(&str, Option<f64>)],
) -> String {
    match format {
        ReportFormat::Text => {
            let width = pairs.iter().map(|(k, _)| k.len()).max().unwrap_or(1);
            let mut out = format!("{label}:");
            for (k, v) in pairs {
                if let Some(v) = v {
                    out.push_str(&format!("\n  {k:width$}  {}", format_g(*v, 6)));
                }
            }
            out
        }
        ReportFormat::Json => {
            let mut out = String::from("{\n");
            for (idx, (k, v)) in pairs.iter().enumerate() {
                let value = match v {
                    Some(v) => format_g17(*v),
                    None => "null".to_owned(),
                };
                out.push_str(&format!("  \"{k}\": {value}"));
                out.push_str(if idx + 1 == pairs.len() { "\n" } else { ",\n" });
            }
            out.push('}');
            out
        }
        ReportFormat::Csv => {
            let mut out = String::from("quantity,value");
            for (k, v) in pairs {
                if let Some(v) = v {
                    out.push_str(&format!("\n{k},{}", format_g17(*v)));
                }
            }
            out
        }
    }
}
