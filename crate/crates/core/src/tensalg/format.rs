//! The `SIMPLEXMAT 1` text format.
//!
//! ```text
//! SIMPLEXMAT 1
//! dim R C
//! re,im re,im ...      (R lines of C tokens)
//! ```
//!
//! Values are written in the shortest form that parses back to the same
//! `f64` (never more than 17 significant digits).

use std::fmt::Write;

use super::{ComplexMatrix, C64};
use crate::{Error, Result};

const HEADER: &str = "SIMPLEXMAT 1";

pub fn to_simplexmat(m: &ComplexMatrix) -> Result<String> {
    let mut out = String::with_capacity(16 + m.rows() * m.cols() * 24);
    out.push_str(HEADER);
    out.push('\n');
    let _ = writeln!(out, "dim {} {}", m.rows(), m.cols());
    for i in 0..m.rows() {
        for (j, z) in m.row(i).iter().enumerate() {
            if !(z.re.is_finite() && z.im.is_finite()) {
                return Err(Error::NonFinite(i, j));
            }
            if j > 0 {
                out.push(' ');
            }
            let _ = write!(out, "{},{}", z.re, z.im);
        }
        out.push('\n');
    }
    Ok(out)
}

pub fn parse_simplexmat(text: &str) -> Result<ComplexMatrix> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    match lines.next() {
        Some(l) if l.trim() == HEADER => {}
        Some(l) => return Err(Error::Parse(format!("bad header `{}`", l.trim()))),
        None => return Err(Error::Parse("empty input".into())),
    }
    let dims = lines.next().ok_or_else(|| Error::Parse("missing dim line".into()))?;
    let mut it = dims.split_whitespace();
    if it.next() != Some("dim") {
        return Err(Error::Parse(format!("bad dim line `{}`", dims.trim())));
    }
    let mut side = || -> Result<usize> {
        it.next()
            .and_then(|s| s.parse().ok())
            .filter(|&n: &usize| n > 0)
            .ok_or_else(|| Error::Parse(format!("bad dim line `{}`", dims.trim())))
    };
    let (rows, cols) = (side()?, side()?);

    let mut data = Vec::with_capacity(rows * cols);
    for tok in lines.flat_map(str::split_whitespace) {
        let (re, im) = tok
            .split_once(',')
            .ok_or_else(|| Error::Parse(format!("bad entry `{tok}`")))?;
        let parse = |s: &str| s.parse::<f64>().map_err(|_| Error::Parse(format!("bad entry `{tok}`")));
        let z = C64::new(parse(re)?, parse(im)?);
        if !(z.re.is_finite() && z.im.is_finite()) {
            let k = data.len();
            return Err(Error::NonFinite(k / cols, k % cols));
        }
        data.push(z);
    }
    ComplexMatrix::new(rows, cols, data)
}

#[cfg(test)]
mod tests {
    use super::super::c64;
    use super::*;

    #[test]
    fn identity_text() {
        let text = to_simplexmat(&ComplexMatrix::identity(2)).unwrap();
        assert_eq!(text, "SIMPLEXMAT 1\ndim 2 2\n1,0 0,0\n0,0 1,0\n");
        assert_eq!(parse_simplexmat(&text).unwrap(), ComplexMatrix::identity(2));
    }

    #[test]
    fn awkward_values_round_trip_bit_exactly() {
        let vals = [0.1, 1.0 / 3.0, -0.0, 5e-324, f64::MAX, -1.2345678901234567e-300, std::f64::consts::PI];
        let m = ComplexMatrix::from_fn(vals.len(), 2, |i, j| c64(vals[i], if j == 0 { -vals[i] } else { vals[i] * 0.7 }));
        let back = parse_simplexmat(&to_simplexmat(&m).unwrap()).unwrap();
        for (a, b) in m.as_slice().iter().zip(back.as_slice()) {
            assert_eq!(a.re.to_bits(), b.re.to_bits());
            assert_eq!(a.im.to_bits(), b.im.to_bits());
        }
    }

    #[test]
    fn malformed_inputs() {
        let short = "SIMPLEXMAT 1\ndim 2 2\n1,0 0,0\n0,0\n";
        assert_eq!(parse_simplexmat(short).unwrap_err().to_string(), "entry count mismatch");
        assert!(matches!(parse_simplexmat("SIMPLEXMAT 2\ndim 1 1\n1,0\n"), Err(Error::Parse(_))));
        assert!(matches!(parse_simplexmat("SIMPLEXMAT 1\ndim 1\n1,0\n"), Err(Error::Parse(_))));
        assert!(matches!(parse_simplexmat("SIMPLEXMAT 1\ndim 1 1\n1;0\n"), Err(Error::Parse(_))));
        assert!(matches!(parse_simplexmat("SIMPLEXMAT 1\ndim 1 1\nNaN,0\n"), Err(Error::NonFinite(0, 0))));
    }

    #[test]
    fn non_finite_values_are_not_written() {
        let m = ComplexMatrix::diag(&[c64(1., 0.), c64(f64::INFINITY, 0.)]);
        assert!(matches!(to_simplexmat(&m), Err(Error::NonFinite(1, 1))));
    }
}
