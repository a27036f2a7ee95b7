//! Command-line values: reals, complex numbers and `key=value` lists.
//!
//! Reals accept plain floats and multiples of pi (`pi`, `-pi/2`, `0.25pi`).
//! Complex numbers accept `a+bi`, `a`, `bi`, `i`, `-i` and polar `r@theta`
//! with `theta` in radians.

use std::f64::consts::PI;

use tetragate::C64;

pub fn parse_real(s: &str) -> Result<f64, String> {
    let t = s.trim();
    if let Ok(v) = t.parse::<f64>() {
        return Ok(v);
    }
    let lower = t.to_ascii_lowercase();
    let Some(idx) = lower.find("pi") else {
        return Err(format!("`{s}` is not a number"));
    };
    let (head, tail) = (&lower[..idx], &lower[idx + 2..]);
    let factor = match head.trim_end_matches('*') {
        "" | "+" => 1.0,
        "-" => -1.0,
        h => h.parse::<f64>().map_err(|_| format!("`{s}` is not a number"))?,
    };
    let divisor = match tail {
        "" => 1.0,
        d => d
            .strip_prefix('/')
            .and_then(|d| d.parse::<f64>().ok())
            .ok_or_else(|| format!("`{s}` is not a number"))?,
    };
    Ok(factor * PI / divisor)
}

/// Index splitting `a+bi` into its real and imaginary parts: the last sign
/// that is neither leading nor part of an exponent.
fn split_point(s: &str) -> Option<usize> {
    let b = s.as_bytes();
    (1..b.len()).rev().find(|&k| (b[k] == b'+' || b[k] == b'-') && !matches!(b[k - 1], b'e' | b'E'))
}

pub fn parse_complex(s: &str) -> Result<C64, String> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if t.is_empty() {
        return Err("empty complex number".into());
    }
    if let Some((r, theta)) = t.split_once('@') {
        return Ok(C64::from_polar(parse_real(r)?, parse_real(theta)?));
    }
    let Some(body) = t.strip_suffix(['i', 'j']) else {
        return Ok(C64::new(parse_real(&t)?, 0.0));
    };
    let (re, im) = match split_point(body) {
        Some(k) => (&body[..k], &body[k..]),
        None => ("", body),
    };
    let im = match im {
        "" | "+" => 1.0,
        "-" => -1.0,
        v => parse_real(v).map_err(|_| format!("`{s}` is not a complex number"))?,
    };
    let re = if re.is_empty() { 0.0 } else { parse_real(re).map_err(|_| format!("`{s}` is not a complex number"))? };
    Ok(C64::new(re, im))
}

/// Parsed `k=v,k=v` list; values stay as text until a consumer asks for a
/// type, and every key must be consumed.
#[derive(Clone, Debug, Default)]
pub struct Params {
    entries: Vec<(String, String)>,
    used: Vec<bool>,
}

impl Params {
    pub fn parse(s: &str) -> Result<Self, String> {
        let mut entries: Vec<(String, String)> = Vec::new();
        for item in s.split(',').map(str::trim).filter(|i| !i.is_empty()) {
            let (k, v) = item.split_once('=').ok_or_else(|| format!("parameter `{item}` is not of the form key=value"))?;
            let k = k.trim().to_ascii_lowercase();
            if entries.iter().any(|(e, _)| *e == k) {
                return Err(format!("parameter `{k}` given twice"));
            }
            entries.push((k, v.trim().to_string()));
        }
        let used = vec![false; entries.len()];
        Ok(Self { entries, used })
    }

    fn take(&mut self, key: &str) -> Option<String> {
        let k = self.entries.iter().position(|(e, _)| e == key)?;
        self.used[k] = true;
        Some(self.entries[k].1.clone())
    }

    pub fn has(&self, key: &str) -> bool {
        self.entries.iter().any(|(e, _)| e == key)
    }

    pub fn complex(&mut self, key: &str, default: C64) -> Result<C64, String> {
        self.take(key).map_or(Ok(default), |v| parse_complex(&v).map_err(|e| format!("{key}: {e}")))
    }

    pub fn real(&mut self, key: &str, default: f64) -> Result<f64, String> {
        self.take(key).map_or(Ok(default), |v| parse_real(&v).map_err(|e| format!("{key}: {e}")))
    }

    /// All four of `prefix1..prefix4`, or `None` if none are given.
    pub fn quad(&mut self, prefix: &str) -> Result<Option<[C64; 4]>, String> {
        let keys: Vec<String> = (1..=4).map(|k| format!("{prefix}{k}")).collect();
        let given = keys.iter().filter(|k| self.has(k)).count();
        match given {
            0 => Ok(None),
            4 => {
                let mut out = [C64::new(0.0, 0.0); 4];
                for (slot, k) in out.iter_mut().zip(&keys) {
                    *slot = self.complex(k, C64::new(0.0, 0.0))?;
                }
                Ok(Some(out))
            }
            _ => Err(format!("give all of {} or none", keys.join(", "))),
        }
    }

    /// Fails on the first key nobody asked for.
    pub fn finish(&self) -> Result<(), String> {
        match self.entries.iter().zip(&self.used).find(|(_, u)| !**u) {
            Some(((k, _), _)) => Err(format!("unknown parameter `{k}`")),
            None => Ok(()),
        }
    }

    /// Remaining entries as reals, marking them used.
    pub fn all_real(&mut self) -> Result<Vec<(String, f64)>, String> {
        let keys: Vec<String> = self.entries.iter().map(|(k, _)| k.clone()).collect();
        keys.into_iter().map(|k| Ok((k.clone(), self.real(&k, 0.0)?))).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: C64, re: f64, im: f64) -> bool {
        (a - C64::new(re, im)).norm() < 1e-15
    }

    #[test]
    fn complex_forms() {
        assert!(close(parse_complex("i").unwrap(), 0.0, 1.0));
        assert!(close(parse_complex("-i").unwrap(), 0.0, -1.0));
        assert!(close(parse_complex("-1").unwrap(), -1.0, 0.0));
        assert!(close(parse_complex("2-3i").unwrap(), 2.0, -3.0));
        assert!(close(parse_complex("1e-3+2.5i").unwrap(), 1e-3, 2.5));
        assert!(close(parse_complex("-1.5e+2-1e-2i").unwrap(), -150.0, -0.01));
        assert!(close(parse_complex("0.5 + 0.5i").unwrap(), 0.5, 0.5));
        assert!(close(parse_complex("1@pi/2").unwrap(), 0.0, 1.0));
        assert!(close(parse_complex("2@0").unwrap(), 2.0, 0.0));
    }

    #[test]
    fn malformed_values_are_rejected() {
        for bad in ["", "x", "1+", "1+xi", "@1", "pi/0x"] {
            assert!(parse_complex(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn pi_multiples() {
        assert_eq!(parse_real("pi").unwrap(), PI);
        assert_eq!(parse_real("-pi/2").unwrap(), -PI / 2.0);
        assert_eq!(parse_real("0.25pi").unwrap(), PI / 4.0);
        assert_eq!(parse_real("3*pi/4").unwrap(), 3.0 * PI / 4.0);
    }

    #[test]
    fn params_track_usage() {
        let mut p = Params::parse("p=i, q=-1,r=1").unwrap();
        assert!(close(p.complex("p", C64::new(0.0, 0.0)).unwrap(), 0.0, 1.0));
        assert!(p.finish().is_err());
        p.complex("q", C64::new(0.0, 0.0)).unwrap();
        p.complex("r", C64::new(0.0, 0.0)).unwrap();
        assert!(p.finish().is_ok());
        assert!(Params::parse("p=1,p=2").is_err());
        assert!(Params::parse("p").is_err());
    }

    #[test]
    fn quad_is_all_or_nothing() {
        assert_eq!(Params::parse("").unwrap().quad("q").unwrap(), None);
        assert!(Params::parse("q1=1").unwrap().quad("q").is_err());
        let q = Params::parse("q1=1,q2=0,q3=0,q4=i").unwrap().quad("q").unwrap().unwrap();
        assert!(close(q[3], 0.0, 1.0));
    }
}
