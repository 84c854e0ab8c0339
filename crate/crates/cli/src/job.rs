//! Turning command-line input into a monic polynomial.

use anyhow::{bail, Context};
use serde_json::{json, Value as Json};
use splitring_core::ring::RingKind;
use splitring_core::{parse_ring_spec, parse_value_list, Error, Poly, Ring, Value};

/// How the coefficient list is to be read.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Convention {
    /// `a_1..a_n` with `f = Z^n - a_1 Z^{n-1} + ... + (-1)^n a_n`.
    A,
    /// `b_0..b_{n-1}` with `f = Z^n + b_{n-1} Z^{n-1} + ... + b_0`.
    B,
    /// Every coefficient of `f`, constant term first, leading one included.
    Full,
}

impl Convention {
    fn name(self) -> &'static str {
        match self {
            Convention::A => "a",
            Convention::B => "b",
            Convention::Full => "f",
        }
    }

    fn from_name(s: &str) -> Option<Convention> {
        match s {
            "a" => Some(Convention::A),
            "b" => Some(Convention::B),
            "f" => Some(Convention::Full),
            _ => None,
        }
    }
}

/// The user's description of `f`, kept verbatim so exports can be rebuilt.
#[derive(Clone, Debug, PartialEq)]
pub struct Input {
    pub ring: String,
    pub convention: Convention,
    pub coeffs: Option<String>,
    pub n: Option<usize>,
}

impl Input {
    pub fn to_json(&self) -> Json {
        json!({
            "ring": self.ring,
            "convention": self.convention.name(),
            "coeffs": self.coeffs,
            "n": self.n,
        })
    }

    pub fn from_json(v: &Json) -> anyhow::Result<Input> {
        let ring = v.get("ring").and_then(Json::as_str).context("input.ring missing")?;
        let conv = v.get("convention").and_then(Json::as_str).context("input.convention missing")?;
        let convention = Convention::from_name(conv).with_context(|| format!("unknown convention `{conv}`"))?;
        let coeffs = match v.get("coeffs") {
            None | Some(Json::Null) => None,
            Some(c) => Some(c.as_str().context("input.coeffs must be a string")?.to_string()),
        };
        let n = match v.get("n") {
            None | Some(Json::Null) => None,
            Some(k) => Some(k.as_u64().context("input.n must be a non-negative integer")? as usize),
        };
        Ok(Input { ring: ring.to_string(), convention, coeffs, n })
    }

    /// Builds `f`. With `--a`/`--b` over `PolyCoef:n:R`, the indeterminates
    /// are renamed `a1..an` (or `b0..b{n-1}`) and added to the given
    /// values, so an all-zero list gives the generic polynomial.
    pub fn build(&self) -> anyhow::Result<Poly> {
        let ring = parse_ring_spec(&self.ring).map_err(|e| with_source(e, "--ring", &self.ring))?;
        let raw = self.raw_values(&ring)?;
        let count = raw.as_ref().map(Vec::len);
        let n = match (self.convention, count, self.n) {
            (_, None, Some(n)) => n,
            (_, None, None) => bail!("give the coefficients (--f, --a or --b) or the degree --n"),
            (Convention::Full, Some(0..=1), _) => return Err(Error::NonMonic.into()),
            (Convention::Full, Some(k), _) => k - 1,
            (_, Some(k), _) => k,
        };
        if let (Some(declared), Some(_)) = (self.n, count) {
            if declared != n {
                return Err(Error::LengthMismatch { expected: declared, got: n }.into());
            }
        }
        if n == 0 {
            return Err(Error::NonMonic.into());
        }
        if self.convention == Convention::Full {
            let f = Poly::new(ring.clone(), raw.expect("checked above"));
            f.require_monic()?;
            if f.coeffs().len() != n + 1 {
                return Err(Error::NonMonic.into());
            }
            return Ok(f);
        }

        let (ring, values) = self.symbolic(&ring, n, raw)?;
        Ok(match self.convention {
            Convention::A => Poly::monic_from_a(ring, &values),
            _ => Poly::monic_from_b(ring, &values),
        })
    }

    fn raw_values(&self, ring: &Ring) -> anyhow::Result<Option<Vec<Value>>> {
        match &self.coeffs {
            None => Ok(None),
            Some(text) => {
                let flag = format!("--{}", self.convention.name());
                Ok(Some(parse_value_list(ring, text).map_err(|e| with_source(e, &flag, text))?))
            }
        }
    }

    /// Applies the generator renaming for `PolyCoef:n`; missing values are
    /// zero.
    fn symbolic(&self, ring: &Ring, n: usize, raw: Option<Vec<Value>>) -> anyhow::Result<(Ring, Vec<Value>)> {
        let generic = match ring.kind() {
            RingKind::PolyCoef { base, names } if names.len() == n => Some(base.clone()),
            _ => None,
        };
        let Some(base) = generic else {
            let values = raw.unwrap_or_else(|| vec![ring.zero(); n]);
            return Ok((ring.clone(), values));
        };
        let names: Vec<String> = match self.convention {
            Convention::A => (1..=n).map(|i| format!("a{i}")).collect(),
            _ => (0..n).map(|i| format!("b{i}")).collect(),
        };
        let renamed = Ring::poly_coef_named(base, names.clone())?;
        // re-read the text so that the new names are understood
        let offsets = match &self.coeffs {
            Some(text) => parse_value_list(&renamed, text)?,
            None => vec![renamed.zero(); n],
        };
        let values = names
            .iter()
            .zip(&offsets)
            .map(|(name, c)| renamed.add(&renamed.named(name).expect("generator"), c))
            .collect();
        Ok((renamed, values))
    }
}

fn with_source(e: Error, flag: &str, text: &str) -> anyhow::Error {
    match e {
        Error::Parse { pos, msg } => {
            anyhow::anyhow!("{flag}: parse error at position {pos}: {msg}\n  {text}\n  {}^", " ".repeat(pos))
        }
        e => anyhow::Error::new(e).context(flag.to_string()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn input(ring: &str, convention: Convention, coeffs: Option<&str>, n: Option<usize>) -> Input {
        Input { ring: ring.into(), convention, coeffs: coeffs.map(String::from), n }
    }

    #[test]
    fn conventions_agree() {
        let full = input("Z", Convention::Full, Some("2,-3,1"), None).build().unwrap();
        let a = input("Z", Convention::A, Some("3,2"), None).build().unwrap();
        let b = input("Z", Convention::B, Some("2,-3"), Some(2)).build().unwrap();
        assert_eq!(full, a);
        assert_eq!(full, b);
    }

    #[test]
    fn generic_coefficients() {
        let f = input("PolyCoef:2:Z", Convention::A, Some("0,0"), Some(2)).build().unwrap();
        assert_eq!(f.format("Z"), "Z^2 - a1*Z + a2");
        let g = input("PolyCoef:2:Z", Convention::B, None, Some(2)).build().unwrap();
        assert_eq!(g.format("Z"), "Z^2 + b1*Z + b0");
    }

    #[test]
    fn rejects_bad_input() {
        assert!(input("Z", Convention::Full, Some("1,2"), None).build().is_err());
        assert!(input("Z", Convention::B, Some("1,2"), Some(3)).build().is_err());
        assert!(input("Z", Convention::B, None, None).build().is_err());
        assert!(input("Zmod:x", Convention::B, Some("1"), None).build().is_err());
    }

    #[test]
    fn json_round_trip() {
        let i = input("Mat:2:Zmod:2", Convention::Full, Some("[[1,0],[0,0]],1"), Some(1));
        assert_eq!(Input::from_json(&i.to_json()).unwrap(), i);
    }
}
