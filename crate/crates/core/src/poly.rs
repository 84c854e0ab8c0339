//! Dense univariate polynomials over a [`Ring`] and the quotient-ring
//! constructor `base[Z]/(m)`.

use crate::error::{Error, Result};
use crate::ring::{format_terms, reduce_monic, Elem, Ring, Value};

/// Polynomial with coefficients lowest degree first.
///
/// The leading coefficient is nonzero unless the polynomial is zero. Over the
/// zero ring every coefficient vanishes, so there the coefficient list is
/// kept as given to remember the degree.
#[derive(Clone, Debug, PartialEq)]
pub struct Poly {
    ring: Ring,
    coeffs: Vec<Value>,
}

impl Poly {
    pub fn new(ring: Ring, mut coeffs: Vec<Value>) -> Poly {
        if !ring.is_zero_ring() {
            while coeffs.last().is_some_and(|c| ring.is_zero(c)) {
                coeffs.pop();
            }
        }
        Poly { ring, coeffs }
    }

    pub fn zero(ring: Ring) -> Poly {
        Poly { ring, coeffs: Vec::new() }
    }

    /// `Z^n + b_{n-1} Z^{n-1} + ... + b_0` from `b = [b_0, ..., b_{n-1}]`.
    pub fn monic_from_b(ring: Ring, b: &[Value]) -> Poly {
        let mut coeffs = b.to_vec();
        coeffs.push(ring.one());
        Poly::new(ring, coeffs)
    }

    /// `Z^n - a_1 Z^{n-1} + a_2 Z^{n-2} - ... + (-1)^n a_n` from
    /// `a = [a_1, ..., a_n]`.
    pub fn monic_from_a(ring: Ring, a: &[Value]) -> Poly {
        let b = crate::realization::a_to_b(&ring, a);
        Poly::monic_from_b(ring, &b)
    }

    /// Parses a comma-separated coefficient list, constant term first.
    pub fn parse(ring: &Ring, text: &str) -> Result<Poly> {
        Ok(Poly::new(ring.clone(), parse_value_list(ring, text)?))
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn coeffs(&self) -> &[Value] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Value {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.ring.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| self.ring.is_zero(c))
    }

    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    /// Monic of degree at least one.
    pub fn is_monic(&self) -> bool {
        self.coeffs.len() >= 2 && self.ring.is_one(self.coeffs.last().expect("nonempty"))
    }

    pub fn require_monic(&self) -> Result<usize> {
        if self.is_monic() {
            Ok(self.coeffs.len() - 1)
        } else {
            Err(Error::NonMonic)
        }
    }

    pub fn has_central_coeffs(&self) -> bool {
        self.coeffs.iter().all(|c| self.ring.is_central(c))
    }

    /// `[b_0, ..., b_{n-1}]` of a monic polynomial.
    pub fn b_coeffs(&self) -> Vec<Value> {
        self.coeffs[..self.coeffs.len().saturating_sub(1)].to_vec()
    }

    /// `[a_1, ..., a_n]` of a monic polynomial.
    pub fn a_coeffs(&self) -> Vec<Value> {
        crate::realization::b_to_a(&self.ring, &self.b_coeffs())
    }

    /// Left substitution `sum c_j x^j`.
    pub fn eval(&self, x: &Elem) -> Result<Elem> {
        if !x.ring().same(&self.ring) {
            return Err(Error::RingMismatch);
        }
        Ok(self.ring.elem(self.eval_value(x.value())))
    }

    pub fn eval_value(&self, x: &Value) -> Value {
        let r = &self.ring;
        let mut acc = r.zero();
        let mut power = r.one();
        for (j, c) in self.coeffs.iter().enumerate() {
            if j > 0 {
                power = r.mul(&power, x);
            }
            acc = r.add(&acc, &r.mul(c, &power));
        }
        acc
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let len = self.coeffs.len().max(other.coeffs.len());
        let c = (0..len).map(|i| self.ring.add(&self.coeff(i), &other.coeff(i))).collect();
        Poly::new(self.ring.clone(), c)
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let len = self.coeffs.len().max(other.coeffs.len());
        let c = (0..len).map(|i| self.ring.sub(&self.coeff(i), &other.coeff(i))).collect();
        Poly::new(self.ring.clone(), c)
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let r = &self.ring;
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return Poly::zero(r.clone());
        }
        let mut out = vec![r.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = r.add(&out[i + j], &r.mul(a, b));
            }
        }
        Poly::new(r.clone(), out)
    }

    pub fn scale(&self, c: &Value) -> Poly {
        Poly::new(self.ring.clone(), self.coeffs.iter().map(|x| self.ring.mul(c, x)).collect())
    }

    /// `Z^k * self`.
    pub fn shift(&self, k: usize) -> Poly {
        if self.coeffs.is_empty() {
            return self.clone();
        }
        let mut c = vec![self.ring.zero(); k];
        c.extend(self.coeffs.iter().cloned());
        Poly::new(self.ring.clone(), c)
    }

    /// Remainder modulo a monic polynomial with central coefficients.
    pub fn rem_monic(&self, m: &Poly) -> Result<Poly> {
        m.require_monic()?;
        Ok(Poly::new(self.ring.clone(), reduce_monic(&self.ring, self.coeffs.clone(), &m.coeffs)))
    }

    pub fn format(&self, var: &str) -> String {
        format_dense(&self.ring, &self.coeffs, var)
    }
}

/// Splits on top-level commas (brackets may contain commas) and parses
/// each piece as an element of `ring`. Parse positions refer to `text`.
pub fn parse_value_list(ring: &Ring, text: &str) -> Result<Vec<Value>> {
    crate::expr::split_top_level(text, 0)?
        .into_iter()
        .map(|(s, pos)| ring.parse(&s).map_err(|e| offset_err(e, pos)))
        .collect()
}

fn offset_err(e: Error, by: usize) -> Error {
    match e {
        Error::Parse { pos, msg } => Error::Parse { pos: pos + by, msg },
        e => e,
    }
}

/// Text form of a dense coefficient list, highest degree first.
pub(crate) fn format_dense(ring: &Ring, coeffs: &[Value], var: &str) -> String {
    let terms: Vec<(String, &Value)> = coeffs
        .iter()
        .enumerate()
        .rev()
        .filter(|(_, c)| !ring.is_zero(c))
        .map(|(k, c)| {
            let m = match k {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{k}"),
            };
            (m, c)
        })
        .collect();
    format_terms(ring, &terms)
}

/// `base[Z]/(m)`. The class of `Z` is the adjoined root, named `root` in text
/// forms.
pub fn quotient_ring(base: &Ring, m: &Poly, root: &str) -> Result<Ring> {
    if !m.ring().same(base) {
        return Err(Error::RingMismatch);
    }
    m.require_monic()?;
    if !m.has_central_coeffs() {
        return Err(Error::NonCentralCoefficients);
    }
    Ok(Ring::quotient_raw(base.clone(), m.coeffs().to_vec(), root.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::parse_ring_spec;

    #[test]
    fn evaluation() {
        let z = Ring::integers();
        let p = Poly::parse(&z, "2,-3,1").unwrap();
        assert!(p.eval(&z.elem(z.from_int(1))).unwrap().is_zero());
        let z5 = Ring::modular(5).unwrap();
        let cube = Poly::parse(&z5, "0,0,0,1").unwrap();
        assert_eq!(cube.eval(&z5.elem(z5.from_int(2))).unwrap().value(), &Value::Mod(3));
        let pc = Ring::poly_coef_named(z.clone(), vec!["b0".into(), "b1".into()]).unwrap();
        let p = Poly::parse(&pc, "b1,1").unwrap();
        let x = pc.elem(pc.named("b0").unwrap());
        assert_eq!(p.eval(&x).unwrap().to_string(), "b0 + b1");
        assert_eq!(p.eval(&z.elem(z.one())), Err(Error::RingMismatch));
    }

    #[test]
    fn quotients_of_z() {
        let z = Ring::integers();
        let m = Poly::parse(&z, "2,-3,1").unwrap();
        let s = quotient_ring(&z, &m, "r").unwrap();
        let r = s.named("r").unwrap();
        assert_eq!(s.format(&s.mul(&r, &r)), "3*r - 2");
        let lin = quotient_ring(&z, &Poly::parse(&z, "-5,1").unwrap(), "r").unwrap();
        assert_eq!(lin.format(&lin.named("r").unwrap()), "5");
    }

    #[test]
    fn gaussian_integers_mod_seven() {
        let z7 = Ring::modular(7).unwrap();
        let s = quotient_ring(&z7, &Poly::parse(&z7, "1,0,1").unwrap(), "i").unwrap();
        let i = s.named("i").unwrap();
        assert_eq!(s.mul(&i, &i), s.from_int(6));
        // a field of order 49: 3 + i is invertible
        let x = s.parse("3 + i").unwrap();
        assert_eq!(s.mul(&x, &s.inverse(&x).unwrap()), s.one());
    }

    #[test]
    fn rejects_non_monic_and_non_central() {
        let z = Ring::integers();
        assert_eq!(quotient_ring(&z, &Poly::parse(&z, "1,2").unwrap(), "r").unwrap_err(), Error::NonMonic);
        assert_eq!(quotient_ring(&z, &Poly::parse(&z, "5").unwrap(), "r").unwrap_err(), Error::NonMonic);
        let m = parse_ring_spec("Mat:2:Zmod:2").unwrap();
        let p = Poly::parse(&m, "[[1,0],[0,0]],[[1,0],[0,1]]").unwrap();
        assert_eq!(quotient_ring(&m, &p, "r").unwrap_err(), Error::NonCentralCoefficients);
    }

    #[test]
    fn roots_of_quotient_towers_are_roots() {
        let q = Ring::rationals();
        let f = Poly::parse(&q, "-1,-1,0,1").unwrap();
        let s = quotient_ring(&q, &f, "u").unwrap();
        let g = Poly::parse(&s, "u,1/2,1").unwrap();
        let t = quotient_ring(&s, &g, "v").unwrap();
        let fl =
            Poly::new(t.clone(), f.coeffs().iter().map(|c| t.embed(s.embed(c.clone()).unwrap()).unwrap()).collect());
        let u = t.named("u").unwrap();
        assert!(t.is_zero(&fl.eval_value(&u)));
        let gl = Poly::new(t.clone(), g.coeffs().iter().map(|c| t.embed(c.clone()).unwrap()).collect());
        assert!(t.is_zero(&gl.eval_value(&t.named("v").unwrap())));
    }
}
