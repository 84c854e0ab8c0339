//! The universal splitting ring `R_f = R[X1..Xn]/I_f` as a free module on
//! the normal-form monomials `r^alpha`, `0 <= alpha_i <= n - i`.
//!
//! Multiplication rewrites `X_i^{n-i+1}` to `X_i^{n-i+1} - f_i`, which lowers
//! the degree in `X_i` and only touches `X_1..X_{i-1}`. Comparing exponent
//! vectors from `alpha_n` down to `alpha_1` makes every rewrite a strict
//! decrease, so rewriting terminates. Normal forms of single monomials are
//! cached per ring.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, RwLock};

use serde_json::json;

use crate::error::{Error, Result};
use crate::linalg::{self, SqMatrix};
use crate::multipoly::{build_relations_closed, MPoly};
use crate::poly::Poly;
use crate::ring::{Ring, Value};

/// Default ceiling on `n`; `6! = 720` basis elements.
pub const DEFAULT_CAP: usize = 6;

/// Exponent vectors of the normal-form basis in index order:
/// `index(alpha) = alpha_1 + n*(alpha_2 + (n-1)*(alpha_3 + ...))`.
pub fn basis_exponents(n: usize) -> Vec<Vec<u32>> {
    let dim: usize = (1..=n).product();
    (0..dim)
        .map(|mut k| {
            (0..n)
                .map(|i| {
                    let radix = n - i;
                    let digit = k % radix;
                    k /= radix;
                    digit as u32
                })
                .collect()
        })
        .collect()
}

/// Mixed-radix index of `alpha`, or `None` outside the basis box.
pub fn basis_index(alpha: &[u32]) -> Option<usize> {
    let n = alpha.len();
    let mut idx = 0usize;
    for i in (0..n).rev() {
        let radix = n - i;
        if alpha[i] as usize >= radix {
            return None;
        }
        idx = idx * radix + alpha[i] as usize;
    }
    Some(idx)
}

pub fn factorial(n: usize) -> usize {
    (1..=n).product()
}

type Coords = Arc<Vec<Value>>;

struct Inner {
    base: Ring,
    f: Poly,
    n: usize,
    relations: Vec<MPoly>,
    /// `X_i^{n-i+1} - f_i`, the right-hand side of the rewrite rule for `X_i`.
    tails: Vec<Vec<(Vec<u32>, Value)>>,
    basis: Vec<Vec<u32>>,
    memo: RwLock<HashMap<Vec<u32>, Coords>>,
}

/// `R_f` for a monic `f` with central coefficients.
#[derive(Clone)]
pub struct SplitRing {
    inner: Arc<Inner>,
}

impl fmt::Debug for SplitRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SplitRing({} over {})", self.inner.f.format("Z"), self.inner.base.spec())
    }
}

impl PartialEq for SplitRing {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
    }
}

impl SplitRing {
    pub fn new(f: &Poly) -> Result<SplitRing> {
        SplitRing::with_cap(f, DEFAULT_CAP)
    }

    pub fn with_cap(f: &Poly, cap: usize) -> Result<SplitRing> {
        let n = f.require_monic()?;
        if n > cap {
            return Err(Error::CapExceeded { n, cap });
        }
        if !f.has_central_coeffs() {
            return Err(Error::NonCentralCoefficients);
        }
        let base = f.ring().clone();
        let relations = build_relations_closed(f, n)?;
        let tails = relations
            .iter()
            .enumerate()
            .map(|(i, fi)| {
                let mut lead = vec![0u32; n];
                lead[i] = (n - i) as u32;
                fi.terms().iter().filter(|(e, _)| **e != lead).map(|(e, c)| (e.clone(), base.neg(c))).collect()
            })
            .collect();
        let inner = Inner {
            base,
            f: f.clone(),
            n,
            relations,
            tails,
            basis: basis_exponents(n),
            memo: RwLock::new(HashMap::new()),
        };
        Ok(SplitRing { inner: Arc::new(inner) })
    }

    pub fn base(&self) -> &Ring {
        &self.inner.base
    }

    pub fn poly(&self) -> &Poly {
        &self.inner.f
    }

    pub fn degree(&self) -> usize {
        self.inner.n
    }

    pub fn dim(&self) -> usize {
        self.inner.basis.len()
    }

    pub fn basis(&self) -> &[Vec<u32>] {
        &self.inner.basis
    }

    pub fn relations(&self) -> &[MPoly] {
        &self.inner.relations
    }

    pub fn is_zero_ring(&self) -> bool {
        self.inner.base.is_zero_ring()
    }

    fn elem(&self, coords: Vec<Value>) -> SplitElem {
        SplitElem { ring: self.clone(), coords }
    }

    pub fn from_coords(&self, coords: Vec<Value>) -> Result<SplitElem> {
        if coords.len() != self.dim() {
            return Err(Error::LengthMismatch { expected: self.dim(), got: coords.len() });
        }
        Ok(self.elem(coords))
    }

    pub fn zero(&self) -> SplitElem {
        self.elem(vec![self.inner.base.zero(); self.dim()])
    }

    /// `Gamma(c) = c * 1`.
    pub fn scalar(&self, c: &Value) -> SplitElem {
        let mut coords = vec![self.inner.base.zero(); self.dim()];
        coords[0] = c.clone();
        self.elem(coords)
    }

    pub fn one(&self) -> SplitElem {
        self.scalar(&self.inner.base.one())
    }

    /// `r_i`, 1-based.
    pub fn root(&self, i: usize) -> Result<SplitElem> {
        if i == 0 || i > self.inner.n {
            return Err(Error::IndexOutOfRange(format!("root r_{i} with n = {}", self.inner.n)));
        }
        let mut e = vec![0u32; self.inner.n];
        e[i - 1] = 1;
        Ok(self.monomial(&e))
    }

    pub fn roots(&self) -> Vec<SplitElem> {
        (1..=self.inner.n).map(|i| self.root(i).expect("in range")).collect()
    }

    /// The `k`-th basis element.
    pub fn basis_elem(&self, k: usize) -> SplitElem {
        self.monomial(&self.inner.basis[k].clone())
    }

    /// Normal form of the monomial `X^e`.
    pub fn monomial(&self, e: &[u32]) -> SplitElem {
        self.elem(self.monomial_coords(e).as_ref().clone())
    }

    fn monomial_coords(&self, e: &[u32]) -> Coords {
        if let Some(hit) = self.inner.memo.read().expect("memo lock").get(e) {
            return hit.clone();
        }
        let computed = Arc::new(self.rewrite_monomial(e));
        // Concurrent writers compute the same value; keep whichever landed first.
        let mut memo = self.inner.memo.write().expect("memo lock");
        memo.entry(e.to_vec()).or_insert(computed).clone()
    }

    fn rewrite_monomial(&self, e: &[u32]) -> Vec<Value> {
        let n = self.inner.n;
        let base = &self.inner.base;
        let mut out = vec![base.zero(); self.dim()];
        let Some(i) = (0..n).rev().find(|&i| e[i] as usize > n - 1 - i) else {
            let idx = basis_index(e).expect("inside the basis box");
            out[idx] = base.one();
            return out;
        };
        let mut rest = e.to_vec();
        rest[i] -= (n - i) as u32;
        for (t, c) in &self.inner.tails[i] {
            let m: Vec<u32> = rest.iter().zip(t).map(|(a, b)| a + b).collect();
            let v = self.monomial_coords(&m);
            for (o, x) in out.iter_mut().zip(v.iter()) {
                if !base.is_zero(x) {
                    *o = base.add(o, &base.mul(c, x));
                }
            }
        }
        out
    }

    /// Class of `m` modulo `I_f`.
    pub fn normal_form(&self, m: &MPoly) -> Result<SplitElem> {
        if !m.ring().same(&self.inner.base) {
            return Err(Error::RingMismatch);
        }
        if m.nvars() != self.inner.n {
            return Err(Error::LengthMismatch { expected: self.inner.n, got: m.nvars() });
        }
        let base = &self.inner.base;
        let mut out = vec![base.zero(); self.dim()];
        for (e, c) in m.terms() {
            let v = self.monomial_coords(e);
            accumulate(base, &mut out, c, &v);
        }
        Ok(self.elem(out))
    }

    /// The representative `sum c_alpha X^alpha` of `x`.
    pub fn lift(&self, x: &SplitElem) -> MPoly {
        MPoly::from_terms(
            &self.inner.base,
            self.inner.n,
            self.inner.basis.iter().cloned().zip(x.coords.iter().cloned()),
        )
    }

    /// `sum_alpha x_alpha * t^alpha`: the image of `x` under `r_i -> t_i`.
    pub fn substitute(&self, x: &SplitElem, ts: &[SplitElem]) -> Result<SplitElem> {
        self.check(x)?;
        let monos = self.monomials_in(ts)?;
        let mut acc = self.zero();
        for (c, m) in x.coords.iter().zip(&monos) {
            if !self.inner.base.is_zero(c) {
                acc = acc.add(&m.scale(c))?;
            }
        }
        Ok(acc)
    }

    /// `t^alpha` for every basis exponent `alpha`, in basis order.
    pub fn monomials_in(&self, ts: &[SplitElem]) -> Result<Vec<SplitElem>> {
        if ts.len() != self.inner.n {
            return Err(Error::LengthMismatch { expected: self.inner.n, got: ts.len() });
        }
        for t in ts {
            self.check(t)?;
        }
        let dim = self.dim();
        let mut out: Vec<SplitElem> = Vec::with_capacity(dim);
        for (k, alpha) in self.inner.basis.iter().enumerate() {
            if k == 0 {
                out.push(self.one());
                continue;
            }
            // strip one factor of the lowest nonzero exponent: t^alpha = t_i * t^(alpha - e_i)
            let i = alpha.iter().position(|&a| a > 0).expect("nonzero exponent");
            let mut prev = alpha.clone();
            prev[i] -= 1;
            let j = basis_index(&prev).expect("inside the box");
            out.push(ts[i].mul(&out[j])?);
        }
        Ok(out)
    }

    fn check(&self, x: &SplitElem) -> Result<()> {
        if x.ring != *self {
            return Err(Error::RingMismatch);
        }
        Ok(())
    }

    /// Matrix of left multiplication by `x`; column `k` holds the
    /// coordinates of `x * basis_k`.
    pub fn regular_representation(&self, x: &SplitElem) -> Result<SqMatrix> {
        self.check(x)?;
        let base = &self.inner.base;
        let dim = self.dim();
        let columns: Vec<Vec<Value>> = (0..dim)
            .map(|k| {
                let mut col = vec![base.zero(); dim];
                for (a, c) in x.coords.iter().enumerate() {
                    if base.is_zero(c) {
                        continue;
                    }
                    let e: Vec<u32> =
                        self.inner.basis[a].iter().zip(&self.inner.basis[k]).map(|(p, q)| p + q).collect();
                    accumulate(base, &mut col, c, &self.monomial_coords(&e));
                }
                col
            })
            .collect();
        Ok(SqMatrix::from_columns(base, &columns))
    }

    /// `prod_i (Z - t_i)` with coefficients in `R_f`, lowest degree first.
    pub fn product_of_linear_factors(&self, ts: &[SplitElem]) -> Result<Vec<SplitElem>> {
        let mut acc = vec![self.one()];
        for t in ts {
            self.check(t)?;
            // (sum c_k Z^k)(Z - t)
            let mut next = vec![self.zero(); acc.len() + 1];
            for (k, c) in acc.iter().enumerate() {
                next[k + 1] = next[k + 1].add(c)?;
                next[k] = next[k].sub(&c.mul(t)?)?;
            }
            acc = next;
        }
        Ok(acc)
    }

    /// `f` embedded through `Gamma`.
    pub fn embedded_poly(&self) -> Vec<SplitElem> {
        let f = &self.inner.f;
        (0..=self.inner.n).map(|k| self.scalar(&f.coeff(k))).collect()
    }

    /// `f(Z) = (Z - r_1)...(Z - r_n)` in `R_f[Z]`.
    pub fn universal_factorization_check(&self) -> bool {
        self.product_of_linear_factors(&self.roots()).map(|p| p == self.embedded_poly()).unwrap_or(false)
    }

    /// `c * 1 != 0` for every nonzero sample `c` of the base.
    pub fn gamma_injectivity_check(&self, samples: &[Value]) -> bool {
        let base = &self.inner.base;
        samples.iter().filter(|c| !base.is_zero(c)).all(|c| !self.scalar(c).is_zero())
    }

    /// Exhaustive over a finite base; over an infinite base uses `samples`.
    pub fn gamma_injectivity_exhaustive(&self, samples: &[Value]) -> Result<bool> {
        let base = &self.inner.base;
        if base.is_finite() {
            let all = base.elements(1 << 16)?;
            Ok(self.gamma_injectivity_check(&all))
        } else {
            Ok(self.gamma_injectivity_check(samples))
        }
    }

    /// For each `i`: `f_i(r_1..r_i)` vanishes and `1, r_i, ..., r_i^{n-i}`
    /// are linearly independent over the base.
    pub fn minimal_polynomial_check(&self) -> Result<bool> {
        let n = self.inner.n;
        for (idx, fi) in self.inner.relations.iter().enumerate() {
            if !self.normal_form(fi)?.is_zero() {
                return Ok(false);
            }
            let ri = self.root(idx + 1)?;
            let mut power = self.one();
            let mut rows = Vec::new();
            for _ in 0..=(n - 1 - idx) {
                rows.push(power.coords.clone());
                power = power.mul(&ri)?;
            }
            if self.is_zero_ring() {
                continue;
            }
            if !linalg::independent(&self.inner.base, &rows)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn basis_json(&self) -> serde_json::Value {
        json!(self.inner.basis)
    }
}

fn accumulate(base: &Ring, out: &mut [Value], c: &Value, v: &[Value]) {
    for (o, x) in out.iter_mut().zip(v) {
        if !base.is_zero(x) {
            *o = base.add(o, &base.mul(c, x));
        }
    }
}

/// Element of `R_f` in normal-form coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct SplitElem {
    ring: SplitRing,
    coords: Vec<Value>,
}

impl SplitElem {
    pub fn ring(&self) -> &SplitRing {
        &self.ring
    }

    pub fn coords(&self) -> &[Value] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        let base = self.ring.base();
        self.coords.iter().all(|c| base.is_zero(c))
    }

    fn zip(&self, other: &SplitElem, op: impl Fn(&Value, &Value) -> Value) -> Result<SplitElem> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch);
        }
        let coords = self.coords.iter().zip(&other.coords).map(|(a, b)| op(a, b)).collect();
        Ok(SplitElem { ring: self.ring.clone(), coords })
    }

    pub fn add(&self, other: &SplitElem) -> Result<SplitElem> {
        let base = self.ring.base().clone();
        self.zip(other, |a, b| base.add(a, b))
    }

    pub fn sub(&self, other: &SplitElem) -> Result<SplitElem> {
        let base = self.ring.base().clone();
        self.zip(other, |a, b| base.sub(a, b))
    }

    pub fn neg(&self) -> SplitElem {
        let base = self.ring.base();
        SplitElem { ring: self.ring.clone(), coords: self.coords.iter().map(|c| base.neg(c)).collect() }
    }

    /// `c * self` for a base scalar `c`.
    pub fn scale(&self, c: &Value) -> SplitElem {
        let base = self.ring.base();
        SplitElem { ring: self.ring.clone(), coords: self.coords.iter().map(|x| base.mul(c, x)).collect() }
    }

    pub fn mul(&self, other: &SplitElem) -> Result<SplitElem> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch);
        }
        let ring = &self.ring;
        let base = ring.base();
        let basis = ring.basis();
        let mut out = vec![base.zero(); ring.dim()];
        for (a, x) in self.coords.iter().enumerate() {
            if base.is_zero(x) {
                continue;
            }
            for (b, y) in other.coords.iter().enumerate() {
                if base.is_zero(y) {
                    continue;
                }
                let e: Vec<u32> = basis[a].iter().zip(&basis[b]).map(|(p, q)| p + q).collect();
                accumulate(base, &mut out, &base.mul(x, y), &ring.monomial_coords(&e));
            }
        }
        Ok(SplitElem { ring: ring.clone(), coords: out })
    }

    pub fn pow(&self, k: u32) -> SplitElem {
        let mut acc = self.ring.one();
        for _ in 0..k {
            acc = acc.mul(self).expect("same ring");
        }
        acc
    }

    /// `{basis: [[alpha...]...], coords: [string...]}`.
    pub fn to_json(&self) -> serde_json::Value {
        let base = self.ring.base();
        json!({
            "basis": self.ring.basis_json(),
            "coords": self.coords.iter().map(|c| base.format(c)).collect::<Vec<_>>(),
        })
    }
}

impl fmt::Display for SplitElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (1..=self.ring.degree()).map(|i| format!("r{i}")).collect();
        write!(f, "{}", self.ring.lift(self).format_with(&names))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quadratic() -> SplitRing {
        let z = Ring::integers();
        SplitRing::new(&Poly::parse(&z, "2,-3,1").unwrap()).unwrap()
    }

    fn ints(v: &[i64]) -> Vec<Value> {
        let z = Ring::integers();
        v.iter().map(|&x| z.from_int(x)).collect()
    }

    #[test]
    fn basis_order_is_mixed_radix() {
        let b = basis_exponents(3);
        assert_eq!(b, vec![vec![0, 0, 0], vec![1, 0, 0], vec![2, 0, 0], vec![0, 1, 0], vec![1, 1, 0], vec![2, 1, 0]]);
        for (k, e) in b.iter().enumerate() {
            assert_eq!(basis_index(e), Some(k));
        }
        assert_eq!(basis_index(&[3, 0, 0]), None);
        for n in 1..=6 {
            assert_eq!(basis_exponents(n).len(), factorial(n));
        }
    }

    #[test]
    fn quadratic_normal_forms() {
        let s = quadratic();
        assert_eq!(s.dim(), 2);
        assert_eq!(s.root(2).unwrap().coords(), &ints(&[3, -1])[..]);
        let x1x2 = MPoly::parse(&Ring::integers(), 2, "X1*X2").unwrap();
        assert_eq!(s.normal_form(&x1x2).unwrap().coords(), &ints(&[2, 0])[..]);
        let r1 = s.root(1).unwrap();
        let r2 = s.root(2).unwrap();
        assert_eq!(r1.mul(&r2).unwrap(), s.scalar(&Ring::integers().from_int(2)));
        assert_eq!(r1.add(&r2).unwrap(), s.scalar(&Ring::integers().from_int(3)));
        assert_eq!(s.one().mul(&r1).unwrap(), r1);
        assert_eq!(r2.to_string(), "-r1 + 3");
    }

    #[test]
    fn elementary_symmetric_reduce_to_coefficients() {
        let q = Ring::rationals();
        let f = Poly::parse(&q, "-1,-1,0,1").unwrap();
        let s = SplitRing::new(&f).unwrap();
        let a = f.a_coeffs();
        for i in 1..=3 {
            let sig = crate::multipoly::elementary_symmetric(3, i, &q).unwrap();
            assert_eq!(s.normal_form(&sig).unwrap(), s.scalar(&a[i - 1]));
        }
        assert!(s.universal_factorization_check());
        assert!(s.minimal_polynomial_check().unwrap());
    }

    #[test]
    fn degree_one_and_sizes() {
        let z = Ring::integers();
        let s = SplitRing::new(&Poly::parse(&z, "-7,1").unwrap()).unwrap();
        assert_eq!(s.dim(), 1);
        assert_eq!(s.root(1).unwrap(), s.scalar(&z.from_int(7)));
        assert!(s.universal_factorization_check());
        let z5 = Ring::modular(5).unwrap();
        let s = SplitRing::new(&Poly::parse(&z5, "-1,0,0,1").unwrap()).unwrap();
        assert_eq!(s.dim(), 6);
    }

    #[test]
    fn regular_representation_examples() {
        let s = quadratic();
        let z = Ring::integers();
        let m = s.regular_representation(&s.root(2).unwrap()).unwrap();
        assert_eq!(m.rows(), vec![ints(&[3, 2]), ints(&[-1, 0])]);
        assert_eq!(s.regular_representation(&s.one()).unwrap(), SqMatrix::identity(&z, 2));
    }

    #[test]
    fn cap_and_centrality() {
        let z = Ring::integers();
        let f = Poly::parse(&z, "1,0,0,0,0,0,0,1").unwrap();
        assert_eq!(SplitRing::new(&f).unwrap_err(), Error::CapExceeded { n: 7, cap: 6 });
        let m = crate::ring::parse_ring_spec("Mat:2:Zmod:2").unwrap();
        let g = Poly::parse(&m, "[[1,0],[0,0]],[[1,0],[0,1]]").unwrap();
        assert_eq!(SplitRing::new(&g).unwrap_err(), Error::NonCentralCoefficients);
    }

    #[test]
    fn gamma_is_injective_on_z6() {
        let z6 = Ring::modular(6).unwrap();
        let s = SplitRing::new(&Poly::parse(&z6, "0,-1,1").unwrap()).unwrap();
        assert!(s.gamma_injectivity_exhaustive(&[]).unwrap());
        let z = Ring::integers();
        let s = quadratic();
        assert!(s.gamma_injectivity_check(&ints(&[1, -1, 2])));
        assert!(!z.is_finite());
    }

    #[test]
    fn json_export() {
        let s = quadratic();
        let j = s.root(2).unwrap().to_json();
        assert_eq!(j["basis"], json!([[0, 0], [1, 0]]));
        assert_eq!(j["coords"], json!(["3", "-1"]));
    }

    #[test]
    fn concurrent_use_of_the_cache() {
        let z = Ring::integers();
        let s = SplitRing::new(&Poly::parse(&z, "3,-2,1,4,1").unwrap()).unwrap();
        let expected = {
            let fresh = SplitRing::new(s.poly()).unwrap();
            fresh.regular_representation(&fresh.root(4).unwrap()).unwrap()
        };
        let handles: Vec<_> = (0..4)
            .map(|_| {
                let s = s.clone();
                std::thread::spawn(move || s.regular_representation(&s.root(4).unwrap()).unwrap())
            })
            .collect();
        for h in handles {
            assert_eq!(h.join().unwrap().rows(), expected.rows());
        }
    }
}
