//! Sparse multivariate polynomials in `X1..Xn` and the generator
//! polynomials `f_1..f_n` of the splitting-ring ideal.
//!
//! The variables commute with each other and with the coefficients. The
//! generators are built two ways: by iterated divided differences starting
//! from `f(X1)`, and by the closed formula in complete homogeneous sums
//! `f_i = sum_k b_{n-k} S_i^{n-i+1-k}`. Both are exact polynomial
//! computations, so over a polynomial coefficient ring the identities are
//! checked symbolically rather than at sample points.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde_json::json;

use crate::error::{Error, Result};
use crate::expr::{parse_with, Algebra};
use crate::poly::Poly;
use crate::ring::{format_terms, monomial_text, sparse_accumulate, Ring, Value};

#[derive(Clone, Debug, PartialEq)]
pub struct MPoly {
    ring: Ring,
    nvars: usize,
    terms: BTreeMap<Vec<u32>, Value>,
}

impl MPoly {
    pub fn zero(ring: &Ring, nvars: usize) -> MPoly {
        MPoly { ring: ring.clone(), nvars, terms: BTreeMap::new() }
    }

    pub fn constant(ring: &Ring, nvars: usize, c: Value) -> MPoly {
        MPoly::monomial(ring, vec![0; nvars], c)
    }

    pub fn one(ring: &Ring, nvars: usize) -> MPoly {
        MPoly::constant(ring, nvars, ring.one())
    }

    pub fn monomial(ring: &Ring, exps: Vec<u32>, c: Value) -> MPoly {
        let nvars = exps.len();
        let mut terms = BTreeMap::new();
        if !ring.is_zero(&c) {
            terms.insert(exps, c);
        }
        MPoly { ring: ring.clone(), nvars, terms }
    }

    /// The variable `X_i`, 1-based.
    pub fn var(ring: &Ring, nvars: usize, i: usize) -> Result<MPoly> {
        check_index(i, nvars)?;
        let mut e = vec![0; nvars];
        e[i - 1] = 1;
        Ok(MPoly::monomial(ring, e, ring.one()))
    }

    /// `p(X_i)` for a univariate `p`.
    pub fn from_univariate(p: &Poly, nvars: usize, i: usize) -> Result<MPoly> {
        check_index(i, nvars)?;
        let ring = p.ring();
        let mut out = MPoly::zero(ring, nvars);
        for (k, c) in p.coeffs().iter().enumerate() {
            let mut e = vec![0; nvars];
            e[i - 1] = k as u32;
            sparse_accumulate(ring, &mut out.terms, e, c.clone());
        }
        Ok(out)
    }

    pub fn from_terms(ring: &Ring, nvars: usize, terms: impl IntoIterator<Item = (Vec<u32>, Value)>) -> MPoly {
        let mut out = MPoly::zero(ring, nvars);
        for (e, c) in terms {
            assert_eq!(e.len(), nvars, "exponent vector length");
            sparse_accumulate(ring, &mut out.terms, e, c);
        }
        out
    }

    /// Parses text such as `X1^2 + X1*X2 - a1*(X1 + X2) + a2`; names other
    /// than `X1..Xn` resolve in the coefficient ring.
    pub fn parse(ring: &Ring, nvars: usize, text: &str) -> Result<MPoly> {
        parse_with(&MPolyAlgebra { ring, nvars }, text)
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u32>, Value> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn same_shape(&self, other: &MPoly) -> Result<()> {
        if !self.ring.same(&other.ring) {
            return Err(Error::RingMismatch);
        }
        if self.nvars != other.nvars {
            return Err(Error::LengthMismatch { expected: self.nvars, got: other.nvars });
        }
        Ok(())
    }

    pub fn add(&self, other: &MPoly) -> Result<MPoly> {
        self.same_shape(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            sparse_accumulate(&self.ring, &mut out.terms, e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &MPoly) -> Result<MPoly> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> MPoly {
        let terms = self.terms.iter().map(|(e, c)| (e.clone(), self.ring.neg(c))).collect();
        MPoly { ring: self.ring.clone(), nvars: self.nvars, terms }
    }

    pub fn mul(&self, other: &MPoly) -> Result<MPoly> {
        self.same_shape(other)?;
        let r = &self.ring;
        let mut out = MPoly::zero(r, self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                sparse_accumulate(r, &mut out.terms, e, r.mul(c1, c2));
            }
        }
        Ok(out)
    }

    /// `c * self`.
    pub fn scale(&self, c: &Value) -> MPoly {
        let r = &self.ring;
        MPoly::from_terms(r, self.nvars, self.terms.iter().map(|(e, x)| (e.clone(), r.mul(c, x))))
    }

    pub fn pow(&self, k: u32) -> MPoly {
        let mut acc = MPoly::one(&self.ring, self.nvars);
        for _ in 0..k {
            acc = acc.mul(self).expect("same shape");
        }
        acc
    }

    /// Exchanges `X_i` and `X_j` (1-based).
    pub fn swap_vars(&self, i: usize, j: usize) -> Result<MPoly> {
        check_index(i, self.nvars)?;
        check_index(j, self.nvars)?;
        Ok(self.map_exponents(|e| e.swap(i - 1, j - 1)))
    }

    /// Renames variables by `X_k -> X_{perm[k-1]}` (1-based images).
    pub fn permute_vars(&self, perm: &[usize]) -> MPoly {
        self.map_exponents(|e| {
            let old = e.clone();
            for (k, &target) in perm.iter().enumerate() {
                e[target - 1] = old[k];
            }
        })
    }

    fn map_exponents(&self, f: impl Fn(&mut Vec<u32>)) -> MPoly {
        let terms = self.terms.iter().map(|(e, c)| {
            let mut e = e.clone();
            f(&mut e);
            (e, c.clone())
        });
        MPoly::from_terms(&self.ring, self.nvars, terms)
    }

    /// Degree in `X_i` (1-based); `None` for the zero polynomial.
    pub fn degree_in(&self, i: usize) -> Option<u32> {
        self.terms.keys().map(|e| e[i - 1]).max()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    /// Coefficient of `X_i^d` as a polynomial in the other variables.
    pub fn coefficient_in(&self, i: usize, d: u32) -> MPoly {
        let terms = self.terms.iter().filter(|(e, _)| e[i - 1] == d).map(|(e, c)| {
            let mut e = e.clone();
            e[i - 1] = 0;
            (e, c.clone())
        });
        MPoly::from_terms(&self.ring, self.nvars, terms)
    }

    /// Only `X_1..X_k` occur.
    pub fn uses_only_first(&self, k: usize) -> bool {
        self.terms.keys().all(|e| e[k..].iter().all(|&x| x == 0))
    }

    /// Monic of degree `d` in `X_i`: the coefficient of `X_i^d` is 1.
    pub fn is_monic_in(&self, i: usize, d: u32) -> bool {
        self.degree_in(i) == Some(d) && self.coefficient_in(i, d) == MPoly::one(&self.ring, self.nvars)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let terms: Vec<serde_json::Value> = self
            .sorted_terms()
            .into_iter()
            .map(|(e, c)| json!({ "exponents": e, "coeff": self.ring.format(c) }))
            .collect();
        serde_json::Value::Array(terms)
    }

    /// Terms by descending total degree, then lexicographically with
    /// `X1 > X2 > ...`.
    fn sorted_terms(&self) -> Vec<(&Vec<u32>, &Value)> {
        let mut t: Vec<(&Vec<u32>, &Value)> = self.terms.iter().collect();
        t.sort_by(|(a, _), (b, _)| {
            let da: u32 = a.iter().sum();
            let db: u32 = b.iter().sum();
            db.cmp(&da).then_with(|| b.cmp(a))
        });
        t
    }

    pub fn format(&self) -> String {
        let names: Vec<String> = (1..=self.nvars).map(|i| format!("X{i}")).collect();
        self.format_with(&names)
    }

    /// Renders with terms sharing a coefficient grouped, e.g.
    /// `X1^2 + X1*X2 + X2^2 - a1*(X1 + X2) + a2`.
    pub fn format_with(&self, names: &[String]) -> String {
        let one = self.ring.one();
        let mut groups: Vec<(&Value, Vec<String>)> = Vec::new();
        for (e, c) in self.sorted_terms() {
            let m = monomial_text(names, e, "");
            if *c == one {
                groups.push((c, vec![m]));
            } else if let Some(g) = groups.iter_mut().find(|(gc, _)| *gc == c) {
                g.1.push(m);
            } else {
                groups.push((c, vec![m]));
            }
        }
        let pieces: Vec<(String, &Value)> = groups
            .into_iter()
            .map(|(c, monos)| {
                if monos.len() == 1 {
                    (monos.into_iter().next().expect("one"), c)
                } else {
                    let inner: Vec<String> =
                        monos.into_iter().map(|m| if m.is_empty() { "1".into() } else { m }).collect();
                    (format!("({})", inner.join(" + ")), c)
                }
            })
            .collect();
        format_terms(&self.ring, &pieces)
    }
}

fn check_index(i: usize, n: usize) -> Result<()> {
    if i == 0 || i > n {
        return Err(Error::IndexOutOfRange(format!("variable index {i} not in 1..={n}")));
    }
    Ok(())
}

struct MPolyAlgebra<'a> {
    ring: &'a Ring,
    nvars: usize,
}

impl Algebra for MPolyAlgebra<'_> {
    type V = MPoly;
    fn integer(&self, n: &BigInt) -> MPoly {
        MPoly::constant(self.ring, self.nvars, self.ring.from_bigint(n))
    }
    fn add(&self, a: &MPoly, b: &MPoly) -> MPoly {
        a.add(b).expect("same shape")
    }
    fn sub(&self, a: &MPoly, b: &MPoly) -> MPoly {
        a.sub(b).expect("same shape")
    }
    fn mul(&self, a: &MPoly, b: &MPoly) -> MPoly {
        a.mul(b).expect("same shape")
    }
    fn neg(&self, a: &MPoly) -> MPoly {
        a.neg()
    }
    fn pow(&self, a: &MPoly, e: u64) -> MPoly {
        a.pow(e as u32)
    }
    fn div(&self, a: &MPoly, b: &MPoly, pos: usize) -> Result<MPoly> {
        let zero = vec![0; self.nvars];
        match (b.terms.len(), b.terms.get(&zero)) {
            (1, Some(c)) => {
                let inv = self.ring.inverse(c).map_err(|e| Error::parse(pos, e.to_string()))?;
                Ok(a.scale(&inv))
            }
            _ => Err(Error::parse(pos, "can only divide by constants")),
        }
    }
    fn ident(&self, name: &str, pos: usize) -> Result<MPoly> {
        if let Some(k) = name.strip_prefix('X').and_then(|d| d.parse::<usize>().ok()) {
            return MPoly::var(self.ring, self.nvars, k).map_err(|e| Error::parse(pos, e.to_string()));
        }
        let c = self.ring.named(name).ok_or_else(|| Error::parse(pos, format!("unknown name `{name}`")))?;
        Ok(MPoly::constant(self.ring, self.nvars, c))
    }
    fn literal(&self, text: &str, pos: usize) -> Result<MPoly> {
        Ok(MPoly::constant(self.ring, self.nvars, self.ring.parse_literal(text, pos)?))
    }
}

/// `sigma_i(X_1..X_n)`.
pub fn elementary_symmetric(n: usize, i: usize, ring: &Ring) -> Result<MPoly> {
    if i == 0 || i > n {
        return Err(Error::IndexOutOfRange(format!("sigma_{i} needs 1 <= i <= {n}")));
    }
    Ok(sigma(n, i, ring))
}

/// `sigma_i` with `sigma_0 = 1` and `sigma_i = 0` for `i > n`.
fn sigma(n: usize, i: usize, ring: &Ring) -> MPoly {
    let mut terms = Vec::new();
    let mut chosen = vec![0u32; n];
    fn rec(pos: usize, left: usize, chosen: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if left == 0 {
            out.push(chosen.clone());
            return;
        }
        if chosen.len() - pos < left {
            return;
        }
        chosen[pos] = 1;
        rec(pos + 1, left - 1, chosen, out);
        chosen[pos] = 0;
        rec(pos + 1, left, chosen, out);
    }
    rec(0, i, &mut chosen, &mut terms);
    MPoly::from_terms(ring, n, terms.into_iter().map(|e| (e, ring.one())))
}

/// `S_j^i`: the sum of all monomials of total degree `i` in `X_1..X_j`,
/// embedded in `n` variables. `S_j^0 = 1`.
pub fn complete_homogeneous_prefix(n: usize, j: usize, i: usize, ring: &Ring) -> Result<MPoly> {
    if j == 0 || j > n {
        return Err(Error::IndexOutOfRange(format!("S_{j}^{i} needs 1 <= j <= {n}")));
    }
    let mut terms = Vec::new();
    let mut e = vec![0u32; n];
    fn rec(pos: usize, j: usize, left: u32, e: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if pos + 1 == j {
            e[pos] = left;
            out.push(e.clone());
            e[pos] = 0;
            return;
        }
        for k in 0..=left {
            e[pos] = k;
            rec(pos + 1, j, left - k, e, out);
        }
        e[pos] = 0;
    }
    rec(0, j, i as u32, &mut e, &mut terms);
    Ok(MPoly::from_terms(ring, n, terms.into_iter().map(|e| (e, ring.one()))))
}

/// Divided difference `(p^{(i,j)} - p) / (X_j - X_i)`, where `p^{(i,j)}`
/// swaps `X_i` and `X_j`.
///
/// The numerator is divided synthetically as a polynomial in `X_j` by the
/// monic linear factor `X_j - X_i`; a nonzero remainder is reported as
/// `InexactDivision` instead of being assumed away.
pub fn delta(p: &MPoly, i: usize, j: usize) -> Result<MPoly> {
    let n = p.nvars();
    check_index(i, n)?;
    check_index(j, n)?;
    if i == j {
        return Err(Error::IndexOutOfRange("divided difference needs i != j".into()));
    }
    let num = p.swap_vars(i, j)?.sub(p)?;
    let Some(top) = num.degree_in(j) else {
        return Ok(MPoly::zero(p.ring(), n));
    };
    let xi = MPoly::var(p.ring(), n, i)?;
    let xj = MPoly::var(p.ring(), n, j)?;
    // q_{k-1} = N_k + X_i q_k, from the top down; remainder N_0 + X_i q_0.
    let mut quotient = MPoly::zero(p.ring(), n);
    let mut carry = MPoly::zero(p.ring(), n);
    for k in (1..=top).rev() {
        carry = num.coefficient_in(j, k).add(&xi.mul(&carry)?)?;
        quotient = quotient.add(&carry.mul(&xj.pow(k - 1))?)?;
    }
    let remainder = num.coefficient_in(j, 0).add(&xi.mul(&carry)?)?;
    if !remainder.is_zero() {
        return Err(Error::InexactDivision(format!("remainder {} dividing by X{j} - X{i}", remainder.format())));
    }
    Ok(quotient)
}

fn require_degree(f: &Poly, n: usize) -> Result<()> {
    let deg = f.require_monic()?;
    if deg != n {
        return Err(Error::LengthMismatch { expected: n, got: deg });
    }
    Ok(())
}

/// `f_1 = f(X_1)`, `f_{i+1} = Delta_{(i,i+1)} f_i`.
pub fn build_relations_recursive(f: &Poly, n: usize) -> Result<Vec<MPoly>> {
    require_degree(f, n)?;
    let mut out = vec![MPoly::from_univariate(f, n, 1)?];
    for i in 1..n {
        let next = delta(&out[i - 1], i, i + 1)?;
        out.push(next);
    }
    Ok(out)
}

/// `f_i = S_i^{n-i+1} - a_1 S_i^{n-i} + a_2 S_i^{n-i-1} - ... `, written with
/// `b_{n-k} = (-1)^k a_k` as `f_i = sum_{k=0}^{n-i+1} b_{n-k} S_i^{n-i+1-k}`.
pub fn build_relations_closed(f: &Poly, n: usize) -> Result<Vec<MPoly>> {
    require_degree(f, n)?;
    let ring = f.ring();
    (1..=n)
        .map(|i| {
            let top = n - i + 1;
            let mut fi = MPoly::zero(ring, n);
            for k in 0..=top {
                let s = complete_homogeneous_prefix(n, i, top - k, ring)?;
                fi = fi.add(&s.scale(&f.coeff(n - k)))?;
            }
            Ok(fi)
        })
        .collect()
}

/// Outcome of an identity check: the first failing index and the nonzero
/// difference, if any.
#[derive(Clone, Debug, PartialEq)]
pub struct IdentityCheck {
    pub holds: bool,
    pub failing_index: Option<usize>,
    pub difference: Option<MPoly>,
}

impl IdentityCheck {
    fn from_differences(diffs: impl IntoIterator<Item = (usize, MPoly)>) -> IdentityCheck {
        for (i, d) in diffs {
            if !d.is_zero() {
                return IdentityCheck { holds: false, failing_index: Some(i), difference: Some(d) };
            }
        }
        IdentityCheck { holds: true, failing_index: None, difference: None }
    }
}

/// Checks `f_i = sum_{k=1}^{n-i+1} (-1)^{k-1} (sigma_k - a_k) S_i^{n-i+1-k}`
/// for every `i`, with `f_i` from the divided-difference recursion.
pub fn verify_elementary_expansion(f: &Poly, n: usize) -> Result<IdentityCheck> {
    let rels = build_relations_recursive(f, n)?;
    let ring = f.ring();
    let a = f.a_coeffs();
    let mut diffs = Vec::with_capacity(n);
    for (idx, fi) in rels.iter().enumerate() {
        let i = idx + 1;
        let top = n - i + 1;
        let mut rhs = MPoly::zero(ring, n);
        for k in 1..=top {
            let g = sigma(n, k, ring).sub(&MPoly::constant(ring, n, a[k - 1].clone()))?;
            let mut term = g.mul(&complete_homogeneous_prefix(n, i, top - k, ring)?)?;
            if k % 2 == 0 {
                term = term.neg();
            }
            rhs = rhs.add(&term)?;
        }
        diffs.push((i, fi.sub(&rhs)?));
    }
    Ok(IdentityCheck::from_differences(diffs))
}

/// `sum_{k=0}^{n-i+1} (-1)^k sigma_k S_i^{n-i+1-k}`, which vanishes
/// identically.
pub fn alternating_complete_sum(n: usize, i: usize, ring: &Ring) -> Result<MPoly> {
    check_index(i, n)?;
    let top = n - i + 1;
    let mut acc = MPoly::zero(ring, n);
    for k in 0..=top {
        let mut term = sigma(n, k, ring).mul(&complete_homogeneous_prefix(n, i, top - k, ring)?)?;
        if k % 2 == 1 {
            term = term.neg();
        }
        acc = acc.add(&term)?;
    }
    Ok(acc)
}

/// `X_1^n - sigma_1 X_1^{n-1} + ... + (-1)^n sigma_n`, built from powers of
/// `X_1`; vanishes identically.
pub fn root_relation(n: usize, ring: &Ring) -> Result<MPoly> {
    let x1 = MPoly::var(ring, n, 1)?;
    let mut acc = MPoly::zero(ring, n);
    for k in 0..=n {
        let mut term = sigma(n, k, ring).mul(&x1.pow((n - k) as u32))?;
        if k % 2 == 1 {
            term = term.neg();
        }
        acc = acc.add(&term)?;
    }
    Ok(acc)
}

/// Invariance under the transpositions `(j, j+1)`, `1 <= j < k`.
pub fn is_symmetric_prefix(p: &MPoly, k: usize) -> bool {
    (1..k.min(p.nvars())).all(|j| p.swap_vars(j, j + 1).map(|q| q == *p).unwrap_or(false))
}

/// Symbolic coefficient ring `Z[a1..an]` and `f = Z^n - a1 Z^{n-1} + ... `.
pub fn symbolic_a(n: usize) -> (Ring, Poly) {
    let ring = Ring::poly_coef_named(Ring::integers(), (1..=n).map(|i| format!("a{i}")).collect()).expect("n >= 1");
    let a: Vec<Value> = (1..=n).map(|i| ring.named(&format!("a{i}")).expect("named")).collect();
    let f = Poly::monic_from_a(ring.clone(), &a);
    (ring, f)
}

/// Symbolic coefficient ring `Z[b0..b_{n-1}]` and
/// `f = Z^n + b_{n-1} Z^{n-1} + ... + b0`.
pub fn symbolic_b(n: usize) -> (Ring, Poly) {
    let ring = Ring::poly_coef_named(Ring::integers(), (0..n).map(|i| format!("b{i}")).collect()).expect("n >= 1");
    let b: Vec<Value> = (0..n).map(|i| ring.named(&format!("b{i}")).expect("named")).collect();
    let f = Poly::monic_from_b(ring.clone(), &b);
    (ring, f)
}
