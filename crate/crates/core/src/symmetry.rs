//! Automorphisms of `R_f` over `R`, represented by the images of the roots:
//! permutations of `r_1..r_n` and scalings `r_i -> u r_i` by roots of unity.

use std::collections::HashSet;
use std::fmt;

use serde_json::json;

use crate::error::{Error, Result};
use crate::linalg;
use crate::ring::{Ring, RingKind, Value};
use crate::splitting::{SplitElem, SplitRing};

/// A permutation of `{1..n}` given by its images.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Perm {
    images: Vec<usize>,
}

impl Perm {
    pub fn new(images: Vec<usize>) -> Result<Perm> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i == 0 || i > n || seen[i - 1] {
                return Err(Error::PreconditionViolated(format!("{images:?} is not a permutation of 1..={n}")));
            }
            seen[i - 1] = true;
        }
        Ok(Perm { images })
    }

    pub fn identity(n: usize) -> Perm {
        Perm { images: (1..=n).collect() }
    }

    /// The transposition `(i j)` in `S_n`.
    pub fn transposition(n: usize, i: usize, j: usize) -> Result<Perm> {
        let mut images: Vec<usize> = (1..=n).collect();
        if i == 0 || j == 0 || i > n || j > n {
            return Err(Error::IndexOutOfRange(format!("transposition ({i} {j}) in S_{n}")));
        }
        images.swap(i - 1, j - 1);
        Ok(Perm { images })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// `i -> p(i)`, 1-based.
    pub fn apply(&self, i: usize) -> usize {
        self.images[i - 1]
    }

    /// `(self o other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Perm) -> Perm {
        Perm { images: other.images.iter().map(|&i| self.apply(i)).collect() }
    }

    /// All of `S_n` in lexicographic order of image lists.
    pub fn all(n: usize) -> Vec<Perm> {
        let mut out = Vec::new();
        let mut cur: Vec<usize> = (1..=n).collect();
        loop {
            out.push(Perm { images: cur.clone() });
            // next lexicographic permutation
            let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) else {
                return out;
            };
            let j = (i..n).rev().find(|&j| cur[j] > cur[i - 1]).expect("successor exists");
            cur.swap(i - 1, j);
            cur[i..].reverse();
        }
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.images.iter().map(|i| i.to_string()).collect();
        write!(f, "[{}]", parts.join(" "))
    }
}

/// Image of `x` under the automorphism induced by `X_i -> X_{p(i)}`.
pub fn apply_perm(ring: &SplitRing, p: &Perm, x: &SplitElem) -> Result<SplitElem> {
    let n = ring.degree();
    if p.degree() != n {
        return Err(Error::LengthMismatch { expected: n, got: p.degree() });
    }
    if x.ring() != ring {
        return Err(Error::RingMismatch);
    }
    let base = ring.base();
    let mut acc = ring.zero();
    for (alpha, c) in ring.basis().iter().zip(x.coords()) {
        if base.is_zero(c) {
            continue;
        }
        let mut beta = vec![0u32; n];
        for (i, &a) in alpha.iter().enumerate() {
            beta[p.apply(i + 1) - 1] = a;
        }
        acc = acc.add(&ring.monomial(&beta).scale(c))?;
    }
    Ok(acc)
}

/// Candidate images `t_1..t_n` of the roots.
#[derive(Clone, Debug)]
pub struct RootSystem {
    pub label: String,
    pub ring: SplitRing,
    pub roots: Vec<SplitElem>,
}

impl RootSystem {
    pub fn permutation(ring: &SplitRing, p: &Perm) -> Result<RootSystem> {
        let roots = (1..=ring.degree()).map(|i| ring.root(p.apply(i))).collect::<Result<Vec<_>>>()?;
        Ok(RootSystem { label: format!("permutation {p}"), ring: ring.clone(), roots })
    }
}

/// The three conditions for `r_i -> t_i` to define an automorphism over `R`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AutomorphismCertificate {
    pub system: String,
    pub commute: bool,
    pub factorization: bool,
    pub basis_unit_det: bool,
}

impl AutomorphismCertificate {
    pub fn verdict(&self) -> bool {
        self.commute && self.factorization && self.basis_unit_det
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "system": self.system,
            "commute": self.commute,
            "factorization": self.factorization,
            "basis_unit_det": self.basis_unit_det,
            "verdict": self.verdict(),
        })
    }
}

/// Checks that the `t_i` commute with each other and with `R`, that
/// `f = prod (Z - t_i)`, and that the change of basis from the
/// `t`-monomials to the `r`-monomials has a unit determinant.
pub fn is_automorphism_system(ring: &SplitRing, ts: &RootSystem) -> Result<AutomorphismCertificate> {
    if ts.ring != *ring {
        return Err(Error::RingMismatch);
    }
    let t = &ts.roots;
    let mut commute = true;
    'outer: for i in 0..t.len() {
        for j in i + 1..t.len() {
            if t[i].mul(&t[j])? != t[j].mul(&t[i])? {
                commute = false;
                break 'outer;
            }
        }
    }
    let base = ring.base();
    if commute && !base.is_commutative() && base.is_finite() {
        for c in base.elements(1 << 12)? {
            let s = ring.scalar(&c);
            if t.iter().any(|x| x.mul(&s).ok() != s.mul(x).ok()) {
                commute = false;
                break;
            }
        }
    }
    let factorization = ring.product_of_linear_factors(t)? == ring.embedded_poly();
    let monos = ring.monomials_in(t)?;
    let dim = ring.dim();
    // row-major matrix whose columns are the coordinates of t^alpha
    let entries: Vec<Value> = (0..dim).flat_map(|i| monos.iter().map(move |m| m.coords()[i].clone())).collect();
    let basis_unit_det = match linalg::determinant(base, dim, &entries) {
        Ok(det) => base.is_unit(&det),
        Err(Error::Unsupported(_)) => false,
        Err(e) => return Err(e),
    };
    Ok(AutomorphismCertificate { system: ts.label.clone(), commute, factorization, basis_unit_det })
}

/// Whether the `n!` permutations induce pairwise different maps, compared
/// through their images of `(r_1, ..., r_n)`.
pub fn theta_injectivity(ring: &SplitRing) -> Result<bool> {
    let n = ring.degree();
    let roots = ring.roots();
    let mut seen: HashSet<Vec<Vec<Value>>> = HashSet::new();
    for p in Perm::all(n) {
        let image: Vec<Vec<Value>> = (1..=n).map(|i| roots[p.apply(i) - 1].coords().to_vec()).collect();
        if !seen.insert(image) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `t_i = u r_i`, valid when `u` is a central unit with `u^d = 1`, `d | n`
/// and `a_i = 0` whenever `d` does not divide `i`.
pub fn scaling_system(ring: &SplitRing, u: &Value, d: usize) -> Result<RootSystem> {
    let n = ring.degree();
    let base = ring.base();
    if d == 0 || !n.is_multiple_of(d) {
        return Err(Error::PreconditionViolated(format!("d = {d} does not divide n = {n}")));
    }
    if !base.is_central(u) || !base.is_unit(u) {
        return Err(Error::PreconditionViolated(format!("{} is not a central unit", base.format(u))));
    }
    if !base.is_one(&base.pow(u, d as u64)) {
        return Err(Error::PreconditionViolated(format!("{}^{d} != 1", base.format(u))));
    }
    let a = ring.poly().a_coeffs();
    if let Some(i) = (1..=n).find(|i| i % d != 0 && !base.is_zero(&a[i - 1])) {
        return Err(Error::PreconditionViolated(format!("a_{i} != 0 but {d} does not divide {i}")));
    }
    let roots = ring.roots().iter().map(|r| r.scale(u)).collect();
    Ok(RootSystem { label: format!("scaling u={} d={d}", base.format(u)), ring: ring.clone(), roots })
}

/// Central units `u` with `u^d = 1`. Over Z, Q and polynomial rings over
/// them these are `1` and possibly `-1`; finite rings are enumerated.
pub fn roots_of_unity(base: &Ring, d: usize) -> Result<Vec<Value>> {
    let candidates = if base.is_finite() {
        base.elements(1 << 16)?
    } else {
        let infinite_domain = match base.kind() {
            RingKind::Integers | RingKind::Rationals => true,
            RingKind::PolyCoef { base: inner, .. } => {
                matches!(inner.kind(), RingKind::Integers | RingKind::Rationals)
            }
            _ => false,
        };
        if !infinite_domain {
            return Err(Error::Unsupported(format!("units of {}", base.spec())));
        }
        let mut v = vec![base.one()];
        let m1 = base.neg(&base.one());
        if m1 != base.one() {
            v.push(m1);
        }
        v
    };
    Ok(candidates
        .into_iter()
        .filter(|u| base.is_central(u) && base.is_unit(u) && base.is_one(&base.pow(u, d as u64)))
        .collect())
}

/// Every scaling system allowed by the coefficient pattern of `f`, over all
/// `d >= 2` dividing `n`; each `u` appears once, with the first `d` that
/// admits it.
pub fn all_scaling_systems(ring: &SplitRing) -> Result<Vec<RootSystem>> {
    let n = ring.degree();
    let mut seen: Vec<Value> = Vec::new();
    let mut out = Vec::new();
    for d in (2..=n).filter(|d| n.is_multiple_of(*d)) {
        let a = ring.poly().a_coeffs();
        if (1..=n).any(|i| i % d != 0 && !ring.base().is_zero(&a[i - 1])) {
            continue;
        }
        for u in roots_of_unity(ring.base(), d)? {
            if seen.contains(&u) {
                continue;
            }
            out.push(scaling_system(ring, &u, d)?);
            seen.push(u);
        }
    }
    Ok(out)
}
