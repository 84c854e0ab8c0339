//! Commuting matrices `A_1..A_n` of size `n!` with `sigma_i(A) = a_i`, built
//! recursively from companion matrices over a tower of quotient rings, and
//! the checks that certify them.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::linalg::{self, SqMatrix};
use crate::poly::{quotient_ring, Poly};
use crate::ring::{Ring, Value};
use crate::splitting::{basis_exponents, basis_index, factorial, SplitRing, DEFAULT_CAP};

/// `b_{n-j} = (-1)^j a_j`, returned as `[b_0, ..., b_{n-1}]`.
pub fn a_to_b(ring: &Ring, a: &[Value]) -> Vec<Value> {
    let n = a.len();
    (0..n)
        .map(|k| {
            let j = n - k;
            let x = a[j - 1].clone();
            if j % 2 == 1 {
                ring.neg(&x)
            } else {
                x
            }
        })
        .collect()
}

/// Inverse of [`a_to_b`]: `[b_0..b_{n-1}]` to `[a_1..a_n]`.
pub fn b_to_a(ring: &Ring, b: &[Value]) -> Vec<Value> {
    let n = b.len();
    (1..=n)
        .map(|j| {
            let x = b[n - j].clone();
            if j % 2 == 1 {
                ring.neg(&x)
            } else {
                x
            }
        })
        .collect()
}

/// [`a_to_b`] with a length check against the degree.
pub fn b_from_a(ring: &Ring, a: &[Value], n: usize) -> Result<Vec<Value>> {
    if a.len() != n {
        return Err(Error::LengthMismatch { expected: n, got: a.len() });
    }
    Ok(a_to_b(ring, a))
}

/// [`b_to_a`] with a length check against the degree.
pub fn a_from_b(ring: &Ring, b: &[Value], n: usize) -> Result<Vec<Value>> {
    if b.len() != n {
        return Err(Error::LengthMismatch { expected: n, got: b.len() });
    }
    Ok(b_to_a(ring, b))
}

/// Subdiagonal ones and last column `-b_0, ..., -b_{n-1}`.
pub fn companion(f: &Poly) -> Result<SqMatrix> {
    let n = f.require_monic()?;
    let r = f.ring();
    Ok(SqMatrix::from_fn(r, n, |i, j| {
        if j == n - 1 {
            r.neg(&f.coeff(i))
        } else if i == j + 1 {
            r.one()
        } else {
            r.zero()
        }
    }))
}

/// `g^{[j]}`: strip the `j + 1` lowest coefficients and divide by `Z^{j+1}`.
pub fn derived_poly(g: &Poly, j: usize) -> Poly {
    let c = g.coeffs();
    if j + 1 >= c.len() {
        return Poly::zero(g.ring().clone());
    }
    Poly::new(g.ring().clone(), c[j + 1..].to_vec())
}

/// `g(C_f)` column by column: column `k` is the coordinate vector of
/// `Z^k g mod f`.
pub fn eval_at_companion(g: &Poly, f: &Poly) -> Result<SqMatrix> {
    let n = f.require_monic()?;
    if !g.ring().same(f.ring()) {
        return Err(Error::RingMismatch);
    }
    let r = f.ring();
    let mut col = g.rem_monic(f)?;
    let mut columns = Vec::with_capacity(n);
    for k in 0..n {
        if k > 0 {
            col = col.shift(1).rem_monic(f)?;
        }
        columns.push((0..n).map(|i| col.coeff(i)).collect());
    }
    Ok(SqMatrix::from_columns(r, &columns))
}

/// `g(M)` by Horner's rule with matrix products.
pub fn eval_horner(g: &Poly, m: &SqMatrix) -> Result<SqMatrix> {
    if !g.ring().same(m.ring()) {
        return Err(Error::RingMismatch);
    }
    let r = m.ring();
    let d = m.size();
    let mut acc = SqMatrix::zero(r, d);
    for c in g.coeffs().iter().rev() {
        acc = acc.mul(m)?.add(&SqMatrix::scalar(r, d, c))?;
    }
    Ok(acc)
}

/// `f^{[j]}(C_f)` written down from its band structure, without any
/// arithmetic: with `t = row - col + j + 1` and `b_n = 1`, the entry is
/// `b_t` when `col <= j` and `j < t <= n`, `-b_t` when `col > j` and
/// `0 <= t <= j`, and zero otherwise.
pub fn derived_at_companion_pattern(f: &Poly, j: usize) -> Result<SqMatrix> {
    let n = f.require_monic()?;
    let r = f.ring();
    Ok(SqMatrix::from_fn(r, n, |row, col| {
        let t = row as i64 - col as i64 + j as i64 + 1;
        if col <= j && t > j as i64 && t <= n as i64 {
            f.coeff(t as usize)
        } else if col > j && t >= 0 && t <= j as i64 {
            r.neg(&f.coeff(t as usize))
        } else {
            r.zero()
        }
    }))
}

/// `A_1..A_n` for `f` over its coefficient ring, refusing `n > cap`.
pub fn build_realization(f: &Poly, cap: usize) -> Result<Vec<SqMatrix>> {
    let n = f.require_monic()?;
    if n > cap {
        return Err(Error::CapExceeded { n, cap });
    }
    if !f.has_central_coeffs() {
        return Err(Error::NonCentralCoefficients);
    }
    realize(f, 1)
}

fn realize(f: &Poly, depth: usize) -> Result<Vec<SqMatrix>> {
    let n = f.require_monic()?;
    let base = f.ring();
    let cf = companion(f)?;
    if n == 1 {
        return Ok(vec![cf]);
    }
    // One root at a time: S = base[Z]/(f), and g = f(Z)/(Z - rho) over S.
    let s = quotient_ring(base, f, &format!("r{depth}"))?;
    let rho = s.named(&format!("r{depth}")).expect("root of the quotient");
    let lift = |p: &Poly| -> Result<Poly> {
        let coeffs = p.coeffs().iter().map(|c| s.embed(c.clone())).collect::<Result<Vec<_>>>()?;
        Ok(Poly::new(s.clone(), coeffs))
    };
    let mut g_coeffs = Vec::with_capacity(n);
    for k in 0..n - 1 {
        g_coeffs.push(lift(&derived_poly(f, k))?.eval_value(&rho));
    }
    g_coeffs.push(s.one());
    let g = Poly::new(s.clone(), g_coeffs);
    let inner = realize(&g, depth + 1)?;

    let outer = factorial(n - 1);
    let mut out = vec![SqMatrix::block_diagonal(&cf, outer)];
    let mut blocks: HashMap<Value, SqMatrix> = HashMap::new();
    for b in &inner {
        for v in b.entries() {
            if !blocks.contains_key(v) {
                let Value::Res(c) = v else {
                    return Err(Error::Unsupported("quotient entry expected".into()));
                };
                let p = Poly::new(base.clone(), c.clone());
                blocks.insert(v.clone(), eval_at_companion(&p, f)?);
            }
        }
        out.push(SqMatrix::from_blocks(base, outer, n, |k, l| blocks[b.get(k, l)].clone()));
    }
    Ok(out)
}

/// Outcome of one named verification.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CheckOutcome {
    Pass,
    Fail(String),
    Skipped(String),
}

impl CheckOutcome {
    fn from_bool(ok: bool, why: impl FnOnce() -> String) -> CheckOutcome {
        if ok {
            CheckOutcome::Pass
        } else {
            CheckOutcome::Fail(why())
        }
    }

    pub fn is_fail(&self) -> bool {
        matches!(self, CheckOutcome::Fail(_))
    }

    pub fn label(&self) -> &'static str {
        match self {
            CheckOutcome::Pass => "pass",
            CheckOutcome::Fail(_) => "fail",
            CheckOutcome::Skipped(_) => "skipped",
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        match self {
            CheckOutcome::Pass => serde_json::json!({ "status": "pass" }),
            CheckOutcome::Fail(d) => serde_json::json!({ "status": "fail", "detail": d }),
            CheckOutcome::Skipped(d) => serde_json::json!({ "status": "skipped", "detail": d }),
        }
    }
}

pub const CHECK_NAMES: [&str; 7] = [
    "commutation",
    "centrality",
    "sigma_identities",
    "factorization",
    "independence_rank",
    "entry_pattern",
    "regular_rep_agreement",
];

#[derive(Clone, Debug)]
pub struct RealizationReport {
    pub n: usize,
    pub matrices: Vec<SqMatrix>,
    /// One entry per name in [`CHECK_NAMES`], in that order.
    pub checks: Vec<(&'static str, CheckOutcome)>,
}

impl RealizationReport {
    pub fn passed(&self) -> bool {
        !self.checks.iter().any(|(_, c)| c.is_fail())
    }

    pub fn check(&self, name: &str) -> Option<&CheckOutcome> {
        self.checks.iter().find(|(k, _)| *k == name).map(|(_, c)| c)
    }

    pub fn checks_json(&self) -> serde_json::Value {
        let map: serde_json::Map<String, serde_json::Value> =
            self.checks.iter().map(|(k, c)| (k.to_string(), c.to_json())).collect();
        serde_json::Value::Object(map)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "n": self.n,
            "matrices": self.matrices.iter().map(SqMatrix::to_json).collect::<Vec<_>>(),
            "checks": self.checks_json(),
            "passed": self.passed(),
        })
    }
}

/// Which checks to run; the rest are reported as skipped.
#[derive(Clone, Debug)]
pub struct VerifyOptions {
    pub only: Option<Vec<&'static str>>,
    pub cap: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { only: None, cap: DEFAULT_CAP }
    }
}

impl VerifyOptions {
    pub fn only(names: &[&'static str]) -> Self {
        VerifyOptions { only: Some(names.to_vec()), ..Default::default() }
    }

    pub fn with_cap(mut self, cap: usize) -> Self {
        self.cap = cap;
        self
    }

    fn wants(&self, name: &str) -> bool {
        self.only.as_ref().is_none_or(|o| o.contains(&name))
    }
}

/// Runs the requested checks against `mats`, which should realize `f`.
pub fn verify_realization(f: &Poly, mats: &[SqMatrix], opts: &VerifyOptions) -> Result<RealizationReport> {
    let n = f.require_monic()?;
    if mats.len() != n {
        return Err(Error::LengthMismatch { expected: n, got: mats.len() });
    }
    let dim = factorial(n);
    for m in mats {
        if m.size() != dim {
            return Err(Error::LengthMismatch { expected: dim, got: m.size() });
        }
        if !m.ring().same(f.ring()) {
            return Err(Error::RingMismatch);
        }
    }
    let mut checks = Vec::with_capacity(CHECK_NAMES.len());
    for name in CHECK_NAMES {
        let outcome = if opts.wants(name) {
            match name {
                "commutation" => check_commutation(mats)?,
                "centrality" => check_centrality(mats),
                "sigma_identities" => check_sigma(f, mats)?,
                "factorization" => check_factorization(f, mats)?,
                "independence_rank" => check_independence(mats)?,
                "entry_pattern" => check_entry_pattern(f, mats),
                "regular_rep_agreement" => check_regular_rep(f, mats, opts.cap)?,
                _ => unreachable!("fixed check list"),
            }
        } else {
            CheckOutcome::Skipped("not requested".into())
        };
        checks.push((name, outcome));
    }
    Ok(RealizationReport { n, matrices: mats.to_vec(), checks })
}

fn check_commutation(mats: &[SqMatrix]) -> Result<CheckOutcome> {
    for i in 0..mats.len() {
        for j in i + 1..mats.len() {
            if !mats[i].commutes_with(&mats[j])? {
                return Ok(CheckOutcome::Fail(format!("A{} and A{} do not commute", i + 1, j + 1)));
            }
        }
    }
    Ok(CheckOutcome::Pass)
}

/// `A_i` commutes with every scalar matrix exactly when its entries are
/// central in the base.
fn check_centrality(mats: &[SqMatrix]) -> CheckOutcome {
    for (i, m) in mats.iter().enumerate() {
        if let Some(v) = m.entries().iter().find(|v| !m.ring().is_central(v)) {
            return CheckOutcome::Fail(format!("A{} has non-central entry {}", i + 1, m.ring().format(v)));
        }
    }
    CheckOutcome::Pass
}

/// `e_k(A_1..A_m)` for `k = 0..=m` by the recurrence
/// `e_k <- e_k + e_{k-1} A_m`.
fn elementary_symmetric_matrices(mats: &[SqMatrix]) -> Result<Vec<SqMatrix>> {
    let r = mats[0].ring();
    let d = mats[0].size();
    let mut e = vec![SqMatrix::identity(r, d)];
    for a in mats {
        e.push(SqMatrix::zero(r, d));
        for k in (1..e.len()).rev() {
            e[k] = e[k].add(&e[k - 1].mul(a)?)?;
        }
    }
    Ok(e)
}

fn check_sigma(f: &Poly, mats: &[SqMatrix]) -> Result<CheckOutcome> {
    let r = f.ring();
    let d = mats[0].size();
    let a = f.a_coeffs();
    let e = elementary_symmetric_matrices(mats)?;
    for i in 1..=mats.len() {
        if e[i] != SqMatrix::scalar(r, d, &a[i - 1]) {
            return Ok(CheckOutcome::Fail(format!("sigma_{i}(A) != a_{i} I")));
        }
    }
    Ok(CheckOutcome::Pass)
}

/// `(Z - A_1)...(Z - A_n)` as a list of matrix coefficients, lowest first.
pub fn product_of_linear_factors(mats: &[SqMatrix]) -> Result<Vec<SqMatrix>> {
    let r = mats[0].ring();
    let d = mats[0].size();
    let mut acc = vec![SqMatrix::identity(r, d)];
    for a in mats {
        let mut next = vec![SqMatrix::zero(r, d); acc.len() + 1];
        for (k, c) in acc.iter().enumerate() {
            next[k + 1] = next[k + 1].add(c)?;
            next[k] = next[k].sub(&c.mul(a)?)?;
        }
        acc = next;
    }
    Ok(acc)
}

fn check_factorization(f: &Poly, mats: &[SqMatrix]) -> Result<CheckOutcome> {
    let r = f.ring();
    let d = mats[0].size();
    let prod = product_of_linear_factors(mats)?;
    for (k, c) in prod.iter().enumerate() {
        if *c != SqMatrix::scalar(r, d, &f.coeff(k)) {
            return Ok(CheckOutcome::Fail(format!("coefficient of Z^{k} differs from f")));
        }
    }
    Ok(CheckOutcome::Pass)
}

/// `A^alpha` for every basis exponent, in basis order.
pub fn matrix_monomials(mats: &[SqMatrix]) -> Result<Vec<SqMatrix>> {
    let n = mats.len();
    let r = mats[0].ring();
    let d = mats[0].size();
    let basis = basis_exponents(n);
    let mut out: Vec<SqMatrix> = Vec::with_capacity(basis.len());
    for alpha in &basis {
        match alpha.iter().position(|&a| a > 0) {
            None => out.push(SqMatrix::identity(r, d)),
            Some(i) => {
                let mut prev = alpha.clone();
                prev[i] -= 1;
                let j = basis_index(&prev).expect("inside the box");
                out.push(mats[i].mul(&out[j])?);
            }
        }
    }
    Ok(out)
}

/// The vectors `A^alpha e_1`. If these are independent then so are the
/// matrices `A^alpha`: a relation among the matrices applied to `e_1` gives
/// a relation among the vectors.
fn first_column_orbit(mats: &[SqMatrix]) -> Vec<Vec<Value>> {
    let n = mats.len();
    let r = mats[0].ring();
    let d = mats[0].size();
    let basis = basis_exponents(n);
    let mut out: Vec<Vec<Value>> = Vec::with_capacity(basis.len());
    for alpha in &basis {
        match alpha.iter().position(|&a| a > 0) {
            None => {
                let mut e1 = vec![r.zero(); d];
                e1[0] = r.one();
                out.push(e1);
            }
            Some(i) => {
                let mut prev = alpha.clone();
                prev[i] -= 1;
                let j = basis_index(&prev).expect("inside the box");
                out.push(mats[i].mul_vec(&out[j]));
            }
        }
    }
    out
}

fn check_independence(mats: &[SqMatrix]) -> Result<CheckOutcome> {
    let r = mats[0].ring();
    if r.is_zero_ring() {
        return Ok(CheckOutcome::Skipped("zero ring".into()));
    }
    let rows = first_column_orbit(mats);
    let want = rows.len();
    match linalg::rank(r, &rows) {
        Ok(rank) => Ok(CheckOutcome::from_bool(rank == want, || format!("rank {rank} < {want}"))),
        Err(Error::Unsupported(_)) if r.is_commutative() => {
            // square system: independent over any commutative ring if the
            // determinant is a unit
            let entries: Vec<Value> = rows.into_iter().flatten().collect();
            let det = linalg::determinant(r, want, &entries)?;
            Ok(CheckOutcome::from_bool(r.is_unit(&det), || "determinant is not a unit".into()))
        }
        Err(Error::Unsupported(_)) => match linalg::independent(r, &rows) {
            Ok(ok) => Ok(CheckOutcome::from_bool(ok, || "dependent".into())),
            Err(Error::Unsupported(msg)) => Ok(CheckOutcome::Skipped(msg)),
            Err(e) => Err(e),
        },
        Err(e) => Err(e),
    }
}

fn check_entry_pattern(f: &Poly, mats: &[SqMatrix]) -> CheckOutcome {
    let r = f.ring();
    let mut allowed: Vec<Value> = vec![r.one(), r.neg(&r.one())];
    for b in f.b_coeffs() {
        allowed.push(r.neg(&b));
        allowed.push(b);
    }
    for (i, m) in mats.iter().enumerate() {
        if let Some(v) = m.entries().iter().find(|v| !r.is_zero(v) && !allowed.contains(v)) {
            return CheckOutcome::Fail(format!("A{} has entry {}", i + 1, r.format(v)));
        }
    }
    CheckOutcome::Pass
}

fn check_regular_rep(f: &Poly, mats: &[SqMatrix], cap: usize) -> Result<CheckOutcome> {
    let ring = SplitRing::with_cap(f, cap)?;
    for (i, m) in mats.iter().enumerate() {
        let l = ring.regular_representation(&ring.root(i + 1)?)?;
        if l != *m {
            return Ok(CheckOutcome::Fail(format!("A{} differs from left multiplication by r{}", i + 1, i + 1)));
        }
    }
    Ok(CheckOutcome::Pass)
}

/// Degree of the minimal polynomial of `m` over a domain: the rank of
/// `vec(I), vec(m), ..., vec(m^d)`.
pub fn minimal_polynomial_degree(m: &SqMatrix) -> Result<usize> {
    let d = m.size();
    let mut power = SqMatrix::identity(m.ring(), d);
    let mut rows = Vec::with_capacity(d + 1);
    for _ in 0..=d {
        rows.push(power.entries().to_vec());
        power = power.mul(m)?;
    }
    linalg::rank(m.ring(), &rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multipoly::symbolic_b;

    fn z() -> Ring {
        Ring::integers()
    }

    fn parse_rows(ring: &Ring, rows: &[&[&str]]) -> Vec<Vec<Value>> {
        rows.iter().map(|r| r.iter().map(|s| ring.parse(s).unwrap()).collect()).collect()
    }

    #[test]
    fn sign_conventions() {
        let r = z();
        let v = |xs: &[i64]| xs.iter().map(|&x| r.from_int(x)).collect::<Vec<_>>();
        assert_eq!(a_to_b(&r, &v(&[3, 2])), v(&[2, -3]));
        assert_eq!(a_to_b(&r, &v(&[0, 0, 0])), v(&[0, 0, 0]));
        assert_eq!(a_to_b(&r, &v(&[0, -1, 1])), v(&[-1, -1, 0]));
        assert_eq!(b_to_a(&r, &v(&[-1, -1, 0])), v(&[0, -1, 1]));
        assert_eq!(b_from_a(&r, &v(&[1]), 2).unwrap_err(), Error::LengthMismatch { expected: 2, got: 1 });
        assert!(a_from_b(&r, &v(&[1, 2]), 2).is_ok());
    }

    #[test]
    fn companion_examples() {
        let (ring, f) = symbolic_b(2);
        assert_eq!(companion(&f).unwrap().rows(), parse_rows(&ring, &[&["0", "-b0"], &["1", "-b1"]]));
        let c = companion(&Poly::parse(&z(), "-5,1").unwrap()).unwrap();
        assert_eq!(c.rows(), vec![vec![z().from_int(5)]]);
        let c = companion(&Poly::parse(&z(), "-1,-1,0,1").unwrap()).unwrap();
        assert_eq!(c.rows(), parse_rows(&z(), &[&["0", "0", "1"], &["1", "0", "1"], &["0", "1", "0"]]));
        assert_eq!(companion(&Poly::parse(&z(), "1,2").unwrap()).unwrap_err(), Error::NonMonic);
    }

    #[test]
    fn derived_polynomials() {
        let r = Ring::poly_coef_named(z(), vec!["c0".into(), "c1".into(), "c2".into()]).unwrap();
        let g = Poly::parse(&r, "c0,c1,c2,1").unwrap();
        assert_eq!(derived_poly(&g, 1), Poly::parse(&r, "c2,1").unwrap());
        assert_eq!(derived_poly(&g, 2), Poly::parse(&r, "1").unwrap());
        assert!(derived_poly(&g, 3).is_zero());
        assert!(derived_poly(&g, 10).is_zero());
        assert!(derived_poly(&Poly::zero(r.clone()), 0).is_zero());
    }

    #[test]
    fn companion_evaluation_examples() {
        let (ring, f) = symbolic_b(3);
        assert!(eval_at_companion(&f, &f).unwrap().is_zero());
        let one = Poly::parse(&ring, "1").unwrap();
        assert_eq!(eval_at_companion(&one, &f).unwrap(), SqMatrix::identity(&ring, 3));
        let m = eval_at_companion(&derived_poly(&f, 1), &f).unwrap();
        assert_eq!(m.rows(), parse_rows(&ring, &[&["b2", "0", "-b0"], &["1", "b2", "-b1"], &["0", "1", "0"]]));
        assert_eq!(eval_horner(&derived_poly(&f, 1), &companion(&f).unwrap()).unwrap(), m);
    }

    #[test]
    fn pattern_for_j0_n4() {
        let (ring, f) = symbolic_b(4);
        let p = derived_at_companion_pattern(&f, 0).unwrap();
        assert_eq!(
            p.rows(),
            parse_rows(
                &ring,
                &[&["b1", "-b0", "0", "0"], &["b2", "0", "-b0", "0"], &["b3", "0", "0", "-b0"], &["1", "0", "0", "0"],]
            )
        );
        assert_eq!(derived_at_companion_pattern(&f, 3).unwrap(), SqMatrix::identity(&ring, 4));
        assert!(derived_at_companion_pattern(&f, 4).unwrap().is_zero());
    }

    #[test]
    fn realization_small_cases() {
        let (ring, f) = symbolic_b(1);
        let a = build_realization(&f, 6).unwrap();
        assert_eq!(a[0].rows(), parse_rows(&ring, &[&["-b0"]]));

        let (ring, f) = symbolic_b(2);
        let a = build_realization(&f, 6).unwrap();
        assert_eq!(a[1].rows(), parse_rows(&ring, &[&["-b1", "b0"], &["-1", "0"]]));
        let report = verify_realization(&f, &a, &VerifyOptions::default()).unwrap();
        assert!(report.passed(), "{:?}", report.checks);
    }

    #[test]
    fn quadratic_over_z() {
        let f = Poly::parse(&z(), "2,-3,1").unwrap();
        let a = build_realization(&f, 6).unwrap();
        let sum = a[0].add(&a[1]).unwrap();
        assert_eq!(sum, SqMatrix::scalar(&z(), 2, &z().from_int(3)));
        let report = verify_realization(&f, &a, &VerifyOptions::default()).unwrap();
        assert!(report.passed());
        assert_eq!(report.checks.len(), CHECK_NAMES.len());
    }

    #[test]
    fn perturbation_is_caught() {
        let f = Poly::parse(&z(), "3,-1,2,1").unwrap();
        let mut a = build_realization(&f, 6).unwrap();
        let mut e11 = SqMatrix::zero(&z(), 6);
        e11.set(0, 0, z().one());
        a[1] = a[1].add(&e11).unwrap();
        let report = verify_realization(&f, &a, &VerifyOptions::default()).unwrap();
        assert!(report.check("commutation").unwrap().is_fail() || report.check("sigma_identities").unwrap().is_fail());
        assert!(!report.passed());
    }

    #[test]
    fn cap_is_enforced() {
        let f = Poly::parse(&z(), "1,0,0,0,0,0,0,1").unwrap();
        assert_eq!(build_realization(&f, 6).unwrap_err(), Error::CapExceeded { n: 7, cap: 6 });
    }

    #[test]
    fn selected_checks_only() {
        let f = Poly::parse(&z(), "2,-3,1").unwrap();
        let a = build_realization(&f, 6).unwrap();
        let report = verify_realization(&f, &a, &VerifyOptions::only(&["factorization"])).unwrap();
        assert_eq!(report.check("factorization"), Some(&CheckOutcome::Pass));
        assert!(matches!(report.check("commutation"), Some(CheckOutcome::Skipped(_))));
    }
}
