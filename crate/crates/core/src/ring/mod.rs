//! Exact coefficient rings.
//!
//! A [`Ring`] is an immutable, cheaply clonable descriptor. Arithmetic is done
//! on raw [`Value`] payloads through the descriptor, which is what the matrix
//! and polynomial code uses in inner loops. [`Elem`] pairs a value with its
//! ring and is the checked, user-facing element type.
//!
//! Every value produced by a ring operation is canonical: residues lie in
//! `[0, m)`, fractions are reduced with positive denominator, quotient-ring
//! representatives have degree below the modulus and carry no trailing zeros,
//! and sparse polynomials store no zero coefficients. Structural equality of
//! values is therefore semantic equality.

mod ideal;
mod table;

pub use ideal::{central_quotient, commutator_ideal, CentralQuotient, Ideal};
pub use table::FiniteTable;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Raw element payload. Only meaningful together with the [`Ring`] that
/// produced it.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Value {
    Int(BigInt),
    Rat(BigRational),
    Mod(u64),
    /// Row-major `k x k` entries over the base ring.
    Mat(Vec<Value>),
    /// Residue class representative, lowest degree first, no trailing zeros.
    Res(Vec<Value>),
    /// Sparse polynomial in the ring's indeterminates.
    Sparse(BTreeMap<Vec<u32>, Value>),
    Idx(u32),
}

#[derive(Debug, PartialEq)]
pub enum RingKind {
    Integers,
    Rationals,
    Modular(u64),
    Matrix {
        size: usize,
        base: Ring,
    },
    /// `base[Z]/(modulus)`; `modulus` is monic, lowest degree first.
    Quotient {
        base: Ring,
        modulus: Vec<Value>,
        root: String,
    },
    /// Commutative polynomial ring over `base`, one indeterminate per name.
    PolyCoef {
        base: Ring,
        names: Vec<String>,
    },
    Table(FiniteTable),
}

#[derive(Clone)]
pub struct Ring(Arc<RingKind>);

impl PartialEq for Ring {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || *self.0 == *other.0
    }
}

impl fmt::Debug for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ring({})", self.spec())
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.spec())
    }
}

fn trim(ring: &Ring, v: &mut Vec<Value>) {
    while v.last().is_some_and(|c| ring.is_zero(c)) {
        v.pop();
    }
}

fn add_exps(a: &[u32], b: &[u32]) -> Vec<u32> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

impl Ring {
    pub fn integers() -> Ring {
        Ring(Arc::new(RingKind::Integers))
    }

    pub fn rationals() -> Ring {
        Ring(Arc::new(RingKind::Rationals))
    }

    pub fn modular(m: u64) -> Result<Ring> {
        if m < 2 {
            return Err(Error::PreconditionViolated(format!("modulus must be >= 2, got {m}")));
        }
        Ok(Ring(Arc::new(RingKind::Modular(m))))
    }

    pub fn matrix(size: usize, base: Ring) -> Result<Ring> {
        if size == 0 {
            return Err(Error::PreconditionViolated("matrix size must be >= 1".into()));
        }
        Ok(Ring(Arc::new(RingKind::Matrix { size, base })))
    }

    /// Polynomial coefficient ring with indeterminates `t1..tt`.
    pub fn poly_coef(count: usize, base: Ring) -> Result<Ring> {
        Ring::poly_coef_named(base, (1..=count).map(|i| format!("t{i}")).collect())
    }

    pub fn poly_coef_named(base: Ring, names: Vec<String>) -> Result<Ring> {
        if names.is_empty() {
            return Err(Error::PreconditionViolated("need at least one indeterminate".into()));
        }
        Ok(Ring(Arc::new(RingKind::PolyCoef { base, names })))
    }

    pub fn table(table: FiniteTable) -> Ring {
        Ring(Arc::new(RingKind::Table(table)))
    }

    /// `base[Z]/(modulus)` where `modulus` is monic with central coefficients.
    pub(crate) fn quotient_raw(base: Ring, modulus: Vec<Value>, root: String) -> Ring {
        Ring(Arc::new(RingKind::Quotient { base, modulus, root }))
    }

    pub fn kind(&self) -> &RingKind {
        &self.0
    }

    pub fn same(&self, other: &Ring) -> bool {
        self == other
    }

    /// The ring-spec string for kinds that have one; other kinds get a
    /// descriptive rendering.
    pub fn spec(&self) -> String {
        match self.kind() {
            RingKind::Integers => "Z".into(),
            RingKind::Rationals => "Q".into(),
            RingKind::Modular(m) => format!("Zmod:{m}"),
            RingKind::Matrix { size, base } => format!("Mat:{size}:{}", base.spec()),
            RingKind::PolyCoef { base, names } => format!("PolyCoef:{}:{}", names.len(), base.spec()),
            RingKind::Quotient { base, modulus, root } => {
                let m = crate::poly::format_dense(base, modulus, root);
                format!("({})[{root}]/({m})", base.spec())
            }
            RingKind::Table(t) => format!("Table:{}", t.size()),
        }
    }

    pub fn elem(&self, value: Value) -> Elem {
        Elem { ring: self.clone(), value }
    }

    pub fn zero(&self) -> Value {
        match self.kind() {
            RingKind::Integers => Value::Int(BigInt::zero()),
            RingKind::Rationals => Value::Rat(BigRational::zero()),
            RingKind::Modular(_) => Value::Mod(0),
            RingKind::Matrix { size, base } => Value::Mat(vec![base.zero(); size * size]),
            RingKind::Quotient { .. } => Value::Res(Vec::new()),
            RingKind::PolyCoef { .. } => Value::Sparse(BTreeMap::new()),
            RingKind::Table(t) => Value::Idx(t.zero()),
        }
    }

    pub fn one(&self) -> Value {
        match self.kind() {
            RingKind::Integers => Value::Int(BigInt::one()),
            RingKind::Rationals => Value::Rat(BigRational::one()),
            RingKind::Modular(_) => Value::Mod(1),
            RingKind::Matrix { size, base } => {
                let mut m = vec![base.zero(); size * size];
                for i in 0..*size {
                    m[i * size + i] = base.one();
                }
                Value::Mat(m)
            }
            RingKind::Quotient { base, .. } => {
                let mut v = vec![base.one()];
                trim(base, &mut v);
                Value::Res(v)
            }
            RingKind::PolyCoef { base, names } => self.sparse_constant(base, names.len(), base.one()),
            RingKind::Table(t) => Value::Idx(t.one()),
        }
    }

    fn sparse_constant(&self, base: &Ring, vars: usize, c: Value) -> Value {
        let mut map = BTreeMap::new();
        if !base.is_zero(&c) {
            map.insert(vec![0; vars], c);
        }
        Value::Sparse(map)
    }

    pub fn from_int(&self, n: i64) -> Value {
        self.from_bigint(&BigInt::from(n))
    }

    pub fn from_bigint(&self, n: &BigInt) -> Value {
        match self.kind() {
            RingKind::Integers => Value::Int(n.clone()),
            RingKind::Rationals => Value::Rat(BigRational::from_integer(n.clone())),
            RingKind::Modular(m) => {
                let r = n.mod_floor(&BigInt::from(*m));
                Value::Mod(r.to_u64().expect("residue fits in u64"))
            }
            RingKind::Matrix { size, base } => {
                let c = base.from_bigint(n);
                let mut m = vec![base.zero(); size * size];
                for i in 0..*size {
                    m[i * size + i] = c.clone();
                }
                Value::Mat(m)
            }
            RingKind::Quotient { base, .. } => {
                let mut v = vec![base.from_bigint(n)];
                trim(base, &mut v);
                Value::Res(v)
            }
            RingKind::PolyCoef { base, names } => self.sparse_constant(base, names.len(), base.from_bigint(n)),
            RingKind::Table(_) => {
                // double-and-add on the additive group
                let mut acc = self.zero();
                let mut step = self.one();
                let mut k = n.abs();
                while !k.is_zero() {
                    if k.is_odd() {
                        acc = self.add(&acc, &step);
                    }
                    step = self.add(&step, &step);
                    k >>= 1;
                }
                if n.is_negative() {
                    self.neg(&acc)
                } else {
                    acc
                }
            }
        }
    }

    /// Embeds a base-ring value as a constant (scalar matrix, constant
    /// residue, constant polynomial).
    pub fn embed(&self, c: Value) -> Result<Value> {
        match self.kind() {
            RingKind::Matrix { size, base } => {
                let mut m = vec![base.zero(); size * size];
                for i in 0..*size {
                    m[i * size + i] = c.clone();
                }
                Ok(Value::Mat(m))
            }
            RingKind::Quotient { base, .. } => {
                let mut v = vec![c];
                trim(base, &mut v);
                Ok(Value::Res(v))
            }
            RingKind::PolyCoef { base, names } => Ok(self.sparse_constant(base, names.len(), c)),
            _ => Err(Error::Unsupported(format!("{} has no base ring", self.spec()))),
        }
    }

    pub fn base(&self) -> Option<&Ring> {
        match self.kind() {
            RingKind::Matrix { base, .. } | RingKind::Quotient { base, .. } | RingKind::PolyCoef { base, .. } => {
                Some(base)
            }
            _ => None,
        }
    }

    pub fn is_zero(&self, v: &Value) -> bool {
        match v {
            Value::Int(n) => n.is_zero(),
            Value::Rat(q) => q.is_zero(),
            Value::Mod(r) => *r == 0,
            Value::Mat(m) => {
                let base = self.base().expect("matrix ring");
                m.iter().all(|e| base.is_zero(e))
            }
            Value::Res(c) => c.is_empty(),
            Value::Sparse(t) => t.is_empty(),
            Value::Idx(i) => match self.kind() {
                RingKind::Table(t) => *i == t.zero(),
                _ => unreachable!("index value outside a table ring"),
            },
        }
    }

    pub fn is_one(&self, v: &Value) -> bool {
        *v == self.one()
    }

    /// True when `1 = 0`.
    pub fn is_zero_ring(&self) -> bool {
        self.is_zero(&self.one())
    }

    pub fn add(&self, a: &Value, b: &Value) -> Value {
        match (self.kind(), a, b) {
            (_, Value::Int(x), Value::Int(y)) => Value::Int(x + y),
            (_, Value::Rat(x), Value::Rat(y)) => Value::Rat(x + y),
            (RingKind::Modular(m), Value::Mod(x), Value::Mod(y)) => {
                Value::Mod(((*x as u128 + *y as u128) % *m as u128) as u64)
            }
            (RingKind::Matrix { base, .. }, Value::Mat(x), Value::Mat(y)) => {
                Value::Mat(x.iter().zip(y).map(|(p, q)| base.add(p, q)).collect())
            }
            (RingKind::Quotient { base, .. }, Value::Res(x), Value::Res(y)) => {
                let len = x.len().max(y.len());
                let zero = base.zero();
                let mut out: Vec<Value> =
                    (0..len).map(|i| base.add(x.get(i).unwrap_or(&zero), y.get(i).unwrap_or(&zero))).collect();
                trim(base, &mut out);
                Value::Res(out)
            }
            (RingKind::PolyCoef { base, .. }, Value::Sparse(x), Value::Sparse(y)) => {
                let mut out = x.clone();
                for (e, c) in y {
                    sparse_accumulate(base, &mut out, e.clone(), c.clone());
                }
                Value::Sparse(out)
            }
            (RingKind::Table(t), Value::Idx(x), Value::Idx(y)) => Value::Idx(t.add(*x, *y)),
            _ => panic!("value shape does not match ring {}", self.spec()),
        }
    }

    pub fn neg(&self, a: &Value) -> Value {
        match (self.kind(), a) {
            (_, Value::Int(x)) => Value::Int(-x),
            (_, Value::Rat(x)) => Value::Rat(-x),
            (RingKind::Modular(m), Value::Mod(x)) => Value::Mod(if *x == 0 { 0 } else { m - x }),
            (RingKind::Matrix { base, .. }, Value::Mat(x)) => Value::Mat(x.iter().map(|p| base.neg(p)).collect()),
            (RingKind::Quotient { base, .. }, Value::Res(x)) => Value::Res(x.iter().map(|p| base.neg(p)).collect()),
            (RingKind::PolyCoef { base, .. }, Value::Sparse(x)) => {
                Value::Sparse(x.iter().map(|(e, c)| (e.clone(), base.neg(c))).collect())
            }
            (RingKind::Table(t), Value::Idx(x)) => Value::Idx(t.neg(*x)),
            _ => panic!("value shape does not match ring {}", self.spec()),
        }
    }

    pub fn sub(&self, a: &Value, b: &Value) -> Value {
        match (a, b) {
            (Value::Int(x), Value::Int(y)) => Value::Int(x - y),
            (Value::Rat(x), Value::Rat(y)) => Value::Rat(x - y),
            _ => self.add(a, &self.neg(b)),
        }
    }

    pub fn mul(&self, a: &Value, b: &Value) -> Value {
        match (self.kind(), a, b) {
            (_, Value::Int(x), Value::Int(y)) => Value::Int(x * y),
            (_, Value::Rat(x), Value::Rat(y)) => Value::Rat(x * y),
            (RingKind::Modular(m), Value::Mod(x), Value::Mod(y)) => {
                Value::Mod(((*x as u128 * *y as u128) % *m as u128) as u64)
            }
            (RingKind::Matrix { size, base }, Value::Mat(x), Value::Mat(y)) => {
                let k = *size;
                let mut out = Vec::with_capacity(k * k);
                for i in 0..k {
                    for j in 0..k {
                        let mut acc = base.zero();
                        for l in 0..k {
                            acc = base.add(&acc, &base.mul(&x[i * k + l], &y[l * k + j]));
                        }
                        out.push(acc);
                    }
                }
                Value::Mat(out)
            }
            (RingKind::Quotient { base, modulus, .. }, Value::Res(x), Value::Res(y)) => {
                if x.is_empty() || y.is_empty() {
                    return Value::Res(Vec::new());
                }
                let mut prod = vec![base.zero(); x.len() + y.len() - 1];
                for (i, p) in x.iter().enumerate() {
                    for (j, q) in y.iter().enumerate() {
                        prod[i + j] = base.add(&prod[i + j], &base.mul(p, q));
                    }
                }
                Value::Res(reduce_monic(base, prod, modulus))
            }
            (RingKind::PolyCoef { base, .. }, Value::Sparse(x), Value::Sparse(y)) => {
                let mut out = BTreeMap::new();
                for (e1, c1) in x {
                    for (e2, c2) in y {
                        sparse_accumulate(base, &mut out, add_exps(e1, e2), base.mul(c1, c2));
                    }
                }
                Value::Sparse(out)
            }
            (RingKind::Table(t), Value::Idx(x), Value::Idx(y)) => Value::Idx(t.mul(*x, *y)),
            _ => panic!("value shape does not match ring {}", self.spec()),
        }
    }

    pub fn pow(&self, a: &Value, mut e: u64) -> Value {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    pub fn is_commutative(&self) -> bool {
        match self.kind() {
            RingKind::Integers | RingKind::Rationals | RingKind::Modular(_) => true,
            RingKind::Matrix { size, base } => *size == 1 && base.is_commutative() || base.is_zero_ring(),
            RingKind::Quotient { base, .. } | RingKind::PolyCoef { base, .. } => base.is_commutative(),
            RingKind::Table(t) => t.is_commutative(),
        }
    }

    /// Whether `v` commutes with every element of the ring.
    pub fn is_central(&self, v: &Value) -> bool {
        if self.is_commutative() {
            return true;
        }
        match (self.kind(), v) {
            (RingKind::Matrix { size, base }, Value::Mat(m)) => {
                let k = *size;
                let d = &m[0];
                (0..k).all(|i| (0..k).all(|j| if i == j { m[i * k + j] == *d } else { base.is_zero(&m[i * k + j]) }))
                    && base.is_central(d)
            }
            (RingKind::Quotient { base, .. }, Value::Res(c)) => c.iter().all(|x| base.is_central(x)),
            (RingKind::PolyCoef { base, .. }, Value::Sparse(t)) => t.values().all(|x| base.is_central(x)),
            (RingKind::Table(t), Value::Idx(x)) => t.is_central(*x),
            _ => true,
        }
    }

    pub fn is_finite(&self) -> bool {
        match self.kind() {
            RingKind::Integers | RingKind::Rationals | RingKind::PolyCoef { .. } => false,
            RingKind::Modular(_) | RingKind::Table(_) => true,
            RingKind::Matrix { base, .. } | RingKind::Quotient { base, .. } => base.is_finite(),
        }
    }

    /// Number of elements, if finite and small enough to count in `u64`.
    pub fn cardinality(&self) -> Option<u64> {
        match self.kind() {
            RingKind::Modular(m) => Some(*m),
            RingKind::Table(t) => Some(t.size() as u64),
            RingKind::Matrix { size, base } => base.cardinality()?.checked_pow((size * size) as u32),
            RingKind::Quotient { base, modulus, .. } => base.cardinality()?.checked_pow((modulus.len() - 1) as u32),
            _ => None,
        }
    }

    /// All elements of a finite ring, in a fixed order starting with zero.
    /// Refuses rings with more than `limit` elements.
    pub fn elements(&self, limit: u64) -> Result<Vec<Value>> {
        let card = self.cardinality().ok_or(Error::InfiniteRing)?;
        if card > limit {
            return Err(Error::Unsupported(format!(
                "ring {} has {card} elements, above the enumeration limit {limit}",
                self.spec()
            )));
        }
        Ok(match self.kind() {
            RingKind::Modular(m) => (0..*m).map(Value::Mod).collect(),
            RingKind::Table(t) => {
                let mut v: Vec<Value> = (0..t.size() as u32).map(Value::Idx).collect();
                v.swap(0, t.zero() as usize);
                v
            }
            RingKind::Matrix { size, base } => {
                cartesian(&base.elements(limit)?, size * size).into_iter().map(Value::Mat).collect()
            }
            RingKind::Quotient { base, modulus, .. } => cartesian(&base.elements(limit)?, modulus.len() - 1)
                .into_iter()
                .map(|mut v| {
                    trim(base, &mut v);
                    Value::Res(v)
                })
                .collect(),
            _ => unreachable!(),
        })
    }

    /// Exact quotient `a / b` in an integral domain (or field); `None` when
    /// `b` does not divide `a` or the ring is not a domain we handle.
    pub fn exact_div(&self, a: &Value, b: &Value) -> Option<Value> {
        if self.is_zero(b) {
            return None;
        }
        match (self.kind(), a, b) {
            (RingKind::Integers, Value::Int(x), Value::Int(y)) => {
                let (q, r) = x.div_rem(y);
                r.is_zero().then_some(Value::Int(q))
            }
            (RingKind::Rationals, Value::Rat(x), Value::Rat(y)) => Some(Value::Rat(x / y)),
            (RingKind::Modular(_), _, _) => {
                let inv = self.inverse(b).ok()?;
                Some(self.mul(a, &inv))
            }
            (RingKind::PolyCoef { base, .. }, Value::Sparse(x), Value::Sparse(y)) => {
                sparse_exact_div(base, x, y).map(Value::Sparse)
            }
            _ => None,
        }
    }

    pub fn inverse(&self, a: &Value) -> Result<Value> {
        match (self.kind(), a) {
            (RingKind::Integers, Value::Int(x)) => {
                if x.is_one() || (-x).is_one() {
                    Ok(a.clone())
                } else {
                    Err(Error::NotAUnit)
                }
            }
            (RingKind::Rationals, Value::Rat(x)) => {
                if x.is_zero() {
                    Err(Error::NotAUnit)
                } else {
                    Ok(Value::Rat(x.recip()))
                }
            }
            (RingKind::Modular(m), Value::Mod(x)) => {
                let g = BigInt::from(*x).extended_gcd(&BigInt::from(*m));
                if !g.gcd.is_one() {
                    return Err(Error::NotAUnit);
                }
                Ok(self.from_bigint(&g.x))
            }
            (RingKind::PolyCoef { base, names }, Value::Sparse(t)) => {
                let constant = vec![0u32; names.len()];
                if t.len() == 1 {
                    if let Some(c) = t.get(&constant) {
                        return Ok(self.sparse_constant(base, names.len(), base.inverse(c)?));
                    }
                }
                Err(Error::NotAUnit)
            }
            (RingKind::Matrix { size, base }, Value::Mat(m)) if self.is_central(a) => {
                // scalar matrix d*I
                let d = base.inverse(&m[0])?;
                Ok(Value::Mat(
                    (0..size * size).map(|k| if k % (size + 1) == 0 { d.clone() } else { base.zero() }).collect(),
                ))
            }
            _ if self.is_finite() => {
                let one = self.one();
                for cand in self.elements(1 << 16)? {
                    if self.mul(a, &cand) == one && self.mul(&cand, a) == one {
                        return Ok(cand);
                    }
                }
                Err(Error::NotAUnit)
            }
            (RingKind::Matrix { size, base }, Value::Mat(m)) if base.is_field() => {
                crate::linalg::invert_over_field(base, *size, m).map(Value::Mat)
            }
            (RingKind::Quotient { base, modulus, .. }, Value::Res(_)) if base.is_field() => {
                // solve (multiplication-by-a) x = 1 over the base field
                let d = modulus.len() - 1;
                let mut cols = Vec::with_capacity(d * d);
                let mut basis = vec![base.one()];
                for _ in 0..d {
                    let prod = self.mul(a, &Value::Res(basis.clone()));
                    let Value::Res(c) = prod else { unreachable!() };
                    cols.push(c);
                    basis.insert(0, base.zero());
                }
                let mut m = vec![base.zero(); d * d];
                for (j, col) in cols.iter().enumerate() {
                    for (i, c) in col.iter().enumerate() {
                        m[i * d + j] = c.clone();
                    }
                }
                let inv = crate::linalg::invert_over_field(base, d, &m)?;
                let mut x: Vec<Value> = (0..d).map(|i| inv[i * d].clone()).collect();
                trim(base, &mut x);
                Ok(Value::Res(x))
            }
            _ => Err(Error::Unsupported(format!("inversion in {}", self.spec()))),
        }
    }

    pub fn is_unit(&self, a: &Value) -> bool {
        self.inverse(a).is_ok()
    }

    /// Q or Z/p with p prime.
    pub fn is_field(&self) -> bool {
        match self.kind() {
            RingKind::Rationals => true,
            RingKind::Modular(m) => crate::linalg::is_prime(*m),
            _ => false,
        }
    }

    /// Named constants: indeterminates of coefficient rings and adjoined
    /// roots, searched through the base chain.
    pub fn named(&self, name: &str) -> Option<Value> {
        match self.kind() {
            RingKind::PolyCoef { base, names } => {
                if let Some(pos) = names.iter().position(|n| n == name) {
                    let mut e = vec![0u32; names.len()];
                    e[pos] = 1;
                    let mut map = BTreeMap::new();
                    map.insert(e, base.one());
                    return Some(Value::Sparse(map));
                }
                base.named(name).map(|c| self.sparse_constant(base, names.len(), c))
            }
            RingKind::Quotient { base, root, modulus } => {
                if name == root {
                    let mut v = vec![base.zero(), base.one()];
                    if modulus.len() == 2 {
                        // degree-one modulus: the root is -m0
                        v = vec![base.neg(&modulus[0])];
                    }
                    trim(base, &mut v);
                    return Some(Value::Res(v));
                }
                base.named(name).and_then(|c| self.embed(c).ok())
            }
            RingKind::Matrix { .. } => None,
            RingKind::Table(t) => t.label_index(name).map(Value::Idx),
            _ => None,
        }
    }

    pub fn format(&self, v: &Value) -> String {
        match (self.kind(), v) {
            (_, Value::Int(n)) => n.to_string(),
            (_, Value::Rat(q)) => {
                if q.is_integer() {
                    q.numer().to_string()
                } else {
                    format!("{}/{}", q.numer(), q.denom())
                }
            }
            (_, Value::Mod(r)) => r.to_string(),
            (RingKind::Matrix { size, base }, Value::Mat(m)) => {
                let rows: Vec<String> = m
                    .chunks(*size)
                    .map(|r| format!("[{}]", r.iter().map(|e| base.format(e)).collect::<Vec<_>>().join(",")))
                    .collect();
                format!("[{}]", rows.join(","))
            }
            (RingKind::Quotient { base, root, .. }, Value::Res(c)) => crate::poly::format_dense(base, c, root),
            (RingKind::PolyCoef { base, names }, Value::Sparse(t)) => {
                let terms: Vec<(String, &Value)> =
                    t.iter().rev().map(|(e, c)| (monomial_text(names, e, ""), c)).collect();
                format_terms(base, &terms)
            }
            (RingKind::Table(t), Value::Idx(i)) => t.label(*i).to_string(),
            _ => format!("{v:?}"),
        }
    }

    /// Parses an element written in this ring's text form.
    pub fn parse(&self, text: &str) -> Result<Value> {
        if let RingKind::Table(t) = self.kind() {
            if let Some(i) = t.label_index(text.trim()) {
                return Ok(Value::Idx(i));
            }
        }
        crate::expr::parse_value(self, text)
    }

    /// Parses a literal in brackets (matrix rows).
    pub(crate) fn parse_literal(&self, text: &str, pos: usize) -> Result<Value> {
        match self.kind() {
            RingKind::Matrix { size, base } => {
                let rows = crate::expr::split_bracket_list(text, pos)?;
                if rows.len() != *size {
                    return Err(Error::parse(pos, format!("expected {size} rows, got {}", rows.len())));
                }
                let mut out = Vec::with_capacity(size * size);
                for (row, rpos) in rows {
                    let entries = crate::expr::split_bracket_list(&row, rpos)?;
                    if entries.len() != *size {
                        return Err(Error::parse(rpos, format!("expected {size} entries in row")));
                    }
                    for (e, epos) in entries {
                        out.push(base.parse(&e).map_err(|err| shift_pos(err, epos))?);
                    }
                }
                Ok(Value::Mat(out))
            }
            RingKind::Table(t) => t
                .label_index(text.trim())
                .map(Value::Idx)
                .ok_or_else(|| Error::parse(pos, format!("no element labelled {text}"))),
            _ => Err(Error::parse(pos, format!("bracket literal not valid in {}", self.spec()))),
        }
    }
}

fn shift_pos(err: Error, by: usize) -> Error {
    match err {
        Error::Parse { pos, msg } => Error::Parse { pos: pos + by, msg },
        e => e,
    }
}

fn cartesian(items: &[Value], len: usize) -> Vec<Vec<Value>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        let mut next = Vec::with_capacity(out.len() * items.len());
        for prefix in &out {
            for it in items {
                let mut p = prefix.clone();
                p.push(it.clone());
                next.push(p);
            }
        }
        out = next;
    }
    out
}

pub(crate) fn sparse_accumulate(base: &Ring, map: &mut BTreeMap<Vec<u32>, Value>, e: Vec<u32>, c: Value) {
    if base.is_zero(&c) {
        return;
    }
    match map.entry(e) {
        std::collections::btree_map::Entry::Vacant(v) => {
            v.insert(c);
        }
        std::collections::btree_map::Entry::Occupied(mut o) => {
            let s = base.add(o.get(), &c);
            if base.is_zero(&s) {
                o.remove();
            } else {
                *o.get_mut() = s;
            }
        }
    }
}

/// Division of sparse polynomials by repeated leading-term cancellation in
/// lexicographic order. Returns `None` unless the division is exact.
fn sparse_exact_div(
    base: &Ring,
    num: &BTreeMap<Vec<u32>, Value>,
    den: &BTreeMap<Vec<u32>, Value>,
) -> Option<BTreeMap<Vec<u32>, Value>> {
    let (de, dc) = den.iter().next_back()?;
    let mut rem = num.clone();
    let mut quot = BTreeMap::new();
    while let Some((re, rc)) = rem.iter().next_back() {
        if re.iter().zip(de).any(|(r, d)| r < d) {
            return None;
        }
        let qe: Vec<u32> = re.iter().zip(de).map(|(r, d)| r - d).collect();
        let qc = base.exact_div(rc, dc)?;
        for (e, c) in den {
            sparse_accumulate(base, &mut rem, add_exps(&qe, e), base.neg(&base.mul(&qc, c)));
        }
        quot.insert(qe, qc);
    }
    Some(quot)
}

/// Reduces a dense polynomial modulo a monic `modulus` (both lowest degree
/// first), returning the trimmed remainder.
pub(crate) fn reduce_monic(base: &Ring, mut p: Vec<Value>, modulus: &[Value]) -> Vec<Value> {
    let d = modulus.len() - 1;
    while p.len() > d {
        let top = p.pop().expect("nonempty");
        if base.is_zero(&top) {
            continue;
        }
        let shift = p.len() - d;
        for i in 0..d {
            p[shift + i] = base.sub(&p[shift + i], &base.mul(&top, &modulus[i]));
        }
    }
    trim(base, &mut p);
    p
}

/// Renders a monomial like `X1^2*X3`. `empty` is returned for the constant
/// monomial.
pub(crate) fn monomial_text(names: &[String], e: &[u32], empty: &str) -> String {
    let parts: Vec<String> = e
        .iter()
        .enumerate()
        .filter(|(_, &k)| k > 0)
        .map(|(i, &k)| if k == 1 { names[i].clone() } else { format!("{}^{k}", names[i]) })
        .collect();
    if parts.is_empty() {
        empty.to_string()
    } else {
        parts.join("*")
    }
}

/// True when a rendered coefficient needs parentheses before `*`.
pub(crate) fn is_compound(s: &str) -> bool {
    let body = s.strip_prefix('-').unwrap_or(s);
    body.contains(" + ") || body.contains(" - ")
}

/// Joins `(monomial, coefficient)` pairs into `c*m + ... - c*m` text.
pub(crate) fn format_terms(base: &Ring, terms: &[(String, &Value)]) -> String {
    if terms.is_empty() {
        return "0".into();
    }
    let one = base.one();
    let minus_one = base.neg(&one);
    let mut out = String::new();
    for (i, (m, c)) in terms.iter().enumerate() {
        let piece = if m.is_empty() {
            base.format(c)
        } else if **c == one {
            m.clone()
        } else if **c == minus_one {
            format!("-{m}")
        } else {
            let s = base.format(c);
            if is_compound(&s) {
                format!("({s})*{m}")
            } else {
                format!("{s}*{m}")
            }
        };
        let piece = if m.is_empty() && is_compound(&piece) && terms.len() > 1 { format!("({piece})") } else { piece };
        if i == 0 {
            out.push_str(&piece);
        } else if let Some(rest) = piece.strip_prefix('-') {
            out.push_str(" - ");
            out.push_str(rest);
        } else {
            out.push_str(" + ");
            out.push_str(&piece);
        }
    }
    out
}

/// A ring element together with its ring. All binary operations check that
/// both operands live in the same ring.
#[derive(Clone, Debug, PartialEq)]
pub struct Elem {
    ring: Ring,
    value: Value,
}

impl Elem {
    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn value(&self) -> &Value {
        &self.value
    }

    pub fn into_value(self) -> Value {
        self.value
    }

    fn check(&self, other: &Elem) -> Result<()> {
        if self.ring.same(&other.ring) {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    pub fn add(&self, other: &Elem) -> Result<Elem> {
        self.check(other)?;
        Ok(self.ring.elem(self.ring.add(&self.value, &other.value)))
    }

    pub fn sub(&self, other: &Elem) -> Result<Elem> {
        self.check(other)?;
        Ok(self.ring.elem(self.ring.sub(&self.value, &other.value)))
    }

    pub fn mul(&self, other: &Elem) -> Result<Elem> {
        self.check(other)?;
        Ok(self.ring.elem(self.ring.mul(&self.value, &other.value)))
    }

    pub fn neg(&self) -> Elem {
        self.ring.elem(self.ring.neg(&self.value))
    }

    pub fn inverse(&self) -> Result<Elem> {
        Ok(self.ring.elem(self.ring.inverse(&self.value)?))
    }

    pub fn is_zero(&self) -> bool {
        self.ring.is_zero(&self.value)
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.ring.format(&self.value))
    }
}

/// Parses the ring-spec grammar: `Z`, `Q`, `Zmod:<m>`, `Mat:<k>:<spec>`,
/// `PolyCoef:<t>:<spec>`, and `UpperTri:<k>:<spec>` for the finite ring of
/// upper-triangular matrices over a finite base.
pub fn parse_ring_spec(spec: &str) -> Result<Ring> {
    parse_spec_at(spec, 0)
}

fn parse_spec_at(spec: &str, offset: usize) -> Result<Ring> {
    let (head, rest) = match spec.find(':') {
        Some(i) => (&spec[..i], Some((&spec[i + 1..], offset + i + 1))),
        None => (spec, None),
    };
    let number = |rest: Option<(&str, usize)>| -> Result<(u64, Option<(String, usize)>)> {
        let (r, pos) =
            rest.ok_or_else(|| Error::parse(offset + head.len(), format!("`{head}` needs a numeric argument")))?;
        let (num, tail) = match r.find(':') {
            Some(i) => (&r[..i], Some((r[i + 1..].to_string(), pos + i + 1))),
            None => (r, None),
        };
        let n =
            num.parse::<u64>().map_err(|_| Error::parse(pos, format!("expected a positive integer, found `{num}`")))?;
        Ok((n, tail))
    };
    match head {
        "Z" | "Q" if rest.is_some() => Err(Error::parse(offset + head.len(), "unexpected trailing text")),
        "Z" => Ok(Ring::integers()),
        "Q" => Ok(Ring::rationals()),
        "Zmod" => {
            let (m, tail) = number(rest)?;
            if let Some((_, p)) = tail {
                return Err(Error::parse(p - 1, "unexpected trailing text"));
            }
            Ring::modular(m).map_err(|e| Error::parse(offset + 5, e.to_string()))
        }
        "Mat" | "PolyCoef" | "UpperTri" => {
            let (k, tail) = number(rest)?;
            let (inner, p) = tail.ok_or_else(|| Error::parse(offset + spec.len(), "missing base ring spec"))?;
            if k == 0 {
                return Err(Error::parse(offset + head.len() + 1, "size must be >= 1"));
            }
            let base = parse_spec_at(&inner, p)?;
            match head {
                "Mat" => Ring::matrix(k as usize, base),
                "PolyCoef" => Ring::poly_coef(k as usize, base),
                _ => Ok(Ring::table(FiniteTable::upper_triangular(k as usize, &base)?)),
            }
        }
        "" => Err(Error::parse(offset, "empty ring spec")),
        other => Err(Error::parse(offset, format!("unknown ring `{other}`"))),
    }
}
