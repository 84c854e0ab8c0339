use std::collections::HashMap;

use super::{Ring, Value};
use crate::error::{Error, Result};

/// A finite ring given by explicit addition and multiplication tables.
///
/// Construction verifies the ring axioms exhaustively, so every table that
/// exists is an associative ring with identity. The one exception is
/// [`FiniteTable::zero_ring`], the ring with `1 = 0`, which only arises as a
/// quotient.
#[derive(Clone, Debug, PartialEq)]
pub struct FiniteTable {
    labels: Vec<String>,
    add: Vec<u32>,
    mul: Vec<u32>,
    neg: Vec<u32>,
    zero: u32,
    one: u32,
    commutative: bool,
}

impl FiniteTable {
    /// Builds and verifies a table ring. `add[i][j]` and `mul[i][j]` are
    /// element indices.
    pub fn new(labels: Vec<String>, add: Vec<Vec<usize>>, mul: Vec<Vec<usize>>) -> Result<Self> {
        let n = labels.len();
        if n == 0 {
            return Err(Error::InvalidTable("empty element set".into()));
        }
        if n > u32::MAX as usize {
            return Err(Error::InvalidTable("too many elements".into()));
        }
        let flat = |t: &Vec<Vec<usize>>, what: &str| -> Result<Vec<u32>> {
            if t.len() != n || t.iter().any(|r| r.len() != n) {
                return Err(Error::InvalidTable(format!("{what} table is not {n}x{n}")));
            }
            t.iter()
                .flatten()
                .map(|&x| {
                    if x < n {
                        Ok(x as u32)
                    } else {
                        Err(Error::InvalidTable(format!("{what} table entry {x} out of range")))
                    }
                })
                .collect()
        };
        let add = flat(&add, "addition")?;
        let mul = flat(&mul, "multiplication")?;
        let t = Self::assemble(labels, add, mul)?;
        if t.zero == t.one {
            return Err(Error::InvalidTable("identity equals zero".into()));
        }
        t.verify()?;
        Ok(t)
    }

    fn assemble(labels: Vec<String>, add: Vec<u32>, mul: Vec<u32>) -> Result<Self> {
        let n = labels.len();
        let at = |t: &Vec<u32>, i: usize, j: usize| t[i * n + j] as usize;
        let zero = (0..n)
            .find(|&z| (0..n).all(|x| at(&add, z, x) == x && at(&add, x, z) == x))
            .ok_or_else(|| Error::InvalidTable("no additive identity".into()))?;
        let one = (0..n)
            .find(|&u| (0..n).all(|x| at(&mul, u, x) == x && at(&mul, x, u) == x))
            .ok_or_else(|| Error::InvalidTable("no multiplicative identity".into()))?;
        let neg = (0..n)
            .map(|x| {
                (0..n)
                    .find(|&y| at(&add, x, y) == zero)
                    .map(|y| y as u32)
                    .ok_or_else(|| Error::InvalidTable(format!("element {x} has no negative")))
            })
            .collect::<Result<Vec<_>>>()?;
        let commutative = (0..n).all(|i| (0..n).all(|j| mul[i * n + j] == mul[j * n + i]));
        Ok(FiniteTable { labels, add, mul, neg, zero: zero as u32, one: one as u32, commutative })
    }

    fn verify(&self) -> Result<()> {
        let n = self.size();
        let a = |i: usize, j: usize| self.add[i * n + j] as usize;
        let m = |i: usize, j: usize| self.mul[i * n + j] as usize;
        for x in 0..n {
            for y in 0..n {
                if a(x, y) != a(y, x) {
                    return Err(Error::InvalidTable(format!("addition not commutative at ({x},{y})")));
                }
                for z in 0..n {
                    if a(a(x, y), z) != a(x, a(y, z)) {
                        return Err(Error::InvalidTable(format!("addition not associative at ({x},{y},{z})")));
                    }
                    if m(m(x, y), z) != m(x, m(y, z)) {
                        return Err(Error::InvalidTable(format!("multiplication not associative at ({x},{y},{z})")));
                    }
                    if m(x, a(y, z)) != a(m(x, y), m(x, z)) || m(a(x, y), z) != a(m(x, z), m(y, z)) {
                        return Err(Error::InvalidTable(format!("distributivity fails at ({x},{y},{z})")));
                    }
                }
            }
        }
        Ok(())
    }

    /// The ring with one element.
    pub fn zero_ring() -> Self {
        FiniteTable {
            labels: vec!["0".into()],
            add: vec![0],
            mul: vec![0],
            neg: vec![0],
            zero: 0,
            one: 0,
            commutative: true,
        }
    }

    /// Tabulates a finite subset of `ring` that is closed under the ring
    /// operations and contains 0 and 1. Labels are the elements' text forms.
    pub fn from_elements(ring: &Ring, elements: &[Value]) -> Result<Self> {
        let index: HashMap<&Value, usize> = elements.iter().enumerate().map(|(i, v)| (v, i)).collect();
        if index.len() != elements.len() {
            return Err(Error::InvalidTable("duplicate elements".into()));
        }
        let lookup = |v: Value| -> Result<usize> {
            index
                .get(&v)
                .copied()
                .ok_or_else(|| Error::InvalidTable(format!("not closed: {} missing", ring.format(&v))))
        };
        let mut add = Vec::with_capacity(elements.len());
        let mut mul = Vec::with_capacity(elements.len());
        for x in elements {
            add.push(elements.iter().map(|y| lookup(ring.add(x, y))).collect::<Result<Vec<_>>>()?);
            mul.push(elements.iter().map(|y| lookup(ring.mul(x, y))).collect::<Result<Vec<_>>>()?);
        }
        let labels = elements.iter().map(|v| ring.format(v)).collect();
        FiniteTable::new(labels, add, mul)
    }

    /// Upper-triangular `k x k` matrices over a finite base ring.
    pub fn upper_triangular(k: usize, base: &Ring) -> Result<Self> {
        let mat = Ring::matrix(k, base.clone())?;
        let all = mat.elements(1 << 16)?;
        let upper: Vec<Value> = all
            .into_iter()
            .filter(|v| match v {
                Value::Mat(m) => (0..k).all(|i| (0..i).all(|j| base.is_zero(&m[i * k + j]))),
                _ => false,
            })
            .collect();
        FiniteTable::from_elements(&mat, &upper)
    }

    pub fn size(&self) -> usize {
        self.labels.len()
    }

    pub fn zero(&self) -> u32 {
        self.zero
    }

    pub fn one(&self) -> u32 {
        self.one
    }

    pub fn add(&self, x: u32, y: u32) -> u32 {
        self.add[x as usize * self.size() + y as usize]
    }

    pub fn mul(&self, x: u32, y: u32) -> u32 {
        self.mul[x as usize * self.size() + y as usize]
    }

    pub fn neg(&self, x: u32) -> u32 {
        self.neg[x as usize]
    }

    pub fn is_commutative(&self) -> bool {
        self.commutative
    }

    pub fn is_central(&self, x: u32) -> bool {
        (0..self.size() as u32).all(|y| self.mul(x, y) == self.mul(y, x))
    }

    pub fn label(&self, x: u32) -> &str {
        &self.labels[x as usize]
    }

    pub fn label_index(&self, label: &str) -> Option<u32> {
        self.labels.iter().position(|l| l == label).map(|i| i as u32)
    }

    pub(crate) fn from_raw(labels: Vec<String>, add: Vec<u32>, mul: Vec<u32>) -> Result<Self> {
        let t = Self::assemble(labels, add, mul)?;
        t.verify()?;
        Ok(t)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zmod_table(m: usize) -> (Vec<Vec<usize>>, Vec<Vec<usize>>) {
        let add = (0..m).map(|i| (0..m).map(|j| (i + j) % m).collect()).collect();
        let mul = (0..m).map(|i| (0..m).map(|j| (i * j) % m).collect()).collect();
        (add, mul)
    }

    #[test]
    fn accepts_a_ring() {
        let (add, mul) = zmod_table(6);
        let t = FiniteTable::new((0..6).map(|i| i.to_string()).collect(), add, mul).unwrap();
        assert_eq!(t.zero(), 0);
        assert_eq!(t.one(), 1);
        assert!(t.is_commutative());
        assert_eq!(t.neg(2), 4);
    }

    #[test]
    fn rejects_non_associative_multiplication() {
        let (add, mut mul) = zmod_table(3);
        mul[2][2] = 2;
        let err = FiniteTable::new((0..3).map(|i| i.to_string()).collect(), add, mul).unwrap_err();
        assert!(matches!(err, Error::InvalidTable(_)));
    }

    #[test]
    fn rejects_missing_identity_and_zero_ring() {
        let (add, _) = zmod_table(2);
        let mul = vec![vec![0, 0], vec![0, 0]];
        assert!(FiniteTable::new(vec!["0".into(), "1".into()], add, mul).is_err());
        assert!(FiniteTable::new(vec!["0".into()], vec![vec![0]], vec![vec![0]]).is_err());
    }

    #[test]
    fn upper_triangular_over_f2() {
        let t = FiniteTable::upper_triangular(2, &Ring::modular(2).unwrap()).unwrap();
        assert_eq!(t.size(), 8);
        assert!(!t.is_commutative());
        let e12 = t.label_index("[[0,1],[0,0]]").unwrap();
        assert!(!t.is_central(e12));
        assert_eq!(t.mul(e12, e12), t.zero());
    }

    /// Exhaustive ring-axiom check over every table ring of order <= 16 that
    /// the crate can build.
    #[test]
    fn axioms_hold_for_small_rings() {
        let f2 = Ring::modular(2).unwrap();
        let rings = vec![
            Ring::table(FiniteTable::upper_triangular(2, &f2).unwrap()),
            Ring::matrix(2, f2.clone()).unwrap(),
            Ring::modular(16).unwrap(),
        ];
        for r in rings {
            let all = r.elements(16).unwrap();
            for x in &all {
                for y in &all {
                    for z in &all {
                        assert_eq!(r.mul(&r.mul(x, y), z), r.mul(x, &r.mul(y, z)));
                        assert_eq!(r.mul(x, &r.add(y, z)), r.add(&r.mul(x, y), &r.mul(x, z)));
                        assert_eq!(r.mul(&r.add(x, y), z), r.add(&r.mul(x, z), &r.mul(y, z)));
                    }
                }
                assert_eq!(r.mul(x, &r.one()), *x);
                assert_eq!(r.add(x, &r.neg(x)), r.zero());
            }
        }
    }
}
