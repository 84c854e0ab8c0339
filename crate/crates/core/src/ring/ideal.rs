use std::collections::{HashMap, HashSet, VecDeque};

use super::{FiniteTable, Ring, Value};
use crate::error::{Error, Result};
use crate::poly::Poly;

/// Largest ring the closure computations will enumerate.
const ENUMERATION_LIMIT: u64 = 1 << 12;

/// A two-sided ideal of a finite ring, stored as its full member set.
#[derive(Clone, Debug)]
pub struct Ideal {
    ring: Ring,
    members: Vec<Value>,
    lookup: HashSet<Value>,
    ring_order: usize,
}

impl Ideal {
    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn contains(&self, v: &Value) -> bool {
        self.lookup.contains(v)
    }

    pub fn members(&self) -> &[Value] {
        &self.members
    }

    pub fn size(&self) -> usize {
        self.members.len()
    }

    pub fn is_zero(&self) -> bool {
        self.members.len() == 1
    }

    pub fn is_whole_ring(&self) -> bool {
        self.members.len() == self.ring_order
    }
}

/// The two-sided ideal generated by all commutators `x*a - a*x` with `x` in
/// the ring and `a` among `gens`, by breadth-first closure under addition,
/// negation and multiplication on either side.
pub fn commutator_ideal(ring: &Ring, gens: &[Value]) -> Result<Ideal> {
    if !ring.is_finite() {
        return Err(Error::InfiniteRing);
    }
    let all = ring.elements(ENUMERATION_LIMIT)?;
    let mut seeds = vec![ring.zero()];
    for a in gens {
        for x in &all {
            seeds.push(ring.sub(&ring.mul(x, a), &ring.mul(a, x)));
        }
    }
    Ok(closure(ring, &all, seeds))
}

fn closure(ring: &Ring, all: &[Value], seeds: Vec<Value>) -> Ideal {
    let mut lookup: HashSet<Value> = HashSet::new();
    let mut members: Vec<Value> = Vec::new();
    let mut queue: VecDeque<Value> = VecDeque::new();
    let push = |v: Value, lookup: &mut HashSet<Value>, members: &mut Vec<Value>, queue: &mut VecDeque<Value>| {
        if lookup.insert(v.clone()) {
            members.push(v.clone());
            queue.push_back(v);
        }
    };
    for s in seeds {
        push(s, &mut lookup, &mut members, &mut queue);
    }
    while let Some(e) = queue.pop_front() {
        let mut fresh = vec![ring.neg(&e)];
        for r in all {
            fresh.push(ring.mul(r, &e));
            fresh.push(ring.mul(&e, r));
        }
        for s in members.clone() {
            fresh.push(ring.add(&e, &s));
        }
        for v in fresh {
            push(v, &mut lookup, &mut members, &mut queue);
        }
    }
    // report members in the ring's enumeration order
    let members: Vec<Value> = all.iter().filter(|v| lookup.contains(*v)).cloned().collect();
    Ideal { ring: ring.clone(), members, lookup, ring_order: all.len() }
}

/// `T = R / L_f` together with the projection `R -> T`.
#[derive(Clone, Debug)]
pub struct CentralQuotient {
    pub ideal: Ideal,
    pub quotient: Ring,
    /// `pi(f)`, with coefficients central in `quotient`.
    pub projected: Poly,
    coset_of: HashMap<Value, u32>,
}

impl CentralQuotient {
    /// The canonical projection `pi`.
    pub fn project(&self, v: &Value) -> Value {
        if self.quotient.is_zero_ring() {
            return self.quotient.zero();
        }
        Value::Idx(self.coset_of[v])
    }

    /// `L_f = R`, so `T` and `R_f` are the zero ring.
    pub fn is_zero_ring(&self) -> bool {
        self.quotient.is_zero_ring()
    }
}

/// Quotients a finite ring by the commutator ideal of the coefficients of
/// `f`, so that the projected polynomial has central coefficients.
pub fn central_quotient(f: &Poly) -> Result<CentralQuotient> {
    let ring = f.ring();
    if !ring.is_finite() {
        return Err(Error::InfiniteRing);
    }
    let ideal = commutator_ideal(ring, f.coeffs())?;
    let all = ring.elements(ENUMERATION_LIMIT)?;
    let n = f.degree().ok_or(Error::NonMonic)?;

    if ideal.is_whole_ring() {
        let quotient = Ring::table(FiniteTable::zero_ring());
        let projected = Poly::new(quotient.clone(), vec![quotient.zero(); n + 1]);
        return Ok(CentralQuotient { ideal, quotient, projected, coset_of: HashMap::new() });
    }

    // Coset of x is labelled by the first element of x + L in enumeration order.
    let index: HashMap<&Value, usize> = all.iter().enumerate().map(|(i, v)| (v, i)).collect();
    let mut coset_of: HashMap<Value, u32> = HashMap::new();
    let mut reps: Vec<usize> = Vec::new();
    for (i, x) in all.iter().enumerate() {
        if coset_of.contains_key(x) {
            continue;
        }
        let c = reps.len() as u32;
        reps.push(i);
        for l in ideal.members() {
            coset_of.insert(ring.add(x, l), c);
        }
    }
    let k = reps.len();
    let mut add = Vec::with_capacity(k * k);
    let mut mul = Vec::with_capacity(k * k);
    for &i in &reps {
        for &j in &reps {
            add.push(coset_of[&ring.add(&all[i], &all[j])]);
            mul.push(coset_of[&ring.mul(&all[i], &all[j])]);
        }
    }
    let labels: Vec<String> = reps.iter().map(|&i| ring.format(&all[i])).collect();
    debug_assert!(reps.iter().all(|i| index.contains_key(&all[*i])));
    let quotient = Ring::table(FiniteTable::from_raw(labels, add, mul)?);
    let projected = Poly::new(quotient.clone(), f.coeffs().iter().map(|c| Value::Idx(coset_of[c])).collect());
    if !projected.coeffs().iter().all(|c| quotient.is_central(c)) {
        return Err(Error::PreconditionViolated("projected coefficients are not central in R/L_f".into()));
    }
    Ok(CentralQuotient { ideal, quotient, projected, coset_of })
}
