use proptest::prelude::*;

use splitring_core::multipoly::{build_relations_closed, build_relations_recursive, symbolic_a};
use splitring_core::realization::{build_realization, companion, derived_poly, eval_at_companion, eval_horner};
use splitring_core::symmetry::{apply_perm, is_automorphism_system, scaling_system, Perm, RootSystem};
use splitring_core::{parse_ring_spec, quotient_ring, MPoly, Poly, Ring, SplitRing, Value};

fn rings() -> Vec<Ring> {
    vec![
        Ring::integers(),
        Ring::rationals(),
        Ring::modular(12).unwrap(),
        Ring::modular(7).unwrap(),
        parse_ring_spec("Mat:2:Zmod:3").unwrap(),
        parse_ring_spec("Mat:2:Z").unwrap(),
        parse_ring_spec("PolyCoef:2:Z").unwrap(),
        quotient_ring(&Ring::integers(), &Poly::parse(&Ring::integers(), "2,-3,1").unwrap(), "u").unwrap(),
    ]
}

/// An element built from small integers and, where the ring has them,
/// named generators and matrix units.
fn element(ring: &Ring, seed: &[i64]) -> Value {
    let text = match ring.spec().as_str() {
        s if s.starts_with("Mat:2") => {
            format!("[[{},{}],[{},{}]]", seed[0], seed[1], seed[2], seed[3])
        }
        s if s.starts_with("PolyCoef") => {
            format!("{}*t1^2 + {}*t1*t2 - {}*t2 + {}", seed[0], seed[1], seed[2], seed[3])
        }
        _ if ring.named("u").is_some() => format!("{}*u + {}", seed[0], seed[1]),
        _ if ring.spec() == "Q" => format!("{}/{}", seed[0], seed[1].abs() + 1),
        _ => seed[0].to_string(),
    };
    ring.parse(&text).unwrap()
}

fn small() -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-6i64..=6, 4)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms_hold(k in 0usize..8, x in small(), y in small(), z in small()) {
        let r = &rings()[k];
        let (a, b, c) = (element(r, &x), element(r, &y), element(r, &z));
        prop_assert_eq!(r.mul(&r.mul(&a, &b), &c), r.mul(&a, &r.mul(&b, &c)));
        prop_assert_eq!(r.mul(&a, &r.add(&b, &c)), r.add(&r.mul(&a, &b), &r.mul(&a, &c)));
        prop_assert_eq!(r.mul(&r.add(&a, &b), &c), r.add(&r.mul(&a, &c), &r.mul(&b, &c)));
        prop_assert_eq!(r.mul(&a, &r.one()), a.clone());
        prop_assert_eq!(r.mul(&r.one(), &a), a.clone());
        prop_assert!(r.is_zero(&r.add(&a, &r.neg(&a))));
    }

    #[test]
    fn canonical_forms_are_stable(k in 0usize..8, x in small()) {
        let r = &rings()[k];
        let a = element(r, &x);
        let again = r.parse(&r.format(&a)).unwrap();
        prop_assert_eq!(&again, &a);
        prop_assert_eq!(r.format(&again), r.format(&a));
    }

    #[test]
    fn adjoined_roots_are_roots(c in prop::collection::vec(-9i64..=9, 1..5)) {
        let z = Ring::integers();
        let mut coeffs: Vec<Value> = c.iter().map(|&x| z.from_int(x)).collect();
        coeffs.push(z.one());
        let m = Poly::new(z.clone(), coeffs);
        let s = quotient_ring(&z, &m, "rho").unwrap();
        let lifted = Poly::new(s.clone(), m.coeffs().iter().map(|v| s.embed(v.clone()).unwrap()).collect());
        prop_assert!(s.is_zero(&lifted.eval_value(&s.named("rho").unwrap())));
    }

    #[test]
    fn relations_agree_and_have_the_right_shape(c in prop::collection::vec(-9i64..=9, 1..7)) {
        let z = Ring::integers();
        let n = c.len();
        let mut coeffs: Vec<Value> = c.iter().map(|&x| z.from_int(x)).collect();
        coeffs.push(z.one());
        let f = Poly::new(z.clone(), coeffs);
        let rec = build_relations_recursive(&f, n).unwrap();
        prop_assert_eq!(&rec, &build_relations_closed(&f, n).unwrap());
        for (idx, fi) in rec.iter().enumerate() {
            let deg = (n - idx) as u32;
            prop_assert!(fi.uses_only_first(idx + 1));
            prop_assert!(fi.is_monic_in(idx + 1, deg));
            prop_assert_eq!(fi.total_degree(), Some(deg));
        }
    }

    #[test]
    fn normal_forms_respect_products(
        c in prop::collection::vec(-5i64..=5, 2..5),
        p in prop::collection::vec((0u32..4, 0u32..4, 0u32..3, -3i64..=3), 1..4),
        q in prop::collection::vec((0u32..4, 0u32..4, 0u32..3, -3i64..=3), 1..4),
    ) {
        let z = Ring::integers();
        let n = c.len();
        let mut coeffs: Vec<Value> = c.iter().map(|&x| z.from_int(x)).collect();
        coeffs.push(z.one());
        let s = SplitRing::new(&Poly::new(z.clone(), coeffs)).unwrap();
        let build = |t: &[(u32, u32, u32, i64)]| {
            MPoly::from_terms(&z, n, t.iter().map(|&(a, b, d, k)| {
                let mut e = vec![a, b, d, 0];
                e.truncate(n);
                e.resize(n, 0);
                (e, z.from_int(k))
            }))
        };
        let (m1, m2) = (build(&p), build(&q));
        let lhs = s.normal_form(&m1.mul(&m2).unwrap()).unwrap();
        let x = s.normal_form(&m1).unwrap();
        let y = s.normal_form(&m2).unwrap();
        prop_assert_eq!(&lhs, &x.mul(&y).unwrap());
        prop_assert_eq!(&lhs, &y.mul(&x).unwrap());
        let w = s.root(1).unwrap().add(&s.root(n).unwrap()).unwrap();
        prop_assert_eq!(x.mul(&y).unwrap().mul(&w).unwrap(), x.mul(&y.mul(&w).unwrap()).unwrap());
        // the regular representation is multiplicative
        let lx = s.regular_representation(&x).unwrap();
        let ly = s.regular_representation(&y).unwrap();
        prop_assert_eq!(s.regular_representation(&x.mul(&y).unwrap()).unwrap(), lx.mul(&ly).unwrap());
    }

    #[test]
    fn companion_columns_match_horner(
        f in prop::collection::vec(0i64..97, 1..7),
        g in prop::collection::vec(0i64..97, 0..12),
    ) {
        let r = Ring::modular(97).unwrap();
        let mut fc: Vec<Value> = f.iter().map(|&x| r.from_int(x)).collect();
        fc.push(r.one());
        let f = Poly::new(r.clone(), fc);
        let g = Poly::new(r.clone(), g.iter().map(|&x| r.from_int(x)).collect());
        let c = companion(&f).unwrap();
        prop_assert_eq!(eval_at_companion(&g, &f).unwrap(), eval_horner(&g, &c).unwrap());
    }

    #[test]
    fn derived_polynomials_telescope(g in prop::collection::vec(-9i64..=9, 2..8)) {
        // Z * g^{[j+1]} + c_{j+1} = g^{[j]}
        let z = Ring::integers();
        let mut c: Vec<Value> = g.iter().map(|&x| z.from_int(x)).collect();
        c.push(z.one());
        let g = Poly::new(z.clone(), c);
        let m = g.degree().unwrap();
        for j in 0..m - 1 {
            let lhs = derived_poly(&g, j + 1).shift(1).add(&Poly::new(z.clone(), vec![g.coeff(j + 1)]));
            prop_assert_eq!(lhs, derived_poly(&g, j));
        }
    }

    #[test]
    fn realization_matches_left_multiplication(c in prop::collection::vec(-9i64..=9, 1..5)) {
        let z = Ring::integers();
        let mut coeffs: Vec<Value> = c.iter().map(|&x| z.from_int(x)).collect();
        coeffs.push(z.one());
        let f = Poly::new(z.clone(), coeffs);
        let a = build_realization(&f, 6).unwrap();
        let s = SplitRing::new(&f).unwrap();
        for (i, ai) in a.iter().enumerate() {
            prop_assert_eq!(ai, &s.regular_representation(&s.root(i + 1).unwrap()).unwrap());
        }
    }

    #[test]
    fn permutations_act_by_ring_automorphisms(
        c in prop::collection::vec(-5i64..=5, 2..5),
        xs in prop::collection::vec(-4i64..=4, 24),
        ys in prop::collection::vec(-4i64..=4, 24),
        pi in 0usize..24,
        qi in 0usize..24,
    ) {
        let z = Ring::integers();
        let n = c.len();
        let mut coeffs: Vec<Value> = c.iter().map(|&x| z.from_int(x)).collect();
        coeffs.push(z.one());
        let s = SplitRing::new(&Poly::new(z.clone(), coeffs)).unwrap();
        let dim = s.dim();
        let x = s.from_coords(xs[..dim].iter().map(|&v| z.from_int(v)).collect()).unwrap();
        let y = s.from_coords(ys[..dim].iter().map(|&v| z.from_int(v)).collect()).unwrap();
        let perms = Perm::all(n);
        let p = &perms[pi % perms.len()];
        let q = &perms[qi % perms.len()];
        let img = |v: &splitring_core::SplitElem| apply_perm(&s, p, v).unwrap();
        prop_assert_eq!(img(&x.mul(&y).unwrap()), img(&x).mul(&img(&y)).unwrap());
        prop_assert_eq!(
            apply_perm(&s, &p.compose(q), &x).unwrap(),
            apply_perm(&s, p, &apply_perm(&s, q, &x).unwrap()).unwrap()
        );
        let sys = RootSystem::permutation(&s, p).unwrap();
        prop_assert!(is_automorphism_system(&s, &sys).unwrap().verdict());
    }
}

#[test]
fn symbolic_relations_agree_up_to_six() {
    for n in 1..=6 {
        let (_, f) = symbolic_a(n);
        assert_eq!(build_relations_recursive(&f, n).unwrap(), build_relations_closed(&f, n).unwrap(), "n={n}");
    }
}

#[test]
fn scaling_systems_fix_the_elementary_symmetric_values() {
    // f = Z^4 + 3 Z^2 + 2 over Z/7: only a_2, a_4 nonzero, so d = 2 works
    let r = Ring::modular(7).unwrap();
    let f = Poly::parse(&r, "2,0,3,0,1").unwrap();
    let s = SplitRing::new(&f).unwrap();
    let sys = scaling_system(&s, &r.from_int(6), 2).unwrap();
    assert!(is_automorphism_system(&s, &sys).unwrap().verdict());
    let a = f.a_coeffs();
    let product = s.product_of_linear_factors(&sys.roots).unwrap();
    // coefficient of Z^{n-i} is (-1)^i sigma_i(t)
    for i in 1..=4 {
        let sigma = if i % 2 == 1 { product[4 - i].neg() } else { product[4 - i].clone() };
        assert_eq!(sigma, s.scalar(&a[i - 1]));
    }
}

#[test]
fn basis_sizes() {
    let z = Ring::integers();
    for n in 1..=6 {
        let mut c = vec![z.zero(); n];
        c.push(z.one());
        let s = SplitRing::new(&Poly::new(z.clone(), c)).unwrap();
        assert_eq!(s.dim(), (1..=n).product::<usize>());
    }
}
