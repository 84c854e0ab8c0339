//! One function per verb. Each returns an [`Outcome`]: the JSON document,
//! its text rendering, and whether every check passed.

use std::fmt::Write as _;

use anyhow::Context;
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::Rng as _;
use serde_json::{json, Value as Json};
use splitring_core::multipoly::{build_relations_closed, build_relations_recursive, verify_elementary_expansion};
use splitring_core::ring::central_quotient;
use splitring_core::symmetry::{
    all_scaling_systems, is_automorphism_system, theta_injectivity, AutomorphismCertificate,
};
use splitring_core::{
    build_realization, verify_realization, Error, Perm, Poly, RealizationReport, Ring, RootSystem, SplitRing, SqMatrix,
    Value, VerifyOptions,
};

use crate::job::Input;

pub struct Outcome {
    pub json: Json,
    pub text: String,
    pub passed: bool,
}

impl Outcome {
    fn new(command: &str, input: &Input, mut body: Json, text: String, passed: bool) -> Outcome {
        let obj = body.as_object_mut().expect("object body");
        obj.insert("command".into(), json!(command));
        obj.insert("input".into(), input.to_json());
        obj.insert("passed".into(), json!(passed));
        Outcome { json: body, text, passed }
    }
}

const SAMPLE_COUNT: usize = 32;

fn yes_no(b: bool) -> &'static str {
    if b {
        "pass"
    } else {
        "FAIL"
    }
}

fn header(f: &Poly, input: &Input) -> String {
    format!("f = {}  over {}\n", f.format("Z"), input.ring)
}

pub fn relations(input: &Input) -> anyhow::Result<Outcome> {
    let f = input.build()?;
    let n = f.require_monic()?;
    let recursive = build_relations_recursive(&f, n)?;
    let closed = build_relations_closed(&f, n)?;
    let agree = recursive == closed;
    let expansion = verify_elementary_expansion(&f, n)?;

    let mut text = header(&f, input);
    for (i, fi) in recursive.iter().enumerate() {
        writeln!(text, "f{} = {}", i + 1, fi.format()).unwrap();
    }
    writeln!(text, "recursive = closed form: {}", yes_no(agree)).unwrap();
    writeln!(text, "elementary expansion:    {}", yes_no(expansion.holds)).unwrap();

    let rels: Vec<Json> = recursive
        .iter()
        .enumerate()
        .map(|(i, fi)| json!({ "index": i + 1, "text": fi.format(), "terms": fi.to_json() }))
        .collect();
    let body = json!({
        "n": n,
        "f": f.format("Z"),
        "relations": rels,
        "recursive_equals_closed": agree,
        "elementary_expansion": {
            "holds": expansion.holds,
            "failing_index": expansion.failing_index,
        },
    });
    Ok(Outcome::new("relations", input, body, text, agree && expansion.holds))
}

/// Random nonzero-biased samples of `ring`: drawn from the full element
/// list for small finite rings, small integers otherwise.
fn samples(ring: &Ring, rng: &mut StdRng) -> anyhow::Result<Vec<Value>> {
    if ring.cardinality().is_some_and(|c| c <= 1 << 16) {
        let all = ring.elements(1 << 16)?;
        return Ok((0..SAMPLE_COUNT).filter_map(|_| all.choose(rng).cloned()).collect());
    }
    Ok((0..SAMPLE_COUNT).map(|_| ring.from_int(rng.gen_range(-1000..=1000))).collect())
}

fn report_text(report: &RealizationReport, with_matrices: bool) -> String {
    let mut text = String::new();
    if with_matrices {
        for (i, m) in report.matrices.iter().enumerate() {
            writeln!(text, "A{} =\n{}", i + 1, m.pretty()).unwrap();
        }
    }
    for (name, c) in &report.checks {
        let detail = match c {
            splitring_core::CheckOutcome::Pass => String::new(),
            splitring_core::CheckOutcome::Fail(d) | splitring_core::CheckOutcome::Skipped(d) => format!(" ({d})"),
        };
        writeln!(text, "{name}: {}{detail}", c.label()).unwrap();
    }
    text
}

/// Builds and verifies `A_1..A_n` and runs the normal-form checks on `R_f`.
fn realize(f: &Poly, cap: usize, rng: &mut StdRng, exhaustive_gamma: bool) -> anyhow::Result<(Json, String, bool)> {
    let mats = build_realization(f, cap)?;
    let report = verify_realization(f, &mats, &VerifyOptions::default().with_cap(cap))?;
    let s = SplitRing::with_cap(f, cap)?;
    let factorization = s.universal_factorization_check();
    let sample = samples(f.ring(), rng)?;
    let gamma =
        if exhaustive_gamma { s.gamma_injectivity_exhaustive(&sample)? } else { s.gamma_injectivity_check(&sample) };
    let minimal = s.minimal_polynomial_check()?;

    let mut text = report_text(&report, true);
    writeln!(text, "universal factorization: {}", yes_no(factorization)).unwrap();
    writeln!(text, "gamma injective ({}): {}", if exhaustive_gamma { "exhaustive" } else { "sampled" }, yes_no(gamma))
        .unwrap();
    writeln!(text, "minimal polynomials: {}", yes_no(minimal)).unwrap();
    let passed = report.passed() && factorization && gamma && minimal;
    let body = json!({
        "report": report.to_json(),
        "splitting_ring": {
            "dimension": s.dim(),
            "universal_factorization": factorization,
            "gamma_injective": gamma,
            "gamma_exhaustive": exhaustive_gamma,
            "minimal_polynomials": minimal,
        },
    });
    Ok((body, text, passed))
}

pub fn matrices(input: &Input, cap: usize, rng: &mut StdRng) -> anyhow::Result<Outcome> {
    let f = input.build()?;
    let (body, text, passed) = realize(&f, cap, rng, false)?;
    Ok(Outcome::new("matrices", input, body, header(&f, input) + &text, passed))
}

/// Re-imports the matrices of a `matrices` export and checks them again.
pub fn verify(doc: &Json, cap: usize) -> anyhow::Result<Outcome> {
    let input = Input::from_json(doc.get("input").context("missing `input` section")?)?;
    let f = input.build()?;
    let n = f.require_monic()?;
    let report = doc.get("report").unwrap_or(doc);
    let list = report.get("matrices").and_then(Json::as_array).context("missing `matrices` array")?;
    if list.len() != n {
        return Err(Error::LengthMismatch { expected: n, got: list.len() }.into());
    }
    let mats = list.iter().map(|m| SqMatrix::from_json(f.ring(), m)).collect::<Result<Vec<_>, _>>()?;
    let report = verify_realization(&f, &mats, &VerifyOptions::default().with_cap(cap))?;
    let text = header(&f, &input) + &report_text(&report, false);
    let passed = report.passed();
    Ok(Outcome::new("verify", &input, json!({ "report": report.to_json() }), text, passed))
}

pub fn noncomm(input: &Input, cap: usize, rng: &mut StdRng) -> anyhow::Result<Outcome> {
    let f = input.build()?;
    if !f.ring().is_finite() {
        return Err(Error::InfiniteRing).context("noncomm needs a finite base ring");
    }
    let cq = central_quotient(&f)?;
    let t = &cq.quotient;
    let quotient_size = t.cardinality().unwrap_or(0);
    let labels: Vec<String> = t.elements(1 << 16)?.iter().map(|v| t.format(v)).collect();

    let mut text = header(&f, input);
    writeln!(text, "|L_f| = {}{}", cq.ideal.size(), if cq.ideal.is_zero() { " (zero ideal)" } else { "" }).unwrap();
    writeln!(text, "|T_f| = {quotient_size}{}", if cq.is_zero_ring() { " (zero ring)" } else { "" }).unwrap();
    writeln!(text, "T_f commutative: {}", t.is_commutative()).unwrap();
    writeln!(text, "f over T_f: {}", cq.projected.format("Z")).unwrap();

    let (realization, sub_text, passed) = realize(&cq.projected, cap, rng, true)?;
    text.push_str(&sub_text);
    let body = json!({
        "ideal_size": cq.ideal.size(),
        "ideal_is_zero": cq.ideal.is_zero(),
        "quotient": {
            "size": quotient_size,
            "zero_ring": cq.is_zero_ring(),
            "commutative": t.is_commutative(),
            "elements": labels,
        },
        "projected_f": cq.projected.coeffs().iter().map(|c| t.format(c)).collect::<Vec<_>>(),
        "realization": realization,
    });
    Ok(Outcome::new("noncomm", input, body, text, passed))
}

/// All of `S_n` up to degree 4; beyond that the identity and the adjacent
/// transpositions, which generate `S_n`.
fn permutations_to_certify(n: usize) -> Vec<Perm> {
    if n <= 4 {
        return Perm::all(n);
    }
    let mut out = vec![Perm::identity(n)];
    out.extend((1..n).map(|i| Perm::transposition(n, i, i + 1).expect("in range")));
    out
}

pub fn automorphisms(input: &Input, cap: usize) -> anyhow::Result<Outcome> {
    let f = input.build()?;
    let s = SplitRing::with_cap(&f, cap)?;
    let n = s.degree();
    let theta = theta_injectivity(&s)?;
    let theta_asserted = n > 2;

    let certify =
        |sys: RootSystem| -> anyhow::Result<AutomorphismCertificate> { Ok(is_automorphism_system(&s, &sys)?) };
    let perm_certs = permutations_to_certify(n)
        .iter()
        .map(|p| certify(RootSystem::permutation(&s, p)?))
        .collect::<anyhow::Result<Vec<_>>>()?;
    let (scaling_certs, scaling_note) = match all_scaling_systems(&s) {
        Ok(systems) => (systems.into_iter().map(certify).collect::<anyhow::Result<Vec<_>>>()?, None),
        Err(Error::Unsupported(why)) => (Vec::new(), Some(why)),
        Err(e) => return Err(e.into()),
    };

    let all_valid = perm_certs.iter().chain(&scaling_certs).all(AutomorphismCertificate::verdict);
    let passed = all_valid && (theta || !theta_asserted);

    let mut text = header(&f, input);
    writeln!(text, "Theta injective: {}{}", theta, if theta_asserted { "" } else { " (reported only for n <= 2)" })
        .unwrap();
    for c in perm_certs.iter().chain(&scaling_certs) {
        writeln!(
            text,
            "{}: commute={} factorization={} basis_unit_det={} -> {}",
            c.system,
            c.commute,
            c.factorization,
            c.basis_unit_det,
            yes_no(c.verdict())
        )
        .unwrap();
    }
    if scaling_certs.is_empty() {
        match &scaling_note {
            Some(why) => writeln!(text, "scaling systems: skipped ({why})").unwrap(),
            None => writeln!(text, "scaling systems: none (coefficient pattern or units)").unwrap(),
        }
    }
    let body = json!({
        "n": n,
        "theta_injective": theta,
        "theta_asserted": theta_asserted,
        "permutation_certificates": perm_certs.iter().map(AutomorphismCertificate::to_json).collect::<Vec<_>>(),
        "scaling_certificates": scaling_certs.iter().map(AutomorphismCertificate::to_json).collect::<Vec<_>>(),
        "scaling_skipped": scaling_note,
    });
    Ok(Outcome::new("automorphisms", input, body, text, passed))
}
