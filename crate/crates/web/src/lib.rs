//! Browser bindings. Every function takes plain strings and returns a JSON
//! document: the result on success, `{"error": "..."}` otherwise.

use serde_json::{json, Value as Json};
use splitring_core::multipoly::{build_relations_closed, build_relations_recursive};
use splitring_core::splitting::DEFAULT_CAP;
use splitring_core::{build_realization, parse_ring_spec, verify_realization, MPoly, Poly, SplitRing, VerifyOptions};
use wasm_bindgen::prelude::*;

/// Largest degree the page will build; the matrices have `n!` rows.
const PAGE_CAP: usize = 5;

fn parse_f(ring: &str, coeffs: &str) -> splitring_core::Result<Poly> {
    let ring = parse_ring_spec(ring.trim())?;
    let f = Poly::parse(&ring, coeffs)?;
    f.require_monic()?;
    Ok(f)
}

fn respond(r: splitring_core::Result<Json>) -> String {
    match r {
        Ok(v) => v.to_string(),
        Err(e) => json!({ "error": e.to_string() }).to_string(),
    }
}

/// The relations `f_1..f_n` for `f` given by its coefficients, constant
/// term first.
#[wasm_bindgen]
pub fn relations(ring: &str, coeffs: &str) -> String {
    respond((|| {
        let f = parse_f(ring, coeffs)?;
        let n = f.require_monic()?;
        let rec = build_relations_recursive(&f, n)?;
        let agree = rec == build_relations_closed(&f, n)?;
        Ok(json!({
            "f": f.format("Z"),
            "relations": rec.iter().map(MPoly::format).collect::<Vec<_>>(),
            "recursive_equals_closed": agree,
        }))
    })())
}

/// `A_1..A_n` with their verification report.
#[wasm_bindgen]
pub fn matrices(ring: &str, coeffs: &str) -> String {
    respond((|| {
        let f = parse_f(ring, coeffs)?;
        let cap = DEFAULT_CAP.min(PAGE_CAP);
        let mats = build_realization(&f, cap)?;
        let report = verify_realization(&f, &mats, &VerifyOptions::default().with_cap(cap))?;
        let mut out = report.to_json();
        out["pretty"] = json!(mats.iter().map(|m| m.pretty()).collect::<Vec<_>>());
        Ok(out)
    })())
}

/// Normal form in `R_f` of an expression in `X1..Xn`.
#[wasm_bindgen]
pub fn normal_form(ring: &str, coeffs: &str, expr: &str) -> String {
    respond((|| {
        let f = parse_f(ring, coeffs)?;
        let s = SplitRing::with_cap(&f, PAGE_CAP)?;
        let p = MPoly::parse(s.base(), s.degree(), expr)?;
        let x = s.normal_form(&p)?;
        let mut out = x.to_json();
        out["text"] = json!(x.to_string());
        Ok(out)
    })())
}
