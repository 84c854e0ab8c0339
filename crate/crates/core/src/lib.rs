//! Exact construction of the universal splitting ring of a monic polynomial.
//!
//! The ring `R_f = R[X1..Xn]/(sigma_i - a_i)` is built three ways: by
//! normal-form rewriting ([`splitting`]), by its regular representation,
//! and by recursive companion-matrix blocks ([`realization`]). The crate
//! also provides the underlying exact rings, dense univariate and sparse
//! multivariate polynomials, and checks for the permutation and scaling
//! automorphisms of `R_f`.

pub mod error;
pub(crate) mod expr;
pub mod linalg;
pub mod multipoly;
pub mod poly;
pub mod realization;
pub mod ring;
pub mod splitting;
pub mod symmetry;

pub use error::{Error, Result};
pub use linalg::SqMatrix;
pub use multipoly::MPoly;
pub use poly::{parse_value_list, quotient_ring, Poly};
pub use realization::{build_realization, verify_realization, CheckOutcome, RealizationReport, VerifyOptions};
pub use ring::{parse_ring_spec, Elem, Ring, Value};
pub use splitting::{SplitElem, SplitRing};
pub use symmetry::{Perm, RootSystem};
