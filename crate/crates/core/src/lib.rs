//! Generalized Fermat varieties `X^k_n(Λ)` over finite fields.
//!
//! Exact arithmetic in `GF(p^m)`, hyperplane arrangements and their normal
//! forms, the Fermat model with its deck group, linear automorphism groups by
//! monomial matrices, and the field of moduli under Frobenius.

pub mod arrangement;
pub mod autgroup;
pub mod cli;
pub mod error;
pub mod ff;
pub mod linalg;
pub mod moduli;
pub mod monomial;
pub mod multinomial;
mod poly;
pub mod serial;
pub mod variety;

pub use arrangement::{
    lambda_to_arrangement, membership_xnd, normalize, pgl_equivalent, Arrangement, EquivalenceMode, LambdaParams,
    ProjectiveMap, ProjectivePoint,
};
pub use autgroup::{compute_lin, verify_unique_fermat_group, LinGroup, UniquenessReport, UniquenessVerdict};
pub use error::{Error, Result};
pub use ff::{make_field, Field, FieldElement};
pub use monomial::MonomialMatrix;
pub use variety::{build_model, classify_type, FermatModel, TypeVerdict};
