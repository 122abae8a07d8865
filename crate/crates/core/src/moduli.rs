//! Frobenius action on `Λ` and the field of moduli of the branch arrangement.
//!
//! Only Frobenius powers of the finite ground field are considered, so the
//! result is the field of moduli relative to `GF(p)`.

use crate::arrangement::{lambda_to_arrangement, pgl_equivalent, Equivalence, EquivalenceMode, LambdaParams};
use crate::error::{Error, Result};

/// Raises every entry of `Λ` to the power `p^s`.
pub fn frobenius_apply(lambda: &LambdaParams, s: u64) -> LambdaParams {
    let f = lambda.field();
    lambda.map_entries(f, |x| f.frobenius(x, s))
}

/// Degree over `GF(p)` of the field generated by the entries of `Λ`.
pub fn entry_field_degree(lambda: &LambdaParams) -> u32 {
    let f = lambda.field();
    lambda.rows().iter().flatten().fold(1, |acc, &x| num_lcm(acc, f.element_degree(x)))
}

fn num_lcm(a: u32, b: u32) -> u32 {
    a / crate::ff::gcd(a as u64, b as u64) as u32 * b
}

#[derive(Clone, Debug)]
pub struct ModuliVerdict {
    /// The field of moduli is `GF(p^e)`.
    pub e: u32,
    pub entry_field_degree: u32,
    /// Carries the arrangement of `Λ` onto that of `Λ^{σ^e}`.
    pub witness: Equivalence,
    pub scope: &'static str,
}

/// Smallest `e >= 1` such that the arrangement of `Λ^{σ^e}` is projectively
/// equivalent to that of `Λ` as an unordered set.
///
/// The exponents that work form a subgroup of `Z` containing the degree of
/// the entry field, so only its divisors are tried.
pub fn field_of_moduli(lambda: &LambdaParams) -> Result<ModuliVerdict> {
    let degree = entry_field_degree(lambda);
    let source = lambda_to_arrangement(lambda)?;
    for e in (1..=degree).filter(|e| degree.is_multiple_of(*e)) {
        let image = lambda_to_arrangement(&frobenius_apply(lambda, e as u64))?;
        if let Some(witness) = pgl_equivalent(&source, &image, EquivalenceMode::Unlabeled)? {
            return Ok(ModuliVerdict {
                e,
                entry_field_degree: degree,
                witness,
                scope: "Frobenius powers over the prime field only",
            });
        }
    }
    Err(Error::BadParameters("Frobenius orbit does not close; Λ is not in general position".into()))
}
