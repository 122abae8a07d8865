//! Uniqueness of the generalized Fermat group in three regimes: the
//! theorem applies, a hypothesis fails, and an exceptional type.

use genfermat::arrangement::LambdaParams;
use genfermat::ff::make_field;
use genfermat::{build_model, verify_unique_fermat_group, FermatModel};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn random_model(p: u64, m: u32, d: usize, k: u64, n: usize, seed: u64) -> genfermat::Result<FermatModel> {
    let f = make_field(p, m)?;
    let lambda = LambdaParams::random(&f, d, n, &mut ChaCha8Rng::seed_from_u64(seed))?;
    build_model(d, k, n, &lambda, &f)
}

fn main() -> genfermat::Result<()> {
    let cases = [
        ("(2;3,4) over GF(7)", random_model(7, 1, 2, 3, 4, 1)?),
        ("(2;3,4) over GF(4), k-1 a power of p", random_model(2, 2, 2, 3, 4, 0)?),
        ("(2;4,3) over GF(5)", random_model(5, 1, 2, 4, 3, 0)?),
    ];
    for (name, mdl) in &cases {
        let r = verify_unique_fermat_group(mdl)?;
        println!("{name}: {:?}", r.verdict);
        println!(
            "  |Lin| = {}, H_0 normal {}, quasi-reflections {} ({} of order k outside H_0)",
            r.lin_order,
            r.h0_normal,
            r.quasi_reflections.len(),
            r.order_k_quasi_reflections_outside_h0
        );
        match &r.oracle {
            Some(o) => println!("  subgroup oracle: {} subgroup(s)", o.count),
            None => println!("  subgroup oracle skipped"),
        }
    }
    Ok(())
}
