//! Frobenius acting on Λ and the field of moduli of the branch arrangement.

use genfermat::arrangement::{membership_xnd, LambdaParams};
use genfermat::ff::make_field;
use genfermat::moduli::{field_of_moduli, frobenius_apply};

fn main() -> genfermat::Result<()> {
    let f = make_field(7, 2)?;
    let (a, b) = (f.from_coeffs(&[2, 1])?, f.from_coeffs(&[3, 4])?);

    // generic entries from GF(49)
    let plain = LambdaParams::new(&f, 2, 5, vec![vec![a, b], vec![f.from_int(3), a]])?;
    // a row and its conjugate: Frobenius swaps the last two lines
    let conj = LambdaParams::new(&f, 2, 5, vec![vec![a, b], vec![f.frobenius(a, 1), f.frobenius(b, 1)]])?;

    for (name, lambda) in [("generic", plain), ("conjugate rows", conj)] {
        if !membership_xnd(&lambda) {
            println!("{name}: not in general position");
            continue;
        }
        let v = field_of_moduli(&lambda)?;
        println!(
            "{name}: entries generate GF(7^{}), field of moduli GF(7^{}), witness permutation {:?}",
            v.entry_field_degree, v.e, v.witness.perm
        );
        println!("  Λ^σ = {:?}", frobenius_apply(&lambda, 1).rows());
    }
    Ok(())
}
