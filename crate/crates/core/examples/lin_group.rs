//! The monomial automorphism group of the Fermat quartic surface over GF(5)
//! and of a less symmetric model that needs a field extension.

use genfermat::arrangement::LambdaParams;
use genfermat::autgroup::quasi_reflection_census;
use genfermat::ff::make_field;
use genfermat::{build_model, compute_lin};

fn main() -> genfermat::Result<()> {
    let f5 = make_field(5, 1)?;
    let quartic = build_model(2, 4, 3, &LambdaParams::empty(&f5, 2), &f5)?;
    let lin = compute_lin(&quartic)?;
    println!("Fermat quartic: |Lin| = {} = 4^3 · {}", lin.order(), lin.symmetries().len());
    let census = quasi_reflection_census(&lin);
    let diagonal = census.iter().filter(|q| q.in_deck_group).count();
    println!("quasi-reflections: {} ({diagonal} diagonal)", census.len());

    let f7 = make_field(7, 1)?;
    let lambda = LambdaParams::new(&f7, 1, 3, vec![vec![6]])?;
    let curve = build_model(1, 2, 3, &lambda, &f7)?;
    let lin = compute_lin(&curve)?;
    println!(
        "(1;2,3) with Λ = (-1): |Lin| = {} over {} (extension degree {})",
        lin.order(),
        lin.field(),
        lin.extension_degree()
    );
    for g in lin.symmetry_generators() {
        println!("  symmetry generator {g:?}");
    }
    Ok(())
}
