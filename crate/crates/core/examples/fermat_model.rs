//! Building a generalized Fermat model, its deck group and the type
//! classification.

use genfermat::arrangement::LambdaParams;
use genfermat::autgroup::preserves_ideal;
use genfermat::ff::make_field;
use genfermat::{build_model, classify_type};

fn main() -> genfermat::Result<()> {
    let f = make_field(7, 1)?;
    let lambda = LambdaParams::new(&f, 2, 4, vec![vec![2, 3]])?;
    let mdl = build_model(2, 3, 4, &lambda, &f)?;
    println!("X^3_4(Λ) over {f}:");
    for form in mdl.describe_forms() {
        println!("  {form} = 0");
    }

    let v = classify_type(2, 3, 4, 7)?;
    println!("type (2;3,4), p = 7: theorem applies {}, canonical degree {}", v.theorem_applies, v.canonical_degree);

    let gens = mdl.deck_generators();
    let product = gens.iter().skip(1).fold(gens[0].clone(), |acc, g| acc.compose(g));
    println!("deck group of order {}", mdl.deck_group_elements().len());
    for (j, g) in gens.iter().enumerate() {
        println!("  φ_{} = {:?} preserves X: {}", j + 1, g.scalars(), preserves_ideal(g, &mdl)?);
    }
    println!("φ_1 ⋯ φ_5 = 1: {}", product.is_identity());

    let bad = LambdaParams::new(&f, 2, 4, vec![vec![1, 1]])?;
    println!("Λ = (1, 1) rejected: {}", build_model(2, 3, 4, &bad, &f).unwrap_err());
    Ok(())
}
