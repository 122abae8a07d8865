//! Hyperplane arrangements in general position: normal forms and
//! projective equivalence.

use genfermat::arrangement::{
    all_equivalences, lambda_to_arrangement, normalize, pgl_equivalent, EquivalenceMode, LambdaParams, ProjectiveMap,
};
use genfermat::ff::make_field;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> genfermat::Result<()> {
    let f = make_field(11, 1)?;
    let mut rng = ChaCha8Rng::seed_from_u64(7);

    let lambda = LambdaParams::new(&f, 2, 5, vec![vec![2, 3], vec![4, 9]])?;
    let arr = lambda_to_arrangement(&lambda)?;
    println!("standard arrangement of Λ = {:?}:", lambda.rows());
    for h in arr.hyperplanes() {
        println!("  {}", h.render());
    }

    // move it by a random projectivity and shuffle the lines
    let t = ProjectiveMap::random(&f, 2, &mut rng);
    let moved = arr.apply(&t).permuted(&[3, 0, 5, 1, 4, 2])?;
    let (_, back) = normalize(&moved)?;
    println!("normal form of the moved, relabeled arrangement: {:?}", back.rows());

    let labeled = pgl_equivalent(&arr, &moved, EquivalenceMode::Labeled)?;
    let unlabeled = pgl_equivalent(&arr, &moved, EquivalenceMode::Unlabeled)?;
    println!("labeled equivalence: {}", labeled.is_some());
    println!("unlabeled equivalence: {:?}", unlabeled.map(|e| e.perm));
    println!("symmetries of the arrangement: {}", all_equivalences(&arr, &arr)?.len());
    Ok(())
}
