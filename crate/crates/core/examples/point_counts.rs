//! Rational points over extensions and the Jacobian check at each of them.

use genfermat::arrangement::LambdaParams;
use genfermat::build_model;
use genfermat::ff::make_field;
use genfermat::variety::DEFAULT_POINT_BUDGET;

// only the base P^1 is scanned, so a cap well above |P^3(GF(7^3))| is cheap
const CAP: u64 = 100_000_000;

fn main() -> genfermat::Result<()> {
    let f = make_field(7, 1)?;
    let lambda = LambdaParams::new(&f, 1, 3, vec![vec![3]])?;
    let curve = build_model(1, 3, 3, &lambda, &f)?;
    for ext in 1..=3 {
        let pc = curve.enumerate_points(ext, CAP, false)?;
        println!("(1;3,3) curve: {:>6} points over {}", pc.count, pc.field);
    }

    let listed = curve.points(DEFAULT_POINT_BUDGET, true)?;
    for x in listed.points.unwrap().iter().take(5) {
        println!("  {} ↦ {}", x.render(), curve.covering_map(x)?.render());
    }

    let report = curve.smoothness_report(&[1, 2], DEFAULT_POINT_BUDGET)?;
    for c in &report.checks {
        println!("ext {}: {} points, {} singular", c.ext, c.points, c.singular_count);
    }
    println!("verdict {:?}", report.verdict);
    Ok(())
}
