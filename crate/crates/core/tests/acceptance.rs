//! Acceptance criteria. Each criterion prints one PASS/FAIL line with its
//! wall time and limit; the process exits nonzero if any criterion fails.
//! Every expected value is checked against an oracle computed here, not
//! through the code path under test.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use genfermat::arrangement::{
    all_equivalences, lambda_to_arrangement, normalize, pgl_equivalent, Arrangement, EquivalenceMode, LambdaParams,
    ProjectiveMap,
};
use genfermat::autgroup::{
    compute_lin, preserves_ideal_matrix, quasi_reflection_census, subgroup_oracle, verify_unique_fermat_group,
    UniquenessVerdict,
};
use genfermat::ff::{make_field, Field};
use genfermat::linalg::Matrix;
use genfermat::moduli::{entry_field_degree, field_of_moduli, frobenius_apply};
use genfermat::multinomial::{binom_mod_p_oracle, binom_nonzero_mod_p, lucas_witness};
use genfermat::variety::{build_model, classify_type, FermatModel, SmoothnessVerdict, DEFAULT_POINT_BUDGET};
use genfermat::ProjectivePoint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;
/// Name, check and time limit in seconds.
type Criterion = (&'static str, fn() -> Check, u64);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn err<E: std::fmt::Debug>(e: E) -> String {
    format!("{e:?}")
}

/// Points of `P^n(GF(p))` on `Σ_j c_j x_j^k = 0`, by plain modular arithmetic over all affine tuples.
fn naive_diagonal_count(p: u64, k: u32, coeffs: &[u64]) -> u64 {
    let vars = coeffs.len() as u32;
    let mut zeros = 0u64;
    for idx in 1..p.pow(vars) {
        let mut rest = idx;
        let mut sum = 0u64;
        for &c in coeffs {
            let x = rest % p;
            rest /= p;
            sum = (sum + c * x.pow(k)) % p;
        }
        if sum == 0 {
            zeros += 1;
        }
    }
    zeros / (p - 1)
}

fn criterion_1() -> Check {
    let mut flagged = BTreeSet::new();
    for p in [2u64, 3, 5, 7, 11, 13] {
        for k in 2..=10u64 {
            for n in 3..=10usize {
                let v = classify_type(2, k, n, p).map_err(err)?;
                let r = (n as i64 - 2) * k as i64 - n as i64 - 1;
                ensure!(v.canonical_degree == r, "r({k},{n}) = {} != {r}", v.canonical_degree);
                let expected = p > 2 && r == 0;
                ensure!(v.exceptional_type == expected, "(2;{k},{n}) p={p}: flagged {}", v.exceptional_type);
                if v.exceptional_type {
                    flagged.insert((k, n));
                }
            }
        }
    }
    ensure!(flagged == BTreeSet::from([(2, 5), (4, 3)]), "flagged {flagged:?}");
    Ok(format!("flagged {flagged:?}, r = 0 for both"))
}

fn criterion_2() -> Check {
    let mut checked = 0;
    for p in [2u64, 3, 5, 7] {
        for k in 2..=64u64 {
            if k % p == 0 {
                continue;
            }
            let n = k - 1;
            // Pascal row n mod p, built here
            let mut row = vec![1u64 % p];
            for _ in 0..n {
                let mut next = vec![1 % p; row.len() + 1];
                for j in 1..row.len() {
                    next[j] = (row[j - 1] + row[j]) % p;
                }
                row = next;
            }
            for r in 0..=n {
                let lucas = binom_nonzero_mod_p(n, r, p).map_err(err)?;
                let oracle = binom_mod_p_oracle(n, r, p, u64::MAX).map_err(err)?;
                ensure!(lucas == (row[r as usize] != 0), "C({n},{r}) mod {p}");
                ensure!(oracle == row[r as usize], "oracle C({n},{r}) mod {p}");
                checked += 1;
            }
            let mut x = n;
            while x % p == 0 {
                x /= p;
            }
            let power = x == 1;
            ensure!(lucas_witness(k, p).map_err(err)?.is_none() == power, "witness for k={k}, p={p}");
        }
    }
    Ok(format!("{checked} binomials agree"))
}

fn criterion_3() -> Check {
    let f3 = make_field(3, 1).map_err(err)?;
    let conic = build_model(1, 2, 2, &LambdaParams::empty(&f3, 1), &f3).map_err(err)?;
    let c = conic.points(DEFAULT_POINT_BUDGET, false).map_err(err)?.count;
    let c_naive = naive_diagonal_count(3, 2, &[1, 1, 1]);
    ensure!(c == 4 && c_naive == 4, "conic: {c} points, naive {c_naive}");

    let f5 = make_field(5, 1).map_err(err)?;
    let quartic = build_model(2, 4, 3, &LambdaParams::empty(&f5, 2), &f5).map_err(err)?;
    let q = quartic.points(DEFAULT_POINT_BUDGET, false).map_err(err)?.count;
    let q_naive = naive_diagonal_count(5, 4, &[1, 1, 1, 1]);
    ensure!(q == 0 && q_naive == 0, "quartic: {q} points, naive {q_naive}");
    Ok("conic 4 = 4, quartic 0 = 0".into())
}

fn deck_axioms(mdl: &FermatModel) -> Check {
    let k = mdl.k();
    let n = mdl.n();
    let h0: BTreeSet<_> = mdl.deck_group_elements().iter().map(|g| format!("{g:?}")).collect();
    ensure!(h0.len() as u64 == k.pow(n as u32), "|H_0| = {}", h0.len());
    let gens = mdl.deck_generators();
    let product = gens.iter().skip(1).fold(gens[0].clone(), |acc, g| acc.compose(g));
    ensure!(product.is_identity(), "product of generators is {product:?}");
    let pts = mdl.points(DEFAULT_POINT_BUDGET, true).map_err(err)?.points.unwrap();
    ensure!(!pts.is_empty(), "no rational points to check");
    let f = mdl.field();
    for x in &pts {
        let cover = mdl.covering_map(x).map_err(err)?;
        for g in &gens {
            let y = g.apply(x).map_err(err)?;
            ensure!(mdl.contains(&y).map_err(err)?, "φ moves {} off the variety", x.render());
            ensure!(mdl.covering_map(&y).map_err(err)? == cover, "π_0 ∘ φ differs at {}", x.render());
        }
        // π_0 once more, computed by hand
        let by_hand = ProjectivePoint::new(f, x.coords()[..=mdl.d()].iter().map(|&c| f.pow(c, k)).collect()).unwrap();
        ensure!(by_hand == cover, "π_0 mismatch");
    }
    Ok(format!("({};{},{}): {} points", mdl.d(), k, n, pts.len()))
}

fn criterion_4() -> Check {
    let f7 = make_field(7, 1).map_err(err)?;
    let models = [
        build_model(2, 2, 3, &LambdaParams::empty(&f7, 2), &f7),
        build_model(2, 3, 4, &LambdaParams::new(&f7, 2, 4, vec![vec![2, 3]]).unwrap(), &f7),
        build_model(1, 3, 4, &LambdaParams::new(&f7, 1, 4, vec![vec![2], vec![3]]).unwrap(), &f7),
    ];
    let mut notes = Vec::new();
    for m in models {
        notes.push(deck_axioms(&m.map_err(err)?)?);
    }
    Ok(notes.join("; "))
}

/// Rank of the Jacobian of `Σ_j C_ij x_j^k` written out directly.
fn jacobian_rank_by_hand(mdl: &FermatModel, x: &[u64]) -> usize {
    let f = mdl.field();
    let c = mdl.coefficient_matrix();
    let k = mdl.k();
    let kk = f.from_int(k as i64);
    let mut rows = Vec::new();
    for i in 0..c.rows() {
        rows.push((0..x.len()).map(|j| f.mul(c[(i, j)], f.mul(kk, f.pow(x[j], k - 1)))).collect());
    }
    Matrix::from_rows(&rows).rank(f)
}

fn criterion_5() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut total_points = 0u64;
    let mut models = 0;
    for (p, m) in [(7u64, 1u32), (7, 2)] {
        let f = make_field(p, m).map_err(err)?;
        for (k, n) in [(2u64, 4usize), (3, 4)] {
            for _ in 0..20 {
                let lambda = LambdaParams::random(&f, 2, n, &mut rng).map_err(err)?;
                let mdl = build_model(2, k, n, &lambda, &f).map_err(err)?;
                let report = mdl.smoothness_report(&[1], DEFAULT_POINT_BUDGET).map_err(err)?;
                ensure!(report.verdict == SmoothnessVerdict::Pass, "{:?} for Λ = {:?}", report.verdict, lambda.rows());
                ensure!(report.checks[0].min_rank == Some(n - 2), "rank below n-2");
                for x in mdl.points(DEFAULT_POINT_BUDGET, true).map_err(err)?.points.unwrap() {
                    ensure!(jacobian_rank_by_hand(&mdl, x.coords()) == n - 2, "rank at {}", x.render());
                }
                total_points += report.checks[0].points;
                models += 1;
            }
        }
    }
    Ok(format!("{models} models, {total_points} points, all of rank n-2"))
}

fn criterion_6() -> Check {
    let f5 = make_field(5, 1).map_err(err)?;
    let quartic = build_model(2, 4, 3, &LambdaParams::empty(&f5, 2), &f5).map_err(err)?;
    let lin = compute_lin(&quartic).map_err(err)?;
    ensure!(lin.order() == 1536, "|Lin| = {}", lin.order());
    let distinct: BTreeSet<_> = lin.elements().iter().map(|g| format!("{g:?}")).collect();
    ensure!(distinct.len() == 1536, "{} distinct elements", distinct.len());

    // brute force over all monomial matrices of GF(13), μ_4 ⊂ GF(13)
    let f13 = make_field(13, 1).map_err(err)?;
    let q13 = build_model(2, 4, 3, &LambdaParams::empty(&f13, 2), &f13).map_err(err)?;
    let mut count = 0;
    for perm in itertools::Itertools::permutations(0..4usize, 4) {
        for a in 1..13u64.pow(3) {
            let scalars = [1, a % 13, (a / 13) % 13, a / 169];
            if scalars.contains(&0) {
                continue;
            }
            let mut m = Matrix::zeros(4, 4);
            for j in 0..4 {
                m[(j, perm[j])] = scalars[j];
            }
            if preserves_ideal_matrix(&m, &q13).map_err(err)? {
                count += 1;
            }
        }
    }
    ensure!(count == 1536, "brute force over GF(13) finds {count}");
    let lin13 = compute_lin(&q13).map_err(err)?;
    ensure!(lin13.order() == 1536, "|Lin| over GF(13) = {}", lin13.order());
    Ok("|Lin| = 1536 = 4^3 · 24; brute force over GF(13) agrees".into())
}

/// Elements with a fixed hyperplane, found by nullity of `A - μI` over every `μ ∈ F*`.
fn quasi_reflections_by_nullity(elements: &[genfermat::MonomialMatrix], f: &Field) -> usize {
    elements
        .iter()
        .filter(|g| {
            let size = g.size();
            !g.is_identity()
                && (1..f.order()).any(|mu| {
                    let mut a = g.to_matrix();
                    for i in 0..size {
                        a[(i, i)] = f.sub(a[(i, i)], mu);
                    }
                    size - a.rank(f) == size - 1
                })
        })
        .count()
}

fn criterion_7() -> Check {
    let f49 = make_field(7, 2).map_err(err)?;
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let (d, k, n) = (2usize, 3u64, 5usize);
    ensure!(classify_type(d, k, n, 7).map_err(err)?.theorem_applies, "theorem should apply to (2;3,5), p = 7");
    let expected = (n as u64 + 1) * (k - 1);
    let mut oracle_runs = 0;
    let mut orders = Vec::new();
    for _ in 0..10 {
        let lambda = LambdaParams::random(&f49, d, n, &mut rng).map_err(err)?;
        let mdl = build_model(d, k, n, &lambda, &f49).map_err(err)?;
        let report = verify_unique_fermat_group(&mdl).map_err(err)?;
        ensure!(
            report.verdict == UniquenessVerdict::UniqueVerified,
            "{:?} for Λ = {:?}",
            report.verdict,
            lambda.rows()
        );
        let lin = compute_lin(&mdl).map_err(err)?;
        let census = quasi_reflection_census(&lin);
        ensure!(census.len() as u64 == expected, "census {} != {expected}", census.len());
        ensure!(census.iter().all(|q| q.in_deck_group), "quasi-reflection outside H_0");
        let by_nullity = quasi_reflections_by_nullity(&lin.elements(), lin.field());
        ensure!(by_nullity as u64 == expected, "nullity oracle finds {by_nullity}");
        if lin.order() <= 5000 {
            let o = subgroup_oracle(&lin, 5000).map_err(err)?;
            ensure!(o.count == 1, "subgroup oracle counts {}", o.count);
            oracle_runs += 1;
        }
        orders.push(lin.order());
    }
    Ok(format!("10 models, |Lin| in {:?}, oracle ran {oracle_runs} times", orders.iter().collect::<BTreeSet<_>>()))
}

fn criterion_8() -> Check {
    let f31 = make_field(31, 1).map_err(err)?;
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for i in 0..100 {
        let d = 1 + i % 3;
        let n = d + 1 + rng.gen_range(0..3);
        let a = Arrangement::random(&f31, d, n, &mut rng);
        let (t, lambda) = normalize(&a).map_err(err)?;
        let rebuilt = lambda_to_arrangement(&lambda).map_err(err)?;
        let (t2, lambda2) = normalize(&rebuilt).map_err(err)?;
        ensure!(lambda2 == lambda && t2.is_identity(), "normalization not idempotent");
        // T maps a onto the standard arrangement, checked hyperplane by hyperplane
        ensure!(a.apply(&t) == rebuilt, "normalizing map does not carry a to its normal form");

        let m = ProjectiveMap::random(&f31, d, &mut rng);
        let b = a.apply(&m);
        let labeled = pgl_equivalent(&a, &b, EquivalenceMode::Labeled).map_err(err)?;
        ensure!(labeled.map(|e| e.map) == Some(m.clone()), "labeled witness differs from T");
        let mut order: Vec<usize> = (0..=n).collect();
        order.rotate_left(i % (n + 1));
        let shuffled = b.permuted(&order).map_err(err)?;
        let e = pgl_equivalent(&a, &shuffled, EquivalenceMode::Unlabeled).map_err(err)?.ok_or("no witness")?;
        for (j, h) in a.hyperplanes().iter().enumerate() {
            ensure!(e.map.apply_hyperplane(h) == shuffled.hyperplanes()[e.perm[j]], "witness misplaces hyperplane {j}");
        }
    }
    Ok("100 arrangements over GF(31)".into())
}

fn criterion_9() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let f7 = make_field(7, 1).map_err(err)?;
    let f49 = make_field(7, 2).map_err(err)?;
    let embed = f7.embedding_into(&f49).map_err(err)?;
    for _ in 0..5 {
        let lambda = LambdaParams::random(&f7, 2, 5, &mut rng).map_err(err)?;
        ensure!(field_of_moduli(&lambda).map_err(err)?.e == 1, "Λ over GF(7) has e != 1");
        let lifted = lambda.map_entries(&f49, |x| embed.map(x));
        ensure!(field_of_moduli(&lifted).map_err(err)?.e == 1, "Λ over GF(7) inside GF(49) has e != 1");
    }
    let mut generic = 0;
    while generic < 3 {
        let lambda = LambdaParams::random(&f49, 2, 5, &mut rng).map_err(err)?;
        if entry_field_degree(&lambda) != 2 {
            continue;
        }
        let a = lambda_to_arrangement(&lambda).map_err(err)?;
        let b = lambda_to_arrangement(&frobenius_apply(&lambda, 1)).map_err(err)?;
        if all_equivalences(&a, &b).map_err(err)?.is_empty() {
            let v = field_of_moduli(&lambda).map_err(err)?;
            ensure!(v.e == 2, "generic Λ over GF(49) has e = {}", v.e);
            generic += 1;
        }
    }
    let f16 = make_field(2, 4).map_err(err)?;
    let f27 = make_field(3, 3).map_err(err)?;
    let mut seen = BTreeSet::new();
    for (f, d, n) in [(&f16, 1, 4), (&f27, 1, 4), (&f49, 1, 5), (&f16, 2, 4)] {
        for _ in 0..10 {
            let lambda = LambdaParams::random(f, d, n, &mut rng).map_err(err)?;
            let v = field_of_moduli(&lambda).map_err(err)?;
            let deg = entry_field_degree(&lambda);
            ensure!(deg.is_multiple_of(v.e), "e = {} does not divide {deg}", v.e);
            seen.insert((f.order(), v.e));
        }
    }
    Ok(format!("e = 1 over GF(7); e = 2 for 3 generic Λ; (q, e) seen {seen:?}"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("exceptional-type classification", criterion_1, 1),
        ("Lucas oracle equivalence", criterion_2, 5),
        ("point-count oracles", criterion_3, 5),
        ("deck-group axioms", criterion_4, 30),
        ("smoothness at rational points", criterion_5, 60),
        ("classical Fermat quartic group order", criterion_6, 30),
        ("uniqueness verification", criterion_7, 300),
        ("arrangement round-trips", criterion_8, 30),
        ("moduli sanity", criterion_9, 30),
    ];
    let mut failures = 0;
    for (i, (name, check, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = check();
        let elapsed = start.elapsed();
        let in_time = elapsed <= Duration::from_secs(*limit);
        let (status, detail) = match (&result, in_time) {
            (Ok(d), true) => ("PASS", d.clone()),
            (Ok(d), false) => ("FAIL", format!("over time limit; {d}")),
            (Err(e), _) => ("FAIL", e.clone()),
        };
        if status == "FAIL" {
            failures += 1;
        }
        println!("{status} [{}] {name} ({:.2}s, limit {limit}s): {detail}", i + 1, elapsed.as_secs_f64());
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failures, criteria.len());
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
