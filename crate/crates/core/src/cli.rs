//! Command-line front end. The binary only parses arguments and prints what
//! [`run`] returns, so every command can be driven from tests as well.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use itertools::Itertools;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::arrangement::{normalize, pgl_equivalent, Arrangement, EquivalenceMode, LambdaParams};
use crate::autgroup::{
    compute_lin, preserves_ideal, verify_unique_with_budget, UniquenessVerdict, DEFAULT_ORACLE_BUDGET,
};
use crate::error::{Error, Result};
use crate::ff::{make_field, Field};
use crate::moduli::field_of_moduli;
use crate::multinomial::{is_power_of_p, lucas_witness, p_adic_digits};
use crate::serial::{parse_element, parse_rows, ArrangementFile, ModelFile};
use crate::variety::{
    build_model, build_model_unchecked, classify_type, FermatModel, SmoothnessVerdict, DEFAULT_POINT_BUDGET,
};

#[derive(Parser, Debug, Clone)]
#[command(name = "genfermat", version, about = "Generalized Fermat varieties over finite fields")]
pub struct JobConfig {
    #[command(subcommand)]
    pub command: Command,

    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Human, global = true)]
    pub format: Format,

    /// Cap on points of the ambient projective space scanned
    #[arg(long, env = "GENFERMAT_BUDGET", global = true, value_parser = clap::value_parser!(u64).range(1..))]
    pub budget: Option<u64>,

    /// Seed for every random choice
    #[arg(long, default_value_t = 0, global = true)]
    pub seed: u64,

    /// Worker threads (default: all cores)
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    pub jobs: Option<u64>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Human,
    Json,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Hypotheses of the uniqueness theorem and the canonical degree for a type (d;k,n) in characteristic p
    Classify {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        k: u64,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: u64,
    },
    /// Build and validate a model; optionally write it to a file
    Build {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Count (and optionally list) rational points over GF(q^ext)
    Points {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long, default_value_t = 1)]
        ext: u32,
        #[arg(long)]
        list: bool,
    },
    /// Jacobian rank at every rational point over the given extensions
    Smooth {
        #[command(flatten)]
        model: ModelArgs,
        /// Comma-separated extension degrees
        #[arg(long, default_value = "1", value_delimiter = ',')]
        ext: Vec<u32>,
    },
    /// Deck group generators and their checks
    Deck {
        #[command(flatten)]
        model: ModelArgs,
    },
    /// Linear automorphism group by monomial matrices
    Lin {
        #[command(flatten)]
        model: ModelArgs,
    },
    /// Verify uniqueness of the generalized Fermat group inside Lin
    Unique {
        #[command(flatten)]
        model: ModelArgs,
        /// Largest |Lin| for which the subgroup oracle runs
        #[arg(long, default_value_t = DEFAULT_ORACLE_BUDGET)]
        oracle_budget: u64,
    },
    /// Smallest u in 1..k-2 with C(k-1, u) nonzero mod p
    Lucas {
        #[arg(long)]
        k: u64,
        #[arg(long)]
        p: u64,
    },
    /// Normal form of an arrangement
    Normalize {
        #[command(flatten)]
        arrangement: ArrangementArgs,
    },
    /// Projective equivalence of two arrangement files
    Equiv {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
        #[arg(long, value_enum, default_value_t = Mode::Unlabeled)]
        mode: Mode,
    },
    /// Field of moduli of Λ relative to GF(p)
    Moduli {
        #[command(flatten)]
        model: ModelArgs,
    },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Labeled,
    Unlabeled,
}

/// A model from a file or from inline parameters.
#[derive(Args, Debug, Clone, Default)]
pub struct ModelArgs {
    /// Model file in JSON
    #[arg(long)]
    pub model: Option<PathBuf>,
    #[arg(long)]
    pub d: Option<usize>,
    #[arg(long)]
    pub k: Option<u64>,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub p: Option<u64>,
    #[arg(long, default_value_t = 1)]
    pub m: u32,
    /// Rows of Λ: entries separated by ',', rows by ';', extension elements as c0:c1:...
    #[arg(long, allow_hyphen_values = true)]
    pub lambda: Option<String>,
    /// Draw Λ at random from X_{n,d} using --seed
    #[arg(long)]
    pub random: bool,
    /// Skip the general position check (the model may be singular)
    #[arg(long)]
    pub unchecked: bool,
}

#[derive(Args, Debug, Clone, Default)]
pub struct ArrangementArgs {
    /// Arrangement file in JSON
    #[arg(long)]
    pub arrangement: Option<PathBuf>,
    #[arg(long)]
    pub d: Option<usize>,
    #[arg(long)]
    pub p: Option<u64>,
    #[arg(long, default_value_t = 1)]
    pub m: u32,
    /// Covectors: entries separated by ',', hyperplanes by ';'
    #[arg(long, allow_hyphen_values = true)]
    pub covectors: Option<String>,
}

fn require<T: Copy>(v: Option<T>, name: &str) -> Result<T> {
    v.ok_or_else(|| Error::BadParameters(format!("--{name} is required without --model")))
}

fn read_json<T: serde::de::DeserializeOwned>(path: &PathBuf) -> Result<T> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

impl ModelArgs {
    fn lambda_params(&self, seed: u64) -> Result<(Option<u64>, LambdaParams)> {
        if let Some(path) = &self.model {
            let file: ModelFile = read_json(path)?;
            return Ok((Some(file.k), file.lambda()?));
        }
        let d = require(self.d, "d")?;
        let n = require(self.n, "n")?;
        let field = make_field(require(self.p, "p")?, self.m)?;
        let lambda = if self.random {
            LambdaParams::random(&field, d, n, &mut ChaCha8Rng::seed_from_u64(seed))?
        } else {
            let rows = parse_rows(&field, self.lambda.as_deref().unwrap_or(""))?;
            LambdaParams::new(&field, d, n, rows)?
        };
        Ok((self.k, lambda))
    }

    fn build(&self, seed: u64) -> Result<FermatModel> {
        let (k, lambda) = self.lambda_params(seed)?;
        let k = require(k, "k")?;
        if self.unchecked {
            return build_model_unchecked(lambda.d(), k, lambda.n(), &lambda, lambda.field());
        }
        build_model(lambda.d(), k, lambda.n(), &lambda, lambda.field())
    }
}

impl ArrangementArgs {
    fn build(&self) -> Result<Arrangement> {
        if let Some(path) = &self.arrangement {
            return read_json::<ArrangementFile>(path)?.to_arrangement();
        }
        let field = make_field(require(self.p, "p")?, self.m)?;
        let covectors = self
            .covectors
            .as_deref()
            .ok_or_else(|| Error::BadParameters("--covectors is required without --arrangement".into()))?
            .split(';')
            .map(|h| h.split(',').map(|x| parse_element(&field, x)).collect())
            .collect::<Result<Vec<Vec<u64>>>>()?;
        Arrangement::from_covectors(&field, require(self.d, "d")?, covectors)
    }
}

/// What a command produced: exit status and the text for each stream.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

struct Report {
    failed: bool,
    json: Value,
    human: String,
}

impl Report {
    fn ok(json: Value, human: String) -> Self {
        Report { failed: false, json, human }
    }
}

pub fn run(config: &JobConfig) -> Outcome {
    let result = match config.jobs {
        Some(jobs) => match rayon::ThreadPoolBuilder::new().num_threads(jobs as usize).build() {
            Ok(pool) => pool.install(|| dispatch(config)),
            Err(e) => Err(Error::BadParameters(e.to_string())),
        },
        None => dispatch(config),
    };
    match result {
        Ok(report) => {
            let stdout = match config.format {
                Format::Json => serde_json::to_string_pretty(&report.json).expect("serializable") + "\n",
                Format::Human => report.human,
            };
            Outcome { code: if report.failed { 1 } else { 0 }, stdout, stderr: String::new() }
        }
        Err(e) => Outcome { code: 2, stdout: String::new(), stderr: format!("error: {e}\n") },
    }
}

fn field_line(f: &Field) -> String {
    format!("{f}")
}

fn dispatch(config: &JobConfig) -> Result<Report> {
    let budget = config.budget.unwrap_or(DEFAULT_POINT_BUDGET);
    let seed = config.seed;
    match &config.command {
        Command::Classify { d, k, n, p } => {
            let v = classify_type(*d, *k, *n, *p)?;
            let mut h = String::new();
            writeln!(h, "type ({d};{k},{n}) in characteristic {p}").unwrap();
            writeln!(h, "  gcd(k, p) = 1:            {}", v.coprimality_ok).unwrap();
            writeln!(h, "  k-1 not a power of p:     {}", v.k_minus_1_not_p_power).unwrap();
            writeln!(h, "  exceptional type:         {}", v.exceptional_type).unwrap();
            writeln!(h, "  uniqueness theorem holds: {}", v.theorem_applies).unwrap();
            writeln!(h, "  canonical degree r:       {}", v.canonical_degree).unwrap();
            Ok(Report::ok(serde_json::to_value(v).unwrap(), h))
        }
        Command::Build { model, out } => {
            let mdl = model.build(seed)?;
            let file = ModelFile::from_model(&mdl);
            if let Some(path) = out {
                let text = serde_json::to_string_pretty(&file).unwrap() + "\n";
                std::fs::write(path, text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
            }
            let forms = mdl.describe_forms();
            let mut h = format!("X^{}_{}(Λ) over {}\n", mdl.k(), mdl.n(), field_line(mdl.field()));
            for f in &forms {
                writeln!(h, "  {f} = 0").unwrap();
            }
            Ok(Report::ok(json!({ "model": file, "forms": forms }), h))
        }
        Command::Points { model, ext, list } => {
            let mdl = model.build(seed)?;
            let pc = mdl.enumerate_points(*ext, budget, *list)?;
            let mut h = format!("{} points over {}\n", pc.count, field_line(&pc.field));
            if let Some(pts) = &pc.points {
                for x in pts {
                    writeln!(h, "  {}", x.render()).unwrap();
                }
            }
            Ok(Report::ok(json!({ "field": pc.field, "ext": ext, "count": pc.count, "points": pc.points }), h))
        }
        Command::Smooth { model, ext } => {
            let mdl = model.build(seed)?;
            let report = mdl.smoothness_report(ext, budget)?;
            let mut h = String::new();
            for c in &report.checks {
                writeln!(
                    h,
                    "GF({}^{}): {} points, Jacobian rank {}..{}, {} singular",
                    c.field.p,
                    c.field.m,
                    c.points,
                    c.min_rank.map_or("-".into(), |r| r.to_string()),
                    c.max_rank.map_or("-".into(), |r| r.to_string()),
                    c.singular_count
                )
                .unwrap();
            }
            writeln!(h, "verdict: {:?} (expected rank {}; {})", report.verdict, report.expected_rank, report.scope)
                .unwrap();
            Ok(Report {
                failed: report.verdict == SmoothnessVerdict::Fail,
                json: serde_json::to_value(&report).unwrap(),
                human: h,
            })
        }
        Command::Deck { model } => {
            let mdl = model.build(seed)?;
            let gens = mdl.deck_generators();
            let product = gens.iter().skip(1).fold(gens[0].clone(), |acc, g| acc.compose(g));
            let preserved = gens.iter().map(|g| preserves_ideal(g, &mdl)).collect::<Result<Vec<bool>>>()?;
            let order = (mdl.k() as u128).pow(mdl.n() as u32);
            let ok = product.is_identity() && preserved.iter().all(|&b| b);
            let mut h = format!("H_0 ≅ Z_{}^{}, order {order}\n", mdl.k(), mdl.n());
            for (j, g) in gens.iter().enumerate() {
                writeln!(h, "  φ_{}: {:?}", j + 1, g).unwrap();
            }
            writeln!(h, "product of generators is the identity: {}", product.is_identity()).unwrap();
            writeln!(h, "every generator preserves the model: {}", preserved.iter().all(|&b| b)).unwrap();
            Ok(Report {
                failed: !ok,
                json: json!({
                    "order": order as u64,
                    "omega": mdl.field().to_coeffs(mdl.omega()),
                    "generators": gens,
                    "product_is_identity": product.is_identity(),
                    "preserves_ideal": preserved,
                }),
                human: h,
            })
        }
        Command::Lin { model } => {
            let mdl = model.build(seed)?;
            let lin = compute_lin(&mdl)?;
            let gens = lin.symmetry_generators();
            let mut h = format!(
                "|Lin| = {} = {}^{} · {} (monomial part, over {})\n",
                lin.order(),
                mdl.k(),
                mdl.n(),
                lin.symmetries().len(),
                field_line(lin.field())
            );
            if lin.extension_degree() > 1 {
                writeln!(h, "lifting needed an extension of degree {}", lin.extension_degree()).unwrap();
            }
            writeln!(h, "arrangement symmetry generators: {}", gens.iter().map(|g| format!("{g:?}")).join(" "))
                .unwrap();
            writeln!(h, "closure verified: {}", lin.closure_verified()).unwrap();
            let json = json!({
                "order": lin.order() as u64,
                "deck_order": lin.deck_order() as u64,
                "symmetry_order": lin.symmetries().len(),
                "field": lin.field(),
                "extension_degree": lin.extension_degree(),
                "symmetry_generators": gens,
                "coset_representatives": lin.coset_representatives(),
                "closure_verified": lin.closure_verified(),
                "scope": "monomial part of Lin over the working finite field",
            });
            Ok(Report { failed: !lin.closure_verified(), json, human: h })
        }
        Command::Unique { model, oracle_budget } => {
            let mdl = model.build(seed)?;
            let r = verify_unique_with_budget(&mdl, *oracle_budget)?;
            let mut h = format!("verdict: {:?}\n", r.verdict);
            writeln!(h, "|Lin| = {} (extension degree {})", r.lin_order, r.extension_degree).unwrap();
            writeln!(h, "H_0 normal in Lin: {}", r.h0_normal).unwrap();
            writeln!(
                h,
                "quasi-reflections: {} ({} outside H_0, {} of them of order k)",
                r.quasi_reflections.len(),
                r.quasi_reflections_outside_h0,
                r.order_k_quasi_reflections_outside_h0
            )
            .unwrap();
            match &r.oracle {
                Some(o) => {
                    writeln!(h, "subgroup oracle: {} subgroup(s) from {} candidates", o.count, o.candidates).unwrap()
                }
                None => writeln!(h, "subgroup oracle: skipped (|Lin| > {oracle_budget})").unwrap(),
            }
            Ok(Report {
                failed: r.verdict == UniquenessVerdict::CheckFailed,
                json: serde_json::to_value(&r).unwrap(),
                human: h,
            })
        }
        Command::Lucas { k, p } => {
            if !crate::ff::is_prime(*p) {
                return Err(Error::NotPrime(*p));
            }
            let w = lucas_witness(*k, *p)?;
            let power = is_power_of_p(k - 1, *p)?;
            let digits = p_adic_digits(k - 1, *p);
            let h = match w {
                Some(u) => format!("witness u = {u}: C({}, {u}) is nonzero mod {p}\n", k - 1),
                None => format!("no witness: k-1 = {} is a power of {p}\n", k - 1),
            };
            Ok(Report::ok(
                json!({ "k": k, "p": p, "witness": w, "k_minus_1_power_of_p": power, "digits_k_minus_1": digits.digits() }),
                h,
            ))
        }
        Command::Normalize { arrangement } => {
            let a = arrangement.build()?;
            let (t, lambda) = normalize(&a)?;
            let f = a.field();
            let mut h = format!("Λ over {}:\n", field_line(f));
            for row in lambda.rows() {
                writeln!(h, "  [{}]", row.iter().map(|&x| f.render(x)).join(", ")).unwrap();
            }
            Ok(Report::ok(json!({ "field": f, "d": a.dim(), "n": a.n(), "lambda": lambda, "transform": t }), h))
        }
        Command::Equiv { a, b, mode } => {
            let a = read_json::<ArrangementFile>(a)?.to_arrangement()?;
            let b = read_json::<ArrangementFile>(b)?.to_arrangement()?;
            let mode = match mode {
                Mode::Labeled => EquivalenceMode::Labeled,
                Mode::Unlabeled => EquivalenceMode::Unlabeled,
            };
            let eq = pgl_equivalent(&a, &b, mode)?;
            let h = match &eq {
                Some(e) => format!("equivalent; hyperplane j goes to {:?}\n", e.perm),
                None => "not equivalent\n".to_string(),
            };
            Ok(Report::ok(
                json!({
                    "equivalent": eq.is_some(),
                    "witness_T": eq.as_ref().map(|e| &e.map),
                    "witness_permutation": eq.as_ref().map(|e| &e.perm),
                }),
                h,
            ))
        }
        Command::Moduli { model } => {
            let (_, lambda) = model.lambda_params(seed)?;
            let v = field_of_moduli(&lambda)?;
            let p = lambda.field().characteristic();
            let h = format!(
                "field of moduli GF({p}^{}) (entries generate GF({p}^{}); {})\n",
                v.e, v.entry_field_degree, v.scope
            );
            Ok(Report::ok(
                json!({
                    "e": v.e,
                    "entry_field_degree": v.entry_field_degree,
                    "witness_T": v.witness.map,
                    "witness_permutation": v.witness.perm,
                    "scope": v.scope,
                }),
                h,
            ))
        }
    }
}
