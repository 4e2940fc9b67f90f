use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_traits::Signed;
use serde_json::{json, Value};

use qma_core::detcenter::{certify_family_center, laplace_check, qdet, LaplaceMode, MinorSpec};
use qma_core::ncengine::checks::{central_check, laurent_engine};
use qma_core::ncengine::{poly_to_json, poly_to_string, Engine, Presentation, Word};
use qma_core::poissonleaf::{
    antisymmetric, bracket_table, crossing_verdict, family_membership, jacobi_failures, l_omega_rank,
    leaf_dimension, perturbations, standard_table_mismatches, variety_witnesses, RowsReading, WeylElement,
};
use qma_core::qcoeff::{rat, CycRing, CycScalar, LaurentRing, RationalAt};
use qma_core::rootdata::{AlgebraSpec, Family};
use qma_core::semidirect::{coproduct_report, CoproductRule};
use qma_core::skewform::{closed_forms, defining_matrix, degree, determinant, skew_normal_form};
use qma_core::suite::{run_suite, Level, SuiteOptions};
use qma_core::verma::{build_min_generalized_verma_j0, build_restricted_verma, irreducible, verify_rep, HighestWeight};

#[derive(Parser)]
#[command(name = "qma", version, about = "Computations in modified quantum matrix algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Common {
    #[arg(long, default_value = "standard")]
    family: Family,
    #[arg(long, default_value_t = 2)]
    n: usize,
    /// Order of the root of unity.
    #[arg(long, default_value_t = 3)]
    m: u32,
    /// JSON file with an algebra spec; overrides --family and --n.
    #[arg(long)]
    wp: Option<std::path::PathBuf>,
    #[arg(long, conflicts_with = "csv")]
    json: bool,
    #[arg(long)]
    csv: bool,
    #[arg(long, default_value_t = 2024)]
    seed: u64,
    /// Add wall time to the report.
    #[arg(long)]
    timings: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Exponent matrix of the algebra.
    DefiningMatrix {
        #[command(flatten)]
        common: Common,
        /// Append the invertible generators.
        #[arg(long)]
        with_l: bool,
    },
    /// Skew-symmetric normal form with its certificate.
    CanonicalForm {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        with_l: bool,
    },
    /// PI degree at a primitive m-th root of unity.
    Degree {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        with_l: bool,
    },
    /// Normal form of a word such as "Z22 Z11" or "L1^-1 2:Z12".
    Straighten {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        word: String,
        /// Specialize q to a primitive m-th root of unity.
        #[arg(long)]
        at_root: bool,
    },
    /// Quantum minor; the full determinant by default.
    Det {
        #[command(flatten)]
        common: Common,
        /// Comma-separated rows, e.g. "1,2".
        #[arg(long)]
        rows: Option<String>,
        #[arg(long)]
        cols: Option<String>,
    },
    /// Row and column Laplace expansions.
    LaplaceCheck {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        mode: Option<ModeArg>,
        #[arg(long)]
        i: Option<usize>,
        #[arg(long)]
        k: Option<usize>,
    },
    /// Certifies the listed center generators at a root of unity.
    CenterCheck {
        #[command(flatten)]
        common: Common,
    },
    /// Semiclassical bracket table.
    PoissonTable {
        #[command(flatten)]
        common: Common,
    },
    /// Bracket table with Jacobi, antisymmetry and crossing verdicts.
    PoissonOracle {
        #[command(flatten)]
        common: Common,
    },
    /// Symplectic leaf dimensions per Weyl group element.
    LeafDim {
        #[command(flatten)]
        common: Common,
        /// One-line permutation, e.g. "3,2,1"; all elements if omitted.
        #[arg(long)]
        w: Option<String>,
    },
    /// Witness points and random perturbations of the associated variety.
    VarietyCheck {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 100)]
        count: usize,
        /// Rational value substituted for q.
        #[arg(long, default_value_t = 5)]
        q: i64,
    },
    /// Builds a finite-dimensional highest weight module.
    Verma {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value = "restricted")]
        kind: VermaKind,
        /// Comma-separated integer weights; all ones by default.
        #[arg(long)]
        lambda: Option<String>,
        #[arg(long, default_value_t = 1)]
        phi: i64,
        /// Include the action matrices.
        #[arg(long)]
        matrices: bool,
    },
    /// Bialgebra checks for the extended algebra.
    CoproductCheck {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
        a: i32,
        #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
        b: i32,
    },
    /// Runs the verification battery.
    Suite {
        #[arg(value_enum)]
        level: LevelArg,
        /// Perturb one exponent of the standard family (negative control).
        #[arg(long)]
        corrupt: bool,
        #[arg(long)]
        timings: bool,
        #[arg(long, default_value_t = 2024)]
        seed: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Row,
    Column,
}

#[derive(Clone, Copy, ValueEnum)]
enum VermaKind {
    Restricted,
    J0Minimal,
}

#[derive(Clone, Copy, ValueEnum)]
enum LevelArg {
    Quick,
    Full,
}

/// What a subcommand produced: the report, a CSV rendering if it has one,
/// and whether every verification it ran passed.
struct Outcome {
    report: Value,
    csv: Option<String>,
    ok: bool,
}

impl Outcome {
    fn ok(report: Value) -> Self {
        Outcome { report, csv: None, ok: true }
    }

    fn verdict(report: Value, ok: bool) -> Self {
        Outcome { report, csv: None, ok }
    }
}

fn spec_of(c: &Common) -> Result<AlgebraSpec> {
    if let Some(path) = &c.wp {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        return Ok(AlgebraSpec::from_json(&text)?);
    }
    if c.family == Family::Custom {
        bail!("--family custom needs --wp");
    }
    Ok(AlgebraSpec::named(c.family, c.n)?)
}

fn named(spec: &AlgebraSpec) -> Result<Family> {
    if spec.family == Family::Custom {
        bail!("this command needs a named family");
    }
    Ok(spec.family)
}

fn parse_list<T: std::str::FromStr>(s: &str) -> Result<Vec<T>> {
    s.split(',')
        .map(|t| t.trim().parse::<T>().map_err(|_| anyhow!("bad list entry `{}`", t)))
        .collect()
}

fn header(command: &str, spec: &AlgebraSpec) -> Value {
    json!({"command": command, "family": spec.family.as_str(), "n": spec.n})
}

fn merge(mut base: Value, extra: Value) -> Value {
    if let (Value::Object(b), Value::Object(e)) = (&mut base, extra) {
        b.extend(e);
    }
    base
}

fn big(x: &BigInt) -> Value {
    match i64::try_from(x) {
        Ok(v) => json!(v),
        Err(_) => json!(x.to_string()),
    }
}

fn run(cmd: &Command) -> Result<(Outcome, bool, bool)> {
    let (out, common) = match cmd {
        Command::DefiningMatrix { common, with_l } => {
            let spec = spec_of(common)?;
            let mat = defining_matrix(&spec, *with_l);
            let v = merge(header("defining-matrix", &spec), json!({"with_l": with_l, "matrix": mat.to_json()}));
            (Outcome::ok(v), common)
        }
        Command::CanonicalForm { common, with_l } => {
            let spec = spec_of(common)?;
            let mat = defining_matrix(&spec, *with_l);
            let cf = skew_normal_form(&mat);
            let certified = mat.congruence(&cf.transform) == cf.block_matrix() && determinant(&cf.transform).abs() == BigInt::from(1);
            let v = merge(
                merge(header("canonical-form", &spec), cf.to_json()),
                json!({"rank": cf.rank(), "certified": certified}),
            );
            (Outcome::verdict(v, certified), common)
        }
        Command::Degree { common, with_l } => {
            let spec = spec_of(common)?;
            let d = degree(&defining_matrix(&spec, *with_l), common.m)?;
            let mut v = merge(header("degree", &spec), json!({"m": common.m, "with_l": with_l, "degree": big(&BigInt::from(d.clone()))}));
            let (n, m) = (spec.n, common.m);
            let closed = match (spec.family, with_l) {
                (Family::Standard, false) => Some(closed_forms::standard(n, m)),
                (Family::J0, false) => Some(closed_forms::j0(n, m)),
                (Family::Standard, true) => Some(closed_forms::extended(n, m)),
                _ => None,
            };
            if let Some(c) = closed {
                v["closed_form"] = json!(c.to_string());
            }
            let csv = format!("family,n,m,with_l,degree\n{},{},{},{},{}\n", spec.family, n, m, with_l, d);
            (Outcome { report: v, csv: Some(csv), ok: true }, common)
        }
        Command::Straighten { common, word, at_root } => {
            let spec = spec_of(common)?;
            let with_l = word.split_whitespace().any(|t| t.contains('L'));
            let base = Presentation::modified(&spec, with_l);
            let pres = if word.contains("2:") { Presentation::tensor(&[&base, &base]) } else { base };
            let pres = Arc::new(pres);
            let w = Word::parse(&pres, word)?;
            let (terms, text, count) = if *at_root {
                let eng = Engine::new(pres.clone(), CycRing::new(common.m)?);
                let p = eng.straighten(&w);
                (poly_to_json(&pres, &p), poly_to_string(&pres, &p), p.len())
            } else {
                let eng = Engine::new(pres.clone(), LaurentRing);
                let p = eng.straighten(&w);
                (poly_to_json(&pres, &p), poly_to_string(&pres, &p), p.len())
            };
            let v = merge(
                header("straighten", &spec),
                json!({"word": word, "at_root": at_root, "terms": terms, "term_count": count, "text": text}),
            );
            (Outcome::ok(v), common)
        }
        Command::Det { common, rows, cols } => {
            let spec = spec_of(common)?;
            let minor = match (rows, cols) {
                (None, None) => MinorSpec::full(spec.n),
                (Some(r), Some(c)) => MinorSpec::new(parse_list(r)?, parse_list(c)?)?,
                _ => bail!("--rows and --cols go together"),
            };
            let eng = laurent_engine(&spec, false);
            let p = qdet(&eng, &spec, &minor)?;
            let pres = eng.presentation();
            let v = merge(
                header("det", &spec),
                json!({
                    "rows": minor.rows,
                    "cols": minor.cols,
                    "terms": poly_to_json(pres, &p),
                    "text": poly_to_string(pres, &p),
                    "central": central_check(&eng, &p),
                }),
            );
            (Outcome::ok(v), common)
        }
        Command::LaplaceCheck { common, mode, i, k } => {
            let spec = spec_of(common)?;
            let modes = match mode {
                Some(ModeArg::Row) => vec![LaplaceMode::Row],
                Some(ModeArg::Column) => vec![LaplaceMode::Column],
                None => vec![LaplaceMode::Row, LaplaceMode::Column],
            };
            let is: Vec<usize> = i.map(|x| vec![x]).unwrap_or_else(|| (1..=spec.n).collect());
            let ks: Vec<usize> = k.map(|x| vec![x]).unwrap_or_else(|| (1..=spec.n).collect());
            let mut results = Vec::new();
            let mut ok = true;
            for md in &modes {
                for i in &is {
                    for k in &ks {
                        let r = laplace_check(&spec, *md, *i, *k)?;
                        ok &= r.pass;
                        results.push(json!({"mode": md, "i": i, "k": k, "report": r}));
                    }
                }
            }
            let v = merge(header("laplace-check", &spec), json!({"pass": ok, "results": results}));
            (Outcome::verdict(v, ok), common)
        }
        Command::CenterCheck { common } => {
            let spec = spec_of(common)?;
            let res = certify_family_center(named(&spec)?, spec.n, common.m)?;
            let ok = res.iter().all(|(_, c)| *c);
            let gens: Vec<Value> = res.iter().map(|(l, c)| json!({"generator": l, "central": c})).collect();
            let v = merge(header("center-check", &spec), json!({"m": common.m, "pass": ok, "generators": gens}));
            (Outcome::verdict(v, ok), common)
        }
        Command::PoissonTable { common } => {
            let spec = spec_of(common)?;
            let table = bracket_table(&spec, common.m)?;
            let v = merge(header("poisson-table", &spec), json!({"m": common.m, "table": table.to_json()}));
            (Outcome::ok(v), common)
        }
        Command::PoissonOracle { common } => {
            let spec = spec_of(common)?;
            let table = bracket_table(&spec, common.m)?;
            let jac = jacobi_failures(&table);
            let anti = antisymmetric(&table);
            let mut v = merge(
                header("poisson-oracle", &spec),
                json!({
                    "m": common.m,
                    "table": table.to_json(),
                    "antisymmetric": anti,
                    "jacobi_failures": jac.iter().map(|(a, b, c)| [table.names[*a].clone(), table.names[*b].clone(), table.names[*c].clone()]).collect::<Vec<_>>(),
                }),
            );
            if spec.family == Family::Standard {
                v["crossing"] = json!(crossing_verdict(spec.n, common.m)?);
                let mism = standard_table_mismatches(&table, spec.n);
                v["displayed_table_mismatches"] = json!(mism);
            }
            let ok = jac.is_empty() && anti;
            v["pass"] = json!(ok);
            (Outcome::verdict(v, ok), common)
        }
        Command::LeafDim { common, w } => {
            let spec = spec_of(common)?;
            let f = named(&spec)?;
            let elems = match w {
                Some(s) => vec![WeylElement::new(parse_list(s)?)?],
                None => WeylElement::all(spec.n),
            };
            if elems.iter().any(|e| e.n() != spec.n) {
                bail!("permutation size differs from --n");
            }
            let mut rows = Vec::new();
            let mut csv = String::from("w,length,rank,dimension\n");
            for e in &elems {
                let (r, d) = (l_omega_rank(f, e)?, leaf_dimension(f, e)?);
                let label = e.images().iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ");
                csv.push_str(&format!("{},{},{},{}\n", label, e.length(), r, d));
                rows.push(json!({"w": e.images(), "length": e.length(), "rank": r, "dimension": d}));
            }
            let v = merge(header("leaf-dim", &spec), json!({"leaves": rows}));
            (Outcome { report: v, csv: Some(csv), ok: true }, common)
        }
        Command::VarietyCheck { common, count, q } => {
            let spec = spec_of(common)?;
            let f = named(&spec)?;
            if *q == 0 || q.abs() == 1 {
                bail!("--q must avoid 0 and ±1");
            }
            let ring = RationalAt { q: rat(*q) };
            let ws = variety_witnesses(f, spec.n, &ring, common.seed, RowsReading::Derived)?;
            let mut results = Vec::new();
            let mut ok = true;
            for w in ws.iter().chain(perturbations(&ws, &ring, *count, common.seed.wrapping_add(1)).iter()) {
                let member = family_membership(f, spec.n, &ring, &w.a, &w.b)?;
                ok &= member == w.expected;
                results.push(json!({"label": w.label, "member": member, "expected": w.expected}));
            }
            let v = merge(
                header("variety-check", &spec),
                json!({"q": q, "seed": common.seed, "pass": ok, "points": results}),
            );
            (Outcome::verdict(v, ok), common)
        }
        Command::Verma { common, kind, lambda, phi, matrices } => {
            let spec = spec_of(common)?;
            let m = common.m;
            let lam: Vec<i64> = match lambda {
                Some(s) => parse_list(s)?,
                None => vec![1; spec.n],
            };
            let hw = HighestWeight::from_ints(m, &lam).with_phi(CycScalar::from_int(m, *phi));
            let (rep, check_spec, label) = match kind {
                VermaKind::Restricted => (build_restricted_verma(&spec, m, &hw)?, spec.clone(), "restricted"),
                VermaKind::J0Minimal => {
                    let s = AlgebraSpec::named(Family::J0, spec.n)?;
                    (build_min_generalized_verma_j0(spec.n, m, &hw)?, s, "j0-minimal")
                }
            };
            let verified = verify_rep(&rep, &check_spec, m);
            let irr = irreducible(&rep);
            let mut v = merge(
                header("verma", &check_spec),
                json!({"kind": label, "m": m, "lambda": lam, "phi": phi, "dimension": rep.dimension, "relations_hold": verified, "irreducible": irr}),
            );
            if *matrices {
                v["module"] = rep.to_json();
            }
            let csv = format!(
                "kind,family,n,m,dimension,irreducible\n{},{},{},{},{},{}\n",
                label, check_spec.family, spec.n, m, rep.dimension, irr
            );
            (Outcome { report: v, csv: Some(csv), ok: verified }, common)
        }
        Command::CoproductCheck { common, a, b } => {
            let r = coproduct_report(common.n, CoproductRule::new(*a, *b))?;
            let ok = r.pass();
            let v = merge(json!({"command": "coproduct-check"}), r.to_json());
            (Outcome::verdict(v, ok), common)
        }
        Command::Suite { level, corrupt, timings, seed } => {
            let mut opts = SuiteOptions::new(match level {
                LevelArg::Quick => Level::Quick,
                LevelArg::Full => Level::Full,
            });
            opts.corrupt = *corrupt;
            opts.seed = *seed;
            let report = run_suite(&opts)?;
            let ok = report.pass();
            let v = merge(json!({"command": "suite", "seed": seed, "corrupt": corrupt}), report.to_json(*timings));
            return Ok((Outcome::verdict(v, ok), false, *timings));
        }
    };
    Ok((out, common.csv, common.timings))
}

fn init_threads() -> Result<()> {
    if let Ok(v) = std::env::var("QMA_THREADS") {
        let k: usize = v.parse().map_err(|_| anyhow!("QMA_THREADS must be a positive integer"))?;
        if k == 0 {
            bail!("QMA_THREADS must be a positive integer");
        }
        rayon::ThreadPoolBuilder::new().num_threads(k).build_global()?;
    }
    Ok(())
}

/// Writes to stdout; a closed pipe is not an error.
fn emit(text: &str) {
    use std::io::Write;
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = init_threads() {
        eprintln!("error: {:#}", e);
        return ExitCode::from(2);
    }
    let start = Instant::now();
    let (mut out, csv, timings) = match run(&cli.command) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {:#}", e);
            return ExitCode::from(2);
        }
    };
    if csv {
        match out.csv.take() {
            Some(text) => emit(&text),
            None => {
                eprintln!("error: this command has no CSV output");
                return ExitCode::from(2);
            }
        }
    } else {
        if timings {
            out.report["wall_seconds"] = json!(start.elapsed().as_secs_f64());
        }
        emit(&format!("{}\n", out.report));
    }
    if out.ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
