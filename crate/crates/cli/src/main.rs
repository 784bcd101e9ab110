mod output;

use braidstat::braid::{check_braid_numeric, check_braid_symbolic};
use braidstat::exp_scalar::{ExpScalar, NumEnv};
use braidstat::hamiltonian::{chain_hamiltonian, higher_charge, reshetikhin_check};
use braidstat::params::ParamSet;
use braidstat::projectors::{build_nested, verify_basis};
use braidstat::ring::parse_rational;
use braidstat::rtt::{check_canonical_rtt, check_canonical_rtt_numeric};
use braidstat::scattering::{cayley_direct, check_lambda, evaluate_rational, max_gap, potential, potential_general};
use braidstat::spectrum::{classify_multiplets, fermat_census, full_spectrum};
use braidstat::transfer::{transfer_symbolic, verify_trace};
use braidstat::verify::verify_all;
use braidstat::Error;
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use output::{fail, sparse_json, Failure, Report};
use serde_json::{json, Value};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser, Debug)]
#[command(name = "braidstat", version, about = "Exact and numeric checks for multiparameter braid matrices")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Args, Debug, Clone)]
struct Common {
    /// Dimension of the single-site space (odd).
    #[arg(long = "N", short = 'N')]
    n: Option<usize>,
    /// Parameter file: {"N": 3, "m": {"m11+": "2", ...}}.
    #[arg(long)]
    params: Option<PathBuf>,
    /// Draw generic random rational parameters from this seed.
    #[arg(long = "random-params", value_name = "SEED", conflicts_with = "params")]
    random_params: Option<u64>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build the nested projectors and verify their algebra.
    Projectors {
        #[command(flatten)]
        common: Common,
    },
    /// Check the braid equation exactly and, with numeric parameters, numerically.
    VerifyBraid {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 0.9, allow_hyphen_values = true)]
        theta: f64,
        #[arg(long = "theta-prime", default_value_t = 0.4, allow_hyphen_values = true)]
        theta_prime: f64,
    },
    /// Closed-form trace of T^(r) and its exact verification.
    Trace {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        r: usize,
        /// Write the symbolic transfer matrix as sparse triplets.
        #[arg(long)]
        emit: Option<PathBuf>,
    },
    /// Classified spectrum of T^(r).
    Spectrum {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        r: usize,
        /// Sample points; the first one is reported row by row in CSV mode.
        #[arg(long, value_delimiter = ',', default_values_t = [0.7, 1.3], allow_hyphen_values = true)]
        theta: Vec<f64>,
        /// Shorthand for --format csv.
        #[arg(long)]
        csv: bool,
    },
    /// Chain Hamiltonian H1 and the second charge H2.
    Hamiltonian {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        emit: Option<PathBuf>,
    },
    /// Potential -iV = (R - lambda)^-1 (R + lambda).
    Potential {
        #[command(flatten)]
        common: Common,
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        #[arg(long, default_value_t = 0.5, allow_hyphen_values = true)]
        theta: f64,
    },
    /// Canonical form of the R-hat t t algebra, relation by relation.
    RttCheck {
        #[command(flatten)]
        common: Common,
    },
    /// Count of r-plets (N^r - N)/r for prime r.
    FermatCensus {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        r: usize,
        /// Also count r-plets in a computed spectrum.
        #[arg(long)]
        observe: bool,
    },
    /// Every applicable check with a summary table.
    VerifyAll {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        r: usize,
        /// Include wall-clock times (makes output non-reproducible).
        #[arg(long)]
        timings: bool,
    },
}

fn config_threads() -> Result<(), Failure> {
    let Ok(v) = std::env::var("BRAIDSTAT_THREADS") else { return Ok(()) };
    let n: usize = v.trim().parse().map_err(|_| Failure::config(format!("BRAIDSTAT_THREADS must be a positive integer, got {v:?}")))?;
    if n == 0 {
        return Err(Failure::config("BRAIDSTAT_THREADS must be at least 1"));
    }
    rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(|e| Failure::config(e.to_string()))
}

/// Loaded parameters and, for random draws, the seed that produced them.
struct Loaded {
    params: ParamSet,
    seed: Option<u64>,
}

impl Loaded {
    fn describe(&self) -> Value {
        json!({"values": self.params.to_json(), "seed": self.seed})
    }
}

const RANDOM_SCALE: f64 = 0.5;
const RANDOM_GAP: f64 = 1e-8;

fn load(common: &Common, r: usize) -> Result<Loaded, Failure> {
    if let Some(path) = &common.params {
        let text = std::fs::read_to_string(path).map_err(|e| Failure::config(format!("cannot read {}: {e}", path.display())))?;
        let v: Value = serde_json::from_str(&text).map_err(|e| Failure::config(format!("{}: {e}", path.display())))?;
        let params = ParamSet::from_json(&v)?;
        if let Some(n) = common.n {
            if n != params.n() {
                return Err(Failure::config(format!("--N {n} disagrees with N = {} in {}", params.n(), path.display())));
            }
        }
        return Ok(Loaded { params, seed: None });
    }
    let n = common.n.ok_or_else(|| Failure::config("--N is required without --params"))?;
    match common.random_params {
        Some(seed) => Ok(Loaded { params: ParamSet::random_generic(n, r.max(1), seed, RANDOM_SCALE, RANDOM_GAP)?, seed: Some(seed) }),
        None => Ok(Loaded { params: ParamSet::symbolic(n)?, seed: None }),
    }
}

/// Numeric parameters: the loaded ones, completed by a seed-0 draw when
/// some values are missing.
fn load_numeric(common: &Common, r: usize) -> Result<Loaded, Failure> {
    let loaded = load(common, r)?;
    if loaded.params.is_fully_numeric() {
        return Ok(loaded);
    }
    let seed = 0;
    let draw = ParamSet::random_generic(loaded.params.n(), r.max(1), seed, RANDOM_SCALE, RANDOM_GAP)?;
    Ok(Loaded { params: loaded.params.fill(&draw), seed: Some(seed) })
}

fn env_for(params: &ParamSet, theta: f64) -> NumEnv {
    NumEnv::new(theta, params.numeric().expect("numeric parameters"))
}

fn write_file(path: &PathBuf, v: &Value) -> Result<(), Failure> {
    std::fs::write(path, serde_json::to_string_pretty(v).expect("serializable") + "\n")
        .map_err(|e| Failure::config(format!("cannot write {}: {e}", path.display())))
}

fn run(cli: Cli) -> Result<Report, Failure> {
    match cli.command {
        Command::Projectors { common } => {
            let n = load(&common, 1)?.params.n();
            let basis = build_nested(n)?;
            let rep = verify_basis(&basis);
            let mut text = format!("N = {n}: {} projectors\n", rep.count);
            for (l, p) in basis.projectors() {
                text.push_str(&format!("  {l:<6} rank {}\n", p.trace()));
            }
            text.push_str(&format!("idempotent {} orthogonal {} complete {}\n", rep.idempotent, rep.orthogonal, rep.complete));
            let rows = basis.projectors().iter().map(|(l, p)| vec![l.to_string(), p.trace().to_string(), p.nnz().to_string()]).collect();
            Ok(Report {
                pass: rep.pass(),
                json: json!({
                    "basis": basis.to_json(),
                    "report": {
                        "count": rep.count, "count_ok": rep.count_ok, "idempotent": rep.idempotent,
                        "orthogonal": rep.orthogonal, "complete": rep.complete, "violations": rep.violations,
                    },
                    "pass": rep.pass(),
                }),
                text,
                csv: Some((vec!["label", "rank", "nnz"], rows)),
            })
        }
        Command::VerifyBraid { common, theta, theta_prime } => {
            let loaded = load(&common, 1)?;
            let n = loaded.params.n();
            let exact = check_braid_symbolic(&ParamSet::symbolic(n)?)?;
            let numeric = if loaded.params.is_fully_numeric() {
                let env = NumEnv { theta, theta2: theta_prime, params: loaded.params.numeric().expect("numeric"), ..Default::default() };
                Some(check_braid_numeric(&loaded.params, theta, theta_prime, &env)?)
            } else {
                None
            };
            let pass = exact.is_zero() && numeric.is_none_or(|x| x < 1e-10);
            let text = format!(
                "N = {n}\nexact residual: {} nonzero entries\nnumeric residual: {}\n{}\n",
                exact.nonzero_entries,
                numeric
                    .map(|x| format!("{x:.3e} at theta = {theta}, theta' = {theta_prime}"))
                    .unwrap_or_else(|| "skipped (symbolic parameters)".into()),
                verdict(pass)
            );
            Ok(Report {
                pass,
                json: json!({
                    "N": n, "params": loaded.describe(),
                    "exact": {"nonzero_entries": exact.nonzero_entries, "max_terms": exact.max_terms, "zero": exact.is_zero()},
                    "numeric": numeric.map(|x| json!({"theta": theta, "theta_prime": theta_prime, "max_residual": x})),
                    "pass": pass,
                }),
                text,
                csv: Some((
                    vec!["check", "value"],
                    vec![
                        vec!["exact_nonzero_entries".into(), exact.nonzero_entries.to_string()],
                        vec!["numeric_max_residual".into(), numeric.map(|x| format!("{x:e}")).unwrap_or_default()],
                    ],
                )),
            })
        }
        Command::Trace { common, r, emit } => {
            let loaded = load(&common, r)?;
            let tc = verify_trace(&loaded.params, r)?;
            if let Some(path) = &emit {
                write_file(path, &sparse_json(&transfer_symbolic(&loaded.params, r)?, |x| x.to_string()))?;
            }
            let pass = tc.pass();
            Ok(Report {
                pass,
                json: json!({"N": loaded.params.n(), "r": r, "closed_form": tc.closed_form.to_string(), "computed": tc.computed.to_string(), "pass": pass}),
                text: format!("tr T^({r}) = {}\n{}\n", tc.closed_form, verdict(pass)),
                csv: Some((
                    vec!["closed_form", "computed", "pass"],
                    vec![vec![tc.closed_form.to_string(), tc.computed.to_string(), pass.to_string()]],
                )),
            })
        }
        Command::Spectrum { common, r, theta, csv } => {
            if theta.is_empty() || theta.iter().any(|t| *t == 0.0 || !t.is_finite()) {
                return Err(Failure::config("--theta needs nonzero finite values"));
            }
            let loaded = load_numeric(&common, r)?;
            let samples = full_spectrum(&loaded.params, r, &theta)?;
            let rep = classify_multiplets(&loaded.params, r, &samples)?;
            let mut text = format!("N = {}, r = {r}: {} eigenvalues\n", rep.n, rep.total);
            for (k, ms) in &rep.sectors {
                for m in ms {
                    text.push_str(&format!("  S({r},{k})  order {}  x{}  exp(({})*theta)\n", m.order, m.count, m.mu));
                }
            }
            text.push_str(&format!("zero-sum {}  trace {}\n{}\n", rep.zero_sum, rep.trace_check, verdict(rep.pass())));
            let mut j = rep.to_json();
            j["params"] = loaded.describe();
            j["theta"] = json!(theta);
            j["pass"] = json!(rep.pass());
            let first = theta[0];
            let rows = rep
                .records
                .iter()
                .filter(|e| e.theta == first)
                .map(|e| {
                    vec![
                        e.theta.to_string(),
                        format!("{:.15e}", e.value.re),
                        format!("{:.15e}", e.value.im),
                        e.mu.to_string(),
                        e.order.to_string(),
                        e.phase_index.to_string(),
                    ]
                })
                .collect();
            let force_csv = csv;
            Ok(Report { pass: rep.pass(), json: j, text, csv: Some((vec!["theta", "re", "im", "mu", "order", "phase_index"], rows)) }
                .force_csv(force_csv))
        }
        Command::Hamiltonian { common, r, emit } => {
            let loaded = load_numeric(&common, r)?;
            let h1 = chain_hamiltonian(&loaded.params, r)?;
            let h2 = higher_charge(&loaded.params, r)?;
            let commute = h1.matrix.commutator(&h2.matrix).is_zero();
            let resh = reshetikhin_check(&loaded.params)?;
            if let Some(path) = &emit {
                write_file(path, &sparse_json(&h1.matrix, |x| x.to_string()))?;
            }
            let pass = commute && resh.exact_zero;
            Ok(Report {
                pass,
                json: json!({
                    "N": loaded.params.n(), "r": r, "params": loaded.describe(),
                    "H1": sparse_json(&h1.matrix, |x| x.to_string()),
                    "H1_H2_commute": commute,
                    "reshetikhin_zero": resh.exact_zero,
                    "pass": pass,
                }),
                text: format!(
                    "H1: {n}x{n}, {} nonzero entries\n[H1, H2] = 0 exactly: {commute}\nReshetikhin double commutator zero: {}\n{}\n",
                    h1.matrix.nnz(),
                    resh.exact_zero,
                    verdict(pass),
                    n = h1.matrix.nrows()
                ),
                csv: Some((
                    vec!["row", "col", "value"],
                    h1.matrix.triplets().map(|(i, j, v)| vec![i.to_string(), j.to_string(), v.to_string()]).collect(),
                )),
            })
        }
        Command::Potential { common, lambda, theta } => {
            let lam =
                parse_rational(&lambda).ok_or_else(|| Failure::config(format!("--lambda must be a rational number, got {lambda:?}")))?;
            let loaded = load_numeric(&common, 1)?;
            let n = loaded.params.n();
            let lam_f = braidstat::ring::rational_to_f64(&lam);
            let mut env = env_for(&loaded.params, theta);
            env.lambda = Some(Complex64::new(lam_f, 0.0));
            let direct = if n == 3 {
                let adm = check_lambda(&loaded.params, &ExpScalar::rational(lam.clone()))?;
                if !adm.admissible_yb {
                    return Err(Error::InadmissibleLambda(adm.yb_hits.join(", ")).into());
                }
                evaluate_rational(&potential(&loaded.params, &ExpScalar::rational(lam))?, &env)?
            } else {
                potential_general(&loaded.params, Complex64::new(lam_f, 0.0), &env, 1e-9)?
            };
            let oracle = cayley_direct(&loaded.params, Complex64::new(lam_f, 0.0), &env)?;
            let gap = max_gap(&direct, &oracle);
            let pass = gap < 1e-10;
            let matrix: Vec<Value> =
                direct.iter().map(|row| Value::from(row.iter().map(|z| json!([z.re, z.im])).collect::<Vec<_>>())).collect();
            let mut text = String::new();
            for row in &direct {
                text.push_str(&row.iter().map(|z| format!("{:>12.6}{:+.6}i", z.re, z.im)).collect::<Vec<_>>().join(" "));
                text.push('\n');
            }
            text.push_str(&format!("agreement with dense inversion: {gap:.2e}\n{}\n", verdict(pass)));
            let rows = direct
                .iter()
                .enumerate()
                .flat_map(|(i, row)| {
                    row.iter()
                        .enumerate()
                        .map(move |(j, z)| vec![i.to_string(), j.to_string(), format!("{:.15e}", z.re), format!("{:.15e}", z.im)])
                })
                .collect();
            Ok(Report {
                pass,
                json: json!({"N": n, "lambda": lambda, "theta": theta, "params": loaded.describe(), "matrix": matrix, "oracle_gap": gap, "pass": pass}),
                text,
                csv: Some((vec!["row", "col", "re", "im"], rows)),
            })
        }
        Command::RttCheck { common } => {
            let loaded = load(&common, 1)?;
            let n = loaded.params.n();
            let mut rep = check_canonical_rtt(&ParamSet::symbolic(n)?, 1)?;
            if loaded.params.is_fully_numeric() {
                rep.numeric_residual = Some(check_canonical_rtt_numeric(&loaded.params, 0.9, 0.4, 1)?);
            }
            let mut text = String::new();
            for rel in &rep.relations {
                text.push_str(&format!("({},{}) ({},{})  {}\n", rel.a.0, rel.a.1, rel.b.0, rel.b.1, verdict(rel.holds)));
            }
            if let Some(m) = &rep.closed_form_mismatches {
                text.push_str(&format!("closed-form blocks differing from M t M: {}\n", m.len()));
            }
            text.push_str(&format!(
                "{} of {} relations hold\n{}\n",
                rep.relations.len() - rep.failures(),
                rep.relations.len(),
                verdict(rep.pass())
            ));
            let rows = rep
                .relations
                .iter()
                .map(|r| {
                    vec![format!("{}{}", r.a.0, r.a.1), format!("{}{}", r.b.0, r.b.1), r.holds.to_string(), r.nonzero_entries.to_string()]
                })
                .collect();
            Ok(Report { pass: rep.pass(), json: rep.to_json(), text, csv: Some((vec!["a", "b", "holds", "nonzero_entries"], rows)) })
        }
        Command::FermatCensus { common, r, observe } => {
            let n = match (&common.params, common.n) {
                (None, Some(n)) => n,
                _ => load(&common, r)?.params.n(),
            };
            let (census, params) = if observe {
                let loaded = load_numeric(&common, r)?;
                let samples = full_spectrum(&loaded.params, r, &[0.7, 1.3])?;
                let rep = classify_multiplets(&loaded.params, r, &samples)?;
                (fermat_census(n, r, Some(&rep))?, Some(loaded.describe()))
            } else {
                (fermat_census(n, r, None)?, None)
            };
            let mut j = census.to_json();
            if let Some(p) = params {
                j["params"] = p;
            }
            let seen = census.observed.as_ref().map(|o| format!(", observed {}", o.multiplet_count)).unwrap_or_default();
            Ok(Report {
                pass: census.pass(),
                json: j,
                text: format!("N = {n}, r = {r}: M = {}{seen}\n{}\n", census.m, verdict(census.pass())),
                csv: Some((
                    vec!["N", "r", "M", "observed"],
                    vec![vec![
                        n.to_string(),
                        r.to_string(),
                        census.m.to_string(),
                        census.observed.map(|o| o.multiplet_count.to_string()).unwrap_or_default(),
                    ]],
                )),
            })
        }
        Command::VerifyAll { common, r, timings } => {
            let loaded = load_numeric(&common, r)?;
            let suite = verify_all(&loaded.params, r)?;
            let mut j = suite.to_json(timings);
            j["N"] = json!(loaded.params.n());
            j["r"] = json!(r);
            j["params"] = loaded.describe();
            let text = format!("N = {}, r = {r}\n{}", loaded.params.n(), suite.to_text(timings));
            let rows = suite.checks.iter().map(|c| vec![c.name.clone(), c.pass.to_string(), c.detail.clone()]).collect();
            Ok(Report { pass: suite.pass(), json: j, text, csv: Some((vec!["name", "pass", "detail"], rows)) })
        }
    }
}

fn verdict(pass: bool) -> &'static str {
    if pass {
        "PASS"
    } else {
        "FAIL"
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion | ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand)
            {
                let _ = e.print();
                return ExitCode::SUCCESS;
            }
            return fail(&Failure::config(e.render().to_string().trim().to_string()));
        }
    };
    if let Err(f) = config_threads() {
        return fail(&f);
    }
    let format = cli.format;
    match run(cli) {
        Ok(report) => report.emit(format),
        Err(f) => fail(&f),
    }
}
