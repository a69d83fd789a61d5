//! Argument handling and subcommand dispatch for the `hamcount` binary.
//!
//! [`run`] never prints; it returns the text destined for stdout and
//! stderr together with the exit code, so the whole front end can be
//! driven from tests.

use std::fmt::Write as _;
use std::io::Read;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde::Serialize;
use serde_json::json;

use hamcount::identities::{self, CountReport, EvalOptions, Method};
use hamcount::io::{self, InputFormat, ReportJson};
use hamcount::oracles::{Oracle, OracleCaps, DEFAULT_FUNCTION_CAP, DEFAULT_PERMUTATION_CAP};
use hamcount::random::seeded_matrix;
use hamcount::symbolic::Symbolic;
use hamcount::verify::{self, VerifyConfig};
use hamcount::{Error, SquareMatrix};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum InputFormatArg {
    Matrix,
    Edgelist,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ListFamily {
    /// Single-cycle permutations
    Cycles,
    /// Rooted functional trees, from the Laplacian-minor expansion
    Trees,
    /// Fully expanded determinant–permanent subset sum
    Identity,
    /// Derivative construction of the cycle listing
    Derivative,
}

/// Exact Hamiltonian cycle, path and rooted tree counts.
#[derive(Debug, Parser)]
#[command(name = "hamcount", version)]
pub struct RunConfig {
    #[arg(long, value_enum, default_value_t = OutputFormat::Text, global = true)]
    pub format: OutputFormat,

    /// Worker threads for subset-sum evaluation
    #[arg(long, env = "HAMCOUNT_THREADS", default_value_t = 1, global = true)]
    pub threads: usize,

    /// Largest n for permutation enumeration (`--brute`)
    #[arg(long, default_value_t = DEFAULT_PERMUTATION_CAP, global = true)]
    pub perm_cap: usize,

    /// Largest n for function enumeration (`trees --brute`)
    #[arg(long, default_value_t = DEFAULT_FUNCTION_CAP, global = true)]
    pub func_cap: usize,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Count Hamiltonian cycles
    Cycles(CountArgs),
    /// Count Hamiltonian paths, each weighted by the loop at its end vertex
    Paths(CountArgs),
    /// Count rooted spanning trees, each weighted by the loop at its root
    Trees(TreeArgs),
    /// Cross-check every evaluator against brute force and the symbolic identities
    Verify(VerifyArgs),
    /// Print a symbolic listing, one term per line
    List(ListArgs),
    /// Time the cycle identity against brute force
    Bench(BenchArgs),
}

#[derive(Debug, Args)]
pub struct CountArgs {
    /// Matrix or edge-list file; `-` reads stdin
    pub input: PathBuf,

    /// Input format; detected from the first token when omitted
    #[arg(long, value_enum)]
    pub input_format: Option<InputFormatArg>,

    /// Mirror every edge (u,v) onto (v,u) before counting
    #[arg(long)]
    pub undirected: bool,

    /// Overwrite every diagonal entry with this value
    #[arg(long)]
    pub diag: Option<BigInt>,

    /// Use brute-force enumeration instead of the identity
    #[arg(long)]
    pub brute: bool,
}

#[derive(Debug, Args)]
pub struct TreeArgs {
    #[command(flatten)]
    pub common: CountArgs,

    /// Count only trees rooted at this vertex
    #[arg(long)]
    pub root: Option<usize>,

    /// Weight given to every root (replaces the loop entries)
    #[arg(long)]
    pub root_weight: Option<BigInt>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, default_value_t = 6)]
    pub max_n: usize,

    /// Random matrices per check and size
    #[arg(long, default_value_t = 25)]
    pub samples: usize,

    #[arg(long, default_value_t = VerifyConfig::default().seed)]
    pub seed: u64,
}

#[derive(Debug, Args)]
pub struct ListArgs {
    #[arg(value_enum)]
    pub family: ListFamily,
    pub n: usize,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    #[arg(long, default_value_t = 4)]
    pub min_n: usize,

    #[arg(long, default_value_t = 14)]
    pub max_n: usize,

    /// Largest n at which brute force is also timed
    #[arg(long, default_value_t = 9)]
    pub brute_max: usize,

    #[arg(long, default_value_t = 1)]
    pub seed: u64,
}

/// Everything a run produces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub exit_code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            exit_code: EXIT_OK,
            stdout,
            stderr: String::new(),
        }
    }
}

/// Machine-readable error object, written to stderr.
fn error_outcome(e: &Error) -> Outcome {
    let obj = json!({ "error": { "kind": e.kind(), "message": e.to_string() } });
    Outcome {
        exit_code: EXIT_USAGE,
        stdout: String::new(),
        stderr: format!("{obj}\n"),
    }
}

pub fn run(cfg: &RunConfig) -> Outcome {
    match dispatch(cfg) {
        Ok(o) => o,
        Err(e) => error_outcome(&e),
    }
}

fn dispatch(cfg: &RunConfig) -> Result<Outcome, Error> {
    if cfg.threads == 0 {
        return Err(Error::Contract("--threads must be at least 1".into()));
    }
    if cfg.perm_cap == 0 || cfg.func_cap == 0 {
        return Err(Error::Contract("enumeration caps must be positive".into()));
    }
    match &cfg.command {
        Command::Cycles(args) => {
            let a = load_matrix(args)?;
            let report = if args.brute {
                let oracle = oracle(cfg);
                timed(Method::HcBruteforce, &a, factorial(a.dim()), || {
                    oracle.hc(&a)
                })?
            } else {
                identities::hc_count_identity_with(&a, &eval_options(cfg))?
            };
            Ok(Outcome::ok(render_report(&report, cfg.format)))
        }
        Command::Paths(args) => {
            let a = load_matrix(args)?;
            let report = if args.brute {
                let oracle = oracle(cfg);
                timed(Method::HpBruteforce, &a, factorial(a.dim()), || {
                    oracle.hp(&a)
                })?
            } else {
                identities::hp_count_identity_with(&a, &eval_options(cfg))?
            };
            Ok(Outcome::ok(render_report(&report, cfg.format)))
        }
        Command::Trees(args) => {
            let mut a = load_matrix(&args.common)?;
            if let Some(w) = &args.root_weight {
                a = a.with_diagonal(w);
            }
            let oracle = oracle(cfg);
            let functions = (a.dim() as u64).saturating_pow(a.dim() as u32);
            let report = match (args.root, args.common.brute) {
                (None, false) => identities::tree_count_tdmtt(&a)?,
                (None, true) => timed(Method::TreeBruteforce, &a, functions, || oracle.trees(&a))?,
                (Some(root), false) => timed(Method::TreeTdmtt, &a, 1, || {
                    identities::tree_count_rooted(&a, root)
                })?,
                (Some(root), true) => timed(Method::TreeBruteforce, &a, functions, || {
                    oracle.trees_rooted(&a, root)
                })?,
            };
            Ok(Outcome::ok(render_report(&report, cfg.format)))
        }
        Command::Verify(args) => run_verify(cfg, args),
        Command::List(args) => run_list(cfg, args),
        Command::Bench(args) => run_bench(cfg, args),
    }
}

fn oracle(cfg: &RunConfig) -> Oracle {
    Oracle::new(OracleCaps {
        permutations: cfg.perm_cap,
        functions: cfg.func_cap,
    })
}

fn eval_options(cfg: &RunConfig) -> EvalOptions {
    EvalOptions::with_threads(cfg.threads)
}

fn factorial(n: usize) -> u64 {
    (1..=n as u64).fold(1u64, |p, k| p.saturating_mul(k))
}

fn timed(
    method: Method,
    a: &SquareMatrix,
    terms: u64,
    f: impl FnOnce() -> Result<BigInt, Error>,
) -> Result<CountReport, Error> {
    let start = Instant::now();
    let count = f()?;
    Ok(CountReport {
        n: a.dim(),
        count,
        method,
        elapsed: start.elapsed(),
        terms_evaluated: terms,
    })
}

fn read_input(path: &PathBuf) -> Result<String, Error> {
    let mut text = String::new();
    let res = if path.as_os_str() == "-" {
        std::io::stdin().read_to_string(&mut text).map(|_| ())
    } else {
        std::fs::read_to_string(path).map(|t| text = t)
    };
    res.map_err(|e| Error::Contract(format!("cannot read {}: {e}", path.display())))?;
    Ok(text)
}

/// Parses the input and applies `--undirected` and `--diag`.
pub fn load_matrix(args: &CountArgs) -> Result<SquareMatrix, Error> {
    let text = read_input(&args.input)?;
    prepare_matrix(&text, args)
}

pub fn prepare_matrix(text: &str, args: &CountArgs) -> Result<SquareMatrix, Error> {
    let format = args.input_format.map(|f| match f {
        InputFormatArg::Matrix => InputFormat::Matrix,
        InputFormatArg::Edgelist => InputFormat::Edgelist,
    });
    let graph = io::parse_input(text, format)?;
    let mut a = match (graph.format, args.undirected) {
        (_, false) => graph.matrix,
        (InputFormat::Edgelist, true) => io::parse_edgelist_with(text, true)?,
        (InputFormat::Matrix, true) => mirror(&graph.matrix),
    };
    if let Some(d) = &args.diag {
        a = a.with_diagonal(d);
    }
    Ok(a)
}

/// Off-diagonal `b_uv = a_uv + a_vu`: each matrix entry read as an edge
/// and added in both directions, as `--undirected` does for edge lists.
fn mirror(a: &SquareMatrix) -> SquareMatrix {
    SquareMatrix::from_fn(a.dim(), |i, j| {
        if i == j {
            a.entry(i, i).clone()
        } else {
            a.entry(i, j) + a.entry(j, i)
        }
    })
}

pub fn render_report(r: &CountReport, format: OutputFormat) -> String {
    match format {
        OutputFormat::Json => {
            let mut s = serde_json::to_string(&ReportJson::from(r)).expect("report serializes");
            s.push('\n');
            s
        }
        OutputFormat::Text => format!(
            "count: {}\nmethod: {}\nn: {}\nterms_evaluated: {}\nelapsed_ms: {:.3}\n",
            r.count,
            r.method,
            r.n,
            r.terms_evaluated,
            r.elapsed.as_secs_f64() * 1e3
        ),
    }
}

fn run_verify(cfg: &RunConfig, args: &VerifyArgs) -> Result<Outcome, Error> {
    let vcfg = VerifyConfig {
        max_n: args.max_n,
        samples: args.samples,
        seed: args.seed,
        threads: cfg.threads,
        oracle_caps: OracleCaps {
            permutations: cfg.perm_cap,
            functions: cfg.func_cap,
        },
        ..VerifyConfig::default()
    };
    let report = verify::run_suite(&vcfg)?;
    let passed = report.all_passed();
    let stdout = match cfg.format {
        OutputFormat::Json => {
            let v = json!({ "passed": passed, "seed": args.seed, "checks": report.checks });
            format!("{v}\n")
        }
        OutputFormat::Text => {
            let mut s = String::new();
            for c in &report.checks {
                let status = if c.passed { "PASS" } else { "FAIL" };
                let _ = write!(s, "{status} {:<36} n={:<2} cases={}", c.name, c.n, c.cases);
                if let Some(f) = &c.failure {
                    match f.seed {
                        Some(seed) => {
                            let _ = write!(s, " seed={seed} {}", f.detail);
                        }
                        None => {
                            let _ = write!(s, " {}", f.detail);
                        }
                    }
                }
                s.push('\n');
            }
            let failed = report.failures().count();
            let _ = writeln!(
                s,
                "{} checks, {failed} failed (seed {})",
                report.checks.len(),
                args.seed
            );
            s
        }
    };
    Ok(Outcome {
        exit_code: if passed { EXIT_OK } else { EXIT_VERIFY_FAILED },
        stdout,
        stderr: String::new(),
    })
}

fn run_list(cfg: &RunConfig, args: &ListArgs) -> Result<Outcome, Error> {
    let sym = Symbolic::default();
    let poly = match args.family {
        ListFamily::Cycles => sym.hc_listing(args.n)?,
        ListFamily::Trees => sym.tdmtt(args.n)?,
        ListFamily::Identity => sym.hc_identity_expand(args.n)?,
        ListFamily::Derivative => sym.hc_derivative_form(args.n)?,
    };
    let text = poly.to_string();
    let stdout = match cfg.format {
        OutputFormat::Text => text,
        OutputFormat::Json => {
            let family = format!("{:?}", args.family).to_lowercase();
            let terms: Vec<&str> = text.lines().collect();
            format!(
                "{}\n",
                json!({ "family": family, "n": args.n, "terms": terms })
            )
        }
    };
    Ok(Outcome::ok(stdout))
}

#[derive(Debug, Serialize)]
struct BenchRow {
    n: usize,
    count: String,
    identity_ms: f64,
    brute_ms: Option<f64>,
    agree: Option<bool>,
}

fn run_bench(cfg: &RunConfig, args: &BenchArgs) -> Result<Outcome, Error> {
    if args.min_n < 1 || args.min_n > args.max_n {
        return Err(Error::Contract(format!(
            "need 1 <= min-n <= max-n, got {}..{}",
            args.min_n, args.max_n
        )));
    }
    let oracle = oracle(cfg);
    let mut rows = Vec::new();
    for n in args.min_n..=args.max_n {
        let a = seeded_matrix(args.seed.wrapping_add(n as u64), n, -9, 9);
        let r = identities::hc_count_identity_with(&a, &eval_options(cfg))?;
        let (brute_ms, agree) = if n <= args.brute_max.min(cfg.perm_cap) {
            let start = Instant::now();
            let b = oracle.hc(&a)?;
            (
                Some(start.elapsed().as_secs_f64() * 1e3),
                Some(b == r.count),
            )
        } else {
            (None, None)
        };
        rows.push(BenchRow {
            n,
            count: r.count.to_string(),
            identity_ms: r.elapsed.as_secs_f64() * 1e3,
            brute_ms,
            agree,
        });
    }
    let all_agree = rows.iter().all(|r| r.agree != Some(false));
    let stdout = match cfg.format {
        OutputFormat::Json => format!("{}\n", json!({ "threads": cfg.threads, "rows": rows })),
        OutputFormat::Text => {
            let mut s = format!(
                "{:>3}  {:>14}  {:>14}  {:>6}  count\n",
                "n", "identity_ms", "brute_ms", "agree"
            );
            for r in &rows {
                let brute = r.brute_ms.map_or("-".to_owned(), |v| format!("{v:.3}"));
                let agree = r.agree.map_or("-", |a| if a { "yes" } else { "NO" });
                let _ = writeln!(
                    s,
                    "{:>3}  {:>14.3}  {:>14}  {:>6}  {}",
                    r.n, r.identity_ms, brute, agree, r.count
                );
            }
            s
        }
    };
    Ok(Outcome {
        exit_code: if all_agree {
            EXIT_OK
        } else {
            EXIT_VERIFY_FAILED
        },
        stdout,
        stderr: String::new(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn args(extra: &[&str]) -> CountArgs {
        let mut argv = vec!["hamcount", "cycles", "-"];
        argv.extend_from_slice(extra);
        match RunConfig::parse_from(argv).command {
            Command::Cycles(a) => a,
            _ => unreachable!(),
        }
    }

    #[test]
    fn undirected_mirrors_matrix_entries() {
        let a = prepare_matrix("3\n0 1 0\n0 0 1\n0 0 0", &args(&["--undirected"])).unwrap();
        assert_eq!(
            a,
            SquareMatrix::from_rows([[0, 1, 0], [1, 0, 1], [0, 1, 0]]).unwrap()
        );
        let e = prepare_matrix("n 3\n1 2\n2 3\n3 1", &args(&["--undirected"])).unwrap();
        assert_eq!(e, SquareMatrix::complete_loopless(3));
    }

    #[test]
    fn diag_override() {
        let a = prepare_matrix("2\n5 1\n1 5", &args(&["--diag", "1"])).unwrap();
        assert_eq!(a, SquareMatrix::all_ones(2));
    }

    #[test]
    fn text_report_layout() {
        let r = identities::hc_count_identity(&SquareMatrix::all_ones(3)).unwrap();
        let text = render_report(&r, OutputFormat::Text);
        assert!(text.starts_with("count: 2\nmethod: hc_identity\nn: 3\nterms_evaluated: 4\n"));
    }
}
