//! `bbgeo`: norms, orthogonality and bilinear operator geometry from the
//! command line. All structured output is JSON lines.
//!
//! Exit codes: 0 success, 1 a check failed or a computation errored,
//! 2 usage or parse error.

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use banach_bilinear::bilinear::{bilinear_norm, norm_attainment_set};
use banach_bilinear::instances::seeded_operator;
use banach_bilinear::orthogonality::{bj_oracle, one_sided_derivatives};
use banach_bilinear::suites::{self, RunConfig};
use banach_bilinear::theorems::{example_operator, worked_example};
use banach_bilinear::{BilinearOperator, Error, SearchConfig, Space, Tolerances, Verdict};
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

#[derive(Parser, Debug)]
#[command(name = "bbgeo", version, about = "Geometry of finite-dimensional normed spaces and bilinear operators")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Global {
    /// Seed for every randomised computation.
    #[arg(long, global = true, env = "BB_SEED", default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, default_value_t = 1e-12)]
    eps_zero: f64,
    #[arg(long, global = true, default_value_t = 1e-9)]
    eps_eq: f64,
    #[arg(long, global = true, default_value_t = 1e-7)]
    eps_band: f64,
    #[arg(long, global = true, default_value_t = 1e-8)]
    eps_attain: f64,
    #[arg(long, global = true, default_value_t = 1e-12)]
    eps_oracle: f64,
    /// Multi-start count for ascent on non-polyhedral domains.
    #[arg(long, global = true, default_value_t = 64)]
    starts: usize,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Leave wall-clock fields out of reports.
    #[arg(long, global = true)]
    no_timestamp: bool,
    /// Count inconclusive checks as failures.
    #[arg(long, global = true)]
    strict: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Norm of a vector.
    Norm {
        #[arg(long)]
        space: String,
        #[arg(long, allow_hyphen_values = true)]
        x: String,
    },
    /// Birkhoff-James orthogonality of x to y.
    Orth {
        #[arg(long)]
        space: String,
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        #[arg(long, allow_hyphen_values = true)]
        y: String,
        /// Also run the golden-section cross-check.
        #[arg(long)]
        oracle: bool,
    },
    /// Norm of a bilinear operator.
    Opnorm {
        #[arg(long)]
        operator: String,
    },
    /// Norm attainment set of a bilinear operator.
    Attain {
        #[arg(long)]
        operator: String,
    },
    /// Run a named verification suite.
    Verify {
        #[arg(value_parser = suites::SUITES)]
        suite: String,
    },
    /// Recompute the worked example operator and its claims.
    Example,
}

enum Failure {
    Usage(String),
    Compute(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(_)
            | Error::DimensionMismatch { .. }
            | Error::DimensionTooSmall { .. }
            | Error::InvalidExponent(_)
            | Error::NonFinite
            | Error::ShapeMismatch { .. }
            | Error::UnknownSuite(_) => Failure::Usage(e.to_string()),
            other => Failure::Compute(other.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Compute(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Compute(msg)) => {
            eprintln!("{}", json!({ "error": msg }));
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("{}", json!({ "error": msg }));
            ExitCode::from(2)
        }
    }
}

fn tolerances(g: &Global) -> Result<Tolerances, Failure> {
    let tol = Tolerances {
        eps_zero: g.eps_zero,
        eps_eq: g.eps_eq,
        eps_band: g.eps_band,
        eps_attain: g.eps_attain,
        eps_oracle: g.eps_oracle,
    };
    if !tol.is_valid() {
        return Err(Failure::Usage("tolerances must be positive and finite".into()));
    }
    if g.starts == 0 {
        return Err(Failure::Usage("--starts must be at least 1".into()));
    }
    Ok(tol)
}

fn parse_vector(s: &str) -> Result<Vec<f64>, Failure> {
    s.split(',')
        .map(|t| t.trim().parse::<f64>().map_err(|_| Failure::Usage(format!("bad coordinate `{t}`"))))
        .collect()
}

fn parse_space(s: &str) -> Result<Space, Failure> {
    Ok(s.parse::<Space>()?)
}

/// JSON, `@file`, `paper-example`, `random:<p>:<dx>x<dy>x<dz>` or
/// `zero:<p>:<dx>x<dy>x<dz>`.
fn parse_operator(s: &str, seed: u64) -> Result<BilinearOperator, Failure> {
    let s = s.trim();
    if s == "paper-example" {
        return Ok(example_operator());
    }
    if let Some(path) = s.strip_prefix('@') {
        let text = fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{path}: {e}")))?;
        return parse_operator(&text, seed);
    }
    if s.starts_with('{') {
        return serde_json::from_str(s).map_err(|e| Failure::Usage(e.to_string()));
    }
    let parts: Vec<&str> = s.split(':').collect();
    if let [kind @ ("random" | "zero"), p, shape] = parts.as_slice() {
        let dims: Vec<usize> = shape
            .split('x')
            .map(|d| d.parse().map_err(|_| Failure::Usage(format!("bad shape `{shape}`"))))
            .collect::<Result<_, _>>()?;
        let [dx, dy, dz] = dims[..] else {
            return Err(Failure::Usage(format!("shape must be <dx>x<dy>x<dz>, got `{shape}`")));
        };
        let space = |d: usize| parse_space(&format!("lp:{p}:{d}"));
        let (x, y, z) = (space(dx)?, space(dy)?, space(dz)?);
        return Ok(if *kind == "random" {
            seeded_operator(seed, x, y, z)
        } else {
            BilinearOperator::zero(x, y, z)?
        });
    }
    Err(Failure::Usage(format!("unrecognised operator `{s}`")))
}

fn run(cli: &Cli) -> Result<bool, Failure> {
    let g = &cli.global;
    let tol = tolerances(g)?;
    let search = SearchConfig {
        starts: g.starts,
        seed: g.seed,
        tol,
        ..SearchConfig::default()
    };
    let mut out: Box<dyn Write> = match &g.output {
        Some(p) => Box::new(io::BufWriter::new(fs::File::create(p)?)),
        None => Box::new(io::stdout().lock()),
    };
    let mut line = |v: &Value| -> io::Result<()> { writeln!(out, "{v}") };

    let ok = match &cli.command {
        Command::Norm { space, x } => {
            let space = parse_space(space)?;
            let n = space.norm(&parse_vector(x)?)?;
            writeln!(out, "{n}")?;
            true
        }
        Command::Orth { space, x, y, oracle } => {
            let space = parse_space(space)?;
            let (x, y) = (parse_vector(x)?, parse_vector(y)?);
            let d = one_sided_derivatives(&space, &x, &y, &tol)?;
            let verdict = d.orthogonal_verdict(&tol);
            let mut v = json!({ "verdict": verdict, "d_plus": d.d_plus, "d_minus": d.d_minus });
            let mut agree = true;
            if *oracle {
                let o = bj_oracle(&space, &x, &y, &tol)?;
                agree = !verdict.is_conclusive() || o.verdict == verdict;
                v["oracle"] = json!(o);
                v["agree"] = json!(agree);
            }
            line(&v)?;
            agree
        }
        Command::Opnorm { operator } => {
            let t = parse_operator(operator, g.seed)?;
            let n = bilinear_norm(&t, &search);
            line(&json!({ "value": n.value, "exact": n.exact, "certificate": n.certificate }))?;
            true
        }
        Command::Attain { operator } => {
            let t = parse_operator(operator, g.seed)?;
            let m = norm_attainment_set(&t, &search)?;
            line(&json!(m))?;
            true
        }
        Command::Verify { suite } => {
            let cfg = RunConfig {
                seed: g.seed,
                tol,
                starts: g.starts,
                no_timestamp: g.no_timestamp,
                strict: g.strict,
            };
            let reports = suites::run_suite(suite, &cfg)?;
            let mut all = true;
            for r in &reports {
                for c in &r.checks {
                    line(&json!(c))?;
                }
                let (passed, total) = r.summary();
                let ok = r.passed(g.strict);
                all &= ok;
                line(&json!({ "suite": r.suite, "holds": passed, "checks": total, "passed": ok }))?;
            }
            all
        }
        Command::Example => {
            let r = worked_example(&search)?;
            let ok = r.all_passed();
            line(&json!({
                "verdict": Verdict::from_bool(ok),
                "value": r.value,
                "orbits": r.orbits,
                "checks": r.checks,
                "operator": example_operator(),
            }))?;
            ok
        }
    };
    out.flush()?;
    Ok(ok)
}
