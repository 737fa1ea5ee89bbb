//! `pade-lab`: Padé approximants, table sweeps, stability probes and witnesses.
//!
//! Exit codes: 0 success, 1 usage or I/O error, 2 series not in `D_{p,q}`,
//! 3 no usable frontier index, 4 stability or pole failure, 5 witness
//! certificate computed but failing.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use padelab::norms::{pick_truncation, rho_tail_bound, sample_region, CompactRegion};
use padelab::pade::{pade_jacobi, pade_linsolve, PadeResult};
use padelab::series::text::{format_coeffs, parse_series, parse_target};
use padelab::table::{pade_table, CSV_HEADER};
use padelab::witness::{stability_probe, witness_from_polynomial, witness_from_rational, FrontierSet, WitnessParams};
use padelab::{Analytic, Builtin, Error, ExactComplex, FloatComplex, PadeIndex, Polynomial, Scalar, Tol};

#[derive(Parser)]
#[command(name = "pade-lab", version, about = "Padé approximation laboratory")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Mode {
    Exact,
    Float,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Method {
    Jacobi,
    Linsolve,
}

#[derive(Subcommand)]
enum Command {
    /// Compute [p/q] of a series.
    Pade {
        #[arg(long)]
        series: PathBuf,
        #[arg(long)]
        p: usize,
        #[arg(long)]
        q: usize,
        #[arg(long, value_enum, default_value = "exact")]
        mode: Mode,
        #[arg(long, value_enum, default_value = "jacobi")]
        method: Method,
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
    },
    /// Sweep sup-errors of [p/q] over a region as CSV.
    Table {
        /// Series file or `builtin:exp|geometric|log1p`.
        #[arg(long)]
        f: String,
        #[arg(long)]
        pmax: usize,
        #[arg(long)]
        qmax: usize,
        #[arg(long, default_value_t = 0)]
        lmax: usize,
        #[arg(long)]
        region: PathBuf,
        /// Truncation radius of the sampled set.
        #[arg(long, default_value_t = 1)]
        n: usize,
        #[arg(long, default_value_t = 0.05)]
        h: f64,
        #[arg(long, value_enum, default_value = "exact")]
        mode: Mode,
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build and certify a witness for a polynomial or rational target.
    Witness {
        #[arg(long)]
        target: PathBuf,
        #[arg(long)]
        region: PathBuf,
        #[arg(long)]
        frontier: PathBuf,
        #[arg(long)]
        eps: f64,
        #[arg(long, default_value_t = 1)]
        n: usize,
        #[arg(long)]
        s: usize,
        /// Derivative order of the closeness check (default: from the metric tail).
        #[arg(long = "L")]
        l_max: Option<usize>,
        /// Radius of the closeness check (default: from the metric tail).
        #[arg(long = "N")]
        n_max: Option<usize>,
        #[arg(long, default_value_t = 0.05)]
        h: f64,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Record that the complement of the region is connected.
        #[arg(long)]
        simply_connected: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Estimate how far a series may move while [p/q] stays within eps.
    Stability {
        #[arg(long)]
        series: PathBuf,
        #[arg(long)]
        p: usize,
        #[arg(long)]
        q: usize,
        #[arg(long)]
        r: f64,
        #[arg(long)]
        eps: f64,
        #[arg(long, default_value_t = 0)]
        s: usize,
        #[arg(long)]
        region: PathBuf,
        #[arg(long, default_value_t = 1)]
        n: usize,
        #[arg(long, default_value_t = 0.05)]
        h: f64,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Smallest L = N whose metric tail is below eps/2.
    Truncation {
        #[arg(long)]
        eps: f64,
    },
}

/// Failures that carry a specific exit code.
#[derive(Debug)]
struct Exit(u8);

impl std::fmt::Display for Exit {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "exit {}", self.0)
    }
}

impl std::error::Error for Exit {}

fn exit_code(err: &anyhow::Error) -> u8 {
    if let Some(Exit(code)) = err.downcast_ref::<Exit>() {
        return *code;
    }
    match err.downcast_ref::<Error>() {
        Some(Error::NotInDpq { .. }) => 2,
        Some(Error::NoUsableIndex) => 3,
        Some(
            Error::StabilityBudgetExceeded { .. }
            | Error::PoleIntrusion { .. }
            | Error::PoleAtSample { .. }
            | Error::TruncationDiverged { .. }
            | Error::SearchExhausted { .. },
        ) => 4,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    if let Some(n) = std::env::var("PADE_LAB_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            let code = exit_code(&err);
            if err.downcast_ref::<Exit>().is_none() {
                eprintln!("error: {err:#}");
            }
            ExitCode::from(code)
        }
    }
}

fn read(path: &Path) -> anyhow::Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn emit(text: &str, out: Option<&Path>) -> anyhow::Result<()> {
    match out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            std::io::stdout().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn positive(name: &str, v: f64) -> anyhow::Result<()> {
    if !(v > 0.0 && v.is_finite()) {
        bail!("--{name} must be a positive number, got {v}");
    }
    Ok(())
}

fn run(command: Command) -> anyhow::Result<()> {
    match command {
        Command::Pade { series, p, q, mode, method, tol } => {
            positive("tol", tol)?;
            let text = read(&series)?;
            let idx = PadeIndex::new(p, q);
            let report = match mode {
                Mode::Exact => pade_report::<ExactComplex>(&text, idx, method, Tol(tol))?,
                Mode::Float => pade_report::<FloatComplex>(&text, idx, method, Tol(tol))?,
            };
            emit(&format!("p = {p}\nq = {q}\nmode = {}\n{report}", mode_name(mode)), None)
        }
        Command::Table { f, pmax, qmax, lmax, region, n, h, mode, tol, out } => {
            positive("h", h)?;
            positive("tol", tol)?;
            let region = CompactRegion::parse(&read(&region)?)?;
            let sample = sample_region(&region, n, h)?;
            let order = pmax + qmax;
            let (jet, func): (_, Box<dyn Analytic>) = match f.parse::<Builtin>() {
                Ok(b) => (b.jet(order), Box::new(b)),
                Err(_) if f.starts_with("builtin:") => bail!("unknown builtin `{f}`"),
                Err(_) => {
                    let jet = parse_series::<ExactComplex>(&read(Path::new(&f))?)?;
                    let poly = Polynomial::new(jet.coeffs().to_vec());
                    (jet, Box::new(poly))
                }
            };
            let rows = match mode {
                Mode::Exact => pade_table(&jet, func.as_ref(), pmax, qmax, lmax, &region, &sample, Tol(tol))?,
                Mode::Float => pade_table(&jet.to_float(), func.as_ref(), pmax, qmax, lmax, &region, &sample, Tol(tol))?,
            };
            let mut csv = format!("{CSV_HEADER}\n");
            for row in rows {
                csv.push_str(&row.to_csv());
                csv.push('\n');
            }
            emit(&csv, out.as_deref())
        }
        Command::Witness { target, region, frontier, eps, n, s, l_max, n_max, h, trials, seed, simply_connected, out } => {
            positive("eps", eps)?;
            positive("h", h)?;
            if trials == 0 {
                bail!("--trials must be at least 1");
            }
            let (auto_l, auto_n) = pick_truncation(eps);
            let params = WitnessParams {
                eps,
                l_max: l_max.unwrap_or(auto_l),
                n_max: n_max.unwrap_or(auto_n),
                n,
                s,
                h,
                trials,
                seed,
                simply_connected,
            };
            let target = parse_target::<ExactComplex>(&read(&target)?)?;
            let region = CompactRegion::parse(&read(&region)?)?;
            let frontier = FrontierSet::parse(&read(&frontier)?)?;
            let cert = if target.is_polynomial() {
                let poly = target.num().scale(&(ExactComplex::one() / target.den().coeff(0)));
                witness_from_polynomial(&poly, &params, &frontier, &region)?
            } else {
                witness_from_rational(&target, &params, &frontier, &region)?
            };
            emit(&cert.to_string(), out.as_deref())?;
            if out.is_some() {
                println!("{}", cert.summary());
            }
            if cert.passed() {
                Ok(())
            } else {
                Err(Exit(5).into())
            }
        }
        Command::Stability { series, p, q, r, eps, s, region, n, h, trials, seed } => {
            positive("r", r)?;
            positive("eps", eps)?;
            positive("h", h)?;
            if trials == 0 {
                bail!("--trials must be at least 1");
            }
            let jet = parse_series::<ExactComplex>(&read(&series)?)?;
            let region = CompactRegion::parse(&read(&region)?)?;
            let sample = sample_region(&region, n, h)?;
            let outcome = stability_probe(&jet, PadeIndex::new(p, q), r, eps, s, &sample, trials, seed)?;
            let mut text = format!("delta = {:e}\n", outcome.delta);
            for (i, round) in outcome.rounds.iter().enumerate() {
                text.push_str(&format!(
                    "round {i}: delta = {:e} failures = {}/{trials} worst = {:e}\n",
                    round.delta, round.failures, round.worst
                ));
            }
            emit(&text, None)
        }
        Command::Truncation { eps } => {
            positive("eps", eps)?;
            let (l, n) = pick_truncation(eps);
            emit(&format!("L = {l}\nN = {n}\ntail_bound = {:e}\n", rho_tail_bound(l, n)), None)
        }
    }
}

fn mode_name(mode: Mode) -> &'static str {
    match mode {
        Mode::Exact => "exact",
        Mode::Float => "float",
    }
}

fn pade_report<S: Scalar>(text: &str, idx: PadeIndex, method: Method, tol: Tol) -> anyhow::Result<String> {
    let jet = parse_series::<S>(text)?;
    let result: PadeResult<S> = match method {
        Method::Jacobi => pade_jacobi(&jet, idx, tol),
        Method::Linsolve => pade_linsolve(&jet, idx, tol),
    }?;
    Ok(format!(
        "hankel_det = {}\nnum: {}\nden: {}\ncontact: {}\n",
        result.hankel_det,
        format_coeffs(result.approximant.num()),
        format_coeffs(result.approximant.den()),
        result.contact_verified
    ))
}
