//! fflm: a laboratory for quadratic Dirichlet L-functions over F_q\[T\]
//! with P monic irreducible of odd degree.
//!
//! Subcommands: primes, lfun, moments, euler, qpoly, ratios, density.
//! Exit codes: 0 success, 1 usage error, 2 computation error, 3 budget
//! refusal.

mod cache;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use fflm_core::algebra::count_primes;
use fflm_core::conjecture::{ak_value, qk_polynomial};
use fflm_core::ensemble::{
    density_histogram, moment_sweep, parallel_sweep, ratio_sweep, SweepConfig,
};
use fflm_core::lfunction::{l_coefficients, LPolynomial};
use report::{emit, Cell, Format, Table};

#[derive(Parser)]
#[command(
    name = "fflm",
    version,
    about = "Quadratic Dirichlet L-functions over F_q[T]: ensembles vs conjectures",
    disable_help_subcommand = true
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Size of the ensemble P_{2g+1,q}
    Primes(PrimesArgs),
    /// Compute all L-polynomials and write the JSONL cache file
    Lfun(LfunArgs),
    /// Moment sweep: empirical vs conjectured sums of L(1/2,chi_P)^k
    Moments(MomentsArgs),
    /// Truncated Euler product A_k(1/2;0,...,0) with tail estimate
    Euler(EulerArgs),
    /// Coefficients of the moment polynomial Q_k(x)
    Qpoly(QpolyArgs),
    /// Ratios sweep: empirical vs predicted sums of L(1/2+a)/L(1/2+g)
    Ratios(RatiosArgs),
    /// Scaled zero-density histogram against both candidate kernels
    Density(DensityArgs),
}

#[derive(Args)]
struct OutputOpts {
    /// Report format
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    /// Write the report here (plus a .meta.json sidecar) instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SweepOpts {
    /// Worker threads for ensemble sweeps (results are bit-identical for
    /// any count)
    #[arg(long, default_value_t = 1)]
    workers: usize,
    /// Proceed even when q^(2g+1) exceeds the enumeration budget
    #[arg(long)]
    allow_large: bool,
    /// Directory with lfun_q{q}_g{g}.jsonl caches (default: $FFLM_CACHE_DIR)
    #[arg(long)]
    cache_dir: Option<PathBuf>,
}

impl SweepOpts {
    fn config(&self) -> SweepConfig {
        SweepConfig {
            workers: self.workers.max(1),
            budget_override: self.allow_large,
        }
    }
}

#[derive(Args)]
struct PrimesArgs {
    #[arg(long)]
    q: u64,
    #[arg(long)]
    g: usize,
    #[command(flatten)]
    output: OutputOpts,
}

#[derive(Args)]
struct LfunArgs {
    #[arg(long)]
    q: u64,
    #[arg(long)]
    g: usize,
    #[command(flatten)]
    sweep: SweepOpts,
    #[command(flatten)]
    output: OutputOpts,
}

#[derive(Args)]
struct MomentsArgs {
    #[arg(long)]
    q: u64,
    #[arg(long)]
    g: usize,
    /// Highest moment k_max
    #[arg(long, default_value_t = 2)]
    k: usize,
    /// Compare the k = 1 row in the log_q|P|-weighted normalization
    #[arg(long)]
    weighted: bool,
    /// Euler-product cutoff D for the A_k series
    #[arg(long, default_value_t = 30)]
    cutoff: usize,
    #[command(flatten)]
    sweep: SweepOpts,
    #[command(flatten)]
    output: OutputOpts,
}

#[derive(Args)]
struct EulerArgs {
    #[arg(long)]
    k: usize,
    #[arg(long)]
    q: u64,
    #[arg(long, default_value_t = 30)]
    cutoff: usize,
    #[command(flatten)]
    output: OutputOpts,
}

#[derive(Args)]
struct QpolyArgs {
    #[arg(long)]
    k: usize,
    /// Ground field size (enters the A_k Euler product for k >= 2)
    #[arg(long, default_value_t = 3)]
    q: u64,
    #[arg(long, default_value_t = 30)]
    cutoff: usize,
    /// Total-degree cap of the residue extraction (default k(2k-1))
    #[arg(long)]
    order: Option<usize>,
    #[command(flatten)]
    output: OutputOpts,
}

#[derive(Args)]
struct RatiosArgs {
    #[arg(long)]
    q: u64,
    #[arg(long)]
    g: usize,
    /// Numerator shifts, comma separated
    #[arg(long, value_delimiter = ',', required = true)]
    alpha: Vec<f64>,
    /// Denominator shifts, comma separated
    #[arg(long, value_delimiter = ',', required = true)]
    gamma: Vec<f64>,
    #[command(flatten)]
    sweep: SweepOpts,
    #[command(flatten)]
    output: OutputOpts,
}

#[derive(Args)]
struct DensityArgs {
    #[arg(long)]
    q: u64,
    #[arg(long)]
    g: usize,
    /// Histogram bins over the scaled range [-g, g]
    #[arg(long, default_value_t = 40)]
    bins: usize,
    #[command(flatten)]
    sweep: SweepOpts,
    #[command(flatten)]
    output: OutputOpts,
}

enum CliError {
    Usage(String),
    Compute(String),
    Budget(String),
}

impl From<fflm_core::Error> for CliError {
    fn from(e: fflm_core::Error) -> Self {
        match &e {
            fflm_core::Error::BudgetExceeded { .. } => CliError::Budget(e.to_string()),
            fflm_core::Error::SweepFailure { source, .. }
                if matches!(**source, fflm_core::Error::BudgetExceeded { .. }) =>
            {
                CliError::Budget(e.to_string())
            }
            _ => CliError::Compute(e.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Compute(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            // clap renders its own usage text; the contract pins exit 1
            let _ = e.print();
            return ExitCode::from(1);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(CliError::Compute(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Budget(msg)) => {
            eprintln!("refused: {msg}");
            ExitCode::from(3)
        }
    }
}

fn check_q(q: u64) -> Result<(), CliError> {
    if !fflm_core::algebra::is_odd_prime(q) {
        return Err(CliError::Usage(format!("q must be an odd prime, got {q}")));
    }
    Ok(())
}

fn check_g(g: usize) -> Result<(), CliError> {
    if g < 1 {
        return Err(CliError::Usage("g must be >= 1".to_string()));
    }
    Ok(())
}

/// The moment conjecture is normalized for q = 1 (mod 4); everything stays
/// well-defined for q = 3 (mod 4), so comparison commands only warn.
fn warn_q_mod4(q: u64) {
    if q % 4 == 3 {
        eprintln!(
            "warning: q = {q} is 3 (mod 4); the moment conjecture is stated for q = 1 (mod 4), comparisons use the same X-factor normalization"
        );
    }
}

fn resolve_cache_dir(flag: &Option<PathBuf>) -> Option<PathBuf> {
    flag.clone()
        .or_else(|| std::env::var_os("FFLM_CACHE_DIR").map(PathBuf::from))
}

/// Loads the ensemble's L-polynomials from the cache when present; the
/// cached and recomputed paths yield identical downstream reports.
fn load_from_cache(
    q: u64,
    g: usize,
    cache_dir: &Option<PathBuf>,
) -> Result<Option<Vec<LPolynomial>>, CliError> {
    if let Some(dir) = resolve_cache_dir(cache_dir) {
        let file = cache::cache_file(&dir, q, g);
        if file.exists() {
            let loaded = cache::load(&file, q, g).map_err(CliError::Compute)?;
            let expected = count_primes(q, 2 * g + 1);
            if loaded.len() as u128 != expected {
                return Err(CliError::Compute(format!(
                    "cache {} holds {} records, ensemble has {expected}",
                    file.display(),
                    loaded.len()
                )));
            }
            return Ok(Some(loaded));
        }
    }
    Ok(None)
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.cmd {
        Cmd::Primes(a) => cmd_primes(a),
        Cmd::Lfun(a) => cmd_lfun(a),
        Cmd::Moments(a) => cmd_moments(a),
        Cmd::Euler(a) => cmd_euler(a),
        Cmd::Qpoly(a) => cmd_qpoly(a),
        Cmd::Ratios(a) => cmd_ratios(a),
        Cmd::Density(a) => cmd_density(a),
    }
}

fn cmd_primes(a: PrimesArgs) -> Result<(), CliError> {
    check_q(a.q)?;
    check_g(a.g)?;
    let mut t = Table::new("primes", vec!["q", "g", "degree", "num_primes"]);
    t.push(vec![
        Cell::UInt(a.q as u128),
        Cell::UInt(a.g as u128),
        Cell::UInt((2 * a.g + 1) as u128),
        Cell::UInt(count_primes(a.q, 2 * a.g + 1)),
    ]);
    let meta = json!({ "q": a.q, "g": a.g });
    emit(&t, a.output.format, a.output.out.as_deref(), meta)?;
    Ok(())
}

fn cmd_lfun(a: LfunArgs) -> Result<(), CliError> {
    check_q(a.q)?;
    check_g(a.g)?;
    let cfg = a.sweep.config();
    let lpolys = parallel_sweep(a.q, a.g, &cfg, l_coefficients).map_err(CliError::from)?;
    let dir = resolve_cache_dir(&a.sweep.cache_dir).unwrap_or_else(|| PathBuf::from("."));
    let file = cache::cache_file(&dir, a.q, a.g);
    cache::save(&file, &lpolys)?;
    let mut t = Table::new("lfun", vec!["q", "g", "num_primes", "cache_file"]);
    t.push(vec![
        Cell::UInt(a.q as u128),
        Cell::UInt(a.g as u128),
        Cell::UInt(lpolys.len() as u128),
        Cell::Text(file.display().to_string()),
    ]);
    let meta = json!({ "q": a.q, "g": a.g, "workers": a.sweep.workers });
    emit(&t, a.output.format, a.output.out.as_deref(), meta)?;
    Ok(())
}

fn cmd_moments(a: MomentsArgs) -> Result<(), CliError> {
    check_q(a.q)?;
    check_g(a.g)?;
    if a.k < 1 || a.cutoff < 1 {
        return Err(CliError::Usage("need k >= 1 and cutoff >= 1".to_string()));
    }
    warn_q_mod4(a.q);
    let cfg = a.sweep.config();
    let lpolys = load_from_cache(a.q, a.g, &a.sweep.cache_dir)?;
    let report = moment_sweep(a.q, a.g, a.k, a.weighted, &cfg, a.cutoff, lpolys.as_deref())?;
    let mut t = Table::new(
        "moments",
        vec![
            "q",
            "g",
            "k",
            "num_primes",
            "empirical",
            "conjecture",
            "ratio",
        ],
    );
    for row in &report.rows {
        t.push(vec![
            Cell::UInt(report.q as u128),
            Cell::UInt(report.g as u128),
            Cell::UInt(row.k as u128),
            Cell::UInt(report.num_primes),
            Cell::Float(row.empirical),
            Cell::Float(row.conjecture),
            Cell::Float(row.ratio),
        ]);
    }
    let series_order: Vec<u64> = report
        .rows
        .iter()
        .filter_map(|r| r.qk_meta.as_ref().map(|m| m.series_cap as u64))
        .collect();
    let meta = json!({
        "q": a.q, "g": a.g, "k_max": a.k, "weighted": a.weighted,
        "cutoff": a.cutoff, "series_order": series_order,
        "workers": a.sweep.workers,
        "cache": lpolys.is_some(),
        "precision": "empirical sums: exact integer coefficients evaluated in IEEE double; conjecture side: exact rational residue engine times the truncated A_k value",
    });
    emit(&t, a.output.format, a.output.out.as_deref(), meta)?;
    Ok(())
}

fn cmd_euler(a: EulerArgs) -> Result<(), CliError> {
    check_q(a.q)?;
    if a.k < 1 || a.cutoff < 1 {
        return Err(CliError::Usage("need k >= 1 and cutoff >= 1".to_string()));
    }
    let v = ak_value(a.k, a.q, a.cutoff);
    let mut t = Table::new("euler", vec!["k", "q", "cutoff", "value", "tail_estimate"]);
    t.push(vec![
        Cell::UInt(a.k as u128),
        Cell::UInt(a.q as u128),
        Cell::UInt(v.cutoff as u128),
        Cell::Float(v.value),
        Cell::Float(v.tail_estimate),
    ]);
    let meta = json!({ "k": a.k, "q": a.q, "cutoff": a.cutoff });
    emit(&t, a.output.format, a.output.out.as_deref(), meta)?;
    Ok(())
}

fn cmd_qpoly(a: QpolyArgs) -> Result<(), CliError> {
    check_q(a.q)?;
    if a.k < 1 || a.cutoff < 1 {
        return Err(CliError::Usage("need k >= 1 and cutoff >= 1".to_string()));
    }
    let qk = qk_polynomial(a.k, a.q, a.cutoff, a.order)?;
    let columns: Vec<String> = (0..=qk.degree()).map(|i| format!("c{i}")).collect();
    let mut t = Table::new_owned("qpoly", columns);
    t.headerless_csv = true;
    t.push(qk.coeffs_f64().into_iter().map(Cell::Float).collect());
    let meta = json!({
        "k": a.k, "q": a.q, "cutoff": a.cutoff,
        "order": qk.metadata().series_cap,
        "precision": qk.metadata().precision,
        "degree": qk.degree(),
    });
    emit(&t, a.output.format, a.output.out.as_deref(), meta)?;
    Ok(())
}

fn cmd_ratios(a: RatiosArgs) -> Result<(), CliError> {
    check_q(a.q)?;
    check_g(a.g)?;
    warn_q_mod4(a.q);
    let cfg = a.sweep.config();
    let lpolys = load_from_cache(a.q, a.g, &a.sweep.cache_dir)?;
    let mut t = Table::new(
        "ratios",
        vec![
            "alpha",
            "gamma",
            "q",
            "g",
            "empirical",
            "predicted",
            "ratio",
            "skipped_primes",
        ],
    );
    for &alpha in &a.alpha {
        for &gamma in &a.gamma {
            let row = ratio_sweep(alpha, gamma, a.q, a.g, &cfg, lpolys.as_deref())?;
            t.push(vec![
                Cell::Float(row.alpha),
                Cell::Float(row.gamma),
                Cell::UInt(row.q as u128),
                Cell::UInt(row.g as u128),
                Cell::Float(row.empirical),
                Cell::Float(row.predicted),
                Cell::Float(row.ratio),
                Cell::UInt(row.skipped_primes as u128),
            ]);
        }
    }
    let meta = json!({
        "q": a.q, "g": a.g, "alpha": a.alpha, "gamma": a.gamma,
        "workers": a.sweep.workers, "cache": lpolys.is_some(),
        "degeneracy_floor": 1e-12,
    });
    emit(&t, a.output.format, a.output.out.as_deref(), meta)?;
    Ok(())
}

fn cmd_density(a: DensityArgs) -> Result<(), CliError> {
    check_q(a.q)?;
    check_g(a.g)?;
    if a.bins < 1 {
        return Err(CliError::Usage("bins must be >= 1".to_string()));
    }
    warn_q_mod4(a.q);
    let cfg = a.sweep.config();
    let lpolys = load_from_cache(a.q, a.g, &a.sweep.cache_dir)?;
    let rep = density_histogram(a.q, a.g, a.bins, &cfg, lpolys.as_deref())?;
    let mut t = Table::new(
        "density",
        vec![
            "tau_lo",
            "tau_hi",
            "empirical_density",
            "kernel_paper",
            "kernel_symplectic",
        ],
    );
    for i in 0..rep.bins {
        t.push(vec![
            Cell::Float(rep.edges[i]),
            Cell::Float(rep.edges[i + 1]),
            Cell::Float(rep.empirical_density[i]),
            Cell::Float(rep.kernel_paper[i]),
            Cell::Float(rep.kernel_symplectic[i]),
        ]);
    }
    let (l2p, l2s) = (rep.l2_paper(), rep.l2_symplectic());
    let meta = json!({
        "q": a.q, "g": a.g, "bins": a.bins, "workers": a.sweep.workers,
        "cache": lpolys.is_some(),
        "num_primes": rep.num_primes as u64,
        "total_zeros": rep.total_zeros,
        "l2_paper_kernel": l2p,
        "l2_symplectic_kernel": l2s,
        "better_fit": if l2s <= l2p { "symplectic" } else { "paper" },
    });
    emit(&t, a.output.format, a.output.out.as_deref(), meta)?;
    Ok(())
}
