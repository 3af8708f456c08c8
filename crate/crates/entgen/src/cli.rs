//! Command-line front end: declarative JSON model configs, the five
//! analysis commands, and CSV/JSON emission.
//!
//! Contract highlights:
//! - exit codes encode the physics: `0` no generation, `3` generation,
//!   `4` boundary; `1` is reserved for input/usage errors and `2` for
//!   internal faults, so shell pipelines can branch on the verdict;
//! - machine-readable data goes to stdout only; anything human goes to
//!   stderr;
//! - identical seeds and flags give byte-identical output regardless of
//!   worker count (parallelism lives behind deterministic reductions);
//! - complex numbers in configs are `[re, im]` pairs.

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::baths::{
    BathMode, CorrelationModel, DeltaFamily, DeltaProfile, OUNoise, ThermalBath,
    WienerFieldModel,
};
use crate::coeffs::{BlockCoeffMatrix, EqualTimeCorr};
use crate::criterion::{decide, scan_t0, DecideOptions, Regime, Verdict};
use crate::dynamics::{dephasing_damping, dephasing_mc, dephasing_rk4, DephasingModel};
use crate::error::{EntgenError, Result};
use crate::oracle::{certify, OracleMode, OracleOptions, Sampling};
use crate::qlin::{cx, CMat};

/// Complex scalar in config files: `[re, im]`.
pub type ComplexPair = (f64, f64);
/// Complex matrix in config files: rows of `[re, im]` pairs.
pub type MatrixData = Vec<Vec<ComplexPair>>;

/// Top-level config document (schema v1).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelConfig {
    pub schema_version: u32,
    pub model: ModelSpec,
}

/// One bath mode of a thermal model.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModeData {
    pub omega: f64,
    pub c1: Vec<ComplexPair>,
    pub c2: Vec<ComplexPair>,
}

/// The model variants the CLI understands. Exactly one is present per
/// config (serde's tagged representation enforces that).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum ModelSpec {
    /// Memoryless coefficient blocks; `h` blocks optional (default zero).
    Markovian {
        k11: MatrixData,
        k12: MatrixData,
        k22: MatrixData,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        h11: Option<MatrixData>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        h12: Option<MatrixData>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        h22: Option<MatrixData>,
    },
    /// Thermal bosonic environment: discrete modes and inverse temperature.
    Thermal { modes: Vec<ModeData>, beta: f64 },
    /// Ornstein–Uhlenbeck dephasing noise.
    OuDephasing { epsilon: f64, omega_z: f64 },
    /// Wiener (integrated white noise) classical field, common bath.
    Wiener { mu: MatrixData, c: Vec<ComplexPair> },
    /// Bundled delta-approximant profile family.
    DeltaFamily { profile: String, epsilon: f64 },
    /// Raw 6×6 equal-time correlation matrix.
    CustomEqualTime { d: MatrixData },
}

// ---------------------------------------------------------------------------
// Config loading and model construction
// ---------------------------------------------------------------------------

fn cpx(p: ComplexPair) -> Complex64 {
    cx(p.0, p.1)
}

fn mat_from(data: &MatrixData, rows: usize, cols: usize, field: &str) -> Result<CMat> {
    if data.len() != rows {
        return Err(EntgenError::Config(format!(
            "{field}: expected {rows} rows, got {}",
            data.len()
        )));
    }
    for (i, row) in data.iter().enumerate() {
        if row.len() != cols {
            return Err(EntgenError::Config(format!(
                "{field}: row {i} has {} entries, expected {cols}",
                row.len()
            )));
        }
    }
    Ok(CMat::from_fn(rows, cols, |r, c| cpx(data[r][c])))
}

fn ket3_from(data: &[ComplexPair], field: &str) -> Result<[Complex64; 3]> {
    if data.len() != 3 {
        return Err(EntgenError::Config(format!(
            "{field}: expected 3 entries, got {}",
            data.len()
        )));
    }
    Ok([cpx(data[0]), cpx(data[1]), cpx(data[2])])
}

/// Load and schema-check a config file.
pub fn load_config(path: &Path) -> Result<ModelConfig> {
    let text = std::fs::read_to_string(path)?;
    let cfg: ModelConfig = serde_json::from_str(&text).map_err(|e| {
        EntgenError::Config(format!("{}: {e}", path.display()))
    })?;
    if cfg.schema_version != 1 {
        return Err(EntgenError::Config(format!(
            "{}: unsupported schema_version {} (expected 1)",
            path.display(),
            cfg.schema_version
        )));
    }
    Ok(cfg)
}

/// Build the coefficient blocks of a memoryless model spec.
fn markovian_coeffs(
    k11: &MatrixData,
    k12: &MatrixData,
    k22: &MatrixData,
    h11: &Option<MatrixData>,
    h12: &Option<MatrixData>,
    h22: &Option<MatrixData>,
) -> Result<BlockCoeffMatrix> {
    let zero = CMat::zeros(3, 3);
    let opt = |m: &Option<MatrixData>, field: &str| -> Result<CMat> {
        match m {
            Some(d) => mat_from(d, 3, 3, field),
            None => Ok(zero.clone()),
        }
    };
    BlockCoeffMatrix::new(
        mat_from(k11, 3, 3, "model.k11")?,
        mat_from(k12, 3, 3, "model.k12")?,
        mat_from(k22, 3, 3, "model.k22")?,
        opt(h11, "model.h11")?,
        opt(h12, "model.h12")?,
        opt(h22, "model.h22")?,
    )
}

/// Wiener model from its spec fields.
fn wiener_model(mu: &MatrixData, c: &[ComplexPair]) -> Result<WienerFieldModel> {
    WienerFieldModel::new(mat_from(mu, 3, 3, "model.mu")?, ket3_from(c, "model.c")?)
}

/// Equal-time correlation data of any non-memoryless model spec
/// (Wiener models are evaluated at start time 0).
pub fn equal_time_of(spec: &ModelSpec) -> Result<EqualTimeCorr> {
    match spec {
        ModelSpec::Markovian { .. } => Err(EntgenError::Config(
            "memoryless coefficient model has no equal-time correlation data".into(),
        )),
        ModelSpec::Thermal { modes, beta } => {
            let modes: Vec<BathMode> = modes
                .iter()
                .enumerate()
                .map(|(i, m)| {
                    Ok(BathMode {
                        omega: m.omega,
                        c1: ket3_from(&m.c1, &format!("model.modes[{i}].c1"))?,
                        c2: ket3_from(&m.c2, &format!("model.modes[{i}].c2"))?,
                    })
                })
                .collect::<Result<_>>()?;
            ThermalBath::new(modes, *beta)?.equal_time(0.0)
        }
        ModelSpec::OuDephasing { epsilon, omega_z } => {
            OUNoise::new(*epsilon, *omega_z)?.equal_time(0.0)
        }
        ModelSpec::Wiener { mu, c } => wiener_model(mu, c)?.equal_time(0.0),
        ModelSpec::DeltaFamily { profile, epsilon } => {
            DeltaFamily::bundled(DeltaProfile::from_name(profile)?, *epsilon)?
                .reference_equal_time()
        }
        ModelSpec::CustomEqualTime { d } => {
            EqualTimeCorr::new(mat_from(d, 6, 6, "model.d")?)
        }
    }
}

/// Coefficient blocks plus the natural regime of a model spec.
pub fn coeffs_of(spec: &ModelSpec) -> Result<(BlockCoeffMatrix, Regime)> {
    match spec {
        ModelSpec::Markovian { k11, k12, k22, h11, h12, h22 } => Ok((
            markovian_coeffs(k11, k12, k22, h11, h12, h22)?,
            Regime::Markovian,
        )),
        other => Ok((equal_time_of(other)?.as_coeffs(), Regime::NonMarkovian)),
    }
}

// ---------------------------------------------------------------------------
// Exit codes
// ---------------------------------------------------------------------------

/// Exit code for a decided verdict.
pub fn verdict_exit(v: Verdict) -> i32 {
    match v {
        Verdict::DoesNotGenerate => 0,
        Verdict::Generates => 3,
        Verdict::Boundary => 4,
    }
}

/// Exit code for an error: `1` for anything the user can fix (config,
/// model, dimensions, I/O), `2` for internal contract violations.
pub fn error_exit(e: &EntgenError) -> i32 {
    match e {
        EntgenError::Contract(_) => 2,
        _ => 1,
    }
}

// ---------------------------------------------------------------------------
// Command argument structs (clap derive)
// ---------------------------------------------------------------------------

/// Entanglement-generation analysis for two qubits in a common Gaussian
/// environment.
#[derive(Debug, Parser)]
#[command(name = "entgen", version, about)]
pub struct Cli {
    /// Cap the worker thread pool (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide entanglement generation for a model config.
    Check(CheckArgs),
    /// Brute-force certification by sampled product states.
    Oracle(OracleArgs),
    /// Sweep the decision over start times (Wiener models).
    ScanT0(ScanT0Args),
    /// Dephasing model: closed form vs integrator (vs Monte-Carlo).
    Dephase(DephaseArgs),
    /// Markov-limit sweep of a delta-approximant family.
    MarkovLimit(MarkovLimitArgs),
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    /// Model config (JSON, schema v1).
    pub config: PathBuf,
    /// Force a regime: `markovian` or `non_markovian` (default: the
    /// model's natural regime).
    #[arg(long)]
    pub regime: Option<String>,
    /// Optimizer multi-starts.
    #[arg(long, default_value_t = 64)]
    pub starts: usize,
    /// Additionally sweep an exhaustive n⁴ angle grid (certification runs).
    #[arg(long)]
    pub grid: Option<usize>,
    /// Emit the report as JSON (default).
    #[arg(long, conflicts_with = "csv")]
    pub json: bool,
    /// Emit the report as a one-row CSV.
    #[arg(long)]
    pub csv: bool,
    /// Seed for the deterministic start sequence.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Args)]
pub struct OracleArgs {
    /// Model config (JSON, schema v1).
    pub config: PathBuf,
    /// Expansion time step (default: documented per-regime choice).
    #[arg(long)]
    pub dt: Option<f64>,
    /// Use random product-state sampling with this many samples
    /// (default: hybrid grid + refinement).
    #[arg(long)]
    pub samples: Option<usize>,
    /// Seed for random sampling (required with --samples).
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Debug, Args)]
pub struct ScanT0Args {
    /// Wiener model config.
    pub config: PathBuf,
    /// Start-time grid as `start:stop:steps` (inclusive, evenly spaced).
    #[arg(long)]
    pub t0: String,
    /// Optimizer multi-starts per grid point.
    #[arg(long, default_value_t = 64)]
    pub starts: usize,
    /// Seed for the deterministic start sequence.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Args)]
pub struct DephaseArgs {
    /// Correlation times to sweep (comma separated).
    #[arg(long, value_delimiter = ',', required = true)]
    pub epsilon: Vec<f64>,
    /// Largest evolution time.
    #[arg(long, default_value_t = 5.0)]
    pub t: f64,
    /// Number of time intervals (rows = steps + 1, starting at t = 0).
    #[arg(long, default_value_t = 50)]
    pub steps: usize,
    /// Also run Monte-Carlo with this many trajectories (≥ 100).
    #[arg(long)]
    pub mc: Option<usize>,
    /// Seed for Monte-Carlo (required with --mc).
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Debug, Args)]
pub struct MarkovLimitArgs {
    /// Delta-family model config.
    pub config: PathBuf,
    /// Memory times ε to sweep (comma separated).
    #[arg(long, value_delimiter = ',', required = true)]
    pub eps: Vec<f64>,
    /// Optimizer multi-starts per ε.
    #[arg(long, default_value_t = 64)]
    pub starts: usize,
    /// Seed for the deterministic start sequence.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

// ---------------------------------------------------------------------------
// Commands
// ---------------------------------------------------------------------------

fn decide_options(starts: usize, grid: Option<usize>, seed: u64) -> Result<DecideOptions> {
    if let Some(0) = grid {
        return Err(EntgenError::Config("--grid needs n ≥ 1".into()));
    }
    Ok(DecideOptions { starts, grid_refine: grid, seed, ..DecideOptions::default() })
}

/// `check`: decide generation, print the report, exit with the verdict.
pub fn cmd_check(args: &CheckArgs) -> Result<i32> {
    let cfg = load_config(&args.config)?;
    let (coeffs, natural) = coeffs_of(&cfg.model)?;
    let regime = match &args.regime {
        Some(s) => s.parse::<Regime>()?,
        None => natural,
    };
    if regime == Regime::NonMarkovian && !coeffs.is_purely_dissipative() {
        return Err(EntgenError::Config(
            "finite-memory analysis takes purely dissipative data; this model \
             carries Hamiltonian blocks — drop them or use --regime markovian"
                .into(),
        ));
    }
    let opts = decide_options(args.starts, args.grid, args.seed)?;
    let report = decide(&coeffs, regime, &opts)?;

    if args.csv {
        println!("value,verdict,regime,decision_tol,starts_used,converged,psd_certificate");
        println!(
            "{:.17e},{},{},{:.3e},{},{},{}",
            report.value,
            report.verdict.as_str(),
            report.regime.as_str(),
            report.decision_tol,
            report.starts_used,
            report.converged,
            report.psd_certificate
        );
    } else {
        println!("{}", serde_json::to_string_pretty(&report).expect("report serializes"));
    }
    Ok(verdict_exit(report.verdict))
}

/// `oracle`: brute-force certification, JSON report, verdict exit code.
pub fn cmd_oracle(args: &OracleArgs) -> Result<i32> {
    let cfg = load_config(&args.config)?;
    let (coeffs, regime) = coeffs_of(&cfg.model)?;
    let sampling = match args.samples {
        Some(0) => {
            return Err(EntgenError::Config("--samples needs n ≥ 1".into()));
        }
        Some(n) => match args.seed {
            Some(seed) => Sampling::Random { n_samples: n, seed },
            None => {
                return Err(EntgenError::Config(
                    "--samples draws random states; pass --seed for reproducibility"
                        .into(),
                ));
            }
        },
        None => Sampling::Hybrid,
    };
    let opts = OracleOptions { sampling, dt: args.dt, mode: OracleMode::FiniteStep };
    let report = certify(&coeffs, regime, &opts)?;
    println!("{}", serde_json::to_string_pretty(&report).expect("report serializes"));
    Ok(verdict_exit(report.verdict))
}

/// Parse `start:stop:steps` into an inclusive evenly spaced grid.
fn parse_t0_grid(spec: &str) -> Result<Vec<f64>> {
    let parts: Vec<&str> = spec.split(':').collect();
    if parts.len() != 3 {
        return Err(EntgenError::Config(format!(
            "--t0 expects start:stop:steps, got `{spec}`"
        )));
    }
    let start: f64 = parts[0]
        .parse()
        .map_err(|_| EntgenError::Config(format!("--t0 start `{}` is not a number", parts[0])))?;
    let stop: f64 = parts[1]
        .parse()
        .map_err(|_| EntgenError::Config(format!("--t0 stop `{}` is not a number", parts[1])))?;
    let steps: usize = parts[2]
        .parse()
        .map_err(|_| EntgenError::Config(format!("--t0 steps `{}` is not a count", parts[2])))?;
    if steps == 0 {
        return Err(EntgenError::Config("--t0 steps must be ≥ 1".into()));
    }
    if !start.is_finite() || !stop.is_finite() || start < 0.0 || stop < start {
        return Err(EntgenError::Config(format!(
            "--t0 range must satisfy 0 ≤ start ≤ stop, got {start}:{stop}"
        )));
    }
    if steps == 1 {
        return Ok(vec![start]);
    }
    let h = (stop - start) / (steps - 1) as f64;
    Ok((0..steps).map(|i| start + h * i as f64).collect())
}

/// `scan-t0`: decision sweep over start times for a Wiener model.
pub fn cmd_scan_t0(args: &ScanT0Args) -> Result<i32> {
    let cfg = load_config(&args.config)?;
    let model = match &cfg.model {
        ModelSpec::Wiener { mu, c } => wiener_model(mu, c)?,
        _ => {
            return Err(EntgenError::Config(
                "scan-t0 needs a wiener model config (Δ(t₀) is affine in t₀ only \
                 for the integrated-noise field)"
                    .into(),
            ));
        }
    };
    let grid = parse_t0_grid(&args.t0)?;
    let opts = decide_options(args.starts, None, args.seed)?;
    let rows = scan_t0(&model, &grid, &opts)?;

    println!("t0,value,verdict");
    for (t0, report) in &rows {
        println!("{t0:.12e},{:.17e},{}", report.value, report.verdict.as_str());
    }
    Ok(0)
}

/// `dephase`: damping factor from the closed form, the integrator, and
/// optionally Monte-Carlo, per ε and time point.
pub fn cmd_dephase(args: &DephaseArgs) -> Result<i32> {
    if args.epsilon.is_empty() {
        return Err(EntgenError::Config("--epsilon needs at least one value".into()));
    }
    for &e in &args.epsilon {
        if !(e > 0.0) || !e.is_finite() {
            return Err(EntgenError::Config(format!(
                "--epsilon values must be finite and > 0, got {e}"
            )));
        }
    }
    if !(args.t > 0.0) || !args.t.is_finite() {
        return Err(EntgenError::Config(format!(
            "--t must be finite and > 0, got {}",
            args.t
        )));
    }
    if args.steps == 0 {
        return Err(EntgenError::Config("--steps must be ≥ 1".into()));
    }
    let mc_traj = match (args.mc, args.seed) {
        (Some(n), _) if n < 100 => {
            return Err(EntgenError::Config(format!(
                "--mc needs at least 100 trajectories for a meaningful standard \
                 error, got {n}"
            )));
        }
        (Some(n), Some(seed)) => Some((n, seed)),
        (Some(_), None) => {
            return Err(EntgenError::Config(
                "--mc draws random trajectories; pass --seed for reproducibility"
                    .into(),
            ));
        }
        (None, _) => None,
    };

    // Plus state: coherence 1/2, so the damping factor reads off directly.
    let rho0 = CMat::from_rows(&[
        vec![cx(0.5, 0.0), cx(0.5, 0.0)],
        vec![cx(0.5, 0.0), cx(0.5, 0.0)],
    ])
    .expect("static state");

    match mc_traj {
        Some(_) => println!("epsilon,t,exact,rk4,deviation,mc,mc_stderr"),
        None => println!("epsilon,t,exact,rk4,deviation"),
    }
    for &eps in &args.epsilon {
        let model = DephasingModel::new(eps, 0.0)?;
        for i in 0..=args.steps {
            let t = args.t * i as f64 / args.steps as f64;
            let exact = dephasing_damping(eps, t);
            let evolved = dephasing_rk4(&model, &rho0, t)?;
            let rk4 = evolved[(0, 1)].re / 0.5;
            let deviation = (exact - rk4).abs();
            match mc_traj {
                Some((n, seed)) => {
                    let mc = dephasing_mc(&model, &rho0, t, n, seed)?;
                    println!(
                        "{eps:.12e},{t:.12e},{exact:.17e},{rk4:.17e},{deviation:.3e},{:.17e},{:.3e}",
                        mc.damping.re, mc.stderr_re
                    );
                }
                None => {
                    println!(
                        "{eps:.12e},{t:.12e},{exact:.17e},{rk4:.17e},{deviation:.3e}"
                    );
                }
            }
        }
    }
    Ok(0)
}

/// `markov-limit`: sweep ε, reporting the equal-time weight `d_ε(0)` and
/// the criterion value of the reference common-bath model scaled by it —
/// the 1/ε divergence made visible.
pub fn cmd_markov_limit(args: &MarkovLimitArgs) -> Result<i32> {
    let cfg = load_config(&args.config)?;
    let family = match &cfg.model {
        ModelSpec::DeltaFamily { profile, epsilon } => {
            DeltaFamily::bundled(DeltaProfile::from_name(profile)?, *epsilon)?
        }
        _ => {
            return Err(EntgenError::Config(
                "markov-limit needs a delta_family model config".into(),
            ));
        }
    };
    if args.eps.is_empty() {
        return Err(EntgenError::Config("--eps needs at least one value".into()));
    }
    let opts = decide_options(args.starts, None, args.seed)?;

    println!("epsilon,d_eps_at_0,criterion_value");
    for &eps in &args.eps {
        let fam = family.with_epsilon(eps)?;
        let d0 = fam.value(0.0);
        let d = fam.reference_equal_time()?;
        let report = crate::criterion::decide_equal_time(&d, &opts)?;
        println!("{eps:.12e},{d0:.17e},{:.17e}", report.value);
    }
    Ok(0)
}

// ---------------------------------------------------------------------------
// Entry point
// ---------------------------------------------------------------------------

/// Run a parsed command.
pub fn dispatch(cli: &Cli) -> Result<i32> {
    if let Some(n) = cli.threads {
        if n == 0 {
            return Err(EntgenError::Config("--threads must be ≥ 1".into()));
        }
        // Ignore the error if a pool already exists (e.g. repeated calls
        // in-process); determinism never depends on the worker count.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    match &cli.command {
        Command::Check(args) => cmd_check(args),
        Command::Oracle(args) => cmd_oracle(args),
        Command::ScanT0(args) => cmd_scan_t0(args),
        Command::Dephase(args) => cmd_dephase(args),
        Command::MarkovLimit(args) => cmd_markov_limit(args),
    }
}

/// Parse argv and run; returns the process exit code.
///
/// Malformed command lines exit 1 (input error), like every other bad
/// input; `--help`/`--version` print and exit 0.
pub fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            error_exit(&e)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zeros3() -> MatrixData {
        vec![vec![(0.0, 0.0); 3]; 3]
    }

    #[test]
    fn configs_round_trip_through_serialization() {
        let configs = vec![
            ModelConfig {
                schema_version: 1,
                model: ModelSpec::Markovian {
                    k11: vec![
                        vec![(1.0, 0.0), (0.0, 0.5), (0.0, 0.0)],
                        vec![(0.0, -0.5), (1.0, 0.0), (0.0, 0.0)],
                        vec![(0.0, 0.0), (0.0, 0.0), (0.25, 0.0)],
                    ],
                    k12: zeros3(),
                    k22: zeros3(),
                    h11: None,
                    h12: Some(zeros3()),
                    h22: None,
                },
            },
            ModelConfig {
                schema_version: 1,
                model: ModelSpec::Thermal {
                    modes: vec![ModeData {
                        omega: 1.5,
                        c1: vec![(1.0, 0.0), (0.0, 1.0), (0.0, 0.0)],
                        c2: vec![(0.5, 0.0), (0.0, 0.0), (0.0, -0.5)],
                    }],
                    beta: 2.0,
                },
            },
            ModelConfig {
                schema_version: 1,
                model: ModelSpec::OuDephasing { epsilon: 0.5, omega_z: 0.7 },
            },
            ModelConfig {
                schema_version: 1,
                model: ModelSpec::Wiener {
                    mu: zeros3(),
                    c: vec![(1.0, 0.0), (0.0, 0.0), (0.0, 0.0)],
                },
            },
            ModelConfig {
                schema_version: 1,
                model: ModelSpec::DeltaFamily {
                    profile: "gaussian".into(),
                    epsilon: 0.25,
                },
            },
        ];
        for cfg in configs {
            let text = serde_json::to_string(&cfg).unwrap();
            let back: ModelConfig = serde_json::from_str(&text).unwrap();
            assert_eq!(back, cfg);
        }
    }

    #[test]
    fn matrix_parsing_reports_shape_mismatches() {
        let short_row: MatrixData =
            vec![vec![(0.0, 0.0); 3], vec![(0.0, 0.0); 2], vec![(0.0, 0.0); 3]];
        let err = mat_from(&short_row, 3, 3, "model.k11").unwrap_err();
        assert!(err.to_string().contains("model.k11"));
        assert!(err.to_string().contains("row 1"));

        let wrong_rows: MatrixData = vec![vec![(0.0, 0.0); 3]; 2];
        assert!(mat_from(&wrong_rows, 3, 3, "model.k22").is_err());
        assert!(ket3_from(&[(1.0, 0.0)], "model.c").is_err());
    }

    #[test]
    fn start_time_grids_parse_and_validate() {
        assert_eq!(parse_t0_grid("0:1:5").unwrap(), vec![0.0, 0.25, 0.5, 0.75, 1.0]);
        assert_eq!(parse_t0_grid("2:2:1").unwrap(), vec![2.0]);
        assert_eq!(parse_t0_grid("0.5:0.5:3").unwrap().len(), 3);
        for bad in ["0:1", "0:1:0", "1:0:3", "-1:1:3", "a:1:3", "0:b:3", "0:1:c"] {
            assert!(parse_t0_grid(bad).is_err(), "`{bad}` parsed");
        }
    }

    #[test]
    fn exit_codes_follow_the_contract() {
        assert_eq!(verdict_exit(Verdict::DoesNotGenerate), 0);
        assert_eq!(verdict_exit(Verdict::Generates), 3);
        assert_eq!(verdict_exit(Verdict::Boundary), 4);
        assert_eq!(error_exit(&EntgenError::Config("x".into())), 1);
        assert_eq!(error_exit(&EntgenError::InvalidModel("x".into())), 1);
        assert_eq!(error_exit(&EntgenError::Dimension("x".into())), 1);
        assert_eq!(error_exit(&EntgenError::Contract("x".into())), 2);
    }

    #[test]
    fn natural_regimes_follow_the_model_kind() {
        let spec = ModelSpec::OuDephasing { epsilon: 0.5, omega_z: 0.0 };
        let (k, regime) = coeffs_of(&spec).unwrap();
        assert_eq!(regime, Regime::NonMarkovian);
        assert!(k.is_purely_dissipative());

        let spec = ModelSpec::Markovian {
            k11: vec![
                vec![(1.0, 0.0), (0.0, 0.0), (0.0, 0.0)],
                vec![(0.0, 0.0), (1.0, 0.0), (0.0, 0.0)],
                vec![(0.0, 0.0), (0.0, 0.0), (1.0, 0.0)],
            ],
            k12: zeros3(),
            k22: zeros3(),
            h11: None,
            h12: None,
            h22: None,
        };
        let (_, regime) = coeffs_of(&spec).unwrap();
        assert_eq!(regime, Regime::Markovian);
        assert!(equal_time_of(&spec).is_err());
    }
}
