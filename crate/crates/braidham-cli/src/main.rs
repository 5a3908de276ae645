//! Command-line front end for the braidham library.
//!
//! Four commands: `derive` runs the full θ = −π/2 derivation for one
//! (m, p) and reports every residual; `sweep` repeats it over seeded random
//! samples and keeps the worst residual per check; `braid-word` evaluates a
//! word over the anyon generator pair; `solve-b` searches numerically for a
//! braid partner of the diagonal generator a(θ).
//!
//! Exit codes: 0 when all checks pass (or a partner is found), 1 when a
//! check fails or the solver comes back empty, 2 on any input problem.
//! Reports go to standard output (or --out); diagnostics go to standard
//! error, gated by BRAIDHAM_LOG ∈ {quiet, info, debug}.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use braidham::braid::{
    anyon_a, anyon_b, anyon_pair, evaluate_word, solve_b_given_a, BraidWord, SolverConfig,
};
use braidham::hamiltonians::{DiracParams, Momentum};
use braidham::matrix::{
    frobenius_distance, matrix_order, ComplexMatrix, Tolerance, DEFAULT_ABS_TOL, DEFAULT_MAX_ORDER,
};
use braidham::pipeline::{
    run_derivation, sweep, DerivationReport, SweepConfig, SweepSummary, STRICT_THETA,
};
use braidham::report::to_json_string;

#[derive(Parser)]
#[command(
    name = "braidham",
    version,
    about = "Braid-group generator pairs from q-deformed Dirac Hamiltonians, with every \
             derivation step checked numerically"
)]
struct Cli {
    /// Config file of key=value lines mirroring the long flag names
    /// ('#' starts a comment); explicit flags override file values
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,

    /// Report format
    #[arg(long, global = true, value_enum)]
    format: Option<OutputFormat>,

    /// Write the report to this file instead of standard output
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the full derivation for one (m, p) at θ = −π/2 and check every step
    Derive(DeriveArgs),
    /// Run the derivation over seeded random (m, p) samples and report the
    /// worst residual per check
    Sweep(SweepArgs),
    /// Evaluate a word over the anyon pair (a(θ), b) and report its group order
    BraidWord(BraidWordArgs),
    /// Numerically search for a braid partner b of the diagonal generator a(θ)
    SolveB(SolveBArgs),
}

#[derive(Args)]
struct DeriveArgs {
    /// Particle mass in natural units (ħ = c = 1)
    #[arg(long, allow_negative_numbers = true)]
    mass: Option<f64>,

    /// Momentum x component
    #[arg(long, allow_negative_numbers = true)]
    px: Option<f64>,

    /// Momentum y component
    #[arg(long, allow_negative_numbers = true)]
    py: Option<f64>,

    /// Momentum z component
    #[arg(long, allow_negative_numbers = true)]
    pz: Option<f64>,

    /// Deformation angle in radians. Only the default −π/2 is accepted:
    /// that is the angle whose generators match the anyon description of
    /// the ν = 1/2 fractional quantum Hall state
    #[arg(long, allow_negative_numbers = true)]
    theta: Option<f64>,

    /// Absolute tolerance on every residual
    #[arg(long)]
    tol: Option<f64>,
}

#[derive(Args)]
struct SweepArgs {
    /// Number of random (m, p) samples
    #[arg(long)]
    samples: Option<u64>,

    /// RNG seed; identical seeds give byte-identical reports
    #[arg(long)]
    seed: Option<u64>,

    /// Absolute tolerance on every residual
    #[arg(long)]
    tol: Option<f64>,
}

#[derive(Args)]
struct BraidWordArgs {
    /// Word over {a, b, A, B}: lowercase generators, uppercase inverses,
    /// whitespace ignored
    #[arg(long)]
    word: Option<String>,

    /// Angle of the diagonal generator a(θ), radians
    #[arg(long, allow_negative_numbers = true)]
    theta: Option<f64>,
}

#[derive(Args)]
struct SolveBArgs {
    /// Angle of the diagonal generator a(θ), radians
    #[arg(long, allow_negative_numbers = true)]
    theta: Option<f64>,

    /// RNG seed for the multi-start search
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Text,
    Json,
}

/// Key=value pairs from the optional config file.
struct FileConfig(HashMap<String, String>);

const CONFIG_KEYS: &[&str] = &[
    "mass", "px", "py", "pz", "theta", "tol", "samples", "seed", "word", "format", "out",
];

impl FileConfig {
    fn empty() -> Self {
        Self(HashMap::new())
    }

    fn load(path: &Path) -> Result<Self, String> {
        let text = fs::read_to_string(path)
            .map_err(|e| format!("cannot read config file {}: {e}", path.display()))?;
        let mut map = HashMap::new();
        for (index, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                format!(
                    "config line {}: expected key=value, got '{line}'",
                    index + 1
                )
            })?;
            let key = key.trim();
            if !CONFIG_KEYS.contains(&key) {
                return Err(format!("config line {}: unknown key '{key}'", index + 1));
            }
            map.insert(key.to_string(), value.trim().to_string());
        }
        Ok(Self(map))
    }

    fn f64(&self, key: &str) -> Result<Option<f64>, String> {
        self.0
            .get(key)
            .map(|v| {
                v.parse::<f64>()
                    .map_err(|_| format!("config key '{key}': cannot parse '{v}' as a number"))
            })
            .transpose()
    }

    fn u64(&self, key: &str) -> Result<Option<u64>, String> {
        self.0
            .get(key)
            .map(|v| {
                v.parse::<u64>()
                    .map_err(|_| format!("config key '{key}': cannot parse '{v}' as an integer"))
            })
            .transpose()
    }

    fn string(&self, key: &str) -> Option<String> {
        self.0.get(key).cloned()
    }
}

fn init_logging() {
    let level = match std::env::var("BRAIDHAM_LOG").ok().as_deref() {
        None | Some("quiet") => log::LevelFilter::Off,
        Some("info") => log::LevelFilter::Info,
        Some("debug") => log::LevelFilter::Debug,
        Some(other) => {
            eprintln!("warning: unknown BRAIDHAM_LOG value '{other}', defaulting to quiet");
            log::LevelFilter::Off
        }
    };
    env_logger::Builder::new()
        .filter_level(level)
        .format_timestamp(None)
        .init();
}

fn main() -> ExitCode {
    init_logging();
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> Result<bool, String> {
    let file = match &cli.config {
        Some(path) => FileConfig::load(path)?,
        None => FileConfig::empty(),
    };
    let format = match cli.format {
        Some(f) => f,
        None => match file.string("format").as_deref() {
            Some("text") | None => OutputFormat::Text,
            Some("json") => OutputFormat::Json,
            Some(other) => {
                return Err(format!(
                    "config key 'format': expected text or json, got '{other}'"
                ))
            }
        },
    };
    let out = cli
        .out
        .clone()
        .or_else(|| file.string("out").map(PathBuf::from));

    match &cli.command {
        Command::Derive(args) => cmd_derive(args, &file, format, out.as_deref()),
        Command::Sweep(args) => cmd_sweep(args, &file, format, out.as_deref()),
        Command::BraidWord(args) => cmd_braid_word(args, &file, format, out.as_deref()),
        Command::SolveB(args) => cmd_solve_b(args, &file, format, out.as_deref()),
    }
}

fn resolve_tol(flag: Option<f64>, file: &FileConfig) -> Result<Tolerance, String> {
    let value = match flag {
        Some(v) => v,
        None => file.f64("tol")?.unwrap_or(DEFAULT_ABS_TOL),
    };
    Tolerance::new(value).map_err(|e| e.to_string())
}

fn emit(out: Option<&Path>, content: &str) -> Result<(), String> {
    match out {
        Some(path) => fs::write(path, content)
            .map_err(|e| format!("cannot write report to {}: {e}", path.display())),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn cmd_derive(
    args: &DeriveArgs,
    file: &FileConfig,
    format: OutputFormat,
    out: Option<&Path>,
) -> Result<bool, String> {
    let mass = args
        .mass
        .map_or_else(|| file.f64("mass"), |v| Ok(Some(v)))?
        .ok_or("missing --mass (or mass= in the config file)")?;
    let px = args
        .px
        .map_or_else(|| file.f64("px"), |v| Ok(Some(v)))?
        .unwrap_or(0.0);
    let py = args
        .py
        .map_or_else(|| file.f64("py"), |v| Ok(Some(v)))?
        .unwrap_or(0.0);
    let pz = args
        .pz
        .map_or_else(|| file.f64("pz"), |v| Ok(Some(v)))?
        .unwrap_or(0.0);
    let theta = args
        .theta
        .map_or_else(|| file.f64("theta"), |v| Ok(Some(v)))?
        .unwrap_or(STRICT_THETA);
    let tol = resolve_tol(args.tol, file)?;

    let momentum = Momentum::new(px, py, pz).map_err(|e| e.to_string())?;
    let params = DiracParams::new(mass, momentum).map_err(|e| e.to_string())?;
    log::info!("derive: m={mass} p=({px}, {py}, {pz}) theta={theta}");

    let report = run_derivation(&params, theta, &tol).map_err(|e| e.to_string())?;
    log::debug!(
        "derive: max residual {:.3e}, pass {}",
        report.max_residual(),
        report.pass
    );

    let rendered = match format {
        OutputFormat::Json => json_line(&report)?,
        OutputFormat::Text => render_derive_text(&report),
    };
    emit(out, &rendered)?;
    Ok(report.pass)
}

fn cmd_sweep(
    args: &SweepArgs,
    file: &FileConfig,
    format: OutputFormat,
    out: Option<&Path>,
) -> Result<bool, String> {
    let samples = match args.samples {
        Some(v) => v,
        None => file.u64("samples")?.unwrap_or(1000),
    };
    let seed = match args.seed {
        Some(v) => v,
        None => file.u64("seed")?.unwrap_or(0),
    };
    let tol = resolve_tol(args.tol, file)?;
    log::info!("sweep: samples={samples} seed={seed}");

    let cfg = SweepConfig {
        samples: samples as usize,
        rng_seed: seed,
        tol,
    };
    let summary = sweep(&cfg).map_err(|e| e.to_string())?;
    log::debug!("sweep: pass {}", summary.pass);

    let rendered = match format {
        OutputFormat::Json => json_line(&summary)?,
        OutputFormat::Text => render_sweep_text(&summary),
    };
    emit(out, &rendered)?;
    Ok(summary.pass)
}

#[derive(Serialize)]
struct WordInputs<'a> {
    word: &'a str,
    theta: f64,
}

#[derive(Serialize)]
struct WordReport<'a> {
    inputs: WordInputs<'a>,
    matrix: &'a ComplexMatrix,
    order: Option<usize>,
    minus_identity_powers: &'a [usize],
}

fn cmd_braid_word(
    args: &BraidWordArgs,
    file: &FileConfig,
    format: OutputFormat,
    out: Option<&Path>,
) -> Result<bool, String> {
    let word_text = args
        .word
        .clone()
        .or_else(|| file.string("word"))
        .ok_or("missing --word (or word= in the config file)")?;
    let theta = args
        .theta
        .map_or_else(|| file.f64("theta"), |v| Ok(Some(v)))?
        .unwrap_or(STRICT_THETA);

    let word = BraidWord::parse(&word_text).map_err(|e| e.to_string())?;
    let pair = anyon_pair(theta);
    let matrix = evaluate_word(&pair, &word);
    let order = matrix_order(&matrix, DEFAULT_MAX_ORDER, &Tolerance::default())
        .map_err(|e| e.to_string())?;
    log::info!(
        "braid-word: '{word_text}' evaluated, order {:?}",
        order.order
    );

    let report = WordReport {
        inputs: WordInputs {
            word: &word_text,
            theta,
        },
        matrix: &matrix,
        order: order.order,
        minus_identity_powers: &order.minus_identity_powers,
    };
    let rendered = match format {
        OutputFormat::Json => json_line(&report)?,
        OutputFormat::Text => render_word_text(&report),
    };
    emit(out, &rendered)?;
    Ok(true)
}

#[derive(Serialize)]
struct SolveInputs {
    theta: f64,
    seed: u64,
}

#[derive(Serialize)]
struct SolveReport<'a> {
    inputs: SolveInputs,
    found: bool,
    b: Option<&'a ComplexMatrix>,
    residual: Option<f64>,
    /// Frobenius distance from the fixed partner (1/√2)[[1, i], [i, 1]]
    fixed_partner_distance: Option<f64>,
    matches_fixed_partner: Option<bool>,
}

fn cmd_solve_b(
    args: &SolveBArgs,
    file: &FileConfig,
    format: OutputFormat,
    out: Option<&Path>,
) -> Result<bool, String> {
    let theta = args
        .theta
        .map_or_else(|| file.f64("theta"), |v| Ok(Some(v)))?
        .unwrap_or(STRICT_THETA);
    let seed = match args.seed {
        Some(v) => v,
        None => file.u64("seed")?.unwrap_or(0),
    };

    let cfg = SolverConfig {
        rng_seed: seed,
        ..SolverConfig::default()
    };
    log::info!("solve-b: theta={theta} seed={seed}");
    let found = solve_b_given_a(&anyon_a(theta), &cfg).map_err(|e| e.to_string())?;

    let (report, success) = match &found {
        Some(partner) => {
            let distance = frobenius_distance(&partner.b, &anyon_b())
                .expect("partner and fixed b share dimensions");
            log::debug!(
                "solve-b: residual {:.3e}, distance from fixed partner {:.3e}",
                partner.residual,
                distance
            );
            (
                SolveReport {
                    inputs: SolveInputs { theta, seed },
                    found: true,
                    b: Some(&partner.b),
                    residual: Some(partner.residual),
                    fixed_partner_distance: Some(distance),
                    matches_fixed_partner: Some(distance < 1e-6),
                },
                true,
            )
        }
        None => (
            SolveReport {
                inputs: SolveInputs { theta, seed },
                found: false,
                b: None,
                residual: None,
                fixed_partner_distance: None,
                matches_fixed_partner: None,
            },
            false,
        ),
    };

    let rendered = match format {
        OutputFormat::Json => json_line(&report)?,
        OutputFormat::Text => render_solve_text(&report),
    };
    emit(out, &rendered)?;
    Ok(success)
}

fn json_line<T: Serialize>(value: &T) -> Result<String, String> {
    to_json_string(value)
        .map(|mut s| {
            s.push('\n');
            s
        })
        .map_err(|e| format!("cannot serialize report: {e}"))
}

fn render_derive_text(report: &DerivationReport) -> String {
    let mut s = String::new();
    let [px, py, pz] = report.inputs.p;
    let _ = writeln!(
        s,
        "inputs: m={} p=({}, {}, {}) theta={}",
        report.inputs.m, px, py, pz, report.inputs.theta
    );
    let _ = writeln!(s, "checks:");
    for check in &report.checks {
        let _ = writeln!(
            s,
            "  {:<20} residual {:>12.6e}  {}",
            check.name,
            check.residual,
            verdict(check.pass)
        );
    }
    let _ = writeln!(
        s,
        "orders: a={} b={} (product r1*r2: {})",
        order_text(report.orders.0),
        order_text(report.orders.1),
        order_text(report.r1_r2_order)
    );
    let d = &report.decomposability;
    let _ = writeln!(
        s,
        "decomposability residuals: r1_left={:.6} r1_right={:.6} r2_left={:.6} r2_right={:.6}",
        d.r1_left, d.r1_right, d.r2_left, d.r2_right
    );
    let _ = writeln!(s, "pass: {}", report.pass);
    s
}

fn render_sweep_text(summary: &SweepSummary) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        "sweep: samples={} seed={} theta={}",
        summary.inputs.samples, summary.inputs.seed, summary.inputs.theta
    );
    let _ = writeln!(s, "worst residual per check:");
    for check in &summary.checks {
        let _ = writeln!(
            s,
            "  {:<20} max residual {:>12.6e}  {}",
            check.name,
            check.max_residual,
            verdict(check.pass)
        );
    }
    let _ = writeln!(s, "pass: {}", summary.pass);
    s
}

fn render_word_text(report: &WordReport) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        "word: {} (theta={})",
        report.inputs.word, report.inputs.theta
    );
    let _ = writeln!(s, "matrix:");
    let _ = write!(s, "{}", report.matrix);
    let _ = writeln!(s, "order: {}", order_text(report.order));
    if !report.minus_identity_powers.is_empty() {
        let powers: Vec<String> = report
            .minus_identity_powers
            .iter()
            .map(usize::to_string)
            .collect();
        let _ = writeln!(s, "powers equal to -identity: {}", powers.join(", "));
    }
    s
}

fn render_solve_text(report: &SolveReport) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        "solve-b: theta={} seed={}",
        report.inputs.theta, report.inputs.seed
    );
    match (report.b, report.residual) {
        (Some(b), Some(residual)) => {
            let _ = writeln!(s, "found b:");
            let _ = write!(s, "{b}");
            let _ = writeln!(s, "braid residual: {residual:.6e}");
            if let (Some(distance), Some(matches)) =
                (report.fixed_partner_distance, report.matches_fixed_partner)
            {
                let _ = writeln!(
                    s,
                    "distance from fixed partner: {distance:.6e} ({})",
                    if matches {
                        "same matrix"
                    } else {
                        "different solution"
                    }
                );
            }
        }
        _ => {
            let _ = writeln!(s, "no partner found within the restart budget");
        }
    }
    s
}

fn verdict(pass: bool) -> &'static str {
    if pass {
        "pass"
    } else {
        "FAIL"
    }
}

fn order_text(order: Option<usize>) -> String {
    match order {
        Some(n) => n.to_string(),
        None => "none".to_string(),
    }
}
