//! Command-line front end: evaluate propositions on finite information
//! frames, run seeded measurement experiments, print classical truth tables,
//! and spot-check probability assignments over random bases.
//!
//! Results go to stdout; diagnostics go to stderr prefixed with a stable
//! `error[Tag]:` marker. Exit codes: 0 success, 1 a requested check found a
//! violation, 2 formula parse error (including unknown atoms), 3 invalid
//! frame specifier or frame file, 4 invalid experiment or check
//! configuration, 5 truth-table atom budget exceeded.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use iqlogic_core::gleason::{
    born_assignment, check_additivity, random_orthonormal_basis, random_state,
};
use iqlogic_core::kripke::leaf_world_name;
use iqlogic_core::logic;
use iqlogic_core::rng;
use iqlogic_core::{
    run_experiment, ExperimentReport, FrameSpec, KripkeModel, SampleSpace, StateVector,
    DEFAULT_MAX_DENOMINATOR,
};
use serde::Deserialize;

const EXIT_VIOLATION: u8 = 1;
const EXIT_PARSE: u8 = 2;
const EXIT_FRAME: u8 = 3;
const EXIT_CONFIG: u8 = 4;
const EXIT_BUDGET: u8 = 5;

/// Largest outcome count accepted for built-in frame specifiers; frame
/// construction closes the order relation with a cubic pass, so this keeps
/// a typo like `measurement:999999` from hanging the terminal.
const MAX_BUILTIN_OUTCOMES: usize = 256;

/// Most atoms a truth table will enumerate (2^20 rows ~ 1M lines).
const MAX_TABLE_ATOMS: usize = 20;

#[derive(Parser)]
#[command(
    name = "iqlogic",
    version,
    about = "Evaluate measurement propositions on finite frames and run seeded Born-rule experiments"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a formula on a frame and print true, false or undecided
    Eval {
        /// Formula text, e.g. "a1 | a2" or "~(~~a1 & ~~a2)"
        formula: String,
        /// Frame: "measurement:N", "leaf:n:N" (evaluate at the n-th outcome
        /// world, 1-based), "pihc", or a path to a frame JSON file
        #[arg(long)]
        frame: String,
    },
    /// Run a seeded measurement experiment described by a JSON config file
    Measure {
        /// Config with amplitudes [[re,im],..], trials, seed and optional
        /// labels, max_denominator, output path
        #[arg(long)]
        config: PathBuf,
    },
    /// Print the classical truth table of a formula and a one-hot summary
    Truthtable {
        /// Formula text over at most 20 atoms
        formula: String,
    },
    /// Sample random (state, basis) pairs and verify that basis
    /// probabilities sum to one; prints a JSON summary
    GleasonCheck {
        /// Number of (state, basis) pairs to sample
        #[arg(long, default_value_t = 1000)]
        pairs: u64,
        /// Smallest Hilbert-space dimension to draw (at least 2)
        #[arg(long, default_value_t = 2)]
        min_dim: usize,
        /// Largest Hilbert-space dimension to draw
        #[arg(long, default_value_t = 8)]
        max_dim: usize,
        /// Seed for the deterministic generator
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Additivity tolerance
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// Frame-file utilities
    Frames {
        #[command(subcommand)]
        command: FramesCommand,
    },
}

#[derive(Subcommand)]
enum FramesCommand {
    /// Check a frame JSON file and report its shape
    Validate { path: PathBuf },
}

/// A diagnostic destined for stderr plus the process exit code.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn new(code: u8, message: impl Into<String>) -> Self {
        Failure {
            code,
            message: message.into(),
        }
    }

    fn lib(code: u8, err: iqlogic_core::Error) -> Self {
        Failure::new(code, format!("error[{}]: {err}", err.name()))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Eval { formula, frame } => cmd_eval(&formula, &frame),
        Command::Measure { config } => cmd_measure(&config),
        Command::Truthtable { formula } => cmd_truthtable(&formula),
        Command::GleasonCheck {
            pairs,
            min_dim,
            max_dim,
            seed,
            tol,
        } => cmd_gleason_check(pairs, min_dim, max_dim, seed, tol),
        Command::Frames {
            command: FramesCommand::Validate { path },
        } => cmd_frames_validate(&path),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("{}", f.message);
            ExitCode::from(f.code)
        }
    }
}

/// Labels a1..aN for built-in frames.
fn outcome_space(n: usize) -> SampleSpace {
    let labels: Vec<String> = (1..=n).map(|i| format!("a{i}")).collect();
    SampleSpace::new(labels).expect("nonempty distinct labels")
}

/// Resolves a frame specifier to a model plus the world to evaluate at
/// (`None` means the root).
fn resolve_frame(spec: &str) -> Result<(KripkeModel, Option<String>), Failure> {
    let invalid =
        |msg: String| Failure::new(EXIT_FRAME, format!("error[InvalidFrame]: `{spec}`: {msg}"));
    if let Some(rest) = spec.strip_prefix("measurement:") {
        let n: usize = rest
            .parse()
            .map_err(|_| invalid("outcome count must be an integer".into()))?;
        if n == 0 || n > MAX_BUILTIN_OUTCOMES {
            return Err(invalid(format!(
                "outcome count must be in 1..={MAX_BUILTIN_OUTCOMES}"
            )));
        }
        return Ok((KripkeModel::measurement_frame(&outcome_space(n)), None));
    }
    if let Some(rest) = spec.strip_prefix("leaf:") {
        let (leaf, total) = rest
            .split_once(':')
            .ok_or_else(|| invalid("expected leaf:n:N".into()))?;
        let leaf: usize = leaf
            .parse()
            .map_err(|_| invalid("leaf index must be an integer".into()))?;
        let total: usize = total
            .parse()
            .map_err(|_| invalid("outcome count must be an integer".into()))?;
        if total == 0 || total > MAX_BUILTIN_OUTCOMES {
            return Err(invalid(format!(
                "outcome count must be in 1..={MAX_BUILTIN_OUTCOMES}"
            )));
        }
        if leaf == 0 || leaf > total {
            return Err(invalid(format!("leaf index must be in 1..={total}")));
        }
        let model = KripkeModel::measurement_frame(&outcome_space(total));
        return Ok((model, Some(leaf_world_name(leaf - 1))));
    }
    if spec == "pihc" {
        return Ok((KripkeModel::pihc_frame(), None));
    }
    let text = fs::read_to_string(spec).map_err(|e| invalid(format!("cannot read file: {e}")))?;
    let frame = FrameSpec::from_json(&text).map_err(|e| Failure::lib(EXIT_FRAME, e))?;
    let model = frame.build().map_err(|e| Failure::lib(EXIT_FRAME, e))?;
    Ok((model, None))
}

fn cmd_eval(formula: &str, frame: &str) -> Result<(), Failure> {
    let (model, world) = resolve_frame(frame)?;
    let p = model
        .parse(formula)
        .map_err(|e| Failure::lib(EXIT_PARSE, e))?;
    let value = match &world {
        Some(w) => model.eval3_at(w, &p),
        None => model.eval3(&p),
    }
    .map_err(|e| Failure::lib(EXIT_FRAME, e))?;
    println!("{value}");
    Ok(())
}

/// On-disk experiment description. `labels` defaults to a1..aN and
/// `max_denominator` to 4096; with no `output` path the report goes to
/// stdout.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ExperimentConfig {
    amplitudes: Vec<[f64; 2]>,
    #[serde(default)]
    labels: Option<Vec<String>>,
    trials: u64,
    seed: u64,
    #[serde(default)]
    max_denominator: Option<u64>,
    #[serde(default)]
    output: Option<PathBuf>,
}

fn cmd_measure(path: &Path) -> Result<(), Failure> {
    let invalid =
        |msg: String| Failure::new(EXIT_CONFIG, format!("error[InvalidConfig]: {msg}"));
    let text = fs::read_to_string(path)
        .map_err(|e| invalid(format!("cannot read `{}`: {e}", path.display())))?;
    let config: ExperimentConfig =
        serde_json::from_str(&text).map_err(|e| invalid(e.to_string()))?;
    if config.trials == 0 {
        return Err(invalid("trials must be at least 1".into()));
    }
    let labels = config.labels.clone().unwrap_or_else(|| {
        (1..=config.amplitudes.len())
            .map(|i| format!("a{i}"))
            .collect()
    });
    let state = StateVector::from_pairs(&config.amplitudes, labels)
        .map_err(|e| Failure::lib(EXIT_CONFIG, e))?;
    let max_denominator = config.max_denominator.unwrap_or(DEFAULT_MAX_DENOMINATOR);
    let stats = run_experiment(&state, config.trials, config.seed, max_denominator)
        .map_err(|e| Failure::lib(EXIT_CONFIG, e))?;
    let report = ExperimentReport::new(&state, &stats, config.seed);
    let mut json = serde_json::to_string_pretty(&report).expect("report serializes");
    json.push('\n');
    match &config.output {
        Some(out) => {
            fs::write(out, &json)
                .map_err(|e| invalid(format!("cannot write `{}`: {e}", out.display())))?;
            eprintln!("wrote {}", out.display());
        }
        None => print!("{json}"),
    }
    Ok(())
}

fn cmd_truthtable(formula: &str) -> Result<(), Failure> {
    let p = logic::parse(formula).map_err(|e| Failure::lib(EXIT_PARSE, e))?;
    let atoms: Vec<String> = p.atoms().into_iter().collect();
    let n = atoms.len();
    if n > MAX_TABLE_ATOMS {
        return Err(Failure::new(
            EXIT_BUDGET,
            format!("error[AtomBudget]: formula has {n} atoms, the table limit is {MAX_TABLE_ATOMS}"),
        ));
    }
    let header: Vec<String> = atoms.iter().map(|a| a.to_string()).collect();
    println!("{} | value", header.join(" "));
    let mut one_hot = true;
    for mask in 0u32..(1u32 << n) {
        let truth = |name: &str| {
            let i = atoms.iter().position(|a| a == name).expect("own atom");
            mask >> i & 1 == 1
        };
        let value = p.eval_classical(&truth);
        let cells: Vec<String> = atoms
            .iter()
            .enumerate()
            .map(|(i, a)| format!("{:>width$}", mask >> i & 1, width = a.len()))
            .collect();
        println!("{} | {}", cells.join(" "), u8::from(value));
        if value != (mask.count_ones() == 1) {
            one_hot = false;
        }
    }
    println!("one-hot: {}", if one_hot { "yes" } else { "no" });
    Ok(())
}

fn cmd_gleason_check(
    pairs: u64,
    min_dim: usize,
    max_dim: usize,
    seed: u64,
    tol: f64,
) -> Result<(), Failure> {
    let invalid =
        |msg: &str| Failure::new(EXIT_CONFIG, format!("error[InvalidConfig]: {msg}"));
    if pairs == 0 {
        return Err(invalid("pairs must be at least 1"));
    }
    if min_dim < 2 || max_dim < min_dim {
        return Err(invalid("need 2 <= min-dim <= max-dim"));
    }
    if tol.is_nan() || tol <= 0.0 {
        return Err(invalid("tol must be positive"));
    }
    let mut rng = rng::seeded(seed);
    let mut failures = 0u64;
    let mut max_deviation = 0.0f64;
    for _ in 0..pairs {
        let dim = min_dim + rng::uniform_index(&mut rng, (max_dim - min_dim + 1) as u64) as usize;
        let psi = random_state(dim, &mut rng);
        let basis = random_orthonormal_basis(dim, &mut rng);
        let assignment = born_assignment(&psi, &basis)
            .map_err(|e| Failure::lib(EXIT_VIOLATION, e))?;
        let deviation = (assignment.values().iter().sum::<f64>() - 1.0).abs();
        max_deviation = max_deviation.max(deviation);
        if !check_additivity(assignment.values(), tol) {
            failures += 1;
        }
    }
    let pass = failures == 0;
    let summary = serde_json::json!({
        "pairs": pairs,
        "min_dim": min_dim,
        "max_dim": max_dim,
        "seed": seed,
        "tol": tol,
        "additivity_failures": failures,
        "max_deviation": max_deviation,
        "pass": pass,
    });
    println!(
        "{}",
        serde_json::to_string_pretty(&summary).expect("summary serializes")
    );
    if pass {
        Ok(())
    } else {
        Err(Failure::new(
            EXIT_VIOLATION,
            format!("error[AdditivityViolation]: {failures} of {pairs} assignments exceeded tol"),
        ))
    }
}

fn cmd_frames_validate(path: &Path) -> Result<(), Failure> {
    let text = fs::read_to_string(path).map_err(|e| {
        Failure::new(
            EXIT_FRAME,
            format!("error[InvalidFrame]: cannot read `{}`: {e}", path.display()),
        )
    })?;
    let spec = FrameSpec::from_json(&text).map_err(|e| Failure::lib(EXIT_FRAME, e))?;
    let model = spec.build().map_err(|e| Failure::lib(EXIT_FRAME, e))?;
    println!(
        "valid: {} worlds, {} atoms, root `{}`, {} maximal world(s)",
        model.worlds().len(),
        model.atoms().len(),
        model.root_name(),
        model.maximal_worlds().len()
    );
    Ok(())
}
