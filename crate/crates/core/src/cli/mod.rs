//! Command line front end. The `kpencil` binary is a thin wrapper around [`run`].
//!
//! Exit codes: 0 success, 2 input error, 3 no solution, 4 verification failure.

mod files;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use thiserror::Error;

pub use files::{parse_free_inputs, parse_trajectory, InputFile, PencilFile, ReportFile, SystemFile};

use crate::error::PencilError;
use crate::exact::format_rational;
use crate::invariants::{finite_divisor_report, invariant_factors};
use crate::linearization::{build_companion_pencil, unstack_trajectory, PencilSystem};
use crate::oracle::{default_horizon, oracle_classify, verify_trajectory};
use crate::solver::{
    classify_ivp, consistent_initial_space, simulate_family, solve_unique, ExplicitInputs, FreeInputSource,
    SeededInputs, SolvabilityTag, ZeroInputs,
};
use crate::structure::{kronecker_decompose, structure_report, StructureReport};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_NO_SOLUTION: i32 = 3;
pub const EXIT_VERIFY: i32 = 4;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("no solution: {0}")]
    NoSolution(String),
    #[error("verification failed: {0}")]
    Verification(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => EXIT_INPUT,
            CliError::NoSolution(_) => EXIT_NO_SOLUTION,
            CliError::Verification(_) => EXIT_VERIFY,
        }
    }
}

impl From<PencilError> for CliError {
    fn from(e: PencilError) -> Self {
        CliError::Input(e.to_string())
    }
}

type CliResult = std::result::Result<(), CliError>;

#[derive(Debug, Parser)]
#[command(name = "kpencil", version, about = "Exact Kronecker analysis of matrix difference equations")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Turn a higher-order system file into a pencil file.
    Linearize {
        system: PathBuf,
        /// Pencil file to write; printed to stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Report the Kronecker structure of a pencil.
    Analyze {
        pencil: PathBuf,
        /// Also compute the Smith invariant factors and their rational roots.
        #[arg(long)]
        invariant_factors: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Classify the initial value problem and produce a trajectory.
    Solve {
        /// Pencil file or higher-order system file.
        input: PathBuf,
        #[arg(long, default_value_t = 10)]
        steps: usize,
        /// Free inputs: a JSON list file, `seed:<int>` or `zero`.
        #[arg(long, default_value = "seed:0")]
        free: String,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, allow_hyphen_values = true)]
        k0: Option<i64>,
    },
    /// Check a trajectory against a pencil exactly.
    Verify {
        pencil: PathBuf,
        /// Trajectory file or a `solve` report.
        trajectory: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Brute-force classification by unrolling the recurrence.
    Oracle {
        pencil: PathBuf,
        /// Horizon; defaults to rows + cols.
        #[arg(long)]
        steps: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn read(path: &Path) -> std::result::Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))
}

fn write_file(path: &Path, text: &str) -> CliResult {
    std::fs::write(path, text).map_err(|e| CliError::Input(format!("cannot write {}: {e}", path.display())))
}

fn emit(out: &mut dyn Write, args: std::fmt::Arguments<'_>) {
    // A closed stdout is not worth failing the computation over.
    let _ = out.write_fmt(args);
    let _ = out.write_all(b"\n");
}

macro_rules! say {
    ($out:expr, $($t:tt)*) => { emit($out, format_args!($($t)*)) };
}

fn save_report(path: Option<&Path>, report: &ReportFile, out: &mut dyn Write) -> CliResult {
    if let Some(p) = path {
        write_file(p, &report.to_json())?;
        say!(out, "report written to {}", p.display());
    }
    Ok(())
}

fn load_pencil(path: &Path) -> std::result::Result<PencilSystem, CliError> {
    Ok(PencilFile::parse(&read(path)?)?.to_pencil()?)
}

pub fn cmd_linearize(system: &Path, out_path: Option<&Path>, out: &mut dyn Write) -> CliResult {
    let sys = SystemFile::parse(&read(system)?)?.to_system()?;
    let pencil = build_companion_pencil(&sys);
    let text = PencilFile::from_pencil(&pencil).to_json();
    match out_path {
        Some(p) => {
            write_file(p, &text)?;
            say!(
                out,
                "order {} system -> {}x{} pencil written to {}",
                sys.order(),
                pencil.f().rows(),
                pencil.f().cols(),
                p.display()
            );
        }
        None => say!(out, "{text}"),
    }
    Ok(())
}

fn summarize_structure(r: &StructureReport, out: &mut dyn Write) {
    let reg = match r.regularity {
        crate::structure::Regularity::Regular => "regular",
        crate::structure::Regularity::Singular => "singular",
    };
    say!(out, "pencil {}x{}, {reg}", r.rows, r.cols);
    say!(out, "finite part: p = {}", r.p);
    say!(out, "infinite degrees: {:?} (nilpotency index {})", r.inf_degrees, r.nilpotency_index);
    say!(out, "column minimal indices: {:?} (d = {}, g = {})", r.eps, r.d, r.g);
    say!(out, "row minimal indices: {:?} (t = {}, h = {})", r.zeta, r.t, r.h);
}

pub fn cmd_analyze(pencil: &Path, with_factors: bool, out_path: Option<&Path>, out: &mut dyn Write) -> CliResult {
    let p = load_pencil(pencil)?;
    let dec = kronecker_decompose(p.f(), p.g())?;
    let mut report = ReportFile::new("analyze");
    let s = structure_report(&dec);
    summarize_structure(&s, out);
    report.structure = Some(s);
    report.consistent_space = Some(consistent_initial_space(&dec));
    if with_factors {
        let factors = invariant_factors(p.f(), p.g());
        let shown: Vec<String> = factors.factors().iter().map(ToString::to_string).collect();
        say!(out, "invariant factors: [{}]", shown.join(", "));
        let divisors = finite_divisor_report(&factors);
        for fr in &divisors.factors {
            let roots: Vec<String> =
                fr.roots.iter().map(|r| format!("{} (mult {})", format_rational(&r.root), r.multiplicity)).collect();
            say!(out, "  {}: rational roots [{}]", fr.factor, roots.join(", "));
            for res in &fr.residual {
                say!(out, "    no rational roots: ({})^{}", res.poly, res.multiplicity);
            }
        }
        report.invariant_factors = Some(factors.factors().to_vec());
        report.finite_divisors = Some(divisors);
    }
    save_report(out_path, &report, out)
}

fn free_source(spec: &str) -> std::result::Result<Box<dyn FreeInputSource>, CliError> {
    if let Some(seed) = spec.strip_prefix("seed:") {
        let seed: u64 = seed.trim().parse().map_err(|_| CliError::Input(format!("bad seed in --free {spec:?}")))?;
        return Ok(Box::new(SeededInputs::new(seed)));
    }
    if spec == "zero" {
        return Ok(Box::new(ZeroInputs));
    }
    let values = parse_free_inputs(&read(Path::new(spec))?)?;
    Ok(Box::new(ExplicitInputs::new(values)))
}

pub fn cmd_solve(
    input: &Path,
    steps: usize,
    free: &str,
    k0: Option<i64>,
    out_path: Option<&Path>,
    out: &mut dyn Write,
) -> CliResult {
    let (pencil, r1) = match InputFile::parse(&read(input)?)? {
        InputFile::Pencil(p) => (p.to_pencil()?, None),
        InputFile::System(s) => {
            let sys = s.to_system()?;
            (build_companion_pencil(&sys), Some(sys.r1()))
        }
    };
    let pencil = match k0 {
        Some(k) => pencil.with_k0(k),
        None => pencil,
    };
    let y0 = pencil.y0().cloned().ok_or_else(|| CliError::Input("input has no initial condition".into()))?;
    let dec = kronecker_decompose(pencil.f(), pencil.g())?;
    let class = classify_ivp(&dec, &y0)?;
    let mut report = ReportFile::new("solve");
    report.structure = Some(structure_report(&dec));
    report.consistent_space = Some(consistent_initial_space(&dec));
    report.classification = Some(class.clone());
    let traj = match class.tag {
        SolvabilityTag::NoSolution => {
            let cert = class.certificate.as_ref().expect("infeasible classes carry a certificate");
            say!(out, "classification: NoSolution");
            for (what, z) in [("infinite-part", &cert.z_q), ("left singular", &cert.z_zeta)] {
                if z.rows() > 0 {
                    say!(out, "  {what} component {} must vanish", z.tuple_string());
                }
            }
            save_report(out_path, &report, out)?;
            return Err(CliError::NoSolution("initial condition is inconsistent".into()));
        }
        SolvabilityTag::Unique => {
            say!(out, "classification: Unique");
            solve_unique(&dec, &y0, pencil.k0(), steps)?
        }
        SolvabilityTag::InfinitelyMany => {
            let d = class.freedom_per_step;
            say!(out, "classification: InfinitelyMany ({d} free scalar{} per step)", if d == 1 { "" } else { "s" });
            let mut src = free_source(free)?;
            simulate_family(&dec, &y0, pencil.k0(), steps, src.as_mut())?
        }
    };
    for (i, y) in traj.samples.iter().enumerate() {
        say!(out, "  Y[{}] = {}", traj.k0 + i as i64, y.tuple_string());
    }
    if let Some(r1) = r1 {
        report.x_samples = Some(unstack_trajectory(&traj.samples, r1)?);
    }
    report.trajectory = Some(traj);
    save_report(out_path, &report, out)
}

pub fn cmd_verify(pencil: &Path, trajectory: &Path, out_path: Option<&Path>, out: &mut dyn Write) -> CliResult {
    let p = load_pencil(pencil)?;
    let traj = parse_trajectory(&read(trajectory)?)?;
    let residuals = verify_trajectory(p.f(), p.g(), &traj)?;
    let mut report = ReportFile::new("verify");
    report.residuals = Some(residuals.clone());
    if residuals.pass() {
        say!(out, "verified: {} steps, all residuals exactly zero", residuals.steps_checked);
        return save_report(out_path, &report, out);
    }
    for e in &residuals.nonzero {
        say!(out, "  step k = {}: row {} residual {}", traj.k0 + e.step as i64, e.row, format_rational(&e.value));
    }
    save_report(out_path, &report, out)?;
    let first = residuals.first_bad_step().expect("failed report has entries");
    Err(CliError::Verification(format!(
        "{} nonzero residual entries, first at step k = {}",
        residuals.nonzero.len(),
        traj.k0 + first as i64
    )))
}

pub fn cmd_oracle(pencil: &Path, steps: Option<usize>, out_path: Option<&Path>, out: &mut dyn Write) -> CliResult {
    let p = load_pencil(pencil)?;
    let y0 = p.y0().ok_or_else(|| CliError::Input("pencil file has no Y0".into()))?;
    let horizon = steps.unwrap_or_else(|| default_horizon(p.f()));
    let outcome = oracle_classify(p.f(), p.g(), Some(y0), horizon);
    match outcome.affine_dim {
        Some(d) => say!(out, "feasible at horizon {horizon}; solution set dimension {d}"),
        None => say!(out, "infeasible at horizon {horizon}"),
    }
    let mut report = ReportFile::new("oracle");
    report.oracle = Some(outcome);
    save_report(out_path, &report, out)
}

pub fn execute(cli: Cli, out: &mut dyn Write) -> CliResult {
    match cli.command {
        Command::Linearize { system, out: o } => cmd_linearize(&system, o.as_deref(), out),
        Command::Analyze { pencil, invariant_factors, out: o } => cmd_analyze(&pencil, invariant_factors, o.as_deref(), out),
        Command::Solve { input, steps, free, out: o, k0 } => cmd_solve(&input, steps, &free, k0, o.as_deref(), out),
        Command::Verify { pencil, trajectory, out: o } => cmd_verify(&pencil, &trajectory, o.as_deref(), out),
        Command::Oracle { pencil, steps, out: o } => cmd_oracle(&pencil, steps, o.as_deref(), out),
    }
}

/// Parses arguments, runs the command and returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    match execute(cli, out) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(std::iter::once("kpencil").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn usage_errors_exit_two() {
        assert_eq!(run_args(&["frobnicate"]).0, EXIT_INPUT);
        assert_eq!(run_args(&["solve"]).0, EXIT_INPUT);
        assert_eq!(run_args(&["--help"]).0, EXIT_OK);
    }

    #[test]
    fn missing_file_is_input_error() {
        let (code, _, err) = run_args(&["analyze", "/nonexistent/pencil.json"]);
        assert_eq!(code, EXIT_INPUT);
        assert!(err.contains("cannot read"));
    }
}
