use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use qubit_design::readout::{notch_separation, s21_curve, write_csv, QubitState, ReadoutModel};
use qubit_design::studio::{
    compare_to_epr, derive, load_design, report_json, sweep, tune, write_sweep_csv, EprReference,
    Execution, Parameter, Quantity, SweepSpec, TuneSpec, DEFAULT_TUNE_TOLERANCE,
};
use qubit_design::units::Frequency;
use qubit_design::{Error, Warning};

#[derive(Parser)]
#[command(name = "qubit-design", version, about = "Transmon and readout-resonator design calculator")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum StateArg {
    Ground,
    Excited,
    Both,
}

#[derive(Subcommand)]
enum Command {
    /// Derive every circuit, Hamiltonian and readout parameter of a design.
    Derive {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Feedline transmission versus frequency as CSV.
    S21 {
        #[arg(long)]
        config: PathBuf,
        #[arg(long, value_enum)]
        state: StateArg,
        #[arg(long)]
        span_hz: f64,
        #[arg(long)]
        points: usize,
        /// Internal quality factor; omitted means lossless.
        #[arg(long)]
        q_internal: Option<f64>,
        /// With `--state both`, `<stem>_ground.<ext>` and `<stem>_excited.<ext>` are written.
        #[arg(long)]
        out: PathBuf,
    },
    /// Evaluate outputs over a grid of one design parameter.
    Sweep {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        param: String,
        #[arg(long, allow_hyphen_values = true)]
        from: f64,
        #[arg(long, allow_hyphen_values = true)]
        to: f64,
        #[arg(long)]
        steps: usize,
        #[arg(long, value_delimiter = ',')]
        emit: Vec<String>,
        /// Evaluate grid points one at a time.
        #[arg(long)]
        sequential: bool,
        #[arg(long)]
        out: PathBuf,
    },
    /// Solve for the parameter value that hits a target quantity.
    Tune {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        vary: String,
        /// `<quantity>=<value>`, e.g. `f_01=4.55e9`.
        #[arg(long)]
        target: String,
        /// `<lo>,<hi>`.
        #[arg(long, allow_hyphen_values = true)]
        bracket: String,
        #[arg(long, default_value_t = DEFAULT_TUNE_TOLERANCE)]
        tol: f64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Compare against the published EPR simulation values.
    Compare {
        #[arg(long)]
        config: PathBuf,
    },
}

enum Failure {
    Validation(String),
    Numerical(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_numerical() {
            Failure::Numerical(e.to_string())
        } else {
            Failure::Validation(e.to_string())
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Validation(format!("io error: {e}"))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(Failure::Validation(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Numerical(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn warn_all<'a>(warnings: impl IntoIterator<Item = &'a Warning>) {
    for w in warnings {
        eprintln!("warning: {w}");
    }
}

fn write_text(path: &Path, text: &str) -> Result<(), Failure> {
    std::fs::write(path, text)?;
    Ok(())
}

fn run(command: Command) -> Result<ExitCode, Failure> {
    match command {
        Command::Derive { config, out } => {
            let derived = derive(&load_design(&config)?)?;
            warn_all(&derived.warnings);
            write_text(&out, &report_json(&derived, None))?;
        }

        Command::S21 {
            config,
            state,
            span_hz,
            points,
            q_internal,
            out,
        } => {
            let derived = derive(&load_design(&config)?)?;
            let model = ReadoutModel::from_coupling(&derived.coupling, q_internal);
            let span = Frequency(span_hz);
            let states: &[QubitState] = match state {
                StateArg::Ground => &[QubitState::Ground],
                StateArg::Excited => &[QubitState::Excited],
                StateArg::Both => &[QubitState::Ground, QubitState::Excited],
            };
            let mut curves = Vec::new();
            for &s in states {
                let curve = s21_curve(&model, s, span, points)?;
                warn_all(&curve.warnings);
                let path = if states.len() > 1 { suffixed(&out, s.name()) } else { out.clone() };
                let mut w = BufWriter::new(File::create(&path)?);
                write_csv(&curve, &mut w)?;
                w.flush()?;
                curves.push(curve);
            }
            if let [ground, excited] = curves.as_slice() {
                let sep = notch_separation(ground, excited)?;
                println!("notch separation: {} Hz", sep.0);
            }
        }

        Command::Sweep {
            config,
            param,
            from,
            to,
            steps,
            emit,
            sequential,
            out,
        } => {
            let inputs = load_design(&config)?;
            let outputs = emit
                .iter()
                .map(|name| name.parse::<Quantity>())
                .collect::<Result<Vec<_>, _>>()?;
            let spec = SweepSpec {
                parameter: param.parse::<Parameter>()?,
                from,
                to,
                steps,
                outputs,
            };
            let execution = if sequential { Execution::Sequential } else { Execution::Parallel };
            let rows = sweep(&inputs, &spec, execution)?;
            let failed = rows.iter().filter(|r| r.error.is_some()).count();
            if failed > 0 {
                eprintln!("warning: {failed} of {} grid points failed", rows.len());
            }
            let mut w = BufWriter::new(File::create(&out)?);
            write_sweep_csv(&spec, &rows, &mut w)?;
            w.flush()?;
        }

        Command::Tune {
            config,
            vary,
            target,
            bracket,
            tol,
            out,
        } => {
            let inputs = load_design(&config)?;
            let (quantity, value) = target
                .split_once('=')
                .ok_or_else(|| Failure::Validation(format!("--target must be <quantity>=<value>, got '{target}'")))?;
            let target_value: f64 = value
                .trim()
                .parse()
                .map_err(|_| Failure::Validation(format!("invalid target value '{value}'")))?;
            let bracket = parse_pair(&bracket)?;
            let spec = TuneSpec {
                parameter: vary.parse::<Parameter>()?,
                target: quantity.parse::<Quantity>()?,
                target_value,
                bracket,
                tolerance: tol,
            };
            let result = tune(&inputs, &spec)?;
            warn_all(&result.derived.warnings);
            let tuning = json!({
                "parameter": result.parameter,
                "value": result.value,
                "target": result.target,
                "target_value": result.target_value,
                "achieved": result.achieved,
                "iterations": result.iterations,
                "tolerance": spec.tolerance,
            });
            write_text(&out, &report_json(&result.derived, Some(("tuning", tuning))))?;
            println!("{} = {:e} gives {} = {:e}", result.parameter, result.value, result.target, result.achieved);
        }

        Command::Compare { config } => {
            let derived = derive(&load_design(&config)?)?;
            let comparison = compare_to_epr(&derived, &EprReference::PUBLISHED);
            print!("{}", comparison.table());
            if !comparison.all_pass {
                return Ok(ExitCode::from(1));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn parse_pair(text: &str) -> Result<(f64, f64), Failure> {
    let bad = || Failure::Validation(format!("--bracket must be <lo>,<hi>, got '{text}'"));
    let (lo, hi) = text.split_once(',').ok_or_else(bad)?;
    Ok((lo.trim().parse().map_err(|_| bad())?, hi.trim().parse().map_err(|_| bad())?))
}

fn suffixed(path: &Path, suffix: &str) -> PathBuf {
    let stem = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    let name = match path.extension() {
        Some(ext) => format!("{stem}_{suffix}.{}", ext.to_string_lossy()),
        None => format!("{stem}_{suffix}"),
    };
    path.with_file_name(name)
}
