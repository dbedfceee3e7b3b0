//! qtunnel: split-operator tunneling simulations as quantum circuits.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or validation
//! error.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use qtunnel::cli;
use qtunnel::simulate;

#[derive(Parser)]
#[command(name = "qtunnel", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a simulation and emit the per-step probability trace.
    ///
    /// Row 0 of the trace is the initial state; reference figures start
    /// at the first step.
    Simulate(SimulateArgs),
    /// Print gate counts per step and for a number of steps.
    Census {
        #[arg(long)]
        qubits: usize,
        #[arg(long, default_value_t = 1)]
        steps: usize,
        /// Also dump the one-step circuit, one gate per line.
        #[arg(long)]
        dump: bool,
    },
    /// Print the Z-product decomposition table of a diagonal.
    Decompose {
        #[arg(long)]
        qubits: usize,
        #[arg(long)]
        dt: f64,
        /// Decompose the kinetic phase diagonal at mass 1/2.
        #[arg(long, conflicts_with = "diag_file")]
        kinetic: bool,
        /// File with one diagonal phase per line (2^qubits lines).
        #[arg(long)]
        diag_file: Option<PathBuf>,
        #[arg(long, default_value_t = 0.5)]
        mass: f64,
    },
    /// Check circuits against the dense oracle and measure Trotter
    /// convergence. Defaults reproduce the 2-qubit tunneling run.
    Verify {
        #[arg(long, default_value_t = 2)]
        qubits: usize,
        #[arg(long, default_value_t = 0.1)]
        dt: f64,
        #[arg(long, default_value_t = 4)]
        steps: usize,
        #[arg(long, default_value_t = 10.0)]
        v: f64,
        #[arg(long, default_value_t = 0)]
        well_qubit: usize,
    },
    /// Write CSV traces and PGM heatmaps for the three reference runs.
    PaperFigs {
        #[arg(long)]
        outdir: PathBuf,
    },
}

#[derive(Args)]
struct SimulateArgs {
    #[arg(long)]
    qubits: Option<usize>,
    #[arg(long)]
    dt: Option<f64>,
    #[arg(long)]
    steps: Option<usize>,
    /// Square-well strength (0 = free particle).
    #[arg(long)]
    v: Option<f64>,
    /// Qubit whose bit-1 half-space forms the wells (default: highest).
    #[arg(long)]
    well_qubit: Option<usize>,
    /// Initial basis state as a ket-ordered bitstring, e.g. 01 for site 1.
    #[arg(long)]
    init: Option<String>,
    #[arg(long)]
    mass: Option<f64>,
    /// key=value config file; explicit flags override file values.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Write the trace as CSV here (default: stdout).
    #[arg(long)]
    csv: Option<PathBuf>,
    /// Also write a PGM heatmap here.
    #[arg(long)]
    pgm: Option<PathBuf>,
    /// Drop the potential gate when v = 0 instead of keeping the
    /// identity rotation for census parity.
    #[arg(long)]
    omit_trivial_potential: bool,
}

fn main() -> ExitCode {
    match dispatch(Cli::parse()) {
        Ok(passed) => {
            if passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

fn dispatch(cli: Cli) -> Result<bool, String> {
    match cli.command {
        Command::Simulate(args) => run_simulate(args).map(|()| true),
        Command::Census {
            qubits,
            steps,
            dump,
        } => {
            print!("{}", cli::census_report(qubits, steps)?);
            if dump {
                print!("{}", cli::census_dump(qubits)?);
            }
            Ok(true)
        }
        Command::Decompose {
            qubits,
            dt,
            kinetic,
            diag_file,
            mass,
        } => {
            let phases = if kinetic {
                simulate::kinetic_phase_vector(
                    &simulate::LatticeSpec {
                        n_qubits: qubits,
                        mass,
                    },
                    dt,
                )
            } else if let Some(path) = diag_file {
                let phases = cli::read_diag_file(&path)?;
                if phases.len() != 1 << qubits {
                    return Err(format!(
                        "{}: expected {} values, got {}",
                        path.display(),
                        1 << qubits,
                        phases.len()
                    ));
                }
                phases
            } else {
                return Err("pass --kinetic or --diag-file PATH".into());
            };
            print!("{}", cli::decompose_report(dt, &phases)?);
            Ok(true)
        }
        Command::Verify {
            qubits,
            dt,
            steps,
            v,
            well_qubit,
        } => {
            let outcome = cli::verify(qubits, dt, steps, v, Some(well_qubit))?;
            print!("{}", outcome.report);
            Ok(outcome.passed)
        }
        Command::PaperFigs { outdir } => {
            for path in cli::paper_figs(&outdir)? {
                println!("wrote {}", path.display());
            }
            Ok(true)
        }
    }
}

fn run_simulate(args: SimulateArgs) -> Result<(), String> {
    let file = match &args.config {
        Some(path) => {
            let text =
                fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
            cli::parse_config_file(&text)?
        }
        None => cli::FileConfig::default(),
    };
    let qubits = args
        .qubits
        .or(file.qubits)
        .ok_or("missing --qubits (or qubits= in the config file)")?;
    let dt = args
        .dt
        .or(file.dt)
        .ok_or("missing --dt (or dt= in the config file)")?;
    let steps = args
        .steps
        .or(file.steps)
        .ok_or("missing --steps (or steps= in the config file)")?;
    let mass = args.mass.or(file.mass).unwrap_or(0.5);
    let v = args.v.or(file.v).unwrap_or(0.0);
    let well_qubit = args.well_qubit.or(file.well_qubit);
    let init = args.init.or(file.init);
    let csv_path = args.csv.or(file.output);

    let config = cli::build_simulation_config(
        qubits,
        mass,
        dt,
        steps,
        v,
        well_qubit,
        init.as_deref(),
        args.omit_trivial_potential,
    )?;
    let trace = simulate::run(&config).map_err(|e| e.to_string())?;

    let csv = cli::trace_to_csv(&trace);
    match &csv_path {
        Some(path) => fs::write(path, csv).map_err(|e| format!("{}: {e}", path.display()))?,
        None => print!("{csv}"),
    }
    if let Some(path) = &args.pgm {
        fs::write(path, cli::trace_to_pgm(&trace))
            .map_err(|e| format!("{}: {e}", path.display()))?;
    }
    Ok(())
}
