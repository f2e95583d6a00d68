use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use wyskew::cli::{self, CliError, CliResult, ObservableSpec, Report, StateSpec};
use wyskew::classify::DEFAULT_CERTIFICATION_MARGIN;
use wyskew::optimizer::OptimizerConfig;
use wyskew::Execution;

#[derive(Parser)]
#[command(name = "wyskew", version, about = "Skew-information entanglement witnesses for qubit registers")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// I(ρ, A_1 + ... + A_n) for fixed local observables.
    Skew {
        #[command(flatten)]
        state: StateArgs,
        /// One of x|y|z per site, e.g. `zzz`.
        #[arg(long, conflicts_with = "bloch", required_unless_present = "bloch")]
        axes: Option<String>,
        /// Unit Bloch vectors per site: `x,y,z;x,y,z`.
        #[arg(long)]
        bloch: Option<String>,
        /// Seed for randomized state families.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Maximize over local spin observables.
    Nonlocal {
        #[command(flatten)]
        state: StateArgs,
        #[command(flatten)]
        optimizer: OptimizerArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Optimize, then certify a minimum entanglement class.
    Classify {
        #[command(flatten)]
        state: StateArgs,
        #[command(flatten)]
        optimizer: OptimizerArgs,
        #[arg(long, default_value_t = DEFAULT_CERTIFICATION_MARGIN)]
        margin: f64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// E_k table, Werner thresholds and (for n = 3) the reference table.
    Bounds {
        n: u32,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Werner-like GHZ sweep: closed form vs direct computation.
    Sweep {
        /// State family (only `werner`).
        family: String,
        /// Family parameters, e.g. `n=3`.
        params: String,
        #[arg(long, default_value_t = 11)]
        points: usize,
        #[arg(long)]
        sequential: bool,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Write the resolved density matrix in the state file format.
    Export {
        #[command(flatten)]
        state: StateArgs,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct StateArgs {
    /// GHZ state on N qubits.
    #[arg(long, value_name = "N")]
    ghz: Option<usize>,
    /// α|000⟩ + β|111⟩ with β = √(1 − α²): `alpha=A`.
    #[arg(long, value_name = "alpha=A")]
    gen_ghz: Option<String>,
    /// Werner-like GHZ mixture: `n=N,lambda=L`.
    #[arg(long, value_name = "n=N,lambda=L")]
    werner: Option<String>,
    /// Random pure product state drawn from --seed: `n=N`.
    #[arg(long, value_name = "n=N")]
    product: Option<String>,
    /// (|00⟩ + |11⟩)/√2.
    #[arg(long)]
    bell: bool,
    /// Density matrix file.
    #[arg(long, value_name = "PATH")]
    custom: Option<PathBuf>,
}

impl StateArgs {
    fn spec(&self) -> CliResult<StateSpec> {
        if let Some(n) = self.ghz {
            return Ok(StateSpec::Ghz { n });
        }
        if let Some(s) = &self.gen_ghz {
            return StateSpec::parse_gen_ghz(s);
        }
        if let Some(s) = &self.werner {
            return StateSpec::parse_werner(s);
        }
        if let Some(s) = &self.product {
            return StateSpec::parse_product(s);
        }
        if self.bell {
            return Ok(StateSpec::Bell);
        }
        if let Some(p) = &self.custom {
            return Ok(StateSpec::Custom(p.clone()));
        }
        Err(CliError::Validation("no state given".into()))
    }
}

#[derive(Args)]
struct OptimizerArgs {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 32)]
    restarts: usize,
    #[arg(long, default_value_t = 4)]
    grid: usize,
    #[arg(long, default_value_t = 500)]
    max_iterations: usize,
    #[arg(long, default_value_t = 1e-8)]
    tolerance: f64,
    /// Refine starts one at a time.
    #[arg(long)]
    sequential: bool,
}

impl OptimizerArgs {
    fn config(&self) -> OptimizerConfig {
        OptimizerConfig {
            grid_resolution: self.grid,
            restarts: self.restarts,
            max_iterations: self.max_iterations,
            convergence_tolerance: self.tolerance,
            seed: self.seed,
        }
    }

    fn execution(&self) -> Execution {
        execution(self.sequential)
    }
}

fn execution(sequential: bool) -> Execution {
    if sequential {
        Execution::Sequential
    } else {
        Execution::Parallel
    }
}

#[derive(Args)]
struct OutputArgs {
    #[arg(long, conflicts_with = "csv")]
    json: bool,
    #[arg(long)]
    csv: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn emit(text: &str, out: Option<&PathBuf>) -> CliResult<()> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|source| {
            wyskew::io::IoError::File {
                path: path.display().to_string(),
                source,
            }
            .into()
        }),
        None => {
            print!("{text}");
            if !text.ends_with('\n') {
                println!();
            }
            Ok(())
        }
    }
}

fn render(report: &Report, output: &OutputArgs, csv_default: bool) -> String {
    let csv = output.csv || (csv_default && !output.json);
    if csv {
        report.to_csv()
    } else {
        report.to_json()
    }
}

fn run(cli: Cli) -> CliResult<()> {
    match cli.command {
        Command::Skew {
            state,
            axes,
            bloch,
            seed,
            output,
        } => {
            let observables = match (axes, bloch) {
                (Some(a), _) => ObservableSpec::parse_axes(&a)?,
                (None, Some(b)) => ObservableSpec::parse_bloch(&b)?,
                (None, None) => return Err(CliError::Validation("give --axes or --bloch".into())),
            };
            let report = cli::cmd_skew(&state.spec()?, &observables, seed)?;
            emit(&render(&report, &output, false), output.out.as_ref())
        }
        Command::Nonlocal {
            state,
            optimizer,
            output,
        } => {
            let report = cli::cmd_nonlocal(&state.spec()?, &optimizer.config(), optimizer.execution())?;
            emit(&render(&report, &output, false), output.out.as_ref())
        }
        Command::Classify {
            state,
            optimizer,
            margin,
            output,
        } => {
            let report =
                cli::cmd_classify(&state.spec()?, &optimizer.config(), margin, optimizer.execution())?;
            emit(&render(&report, &output, false), output.out.as_ref())
        }
        Command::Bounds { n, output } => {
            let report = cli::cmd_bounds(n)?;
            emit(&render(&report, &output, false), output.out.as_ref())
        }
        Command::Sweep {
            family,
            params,
            points,
            sequential,
            output,
        } => {
            let report = cli::cmd_sweep(&family, &params, points, execution(sequential))?;
            emit(&render(&report, &output, true), output.out.as_ref())
        }
        Command::Export { state, seed, out } => {
            let text = cli::cmd_export(&state.spec()?, seed)?;
            emit(&text, out.as_ref())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("{}", serde_json::to_string(&err.to_json()).expect("error serializes"));
            ExitCode::from(err.exit_code() as u8)
        }
    }
}
