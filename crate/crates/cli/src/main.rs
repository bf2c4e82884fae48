use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use clap::{Parser, Subcommand};

use polychora_cli::commands::{self, CliError, MeshFormat, Source};
use polychora_cli::service;
use polychora_core::game::default_eat_radius;
use polychora_core::quat::UnitQuaternion;

#[derive(Parser)]
#[command(name = "polychora", version, about = "Regular 4-polytopes on the 3-sphere")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print element counts, dual degree and eat radius.
    Info {
        name: Option<String>,
        #[arg(long)]
        polytope: Option<String>,
    },
    /// Write the projected, coloured mesh as JSON or OBJ + MTL.
    Export {
        #[arg(long)]
        polytope: String,
        #[arg(long, default_value = "json")]
        format: MeshFormat,
        /// Subdivision level (defaults per polytope).
        #[arg(long)]
        subdiv: Option<u32>,
        /// View orientation as w,x,y,z.
        #[arg(long, default_value = "1,0,0,0", allow_hyphen_values = true)]
        transform: String,
        #[arg(long)]
        out: PathBuf,
    },
    /// Play a game over a trajectory and report the outcome.
    Simulate {
        #[arg(long)]
        polytope: String,
        /// nn-tour, hamiltonian, spin360, spin720 or a JSONL file.
        #[arg(long, default_value = "nn-tour")]
        trajectory: String,
        /// Event log destination (JSONL).
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        eat_radius: Option<f64>,
        #[arg(long, default_value_t = 10_000)]
        time_limit_ms: u64,
    },
    /// Write a planned trajectory as JSONL.
    Plan {
        #[arg(long)]
        polytope: String,
        /// nn-tour, hamiltonian, spin360 or spin720.
        #[arg(long, default_value = "nn-tour")]
        trajectory: String,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        eat_radius: Option<f64>,
        #[arg(long, default_value_t = 10_000)]
        time_limit_ms: u64,
    },
    /// Run the local HTTP service.
    Serve {
        #[arg(long, env = service::PORT_ENV, default_value_t = service::DEFAULT_PORT)]
        port: u16,
    },
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Info { name, polytope } => {
            let name = name
                .or(polytope)
                .ok_or_else(|| CliError::Usage("info needs a polytope name".into()))?;
            print!("{}", commands::info(commands::parse_polytope(&name)?));
        }
        Command::Export {
            polytope,
            format,
            subdiv,
            transform,
            out,
        } => {
            let name = commands::parse_polytope(&polytope)?;
            let q: UnitQuaternion<f64> = commands::parse_quaternion(&transform)?;
            let level = subdiv.unwrap_or(name.default_subdivision());
            let n = commands::export(name, format, level, &q, &out)?;
            eprintln!("wrote {n} triangles to {}", out.display());
        }
        Command::Simulate {
            polytope,
            trajectory,
            out,
            eat_radius,
            time_limit_ms,
        } => {
            let name = commands::parse_polytope(&polytope)?;
            let radius = eat_radius.unwrap_or(default_eat_radius(name));
            let source = Source::parse(&trajectory);
            let plan = commands::plan(name, &source, radius, Duration::from_millis(time_limit_ms))?;
            if plan.fell_back {
                eprintln!("hamiltonian search timed out; using the nearest-neighbour tour");
            }
            let outcome = commands::simulate(name, eat_radius, &plan.samples)?;
            if let Some(out) = out {
                commands::write_events(&outcome.events, &out)?;
            }
            print!("{}", outcome.summary());
        }
        Command::Plan {
            polytope,
            trajectory,
            out,
            eat_radius,
            time_limit_ms,
        } => {
            let name = commands::parse_polytope(&polytope)?;
            let source = Source::parse(&trajectory);
            if let Source::File(_) = source {
                return Err(CliError::Usage(format!("unknown planner `{trajectory}`")));
            }
            let radius = eat_radius.unwrap_or(default_eat_radius(name));
            let plan = commands::plan(name, &source, radius, Duration::from_millis(time_limit_ms))?;
            if plan.fell_back {
                eprintln!("hamiltonian search timed out; using the nearest-neighbour tour");
            }
            commands::write_plan(&plan.samples, &out)?;
            eprintln!("wrote {} samples to {}", plan.samples.len(), out.display());
        }
        Command::Serve { port } => {
            let rt = tokio::runtime::Runtime::new().map_err(|e| CliError::Usage(e.to_string()))?;
            rt.block_on(service::serve(port)).map_err(|e| CliError::Usage(format!("serve: {e}")))?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
