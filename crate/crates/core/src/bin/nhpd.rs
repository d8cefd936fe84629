use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use nhpd::io::{self, load_config};
use nhpd::{Error, ErrorCategory};

/// Micropolar peridynamic fracture simulator on non-unified horizons.
#[derive(Parser)]
#[command(version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Mesh and bond statistics, with bond counts over a λ list.
    Info {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        /// λ values for the bond count table.
        #[arg(long, value_delimiter = ',', default_value = "1.5,2,2.5,3,3.5,4")]
        lambdas: Vec<f64>,
    },
    /// Domain correction only, with Ω and probe diagnostics.
    Correct {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Full load-stepping simulation.
    Run {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// `run` repeated over the λ list of the `[sweep]` block.
    Sweep {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn execute(command: Command) -> Result<(), Error> {
    match command {
        Command::Info { config, out, lambdas } => {
            let config = load_config(&config)?;
            let report = io::info(&config, &lambdas)?;
            print!("{report}");
            if let Some(out) = out {
                std::fs::create_dir_all(&out)?;
                std::fs::write(out.join("info.txt"), report.to_string())?;
            }
        }
        Command::Correct { config, out } => {
            let config = load_config(&config)?;
            let out = out.unwrap_or_else(|| config.output.dir.clone());
            let c = io::correct(&config, &out)?;
            println!(
                "converged in {} passes ({:.2} s), last change sum {:.3e}",
                c.report.passes,
                c.seconds,
                c.report.residuals.last().copied().unwrap_or(0.0)
            );
            println!("omega in [{:.4}, {:.4}]", c.report.omega_min, c.report.omega_max);
            for (axis, p) in ["x", "y"].iter().zip(c.probes) {
                println!("probe {axis}: max relative error {:.3e}, {:.1}% of points within 2%", p.max, 100.0 * p.within_2pct);
            }
            println!("written to {}", out.display());
        }
        Command::Run { config, out } => {
            let config = load_config(&config)?;
            let out = out.unwrap_or_else(|| config.output.dir.clone());
            let r = io::run(&config, &out)?;
            println!(
                "lambda {}: {} points, {} bonds, {} steps, {} broken, {:.1} s",
                r.lambda, r.points, r.bonds, r.steps, r.broken, r.seconds
            );
            print!("peak reaction {:.6e} at displacement {:.4e}", r.peak_reaction, r.peak_displacement);
            match r.normalized_peak {
                Some(n) => println!(" (normalized {n:.4})"),
                None => println!(),
            }
            println!("written to {}", out.display());
        }
        Command::Sweep { config, out } => {
            let config = load_config(&config)?;
            let out = out.unwrap_or_else(|| config.output.dir.clone());
            let entries = io::sweep(&config, &out)?;
            print!("{}", io::sweep_csv(&config, &entries));
            if let Some((_, _, Err(e))) = entries.into_iter().find(|(_, _, r)| r.is_err()) {
                return Err(e);
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("info")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { ErrorCategory::Config.exit_code() } else { 0 };
            let _ = e.print();
            return ExitCode::from(code as u8);
        }
    };
    match execute(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            log::error!("{e}");
            eprintln!("error: {e}");
            ExitCode::from(e.category().exit_code() as u8)
        }
    }
}
