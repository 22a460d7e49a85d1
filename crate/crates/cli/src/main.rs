use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use mfg_cli::checks::{run_suite, Suite};
use mfg_cli::config::RunConfig;
use mfg_cli::presets::{preset_example, PAPER_EXACT_DT};
use mfg_cli::runner::run_from_config;
use mfg_cli::svg::{emit_svg_plot, PlotOptions};
use mfg_cli::Result;
use mfg_core::solvers::ProblemKind;

/// Two-state mean-field game solver suite.
///
/// Exit codes: 0 success, 1 check failure, 2 configuration error,
/// 3 numerical failure.
#[derive(Parser)]
#[command(name = "mfg", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a solve described by a JSON configuration file.
    Solve {
        #[arg(long)]
        config: PathBuf,
    },
    /// Run one of the two built-in worked examples.
    Example {
        /// Example id: 1 (shock formation) or 2 (monotonicity loss).
        #[arg(long)]
        id: u8,
        #[arg(long, value_enum)]
        problem: ProblemArg,
        /// Output directory (defaults to the config resolution chain).
        #[arg(long)]
        output_dir: Option<PathBuf>,
        /// Override the time step.
        #[arg(long)]
        dt: Option<f64>,
        /// Use the reference step 1e-5 instead of the default 1e-4.
        #[arg(long)]
        paper_exact: bool,
        /// Also emit an SVG plot of the snapshots.
        #[arg(long)]
        svg: bool,
    },
    /// Run a cross-check suite and report one line per criterion.
    Check {
        #[arg(long, value_enum)]
        suite: SuiteArg,
    },
    /// Render an SVG line plot from an emitted CSV.
    Plot {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        output: PathBuf,
        /// Column headers to draw (default: all).
        #[arg(long, num_args = 1..)]
        columns: Option<Vec<String>>,
        #[arg(long)]
        title: Option<String>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ProblemArg {
    ReducedPrimal,
    ReducedDual,
    PotentialPrimal,
    PotentialDual,
}

impl From<ProblemArg> for ProblemKind {
    fn from(p: ProblemArg) -> ProblemKind {
        match p {
            ProblemArg::ReducedPrimal => ProblemKind::ReducedPrimal,
            ProblemArg::ReducedDual => ProblemKind::ReducedDual,
            ProblemArg::PotentialPrimal => ProblemKind::PotentialPrimal,
            ProblemArg::PotentialDual => ProblemKind::PotentialDual,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Consistency,
    Examples,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn dispatch(command: Command) -> Result<ExitCode> {
    match command {
        Command::Solve { config } => {
            let text = std::fs::read_to_string(&config)?;
            let cfg = RunConfig::from_json(&text)?;
            report_run(&cfg)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Example {
            id,
            problem,
            output_dir,
            dt,
            paper_exact,
            svg,
        } => {
            let mut cfg = preset_example(id, problem.into())?;
            if paper_exact {
                cfg.time.dt = PAPER_EXACT_DT;
            }
            if let Some(dt) = dt {
                cfg.time.dt = dt;
            }
            if let Some(dir) = output_dir {
                cfg.output.directory = Some(dir);
            }
            if svg {
                cfg.output.formats = Some(vec![
                    mfg_cli::config::OutputFormat::Csv,
                    mfg_cli::config::OutputFormat::Svg,
                ]);
            }
            report_run(&cfg)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Check { suite } => {
            let suite = match suite {
                SuiteArg::Consistency => Suite::Consistency,
                SuiteArg::Examples => Suite::Examples,
            };
            let outcomes = run_suite(suite);
            let mut all_ok = true;
            for outcome in &outcomes {
                println!("{}", outcome.line());
                all_ok &= outcome.passed;
            }
            Ok(if all_ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Command::Plot {
            input,
            output,
            columns,
            title,
        } => {
            emit_svg_plot(&input, &output, &PlotOptions { columns, title })?;
            println!("wrote {}", output.display());
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn report_run(cfg: &RunConfig) -> Result<()> {
    let (manifest, outputs) = run_from_config(cfg)?;
    println!(
        "solved {} in {} steps ({} ms); max CFL {:.4}",
        manifest.config.problem.name(),
        manifest.diagnostics.steps,
        manifest.duration_ms,
        manifest.diagnostics.max_cfl
    );
    if manifest.diagnostics.range_alert {
        println!(
            "note: Z left [-0.05, 1.05] (range [{:.3}, {:.3}]); the mismatched dual terminal \
             and boundary data drive transient excursions",
            manifest.diagnostics.min_value, manifest.diagnostics.max_value
        );
    }
    if manifest.diagnostics.boundary_slope_alert {
        println!("note: steep final-state gradients near the domain ends; consider a larger L");
    }
    println!("wrote {}", outputs.csv.display());
    if let Some(svg) = &outputs.svg {
        println!("wrote {}", svg.display());
    }
    println!("wrote {}", outputs.manifest.display());
    Ok(())
}
