use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use mstn::fixtures::TABLE1_CSV;
use mstn::io::{load_bundle, load_scenario, save_bundle};
use mstn::pipeline::{bundle_traits, frequency_report, run_checks, simulate, train_scenario, PipelineConfig};
use mstn::render::{render_matrix, render_traits, OutputFormat, TableOrder};
use mstn::traits::builtin_mapping;
use mstn::frequency::FrequencyMode;
use mstn::Error;

#[derive(Parser)]
#[command(name = "mstn", version, about = "Mental state transition network learning pipeline")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct Common {
    /// Flat TOML configuration file.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Overrides the configured seed.
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[arg(long, global = true, value_parser = ["mean", "argmax"])]
    mode: Option<String>,
    #[arg(long, global = true, value_parser = ["csv", "text", "structured"])]
    format: Option<String>,
    #[arg(long = "table-order", global = true, value_parser = ["paper1", "paper3"])]
    table_order: Option<String>,
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Replay a scenario through the baseline network and print the traces.
    Simulate {
        #[arg(long)]
        scenario: PathBuf,
    },
    /// Learn from a scenario and write a model bundle to --out.
    Train {
        #[arg(long)]
        scenario: PathBuf,
    },
    /// Print the learned transition matrix of a bundle.
    Freq {
        #[arg(long)]
        bundle: PathBuf,
    },
    /// Print Big Five trait scores of a bundle.
    Traits {
        #[arg(long)]
        bundle: PathBuf,
    },
    /// Run the built-in self-checks.
    Check {
        /// Verify this file instead of the embedded baseline table.
        #[arg(long)]
        fixture: Option<PathBuf>,
    },
}

fn load_config(common: &Common) -> Result<PipelineConfig, Error> {
    let mut config = match &common.config {
        Some(path) => PipelineConfig::from_toml(&std::fs::read_to_string(path)?)?,
        None => PipelineConfig::default(),
    };
    if let Some(seed) = common.seed {
        config.seed = seed;
    }
    if let Some(mode) = &common.mode {
        config.frequency_mode = mode.parse::<FrequencyMode>()?;
    }
    if let Some(format) = &common.format {
        config.output_format = format.parse::<OutputFormat>()?;
    }
    if let Some(order) = &common.table_order {
        config.table_order = order.parse::<TableOrder>()?;
    }
    config.validate()?;
    Ok(config)
}

fn emit(text: &str, out: Option<&Path>) -> Result<(), Error> {
    match out {
        Some(path) => std::fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    let config = load_config(&cli.common)?;
    let out = cli.common.out.as_deref();
    match cli.command {
        Command::Simulate { scenario } => {
            let report = simulate(&load_scenario(scenario)?, &config)?;
            if config.output_format == OutputFormat::Structured {
                emit(&report.to_json(), out)?;
            } else {
                let mut text = String::new();
                for ep in &report.episodes {
                    text.push_str(&format!("episode {} reward {:+.4}\n", ep.index, ep.reward));
                    for s in &ep.steps {
                        let group = s.group.map_or("-".to_string(), |g| g.to_string());
                        text.push_str(&format!("  {} --[{}]--> {}\n", s.from, group, s.to));
                    }
                }
                emit(&text, out)?;
            }
        }
        Command::Train { scenario } => {
            let artifacts = train_scenario(&load_scenario(scenario)?, &config)?;
            match out {
                Some(path) => save_bundle(&artifacts.bundle, path)?,
                None => return Err(Error::Config("train needs --out for the bundle".into())),
            }
            println!("{}", artifacts.report.to_json());
        }
        Command::Freq { bundle } => {
            let (bundle, _) = load_bundle(bundle, Some(&config.hash()))?;
            let report = frequency_report(&bundle, config.frequency_mode, config.emphasis_threshold)?;
            let text = render_matrix(report.matrix.rows(), config.table_order, config.output_format, &report.emphasized);
            emit(&text, out)?;
        }
        Command::Traits { bundle } => {
            let (bundle, _) = load_bundle(bundle, Some(&config.hash()))?;
            let scores = bundle_traits(&bundle);
            let text = render_traits(&scores, bundle.frequency.rows(), &builtin_mapping(), config.output_format, 3);
            emit(&text, out)?;
        }
        Command::Check { fixture } => {
            let text = match fixture {
                Some(path) => std::fs::read_to_string(path)?,
                None => TABLE1_CSV.to_string(),
            };
            let results = run_checks(&config, &text)?;
            for r in &results {
                println!("{:<16} {}  {}", r.name, if r.passed { "ok  " } else { "FAIL" }, r.detail);
            }
            let failed: Vec<&str> = results.iter().filter(|r| !r.passed).map(|r| r.name).collect();
            if !failed.is_empty() {
                eprintln!("failed checks: {}", failed.join(", "));
                return Ok(ExitCode::from(3));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
