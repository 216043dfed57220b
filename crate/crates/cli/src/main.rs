use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use tauspinor_cli::config::{parse_config, split_override, ConfigError, ScenarioConfig, Sources, OUT_ENV};
use tauspinor_cli::exit;
use tauspinor_cli::scenarios::{run_scenario, ScenarioError, SCENARIOS};
use tauspinor_cli::verify::run_verify;

/// Verification suite and data scenarios for the Dirac equation with a
/// proper-time coordinate.
#[derive(Parser)]
#[command(name = "tauspinor", version)]
struct Cli {
    /// Flat `key = value` config file.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Override one config key; repeatable. Wins over the file.
    #[arg(long = "set", value_name = "KEY=VALUE", global = true, value_parser = split_override)]
    set: Vec<(String, String)>,
    /// Seed for randomized checks (same as --set seed=N).
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Output directory (beats TAUSPINOR_OUT and the config file).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run every invariant check and write <out>/report.json.
    Verify,
    /// Write the data files of one scenario into <out>/<scenario>/.
    Run { scenario: String },
    /// Print the available scenarios.
    ListScenarios,
}

fn load(cli: &Cli) -> Result<ScenarioConfig, ConfigError> {
    let mut overrides = cli.set.clone();
    if let Some(seed) = cli.seed {
        overrides.push(("seed".into(), seed.to_string()));
    }
    if let Some(out) = &cli.out {
        overrides.push(("out".into(), out.display().to_string()));
    }
    let sources = Sources { file: cli.config.as_deref(), env_out: std::env::var(OUT_ENV).ok(), overrides };
    parse_config(&sources)
}

fn run(cli: Cli) -> i32 {
    if let Command::ListScenarios = cli.command {
        for (name, about) in SCENARIOS {
            println!("{name:<16} {about}");
        }
        return exit::OK;
    }
    let mut cfg = match load(&cli) {
        Ok(cfg) => cfg,
        Err(e @ ConfigError::Read { .. }) => {
            eprintln!("error: {e}");
            return exit::IO;
        }
        Err(e) => {
            eprintln!("error: {e}");
            return exit::USAGE;
        }
    };
    match cli.command {
        Command::Verify => {
            let report = run_verify(&cfg);
            let path = cfg.out.join("report.json");
            if let Err(e) = std::fs::create_dir_all(&cfg.out).and_then(|_| report.write(&path)) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return exit::IO;
            }
            for c in &report.claims {
                let verdict = if c.passed { "PASS" } else { "FAIL" };
                match c.residual {
                    Some(r) => println!("[{verdict}] {:<36} {r:.3e} <= {:.1e}", c.id, c.tolerance),
                    None => println!("[{verdict}] {:<36} {}", c.id, c.error.as_deref().unwrap_or("no residual")),
                }
            }
            let s = report.summary;
            println!("{}/{} claims passed; report at {}", s.passed, s.total, path.display());
            if report.all_passed() {
                exit::OK
            } else {
                exit::VERIFICATION_FAILED
            }
        }
        Command::Run { scenario } => {
            cfg.scenario = Some(scenario.clone());
            let manifest = match run_scenario(&cfg, &scenario) {
                Ok(m) => m,
                Err(e) => {
                    eprintln!("error: {e}");
                    return match e {
                        ScenarioError::Io { .. } => exit::IO,
                        ScenarioError::Unknown(_) | ScenarioError::Compute(_) => exit::USAGE,
                    };
                }
            };
            for c in manifest.checks.iter().filter(|c| !c.passed) {
                eprintln!("check failed: {} = {:e} (tolerance {:e})", c.name, c.value, c.tolerance);
            }
            println!("wrote {} files to {}", manifest.files.len() + 1, cfg.out.join(&scenario).display());
            if manifest.passed() {
                exit::OK
            } else {
                exit::VERIFICATION_FAILED
            }
        }
        Command::ListScenarios => unreachable!("handled above"),
    }
}

fn main() -> ExitCode {
    // clap exits with 2 on usage errors and 0 for --help/--version
    let cli = Cli::parse();
    ExitCode::from(run(cli) as u8)
}
