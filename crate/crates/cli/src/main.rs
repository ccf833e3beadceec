use std::path::PathBuf;
use std::process;

use clap::{Parser, Subcommand};
use twisted_cli::{parse_config_in, run, ExitCode, Format, RunConfig};
use twisted_core::group::ExtensionSpec;
use twisted_core::verify::Suite;

#[derive(Parser)]
#[command(
    name = "twconv",
    version,
    about = "Verification battery for finite twisted convolution algebras"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the battery and write a report.
    Run(RunArgs),
    /// Print the extension data (kernel, quotient, section, cocycle) for a spec.
    Describe {
        /// For example "Q8 / <i>".
        spec: String,
    },
}

#[derive(clap::Args)]
struct RunArgs {
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    seed: Option<u64>,
    /// Restrict to these suites; repeatable.
    #[arg(long = "suite")]
    suites: Vec<String>,
    /// Replace the configured extensions; repeatable.
    #[arg(long = "extension")]
    extensions: Vec<String>,
    #[arg(long, value_parser = ["csv", "table"])]
    format: Option<String>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    threads: Option<usize>,
}

fn config_error(message: impl std::fmt::Display) -> ! {
    eprintln!("error: {message}");
    process::exit(ExitCode::Config as i32)
}

/// Config file first, then flags on top.
fn load(args: RunArgs) -> RunConfig {
    let mut config = match &args.config {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .unwrap_or_else(|e| config_error(format!("cannot read {}: {e}", path.display())));
            parse_config_in(&text, path.parent())
                .unwrap_or_else(|e| config_error(format!("{}: {e}", path.display())))
        }
        None => RunConfig::default(),
    };
    if let Some(seed) = args.seed {
        config.suite.seed = seed;
    }
    if !args.suites.is_empty() {
        config.suite.suites = args
            .suites
            .iter()
            .map(|s| s.parse::<Suite>().unwrap_or_else(|e| config_error(e)))
            .collect();
    }
    if !args.extensions.is_empty() {
        config.suite.extensions = args.extensions;
    }
    if let Some(f) = args.format {
        config.format = f.parse::<Format>().unwrap_or_else(|e| config_error(e));
    }
    if args.out.is_some() {
        config.out = args.out;
    }
    if let Some(n) = args.threads {
        if n == 0 {
            config_error("--threads must be at least 1");
        }
        config.threads = Some(n);
    }
    if let Err(e) = config.suite.validate() {
        config_error(e);
    }
    config
}

fn describe(spec: &str) -> Result<(), twisted_core::Error> {
    let ext = spec.parse::<ExtensionSpec>()?.build()?;
    let (g, h) = (ext.total(), ext.quotient());
    let labels = |ids: &[usize]| {
        ids.iter()
            .map(|&i| g.label(i))
            .collect::<Vec<_>>()
            .join(" ")
    };
    println!("extension  {}", ext.label());
    println!("G          {} (order {})", g.name(), g.order());
    println!("K          {{{}}}", labels(ext.kernel()));
    println!("H          {{{}}}", h.labels().join(" "));
    println!("section    {}", labels(ext.section()));
    println!(
        "split      {}",
        if ext.is_split() {
            "yes (section is a homomorphism)"
        } else if ext.split().is_some() {
            "yes (another section is a homomorphism)"
        } else {
            "no"
        }
    );
    println!("cocycle");
    for x in 0..h.order() {
        let row: Vec<&str> = (0..h.order()).map(|y| g.label(ext.tau(x, y))).collect();
        println!("  {:>4} | {}", h.label(x), row.join(" "));
    }
    Ok(())
}

fn main() {
    match Cli::parse().command {
        Command::Run(args) => {
            let config = load(args);
            process::exit(run(&config) as i32);
        }
        Command::Describe { spec } => {
            if let Err(e) = describe(&spec) {
                config_error(e);
            }
        }
    }
}
