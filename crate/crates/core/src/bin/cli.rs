//! Command-line interface: `torus-gerbes <command> <specfile> [flags]`.
//! Exit codes: 0 all assertions pass, 1 assertion failure, 2 input error.

use clap::Parser;
use std::process::ExitCode;
use torus_gerbes::report::{run_on_text, Command, RunError, RunOptions};

#[derive(Parser, Debug)]
#[command(
    name = "torus-gerbes",
    about = "Exact Néron–Severi and holomorphic Brauer groups of complex tori, \
             with machine-verified Appell–Humbert cocycles",
    version
)]
struct Cli {
    /// verify-torus | ns | htb | htb-crosscheck | equiv | eval-gerbe |
    /// eval-universal | pullback | verify
    command: String,

    /// Path to the torus spec JSON file
    specfile: String,

    /// Seed for all pseudo-random sampling
    #[arg(long, default_value_t = 0)]
    seed: u64,

    /// Sample count for the verification checks
    #[arg(long, default_value_t = 500)]
    samples: usize,

    /// Emit the report as JSON (default)
    #[arg(long, conflicts_with = "text")]
    json: bool,

    /// Emit the report as plain text
    #[arg(long)]
    text: bool,

    /// Also print approximate numeric values via the algebra's real embedding
    #[arg(long)]
    embed: bool,

    /// Include wall-clock timing in the report (breaks byte-reproducibility)
    #[arg(long)]
    timing: bool,

    /// Restrict `pullback` to a single n
    #[arg(long, allow_hyphen_values = true)]
    n: Option<i64>,

    /// HTB basis index used by `eval-gerbe`
    #[arg(long, default_value_t = 0)]
    e_index: usize,

    /// First gerbe class file for `equiv`
    #[arg(long)]
    class1: Option<String>,

    /// Second gerbe class file for `equiv`
    #[arg(long)]
    class2: Option<String>,
}

fn read(path: &str) -> Result<String, String> {
    std::fs::read_to_string(path).map_err(|e| format!("cannot read `{path}`: {e}"))
}

fn run(cli: Cli) -> Result<(String, bool), (String, u8)> {
    let command = Command::parse(&cli.command)
        .ok_or_else(|| (format!("unknown command `{}`", cli.command), 2u8))?;
    let spec_text = read(&cli.specfile).map_err(|e| (e, 2))?;
    if cli.embed {
        // embedding is display-only; require it to exist for non-rational algebras
        if let Ok((torus, _)) = torus_gerbes::specfile::parse_spec(&spec_text) {
            if torus.spec().dim() > 1 && torus.spec().real_embedding().is_none() {
                return Err((
                    "--embed requires a real_embedding in the algebra declaration".into(),
                    2,
                ));
            }
        }
    }
    let mut opts = RunOptions {
        seed: cli.seed,
        samples: cli.samples,
        embed: cli.embed,
        timing: cli.timing,
        pullback_n: cli.n,
        e_index: cli.e_index,
        ..RunOptions::default()
    };
    if let Some(p) = &cli.class1 {
        opts.class1 = Some(read(p).map_err(|e| (e, 2))?);
    }
    if let Some(p) = &cli.class2 {
        opts.class2 = Some(read(p).map_err(|e| (e, 2))?);
    }
    match run_on_text(&spec_text, command, &opts) {
        Ok(report) => {
            let rendered = if cli.text { report.to_text() } else { report.to_json() };
            Ok((rendered, report.passed))
        }
        Err(RunError::Spec(e)) => Err((e.to_string(), 2)),
        Err(RunError::UnknownCommand(c)) => Err((format!("unknown command `{c}`"), 2)),
        Err(RunError::Input(m)) => Err((m, 2)),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok((rendered, passed)) => {
            println!("{rendered}");
            if passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err((msg, code)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}
