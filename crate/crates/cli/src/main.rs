use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use pointproc::run::{self, Format, Pipeline, RunConfig, DEFAULT_INTENSITY_DRAWS};
use pointproc::verify::Suite;
use pointproc::Error;

/// Exit code when a verification suite fails.
const VERIFY_FAILED: u8 = 4;

#[derive(Parser)]
#[command(
    name = "pointproc",
    version,
    about = "Run and check point-process pipelines"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Sample draws from a pipeline.
    Draw {
        /// Pipeline source file, or `-` for stdin.
        file: PathBuf,
        #[arg(long, env = "POINTPROC_SEED", default_value_t = run::DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value_t = 5)]
        n: u64,
        #[arg(long, default_value = "csv", value_parser = ["csv", "svg", "json"])]
        format: String,
    },
    /// Compare compositional and empirical intensities on regions.
    Intensity {
        file: PathBuf,
        /// Region literal, e.g. `rect(0,0,0.5,0.5)`; repeatable.
        #[arg(long = "region", required = true)]
        regions: Vec<String>,
        #[arg(long, default_value_t = DEFAULT_INTENSITY_DRAWS)]
        n: u64,
        #[arg(long, env = "POINTPROC_SEED", default_value_t = run::DEFAULT_SEED)]
        seed: u64,
    },
    /// Run a law-checking suite and print a JSON report.
    Verify {
        #[arg(value_parser = ["bag-laws", "gb-laws", "distributive", "morphism", "empirical"])]
        suite: String,
        #[arg(long, env = "POINTPROC_SEED", default_value_t = run::DEFAULT_SEED)]
        seed: u64,
    },
    /// Print the syntax tree of a pipeline as JSON.
    Parse { file: PathBuf },
}

fn read_source(path: &PathBuf) -> Result<String, String> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| format!("reading stdin: {e}"))?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).map_err(|e| format!("reading {}: {e}", path.display()))
    }
}

fn report(e: &Error) -> ExitCode {
    eprintln!("error: {e}");
    if let Error::Parse(p) = e {
        if !p.expected.is_empty() {
            eprintln!("expected one of: {}", p.expected.join(", "));
        }
    }
    ExitCode::from(e.exit_code() as u8)
}

fn emit(s: &str) -> ExitCode {
    let mut out = io::stdout().lock();
    if out
        .write_all(s.as_bytes())
        .and_then(|_| out.flush())
        .is_err()
    {
        return ExitCode::from(2);
    }
    ExitCode::SUCCESS
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let file = match &cli.cmd {
        Cmd::Draw { file, .. } | Cmd::Intensity { file, .. } | Cmd::Parse { file } => Some(file),
        Cmd::Verify { .. } => None,
    };
    let src = match file.map(read_source).transpose() {
        Ok(s) => s.unwrap_or_default(),
        Err(msg) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
    };
    let result = match cli.cmd {
        Cmd::Parse { .. } => pointproc::dsl::parse(&src)
            .map_err(Error::from)
            .map(|ast| run::ast_json(&ast)),
        Cmd::Draw {
            seed, n, format, ..
        } => (|| {
            let cfg = RunConfig::new(seed, n, format.parse::<Format>()?)?;
            run::run_draws(&Pipeline::compile(&src)?, &cfg)
        })(),
        Cmd::Intensity {
            regions, n, seed, ..
        } => Pipeline::compile(&src)
            .and_then(|p| run::run_intensity(&p, &regions, n, seed))
            .map(|rows| run::intensity_json(&rows)),
        Cmd::Verify { suite, seed } => {
            let r = suite
                .parse::<Suite>()
                .and_then(|s| run::run_verify(s, seed));
            return match r {
                Ok(r) => {
                    let mut s = serde_json::to_string_pretty(&r).expect("plain JSON");
                    s.push('\n');
                    let code = emit(&s);
                    if r.passed {
                        code
                    } else {
                        ExitCode::from(VERIFY_FAILED)
                    }
                }
                Err(e) => report(&e),
            };
        }
    };
    match result {
        Ok(s) => emit(&s),
        Err(e) => report(&e),
    }
}
