use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::Parser;
use holegames_cli::args::{Cli, Command};
use holegames_cli::{grid, server, simulate, trace_dir, verify};

fn emit(text: &str, out: Option<&std::path::Path>) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Simulate(args) => {
            let summary = simulate::simulate(&args, trace_dir(args.out.clone()))?;
            print!("{}", summary.table());
            Ok(summary.ok())
        }
        Command::Verify { file } => {
            let verdict = verify::verify(&file)?;
            if verdict.ok {
                println!("{}", verdict.message);
            } else {
                eprintln!("{}", verdict.message);
            }
            Ok(verdict.ok)
        }
        Command::CountHoles { k, variant, file } => {
            println!("{}", verify::count_holes(&file, k, variant.into())?);
            Ok(true)
        }
        Command::Grid { action } => {
            let (text, ok) = grid::run(&action)?;
            println!("{text}");
            Ok(ok)
        }
        Command::Serve { port, trace_dir } => {
            let rt = tokio::runtime::Runtime::new()?;
            rt.block_on(server::serve(port, trace_dir))?;
            Ok(true)
        }
        Command::RenderSvg { file, breaker, out } => {
            emit(&verify::render_svg(&file, breaker.as_deref())?, out.as_deref())?;
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
