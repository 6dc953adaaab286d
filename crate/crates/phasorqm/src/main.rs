use std::path::PathBuf;
use std::process::ExitCode;

use phasorqm::config::{parse_config_with_dir, Command};

const USAGE: &str = "usage: phasorqm <propagate|eigen|spectrum|vortex|verify> --config <path> [--output <dir>]";

fn fail(code: u8, message: &str) -> ExitCode {
    eprintln!("error[{code}]: {message}");
    ExitCode::from(code)
}

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().skip(1).collect();
    if args.is_empty() {
        return fail(1, USAGE);
    }

    let Some(command) = Command::parse(&args[0]) else {
        return fail(1, &format!("unknown command `{}`; {USAGE}", args[0]));
    };

    let mut config_path: Option<PathBuf> = None;
    let mut output: Option<PathBuf> = None;
    let mut i = 1;
    while i < args.len() {
        match args[i].as_str() {
            "--config" => {
                let Some(v) = args.get(i + 1) else {
                    return fail(1, "--config needs a path");
                };
                config_path = Some(PathBuf::from(v));
                i += 2;
            }
            "--output" => {
                let Some(v) = args.get(i + 1) else {
                    return fail(1, "--output needs a directory");
                };
                output = Some(PathBuf::from(v));
                i += 2;
            }
            other => return fail(1, &format!("unexpected argument `{other}`; {USAGE}")),
        }
    }
    let Some(config_path) = config_path else {
        return fail(1, &format!("--config is required; {USAGE}"));
    };

    let text = match std::fs::read_to_string(&config_path) {
        Ok(t) => t,
        Err(e) => return fail(1, &format!("cannot read {}: {e}", config_path.display())),
    };
    let config = match parse_config_with_dir(&text, config_path.parent()) {
        Ok(c) => c,
        Err(e) => return fail(e.exit_code() as u8, &e.to_string()),
    };
    if config.command != command {
        return fail(
            1,
            &format!(
                "config declares command `{}` but the command line says `{}`",
                config.command.name(),
                command.name()
            ),
        );
    }

    match phasorqm::runner::run(&config, output.as_deref()) {
        Ok(files) => {
            for f in files {
                println!("wrote {}", f.display());
            }
            ExitCode::SUCCESS
        }
        Err(e) => fail(e.exit_code() as u8, &e.to_string()),
    }
}
