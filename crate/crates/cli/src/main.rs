use std::io::{self, Read, Write};
use std::process::ExitCode;

fn main() -> ExitCode {
    let mut stdin_text: Option<String> = None;
    let outcome = match <toricnef_cli::Cli as clap::Parser>::try_parse() {
        Ok(cli) => toricnef_cli::run(&cli, &mut |path| {
            if path != "-" {
                return std::fs::read_to_string(path);
            }
            if stdin_text.is_none() {
                let mut s = String::new();
                io::stdin().read_to_string(&mut s)?;
                stdin_text = Some(s);
            }
            Ok(stdin_text.clone().unwrap_or_default())
        }),
        Err(e) => e.exit(),
    };
    // a closed pipe downstream is not an error worth reporting
    let _ = io::stdout().write_all(outcome.stdout.as_bytes());
    let _ = io::stderr().write_all(outcome.stderr.as_bytes());
    ExitCode::from(u8::try_from(outcome.code).unwrap_or(2))
}
