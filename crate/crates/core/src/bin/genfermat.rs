use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use genfermat::cli::{run, JobConfig};

fn main() -> ExitCode {
    let config = match JobConfig::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let out = run(&config);
    print!("{}", out.stdout);
    eprint!("{}", out.stderr);
    let _ = std::io::stdout().flush();
    ExitCode::from(out.code as u8)
}
