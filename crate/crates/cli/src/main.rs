use std::io::Write;

use clap::Parser;

use hamcount_cli::{run, RunConfig};

fn main() {
    let cfg = RunConfig::parse();
    let outcome = run(&cfg);
    print!("{}", outcome.stdout);
    let _ = std::io::stdout().flush();
    eprint!("{}", outcome.stderr);
    std::process::exit(outcome.exit_code);
}
