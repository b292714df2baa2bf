use clap::Parser;
use orbitlab::cli::{execute, Cli};

fn main() {
    let cli = Cli::parse();
    let outcome = execute(&cli);
    println!("{}", outcome.report.to_json());
    eprintln!("{}", outcome.summary);
    std::process::exit(outcome.code);
}
