use clap::Parser;
use plane110::cli::{run, Cli};

fn main() {
    let out = run(&Cli::parse());
    print!("{}", out.output);
    std::process::exit(out.code);
}
