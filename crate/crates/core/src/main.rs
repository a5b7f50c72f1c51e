use clap::Parser;

use sminimal::cli::{run, Cli};

fn main() {
    let cli = Cli::parse();
    let out = run(&cli);
    if out.code >= 2 {
        eprint!("{}", out.report);
    } else {
        print!("{}", out.report);
    }
    std::process::exit(out.code);
}
