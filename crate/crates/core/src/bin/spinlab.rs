use clap::Parser;
use spinlab::cli::{run, Cli};

fn main() {
    let cli = Cli::parse();
    if let Err(e) = run(&cli) {
        eprintln!("spinlab: {e}");
        std::process::exit(e.code);
    }
}
