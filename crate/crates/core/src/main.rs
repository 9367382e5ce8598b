use clap::Parser;

use cuntzkit::cli::{run, Cli, EXIT_OK};

fn main() {
    let cli = Cli::parse();
    let (code, out) = run(&cli);
    if code == EXIT_OK {
        print!("{out}");
    } else {
        eprint!("{out}");
    }
    std::process::exit(code);
}
