use clap::Parser;

fn main() {
    let args = finsler_cli::Args::parse();
    std::process::exit(finsler_cli::main_with(&args));
}
