use clap::Parser;

fn main() {
    let cli = hodge_residue::cli::Cli::parse();
    std::process::exit(hodge_residue::cli::run(cli));
}
