use clap::Parser;

fn main() {
    let cli = virteq::cli::Cli::parse();
    let mut stdout = std::io::stdout();
    let mut stderr = std::io::stderr();
    let code = virteq::cli::run(&cli, &mut stdout, &mut stderr);
    std::process::exit(code);
}
