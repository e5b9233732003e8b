use clap::Parser;

fn main() {
    let cli = powtool::Cli::parse();
    let status = powtool::run(&cli, &mut std::io::stdout().lock(), &mut std::io::stderr().lock());
    std::process::exit(status);
}
