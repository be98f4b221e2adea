use clap::Parser;

use surfdyn_cli::{run, Cli, OutputFormat, RunConfig};

fn main() {
    let cli = Cli::parse();
    let config = RunConfig::from_cli(cli);
    match run(&config) {
        Ok(report) => {
            match config.format {
                OutputFormat::Table => print!("{}", report.render_table()),
                OutputFormat::Json => println!("{}", report.to_json()),
            }
            std::process::exit(report.exit_code());
        }
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(e.exit_code());
        }
    }
}
