use clap::Parser;
use fcat_core::cli_io::{run, Cli, ReportFormat};

fn main() {
    let cli = Cli::parse();
    let (code, report) = run(&cli);
    match cli.report {
        ReportFormat::Json => println!("{}", report.to_json()),
        ReportFormat::Text => print!("{}", report.to_text()),
    }
    if let Some(e) = &report.error {
        eprintln!("error: {e}");
    }
    std::process::exit(code);
}
