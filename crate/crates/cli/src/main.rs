use std::process::ExitCode;

use clap::Parser;

use milnor_cli::{run, Cli, Format, Report, Status, DEGREE_CAP_ENV};
use milnor_core::freelie::set_degree_cap;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let report = match std::env::var(DEGREE_CAP_ENV) {
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(cap) if cap >= 1 => {
                set_degree_cap(cap);
                run(&cli)
            }
            _ => {
                let mut r = Report::new("config");
                r.fail(Status::Usage, "Usage", &format!("{DEGREE_CAP_ENV} must be a positive integer, got `{v}`"));
                r
            }
        },
        Err(_) => run(&cli),
    };
    match cli.format {
        Format::Json => print!("{}", report.to_json()),
        Format::Text => print!("{}", report.to_text()),
    }
    ExitCode::from(report.exit_code() as u8)
}
