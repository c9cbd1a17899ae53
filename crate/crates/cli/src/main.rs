//! `fraccal`: evaluate fractional operators, run verification suites and print tables.

mod config;
mod fracop;
mod report;
mod suites;
mod tables;

use clap::{Parser, Subcommand, ValueEnum};
use config::RunConfig;
use report::{emit, to_json, VerifyReport, VERSION};
use std::process::ExitCode;

#[derive(Parser, Debug)]
#[command(name = "fraccal", version = VERSION, about = "Fractional calculus in the complex domain")]
struct Cli {
    #[command(flatten)]
    config: RunConfig,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Apply D_alpha or I_alpha to a series
    Fracop(fracop::FracopArgs),
    /// Run a verification suite; exit 0 when every case passes, 1 otherwise
    Verify(VerifyArgs),
    /// Print a CSV or JSON table
    Table(tables::TableArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Suite {
    EulerLtf,
    Jumps,
    LmDuality,
    Watson,
    Monodromy,
    EgLtf,
    Goursat,
    All,
}

#[derive(clap::Args, Debug)]
struct VerifyArgs {
    #[arg(value_enum)]
    suite: Suite,
    /// Gevrey constant A for the watson suite
    #[arg(long = "A", default_value_t = 0.5)]
    a: f64,
}

fn code_of(e: &fraccal::Error) -> u8 {
    match e {
        fraccal::Error::NonConvergence(_) => 3,
        _ => 2,
    }
}

fn fail(msg: impl std::fmt::Display, code: u8) -> ExitCode {
    eprintln!("fraccal: {msg}");
    ExitCode::from(code)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cfg = &cli.config;
    if let Err(e) = cfg.validate() {
        return fail(e, 2);
    }
    let rendered = match &cli.command {
        Command::Fracop(a) => fracop::run(a, cfg),
        Command::Table(a) => tables::run(a, cfg),
        Command::Verify(a) => {
            let name = a.suite.to_possible_value().expect("named").get_name().to_string();
            let rep = VerifyReport::new(&name, cfg, suites::run(&name, cfg, a.a));
            let pass = rep.pass;
            if let Err(e) = emit(cfg, || to_json(&rep), || rep.to_csv()) {
                return fail(e, 2);
            }
            return ExitCode::from(if pass { 0 } else { 1 });
        }
    };
    match rendered {
        Ok((json, csv)) => match emit(cfg, || json, || csv) {
            Ok(()) => ExitCode::SUCCESS,
            Err(e) => fail(e, 2),
        },
        Err(e) => fail(&e, code_of(&e)),
    }
}
