//! Command-line front end for the graph repair library.

pub mod args;
pub mod commands;
pub mod error;
pub mod io;

use std::io::Write;

use args::{Cli, Command};
use commands::Report;
pub use error::{CliError, EXIT_MISMATCH};

/// Runs one command, writing its report to `out`. Returns whether every
/// check the command makes passed.
pub fn run(cli: &Cli, out: &mut dyn Write) -> Result<bool, CliError> {
    let mut report = Report::new(out);
    match &cli.command {
        Command::Repair(a) => commands::repair(a, &mut report),
        Command::Bound(a) => commands::bound(a, &mut report),
        Command::Lp(a) => commands::lp(a, &mut report),
        Command::Ensemble(a) => commands::ensemble(a, &mut report),
        Command::Gw(a) => commands::gw(a, &mut report),
        Command::Appendix(a) => commands::appendix(a, &mut report),
        Command::Coop(a) => commands::coop(a, &mut report),
    }
}
