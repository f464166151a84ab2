//! Command-line front end for `flatmass-core`.

pub mod args;
pub mod audit;
pub mod beta_sweep;
pub mod commands;
pub mod error;
pub mod output;
pub mod structure_file;

use std::fs::File;
use std::io::{BufWriter, Write};

use args::{Cli, Command};
use error::CliResult;
use output::Table;

pub fn build_table(cli: &Cli) -> CliResult<Table> {
    let hbar = cli.common.hbar;
    match &cli.command {
        Command::Step(a) => commands::step(a, hbar),
        Command::Barrier(a) => commands::barrier(a, hbar),
        Command::Well(a) => commands::well(a, hbar),
        Command::Multibarrier(a) => commands::multibarrier(a, hbar),
        Command::Scatter(a) => commands::scatter_file(a, hbar),
        Command::BetaSweep(a) => beta_sweep::run(a, commands::constants(hbar)?),
        Command::Audit => audit::run(),
    }
}

pub fn run(cli: &Cli) -> CliResult<()> {
    let table = build_table(cli)?;
    let mut out: Box<dyn Write> = match &cli.common.out {
        Some(path) => Box::new(BufWriter::new(File::create(path)?)),
        None => Box::new(BufWriter::new(std::io::stdout().lock())),
    };
    if cli.common.json {
        output::write_json_lines(&table, &mut out)?;
    } else {
        output::write_csv(&table, &mut out)?;
    }
    out.flush()?;
    Ok(())
}
