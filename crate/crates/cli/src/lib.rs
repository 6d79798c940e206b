//! Command-line front end for the `spacelike` library.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod args;
pub mod commands;
pub mod error;
pub mod output;

use std::fs::File;
use std::io::{self, BufWriter, Write};

use args::{Cli, Command};
use commands::*;
use error::Result;
use output::emit;

/// Runs the parsed command and writes its table.
pub fn run(cli: &Cli) -> Result<()> {
    let mut sink: Box<dyn Write> = match &cli.output {
        Some(path) => Box::new(BufWriter::new(File::create(path)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    };
    let f = cli.format;
    match &cli.command {
        Command::Report => emit(&cmd_report()?, &REPORT_COLUMNS, f, &mut sink)?,
        Command::Propagator(a) => emit(&cmd_propagator(a)?, &PROPAGATOR_COLUMNS, f, &mut sink)?,
        Command::Window(a) => emit(&cmd_window(a)?, &WINDOW_COLUMNS, f, &mut sink)?,
        Command::Waveguide(a) => emit(&cmd_waveguide(a)?, &WAVEGUIDE_COLUMNS, f, &mut sink)?,
        Command::Nearfield(a) => emit(&cmd_nearfield(a)?, &NEARFIELD_COLUMNS, f, &mut sink)?,
    }
    sink.flush()?;
    Ok(())
}
