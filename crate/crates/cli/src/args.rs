//! Command-line definition and `key = value` scenario files.

use std::collections::HashSet;
use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::{CliError, Result};
use crate::output::Format;

#[derive(Debug, Parser)]
#[command(
    name = "spacelike",
    version,
    about = "Spacelike propagation amplitudes and evanescent waveguide modes",
    args_override_self = true
)]
pub struct Cli {
    /// Write output here instead of standard output.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,

    /// Scenario file of `key = value` lines; keys are flag names without `--`.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Reproduce the headline numbers: Compton wavelengths, threshold, D(z).
    Report,
    /// Sweep the propagation amplitude D.
    #[command(allow_negative_numbers = true)]
    Propagator(PropagatorArgs),
    /// Sweep separations through the Compton-wavelength window.
    #[command(allow_negative_numbers = true)]
    Window(WindowArgs),
    /// Classify a guide mode across frequencies around cutoff.
    #[command(allow_negative_numbers = true)]
    Waveguide(WaveguideArgs),
    /// Sample the evanescent TE10 near field and its wave-equation residual.
    #[command(allow_negative_numbers = true)]
    Nearfield(NearfieldArgs),
}

/// Exactly one particle source; the electron when none is given.
#[derive(Debug, Clone, Default, Args)]
#[group(multiple = false)]
pub struct ParticleArgs {
    #[arg(long)]
    pub electron: bool,
    /// Rest mass in kg.
    #[arg(long, allow_hyphen_values = true)]
    pub mass_kg: Option<f64>,
    /// Guided photon with this cutoff, rad/s.
    #[arg(long, allow_hyphen_values = true)]
    pub omega_rad_s: Option<f64>,
    /// Guided photon with this cutoff in units of 10⁹ rad/s (no 2π).
    #[arg(long, allow_hyphen_values = true)]
    pub omega_ghz_angular: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Spacing {
    Linear,
    Log,
}

#[derive(Debug, Clone, Default, Args)]
pub struct SweepArgs {
    #[arg(long)]
    pub sweep_var: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub start: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub stop: Option<f64>,
    #[arg(long)]
    pub count: Option<usize>,
    #[arg(long, value_enum)]
    pub spacing: Option<Spacing>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodChoice {
    ClosedForm,
    Quadrature,
    Both,
}

#[derive(Debug, Clone, Args)]
pub struct PropagatorArgs {
    #[command(flatten)]
    pub particle: ParticleArgs,
    /// Sweep variable: z (invariant, in Compton wavelengths), dr (m) or dt (s).
    #[command(flatten)]
    pub sweep: SweepArgs,
    #[arg(long, value_enum, default_value_t = MethodChoice::Both)]
    pub method: MethodChoice,
    /// Frame rapidity for z sweeps; 0 is the equal-time frame.
    #[arg(long, allow_hyphen_values = true, default_value_t = 0.0)]
    pub rapidity: f64,
    /// Fixed time difference (s) for dr sweeps.
    #[arg(long, allow_hyphen_values = true, default_value_t = 0.0)]
    pub dt: f64,
    /// Fixed distance (m) for dt sweeps.
    #[arg(long, allow_hyphen_values = true)]
    pub dr: Option<f64>,
    /// Relative quadrature tolerance (default from SPACELIKE_TOL, else 1e-9).
    #[arg(long, allow_hyphen_values = true)]
    pub tolerance: Option<f64>,
    #[arg(long)]
    pub max_evals: Option<usize>,
}

#[derive(Debug, Clone, Args)]
pub struct WindowArgs {
    #[command(flatten)]
    pub particle: ParticleArgs,
    /// Sweep variable: dr_lambda (dr in Compton wavelengths), dr (m) or dt (s).
    #[command(flatten)]
    pub sweep: SweepArgs,
    #[arg(long, allow_hyphen_values = true, default_value_t = 0.0)]
    pub dt: f64,
    #[arg(long, allow_hyphen_values = true)]
    pub dr: Option<f64>,
}

/// Cutoff given directly or through guide dimensions and mode indices.
#[derive(Debug, Clone, Default, Args)]
pub struct CutoffArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub omega_c_rad_s: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub omega_c_ghz_angular: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub a_mm: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub b_mm: Option<f64>,
    #[arg(long, default_value_t = 1)]
    pub mode_n: u32,
    #[arg(long, default_value_t = 0)]
    pub mode_l: u32,
}

#[derive(Debug, Clone, Args)]
pub struct WaveguideArgs {
    #[command(flatten)]
    pub cutoff: CutoffArgs,
    /// Sweep variable: omega_ratio (ω/ω_c) or omega (rad/s).
    #[command(flatten)]
    pub sweep: SweepArgs,
}

#[derive(Debug, Clone, Args)]
pub struct NearfieldArgs {
    /// Slab width in mm; sets ω_c = cπ/a.
    #[arg(long, allow_hyphen_values = true, default_value_t = 22.86)]
    pub a_mm: f64,
    /// Drive frequency as a fraction of cutoff.
    #[arg(long, conflicts_with = "omega_rad_s")]
    pub omega_ratio: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub omega_rad_s: Option<f64>,
    #[arg(long, allow_hyphen_values = true, default_value_t = 1.0)]
    pub e0: f64,
    #[arg(long, default_value_t = 11)]
    pub nx: usize,
    #[arg(long, default_value_t = 11)]
    pub nz: usize,
    /// Depth of the grid in decay lengths 1/κ.
    #[arg(long, allow_hyphen_values = true, default_value_t = 5.0)]
    pub z_max_decay: f64,
    /// Finite-difference step in decay lengths 1/κ.
    #[arg(long, allow_hyphen_values = true, default_value_t = 1e-3)]
    pub step_decay: f64,
    /// Sample time, s.
    #[arg(long, allow_hyphen_values = true, default_value_t = 0.0)]
    pub t: f64,
}

/// Flags that select mutually exclusive sources. A group named on the
/// command line replaces the file's choice wholesale.
const EXCLUSIVE: [&[&str]; 3] = [
    &["electron", "mass-kg", "omega-rad-s", "omega-ghz-angular", "omega-ratio"],
    &["omega-c-rad-s", "omega-c-ghz-angular", "a-mm"],
    &["start", "stop", "count", "spacing", "sweep-var"],
];

const SUBCOMMANDS: [&str; 5] = ["report", "propagator", "window", "waveguide", "nearfield"];
const VALUED_GLOBALS: [&str; 3] = ["--output", "--format", "--config"];

/// Parses a scenario file into `(key, value)` pairs. Blank lines and lines
/// starting with `#` are ignored.
pub fn parse_config(text: &str) -> Result<Vec<(String, String)>> {
    let mut out = Vec::new();
    for (no, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (k, v) = line.split_once('=').ok_or_else(|| {
            CliError::usage(format!("config line {}: expected `key = value`", no + 1))
        })?;
        let key = k.trim().trim_start_matches("--").replace('_', "-");
        if key.is_empty() {
            return Err(CliError::usage(format!("config line {}: empty key", no + 1)));
        }
        out.push((key, v.trim().trim_matches('"').to_string()));
    }
    Ok(out)
}

fn flag_name(arg: &str) -> Option<&str> {
    arg.strip_prefix("--").map(|s| s.split('=').next().unwrap_or(s))
}

fn find_config(args: &[OsString]) -> Option<PathBuf> {
    let mut it = args.iter().skip(1);
    while let Some(a) = it.next() {
        let s = a.to_string_lossy();
        if s == "--config" {
            return it.next().map(PathBuf::from);
        }
        if let Some(p) = s.strip_prefix("--config=") {
            return Some(PathBuf::from(p));
        }
    }
    None
}

/// Splices the scenario file's settings into `args` ahead of the user's own
/// flags, so anything on the command line wins.
pub fn merge_config(args: Vec<OsString>, file: &[(String, String)]) -> Vec<OsString> {
    let given: HashSet<String> = args
        .iter()
        .filter_map(|a| flag_name(&a.to_string_lossy()).map(str::to_owned))
        .collect();
    let suppressed: HashSet<&str> = EXCLUSIVE
        .iter()
        .filter(|group| group.iter().any(|k| given.contains(*k)))
        .flat_map(|group| group.iter().copied())
        .collect();

    let mut injected = Vec::new();
    for (key, value) in file {
        if key == "config" || suppressed.contains(key.as_str()) {
            continue;
        }
        match value.as_str() {
            "true" => injected.push(OsString::from(format!("--{key}"))),
            "false" => {}
            _ => {
                injected.push(OsString::from(format!("--{key}")));
                injected.push(OsString::from(value));
            }
        }
    }

    // Insert right after the subcommand token.
    let mut pos = None;
    let mut i = 1;
    while i < args.len() {
        let s = args[i].to_string_lossy();
        if VALUED_GLOBALS.contains(&s.as_ref()) {
            i += 2;
            continue;
        }
        if SUBCOMMANDS.contains(&s.as_ref()) {
            pos = Some(i + 1);
            break;
        }
        i += 1;
    }
    let Some(pos) = pos else {
        return args;
    };
    let mut merged = args[..pos].to_vec();
    merged.extend(injected);
    merged.extend_from_slice(&args[pos..]);
    merged
}

fn read_config(path: &Path) -> Result<Vec<(String, String)>> {
    let text = std::fs::read_to_string(path).map_err(|e| {
        std::io::Error::new(e.kind(), format!("cannot read config {}: {e}", path.display()))
    })?;
    parse_config(&text)
}

/// Parses the process arguments, folding in `--config` when present.
pub fn parse_args(args: Vec<OsString>) -> std::result::Result<Cli, ParseFailure> {
    let args = match find_config(&args) {
        Some(path) => {
            let file = read_config(&path).map_err(ParseFailure::Config)?;
            merge_config(args, &file)
        }
        None => args,
    };
    Cli::try_parse_from(args).map_err(ParseFailure::Clap)
}

#[derive(Debug)]
pub enum ParseFailure {
    Clap(clap::Error),
    Config(CliError),
}
