//! The subcommands, each producing a flat table of rows.

use std::f64::consts::PI;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use spacelike::constants::{compton_wavelength, MassiveParticle, ELECTRON_MASS, SPEED_OF_LIGHT};
use spacelike::nearfield::{nearfield_ey, wave_equation_residual, NearFieldSpec};
use spacelike::propagator::{
    boost_family, observability_threshold, propagator_closed_form, propagator_quadrature,
    weinberg_window, Method, QuadratureConfig, SpacetimeSeparation,
};
use spacelike::waveguide::{
    classify_mode, cutoff_angular_frequency, observable_spacelike_bound, ModeIndex, RectWaveguide,
};

use crate::args::{
    CutoffArgs, MethodChoice, NearfieldArgs, ParticleArgs, PropagatorArgs, Spacing, SweepArgs,
    WaveguideArgs, WindowArgs,
};
use crate::error::{CliError, Result};

/// Cutoff used for the guided-photon figures in the report, rad/s.
pub const REPORT_OMEGA_C: f64 = 9.49e9;
/// Electron reduced Compton wavelength as usually quoted, mm.
pub const QUOTED_ELECTRON_MM: f64 = 3.87e-10;
/// Guided-photon bound c/ω_c as usually quoted, mm.
pub const QUOTED_PHOTON_MM: f64 = 31.6;
/// Invariant arguments tabulated by the report.
pub const REPORT_Z: [f64; 4] = [0.5, 1.0, 2.0, 5.0];

/// A resolved sweep: variable name plus its points in order.
#[derive(Debug, Clone, PartialEq)]
pub struct Sweep {
    pub var: String,
    pub points: Vec<f64>,
}

impl Sweep {
    fn resolve(
        args: &SweepArgs,
        valid: &[&str],
        default: (&str, f64, f64, usize, Spacing),
    ) -> Result<Sweep> {
        let var = args.sweep_var.clone().unwrap_or_else(|| default.0.to_string());
        if !valid.contains(&var.as_str()) {
            return Err(CliError::usage(format!(
                "unknown sweep variable `{var}`; valid variables: {}",
                valid.join(", ")
            )));
        }
        let start = args.start.unwrap_or(default.1);
        let stop = args.stop.unwrap_or(default.2);
        let count = args.count.unwrap_or(default.3);
        let spacing = args.spacing.unwrap_or(default.4);
        Ok(Sweep {
            var,
            points: sweep_points(start, stop, count, spacing)?,
        })
    }
}

/// `count` points from `start` to `stop` inclusive.
pub fn sweep_points(start: f64, stop: f64, count: usize, spacing: Spacing) -> Result<Vec<f64>> {
    if count < 2 {
        return Err(CliError::usage(format!("sweep count must be at least 2, got {count}")));
    }
    if !start.is_finite() || !stop.is_finite() || !(start < stop) {
        return Err(CliError::usage(format!(
            "sweep needs finite start < stop, got {start} .. {stop}"
        )));
    }
    let last = (count - 1) as f64;
    let mut pts: Vec<f64> = match spacing {
        Spacing::Linear => {
            let step = (stop - start) / last;
            (0..count).map(|i| start + i as f64 * step).collect()
        }
        Spacing::Log => {
            if start <= 0.0 {
                return Err(CliError::usage("log sweep needs a positive start"));
            }
            let (l0, l1) = (start.ln(), stop.ln());
            let step = (l1 - l0) / last;
            (0..count).map(|i| (l0 + i as f64 * step).exp()).collect()
        }
    };
    pts[0] = start;
    pts[count - 1] = stop;
    Ok(pts)
}

fn particle(args: &ParticleArgs) -> Result<MassiveParticle> {
    Ok(if let Some(m) = args.mass_kg {
        MassiveParticle::from_mass(m)?
    } else if let Some(w) = args.omega_rad_s {
        MassiveParticle::guided_photon(w)?
    } else if let Some(g) = args.omega_ghz_angular {
        MassiveParticle::guided_photon(g * 1e9)?
    } else {
        MassiveParticle::electron()
    })
}

fn quadrature_config(tolerance: Option<f64>, max_evals: Option<usize>) -> QuadratureConfig {
    let mut cfg = QuadratureConfig::from_env();
    if let Some(t) = tolerance {
        cfg.tolerance = t;
    }
    if let Some(n) = max_evals {
        cfg.max_evals = n;
    }
    cfg
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportRow {
    pub quantity: String,
    pub unit: String,
    pub paper_value: Option<f64>,
    pub computed: f64,
    pub comparison: Option<f64>,
    pub rel_deviation: Option<f64>,
}

pub const REPORT_COLUMNS: [&str; 6] =
    ["quantity", "unit", "paper_value", "computed", "comparison", "rel_deviation"];

fn rel(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

/// Headline figures. `comparison` holds the closed form for the D rows,
/// whose `computed` is the quadrature value.
pub fn cmd_report() -> Result<Vec<ReportRow>> {
    let electron_mm = compton_wavelength(ELECTRON_MASS)? * 1e3;
    let photon = MassiveParticle::guided_photon(REPORT_OMEGA_C)?;
    let photon_mm = photon.compton_wavelength() * 1e3;

    let mut rows = vec![
        ReportRow {
            quantity: "electron_compton_wavelength".into(),
            unit: "mm".into(),
            paper_value: Some(QUOTED_ELECTRON_MM),
            computed: electron_mm,
            comparison: None,
            rel_deviation: Some(rel(electron_mm, QUOTED_ELECTRON_MM)),
        },
        ReportRow {
            quantity: "guided_photon_compton_wavelength".into(),
            unit: "mm".into(),
            paper_value: Some(QUOTED_PHOTON_MM),
            computed: photon_mm,
            comparison: None,
            rel_deviation: Some(rel(photon_mm, QUOTED_PHOTON_MM)),
        },
        ReportRow {
            quantity: "guided_photon_effective_mass".into(),
            unit: "kg".into(),
            paper_value: None,
            computed: photon.mass(),
            comparison: None,
            rel_deviation: None,
        },
        ReportRow {
            quantity: "photon_to_electron_ratio".into(),
            unit: "1".into(),
            paper_value: None,
            computed: photon_mm / electron_mm,
            comparison: None,
            rel_deviation: None,
        },
        ReportRow {
            quantity: "observability_threshold".into(),
            unit: "1".into(),
            paper_value: None,
            computed: observability_threshold(),
            comparison: None,
            rel_deviation: None,
        },
    ];

    let e = MassiveParticle::electron();
    let cfg = quadrature_config(None, None);
    for z in REPORT_Z {
        let sep = SpacetimeSeparation::equal_time(z * e.compton_wavelength())?;
        let closed = propagator_closed_form(&sep, &e)?.amplitude().re;
        let quad = propagator_quadrature(&sep, &e, &cfg)?.amplitude().re;
        rows.push(ReportRow {
            quantity: format!("propagator_z_{z}"),
            unit: "1".into(),
            paper_value: None,
            computed: quad,
            comparison: Some(closed),
            rel_deviation: Some(rel(quad, closed)),
        });
    }
    Ok(rows)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PropagatorRow {
    pub z: f64,
    pub amplitude_re: f64,
    pub amplitude_im: f64,
    pub probability: f64,
    pub method: String,
    pub in_window: bool,
}

pub const PROPAGATOR_COLUMNS: [&str; 6] =
    ["z", "amplitude_re", "amplitude_im", "probability", "method", "in_window"];

pub fn cmd_propagator(args: &PropagatorArgs) -> Result<Vec<PropagatorRow>> {
    let p = particle(&args.particle)?;
    let sweep = Sweep::resolve(&args.sweep, &["z", "dr", "dt"], ("z", 0.1, 10.0, 50, Spacing::Log))?;
    let lam = p.compton_wavelength();
    let separations = sweep
        .points
        .iter()
        .map(|&v| match sweep.var.as_str() {
            "z" => Ok(boost_family(v * lam, &[args.rapidity])?[0]),
            "dr" => Ok(SpacetimeSeparation::new(args.dt, v)?),
            _ => {
                let dr = args
                    .dr
                    .ok_or_else(|| CliError::usage("a dt sweep needs a fixed --dr"))?;
                Ok(SpacetimeSeparation::new(v, dr)?)
            }
        })
        .collect::<Result<Vec<_>>>()?;

    let methods: &[Method] = match args.method {
        MethodChoice::ClosedForm => &[Method::ClosedForm],
        MethodChoice::Quadrature => &[Method::Quadrature],
        MethodChoice::Both => &[Method::ClosedForm, Method::Quadrature],
    };
    let cfg = quadrature_config(args.tolerance, args.max_evals);

    let per_point: Vec<Result<Vec<PropagatorRow>>> = separations
        .par_iter()
        .map(|sep| {
            methods
                .iter()
                .map(|m| {
                    let r = match m {
                        Method::ClosedForm => propagator_closed_form(sep, &p)?,
                        Method::Quadrature => propagator_quadrature(sep, &p, &cfg)?,
                    };
                    Ok(PropagatorRow {
                        z: r.z(),
                        amplitude_re: r.amplitude().re,
                        amplitude_im: r.amplitude().im,
                        probability: r.probability(),
                        method: m.as_str().to_string(),
                        in_window: r.in_weinberg_window(),
                    })
                })
                .collect()
        })
        .collect();
    let mut rows = Vec::with_capacity(separations.len() * methods.len());
    for r in per_point {
        rows.extend(r?);
    }
    Ok(rows)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WindowRow {
    pub dt: f64,
    pub dr: f64,
    pub interval: f64,
    pub causal_class: String,
    pub in_window: bool,
}

pub const WINDOW_COLUMNS: [&str; 5] = ["dt", "dr", "interval", "causal_class", "in_window"];

pub fn cmd_window(args: &WindowArgs) -> Result<Vec<WindowRow>> {
    let p = particle(&args.particle)?;
    let sweep = Sweep::resolve(
        &args.sweep,
        &["dr_lambda", "dr", "dt"],
        ("dr_lambda", 0.0, 2.0, 21, Spacing::Linear),
    )?;
    let lam = p.compton_wavelength();
    sweep
        .points
        .iter()
        .map(|&v| {
            let sep = match sweep.var.as_str() {
                "dr_lambda" => SpacetimeSeparation::new(args.dt, v * lam)?,
                "dr" => SpacetimeSeparation::new(args.dt, v)?,
                _ => {
                    let dr = args
                        .dr
                        .ok_or_else(|| CliError::usage("a dt sweep needs a fixed --dr"))?;
                    SpacetimeSeparation::new(v, dr)?
                }
            };
            Ok(WindowRow {
                dt: sep.dt(),
                dr: sep.dr(),
                interval: sep.interval(),
                causal_class: format!("{:?}", sep.causal_class()).to_lowercase(),
                in_window: weinberg_window(&sep, &p),
            })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WaveguideRow {
    pub omega: f64,
    pub character: String,
    pub k_z_or_kappa: f64,
    pub bound_mm: f64,
}

pub const WAVEGUIDE_COLUMNS: [&str; 4] = ["omega", "character", "k_z_or_kappa", "bound_mm"];

fn cutoff(args: &CutoffArgs) -> Result<f64> {
    if let Some(w) = args.omega_c_rad_s {
        return Ok(w);
    }
    if let Some(g) = args.omega_c_ghz_angular {
        return Ok(g * 1e9);
    }
    match (args.a_mm, args.b_mm) {
        (Some(a), Some(b)) => {
            let wg = RectWaveguide::new(a * 1e-3, b * 1e-3)?;
            let mode = ModeIndex::new(args.mode_n, args.mode_l)?;
            Ok(cutoff_angular_frequency(&wg, &mode))
        }
        (None, None) => Ok(REPORT_OMEGA_C),
        _ => Err(CliError::usage("guide dimensions need both --a-mm and --b-mm")),
    }
}

pub fn cmd_waveguide(args: &WaveguideArgs) -> Result<Vec<WaveguideRow>> {
    let omega_c = cutoff(&args.cutoff)?;
    let bound_mm = observable_spacelike_bound(omega_c)? * 1e3;
    let sweep = Sweep::resolve(
        &args.sweep,
        &["omega_ratio", "omega"],
        ("omega_ratio", 0.5, 1.5, 11, Spacing::Linear),
    )?;
    let scale = if sweep.var == "omega_ratio" { omega_c } else { 1.0 };
    if sweep.points[0] <= 0.0 {
        return Err(CliError::usage("frequency sweep must stay above zero"));
    }
    sweep
        .points
        .iter()
        .map(|&v| {
            let omega = v * scale;
            let ch = classify_mode(omega, omega_c)?;
            Ok(WaveguideRow {
                omega,
                character: ch.label().to_string(),
                k_z_or_kappa: ch.wavenumber(),
                bound_mm,
            })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NearfieldRow {
    pub x: f64,
    pub z: f64,
    pub field_re: f64,
    pub field_im: f64,
    pub magnitude: f64,
    /// Present at interior points only.
    pub residual: Option<f64>,
}

pub const NEARFIELD_COLUMNS: [&str; 6] = ["x", "z", "field_re", "field_im", "magnitude", "residual"];

pub fn cmd_nearfield(args: &NearfieldArgs) -> Result<Vec<NearfieldRow>> {
    if args.nx < 3 || args.nz < 3 {
        return Err(CliError::usage(format!(
            "grid needs at least 3 points per axis, got {} x {}",
            args.nx, args.nz
        )));
    }
    if !(args.z_max_decay > 0.0) || !(args.step_decay > 0.0) {
        return Err(CliError::usage("--z-max-decay and --step-decay must be positive"));
    }
    let a = args.a_mm * 1e-3;
    let omega_c = SPEED_OF_LIGHT * PI / a;
    let omega = match (args.omega_rad_s, args.omega_ratio) {
        (Some(w), _) => w,
        (None, Some(r)) => r * omega_c,
        (None, None) => 0.6 * omega_c,
    };
    let spec = NearFieldSpec::new(a, omega, args.e0)?;
    let depth = args.z_max_decay / spec.kappa();
    let h = args.step_decay / spec.kappa();
    let xs = sweep_points(0.0, a, args.nx, Spacing::Linear)?;
    let zs = sweep_points(0.0, depth, args.nz, Spacing::Linear)?;

    let mut rows = Vec::with_capacity(xs.len() * zs.len());
    for &x in &xs {
        for &z in &zs {
            let e = nearfield_ey(&spec, x, z, args.t)?;
            rows.push(NearfieldRow {
                x,
                z,
                field_re: e.re,
                field_im: e.im,
                magnitude: e.norm(),
                residual: wave_equation_residual(&spec, (x, z), args.t, h).ok(),
            });
        }
    }
    Ok(rows)
}
