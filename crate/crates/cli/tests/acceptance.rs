//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any fails.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use spacelike::constants::{MassiveParticle, SPEED_OF_LIGHT};
use spacelike::nearfield::{wave_equation_residual, wave_operator_residual, NearFieldSpec};
use spacelike::ComplexValue;
use spacelike::propagator::{
    boost_family, observability_threshold, propagator_closed_form, propagator_quadrature,
    weinberg_window, QuadratureConfig, SpacetimeSeparation,
};
use spacelike::specfun::{bessel_k0, bessel_k0_integral_oracle};
use spacelike::waveguide::{classify_mode, dispersion_identity_check};
use spacelike_cli::commands::ReportRow;
use spacelike_cli::output::parse_csv;

type Criterion = (&'static str, Option<u64>, fn() -> Outcome);

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

fn timed(limit: Option<Duration>, f: impl FnOnce() -> Outcome) -> Outcome {
    let start = Instant::now();
    let mut out = f();
    let elapsed = start.elapsed();
    out.detail.push_str(&format!(", {:.3} s", elapsed.as_secs_f64()));
    if let Some(limit) = limit {
        if elapsed > limit {
            out.pass = false;
            out.detail.push_str(&format!(" exceeds {} s", limit.as_secs_f64()));
        }
    }
    out
}

fn run_cli(args: &[&str]) -> Vec<u8> {
    let out = Command::new(env!("CARGO_BIN_EXE_spacelike"))
        .args(args)
        .env_remove("SPACELIKE_TOL")
        .output()
        .expect("binary runs");
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    out.stdout
}

fn report_row(quantity: &str) -> ReportRow {
    let text = String::from_utf8(run_cli(&["report"])).unwrap();
    let rows: Vec<ReportRow> = parse_csv(&text).unwrap();
    rows.into_iter().find(|r| r.quantity == quantity).expect("row present")
}

fn rel(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

fn electron_wavelength() -> Outcome {
    let row = report_row("electron_compton_wavelength");
    let dev = rel(row.computed, 3.87e-10);
    outcome(dev <= 5e-3, format!("{:.6e} mm, deviation {dev:.2e}", row.computed))
}

fn photon_bound() -> Outcome {
    let row = report_row("guided_photon_compton_wavelength");
    let dev = rel(row.computed, 31.6);
    outcome(dev <= 5e-3, format!("{:.4} mm, deviation {dev:.2e}", row.computed))
}

fn oracle_equivalence() -> Outcome {
    let e = MassiveParticle::electron();
    let cfg = QuadratureConfig::default();
    let mut worst: f64 = 0.0;
    let mut boosted = 0;
    for z in [0.1, 0.5, 1.0, 2.0, 5.0] {
        let rho = z * e.compton_wavelength();
        for sep in boost_family(rho, &[0.0, 0.7, -1.3, 2.0]).unwrap() {
            if sep.dt() != 0.0 {
                boosted += 1;
            }
            let closed = propagator_closed_form(&sep, &e).unwrap().amplitude().re;
            let quad = propagator_quadrature(&sep, &e, &cfg).unwrap().amplitude().re;
            worst = worst.max(rel(quad, closed));
        }
    }
    outcome(
        worst <= 1e-6 && boosted >= 10,
        format!("max deviation {worst:.2e} over {boosted} boosted points"),
    )
}

fn k0_truth() -> Outcome {
    let mut worst: f64 = 0.0;
    for z in [0.1, 0.5, 1.0, 2.0, 5.0, 10.0, 50.0] {
        let k0 = bessel_k0(z).unwrap();
        worst = worst.max(rel(k0, bessel_k0_integral_oracle(z, 4096).unwrap()));
    }
    outcome(worst <= 1e-9, format!("max relative error {worst:.2e}"))
}

fn lorentz_invariance() -> Outcome {
    let e = MassiveParticle::electron();
    let cfg = QuadratureConfig::default();
    let mut worst: f64 = 0.0;
    for z in [1.0, 5.0] {
        let seps = boost_family(z * e.compton_wavelength(), &[-2.0, -1.0, 0.0, 1.0, 2.0]).unwrap();
        let d: Vec<f64> = seps
            .iter()
            .map(|s| propagator_quadrature(s, &e, &cfg).unwrap().amplitude().re)
            .collect();
        let max = d.iter().cloned().fold(f64::MIN, f64::max);
        let min = d.iter().cloned().fold(f64::MAX, f64::min);
        let mean = d.iter().sum::<f64>() / d.len() as f64;
        worst = worst.max((max - min) / mean);
    }
    outcome(worst <= 1e-6, format!("max relative spread {worst:.2e}"))
}

fn asymptotics() -> Outcome {
    let e = MassiveParticle::electron();
    let z = 20.0;
    let sep = SpacetimeSeparation::equal_time(z * e.compton_wavelength()).unwrap();
    let d = propagator_closed_form(&sep, &e).unwrap().amplitude().re;
    let ratio = d * z.sqrt() * z.exp() * 2.0 * (2.0 * std::f64::consts::PI).sqrt();
    outcome((0.99..=1.01).contains(&ratio), format!("ratio {ratio:.5}"))
}

fn threshold_coherence() -> Outcome {
    let mut rng = StdRng::seed_from_u64(0x5eed);
    let particles = [
        MassiveParticle::electron(),
        MassiveParticle::guided_photon(9.49e9).unwrap(),
    ];
    let threshold = observability_threshold();
    let (mut checked, mut disagreements) = (0, 0);
    while checked < 1000 {
        let p = &particles[checked % 2];
        let lam = p.compton_wavelength();
        let dr = rng.gen_range(0.0..3.0) * lam;
        let dt = rng.gen_range(-3.0..3.0) * lam / SPEED_OF_LIGHT;
        let sep = SpacetimeSeparation::new(dt, dr).unwrap();
        if sep.interval() <= 0.0 {
            continue;
        }
        let prob = propagator_closed_form(&sep, p).unwrap().probability();
        if weinberg_window(&sep, p) != (prob >= threshold) {
            disagreements += 1;
        }
        checked += 1;
    }
    outcome(disagreements == 0, format!("{disagreements} disagreements in {checked} separations"))
}

fn dispersion() -> Outcome {
    let mut worst: f64 = 0.0;
    let mut points = 0;
    for i in 0..20 {
        let omega_c = 1e8 * 10f64.powf(i as f64 * 3.0 / 19.0);
        for j in 1..=50 {
            let omega = omega_c * (1.0 + j as f64 * 0.1);
            let ch = classify_mode(omega, omega_c).unwrap();
            worst = worst.max(dispersion_identity_check(omega, &ch, omega_c).unwrap());
            points += 1;
        }
    }
    outcome(worst <= 1e-12, format!("max residual {worst:.2e} over {points} points"))
}

fn slope(hs: &[f64], rs: &[f64]) -> f64 {
    let xs: Vec<f64> = hs.iter().map(|h| h.ln()).collect();
    let ys: Vec<f64> = rs.iter().map(|r| r.ln()).collect();
    let n = xs.len() as f64;
    let (mx, my) = (xs.iter().sum::<f64>() / n, ys.iter().sum::<f64>() / n);
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    sxy / sxx
}

fn wave_residual_convergence() -> Outcome {
    let a = 22.86e-3;
    let omega_c = SPEED_OF_LIGHT * std::f64::consts::PI / a;
    let spec = NearFieldSpec::new(a, 0.99 * omega_c, 1.0).unwrap();
    let kappa = spec.kappa();
    let hs: Vec<f64> = [1e-3, 5e-4, 2.5e-4].iter().map(|f| f / kappa).collect();
    let points: Vec<(f64, f64)> = (0..5)
        .map(|i| (a * (0.2 + 0.15 * i as f64), (0.5 + 0.5 * i as f64) / kappa))
        .collect();

    let mut slopes = Vec::new();
    let mut control = Vec::new();
    let bad_kappa = 1.01 * kappa;
    let wrong = |x: f64, z: f64, t: f64| {
        ComplexValue::from_polar(1.0, spec.omega() * t)
            * ((std::f64::consts::PI * x / a).sin() * (-bad_kappa * z).exp())
    };
    for &(x, z) in &points {
        let good: Vec<f64> = hs.iter().map(|&h| wave_equation_residual(&spec, (x, z), 0.0, h).unwrap()).collect();
        let bad: Vec<f64> = hs
            .iter()
            .map(|&h| wave_operator_residual(wrong, spec.omega(), x, z, 0.0, h, spec.cutoff_wavenumber()))
            .collect();
        slopes.push(slope(&hs, &good));
        control.push(slope(&hs, &bad));
    }
    let converges = slopes.iter().all(|s| (s - 2.0).abs() <= 0.1);
    let control_fails = control.iter().all(|s| (s - 2.0).abs() > 0.1);
    outcome(
        converges && control_fails,
        format!(
            "slopes {:.3}..{:.3}, perturbed-κ slopes {:.3}..{:.3}",
            slopes.iter().cloned().fold(f64::MAX, f64::min),
            slopes.iter().cloned().fold(f64::MIN, f64::max),
            control.iter().cloned().fold(f64::MAX, f64::min),
            control.iter().cloned().fold(f64::MIN, f64::max),
        ),
    )
}

fn determinism() -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("scenario.cfg");
    std::fs::write(&cfg, "omega-ghz-angular = 9.49\ncount = 7\n").unwrap();
    let cfg = cfg.to_str().unwrap();
    let commands: [&[&str]; 10] = [
        &["report"],
        &["propagator"],
        &["--config", cfg, "propagator", "--method", "quadrature"],
        &["window"],
        &["--config", cfg, "window"],
        &["waveguide"],
        &["--format", "json", "waveguide"],
        &["nearfield"],
        &["--format", "json", "nearfield"],
        &["--format", "json", "--config", cfg, "propagator"],
    ];
    let mut differing = Vec::new();
    for args in commands {
        if run_cli(args) != run_cli(args) {
            differing.push(args.join(" "));
        }
    }
    outcome(
        differing.is_empty(),
        format!("{} command lines, differing: {differing:?}", commands.len()),
    )
}

fn main() -> ExitCode {
    let criteria: Vec<Criterion> = vec![
        ("electron Compton wavelength 3.87e-10 mm within 0.5%", Some(1), electron_wavelength),
        ("guided-photon bound 31.6 mm within 0.5%", Some(1), photon_bound),
        ("quadrature matches closed form to 1e-6, boosted frames included", Some(10), oracle_equivalence),
        ("K0 matches integral oracle to 1e-9 on the 7-point grid", Some(5), k0_truth),
        ("Lorentz spread of quadrature D at most 1e-6", None, lorentz_invariance),
        ("D*sqrt(z)*e^z*2*sqrt(2pi) in [0.99, 1.01] at z = 20", None, asymptotics),
        ("window agrees with probability threshold on 1000 separations", None, threshold_coherence),
        ("dispersion identity residual at most 1e-12 on 1000 points", None, dispersion),
        ("wave residual slope 2.0 +/- 0.1, perturbed kappa fails", None, wave_residual_convergence),
        ("byte-identical output on repeated CLI runs", None, determinism),
    ];
    let mut failures = 0;
    for (i, (name, limit, check)) in criteria.into_iter().enumerate() {
        let out = timed(limit.map(Duration::from_secs), check);
        let tag = if out.pass { "PASS" } else { "FAIL" };
        println!("criterion {:>2} {tag}: {name} ({})", i + 1, out.detail);
        if !out.pass {
            failures += 1;
        }
    }
    println!("acceptance: {} of 10 criteria pass", 10 - failures);
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
