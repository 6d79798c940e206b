//! Evanescent TE₁₀ field as the near field of a periodic line-source array.
//!
//! The static array field E₀·sin(πx/a)·exp(−ω_c z/c) becomes the
//! below-cutoff guide field E₀·sin(πx/a)·exp(iωt)·exp(−κz) under
//! ω_c → √(ω_c² − ω²) and 1 → exp(iωt). [`wave_equation_residual`] checks
//! that the result satisfies (∂²ₓ + ∂²_z − ∂²ₜ/c²)E_y = 0.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::constants::SPEED_OF_LIGHT;
use crate::error::{Error, Result};
use crate::specfun::ComplexValue;
use crate::waveguide::evanescent_kappa;

/// Slab of width `a` driven at `omega` below its TE₁₀ cutoff cπ/a.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NearFieldSpec {
    a: f64,
    omega: f64,
    omega_c: f64,
    e0: f64,
    kappa: f64,
}

impl NearFieldSpec {
    /// `omega` may be 0 (the static array) but must stay below cπ/a.
    pub fn new(a: f64, omega: f64, e0: f64) -> Result<Self> {
        if !(a > 0.0) || !a.is_finite() {
            return Err(Error::domain(format!("slab width must be positive, got {a}")));
        }
        if !e0.is_finite() {
            return Err(Error::domain("field amplitude must be finite"));
        }
        let omega_c = SPEED_OF_LIGHT * PI / a;
        let kappa = replacement_kappa(omega, omega_c)?;
        Ok(NearFieldSpec {
            a,
            omega,
            omega_c,
            e0,
            kappa,
        })
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn omega(&self) -> f64 {
        self.omega
    }

    pub fn omega_c(&self) -> f64 {
        self.omega_c
    }

    pub fn e0(&self) -> f64 {
        self.e0
    }

    /// Decay constant κ (1/m).
    pub fn kappa(&self) -> f64 {
        self.kappa
    }

    /// ω_c/c = π/a, the wavenumber scale used to make residuals dimensionless.
    pub fn cutoff_wavenumber(&self) -> f64 {
        self.omega_c / SPEED_OF_LIGHT
    }
}

/// κ = √(ω_c² − ω²)/c for 0 ≤ ω < ω_c.
///
/// At ω = 0 this is ω_c/c, the decay rate 1/z₀ of the static array.
pub fn replacement_kappa(omega: f64, omega_c: f64) -> Result<f64> {
    if !(omega_c > 0.0) || !omega_c.is_finite() {
        return Err(Error::domain(format!(
            "cutoff frequency must be positive, got {omega_c}"
        )));
    }
    if !(omega >= 0.0) || omega >= omega_c {
        return Err(Error::domain(format!(
            "need 0 ≤ ω < ω_c for an evanescent field, got ω = {omega}, ω_c = {omega_c}"
        )));
    }
    Ok(evanescent_kappa(omega, omega_c))
}

/// E_y(x, z, t) = E₀·sin(πx/a)·exp(iωt)·exp(−κz) on 0 ≤ x ≤ a, z ≥ 0.
pub fn nearfield_ey(spec: &NearFieldSpec, x: f64, z: f64, t: f64) -> Result<ComplexValue> {
    if !(0.0..=spec.a).contains(&x) || !(z >= 0.0) || !z.is_finite() {
        return Err(Error::domain(format!(
            "point (x = {x}, z = {z}) outside 0 ≤ x ≤ a, z ≥ 0"
        )));
    }
    Ok(ey_unchecked(spec, x, z, t))
}

fn ey_unchecked(spec: &NearFieldSpec, x: f64, z: f64, t: f64) -> ComplexValue {
    let magnitude = spec.e0 * sin_half_period(x / spec.a) * (-spec.kappa * z).exp();
    Complex64::from_polar(1.0, spec.omega * t) * magnitude
}

/// sin(πr), reflected about r = 1/2 so both walls give exact zeros.
fn sin_half_period(r: f64) -> f64 {
    if r <= 0.5 {
        (PI * r).sin()
    } else {
        (PI * (1.0 - r)).sin()
    }
}

/// Residual of the wave operator applied to `field`, using central second
/// differences in x and z and the exact harmonic time derivative
/// ∂²ₜE = −ω²E.
///
/// Returns |(∂²ₓ + ∂²_z + ω²/c²)E| / (|E|·k²), dimensionless with the
/// caller's wavenumber scale `k`.
pub fn wave_operator_residual<F>(field: F, omega: f64, x: f64, z: f64, t: f64, h: f64, k: f64) -> f64
where
    F: Fn(f64, f64, f64) -> ComplexValue,
{
    let centre = field(x, z, t);
    let d2x = (field(x + h, z, t) - centre * 2.0 + field(x - h, z, t)) / (h * h);
    let d2z = (field(x, z + h, t) - centre * 2.0 + field(x, z - h, t)) / (h * h);
    let w = omega / SPEED_OF_LIGHT;
    let applied = d2x + d2z + centre * (w * w);
    applied.norm() / (centre.norm() * k * k)
}

/// [`wave_operator_residual`] for the near field itself, normalised by
/// (ω_c/c)². Goes to zero as O(h²).
pub fn wave_equation_residual(
    spec: &NearFieldSpec,
    point: (f64, f64),
    t: f64,
    h: f64,
) -> Result<f64> {
    let (x, z) = point;
    if !(h > 0.0) || !h.is_finite() {
        return Err(Error::domain(format!("step must be positive, got {h}")));
    }
    let margin = 2.0 * h;
    if x < margin || x > spec.a - margin || z < margin {
        return Err(Error::domain(format!(
            "point (x = {x}, z = {z}) must lie at least 2h = {margin} inside the domain"
        )));
    }
    Ok(wave_operator_residual(
        |x, z, t| ey_unchecked(spec, x, z, t),
        spec.omega,
        x,
        z,
        t,
        h,
        spec.cutoff_wavenumber(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::waveguide::{classify_mode, ModeCharacter};
    use approx::assert_relative_eq;
    use std::f64::consts::E;

    fn spec(fraction: f64) -> NearFieldSpec {
        let a = 0.02;
        NearFieldSpec::new(a, fraction * SPEED_OF_LIGHT * PI / a, 3.0).unwrap()
    }

    #[test]
    fn kappa_examples() {
        let wc = 1.2e10;
        assert_eq!(replacement_kappa(0.0, wc).unwrap(), wc / SPEED_OF_LIGHT);
        assert_relative_eq!(
            replacement_kappa(0.6 * wc, wc).unwrap(),
            0.8 * wc / SPEED_OF_LIGHT,
            max_relative = 1e-14
        );
        let near = replacement_kappa(wc * (1.0 - 1e-8), wc).unwrap();
        assert!(near * SPEED_OF_LIGHT / wc < 2e-4);
        assert!(replacement_kappa(wc, wc).is_err());
        assert!(replacement_kappa(-1.0, wc).is_err());
    }

    #[test]
    fn kappa_agrees_with_mode_classifier() {
        let wc = 4.4e9;
        for f in [0.01, 0.25, 0.6, 0.9, 0.999_999] {
            let ModeCharacter::Evanescent { kappa } = classify_mode(f * wc, wc).unwrap() else {
                panic!("expected evanescent");
            };
            assert_eq!(replacement_kappa(f * wc, wc).unwrap(), kappa);
        }
    }

    #[test]
    fn spec_rejects_propagating_regime() {
        let a = 0.02;
        let wc = SPEED_OF_LIGHT * PI / a;
        assert!(NearFieldSpec::new(a, wc, 1.0).is_err());
        assert!(NearFieldSpec::new(a, 2.0 * wc, 1.0).is_err());
        assert!(NearFieldSpec::new(0.0, 1.0, 1.0).is_err());
        let s = NearFieldSpec::new(a, 0.3 * wc, 1.0).unwrap();
        assert_relative_eq!(s.omega_c(), wc, max_relative = 1e-12);
    }

    #[test]
    fn field_boundary_and_decay_length() {
        let s = spec(0.6);
        assert!(nearfield_ey(&s, 0.0, 0.01, 0.0).unwrap().norm() < 1e-15);
        assert!(nearfield_ey(&s, s.a(), 0.01, 0.0).unwrap().norm() < 1e-15);
        let e = nearfield_ey(&s, s.a() / 2.0, 1.0 / s.kappa(), 7e-11).unwrap();
        assert_relative_eq!(e.norm(), s.e0() / E, max_relative = 1e-14);
        assert!(nearfield_ey(&s, -1e-3, 0.0, 0.0).is_err());
        assert!(nearfield_ey(&s, 0.01, -1e-3, 0.0).is_err());
    }

    #[test]
    fn static_limit_is_array_field() {
        let s = spec(0.0);
        for (x, z) in [(0.003, 0.0), (0.01, 0.004), (0.017, 0.02)] {
            let want = s.e0() * (PI * x / s.a()).sin() * (-s.omega_c() * z / SPEED_OF_LIGHT).exp();
            let got = nearfield_ey(&s, x, z, 1.234).unwrap();
            assert_eq!(got.im, 0.0);
            assert_relative_eq!(got.re, want, max_relative = 1e-14);
        }
    }

    #[test]
    fn magnitude_independent_of_time_and_decreasing_in_z() {
        let s = spec(0.7);
        let period = 2.0 * PI / s.omega();
        let m0 = nearfield_ey(&s, 0.007, 0.003, 0.0).unwrap().norm();
        for i in 1..32 {
            let t = period * i as f64 / 32.0;
            assert_relative_eq!(
                nearfield_ey(&s, 0.007, 0.003, t).unwrap().norm(),
                m0,
                max_relative = 1e-14
            );
        }
        let mags: Vec<f64> = (0..100)
            .map(|i| nearfield_ey(&s, 0.007, 1e-3 * i as f64, 0.0).unwrap().norm())
            .collect();
        assert!(mags.windows(2).all(|w| w[1] < w[0]));
    }

    #[test]
    fn residual_rejects_points_near_boundary() {
        let s = spec(0.6);
        let h = 1e-4;
        assert!(wave_equation_residual(&s, (1.5 * h, 0.01), 0.0, h).is_err());
        assert!(wave_equation_residual(&s, (0.01, h), 0.0, h).is_err());
        assert!(wave_equation_residual(&s, (s.a() - h, 0.01), 0.0, h).is_err());
        assert!(wave_equation_residual(&s, (0.01, 0.01), 0.0, 0.0).is_err());
    }

    #[test]
    fn residual_quarters_when_step_halves() {
        let s = spec(0.95);
        let h = 1e-3 / s.kappa();
        for i in 0..10 {
            let x = s.a() * (0.1 + 0.08 * i as f64);
            let z = (0.2 + 0.3 * i as f64) / s.kappa();
            let r1 = wave_equation_residual(&s, (x, z), 1e-11 * i as f64, h).unwrap();
            let r2 = wave_equation_residual(&s, (x, z), 1e-11 * i as f64, h / 2.0).unwrap();
            let ratio = r1 / r2;
            assert!((ratio - 4.0).abs() <= 0.8, "point {i}: ratio {ratio}");
        }
    }

    #[test]
    fn plane_wave_control_converges() {
        let omega = 2.0e10;
        let k = omega / SPEED_OF_LIGHT;
        let plane = |_x: f64, z: f64, t: f64| Complex64::from_polar(1.0, omega * t - k * z);
        let h = 1e-3 / k;
        let r1 = wave_operator_residual(plane, omega, 0.01, 0.02, 0.0, h, k);
        let r2 = wave_operator_residual(plane, omega, 0.01, 0.02, 0.0, h / 2.0, k);
        assert!(r1 < 1e-6);
        assert!((r1 / r2 - 4.0).abs() < 0.8, "{}", r1 / r2);
    }

    #[test]
    fn perturbed_decay_constant_fails() {
        let s = spec(0.6);
        let bad_kappa = 1.1 * s.kappa();
        let wrong = |x: f64, z: f64, t: f64| {
            Complex64::from_polar(1.0, s.omega() * t)
                * (s.e0() * (PI * x / s.a()).sin() * (-bad_kappa * z).exp())
        };
        let k = s.cutoff_wavenumber();
        let (x, z) = (0.3 * s.a(), 0.5 / s.kappa());
        let h = 1e-4 / s.kappa();
        let good = wave_equation_residual(&s, (x, z), 0.0, h).unwrap();
        let coarse = wave_operator_residual(wrong, s.omega(), x, z, 0.0, 10.0 * h, k);
        let fine = wave_operator_residual(wrong, s.omega(), x, z, 0.0, h, k);
        assert!(fine >= 10.0 * good, "{fine} vs {good}");
        // no convergence: halving h barely moves it
        assert_relative_eq!(fine, coarse, max_relative = 1e-3);
        assert_relative_eq!(fine, 0.21 * (s.kappa() / k).powi(2), max_relative = 1e-3);
    }
}
