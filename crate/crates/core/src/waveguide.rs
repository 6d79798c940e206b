//! Hollow rectangular waveguide: TE mode cutoffs, propagating versus
//! evanescent classification, and the E_x field
//!
//! ```text
//! E_x(x, y, z, t) = A·cos(k_x x)·sin(k_y y)·exp(iωt − i k_z z),   k_x = nπ/a, k_y = lπ/b
//! ```
//!
//! Below cutoff k_z = −iκ and the longitudinal factor becomes exp(iωt − κz).

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::constants::{effective_photon_mass, HBAR, SPEED_OF_LIGHT};
use crate::error::{Error, Result};
use crate::specfun::ComplexValue;

/// Relative tolerance for treating ω as equal to ω_c.
pub const CUTOFF_RTOL: f64 = 1e-12;

/// Cross-section 0 ≤ x ≤ a, 0 ≤ y ≤ b with a > b.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RectWaveguide {
    a: f64,
    b: f64,
}

impl RectWaveguide {
    /// Width `a` and height `b` in metres; requires a > b > 0.
    pub fn new(a: f64, b: f64) -> Result<Self> {
        if !(b > 0.0) || !(a > b) || !a.is_finite() {
            return Err(Error::domain(format!(
                "waveguide needs a > b > 0, got a = {a}, b = {b}"
            )));
        }
        Ok(RectWaveguide { a, b })
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    fn contains(&self, x: f64, y: f64) -> bool {
        (0.0..=self.a).contains(&x) && (0.0..=self.b).contains(&y)
    }
}

/// TE mode indices (n, l), not both zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ModeIndex {
    n: u32,
    l: u32,
}

impl ModeIndex {
    pub const TE10: ModeIndex = ModeIndex { n: 1, l: 0 };

    pub fn new(n: u32, l: u32) -> Result<Self> {
        if n == 0 && l == 0 {
            return Err(Error::domain("mode (0, 0) carries no field"));
        }
        Ok(ModeIndex { n, l })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn l(&self) -> u32 {
        self.l
    }

    /// (k_x, k_y) = (nπ/a, lπ/b).
    pub fn transverse_wavenumbers(&self, wg: &RectWaveguide) -> (f64, f64) {
        (
            f64::from(self.n) * PI / wg.a,
            f64::from(self.l) * PI / wg.b,
        )
    }
}

/// How a mode behaves along the guide at a given frequency.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ModeCharacter {
    /// Real longitudinal wavenumber (rad/m).
    Propagating { k_z: f64 },
    /// Imaginary wavenumber k_z = −iκ, decay constant κ (1/m).
    Evanescent { kappa: f64 },
    AtCutoff,
}

impl ModeCharacter {
    pub fn label(&self) -> &'static str {
        match self {
            ModeCharacter::Propagating { .. } => "propagating",
            ModeCharacter::Evanescent { .. } => "evanescent",
            ModeCharacter::AtCutoff => "at_cutoff",
        }
    }

    /// k_z for propagating modes, κ for evanescent ones, 0 at cutoff.
    pub fn wavenumber(&self) -> f64 {
        match *self {
            ModeCharacter::Propagating { k_z } => k_z,
            ModeCharacter::Evanescent { kappa } => kappa,
            ModeCharacter::AtCutoff => 0.0,
        }
    }
}

/// ω_c = c·√(k_x² + k_y²).
pub fn cutoff_angular_frequency(wg: &RectWaveguide, mode: &ModeIndex) -> f64 {
    let (kx, ky) = mode.transverse_wavenumbers(wg);
    SPEED_OF_LIGHT * kx.hypot(ky)
}

fn check_frequency(name: &str, omega: f64) -> Result<()> {
    if omega > 0.0 && omega.is_finite() {
        Ok(())
    } else {
        Err(Error::domain(format!(
            "{name} must be positive and finite, got {omega}"
        )))
    }
}

/// √(ω_c² − ω²)/c, factored as √((ω_c − ω)(ω_c + ω))/c. Shared with the
/// near-field module so both produce bit-identical decay constants.
pub(crate) fn evanescent_kappa(omega: f64, omega_c: f64) -> f64 {
    ((omega_c - omega) * (omega_c + omega)).sqrt() / SPEED_OF_LIGHT
}

pub fn classify_mode(omega: f64, omega_c: f64) -> Result<ModeCharacter> {
    check_frequency("frequency", omega)?;
    check_frequency("cutoff frequency", omega_c)?;
    if (omega - omega_c).abs() <= CUTOFF_RTOL * omega_c {
        Ok(ModeCharacter::AtCutoff)
    } else if omega > omega_c {
        let k_z = ((omega - omega_c) * (omega + omega_c)).sqrt() / SPEED_OF_LIGHT;
        Ok(ModeCharacter::Propagating { k_z })
    } else {
        Ok(ModeCharacter::Evanescent {
            kappa: evanescent_kappa(omega, omega_c),
        })
    }
}

/// Transverse standing-wave factor f(x, y) = A·cos(k_x x)·sin(k_y y).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StandingWaveFactor {
    pub amplitude: f64,
    pub k_x: f64,
    pub k_y: f64,
}

impl StandingWaveFactor {
    pub fn eval(&self, x: f64, y: f64) -> f64 {
        self.amplitude * (self.k_x * x).cos() * (self.k_y * y).sin()
    }
}

/// The z and t dependence. Only the propagating variant carries a real
/// longitudinal wavenumber; the evanescent one has no standing or travelling
/// structure along z, just decay.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum LongitudinalFactor {
    /// exp(i(ωt − k_z z))
    Propagating { omega: f64, k_z: f64 },
    /// exp(iωt − κz)
    Evanescent { omega: f64, kappa: f64 },
    /// exp(iωt)
    AtCutoff { omega: f64 },
}

impl LongitudinalFactor {
    fn new(omega: f64, character: ModeCharacter) -> Self {
        match character {
            ModeCharacter::Propagating { k_z } => LongitudinalFactor::Propagating { omega, k_z },
            ModeCharacter::Evanescent { kappa } => LongitudinalFactor::Evanescent { omega, kappa },
            ModeCharacter::AtCutoff => LongitudinalFactor::AtCutoff { omega },
        }
    }

    pub fn eval(&self, z: f64, t: f64) -> ComplexValue {
        match *self {
            LongitudinalFactor::Propagating { omega, k_z } => {
                Complex64::from_polar(1.0, omega * t - k_z * z)
            }
            LongitudinalFactor::Evanescent { omega, kappa } => {
                Complex64::from_polar((-kappa * z).exp(), omega * t)
            }
            LongitudinalFactor::AtCutoff { omega } => Complex64::from_polar(1.0, omega * t),
        }
    }

    /// Real longitudinal wavenumber, present only for propagating modes.
    pub fn real_wavenumber(&self) -> Option<f64> {
        match *self {
            LongitudinalFactor::Propagating { k_z, .. } => Some(k_z),
            _ => None,
        }
    }

    pub fn decay_constant(&self) -> Option<f64> {
        match *self {
            LongitudinalFactor::Evanescent { kappa, .. } => Some(kappa),
            _ => None,
        }
    }
}

/// E_x split into its transverse and longitudinal factors.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FieldDecomposition {
    pub standing: StandingWaveFactor,
    pub longitudinal: LongitudinalFactor,
}

impl FieldDecomposition {
    pub fn eval(&self, x: f64, y: f64, z: f64, t: f64) -> ComplexValue {
        self.longitudinal.eval(z, t) * self.standing.eval(x, y)
    }
}

pub fn decompose_field(
    wg: &RectWaveguide,
    mode: &ModeIndex,
    omega: f64,
    amplitude: f64,
) -> Result<FieldDecomposition> {
    let omega_c = cutoff_angular_frequency(wg, mode);
    let character = classify_mode(omega, omega_c)?;
    let (k_x, k_y) = mode.transverse_wavenumbers(wg);
    Ok(FieldDecomposition {
        standing: StandingWaveFactor {
            amplitude,
            k_x,
            k_y,
        },
        longitudinal: LongitudinalFactor::new(omega, character),
    })
}

/// A point inside the guide, metres.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Point3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

/// E_x of mode `mode` at `point` and time `t`.
pub fn field_ex(
    wg: &RectWaveguide,
    mode: &ModeIndex,
    omega: f64,
    point: Point3,
    t: f64,
    amplitude: f64,
) -> Result<ComplexValue> {
    if !wg.contains(point.x, point.y) {
        return Err(Error::domain(format!(
            "point ({}, {}) lies outside the cross-section",
            point.x, point.y
        )));
    }
    let d = decompose_field(wg, mode, omega, amplitude)?;
    Ok(d.eval(point.x, point.y, point.z, t))
}

/// Largest invariant length c/ω_c = ħ/(m_eff·c) with non-negligible
/// spacelike propagation for a guide with cutoff ω_c.
pub fn observable_spacelike_bound(omega_c: f64) -> Result<f64> {
    check_frequency("cutoff frequency", omega_c)?;
    Ok(SPEED_OF_LIGHT / omega_c)
}

/// Relative residual of (ħω)² = (m_eff·c²)² + (ħ·k_z·c)² for a propagating mode.
pub fn dispersion_identity_check(
    omega: f64,
    character: &ModeCharacter,
    omega_c: f64,
) -> Result<f64> {
    check_frequency("frequency", omega)?;
    let k_z = match *character {
        ModeCharacter::Propagating { k_z } => k_z,
        other => {
            return Err(Error::domain(format!(
                "dispersion identity holds for propagating modes, got {}",
                other.label()
            )))
        }
    };
    let m_eff = effective_photon_mass(omega_c)?;
    let energy = HBAR * omega;
    let rest = m_eff * SPEED_OF_LIGHT * SPEED_OF_LIGHT;
    let momentum = HBAR * k_z * SPEED_OF_LIGHT;
    Ok((energy * energy - rest * rest - momentum * momentum).abs() / (energy * energy))
}
