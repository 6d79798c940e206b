//! Physical constants and the Compton-wavelength / effective-mass relations.
//!
//! Everything is SI. Values are CODATA 2018 and compiled in.

use crate::error::{Error, Result};

/// Speed of light in vacuum (m/s), exact.
pub const SPEED_OF_LIGHT: f64 = 2.997_924_58e8;
/// Reduced Planck constant ħ (J·s).
pub const HBAR: f64 = 1.054_571_817e-34;
/// Electron rest mass (kg).
pub const ELECTRON_MASS: f64 = 9.109_383_701_5e-31;

/// The set of constants the toolkit runs on.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalConstants {
    /// m/s
    pub c: f64,
    /// J·s
    pub hbar: f64,
    /// kg
    pub m_electron: f64,
}

impl PhysicalConstants {
    pub const CODATA_2018: PhysicalConstants = PhysicalConstants {
        c: SPEED_OF_LIGHT,
        hbar: HBAR,
        m_electron: ELECTRON_MASS,
    };
}

impl Default for PhysicalConstants {
    fn default() -> Self {
        Self::CODATA_2018
    }
}

/// Reduced Compton wavelength ħ/(m·c) in metres.
pub fn compton_wavelength(mass: f64) -> Result<f64> {
    if !(mass > 0.0) || !mass.is_finite() {
        return Err(Error::domain(format!(
            "mass must be positive and finite, got {mass}"
        )));
    }
    Ok(HBAR / (mass * SPEED_OF_LIGHT))
}

/// Effective rest mass ħ·ω_c/c² of a photon guided above cutoff ω_c (rad/s).
pub fn effective_photon_mass(omega_c: f64) -> Result<f64> {
    if !(omega_c > 0.0) || !omega_c.is_finite() {
        return Err(Error::domain(format!(
            "cutoff angular frequency must be positive and finite, got {omega_c}"
        )));
    }
    Ok(HBAR * omega_c / (SPEED_OF_LIGHT * SPEED_OF_LIGHT))
}

/// Where a particle's mass came from.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MassOrigin {
    RestMass,
    /// Photon in a hollow guide with the given cutoff (rad/s).
    GuidedPhoton { omega_c: f64 },
}

/// A particle of positive mass together with its reduced Compton wavelength.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MassiveParticle {
    mass: f64,
    compton_wavelength: f64,
    origin: MassOrigin,
}

impl MassiveParticle {
    pub fn from_mass(mass: f64) -> Result<Self> {
        Ok(MassiveParticle {
            mass,
            compton_wavelength: compton_wavelength(mass)?,
            origin: MassOrigin::RestMass,
        })
    }

    pub fn electron() -> Self {
        Self::from_mass(ELECTRON_MASS).expect("electron mass is positive")
    }

    /// A guided photon with effective mass ħω_c/c².
    ///
    /// The Compton wavelength is stored as c/ω_c directly rather than going
    /// through the mass, which keeps the round trip exact.
    pub fn guided_photon(omega_c: f64) -> Result<Self> {
        let mass = effective_photon_mass(omega_c)?;
        Ok(MassiveParticle {
            mass,
            compton_wavelength: SPEED_OF_LIGHT / omega_c,
            origin: MassOrigin::GuidedPhoton { omega_c },
        })
    }

    /// kg
    pub fn mass(&self) -> f64 {
        self.mass
    }

    /// ħ/(m·c), metres.
    pub fn compton_wavelength(&self) -> f64 {
        self.compton_wavelength
    }

    pub fn origin(&self) -> MassOrigin {
        self.origin
    }
}
