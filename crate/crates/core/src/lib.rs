//! Spacelike propagation of massive particles and evanescent waveguide modes.
//!
//! The amplitude for a scalar particle of mass m to go between two events at
//! spacelike separation is `D = K₀(z)/(2π)`, with z the invariant interval in
//! units of the reduced Compton wavelength λ̄ = ħ/(mc). It is computed two
//! ways, in closed form through K₀ and by direct quadrature of the momentum
//! integral, and the two are cross-checked. A photon in a hollow guide with
//! cutoff ω_c behaves as a particle of mass ħω_c/c², which turns λ̄ into the
//! centimetre-scale c/ω_c.
//!
//! ```
//! use spacelike::constants::MassiveParticle;
//! use spacelike::propagator::{propagator_closed_form, SpacetimeSeparation};
//!
//! let photon = MassiveParticle::guided_photon(9.49e9)?;
//! assert!((photon.compton_wavelength() * 1e3 - 31.6).abs() < 0.1);
//!
//! let sep = SpacetimeSeparation::equal_time(photon.compton_wavelength())?;
//! let d = propagator_closed_form(&sep, &photon)?;
//! assert!((d.z() - 1.0).abs() < 1e-15);
//! assert!(d.in_weinberg_window());
//! # Ok::<(), spacelike::Error>(())
//! ```
//!
//! Modules:
//!
//! * [`constants`]: CODATA 2018 constants, Compton wavelength, effective mass.
//! * [`specfun`]: K₀ and H₀⁽²⁾ on the negative imaginary axis.
//! * [`quadrature`]: Gauss–Kronrod panels and Wynn ε acceleration.
//! * [`propagator`]: D(t, r), the Compton window and observability.
//! * [`waveguide`]: rectangular guide modes and the E_x field.
//! * [`nearfield`]: evanescent TE₁₀ field and its wave-equation check.
//!
//! All quantities are SI internally.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod constants;
pub mod error;
pub mod nearfield;
pub mod propagator;
pub mod quadrature;
pub mod specfun;
pub mod waveguide;

pub use constants::MassiveParticle;
pub use error::{Error, Result};
pub use propagator::{
    propagator_closed_form, propagator_quadrature, PropagatorResult, QuadratureConfig,
    SpacetimeSeparation,
};
pub use specfun::ComplexValue;

// Compile and run the guide's code listings as doctests.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/compton.md")]
    mod compton {}
    #[doc = include_str!("../../../book/src/bessel.md")]
    mod bessel {}
    #[doc = include_str!("../../../book/src/propagator.md")]
    mod propagator {}
    #[doc = include_str!("../../../book/src/quadrature.md")]
    mod quadrature {}
    #[doc = include_str!("../../../book/src/waveguide.md")]
    mod waveguide {}
    #[doc = include_str!("../../../book/src/nearfield.md")]
    mod nearfield {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
