//! The spacelike propagation amplitude D(t, r) of a scalar particle.
//!
//! Two routes to the same number:
//!
//! * [`propagator_closed_form`] uses D = (−i/4)·H₀⁽²⁾(−i·z), which reduces to
//!   K₀(z)/(2π) with z = √(r² − c²t²)/λ̄.
//! * [`propagator_quadrature`] integrates the one-dimensional momentum
//!   integral directly, in whatever frame the separation is given. For
//!   t ≠ 0 the integrand oscillates without decaying, so it is split into
//!   half-period panels whose partial sums are accelerated with Wynn's ε.
//!
//! The canonical amplitude is the dimensionless K₀(z)/(2π).

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::constants::{MassiveParticle, SPEED_OF_LIGHT};
use crate::error::{Error, Result};
use crate::quadrature::{adaptive_gk21, EpsilonAccelerator};
use crate::specfun::{evaluate_k0, ComplexValue};

/// Relative tolerance used to call an interval lightlike.
const LIGHTLIKE_RTOL: f64 = 1e-12;

/// Environment variable overriding the default quadrature tolerance.
pub const TOLERANCE_ENV: &str = "SPACELIKE_TOL";

/// Causal character of a separation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CausalClass {
    Spacelike,
    Lightlike,
    Timelike,
}

/// A time difference and a (non-negative) spatial distance between two events.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpacetimeSeparation {
    dt: f64,
    dr: f64,
}

impl SpacetimeSeparation {
    /// `dt` in seconds (any sign), `dr` in metres (≥ 0).
    pub fn new(dt: f64, dr: f64) -> Result<Self> {
        if !dt.is_finite() || !dr.is_finite() {
            return Err(Error::domain("separation components must be finite"));
        }
        if dr < 0.0 {
            return Err(Error::domain(format!(
                "spatial distance must be non-negative, got {dr}"
            )));
        }
        Ok(SpacetimeSeparation { dt, dr })
    }

    /// Equal-time separation at distance `dr`.
    pub fn equal_time(dr: f64) -> Result<Self> {
        Self::new(0.0, dr)
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    pub fn dr(&self) -> f64 {
        self.dr
    }

    /// The same spatial distance with time reversed.
    pub fn reversed(&self) -> Self {
        SpacetimeSeparation {
            dt: -self.dt,
            dr: self.dr,
        }
    }

    /// dr² − c²dt², factored to avoid cancellation near the light cone.
    pub fn interval(&self) -> f64 {
        let ct = SPEED_OF_LIGHT * self.dt.abs();
        (self.dr - ct) * (self.dr + ct)
    }

    pub fn causal_class(&self) -> CausalClass {
        let ct = SPEED_OF_LIGHT * self.dt;
        let scale = self.dr * self.dr + ct * ct;
        let s = self.interval();
        if s.abs() <= LIGHTLIKE_RTOL * scale {
            CausalClass::Lightlike
        } else if s > 0.0 {
            CausalClass::Spacelike
        } else {
            CausalClass::Timelike
        }
    }

    /// Invariant argument √(dr² − c²dt²)/λ̄ for a spacelike separation.
    pub fn invariant_argument(&self, particle: &MassiveParticle) -> Result<f64> {
        match self.causal_class() {
            CausalClass::Spacelike => {
                let z = self.interval().sqrt() / particle.compton_wavelength();
                if z > 0.0 {
                    Ok(z)
                } else {
                    Err(Error::domain("coincident events: K₀ diverges at z = 0"))
                }
            }
            other => Err(Error::domain(format!(
                "closed form stated only for spacelike interval (got {other:?})"
            ))),
        }
    }
}

/// Which route produced a [`PropagatorResult`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Method {
    ClosedForm,
    Quadrature,
}

impl Method {
    pub fn as_str(&self) -> &'static str {
        match self {
            Method::ClosedForm => "closed_form",
            Method::Quadrature => "quadrature",
        }
    }
}

/// Bookkeeping from the quadrature route.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureStats {
    /// Estimated relative error of the amplitude.
    pub error_estimate: f64,
    pub evals: usize,
    pub panels: usize,
}

/// Normalised amplitude at one separation, with derived flags.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PropagatorResult {
    z: f64,
    amplitude: ComplexValue,
    probability: f64,
    in_weinberg_window: bool,
    above_threshold: bool,
    underflow: bool,
    method: Method,
    stats: Option<QuadratureStats>,
}

impl PropagatorResult {
    fn new(
        sep: &SpacetimeSeparation,
        particle: &MassiveParticle,
        z: f64,
        amplitude: ComplexValue,
        underflow: bool,
        method: Method,
        stats: Option<QuadratureStats>,
    ) -> Self {
        PropagatorResult {
            z,
            amplitude,
            probability: amplitude.re * amplitude.re + amplitude.im * amplitude.im,
            in_weinberg_window: weinberg_window(sep, particle),
            above_threshold: z <= 1.0,
            underflow,
            method,
            stats,
        }
    }

    /// Invariant argument √(dr² − c²dt²)/λ̄.
    pub fn z(&self) -> f64 {
        self.z
    }

    pub fn amplitude(&self) -> ComplexValue {
        self.amplitude
    }

    /// |amplitude|².
    pub fn probability(&self) -> f64 {
        self.probability
    }

    pub fn in_weinberg_window(&self) -> bool {
        self.in_weinberg_window
    }

    /// True iff z ≤ 1, i.e. the probability reaches the observability threshold.
    pub fn above_threshold(&self) -> bool {
        self.above_threshold
    }

    /// Set when K₀(z) underflowed; amplitude and probability are then 0.
    pub fn underflow(&self) -> bool {
        self.underflow
    }

    pub fn method(&self) -> Method {
        self.method
    }

    pub fn stats(&self) -> Option<QuadratureStats> {
        self.stats
    }
}

/// D = (−i/4)·H₀⁽²⁾(−i·z) = K₀(z)/(2π) for a spacelike separation.
pub fn propagator_closed_form(
    sep: &SpacetimeSeparation,
    particle: &MassiveParticle,
) -> Result<PropagatorResult> {
    let z = sep.invariant_argument(particle)?;
    let k0 = evaluate_k0(z)?;
    // (−i/4)·(2i/π)·K₀ = K₀/(2π); written out so the imaginary part is an exact 0.
    let amplitude = Complex64::new(k0.value / (2.0 * PI), 0.0);
    Ok(PropagatorResult::new(
        sep,
        particle,
        z,
        amplitude,
        k0.underflow,
        Method::ClosedForm,
        None,
    ))
}

/// Settings for [`propagator_quadrature`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureConfig {
    /// Target relative error of the amplitude.
    pub tolerance: f64,
    /// Budget of integrand evaluations.
    pub max_evals: usize,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        QuadratureConfig {
            tolerance: 1e-9,
            max_evals: 2_000_000,
        }
    }
}

impl QuadratureConfig {
    /// Defaults, with the tolerance taken from `SPACELIKE_TOL` when it is set
    /// to a positive number.
    pub fn from_env() -> Self {
        let mut cfg = Self::default();
        if let Some(tol) = std::env::var(TOLERANCE_ENV)
            .ok()
            .and_then(|v| v.trim().parse::<f64>().ok())
            .filter(|t| *t > 0.0 && t.is_finite())
        {
            cfg.tolerance = tol;
        }
        cfg
    }
}

/// Minimum number of half-period panels on each side before the ε table
/// is trusted.
const MIN_PANELS: usize = 8;

/// Per-panel absolute tolerance, relative to the panel width.
const PANEL_RTOL: f64 = 1e-14;

/// Evaluates
///
/// ```text
/// D(t, r) = ∫ dp/(2π) · c/(2E_p) · exp[−i(E_p·t − p·r)/ħ],   E_p = √(p²c² + m²c⁴)
/// ```
///
/// numerically for a spacelike separation, without using the closed form.
///
/// With p = m·c·sinh u the measure c·dp/(2E_p) becomes du/2 and the phase
/// becomes φ(u) = ρ·sinh u − τ·cosh u with ρ = r/λ̄ and τ = c·t/λ̄, so
/// D = (1/4π)∫ exp(iφ(u)) du over the real line. The m·c from dp = m·c·dq
/// (q the dimensionless momentum) is absorbed by the same substitution.
///
/// φ is strictly increasing when ρ > |τ|, and φ(u) = s has the explicit
/// solution e^u = (s + √(s² + 4AB))/(2A) with A = (ρ − τ)/2, B = (ρ + τ)/2.
/// Panels run between consecutive roots of φ(u) = kπ in both directions;
/// each is integrated with adaptive Gauss–Kronrod and the two tails are
/// extrapolated independently.
pub fn propagator_quadrature(
    sep: &SpacetimeSeparation,
    particle: &MassiveParticle,
    cfg: &QuadratureConfig,
) -> Result<PropagatorResult> {
    let z = sep.invariant_argument(particle)?;
    if !(cfg.tolerance > 0.0) || cfg.max_evals == 0 {
        return Err(Error::domain("quadrature tolerance and budget must be positive"));
    }
    let lambda = particle.compton_wavelength();
    let rho = sep.dr() / lambda;
    let tau = SPEED_OF_LIGHT * sep.dt() / lambda;

    let phase = PhaseMap::new(rho, tau);
    let integrand = |u: f64| {
        let (s, c) = phase.at(u).sin_cos();
        Complex64::new(c, s)
    };

    let norm = 1.0 / (4.0 * PI);
    let mut right = Tail::new(1.0);
    let mut left = Tail::new(-1.0);
    let mut evals = 0usize;
    let mut panels = 0usize;
    let mut best = Complex64::new(0.0, 0.0);
    let mut best_err = f64::INFINITY;

    while evals < cfg.max_evals {
        for tail in [&mut right, &mut left] {
            let (a, b) = tail.next_panel(&phase);
            // |integrand| = 1, so (b − a) bounds the panel; resolve each panel
            // to near rounding level of that bound.
            let panel = adaptive_gk21(&integrand, a, b, PANEL_RTOL * (b - a));
            evals += panel.evals;
            tail.add(panel.value, panel.error);
        }
        panels += 2;

        best = (right.limit.value + left.limit.value) * norm;
        let tail_err = (right.limit.error + left.limit.error) * norm;
        best_err = tail_err + (right.panel_error + left.panel_error) * norm;

        let magnitude = best.norm();
        let rel_err = best_err / magnitude;
        // Truncate once the extrapolated tails are well inside the tolerance;
        // the reported figure also carries the accumulated panel errors.
        if right.count() >= MIN_PANELS
            && tail_err < 0.1 * cfg.tolerance * magnitude
            && rel_err <= cfg.tolerance
        {
            let stats = QuadratureStats {
                error_estimate: rel_err,
                evals,
                panels,
            };
            return Ok(PropagatorResult::new(
                sep,
                particle,
                z,
                best,
                false,
                Method::Quadrature,
                Some(stats),
            ));
        }
    }

    Err(Error::Convergence {
        estimate: best,
        error_bound: best_err,
        evals,
    })
}

/// φ(u) = ρ·sinh u − τ·cosh u = A·eᵘ − B·e⁻ᵘ and its inverse.
///
/// The exponential form keeps both terms of the size of φ near its zero,
/// which matters for strongly boosted separations.
struct PhaseMap {
    a: f64,
    b: f64,
}

impl PhaseMap {
    fn new(rho: f64, tau: f64) -> Self {
        PhaseMap {
            a: 0.5 * (rho - tau),
            b: 0.5 * (rho + tau),
        }
    }

    fn at(&self, u: f64) -> f64 {
        self.a * u.exp() - self.b * (-u).exp()
    }

    /// The unique u with φ(u) = s.
    fn inverse(&self, s: f64) -> f64 {
        let root = (s * s + 4.0 * self.a * self.b).sqrt();
        if s >= 0.0 {
            ((s + root) / (2.0 * self.a)).ln()
        } else {
            (2.0 * self.b / (root - s)).ln()
        }
    }
}

/// One side of the real line, walked outwards in half periods of the phase.
struct Tail {
    direction: f64,
    k: u32,
    sum: Complex64,
    panel_error: f64,
    acc: EpsilonAccelerator,
    limit: crate::quadrature::Extrapolation,
}

impl Tail {
    fn new(direction: f64) -> Self {
        Tail {
            direction,
            k: 0,
            sum: Complex64::new(0.0, 0.0),
            panel_error: 0.0,
            acc: EpsilonAccelerator::default(),
            limit: crate::quadrature::Extrapolation {
                value: Complex64::new(0.0, 0.0),
                error: f64::INFINITY,
            },
        }
    }

    fn count(&self) -> usize {
        self.acc.len()
    }

    /// Next panel in increasing-u order, as (lower, upper).
    fn next_panel(&mut self, phase: &PhaseMap) -> (f64, f64) {
        let s0 = self.direction * PI * f64::from(self.k);
        let s1 = self.direction * PI * f64::from(self.k + 1);
        self.k += 1;
        let (u0, u1) = (phase.inverse(s0), phase.inverse(s1));
        if u0 <= u1 {
            (u0, u1)
        } else {
            (u1, u0)
        }
    }

    fn add(&mut self, value: Complex64, error: f64) {
        self.sum += value;
        self.panel_error += error;
        self.limit = self.acc.push(self.sum);
    }
}

/// True iff 0 < dr² − c²dt² ≤ λ̄², evaluated literally.
///
/// Accepts any separation: lightlike and timelike ones simply return false.
pub fn weinberg_window(sep: &SpacetimeSeparation, particle: &MassiveParticle) -> bool {
    let ct = SPEED_OF_LIGHT * sep.dt();
    let s = sep.dr() * sep.dr() - ct * ct;
    let lambda = particle.compton_wavelength();
    0.0 < s && s <= lambda * lambda
}

/// |(−i/4)·H₀⁽²⁾(−i)|² = (K₀(1)/(2π))², the probability at z = 1.
pub fn observability_threshold() -> f64 {
    let d = evaluate_k0(1.0).expect("K₀(1) is in range").value / (2.0 * PI);
    d * d
}

/// Coarse observability of a spacelike process.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Observability {
    /// z ≤ 1: inside the Compton-wavelength window.
    Nonnegligible,
    /// z > 1: nonzero but treated as unobservable.
    Negligible,
}

/// Splits spacelike separations at z = 1 (boundary counted as nonnegligible).
pub fn classify_observable(
    sep: &SpacetimeSeparation,
    particle: &MassiveParticle,
) -> Result<Observability> {
    sep.invariant_argument(particle)?;
    Ok(if weinberg_window(sep, particle) {
        Observability::Nonnegligible
    } else {
        Observability::Negligible
    })
}

/// Separations with invariant length `rho` seen from frames of the given
/// rapidities: (dt, dr) = (ρ·sinh χ / c, ρ·cosh χ).
pub fn boost_family(rho: f64, rapidities: &[f64]) -> Result<Vec<SpacetimeSeparation>> {
    if !(rho > 0.0) || !rho.is_finite() {
        return Err(Error::domain(format!(
            "invariant length must be positive, got {rho}"
        )));
    }
    rapidities
        .iter()
        .map(|&chi| SpacetimeSeparation::new(rho * chi.sinh() / SPEED_OF_LIGHT, rho * chi.cosh()))
        .collect()
}
