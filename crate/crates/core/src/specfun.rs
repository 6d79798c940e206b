//! Modified Bessel function K₀ and H₀⁽²⁾ on the negative imaginary axis.
//!
//! `bessel_k0` splits at z = 2: the ascending series below, Steed's
//! continued fraction (the Thompson–Barnett CF2 for ν = 0) above. The
//! integral representation `∫₀^∞ exp(−z·cosh u) du` is exposed separately as
//! [`bessel_k0_integral_oracle`] and is only used to check the former.

use std::f64::consts::{FRAC_2_PI, PI};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Complex amplitude. Components are always finite.
pub type ComplexValue = Complex64;

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;
const SERIES_CUTOVER: f64 = 2.0;
const MAX_ITER: usize = 500;

/// ln(1e18): the oracle truncates where exp(−z(cosh u − 1)) < 1e−18.
const ORACLE_TAIL_LOG: f64 = 41.446_531_673_892_82;

/// A K₀ evaluation with an explicit underflow marker.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct K0Value {
    pub value: f64,
    /// Set when K₀(z) is below the smallest normal `f64`; `value` is then 0.
    pub underflow: bool,
}

fn check_positive(z: f64) -> Result<()> {
    if z > 0.0 && z.is_finite() {
        Ok(())
    } else {
        Err(Error::domain(format!(
            "argument must be positive and finite, got {z}"
        )))
    }
}

/// K₀(z) for z > 0, flagging underflow for large z.
pub fn evaluate_k0(z: f64) -> Result<K0Value> {
    check_positive(z)?;
    if z <= SERIES_CUTOVER {
        return Ok(K0Value {
            value: k0_series(z),
            underflow: false,
        });
    }
    let value = (k0_scaled_cf(z).ln() - z).exp();
    if value < f64::MIN_POSITIVE {
        Ok(K0Value {
            value: 0.0,
            underflow: true,
        })
    } else {
        Ok(K0Value {
            value,
            underflow: false,
        })
    }
}

/// K₀(z). Returns 0 past the underflow point; see [`evaluate_k0`] for the flag.
pub fn bessel_k0(z: f64) -> Result<f64> {
    evaluate_k0(z).map(|k| k.value)
}

/// e^z·K₀(z), which never underflows.
pub fn bessel_k0_scaled(z: f64) -> Result<f64> {
    check_positive(z)?;
    if z <= SERIES_CUTOVER {
        Ok(k0_series(z) * z.exp())
    } else {
        Ok(k0_scaled_cf(z))
    }
}

/// K₀(z) = −(ln(z/2) + γ)·I₀(z) + Σ H_k (z²/4)^k / (k!)²
fn k0_series(z: f64) -> f64 {
    let q = 0.25 * z * z;
    let mut term = 1.0;
    let mut i0 = 1.0;
    let mut harmonic = 0.0;
    let mut tail = 0.0;
    for k in 1..MAX_ITER {
        let kf = k as f64;
        term *= q / (kf * kf);
        harmonic += 1.0 / kf;
        i0 += term;
        tail += harmonic * term;
        if term < f64::EPSILON * 1e-3 * i0 {
            break;
        }
    }
    -((0.5 * z).ln() + EULER_GAMMA) * i0 + tail
}

/// Steed's algorithm for the continued fraction of U(ν+½, 2ν+1, 2x) at ν = 0.
/// Returns e^x·K₀(x). Valid for x > 1.
#[allow(clippy::many_single_char_names)]
fn k0_scaled_cf(x: f64) -> f64 {
    let mut a = -0.25;
    let mut b = 2.0 * (x + 1.0);
    let mut d = 1.0 / b;
    let mut delta = d;
    let mut prev = 0.0;
    let mut cur = 1.0;
    let mut q = -a;
    let mut c = -a;
    let mut s = 1.0 + q * delta;

    for k in 2..MAX_ITER {
        let kf = k as f64;
        a -= 2.0 * (kf - 1.0);
        b += 2.0;
        d = 1.0 / (b + a * d);
        delta *= b * d - 1.0;

        let t = (prev - (b - 2.0) * cur) / a;
        prev = cur;
        cur = t;
        c *= -a / kf;
        q += c * t;
        s += q * delta;

        if (q * delta).abs() < s.abs() * f64::EPSILON * 0.5 {
            break;
        }
    }
    (PI / (2.0 * x)).sqrt() / s
}

/// Evaluates K₀(z) = ∫₀^∞ exp(−z·cosh u) du by the trapezoidal rule on
/// [0, u_max] with `n_nodes` equally spaced nodes.
///
/// u_max = acosh(1 + ln(10¹⁸)/z), so the integrand at the cut is below
/// 1e−18 relative to its peak (and hence also in absolute terms). The
/// integrand is even and entire in u, so the trapezoidal error decays like
/// exp(−π²/h) in the step h.
pub fn bessel_k0_integral_oracle(z: f64, n_nodes: usize) -> Result<f64> {
    check_positive(z)?;
    if n_nodes < 64 {
        return Err(Error::domain(format!(
            "oracle needs at least 64 nodes, got {n_nodes}"
        )));
    }
    let u_max = (1.0 + ORACLE_TAIL_LOG / z).acosh();
    let h = u_max / (n_nodes - 1) as f64;
    // Factor e^{-z} out so large z does not underflow before the sum.
    let f = |u: f64| (-z * (u.cosh() - 1.0)).exp();
    let interior: f64 = (1..n_nodes - 1).map(|i| f(i as f64 * h)).sum();
    let sum = 0.5 * (f(0.0) + f(u_max)) + interior;
    Ok(h * sum * (-z).exp())
}

/// H₀⁽²⁾(−i·z) for z > 0, via H₀⁽²⁾(−iz) = (2i/π)·K₀(z).
///
/// The result is purely imaginary with a positive imaginary part.
pub fn hankel2_0_imag(z: f64) -> Result<ComplexValue> {
    let k0 = bessel_k0(z)?;
    Ok(Complex64::new(0.0, FRAC_2_PI * k0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    // Reference values from mpmath at 30 digits.
    const K0_REF: [(f64, f64); 8] = [
        (0.1, 2.427_069_024_702_016_5),
        (0.5, 0.924_419_071_227_665_9),
        (1.0, 0.421_024_438_240_708_33),
        (2.0, 0.113_893_872_749_533_44),
        (5.0, 3.691_098_334_042_594_3e-3),
        (10.0, 1.778_006_231_616_765_2e-5),
        (20.0, 5.741_237_815_336_524e-10),
        (50.0, 3.410_167_749_789_495_5e-23),
    ];

    #[test]
    fn k0_matches_reference_table() {
        for (z, want) in K0_REF {
            assert_relative_eq!(bessel_k0(z).unwrap(), want, max_relative = 1e-13);
        }
    }

    #[test]
    fn k0_is_continuous_at_cutover() {
        let below = k0_series(SERIES_CUTOVER);
        let above = k0_scaled_cf(SERIES_CUTOVER) * (-SERIES_CUTOVER).exp();
        assert_relative_eq!(below, above, max_relative = 1e-14);
    }

    #[test]
    fn k0_small_argument_log_behaviour() {
        // K₀(z) ≈ −ln(z/2) − γ for tiny z
        let z = 1e-6;
        assert_relative_eq!(
            bessel_k0(z).unwrap(),
            -(0.5 * z).ln() - EULER_GAMMA,
            max_relative = 1e-10
        );
    }

    #[test]
    fn k0_leading_asymptotic_at_50() {
        let scaled = bessel_k0_scaled(50.0).unwrap() * 50f64.sqrt();
        // √(π/2)·(1 − 1/400 + …)
        assert!((scaled / (PI / 2.0).sqrt() - 1.0).abs() < 3e-3);
    }

    #[test]
    fn k0_underflow_flag() {
        let v = evaluate_k0(700.0).unwrap();
        assert!(!v.underflow);
        assert_relative_eq!(v.value, 4.669_776_431_685_377e-306, max_relative = 1e-10);
        let v = evaluate_k0(800.0).unwrap();
        assert!(v.underflow);
        assert_eq!(v.value, 0.0);
        assert!(bessel_k0_scaled(800.0).unwrap() > 0.0);
    }

    #[test]
    fn domain_errors() {
        for z in [0.0, -1.0, f64::NAN, f64::INFINITY] {
            assert!(bessel_k0(z).is_err());
            assert!(hankel2_0_imag(z).is_err());
            assert!(bessel_k0_integral_oracle(z, 4096).is_err());
        }
        assert!(bessel_k0_integral_oracle(1.0, 63).is_err());
    }

    #[test]
    fn oracle_examples() {
        assert_relative_eq!(
            bessel_k0_integral_oracle(1.0, 4096).unwrap(),
            bessel_k0(1.0).unwrap(),
            max_relative = 1e-9
        );
        assert_relative_eq!(
            bessel_k0_integral_oracle(0.1, 16384).unwrap(),
            2.4271,
            max_relative = 5e-5
        );
        assert!(
            bessel_k0_integral_oracle(2.0, 4096).unwrap()
                < bessel_k0_integral_oracle(1.0, 4096).unwrap()
        );
    }

    #[test]
    fn oracle_agrees_on_grid() {
        for z in [0.1, 0.5, 1.0, 2.0, 5.0, 10.0, 50.0] {
            let oracle = bessel_k0_integral_oracle(z, 4096).unwrap();
            let k0 = bessel_k0(z).unwrap();
            assert!(((k0 - oracle) / k0).abs() <= 1e-9, "z = {z}");
        }
    }

    #[test]
    fn k0_decreasing_and_convex() {
        let grid: Vec<f64> = (1..=1000).map(|i| 0.1 * i as f64).collect();
        let vals: Vec<f64> = grid.iter().map(|&z| bessel_k0(z).unwrap()).collect();
        for w in vals.windows(2) {
            assert!(w[1] < w[0]);
        }
        for w in vals.windows(3) {
            // uniform grid: second difference positive
            assert!(w[0] + w[2] - 2.0 * w[1] > 0.0);
        }
    }

    #[test]
    fn hankel_examples() {
        let h = hankel2_0_imag(1.0).unwrap();
        assert_eq!(h.re, 0.0);
        assert_relative_eq!(h.im, 0.268_032_482_033_988_55, max_relative = 1e-13);
        let h = hankel2_0_imag(10.0).unwrap();
        assert_eq!(h.re, 0.0);
        assert_relative_eq!(h.im, 1.132e-5, max_relative = 1e-3);
    }

    #[test]
    fn quarter_hankel_reduces_to_k0_over_two_pi() {
        for z in [0.5, 1.0, 5.0] {
            let d = Complex64::new(0.0, -0.25) * hankel2_0_imag(z).unwrap();
            assert_eq!(d.im, 0.0);
            assert!(d.re > 0.0);
            assert_relative_eq!(d.re, bessel_k0(z).unwrap() / (2.0 * PI), max_relative = 1e-12);
        }
    }

    /// H₀⁽²⁾(w) = J₀(w) − i·Y₀(w) from the ascending series for complex w,
    /// with the principal branch of ln. Independent of the K₀ code path.
    fn hankel2_0_series(w: Complex64) -> Complex64 {
        let q = -0.25 * w * w;
        let mut term = Complex64::new(1.0, 0.0);
        let mut j0 = term;
        let mut harmonic = 0.0;
        let mut tail = Complex64::new(0.0, 0.0);
        for k in 1..200 {
            let kf = k as f64;
            term *= q / (kf * kf);
            harmonic += 1.0 / kf;
            j0 += term;
            tail += term * harmonic;
        }
        let y0 = FRAC_2_PI * (((0.5 * w).ln() + EULER_GAMMA) * j0 - tail);
        j0 - Complex64::i() * y0
    }

    #[test]
    fn identity_holds_against_direct_series() {
        for z in [0.3, 1.0, 4.0] {
            let direct = hankel2_0_series(Complex64::new(0.0, -z));
            let via_k0 = hankel2_0_imag(z).unwrap();
            assert!(direct.re.abs() < 1e-12, "z = {z}: {direct}");
            assert_relative_eq!(direct.im, via_k0.im, max_relative = 1e-11);
        }
    }
}
