//! Panel quadrature and sequence acceleration for oscillatory integrals.
//!
//! Two pieces: an adaptive 21-point Gauss–Kronrod rule for complex
//! integrands on a finite interval, and Wynn's ε-algorithm for accelerating
//! the partial sums of an alternating series of half-period panels.

use num_complex::Complex64;

/// Kronrod abscissae on [0, 1]; the last one is the centre.
#[allow(clippy::excessive_precision)]
const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.0,
];

#[allow(clippy::excessive_precision)]
const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_600_525_981_316,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];

/// Gauss weights for the odd-indexed Kronrod abscissae (1, 3, 5, 7, 9).
#[allow(clippy::excessive_precision)]
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_146,
];

const MAX_BISECTIONS: u32 = 12;

/// Result of integrating one panel.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PanelEstimate {
    pub value: Complex64,
    pub error: f64,
    pub evals: usize,
}

/// One application of the 21-point Kronrod rule with the embedded 10-point
/// Gauss rule as error estimate.
pub fn gauss_kronrod_21<F>(f: &F, a: f64, b: f64) -> PanelEstimate
where
    F: Fn(f64) -> Complex64,
{
    let centre = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(centre);
    let mut kronrod = fc * WGK[10];
    let mut gauss = Complex64::new(0.0, 0.0);
    for (j, (&x, &w)) in XGK[..10].iter().zip(&WGK[..10]).enumerate() {
        let dx = half * x;
        let pair = f(centre - dx) + f(centre + dx);
        kronrod += pair * w;
        if j % 2 == 1 {
            gauss += pair * WG[j / 2];
        }
    }
    let value = kronrod * half;
    let error = ((kronrod - gauss) * half).norm();
    PanelEstimate {
        value,
        error,
        evals: 21,
    }
}

/// Integrates `f` over [a, b], bisecting until each piece meets `abs_tol`
/// scaled by its share of the interval.
pub fn adaptive_gk21<F>(f: &F, a: f64, b: f64, abs_tol: f64) -> PanelEstimate
where
    F: Fn(f64) -> Complex64,
{
    bisect(f, a, b, abs_tol, 0, gauss_kronrod_21(f, a, b))
}

fn bisect<F>(f: &F, a: f64, b: f64, tol: f64, depth: u32, whole: PanelEstimate) -> PanelEstimate
where
    F: Fn(f64) -> Complex64,
{
    // Roundoff floor: no point splitting below what the sum can resolve.
    let floor = 50.0 * f64::EPSILON * whole.value.norm();
    if whole.error <= tol.max(floor) || depth >= MAX_BISECTIONS {
        return whole;
    }
    let mid = 0.5 * (a + b);
    let left = gauss_kronrod_21(f, a, mid);
    let right = gauss_kronrod_21(f, mid, b);
    let left = bisect(f, a, mid, 0.5 * tol, depth + 1, left);
    let right = bisect(f, mid, b, 0.5 * tol, depth + 1, right);
    PanelEstimate {
        value: left.value + right.value,
        error: left.error + right.error,
        evals: whole.evals + left.evals + right.evals,
    }
}

/// Wynn ε-algorithm over the last `window` partial sums.
///
/// Feed partial sums in order with [`push`](Self::push); each call returns
/// the current extrapolated limit and an error estimate built from the
/// spread of the last three extrapolants.
#[derive(Debug, Clone)]
pub struct EpsilonAccelerator {
    sums: Vec<Complex64>,
    window: usize,
    history: Vec<Complex64>,
}

/// A limit estimate with its error bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Extrapolation {
    pub value: Complex64,
    pub error: f64,
}

impl Default for EpsilonAccelerator {
    fn default() -> Self {
        Self::new(40)
    }
}

impl EpsilonAccelerator {
    pub fn new(window: usize) -> Self {
        assert!(window >= 3, "epsilon window must hold at least three sums");
        EpsilonAccelerator {
            sums: Vec::with_capacity(window),
            window,
            history: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.history.len()
    }

    pub fn is_empty(&self) -> bool {
        self.history.is_empty()
    }

    pub fn push(&mut self, partial_sum: Complex64) -> Extrapolation {
        if self.sums.len() == self.window {
            self.sums.remove(0);
        }
        self.sums.push(partial_sum);
        let value = wynn_epsilon(&self.sums);
        self.history.push(value);

        let n = self.history.len();
        let error = if n >= 3 {
            (value - self.history[n - 2]).norm() + (value - self.history[n - 3]).norm()
        } else {
            f64::INFINITY
        };
        Extrapolation {
            value,
            error: error + 5.0 * f64::EPSILON * value.norm(),
        }
    }
}

/// Returns the deepest even-column entry of the ε-table built from `sums`.
pub fn wynn_epsilon(sums: &[Complex64]) -> Complex64 {
    let n = sums.len();
    match n {
        0 => return Complex64::new(0.0, 0.0),
        1 | 2 => return sums[n - 1],
        _ => {}
    }
    // prev = column k−1, cur = column k; column k has n−k entries.
    let mut prev = vec![Complex64::new(0.0, 0.0); n + 1];
    let mut cur = sums.to_vec();
    let mut best = sums[n - 1];
    for k in 1..n {
        let mut next = Vec::with_capacity(n - k);
        for j in 0..n - k {
            let diff = cur[j + 1] - cur[j];
            if diff.norm() <= f64::MIN_POSITIVE.sqrt() * cur[j + 1].norm().max(1.0) * 1e-8 {
                // Column has converged to within rounding.
                return if k % 2 == 1 { cur[j + 1] } else { best };
            }
            next.push(prev[j + 1] + diff.inv());
        }
        if k % 2 == 0 {
            best = *next.last().expect("column is non-empty");
        }
        prev = cur;
        cur = next;
    }
    best
}
