use std::collections::BinaryHeap;
use std::f64::consts::FRAC_PI_2;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureResult {
    pub value: f64,
    /// Convergence-check estimate, not a guaranteed bound.
    pub error_estimate: f64,
    pub evaluations: usize,
    /// Nodes where a slightly negative radicand was clamped to zero.
    pub clamped: usize,
}

// Gauss-Kronrod 7/15 abscissae and weights on [-1, 1].
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

const MAX_SEGMENTS: usize = 4000;

struct Segment {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for Segment {}
impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Segment {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn kronrod<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> Result<Segment> {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    if !fc.is_finite() {
        return Err(Error::Evaluation(c));
    }
    let mut k = WGK[7] * fc;
    let mut g = WG[3] * fc;
    for j in 0..7 {
        let dx = h * XGK[j];
        let f1 = f(c - dx);
        let f2 = f(c + dx);
        if !f1.is_finite() {
            return Err(Error::Evaluation(c - dx));
        }
        if !f2.is_finite() {
            return Err(Error::Evaluation(c + dx));
        }
        k += WGK[j] * (f1 + f2);
        if j % 2 == 1 {
            g += WG[j / 2] * (f1 + f2);
        }
    }
    Ok(Segment {
        a,
        b,
        value: k * h,
        error: ((k - g) * h).abs(),
    })
}

/// Globally adaptive Gauss-Kronrod (7/15) quadrature of a finite integrand.
///
/// The worst segment is bisected until the summed Kronrod-Gauss difference
/// drops below `tol * (1 + |value|)`.
pub fn integrate_smooth<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> Result<QuadratureResult> {
    if a == b {
        return Ok(QuadratureResult {
            value: 0.0,
            error_estimate: 0.0,
            evaluations: 0,
            clamped: 0,
        });
    }
    if b < a {
        let r = integrate_smooth(f, b, a, tol)?;
        return Ok(QuadratureResult { value: -r.value, ..r });
    }
    let mut heap = BinaryHeap::new();
    let first = kronrod(&f, a, b)?;
    let (mut value, mut error) = (first.value, first.error);
    heap.push(first);
    let mut evaluations = 15;
    while error > tol * (1.0 + value.abs()) {
        if heap.len() >= MAX_SEGMENTS {
            return Err(Error::Accuracy {
                best: value,
                error,
                evaluations,
            });
        }
        let worst = heap.pop().expect("heap is never empty");
        let mid = 0.5 * (worst.a + worst.b);
        let left = kronrod(&f, worst.a, mid)?;
        let right = kronrod(&f, mid, worst.b)?;
        evaluations += 30;
        value += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        // Re-sum occasionally so cancellation in the running totals cannot stall convergence.
        if heap.len() % 64 == 0 {
            value = heap.iter().map(|s| s.value).sum();
            error = heap.iter().map(|s| s.error).sum();
        }
    }
    Ok(QuadratureResult {
        value,
        error_estimate: error,
        evaluations,
        clamped: 0,
    })
}

const MIN_LEVEL: u32 = 4;
const MAX_LEVEL: u32 = 22;
const CLAMP_TOL: f64 = 1e-13;

/// `∫_a^b sqrt(Q(x)) dx` for a radicand with simple zeros at both ends.
pub fn integrate_sqrt_bracket<Q: Fn(f64) -> f64>(q: Q, a: f64, b: f64, tol: f64) -> Result<QuadratureResult> {
    integrate_sqrt_bracket_weighted(q, |_| 1.0, a, b, tol)
}

/// `∫_a^b sqrt(Q(x)) w(x) dx` with `Q(a) = Q(b) = 0`, `Q > 0` inside and
/// `w` smooth on `[a, b]`.
///
/// Substituting `x = a + (b - a) sin²θ` turns the integrand into an even,
/// π-periodic analytic function of θ, so the trapezoidal rule on
/// `[0, π/2]` converges geometrically; the node count is doubled (reusing
/// previous nodes) until successive sums agree to `tol * (1 + |value|)`.
pub fn integrate_sqrt_bracket_weighted<Q, W>(q: Q, w: W, a: f64, b: f64, tol: f64) -> Result<QuadratureResult>
where
    Q: Fn(f64) -> f64,
    W: Fn(f64) -> f64,
{
    if !(a < b) {
        return Err(Error::GridMismatch(format!("need a < b, got [{a}, {b}]")));
    }
    let len = b - a;
    let x_of = |theta: f64| {
        let s = theta.sin();
        a + len * s * s
    };

    // Interior probes: a negative radicand here means the endpoints are not
    // the turning points bracketing the classically allowed region.
    let mut scale: f64 = 1.0;
    let mut probes = Vec::with_capacity(5);
    for k in 1..=5 {
        let x = x_of(k as f64 * FRAC_PI_2 / 6.0);
        let v = q(x);
        if !v.is_finite() {
            return Err(Error::Evaluation(x));
        }
        scale = scale.max(v.abs());
        probes.push((x, v));
    }
    let threshold = CLAMP_TOL * scale;
    if let Some(&(x, value)) = probes.iter().find(|(_, v)| *v < -threshold) {
        return Err(Error::IntegrandSign { x, value });
    }

    let mut clamped = 0usize;
    let mut evaluations = 5usize;
    let mut g = |theta: f64| -> Result<f64> {
        let x = x_of(theta);
        let mut v = q(x);
        let wx = w(x);
        evaluations += 1;
        if !v.is_finite() || !wx.is_finite() {
            return Err(Error::Evaluation(x));
        }
        if v < 0.0 {
            clamped += 1;
            v = 0.0;
        }
        Ok(v.sqrt() * wx * len * (2.0 * theta).sin())
    };

    // The integrand vanishes at θ = 0 and θ = π/2, so only interior nodes contribute.
    let mut n = 1usize << MIN_LEVEL;
    let mut h = FRAC_PI_2 / n as f64;
    let mut sum = 0.0;
    for k in 1..n {
        sum += g(k as f64 * h)?;
    }
    let mut estimate = sum * h;
    for _ in MIN_LEVEL..MAX_LEVEL {
        let mut fresh = 0.0;
        for k in 0..n {
            fresh += g((2 * k + 1) as f64 * 0.5 * h)?;
        }
        sum += fresh;
        n *= 2;
        h *= 0.5;
        let next = sum * h;
        let diff = (next - estimate).abs();
        estimate = next;
        if diff <= tol * (1.0 + next.abs()) {
            return Ok(QuadratureResult {
                value: next,
                error_estimate: diff,
                evaluations,
                clamped,
            });
        }
    }
    Err(Error::Accuracy {
        best: estimate,
        error: f64::NAN,
        evaluations,
    })
}
