//! The SWKB integral `∫_a^b sqrt(E - W²) dx` between the roots of `E = W²`,
//! the quantization check against `nπ`, and its inversion for energies.

use std::f64::consts::PI;

use serde::Serialize;

use crate::catalog::PotentialModel;
use crate::error::{Error, Result};
use crate::numerics::{find_root, integrate_sqrt_bracket_weighted, Bracket, Domain};

/// Anything with a superpotential that has one sign change on its domain.
pub trait Superpotential {
    fn w(&self, x: f64) -> f64;
    fn domain(&self) -> Domain;
    /// Interior starting point for the scan that locates the zero of `W`.
    fn reference_point(&self) -> f64;
    /// Smallest finite asymptotic value of `W²` at either end, if any.
    fn plateau(&self) -> Option<f64>;
}

impl Superpotential for PotentialModel {
    fn w(&self, x: f64) -> f64 {
        PotentialModel::w(self, x)
    }
    fn domain(&self) -> Domain {
        PotentialModel::domain(self)
    }
    fn reference_point(&self) -> f64 {
        PotentialModel::reference_point(self)
    }
    fn plateau(&self) -> Option<f64> {
        PotentialModel::plateau(self)
    }
}

impl<S: Superpotential + ?Sized> Superpotential for &S {
    fn w(&self, x: f64) -> f64 {
        (**self).w(x)
    }
    fn domain(&self) -> Domain {
        (**self).domain()
    }
    fn reference_point(&self) -> f64 {
        (**self).reference_point()
    }
    fn plateau(&self) -> Option<f64> {
        (**self).plateau()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TurningPoints {
    pub a: f64,
    pub b: f64,
}

impl TurningPoints {
    pub fn is_degenerate(&self) -> bool {
        self.a == self.b
    }
}

const ROOT_TOL: f64 = 1e-14;
const MAX_SCAN: i32 = 200;

/// Probe `k` (k >= 1) of an outward scan from `from` towards `edge`.
///
/// Infinite edges are approached with doubling steps, finite ones by halving
/// the remaining distance.
fn probe(from: f64, edge: f64, k: i32) -> f64 {
    if edge.is_infinite() {
        from + edge.signum() * 0.125 * 2f64.powi(k - 1)
    } else {
        edge + (from - edge) * 2f64.powi(-k)
    }
}

/// Scans from `from` towards `edge` for the first probe where `f` is
/// positive, returning the last non-positive probe and the positive one.
fn scan<F: Fn(f64) -> f64>(f: &F, from: f64, edge: f64) -> Result<(f64, f64, f64, f64)> {
    let (mut prev, mut f_prev) = (from, f(from));
    for k in 1..=MAX_SCAN {
        let x = probe(from, edge, k);
        if x == prev || !x.is_finite() {
            break;
        }
        let fx = f(x);
        if fx.is_nan() {
            return Err(Error::Evaluation(x));
        }
        if fx > 0.0 {
            return Ok((prev, f_prev, x, fx));
        }
        prev = x;
        f_prev = fx;
    }
    Err(Error::DomainEdge(format!(
        "no sign change between {from} and {edge}"
    )))
}

fn root_between<F: Fn(f64) -> f64>(f: &F, p: (f64, f64, f64, f64)) -> Result<f64> {
    let (x0, f0, x1, f1) = p;
    let bracket = if x0 < x1 {
        Bracket::from_values(x0, x1, f0, f1)?
    } else {
        Bracket::from_values(x1, x0, f1, f0)?
    };
    find_root(f, &bracket, ROOT_TOL)
}

/// The unique zero of `W` on the domain.
pub fn superpotential_zero<S: Superpotential>(s: &S) -> Result<f64> {
    let d = s.domain();
    let r = s.reference_point();
    let w0 = s.w(r);
    if w0 == 0.0 {
        return Ok(r);
    }
    if w0 < 0.0 {
        let f = |x: f64| s.w(x);
        root_between(&f, scan(&f, r, d.hi)?)
    } else {
        let f = |x: f64| -s.w(x);
        root_between(&f, scan(&f, r, d.lo)?)
    }
}

/// The two roots of `E = W(x)²` around the zero of `W`.
///
/// `E = 0` gives the degenerate pair at the zero of `W`.
pub fn turning_points<S: Superpotential>(s: &S, energy: f64) -> Result<TurningPoints> {
    if !(energy >= 0.0) {
        return Err(Error::ParameterDomain(format!(
            "turning points need E >= 0, got {energy}"
        )));
    }
    if let Some(limit) = s.plateau() {
        if energy >= limit {
            return Err(Error::Plateau { energy, limit });
        }
    }
    let x0 = superpotential_zero(s)?;
    if energy == 0.0 {
        return Ok(TurningPoints { a: x0, b: x0 });
    }
    let d = s.domain();
    let f = |x: f64| {
        let w = s.w(x);
        w * w - energy
    };
    let a = root_between(&f, scan(&f, x0, d.lo)?)?;
    let b = root_between(&f, scan(&f, x0, d.hi)?)?;
    Ok(TurningPoints { a, b })
}

/// `∫ sqrt(E - W²) weight(x) dx` between the turning points.
pub fn swkb_integral_weighted<S, F>(s: &S, energy: f64, weight: F, tol: f64) -> Result<f64>
where
    S: Superpotential,
    F: Fn(f64) -> f64,
{
    if energy == 0.0 {
        return Ok(0.0);
    }
    let tp = turning_points(s, energy)?;
    let q = |x: f64| {
        let w = s.w(x);
        energy - w * w
    };
    Ok(integrate_sqrt_bracket_weighted(q, weight, tp.a, tp.b, tol)?.value)
}

/// `∫ sqrt(E - W²) dx` between the turning points (units ħ = 2m = 1).
pub fn swkb_integral<S: Superpotential>(s: &S, energy: f64, tol: f64) -> Result<f64> {
    swkb_integral_weighted(s, energy, |_| 1.0, tol)
}

/// Per-level comparison of the SWKB integral against `nπ`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SwkbReport {
    pub n: usize,
    #[serde(rename = "E_exact")]
    pub energy_exact: f64,
    pub integral: f64,
    pub deviation: f64,
    #[serde(rename = "E_swkb")]
    pub energy_swkb: Option<f64>,
    pub rel_err: Option<f64>,
}

impl SwkbReport {
    pub fn new(n: usize, energy_exact: f64, integral: f64) -> Self {
        Self {
            n,
            energy_exact,
            integral,
            deviation: integral - n as f64 * PI,
            energy_swkb: None,
            rel_err: None,
        }
    }

    /// Attaches an energy obtained by inverting the condition.
    pub fn with_solved(mut self, energy_swkb: f64) -> Self {
        self.energy_swkb = Some(energy_swkb);
        self.rel_err = Some(relative_error(energy_swkb, self.energy_exact));
        self
    }

    /// `|deviation| <= max(10 tol, 1e-8)`.
    pub fn passes(&self, tol: f64) -> bool {
        self.deviation.abs() <= (10.0 * tol).max(1e-8)
    }
}

/// `|a - b| / |b|`, or the absolute difference when `b = 0`.
pub fn relative_error(a: f64, b: f64) -> f64 {
    if b == 0.0 {
        (a - b).abs()
    } else {
        ((a - b) / b).abs()
    }
}

pub fn swkb_check(model: &PotentialModel, n: usize, tol: f64) -> Result<SwkbReport> {
    let e = model.exact_energy(n)?;
    let integral = if n == 0 { 0.0 } else { swkb_integral(model, e, tol)? };
    Ok(SwkbReport::new(n, e, integral))
}

/// Smallest `E > 0` with `integral(E) = target`, for an integral increasing in `E`
/// with `integral(0) = 0`.
///
/// The upper end starts at `guess` and doubles until it overshoots; with a
/// finite `cap` it is clamped to `(1 - 1e-9) cap`.
pub fn solve_increasing<I>(integral: I, target: f64, guess: f64, cap: Option<f64>, tol: f64) -> Result<f64>
where
    I: Fn(f64) -> Result<f64>,
{
    let limit = cap.map(|c| (1.0 - 1e-9) * c);
    let mut hi = if guess.is_finite() && guess > 0.0 { guess } else { 1.0 };
    let mut f_hi;
    loop {
        if let Some(l) = limit {
            hi = hi.min(l);
        }
        f_hi = integral(hi)? - target;
        if f_hi > 0.0 {
            break;
        }
        if limit.is_some_and(|l| hi >= l) || hi > 1e300 {
            return Err(Error::SearchBound(format!(
                "integral stays below {target} up to E = {hi}"
            )));
        }
        hi *= 2.0;
    }
    // Errors from inside the bracket cannot occur for a well-posed integral;
    // map them to NaN so Brent reports them as evaluation failures.
    let g = |e: f64| integral(e).map_or(f64::NAN, |v| v - target);
    let bracket = Bracket::from_values(0.0, hi, -target, f_hi)?;
    find_root(g, &bracket, (tol * 1e-2).max(1e-15))
}

/// Energy of level `n` from the SWKB condition alone.
pub fn swkb_solve_energy(model: &PotentialModel, n: usize, tol: f64) -> Result<f64> {
    if n == 0 {
        return Ok(0.0);
    }
    let target = n as f64 * PI;
    let guess = n as f64 * model.energy_shift().abs();
    solve_increasing(|e| swkb_integral(model, e, tol), target, guess, model.plateau(), tol).map_err(|e| match e {
        Error::SearchBound(msg) => Error::SearchBound(format!("level {n}: {msg} (n_max={:?})", model.n_max())),
        other => other,
    })
}
