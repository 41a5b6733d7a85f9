//! Natanzon potentials of Laguerre and Jacobi class.
//!
//! The potential is defined through the coordinate map `dx/dz = f(z)` with
//! `f² = A/z² + Bz² + C` (Laguerre, `z > 0`) or
//! `f² = A/sin²z + B/cos²z + C` (Jacobi, `0 < z < π/2`), and the constant
//! numerator `D/z² + Fz² + G` (resp. `D/sin²z + F/cos²z + G`). At trial energy
//! `E` the problem in `z` is the radial oscillator (resp. Pöschl–Teller)
//! with energy-dependent effective parameters.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::catalog::{FamilyId, Params, PotentialModel};
use crate::error::{Error, Result};
use crate::numerics::{find_root, Bracket, Domain};
use crate::swkb::{solve_increasing, swkb_integral, swkb_integral_weighted, Superpotential};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum NatanzonClass {
    Laguerre,
    Jacobi,
}

impl FromStr for NatanzonClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "l" | "laguerre" => Ok(NatanzonClass::Laguerre),
            "j" | "jacobi" => Ok(NatanzonClass::Jacobi),
            _ => Err(Error::UnknownTag(s.to_string())),
        }
    }
}

impl fmt::Display for NatanzonClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            NatanzonClass::Laguerre => "laguerre",
            NatanzonClass::Jacobi => "jacobi",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NatanzonParams {
    pub class: NatanzonClass,
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
    pub f: f64,
    pub g: f64,
}

impl NatanzonParams {
    /// Validates finiteness, `A, B >= 0` and positivity of `f²` on the domain.
    pub fn new(class: NatanzonClass, a: f64, b: f64, c: f64, d: f64, f: f64, g: f64) -> Result<Self> {
        let p = Self { class, a, b, c, d, f, g };
        if ![a, b, c, d, f, g].iter().all(|v| v.is_finite()) {
            return Err(Error::ParameterDomain("A..G must be finite".into()));
        }
        if a < 0.0 || b < 0.0 {
            return Err(Error::ParameterDomain(format!("need A >= 0 and B >= 0, got A={a}, B={b}")));
        }
        // Infimum of f² over the domain.
        let positive = match class {
            NatanzonClass::Laguerre => match (a > 0.0, b > 0.0) {
                (true, true) => c > -2.0 * (a * b).sqrt(),
                (false, false) => c > 0.0,
                _ => c >= 0.0,
            },
            NatanzonClass::Jacobi => (a.sqrt() + b.sqrt()).powi(2) + c > 0.0,
        };
        if !positive {
            return Err(Error::ParameterDomain(format!(
                "f^2 is not positive on the whole domain for A={a}, B={b}, C={c}"
            )));
        }
        Ok(p)
    }

    pub fn domain(&self) -> Domain {
        match self.class {
            NatanzonClass::Laguerre => Domain::POSITIVE,
            NatanzonClass::Jacobi => Domain::new(0.0, FRAC_PI_2),
        }
    }

    /// `f²(z)` and its first two derivatives.
    fn f_squared(&self, z: f64) -> (f64, f64, f64) {
        let Self { a, b, c, .. } = *self;
        match self.class {
            NatanzonClass::Laguerre => {
                let (z2, z3, z4) = (z * z, z * z * z, z * z * z * z);
                (a / z2 + b * z2 + c, -2.0 * a / z3 + 2.0 * b * z, 6.0 * a / z4 + 2.0 * b)
            }
            NatanzonClass::Jacobi => {
                let (s, co) = (z.sin(), z.cos());
                let (s2, c2) = (s * s, co * co);
                let s1 = -2.0 * a * co / (s2 * s) + 2.0 * b * s / (c2 * co);
                let s2nd = 2.0 * a / s2 + 6.0 * a * c2 / (s2 * s2) + 2.0 * b / c2 + 6.0 * b * s2 / (c2 * c2);
                (a / s2 + b / c2 + c, s1, s2nd)
            }
        }
    }

    /// `f(z) = dx/dz`.
    pub fn f(&self, z: f64) -> f64 {
        self.f_squared(z).0.sqrt()
    }

    /// `f`, `df/dz`, `d²f/dz²`.
    fn f_derivs(&self, z: f64) -> (f64, f64, f64) {
        let (s, s1, s2) = self.f_squared(z);
        let f = s.sqrt();
        (f, s1 / (2.0 * f), s2 / (2.0 * f) - s1 * s1 / (4.0 * f * s))
    }

    /// The numerator `D/z² + Fz² + G` (resp. trigonometric form).
    fn numerator(&self, z: f64) -> f64 {
        match self.class {
            NatanzonClass::Laguerre => self.d / (z * z) + self.f * z * z + self.g,
            NatanzonClass::Jacobi => self.d / z.sin().powi(2) + self.f / z.cos().powi(2) + self.g,
        }
    }

    /// Upper end of the trial-energy window where the effective parameters are real.
    fn energy_ceiling(&self) -> f64 {
        let mut top = f64::INFINITY;
        if self.a > 0.0 {
            top = top.min((4.0 * self.d + 1.0) / (4.0 * self.a));
        }
        if self.b > 0.0 {
            top = top.min(match self.class {
                NatanzonClass::Laguerre => self.f / self.b,
                NatanzonClass::Jacobi => (4.0 * self.f + 1.0) / (4.0 * self.b),
            });
        }
        top
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "class", rename_all = "lowercase")]
pub enum EffectiveParams {
    Laguerre { omega: f64, g: f64 },
    Jacobi { g: f64, h: f64 },
}

impl EffectiveParams {
    /// The canonical system at these parameters.
    fn model(&self) -> Result<PotentialModel> {
        match *self {
            EffectiveParams::Laguerre { omega, g } => {
                PotentialModel::unchecked(FamilyId::RadialOsc, &Params::new().with("omega", omega).with("g", g))
            }
            EffectiveParams::Jacobi { g, h } => {
                PotentialModel::unchecked(FamilyId::PoschlTeller, &Params::new().with("g", g).with("h", h))
            }
        }
    }

    /// Canonical eigenvalue `4nω` or `4n(n+g+h)`.
    fn level(&self, n: usize) -> f64 {
        let nf = n as f64;
        match *self {
            EffectiveParams::Laguerre { omega, .. } => 4.0 * nf * omega,
            EffectiveParams::Jacobi { g, h } => 4.0 * nf * (nf + g + h),
        }
    }

    /// Canonical superpotential.
    fn w(&self, z: f64) -> f64 {
        match *self {
            EffectiveParams::Laguerre { omega, g } => omega * z - g / z,
            EffectiveParams::Jacobi { g, h } => -g / z.tan() + h * z.tan(),
        }
    }

    /// Constant separating the canonical factorized potential from the
    /// `z`-equation at trial energy: `ω(2g+1)` or `(g+h)²`.
    fn offset(&self) -> f64 {
        match *self {
            EffectiveParams::Laguerre { omega, g } => omega * (2.0 * g + 1.0),
            EffectiveParams::Jacobi { g, h } => (g + h).powi(2),
        }
    }
}

/// Larger root of `g(g - 1) = q`.
fn upper_root(q: f64, what: &str, energy: f64) -> Result<f64> {
    let disc = 1.0 + 4.0 * q;
    if !(disc > 0.0) {
        return Err(Error::TrialEnergyOutOfRange {
            energy,
            reason: format!("{what}(E) = {q} <= -1/4"),
        });
    }
    Ok(0.5 * (1.0 + disc.sqrt()))
}

pub fn effective_params(nat: &NatanzonParams, energy: f64) -> Result<EffectiveParams> {
    let g = upper_root(nat.d - nat.a * energy, "D - A E", energy)?;
    match nat.class {
        NatanzonClass::Laguerre => {
            let w2 = nat.f - nat.b * energy;
            if !(w2 > 0.0) {
                return Err(Error::TrialEnergyOutOfRange {
                    energy,
                    reason: format!("F - B E = {w2} <= 0"),
                });
            }
            Ok(EffectiveParams::Laguerre { omega: w2.sqrt(), g })
        }
        NatanzonClass::Jacobi => {
            let h = upper_root(nat.f - nat.b * energy, "F - B E", energy)?;
            Ok(EffectiveParams::Jacobi { g, h })
        }
    }
}

/// Energy of the `z`-equation at trial energy `E`, measured from the bottom of
/// the canonical factorized potential: `EC - G - ω(2g+1)` or `EC - G - (g+h)²`.
fn canonical_energy(nat: &NatanzonParams, energy: f64) -> Result<(EffectiveParams, f64)> {
    let eff = effective_params(nat, energy)?;
    Ok((eff, energy * nat.c - nat.g - eff.offset()))
}

/// Constant-term balance whose zero is level `n`: `Φ(E) = ε(E) - 4nω` (resp.
/// `ε(E) - 4n(n+g+h)`), i.e. `EC - ω(4n+2g+1) - G` and `EC - (g+h+2n)² - G`.
pub fn spectral_function(nat: &NatanzonParams, n: usize, energy: f64) -> Result<f64> {
    let (eff, eps) = canonical_energy(nat, energy)?;
    Ok(eps - eff.level(n))
}

const WINDOW_PROBES: usize = 200;

/// Finds the smallest sign change from negative to positive of `h` on the
/// admissible trial-energy window and refines it.
fn first_upward_root<H: Fn(f64) -> f64>(nat: &NatanzonParams, n: usize, h: H) -> Result<f64> {
    let top = nat.energy_ceiling();
    // lower end: h -> -inf as E -> -inf whenever f² > 0
    let mut lo = if top.is_finite() { top.min(0.0) - 1.0 } else { -1.0 };
    let mut h_lo = h(lo);
    let mut steps = 0;
    while !(h_lo < 0.0) {
        lo = 2.0 * lo - 1.0;
        h_lo = h(lo);
        steps += 1;
        if steps > 200 {
            return Err(Error::SearchBound(format!("no lower bracket for level {n}")));
        }
    }
    let refine = |a: f64, fa: f64, b: f64, fb: f64| -> Result<f64> {
        find_root(&h, &Bracket::from_values(a, b, fa, fb)?, 1e-14)
    };
    if top.is_finite() {
        let hi = top - 1e-12 * (1.0 + top.abs());
        let (mut prev, mut f_prev) = (lo, h_lo);
        for k in 1..=WINDOW_PROBES {
            let e = lo + (hi - lo) * k as f64 / WINDOW_PROBES as f64;
            let fe = h(e);
            if fe >= 0.0 {
                return refine(prev, f_prev, e, fe);
            }
            if fe.is_finite() {
                prev = e;
                f_prev = fe;
            }
        }
        Err(Error::NoBoundState { n, n_max: None })
    } else {
        let mut hi = lo.abs().max(1.0);
        for _ in 0..200 {
            let fe = h(hi);
            if fe >= 0.0 {
                return refine(lo, h_lo, hi, fe);
            }
            hi *= 2.0;
        }
        Err(Error::NoBoundState { n, n_max: None })
    }
}

/// Level `n` from the constant-term balance `Φ(E) = 0`.
pub fn natanzon_exact_energy(nat: &NatanzonParams, n: usize) -> Result<f64> {
    first_upward_root(nat, n, |e| spectral_function(nat, n, e).unwrap_or(f64::NAN))
}

/// Levels `0..=n_max`, stopping early at the first missing level.
pub fn natanzon_spectrum(nat: &NatanzonParams, n_max: usize) -> Result<Vec<f64>> {
    let mut out = Vec::new();
    for n in 0..=n_max {
        match natanzon_exact_energy(nat, n) {
            Ok(e) => out.push(e),
            Err(Error::NoBoundState { .. }) if n > 0 => break,
            Err(e) => return Err(e),
        }
    }
    Ok(out)
}

/// The canonical SWKB integral at the effective parameters of trial energy
/// `E`, with the canonical level energy `4nω_eff` (resp. `4n(n+g+h)`).
///
/// Equals `nπ` for every admissible `E`.
pub fn natanzon_extended_swkb(nat: &NatanzonParams, n: usize, energy: f64, tol: f64) -> Result<f64> {
    let eff = effective_params(nat, energy)?;
    if n == 0 {
        return Ok(0.0);
    }
    swkb_integral(&eff.model()?, eff.level(n), tol)
}

/// Level `n` from the SWKB condition of the `z`-problem: the trial energy at
/// which the canonical integral with energy `ε(E)` reaches `nπ`.
pub fn natanzon_solve_swkb_energy(nat: &NatanzonParams, n: usize, tol: f64) -> Result<f64> {
    let eps = |e: f64| canonical_energy(nat, e).map_or(f64::NAN, |(_, v)| v);
    // start where the z-problem energy turns positive
    let e0 = first_upward_root(nat, 0, eps)?;
    if n == 0 {
        return Ok(e0);
    }
    let target = n as f64 * PI;
    let integral = |e: f64| -> Result<f64> {
        let (eff, v) = canonical_energy(nat, e)?;
        if v <= 0.0 {
            return Ok(0.0);
        }
        let model = eff.model()?;
        swkb_integral(&model, v, tol * 1e-2)
    };
    let residual = |e: f64| integral(e).map_or(f64::NAN, |v| v - target);
    let top = nat.energy_ceiling();
    if top.is_finite() {
        // probe the window above e0 for the first crossing
        let hi = top - 1e-12 * (1.0 + top.abs());
        let (mut prev, mut f_prev) = (e0, -target);
        for k in 1..=WINDOW_PROBES {
            let e = e0 + (hi - e0) * k as f64 / WINDOW_PROBES as f64;
            let fe = residual(e);
            if fe >= 0.0 {
                return find_root(residual, &Bracket::from_values(prev, e, f_prev, fe)?, 1e-14);
            }
            if fe.is_finite() {
                prev = e;
                f_prev = fe;
            }
        }
        Err(Error::NoBoundState { n, n_max: None })
    } else {
        let shifted = solve_increasing(|de| integral(e0 + de), target, 1.0, None, tol * 1e-2);
        shifted.map(|de| e0 + de).map_err(|e| match e {
            Error::SearchBound(_) => Error::NoBoundState { n, n_max: None },
            other => other,
        })
    }
}

/// `x(z)` from the closed-form antiderivative of `f`, normalized to
/// `x(1) = 0` (Laguerre) or `x(π/4) = 0` (Jacobi).
pub fn natanzon_x_of_z(nat: &NatanzonParams, z: f64) -> Result<f64> {
    let z = nat.domain().check(z)?;
    let z0 = match nat.class {
        NatanzonClass::Laguerre => 1.0,
        NatanzonClass::Jacobi => FRAC_PI_4,
    };
    Ok(antiderivative(nat, z)? - antiderivative(nat, z0)?)
}

fn ln_checked(arg: f64, what: &str) -> Result<f64> {
    if arg > 0.0 && arg.is_finite() {
        Ok(arg.ln())
    } else {
        Err(Error::ParameterDomain(format!("x(z): logarithm argument {arg} in {what}")))
    }
}

fn antiderivative(nat: &NatanzonParams, z: f64) -> Result<f64> {
    let NatanzonParams { a, b, c, .. } = *nat;
    match nat.class {
        NatanzonClass::Laguerre => {
            // u = z², dx = sqrt(R)/(2u) du with R = Bu² + Cu + A
            let u = z * z;
            let r = (b * u * u + c * u + a).max(0.0);
            let sr = r.sqrt();
            let t_b = if b > 0.0 {
                if c == 0.0 {
                    0.0
                } else {
                    c / (2.0 * b.sqrt()) * ln_checked(2.0 * (b * r).sqrt() + 2.0 * b * u + c, "B term")?
                }
            } else if c > 0.0 {
                sr
            } else {
                0.0
            };
            let t_a = if a > 0.0 {
                -a.sqrt() * ln_checked((2.0 * a + c * u + 2.0 * (a * r).sqrt()) / u, "A term")?
            } else {
                0.0
            };
            Ok(0.5 * (sr + t_b + t_a))
        }
        NatanzonClass::Jacobi => {
            // v = sin²z, dx = sqrt(P)/(2v(1-v)) dv with P = A + bv - Cv²
            let v = z.sin().powi(2);
            let w = z.cos().powi(2);
            let bb = b - a + c;
            let bp = a - b + c;
            let p = (a * w + b * v + c * v * w).max(0.0);
            let sp = p.sqrt();
            let i_c = if c > 0.0 {
                let delta = (bb * bb + 4.0 * a * c).sqrt();
                ((2.0 * c * v - bb) / delta).clamp(-1.0, 1.0).asin() / c.sqrt()
            } else if c < 0.0 {
                let ac = -c;
                ln_checked(2.0 * ac.sqrt() * sp + 2.0 * ac * v + bb, "C term")? / ac.sqrt()
            } else {
                0.0
            };
            let t_a = if a > 0.0 {
                -a.sqrt() * ln_checked((2.0 * a + bb * v + 2.0 * (a * p).sqrt()) / v, "A term")?
            } else {
                0.0
            };
            let t_b = if b > 0.0 {
                b.sqrt() * ln_checked((2.0 * b + bp * w + 2.0 * (b * p).sqrt()) / w, "B term")?
            } else {
                0.0
            };
            Ok(0.5 * (c * i_c + t_a + t_b))
        }
    }
}

/// `V(z) = f''/(2f³) - 3f'²/(4f⁴) + g(z)/f²` (primes in `z`) before any shift.
fn raw_potential(nat: &NatanzonParams, z: f64) -> f64 {
    let (f, f1, f2) = nat.f_derivs(z);
    let f_2 = f * f;
    f2 / (2.0 * f_2 * f) - 3.0 * f1 * f1 / (4.0 * f_2 * f_2) + nat.numerator(z) / f_2
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CurvePoint {
    pub z: f64,
    pub x: f64,
    /// Potential measured from the ground level, so that `E_0 = 0`.
    pub v: f64,
}

/// Samples `(x(z), V(x(z)) - E_0)` along `z_grid`.
pub fn natanzon_potential_curve(nat: &NatanzonParams, z_grid: &[f64]) -> Result<Vec<CurvePoint>> {
    let e0 = natanzon_exact_energy(nat, 0)?;
    let mut out: Vec<CurvePoint> = Vec::with_capacity(z_grid.len());
    for &z in z_grid {
        let x = natanzon_x_of_z(nat, z)?;
        if let Some(last) = out.last() {
            if (z > last.z) != (x > last.x) {
                return Err(Error::ParameterDomain(format!(
                    "x(z) is not increasing between z={} and z={z}",
                    last.z
                )));
            }
        }
        out.push(CurvePoint {
            z,
            x,
            v: raw_potential(nat, z) - e0,
        });
    }
    Ok(out)
}

/// Ground-state superpotential of the Natanzon system, parametrized by `z`.
///
/// With `ψ_0 = sqrt(f) φ_0` and `dx = f dz`,
/// `W = -dψ_0/dx / ψ_0 = (w(z) - f'/(2f)) / f` where `w` is the canonical
/// superpotential at the effective parameters of `E_0`.
#[derive(Debug, Clone, Copy)]
pub struct NaturalSuperpotential {
    nat: NatanzonParams,
    ground: EffectiveParams,
    e0: f64,
}

impl NaturalSuperpotential {
    pub fn new(nat: &NatanzonParams) -> Result<Self> {
        let e0 = natanzon_exact_energy(nat, 0)?;
        Ok(Self {
            nat: *nat,
            ground: effective_params(nat, e0)?,
            e0,
        })
    }

    pub fn ground_energy(&self) -> f64 {
        self.e0
    }

    /// `dW/dx` at the point with coordinate `z`.
    pub fn w_x_derivative(&self, z: f64) -> f64 {
        let h = 1e-5 * z.abs().max(1e-3);
        let dw_dz = (self.w(z + h) - self.w(z - h)) / (2.0 * h);
        dw_dz / self.nat.f(z)
    }

    /// `V - E_0` at coordinate `z`.
    pub fn shifted_potential(&self, z: f64) -> f64 {
        raw_potential(&self.nat, z) - self.e0
    }
}

impl Superpotential for NaturalSuperpotential {
    fn w(&self, z: f64) -> f64 {
        let (f, f1, _) = self.nat.f_derivs(z);
        (self.ground.w(z) - f1 / (2.0 * f)) / f
    }

    fn domain(&self) -> Domain {
        self.nat.domain()
    }

    fn reference_point(&self) -> f64 {
        match self.nat.class {
            NatanzonClass::Laguerre => 1.0,
            NatanzonClass::Jacobi => FRAC_PI_4,
        }
    }

    fn plateau(&self) -> Option<f64> {
        // W -> (1/2 - g)/sqrt(A) as z -> 0, and similarly at the other end
        let mut limit = f64::INFINITY;
        let (g_lo, far) = match self.ground {
            EffectiveParams::Laguerre { omega, g } => (g, (self.nat.b > 0.0).then(|| omega * omega / self.nat.b)),
            EffectiveParams::Jacobi { g, h } => (g, (self.nat.b > 0.0).then(|| (h - 0.5).powi(2) / self.nat.b)),
        };
        if self.nat.a > 0.0 {
            limit = limit.min((g_lo - 0.5).powi(2) / self.nat.a);
        }
        if let Some(v) = far {
            limit = limit.min(v);
        }
        limit.is_finite().then_some(limit)
    }
}

/// The ordinary SWKB integral `∫ sqrt(E_n - E_0 - W²) dx`, evaluated in `z`
/// with `dx = f dz`.
pub fn natanzon_naive_swkb(nat: &NatanzonParams, n: usize, tol: f64) -> Result<f64> {
    if n == 0 {
        return Ok(0.0);
    }
    let sp = NaturalSuperpotential::new(nat)?;
    let e = natanzon_exact_energy(nat, n)? - sp.ground_energy();
    swkb_integral_weighted(&sp, e, |z| nat.f(z), tol)
}
