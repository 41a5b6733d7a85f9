//! Position-dependent-mass (deformed) systems
//! `H = (-(1/s) sqrt(η) d/dx sqrt(η) + W)((1/s) sqrt(η) d/dx sqrt(η) + W)`
//! with `s = sqrt(2 m0)`, and the SWKB condition with measure `dx/η`.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::Serialize;

use crate::catalog::{Params, ResidualStats};
use crate::error::{Error, Result};
use crate::numerics::{find_root, integrate_smooth, integrate_sqrt_bracket, Bracket, Domain};
use crate::swkb::{swkb_integral_weighted, turning_points, Superpotential};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DeformedKind {
    DeformedHo,
    SemiConfinedHo,
    Custom,
}

impl DeformedKind {
    pub fn tag(self) -> &'static str {
        match self {
            DeformedKind::DeformedHo => "deformed_ho",
            DeformedKind::SemiConfinedHo => "semi_confined_ho",
            DeformedKind::Custom => "custom",
        }
    }
}

impl fmt::Display for DeformedKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for DeformedKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().replace('-', "_").as_str() {
            "deformed_ho" => Ok(DeformedKind::DeformedHo),
            "semi_confined_ho" | "semi_confined" => Ok(DeformedKind::SemiConfinedHo),
            _ => Err(Error::UnknownTag(s.to_string())),
        }
    }
}

type RealFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;
type LevelFn = Arc<dyn Fn(usize) -> f64 + Send + Sync>;

#[derive(Clone)]
pub struct DeformedModel {
    kind: DeformedKind,
    params: Params,
    mass_scale: f64,
    domain: Domain,
    reference_point: f64,
    w: RealFn,
    w_prime: RealFn,
    eta: RealFn,
    eta_prime: RealFn,
    energy: LevelFn,
}

impl fmt::Debug for DeformedModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("DeformedModel")
            .field("kind", &self.kind)
            .field("params", &self.params)
            .field("mass_scale", &self.mass_scale)
            .field("domain", &self.domain)
            .finish_non_exhaustive()
    }
}

fn param(kind: DeformedKind, params: &Params, name: &str, accepted: &[&str]) -> Result<f64> {
    if let Some((bad, _)) = params.iter().find(|(k, _)| !accepted.contains(k)) {
        return Err(Error::UnknownParameter {
            name: bad.to_string(),
            family: kind.tag().to_string(),
            accepted: accepted.join(", "),
        });
    }
    let v = params.get(name).ok_or_else(|| Error::MissingParameter {
        name: name.to_string(),
        family: kind.tag().to_string(),
    })?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::ParameterDomain(format!("{name} must be finite")))
    }
}

/// Builds `deformed_ho` (`omega`, `alpha`) or `semi_confined_ho` (`omega`, `x0`)
/// with `2 m0 = 1`.
pub fn make_deformed(kind: DeformedKind, params: &Params) -> Result<DeformedModel> {
    match kind {
        DeformedKind::DeformedHo => {
            let accepted = ["omega", "alpha"];
            let omega = param(kind, params, "omega", &accepted)?;
            let alpha = param(kind, params, "alpha", &accepted)?;
            if !(omega > 0.0 && alpha >= 0.0) {
                return Err(Error::ParameterDomain(format!(
                    "deformed_ho: requires omega > 0, alpha >= 0; got omega={omega}, alpha={alpha}"
                )));
            }
            Ok(DeformedModel {
                kind,
                params: params.clone(),
                mass_scale: 1.0,
                domain: Domain::REAL_LINE,
                reference_point: 0.0,
                w: Arc::new(move |x| omega * x),
                w_prime: Arc::new(move |_| omega),
                eta: Arc::new(move |x| 1.0 + alpha * x * x),
                eta_prime: Arc::new(move |x| 2.0 * alpha * x),
                energy: Arc::new(move |n| {
                    let nf = n as f64;
                    2.0 * nf * omega + nf * nf * alpha
                }),
            })
        }
        DeformedKind::SemiConfinedHo => {
            let accepted = ["omega", "x0"];
            let omega = param(kind, params, "omega", &accepted)?;
            let x0 = param(kind, params, "x0", &accepted)?;
            if !(omega > 0.0 && x0 > 0.0) {
                return Err(Error::ParameterDomain(format!(
                    "semi_confined_ho: requires omega > 0, x0 > 0; got omega={omega}, x0={x0}"
                )));
            }
            Ok(DeformedModel {
                kind,
                params: params.clone(),
                mass_scale: 1.0,
                domain: Domain::new(-x0, f64::INFINITY),
                reference_point: 0.0,
                w: Arc::new(move |x| omega * x * (x0 / (x + x0)).sqrt()),
                w_prime: Arc::new(move |x| {
                    let y = x + x0;
                    omega * (x0 / y).sqrt() * (x + 2.0 * x0) / (2.0 * y)
                }),
                eta: Arc::new(move |x| ((x + x0) / x0).sqrt()),
                eta_prime: Arc::new(move |x| 0.5 / (x0 * (x + x0)).sqrt()),
                energy: Arc::new(move |n| 2.0 * n as f64 * omega),
            })
        }
        DeformedKind::Custom => Err(Error::Capability(
            "custom models are built with DeformedModel::custom".into(),
        )),
    }
}

impl DeformedModel {
    /// A user-supplied system; `energy` must be the spectrum at `2 m0 = 1`
    /// scaled consistently with [`DeformedModel::with_mass_scale`] by the caller.
    #[allow(clippy::too_many_arguments)]
    pub fn custom(
        params: Params,
        domain: Domain,
        reference_point: f64,
        w: impl Fn(f64) -> f64 + Send + Sync + 'static,
        w_prime: impl Fn(f64) -> f64 + Send + Sync + 'static,
        eta: impl Fn(f64) -> f64 + Send + Sync + 'static,
        eta_prime: impl Fn(f64) -> f64 + Send + Sync + 'static,
        energy: impl Fn(usize) -> f64 + Send + Sync + 'static,
    ) -> Result<Self> {
        domain.check(reference_point)?;
        Ok(Self {
            kind: DeformedKind::Custom,
            params,
            mass_scale: 1.0,
            domain,
            reference_point,
            w: Arc::new(w),
            w_prime: Arc::new(w_prime),
            eta: Arc::new(eta),
            eta_prime: Arc::new(eta_prime),
            energy: Arc::new(energy),
        })
    }

    /// Sets `2 m0`.
    pub fn with_mass_scale(mut self, mass_scale: f64) -> Result<Self> {
        if !(mass_scale > 0.0 && mass_scale.is_finite()) {
            return Err(Error::ParameterDomain(format!("mass scale must be > 0, got {mass_scale}")));
        }
        self.mass_scale = mass_scale;
        Ok(self)
    }

    pub fn kind(&self) -> DeformedKind {
        self.kind
    }

    pub fn params(&self) -> &Params {
        &self.params
    }

    pub fn mass_scale(&self) -> f64 {
        self.mass_scale
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn w(&self, x: f64) -> f64 {
        (self.w)(x)
    }

    pub fn w_prime(&self, x: f64) -> f64 {
        (self.w_prime)(x)
    }

    pub fn eta(&self, x: f64) -> f64 {
        (self.eta)(x)
    }

    pub fn eta_prime(&self, x: f64) -> f64 {
        (self.eta_prime)(x)
    }

    /// `V_eff = W² - (η/s) W'`.
    pub fn potential(&self, x: f64) -> f64 {
        let w = self.w(x);
        w * w - self.eta(x) / self.mass_scale.sqrt() * self.w_prime(x)
    }

    /// Level `n`. For the built-in models the spectrum at general `2 m0 = s²` is
    /// `2nω/s + n²α/s²` (deformed) and `2nω/s` (semi-confined).
    pub fn exact_energy(&self, n: usize) -> f64 {
        let s = self.mass_scale.sqrt();
        match self.kind {
            DeformedKind::DeformedHo => {
                let omega = self.params.get("omega").unwrap_or_default();
                let alpha = self.params.get("alpha").unwrap_or_default();
                let nf = n as f64;
                2.0 * nf * omega / s + nf * nf * alpha / (s * s)
            }
            DeformedKind::SemiConfinedHo => (self.energy)(n) / s,
            DeformedKind::Custom => (self.energy)(n),
        }
    }
}

impl Superpotential for DeformedModel {
    fn w(&self, x: f64) -> f64 {
        (self.w)(x)
    }
    fn domain(&self) -> Domain {
        self.domain
    }
    fn reference_point(&self) -> f64 {
        self.reference_point
    }
    fn plateau(&self) -> Option<f64> {
        None
    }
}

/// `∫ sqrt(2m0 (E - W²)) dx/η` between the roots of `E = W²`.
pub fn deformed_integral_at(model: &DeformedModel, energy: f64, tol: f64) -> Result<f64> {
    let s = model.mass_scale.sqrt();
    Ok(s * swkb_integral_weighted(model, energy, |x| 1.0 / model.eta(x), tol)?)
}

/// `∫ sqrt(2m0 (E - W²)) dx` without the mass weight.
pub fn ordinary_integral_at(model: &DeformedModel, energy: f64, tol: f64) -> Result<f64> {
    let s = model.mass_scale.sqrt();
    Ok(s * swkb_integral_weighted(model, energy, |_| 1.0, tol)?)
}

/// Extended SWKB integral at level `n`; equals `nπ` for the built-in models.
pub fn deformed_swkb_integral(model: &DeformedModel, n: usize, tol: f64) -> Result<f64> {
    if n == 0 {
        return Ok(0.0);
    }
    deformed_integral_at(model, model.exact_energy(n), tol)
}

/// Ordinary SWKB integral at level `n` with constant mass `m0`.
pub fn ordinary_swkb_integral(model: &DeformedModel, n: usize, tol: f64) -> Result<f64> {
    if n == 0 {
        return Ok(0.0);
    }
    ordinary_integral_at(model, model.exact_energy(n), tol)
}

/// `[W² + (η/s)W'](x; a) - [W² - (η/s)W'](x; f(a))` over `grid`, where
/// `shifted` carries the parameters `f(a)`.
pub fn deformed_si_residual(model: &DeformedModel, shifted: &DeformedModel, grid: &[f64]) -> Result<ResidualStats> {
    let values = si_values(model, shifted, grid)?;
    ResidualStats::from_values(&values, model.exact_energy(1))
}

fn si_values(model: &DeformedModel, shifted: &DeformedModel, grid: &[f64]) -> Result<Vec<f64>> {
    if model.domain != shifted.domain || model.mass_scale != shifted.mass_scale {
        return Err(Error::GridMismatch("models differ in domain or mass scale".into()));
    }
    let s = model.mass_scale.sqrt();
    grid.iter()
        .map(|&x| {
            let x = model.domain.check(x)?;
            let eta = model.eta(x);
            let eta_shifted = shifted.eta(x);
            if (eta - eta_shifted).abs() > 1e-12 * eta.abs().max(1.0) {
                return Err(Error::GridMismatch(format!("deformations differ at x={x}")));
            }
            let (w, ws) = (model.w(x), shifted.w(x));
            Ok(w * w + eta / s * model.w_prime(x) - (ws * ws - eta / s * shifted.w_prime(x)))
        })
        .collect()
}

/// Partner of a deformed oscillator: the `ω' > 0` at which the residual against
/// `(ω', α)` is flat, found as a root of `R(1) - R(0)`.
pub fn fit_deformed_ho_shift(model: &DeformedModel) -> Result<DeformedModel> {
    if model.kind != DeformedKind::DeformedHo {
        return Err(Error::Capability(format!(
            "shift fitting is available for deformed_ho, not {}",
            model.kind
        )));
    }
    let omega = model.params.get("omega").unwrap_or_default();
    let alpha = model.params.get("alpha").unwrap_or_default();
    let partner = |w: f64| -> Result<DeformedModel> {
        make_deformed(DeformedKind::DeformedHo, &Params::new().with("omega", w).with("alpha", alpha))?
            .with_mass_scale(model.mass_scale)
    };
    let slope = |w: f64| -> f64 {
        match partner(w).and_then(|p| si_values(model, &p, &[0.0, 1.0])) {
            Ok(v) => v[1] - v[0],
            Err(_) => f64::NAN,
        }
    };
    let hi = omega + 2.0 * alpha / model.mass_scale.sqrt() + 1.0;
    let bracket = Bracket::new(slope, omega, hi)?;
    partner(find_root(slope, &bracket, 1e-15)?)
}

/// The conventional system reached through `dz/dx = κ/η`, with `z(x_ref) = 0`.
#[derive(Debug, Clone)]
pub struct FlattenedSystem {
    pub kappa: f64,
    pub x_ref: f64,
    model: DeformedModel,
}

pub fn flatten(model: &DeformedModel, kappa: f64) -> Result<FlattenedSystem> {
    if !(kappa > 0.0 && kappa.is_finite()) {
        return Err(Error::ParameterDomain(format!("kappa must be > 0, got {kappa}")));
    }
    Ok(FlattenedSystem {
        kappa,
        x_ref: model.reference_point,
        model: model.clone(),
    })
}

const MAP_TOL: f64 = 1e-13;

impl FlattenedSystem {
    pub fn model(&self) -> &DeformedModel {
        &self.model
    }

    /// `z(x) = κ ∫_{x_ref}^x dx'/η(x')`.
    pub fn z_of_x(&self, x: f64) -> Result<f64> {
        let x = self.model.domain.check(x)?;
        let r = integrate_smooth(|t| 1.0 / self.model.eta(t), self.x_ref, x, MAP_TOL)?;
        Ok(self.kappa * r.value)
    }

    /// Inverse of [`FlattenedSystem::z_of_x`] by bracketing and root finding.
    pub fn x_of_z(&self, z: f64) -> Result<f64> {
        if z == 0.0 {
            return Ok(self.x_ref);
        }
        let d = self.model.domain;
        let edge = if z > 0.0 { d.hi } else { d.lo };
        let f = |x: f64| self.z_of_x(x).map_or(f64::NAN, |v| v - z);
        let (mut prev, mut f_prev) = (self.x_ref, -z);
        for k in 1..=200 {
            let x = if edge.is_infinite() {
                self.x_ref + edge.signum() * 0.25 * 2f64.powi(k - 1)
            } else {
                edge + (self.x_ref - edge) * 2f64.powi(-k)
            };
            let fx = f(x);
            if !fx.is_finite() {
                return Err(Error::Evaluation(x));
            }
            if fx.signum() != f_prev.signum() {
                let b = if prev < x {
                    Bracket::from_values(prev, x, f_prev, fx)?
                } else {
                    Bracket::from_values(x, prev, fx, f_prev)?
                };
                return find_root(f, &b, 1e-15);
            }
            prev = x;
            f_prev = fx;
        }
        Err(Error::Domain {
            x: z,
            lo: self.z_of_x(d.lo.max(-1e300)).unwrap_or(f64::NEG_INFINITY),
            hi: self.z_of_x(d.hi.min(1e300)).unwrap_or(f64::INFINITY),
        })
    }

    /// `w(z) = -W(x(z))/κ`.
    pub fn w(&self, z: f64) -> Result<f64> {
        Ok(-self.model.w(self.x_of_z(z)?) / self.kappa)
    }

    /// `ε_n = E_n / κ²`.
    pub fn epsilon(&self, n: usize) -> f64 {
        self.model.exact_energy(n) / (self.kappa * self.kappa)
    }
}

/// `∫ sqrt(2m0 (ε_n - w(z)²)) dz` between the images of the turning points.
pub fn flat_swkb_integral(flat: &FlattenedSystem, n: usize, tol: f64) -> Result<f64> {
    if n == 0 {
        return Ok(0.0);
    }
    let energy = flat.model.exact_energy(n);
    let tp = turning_points(&flat.model, energy)?;
    let (za, zb) = (flat.z_of_x(tp.a)?, flat.z_of_x(tp.b)?);
    let eps = flat.epsilon(n);
    let q = |z: f64| match flat.w(z) {
        Ok(w) => eps - w * w,
        Err(_) => f64::NAN,
    };
    let r = integrate_sqrt_bracket(q, za, zb, tol)?;
    Ok(flat.model.mass_scale.sqrt() * r.value)
}
