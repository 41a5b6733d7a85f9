//! Conventional shape-invariant potentials.
//!
//! Every model is written in the factorized form `H = -d²/dx² + W² - W'`
//! with a vanishing ground-state energy.

use std::collections::BTreeMap;
use std::f64::consts::FRAC_PI_4;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::numerics::Domain;
use crate::orthopoly::{eval_cop, CopFamily};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FamilyId {
    #[serde(rename = "ho_1d")]
    Ho1d,
    RadialOsc,
    PoschlTeller,
    Coulomb,
    Morse,
    RosenMorse,
    Eckart,
    HyperbolicPt,
    HyperbolicTop2,
}

impl FamilyId {
    pub const ALL: [FamilyId; 9] = [
        FamilyId::Ho1d,
        FamilyId::RadialOsc,
        FamilyId::PoschlTeller,
        FamilyId::Coulomb,
        FamilyId::Morse,
        FamilyId::RosenMorse,
        FamilyId::Eckart,
        FamilyId::HyperbolicPt,
        FamilyId::HyperbolicTop2,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            FamilyId::Ho1d => "ho_1d",
            FamilyId::RadialOsc => "radial_osc",
            FamilyId::PoschlTeller => "poschl_teller",
            FamilyId::Coulomb => "coulomb",
            FamilyId::Morse => "morse",
            FamilyId::RosenMorse => "rosen_morse",
            FamilyId::Eckart => "eckart",
            FamilyId::HyperbolicPt => "hyperbolic_pt",
            FamilyId::HyperbolicTop2 => "hyperbolic_top2",
        }
    }

    /// Parameter names accepted by [`make_model`], in canonical order.
    pub fn param_names(self) -> &'static [&'static str] {
        match self {
            FamilyId::Ho1d => &["omega"],
            FamilyId::RadialOsc => &["omega", "g"],
            FamilyId::PoschlTeller => &["g", "h"],
            FamilyId::Coulomb => &["e2", "g_tilde"],
            FamilyId::Morse => &["mu", "h"],
            FamilyId::RosenMorse => &["mu", "h_tilde"],
            FamilyId::Eckart => &["mu", "g_tilde"],
            FamilyId::HyperbolicPt => &["g", "h_tilde"],
            FamilyId::HyperbolicTop2 => &["mu", "h_tilde"],
        }
    }

    fn constraints(self) -> &'static str {
        match self {
            FamilyId::Ho1d => "omega > 0",
            FamilyId::RadialOsc => "omega > 0, g > 1/2",
            FamilyId::PoschlTeller => "g > 1/2, h > 1/2",
            FamilyId::Coulomb => "e2 > 0, g_tilde > 1/2",
            FamilyId::Morse => "mu > 0, h > 0",
            FamilyId::RosenMorse => "h_tilde > 0, |mu| < h_tilde^2",
            FamilyId::Eckart => "g_tilde > 0, mu > g_tilde^2",
            FamilyId::HyperbolicPt => "g > 0, h_tilde > g",
            FamilyId::HyperbolicTop2 => "h_tilde > 0",
        }
    }

    fn energy_formula(self) -> &'static str {
        match self {
            FamilyId::Ho1d => "2 n omega",
            FamilyId::RadialOsc => "4 n omega",
            FamilyId::PoschlTeller => "4 n (n + g + h)",
            FamilyId::Coulomb => "e2^2/(4 g_tilde^2) - e2^2/(4 (g_tilde + n)^2)",
            FamilyId::Morse => "2 n h - n^2",
            FamilyId::RosenMorse => {
                "2 n h_tilde - n^2 + mu^2/h_tilde^2 - mu^2/(h_tilde - n)^2"
            }
            FamilyId::Eckart => "-2 n g_tilde - n^2 + mu^2/g_tilde^2 - mu^2/(g_tilde + n)^2",
            FamilyId::HyperbolicPt => "4 n (h_tilde - g - n)",
            FamilyId::HyperbolicTop2 => "2 n h_tilde - n^2",
        }
    }

    fn n_max_rule(self) -> &'static str {
        match self {
            FamilyId::Ho1d | FamilyId::RadialOsc | FamilyId::PoschlTeller | FamilyId::Coulomb => {
                "unbounded"
            }
            FamilyId::Morse => "n < h",
            FamilyId::RosenMorse => "(h_tilde - n)^2 > |mu|",
            FamilyId::Eckart => "(g_tilde + n)^2 < mu",
            FamilyId::HyperbolicPt => "h_tilde - g - 2 n > 0",
            FamilyId::HyperbolicTop2 => "n < h_tilde",
        }
    }

    fn domain(self) -> Domain {
        match self {
            FamilyId::Ho1d | FamilyId::Morse | FamilyId::RosenMorse | FamilyId::HyperbolicTop2 => {
                Domain::REAL_LINE
            }
            FamilyId::PoschlTeller => Domain::new(0.0, std::f64::consts::FRAC_PI_2),
            FamilyId::RadialOsc | FamilyId::Coulomb | FamilyId::Eckart | FamilyId::HyperbolicPt => {
                Domain::POSITIVE
            }
        }
    }
}

impl fmt::Display for FamilyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for FamilyId {
    type Err = Error;

    /// Accepts the snake_case tag or its kebab-case spelling.
    fn from_str(s: &str) -> Result<Self> {
        let norm = s.trim().to_ascii_lowercase().replace('-', "_");
        FamilyId::ALL
            .into_iter()
            .find(|f| f.tag() == norm)
            .ok_or_else(|| Error::UnknownTag(s.to_string()))
    }
}

/// Named real parameters of a model.
#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct Params(BTreeMap<String, f64>);

impl Params {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, name: &str, value: f64) -> Self {
        self.0.insert(name.to_string(), value);
        self
    }

    pub fn set(&mut self, name: &str, value: f64) {
        self.0.insert(name.to_string(), value);
    }

    pub fn get(&self, name: &str) -> Option<f64> {
        self.0.get(name).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, f64)> {
        self.0.iter().map(|(k, v)| (k.as_str(), *v))
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for Params {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.iter().map(|(k, v)| format!("{k}={v}")).collect();
        f.write_str(&parts.join(","))
    }
}

/// Typed parameter sets, one per family.
#[derive(Debug, Clone, Copy, PartialEq)]
enum Shape {
    Ho { omega: f64 },
    Radial { omega: f64, g: f64 },
    PoschlTeller { g: f64, h: f64 },
    Coulomb { e2: f64, gt: f64 },
    Morse { mu: f64, h: f64 },
    RosenMorse { mu: f64, ht: f64 },
    Eckart { mu: f64, gt: f64 },
    HyperbolicPt { g: f64, ht: f64 },
    Top2 { mu: f64, ht: f64 },
}

impl Shape {
    fn from_params(family: FamilyId, params: &Params) -> Result<Self> {
        let names = family.param_names();
        if let Some((name, _)) = params.iter().find(|(k, _)| !names.contains(k)) {
            return Err(Error::UnknownParameter {
                name: name.to_string(),
                family: family.tag().to_string(),
                accepted: names.join(", "),
            });
        }
        let get = |name: &str| -> Result<f64> {
            let v = params.get(name).ok_or_else(|| Error::MissingParameter {
                name: name.to_string(),
                family: family.tag().to_string(),
            })?;
            if v.is_finite() {
                Ok(v)
            } else {
                Err(Error::ParameterDomain(format!("{name} must be finite")))
            }
        };
        Ok(match family {
            FamilyId::Ho1d => Shape::Ho { omega: get("omega")? },
            FamilyId::RadialOsc => Shape::Radial {
                omega: get("omega")?,
                g: get("g")?,
            },
            FamilyId::PoschlTeller => Shape::PoschlTeller {
                g: get("g")?,
                h: get("h")?,
            },
            FamilyId::Coulomb => Shape::Coulomb {
                e2: get("e2")?,
                gt: get("g_tilde")?,
            },
            FamilyId::Morse => Shape::Morse {
                mu: get("mu")?,
                h: get("h")?,
            },
            FamilyId::RosenMorse => Shape::RosenMorse {
                mu: get("mu")?,
                ht: get("h_tilde")?,
            },
            FamilyId::Eckart => Shape::Eckart {
                mu: get("mu")?,
                gt: get("g_tilde")?,
            },
            FamilyId::HyperbolicPt => Shape::HyperbolicPt {
                g: get("g")?,
                ht: get("h_tilde")?,
            },
            FamilyId::HyperbolicTop2 => Shape::Top2 {
                mu: get("mu")?,
                ht: get("h_tilde")?,
            },
        })
    }

    fn to_params(self) -> Params {
        let p = Params::new();
        match self {
            Shape::Ho { omega } => p.with("omega", omega),
            Shape::Radial { omega, g } => p.with("omega", omega).with("g", g),
            Shape::PoschlTeller { g, h } => p.with("g", g).with("h", h),
            Shape::Coulomb { e2, gt } => p.with("e2", e2).with("g_tilde", gt),
            Shape::Morse { mu, h } => p.with("mu", mu).with("h", h),
            Shape::RosenMorse { mu, ht } => p.with("mu", mu).with("h_tilde", ht),
            Shape::Eckart { mu, gt } => p.with("mu", mu).with("g_tilde", gt),
            Shape::HyperbolicPt { g, ht } => p.with("g", g).with("h_tilde", ht),
            Shape::Top2 { mu, ht } => p.with("mu", mu).with("h_tilde", ht),
        }
    }

    /// Parameter-range check; `None` when admissible.
    fn violation(self) -> Option<&'static str> {
        let ok = match self {
            Shape::Ho { omega } => omega > 0.0,
            Shape::Radial { omega, g } => omega > 0.0 && g > 0.5,
            Shape::PoschlTeller { g, h } => g > 0.5 && h > 0.5,
            Shape::Coulomb { e2, gt } => e2 > 0.0 && gt > 0.5,
            Shape::Morse { mu, h } => mu > 0.0 && h > 0.0,
            Shape::RosenMorse { mu, ht } => ht > 0.0 && mu.abs() < ht * ht,
            Shape::Eckart { mu, gt } => gt > 0.0 && mu > gt * gt,
            Shape::HyperbolicPt { g, ht } => g > 0.0 && ht > g,
            Shape::Top2 { ht, .. } => ht > 0.0,
        };
        (!ok).then(|| self.family().constraints())
    }

    fn family(self) -> FamilyId {
        match self {
            Shape::Ho { .. } => FamilyId::Ho1d,
            Shape::Radial { .. } => FamilyId::RadialOsc,
            Shape::PoschlTeller { .. } => FamilyId::PoschlTeller,
            Shape::Coulomb { .. } => FamilyId::Coulomb,
            Shape::Morse { .. } => FamilyId::Morse,
            Shape::RosenMorse { .. } => FamilyId::RosenMorse,
            Shape::Eckart { .. } => FamilyId::Eckart,
            Shape::HyperbolicPt { .. } => FamilyId::HyperbolicPt,
            Shape::Top2 { .. } => FamilyId::HyperbolicTop2,
        }
    }

    /// The parameter map `f(a)` of the shape-invariance relation.
    fn shifted(self) -> Shape {
        match self {
            Shape::Ho { .. } => self,
            Shape::Radial { omega, g } => Shape::Radial { omega, g: g + 1.0 },
            Shape::PoschlTeller { g, h } => Shape::PoschlTeller {
                g: g + 1.0,
                h: h + 1.0,
            },
            Shape::Coulomb { e2, gt } => Shape::Coulomb { e2, gt: gt + 1.0 },
            Shape::Morse { mu, h } => Shape::Morse { mu, h: h - 1.0 },
            Shape::RosenMorse { mu, ht } => Shape::RosenMorse { mu, ht: ht - 1.0 },
            Shape::Eckart { mu, gt } => Shape::Eckart { mu, gt: gt + 1.0 },
            Shape::HyperbolicPt { g, ht } => Shape::HyperbolicPt {
                g: g + 1.0,
                ht: ht - 1.0,
            },
            Shape::Top2 { mu, ht } => Shape::Top2 { mu, ht: ht - 1.0 },
        }
    }

    /// The additive constant `ε(a)` of the shape-invariance relation.
    fn energy_shift(self) -> f64 {
        match self {
            Shape::Ho { omega } => 2.0 * omega,
            Shape::Radial { omega, .. } => 4.0 * omega,
            Shape::PoschlTeller { g, h } => 4.0 * (g + h + 1.0),
            Shape::Coulomb { e2, gt } => {
                e2 * e2 / (4.0 * gt * gt) - e2 * e2 / (4.0 * (gt + 1.0).powi(2))
            }
            Shape::Morse { h, .. } => 2.0 * h - 1.0,
            Shape::RosenMorse { mu, ht } => {
                2.0 * ht - 1.0 + mu * mu / (ht * ht) - mu * mu / (ht - 1.0).powi(2)
            }
            Shape::Eckart { mu, gt } => {
                -2.0 * gt - 1.0 + mu * mu / (gt * gt) - mu * mu / (gt + 1.0).powi(2)
            }
            Shape::HyperbolicPt { g, ht } => 4.0 * (ht - g - 1.0),
            Shape::Top2 { ht, .. } => 2.0 * ht - 1.0,
        }
    }

    fn energy(self, n: usize) -> f64 {
        let nf = n as f64;
        match self {
            Shape::Ho { omega } => 2.0 * nf * omega,
            Shape::Radial { omega, .. } => 4.0 * nf * omega,
            Shape::PoschlTeller { g, h } => 4.0 * nf * (nf + g + h),
            Shape::Coulomb { e2, gt } => {
                e2 * e2 / (4.0 * gt * gt) - e2 * e2 / (4.0 * (gt + nf).powi(2))
            }
            Shape::Morse { h, .. } => 2.0 * nf * h - nf * nf,
            Shape::RosenMorse { mu, ht } => {
                2.0 * nf * ht - nf * nf + mu * mu / (ht * ht) - mu * mu / (ht - nf).powi(2)
            }
            Shape::Eckart { mu, gt } => {
                -2.0 * nf * gt - nf * nf + mu * mu / (gt * gt) - mu * mu / (gt + nf).powi(2)
            }
            Shape::HyperbolicPt { g, ht } => 4.0 * nf * (ht - g - nf),
            Shape::Top2 { ht, .. } => 2.0 * nf * ht - nf * nf,
        }
    }

    fn n_max(self) -> Option<usize> {
        let levels_below = |x: f64| -> usize {
            // number of integers n >= 0 with n < x
            if x <= 0.0 {
                0
            } else {
                x.ceil() as usize
            }
        };
        let count = match self {
            Shape::Ho { .. } | Shape::Radial { .. } | Shape::PoschlTeller { .. } | Shape::Coulomb { .. } => {
                return None
            }
            Shape::Morse { h, .. } => levels_below(h),
            Shape::Top2 { ht, .. } => levels_below(ht),
            Shape::RosenMorse { mu, ht } => levels_below(ht - mu.abs().sqrt()),
            Shape::Eckart { mu, gt } => levels_below(mu.sqrt() - gt),
            Shape::HyperbolicPt { g, ht } => levels_below(0.5 * (ht - g)),
        };
        Some(count.saturating_sub(1))
    }

    fn w(self, x: f64) -> f64 {
        match self {
            Shape::Ho { omega } => omega * x,
            Shape::Radial { omega, g } => omega * x - g / x,
            Shape::PoschlTeller { g, h } => -g / x.tan() + h * x.tan(),
            Shape::Coulomb { e2, gt } => e2 / (2.0 * gt) - gt / x,
            Shape::Morse { mu, h } => mu * x.exp() - h,
            Shape::RosenMorse { mu, ht } => mu / ht + ht * x.tanh(),
            Shape::Eckart { mu, gt } => mu / gt - gt / x.tanh(),
            Shape::HyperbolicPt { g, ht } => -g / x.tanh() + ht * x.tanh(),
            Shape::Top2 { mu, ht } => mu / x.cosh() + ht * x.tanh(),
        }
    }

    fn w_prime(self, x: f64) -> f64 {
        let sech2 = |x: f64| 1.0 / x.cosh().powi(2);
        match self {
            Shape::Ho { omega } => omega,
            Shape::Radial { omega, g } => omega + g / (x * x),
            Shape::PoschlTeller { g, h } => g / x.sin().powi(2) + h / x.cos().powi(2),
            Shape::Coulomb { gt, .. } => gt / (x * x),
            Shape::Morse { mu, .. } => mu * x.exp(),
            Shape::RosenMorse { ht, .. } => ht * sech2(x),
            Shape::Eckart { gt, .. } => gt / x.sinh().powi(2),
            Shape::HyperbolicPt { g, ht } => g / x.sinh().powi(2) + ht * sech2(x),
            Shape::Top2 { mu, ht } => (ht - mu * x.sinh()) * sech2(x),
        }
    }

    /// Smallest finite limit of `W²` at the ends of the domain.
    fn plateau(self) -> Option<f64> {
        match self {
            Shape::Ho { .. } | Shape::Radial { .. } | Shape::PoschlTeller { .. } => None,
            Shape::Coulomb { e2, gt } => Some((e2 / (2.0 * gt)).powi(2)),
            Shape::Morse { h, .. } => Some(h * h),
            Shape::RosenMorse { mu, ht } => Some((mu / ht + ht).powi(2).min((mu / ht - ht).powi(2))),
            Shape::Eckart { mu, gt } => Some((mu / gt - gt).powi(2)),
            Shape::HyperbolicPt { g, ht } => Some((ht - g).powi(2)),
            Shape::Top2 { ht, .. } => Some(ht * ht),
        }
    }

    fn reference_point(self) -> f64 {
        match self.family().domain() {
            d if d == Domain::REAL_LINE => 0.0,
            d if d == Domain::POSITIVE => 1.0,
            _ => FRAC_PI_4,
        }
    }

    fn wavefunction(self, n: usize, x: f64) -> Result<f64> {
        let nf = n as f64;
        match self {
            Shape::Ho { omega } => {
                Ok((-0.5 * omega * x * x).exp() * eval_cop(CopFamily::Hermite, n, omega.sqrt() * x)?)
            }
            Shape::Radial { omega, g } => {
                let p = eval_cop(CopFamily::Laguerre { alpha: g - 0.5 }, n, omega * x * x)?;
                Ok((-0.5 * omega * x * x).exp() * x.powf(g) * p)
            }
            Shape::PoschlTeller { g, h } => {
                let fam = CopFamily::Jacobi {
                    alpha: g - 0.5,
                    beta: h - 0.5,
                };
                Ok(x.sin().powf(g) * x.cos().powf(h) * eval_cop(fam, n, (2.0 * x).cos())?)
            }
            Shape::Coulomb { e2, gt } => {
                let omega = e2 / (gt + nf);
                let p = eval_cop(CopFamily::Laguerre { alpha: 2.0 * gt - 1.0 }, n, omega * x)?;
                Ok(x.powf(gt) * (-0.5 * omega * x).exp() * p)
            }
            Shape::Morse { mu, h } => {
                let k = h - nf;
                let y = 2.0 * mu * x.exp();
                let p = eval_cop(CopFamily::Laguerre { alpha: 2.0 * k }, n, y)?;
                Ok((-0.5 * y + k * x).exp() * p)
            }
            other => Err(Error::Capability(format!(
                "wavefunction not available for {}; supported: ho_1d, radial_osc, poschl_teller, coulomb, morse",
                other.family()
            ))),
        }
    }
}

/// A conventional shape-invariant system at a fixed parameter point.
#[derive(Debug, Clone, PartialEq)]
pub struct PotentialModel {
    family: FamilyId,
    params: Params,
    shape: Shape,
    domain: Domain,
    n_max: Option<usize>,
}

/// Builds and validates a catalog model.
pub fn make_model(family: FamilyId, params: &Params) -> Result<PotentialModel> {
    PotentialModel::new(family, params)
}

impl PotentialModel {
    pub fn new(family: FamilyId, params: &Params) -> Result<Self> {
        let shape = Shape::from_params(family, params)?;
        if let Some(rule) = shape.violation() {
            return Err(Error::ParameterDomain(format!(
                "{family}: requires {rule}; got {params}"
            )));
        }
        Ok(Self::from_shape(shape))
    }

    /// Like [`PotentialModel::new`] but skips the range check; used for
    /// source-side systems whose mapped parameters may leave the catalog ranges.
    pub(crate) fn unchecked(family: FamilyId, params: &Params) -> Result<Self> {
        Ok(Self::from_shape(Shape::from_params(family, params)?))
    }

    fn from_shape(shape: Shape) -> Self {
        let family = shape.family();
        Self {
            family,
            params: shape.to_params(),
            shape,
            domain: family.domain(),
            n_max: shape.n_max(),
        }
    }

    pub fn family(&self) -> FamilyId {
        self.family
    }

    pub fn params(&self) -> &Params {
        &self.params
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    /// Highest bound level, `None` for infinitely many.
    pub fn n_max(&self) -> Option<usize> {
        self.n_max
    }

    pub fn has_level(&self, n: usize) -> bool {
        self.n_max.is_none_or(|m| n <= m)
    }

    fn level(&self, n: usize) -> Result<()> {
        if self.has_level(n) {
            Ok(())
        } else {
            Err(Error::NoBoundState { n, n_max: self.n_max })
        }
    }

    /// `W(x)`; errors outside the open domain.
    pub fn superpotential(&self, x: f64) -> Result<f64> {
        Ok(self.shape.w(self.domain.check(x)?))
    }

    /// `W(x)` without the domain check.
    pub fn w(&self, x: f64) -> f64 {
        self.shape.w(x)
    }

    pub fn w_prime(&self, x: f64) -> f64 {
        self.shape.w_prime(x)
    }

    /// `V(x) = W² - W'`.
    pub fn potential(&self, x: f64) -> f64 {
        let w = self.shape.w(x);
        w * w - self.shape.w_prime(x)
    }

    pub fn exact_energy(&self, n: usize) -> Result<f64> {
        self.level(n)?;
        Ok(self.shape.energy(n))
    }

    /// Unnormalized eigenfunction for the three canonical families, Coulomb and Morse.
    pub fn wavefunction(&self, n: usize, x: f64) -> Result<f64> {
        self.level(n)?;
        self.shape.wavefunction(n, self.domain.check(x)?)
    }

    /// Parameters `f(a)` of the shape-invariant partner.
    pub fn param_shift(&self) -> Params {
        self.shape.shifted().to_params()
    }

    /// `ε(a)`.
    pub fn energy_shift(&self) -> f64 {
        self.shape.energy_shift()
    }

    /// Smallest finite asymptotic value of `W²`, if any.
    pub fn plateau(&self) -> Option<f64> {
        self.shape.plateau()
    }

    /// An interior point used to start scans for the zero of `W`.
    pub fn reference_point(&self) -> f64 {
        self.shape.reference_point()
    }

    /// `[W² + W'](x; a) - [W² - W'](x; f(a))` over `grid`.
    pub fn shape_invariance_residual(&self, grid: &[f64]) -> Result<ResidualStats> {
        let partner = self.shape.shifted();
        let values = grid
            .iter()
            .map(|&x| {
                let x = self.domain.check(x)?;
                let w = self.shape.w(x);
                let wp = partner.w(x);
                Ok(w * w + self.shape.w_prime(x) - (wp * wp - partner.w_prime(x)))
            })
            .collect::<Result<Vec<_>>>()?;
        ResidualStats::from_values(&values, self.energy_shift())
    }
}

/// Summary of a residual that should be constant over a grid.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ResidualStats {
    pub mean: f64,
    pub min: f64,
    pub max: f64,
    /// `max - min`.
    pub spread: f64,
    pub expected: f64,
    /// `mean - expected`.
    pub offset: f64,
}

impl ResidualStats {
    pub fn from_values(values: &[f64], expected: f64) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::GridMismatch("empty grid".into()));
        }
        let mean = values.iter().sum::<f64>() / values.len() as f64;
        let min = values.iter().copied().fold(f64::INFINITY, f64::min);
        let max = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        Ok(Self {
            mean,
            min,
            max,
            spread: max - min,
            expected,
            offset: mean - expected,
        })
    }
}

/// One row of the machine-readable catalog listing.
#[derive(Debug, Clone, Serialize)]
pub struct FamilyInfo {
    pub family: FamilyId,
    pub params: Vec<&'static str>,
    pub constraints: &'static str,
    pub domain: [String; 2],
    pub energy: &'static str,
    pub n_max_rule: &'static str,
}

pub fn catalog_listing() -> Vec<FamilyInfo> {
    let fmt_end = |x: f64| match x {
        f64::INFINITY => "inf".to_string(),
        f64::NEG_INFINITY => "-inf".to_string(),
        v if (v - std::f64::consts::FRAC_PI_2).abs() < 1e-15 => "pi/2".to_string(),
        v => format!("{v}"),
    };
    FamilyId::ALL
        .into_iter()
        .map(|family| {
            let d = family.domain();
            FamilyInfo {
                family,
                params: family.param_names().to_vec(),
                constraints: family.constraints(),
                domain: [fmt_end(d.lo), fmt_end(d.hi)],
                energy: family.energy_formula(),
                n_max_rule: family.n_max_rule(),
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_4, SQRT_2};

    fn model(family: FamilyId, kv: &[(&str, f64)]) -> PotentialModel {
        let p = kv.iter().fold(Params::new(), |p, (k, v)| p.with(k, *v));
        make_model(family, &p).unwrap()
    }

    #[test]
    fn make_model_examples() {
        let ho = model(FamilyId::Ho1d, &[("omega", 1.0)]);
        assert_eq!(ho.n_max(), None);
        assert_eq!(ho.exact_energy(4).unwrap(), 8.0);
        assert_eq!(ho.domain(), Domain::REAL_LINE);

        let morse = model(FamilyId::Morse, &[("mu", 1.0), ("h", 5.5)]);
        assert_eq!(morse.n_max(), Some(5));
        assert_eq!(morse.exact_energy(3).unwrap(), 33.0 - 9.0);
        assert!(matches!(morse.exact_energy(6), Err(Error::NoBoundState { n: 6, .. })));

        let err = make_model(FamilyId::RadialOsc, &Params::new().with("omega", 2.0).with("g", 0.4));
        assert!(matches!(err, Err(Error::ParameterDomain(_))));
    }

    #[test]
    fn parameter_names_are_checked() {
        let err = make_model(FamilyId::Ho1d, &Params::new().with("omega", 1.0).with("g", 2.0)).unwrap_err();
        assert!(matches!(err, Error::UnknownParameter { ref accepted, .. } if accepted == "omega"));
        let err = make_model(FamilyId::PoschlTeller, &Params::new().with("g", 2.0)).unwrap_err();
        assert!(matches!(err, Error::MissingParameter { .. }));
        assert!("hо_1d".parse::<FamilyId>().is_err());
        assert_eq!("ho-1d".parse::<FamilyId>().unwrap(), FamilyId::Ho1d);
        assert_eq!("hyperbolic_top2".parse::<FamilyId>().unwrap(), FamilyId::HyperbolicTop2);
    }

    #[test]
    fn superpotential_examples() {
        assert_eq!(model(FamilyId::Ho1d, &[("omega", 2.0)]).superpotential(3.0).unwrap(), 6.0);
        let r = model(FamilyId::RadialOsc, &[("omega", 1.0), ("g", 2.0)]);
        assert!(r.superpotential(SQRT_2).unwrap().abs() < 1e-15);
        assert!(matches!(r.superpotential(-1.0), Err(Error::Domain { .. })));
        let pt = model(FamilyId::PoschlTeller, &[("g", 1.0), ("h", 1.0)]);
        assert!(pt.superpotential(FRAC_PI_4).unwrap().abs() < 1e-15);
    }

    #[test]
    fn energy_examples() {
        let pt = model(FamilyId::PoschlTeller, &[("g", 1.5), ("h", 2.5)]);
        assert_eq!(pt.exact_energy(2).unwrap(), 48.0);
        for family in FamilyId::ALL {
            let m = sample(family);
            assert_eq!(m.exact_energy(0).unwrap(), 0.0, "{family}");
        }
    }

    #[test]
    fn wavefunction_examples() {
        let ho = model(FamilyId::Ho1d, &[("omega", 1.0)]);
        assert_eq!(ho.wavefunction(0, 0.0).unwrap(), 1.0);
        assert_eq!(ho.wavefunction(1, 0.0).unwrap(), 0.0);
        let r = model(FamilyId::RadialOsc, &[("omega", 1.0), ("g", 2.0)]);
        assert!((r.wavefunction(0, 1.0).unwrap() - (-0.5f64).exp()).abs() < 1e-15);
        let rm = model(FamilyId::RosenMorse, &[("mu", 1.0), ("h_tilde", 3.0)]);
        assert!(matches!(rm.wavefunction(0, 0.0), Err(Error::Capability(_))));
    }

    #[test]
    fn shape_invariance_examples() {
        let grid: Vec<f64> = (0..100).map(|i| -4.0 + 8.0 * i as f64 / 99.0).collect();
        let s = model(FamilyId::Ho1d, &[("omega", 1.0)]).shape_invariance_residual(&grid).unwrap();
        assert!(s.spread < 1e-12 && (s.mean - 2.0).abs() < 1e-12);

        let grid: Vec<f64> = (1..=100).map(|i| 0.05 * i as f64).collect();
        let s = model(FamilyId::RadialOsc, &[("omega", 1.0), ("g", 2.0)])
            .shape_invariance_residual(&grid)
            .unwrap();
        assert!(s.spread < 1e-12 && (s.mean - 4.0).abs() < 1e-12);

        let grid: Vec<f64> = (1..100).map(|i| 1.5 * i as f64 / 100.0).collect();
        let pt = model(FamilyId::PoschlTeller, &[("g", 2.0), ("h", 3.0)]);
        let s = pt.shape_invariance_residual(&grid).unwrap();
        assert!(s.spread < 1e-10, "{s:?}");
        assert!((s.mean - 24.0).abs() < 1e-10);
        assert!((pt.exact_energy(1).unwrap() - 24.0).abs() < 1e-12);
    }

    fn sample(family: FamilyId) -> PotentialModel {
        match family {
            FamilyId::Ho1d => model(family, &[("omega", 1.3)]),
            FamilyId::RadialOsc => model(family, &[("omega", 0.7), ("g", 1.5)]),
            FamilyId::PoschlTeller => model(family, &[("g", 1.2), ("h", 2.1)]),
            FamilyId::Coulomb => model(family, &[("e2", 2.0), ("g_tilde", 1.0)]),
            FamilyId::Morse => model(family, &[("mu", 0.8), ("h", 4.5)]),
            FamilyId::RosenMorse => model(family, &[("mu", 1.0), ("h_tilde", 3.0)]),
            FamilyId::Eckart => model(family, &[("mu", 6.0), ("g_tilde", 1.2)]),
            FamilyId::HyperbolicPt => model(family, &[("g", 1.0), ("h_tilde", 6.0)]),
            FamilyId::HyperbolicTop2 => model(family, &[("mu", 1.5), ("h_tilde", 4.0)]),
        }
    }

    #[test]
    fn n_max_matches_bound_state_rules() {
        assert_eq!(sample(FamilyId::Morse).n_max(), Some(4));
        assert_eq!(model(FamilyId::Morse, &[("mu", 1.0), ("h", 5.0)]).n_max(), Some(4));
        assert_eq!(sample(FamilyId::RosenMorse).n_max(), Some(1));
        assert_eq!(sample(FamilyId::Eckart).n_max(), Some(1));
        assert_eq!(sample(FamilyId::HyperbolicPt).n_max(), Some(2));
        assert_eq!(sample(FamilyId::HyperbolicTop2).n_max(), Some(3));
    }

    #[test]
    fn spectra_increase_and_stay_below_plateau() {
        for family in FamilyId::ALL {
            let m = sample(family);
            let top = m.n_max().unwrap_or(12);
            let mut prev = -1.0;
            for n in 0..=top {
                let e = m.exact_energy(n).unwrap();
                assert!(e > prev, "{family} n={n}");
                if let Some(p) = m.plateau() {
                    assert!(e < p, "{family} n={n}: {e} >= {p}");
                }
                prev = e;
            }
        }
    }

    #[test]
    fn energy_shift_is_first_level() {
        for family in FamilyId::ALL {
            let m = sample(family);
            if m.has_level(1) {
                assert!((m.energy_shift() - m.exact_energy(1).unwrap()).abs() < 1e-12, "{family}");
            }
        }
    }

    #[test]
    fn listing_covers_every_family() {
        let list = catalog_listing();
        assert_eq!(list.len(), 9);
        assert_eq!(list[2].domain, ["0".to_string(), "pi/2".to_string()]);
    }
}
