//! Point canonical transformations from the canonical oscillator and
//! Pöschl–Teller systems to the other catalog families.
//!
//! A row maps a target coordinate `x` to the source coordinate `z(x)`. The
//! Schrödinger-level and SWKB-level parameter relations differ and are kept
//! as separate maps.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::catalog::{FamilyId, Params, PotentialModel};
use crate::error::{Error, Result};
use crate::numerics::second_difference;
use crate::swkb::swkb_integral;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Realness {
    RealMap,
    ComplexMap,
}

/// One row of the transformation tables, identified by its target family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TransformSpec {
    pub source: FamilyId,
    pub target: FamilyId,
    pub change_of_variables: &'static str,
    pub realness: Realness,
}

/// Source-system parameters after applying a row's map; may be complex.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SourceParams {
    pub family: FamilyId,
    pub values: [(&'static str, Complex64); 2],
}

impl SourceParams {
    fn new(family: FamilyId, a: (&'static str, Complex64), b: (&'static str, Complex64)) -> Self {
        Self {
            family,
            values: [a, b],
        }
    }

    fn real(family: FamilyId, a: (&'static str, f64), b: (&'static str, f64)) -> Self {
        Self::new(family, (a.0, a.1.into()), (b.0, b.1.into()))
    }

    pub fn get(&self, name: &str) -> Option<Complex64> {
        self.values.iter().find(|(k, _)| *k == name).map(|(_, v)| *v)
    }

    pub fn is_real(&self) -> bool {
        self.values.iter().all(|(_, v)| v.im == 0.0)
    }

    pub fn to_real(&self) -> Result<Params> {
        if !self.is_real() {
            return Err(Error::Capability(format!(
                "complex source parameters for {}",
                self.family
            )));
        }
        Ok(self.values.iter().fold(Params::new(), |p, (k, v)| p.with(k, v.re)))
    }

    /// Source eigenvalue `4nω` (oscillator) or `4n(n+g+h)` (Pöschl–Teller).
    pub fn energy(&self, n: usize) -> Complex64 {
        let nf = n as f64;
        match self.family {
            FamilyId::RadialOsc => 4.0 * nf * self.values[0].1,
            _ => 4.0 * nf * (nf + self.values[0].1 + self.values[1].1),
        }
    }

    /// Source superpotential at a possibly complex point.
    pub fn w(&self, z: Complex64) -> Complex64 {
        let (p, q) = (self.values[0].1, self.values[1].1);
        match self.family {
            FamilyId::RadialOsc => p * z - q / z,
            _ => -p * z.cos() / z.sin() + q * z.tan(),
        }
    }
}

pub fn list_transforms() -> Vec<TransformSpec> {
    use FamilyId::*;
    let row = |source, target, change_of_variables, realness| TransformSpec {
        source,
        target,
        change_of_variables,
        realness,
    };
    vec![
        row(RadialOsc, Coulomb, "z = sqrt(x)", Realness::RealMap),
        row(RadialOsc, Morse, "z = exp(x/2)", Realness::RealMap),
        row(PoschlTeller, RosenMorse, "z = arccos(tanh x)/2", Realness::RealMap),
        row(PoschlTeller, Eckart, "z = arccos(coth x)/2", Realness::ComplexMap),
        row(PoschlTeller, HyperbolicPt, "z = arcsin(-i sinh x)", Realness::ComplexMap),
        row(PoschlTeller, HyperbolicTop2, "z = arccos(i sinh x)/2", Realness::ComplexMap),
    ]
}

/// The row whose target is `target`.
pub fn transform_for(target: FamilyId) -> Result<TransformSpec> {
    list_transforms()
        .into_iter()
        .find(|t| t.target == target)
        .ok_or_else(|| {
            Error::Capability(format!(
                "no transformation targets {target}; available: coulomb, morse, rosen_morse, eckart, hyperbolic_pt, hyperbolic_top2"
            ))
        })
}

const I: Complex64 = Complex64::new(0.0, 1.0);

impl TransformSpec {
    pub fn z_of_x(&self, x: f64) -> Complex64 {
        let xc = Complex64::from(x);
        match self.target {
            FamilyId::Coulomb => xc.sqrt(),
            FamilyId::Morse => (0.5 * xc).exp(),
            FamilyId::RosenMorse => 0.5 * xc.tanh().acos(),
            FamilyId::Eckart => 0.5 * (1.0 / xc.tanh()).acos(),
            FamilyId::HyperbolicPt => (-I * xc.sinh()).asin(),
            _ => 0.5 * (I * xc.sinh()).acos(),
        }
    }

    pub fn dz_dx(&self, x: f64) -> Complex64 {
        let xc = Complex64::from(x);
        // d/dx arccos(c(x)) = -c'/sqrt(1 - c²), on the same branch as `z_of_x`
        let acos_rate = |c: Complex64, dc: Complex64| -dc / (1.0 - c * c).sqrt();
        match self.target {
            FamilyId::Coulomb => 0.5 / xc.sqrt(),
            FamilyId::Morse => 0.5 * (0.5 * xc).exp(),
            FamilyId::RosenMorse => 0.5 * acos_rate(xc.tanh(), 1.0 / (xc.cosh() * xc.cosh())),
            FamilyId::Eckart => 0.5 * acos_rate(1.0 / xc.tanh(), -1.0 / (xc.sinh() * xc.sinh())),
            FamilyId::HyperbolicPt => {
                let c = -I * xc.sinh();
                -I * xc.cosh() / (1.0 - c * c).sqrt()
            }
            _ => 0.5 * acos_rate(I * xc.sinh(), I * xc.cosh()),
        }
    }

    fn check_target(&self, target: &PotentialModel, n: usize) -> Result<()> {
        if target.family() != self.target {
            return Err(Error::Capability(format!(
                "transformation for {} applied to {}",
                self.target,
                target.family()
            )));
        }
        target.exact_energy(n).map(|_| ())
    }

    /// Source parameters for the Schrödinger-equation map at level `n`.
    pub fn se_params(&self, target: &PotentialModel, n: usize) -> Result<SourceParams> {
        self.check_target(target, n)?;
        Ok(self.map(target, n, 0.5))
    }

    /// Source parameters for the SWKB-integral map at level `n`.
    pub fn swkb_params(&self, target: &PotentialModel, n: usize) -> Result<SourceParams> {
        self.check_target(target, n)?;
        Ok(self.map(target, n, 0.0))
    }

    /// The two tables differ by a half-unit shift of `g` (and `h`) on the real rows.
    fn map(&self, target: &PotentialModel, n: usize, half: f64) -> SourceParams {
        let p = |name: &str| target.params().get(name).expect("validated model");
        let nf = n as f64;
        let c = Complex64::from;
        match self.target {
            FamilyId::Coulomb => {
                let gt = p("g_tilde");
                SourceParams::real(
                    self.source,
                    ("omega", p("e2") / (gt + nf)),
                    ("g", 2.0 * gt - half),
                )
            }
            FamilyId::Morse => {
                SourceParams::real(self.source, ("omega", 2.0 * p("mu")), ("g", 2.0 * (p("h") - nf) + half))
            }
            FamilyId::RosenMorse => {
                let (mu, k) = (p("mu"), p("h_tilde") - nf);
                SourceParams::real(self.source, ("g", k + mu / k + half), ("h", k - mu / k + half))
            }
            FamilyId::Eckart => {
                let (mu, k) = (p("mu"), p("g_tilde") + nf);
                SourceParams::real(self.source, ("g", -k + mu / k + half), ("h", -k - mu / k + half))
            }
            FamilyId::HyperbolicPt => {
                SourceParams::new(self.source, ("g", c(p("g"))), ("h", c(-p("h_tilde"))))
            }
            _ => {
                let (mu, ht) = (p("mu"), p("h_tilde"));
                SourceParams::new(
                    self.source,
                    ("g", Complex64::new(-ht, -mu)),
                    ("h", Complex64::new(-ht, mu)),
                )
            }
        }
    }

    fn require_real(&self) -> Result<()> {
        match self.realness {
            Realness::RealMap => Ok(()),
            Realness::ComplexMap => Err(Error::Capability(format!(
                "{} -> {} is a complex change of variables; only the energy map can be verified",
                self.source, self.target
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SeResidualReport {
    pub target: FamilyId,
    pub n: usize,
    pub energy: f64,
    /// `max |-ψ'' + Vψ - Eψ| / max |ψ|` over the grid.
    pub max_residual: f64,
    pub points: usize,
}

/// Maps the source eigenfunction to the target through
/// `ψ(x) = φ(z(x)) / sqrt|dz/dx|` and measures the target Schrödinger residual
/// with central differences.
pub fn verify_se_transform(spec: &TransformSpec, target: &PotentialModel, n: usize, grid: &[f64]) -> Result<SeResidualReport> {
    se_residual_at(spec, target, n, grid, 0.0)
}

/// As [`verify_se_transform`] with the target energy shifted by `energy_offset`.
pub fn se_residual_at(
    spec: &TransformSpec,
    target: &PotentialModel,
    n: usize,
    grid: &[f64],
    energy_offset: f64,
) -> Result<SeResidualReport> {
    spec.require_real()?;
    let src = spec.se_params(target, n)?;
    let source = PotentialModel::new(src.family, &src.to_real()?)?;
    let energy = target.exact_energy(n)? + energy_offset;
    let psi = |x: f64| -> f64 {
        let z = spec.z_of_x(x).re;
        source.wavefunction(n, z).unwrap_or(f64::NAN) / spec.dz_dx(x).re.abs().sqrt()
    };
    const H: f64 = 1e-4;
    let mut scale: f64 = 0.0;
    let mut worst: f64 = 0.0;
    for &x in grid {
        let x = target.domain().check(x)?;
        target.domain().check(x - H)?;
        target.domain().check(x + H)?;
        let p = psi(x);
        let r = -second_difference(psi, x, H) + (target.potential(x) - energy) * p;
        if !r.is_finite() {
            return Err(Error::Evaluation(x));
        }
        scale = scale.max(p.abs());
        worst = worst.max(r.abs());
    }
    if scale == 0.0 {
        return Err(Error::GridMismatch("wavefunction vanishes on the whole grid".into()));
    }
    Ok(SeResidualReport {
        target: target.family(),
        n,
        energy,
        max_residual: worst / scale,
        points: grid.len(),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TransformReport {
    pub source: FamilyId,
    pub target: FamilyId,
    pub n: usize,
    pub target_integral: f64,
    pub source_integral: f64,
    pub n_pi: f64,
    /// Largest of the two deviations from `nπ` and their mutual difference.
    pub max_deviation: f64,
    pub within_tol: bool,
}

/// Compares the target SWKB integral in `x` with the canonical source
/// integral at the mapped parameters; both should equal `nπ`.
pub fn verify_swkb_transform(spec: &TransformSpec, target: &PotentialModel, n: usize, tol: f64) -> Result<TransformReport> {
    spec.require_real()?;
    let src = spec.swkb_params(target, n)?;
    let source = PotentialModel::unchecked(src.family, &src.to_real()?)?;
    let (t, s) = if n == 0 {
        (0.0, 0.0)
    } else {
        (
            swkb_integral(target, target.exact_energy(n)?, tol * 1e-2)?,
            swkb_integral(&source, src.energy(n).re, tol * 1e-2)?,
        )
    };
    let n_pi = n as f64 * PI;
    let max_deviation = (t - n_pi).abs().max((s - n_pi).abs()).max((t - s).abs());
    Ok(TransformReport {
        source: spec.source,
        target: spec.target,
        n,
        target_integral: t,
        source_integral: s,
        n_pi,
        max_deviation,
        within_tol: max_deviation <= tol,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EnergyMapReport {
    pub source: FamilyId,
    pub target: FamilyId,
    pub realness: Realness,
    pub n: usize,
    pub target_energy: f64,
    /// Source eigenvalue at the SWKB-level parameters, `(re, im)`.
    pub source_energy: [f64; 2],
    /// Whether the source eigenvalue itself equals the target energy.
    pub direct_match: bool,
    /// Mean of the energy implied pointwise by the change of variables.
    pub implied_energy: f64,
    /// `max - min` of the implied energy's real part over the sample points.
    pub implied_spread: f64,
    /// Largest imaginary part of the implied energy.
    pub imag_residue: f64,
    pub matches: bool,
}

/// Checks the energy relation of a row at level `n`.
///
/// The SWKB integrands agree under `z = z(x)` exactly when
/// `E - W(x)² = (dz/dx)² (ε_n - w(z)²)`, so
/// `W(x)² + (dz/dx)² (ε_n - w(z(x))²)` must be the constant target energy.
/// It is evaluated in complex arithmetic at sample points, which also
/// covers the complex rows.
pub fn verify_energy_map(spec: &TransformSpec, target: &PotentialModel, n: usize) -> Result<EnergyMapReport> {
    let src = spec.swkb_params(target, n)?;
    let e_target = target.exact_energy(n)?;
    let e_source = src.energy(n);
    let d = target.domain();
    let samples: &[f64] = if d.lo == 0.0 {
        &[0.35, 0.7, 1.2, 1.9, 2.8]
    } else {
        &[-1.7, -0.6, 0.25, 0.9, 1.6]
    };
    let implied: Vec<Complex64> = samples
        .iter()
        .map(|&x| {
            let w = target.w(x);
            let dz = spec.dz_dx(x);
            let ws = src.w(spec.z_of_x(x));
            w * w + dz * dz * (e_source - ws * ws)
        })
        .collect();
    let re = implied.iter().map(|c| c.re);
    let lo = re.clone().fold(f64::INFINITY, f64::min);
    let hi = re.clone().fold(f64::NEG_INFINITY, f64::max);
    let mean = re.sum::<f64>() / implied.len() as f64;
    let imag_residue = implied.iter().map(|c| c.im.abs()).fold(0.0, f64::max);
    let scale = 1.0 + e_target.abs();
    let matches =
        (mean - e_target).abs() <= 1e-10 * scale && hi - lo <= 1e-10 * scale && imag_residue <= 1e-12 * scale;
    Ok(EnergyMapReport {
        source: spec.source,
        target: spec.target,
        realness: spec.realness,
        n,
        target_energy: e_target,
        source_energy: [e_source.re, e_source.im],
        direct_match: (e_source.re - e_target).abs() <= 1e-12 * scale && e_source.im.abs() <= 1e-12 * scale,
        implied_energy: mean,
        implied_spread: hi - lo,
        imag_residue,
        matches,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::make_model;

    fn model(family: FamilyId, kv: &[(&str, f64)]) -> PotentialModel {
        let p = kv.iter().fold(Params::new(), |p, (k, v)| p.with(k, *v));
        make_model(family, &p).unwrap()
    }

    #[test]
    fn six_rows_with_realness_tags() {
        let rows = list_transforms();
        assert_eq!(rows.len(), 6);
        let real: Vec<_> = rows
            .iter()
            .filter(|r| r.realness == Realness::RealMap)
            .map(|r| r.target)
            .collect();
        assert_eq!(real, [FamilyId::Coulomb, FamilyId::Morse, FamilyId::RosenMorse]);
        assert!(transform_for(FamilyId::Ho1d).is_err());
    }

    #[test]
    fn coulomb_maps_differ_between_tables() {
        let spec = transform_for(FamilyId::Coulomb).unwrap();
        let m = model(FamilyId::Coulomb, &[("e2", 2.0), ("g_tilde", 1.0)]);
        let se = spec.se_params(&m, 1).unwrap();
        let sw = spec.swkb_params(&m, 1).unwrap();
        assert_eq!(se.get("omega"), Some(1.0.into()));
        assert_eq!(se.get("g"), Some(1.5.into()));
        assert_eq!(sw.get("g"), Some(2.0.into()));
    }

    #[test]
    fn rosen_morse_swkb_map() {
        let spec = transform_for(FamilyId::RosenMorse).unwrap();
        let m = model(FamilyId::RosenMorse, &[("mu", 1.0), ("h_tilde", 3.0)]);
        let sw = spec.swkb_params(&m, 1).unwrap();
        assert_eq!(sw.get("g"), Some(2.5.into()));
        assert_eq!(sw.get("h"), Some(1.5.into()));
    }

    #[test]
    fn complex_rows_refuse_quadrature() {
        let spec = transform_for(FamilyId::Eckart).unwrap();
        let m = model(FamilyId::Eckart, &[("mu", 6.0), ("g_tilde", 1.2)]);
        assert!(matches!(verify_swkb_transform(&spec, &m, 1, 1e-8), Err(Error::Capability(_))));
        assert!(matches!(verify_se_transform(&spec, &m, 1, &[1.0]), Err(Error::Capability(_))));
    }

    #[test]
    fn top2_energy_map_is_real() {
        let spec = transform_for(FamilyId::HyperbolicTop2).unwrap();
        let m = model(FamilyId::HyperbolicTop2, &[("mu", 1.5), ("h_tilde", 4.0)]);
        let r = verify_energy_map(&spec, &m, 1).unwrap();
        assert!(r.matches, "{r:?}");
        assert!(r.imag_residue <= 1e-12);
        assert!((r.implied_energy - 7.0).abs() < 1e-12);
        let r0 = verify_energy_map(&spec, &m, 0).unwrap();
        assert!(r0.matches && r0.target_energy == 0.0);
    }
}
