//! Classical orthogonal polynomials: Hermite (physicists'), generalized
//! Laguerre and Jacobi, evaluated by their ascending three-term recurrences.
//!
//! No normalization is applied; callers only ever form ratios or residuals.

use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "tag", rename_all = "lowercase")]
pub enum CopFamily {
    Hermite,
    Laguerre { alpha: f64 },
    Jacobi { alpha: f64, beta: f64 },
}

impl CopFamily {
    pub fn laguerre(alpha: f64) -> Result<Self> {
        let f = CopFamily::Laguerre { alpha };
        f.validate()?;
        Ok(f)
    }

    pub fn jacobi(alpha: f64, beta: f64) -> Result<Self> {
        let f = CopFamily::Jacobi { alpha, beta };
        f.validate()?;
        Ok(f)
    }

    pub fn validate(&self) -> Result<()> {
        let ok = |p: f64| p.is_finite() && p > -1.0;
        match *self {
            CopFamily::Hermite => Ok(()),
            CopFamily::Laguerre { alpha } if ok(alpha) => Ok(()),
            CopFamily::Laguerre { alpha } => Err(Error::ParameterDomain(format!(
                "laguerre alpha must be > -1, got {alpha}"
            ))),
            CopFamily::Jacobi { alpha, beta } if ok(alpha) && ok(beta) => Ok(()),
            CopFamily::Jacobi { alpha, beta } => Err(Error::ParameterDomain(format!(
                "jacobi alpha, beta must be > -1, got ({alpha}, {beta})"
            ))),
        }
    }

    /// Natural orthogonality interval.
    pub fn interval(&self) -> (f64, f64) {
        match self {
            CopFamily::Hermite => (f64::NEG_INFINITY, f64::INFINITY),
            CopFamily::Laguerre { .. } => (0.0, f64::INFINITY),
            CopFamily::Jacobi { .. } => (-1.0, 1.0),
        }
    }

    /// Orthogonality weight on [`CopFamily::interval`].
    pub fn weight(&self, x: f64) -> f64 {
        match *self {
            CopFamily::Hermite => (-x * x).exp(),
            CopFamily::Laguerre { alpha } => x.powf(alpha) * (-x).exp(),
            CopFamily::Jacobi { alpha, beta } => (1.0 - x).powf(alpha) * (1.0 + x).powf(beta),
        }
    }

    /// Family that the derivative of a degree-n member lands in.
    fn derivative_family(&self) -> CopFamily {
        match *self {
            CopFamily::Hermite => CopFamily::Hermite,
            CopFamily::Laguerre { alpha } => CopFamily::Laguerre { alpha: alpha + 1.0 },
            CopFamily::Jacobi { alpha, beta } => CopFamily::Jacobi {
                alpha: alpha + 1.0,
                beta: beta + 1.0,
            },
        }
    }
}

/// Degree-`n` member of `family` at `x`.
pub fn eval_cop(family: CopFamily, n: usize, x: f64) -> Result<f64> {
    family.validate()?;
    Ok(recurrence(family, n, x))
}

/// First derivative of the degree-`n` member of `family` at `x`.
///
/// Uses `H_n' = 2n H_{n-1}`, `L_n^(a)' = -L_{n-1}^(a+1)` and
/// `P_n^(a,b)' = (n+a+b+1)/2 P_{n-1}^(a+1,b+1)`.
pub fn eval_cop_derivative(family: CopFamily, n: usize, x: f64) -> Result<f64> {
    family.validate()?;
    if n == 0 {
        return Ok(0.0);
    }
    let lower = recurrence(family.derivative_family(), n - 1, x);
    let factor = match family {
        CopFamily::Hermite => 2.0 * n as f64,
        CopFamily::Laguerre { .. } => -1.0,
        CopFamily::Jacobi { alpha, beta } => 0.5 * (n as f64 + alpha + beta + 1.0),
    };
    Ok(factor * lower)
}

fn recurrence(family: CopFamily, n: usize, x: f64) -> f64 {
    let (p0, p1) = match family {
        CopFamily::Hermite => (1.0, 2.0 * x),
        CopFamily::Laguerre { alpha } => (1.0, 1.0 + alpha - x),
        CopFamily::Jacobi { alpha, beta } => {
            (1.0, (alpha + 1.0) + 0.5 * (alpha + beta + 2.0) * (x - 1.0))
        }
    };
    if n == 0 {
        return p0;
    }
    let (mut prev, mut cur) = (p0, p1);
    for k in 1..n {
        let kf = k as f64;
        let next = match family {
            CopFamily::Hermite => 2.0 * x * cur - 2.0 * kf * prev,
            CopFamily::Laguerre { alpha } => {
                ((2.0 * kf + 1.0 + alpha - x) * cur - (kf + alpha) * prev) / (kf + 1.0)
            }
            CopFamily::Jacobi { alpha, beta } => {
                let s = 2.0 * kf + alpha + beta;
                let a1 = 2.0 * (kf + 1.0) * (kf + alpha + beta + 1.0) * s;
                let a2 = (s + 1.0) * (alpha * alpha - beta * beta);
                let a3 = s * (s + 1.0) * (s + 2.0);
                let a4 = 2.0 * (kf + alpha) * (kf + beta) * (s + 2.0);
                ((a2 + a3 * x) * cur - a4 * prev) / a1
            }
        };
        prev = cur;
        cur = next;
    }
    cur
}
