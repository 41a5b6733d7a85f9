//! Root bracketing and quadrature shared by every module.

mod quad;
mod root;

pub use quad::{integrate_smooth, integrate_sqrt_bracket, integrate_sqrt_bracket_weighted, QuadratureResult};
pub use root::{find_root, Bracket};

/// Default bracket-width tolerance for [`find_root`].
pub const ROOT_TOL: f64 = 1e-12;
/// Default convergence tolerance for the quadrature rules.
pub const QUAD_TOL: f64 = 1e-10;

/// Central second difference.
pub fn second_difference<F: Fn(f64) -> f64>(f: F, x: f64, h: f64) -> f64 {
    (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h)
}

/// Central first difference.
pub fn first_difference<F: Fn(f64) -> f64>(f: F, x: f64, h: f64) -> f64 {
    (f(x + h) - f(x - h)) / (2.0 * h)
}

/// Open interval `(lo, hi)`; either end may be infinite.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct Domain {
    pub lo: f64,
    pub hi: f64,
}

impl Domain {
    pub const REAL_LINE: Domain = Domain {
        lo: f64::NEG_INFINITY,
        hi: f64::INFINITY,
    };
    pub const POSITIVE: Domain = Domain {
        lo: 0.0,
        hi: f64::INFINITY,
    };

    pub fn new(lo: f64, hi: f64) -> Self {
        Self { lo, hi }
    }

    pub fn contains(&self, x: f64) -> bool {
        x > self.lo && x < self.hi
    }

    pub fn check(&self, x: f64) -> crate::Result<f64> {
        if self.contains(x) {
            Ok(x)
        } else {
            Err(crate::Error::Domain {
                x,
                lo: self.lo,
                hi: self.hi,
            })
        }
    }
}
