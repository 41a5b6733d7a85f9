use crate::error::{Error, Result};

/// A sign-changing interval for [`find_root`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bracket {
    pub lo: f64,
    pub hi: f64,
    pub f_lo: f64,
    pub f_hi: f64,
}

impl Bracket {
    /// Evaluates `f` at both ends and checks the sign condition.
    pub fn new<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64) -> Result<Self> {
        let f_lo = finite(lo, f(lo))?;
        let f_hi = finite(hi, f(hi))?;
        Self::from_values(lo, hi, f_lo, f_hi)
    }

    pub fn from_values(lo: f64, hi: f64, f_lo: f64, f_hi: f64) -> Result<Self> {
        if !(lo < hi) || f_lo * f_hi > 0.0 {
            return Err(Error::Bracket { lo, hi, f_lo, f_hi });
        }
        Ok(Self { lo, hi, f_lo, f_hi })
    }
}

fn finite(x: f64, v: f64) -> Result<f64> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::Evaluation(x))
    }
}

const MAX_ITER: usize = 500;

/// Brent's method: inverse quadratic / secant steps guarded by bisection.
///
/// Stops once the live bracket is narrower than `tol * (1 + |r|)`. The
/// returned root never leaves `[bracket.lo, bracket.hi]`.
pub fn find_root<F: Fn(f64) -> f64>(f: F, bracket: &Bracket, tol: f64) -> Result<f64> {
    let Bracket {
        lo: mut a,
        hi: mut b,
        f_lo: mut fa,
        f_hi: mut fb,
    } = *bracket;
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    let (mut c, mut fc) = (b, fb);
    let mut d = b - a;
    let mut e = d;

    for _ in 0..MAX_ITER {
        if (fb > 0.0) == (fc > 0.0) {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
        if fc.abs() < fb.abs() {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        let tol1 = 2.0 * f64::EPSILON * b.abs() + 0.5 * tol * (1.0 + b.abs());
        let xm = 0.5 * (c - b);
        if xm.abs() <= tol1 || fb == 0.0 {
            return Ok(b);
        }
        if e.abs() >= tol1 && fa.abs() > fb.abs() {
            let s = fb / fa;
            let (mut p, mut q);
            if a == c {
                p = 2.0 * xm * s;
                q = 1.0 - s;
            } else {
                let qq = fa / fc;
                let r = fb / fc;
                p = s * (2.0 * xm * qq * (qq - r) - (b - a) * (r - 1.0));
                q = (qq - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if p > 0.0 {
                q = -q;
            }
            p = p.abs();
            let min1 = 3.0 * xm * q - (tol1 * q).abs();
            let min2 = (e * q).abs();
            if 2.0 * p < min1.min(min2) {
                e = d;
                d = p / q;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }
        a = b;
        fa = fb;
        b += if d.abs() > tol1 { d } else { tol1.copysign(xm) };
        fb = finite(b, f(b))?;
    }
    Err(Error::Accuracy {
        best: b,
        error: (c - b).abs(),
        evaluations: MAX_ITER,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, SQRT_2};

    #[test]
    fn square_root_of_two() {
        let f = |x: f64| x * x - 2.0;
        let r = find_root(f, &Bracket::new(f, 1.0, 2.0).unwrap(), 1e-12).unwrap();
        assert!((r - SQRT_2).abs() < 1e-12);
    }

    #[test]
    fn cosine_zero() {
        let r = find_root(f64::cos, &Bracket::new(f64::cos, 1.0, 2.0).unwrap(), 1e-12).unwrap();
        assert!((r - FRAC_PI_2).abs() < 1e-12);
    }

    #[test]
    fn radial_oscillator_turning_point() {
        // W = x - 2/x, E = 4: inner turning point sqrt(3) - 1
        let f = |x: f64| (x - 2.0 / x).powi(2) - 4.0;
        let r = find_root(f, &Bracket::new(f, 0.1, 1.8).unwrap(), 1e-12).unwrap();
        assert!((r - (3f64.sqrt() - 1.0)).abs() < 1e-11);
    }

    #[test]
    fn rejects_bad_brackets() {
        let f = |x: f64| x * x + 1.0;
        assert!(matches!(Bracket::new(f, -1.0, 1.0), Err(Error::Bracket { .. })));
        assert!(Bracket::new(|x| x, 1.0, -1.0).is_err());
        assert!(matches!(
            Bracket::new(|x: f64| 1.0 / x, 0.0, 1.0),
            Err(Error::Evaluation(_))
        ));
    }

    #[test]
    fn boundary_zero_is_accepted() {
        let f = |x: f64| x - 1.0;
        let b = Bracket::new(f, 1.0, 3.0).unwrap();
        assert_eq!(find_root(f, &b, 1e-12).unwrap(), 1.0);
    }
}
