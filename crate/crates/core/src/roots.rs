//! Bracketed root refinement: a regula-falsi step when it helps, a
//! bisection step when it does not, so the bracket width is guaranteed to
//! shrink geometrically.

use crate::error::{Error, Result};
use crate::real::Real;

/// A sign-change bracket: lo < hi and f(lo) * f(hi) < 0.
#[derive(Debug, Clone, Copy)]
pub struct Bracket<T> {
    pub lo: T,
    pub hi: T,
    pub f_lo: T,
    pub f_hi: T,
}

impl<T: Real> Bracket<T> {
    pub fn new(lo: T, hi: T, f_lo: T, f_hi: T) -> Result<Self> {
        if !(lo < hi) || !(f_lo * f_hi < T::zero()) {
            return Err(Error::InvalidBracket {
                lo: lo.to_f64().unwrap_or(f64::NAN),
                hi: hi.to_f64().unwrap_or(f64::NAN),
            });
        }
        Ok(Bracket { lo, hi, f_lo, f_hi })
    }

    /// Evaluate `f` at both endpoints and validate the sign change.
    pub fn from_fn<F: Fn(T) -> T>(f: F, lo: T, hi: T) -> Result<Self> {
        let f_lo = f(lo);
        let f_hi = f(hi);
        Self::new(lo, hi, f_lo, f_hi)
    }

    pub fn width(&self) -> T {
        self.hi - self.lo
    }

    pub fn midpoint(&self) -> T {
        (self.lo + self.hi) * T::c(0.5)
    }
}

/// Shrink the bracket until its width is <= `tol`; returns the midpoint of
/// the final bracket. A bracket already narrower than `tol` is returned
/// as-is without evaluating `f`.
pub fn refine<T: Real, F: Fn(T) -> T>(f: F, bracket: &Bracket<T>, tol: T) -> T {
    let mut b = *bracket;
    let mut force_bisect = false;
    while b.width() > tol {
        let mid = b.midpoint();
        let x = if force_bisect {
            mid
        } else {
            // regula-falsi candidate, clamped to the middle half so a
            // stalling secant step cannot pin the bracket to one side
            let denom = b.f_hi - b.f_lo;
            let rf = if denom != T::zero() {
                b.lo - b.f_lo * b.width() / denom
            } else {
                mid
            };
            let quarter = b.width() * T::c(0.25);
            rf.max(b.lo + quarter).min(b.hi - quarter)
        };
        force_bisect = !force_bisect;
        let fx = f(x);
        if fx == T::zero() {
            return x;
        }
        if fx * b.f_lo < T::zero() {
            b.hi = x;
            b.f_hi = fx;
        } else {
            b.lo = x;
            b.f_lo = fx;
        }
    }
    b.midpoint()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_sqrt_two() {
        let f = |x: f64| x * x - 2.0;
        let b = Bracket::from_fn(f, 1.0, 2.0).unwrap();
        let r = refine(f, &b, 1e-12);
        assert!((r - 2.0f64.sqrt()).abs() < 1e-11);
    }

    #[test]
    fn rejects_equal_signs() {
        let f = |x: f64| x * x + 1.0;
        assert!(matches!(
            Bracket::from_fn(f, -1.0, 1.0),
            Err(Error::InvalidBracket { .. })
        ));
    }

    #[test]
    fn narrow_bracket_short_circuits() {
        use std::cell::Cell;
        let calls = Cell::new(0u32);
        let f = |x: f64| {
            calls.set(calls.get() + 1);
            x
        };
        let b = Bracket::new(-1e-12, 1e-12, -1e-12, 1e-12).unwrap();
        let r = refine(f, &b, 1e-9);
        assert_eq!(calls.get(), 0);
        assert_eq!(r, 0.0);
    }

    #[test]
    fn handles_steep_functions() {
        let f = |x: f64| (x - 0.1234567).powi(3) * 1e6 + (x - 0.1234567) * 1e-3;
        let b = Bracket::from_fn(f, -5.0, 7.0).unwrap();
        let r = refine(f, &b, 1e-12);
        assert!((r - 0.1234567).abs() < 1e-9);
    }
}
