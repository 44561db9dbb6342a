//! Central finite differences with one Richardson extrapolation level.
//!
//! The operators are pluggable (any `Fn(T) -> T`), which the verification
//! harness uses to run the same machinery on synthetic functions with
//! known derivatives.

use crate::real::Real;

/// Default step for first derivatives: max(1e-5, t * 1e-8).
pub fn step1<T: Real>(t: T) -> T {
    T::c(1e-5).max(t.abs() * T::c(1e-8))
}

/// Default step for second derivatives: max(1e-4, t * 1e-7).
pub fn step2<T: Real>(t: T) -> T {
    T::c(1e-4).max(t.abs() * T::c(1e-7))
}

/// f'(t) by central differences at steps h and h/2, Richardson-combined.
pub fn derivative1<T: Real, F: Fn(T) -> T>(f: F, t: T, h: T) -> T {
    let d = |h: T| (f(t + h) - f(t - h)) / (T::c(2.0) * h);
    let coarse = d(h);
    let fine = d(h * T::c(0.5));
    (T::c(4.0) * fine - coarse) / T::c(3.0)
}

/// f''(t) by the three-point stencil at steps h and h/2, Richardson-combined.
pub fn derivative2<T: Real, F: Fn(T) -> T>(f: F, t: T, h: T) -> T {
    let d = |h: T| (f(t + h) - T::c(2.0) * f(t) + f(t - h)) / (h * h);
    let coarse = d(h);
    let fine = d(h * T::c(0.5));
    (T::c(4.0) * fine - coarse) / T::c(3.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_on_quadratic() {
        // the synthetic test function (t-15)(t-20)
        let f = |t: f64| (t - 15.0) * (t - 20.0);
        let t = 17.3;
        assert!((derivative1(f, t, step1(t)) - (2.0 * t - 35.0)).abs() < 1e-9);
        assert!((derivative2(f, t, step2(t)) - 2.0).abs() < 2e-5);
    }

    #[test]
    fn accurate_on_sin() {
        let t = 1.234f64;
        let d1 = derivative1(f64::sin, t, step1(t));
        let d2 = derivative2(f64::sin, t, step2(t));
        assert!((d1 - t.cos()).abs() < 1e-10);
        assert!((d2 + t.sin()).abs() < 1e-7);
    }
}
