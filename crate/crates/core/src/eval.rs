//! Result-with-error-estimate containers and the evaluation policy.

use num_complex::Complex;

use crate::real::Real;

/// A real value paired with an estimated absolute error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalResult<T> {
    pub value: T,
    pub abs_err: T,
}

impl<T: Real> EvalResult<T> {
    pub fn new(value: T, abs_err: T) -> Self {
        debug_assert!(abs_err >= T::zero() && abs_err.is_finite());
        EvalResult { value, abs_err }
    }
}

/// A complex value paired with an estimated absolute error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CEvalResult<T> {
    pub value: Complex<T>,
    pub abs_err: T,
}

/// Knobs for the Riemann-Siegel evaluation and derivative stencils.
///
/// `rs_correction_terms` is the highest correction index `k` used in the
/// remainder (so 2 means C0, C1, C2); capped at 4.
#[derive(Debug, Clone, Copy)]
pub struct PrecisionPolicy<T> {
    pub rs_correction_terms: u32,
    pub fd_base_step: T,
    pub target_abs_err: T,
}

impl<T: Real> Default for PrecisionPolicy<T> {
    fn default() -> Self {
        PrecisionPolicy {
            rs_correction_terms: 2,
            fd_base_step: T::c(1e-5),
            target_abs_err: T::c(1e-8),
        }
    }
}

impl<T: Real> PrecisionPolicy<T> {
    /// Policy with every implemented correction term enabled.
    pub fn accurate() -> Self {
        PrecisionPolicy {
            rs_correction_terms: 4,
            ..Self::default()
        }
    }
}
