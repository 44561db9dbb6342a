//! Scalar abstraction and compensated summation.
//!
//! All numerical routines in this crate are generic over [`Real`], so the
//! same code runs in `f32` or `f64`. The stated tolerances assume `f64`;
//! the concrete aliases at the crate root pin that choice.

use num_traits::{Float, FromPrimitive};

/// Floating-point scalar the evaluators are generic over.
pub trait Real:
    Float
    + FromPrimitive
    + std::fmt::Debug
    + std::fmt::Display
    + std::fmt::LowerExp
    + Send
    + Sync
    + 'static
{
    /// Shorthand for embedding an `f64` literal.
    fn c(x: f64) -> Self {
        Self::from_f64(x).expect("literal not representable in this scalar type")
    }

    fn pi() -> Self {
        Self::c(std::f64::consts::PI)
    }

    fn two_pi() -> Self {
        Self::c(std::f64::consts::TAU)
    }
}

impl Real for f32 {}
impl Real for f64 {}

/// Kahan compensated accumulator.
///
/// The running error term recovers the low-order bits lost when adding
/// terms of wildly different magnitude, which is the normal situation in
/// the oscillatory main sums here.
#[derive(Debug, Clone, Copy)]
pub struct KahanSum<T> {
    sum: T,
    err: T,
}

impl<T: Real> KahanSum<T> {
    pub fn new() -> Self {
        KahanSum {
            sum: T::zero(),
            err: T::zero(),
        }
    }

    pub fn add(&mut self, x: T) {
        let y = x - self.err;
        let s = self.sum + y;
        self.err = (s - self.sum) - y;
        self.sum = s;
    }

    pub fn value(&self) -> T {
        self.sum
    }
}

impl<T: Real> Default for KahanSum<T> {
    fn default() -> Self {
        Self::new()
    }
}

/// Sum an iterator with compensation.
pub fn kahan_sum<T: Real, I: IntoIterator<Item = T>>(iter: I) -> T {
    let mut acc = KahanSum::new();
    for x in iter {
        acc.add(x);
    }
    acc.value()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kahan_beats_naive_on_small_terms() {
        let mut k = KahanSum::<f64>::new();
        let mut naive = 0.0f64;
        k.add(1.0);
        naive += 1.0;
        for _ in 0..10_000_000 {
            k.add(1e-16);
            naive += 1e-16;
        }
        let exact = 1.0 + 1e-9;
        assert!((k.value() - exact).abs() < 1e-15);
        assert!((naive - exact).abs() > (k.value() - exact).abs());
    }

    #[test]
    fn literals_embed() {
        assert_eq!(f64::c(0.5), 0.5);
        assert_eq!(f32::c(2.0), 2.0f32);
    }
}
