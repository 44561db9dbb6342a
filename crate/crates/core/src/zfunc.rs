//! The Hardy Z-function, its first two derivatives, zeta on the critical
//! line, and the second-logarithmic-derivative combination
//!
//!   zeta''/zeta (1/2+it) = -Z''/Z + theta'^2 + i [theta'' + 2 theta' Z'/Z].
//!
//! For t >= RS_T_SWITCH, Z comes from the Riemann-Siegel main sum
//!
//!   Z(t) = 2 sum_{n <= floor(sqrt(t/2pi))} n^{-1/2} cos(theta(t) - t ln n) + R(t)
//!
//! with remainder corrections C0..C4 (see `psi`). Below the switch the
//! expansion cannot reach the stated tolerances, so Z is assembled from the
//! alternating-series zeta instead (see `eta`).

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::eta;
use crate::eval::{CEvalResult, EvalResult, PrecisionPolicy};
use crate::fd;
use crate::psi;
use crate::real::{KahanSum, Real};
use crate::theta::{theta, theta_derivatives, T_MIN};

/// Below this the alternating-series path is used instead of Riemann-Siegel.
pub const RS_T_SWITCH: f64 = 50.0;

/// Empirical bounds on the remainder after keeping C0..Ck, as multiples of
/// t^{-(2k+3)/4} (Gabcke-style).
const REMAINDER_BOUND: [f64; 5] = [0.127, 0.053, 0.011, 0.031, 0.017];

fn check_range<T: Real>(t: T) -> Result<()> {
    if !(t >= T::c(T_MIN)) {
        return Err(Error::Domain(format!("Z requires t >= {T_MIN}, got {t}")));
    }
    Ok(())
}

/// Main-sum length floor(sqrt(t/2pi)).
fn sum_len<T: Real>(t: T) -> usize {
    (t / T::two_pi()).sqrt().floor().to_usize().unwrap_or(0)
}

/// cos with the argument reduced modulo 2pi first; at t ~ 1e5 the raw
/// phases are ~1e5 and the explicit reduction keeps the low bits honest.
fn cos_reduced<T: Real>(phi: T) -> T {
    let k = (phi / T::two_pi()).round();
    (phi - k * T::two_pi()).cos()
}

fn sin_reduced<T: Real>(phi: T) -> T {
    let k = (phi / T::two_pi()).round();
    (phi - k * T::two_pi()).sin()
}

/// 2 sum n^{-1/2} cos(theta - t ln n) over n = 1..=len, compensated.
fn rs_main_sum<T: Real>(t: T, theta_val: T, len: usize) -> T {
    let mut acc = KahanSum::new();
    for n in 1..=len {
        let nf = T::from_usize(n).unwrap();
        let phi = theta_val - t * nf.ln();
        acc.add(cos_reduced(phi) / nf.sqrt());
    }
    acc.value() * T::c(2.0)
}

/// Riemann-Siegel remainder with the main-sum length pinned to `len`
/// (so it stays smooth across t where floor(sqrt(t/2pi)) jumps) and
/// corrections up to index `kmax`. Also returns the magnitude of the
/// first omitted correction term (zero when kmax = 4).
fn rs_remainder<T: Real>(t: T, len: usize, kmax: u32) -> (T, T) {
    let a = (t / T::two_pi()).sqrt();
    let p = a - T::from_usize(len).unwrap();
    let coeff = psi::correction_coefficients(p);
    let x = a.recip();
    let prefac = a.sqrt().recip(); // (t/2pi)^{-1/4}
    let kmax = kmax.min(4) as usize;
    let mut s = T::zero();
    let mut xp = T::one();
    for c in coeff.iter().take(kmax + 1) {
        s = s + *c * xp;
        xp = xp * x;
    }
    let omitted = if kmax < 4 {
        (coeff[kmax + 1] * xp * prefac).abs()
    } else {
        T::zero()
    };
    let sign = if len % 2 == 1 { T::one() } else { -T::one() };
    (sign * prefac * s, omitted)
}

/// Z(t) for t below the switch, from the alternating-series zeta.
fn z_small<T: Real>(t: T) -> T {
    let th = theta(t).expect("range checked by caller").value;
    let zc = eta::zeta_half_line(t);
    // Z = Re(e^{i theta} zeta); the imaginary part is a numerical residue
    (Complex::new(th.cos(), th.sin()) * zc).re
}

/// Z(t) with an absolute-error estimate.
pub fn z<T: Real>(t: T, policy: &PrecisionPolicy<T>) -> Result<EvalResult<T>> {
    check_range(t)?;
    if t < T::c(RS_T_SWITCH) {
        let th = theta(t)?.value;
        let zc = eta::zeta_half_line(t);
        let rot = Complex::new(th.cos(), th.sin()) * zc;
        let abs_err = T::c(1e-12).max(rot.im.abs() * T::c(2.0));
        return Ok(EvalResult::new(rot.re, abs_err));
    }
    let th = theta(t)?;
    let len = sum_len(t);
    let main = rs_main_sum(t, th.value, len);
    let kmax = policy.rs_correction_terms.min(4);
    let (rem, omitted) = rs_remainder(t, len, kmax);
    let bound = T::c(REMAINDER_BOUND[kmax as usize])
        * t.powf(-(T::c(2.0) * T::from_u32(kmax).unwrap() + T::c(3.0)) / T::c(4.0));
    let rounding = T::c(8.0) * T::epsilon() * th.value.abs().max(t);
    Ok(EvalResult::new(main + rem, omitted.max(bound) + rounding))
}

/// (Z, Z', Z'') with the main sum differentiated term-wise and the
/// remainder differentiated by central finite differences.
pub fn z_derivatives<T: Real>(t: T, policy: &PrecisionPolicy<T>) -> Result<(T, T, T)> {
    check_range(t)?;
    let h1 = policy.fd_base_step.max(t * T::c(1e-8));
    let h2 = (policy.fd_base_step * T::c(10.0)).max(t * T::c(1e-7));
    if t < T::c(RS_T_SWITCH) {
        let z0 = z_small(t);
        let z1 = fd::derivative1(z_small::<T>, t, h1);
        let z2 = fd::derivative2(z_small::<T>, t, h2);
        return Ok((z0, z1, z2));
    }
    let (th1, th2) = theta_derivatives(t)?;
    let th = theta(t)?.value;
    let len = sum_len(t);
    let mut s0 = KahanSum::new();
    let mut s1 = KahanSum::new();
    let mut s2 = KahanSum::new();
    for n in 1..=len {
        let nf = T::from_usize(n).unwrap();
        let ln_n = nf.ln();
        let inv_sqrt = nf.sqrt().recip();
        let phi = th - t * ln_n;
        let c = cos_reduced(phi);
        let s = sin_reduced(phi);
        let dphi = th1 - ln_n;
        s0.add(inv_sqrt * c);
        s1.add(-inv_sqrt * s * dphi);
        s2.add(-inv_sqrt * (c * dphi * dphi + s * th2));
    }
    let kmax = policy.rs_correction_terms.min(4);
    let rem = |x: T| rs_remainder(x, len, kmax).0;
    let z0 = T::c(2.0) * s0.value() + rem(t);
    let z1 = T::c(2.0) * s1.value() + fd::derivative1(rem, t, h1);
    let z2 = T::c(2.0) * s2.value() + fd::derivative2(rem, t, h2);
    Ok((z0, z1, z2))
}

/// Pure finite-difference fallback for (Z, Z', Z''), with the main-sum
/// length pinned at its value at `t` so the stencil never straddles a
/// term-count jump.
pub fn z_derivatives_fd<T: Real>(t: T, policy: &PrecisionPolicy<T>) -> Result<(T, T, T)> {
    check_range(t)?;
    let h1 = policy.fd_base_step.max(t * T::c(1e-8));
    let h2 = (policy.fd_base_step * T::c(10.0)).max(t * T::c(1e-7));
    if t < T::c(RS_T_SWITCH) {
        let z0 = z_small(t);
        let z1 = fd::derivative1(z_small::<T>, t, h1);
        let z2 = fd::derivative2(z_small::<T>, t, h2);
        return Ok((z0, z1, z2));
    }
    let len = sum_len(t);
    let kmax = policy.rs_correction_terms.min(4);
    let f = |x: T| {
        let th = theta(x).expect("stencil stays inside the working range").value;
        rs_main_sum(x, th, len) + rs_remainder(x, len, kmax).0
    };
    Ok((
        f(t),
        fd::derivative1(f, t, h1),
        fd::derivative2(f, t, h2),
    ))
}

/// zeta(1/2 + it) = e^{-i theta(t)} Z(t).
pub fn zeta_half<T: Real>(t: T) -> Result<CEvalResult<T>> {
    let th = theta(t)?;
    let zr = z(t, &PrecisionPolicy::accurate())?;
    let phase = Complex::new(th.value.cos(), -th.value.sin());
    Ok(CEvalResult {
        value: phase * zr.value,
        abs_err: zr.abs_err + zr.value.abs() * th.abs_err,
    })
}

/// zeta''/zeta at 1/2 + it, assembled from Z, Z', Z'' and theta', theta''.
///
/// Errors with [`Error::Pole`] when |Z(t)| <= 1e-6.
pub fn zeta_second_ratio<T: Real>(t: T) -> Result<CEvalResult<T>> {
    let policy = PrecisionPolicy::accurate();
    let (z0, z1, z2) = z_derivatives(t, &policy)?;
    if z0.abs() <= T::c(1e-6) {
        return Err(Error::Pole(format!(
            "zeta''/zeta pole: |Z({t})| = {:e} <= 1e-6",
            z0.abs()
        )));
    }
    let (th1, th2) = theta_derivatives(t)?;
    let re = -z2 / z0 + th1 * th1;
    let im = th2 + T::c(2.0) * th1 * z1 / z0;
    // crude propagation: relative error of Z drives everything
    let rel = z(t, &policy)?.abs_err / z0.abs();
    let abs_err = rel * (z2.abs() / z0.abs() + T::c(2.0) * th1.abs() * (T::one() + z1.abs() / z0.abs()))
        + T::c(1e-12);
    Ok(CEvalResult {
        value: Complex::new(re, im),
        abs_err,
    })
}
