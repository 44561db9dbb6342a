//! Closed Friedmann models with scale factor R(t) = |Z(t)|: energy
//! density, pressure via the truncated sum over zeros, the equation of
//! state ratio, and certified nonnegative-pressure intervals around
//! stationary points.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::eval::PrecisionPolicy;
use crate::real::Real;
use crate::stationary::StationaryPoint;
use crate::sums::{spectral_sum, Kernel};
use crate::zeros::ZeroTable;
use crate::zfunc::z_derivatives;

/// Minimum |Z| below which density and pressure are treated as singular.
const Z_FLOOR: f64 = 1e-8;
/// Half-width of the exclusion window around each zero when profiling.
const PROFILE_EXCLUDE: f64 = 1e-3;
/// Bisection resolution for the pressure-interval half-width.
const DELTA_TOL: f64 = 1e-4;

#[derive(Debug, Clone, Copy, Serialize)]
pub struct CosmoParams<T> {
    pub kappa: T,
    pub c: T,
    /// Spatial curvature index; the model family is the closed one.
    pub k: i8,
}

impl<T: Real> Default for CosmoParams<T> {
    fn default() -> Self {
        CosmoParams {
            kappa: T::one(),
            c: T::one(),
            k: 1,
        }
    }
}

impl<T: Real> CosmoParams<T> {
    fn validate(&self) -> Result<()> {
        if !(self.kappa > T::zero()) || !(self.c > T::zero()) {
            return Err(Error::Domain(format!(
                "kappa and c must be positive, got kappa = {}, c = {}",
                self.kappa, self.c
            )));
        }
        if self.k != 1 {
            return Err(Error::Domain(format!(
                "only the closed model (k = +1) is realized, got k = {}",
                self.k
            )));
        }
        Ok(())
    }
}

/// One row of a cosmology profile.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct CosmoSample<T> {
    pub t: T,
    pub r: T,
    pub dr: T,
    pub ddr: T,
    pub rho: T,
    pub p: T,
    pub w: T,
    /// Heuristic modeling error of the spectral pressure route, O(1/t).
    pub model_err: T,
}

fn scale_factor<T: Real>(t: T, policy: &PrecisionPolicy<T>) -> Result<(T, T, T)> {
    let (z0, z1, z2) = z_derivatives(t, policy)?;
    if z0.abs() <= T::c(Z_FLOOR) {
        return Err(Error::Pole(format!(
            "scale factor R = |Z({t})| = {:e} vanishes",
            z0.abs()
        )));
    }
    let s = z0.signum();
    Ok((z0.abs(), s * z1, s * z2))
}

/// Energy density rho(t) = (3 / kappa c^2) (c^2 / Z^2 + (Z'/Z)^2).
pub fn density<T: Real>(t: T, params: &CosmoParams<T>) -> Result<T> {
    params.validate()?;
    let policy = PrecisionPolicy::accurate();
    let (r, dr, _) = scale_factor(t, &policy)?;
    let c2 = params.c * params.c;
    let h = dr / r;
    Ok(T::c(3.0) / (params.kappa * c2) * (c2 / (r * r) + h * h))
}

/// Truncation height for the spectral pressure sum.
pub fn pressure_t_trunc<T: Real>(t: T) -> T {
    (T::c(2.0) * t).max(t + T::c(1000.0))
}

/// Pressure via the truncated sum over zeros:
/// p = (2/kappa) (S(t) - 3/2 (Z'/Z)^2 - c^2 / (2 Z^2)),
/// with S the InvSqShift sum over the symmetric zero multiset.
pub fn pressure<T: Real>(t: T, params: &CosmoParams<T>, table: &ZeroTable<T>) -> Result<T> {
    params.validate()?;
    let policy = PrecisionPolicy::accurate();
    let (r, dr, _) = scale_factor(t, &policy)?;
    let s = spectral_sum(Kernel::InvSqShift, t, table, pressure_t_trunc(t))?;
    let h = dr / r;
    let c2 = params.c * params.c;
    Ok(T::c(2.0) / params.kappa * (s.total - T::c(1.5) * h * h - c2 / (T::c(2.0) * r * r)))
}

/// Pressure straight from the Friedmann equations,
/// p = -(1/kappa) (2 R''/R + (R'/R)^2 + c^2/R^2); the spectral route and
/// this one differ by twice the residual of the second-derivative
/// identity, which decays like 1/t.
pub fn pressure_direct<T: Real>(t: T, params: &CosmoParams<T>) -> Result<T> {
    params.validate()?;
    let policy = PrecisionPolicy::accurate();
    let (r, dr, ddr) = scale_factor(t, &policy)?;
    let h = dr / r;
    let c2 = params.c * params.c;
    Ok(-(T::c(2.0) * ddr / r + h * h + c2 / (r * r)) / params.kappa)
}

/// Equation-of-state ratio w = p / (rho c^2), spectral pressure route.
pub fn eos_ratio<T: Real>(t: T, params: &CosmoParams<T>, table: &ZeroTable<T>) -> Result<T> {
    let p = pressure(t, params, table)?;
    let rho = density(t, params)?;
    Ok(p / (rho * params.c * params.c))
}

/// A symmetric interval around a stationary point on which p >= 0.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct PressureInterval<T> {
    pub t0: T,
    pub delta: T,
    pub lo: T,
    pub hi: T,
    pub p_at_t0: T,
}

/// Largest delta <= 0.9 Delta(t0), to resolution 1e-4, such that the
/// pressure is nonnegative on [t0 - delta, t0 + delta].
pub fn pressure_interval<T: Real>(
    point: &StationaryPoint<T>,
    params: &CosmoParams<T>,
    table: &ZeroTable<T>,
) -> Result<PressureInterval<T>> {
    let p = |t: T| pressure(t, params, table);
    pressure_interval_with(&p, point)
}

/// Interval search against a pluggable pressure function (used for the
/// real model above and for harness self-tests).
pub fn pressure_interval_with<T: Real, F: Fn(T) -> Result<T>>(
    p: &F,
    point: &StationaryPoint<T>,
) -> Result<PressureInterval<T>> {
    let t0 = point.t0;
    let p_at_t0 = p(t0)?;
    if p_at_t0 < T::zero() {
        return Err(Error::NoInterval {
            t0: t0.to_f64().unwrap_or(f64::NAN),
        });
    }
    let delta_max = point.delta * T::c(0.9);
    let tol = T::c(DELTA_TOL);
    let ok = |delta: T| -> Result<bool> {
        for i in 0..17usize {
            let x = t0 - delta + delta * T::c(2.0) * T::from_usize(i).unwrap() / T::c(16.0);
            if p(x)? < T::zero() {
                return Ok(false);
            }
        }
        Ok(true)
    };
    let mut delta = if ok(delta_max)? {
        delta_max
    } else {
        let mut lo = T::zero();
        let mut hi = delta_max;
        while hi - lo > tol {
            let mid = (lo + hi) * T::c(0.5);
            if ok(mid)? {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        lo
    };
    // finer certification pass; shrink past any straggler and recheck
    'outer: loop {
        if delta <= tol {
            break;
        }
        for i in 0..65usize {
            let x = t0 - delta + delta * T::c(2.0) * T::from_usize(i).unwrap() / T::c(64.0);
            if p(x)? < T::zero() {
                delta = (x - t0).abs() * T::c(0.999);
                continue 'outer;
            }
        }
        break;
    }
    if delta <= T::zero() {
        return Err(Error::NoInterval {
            t0: t0.to_f64().unwrap_or(f64::NAN),
        });
    }
    Ok(PressureInterval {
        t0,
        delta,
        lo: t0 - delta,
        hi: t0 + delta,
        p_at_t0,
    })
}

/// Sample the model on a uniform grid, skipping points within 1e-3 of a
/// tabulated zero.
pub fn profile<T: Real>(
    t_lo: T,
    t_hi: T,
    step: T,
    params: &CosmoParams<T>,
    table: &ZeroTable<T>,
) -> Result<Vec<CosmoSample<T>>> {
    params.validate()?;
    if !(step > T::zero()) || !(t_lo < t_hi) {
        return Err(Error::Domain(format!(
            "profile needs t_lo < t_hi and step > 0, got [{t_lo}, {t_hi}] step {step}"
        )));
    }
    let policy = PrecisionPolicy::accurate();
    let mut out = Vec::new();
    let n = ((t_hi - t_lo) / step).to_f64().unwrap().round() as usize;
    for i in 0..=n {
        let t = t_lo + step * T::from_usize(i).unwrap();
        if t > t_hi + step * T::c(0.5) {
            break;
        }
        if table.nearest_distance(t) < T::c(PROFILE_EXCLUDE) {
            continue;
        }
        let (r, dr, ddr) = scale_factor(t, &policy)?;
        let rho = density(t, params)?;
        let p = pressure(t, params, table)?;
        out.push(CosmoSample {
            t,
            r,
            dr,
            ddr,
            rho,
            p,
            w: p / (rho * params.c * params.c),
            model_err: T::c(10.0) / t,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stationary::scan_stationary;
    use crate::zeros::scan_zeros;
    use once_cell::sync::Lazy;

    static TABLE: Lazy<ZeroTable<f64>> =
        Lazy::new(|| scan_zeros(10.0, 1620.0, &PrecisionPolicy::accurate()).unwrap());

    fn params() -> CosmoParams<f64> {
        CosmoParams::default()
    }

    #[test]
    fn density_positive_and_scales() {
        let t = 17.5;
        let rho = density(t, &params()).unwrap();
        assert!(rho > 0.0);
        // Z(17.5) = 2.3018457..., Z'(17.5) = 0.19966...
        let z0 = 2.3018457553350568833f64;
        let z1 = 0.19966024167760395f64;
        let expect = 3.0 * (1.0 / (z0 * z0) + (z1 / z0).powi(2));
        assert!((rho - expect).abs() < 1e-5 * expect);
    }

    #[test]
    fn density_blows_up_near_zeros() {
        let far = density(17.5, &params()).unwrap();
        let near = density(14.1348, &params()).unwrap();
        assert!(near > 100.0 * far);
        assert!(matches!(
            density(14.13472514173469379, &params()),
            Err(Error::Pole(_))
        ));
    }

    #[test]
    fn pressure_two_routes_agree_to_model_error() {
        for t in [300.5, 450.3, 580.7] {
            let p_spec = pressure(t, &params(), &TABLE).unwrap();
            let p_dir = pressure_direct(t, &params()).unwrap();
            assert!(
                (p_spec - p_dir).abs() < 30.0 / t,
                "t = {t}: spectral {p_spec} vs direct {p_dir}"
            );
        }
    }

    #[test]
    fn eos_ratio_near_zero_approaches_minus_third() {
        // (Z'/Z)^2 dominates both rho and p close to a zero, and the
        // ratio of its coefficients is -1/3
        let gamma = TABLE.ordinates()[TABLE.count_upto(500.0)];
        for eps in [1e-3, 1e-4] {
            let w = eos_ratio(gamma + eps, &params(), &TABLE).unwrap();
            assert!((w + 1.0 / 3.0).abs() < 0.05, "eps {eps:e}: w = {w}");
        }
    }

    #[test]
    fn interval_with_constant_negative_pressure_fails() {
        let point = StationaryPoint {
            t0: 100.0,
            gamma_lo: 99.0,
            gamma_hi: 101.0,
            z_value: 1.0,
            z2_value: -1.0,
            delta: 1.0,
        };
        let p = |_: f64| Ok(-1.0);
        assert!(matches!(
            pressure_interval_with(&p, &point),
            Err(Error::NoInterval { .. })
        ));
    }

    #[test]
    fn interval_with_synthetic_window() {
        let point = StationaryPoint {
            t0: 100.0,
            gamma_lo: 99.0,
            gamma_hi: 101.0,
            z_value: 1.0,
            z2_value: -1.0,
            delta: 1.0,
        };
        // p >= 0 exactly on [100 - 0.3, 100 + 0.3]
        let p = |t: f64| Ok(0.09 - (t - 100.0) * (t - 100.0));
        let iv = pressure_interval_with(&p, &point).unwrap();
        assert!((iv.delta - 0.3).abs() < 2e-3, "delta = {}", iv.delta);
        assert!((iv.lo - 99.7).abs() < 2e-3);
        assert!((iv.hi - 100.3).abs() < 2e-3);
    }

    #[test]
    fn interval_capped_by_gap_guard() {
        let point = StationaryPoint {
            t0: 100.0,
            gamma_lo: 99.0,
            gamma_hi: 101.0,
            z_value: 1.0,
            z2_value: -1.0,
            delta: 1.0,
        };
        let p = |_: f64| Ok(1.0);
        let iv = pressure_interval_with(&p, &point).unwrap();
        assert!((iv.delta - 0.9).abs() < 1e-12);
    }

    #[test]
    fn real_interval_at_a_midrange_stationary_point() {
        let scan = scan_stationary(&TABLE, 495.0, 515.0, &PrecisionPolicy::accurate()).unwrap();
        let mut found = 0;
        for p in &scan.points {
            match pressure_interval(p, &params(), &TABLE) {
                Ok(iv) => {
                    assert!(iv.delta > 0.0 && iv.delta <= 0.9 * p.delta + 1e-12);
                    // spot check the certificate
                    for x in [iv.lo, iv.t0, iv.hi] {
                        assert!(pressure(x, &params(), &TABLE).unwrap() >= -1e-9);
                    }
                    found += 1;
                }
                Err(Error::NoInterval { .. }) => {}
                Err(e) => panic!("unexpected error: {e}"),
            }
        }
        assert!(found > 0, "no pressure interval among {} points", scan.points.len());
    }

    #[test]
    fn profile_skips_zeros_and_is_finite() {
        let rows = profile(400.0, 402.0, 0.05, &params(), &TABLE).unwrap();
        assert!(rows.len() > 20);
        for s in &rows {
            assert!(TABLE.nearest_distance(s.t) >= PROFILE_EXCLUDE);
            assert!(s.r > 0.0);
            assert!(s.rho > 0.0);
            assert!(s.p.is_finite() && s.w.is_finite());
            assert!((s.model_err - 10.0 / s.t).abs() < 1e-15);
        }
    }

    #[test]
    fn rejects_bad_params() {
        let mut bad = params();
        bad.k = -1;
        assert!(density(17.5, &bad).is_err());
        let mut bad2 = params();
        bad2.kappa = 0.0;
        assert!(density(17.5, &bad2).is_err());
    }
}
