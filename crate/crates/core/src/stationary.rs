//! Stationary points of Z between consecutive zeros: location, the gap
//! clearance Delta(t0), the tilde-point filter, and gap / peak statistics.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::eval::PrecisionPolicy;
use crate::real::Real;
use crate::roots::{refine, Bracket};
use crate::zeros::ZeroTable;
use crate::zfunc::z_derivatives;

const REFINE_TOL: f64 = 1e-9;
const BASE_GRID: usize = 32;
const MAX_GRID: usize = 512;

/// A root of Z' inside the gap (gamma_lo, gamma_hi).
#[derive(Debug, Clone, Copy, Serialize)]
pub struct StationaryPoint<T> {
    pub t0: T,
    pub gamma_lo: T,
    pub gamma_hi: T,
    pub z_value: T,
    pub z2_value: T,
    /// Distance from t0 to the nearer gap endpoint.
    pub delta: T,
}

/// Result of a stationary-point scan over consecutive gaps.
#[derive(Debug, Clone)]
pub struct StationaryScan<T> {
    pub points: Vec<StationaryPoint<T>>,
    pub gaps_scanned: usize,
    /// Gaps where the final count of Z' roots differed from one:
    /// (gamma_lo, gamma_hi, count).
    pub anomalies: Vec<(f64, f64, usize)>,
}

/// Locate the stationary points of Z in every gap of `table` contained in
/// [t_lo, t_hi].
pub fn scan_stationary<T: Real>(
    table: &ZeroTable<T>,
    t_lo: T,
    t_hi: T,
    policy: &PrecisionPolicy<T>,
) -> Result<StationaryScan<T>> {
    let (lo, hi) = table.range();
    if t_lo < lo || t_hi > hi || !(t_lo < t_hi) {
        return Err(Error::Domain(format!(
            "stationary scan window [{t_lo}, {t_hi}] not inside table range [{lo}, {hi}]"
        )));
    }
    let gaps: Vec<(T, T)> = table.gaps_in(t_lo, t_hi).collect();
    let per_gap: Vec<(Vec<StationaryPoint<T>>, usize)> = gaps
        .par_iter()
        .map(|&(a, b)| scan_gap(a, b, policy))
        .collect();
    let mut points = Vec::new();
    let mut anomalies = Vec::new();
    for (&(a, b), (found, count)) in gaps.iter().zip(per_gap) {
        if count != 1 {
            anomalies.push((
                a.to_f64().unwrap_or(f64::NAN),
                b.to_f64().unwrap_or(f64::NAN),
                count,
            ));
        }
        points.extend(found);
    }
    Ok(StationaryScan {
        points,
        gaps_scanned: gaps.len(),
        anomalies,
    })
}

fn scan_gap<T: Real>(
    a: T,
    b: T,
    policy: &PrecisionPolicy<T>,
) -> (Vec<StationaryPoint<T>>, usize) {
    let gap = b - a;
    let margin = gap * T::c(1e-6);
    let f = |t: T| z_derivatives(t, policy).expect("inside working range").1;
    let mut grid = BASE_GRID;
    loop {
        let mut roots: Vec<T> = Vec::new();
        let lo = a + margin;
        let hi = b - margin;
        let step = (hi - lo) / T::from_usize(grid).unwrap();
        let mut x_prev = lo;
        let mut f_prev = f(lo);
        for i in 1..=grid {
            let x = if i == grid {
                hi
            } else {
                lo + step * T::from_usize(i).unwrap()
            };
            let fx = f(x);
            if f_prev * fx < T::zero() {
                let bracket = Bracket::new(x_prev, x, f_prev, fx).expect("checked sign change");
                roots.push(refine(&f, &bracket, T::c(REFINE_TOL)));
            }
            x_prev = x;
            f_prev = fx;
        }
        if roots.len() == 1 || grid >= MAX_GRID {
            let count = roots.len();
            let points = roots
                .into_iter()
                .map(|t0| {
                    let (z0, _, z2) = z_derivatives(t0, policy).expect("inside working range");
                    StationaryPoint {
                        t0,
                        gamma_lo: a,
                        gamma_hi: b,
                        z_value: z0,
                        z2_value: z2,
                        delta: (t0 - a).min(b - t0),
                    }
                })
                .collect();
            return (points, count);
        }
        grid *= 2;
    }
}

/// Keep the points with |Z(t0)| > t0^-alpha.
pub fn filter_tilde<T: Real>(
    points: &[StationaryPoint<T>],
    alpha: T,
) -> Result<Vec<StationaryPoint<T>>> {
    if !(alpha > T::zero()) {
        return Err(Error::Domain(format!("alpha must be positive, got {alpha}")));
    }
    Ok(points
        .iter()
        .copied()
        .filter(|p| p.z_value.abs() > p.t0.powf(-alpha))
        .collect())
}

/// The margin Delta(t0) * gamma'^alpha whose excess over 1 certifies the
/// clearance bound at this point.
pub fn theorem1_margin<T: Real>(point: &StationaryPoint<T>, alpha: T) -> T {
    point.delta * point.gamma_lo.powf(alpha)
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct GapStat {
    pub gamma_lo: f64,
    pub size: f64,
    /// size * ln ln ln gamma', only where gamma' > e^e.
    pub lll_ratio: Option<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct GapStatistics {
    pub gaps: Vec<GapStat>,
    pub max_gap_at: f64,
    pub max_gap: f64,
}

/// Gap sizes with the ln ln ln normalization of the small-gaps literature.
pub fn gap_statistics<T: Real>(table: &ZeroTable<T>) -> Result<GapStatistics> {
    if table.len() < 2 {
        return Err(Error::Domain(
            "gap statistics need at least two ordinates".into(),
        ));
    }
    let e_e = std::f64::consts::E.exp();
    let mut gaps = Vec::with_capacity(table.len() - 1);
    let mut max_gap = f64::NEG_INFINITY;
    let mut max_gap_at = f64::NAN;
    for w in table.ordinates().windows(2) {
        let g = w[0].to_f64().unwrap();
        let size = (w[1] - w[0]).to_f64().unwrap();
        let lll_ratio = (g > e_e).then(|| size * g.ln().ln().ln());
        if size > max_gap {
            max_gap = size;
            max_gap_at = g;
        }
        gaps.push(GapStat {
            gamma_lo: g,
            size,
            lll_ratio,
        });
    }
    Ok(GapStatistics {
        gaps,
        max_gap_at,
        max_gap,
    })
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct PeakStat {
    pub t0: f64,
    pub abs_z: f64,
    pub running_max: f64,
    /// |Z(t0)| / exp(ln^beta t0).
    pub ratio: f64,
}

/// Peak sizes |Z(t0)| against the exp(ln^beta t) growth benchmark.
pub fn peak_statistics<T: Real>(points: &[StationaryPoint<T>], beta: f64) -> Result<Vec<PeakStat>> {
    if !(beta > 0.0 && beta < 0.5) {
        return Err(Error::Domain(format!(
            "beta must lie in (0, 0.5), got {beta}"
        )));
    }
    let mut out = Vec::with_capacity(points.len());
    let mut running_max = f64::NEG_INFINITY;
    for p in points {
        let t0 = p.t0.to_f64().unwrap();
        let abs_z = p.z_value.abs().to_f64().unwrap();
        running_max = running_max.max(abs_z);
        out.push(PeakStat {
            t0,
            abs_z,
            running_max,
            ratio: abs_z / t0.ln().powf(beta).exp(),
        });
    }
    Ok(out)
}
