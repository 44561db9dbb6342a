//! Zero location on the critical line: Gram points, sign-change scanning
//! over Gram blocks with deficit-driven densification, bracket refinement,
//! completeness accounting against the smooth zero count theta(T)/pi + 1,
//! and ingestion of externally published tables.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::eval::PrecisionPolicy;
use crate::real::Real;
use crate::roots::{refine, Bracket};
use crate::theta::{theta, T_MIN};
use crate::zfunc::z;

pub const T_MAX: f64 = 1e5;
const MAX_DEPTH: u32 = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum ZeroSource {
    Computed,
    Ingested,
}

/// Immutable sorted list of positive zero ordinates with the range over
/// which it is asserted complete.
#[derive(Debug, Clone)]
pub struct ZeroTable<T> {
    ordinates: Vec<T>,
    range: (T, T),
    source: ZeroSource,
    refine_tol: T,
}

impl<T: Real> ZeroTable<T> {
    fn new(ordinates: Vec<T>, range: (T, T), source: ZeroSource, refine_tol: T) -> Self {
        debug_assert!(ordinates.windows(2).all(|w| w[0] < w[1]));
        ZeroTable {
            ordinates,
            range,
            source,
            refine_tol,
        }
    }

    pub fn ordinates(&self) -> &[T] {
        &self.ordinates
    }

    pub fn range(&self) -> (T, T) {
        self.range
    }

    pub fn source(&self) -> ZeroSource {
        self.source
    }

    pub fn refine_tol(&self) -> T {
        self.refine_tol
    }

    pub fn len(&self) -> usize {
        self.ordinates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ordinates.is_empty()
    }

    /// Re-assert the completeness range, e.g. to widen the span of an
    /// ingested table that is known complete beyond its endpoints. All
    /// ordinates must lie inside the new range.
    pub fn with_range(mut self, lo: T, hi: T) -> Result<Self> {
        if !(lo < hi) {
            return Err(Error::Domain(format!("invalid range [{lo}, {hi}]")));
        }
        if let (Some(&first), Some(&last)) = (self.ordinates.first(), self.ordinates.last()) {
            if first < lo || last > hi {
                return Err(Error::Domain(format!(
                    "ordinates [{first}, {last}] spill outside range [{lo}, {hi}]"
                )));
            }
        }
        self.range = (lo, hi);
        Ok(self)
    }

    /// Number of ordinates <= t.
    pub fn count_upto(&self, t: T) -> usize {
        self.ordinates.partition_point(|&g| g <= t)
    }

    /// Consecutive pairs (gamma', gamma'') whose gap lies inside [lo, hi].
    pub fn gaps_in(&self, lo: T, hi: T) -> impl Iterator<Item = (T, T)> + '_ {
        self.ordinates
            .windows(2)
            .map(|w| (w[0], w[1]))
            .filter(move |&(a, b)| a >= lo && b <= hi)
    }

    /// Distance from t to the nearest tabulated ordinate.
    pub fn nearest_distance(&self, t: T) -> T {
        if self.ordinates.is_empty() {
            return T::infinity();
        }
        let i = self.ordinates.partition_point(|&g| g < t);
        let mut d = T::infinity();
        if i < self.ordinates.len() {
            d = d.min((self.ordinates[i] - t).abs());
        }
        if i > 0 {
            d = d.min((t - self.ordinates[i - 1]).abs());
        }
        d
    }

    /// Local gap size around t (the gap containing t, or the nearest one).
    pub fn local_gap(&self, t: T) -> T {
        let i = self.ordinates.partition_point(|&g| g < t);
        if i == 0 || i >= self.ordinates.len() {
            // mean gap from the smooth density as a fallback at the edges
            return T::two_pi() / (t / T::two_pi()).ln();
        }
        self.ordinates[i] - self.ordinates[i - 1]
    }
}

/// Gram point g_n: the solution of theta(g_n) = n pi.
pub fn gram_point<T: Real>(n: u64) -> Result<T> {
    let target = T::from_u64(n).unwrap() * T::pi();
    let t_lo = T::c(T_MIN);
    let f = |t: T| theta(t).expect("inside working range").value - target;
    let f_lo = f(t_lo);
    if f_lo > T::zero() {
        return Err(Error::Domain(format!("gram point g_{n} lies below t = {T_MIN}")));
    }
    // theta is strictly increasing on the working range
    let mut hi = T::c(32.0);
    while f(hi) < T::zero() {
        hi = hi * T::c(2.0);
        if hi > T::c(4.0 * T_MAX) {
            return Err(Error::Domain(format!("gram point g_{n} beyond working range")));
        }
    }
    let b = Bracket::from_fn(f, t_lo, hi)?;
    Ok(refine(f, &b, T::c(1e-11)))
}

/// Index of the first Gram point strictly above t.
fn gram_index_above<T: Real>(t: T) -> i64 {
    let th = theta(t).expect("inside working range").value;
    let n = (th / T::pi()).floor().to_i64().unwrap_or(0) + 1;
    n.max(0)
}

/// Diagnostics produced alongside a scan.
#[derive(Debug, Clone, Default)]
pub struct ScanReport {
    /// Gram blocks where the expected sign changes could not be isolated.
    pub failed_blocks: Vec<(f64, f64)>,
    /// Roots where |Z'| < 1e-6, i.e. possible multiple zeros (never
    /// silently accepted, always surfaced here).
    pub multiplicity_flags: Vec<f64>,
}

/// Sign-change scan of Z over [t_lo, t_hi].
pub fn scan_zeros<T: Real>(
    t_lo: T,
    t_hi: T,
    policy: &PrecisionPolicy<T>,
) -> Result<ZeroTable<T>> {
    scan_zeros_report(t_lo, t_hi, policy).map(|(table, _)| table)
}

/// As [`scan_zeros`], also returning the per-scan diagnostics.
pub fn scan_zeros_report<T: Real>(
    t_lo: T,
    t_hi: T,
    policy: &PrecisionPolicy<T>,
) -> Result<(ZeroTable<T>, ScanReport)> {
    if !(t_lo >= T::c(T_MIN) && t_lo < t_hi && t_hi <= T::c(T_MAX)) {
        return Err(Error::Domain(format!(
            "scan range must satisfy {T_MIN} <= t_lo < t_hi <= {T_MAX:e}, got [{t_lo}, {t_hi}]"
        )));
    }
    let refine_tol = T::c(1e-9);
    let f = move |t: T| z(t, policy).expect("inside working range").value;

    // block boundaries: t_lo, the Gram points inside, t_hi
    let mut bounds = vec![t_lo];
    let mut n = gram_index_above(t_lo);
    loop {
        let g: T = gram_point(n as u64)?;
        if g >= t_hi {
            break;
        }
        if g > t_lo {
            bounds.push(g);
        }
        n += 1;
    }
    bounds.push(t_hi);

    // initial parallel pass, one Gram block per task
    let mut depth_per_block = vec![0u32; bounds.len() - 1];
    let mut per_block: Vec<Vec<T>> = bounds
        .par_windows(2)
        .map(|w| scan_block(&f, w[0], w[1], 0, refine_tol))
        .collect();

    // deficit-driven densification: compare the running count against the
    // smooth estimate at every block boundary and re-scan around deficits
    let th_lo = theta(t_lo)?.value;
    for _ in 0..MAX_DEPTH {
        let mut deficits: Vec<usize> = Vec::new();
        let mut running = 0.0f64;
        for (i, blk) in per_block.iter().enumerate() {
            running += blk.len() as f64;
            let smooth = ((theta(bounds[i + 1])?.value - th_lo) / T::pi())
                .to_f64()
                .unwrap_or(0.0);
            if running - smooth <= -1.2 {
                deficits.push(i);
            }
        }
        if deficits.is_empty() {
            break;
        }
        let mut targets: Vec<usize> = Vec::new();
        for i in deficits {
            for j in i.saturating_sub(2)..(i + 3).min(per_block.len()) {
                if depth_per_block[j] < MAX_DEPTH && !targets.contains(&j) {
                    targets.push(j);
                }
            }
        }
        if targets.is_empty() {
            break;
        }
        let rescans: Vec<(usize, Vec<T>)> = targets
            .par_iter()
            .map(|&j| {
                (
                    j,
                    scan_block(&f, bounds[j], bounds[j + 1], depth_per_block[j] + 1, refine_tol),
                )
            })
            .collect();
        for (j, found) in rescans {
            depth_per_block[j] += 1;
            if found.len() > per_block[j].len() {
                per_block[j] = found;
            }
        }
    }

    let mut report = ScanReport::default();
    let mut ordinates = Vec::new();
    for (i, blk) in per_block.iter().enumerate() {
        // parity check: endpoints of a block with a sign change must hold
        // an odd number of roots
        let fa = f(bounds[i]);
        let fb = f(bounds[i + 1]);
        if fa * fb < T::zero() && blk.len() % 2 == 0 {
            report.failed_blocks.push((
                bounds[i].to_f64().unwrap_or(f64::NAN),
                bounds[i + 1].to_f64().unwrap_or(f64::NAN),
            ));
        }
        ordinates.extend_from_slice(blk);
    }
    ordinates.sort_by(|a, b| a.partial_cmp(b).unwrap());
    ordinates.dedup_by(|a, b| (*a - *b).abs() < T::c(1e-8));

    // multiplicity audit: a root with a tiny slope is flagged, not dropped
    for &g in &ordinates {
        let h = T::c(1e-4);
        let slope = (f(g + h) - f(g - h)) / (T::c(2.0) * h);
        if slope.abs() < T::c(1e-6) {
            report.multiplicity_flags.push(g.to_f64().unwrap_or(f64::NAN));
        }
    }

    if !report.failed_blocks.is_empty() {
        return Err(Error::ScanFailure(format!(
            "sign changes could not be isolated in {} Gram block(s): {:?}",
            report.failed_blocks.len(),
            report.failed_blocks
        )));
    }
    Ok((
        ZeroTable::new(ordinates, (t_lo, t_hi), ZeroSource::Computed, refine_tol),
        report,
    ))
}

/// Scan one block at grid density 8 * 2^depth, refining every bracket.
fn scan_block<T: Real, F: Fn(T) -> T + Sync>(
    f: &F,
    a: T,
    b: T,
    depth: u32,
    tol: T,
) -> Vec<T> {
    let m = 8usize << depth.min(MAX_DEPTH);
    let step = (b - a) / T::from_usize(m).unwrap();
    let mut out = Vec::new();
    let mut x_prev = a;
    let mut f_prev = f(a);
    for i in 1..=m {
        let x = if i == m {
            b
        } else {
            a + step * T::from_usize(i).unwrap()
        };
        let fx = f(x);
        if f_prev * fx < T::zero() {
            let bracket = Bracket::new(x_prev, x, f_prev, fx).expect("checked sign change");
            out.push(refine(f, &bracket, tol));
        } else if fx == T::zero() {
            out.push(x);
        }
        x_prev = x;
        f_prev = fx;
    }
    out
}

/// Refine a Z sign-change bracket to width <= tol; returns the midpoint of
/// the final bracket.
pub fn refine_zero<T: Real>(
    bracket: &Bracket<T>,
    tol: T,
    policy: &PrecisionPolicy<T>,
) -> Result<T> {
    Bracket::new(bracket.lo, bracket.hi, bracket.f_lo, bracket.f_hi)?;
    let f = |t: T| z(t, policy).expect("inside working range").value;
    Ok(refine(f, bracket, tol))
}

/// Observed-vs-smooth zero count at height t.
#[derive(Debug, Clone, Copy, serde::Serialize)]
pub struct CompletenessReport {
    pub t: f64,
    pub observed: usize,
    pub smooth: f64,
    pub deviation: f64,
    pub flagged: bool,
}

/// Compare the table's count up to `t` with the smooth estimate
/// theta(t)/pi + 1; flags |deviation| > 1.
pub fn completeness_check<T: Real>(table: &ZeroTable<T>, t: T) -> Result<CompletenessReport> {
    let (lo, hi) = table.range();
    if !(t >= lo && t <= hi) {
        return Err(Error::Domain(format!(
            "completeness check at t = {t} outside table range [{lo}, {hi}]"
        )));
    }
    let observed = table.count_upto(t);
    let smooth = (theta(t)?.value / T::pi() + T::one()).to_f64().unwrap();
    let deviation = observed as f64 - smooth;
    Ok(CompletenessReport {
        t: t.to_f64().unwrap(),
        observed,
        smooth,
        deviation,
        flagged: deviation.abs() > 1.0,
    })
}

/// Parse a zero table: one decimal ordinate per line, `#` comments,
/// strictly increasing. The asserted range is (first, last).
pub fn ingest_zeros<T: Real>(stream: &str) -> Result<ZeroTable<T>> {
    let mut ordinates: Vec<T> = Vec::new();
    for (idx, line) in stream.lines().enumerate() {
        let line_no = idx + 1;
        let s = line.trim();
        if s.is_empty() || s.starts_with('#') {
            continue;
        }
        let v: f64 = s.parse().map_err(|e| Error::Parse {
            line: line_no,
            msg: format!("{e}: {s:?}"),
        })?;
        let v = T::c(v);
        if let Some(&last) = ordinates.last() {
            if v <= last {
                return Err(Error::Monotonicity { line: line_no });
            }
        }
        ordinates.push(v);
    }
    if ordinates.is_empty() {
        return Err(Error::Parse {
            line: 0,
            msg: "no ordinates in stream".into(),
        });
    }
    let range = (ordinates[0], *ordinates.last().unwrap());
    Ok(ZeroTable::new(
        ordinates,
        range,
        ZeroSource::Ingested,
        T::c(1e-9),
    ))
}

/// Fraction of n <= n_max with (-1)^n Z(g_n) > 0 (Gram's law diagnostic;
/// reported, never asserted).
pub fn gram_law_fraction<T: Real>(n_max: u64, policy: &PrecisionPolicy<T>) -> Result<f64> {
    let mut good = 0u64;
    for n in 0..=n_max {
        let g: T = gram_point(n)?;
        let zv = z(g, policy)?.value;
        let sign = if n % 2 == 0 { T::one() } else { -T::one() };
        if sign * zv > T::zero() {
            good += 1;
        }
    }
    Ok(good as f64 / (n_max + 1) as f64)
}

#[cfg(test)]
mod tests {
    use super::*;

    const G0: f64 = 17.845599540410860817;
    const GAMMA1: f64 = 14.13472514173469379;

    fn policy() -> PrecisionPolicy<f64> {
        PrecisionPolicy::accurate()
    }

    #[test]
    fn first_gram_point() {
        let g: f64 = gram_point(0).unwrap();
        assert!((g - G0).abs() < 1e-8);
    }

    #[test]
    fn gram_points_satisfy_defining_equation() {
        for n in 0..100u64 {
            let g: f64 = gram_point(n).unwrap();
            let resid = theta(g).unwrap().value - n as f64 * std::f64::consts::PI;
            assert!(resid.abs() < 1e-8, "n={n}: residual {resid:e}");
        }
    }

    #[test]
    fn gram_points_increase() {
        let mut prev: f64 = gram_point(0).unwrap();
        for n in 1..50u64 {
            let g: f64 = gram_point(n).unwrap();
            assert!(g > prev);
            prev = g;
        }
    }

    #[test]
    fn scan_10_50_finds_ten_zeros() {
        let table = scan_zeros(10.0, 50.0, &policy()).unwrap();
        assert_eq!(table.len(), 10);
        assert!((table.ordinates()[0] - GAMMA1).abs() < 1e-7);
        // every zero shows a local sign change at refine scale
        for &g in table.ordinates() {
            let a = z(g - 1e-4, &policy()).unwrap().value;
            let b = z(g + 1e-4, &policy()).unwrap().value;
            assert!(a * b < 0.0, "no sign change around {g}");
        }
    }

    #[test]
    fn scan_empty_window() {
        let table = scan_zeros(40.5, 40.8, &policy()).unwrap();
        assert!(table.is_empty());
    }

    #[test]
    fn refine_zero_hits_gamma1() {
        let f = |t: f64| z(t, &policy()).unwrap().value;
        let b = Bracket::from_fn(f, 14.0, 14.2).unwrap();
        let r = refine_zero(&b, 1e-9, &policy()).unwrap();
        assert!((r - GAMMA1).abs() < 2e-9);
    }

    #[test]
    fn refine_zero_rejects_bad_bracket() {
        let b = Bracket {
            lo: 15.0,
            hi: 16.0,
            f_lo: 1.0,
            f_hi: 2.0,
        };
        assert!(matches!(
            refine_zero(&b, 1e-9, &policy()),
            Err(Error::InvalidBracket { .. })
        ));
    }

    #[test]
    fn completeness_at_50() {
        let table = scan_zeros(10.0, 50.0, &policy()).unwrap();
        let rep = completeness_check(&table, 50.0).unwrap();
        assert_eq!(rep.observed, 10);
        assert!((rep.smooth - 9.42).abs() < 0.1, "smooth = {}", rep.smooth);
        assert!(!rep.flagged);
    }

    #[test]
    fn completeness_flags_empty_table() {
        let table = ZeroTable::new(vec![], (10.0, 50.0), ZeroSource::Computed, 1e-9);
        let rep = completeness_check(&table, 50.0).unwrap();
        assert!(rep.flagged);
    }

    #[test]
    fn completeness_source_independent() {
        let computed = scan_zeros(10.0, 50.0, &policy()).unwrap();
        let text: String = computed
            .ordinates()
            .iter()
            .map(|g| format!("{g:.9}\n"))
            .collect();
        let mut ingested = ingest_zeros::<f64>(&text).unwrap();
        ingested.range = computed.range;
        let a = completeness_check(&computed, 49.9).unwrap();
        let b = completeness_check(&ingested, 49.9).unwrap();
        assert_eq!(a.observed, b.observed);
        assert_eq!(a.deviation, b.deviation);
    }

    #[test]
    fn ingest_basic() {
        let t = ingest_zeros::<f64>("14.134725\n21.022040\n25.010858\n").unwrap();
        assert_eq!(t.len(), 3);
        assert_eq!(t.source(), ZeroSource::Ingested);
        assert!((t.range().0 - 14.134725).abs() < 1e-12);
    }

    #[test]
    fn ingest_monotonicity_error() {
        match ingest_zeros::<f64>("21.0\n14.1\n") {
            Err(Error::Monotonicity { line }) => assert_eq!(line, 2),
            other => panic!("expected monotonicity error, got {other:?}"),
        }
    }

    #[test]
    fn ingest_skips_comments() {
        let t = ingest_zeros::<f64>("# header\n14.134725\n").unwrap();
        assert_eq!(t.len(), 1);
    }

    #[test]
    fn ingest_parse_error_carries_line() {
        match ingest_zeros::<f64>("14.1\nnot-a-number\n") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn overlapping_scans_agree() {
        let a = scan_zeros(10.0, 60.0, &policy()).unwrap();
        let b = scan_zeros(30.0, 80.0, &policy()).unwrap();
        for &ga in a.ordinates().iter().filter(|&&g| g > 30.0) {
            let d = b.nearest_distance(ga);
            assert!(d <= 2.0 * a.refine_tol(), "mismatch at {ga}: {d:e}");
        }
    }

    #[test]
    fn scan_rejects_bad_range() {
        assert!(scan_zeros(50.0, 10.0, &policy()).is_err());
        assert!(scan_zeros(5.0, 50.0, &policy()).is_err());
        assert!(scan_zeros(10.0, 2e5, &policy()).is_err());
    }
}
