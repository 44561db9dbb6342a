//! The Riemann-Siegel remainder shape function
//!
//!   Psi(p) = cos(2 pi (p^2 - p - 1/16)) / cos(2 pi p)
//!
//! and its derivatives up to order 12, which assemble the correction
//! coefficients C0..C4 of the remainder expansion.
//!
//! Psi is entire (the zeros of the denominator are cancelled), but direct
//! differentiation of the quotient is numerically hopeless near p = 1/4,
//! 3/4. Instead the derivatives are read off a Taylor jet around the
//! nearest half-integer, where the denominator is +-1. The jet
//! coefficients are frozen constants: generating them at runtime by
//! series division is unstable in double precision (the recurrence
//! amplifies rounding like 4^k), so they were computed once with the same
//! recurrence in 60-digit arithmetic. Only the centers 0 and 1/2 are
//! needed because Psi(1 - p) = Psi(p).

use crate::real::Real;

const JET_LEN: usize = 56;
pub const MAX_DERIV: usize = 12;

/// Taylor coefficients of Psi around p = 0 (equivalently, around p = 1).
const Q_ZERO: [f64; JET_LEN] = [
    0.92387953251128676,
    -2.4044709195373851,
    2.4044709195373851,
    4.8317329742556959,
    -18.236651000299550,
    27.768139197712806,
    -15.820784513171702,
    -20.336734812545103,
    59.996176991229031,
    -68.955174156360119,
    31.228976891977159,
    32.592241425142258,
    -78.951804330822687,
    76.124143359287751,
    -29.354061692816728,
    -26.427979817257072,
    55.658791106959534,
    -47.153419332649258,
    16.095165359626252,
    12.919889717238330,
    -24.414677763047159,
    18.663106737041603,
    -5.7764696316228452,
    -4.2236879960359139,
    7.3019154879196587,
    -5.1254710984855835,
    1.4618325666416374,
    0.98809293705860962,
    -1.5838904887022948,
    1.0336863431045848,
    -0.27481350730251539,
    -0.17356342887306678,
    0.26053954230232907,
    -0.15956287990295838,
    0.039886773546348654,
    0.023729981756660131,
    -0.033613362266207504,
    0.019457262717954435,
    -0.0046042886051262840,
    -0.0025968776368915031,
    0.0034921114542944480,
    -0.0019215563191726463,
    0.00043278578172419006,
    0.00023260500689112893,
    -0.00029840483617661511,
    0.00015681657232124660,
    -3.3766201233470077e-5,
    -1.7367143354097522e-5,
    2.1341577423442533e-5,
    -1.0752706162530009e-5,
    2.2217269886795013e-6,
    1.0974425961484861e-6,
    -1.2962026243975244e-6,
    6.2819064631594180e-7,
    -1.2494339866376190e-7,
    -5.9451518688740041e-8,
];

/// Taylor coefficients of Psi around p = 1/2; the odd ones vanish by
/// symmetry.
const Q_HALF: [f64; JET_LEN] = [
    0.38268343236508977,
    0.0,
    1.7489618723100818,
    0.0,
    2.1180252076854964,
    0.0,
    -0.87072166705114807,
    0.0,
    -3.4733112243465167,
    0.0,
    -1.6626947308999324,
    0.0,
    1.2167312889192321,
    0.0,
    1.3014304161007976,
    0.0,
    0.030511021827361672,
    0.0,
    -0.37558030515450952,
    0.0,
    -0.10857844165640660,
    0.0,
    0.051832902999549623,
    0.0,
    0.029999480619902276,
    0.0,
    -0.0022759396706125642,
    0.0,
    -0.0043826474165803383,
    0.0,
    -0.00040642301837298470,
    0.0,
    0.00040060977854221139,
    0.0,
    8.9710579913888413e-5,
    0.0,
    -2.3025650027239107e-5,
    0.0,
    -9.3800066019067925e-6,
    0.0,
    6.3235149476091075e-7,
    0.0,
    6.5510228192315017e-7,
    0.0,
    2.2105237455526973e-8,
    0.0,
    -3.3223161764456288e-8,
    0.0,
    -3.7349109899336561e-9,
    0.0,
    1.2445067060797739e-9,
    0.0,
    2.4768205376502192e-10,
    0.0,
    -3.2842728168916272e-11,
    0.0,
];

/// Psi(p) and derivatives 0..=MAX_DERIV at `p`, for p in [0, 1].
pub fn psi_derivatives<T: Real>(p: T) -> [T; MAX_DERIV + 1] {
    let pf = p.to_f64().unwrap_or(f64::NAN);
    // fold onto [.., 1/2] and remember the reflection parity
    let (pp, flip) = if pf > 0.5 { (1.0 - pf, true) } else { (pf, false) };
    let (table, p0) = if pp < 0.25 {
        (&Q_ZERO, 0.0)
    } else {
        (&Q_HALF, 0.5)
    };
    let h = T::c(pp - p0);

    let mut out = [T::zero(); MAX_DERIV + 1];
    for (m, slot) in out.iter_mut().enumerate() {
        // falling-factorial weights: sum_j q[j] * j!/(j-m)! * h^(j-m)
        let mut acc = T::zero();
        let mut hpow = T::one();
        for j in m..JET_LEN {
            let mut w = T::one();
            for i in 0..m {
                w = w * T::from_usize(j - i).unwrap();
            }
            acc = acc + T::c(table[j]) * w * hpow;
            hpow = hpow * h;
        }
        if flip && m % 2 == 1 {
            acc = -acc;
        }
        *slot = acc;
    }
    out
}

/// Correction coefficients C0..C4 of the Riemann-Siegel remainder at `p`.
pub fn correction_coefficients<T: Real>(p: T) -> [T; 5] {
    let d = psi_derivatives(p);
    let pi2 = T::pi() * T::pi();
    let pi4 = pi2 * pi2;
    let pi6 = pi4 * pi2;
    let pi8 = pi4 * pi4;
    [
        d[0],
        -d[3] / (T::c(96.0) * pi2),
        d[2] / (T::c(64.0) * pi2) + d[6] / (T::c(18432.0) * pi4),
        -d[1] / (T::c(64.0) * pi2)
            - d[5] / (T::c(3840.0) * pi4)
            - d[9] / (T::c(5308416.0) * pi6),
        d[0] / (T::c(128.0) * pi2)
            + T::c(19.0) * d[4] / (T::c(24576.0) * pi4)
            + T::c(11.0) * d[8] / (T::c(5898240.0) * pi6)
            + d[12] / (T::c(2038431744.0) * pi8),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    // 17-digit reference derivatives from a 60-digit independent computation
    // rows: p, then Psi^(k)(p) for k = 0,1,2,3,5,6,9,12
    const REF: [[f64; 9]; 4] = [
        [
            0.13,
            0.65828671573876554,
            -1.658906427596887,
            5.9455184548117388,
            -4.5452763129191821,
            1613.1991508764592,
            -11886.234559897006,
            -8412735.0440518956,
            -1012378180.4756709,
        ],
        [
            0.47,
            0.38425921301355115,
            -0.10516633150179834,
            3.5207771164341147,
            -1.5221286262910337,
            19.43900486298429,
            -690.14240073271398,
            178361.94855425272,
            633890756.29628655,
        ],
        [
            0.77,
            0.52100014874453258,
            1.1006749287716786,
            5.1327355194430306,
            9.8822303151224221,
            -686.35545255465613,
            -6674.9048611622077,
            1598967.5921395077,
            3419467613.6456705,
        ],
        [
            0.98,
            0.87678772630897313,
            2.3030556737787172,
            5.3055783091779002,
            -20.887431751939164,
            -3086.9196844633566,
            -12989.674877525783,
            22543118.678736915,
            -28888068572.076933,
        ],
    ];
    const ORDERS: [usize; 8] = [0, 1, 2, 3, 5, 6, 9, 12];

    #[test]
    fn derivatives_match_reference() {
        for row in REF {
            let p = row[0];
            let d = psi_derivatives::<f64>(p);
            for (i, &k) in ORDERS.iter().enumerate() {
                let want = row[i + 1];
                let got = d[k];
                let tol = 1e-12 * want.abs().max(1.0);
                assert!(
                    (got - want).abs() < tol,
                    "p={p} order={k}: got {got}, want {want}"
                );
            }
        }
    }

    #[test]
    fn stable_across_quarter_singularities() {
        // the quotient form is 0/0 at p = 1/4 and 3/4; the jet is not
        for p in [0.25, 0.75] {
            let d = psi_derivatives::<f64>(p);
            for v in d {
                assert!(v.is_finite());
            }
        }
        let d = psi_derivatives::<f64>(0.25);
        assert!((d[0] - 0.5).abs() < 1e-14); // Psi(1/4) = 1/2
        assert!((d[3] - -9.8696044010893586).abs() < 1e-9); // = -pi^2
    }

    #[test]
    fn symmetric_about_half() {
        // Psi(1 - p) = Psi(p), so odd derivatives vanish at 1/2
        let d = psi_derivatives::<f64>(0.5);
        assert!((d[0] - 0.38268343236508977).abs() < 1e-14);
        assert_eq!(d[1], 0.0);
        assert_eq!(d[3], 0.0);
        let a = psi_derivatives::<f64>(0.3);
        let b = psi_derivatives::<f64>(0.7);
        assert!((a[0] - b[0]).abs() < 1e-14);
        assert!((a[1] + b[1]).abs() < 1e-13);
        assert!((a[2] - b[2]).abs() < 1e-12);
    }

    #[test]
    fn tables_reproduce_quotient_away_from_singularities() {
        // direct quotient evaluation is fine when the denominator is not
        // small; the jet must agree there
        let psi = |p: f64| {
            let tau = std::f64::consts::TAU;
            (tau * (p * p - p - 1.0 / 16.0)).cos() / (tau * p).cos()
        };
        let mut p = 0.01f64;
        while p < 1.0 {
            if (p - 0.25).abs() > 0.05 && (p - 0.75).abs() > 0.05 {
                let d = psi_derivatives::<f64>(p);
                assert!((d[0] - psi(p)).abs() < 1e-12, "p = {p}");
            }
            p += 0.017;
        }
    }

    #[test]
    fn low_order_table_entries_match_runtime_recurrence() {
        // regenerate the jets by the series-division recurrence in f64;
        // its rounding noise grows like 4^k, so only the low-order
        // entries are comparable, which is exactly why the frozen tables
        // exist
        for (p0, table) in [(0.0, &Q_ZERO), (0.5, &Q_HALF)] {
            let tau = std::f64::consts::TAU;
            let b = tau * (2.0 * p0 - 1.0);
            let a = tau * (p0 * p0 - p0 - 1.0 / 16.0);
            let mut nc = [0.0f64; JET_LEN];
            let mut ns = [0.0f64; JET_LEN];
            nc[0] = a.cos();
            ns[0] = a.sin();
            for k in 0..JET_LEN - 1 {
                let (ps, pc) = if k >= 1 { (ns[k - 1], nc[k - 1]) } else { (0.0, 0.0) };
                nc[k + 1] = -(b * ns[k] + 2.0 * tau * ps) / (k + 1) as f64;
                ns[k + 1] = (b * nc[k] + 2.0 * tau * pc) / (k + 1) as f64;
            }
            let mut dc = [0.0f64; JET_LEN];
            let mut ds = [0.0f64; JET_LEN];
            dc[0] = (tau * p0).cos();
            ds[0] = (tau * p0).sin();
            for k in 0..JET_LEN - 1 {
                dc[k + 1] = -tau * ds[k] / (k + 1) as f64;
                ds[k + 1] = tau * dc[k] / (k + 1) as f64;
            }
            let mut q = [0.0f64; JET_LEN];
            for k in 0..JET_LEN {
                let mut acc = nc[k];
                for j in 1..=k {
                    acc -= dc[j] * q[k - j];
                }
                q[k] = acc / dc[0];
            }
            for k in 0..20 {
                let tol = 1e-14 * 4.0f64.powi(k as i32) * table[k].abs().max(1.0);
                assert!(
                    (q[k] - table[k]).abs() < tol,
                    "p0 = {p0}, k = {k}: {} vs {}",
                    q[k],
                    table[k]
                );
            }
        }
    }

    #[test]
    fn c1_is_small_everywhere() {
        // |C1| < 0.06 on [0,1] (coarse bound, catches gross errors)
        let mut p = 0.0;
        while p <= 1.0 {
            let c = correction_coefficients::<f64>(p);
            assert!(c[1].abs() < 0.06, "C1({p}) = {}", c[1]);
            p += 0.01;
        }
    }
}
