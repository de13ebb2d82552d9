//! Closed-form average per-user DoF curves.
//!
//! Everything is written in terms of `q = 1 - p` (the survival probability of
//! a link) and factored as `q * g(p)`, so every curve is exactly zero at
//! `p = 1` and the normalized value `curve / (1 - p)` is just `g(p)`.

use serde::Serialize;

use crate::error::{DofError, Result};

fn survive(p: f64) -> f64 {
    1.0 - p
}

/// Cell association with `T_i = {i}`: odd users first, with the parity swap
/// inside odd-length chains. The infinite tail
/// `sum_{i>=1} (1/2)(1-q^2)^2 q^(4i+1)` is summed in closed form.
pub fn tau1_normalized(p: f64) -> f64 {
    let q = survive(p);
    let w = 1.0 - q * q;
    0.5 * (1.0 + w * w) + 0.5 * q.powi(4) * w / (1.0 + q * q)
}

pub fn tau1(p: f64) -> f64 {
    survive(p) * tau1_normalized(p)
}

/// The same curve with the tail summed term by term until terms drop below
/// `tol`.
pub fn tau1_series(p: f64, tol: f64) -> f64 {
    let q = survive(p);
    let w = 1.0 - q * q;
    let mut total = 0.5 * (q + q * w * w);
    let mut i = 1;
    loop {
        let term = 0.5 * w * w * q.powi(4 * i + 1);
        total += term;
        if term < tol || i > 100_000 {
            return total;
        }
        i += 1;
    }
}

/// Strategy `(2,1,0)`.
pub fn tau2_normalized(p: f64) -> f64 {
    let q = survive(p);
    2.0 / 3.0 + p * (1.0 - q * q) / 3.0
}

pub fn tau2(p: f64) -> f64 {
    survive(p) * tau2_normalized(p)
}

/// Strategy `(1,2,1,0)`.
pub fn tau3_normalized(p: f64) -> f64 {
    let q = survive(p);
    0.5 + 0.25 * (1.0 - q * q) * (1.0 + p + q.powi(3))
}

pub fn tau3(p: f64) -> f64 {
    survive(p) * tau3_normalized(p)
}

/// Best cell-association curve.
pub fn tau_m1(p: f64) -> f64 {
    tau1(p).max(tau2(p)).max(tau3(p))
}

pub fn tau_m1_normalized(p: f64) -> f64 {
    tau1_normalized(p)
        .max(tau2_normalized(p))
        .max(tau3_normalized(p))
}

/// `A` of the five-user block scheme.
pub fn coefficient_a(p: f64) -> f64 {
    let q = survive(p);
    2.0 * p + (1.0 - q * q + p * q.powi(3)) * (1.0 + q * q)
}

/// Inner bound of the five-user block assignment with a silent fifth
/// transmitter.
pub fn zf_bound_thm4_normalized(p: f64) -> f64 {
    (4.0 + coefficient_a(p) * p) / 5.0
}

pub fn zf_bound_thm4(p: f64) -> f64 {
    survive(p) * zf_bound_thm4_normalized(p)
}

/// `B` of the adjacent-pair scheme.
pub fn coefficient_b(p: f64) -> f64 {
    let q = survive(p);
    3.0 + (1.0 + q.powi(3)) * (1.0 - q * q + p * q.powi(3)) + p * (1.0 + q * q)
}

/// Inner bound of `T_i = {i-1, i}`.
pub fn zf_bound_thm5_normalized(p: f64) -> f64 {
    let q = survive(p);
    (1.0 + q.powi(3) + coefficient_b(p) * p) / 3.0
}

pub fn zf_bound_thm5(p: f64) -> f64 {
    survive(p) * zf_bound_thm5_normalized(p)
}

/// Sampled values of one curve.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DofCurve {
    pub label: String,
    pub p_grid: Vec<f64>,
    pub values: Vec<f64>,
}

impl DofCurve {
    pub fn sample(label: &str, f: fn(f64) -> f64, p_grid: &[f64]) -> Self {
        DofCurve {
            label: label.to_string(),
            p_grid: p_grid.to_vec(),
            values: p_grid.iter().map(|&p| f(p)).collect(),
        }
    }
}

/// Named curves in output order.
pub const CURVES: [(&str, fn(f64) -> f64); 6] = [
    ("tau1", tau1),
    ("tau2", tau2),
    ("tau3", tau3),
    ("tau_m1", tau_m1),
    ("zf4", zf_bound_thm4),
    ("zf5", zf_bound_thm5),
];

pub const NORMALIZED_CURVES: [(&str, fn(f64) -> f64); 6] = [
    ("tau1_norm", tau1_normalized),
    ("tau2_norm", tau2_normalized),
    ("tau3_norm", tau3_normalized),
    ("tau_m1_norm", tau_m1_normalized),
    ("zf4_norm", zf_bound_thm4_normalized),
    ("zf5_norm", zf_bound_thm5_normalized),
];

/// `n + 1` evenly spaced points on `[0, 1]`.
pub fn unit_grid(n: usize) -> Vec<f64> {
    (0..=n).map(|i| i as f64 / n as f64).collect()
}

/// Root of `f - g` in `[lo, hi]` by bisection to `1e-6`.
///
/// The bracket is scanned on a fine grid first so the first sign change is
/// found even when the endpoints share a sign.
pub fn crossing_point(f: fn(f64) -> f64, g: fn(f64) -> f64, lo: f64, hi: f64) -> Result<f64> {
    const TOL: f64 = 1e-6;
    const SCAN: usize = 1000;
    let d = |p: f64| f(p) - g(p);
    let none = || DofError::NoCrossing { lo, hi };
    if !(lo < hi) {
        return Err(none());
    }
    let step = (hi - lo) / SCAN as f64;
    let mut a = lo;
    let mut da = d(a);
    for i in 1..=SCAN {
        let b = if i == SCAN { hi } else { lo + step * i as f64 };
        let db = d(b);
        if da == 0.0 && db == 0.0 {
            // Flat stretch: identical curves over this cell.
            a = b;
            da = db;
            continue;
        }
        if da == 0.0 {
            return Ok(a);
        }
        if da.signum() != db.signum() {
            let (mut x, mut y) = (a, b);
            while y - x > TOL {
                let mid = 0.5 * (x + y);
                if d(mid) == 0.0 {
                    return Ok(mid);
                }
                if d(mid).signum() == da.signum() {
                    x = mid;
                } else {
                    y = mid;
                }
            }
            return Ok(0.5 * (x + y));
        }
        a = b;
        da = db;
    }
    Err(none())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn anchors() {
        assert_eq!(tau1(0.0), 0.5);
        assert!((tau2(0.0) - 2.0 / 3.0).abs() < 1e-15);
        assert_eq!(tau3(0.0), 0.5);
        assert!((zf_bound_thm4(0.0) - 0.8).abs() < 1e-15);
        assert!((zf_bound_thm5(0.0) - 2.0 / 3.0).abs() < 1e-15);
        for (_, f) in CURVES {
            assert_eq!(f(1.0), 0.0);
        }
    }

    #[test]
    fn tau2_at_0_3() {
        let expected = (2.0 / 3.0) * 0.7 + (1.0 / 3.0) * 0.3 * 0.7 * (1.0 - 0.49);
        assert!((tau2(0.3) - expected).abs() < 1e-15);
    }

    #[test]
    fn tau3_at_0_4() {
        let q: f64 = 0.6;
        let expected = 0.5 * q + 0.25 * q * (1.0 - q * q) * (1.0 + 0.4 + q.powi(3));
        assert!((tau3(0.4) - expected).abs() < 1e-15);
    }

    #[test]
    fn series_matches_closed_form() {
        for p in unit_grid(1000) {
            assert!((tau1(p) - tau1_series(p, 1e-15)).abs() < 1e-12, "p = {p}");
        }
    }

    #[test]
    fn limits_near_one() {
        let p = 0.9999;
        assert!((zf_bound_thm5(p) / (1.0 - p) - 2.0).abs() < 1e-3);
        assert!((zf_bound_thm4(p) / (1.0 - p) - 1.4).abs() < 1e-3);
    }

    #[test]
    fn tau_m1_dominates() {
        for p in unit_grid(1000) {
            let m = tau_m1(p);
            assert!(m >= tau1(p) && m >= tau2(p) && m >= tau3(p));
        }
        assert_eq!(tau_m1(0.95), tau1(0.95));
    }

    #[test]
    fn thresholds() {
        let p = crossing_point(zf_bound_thm4, zf_bound_thm5, 0.0, 1.0).unwrap();
        assert!((p - 0.32477).abs() < 1e-4, "{p}");
        assert!(zf_bound_thm4(p - 1e-3) > zf_bound_thm5(p - 1e-3));
        assert!(zf_bound_thm4(p + 1e-3) < zf_bound_thm5(p + 1e-3));
        let p = crossing_point(tau2, tau1, 0.0, 1.0).unwrap();
        assert!(p > 0.0 && p < 1.0);
        assert!(matches!(
            crossing_point(tau2, tau2, 0.0, 1.0),
            Err(DofError::NoCrossing { .. })
        ));
    }
}
