//! `f(t) = H((1 + √t)/2)` and its first two derivatives on `(0, 1)`.
//!
//! ```text
//!     f'(t)  = (1/(4 ln 2)) t^{-1/2} (ln(1 − √t) − ln(1 + √t))
//!     f''(t) = (1/(8 ln 2)) t^{-3/2} (ln((1 + √t)/(1 − √t)) − 2√t/(1 − t))
//! ```

use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::scalar::Real;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConcavityPoint<T> {
    pub t: T,
    pub f: T,
    pub df: T,
    pub d2f: T,
}

/// `f(t)` in bits, for `t ∈ [0, 1]`.
pub fn concavity_f<T: Real>(t: T) -> T {
    let s = t.max(T::zero()).sqrt();
    let half = T::of(0.5);
    let p = half * (T::one() + s);
    let q = half * (T::one() - s);
    let term = |x: T| {
        if x > T::zero() {
            -x * x.ln()
        } else {
            T::zero()
        }
    };
    (term(p) + term(q)) / T::ln_2()
}

fn derivatives<T: Real>(t: T) -> (T, T) {
    let s = t.sqrt();
    let ln2 = T::ln_2();
    // ln((1+s)/(1-s)) without cancellation at small s
    let l = s.ln_1p() - (-s).ln_1p();
    let df = -l / (T::of(4.0) * ln2 * s);
    let d2f = (l - T::of(2.0) * s / (T::one() - t)) / (T::of(8.0) * ln2 * s * t);
    (df, d2f)
}

/// Analytic `(f, f', f'')` on each grid point.
pub fn concavity_profile<T: Real>(grid: &[T]) -> Result<Vec<ConcavityPoint<T>>> {
    grid.iter()
        .map(|&t| {
            if !(t > T::zero() && t < T::one()) {
                return domain(format!("grid point {} outside (0, 1)", t.as_f64()));
            }
            let (df, d2f) = derivatives(t);
            Ok(ConcavityPoint {
                t,
                f: concavity_f(t),
                df,
                d2f,
            })
        })
        .collect()
}

/// `points` equally spaced values from `lo` to `hi` inclusive.
pub fn uniform_grid(points: usize, lo: f64, hi: f64) -> Vec<f64> {
    match points {
        0 => Vec::new(),
        1 => vec![lo],
        _ => (0..points)
            .map(|i| lo + (hi - lo) * i as f64 / (points - 1) as f64)
            .collect(),
    }
}

/// Relative errors of the analytic `f'` and `f''` at `p.t` against central
/// differences of `f`, one Richardson step each.
///
/// The step shrinks towards either end of the interval: `f` is analytic in `t`
/// around zero but has a logarithmic branch point at one.
pub fn finite_difference_errors(p: &ConcavityPoint<f64>) -> (f64, f64) {
    let t = p.t;
    let h = (0.5 * t).min((1.0 - t) / 50.0);
    let f = concavity_f::<f64>;
    let d1 = |h: f64| (f(t + h) - f(t - h)) / (2.0 * h);
    let d2 = |h: f64| (f(t + h) - 2.0 * f(t) + f(t - h)) / (h * h);
    let df = (4.0 * d1(0.5 * h) - d1(h)) / 3.0;
    let d2f = (4.0 * d2(0.5 * h) - d2(h)) / 3.0;
    (
        ((df - p.df) / p.df).abs(),
        ((d2f - p.d2f) / p.d2f).abs(),
    )
}
