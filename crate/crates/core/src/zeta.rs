//! Riemann zeta at real arguments by Euler–Maclaurin summation.

use crate::error::{Error, Result};
use crate::numeric::{ApproxReal, CompensatedSum, UNIT_ROUNDOFF};

/// Number of directly summed terms.
const DIRECT_TERMS: u32 = 64;

/// `B_{2k}` for k = 1..=13 as (numerator, denominator).
const BERNOULLI: [(f64, f64); 13] = [
    (1.0, 6.0),
    (-1.0, 30.0),
    (1.0, 42.0),
    (-1.0, 30.0),
    (5.0, 66.0),
    (-691.0, 2730.0),
    (7.0, 6.0),
    (-3617.0, 510.0),
    (43867.0, 798.0),
    (-174611.0, 330.0),
    (854513.0, 138.0),
    (-236364091.0, 2730.0),
    (8553103.0, 6.0),
];

/// Corrections through `B_24`; the `B_26` term bounds the remainder.
const CORRECTIONS: usize = 12;

pub const DEFAULT_PRECISION: f64 = 1e-12;

/// `zeta(s)` for real `s > 0`, `s != 1`, with error bound at most `target`.
///
/// For real `s` the Euler–Maclaurin remainder is bounded by the first omitted
/// correction term.
pub fn zeta_real(s: f64, target: f64) -> Result<ApproxReal> {
    if s.is_nan() || s <= 0.0 || !s.is_finite() {
        return Err(Error::Domain(format!("zeta_real needs s > 0, got {s}")));
    }
    if s == 1.0 {
        return Err(Error::Domain("zeta has a pole at s = 1".into()));
    }
    let n = DIRECT_TERMS as f64;
    let mut sum = CompensatedSum::new();
    for k in 1..DIRECT_TERMS {
        sum.add((k as f64).powf(-s));
    }
    let n_pow = n.powf(-s);
    sum.add(n * n_pow / (s - 1.0));
    sum.add(0.5 * n_pow);

    // poch(s, 2k-1) * N^(-s-2k+1), advanced two factors at a time
    let mut rising = s * n_pow / n;
    let mut factorial = 2.0;
    let mut remainder = 0.0;
    for (k, &(num, den)) in BERNOULLI.iter().enumerate() {
        let term = num / den / factorial * rising;
        if k < CORRECTIONS {
            sum.add(term);
        } else {
            remainder = term.abs();
        }
        let m = 2.0 * (k as f64 + 1.0);
        rising *= (s + m - 1.0) * (s + m) / (n * n);
        factorial *= (m + 1.0) * (m + 2.0);
    }

    let value = sum.value();
    // powf is accurate to a couple of ulps; fold that into the summation bound.
    let err = remainder + 2.0 * sum.rounding_bound() + 4.0 * UNIT_ROUNDOFF * value.abs();
    if err > target {
        return Err(Error::Precision { target, achieved: err });
    }
    Ok(ApproxReal::new(value, err))
}

/// [`zeta_real`] at the default precision.
pub fn zeta(s: f64) -> Result<ApproxReal> {
    zeta_real(s, DEFAULT_PRECISION)
}
