//! Values with rigorous absolute error bounds, and compensated summation.

use std::fmt;

use serde::{Deserialize, Serialize};

/// Unit roundoff of binary64.
pub const UNIT_ROUNDOFF: f64 = f64::EPSILON / 2.0;

/// A binary64 value together with an absolute error bound.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ApproxReal {
    pub value: f64,
    #[serde(rename = "err")]
    pub err_bound: f64,
}

impl ApproxReal {
    pub fn new(value: f64, err_bound: f64) -> Self {
        debug_assert!(err_bound >= 0.0 || err_bound.is_nan());
        ApproxReal { value, err_bound }
    }

    pub fn exact(value: f64) -> Self {
        ApproxReal::new(value, 0.0)
    }

    pub fn zero() -> Self {
        ApproxReal::exact(0.0)
    }

    pub fn lo(&self) -> f64 {
        self.value - self.err_bound
    }

    pub fn hi(&self) -> f64 {
        self.value + self.err_bound
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo() <= x && x <= self.hi()
    }

    pub fn overlaps(&self, other: &ApproxReal) -> bool {
        self.lo() <= other.hi() && other.lo() <= self.hi()
    }

    /// Product with first-order error propagation plus the rounding of the product.
    pub fn mul(&self, other: &ApproxReal) -> ApproxReal {
        let value = self.value * other.value;
        let err = self.err_bound * other.value.abs()
            + other.err_bound * self.value.abs()
            + self.err_bound * other.err_bound
            + UNIT_ROUNDOFF * value.abs();
        ApproxReal::new(value, err)
    }

    /// Quotient; the divisor's interval must exclude zero.
    pub fn div(&self, other: &ApproxReal) -> ApproxReal {
        let value = self.value / other.value;
        let margin = other.value.abs() - other.err_bound;
        if margin <= 0.0 {
            return ApproxReal::new(value, f64::INFINITY);
        }
        let err = (self.err_bound + value.abs() * other.err_bound) / margin + UNIT_ROUNDOFF * value.abs();
        ApproxReal::new(value, err)
    }

    pub fn recip(&self) -> ApproxReal {
        ApproxReal::exact(1.0).div(self)
    }
}

impl fmt::Display for ApproxReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (±{:.1e})", format_significant(self.value, 8), self.err_bound)
    }
}

/// `value` rounded to `digits` significant digits, in plain positional notation.
pub fn format_significant(value: f64, digits: usize) -> String {
    if value == 0.0 {
        return "0".into();
    }
    if !value.is_finite() {
        return value.to_string();
    }
    let digits = digits.max(1);
    let magnitude = value.abs().log10().floor() as i64;
    let decimals = (digits as i64 - 1 - magnitude).max(0) as usize;
    let s = format!("{value:.decimals$}");
    // Rounding can carry into a new leading digit (9.99 -> 10.0); redo with one fewer decimal.
    let sig = s.chars().filter(|c| c.is_ascii_digit()).skip_while(|&c| c == '0').count();
    if sig > digits && decimals > 0 {
        let d = decimals - 1;
        return format!("{value:.d$}");
    }
    s
}

/// C's `%.{precision}g`: shortest of fixed or exponent form, trailing zeros removed.
pub fn format_g(value: f64, precision: usize) -> String {
    if !value.is_finite() {
        return if value.is_nan() { "nan".into() } else if value > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if value == 0.0 {
        return if value.is_sign_negative() { "-0".into() } else { "0".into() };
    }
    let p = precision.max(1);
    let sci = format!("{:.*e}", p - 1, value);
    let (mantissa, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    let trim = |s: &str| -> String {
        if s.contains('.') {
            s.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            s.to_string()
        }
    };
    if exp < -4 || exp >= p as i32 {
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{}e{}{:02}", trim(mantissa), sign, exp.abs())
    } else {
        let decimals = (p as i32 - 1 - exp) as usize;
        trim(&format!("{value:.decimals$}"))
    }
}

/// Neumaier's variant of Kahan summation.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct CompensatedSum {
    sum: f64,
    compensation: f64,
    abs_total: f64,
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.compensation += (self.sum - t) + x;
        } else {
            self.compensation += (x - t) + self.sum;
        }
        self.sum = t;
        self.abs_total += x.abs();
    }

    /// Folds another partial sum in, as if its terms had been added here.
    pub fn merge(&mut self, other: &CompensatedSum) {
        self.add(other.sum);
        self.compensation += other.compensation;
        self.abs_total += other.abs_total - other.sum.abs();
    }

    pub fn value(&self) -> f64 {
        self.sum + self.compensation
    }

    /// Sum of the magnitudes of every term added.
    pub fn abs_total(&self) -> f64 {
        self.abs_total
    }

    /// Bound on the accumulated rounding error, `2u * sum |x_i|` plus slack.
    pub fn rounding_bound(&self) -> f64 {
        4.0 * UNIT_ROUNDOFF * self.abs_total + UNIT_ROUNDOFF * self.value().abs()
    }
}

impl FromIterator<f64> for CompensatedSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut s = CompensatedSum::new();
        for x in iter {
            s.add(x);
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compensated_sum_beats_naive() {
        let terms = [1e16, 1.0, -1e16, 1.0];
        let s: CompensatedSum = terms.iter().copied().collect();
        assert_eq!(s.value(), 2.0);
    }

    #[test]
    fn merge_matches_sequential() {
        let xs: Vec<f64> = (1..1000).map(|i| 1.0 / i as f64).collect();
        let whole: CompensatedSum = xs.iter().copied().collect();
        let mut merged = CompensatedSum::new();
        for chunk in xs.chunks(37) {
            merged.merge(&chunk.iter().copied().collect());
        }
        assert!((whole.value() - merged.value()).abs() < 1e-15);
        assert!((whole.abs_total() - merged.abs_total()).abs() < 1e-12);
    }

    #[test]
    fn interval_arithmetic() {
        let a = ApproxReal::new(2.0, 0.1);
        let b = ApproxReal::new(-4.0, 0.2);
        let q = a.div(&b);
        assert!(q.contains(2.1 / -3.8) && q.contains(1.9 / -4.2));
        let p = a.mul(&b);
        assert!(p.contains(2.1 * -4.2) && p.contains(1.9 * -3.8));
        assert!(ApproxReal::new(1.0, 0.0).div(&ApproxReal::new(0.1, 0.2)).err_bound.is_infinite());
    }

    #[test]
    fn printf_g_formatting() {
        assert_eq!(format_g(0.0, 10), "0");
        assert_eq!(format_g(1.0, 10), "1");
        assert_eq!(format_g(std::f64::consts::LN_10, 10), "2.302585093");
        assert_eq!(format_g(-0.31622776601683794, 10), "-0.316227766");
        assert_eq!(format_g(18.420680743952367, 10), "18.42068074");
        assert_eq!(format_g(1e-5, 10), "1e-05");
        assert_eq!(format_g(0.0001234, 10), "0.0001234");
        assert_eq!(format_g(12345678901.0, 10), "1.23456789e+10");
        assert_eq!(format_g(9999999999.6, 10), "1e+10");
        assert_eq!(format_g(-123.5, 3), "-124");
    }

    #[test]
    fn significant_digit_formatting() {
        assert_eq!(format_significant(-0.684765231, 8), "-0.68476523");
        assert_eq!(format_significant(-10.2917423, 8), "-10.291742");
        assert_eq!(format_significant(0.0515264, 5), "0.051526");
        assert_eq!(format_significant(9.9999999, 3), "10.0");
        assert_eq!(format_significant(0.0, 8), "0");
    }
}
