//! Exact arithmetic in the quadratic field Q(sqrt 2).
//!
//! Every value is stored as `rational + irrational * sqrt(2)` with both
//! coefficients in arbitrary-precision rationals. Binary digits, signs and
//! comparisons are decided with integer arithmetic only.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::Error;

/// An exact element `a + b*sqrt(2)` of Q(sqrt 2).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ExactReal {
    rational: BigRational,
    sqrt2: BigRational,
}

/// Which binary expansion to use when a value is a dyadic rational.
///
/// Values other than dyadic rationals have a single expansion and ignore
/// this setting. The value `1` only has the all-ones expansion and `0` only
/// has the all-zeros expansion, whatever is requested.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Expansion {
    #[default]
    Terminating,
    NonTerminating,
}

impl ExactReal {
    pub fn new(rational: BigRational, sqrt2: BigRational) -> Self {
        ExactReal { rational, sqrt2 }
    }

    pub fn zero() -> Self {
        Self::from_integer(0)
    }

    pub fn one() -> Self {
        Self::from_integer(1)
    }

    pub fn from_integer(n: i64) -> Self {
        ExactReal::new(BigRational::from_integer(n.into()), BigRational::zero())
    }

    pub fn rational(p: i64, q: i64) -> Self {
        assert!(q != 0, "zero denominator");
        ExactReal::new(
            BigRational::new(p.into(), q.into()),
            BigRational::zero(),
        )
    }

    pub fn sqrt2() -> Self {
        ExactReal::new(BigRational::zero(), BigRational::one())
    }

    /// `(a + b*sqrt(2)) / c`.
    pub fn surd(a: i64, b: i64, c: i64) -> Self {
        assert!(c != 0, "zero denominator");
        let c = BigRational::from_integer(c.into());
        ExactReal::new(
            BigRational::from_integer(a.into()) / &c,
            BigRational::from_integer(b.into()) / &c,
        )
    }

    /// `2^(-k/2)`, exactly.
    pub fn inv_sqrt2_pow(k: u32) -> Self {
        let half = k / 2;
        let scale = BigRational::new(BigInt::one(), BigInt::one() << (half as usize));
        if k.is_multiple_of(2) {
            ExactReal::new(scale, BigRational::zero())
        } else {
            // 2^(-1/2) = sqrt(2)/2
            ExactReal::new(BigRational::zero(), scale / BigRational::from_integer(2.into()))
        }
    }

    pub fn rational_part(&self) -> &BigRational {
        &self.rational
    }

    pub fn sqrt2_part(&self) -> &BigRational {
        &self.sqrt2
    }

    pub fn is_rational(&self) -> bool {
        self.sqrt2.is_zero()
    }

    pub fn is_zero(&self) -> bool {
        self.rational.is_zero() && self.sqrt2.is_zero()
    }

    /// Sign of the value, decided exactly.
    pub fn signum(&self) -> Ordering {
        let a = self.rational.signum();
        let b = self.sqrt2.signum();
        let zero = BigRational::zero();
        match (a.cmp(&zero), b.cmp(&zero)) {
            (Ordering::Equal, s) | (s, Ordering::Equal) => s,
            (x, y) if x == y => x,
            (ra, _) => {
                // Opposite signs: compare a^2 against 2 b^2.
                let a2 = &self.rational * &self.rational;
                let b2 = &self.sqrt2 * &self.sqrt2 * BigRational::from_integer(2.into());
                match a2.cmp(&b2) {
                    Ordering::Equal => Ordering::Equal,
                    Ordering::Greater => ra,
                    Ordering::Less => ra.reverse(),
                }
            }
        }
    }

    pub fn abs(&self) -> Self {
        if self.signum() == Ordering::Less {
            -self.clone()
        } else {
            self.clone()
        }
    }

    /// Multiplicative inverse, using the conjugate `a - b*sqrt(2)`.
    pub fn recip(&self) -> Result<Self, Error> {
        if self.is_zero() {
            return Err(Error::InvalidReal("division by zero".into()));
        }
        let norm = &self.rational * &self.rational
            - &self.sqrt2 * &self.sqrt2 * BigRational::from_integer(2.into());
        Ok(ExactReal::new(&self.rational / &norm, -(&self.sqrt2) / &norm))
    }

    /// Common-denominator form `(a + b*sqrt(2)) / c` with `c > 0`.
    fn integer_form(&self) -> (BigInt, BigInt, BigInt) {
        let d1 = self.rational.denom();
        let d2 = self.sqrt2.denom();
        let c = d1.lcm(d2);
        let a = self.rational.numer() * (&c / d1);
        let b = self.sqrt2.numer() * (&c / d2);
        (a, b, c)
    }

    /// `floor(self * 2^shift)`, exactly.
    pub fn floor_scaled(&self, shift: usize) -> BigInt {
        let (a, b, c) = self.integer_form();
        floor_surd(&(a << shift), &(b << shift), &c)
    }

    /// `ceil(self * 2^shift)`, exactly.
    pub fn ceil_scaled(&self, shift: usize) -> BigInt {
        -(-self.clone()).floor_scaled(shift)
    }

    /// The first `count` binary digits after the point, for a value in `[0, 1]`.
    pub fn binary_digits(&self, count: usize, expansion: Expansion) -> Result<Vec<u8>, Error> {
        self.check_unit_interval()?;
        if count == 0 || self.is_zero() {
            return Ok(vec![0; count]);
        }
        if *self == ExactReal::one() {
            return Ok(vec![1; count]);
        }
        let scaled = match expansion {
            Expansion::Terminating => self.floor_scaled(count),
            // Non-terminating digits truncated to `count` places sum to ceil(x 2^count) - 1.
            Expansion::NonTerminating => self.ceil_scaled(count) - BigInt::one(),
        };
        let (sign, bits) = scaled.to_radix_be(2);
        debug_assert!(sign != Sign::Minus);
        debug_assert!(bits.len() <= count);
        let mut digits = vec![0u8; count - bits.len().min(count)];
        digits.extend(bits.into_iter().map(|d| if sign == Sign::NoSign { 0 } else { d }));
        digits.truncate(count);
        Ok(digits)
    }

    pub fn check_unit_interval(&self) -> Result<(), Error> {
        let lower = self.signum() != Ordering::Less;
        let upper = (ExactReal::one() - self.clone()).signum() != Ordering::Less;
        if lower && upper {
            Ok(())
        } else {
            Err(Error::InvalidReal(format!("{self} is not in [0, 1]")))
        }
    }

    /// Best binary64 approximation. Cancellation between the two parts is
    /// avoided by rewriting through the conjugate.
    pub fn to_f64(&self) -> f64 {
        let (a, b, c) = self.integer_form();
        if b.is_zero() {
            return ratio_to_f64(&a, &c);
        }
        if a.is_zero() || a.sign() == b.sign() {
            return ratio_to_f64(&a, &c) + ratio_to_f64(&b, &c) * std::f64::consts::SQRT_2;
        }
        // a + b sqrt2 = (a^2 - 2 b^2) / (a - b sqrt2), and a, -b sqrt2 share a sign.
        let norm = &a * &a - (&b * &b) * BigInt::from(2);
        let conj = ratio_to_f64(&a, &BigInt::one()) - ratio_to_f64(&b, &BigInt::one()) * std::f64::consts::SQRT_2;
        ratio_to_f64(&norm, &c) / conj
    }

    fn checked_cmp(&self, other: &Self) -> Ordering {
        (self.clone() - other.clone()).signum()
    }
}

impl PartialOrd for ExactReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExactReal {
    fn cmp(&self, other: &Self) -> Ordering {
        self.checked_cmp(other)
    }
}

/// `floor((p + q*sqrt(2)) / c)` for integers with `c > 0`.
///
/// `q*sqrt(2)` is irrational unless `q = 0`, so there is no integer strictly
/// between `p + floor(q*sqrt(2))` and `p + q*sqrt(2)`.
fn floor_surd(p: &BigInt, q: &BigInt, c: &BigInt) -> BigInt {
    let floor_irr = if q.is_zero() {
        BigInt::zero()
    } else {
        let root = (q * q * BigInt::from(2)).sqrt();
        if q.is_positive() {
            root
        } else {
            -root - BigInt::one()
        }
    };
    (p + floor_irr).div_floor(c)
}

/// `n / d` rounded to binary64, valid for operands of any size.
fn ratio_to_f64(n: &BigInt, d: &BigInt) -> f64 {
    if n.is_zero() {
        return 0.0;
    }
    let bits_n = n.bits() as i64;
    let bits_d = d.bits() as i64;
    // Keep 64 significant bits in the integer quotient.
    let shift = bits_n - bits_d - 64;
    let q = if shift >= 0 {
        n / (d << (shift as usize))
    } else {
        (n << ((-shift) as usize)) / d
    };
    let mantissa = q.to_f64().unwrap_or(f64::NAN);
    mantissa * 2f64.powi(shift.clamp(i32::MIN as i64, i32::MAX as i64) as i32)
}

impl Add for ExactReal {
    type Output = ExactReal;
    fn add(self, rhs: Self) -> Self {
        ExactReal::new(self.rational + rhs.rational, self.sqrt2 + rhs.sqrt2)
    }
}

impl Sub for ExactReal {
    type Output = ExactReal;
    fn sub(self, rhs: Self) -> Self {
        ExactReal::new(self.rational - rhs.rational, self.sqrt2 - rhs.sqrt2)
    }
}

impl Mul for ExactReal {
    type Output = ExactReal;
    fn mul(self, rhs: Self) -> Self {
        let two = BigRational::from_integer(2.into());
        let rational = &self.rational * &rhs.rational + &self.sqrt2 * &rhs.sqrt2 * two;
        let sqrt2 = &self.rational * &rhs.sqrt2 + &self.sqrt2 * &rhs.rational;
        ExactReal::new(rational, sqrt2)
    }
}

impl Div for ExactReal {
    type Output = ExactReal;
    /// Panics on division by zero; use [`ExactReal::recip`] to handle it.
    fn div(self, rhs: Self) -> Self {
        self * rhs.recip().expect("division by zero in Q(sqrt 2)")
    }
}

impl Neg for ExactReal {
    type Output = ExactReal;
    fn neg(self) -> Self {
        ExactReal::new(-self.rational, -self.sqrt2)
    }
}

impl std::iter::Sum for ExactReal {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(ExactReal::zero(), |acc, x| acc + x)
    }
}

fn fmt_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Canonical form, re-parseable by [`FromStr`]: `3/10`, `1/2*sqrt2`, `2-1*sqrt2`.
impl fmt::Display for ExactReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.sqrt2.is_zero() {
            return f.write_str(&fmt_rational(&self.rational));
        }
        if !self.rational.is_zero() {
            f.write_str(&fmt_rational(&self.rational))?;
            if self.sqrt2.is_positive() {
                f.write_str("+")?;
            }
        }
        write!(f, "{}*sqrt2", fmt_rational(&self.sqrt2))
    }
}

impl fmt::Debug for ExactReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ExactReal({self})")
    }
}

/// Parses arithmetic expressions over integers, decimals and `sqrt2`.
///
/// Accepted forms include `0`, `1`, `3/10`, `0.3`, `1/sqrt2`, `2-sqrt2`,
/// `(1+3*sqrt(2))/4` and `a+b/sqrt2 over c` (where `over` divides the whole
/// left side). The alias `inv_sqrt2` names `1/sqrt2`.
impl FromStr for ExactReal {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let (num, den) = match s.split_once(" over ") {
            Some((n, d)) => (n, Some(d)),
            None => (s, None),
        };
        let mut value = Parser::new(num).parse_all()?;
        if let Some(d) = den {
            let d = Parser::new(d).parse_all()?;
            value = value * d.recip()?;
        }
        Ok(value)
    }
}

struct Parser<'a> {
    src: &'a str,
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Parser { src, bytes: src.as_bytes(), pos: 0 }
    }

    fn fail(&self, what: &str) -> Error {
        Error::InvalidReal(format!("{what} at offset {} in {:?}", self.pos, self.src))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn eat_word(&mut self, word: &str) -> bool {
        self.skip_ws();
        if self.src[self.pos..].starts_with(word) {
            self.pos += word.len();
            true
        } else {
            false
        }
    }

    fn parse_all(mut self) -> Result<ExactReal, Error> {
        let v = self.expr()?;
        if self.peek().is_some() {
            return Err(self.fail("unexpected trailing input"));
        }
        Ok(v)
    }

    fn expr(&mut self) -> Result<ExactReal, Error> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = acc + self.term()?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = acc - self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<ExactReal, Error> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = acc * self.factor()?;
                }
                Some(b'/') => {
                    self.pos += 1;
                    let d = self.factor()?;
                    acc = acc * d.recip()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<ExactReal, Error> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(-self.factor()?)
            }
            Some(b'+') => {
                self.pos += 1;
                self.factor()
            }
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.fail("expected ')'"));
                }
                self.pos += 1;
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() || c == b'.' => self.number(),
            Some(_) => {
                if self.eat_word("inv_sqrt2") {
                    ExactReal::sqrt2().recip()
                } else if self.eat_word("sqrt(2)") || self.eat_word("sqrt2") {
                    Ok(ExactReal::sqrt2())
                } else {
                    Err(self.fail("unexpected token"))
                }
            }
            None => Err(self.fail("unexpected end of input")),
        }
    }

    fn number(&mut self) -> Result<ExactReal, Error> {
        let start = self.pos;
        while self.pos < self.bytes.len() && (self.bytes[self.pos].is_ascii_digit() || self.bytes[self.pos] == b'.') {
            self.pos += 1;
        }
        let text = &self.src[start..self.pos];
        let (int_part, frac_part) = text.split_once('.').unwrap_or((text, ""));
        if frac_part.contains('.') || (int_part.is_empty() && frac_part.is_empty()) {
            return Err(self.fail("malformed number"));
        }
        let digits = format!("{int_part}{frac_part}");
        let numer: BigInt = digits.parse().map_err(|_| self.fail("malformed number"))?;
        let denom = num_traits::pow(BigInt::from(10), frac_part.len());
        Ok(ExactReal::new(BigRational::new(numer, denom), BigRational::zero()))
    }
}
