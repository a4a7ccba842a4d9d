//! Epsilon sequences and the multiplicative functions they define.
//!
//! A spec fixes `f(p^k) = eps_k` for every prime `p`; the sequence is an
//! explicit prefix `eps_1..eps_m` (`m >= 2`) followed by a [`TailRule`].

use std::fmt;
use std::sync::RwLock;

use crate::arith::factorize;
use crate::error::{Error, Result};
use crate::exact::{ExactReal, Expansion};

/// A value of `f(p^k)`: one of -1, 0, 1.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Epsilon(i8);

impl Epsilon {
    pub const MINUS: Epsilon = Epsilon(-1);
    pub const ZERO: Epsilon = Epsilon(0);
    pub const PLUS: Epsilon = Epsilon(1);

    pub fn new(v: i64) -> Result<Self> {
        match v {
            -1..=1 => Ok(Epsilon(v as i8)),
            _ => Err(Error::InvalidEpsilon(v)),
        }
    }

    #[inline]
    pub fn get(self) -> i8 {
        self.0
    }

    fn alternating(k: u64) -> Self {
        if k.is_multiple_of(2) {
            Epsilon::PLUS
        } else {
            Epsilon::MINUS
        }
    }
}

impl fmt::Debug for Epsilon {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl TryFrom<i64> for Epsilon {
    type Error = Error;
    fn try_from(v: i64) -> Result<Self> {
        Epsilon::new(v)
    }
}

/// Lazily expanded binary digits of an exact real in `[0, 1]`.
///
/// Digits are filled in blocks under a lock; a block of length `L` is the
/// binary form of `floor(2^L x)` (or its non-terminating counterpart), so
/// every fill agrees with every earlier one.
pub struct DigitStream {
    value: ExactReal,
    expansion: Expansion,
    cache: RwLock<Vec<u8>>,
}

impl DigitStream {
    pub fn new(value: ExactReal, expansion: Expansion) -> Result<Self> {
        value.check_unit_interval()?;
        Ok(DigitStream {
            value,
            expansion,
            cache: RwLock::new(Vec::new()),
        })
    }

    pub fn value(&self) -> &ExactReal {
        &self.value
    }

    pub fn expansion(&self) -> Expansion {
        self.expansion
    }

    /// Digit `j >= 1`, weight `2^-j`.
    pub fn digit(&self, j: usize) -> u8 {
        assert!(j >= 1, "digits are indexed from 1");
        {
            let cache = self.cache.read().unwrap_or_else(|e| e.into_inner());
            if j <= cache.len() {
                return cache[j - 1];
            }
        }
        let mut cache = self.cache.write().unwrap_or_else(|e| e.into_inner());
        if j > cache.len() {
            let len = (2 * j).max(64);
            *cache = self
                .value
                .binary_digits(len, self.expansion)
                .expect("range checked at construction");
        }
        cache[j - 1]
    }
}

impl Clone for DigitStream {
    fn clone(&self) -> Self {
        let cache = self.cache.read().unwrap_or_else(|e| e.into_inner()).clone();
        DigitStream {
            value: self.value.clone(),
            expansion: self.expansion,
            cache: RwLock::new(cache),
        }
    }
}

impl PartialEq for DigitStream {
    fn eq(&self, other: &Self) -> bool {
        self.value == other.value && self.expansion == other.expansion
    }
}

impl fmt::Debug for DigitStream {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DigitStream({}, {:?})", self.value, self.expansion)
    }
}

/// How two pairs of digit streams encode `eps_k` for `k >= 3`.
///
/// Odd `k = 2j+1` reads digit `j` of the alpha streams, even `k = 2j+2`
/// reads digit `j` of the beta streams.
#[derive(Clone, Debug, PartialEq)]
pub enum Bitstream {
    /// `eps_k = d+_k - d-_k`, values in {-1, 0, 1}.
    Signed {
        alpha_plus: DigitStream,
        alpha_minus: DigitStream,
        beta_plus: DigitStream,
        beta_minus: DigitStream,
    },
    /// `eps_k = 1 - 2 d_k`, values in {-1, 1}.
    Complement { alpha: DigitStream, beta: DigitStream },
}

/// Number of leading digits checked for `d+ d- = 0` at construction.
pub const SIGNED_DIGIT_CHECK: usize = 256;

impl Bitstream {
    pub fn signed(
        alpha_plus: ExactReal,
        alpha_minus: ExactReal,
        beta_plus: ExactReal,
        beta_minus: ExactReal,
        expansion: Expansion,
    ) -> Result<Self> {
        let s = Bitstream::Signed {
            alpha_plus: DigitStream::new(alpha_plus, expansion)?,
            alpha_minus: DigitStream::new(alpha_minus, expansion)?,
            beta_plus: DigitStream::new(beta_plus, expansion)?,
            beta_minus: DigitStream::new(beta_minus, expansion)?,
        };
        if let Bitstream::Signed { alpha_plus, alpha_minus, beta_plus, beta_minus } = &s {
            for (name, plus, minus) in [("alpha", alpha_plus, alpha_minus), ("beta", beta_plus, beta_minus)] {
                if let Some(j) = (1..=SIGNED_DIGIT_CHECK).find(|&j| plus.digit(j) == 1 && minus.digit(j) == 1) {
                    return Err(Error::InvalidSpec(format!(
                        "{name}+ and {name}- both set binary digit {j}"
                    )));
                }
            }
        }
        Ok(s)
    }

    pub fn complement(alpha: ExactReal, beta: ExactReal, expansion: Expansion) -> Result<Self> {
        Ok(Bitstream::Complement {
            alpha: DigitStream::new(alpha, expansion)?,
            beta: DigitStream::new(beta, expansion)?,
        })
    }

    pub fn expansion(&self) -> Expansion {
        match self {
            Bitstream::Signed { alpha_plus, .. } => alpha_plus.expansion(),
            Bitstream::Complement { alpha, .. } => alpha.expansion(),
        }
    }

    /// `eps_k` for `k >= 3`.
    pub fn epsilon(&self, k: u64) -> Epsilon {
        debug_assert!(k >= 3);
        let odd = k % 2 == 1;
        let j = if odd { (k - 1) / 2 } else { (k - 2) / 2 } as usize;
        match self {
            Bitstream::Signed { alpha_plus, alpha_minus, beta_plus, beta_minus } => {
                let (p, m) = if odd { (alpha_plus, alpha_minus) } else { (beta_plus, beta_minus) };
                Epsilon((p.digit(j) as i8) - (m.digit(j) as i8))
            }
            Bitstream::Complement { alpha, beta } => {
                let d = if odd { alpha.digit(j) } else { beta.digit(j) };
                Epsilon(1 - 2 * d as i8)
            }
        }
    }

    /// The effective `(alpha, beta)`: `sum_{k>=3} eps_k 2^(-k/2)` equals
    /// `alpha/sqrt2 + beta/2` for the signed encoding.
    pub fn effective_alpha_beta(&self) -> (ExactReal, ExactReal) {
        match self {
            Bitstream::Signed { alpha_plus, alpha_minus, beta_plus, beta_minus } => (
                alpha_plus.value().clone() - alpha_minus.value().clone(),
                beta_plus.value().clone() - beta_minus.value().clone(),
            ),
            Bitstream::Complement { alpha, beta } => (alpha.value().clone(), beta.value().clone()),
        }
    }

    /// `sum_{k>=3} eps_k 2^(-k/2)` in closed form.
    fn exact_sum_from_3(&self) -> ExactReal {
        let (alpha, beta) = self.effective_alpha_beta();
        let weighted = alpha * ExactReal::inv_sqrt2_pow(1) + beta * ExactReal::rational(1, 2);
        match self {
            Bitstream::Signed { .. } => weighted,
            // sum (1 - 2 d_k) q^k = q^3/(1-q) - 2 (alpha/sqrt2 + beta/2), q^3/(1-q) = (1+sqrt2)/2
            Bitstream::Complement { .. } => ExactReal::surd(1, 1, 2) - ExactReal::from_integer(2) * weighted,
        }
    }
}

/// How `eps_k` continues past the explicit prefix.
#[derive(Clone, Debug, PartialEq)]
pub enum TailRule {
    Constant(Epsilon),
    /// `eps_{m+1+i} = pattern[i mod len]`.
    Periodic(Vec<Epsilon>),
    /// Tanaka's truncation: `(-1)^k` for `k < r`, else 0.
    MuR(u64),
    Bitstream(Box<Bitstream>),
}

impl TailRule {
    fn epsilon(&self, k: u64, prefix_len: u64) -> Epsilon {
        match self {
            TailRule::Constant(e) => *e,
            TailRule::Periodic(pattern) => pattern[((k - prefix_len - 1) % pattern.len() as u64) as usize],
            TailRule::MuR(r) => {
                if k < *r {
                    Epsilon::alternating(k)
                } else {
                    Epsilon::ZERO
                }
            }
            TailRule::Bitstream(b) => b.epsilon(k),
        }
    }
}

/// A complete epsilon sequence, optionally labelled.
#[derive(Clone, Debug, PartialEq)]
pub struct EpsilonSpec {
    prefix: Vec<Epsilon>,
    tail: TailRule,
    name: Option<String>,
}

impl EpsilonSpec {
    pub fn new(prefix: Vec<Epsilon>, tail: TailRule, name: Option<String>) -> Result<Self> {
        if prefix.len() < 2 {
            return Err(Error::InvalidSpec("prefix must list at least eps_1 and eps_2".into()));
        }
        match &tail {
            TailRule::Periodic(p) if p.is_empty() => {
                return Err(Error::InvalidSpec("periodic tail needs a nonempty pattern".into()))
            }
            TailRule::MuR(0) => return Err(Error::InvalidSpec("mu_r tail needs r >= 1".into())),
            _ => {}
        }
        Ok(EpsilonSpec { prefix, tail, name })
    }

    pub fn prefix(&self) -> &[Epsilon] {
        &self.prefix
    }

    pub fn tail(&self) -> &TailRule {
        &self.tail
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    /// `eps_k`; `eps_0 = 1`.
    pub fn epsilon_at(&self, k: u64) -> Epsilon {
        if k == 0 {
            return Epsilon::PLUS;
        }
        let m = self.prefix.len() as u64;
        if k <= m {
            self.prefix[(k - 1) as usize]
        } else {
            self.tail.epsilon(k, m)
        }
    }

    pub fn eps1(&self) -> Epsilon {
        self.prefix[0]
    }

    pub fn eps2(&self) -> Epsilon {
        self.prefix[1]
    }

    /// `eps_0..=eps_max` as plain integers.
    pub fn table(&self, max: u64) -> Vec<i8> {
        (0..=max).map(|k| self.epsilon_at(k).get()).collect()
    }

    /// `f(n)` by factorization.
    pub fn eval(&self, n: u64) -> Result<i8> {
        let f = factorize(n)?;
        let mut v = 1i8;
        for k in f.exponents() {
            v *= self.epsilon_at(k as u64).get();
            if v == 0 {
                break;
            }
        }
        Ok(v)
    }

    /// `sum_{k >= from} eps_k 2^(-k/2)`, exactly, for `from > m`.
    pub(crate) fn exact_tail_sum(&self, from: u64) -> ExactReal {
        let m = self.prefix.len() as u64;
        debug_assert!(from > m);
        let q = ExactReal::inv_sqrt2_pow;
        let geometric = |len: u32| (ExactReal::one() - q(len)).recip().expect("q^len < 1");
        match &self.tail {
            TailRule::Constant(e) => ExactReal::from_integer(e.get() as i64) * q(from as u32) * geometric(1),
            TailRule::Periodic(pattern) => {
                let period: ExactReal = (0..pattern.len() as u64)
                    .map(|i| ExactReal::from_integer(self.epsilon_at(from + i).get() as i64) * q((from + i) as u32))
                    .sum();
                period * geometric(pattern.len() as u32)
            }
            TailRule::MuR(r) => {
                if *r <= from {
                    return ExactReal::zero();
                }
                // sum_{from <= k < r} (-q)^k = ((-q)^from - (-q)^r) / (1 + q)
                let signed = |k: u64| {
                    let v = q(k as u32);
                    if k.is_multiple_of(2) { v } else { -v }
                };
                (signed(from) - signed(*r)) * (ExactReal::one() + q(1)).recip().expect("1 + q > 0")
            }
            TailRule::Bitstream(b) => {
                let head: ExactReal = (3..from)
                    .map(|k| ExactReal::from_integer(b.epsilon(k).get() as i64) * q(k as u32))
                    .sum();
                b.exact_sum_from_3() - head
            }
        }
    }
}

impl EpsilonSpec {
    /// `sum_{k>=0} eps_k 2^(-k/2)` (with `eps_0 = 1`) in exact surd arithmetic.
    pub fn exact_series_at_two(&self) -> ExactReal {
        let m = self.prefix.len() as u64;
        let head: ExactReal = (0..=m)
            .map(|k| ExactReal::from_integer(self.epsilon_at(k).get() as i64) * ExactReal::inv_sqrt2_pow(k as u32))
            .sum();
        head + self.exact_tail_sum(m + 1)
    }
}

/// The named functions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Builtin {
    Mu,
    Lambda,
    Xi,
    MuSquared,
    One,
    MuR(u64),
    /// `f(p) = -1`, `f(p^k) = 1` otherwise: minimal apparent bias.
    FakeMin,
    /// `f(p^2) = 1`, `f(p^k) = -1` otherwise: maximal apparent bias.
    FakeMax,
    /// Indicator of the powerful integers: maximal persistent bias.
    PowerfulMax,
    /// `f(p) = 0`, `f(p^2) = 1`, `f(p^k) = -1` otherwise: minimal persistent bias.
    PowerfulMin,
    /// Zero apparent bias from `alpha = 1/sqrt2`, `beta = 1`.
    BitstreamExample,
}

impl Builtin {
    /// Every builtin, with `mu_r` instantiated at `r = 3`.
    pub const ALL: [Builtin; 11] = [
        Builtin::Mu,
        Builtin::Lambda,
        Builtin::Xi,
        Builtin::MuSquared,
        Builtin::One,
        Builtin::MuR(3),
        Builtin::FakeMin,
        Builtin::FakeMax,
        Builtin::PowerfulMax,
        Builtin::PowerfulMin,
        Builtin::BitstreamExample,
    ];

    pub fn parse(name: &str) -> Result<Self> {
        let b = match name {
            "mu" => Builtin::Mu,
            "lambda" => Builtin::Lambda,
            "xi" => Builtin::Xi,
            "mu_squared" => Builtin::MuSquared,
            "one" => Builtin::One,
            "fake_min" => Builtin::FakeMin,
            "fake_max" => Builtin::FakeMax,
            "fake_Max" => Builtin::PowerfulMax,
            "fake_Min" => Builtin::PowerfulMin,
            "bitstream_example" => Builtin::BitstreamExample,
            other => {
                let r = other
                    .strip_prefix("mu_r(")
                    .and_then(|s| s.strip_suffix(')'))
                    .or_else(|| other.strip_prefix("mu_r:"))
                    .ok_or_else(|| Error::UnknownBuiltin(other.into()))?;
                let r: u64 = r.trim().parse().map_err(|_| Error::UnknownBuiltin(other.into()))?;
                if r == 0 {
                    return Err(Error::InvalidSpec("mu_r needs r >= 1".into()));
                }
                Builtin::MuR(r)
            }
        };
        Ok(b)
    }

    pub fn name(&self) -> String {
        match self {
            Builtin::Mu => "mu".into(),
            Builtin::Lambda => "lambda".into(),
            Builtin::Xi => "xi".into(),
            Builtin::MuSquared => "mu_squared".into(),
            Builtin::One => "one".into(),
            Builtin::MuR(r) => format!("mu_r({r})"),
            Builtin::FakeMin => "fake_min".into(),
            Builtin::FakeMax => "fake_max".into(),
            Builtin::PowerfulMax => "fake_Max".into(),
            Builtin::PowerfulMin => "fake_Min".into(),
            Builtin::BitstreamExample => "bitstream_example".into(),
        }
    }

    pub fn spec(&self) -> EpsilonSpec {
        use Epsilon as E;
        let simple = |e1: E, e2: E, tail: TailRule| {
            EpsilonSpec::new(vec![e1, e2], tail, Some(self.name())).expect("builtin is valid")
        };
        match *self {
            Builtin::Mu => simple(E::MINUS, E::ZERO, TailRule::Constant(E::ZERO)),
            Builtin::Lambda => simple(E::MINUS, E::PLUS, TailRule::Periodic(vec![E::MINUS, E::PLUS])),
            Builtin::Xi => simple(E::MINUS, E::MINUS, TailRule::Constant(E::MINUS)),
            Builtin::MuSquared => simple(E::PLUS, E::ZERO, TailRule::Constant(E::ZERO)),
            Builtin::One => simple(E::PLUS, E::PLUS, TailRule::Constant(E::PLUS)),
            Builtin::MuR(r) => {
                let at = |k: u64| if k < r { Epsilon::alternating(k) } else { E::ZERO };
                simple(at(1), at(2), TailRule::MuR(r))
            }
            Builtin::FakeMin => simple(E::MINUS, E::PLUS, TailRule::Constant(E::PLUS)),
            Builtin::FakeMax => simple(E::MINUS, E::PLUS, TailRule::Constant(E::MINUS)),
            Builtin::PowerfulMax => simple(E::ZERO, E::PLUS, TailRule::Constant(E::PLUS)),
            Builtin::PowerfulMin => simple(E::ZERO, E::PLUS, TailRule::Constant(E::MINUS)),
            Builtin::BitstreamExample => {
                let b = Bitstream::complement(ExactReal::surd(0, 1, 2), ExactReal::one(), Expansion::Terminating)
                    .expect("1/sqrt2 and 1 lie in [0, 1]");
                simple(E::MINUS, E::PLUS, TailRule::Bitstream(Box::new(b)))
            }
        }
    }
}

/// Looks up a builtin by name, e.g. `lambda`, `fake_Max`, `mu_r(3)`.
pub fn builtin(name: &str) -> Result<EpsilonSpec> {
    Ok(Builtin::parse(name)?.spec())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{factorize, is_prime};

    fn eps(spec: &EpsilonSpec, k: u64) -> i8 {
        spec.epsilon_at(k).get()
    }

    #[test]
    fn mu_r_values() {
        let mu3 = builtin("mu_r(3)").unwrap();
        assert_eq!([eps(&mu3, 1), eps(&mu3, 2), eps(&mu3, 3), eps(&mu3, 4)], [-1, 1, 0, 0]);
        let mu1 = builtin("mu_r:1").unwrap();
        assert_eq!([eps(&mu1, 1), eps(&mu1, 2), eps(&mu1, 3)], [0, 0, 0]);
        assert!(builtin("mu_r(0)").is_err());
    }

    #[test]
    fn eps_zero_is_one() {
        for b in Builtin::ALL {
            assert_eq!(eps(&b.spec(), 0), 1);
        }
    }

    #[test]
    fn bitstream_example_odd_digits() {
        let s = builtin("bitstream_example").unwrap();
        let odd: Vec<i8> = [3, 5, 7, 9, 11].iter().map(|&k| eps(&s, k)).collect();
        assert_eq!(odd, vec![-1, 1, -1, -1, 1]);
        // beta = 1: every even digit is set, so eps_{2j} = -1 for j >= 2
        assert!((2..50).all(|j| eps(&s, 2 * j) == -1));
    }

    #[test]
    fn eval_examples() {
        assert_eq!(builtin("fake_min").unwrap().eval(12).unwrap(), -1);
        assert_eq!(builtin("lambda").unwrap().eval(8).unwrap(), -1);
        assert_eq!(builtin("mu").unwrap().eval(4).unwrap(), 0);
        assert_eq!(builtin("xi").unwrap().eval(4).unwrap(), -1);
        assert!(builtin("mu").unwrap().eval(0).is_err());
    }

    #[test]
    fn unknown_builtin() {
        assert!(matches!(builtin("mertens"), Err(Error::UnknownBuiltin(_))));
        // names are case sensitive: fake_max and fake_Max differ
        assert_ne!(builtin("fake_max").unwrap().eps1(), builtin("fake_Max").unwrap().eps1());
    }

    #[test]
    fn powerful_indicator() {
        let s = builtin("fake_Max").unwrap();
        for n in 1..2000u64 {
            let powerful = factorize(n).unwrap().exponents().all(|k| k >= 2);
            assert_eq!(s.eval(n).unwrap() == 1, powerful, "n = {n}");
            assert!(s.eval(n).unwrap() >= 0);
        }
    }

    #[test]
    fn lambda_is_parity_of_big_omega() {
        let s = builtin("lambda").unwrap();
        for n in 1..=100u64 {
            let omega = factorize(n).unwrap().big_omega();
            assert_eq!(s.eval(n).unwrap(), if omega.is_multiple_of(2) { 1 } else { -1 });
        }
    }

    #[test]
    fn fake_min_is_mu_of_squarefree_part() {
        // f_min(n) = mu(n_(1)), n_(1) the product of primes dividing n exactly once.
        let s = builtin("fake_min").unwrap();
        let mu = builtin("mu").unwrap();
        for n in 1..=1000u64 {
            let n1: u64 = factorize(n).unwrap().pairs().iter().filter(|&&(_, k)| k == 1).map(|&(p, _)| p).product();
            assert_eq!(s.eval(n).unwrap(), mu.eval(n1).unwrap(), "n = {n}");
        }
    }

    #[test]
    fn mu_r2_is_mu() {
        let mu = builtin("mu").unwrap();
        let mu2 = builtin("mu_r(2)").unwrap();
        for n in 1..=100_000u64 {
            assert_eq!(mu.eval(n).unwrap(), mu2.eval(n).unwrap());
        }
    }

    #[test]
    fn invalid_specs() {
        assert!(EpsilonSpec::new(vec![Epsilon::MINUS], TailRule::Constant(Epsilon::ZERO), None).is_err());
        assert!(EpsilonSpec::new(vec![Epsilon::MINUS, Epsilon::PLUS], TailRule::Periodic(vec![]), None).is_err());
        assert!(EpsilonSpec::new(vec![Epsilon::MINUS, Epsilon::PLUS], TailRule::MuR(0), None).is_err());
        assert!(Epsilon::new(2).is_err());
    }

    #[test]
    fn signed_digits_must_be_disjoint() {
        let half = ExactReal::rational(1, 2);
        let three_quarters = ExactReal::rational(3, 4);
        let err = Bitstream::signed(half.clone(), three_quarters, ExactReal::zero(), ExactReal::zero(), Expansion::Terminating);
        assert!(err.is_err());
        let ok = Bitstream::signed(half, ExactReal::rational(1, 4), ExactReal::zero(), ExactReal::zero(), Expansion::Terminating);
        assert!(ok.is_ok());
    }

    #[test]
    fn periodic_tail_is_relative_to_prefix() {
        let s = EpsilonSpec::new(
            vec![Epsilon::MINUS, Epsilon::PLUS, Epsilon::ZERO],
            TailRule::Periodic(vec![Epsilon::PLUS, Epsilon::MINUS, Epsilon::ZERO]),
            None,
        )
        .unwrap();
        let got: Vec<i8> = (1..=9).map(|k| eps(&s, k)).collect();
        assert_eq!(got, vec![-1, 1, 0, 1, -1, 0, 1, -1, 0]);
    }

    #[test]
    fn digit_cache_is_consistent_when_grown() {
        let s = builtin("bitstream_example").unwrap();
        let early: Vec<i8> = (3..40).map(|k| eps(&s, k)).collect();
        let _ = eps(&s, 5000); // forces a much longer fill
        let again: Vec<i8> = (3..40).map(|k| eps(&s, k)).collect();
        assert_eq!(early, again);
        let fresh = builtin("bitstream_example").unwrap();
        assert_eq!(eps(&fresh, 5000), eps(&s, 5000));
    }

    #[test]
    fn multiplicative_on_small_coprime_pairs() {
        for b in Builtin::ALL {
            let s = b.spec();
            for m in 1..60u64 {
                for n in 1..60u64 {
                    if num_integer::gcd(m, n) == 1 {
                        assert_eq!(s.eval(m * n).unwrap(), s.eval(m).unwrap() * s.eval(n).unwrap(), "{} {m} {n}", b.name());
                    }
                }
            }
            for p in (2..200u64).filter(|&p| is_prime(p)) {
                assert_eq!(s.eval(p).unwrap(), eps(&s, 1));
            }
        }
    }
}
