//! Bias classification from `(eps1, eps2)`, and zero-bias constructions.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::euler::{accelerated_product, AccelerationPlan, ProductCase};
use crate::exact::{ExactReal, Expansion};
use crate::numeric::{ApproxReal, CompensatedSum, UNIT_ROUNDOFF};
use crate::spec::{Bitstream, Epsilon, EpsilonSpec, TailRule};
use crate::zeta::zeta;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Verdict {
    NoBias,
    ApparentBias,
    PersistentBias,
}

impl Verdict {
    /// The verdict is a function of `(eps1, eps2)` alone.
    pub fn of(eps1: Epsilon, eps2: Epsilon) -> Verdict {
        match (eps1.get(), eps2.get()) {
            (-1, 1) => Verdict::ApparentBias,
            (0, 1) => Verdict::PersistentBias,
            _ => Verdict::NoBias,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Verdict::NoBias => "NoBias",
            Verdict::ApparentBias => "ApparentBias",
            Verdict::PersistentBias => "PersistentBias",
        }
    }
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BiasClassification {
    pub verdict: Verdict,
    /// Linear coefficient: `F(x) ~ a x`.
    pub a: ApproxReal,
    /// Bias of `(F(x) - a x)/sqrt(x)`; exactly zero for `NoBias`.
    pub b: ApproxReal,
    /// Identity of the classified spec.
    pub spec_id: String,
}

pub fn classify(spec: &EpsilonSpec) -> Result<BiasClassification> {
    classify_with(spec, &AccelerationPlan::default())
}

pub fn classify_with(spec: &EpsilonSpec, plan: &AccelerationPlan) -> Result<BiasClassification> {
    let verdict = Verdict::of(spec.eps1(), spec.eps2());
    let b = match verdict {
        Verdict::NoBias => ApproxReal::zero(),
        Verdict::ApparentBias => accelerated_product(spec, ProductCase::Apparent, plan)?.div(&zeta(0.5)?),
        Verdict::PersistentBias => accelerated_product(spec, ProductCase::Persistent, plan)?,
    };
    Ok(BiasClassification { verdict, a: linear_coefficient_with(spec, plan)?, b, spec_id: spec.identity() })
}

/// `lim F(x)/x`; exactly zero unless `eps1 = 1`.
pub fn linear_coefficient(spec: &EpsilonSpec) -> Result<ApproxReal> {
    linear_coefficient_with(spec, &AccelerationPlan::default())
}

pub fn linear_coefficient_with(spec: &EpsilonSpec, plan: &AccelerationPlan) -> Result<ApproxReal> {
    if spec.eps1() != Epsilon::PLUS {
        return Ok(ApproxReal::zero());
    }
    accelerated_product(spec, ProductCase::Linear, plan)
}

/// Parameters of a zero-bias tail.
///
/// Unsigned: `eps_k = 1 - 2 d_k` with `alpha, beta in [0, 1]` and
/// `alpha sqrt2 + beta = 2`. Signed: `eps_k = d+_k - d-_k` with
/// `alpha = alpha+ - alpha-`, `beta = beta+ - beta-` in `[-1, 1]` and
/// `2 alpha + sqrt2 beta = 2 - 3 sqrt2`.
#[derive(Clone, Debug, PartialEq)]
pub struct ZeroBiasParams {
    pub alpha: SignedReal,
    pub beta: SignedReal,
    pub signed: bool,
    pub expansion: Expansion,
}

/// A real given either directly or as a difference of two reals in `[0, 1]`.
#[derive(Clone, Debug, PartialEq)]
pub enum SignedReal {
    Value(ExactReal),
    Difference { plus: ExactReal, minus: ExactReal },
}

impl SignedReal {
    pub fn value(&self) -> ExactReal {
        match self {
            SignedReal::Value(v) => v.clone(),
            SignedReal::Difference { plus, minus } => plus.clone() - minus.clone(),
        }
    }

    /// `(plus, minus)` digit sources. A plain value is split by sign.
    fn sources(&self) -> (ExactReal, ExactReal) {
        match self {
            SignedReal::Difference { plus, minus } => (plus.clone(), minus.clone()),
            SignedReal::Value(v) if v.signum() == Ordering::Less => (ExactReal::zero(), -v.clone()),
            SignedReal::Value(v) => (v.clone(), ExactReal::zero()),
        }
    }
}

impl ZeroBiasParams {
    pub fn unsigned(alpha: ExactReal, beta: ExactReal) -> Self {
        ZeroBiasParams {
            alpha: SignedReal::Value(alpha),
            beta: SignedReal::Value(beta),
            signed: false,
            expansion: Expansion::Terminating,
        }
    }

    pub fn signed(alpha: ExactReal, beta: ExactReal) -> Self {
        ZeroBiasParams { signed: true, ..Self::unsigned(alpha, beta) }
    }

    pub fn from_differences(
        alpha_plus: ExactReal,
        alpha_minus: ExactReal,
        beta_plus: ExactReal,
        beta_minus: ExactReal,
    ) -> Self {
        ZeroBiasParams {
            alpha: SignedReal::Difference { plus: alpha_plus, minus: alpha_minus },
            beta: SignedReal::Difference { plus: beta_plus, minus: beta_minus },
            signed: true,
            expansion: Expansion::Terminating,
        }
    }

    pub fn with_expansion(mut self, expansion: Expansion) -> Self {
        self.expansion = expansion;
        self
    }

    fn check(&self) -> Result<()> {
        let (alpha, beta) = (self.alpha.value(), self.beta.value());
        let reject = |msg: String| Err(Error::ZeroBiasConstraint(msg));
        let lo = if self.signed { ExactReal::from_integer(-1) } else { ExactReal::zero() };
        for (name, v) in [("alpha", &alpha), ("beta", &beta)] {
            if *v < lo || *v > ExactReal::one() {
                return reject(format!("{name} = {v} is outside [{lo}, 1]"));
            }
        }
        let (lhs, rhs) = if self.signed {
            (ExactReal::from_integer(2) * alpha + ExactReal::sqrt2() * beta, ExactReal::surd(2, -3, 1))
        } else {
            (ExactReal::sqrt2() * alpha + beta, ExactReal::from_integer(2))
        };
        if lhs != rhs {
            let form = if self.signed { "2 alpha + sqrt2 beta" } else { "alpha sqrt2 + beta" };
            return reject(format!("{form} = {lhs}, need {rhs}"));
        }
        Ok(())
    }
}

/// The spec with `eps1 = -1`, `eps2 = 1` and tail digits read from `alpha`
/// (odd `k`) and `beta` (even `k`).
pub fn construct_zero_bias(params: &ZeroBiasParams) -> Result<EpsilonSpec> {
    params.check()?;
    let bitstream = if params.signed {
        let (ap, am) = params.alpha.sources();
        let (bp, bm) = params.beta.sources();
        Bitstream::signed(ap, am, bp, bm, params.expansion)?
    } else {
        Bitstream::complement(params.alpha.value(), params.beta.value(), params.expansion)?
    };
    EpsilonSpec::new(vec![Epsilon::MINUS, Epsilon::PLUS], TailRule::Bitstream(Box::new(bitstream)), None)
}

/// Default number of series terms for `gamma_2`.
pub const GAMMA_TERMS: usize = 400;

fn require_apparent(spec: &EpsilonSpec) -> Result<()> {
    if Verdict::of(spec.eps1(), spec.eps2()) == Verdict::ApparentBias {
        Ok(())
    } else {
        Err(Error::WrongCase { expected: "(-1, 1)", eps1: spec.eps1().get(), eps2: spec.eps2().get() })
    }
}

/// `gamma_2 = sum_{k=0}^{terms} eps_k 2^{-k/2}`, the factor at 2 of the
/// Dirichlet series at `s = 1/2`. The partial sum is formed exactly, so the
/// error bound is the tail bound plus one rounding.
pub fn gamma_2(spec: &EpsilonSpec, terms: usize) -> Result<ApproxReal> {
    require_apparent(spec)?;
    if terms < 3 {
        return Err(Error::Domain("gamma_2 needs at least 3 terms".into()));
    }
    let partial: ExactReal = (0..=terms as u64)
        .filter(|&k| spec.epsilon_at(k) != Epsilon::ZERO)
        .map(|k| ExactReal::from_integer(spec.epsilon_at(k).get() as i64) * ExactReal::inv_sqrt2_pow(k as u32))
        .sum();
    let value = partial.to_f64();
    let q = std::f64::consts::FRAC_1_SQRT_2;
    let tail = 2.0 * 2f64.powf(-(terms as f64) / 2.0) / (1.0 - q);
    Ok(ApproxReal::new(value, tail + 4.0 * UNIT_ROUNDOFF * value.abs()))
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ZeroBiasVerdict {
    Zero,
    /// Sign of `gamma_2`; the bias itself has the opposite sign, since `zeta(1/2) < 0`.
    Nonzero(Ordering),
    /// The interval for `gamma_2` contains zero; carries its half-width.
    Undetermined(f64),
}

/// Exact test of `gamma_2 = 0` in surd arithmetic.
pub fn is_zero_bias(spec: &EpsilonSpec) -> Result<ZeroBiasVerdict> {
    require_apparent(spec)?;
    Ok(match spec.exact_series_at_two().signum() {
        Ordering::Equal => ZeroBiasVerdict::Zero,
        sign => ZeroBiasVerdict::Nonzero(sign),
    })
}

/// Interval version of [`is_zero_bias`]; never claims `Zero`.
pub fn is_zero_bias_numeric(spec: &EpsilonSpec, terms: usize) -> Result<ZeroBiasVerdict> {
    let g = gamma_2(spec, terms)?;
    Ok(if g.lo() > 0.0 {
        ZeroBiasVerdict::Nonzero(Ordering::Greater)
    } else if g.hi() < 0.0 {
        ZeroBiasVerdict::Nonzero(Ordering::Less)
    } else {
        ZeroBiasVerdict::Undetermined(g.err_bound)
    })
}

/// `gamma_2` summed in binary64, for comparison with the exact value.
pub fn gamma_2_float(spec: &EpsilonSpec, terms: usize) -> f64 {
    (0..=terms as u64)
        .map(|k| spec.epsilon_at(k).get() as f64 * 2f64.powf(-(k as f64) / 2.0))
        .collect::<CompensatedSum>()
        .value()
}
