//! Euler products over all primes with convergence acceleration.
//!
//! Each product is `prod_p F(p^{-1/2})` for a power series
//! `F(x) = 1 + sum_{k>=3} f_k x^k` whose coefficients depend only on the
//! epsilon sequence. Primes up to a bound `P` are multiplied directly. Beyond
//! `P` the product is rewritten as `prod_j zeta(j/2)^{a_j}` times a residual
//! product whose local factors are `1 + O(p^{-(J+1)/2})`; the exponents `a_j`
//! come from matching the log series of `F` against `sum_j a_j log(1 - x^j)`.
//!
//! The factor at `p = 2` can vanish or change sign, so it is always kept
//! outside the logarithms and multiplied in at the end.

use crate::arith::{is_prime, primes_up_to};
use crate::error::{Error, Result};
use crate::exact::ExactReal;
use crate::numeric::{ApproxReal, CompensatedSum, UNIT_ROUNDOFF};
use crate::spec::{Builtin, EpsilonSpec};
use crate::zeta::zeta;

/// Which local factor is being multiplied.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ProductCase {
    /// `C_p(1/2) = 1 + sum_{k>=3} (eps_{k-1} + eps_k) p^{-k/2}`, for `(eps1, eps2) = (-1, 1)`.
    Apparent,
    /// `Q_p = 1 + (1 - 1/p) sum_{k>=3} eps_k p^{-k/2} - p^{-2}`, for `(eps1, eps2) = (0, 1)`.
    Persistent,
    /// `(1 - 1/p) sum_k eps_k p^{-k}`, for `eps1 = 1`; the product is the linear coefficient.
    Linear,
}

impl ProductCase {
    fn check(self, spec: &EpsilonSpec) -> Result<()> {
        let (e1, e2) = (spec.eps1().get(), spec.eps2().get());
        let (ok, expected) = match self {
            ProductCase::Apparent => ((e1, e2) == (-1, 1), "(-1, 1)"),
            ProductCase::Persistent => ((e1, e2) == (0, 1), "(0, 1)"),
            ProductCase::Linear => (e1 == 1, "(1, *)"),
        };
        if ok {
            Ok(())
        } else {
            Err(Error::WrongCase { expected, eps1: e1, eps2: e2 })
        }
    }

    /// Coefficients `f_0..=f_len` of the local factor as a series in `x = p^{-1/2}`.
    fn coefficients(self, spec: &EpsilonSpec, len: usize) -> Vec<f64> {
        let eps = |k: usize| spec.epsilon_at(k as u64).get() as f64;
        (0..=len)
            .map(|k| match (k, self) {
                (0, _) => 1.0,
                (1 | 2, _) => 0.0,
                (_, ProductCase::Apparent) => eps(k - 1) + eps(k),
                (_, ProductCase::Persistent) => eps(k) - eps(k - 2),
                (_, ProductCase::Linear) if k % 2 == 0 => eps(k / 2) - eps(k / 2 - 1),
                (_, ProductCase::Linear) => 0.0,
            })
            .collect()
    }
}

/// Parameters of the accelerated product.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AccelerationPlan {
    /// Cancellation order `J`: residual factors are `1 + O(p^{-(J+1)/2})`.
    pub order: usize,
    /// Primes `p <= prime_bound` are multiplied directly.
    pub prime_bound: u64,
    /// Series terms kept for the local factor at `p = 2`; larger primes use
    /// as many as their own accuracy needs, never more than this.
    pub terms: usize,
}

impl Default for AccelerationPlan {
    fn default() -> Self {
        AccelerationPlan { order: 9, prime_bound: 100_000, terms: 200 }
    }
}

impl AccelerationPlan {
    pub fn new(order: usize, prime_bound: u64) -> Self {
        AccelerationPlan { order, prime_bound, ..Default::default() }
    }

    fn validate(&self) -> Result<()> {
        if self.order < 3 {
            return Err(Error::Domain("acceleration order must be >= 3".into()));
        }
        if self.prime_bound < 100 {
            return Err(Error::Domain("prime bound must be >= 100".into()));
        }
        if self.terms < 3 {
            return Err(Error::Domain("need at least 3 series terms".into()));
        }
        Ok(())
    }
}

/// `F(p^{-1/2}) - 1` truncated after `terms` powers, with its error bound.
fn local_excess(coeffs: &[f64], p: u64, terms: usize) -> (f64, f64) {
    let pf = p as f64;
    let x = pf.powf(-0.5);
    let mut sum = CompensatedSum::new();
    for (k, &f) in coeffs.iter().enumerate().take(terms + 1).skip(3) {
        if f != 0.0 {
            sum.add(f * pf.powf(-(k as f64) / 2.0));
        }
    }
    // every |f_k| <= 2; the 4 leaves room for the rounding of x itself
    let tail = 4.0 * pf.powf(-((terms + 1) as f64) / 2.0) / (1.0 - x);
    (sum.value(), tail + sum.rounding_bound())
}

fn local_factor(spec: &EpsilonSpec, case: ProductCase, p: u64, terms: usize) -> Result<ApproxReal> {
    case.check(spec)?;
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if terms < 3 {
        return Err(Error::Domain("need at least 3 series terms".into()));
    }
    let coeffs = case.coefficients(spec, terms);
    let (excess, err) = local_excess(&coeffs, p, terms);
    Ok(ApproxReal::new(1.0 + excess, err + UNIT_ROUNDOFF))
}

/// `C_p(1/2)` truncated after `terms` powers of `p^{-1/2}`.
pub fn local_factor_c(spec: &EpsilonSpec, p: u64, terms: usize) -> Result<ApproxReal> {
    local_factor(spec, ProductCase::Apparent, p, terms)
}

/// `Q_p` truncated after `terms` powers of `p^{-1/2}`.
pub fn local_factor_q(spec: &EpsilonSpec, p: u64, terms: usize) -> Result<ApproxReal> {
    local_factor(spec, ProductCase::Persistent, p, terms)
}

/// `(1 - 1/p) (1 + sum_k eps_k p^{-k})`, truncated after `terms` powers of `p^{-1/2}`.
pub fn local_factor_linear(spec: &EpsilonSpec, p: u64, terms: usize) -> Result<ApproxReal> {
    local_factor(spec, ProductCase::Linear, p, terms)
}

/// Log-series coefficients `c_1..=c_n` of `F`, from `n c_n = n f_n - sum_{k<n} k c_k f_{n-k}`.
fn log_coefficients(f: &[f64], n: usize) -> Vec<f64> {
    let mut c = vec![0.0; n + 1];
    for m in 1..=n {
        let mut acc = m as f64 * f[m];
        for k in 1..m {
            acc -= k as f64 * c[k] * f[m - k];
        }
        c[m] = acc / m as f64;
    }
    c
}

/// Exponents `a_1..=a_order` with `log F + sum_j a_j log(1 - x^j) = O(x^{order+1})`.
fn acceleration_exponents(c: &[f64], order: usize) -> Vec<f64> {
    let mut a = vec![0.0; order + 1];
    for n in 1..=order {
        let mut acc = c[n];
        for d in (1..n).filter(|d| n % d == 0) {
            acc -= a[d] * d as f64 / n as f64;
        }
        a[n] = acc;
    }
    a
}

/// Bound on `sum_{p > P} |log R_p|` for the residual factors `R_p`.
fn prime_tail_bound(c: &[f64], a: &[f64], order: usize, prime_bound: u64) -> f64 {
    let last = c.len() - 1;
    let pb = prime_bound as f64;
    // sum_{p > P} p^{-n/2} <= int_P^inf t^{-n/2} dt
    let prime_sum = |n: usize| pb.powf(1.0 - n as f64 / 2.0) / (n as f64 / 2.0 - 1.0);
    let mut bound = 0.0;
    for n in order + 1..=last {
        let mut r = c[n];
        for d in (1..=order).filter(|d| n % d == 0) {
            r -= a[d] * d as f64 / n as f64;
        }
        bound += r.abs() * 1.0000001 * prime_sum(n);
    }
    // Beyond the computed coefficients: |F - 1| <= 1/24 on |x| = 1/4, so by
    // Cauchy |c_n| <= -log(1 - 1/24) 4^n, and the correction contributes at
    // most sum |a_j| per coefficient.
    let log_bound = -(1.0f64 - 1.0 / 24.0).ln();
    let a_total: f64 = a.iter().map(|v| v.abs()).sum();
    let rho = 4.0 / pb.sqrt();
    let sigma = 1.0 / pb.sqrt();
    let n0 = (last + 1) as i32;
    let denom = n0 as f64 / 2.0 - 1.0;
    bound += pb * (log_bound * rho.powi(n0) / (1.0 - rho) + a_total * sigma.powi(n0) / (1.0 - sigma)) / denom;
    bound
}

/// Primes per block in the direct part; fixed so the reduction order never
/// depends on the number of worker threads.
const PRIME_BLOCK: usize = 512;

#[derive(Clone, Copy, Default)]
struct BlockSum {
    logs: CompensatedSum,
    /// Error in the log sum from truncating each local factor.
    truncation: f64,
    /// Smallest local factor seen, for the positivity check.
    min_factor: (f64, u64),
}

fn direct_block(primes: &[u64], coeffs: &[f64], a: &[f64], terms: usize) -> BlockSum {
    let mut block = BlockSum { min_factor: (f64::INFINITY, 0), ..Default::default() };
    for &p in primes {
        let pf = p as f64;
        let x = pf.powf(-0.5);
        for (j, &aj) in a.iter().enumerate().skip(1) {
            if aj != 0.0 {
                block.logs.add(aj * (-x.powi(j as i32)).ln_1p());
            }
        }
        if p == 2 {
            continue;
        }
        // enough terms for a truncation error below 1e-22
        let needed = ((1e-22 * (1.0 - x) / 4.0).ln() / x.ln()).ceil() as usize;
        let (excess, err) = local_excess(coeffs, p, needed.clamp(3, terms));
        let factor = 1.0 + excess;
        if factor < block.min_factor.0 {
            block.min_factor = (factor, p);
        }
        if factor - err > 0.0 {
            block.logs.add(excess.ln_1p());
            block.truncation += err / (factor - err) + UNIT_ROUNDOFF;
        }
    }
    block
}

#[cfg(feature = "parallel")]
fn direct_blocks(primes: &[u64], coeffs: &[f64], a: &[f64], terms: usize) -> Vec<BlockSum> {
    use rayon::prelude::*;
    primes.par_chunks(PRIME_BLOCK).map(|chunk| direct_block(chunk, coeffs, a, terms)).collect()
}

#[cfg(not(feature = "parallel"))]
fn direct_blocks(primes: &[u64], coeffs: &[f64], a: &[f64], terms: usize) -> Vec<BlockSum> {
    primes.chunks(PRIME_BLOCK).map(|chunk| direct_block(chunk, coeffs, a, terms)).collect()
}

/// The factor at `p = 2`. `C_2 = (1 + 2^{-1/2}) T_2` and `Q_2 = T_2 / 2` are
/// evaluated exactly, so a vanishing factor comes out as exactly zero.
fn two_factor(spec: &EpsilonSpec, case: ProductCase, coeffs: &[f64], terms: usize) -> ApproxReal {
    let exact = match case {
        ProductCase::Apparent => spec.exact_series_at_two() * ExactReal::surd(2, 1, 2),
        ProductCase::Persistent => spec.exact_series_at_two() * ExactReal::rational(1, 2),
        ProductCase::Linear => {
            let (excess, err) = local_excess(coeffs, 2, terms);
            return ApproxReal::new(1.0 + excess, err + UNIT_ROUNDOFF);
        }
    };
    let value = exact.to_f64();
    ApproxReal::new(value, 4.0 * UNIT_ROUNDOFF * value.abs())
}

/// `prod_p F_p` over all primes with a rigorous error bound.
pub fn accelerated_product(spec: &EpsilonSpec, case: ProductCase, plan: &AccelerationPlan) -> Result<ApproxReal> {
    case.check(spec)?;
    plan.validate()?;
    let order = plan.order;
    let series_len = (order + 64).max(plan.terms);
    let coeffs = case.coefficients(spec, series_len);
    let c = log_coefficients(&coeffs, order + 64);
    let a = acceleration_exponents(&c, order);
    debug_assert!(a[1] == 0.0 && a[2] == 0.0);

    let primes = primes_up_to(plan.prime_bound);
    let mut logs = CompensatedSum::new();
    let mut log_err = 0.0;
    for (j, &aj) in a.iter().enumerate().skip(3) {
        if aj != 0.0 {
            let z = zeta(j as f64 / 2.0)?;
            logs.add(aj * z.value.ln());
            log_err += aj.abs() * z.err_bound / (z.value - z.err_bound);
        }
    }
    for block in direct_blocks(&primes, &coeffs, &a, plan.terms) {
        if block.min_factor.0 <= 0.0 {
            return Err(Error::Divergent { prime: block.min_factor.1, value: block.min_factor.0 });
        }
        logs.merge(&block.logs);
        log_err += block.truncation;
    }
    log_err += 2.0 * logs.rounding_bound();
    log_err += prime_tail_bound(&c, &a, order, plan.prime_bound);

    let two = two_factor(spec, case, &coeffs, plan.terms);
    let scale = logs.value().exp();
    let value = two.value * scale;
    let err = two.value.abs() * scale * log_err.exp_m1()
        + two.err_bound * scale * log_err.exp()
        + 4.0 * UNIT_ROUNDOFF * value.abs();
    Ok(ApproxReal::new(value, err))
}

/// `U(1/2) / zeta(1/2)` for `(eps1, eps2) = (-1, 1)`.
pub fn apparent_bias(spec: &EpsilonSpec, plan: &AccelerationPlan) -> Result<ApproxReal> {
    let u = accelerated_product(spec, ProductCase::Apparent, plan)?;
    Ok(u.div(&zeta(0.5)?))
}

/// `prod_p Q_p` for `(eps1, eps2) = (0, 1)`.
pub fn persistent_bias(spec: &EpsilonSpec, plan: &AccelerationPlan) -> Result<ApproxReal> {
    accelerated_product(spec, ProductCase::Persistent, plan)
}

/// Apparent bias of the summatory function of `mu_r`, from its closed form:
/// `zeta(r/2) / (zeta(1/2) zeta(r))` for odd `r`, `1 / (zeta(1/2) zeta(r/2))` for even `r`.
pub fn tanaka_bias(r: u64) -> Result<ApproxReal> {
    if r < 3 {
        return Err(Error::Domain(format!("tanaka_bias needs r >= 3, got {r}")));
    }
    let half = zeta(0.5)?;
    let zr2 = zeta(r as f64 / 2.0)?;
    if r % 2 == 1 {
        let zr = zeta(r as f64)?;
        Ok(zr2.div(&half.mul(&zr)))
    } else {
        Ok(half.mul(&zr2).recip())
    }
}

/// The endpoints of the apparent-bias interval `[A1, B1]` and the
/// persistent-bias interval `[A2, B2]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ExtremalConstants {
    pub a1: ApproxReal,
    pub b1: ApproxReal,
    pub a2: ApproxReal,
    pub b2: ApproxReal,
}

pub fn extremal_constants() -> Result<ExtremalConstants> {
    extremal_constants_with(&AccelerationPlan::default())
}

pub fn extremal_constants_with(plan: &AccelerationPlan) -> Result<ExtremalConstants> {
    Ok(ExtremalConstants {
        a1: apparent_bias(&Builtin::FakeMin.spec(), plan)?,
        b1: apparent_bias(&Builtin::FakeMax.spec(), plan)?,
        a2: persistent_bias(&Builtin::PowerfulMin.spec(), plan)?,
        b2: persistent_bias(&Builtin::PowerfulMax.spec(), plan)?,
    })
}
