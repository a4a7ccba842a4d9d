//! Fake Möbius functions: multiplicative `f` with `f(p^k) = eps_k` for every
//! prime `p`, and the bias of their summatory functions at the `sqrt(x)` scale.

pub mod arith;
pub mod classify;
pub mod document;
pub mod empirics;
pub mod error;
pub mod euler;
pub mod exact;
pub mod numeric;
pub mod sieve;
pub mod spec;
pub mod zeta;

pub use classify::{
    classify, construct_zero_bias, gamma_2, is_zero_bias, linear_coefficient, BiasClassification, Verdict,
    ZeroBiasParams, ZeroBiasVerdict,
};
pub use document::SpecDocument;
pub use empirics::{export_figure_data, validate, CheckKind, Tolerances, ValidationVerdict};
pub use error::{Error, Result};
pub use euler::{accelerated_product, extremal_constants, tanaka_bias, AccelerationPlan, ProductCase};
pub use exact::{ExactReal, Expansion};
pub use numeric::ApproxReal;
pub use sieve::{brute_summatory, sieve_summatory, sieve_summatory_with, Checkpoint, SieveConfig, SieveReport};
pub use spec::{builtin, Builtin, Epsilon, EpsilonSpec, TailRule};
