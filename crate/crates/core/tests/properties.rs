mod common;

use fakemu::classify::{classify, gamma_2, Verdict, ZeroBiasParams};
use fakemu::empirics::{validate, Tolerances};
use fakemu::sieve::{sieve_summatory, sieve_values, SieveConfig};
use fakemu::{builtin, construct_zero_bias, Epsilon, ExactReal};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 { a } else { gcd(b, a % b) }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn values_are_multiplicative(seed in any::<u64>()) {
        let spec = common::random_spec(&mut ChaCha8Rng::seed_from_u64(seed));
        let vals = sieve_values(&spec, 10_000);
        let f = |n: u64| vals[n as usize - 1];
        for m in 1..=100u64 {
            for n in 1..=100u64 {
                if gcd(m, n) == 1 {
                    prop_assert_eq!(f(m * n), f(m) * f(n), "m = {}, n = {}", m, n);
                }
            }
        }
    }

    #[test]
    fn verdict_ignores_higher_powers(seed in any::<u64>(), e1 in -1i64..=1, e2 in -1i64..=1) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (e1, e2) = (Epsilon::new(e1).unwrap(), Epsilon::new(e2).unwrap());
        let a = classify(&common::random_continuation(e1, e2, &mut rng)).unwrap();
        let b = classify(&common::random_continuation(e1, e2, &mut rng)).unwrap();
        prop_assert_eq!(a.verdict, b.verdict);
    }

    #[test]
    fn unsigned_zero_bias_gamma_decays(num in 0u64..=1000) {
        // beta in [2 - sqrt2, 1] keeps alpha = sqrt2 (1 - beta/2) inside [0, 1]
        let beta = ExactReal::rational(586 + (414 * num / 1000) as i64, 1000);
        let alpha = ExactReal::sqrt2() * (ExactReal::one() - beta.clone() * ExactReal::rational(1, 2));
        let spec = construct_zero_bias(&ZeroBiasParams::unsigned(alpha, beta)).unwrap();
        for k in [3usize, 10, 17, 50, 101, 150, 200] {
            let g = gamma_2(&spec, k).unwrap();
            prop_assert!(g.value.abs() <= 8.0 * 2f64.powf(-(k as f64) / 2.0), "K = {}: {}", k, g.value);
        }
    }

    #[test]
    fn signed_zero_bias_gamma_decays(num in 0u64..=1000) {
        // alpha in [-1, -0.42] keeps beta = sqrt2 (1 - alpha) - 3 inside [-1, 1]
        let alpha = ExactReal::rational(-1000 + (580 * num / 1000) as i64, 1000);
        let beta = ExactReal::sqrt2() * (ExactReal::one() - alpha.clone()) - ExactReal::from_integer(3);
        let spec = construct_zero_bias(&ZeroBiasParams::signed(alpha, beta)).unwrap();
        for k in [3usize, 10, 17, 50, 101, 150, 200] {
            let g = gamma_2(&spec, k).unwrap();
            prop_assert!(g.value.abs() <= 8.0 * 2f64.powf(-(k as f64) / 2.0), "K = {}: {}", k, g.value);
        }
    }

    #[test]
    fn epsilon_is_deterministic(seed in any::<u64>(), ks in prop::collection::vec(1u64..=1_000_000, 1..20)) {
        let spec = common::random_spec(&mut ChaCha8Rng::seed_from_u64(seed));
        let copy = spec.clone();
        for &k in &ks {
            let v = spec.epsilon_at(k);
            prop_assert_eq!(v, spec.epsilon_at(k));
            prop_assert_eq!(v, copy.epsilon_at(k));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn loosening_tolerances_never_fails_a_pass(
        name in prop::sample::select(vec!["mu", "lambda", "fake_Max", "fake_max", "xi"]),
        factor in 1.0f64..10.0,
        fewer in 0u64..=1,
    ) {
        let spec = builtin(name).unwrap();
        let report = sieve_summatory(&spec, &SieveConfig::new(200_000)).unwrap();
        let c = classify(&spec).unwrap();
        let strict = Tolerances { persistent: 0.02, decade_slack: 0.005, median: 0.05, min_sign_changes: 3 };
        let loose = Tolerances {
            persistent: strict.persistent * factor,
            decade_slack: strict.decade_slack * factor,
            median: strict.median * factor,
            min_sign_changes: strict.min_sign_changes - fewer,
        };
        let a = validate(&report, &c, &strict).unwrap();
        let b = validate(&report, &c, &loose).unwrap();
        prop_assert!(!a.passed || b.passed);
        // same inputs, same verdict
        prop_assert_eq!(&a, &validate(&report, &c, &strict).unwrap());
    }
}

#[test]
fn verdict_table_is_total() {
    for e1 in -1..=1 {
        for e2 in -1..=1 {
            let spec = common::random_continuation(
                Epsilon::new(e1).unwrap(),
                Epsilon::new(e2).unwrap(),
                &mut ChaCha8Rng::seed_from_u64(1),
            );
            let v = classify(&spec).unwrap().verdict;
            let expected = match (e1, e2) {
                (-1, 1) => Verdict::ApparentBias,
                (0, 1) => Verdict::PersistentBias,
                _ => Verdict::NoBias,
            };
            assert_eq!(v, expected);
        }
    }
}
