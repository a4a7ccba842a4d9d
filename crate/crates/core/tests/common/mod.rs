#![allow(dead_code)]

use fakemu::spec::Bitstream;
use fakemu::{Epsilon, EpsilonSpec, ExactReal, Expansion, TailRule};
use rand::Rng;

fn eps(rng: &mut impl Rng) -> Epsilon {
    Epsilon::new(rng.random_range(-1..=1)).unwrap()
}

fn unit_rational(rng: &mut impl Rng) -> ExactReal {
    let q = rng.random_range(1..=64);
    ExactReal::rational(rng.random_range(0..=q), q)
}

/// Prefix of length 2..=8 and one of the four tail kinds.
pub fn random_spec(rng: &mut impl Rng) -> EpsilonSpec {
    let len = rng.random_range(2..=8);
    let prefix = (0..len).map(|_| eps(rng)).collect();
    let tail = match rng.random_range(0..4) {
        0 => TailRule::Constant(eps(rng)),
        1 => TailRule::Periodic((0..rng.random_range(1..=4)).map(|_| eps(rng)).collect()),
        2 => TailRule::MuR(rng.random_range(1..=10)),
        _ => {
            let expansion = if rng.random_bool(0.5) { Expansion::Terminating } else { Expansion::NonTerminating };
            let b = if rng.random_bool(0.5) {
                Bitstream::complement(unit_rational(rng), unit_rational(rng), expansion).unwrap()
            } else {
                Bitstream::signed(unit_rational(rng), ExactReal::zero(), ExactReal::zero(), unit_rational(rng), expansion)
                    .unwrap()
            };
            TailRule::Bitstream(Box::new(b))
        }
    };
    EpsilonSpec::new(prefix, tail, None).unwrap()
}

/// Same `(eps1, eps2)` with a random prefix continuation and tail.
pub fn random_continuation(e1: Epsilon, e2: Epsilon, rng: &mut impl Rng) -> EpsilonSpec {
    let other = random_spec(rng);
    let mut prefix = other.prefix().to_vec();
    prefix[0] = e1;
    prefix[1] = e2;
    EpsilonSpec::new(prefix, other.tail().clone(), None).unwrap()
}

/// `#{b squarefree, a^2 b^3 <= n}`, the number of powerful integers up to `n`.
pub fn powerful_count(n: u64) -> u64 {
    let mut count = 0;
    let mut b = 1u64;
    while b * b * b <= n {
        if fakemu::arith::is_squarefree(b) {
            count += fakemu::arith::isqrt(n / (b * b * b));
        }
        b += 1;
    }
    count
}
