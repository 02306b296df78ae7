use std::sync::Arc;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use schur_core::cohom::{random, solve_coboundary, AbelianGroupTable, Cocycle2};

fn orders_strategy() -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(prop::sample::select(vec![2usize, 3, 4, 5, 6, 9]), 1..4)
        .prop_filter("order ≤ 200", |o| o.iter().product::<usize>() <= 200)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn symmetric_cocycles_have_verified_witnesses(orders in orders_strategy(), m in prop::sample::select(vec![2u64, 3, 4, 6, 12]), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c = random::symmetric(&orders, m, &mut rng).unwrap();
        prop_assert!(c.is_cocycle());
        prop_assert!(c.is_trivial_class());
        let w = solve_coboundary(&c).unwrap();
        prop_assert!(w.verifies(&c));
    }

    #[test]
    fn witnesses_differ_by_a_character(orders in orders_strategy(), m in prop::sample::select(vec![2u64, 3, 6]), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c = random::symmetric(&orders, m, &mut rng).unwrap();
        let w1 = solve_coboundary(&c).unwrap();
        // a second witness for a cohomologous copy shifted by a known coboundary
        let g = c.group().clone();
        let delta: Vec<u64> = (0..g.order()).map(|_| rng.gen_range(0..m)).collect();
        let shifted = c.mul(&Cocycle2::coboundary(g.clone(), m, &delta)).unwrap();
        let w2 = solve_coboundary(&shifted).unwrap();
        prop_assert!(w2.verifies(&shifted));
        // w2 − w1 − δ is a homomorphism G → Z/M′
        let mm = w1.modulus.max(w2.modulus);
        prop_assume!(mm % w1.modulus == 0 && mm % w2.modulus == 0 && mm % m == 0);
        let diff = |x: usize| -> u64 {
            let a = w2.delta[x] * (mm / w2.modulus) % mm;
            let b = w1.delta[x] * (mm / w1.modulus) % mm;
            let d = delta[x] * (mm / m) % mm;
            (a + 2 * mm - b - d) % mm
        };
        for _ in 0..200 {
            let (x, y) = (rng.gen_range(0..g.order()), rng.gen_range(0..g.order()));
            prop_assert_eq!((diff(x) + diff(y)) % mm, diff(g.mul(x, y)));
        }
    }

    #[test]
    fn triviality_is_invariant_under_coboundaries(orders in orders_strategy(), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = 6;
        let c = if orders.len() >= 2 && orders[0] % 2 == 0 && orders[1] % 2 == 0 {
            random::twisted(&orders, m, &mut rng).unwrap()
        } else {
            random::symmetric(&orders, m, &mut rng).unwrap()
        };
        let verdict = c.is_trivial_class();
        let g = c.group().clone();
        for _ in 0..100 {
            let delta: Vec<u64> = (0..g.order()).map(|_| rng.gen_range(0..m)).collect();
            prop_assert_eq!(c.mul(&Cocycle2::coboundary(g.clone(), m, &delta)).unwrap().is_trivial_class(), verdict);
        }
    }

    #[test]
    fn twisted_cocycles_are_nontrivial_and_rejected(seed in any::<u64>(), a in prop::sample::select(vec![2usize, 3, 4, 6]), b in prop::sample::select(vec![2usize, 3, 4, 6])) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = 12;
        prop_assume!(schur_core::util::gcd(schur_core::util::gcd(a as u64, b as u64), m) > 1);
        let c = random::twisted(&[a, b], m, &mut rng).unwrap();
        prop_assert!(c.is_cocycle());
        prop_assert!(!c.is_trivial_class());
        prop_assert!(solve_coboundary(&c).is_err());
    }
}

#[test]
fn klein_four_cocycle_from_quaternions() {
    // the quaternion extension of Z/2 × Z/2: c(x,y) = −1 for the listed pairs
    let g = Arc::new(AbelianGroupTable::cyclic_product(&[2, 2]).unwrap());
    let sign = |x: usize, y: usize| -> u64 {
        let (a, b) = ((x >> 1) & 1, x & 1);
        let (c, d) = ((y >> 1) & 1, y & 1);
        // i = (1,0), j = (0,1), k = (1,1); i·j = k, j·i = −k, squares = −1
        let s = (a & c) + (b & d) + (b & c);
        (s % 2) as u64
    };
    let c = Cocycle2::from_fn(g, 2, |x, y| sign(x, y));
    assert!(c.is_cocycle());
    assert!(!c.is_trivial_class());
}
