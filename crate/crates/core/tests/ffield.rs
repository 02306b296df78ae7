use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use schur_core::ffield::{AdditiveCharacter, FiniteField, Fq, QuadraticForm, RootOfUnity};
use schur_core::matalg::Matrix;

fn field(q: u64) -> FiniteField {
    FiniteField::with_order(q).unwrap()
}

const ORDERS: [u64; 7] = [3, 5, 7, 9, 11, 25, 27];

#[test]
fn character_is_additive_exhaustively() {
    for q in [3, 5, 7, 9, 25, 27, 49] {
        let k = field(q);
        let chi = AdditiveCharacter::canonical(&k);
        for x in k.elements() {
            for y in k.elements() {
                assert_eq!(chi.value(k.add(x, y)), chi.value(x).mul(&chi.value(y)));
            }
        }
    }
}

#[test]
fn gamma_one_values() {
    // γ(1)² = (−1/F) whatever the sign of the Gauss sum
    for q in ORDERS {
        let k = field(q);
        let chi = AdditiveCharacter::canonical(&k);
        let g = chi.gamma_one();
        let eps = k.legendre(k.from_int(-1)).unwrap();
        assert_eq!(g.pow(2), RootOfUnity::sign(eps));
    }
    assert_eq!(AdditiveCharacter::canonical(&field(3)).gamma_one(), RootOfUnity::new(4, 1));
}

proptest! {
    #[test]
    fn legendre_is_multiplicative(qi in 0usize..ORDERS.len(), a in 1u32..1000, b in 1u32..1000) {
        let k = field(ORDERS[qi]);
        let (a, b) = (Fq(a % k.q()), Fq(b % k.q()));
        prop_assume!(!a.is_zero() && !b.is_zero());
        prop_assert_eq!(k.legendre(k.mul(a, b)).unwrap(), k.legendre(a).unwrap() * k.legendre(b).unwrap());
    }

    #[test]
    fn gamma_squared_is_legendre_of_minus_one(qi in 0usize..ORDERS.len(), a in 1u32..1000) {
        let k = field(ORDERS[qi]);
        let a = Fq(a % k.q());
        prop_assume!(!a.is_zero());
        let chi = AdditiveCharacter::canonical(&k);
        let g = chi.weil_constant_scalar(a).unwrap();
        prop_assert_eq!(g.pow(2), RootOfUnity::sign(k.legendre(k.from_int(-1)).unwrap()));
    }

    #[test]
    fn weil_constant_is_a_congruence_invariant(qi in 0usize..4, dim in 1usize..4, seed in any::<u64>()) {
        let k = field(ORDERS[qi]);
        let chi = AdditiveCharacter::canonical(&k);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let s = Matrix::random(&k, dim, dim, &mut rng);
        let form = QuadraticForm::from_bilinear(&s.add(&s.transpose(), &k), &k);
        let g = chi.weil_constant_form(&form);
        for _ in 0..100 {
            let p = Matrix::random_invertible(&k, dim, &mut rng);
            prop_assert_eq!(chi.weil_constant_form(&form.transform(&p, &k)), g);
        }
    }

    #[test]
    fn weil_constant_is_multiplicative_on_orthogonal_sums(qi in 0usize..ORDERS.len(), a in prop::collection::vec(0u32..100, 1..4), b in prop::collection::vec(0u32..100, 1..4)) {
        let k = field(ORDERS[qi]);
        let chi = AdditiveCharacter::canonical(&k);
        let fa = QuadraticForm::diagonal(&a.iter().map(|&x| Fq(x % k.q())).collect::<Vec<_>>());
        let fb = QuadraticForm::diagonal(&b.iter().map(|&x| Fq(x % k.q())).collect::<Vec<_>>());
        prop_assert_eq!(chi.weil_constant_form(&fa.orthogonal_sum(&fb)), chi.weil_constant_form(&fa).mul(&chi.weil_constant_form(&fb)));
    }

    #[test]
    fn field_axioms(qi in 0usize..ORDERS.len(), a in 0u32..1000, b in 0u32..1000, c in 0u32..1000) {
        let k = field(ORDERS[qi]);
        let (a, b, c) = (Fq(a % k.q()), Fq(b % k.q()), Fq(c % k.q()));
        prop_assert_eq!(k.mul(a, k.add(b, c)), k.add(k.mul(a, b), k.mul(a, c)));
        prop_assert_eq!(k.add(k.sub(a, b), b), a);
        if !a.is_zero() {
            prop_assert_eq!(k.mul(a, k.inv(a).unwrap()), k.one());
        }
    }
}
