use proptest::prelude::*;
use schur_core::ffield::{FiniteField, Fq};
use schur_core::matalg::{is_regular, ComplementHint, Matrix, Poly, Polarization, RegularMatrix, SymplecticSpace, UnitGroup};

fn all_matrices(k: &FiniteField, n: usize) -> impl Iterator<Item = Matrix> + '_ {
    let q = k.q() as usize;
    (0..q.pow((n * n) as u32)).map(move |mut i| {
        Matrix::from_fn(n, n, |_, _| {
            let x = Fq((i % q) as u32);
            i /= q;
            x
        })
    })
}

#[test]
fn symplectic_space_for_every_regular_2x2_over_f3() {
    let k = FiniteField::prime(3).unwrap();
    let mut regular = 0;
    for m in all_matrices(&k, 2) {
        if !is_regular(&m, &k) {
            continue;
        }
        regular += 1;
        let beta = RegularMatrix::new(&k, m).unwrap();
        let s = SymplecticSpace::new(&beta, ComplementHint::Greedy).unwrap();
        assert_eq!(s.dim(), 2);
        assert!(s.gram().inverse(&k).is_some());
    }
    // 81 matrices minus the 3 scalars
    assert_eq!(regular, 78);
}

#[test]
fn sigma_is_symplectic_exhaustively_at_q3() {
    let k = FiniteField::prime(3).unwrap();
    let betas = [
        RegularMatrix::jordan(&k, &[(Fq(0), 2)]).unwrap(),
        RegularMatrix::jordan(&k, &[(Fq(0), 3)]).unwrap(),
        RegularMatrix::jordan(&k, &[(Fq(0), 1), (Fq(1), 2)]).unwrap(),
        RegularMatrix::companion(&k, &Poly::parse("t^3+2*t+1", &k).unwrap()).unwrap(),
        RegularMatrix::companion(&k, &Poly::parse("t^2+1", &k).unwrap()).unwrap(),
    ];
    for beta in &betas {
        let s = SymplecticSpace::new(beta, ComplementHint::Greedy).unwrap();
        assert_eq!(s.dim(), beta.n() * beta.n() - beta.n());
        for e in UnitGroup::new(beta.algebra(), 4096).unwrap().elements() {
            assert!(s.is_symplectic(&s.sigma_of_unit(e).unwrap()), "{}", beta.descriptor());
        }
    }
}

#[test]
fn block_sums_have_orthogonal_assembled_polarization() {
    let k = FiniteField::prime(5).unwrap();
    let a = RegularMatrix::companion(&k, &Poly::parse("t^2+2", &k).unwrap()).unwrap();
    let b = RegularMatrix::jordan(&k, &[(Fq(1), 2)]).unwrap();
    let beta = RegularMatrix::block_sum(&k, &[a, b]).unwrap();
    let s = SymplecticSpace::new(&beta, ComplementHint::Greedy).unwrap();
    let pol = Polarization::assembled(&s).unwrap();
    let m = pol.half_dim();
    assert_eq!(2 * m, s.dim());
    let rows = |mat: &Matrix| (0..m).map(|i| (0..s.dim()).map(|j| mat.get(i, j)).collect::<Vec<_>>()).collect::<Vec<_>>();
    for w in [rows(pol.w_minus()), rows(pol.w_plus())] {
        for x in &w {
            for y in &w {
                assert!(s.form(x, y).is_zero());
            }
        }
    }
}

fn regular_strategy() -> impl Strategy<Value = (u32, Vec<u32>)> {
    (prop::sample::select(vec![5u32, 7]), prop::collection::vec(0u32..49, 9))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn random_regular_matrices_give_nondegenerate_spaces((p, entries) in regular_strategy(), hint in 0u64..1000) {
        let k = FiniteField::prime(p).unwrap();
        let m = Matrix::from_vec(3, 3, entries.iter().map(|&x| Fq(x % p)).collect()).unwrap();
        prop_assume!(is_regular(&m, &k));
        let beta = RegularMatrix::new(&k, m).unwrap();
        let s = SymplecticSpace::new(&beta, ComplementHint::Random(hint)).unwrap();
        prop_assert_eq!(s.dim(), 6);
        prop_assert!(s.gram().inverse(&k).is_some());
        let pol = Polarization::canonical(&s).unwrap();
        prop_assert_eq!(pol.half_dim(), 3);
    }

    #[test]
    fn sigma_preserves_the_form((p, entries) in regular_strategy(), unit in prop::collection::vec(0u32..49, 3)) {
        let k = FiniteField::prime(p).unwrap();
        let m = Matrix::from_vec(3, 3, entries.iter().map(|&x| Fq(x % p)).collect()).unwrap();
        prop_assume!(is_regular(&m, &k));
        let beta = RegularMatrix::new(&k, m).unwrap();
        let e: Vec<Fq> = unit.iter().map(|&x| Fq(x % p)).collect();
        prop_assume!(beta.algebra().is_unit(&e));
        let s = SymplecticSpace::new(&beta, ComplementHint::Greedy).unwrap();
        prop_assert!(s.is_symplectic(&s.sigma_of_unit(&e).unwrap()));
    }

    #[test]
    fn split_recovers_the_matrix(p in prop::sample::select(vec![3u32, 5, 7]), entries in prop::collection::vec(0u32..49, 4), x in prop::collection::vec(0u32..49, 4)) {
        let k = FiniteField::prime(p).unwrap();
        let m = Matrix::from_vec(2, 2, entries.iter().map(|&v| Fq(v % p)).collect()).unwrap();
        prop_assume!(is_regular(&m, &k));
        let beta = RegularMatrix::new(&k, m).unwrap();
        let s = SymplecticSpace::new(&beta, ComplementHint::Greedy).unwrap();
        let xm = Matrix::from_vec(2, 2, x.iter().map(|&v| Fq(v % p)).collect()).unwrap();
        let (v, c) = s.split(&xm);
        let back = s.section(&v).add(&beta.algebra().to_matrix(&c), &k);
        prop_assert_eq!(back, xm);
    }
}
