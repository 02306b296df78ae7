//! Heisenberg group of V_β, the Schrödinger model, Weil operators and the
//! cocycle c_T.

mod ct;
mod operator;
mod quadratic;
mod schrodinger;

pub use ct::{c_t_block_reduction, BlockReductionReport, WeilCocycle};
pub use operator::{operator_cocycle, scalar_ratio, weil_operator, SymplecticMap};
pub use quadratic::QuadraticCase;
pub use schrodinger::{HeisenbergElement, SchrodingerModel, MAX_MODEL_DIM};

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffield::{AdditiveCharacter, FiniteField, Fq, RootOfUnity};
    use crate::matalg::{ComplementHint, Matrix, Polarization, RegularMatrix, SymplecticSpace, UnitGroup};

    fn quadratic(p: u32) -> (QuadraticCase, SymplecticSpace, WeilCocycle, UnitGroup) {
        let k = FiniteField::prime(p).unwrap();
        let chi = AdditiveCharacter::canonical(&k);
        let beta = QuadraticCase::standard(&k).unwrap();
        let space = SymplecticSpace::new(&beta, ComplementHint::Greedy).unwrap();
        let wc = WeilCocycle::canonical(&space, &chi).unwrap();
        let units = UnitGroup::new(beta.algebra(), 1000).unwrap();
        (QuadraticCase::new(&beta, &chi).unwrap(), space, wc, units)
    }

    #[test]
    fn operator_product_matches_q_form() {
        for p in [3u32, 5, 7] {
            let (_, space, wc, units) = quadratic(p);
            let model = SchrodingerModel::new(&space, wc.polarization(), wc.character()).unwrap();
            let alg = units.algebra();
            for e in units.elements() {
                for f in units.elements() {
                    let s1 = wc.sigma(e).unwrap();
                    let s2 = wc.sigma(f).unwrap();
                    let s12 = wc.sigma(&alg.mul(e, f)).unwrap();
                    let op = operator_cocycle(&model, &s1, &s2, &s12).unwrap();
                    assert_eq!(op, wc.value(e, f).unwrap(), "p={p}");
                }
            }
        }
    }

    #[test]
    fn composition_form_matches_operator() {
        let k3 = FiniteField::prime(3).unwrap();
        let k5 = FiniteField::prime(5).unwrap();
        let k7 = FiniteField::prime(7).unwrap();
        let cases = [
            RegularMatrix::jordan(&k3, &[(Fq(1), 2)]).unwrap(),
            RegularMatrix::jordan(&k5, &[(Fq(1), 2)]).unwrap(),
            RegularMatrix::jordan(&k3, &[(Fq(1), 3)]).unwrap(),
            RegularMatrix::jordan(&k3, &[(Fq(0), 2), (Fq(1), 1)]).unwrap(),
            RegularMatrix::companion(&k3, &crate::matalg::Poly::parse("t^3-t+1", &k3).unwrap()).unwrap(),
            QuadraticCase::standard(&k5).unwrap(),
            QuadraticCase::standard(&k7).unwrap(),
        ];
        for beta in &cases {
            let chi = AdditiveCharacter::canonical(beta.field());
            let space = SymplecticSpace::new(beta, ComplementHint::Greedy).unwrap();
            for pol in [Polarization::canonical(&space).unwrap(), Polarization::assembled(&space).unwrap()] {
                let wc = WeilCocycle::new(&space, &pol, &chi);
                let model = SchrodingerModel::new(&space, &pol, &chi).unwrap();
                let units = UnitGroup::new(beta.algebra(), 1000).unwrap();
                let alg = units.algebra();
                let some = units.elements().iter().step_by(units.order() / 12 + 1);
                for e in some.clone() {
                    for f in some.clone() {
                        let s1 = SymplecticMap::of_unit(&space, &pol, e).unwrap();
                        let s2 = SymplecticMap::of_unit(&space, &pol, f).unwrap();
                        let s12 = SymplecticMap::of_unit(&space, &pol, &alg.mul(e, f)).unwrap();
                        let op = operator_cocycle(&model, &s1, &s2, &s12).unwrap();
                        assert_eq!(op, wc.value_maps(&s1.matrix, &s2.matrix));
                    }
                }
            }
        }
    }

    #[test]
    fn q_form_agrees_for_involution_polarization() {
        for p in [3u32, 5, 7] {
            let (_, space, wc, units) = quadratic(p);
            for e in units.elements() {
                for f in units.elements() {
                    let s1 = space.sigma_of_unit(e).unwrap();
                    let s2 = space.sigma_of_unit(f).unwrap();
                    assert_eq!(wc.q_form_value(&s1, &s2), wc.value_maps(&s1, &s2));
                }
            }
        }
    }

    #[test]
    fn sigma_matches_closed_form() {
        for p in [3u32, 5, 7] {
            let (qc, space, _, units) = quadratic(p);
            let k = space.field().clone();
            let b = Matrix::from_rows(&[
                space.project(&Matrix::from_ints(&k, &[&[1, 0], &[0, -1]])),
                space.project(&Matrix::from_ints(&k, &[&[0, 1], &[0, 0]])),
            ])
            .unwrap();
            let bi = b.inverse(&k).unwrap();
            for e in units.elements() {
                let s = space.sigma_of_unit(e).unwrap();
                assert_eq!(b.mul(&s, &k).mul(&bi, &k), qc.sigma_closed(e).unwrap());
            }
        }
    }

    #[test]
    fn closed_forms_give_inverse_cocycle() {
        // at p = 7 the values ±i occur and the two orientations differ
        let mut differs = false;
        for p in [3u32, 5, 7] {
            let (qc, _, wc, units) = quadratic(p);
            let alg = units.algebra();
            for e in units.elements() {
                for f in units.elements() {
                    let ct = wc.value(e, f).unwrap();
                    assert_eq!(qc.c_closed(e, f).unwrap(), ct.inv());
                    let d = qc.delta(f).unwrap().mul(&qc.delta(e).unwrap()).div(&qc.delta(&alg.mul(e, f)).unwrap());
                    assert_eq!(d, ct.inv());
                    let w = qc.witness(f).unwrap().mul(&qc.witness(e).unwrap()).div(&qc.witness(&alg.mul(e, f)).unwrap());
                    assert_eq!(w, ct);
                    differs |= ct != ct.inv();
                }
            }
        }
        assert!(differs);
    }

    #[test]
    fn c_t_is_cocycle_and_trivial_for_quadratic() {
        for p in [3u32, 5, 7] {
            let (_, _, wc, units) = quadratic(p);
            let t = wc.table(&units).unwrap();
            assert!(t.is_cocycle());
            assert!(t.is_trivial_class());
        }
    }

    #[test]
    fn split_triangular_is_borel() {
        for p in [3u32, 5] {
            let k = FiniteField::prime(p).unwrap();
            let chi = AdditiveCharacter::canonical(&k);
            for n in [2usize, 3] {
                let beta = RegularMatrix::jordan(&k, &[(Fq(1), n)]).unwrap();
                let space = SymplecticSpace::new(&beta, ComplementHint::Greedy).unwrap();
                let wc = WeilCocycle::canonical(&space, &chi).unwrap();
                let units = UnitGroup::new(beta.algebra(), 1000).unwrap();
                for e in units.elements() {
                    assert!(wc.sigma(e).unwrap().in_borel());
                }
                let t = wc.table(&units).unwrap();
                assert!(t.table().iter().all(|&v| v == 0));
            }
        }
    }

    #[test]
    fn borel_maps_give_substitution_operators() {
        let k = FiniteField::prime(5).unwrap();
        let chi = AdditiveCharacter::canonical(&k);
        let beta = RegularMatrix::jordan(&k, &[(Fq(0), 2)]).unwrap();
        let space = SymplecticSpace::new(&beta, ComplementHint::Greedy).unwrap();
        let pol = Polarization::canonical(&space).unwrap();
        let model = SchrodingerModel::new(&space, &pol, &chi).unwrap();
        let units = UnitGroup::new(beta.algebra(), 1000).unwrap();
        for e in units.elements() {
            let s = SymplecticMap::of_unit(&space, &pol, e).unwrap();
            let t = weil_operator(&model, &s);
            for i in 0..model.dim() {
                let w = model.point(i);
                let wa = s.a.vec_mul(&w, &k);
                let wb = s.b.vec_mul(&w, &k);
                let phase = chi.value(k.mul(k.half(), model.pair(&wa, &wb))).to_complex();
                let j = model.index(&wa);
                assert!((t[(i, j)] - phase).norm() < 1e-9);
            }
        }
    }

    #[test]
    fn block_reduction_examples() {
        let k3 = FiniteField::prime(3).unwrap();
        let chi3 = AdditiveCharacter::canonical(&k3);
        let single = RegularMatrix::jordan(&k3, &[(Fq(0), 2)]).unwrap();
        let r = c_t_block_reduction(&single, &chi3, 1000).unwrap();
        assert!(r.tables_equal && r.classes_equal);
        let two = RegularMatrix::jordan(&k3, &[(Fq(0), 1), (Fq(1), 1)]).unwrap();
        let r = c_t_block_reduction(&two, &chi3, 1000).unwrap();
        assert_eq!(r.blocks, 2);
        assert!(r.classes_equal && r.global_trivial);
        let k5 = FiniteField::prime(5).unwrap();
        let chi5 = AdditiveCharacter::canonical(&k5);
        let mixed = RegularMatrix::jordan(&k5, &[(Fq(0), 2), (Fq(2), 1)]).unwrap();
        let r = c_t_block_reduction(&mixed, &chi5, 1000).unwrap();
        assert!(r.tables_equal && r.classes_equal);
        // an irreducible quadratic block next to a 1×1 block
        let q = QuadraticCase::standard(&k3).unwrap();
        let one = RegularMatrix::jordan(&k3, &[(Fq(1), 1)]).unwrap();
        let sum = RegularMatrix::block_sum(&k3, &[q, one]).unwrap();
        let r = c_t_block_reduction(&sum, &chi3, 1000).unwrap();
        assert!(r.tables_equal && r.classes_equal);
    }

    #[test]
    fn twisted_character_scales_values() {
        let k = FiniteField::prime(7).unwrap();
        let beta = QuadraticCase::standard(&k).unwrap();
        let space = SymplecticSpace::new(&beta, ComplementHint::Greedy).unwrap();
        let units = UnitGroup::new(beta.algebra(), 1000).unwrap();
        for c in 1..7 {
            let chi = AdditiveCharacter::twisted(&k, Fq(c)).unwrap();
            let wc = WeilCocycle::canonical(&space, &chi).unwrap();
            let t = wc.table(&units).unwrap();
            assert!(t.is_trivial_class());
            assert!(t.table().iter().all(|&v| RootOfUnity::new(t.modulus(), v as i64).order() <= 4));
        }
    }
}
