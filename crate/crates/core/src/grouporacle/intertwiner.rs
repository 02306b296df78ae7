use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::pipsi::{Monomial, PiPsi, OP_TOL};
use super::ring::LMat;
use crate::cohom::Cocycle2;
use crate::error::{Error, Result};
use crate::ffield::{Fq, RootOfUnity};
use crate::matalg::UnitGroup;

/// Tolerance for snapping scalars to roots of unity.
pub const SNAP_TOL: f64 = 1e-6;

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// The modulus c_U is snapped to: lcm(4p, dim π_ψ).
pub fn snap_modulus(p: u32, dim: usize) -> u64 {
    let a = 4 * p as u64;
    a / gcd(a, dim as u64) * dim as u64
}

fn max_abs(m: &DMatrix<Complex64>) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

fn scalar_defect(m: &DMatrix<Complex64>) -> (Complex64, f64) {
    let s = m[(0, 0)];
    let d = m.nrows();
    (s, max_abs(&(m - DMatrix::from_diagonal_element(d, d, s))))
}

/// c_U on F[β̄]^× together with the numerical defects seen on the way.
#[derive(Clone, Debug)]
pub struct CuExtraction {
    pub cocycle: Cocycle2,
    /// max ‖U(ε)π(g) − π(εgε⁻¹)U(ε)‖ on g = 1 + ϖE_ij.
    pub intertwining_defect: f64,
    /// max ‖U(ε)U(ε)* − 1‖.
    pub unitarity_defect: f64,
    /// max distance of U(ε)U(η)U(εη)* from a scalar.
    pub scalar_defect: f64,
    /// max distance of U(ε) from a scalar for ε ∈ C ∩ K_1.
    pub k1_scalar_defect: f64,
    pub snap_modulus: u64,
}

impl PiPsi {
    /// U with U·π(g) = π(εgε⁻¹)·U, normalized to det U = 1.
    ///
    /// The average runs over K_1/K_1(F[β̄])K_2 ≅ V, on whose cosets the
    /// summand is constant.
    pub fn intertwiner(&self, eps: &LMat, rng: &mut ChaCha8Rng) -> Result<DMatrix<Complex64>> {
        let c = self.congruence();
        let space = self.space();
        let q = c.q() as usize;
        let dv = space.dim();
        let d = self.dim();
        let ei = c.inv(eps);
        let terms: Vec<(Monomial, Monomial)> = (0..q.pow(dv as u32))
            .map(|mut i| {
                let v: Vec<Fq> = (0..dv)
                    .map(|_| {
                        let x = Fq((i % q) as u32);
                        i /= q;
                        x
                    })
                    .collect();
                let k = c.section(&space.section(&v));
                (self.matrix(&c.mul(&c.mul(eps, &k), &ei)), self.matrix(&c.inv(&k)))
            })
            .collect();
        for _ in 0..8 {
            let a = DMatrix::from_fn(d, d, |_, _| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
            let mut u = DMatrix::zeros(d, d);
            for (l, r) in &terms {
                l.sandwich_into(&a, r, &mut u);
            }
            let det = u.determinant();
            if det.norm() > 1e-8 {
                let root = (det.ln() / d as f64).exp();
                return Ok(u / root);
            }
        }
        Err(Error::IntertwinerNotScalar("averaged intertwiner stayed singular".into()))
    }

    /// c_U(ε̄, η̄) = U(λε̄)U(λη̄)U(λ(ε̄η̄))⁻¹ on F[β̄]^×.
    pub fn extract_cu(&self, units: &UnitGroup, seed: u64) -> Result<CuExtraction> {
        let c = self.congruence();
        let d = self.dim();
        let order = units.order();
        let us: Vec<DMatrix<Complex64>> = (0..order)
            .into_par_iter()
            .map(|i| {
                let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (i as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15));
                self.intertwiner(&c.centralizer_lift(units.element(i)), &mut rng)
            })
            .collect::<Result<_>>()?;

        let gens: Vec<(Monomial, LMat)> = c.units().iter().map(|e| {
            let g = c.section(e);
            (self.matrix(&g), g)
        }).collect();
        let id = DMatrix::<Complex64>::identity(d, d);
        let (intertwining_defect, unitarity_defect) = (0..order)
            .into_par_iter()
            .map(|i| {
                let eps = c.centralizer_lift(units.element(i));
                let ei = c.inv(&eps);
                let u = &us[i];
                let tw = gens
                    .iter()
                    .map(|(pg, g)| {
                        let lhs = Monomial::right_mul(u, pg);
                        let rhs = self.matrix(&c.mul(&c.mul(&eps, g), &ei)).left_mul(u);
                        max_abs(&(lhs - rhs))
                    })
                    .fold(0.0, f64::max);
                (tw, max_abs(&(u * u.adjoint() - &id)))
            })
            .reduce(|| (0.0, 0.0), |a, b| (a.0.max(b.0), a.1.max(b.1)));

        let table = units.table();
        let m = snap_modulus(c.p(), d);
        let cells: Vec<(f64, Option<RootOfUnity>)> = (0..order * order)
            .into_par_iter()
            .map(|t| {
                let (x, y) = (t / order, t % order);
                let prod = &us[x] * &us[y] * us[table.mul(x, y)].adjoint();
                let (s, defect) = scalar_defect(&prod);
                (defect, RootOfUnity::snap(s, m, SNAP_TOL))
            })
            .collect();
        let scalar = cells.iter().map(|c| c.0).fold(0.0, f64::max);
        if scalar > OP_TOL {
            return Err(Error::IntertwinerNotScalar(format!("U(ε)U(η)U(εη)⁻¹ is {scalar:.2e} from a scalar")));
        }
        let roots = cells.into_iter().map(|c| c.1.ok_or(Error::SnapFailure(m))).collect::<Result<Vec<_>>>()?;
        let cocycle = Cocycle2::from_roots(table.clone(), |x, y| roots[x * order + y]);

        // C ∩ K_1 is generated by 1 + ϖβ^j and 1 + ϖ²β^j
        let o = c.ring();
        let n = c.n();
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(1));
        let mut pw = LMat::identity(n);
        let mut k1_scalar_defect = 0.0f64;
        for _ in 0..n {
            for level in [1, 2] {
                let e = LMat::identity(n).add(&pw.shift(level, o), o);
                k1_scalar_defect = k1_scalar_defect.max(scalar_defect(&self.intertwiner(&e, &mut rng)?).1);
            }
            pw = pw.mul(c.beta_lift(), o);
        }

        Ok(CuExtraction {
            cocycle,
            intertwining_defect,
            unitarity_defect,
            scalar_defect: scalar,
            k1_scalar_defect,
            snap_modulus: m,
        })
    }
}

impl CuExtraction {
    pub fn operators_ok(&self) -> bool {
        self.intertwining_defect < OP_TOL && self.unitarity_defect < OP_TOL && self.k1_scalar_defect < OP_TOL
    }
}

/// Antisymmetrizations agree, i.e. the classes in H²(G, C^×) agree.
pub fn same_class(a: &Cocycle2, b: &Cocycle2) -> bool {
    a.antisym_roots() == b.antisym_roots()
}

/// [a] = [b]⁻¹.
pub fn inverse_class(a: &Cocycle2, b: &Cocycle2) -> bool {
    a.antisym_roots().iter().zip(b.antisym_roots()).all(|(x, y)| x.mul(&y) == RootOfUnity::new(1, 0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffield::FiniteField;
    use crate::grouporacle::{Congruence, RingKind};
    use crate::matalg::{ComplementHint, Polarization, RegularMatrix, SymplecticSpace};
    use crate::schurmult::CentralizerCocycle;
    use crate::weilrep::WeilCocycle;

    #[test]
    fn snap_moduli() {
        assert_eq!(snap_modulus(3, 3), 12);
        assert_eq!(snap_modulus(3, 27), 108);
        assert_eq!(snap_modulus(5, 5), 20);
    }

    #[test]
    fn jordan_q3_matches_algebraic_class() {
        let k = FiniteField::prime(3).unwrap();
        let beta = RegularMatrix::jordan(&k, &[(Fq(0), 2)]).unwrap();
        let space = SymplecticSpace::new(&beta, ComplementHint::Greedy).unwrap();
        let pol = Polarization::canonical(&space).unwrap();
        let units = UnitGroup::new(beta.algebra(), 1000).unwrap();
        for kind in [RingKind::Unequal, RingKind::Equal] {
            let cong = Congruence::new(kind, &beta).unwrap();
            let c_t = WeilCocycle::new(&space, &pol, cong.character()).table(&units).unwrap();
            for l in [[0, 0], [1, 0], [0, 1], [2, 2]] {
                let f: Vec<Fq> = l.iter().map(|&x| Fq(x)).collect();
                let pi = PiPsi::new(&cong, &space, &pol, &f).unwrap();
                let cu = pi.extract_cu(&units, 7).unwrap();
                assert!(cu.operators_ok(), "{cu:?}");
                let alg = CentralizerCocycle::new(&space, &pi.rho(), cong.character()).table(&units).unwrap();
                let prod = alg.mul(&c_t).unwrap();
                assert!(same_class(&cu.cocycle, &prod), "{kind:?} {l:?}");
            }
        }
    }
}
