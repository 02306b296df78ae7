use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::ffield::{FiniteField, Fq, QuadraticForm, RootOfUnity};

/// τ̂_c(x) = ζ_p^{Tr(c·x)}.
#[derive(Clone, Debug)]
pub struct AdditiveCharacter {
    field: FiniteField,
    twist: Fq,
    gamma_one: RootOfUnity,
}

impl AdditiveCharacter {
    pub fn canonical(field: &FiniteField) -> Self {
        Self::twisted(field, Fq::ONE).expect("1 is nonzero")
    }

    pub fn twisted(field: &FiniteField, c: Fq) -> Result<Self> {
        if c.is_zero() {
            return Err(Error::ZeroArgument);
        }
        let mut chi = AdditiveCharacter { field: field.clone(), twist: c, gamma_one: RootOfUnity::one() };
        chi.gamma_one = chi.compute_gamma_one();
        Ok(chi)
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    pub fn twist(&self) -> Fq {
        self.twist
    }

    pub fn p(&self) -> u64 {
        self.field.p() as u64
    }

    /// e with τ̂(x) = ζ_p^e.
    pub fn exponent(&self, x: Fq) -> u32 {
        self.field.trace(self.field.mul(self.twist, x))
    }

    pub fn value(&self, x: Fq) -> RootOfUnity {
        RootOfUnity::new(self.p(), self.exponent(x) as i64)
    }

    /// Σ_x τ̂(x²) as integer coordinates on 1, ζ_p, …, ζ_p^{p−1}.
    pub fn gauss_sum(&self) -> Vec<i64> {
        let k = &self.field;
        let mut g = vec![0i64; k.p() as usize];
        for x in k.elements() {
            g[self.exponent(k.mul(x, x)) as usize] += 1;
        }
        g
    }

    fn compute_gamma_one(&self) -> RootOfUnity {
        let k = &self.field;
        let p = k.p() as usize;
        let g = self.gauss_sum();
        let eps = k.legendre(k.from_int(-1)).unwrap();

        // g² = (−1/F)·q holds in Z[ζ_p]; a vector is zero there iff its coordinates agree.
        let mut sq = vec![0i64; p];
        for i in 0..p {
            for j in 0..p {
                sq[(i + j) % p] += g[i] * g[j];
            }
        }
        sq[0] -= eps as i64 * k.q() as i64;
        assert!(sq.iter().all(|&c| c == sq[0]), "Gauss sum identity failed");

        let z: Complex64 = g
            .iter()
            .enumerate()
            .map(|(e, &c)| RootOfUnity::new(p as u64, e as i64).to_complex() * c as f64)
            .sum();
        let z = z / (k.q() as f64).sqrt();
        let candidates = if eps == 1 {
            [RootOfUnity::one(), RootOfUnity::sign(-1)]
        } else {
            [RootOfUnity::new(4, 1), RootOfUnity::new(4, 3)]
        };
        let best = candidates
            .iter()
            .min_by(|a, b| {
                let da = (a.to_complex() - z).norm();
                let db = (b.to_complex() - z).norm();
                da.partial_cmp(&db).unwrap()
            })
            .unwrap();
        assert!((best.to_complex() - z).norm() < 1e-6, "Gauss sum sign resolution failed");
        best.lift(4).unwrap()
    }

    /// γ(1) = q^{−1/2} Σ_x τ̂(x²) ∈ μ_4.
    pub fn gamma_one(&self) -> RootOfUnity {
        self.gamma_one
    }

    /// γ(a) = (a/F)·γ(1).
    pub fn weil_constant_scalar(&self, a: Fq) -> Result<RootOfUnity> {
        let s = self.field.legendre(a)?;
        Ok(RootOfUnity::sign(s).mul(&self.gamma_one).lift(4).unwrap())
    }

    /// Weil constant of a possibly degenerate form: the radical contributes 1.
    pub fn weil_constant_form(&self, q: &QuadraticForm) -> RootOfUnity {
        let k = &self.field;
        let diag = q.diagonalize(k);
        let disc = diag.iter().fold(k.one(), |a, &x| k.mul(a, x));
        let s = k.legendre(disc).unwrap();
        RootOfUnity::sign(s).mul(&self.gamma_one.pow(diag.len() as i64)).lift(4).unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matalg::Matrix;

    #[test]
    fn character_examples() {
        let k3 = FiniteField::prime(3).unwrap();
        let chi = AdditiveCharacter::canonical(&k3);
        assert_eq!(chi.value(Fq::ZERO), RootOfUnity::one());
        assert_eq!(chi.value(Fq::ONE), RootOfUnity::new(3, 1));
        let k9 = FiniteField::new(3, 2).unwrap();
        let u = k9.from_coeffs(&[0, 1]).unwrap();
        assert_eq!(AdditiveCharacter::canonical(&k9).exponent(u), 0);
    }

    #[test]
    fn gamma_one_small_fields() {
        let g3 = AdditiveCharacter::canonical(&FiniteField::prime(3).unwrap());
        assert_eq!(g3.gauss_sum(), vec![1, 2, 0]);
        assert_eq!(g3.gamma_one(), RootOfUnity::new(4, 1));
        assert_eq!(g3.gamma_one().lift(12).unwrap().exponent(), 3);
        let g5 = AdditiveCharacter::canonical(&FiniteField::prime(5).unwrap());
        assert_eq!(g5.gamma_one(), RootOfUnity::one());
        let g7 = AdditiveCharacter::canonical(&FiniteField::prime(7).unwrap());
        assert_eq!(g7.gamma_one(), RootOfUnity::new(4, 1));
        // F_9: g = -(g_3)^2 = 3
        let g9 = AdditiveCharacter::canonical(&FiniteField::new(3, 2).unwrap());
        assert_eq!(g9.gamma_one(), RootOfUnity::one());
    }

    #[test]
    fn square_arguments_share_gamma_one() {
        let k = FiniteField::prime(11).unwrap();
        let chi = AdditiveCharacter::canonical(&k);
        for x in k.units() {
            let a = k.mul(x, x);
            assert_eq!(chi.weil_constant_scalar(a).unwrap(), chi.gamma_one());
        }
        assert_eq!(chi.weil_constant_scalar(Fq::ZERO), Err(Error::ZeroArgument));
    }

    #[test]
    fn form_examples() {
        for q in [3u64, 5, 7, 9, 25] {
            let k = FiniteField::with_order(q).unwrap();
            let chi = AdditiveCharacter::canonical(&k);
            assert!(chi.weil_constant_form(&QuadraticForm::zero(3)).is_one());
            let hyp = QuadraticForm::from_bilinear(&Matrix::from_ints(&k, &[&[0, 1], &[0, 0]]), &k);
            assert!(chi.weil_constant_form(&hyp).is_one());
            let a = k.primitive_element();
            assert_eq!(
                chi.weil_constant_form(&QuadraticForm::diagonal(&[a])),
                chi.weil_constant_scalar(a).unwrap()
            );
        }
    }

    /// The exact constant agrees with the normalized Gauss sum of the form itself.
    #[test]
    fn form_constant_matches_brute_force_sum() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(4);
        for q in [3u64, 5, 7, 9] {
            let k = FiniteField::with_order(q).unwrap();
            let chi = AdditiveCharacter::canonical(&k);
            for _ in 0..10 {
                let b = Matrix::random(&k, 3, 3, &mut rng);
                let form = QuadraticForm::from_bilinear(&b, &k);
                let rad = 3 - form.rank(&k);
                let mut sum = Complex64::new(0.0, 0.0);
                for x0 in k.elements() {
                    for x1 in k.elements() {
                        for x2 in k.elements() {
                            sum += chi.value(form.eval(&[x0, x1, x2], &k)).to_complex();
                        }
                    }
                }
                let norm = (q as f64).powf((3 - rad) as f64 / 2.0) * (q as f64).powi(rad as i32);
                let z = sum / norm;
                assert!((z - chi.weil_constant_form(&form).to_complex()).norm() < 1e-9);
            }
        }
    }
}
