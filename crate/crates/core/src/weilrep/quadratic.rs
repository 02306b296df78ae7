//! The cuspidal n = 2 case: β̄ = [[0, α], [1, 0]] with α a nonsquare, and
//! ζ = a + bβ̄ written ζ₊ = a, ζ₋ = b, ζ̄ = a − bβ̄.

use crate::error::{Error, Result};
use crate::ffield::{AdditiveCharacter, FiniteField, Fq, RootOfUnity};
use crate::matalg::{Matrix, RegularMatrix};

#[derive(Clone, Debug)]
pub struct QuadraticCase {
    beta: RegularMatrix,
    alpha: Fq,
    chi: AdditiveCharacter,
}

impl QuadraticCase {
    pub fn new(beta: &RegularMatrix, chi: &AdditiveCharacter) -> Result<Self> {
        let k = beta.field();
        let b = beta.beta();
        if beta.n() != 2 || !b.get(0, 0).is_zero() || !b.get(1, 1).is_zero() || b.get(1, 0) != Fq::ONE {
            return Err(Error::WrongNormalForm);
        }
        let alpha = b.get(0, 1);
        if alpha.is_zero() || k.is_square(alpha) {
            return Err(Error::WrongNormalForm);
        }
        Ok(QuadraticCase { beta: beta.clone(), alpha, chi: chi.clone() })
    }

    /// β̄ = [[0, α], [1, 0]] for the default nonsquare α of F_q.
    pub fn standard(k: &FiniteField) -> Result<RegularMatrix> {
        let a = k.nonsquare();
        RegularMatrix::new(k, Matrix::from_rows(&[vec![Fq::ZERO, a], vec![Fq::ONE, Fq::ZERO]]).unwrap())
    }

    pub fn alpha(&self) -> Fq {
        self.alpha
    }
    pub fn beta(&self) -> &RegularMatrix {
        &self.beta
    }
    fn field(&self) -> &FiniteField {
        self.beta.field()
    }

    pub fn bar(&self, z: &[Fq]) -> Vec<Fq> {
        vec![z[0], self.field().neg(z[1])]
    }

    /// ε/ε̄ as (plus, minus) coordinates.
    pub fn ratio(&self, eps: &[Fq]) -> Result<(Fq, Fq)> {
        let alg = self.beta.algebra();
        let r = alg.mul(eps, &alg.inv(&self.bar(eps))?);
        Ok((r[0], r[1]))
    }

    /// σ_ε = [[r₊, 2αr₋], [½r₋, r₊]] with r = ε/ε̄, on the basis
    /// (diag(x, −x), [[0, y], [0, 0]]).
    pub fn sigma_closed(&self, eps: &[Fq]) -> Result<Matrix> {
        let k = self.field();
        let (p, m) = self.ratio(eps)?;
        let two = k.from_int(2);
        Ok(Matrix::from_rows(&[
            vec![p, k.mul(k.mul(two, self.alpha), m)],
            vec![k.mul(k.half(), m), p],
        ])
        .unwrap())
    }

    fn gamma(&self, a: Fq) -> RootOfUnity {
        self.chi.weil_constant_scalar(a).expect("nonzero argument")
    }

    /// The two-branch value γ(α r₋(ε))·γ(α r₋(η))·γ(α r₋(εη))⁻¹, or 1 when one
    /// of the three minus parts vanishes.
    pub fn c_closed(&self, eps: &[Fq], eta: &[Fq]) -> Result<RootOfUnity> {
        let k = self.field();
        let alg = self.beta.algebra();
        let m1 = self.ratio(eps)?.1;
        let m2 = self.ratio(eta)?.1;
        let m3 = self.ratio(&alg.mul(eps, eta))?.1;
        if m1.is_zero() || m2.is_zero() || m3.is_zero() {
            return Ok(RootOfUnity::one());
        }
        let a = self.alpha;
        Ok(self.gamma(k.mul(a, m1)).mul(&self.gamma(k.mul(a, m2))).div(&self.gamma(k.mul(a, m3))))
    }

    /// δ(ε) = γ(α(ε/ε̄)₋) if that is nonzero, else the Legendre symbol of ε/ε̄.
    pub fn delta(&self, eps: &[Fq]) -> Result<RootOfUnity> {
        let k = self.field();
        let (p, m) = self.ratio(eps)?;
        if m.is_zero() {
            Ok(RootOfUnity::sign(k.legendre(p)?))
        } else {
            Ok(self.gamma(k.mul(self.alpha, m)))
        }
    }

    /// δ⁻¹, whose coboundary is c_T = γ(Q)⁻¹.
    pub fn witness(&self, eps: &[Fq]) -> Result<RootOfUnity> {
        Ok(self.delta(eps)?.inv())
    }
}
