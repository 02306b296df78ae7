use std::collections::HashMap;

use rayon::prelude::*;

use super::rho::Rho;
use crate::cohom::Cocycle2;
use crate::error::{Error, Result};
use crate::ffield::{AdditiveCharacter, FiniteField, Fq, RootOfUnity};
use crate::matalg::{dot, vec_add, Matrix, SymplecticSpace, UnitGroup};

/// γ(v, ε) = ε⁻¹[v]ε − [ε⁻¹vε] ∈ F[β̄], in power-basis coordinates.
pub fn gamma_map(space: &SymplecticSpace, v: &[Fq], eps: &[Fq]) -> Result<Vec<Fq>> {
    let alg = space.beta().algebra();
    let inv = alg.inv(eps)?;
    let (_, gamma) = space.conjugation(&alg.to_matrix(eps), &alg.to_matrix(&inv));
    Ok(gamma.vec_mul(v, space.field()))
}

/// c_{β̄,ρ}(ε, η) = τ̂(½⟨v_ε, v_εη⟩) for a fixed section and character.
#[derive(Clone, Debug)]
pub struct CentralizerCocycle {
    space: SymplecticSpace,
    rho: Rho,
    chi: AdditiveCharacter,
}

impl CentralizerCocycle {
    pub fn new(space: &SymplecticSpace, rho: &Rho, chi: &AdditiveCharacter) -> Self {
        CentralizerCocycle { space: space.clone(), rho: rho.clone(), chi: chi.clone() }
    }

    pub fn space(&self) -> &SymplecticSpace {
        &self.space
    }
    pub fn rho(&self) -> &Rho {
        &self.rho
    }
    pub fn character(&self) -> &AdditiveCharacter {
        &self.chi
    }
    fn field(&self) -> &FiniteField {
        self.space.field()
    }

    /// The unique v_ε with ρ(γ(v, ε)) = τ̂(⟨v, v_ε⟩) for all v.
    pub fn dual_vector(&self, eps: &[Fq]) -> Result<Vec<Fq>> {
        let k = self.field();
        let alg = self.space.beta().algebra();
        let inv = alg.inv(eps)?;
        let (_, gamma) = self.space.conjugation(&alg.to_matrix(eps), &alg.to_matrix(&inv));
        // ℓ(γ(e_i, ε)) = (G v_εᵗ)_i
        let rhs = gamma.mul_vec(self.rho.functional(), k);
        Ok(self.space.gram_inv().mul_vec(&rhs, k))
    }

    /// Exponent e of c(ε, η) = ζ_p^e from the two dual vectors.
    fn exponent_from(&self, v_eps: &[Fq], v_prod: &[Fq]) -> u64 {
        let k = self.field();
        self.chi.exponent(k.mul(k.half(), self.space.form(v_eps, v_prod))) as u64
    }

    pub fn value(&self, eps: &[Fq], eta: &[Fq]) -> Result<RootOfUnity> {
        let alg = self.space.beta().algebra();
        let ve = self.dual_vector(eps)?;
        let vp = self.dual_vector(&alg.mul(eps, eta))?;
        Ok(RootOfUnity::new(self.chi.p(), self.exponent_from(&ve, &vp) as i64))
    }

    /// v_ε for every unit of the group, in group order.
    pub fn dual_vectors(&self, elements: &[Vec<Fq>]) -> Result<Vec<Vec<Fq>>> {
        elements.par_iter().map(|e| self.dual_vector(e)).collect()
    }

    /// The full μ_p-valued table on F[β̄]^×.
    pub fn table(&self, units: &UnitGroup) -> Result<Cocycle2> {
        let vs = self.dual_vectors(units.elements())?;
        let g = units.table().clone();
        let gc = g.clone();
        Ok(Cocycle2::from_fn(g, self.chi.p(), move |x, y| self.exponent_from(&vs[x], &vs[gc.mul(x, y)])))
    }

    /// Checks c(ε,η) = ρ̃(½ε[v_η]ε⁻¹)·ρ̃(½[v_εη])⁻¹·ρ̃(½[v_ε]) for an additive
    /// ρ̃(X) = τ̂(Σ R_ij X_ij) on M_n(F) extending ρ.
    pub fn almost_coboundary_check(&self, ext: &Matrix, eps: &[Fq], eta: &[Fq]) -> Result<bool> {
        let k = self.field();
        let beta = self.space.beta();
        for (i, b) in beta.centralizer_basis().iter().enumerate() {
            if dot(ext.entries(), b.entries(), k) != self.rho.functional()[i] {
                return Err(Error::NotAnExtension);
            }
        }
        let alg = beta.algebra();
        let rt = |x: &Matrix| dot(ext.entries(), x.entries(), k);
        let ve = self.dual_vector(eps)?;
        let vh = self.dual_vector(eta)?;
        let vp = self.dual_vector(&alg.mul(eps, eta))?;
        let e = alg.to_matrix(eps);
        let ei = alg.to_matrix(&alg.inv(eps)?);
        let conj = e.mul(&self.space.section(&vh), k).mul(&ei, k);
        let s = k.add(k.sub(rt(&conj), rt(&self.space.section(&vp))), rt(&self.space.section(&ve)));
        let rhs = self.chi.exponent(k.mul(k.half(), s)) as u64;
        Ok(rhs == self.exponent_from(&ve, &vp))
    }

    /// γ(ε) = τ̂(½ ρ̃([v_ε])); a coboundary witness for c whenever ρ̃ is invariant
    /// under conjugation by units (trace form, or diagonal A in the split case).
    pub fn invariant_witness(&self, ext: &Matrix, eps: &[Fq]) -> Result<RootOfUnity> {
        let k = self.field();
        let v = self.dual_vector(eps)?;
        let s = dot(ext.entries(), self.space.section(&v).entries(), k);
        Ok(self.chi.value(k.mul(k.half(), s)))
    }
}

/// v_ε for units indexed by their position in the algebra, for groups too large
/// for a dense table.
pub struct DualVectorCache {
    index: HashMap<u64, usize>,
    vectors: Vec<Vec<Fq>>,
}

impl DualVectorCache {
    pub fn new(c: &CentralizerCocycle, elements: &[Vec<Fq>]) -> Result<Self> {
        let alg = c.space.beta().algebra();
        let vectors = c.dual_vectors(elements)?;
        let index = elements.iter().enumerate().map(|(i, e)| (alg.index(e), i)).collect();
        Ok(DualVectorCache { index, vectors })
    }

    pub fn get(&self, c: &CentralizerCocycle, e: &[Fq]) -> Result<&[Fq]> {
        let alg = c.space.beta().algebra();
        self.index.get(&alg.index(e)).map(|&i| self.vectors[i].as_slice()).ok_or(Error::NotUnit)
    }

    /// Exponent of c(ε, η) in Z/p.
    pub fn exponent(&self, c: &CentralizerCocycle, eps: &[Fq], eta: &[Fq]) -> Result<u64> {
        let alg = c.space.beta().algebra();
        Ok(c.exponent_from(self.get(c, eps)?, self.get(c, &alg.mul(eps, eta))?))
    }
}

/// v_εη − (εv_ηε⁻¹ + v_ε), which vanishes identically.
pub fn dual_vector_defect(c: &CentralizerCocycle, eps: &[Fq], eta: &[Fq]) -> Result<Vec<Fq>> {
    let k = c.field();
    let alg = c.space.beta().algebra();
    let inv = alg.inv(eps)?;
    let vh = c.dual_vector(eta)?;
    // εvε⁻¹ is σ_{ε⁻¹}
    let sig = c.space.sigma_of_unit(&inv)?;
    let rhs = vec_add(&sig.vec_mul(&vh, k), &c.dual_vector(eps)?, k);
    let lhs = c.dual_vector(&alg.mul(eps, eta))?;
    Ok(lhs.iter().zip(&rhs).map(|(&a, &b)| k.sub(a, b)).collect())
}
