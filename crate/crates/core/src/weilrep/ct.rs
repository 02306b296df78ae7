use serde::Serialize;

use super::operator::SymplecticMap;
use crate::cohom::Cocycle2;
use crate::error::Result;
use crate::ffield::{AdditiveCharacter, FiniteField, Fq, QuadraticForm, RootOfUnity};
use crate::matalg::{Matrix, Polarization, RegularMatrix, SymplecticSpace, UnitGroup};

/// c_T(ε,η), defined by T(σ_ε)T(σ_η) = c_T(ε,η)·T(σ_εη) for the Weil
/// operators of a fixed polarization.
///
/// Evaluating both sides on the point mass at 0 gives
/// c_T = γ(Φ|_K) with K = {(u,v) ∈ W² : u·c·a′ + v·c′ = 0} and
/// Φ(u,v) = ½⟨uc, ud⟩ − ½⟨uc, v⟩, where [[a,b],[c,d]] and [[a′,b′],[c′,d′]]
/// are the blocks of σ and σ′.
#[derive(Clone, Debug)]
pub struct WeilCocycle {
    space: SymplecticSpace,
    pol: Polarization,
    chi: AdditiveCharacter,
    pairing: Matrix,
}

impl WeilCocycle {
    pub fn new(space: &SymplecticSpace, pol: &Polarization, chi: &AdditiveCharacter) -> Self {
        let k = space.field();
        let pairing = pol.w_minus().mul(space.gram(), k).mul(&pol.w_plus().transpose(), k);
        WeilCocycle { space: space.clone(), pol: pol.clone(), chi: chi.clone(), pairing }
    }

    /// Uses the canonical polarization of the space.
    pub fn canonical(space: &SymplecticSpace, chi: &AdditiveCharacter) -> Result<Self> {
        Ok(Self::new(space, &Polarization::canonical(space)?, chi))
    }

    pub fn space(&self) -> &SymplecticSpace {
        &self.space
    }
    pub fn polarization(&self) -> &Polarization {
        &self.pol
    }
    pub fn character(&self) -> &AdditiveCharacter {
        &self.chi
    }
    fn field(&self) -> &FiniteField {
        self.space.field()
    }

    pub fn sigma(&self, eps: &[Fq]) -> Result<SymplecticMap> {
        SymplecticMap::of_unit(&self.space, &self.pol, eps)
    }

    /// Q(u,v,w) = ⟨u,vσ′⟩ + ⟨v,wσ⟩ − ⟨u,wσσ′⟩ in coordinates on the W′ basis.
    /// For the involution polarization γ(Q)⁻¹ equals c_T; for split
    /// polarizations it does not.
    pub fn q_form(&self, sigma: &Matrix, sigma2: &Matrix) -> QuadraticForm {
        self.q_form_on(self.pol.w_minus(), sigma, sigma2)
    }

    pub fn q_form_plus(&self, sigma: &Matrix, sigma2: &Matrix) -> QuadraticForm {
        self.q_form_on(self.pol.w_plus(), sigma, sigma2)
    }

    fn q_form_on(&self, wm: &Matrix, sigma: &Matrix, sigma2: &Matrix) -> QuadraticForm {
        let k = self.field();
        let m = self.pol.half_dim();
        let g = self.space.gram();
        let block = |s: &Matrix| wm.mul(g, k).mul(&wm.mul(s, k).transpose(), k);
        let uv = block(sigma2);
        let vw = block(sigma);
        let uw = block(&sigma.mul(sigma2, k)).neg(k);
        let mut b = Matrix::zeros(3 * m, 3 * m);
        for i in 0..m {
            for j in 0..m {
                b.set(i, m + j, uv.get(i, j));
                b.set(m + i, 2 * m + j, vw.get(i, j));
                b.set(i, 2 * m + j, uw.get(i, j));
            }
        }
        QuadraticForm::from_bilinear(&b, k)
    }

    fn blocks(&self, sigma: &Matrix) -> [Matrix; 3] {
        let k = self.field();
        let m = self.pol.half_dim();
        let ad = self.pol.adapted(sigma, k);
        [ad.submatrix(0, 0, m, m), ad.submatrix(m, 0, m, m), ad.submatrix(m, m, m, m)]
    }

    /// The quadratic space (K, Φ) whose Weil constant is c_T(σ, σ′).
    pub fn composition_form(&self, sigma: &Matrix, sigma2: &Matrix) -> QuadraticForm {
        let k = self.field();
        let m = self.pol.half_dim();
        let [_, c, d] = self.blocks(sigma);
        let [a2, c2, _] = self.blocks(sigma2);
        let kernel = c.mul(&a2, k).vstack(&c2).transpose().nullspace(k);
        if kernel.is_empty() {
            return QuadraticForm::zero(0);
        }
        let cp = c.mul(&self.pairing, k);
        let tl = cp.mul(&d.transpose(), k);
        let half = k.half();
        let mut b = Matrix::zeros(2 * m, 2 * m);
        for i in 0..m {
            for j in 0..m {
                b.set(i, j, k.mul(half, tl.get(i, j)));
                b.set(i, m + j, k.neg(k.mul(half, cp.get(i, j))));
            }
        }
        QuadraticForm::from_bilinear(&b, k).transform(&Matrix::from_rows(&kernel).unwrap(), k)
    }

    pub fn value_maps(&self, sigma: &Matrix, sigma2: &Matrix) -> RootOfUnity {
        self.chi.weil_constant_form(&self.composition_form(sigma, sigma2))
    }

    /// γ(Q)⁻¹ with Q from `q_form`.
    pub fn q_form_value(&self, sigma: &Matrix, sigma2: &Matrix) -> RootOfUnity {
        self.chi.weil_constant_form(&self.q_form(sigma, sigma2)).inv()
    }

    pub fn value(&self, eps: &[Fq], eta: &[Fq]) -> Result<RootOfUnity> {
        let s1 = self.space.sigma_of_unit(eps)?;
        let s2 = self.space.sigma_of_unit(eta)?;
        Ok(self.value_maps(&s1, &s2))
    }

    /// The full table on F[β̄]^×; σ_ε is computed once per element.
    pub fn table(&self, units: &UnitGroup) -> Result<Cocycle2> {
        let sigmas: Vec<Matrix> =
            units.elements().iter().map(|e| self.space.sigma_of_unit(e)).collect::<Result<_>>()?;
        Ok(Cocycle2::from_roots(units.table().clone(), |x, y| self.value_maps(&sigmas[x], &sigmas[y])))
    }
}

/// Outcome of comparing the global c_T with the product of the blockwise ones.
#[derive(Clone, Debug, Serialize)]
pub struct BlockReductionReport {
    pub blocks: usize,
    pub pairs: usize,
    pub tables_equal: bool,
    pub classes_equal: bool,
    pub global_trivial: bool,
}

/// Global c_T with the assembled polarization M⁻ ⊕ (blockwise W′) against
/// Π c_i(ε_i, η_i) with each block's canonical polarization.
pub fn c_t_block_reduction(beta: &RegularMatrix, chi: &AdditiveCharacter, bound: usize) -> Result<BlockReductionReport> {
    use crate::matalg::ComplementHint;
    let space = SymplecticSpace::new(beta, ComplementHint::Greedy)?;
    let global = WeilCocycle::new(&space, &Polarization::assembled(&space)?, chi);
    let units = UnitGroup::new(beta.algebra(), bound)?;
    let global_table = global.table(&units)?;

    let blocks = beta.blocks().to_vec();
    let mut local = Vec::new();
    for idx in 0..blocks.len() {
        let b = beta.block(idx);
        let s = SymplecticSpace::new(&b, ComplementHint::Greedy)?;
        local.push(WeilCocycle::canonical(&s, chi)?);
    }
    let alg = beta.algebra();
    // ε_i as coordinates in F[β̄_i]
    let parts: Vec<Vec<Vec<Fq>>> = units
        .elements()
        .iter()
        .map(|e| {
            let m = alg.to_matrix(e);
            blocks
                .iter()
                .zip(&local)
                .map(|(&(s, len), w)| {
                    w.space().beta().algebra().from_matrix(&m.submatrix(s, s, len, len)).expect("block of a centralizer element")
                })
                .collect()
        })
        .collect();
    let sigmas: Vec<Vec<Matrix>> = parts
        .iter()
        .map(|ps| ps.iter().zip(&local).map(|(p, w)| w.space().sigma_of_unit(p)).collect::<Result<_>>())
        .collect::<Result<_>>()?;
    let product = Cocycle2::from_roots(units.table().clone(), |x, y| {
        local
            .iter()
            .enumerate()
            .fold(RootOfUnity::one(), |acc, (i, w)| acc.mul(&w.value_maps(&sigmas[x][i], &sigmas[y][i])))
    });
    let n = units.order();
    let tables_equal = (0..n).all(|x| (0..n).all(|y| global_table.root(x, y) == product.root(x, y)));
    let classes_equal = global_table.antisym_roots() == product.antisym_roots();
    Ok(BlockReductionReport {
        blocks: blocks.len(),
        pairs: n * n,
        tables_equal,
        classes_equal,
        global_trivial: global_table.is_trivial_class(),
    })
}
