use nalgebra::DMatrix;
use num_complex::Complex64;

use super::schrodinger::SchrodingerModel;
use crate::error::{Error, Result};
use crate::ffield::{Fq, RootOfUnity};
use crate::matalg::{vec_add, Matrix, Polarization, SymplecticSpace};

/// σ ∈ Sp(V) with its blocks [[a, b], [c, d]] relative to V = W′ ⊕ W
/// (row vectors: w ↦ wa + wb for w ∈ W′).
#[derive(Clone, Debug, PartialEq)]
pub struct SymplecticMap {
    pub matrix: Matrix,
    pub a: Matrix,
    pub b: Matrix,
    pub c: Matrix,
    pub d: Matrix,
}

impl SymplecticMap {
    pub fn new(space: &SymplecticSpace, pol: &Polarization, sigma: &Matrix) -> Result<Self> {
        if !space.is_symplectic(sigma) {
            return Err(Error::WrongShape("map does not preserve the symplectic form".into()));
        }
        let k = space.field();
        let m = pol.half_dim();
        let ad = pol.adapted(sigma, k);
        Ok(SymplecticMap {
            matrix: sigma.clone(),
            a: ad.submatrix(0, 0, m, m),
            b: ad.submatrix(0, m, m, m),
            c: ad.submatrix(m, 0, m, m),
            d: ad.submatrix(m, m, m, m),
        })
    }

    /// σ_ε: v ↦ ε⁻¹vε, for ε in power-basis coordinates.
    pub fn of_unit(space: &SymplecticSpace, pol: &Polarization, eps: &[Fq]) -> Result<Self> {
        Self::new(space, pol, &space.sigma_of_unit(eps)?)
    }

    pub fn in_borel(&self) -> bool {
        self.c.is_zero()
    }
}

/// The Weil operator (Tf)(w) = C·Σ_{v∈W} f(wa+vc)·τ̂(½⟨wa+vc, wb+vd⟩ − ½⟨w,v⟩).
/// Summing over all of W instead of W/Ker c only rescales, and C is chosen
/// so that T is unitary.
pub fn weil_operator(model: &SchrodingerModel, sigma: &SymplecticMap) -> DMatrix<Complex64> {
    let k = model.field();
    let chi = model.character();
    let dim = model.dim();
    let half = k.half();
    let mut t = DMatrix::<Complex64>::zeros(dim, dim);
    let points: Vec<Vec<Fq>> = (0..dim).map(|i| model.point(i)).collect();
    let va: Vec<Vec<Fq>> = points.iter().map(|v| sigma.c.vec_mul(v, k)).collect();
    let vd: Vec<Vec<Fq>> = points.iter().map(|v| sigma.d.vec_mul(v, k)).collect();
    for (i, w) in points.iter().enumerate() {
        let wa = sigma.a.vec_mul(w, k);
        let wb = sigma.b.vec_mul(w, k);
        for (j, v) in points.iter().enumerate() {
            let x = vec_add(&wa, &va[j], k);
            let y = vec_add(&wb, &vd[j], k);
            let e = k.mul(half, k.sub(model.pair(&x, &y), model.pair(w, v)));
            t[(i, model.index(&x))] += model.zeta(chi.exponent(e));
        }
    }
    let norm2: f64 = t.iter().map(|z| z.norm_sqr()).sum();
    t * Complex64::new((dim as f64 / norm2).sqrt(), 0.0)
}

/// If `a ≈ λ·b` within `tol` entrywise, returns λ.
pub fn scalar_ratio(a: &DMatrix<Complex64>, b: &DMatrix<Complex64>, tol: f64) -> Option<Complex64> {
    let (idx, _) = b.iter().enumerate().max_by(|x, y| x.1.norm().partial_cmp(&y.1.norm()).unwrap())?;
    let pivot = b.iter().nth(idx)?;
    if pivot.norm() < tol {
        return None;
    }
    let lambda = a.iter().nth(idx)? / pivot;
    a.iter().zip(b.iter()).all(|(x, y)| (x - lambda * y).norm() < tol).then_some(lambda)
}

/// The scalar c with T(σ)T(σ′) = c·T(σσ′), snapped to μ_{4p}.
pub fn operator_cocycle(
    model: &SchrodingerModel,
    sigma: &SymplecticMap,
    sigma2: &SymplecticMap,
    product: &SymplecticMap,
) -> Result<RootOfUnity> {
    let lhs = weil_operator(model, sigma) * weil_operator(model, sigma2);
    let rhs = weil_operator(model, product);
    let lambda = scalar_ratio(&lhs, &rhs, 1e-9).ok_or_else(|| Error::IntertwinerNotScalar("T(σ)T(σ′) vs T(σσ′)".into()))?;
    let m = 4 * model.character().p();
    RootOfUnity::snap(lambda, m, 1e-6).ok_or(Error::SnapFailure(m))
}
