use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::ffield::{AdditiveCharacter, FiniteField, Fq, RootOfUnity};
use crate::matalg::{dot, vec_add, Matrix, Polarization, SymplecticSpace};

/// Element (v, s) of the Heisenberg group V × C¹; s is kept exact.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeisenbergElement {
    pub v: Vec<Fq>,
    pub s: RootOfUnity,
}

impl HeisenbergElement {
    pub fn new(v: Vec<Fq>, s: RootOfUnity) -> Self {
        HeisenbergElement { v, s }
    }

    /// (u,s)(v,t) = (u+v, s·t·τ̂(½⟨u,v⟩)).
    pub fn mul(&self, other: &Self, space: &SymplecticSpace, chi: &AdditiveCharacter) -> Self {
        let k = space.field();
        let phase = chi.value(k.mul(k.half(), space.form(&self.v, &other.v)));
        HeisenbergElement { v: vec_add(&self.v, &other.v, k), s: self.s.mul(&other.s).mul(&phase) }
    }
}

/// Largest model dimension for which dense operators are built.
pub const MAX_MODEL_DIM: usize = 2401;

/// The Schrödinger model on functions on W′ for a polarization V = W′ ⊕ W.
/// Functions are vectors indexed by the base-q encoding of W′ coordinates.
#[derive(Clone, Debug)]
pub struct SchrodingerModel {
    space: SymplecticSpace,
    polarization: Polarization,
    chi: AdditiveCharacter,
    /// ⟨x, y⟩ for x ∈ W′, y ∈ W in polarization coordinates.
    pairing: Matrix,
    dim: usize,
    zeta: Vec<Complex64>,
}

impl SchrodingerModel {
    pub fn new(space: &SymplecticSpace, polarization: &Polarization, chi: &AdditiveCharacter) -> Result<Self> {
        let k = space.field();
        let m = polarization.half_dim();
        let dim = (k.q() as usize)
            .checked_pow(m as u32)
            .filter(|&d| d <= MAX_MODEL_DIM)
            .ok_or_else(|| Error::GroupTooLarge(usize::MAX))?;
        let pairing = polarization.w_minus().mul(space.gram(), k).mul(&polarization.w_plus().transpose(), k);
        let p = chi.p() as usize;
        let zeta = (0..p).map(|j| RootOfUnity::new(p as u64, j as i64).to_complex()).collect();
        Ok(SchrodingerModel {
            space: space.clone(),
            polarization: polarization.clone(),
            chi: chi.clone(),
            pairing,
            dim,
            zeta,
        })
    }

    pub fn space(&self) -> &SymplecticSpace {
        &self.space
    }
    pub fn polarization(&self) -> &Polarization {
        &self.polarization
    }
    pub fn character(&self) -> &AdditiveCharacter {
        &self.chi
    }
    pub fn field(&self) -> &FiniteField {
        self.space.field()
    }
    pub fn dim(&self) -> usize {
        self.dim
    }
    pub fn half_dim(&self) -> usize {
        self.polarization.half_dim()
    }

    pub fn index(&self, w: &[Fq]) -> usize {
        let q = self.field().q() as usize;
        w.iter().rev().fold(0, |acc, c| acc * q + c.0 as usize)
    }

    pub fn point(&self, mut idx: usize) -> Vec<Fq> {
        let q = self.field().q() as usize;
        (0..self.half_dim())
            .map(|_| {
                let c = Fq((idx % q) as u32);
                idx /= q;
                c
            })
            .collect()
    }

    /// ⟨x, y⟩ for x ∈ W′ and y ∈ W, both in polarization coordinates.
    pub fn pair(&self, x: &[Fq], y: &[Fq]) -> Fq {
        let k = self.field();
        dot(&self.pairing.vec_mul(x, k), y, k)
    }

    pub(crate) fn zeta(&self, e: u32) -> Complex64 {
        self.zeta[e as usize]
    }

    /// π(u,s) as a monomial matrix: row w has its single entry in column
    /// w + u₋, with value s·τ̂(½⟨u₋,u₊⟩ + ⟨w,u₊⟩).
    pub fn monomial(&self, h: &HeisenbergElement) -> Vec<(usize, RootOfUnity)> {
        let k = self.field();
        let (um, up) = self.polarization.coords(&h.v, k);
        let base = k.mul(k.half(), self.pair(&um, &up));
        (0..self.dim)
            .map(|i| {
                let w = self.point(i);
                let phase = self.chi.value(k.add(base, self.pair(&w, &up)));
                (self.index(&vec_add(&w, &um, k)), h.s.mul(&phase))
            })
            .collect()
    }

    pub fn apply(&self, h: &HeisenbergElement, f: &[Complex64]) -> Vec<Complex64> {
        self.monomial(h).into_iter().map(|(j, c)| c.to_complex() * f[j]).collect()
    }

    pub fn matrix(&self, h: &HeisenbergElement) -> DMatrix<Complex64> {
        let mut out = DMatrix::zeros(self.dim, self.dim);
        for (i, (j, c)) in self.monomial(h).into_iter().enumerate() {
            out[(i, j)] = c.to_complex();
        }
        out
    }
}
