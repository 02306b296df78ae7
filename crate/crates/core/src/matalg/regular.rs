use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ffield::{FiniteField, Fq};
use crate::matalg::{Matrix, Poly};

/// Flattened row-major copy.
fn flat(m: &Matrix) -> Vec<Fq> {
    m.entries().to_vec()
}

/// True iff the minimal polynomial of `m` has degree n.
pub fn is_regular(m: &Matrix, k: &FiniteField) -> bool {
    if !m.is_square() {
        return false;
    }
    let n = m.nrows();
    let mut rows = Vec::with_capacity(n);
    let mut p = Matrix::identity(n);
    for _ in 0..n {
        rows.push(flat(&p));
        p = p.mul(m, k);
    }
    Matrix::from_rows(&rows).unwrap().rank(k) == n
}

/// J_m(a): a on the diagonal, 1 on the superdiagonal.
pub fn jordan_block(a: Fq, m: usize) -> Matrix {
    let mut j = Matrix::scalar(m, a);
    for i in 0..m.saturating_sub(1) {
        j.set(i, i + 1, Fq::ONE);
    }
    j
}

/// Structural classification used to pick canonical polarizations and closed forms.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BetaShape {
    /// Block-diagonal of Jordan blocks with distinct eigenvalues.
    Jordan(Vec<(u32, usize)>),
    /// Irreducible characteristic polynomial.
    Irreducible,
    /// Characteristic polynomial p(t)^e with deg p ≥ 2, e ≥ 2.
    PrimaryNonSplit,
    /// Several diagonal blocks, not all Jordan.
    Mixed,
    /// Anything else (e.g. a regular matrix not in block-canonical form).
    General,
}

/// F[β̄] with elements written on the power basis 1, β̄, …, β̄^{n−1}.
#[derive(Clone, Debug)]
pub struct CentralizerAlgebra {
    field: FiniteField,
    n: usize,
    charpoly: Poly,
    powers: Vec<Matrix>,
    /// t^k mod χ for k < 2n − 1.
    reductions: Vec<Vec<Fq>>,
    /// Entry positions (row-major) on which the power basis is already independent.
    pivots: Vec<usize>,
    pivot_inv: Matrix,
}

impl CentralizerAlgebra {
    fn new(field: &FiniteField, charpoly: &Poly, powers: Vec<Matrix>) -> Self {
        let k = field;
        let n = powers.len();
        let mut reductions = Vec::with_capacity(2 * n);
        for e in 0..(2 * n).max(1) - 1 {
            let mut c = vec![Fq::ZERO; e + 1];
            c[e] = Fq::ONE;
            let r = Poly::new(c).rem(charpoly, k);
            let mut v = r.coeffs().to_vec();
            v.resize(n, Fq::ZERO);
            reductions.push(v);
        }
        let s = Matrix::from_rows(&powers.iter().map(flat).collect::<Vec<_>>()).unwrap();
        let (_, pivots) = s.rref(k);
        let sj = Matrix::from_fn(n, n, |i, j| s.get(i, pivots[j]));
        let pivot_inv = sj.inverse(k).expect("power basis is independent");
        CentralizerAlgebra { field: field.clone(), n, charpoly: charpoly.clone(), powers, reductions, pivots, pivot_inv }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    pub fn basis(&self) -> &[Matrix] {
        &self.powers
    }

    pub fn zero(&self) -> Vec<Fq> {
        vec![Fq::ZERO; self.n]
    }

    pub fn one(&self) -> Vec<Fq> {
        let mut v = self.zero();
        v[0] = Fq::ONE;
        v
    }

    /// Coordinates of β̄ itself (for n = 1 this is the scalar β̄).
    pub fn generator(&self) -> Vec<Fq> {
        if self.n == 1 {
            return vec![self.field.neg(self.charpoly.coeff(0))];
        }
        let mut v = self.zero();
        v[1] = Fq::ONE;
        v
    }

    pub fn scalar(&self, a: Fq) -> Vec<Fq> {
        let mut v = self.zero();
        v[0] = a;
        v
    }

    pub fn add(&self, a: &[Fq], b: &[Fq]) -> Vec<Fq> {
        a.iter().zip(b).map(|(&x, &y)| self.field.add(x, y)).collect()
    }

    pub fn sub(&self, a: &[Fq], b: &[Fq]) -> Vec<Fq> {
        a.iter().zip(b).map(|(&x, &y)| self.field.sub(x, y)).collect()
    }

    pub fn scale(&self, c: Fq, a: &[Fq]) -> Vec<Fq> {
        a.iter().map(|&x| self.field.mul(c, x)).collect()
    }

    pub fn mul(&self, a: &[Fq], b: &[Fq]) -> Vec<Fq> {
        let k = &self.field;
        let mut prod = vec![Fq::ZERO; 2 * self.n - 1];
        for (i, &x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] = k.add(prod[i + j], k.mul(x, y));
            }
        }
        let mut out = self.zero();
        for (e, &c) in prod.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (o, &r) in out.iter_mut().zip(&self.reductions[e]) {
                *o = k.add(*o, k.mul(c, r));
            }
        }
        out
    }

    pub fn pow(&self, a: &[Fq], mut e: u64) -> Vec<Fq> {
        let mut base = a.to_vec();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    pub fn to_matrix(&self, a: &[Fq]) -> Matrix {
        let k = &self.field;
        let n = self.powers[0].nrows();
        let mut m = Matrix::zeros(n, n);
        for (&c, p) in a.iter().zip(&self.powers) {
            if !c.is_zero() {
                m = m.add(&p.scale(c, k), k);
            }
        }
        m
    }

    /// Power-basis coordinates of X if X ∈ F[β̄].
    pub fn from_matrix(&self, x: &Matrix) -> Option<Vec<Fq>> {
        let xs: Vec<Fq> = self.pivots.iter().map(|&p| x.entries()[p]).collect();
        let c = self.pivot_inv.vec_mul(&xs, &self.field);
        (self.to_matrix(&c) == *x).then_some(c)
    }

    /// Multiplication-by-a as an n×n matrix acting on row coordinates (x ↦ x·M = a·x).
    pub fn mult_matrix(&self, a: &[Fq]) -> Matrix {
        let rows: Vec<Vec<Fq>> = (0..self.n)
            .map(|i| {
                let mut e = self.zero();
                e[i] = Fq::ONE;
                self.mul(&e, a)
            })
            .collect();
        Matrix::from_rows(&rows).unwrap()
    }

    pub fn is_unit(&self, a: &[Fq]) -> bool {
        let p = Poly::new(a.to_vec());
        !p.is_zero() && p.gcd(&self.charpoly, &self.field).degree() == Some(0)
    }

    pub fn inv(&self, a: &[Fq]) -> Result<Vec<Fq>> {
        if !self.is_unit(a) {
            return Err(Error::NotUnit);
        }
        // x·M = 1 means Mᵗ·xᵗ = 1
        self.mult_matrix(a).transpose().solve(&self.one(), &self.field).ok_or(Error::NotUnit)
    }

    /// Base-q integer encoding Σ c_i q^i.
    pub fn index(&self, a: &[Fq]) -> u64 {
        let q = self.field.q() as u64;
        a.iter().rev().fold(0u64, |acc, c| acc * q + c.0 as u64)
    }

    pub fn from_index(&self, mut idx: u64) -> Vec<Fq> {
        let q = self.field.q() as u64;
        (0..self.n)
            .map(|_| {
                let c = Fq((idx % q) as u32);
                idx /= q;
                c
            })
            .collect()
    }

    pub fn order(&self) -> u64 {
        (self.field.q() as u64).pow(self.n as u32)
    }

    /// |F[β̄]^×| from the factorization of χ: Π q^{d(e−1)}(q^d − 1).
    pub fn unit_count(&self) -> u64 {
        let q = self.field.q() as u64;
        self.charpoly
            .factor(&self.field)
            .iter()
            .map(|(p, e)| {
                let d = p.degree().unwrap() as u32;
                q.pow(d * (*e as u32 - 1)) * (q.pow(d) - 1)
            })
            .product()
    }

    /// All units in index order. Fails above `bound` elements.
    pub fn units(&self, bound: usize) -> Result<Vec<Vec<Fq>>> {
        let count = self.unit_count() as usize;
        if count > bound {
            return Err(Error::GroupTooLarge(count));
        }
        Ok((0..self.order()).map(|i| self.from_index(i)).filter(|a| self.is_unit(a)).collect())
    }

    pub fn charpoly(&self) -> &Poly {
        &self.charpoly
    }
}

#[derive(Debug)]
struct RegularInner {
    field: FiniteField,
    beta: Matrix,
    charpoly: Poly,
    factors: Vec<(Poly, usize)>,
    algebra: CentralizerAlgebra,
    blocks: Vec<(usize, usize)>,
    shape: BetaShape,
    descriptor: String,
}

/// A regular β̄ ∈ M_n(F) with its factored characteristic polynomial.
#[derive(Clone, Debug)]
pub struct RegularMatrix {
    inner: Arc<RegularInner>,
}

impl RegularMatrix {
    pub fn new(field: &FiniteField, beta: Matrix) -> Result<Self> {
        Self::with_descriptor(field, beta, None)
    }

    fn with_descriptor(field: &FiniteField, beta: Matrix, descriptor: Option<String>) -> Result<Self> {
        let k = field;
        if !beta.is_square() || beta.nrows() == 0 {
            return Err(Error::DimensionMismatch("beta must be a nonempty square matrix".into()));
        }
        if !is_regular(&beta, k) {
            return Err(Error::NotRegular);
        }
        let n = beta.nrows();
        let mut powers = Vec::with_capacity(n);
        let mut p = Matrix::identity(n);
        for _ in 0..n {
            powers.push(p.clone());
            p = p.mul(&beta, k);
        }
        // β̄^n = Σ c_i β̄^i
        let s = Matrix::from_rows(&powers.iter().map(flat).collect::<Vec<_>>()).unwrap();
        let c = s.transpose().solve(&flat(&p), k).expect("β̄^n lies in the span of lower powers");
        let mut cp: Vec<Fq> = c.iter().map(|&x| k.neg(x)).collect();
        cp.push(Fq::ONE);
        let charpoly = Poly::new(cp);
        let factors = charpoly.factor(k);
        let algebra = CentralizerAlgebra::new(k, &charpoly, powers);
        let blocks = diagonal_blocks(&beta);
        let shape = classify(k, &beta, &blocks, &factors);
        let descriptor = descriptor.unwrap_or_else(|| match &shape {
            BetaShape::Jordan(j) => jordan_descriptor(k, j),
            _ => format!("matrix:{beta:?}"),
        });
        Ok(RegularMatrix {
            inner: Arc::new(RegularInner { field: k.clone(), beta, charpoly, factors, algebra, blocks, shape, descriptor }),
        })
    }

    /// Block-diagonal Jordan matrix; blocks are sorted by (eigenvalue, size).
    pub fn jordan(field: &FiniteField, blocks: &[(Fq, usize)]) -> Result<Self> {
        let mut b = blocks.to_vec();
        b.sort();
        if b.iter().any(|&(_, m)| m == 0) || b.is_empty() {
            return Err(Error::WrongShape("Jordan blocks must be nonempty".into()));
        }
        for w in b.windows(2) {
            if w[0].0 == w[1].0 {
                return Err(Error::DuplicateEigenvalue(field.format(w[0].0)));
            }
        }
        let m = Matrix::block_diag(&b.iter().map(|&(a, s)| jordan_block(a, s)).collect::<Vec<_>>());
        Self::new(field, m)
    }

    /// Companion matrix of a monic polynomial.
    pub fn companion(field: &FiniteField, poly: &Poly) -> Result<Self> {
        if !poly.is_monic() || poly.degree().unwrap_or(0) == 0 {
            return Err(Error::WrongShape("companion polynomial must be monic of degree >= 1".into()));
        }
        let d = format!("charpoly:{}", poly.format(field));
        Self::with_descriptor(field, poly.companion(field), Some(d))
    }

    /// Block-diagonal sum of regular matrices with pairwise coprime characteristic polynomials.
    pub fn block_sum(field: &FiniteField, parts: &[RegularMatrix]) -> Result<Self> {
        let m = Matrix::block_diag(&parts.iter().map(|p| p.beta().clone()).collect::<Vec<_>>());
        let d = parts.iter().map(|p| p.descriptor().to_string()).collect::<Vec<_>>().join("+");
        Self::with_descriptor(field, m, Some(format!("blocks:{d}")))
    }

    /// Canonical representative for a squarefree characteristic polynomial: 1×1 blocks for
    /// linear factors, companion blocks for the others.
    pub fn separable_representative(field: &FiniteField, poly: &Poly) -> Result<Self> {
        let fac = poly.factor(field);
        if fac.iter().any(|(_, e)| *e > 1) {
            return Err(Error::WrongShape("characteristic polynomial is not squarefree".into()));
        }
        let blocks: Vec<Matrix> = fac.iter().map(|(p, _)| p.companion(field)).collect();
        let d = format!("charpoly:{}", poly.monic(field).format(field));
        Self::with_descriptor(field, Matrix::block_diag(&blocks), Some(d))
    }

    pub fn field(&self) -> &FiniteField {
        &self.inner.field
    }
    pub fn n(&self) -> usize {
        self.inner.beta.nrows()
    }
    pub fn beta(&self) -> &Matrix {
        &self.inner.beta
    }
    pub fn charpoly(&self) -> &Poly {
        &self.inner.charpoly
    }
    pub fn factors(&self) -> &[(Poly, usize)] {
        &self.inner.factors
    }
    pub fn algebra(&self) -> &CentralizerAlgebra {
        &self.inner.algebra
    }
    pub fn centralizer_basis(&self) -> &[Matrix] {
        self.inner.algebra.basis()
    }
    /// Finest block-diagonal decomposition as (start, size).
    pub fn blocks(&self) -> &[(usize, usize)] {
        &self.inner.blocks
    }
    pub fn shape(&self) -> &BetaShape {
        &self.inner.shape
    }
    pub fn descriptor(&self) -> &str {
        &self.inner.descriptor
    }

    pub fn is_irreducible(&self) -> bool {
        self.inner.shape == BetaShape::Irreducible
    }

    pub fn is_separable(&self) -> bool {
        self.inner.factors.iter().all(|(_, e)| *e == 1)
    }

    /// Jordan data (eigenvalue, size) when β̄ is in split Jordan form.
    pub fn jordan_data(&self) -> Option<Vec<(Fq, usize)>> {
        match &self.inner.shape {
            BetaShape::Jordan(j) => Some(j.iter().map(|&(a, m)| (Fq(a), m)).collect()),
            _ => None,
        }
    }

    /// The diagonal block starting at `start` as its own regular matrix.
    pub fn block(&self, idx: usize) -> RegularMatrix {
        let (s, m) = self.inner.blocks[idx];
        RegularMatrix::new(self.field(), self.beta().submatrix(s, s, m, m)).expect("diagonal blocks of a regular matrix are regular")
    }
}

fn jordan_descriptor(k: &FiniteField, j: &[(u32, usize)]) -> String {
    let parts: Vec<String> = j.iter().map(|&(a, m)| format!("{m}:{}", k.format(Fq(a)))).collect();
    format!("jordan:{}", parts.join(","))
}

fn diagonal_blocks(m: &Matrix) -> Vec<(usize, usize)> {
    let n = m.nrows();
    let mut out = Vec::new();
    let mut start = 0;
    for cut in 1..=n {
        let separated = cut == n
            || (0..cut).all(|i| (cut..n).all(|j| m.get(i, j).is_zero() && m.get(j, i).is_zero()));
        if separated {
            out.push((start, cut - start));
            start = cut;
        }
    }
    out
}

fn classify(k: &FiniteField, beta: &Matrix, blocks: &[(usize, usize)], factors: &[(Poly, usize)]) -> BetaShape {
    let mut jordan = Vec::new();
    let mut all_jordan = true;
    for &(s, m) in blocks {
        let a = beta.get(s, s);
        if beta.submatrix(s, s, m, m) == jordan_block(a, m) {
            jordan.push((a.0, m));
        } else {
            all_jordan = false;
        }
    }
    if all_jordan {
        return BetaShape::Jordan(jordan);
    }
    let _ = k;
    if factors.len() == 1 {
        let (p, e) = &factors[0];
        if *e == 1 {
            return BetaShape::Irreducible;
        }
        if p.degree().unwrap() >= 2 {
            return BetaShape::PrimaryNonSplit;
        }
    }
    if blocks.len() > 1 {
        BetaShape::Mixed
    } else {
        BetaShape::General
    }
}
