use crate::error::{Error, Result};
use crate::ffield::{FiniteField, Fq};
use crate::matalg::Matrix;

/// Q(x) = x·gram·xᵗ with gram symmetric.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticForm {
    gram: Matrix,
}

impl QuadraticForm {
    pub fn from_gram(gram: Matrix) -> Result<Self> {
        if !gram.is_square() {
            return Err(Error::DimensionMismatch("gram matrix must be square".into()));
        }
        if !gram.is_symmetric() {
            return Err(Error::WrongShape("gram matrix must be symmetric".into()));
        }
        Ok(QuadraticForm { gram })
    }

    /// The form x ↦ x·b·xᵗ for an arbitrary square b (symmetrized).
    pub fn from_bilinear(b: &Matrix, k: &FiniteField) -> Self {
        let g = b.add(&b.transpose(), k).scale(k.half(), k);
        QuadraticForm { gram: g }
    }

    pub fn diagonal(entries: &[Fq]) -> Self {
        let n = entries.len();
        QuadraticForm { gram: Matrix::from_fn(n, n, |i, j| if i == j { entries[i] } else { Fq::ZERO }) }
    }

    pub fn zero(dim: usize) -> Self {
        QuadraticForm { gram: Matrix::zeros(dim, dim) }
    }

    pub fn dim(&self) -> usize {
        self.gram.nrows()
    }

    pub fn gram(&self) -> &Matrix {
        &self.gram
    }

    pub fn eval(&self, x: &[Fq], k: &FiniteField) -> Fq {
        crate::matalg::dot(&self.gram.vec_mul(x, k), x, k)
    }

    pub fn orthogonal_sum(&self, other: &Self) -> Self {
        QuadraticForm { gram: Matrix::block_diag(&[self.gram.clone(), other.gram.clone()]) }
    }

    /// The change of variables x ↦ x·P, i.e. gram ↦ P·gram·Pᵗ.
    pub fn transform(&self, p: &Matrix, k: &FiniteField) -> Self {
        QuadraticForm { gram: p.mul(&self.gram, k).mul(&p.transpose(), k) }
    }

    /// Nonzero diagonal entries ⟨a₁,…,a_r⟩ of an orthogonal basis; the remaining
    /// d − r directions span the radical.
    pub fn diagonalize(&self, k: &FiniteField) -> Vec<Fq> {
        let mut s = self.gram.clone();
        let d = s.nrows();
        let mut diag = Vec::new();
        for t in 0..d {
            let pivot = (t..d).find(|&i| !s.get(i, i).is_zero());
            let i = match pivot {
                Some(i) => i,
                None => {
                    let Some((i, j)) = (t..d)
                        .flat_map(|i| (i + 1..d).map(move |j| (i, j)))
                        .find(|&(i, j)| !s.get(i, j).is_zero())
                    else {
                        break;
                    };
                    // x_j ↦ x_j + x_i: row/column i added into j
                    for c in 0..d {
                        let v = k.add(s.get(j, c), s.get(i, c));
                        s.set(j, c, v);
                    }
                    for r in 0..d {
                        let v = k.add(s.get(r, j), s.get(r, i));
                        s.set(r, j, v);
                    }
                    j
                }
            };
            swap_sym(&mut s, t, i);
            let a = s.get(t, t);
            let ainv = k.inv(a).unwrap();
            for r in t + 1..d {
                let f = k.mul(s.get(r, t), ainv);
                if f.is_zero() {
                    continue;
                }
                for c in 0..d {
                    let v = k.sub(s.get(r, c), k.mul(f, s.get(t, c)));
                    s.set(r, c, v);
                }
                for c in 0..d {
                    let v = k.sub(s.get(c, r), k.mul(f, s.get(c, t)));
                    s.set(c, r, v);
                }
            }
            diag.push(a);
        }
        diag
    }

    pub fn rank(&self, k: &FiniteField) -> usize {
        self.gram.rank(k)
    }
}

fn swap_sym(s: &mut Matrix, a: usize, b: usize) {
    if a == b {
        return;
    }
    s.swap_rows(a, b);
    for r in 0..s.nrows() {
        let (x, y) = (s.get(r, a), s.get(r, b));
        s.set(r, a, y);
        s.set(r, b, x);
    }
}
