use std::fmt;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ffield::{FiniteField, Fq};

/// Dense matrix over F_q, row-major. Arithmetic takes the field explicitly.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Fq>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            let r: Vec<String> = self.row(i).iter().map(|x| x.0.to_string()).collect();
            write!(f, "{}", r.join(" "))?;
        }
        write!(f, "]")
    }
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![Fq::ZERO; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        Self::scalar(n, Fq::ONE)
    }

    pub fn scalar(n: usize, a: Fq) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, a);
        }
        m
    }

    /// The matrix unit E_ij.
    pub fn unit(n: usize, i: usize, j: usize) -> Self {
        let mut m = Self::zeros(n, n);
        m.set(i, j, Fq::ONE);
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Fq) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<Fq>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn from_rows(rows: &[Vec<Fq>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        if rows.iter().any(|x| x.len() != c) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Ok(Matrix { rows: r, cols: c, data: rows.concat() })
    }

    /// Convenience constructor from small integers (reduced into the prime field).
    pub fn from_ints(k: &FiniteField, rows: &[&[i64]]) -> Self {
        let v: Vec<Vec<Fq>> = rows.iter().map(|r| r.iter().map(|&x| k.from_int(x)).collect()).collect();
        Self::from_rows(&v).expect("rectangular")
    }

    pub fn random<R: Rng + ?Sized>(k: &FiniteField, rows: usize, cols: usize, rng: &mut R) -> Self {
        Self::from_fn(rows, cols, |_, _| k.random(rng))
    }

    pub fn random_invertible<R: Rng + ?Sized>(k: &FiniteField, n: usize, rng: &mut R) -> Self {
        loop {
            let m = Self::random(k, n, n, rng);
            if m.rank(k) == n {
                return m;
            }
        }
    }

    pub fn block_diag(blocks: &[Matrix]) -> Self {
        let n: usize = blocks.iter().map(|b| b.rows).sum();
        let m: usize = blocks.iter().map(|b| b.cols).sum();
        let mut out = Self::zeros(n, m);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    out.set(r0 + i, c0 + j, b.get(i, j));
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }
    pub fn ncols(&self) -> usize {
        self.cols
    }
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Fq {
        self.data[i * self.cols + j]
    }
    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Fq) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Fq] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<Fq> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    /// Row-major entries.
    pub fn entries(&self) -> &[Fq] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i))
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && *self == self.transpose()
    }

    pub fn add(&self, other: &Self, k: &FiniteField) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch in add");
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| k.add(a, b)).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, other: &Self, k: &FiniteField) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch in sub");
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| k.sub(a, b)).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn neg(&self, k: &FiniteField) -> Self {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|&a| k.neg(a)).collect() }
    }

    pub fn scale(&self, c: Fq, k: &FiniteField) -> Self {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|&a| k.mul(c, a)).collect() }
    }

    pub fn mul(&self, other: &Self, k: &FiniteField) -> Self {
        assert_eq!(self.cols, other.rows, "shape mismatch in mul");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self.get(i, l);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = k.add(out.get(i, j), k.mul(a, other.get(l, j)));
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    /// XY − YX.
    pub fn commutator(&self, other: &Self, k: &FiniteField) -> Self {
        self.mul(other, k).sub(&other.mul(self, k), k)
    }

    pub fn pow(&self, mut e: u64, k: &FiniteField) -> Self {
        let mut base = self.clone();
        let mut acc = Self::identity(self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base, k);
            }
            base = base.mul(&base, k);
            e >>= 1;
        }
        acc
    }

    pub fn trace(&self, k: &FiniteField) -> Fq {
        k.sum((0..self.rows.min(self.cols)).map(|i| self.get(i, i)))
    }

    /// v·A for a row vector v.
    pub fn vec_mul(&self, v: &[Fq], k: &FiniteField) -> Vec<Fq> {
        assert_eq!(v.len(), self.rows, "shape mismatch in vec_mul");
        let mut out = vec![Fq::ZERO; self.cols];
        for (i, &a) in v.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, o) in out.iter_mut().enumerate() {
                *o = k.add(*o, k.mul(a, self.get(i, j)));
            }
        }
        out
    }

    /// A·v for a column vector v.
    pub fn mul_vec(&self, v: &[Fq], k: &FiniteField) -> Vec<Fq> {
        assert_eq!(v.len(), self.cols, "shape mismatch in mul_vec");
        (0..self.rows).map(|i| dot(self.row(i), v, k)).collect()
    }

    /// Pᵗ A P.
    pub fn congruence(&self, p: &Self, k: &FiniteField) -> Self {
        p.transpose().mul(self, k).mul(p, k)
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self, k: &FiniteField) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(piv) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else { continue };
            m.swap_rows(r, piv);
            let inv = k.inv(m.get(r, c)).unwrap();
            for j in 0..m.cols {
                let v = k.mul(inv, m.get(r, j));
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let f = m.get(i, c);
                if f.is_zero() {
                    continue;
                }
                for j in 0..m.cols {
                    let v = k.sub(m.get(i, j), k.mul(f, m.get(r, j)));
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self, k: &FiniteField) -> usize {
        self.rref(k).1.len()
    }

    pub fn det(&self, k: &FiniteField) -> Fq {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let mut m = self.clone();
        let n = m.rows;
        let mut det = Fq::ONE;
        for c in 0..n {
            let Some(piv) = (c..n).find(|&i| !m.get(i, c).is_zero()) else { return Fq::ZERO };
            if piv != c {
                m.swap_rows(c, piv);
                det = k.neg(det);
            }
            let d = m.get(c, c);
            det = k.mul(det, d);
            let inv = k.inv(d).unwrap();
            for i in c + 1..n {
                let f = k.mul(m.get(i, c), inv);
                if f.is_zero() {
                    continue;
                }
                for j in c..n {
                    let v = k.sub(m.get(i, j), k.mul(f, m.get(c, j)));
                    m.set(i, j, v);
                }
            }
        }
        det
    }

    pub fn inverse(&self, k: &FiniteField) -> Option<Self> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let aug = Self::from_fn(n, 2 * n, |i, j| {
            if j < n {
                self.get(i, j)
            } else if j - n == i {
                Fq::ONE
            } else {
                Fq::ZERO
            }
        });
        let (r, piv) = aug.rref(k);
        if piv.len() < n || piv[n - 1] != n - 1 {
            return None;
        }
        Some(Self::from_fn(n, n, |i, j| r.get(i, n + j)))
    }

    /// Basis of {x : A x = 0}.
    pub fn nullspace(&self, k: &FiniteField) -> Vec<Vec<Fq>> {
        let (r, piv) = self.rref(k);
        let free: Vec<usize> = (0..self.cols).filter(|c| !piv.contains(c)).collect();
        free.iter()
            .map(|&fc| {
                let mut x = vec![Fq::ZERO; self.cols];
                x[fc] = Fq::ONE;
                for (row, &pc) in piv.iter().enumerate() {
                    x[pc] = k.neg(r.get(row, fc));
                }
                x
            })
            .collect()
    }

    /// Some solution of A x = b, if consistent.
    pub fn solve(&self, b: &[Fq], k: &FiniteField) -> Option<Vec<Fq>> {
        assert_eq!(b.len(), self.rows, "shape mismatch in solve");
        let aug = Self::from_fn(self.rows, self.cols + 1, |i, j| if j < self.cols { self.get(i, j) } else { b[i] });
        let (r, piv) = aug.rref(k);
        if piv.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![Fq::ZERO; self.cols];
        for (row, &pc) in piv.iter().enumerate() {
            x[pc] = r.get(row, self.cols);
        }
        Some(x)
    }

    /// Stacks rows of `self` on top of rows of `other`.
    pub fn vstack(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols, "shape mismatch in vstack");
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Matrix { rows: self.rows + other.rows, cols: self.cols, data }
    }

    pub fn submatrix(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |i, j| self.get(r0 + i, c0 + j))
    }
}

pub fn dot(a: &[Fq], b: &[Fq], k: &FiniteField) -> Fq {
    a.iter().zip(b).fold(Fq::ZERO, |acc, (&x, &y)| k.add(acc, k.mul(x, y)))
}

pub fn vec_add(a: &[Fq], b: &[Fq], k: &FiniteField) -> Vec<Fq> {
    a.iter().zip(b).map(|(&x, &y)| k.add(x, y)).collect()
}

pub fn vec_sub(a: &[Fq], b: &[Fq], k: &FiniteField) -> Vec<Fq> {
    a.iter().zip(b).map(|(&x, &y)| k.sub(x, y)).collect()
}

pub fn vec_scale(c: Fq, a: &[Fq], k: &FiniteField) -> Vec<Fq> {
    a.iter().map(|&x| k.mul(c, x)).collect()
}
