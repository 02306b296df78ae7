use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ffield::{FiniteField, Fq};
use crate::matalg::{dot, BetaShape, Matrix, RegularMatrix};

/// How the complement V of F[β̄] in M_n(F) is chosen.
#[derive(Clone, Debug)]
pub enum ComplementHint {
    /// Matrix units E_ij in row-major order, kept when independent of what came before.
    Greedy,
    /// {X : tr(X ᵗA) = 0 for all A ∈ F[β̄]}.
    TransposeOrthogonal,
    /// The greedy basis shifted by random centralizer elements.
    Random(u64),
    Explicit(Vec<Matrix>),
}

/// V_β with a chosen section v ↦ [v].
#[derive(Clone, Debug)]
pub struct SymplecticSpace {
    beta: RegularMatrix,
    complement: Vec<Matrix>,
    /// vec(X)·decomp = [v | c] with X = [v] + Σ c_k β̄^k.
    decomp: Matrix,
    gram: Matrix,
    gram_inv: Matrix,
}

impl SymplecticSpace {
    pub fn new(beta: &RegularMatrix, hint: ComplementHint) -> Result<Self> {
        let k = beta.field();
        let n = beta.n();
        let flat = |m: &Matrix| m.entries().to_vec();
        let cent: Vec<Vec<Fq>> = beta.centralizer_basis().iter().map(flat).collect();
        let complement: Vec<Matrix> = match hint {
            ComplementHint::Greedy => greedy_complement(k, n, &cent),
            ComplementHint::TransposeOrthogonal => {
                let s = Matrix::from_rows(&cent).unwrap();
                s.nullspace(k).into_iter().map(|v| Matrix::from_vec(n, n, v).unwrap()).collect()
            }
            ComplementHint::Random(seed) => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                greedy_complement(k, n, &cent)
                    .into_iter()
                    .map(|b| {
                        beta.centralizer_basis()
                            .iter()
                            .fold(b, |acc, p| acc.add(&p.scale(k.random(&mut rng), k), k))
                    })
                    .collect()
            }
            ComplementHint::Explicit(v) => v,
        };
        if complement.len() != n * n - n || complement.iter().any(|b| b.nrows() != n || b.ncols() != n) {
            return Err(Error::ComplementNotTransversal);
        }
        let mut rows: Vec<Vec<Fq>> = complement.iter().map(flat).collect();
        rows.extend(cent);
        let full = Matrix::from_rows(&rows).unwrap();
        let decomp = full.inverse(k).ok_or(Error::ComplementNotTransversal)?;
        let d = complement.len();
        let b = beta.beta();
        let gram = Matrix::from_fn(d, d, |i, j| {
            complement[i].commutator(&complement[j], k).mul(b, k).trace(k)
        });
        let gram_inv = if d == 0 {
            Matrix::zeros(0, 0)
        } else {
            gram.inverse(k).expect("the form on V_β is nondegenerate for regular β̄")
        };
        Ok(SymplecticSpace { beta: beta.clone(), complement, decomp, gram, gram_inv })
    }

    pub fn beta(&self) -> &RegularMatrix {
        &self.beta
    }
    pub fn field(&self) -> &FiniteField {
        self.beta.field()
    }
    pub fn dim(&self) -> usize {
        self.complement.len()
    }
    pub fn complement(&self) -> &[Matrix] {
        &self.complement
    }
    pub fn gram(&self) -> &Matrix {
        &self.gram
    }
    pub fn gram_inv(&self) -> &Matrix {
        &self.gram_inv
    }

    /// [v] ∈ V.
    pub fn section(&self, v: &[Fq]) -> Matrix {
        let k = self.field();
        let n = self.beta.n();
        let mut m = Matrix::zeros(n, n);
        for (&c, b) in v.iter().zip(&self.complement) {
            if !c.is_zero() {
                m = m.add(&b.scale(c, k), k);
            }
        }
        m
    }

    /// X = [v] + c with v ∈ V_β coordinates and c ∈ F[β̄] power-basis coordinates.
    pub fn split(&self, x: &Matrix) -> (Vec<Fq>, Vec<Fq>) {
        let mut w = self.decomp.vec_mul(x.entries(), self.field());
        let c = w.split_off(self.dim());
        (w, c)
    }

    pub fn project(&self, x: &Matrix) -> Vec<Fq> {
        self.split(x).0
    }

    /// ⟨v, w⟩ on coordinates.
    pub fn form(&self, v: &[Fq], w: &[Fq]) -> Fq {
        let k = self.field();
        dot(&self.gram.vec_mul(v, k), w, k)
    }

    /// tr((XY − YX)β̄) on matrices.
    pub fn form_matrices(&self, x: &Matrix, y: &Matrix) -> Fq {
        let k = self.field();
        x.commutator(y, k).mul(self.beta.beta(), k).trace(k)
    }

    /// σ_ε (rows: images of the basis, acting on row vectors) and the defect γ(e_i, ε)
    /// (rows: centralizer coordinates).
    pub fn conjugation(&self, eps: &Matrix, eps_inv: &Matrix) -> (Matrix, Matrix) {
        let k = self.field();
        let d = self.dim();
        let n = self.beta.n();
        let mut sigma = Matrix::zeros(d, d);
        let mut gamma = Matrix::zeros(d, n);
        for (i, b) in self.complement.iter().enumerate() {
            let (v, c) = self.split(&eps_inv.mul(b, k).mul(eps, k));
            for j in 0..d {
                sigma.set(i, j, v[j]);
            }
            for j in 0..n {
                gamma.set(i, j, c[j]);
            }
        }
        (sigma, gamma)
    }

    /// σ_ε for a centralizer element given in power-basis coordinates.
    pub fn sigma_of_unit(&self, eps: &[Fq]) -> Result<Matrix> {
        let alg = self.beta.algebra();
        let inv = alg.inv(eps)?;
        Ok(self.conjugation(&alg.to_matrix(eps), &alg.to_matrix(&inv)).0)
    }

    /// True iff vσ preserves the form for all basis pairs.
    pub fn is_symplectic(&self, sigma: &Matrix) -> bool {
        let k = self.field();
        sigma.mul(&self.gram, k).mul(&sigma.transpose(), k) == self.gram
    }
}

fn greedy_complement(k: &FiniteField, n: usize, cent: &[Vec<Fq>]) -> Vec<Matrix> {
    let mut rows: Vec<Vec<Fq>> = cent.to_vec();
    let mut rank = Matrix::from_rows(&rows).unwrap().rank(k);
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let e = Matrix::unit(n, i, j);
            rows.push(e.entries().to_vec());
            let r = Matrix::from_rows(&rows).unwrap().rank(k);
            if r > rank {
                rank = r;
                out.push(e);
            } else {
                rows.pop();
            }
        }
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum PolarizationKind {
    SplitTriangular,
    Involution,
    Assembled,
    Custom,
}

/// V_β = W′ ⊕ W with W′ = `w_minus` (the Schrödinger model lives on W′) and W = `w_plus`.
#[derive(Clone, Debug)]
pub struct Polarization {
    kind: PolarizationKind,
    w_minus: Matrix,
    w_plus: Matrix,
    change: Matrix,
    change_inv: Matrix,
}

impl Polarization {
    /// Validates two spanning sets and builds the polarization.
    pub fn from_spans(space: &SymplecticSpace, kind: PolarizationKind, minus: &[Vec<Fq>], plus: &[Vec<Fq>]) -> Result<Self> {
        let k = space.field();
        let d = space.dim();
        let basis = |vs: &[Vec<Fq>]| -> Matrix {
            if vs.is_empty() {
                return Matrix::zeros(0, d);
            }
            let (r, piv) = Matrix::from_rows(vs).unwrap().rref(k);
            r.submatrix(0, 0, piv.len(), d)
        };
        let wm = basis(minus);
        let wp = basis(plus);
        let m = d / 2;
        if wm.nrows() != m || wp.nrows() != m {
            return Err(Error::WrongShape(format!(
                "polarization pieces have dimensions {} and {}, expected {m}",
                wm.nrows(),
                wp.nrows()
            )));
        }
        for w in [&wm, &wp] {
            for i in 0..m {
                for j in 0..m {
                    if !space.form(w.row(i), w.row(j)).is_zero() {
                        return Err(Error::WrongShape("polarization piece is not isotropic".into()));
                    }
                }
            }
        }
        let change = wm.vstack(&wp);
        let change_inv = if d == 0 {
            Matrix::zeros(0, 0)
        } else {
            change.inverse(k).ok_or_else(|| Error::WrongShape("polarization sum is not direct".into()))?
        };
        Ok(Polarization { kind, w_minus: wm, w_plus: wp, change, change_inv })
    }

    /// Upper triangular (W) and strictly lower triangular (W′) images; β̄ must be split Jordan.
    pub fn split_triangular(space: &SymplecticSpace) -> Result<Self> {
        if space.beta().jordan_data().is_none() {
            return Err(Error::NotSplit);
        }
        let n = space.beta().n();
        let mut minus = Vec::new();
        let mut plus = Vec::new();
        for i in 0..n {
            for j in 0..n {
                let v = space.project(&Matrix::unit(n, i, j));
                if i > j {
                    minus.push(v);
                } else {
                    plus.push(v);
                }
            }
        }
        Self::from_spans(space, PolarizationKind::SplitTriangular, &minus, &plus)
    }

    /// ±1 eigenspaces of X ↦ g⁻¹ ᵗX g; requires irreducible characteristic polynomial.
    pub fn involution(space: &SymplecticSpace) -> Result<Self> {
        if !space.beta().is_irreducible() {
            return Err(Error::NotIrreducible);
        }
        let (minus, plus) = involution_spans(space.beta())?;
        let pm: Vec<Vec<Fq>> = minus.iter().map(|x| space.project(x)).collect();
        let pp: Vec<Vec<Fq>> = plus.iter().map(|x| space.project(x)).collect();
        Self::from_spans(space, PolarizationKind::Involution, &pm, &pp)
    }

    /// Greedy symplectic basis e_i, f_i with W′ = span e, W = span f.
    pub fn custom(space: &SymplecticSpace) -> Result<Self> {
        let k = space.field();
        let d = space.dim();
        let mut rest: Vec<Vec<Fq>> = (0..d)
            .map(|i| (0..d).map(|j| if i == j { Fq::ONE } else { Fq::ZERO }).collect())
            .collect();
        let mut es = Vec::new();
        let mut fs = Vec::new();
        while let Some(pos) = rest.iter().position(|v| v.iter().any(|c| !c.is_zero())) {
            let x = rest.remove(pos);
            let Some(ypos) = rest.iter().position(|y| !space.form(&x, y).is_zero()) else {
                return Err(Error::WrongShape("form is degenerate".into()));
            };
            let y0 = rest.remove(ypos);
            let s = k.inv(space.form(&x, &y0)).unwrap();
            let y: Vec<Fq> = y0.iter().map(|&c| k.mul(s, c)).collect();
            for z in rest.iter_mut() {
                let a = space.form(z, &y);
                let b = space.form(z, &x);
                for ((zc, &xc), &yc) in z.iter_mut().zip(&x).zip(&y) {
                    *zc = k.add(k.sub(*zc, k.mul(a, xc)), k.mul(b, yc));
                }
            }
            es.push(x);
            fs.push(y);
        }
        Self::from_spans(space, PolarizationKind::Custom, &es, &fs)
    }

    /// Canonical choice: triangular for split Jordan β̄, the involution for irreducible β̄,
    /// assembled from the diagonal blocks plus M_β^± for block-diagonal β̄, custom otherwise.
    pub fn canonical(space: &SymplecticSpace) -> Result<Self> {
        let beta = space.beta();
        match beta.shape() {
            BetaShape::Jordan(_) => Self::split_triangular(space),
            BetaShape::Irreducible => Self::involution(space),
            _ if beta.blocks().len() > 1 => Self::assembled(space),
            _ => Self::custom(space),
        }
    }

    /// M_β^− ⊕ M_β^+ together with a polarization of each diagonal block.
    pub fn assembled(space: &SymplecticSpace) -> Result<Self> {
        let beta = space.beta();
        let k = space.field();
        let n = beta.n();
        let blocks = beta.blocks();
        let block_of = |i: usize| blocks.iter().position(|&(s, m)| i >= s && i < s + m).unwrap();
        let mut minus = Vec::new();
        let mut plus = Vec::new();
        for i in 0..n {
            for j in 0..n {
                let (bi, bj) = (block_of(i), block_of(j));
                if bi > bj {
                    minus.push(space.project(&Matrix::unit(n, i, j)));
                } else if bi < bj {
                    plus.push(space.project(&Matrix::unit(n, i, j)));
                }
            }
        }
        for (idx, &(s, m)) in blocks.iter().enumerate() {
            if m == 1 {
                continue;
            }
            let sub = beta.block(idx);
            let sub_space = SymplecticSpace::new(&sub, ComplementHint::Greedy)?;
            let sub_pol = Polarization::canonical(&sub_space)?;
            let embed = |x: &Matrix| -> Matrix {
                let mut out = Matrix::zeros(n, n);
                for a in 0..m {
                    for b in 0..m {
                        out.set(s + a, s + b, x.get(a, b));
                    }
                }
                out
            };
            for r in 0..sub_pol.w_minus.nrows() {
                minus.push(space.project(&embed(&sub_space.section(sub_pol.w_minus.row(r)))));
            }
            for r in 0..sub_pol.w_plus.nrows() {
                plus.push(space.project(&embed(&sub_space.section(sub_pol.w_plus.row(r)))));
            }
        }
        let _ = k;
        Self::from_spans(space, PolarizationKind::Assembled, &minus, &plus)
    }

    pub fn kind(&self) -> PolarizationKind {
        self.kind
    }
    /// Basis of W′ (rows, V_β coordinates).
    pub fn w_minus(&self) -> &Matrix {
        &self.w_minus
    }
    /// Basis of W (rows, V_β coordinates).
    pub fn w_plus(&self) -> &Matrix {
        &self.w_plus
    }
    pub fn half_dim(&self) -> usize {
        self.w_minus.nrows()
    }

    /// (x′, x) with v = x′·W′ + x·W.
    pub fn coords(&self, v: &[Fq], k: &FiniteField) -> (Vec<Fq>, Vec<Fq>) {
        let mut x = self.change_inv.vec_mul(v, k);
        let plus = x.split_off(self.half_dim());
        (x, plus)
    }

    pub fn compose(&self, minus: &[Fq], plus: &[Fq], k: &FiniteField) -> Vec<Fq> {
        let x: Vec<Fq> = minus.iter().chain(plus).copied().collect();
        self.change.vec_mul(&x, k)
    }

    /// σ written in the polarization basis; blocks are [[a, b], [c, d]] with a: W′→W′,
    /// b: W′→W, c: W→W′, d: W→W.
    pub fn adapted(&self, sigma: &Matrix, k: &FiniteField) -> Matrix {
        self.change.mul(sigma, k).mul(&self.change_inv, k)
    }

    /// True iff Wσ = W.
    pub fn stabilizes_plus(&self, sigma: &Matrix, k: &FiniteField) -> bool {
        let a = self.adapted(sigma, k);
        let m = self.half_dim();
        (m..2 * m).all(|i| (0..m).all(|j| a.get(i, j).is_zero()))
    }
}

/// A row vector e with e, eβ̄, …, eβ̄^{n−1} independent.
fn cyclic_vector(beta: &RegularMatrix) -> Vec<Fq> {
    let k = beta.field();
    let n = beta.n();
    let krylov = |e: &[Fq]| -> Matrix {
        let mut rows = vec![e.to_vec()];
        for _ in 1..n {
            let last = rows.last().unwrap().clone();
            rows.push(beta.beta().vec_mul(&last, k));
        }
        Matrix::from_rows(&rows).unwrap()
    };
    let q = k.q() as u64;
    (1..q.pow(n as u32))
        .map(|mut idx| {
            (0..n)
                .map(|_| {
                    let c = Fq((idx % q) as u32);
                    idx /= q;
                    c
                })
                .collect::<Vec<Fq>>()
        })
        .find(|e| krylov(e).rank(k) == n)
        .expect("regular matrices have cyclic vectors")
}

/// Symmetric invertible g with ᵗβ̄ = g β̄ g⁻¹, built as PᵗHP from the Krylov matrix P of a cyclic
/// vector and the Hankel matrix H_ij = λ(t^{i+j}), λ = coefficient of t^{n−1} modulo χ.
pub fn transpose_intertwiner(beta: &RegularMatrix) -> Result<Matrix> {
    let k = beta.field();
    let n = beta.n();
    let e = cyclic_vector(beta);
    let mut rows = vec![e];
    for _ in 1..n {
        let last = rows.last().unwrap().clone();
        rows.push(beta.beta().vec_mul(&last, k));
    }
    let p = Matrix::from_rows(&rows).unwrap();
    let chi = beta.charpoly();
    let h = Matrix::from_fn(n, n, |i, j| {
        let mut c = vec![Fq::ZERO; i + j + 1];
        c[i + j] = Fq::ONE;
        crate::matalg::Poly::new(c).rem(chi, k).coeff(n - 1)
    });
    let g = match h.inverse(k) {
        Some(hi) => p.transpose().mul(&hi, k).mul(&p, k),
        None => return Err(Error::SingularTraceForm),
    };
    let ok = g.is_symmetric()
        && g.mul(beta.beta(), k) == beta.beta().transpose().mul(&g, k)
        && g.inverse(k).is_some();
    if !ok {
        return Err(Error::SingularTraceForm);
    }
    Ok(g)
}

/// Matrix spanning sets of the −1 and +1 eigenspaces of X ↦ g⁻¹ ᵗX g.
fn involution_spans(beta: &RegularMatrix) -> Result<(Vec<Matrix>, Vec<Matrix>)> {
    let k = beta.field();
    let n = beta.n();
    let g = transpose_intertwiner(beta)?;
    let gi = g.inverse(k).unwrap();
    let star = |x: &Matrix| gi.mul(&x.transpose(), k).mul(&g, k);
    let mut minus = Vec::new();
    let mut plus = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let e = Matrix::unit(n, i, j);
            let s = star(&e);
            plus.push(e.add(&s, k));
            minus.push(e.sub(&s, k));
        }
    }
    Ok((minus, plus))
}

/// X* = g⁻¹ ᵗX g for the canonical g.
pub fn involution_star(beta: &RegularMatrix, x: &Matrix) -> Result<Matrix> {
    let k = beta.field();
    let g = transpose_intertwiner(beta)?;
    Ok(g.inverse(k).unwrap().mul(&x.transpose(), k).mul(&g, k))
}
