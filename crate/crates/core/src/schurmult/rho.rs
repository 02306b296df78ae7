use serde::Serialize;

use crate::error::{Error, Result};
use crate::ffield::{AdditiveCharacter, FiniteField, Fq, RootOfUnity};
use crate::matalg::{dot, Matrix, RegularMatrix};

/// How A ∈ F[β̄] names the character ρ_A.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PairingKind {
    /// ρ_a(x) = τ̂(tr(ax)).
    TraceForm,
    /// ρ_A(X) = τ̂(tr(X ᵗA)).
    TransposeForm,
    /// Trace form on irreducible diagonal blocks, transpose form on the rest.
    Blockwise,
    /// ρ(x) = τ̂(Σ a_i x_i) on power-basis coordinates.
    Coordinate,
}

/// An additive character ρ = τ̂ ∘ ℓ of F[β̄], with ℓ stored on the power basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rho {
    kind: PairingKind,
    a: Vec<Fq>,
    functional: Vec<Fq>,
}

fn block_pairing(beta: &RegularMatrix, x: &Matrix, y: &Matrix) -> Fq {
    let k = beta.field();
    beta.blocks()
        .iter()
        .enumerate()
        .map(|(i, &(s, m))| {
            let xi = x.submatrix(s, s, m, m);
            let yi = y.submatrix(s, s, m, m);
            if beta.block(i).is_irreducible() {
                xi.mul(&yi, k).trace(k)
            } else {
                xi.mul(&yi.transpose(), k).trace(k)
            }
        })
        .fold(Fq::ZERO, |acc, v| k.add(acc, v))
}

/// pair(x, A) for matrices x, A ∈ F[β̄].
fn pair(beta: &RegularMatrix, kind: PairingKind, x: &Matrix, a: &Matrix) -> Fq {
    let k = beta.field();
    match kind {
        PairingKind::TraceForm => x.mul(a, k).trace(k),
        PairingKind::TransposeForm => x.mul(&a.transpose(), k).trace(k),
        PairingKind::Blockwise => block_pairing(beta, x, a),
        PairingKind::Coordinate => unreachable!(),
    }
}

/// Gram matrix of the pairing on the power basis: entry (i, j) = pair(βⁱ, βʲ).
pub fn pairing_matrix(beta: &RegularMatrix, kind: PairingKind) -> Matrix {
    let n = beta.n();
    if kind == PairingKind::Coordinate {
        return Matrix::identity(n);
    }
    let basis = beta.centralizer_basis();
    Matrix::from_fn(n, n, |i, j| pair(beta, kind, &basis[i], &basis[j]))
}

/// True when A ↦ ρ_A is a bijection onto the character group.
pub fn is_injective(beta: &RegularMatrix, kind: PairingKind) -> bool {
    pairing_matrix(beta, kind).det(beta.field()) != Fq::ZERO
}

impl PairingKind {
    /// Trace form for irreducible β̄, transpose form for split Jordan β̄, blockwise
    /// otherwise; coordinates when that choice is degenerate (small characteristic).
    pub fn default_for(beta: &RegularMatrix) -> Self {
        let kind = if beta.is_irreducible() {
            PairingKind::TraceForm
        } else if beta.jordan_data().is_some_and(|j| j.len() == 1) {
            PairingKind::TransposeForm
        } else {
            PairingKind::Blockwise
        };
        if is_injective(beta, kind) {
            kind
        } else {
            PairingKind::Coordinate
        }
    }
}

impl Rho {
    /// ρ_A for A given in power-basis coordinates.
    pub fn new(beta: &RegularMatrix, kind: PairingKind, a: &[Fq]) -> Result<Self> {
        if a.len() != beta.n() {
            return Err(Error::DimensionMismatch(format!("A has {} coordinates, expected {}", a.len(), beta.n())));
        }
        let functional = pairing_matrix(beta, kind).mul_vec(a, beta.field());
        Ok(Rho { kind, a: a.to_vec(), functional })
    }

    pub fn trivial(beta: &RegularMatrix) -> Self {
        let z = vec![Fq::ZERO; beta.n()];
        Rho { kind: PairingKind::Coordinate, a: z.clone(), functional: z }
    }

    /// ρ_A with A = Σ ρ_k N^k, N = β̄ − a for β̄ = J_n(a) (transpose form).
    pub fn split_coefficients(beta: &RegularMatrix, coeffs: &[Fq]) -> Result<Self> {
        let k = beta.field();
        let jd = beta.jordan_data().filter(|j| j.len() == 1).ok_or(Error::NotSplit)?;
        let n = beta.n();
        if coeffs.len() > n {
            return Err(Error::WrongShape(format!("{} coefficients for n = {n}", coeffs.len())));
        }
        let nil = beta.beta().sub(&Matrix::scalar(n, jd[0].0), k);
        let mut a = Matrix::zeros(n, n);
        let mut pw = Matrix::identity(n);
        for &c in coeffs {
            a = a.add(&pw.scale(c, k), k);
            pw = pw.mul(&nil, k);
        }
        let coords = beta.algebra().from_matrix(&a).expect("polynomials in N lie in F[β̄]");
        Self::new(beta, PairingKind::TransposeForm, &coords)
    }

    pub fn kind(&self) -> PairingKind {
        self.kind
    }
    pub fn a(&self) -> &[Fq] {
        &self.a
    }
    /// ℓ on the power basis.
    pub fn functional(&self) -> &[Fq] {
        &self.functional
    }

    pub fn is_trivial(&self) -> bool {
        self.functional.iter().all(|c| c.is_zero())
    }

    /// ℓ(x) for x in power-basis coordinates.
    pub fn eval(&self, x: &[Fq], k: &FiniteField) -> Fq {
        dot(&self.functional, x, k)
    }

    pub fn value(&self, x: &[Fq], chi: &AdditiveCharacter) -> RootOfUnity {
        chi.value(self.eval(x, chi.field()))
    }

    /// A functional R on M_n(F), ρ̃(X) = τ̂(Σ R_ij X_ij), restricting to ρ on F[β̄].
    /// For the trace form R = ᵗa, which is invariant under conjugation by units.
    pub fn natural_extension(&self, beta: &RegularMatrix) -> Matrix {
        let k = beta.field();
        let a = beta.algebra().to_matrix(&self.a);
        match self.kind {
            PairingKind::TraceForm => a.transpose(),
            PairingKind::TransposeForm => a,
            PairingKind::Blockwise => {
                let mut r = Matrix::zeros(beta.n(), beta.n());
                for (i, &(s, m)) in beta.blocks().iter().enumerate() {
                    let ai = a.submatrix(s, s, m, m);
                    let ri = if beta.block(i).is_irreducible() { ai.transpose() } else { ai };
                    for x in 0..m {
                        for y in 0..m {
                            r.set(s + x, s + y, ri.get(x, y));
                        }
                    }
                }
                r
            }
            PairingKind::Coordinate => {
                // solve Σ R_ij (βˡ)_ij = ℓ_l
                let n = beta.n();
                let rows: Vec<Vec<Fq>> = beta.centralizer_basis().iter().map(|b| b.entries().to_vec()).collect();
                let sys = Matrix::from_rows(&rows).unwrap();
                let r = sys.solve(&self.functional, k).expect("the power basis is independent");
                Matrix::from_vec(n, n, r).unwrap()
            }
        }
    }

    /// All q^n characters A ↦ ρ_A in index order of A, at most `cap` of them.
    pub fn enumerate(beta: &RegularMatrix, kind: PairingKind, cap: usize) -> Vec<Rho> {
        let alg = beta.algebra();
        let p = pairing_matrix(beta, kind);
        let k = beta.field();
        (0..alg.order().min(cap as u64))
            .map(|i| {
                let a = alg.from_index(i);
                let functional = p.mul_vec(&a, k);
                Rho { kind, a, functional }
            })
            .collect()
    }

    /// Characters with diagonal A (transpose form, split β̄).
    pub fn diagonal(beta: &RegularMatrix) -> Vec<Rho> {
        let alg = beta.algebra();
        Self::enumerate(beta, PairingKind::TransposeForm, usize::MAX)
            .into_iter()
            .filter(|r| {
                let m = alg.to_matrix(&r.a);
                (0..beta.n()).all(|i| (0..beta.n()).all(|j| i == j || m.get(i, j).is_zero()))
            })
            .collect()
    }
}
