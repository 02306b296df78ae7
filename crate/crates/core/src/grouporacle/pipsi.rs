use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::congruence::Congruence;
use super::ring::LMat;
use crate::error::Result;
use crate::ffield::{Fq, RootOfUnity};
use crate::matalg::{dot, Matrix, Polarization, SymplecticSpace};
use crate::schurmult::{PairingKind, Rho};
use crate::weilrep::{HeisenbergElement, SchrodingerModel};

/// Operator tolerance.
pub const OP_TOL: f64 = 1e-9;

/// A monomial matrix: row i has the single entry `vals[i]` in column `cols[i]`.
#[derive(Clone, Debug)]
pub struct Monomial {
    pub cols: Vec<usize>,
    pub vals: Vec<Complex64>,
}

impl Monomial {
    pub fn dim(&self) -> usize {
        self.cols.len()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let cols = self.cols.iter().map(|&c| other.cols[c]).collect();
        let vals = self.vals.iter().zip(&self.cols).map(|(v, &c)| v * other.vals[c]).collect();
        Monomial { cols, vals }
    }

    pub fn to_dense(&self) -> DMatrix<Complex64> {
        let mut m = DMatrix::zeros(self.dim(), self.dim());
        for (i, (&c, &v)) in self.cols.iter().zip(&self.vals).enumerate() {
            m[(i, c)] = v;
        }
        m
    }

    pub fn trace(&self) -> Complex64 {
        self.cols.iter().zip(&self.vals).enumerate().filter(|(i, (&c, _))| *i == c).map(|(_, (_, v))| v).sum()
    }

    pub fn distance(&self, other: &Monomial) -> f64 {
        (self.to_dense() - other.to_dense()).iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// acc += self · a · other.
    pub fn sandwich_into(&self, a: &DMatrix<Complex64>, other: &Monomial, acc: &mut DMatrix<Complex64>) {
        let d = self.dim();
        for i in 0..d {
            let (ci, vi) = (self.cols[i], self.vals[i]);
            for l in 0..d {
                acc[(i, other.cols[l])] += vi * a[(ci, l)] * other.vals[l];
            }
        }
    }

    pub fn left_mul(&self, a: &DMatrix<Complex64>) -> DMatrix<Complex64> {
        let d = self.dim();
        DMatrix::from_fn(d, d, |i, j| self.vals[i] * a[(self.cols[i], j)])
    }

    pub fn right_mul(a: &DMatrix<Complex64>, m: &Monomial) -> DMatrix<Complex64> {
        let d = m.dim();
        let mut out = DMatrix::zeros(d, d);
        for l in 0..d {
            for i in 0..d {
                out[(i, m.cols[l])] += a[(i, l)] * m.vals[l];
            }
        }
        out
    }
}

/// π_ψ on L²(W′) for ψ ∈ Y(ψ_β) with ψ = ψ₀·(τ̂∘ℓ) on K_1(F[β̄]).
///
/// For g = 1 + ϖλ(X̄) + ϖ²λ(S̄) and X̄ = [x] + Y with Y ∈ F[β̄],
/// π_ψ(g) = τ(ϖ⁻²tr(λ(X̄)β))·ρ(Y)·τ̂(tr(S̄β̄) − ½tr(X̄²β̄))·π_β(x, 1).
#[derive(Clone, Debug)]
pub struct PiPsi {
    cong: Congruence,
    space: SymplecticSpace,
    model: SchrodingerModel,
    functional: Vec<Fq>,
}

impl PiPsi {
    pub fn new(cong: &Congruence, space: &SymplecticSpace, pol: &Polarization, functional: &[Fq]) -> Result<Self> {
        let model = SchrodingerModel::new(space, pol, cong.character())?;
        Ok(PiPsi { cong: cong.clone(), space: space.clone(), model, functional: functional.to_vec() })
    }

    pub fn dim(&self) -> usize {
        self.model.dim()
    }
    pub fn congruence(&self) -> &Congruence {
        &self.cong
    }
    pub fn space(&self) -> &SymplecticSpace {
        &self.space
    }
    pub fn functional(&self) -> &[Fq] {
        &self.functional
    }

    pub fn rho(&self) -> Rho {
        Rho::new(self.cong.beta(), PairingKind::Coordinate, &self.functional).expect("functional has n coordinates")
    }

    /// ψ(g) for g ∈ K_1(F[β̄]), as an exponent of ζ_{p³}.
    pub fn psi(&self, g: &LMat) -> u64 {
        let (xbar, _) = self.cong.decompose(g);
        let coords = self.space.split(&xbar).1;
        let k = self.cong.field();
        (self.cong.psi0(g) + self.cong.hat(dot(&self.functional, &coords, k))) % self.cong.modulus()
    }

    /// ρ(X̄) = τ(2⁻¹ϖ⁻¹tr(X²β) − ϖ⁻²tr(λ(X̄)β))·ψ(1 + ϖλ(X̄)) read back on the power
    /// basis, as an element of F.
    pub fn extract_rho(&self) -> Vec<Fq> {
        let c = &self.cong;
        let m = c.modulus();
        let unit = c.hat(Fq(1));
        c.beta()
            .centralizer_basis()
            .iter()
            .map(|b| {
                let g = c.section(b);
                let e = (self.psi(&g) + m - c.psi0(&g)) % m;
                Fq((e / unit) as u32)
            })
            .collect()
    }

    pub fn matrix(&self, g: &LMat) -> Monomial {
        let c = &self.cong;
        let k = c.field();
        let o = c.ring();
        let (xbar, s) = c.decompose(g);
        let (x, y) = self.space.split(&xbar);
        let e1 = o.tau(LMat::lift(&xbar).mul(c.beta_lift(), o).trace(o), 2) as u64;
        let b = c.beta().beta();
        let sv = k.sub(s.mul(b, k).trace(k), k.mul(k.half(), xbar.mul(&xbar, k).mul(b, k).trace(k)));
        let e2 = c.hat(k.add(dot(&self.functional, &y, k), sv));
        let scalar = RootOfUnity::new(c.modulus(), (e1 + e2) as i64);
        let h = HeisenbergElement::new(x, scalar);
        let (cols, vals) = self.model.monomial(&h).into_iter().map(|(j, v)| (j, v.to_complex())).unzip();
        Monomial { cols, vals }
    }

    pub fn character(&self, g: &LMat) -> Complex64 {
        self.matrix(g).trace()
    }
}

/// Checks that π_ψ is the representation of the Clifford-theory proposition.
#[derive(Clone, Debug, Serialize)]
pub struct PiPsiReport {
    pub dim: usize,
    /// max ‖π(g)π(h) − π(gh)‖ over sampled pairs.
    pub homomorphism_defect: f64,
    pub pairs_sampled: usize,
    /// max ‖π(n) − ψ(n)‖ over n ∈ K_1(F[β̄]) (all residues, sampled ϖ² parts).
    pub homothety_defect: f64,
    /// ⟨χ, χ⟩ over K_1; 1 for an irreducible representation.
    pub character_norm: f64,
    /// ⟨ψ, π_ψ⟩ over K_1(F[β̄]); equals dim π_ψ.
    pub psi_multiplicity: f64,
    /// (K_1 : K_1(F[β̄])) = dim² so that Ind ψ = dim·π_ψ.
    pub index: usize,
    /// ρ read back through the dictionary agrees with the one used to build π_ψ.
    pub rho_recovered: bool,
    pub passed: bool,
}

fn all_vectors(q: usize, len: usize) -> impl Iterator<Item = Vec<Fq>> {
    (0..q.pow(len as u32)).map(move |mut i| {
        (0..len)
            .map(|_| {
                let c = Fq((i % q) as u32);
                i /= q;
                c
            })
            .collect()
    })
}

/// A pseudo-random element of K_1.
pub fn random_k1<R: Rng>(cong: &Congruence, rng: &mut R) -> LMat {
    let k = cong.field();
    let n = cong.n();
    let x = Matrix::random(k, n, n, rng);
    let s = Matrix::random(k, n, n, rng);
    cong.k1_from(&x, &s)
}

impl PiPsi {
    pub fn verify(&self, samples: usize, seed: u64) -> PiPsiReport {
        let c = &self.cong;
        let k = c.field();
        let n = c.n();
        let q = c.q() as usize;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut hom = 0.0f64;
        for _ in 0..samples {
            let g = random_k1(c, &mut rng);
            let h = random_k1(c, &mut rng);
            let lhs = self.matrix(&g).mul(&self.matrix(&h));
            hom = hom.max(lhs.distance(&self.matrix(&c.mul(&g, &h))));
        }

        let basis = c.beta().centralizer_basis().to_vec();
        let cent: Vec<Matrix> = all_vectors(q, n)
            .map(|v| basis.iter().zip(&v).fold(Matrix::zeros(n, n), |acc, (b, &a)| acc.add(&b.scale(a, k), k)))
            .collect();
        let mut homothety = 0.0f64;
        let mut inner = Complex64::new(0.0, 0.0);
        let m = c.modulus();
        for y in &cent {
            for t in 0..4 {
                let s = if t == 0 { Matrix::zeros(n, n) } else { Matrix::random(k, n, n, &mut rng) };
                let g = c.k1_from(y, &s);
                let psi = RootOfUnity::new(m, self.psi(&g) as i64).to_complex();
                let pm = self.matrix(&g);
                let scalar = Monomial { cols: (0..self.dim()).collect(), vals: vec![psi; self.dim()] };
                homothety = homothety.max(pm.distance(&scalar));
                if t == 0 {
                    inner += psi.conj() * pm.trace();
                }
            }
        }
        // ψ̄·χ is K_2-invariant, so the average over K_1(F[β̄]) is one over residues
        let psi_multiplicity = inner.re / cent.len() as f64;

        // |χ|² is K_2-invariant: average over residues X̄ ∈ M_n(F)
        let mut norm = 0.0;
        let mut count = 0usize;
        for v in all_vectors(q, n * n) {
            let x = Matrix::from_vec(n, n, v).unwrap();
            norm += self.character(&c.section(&x)).norm_sqr();
            count += 1;
        }
        let character_norm = norm / count as f64;
        let index = q.pow((n * n - n) as u32);
        let rho_recovered = self.extract_rho() == self.functional;
        let d = self.dim() as f64;
        let passed = hom < OP_TOL
            && homothety < OP_TOL
            && (character_norm - 1.0).abs() < 1e-6
            && (psi_multiplicity - d).abs() < 1e-6
            && index == self.dim() * self.dim()
            && rho_recovered;
        PiPsiReport {
            dim: self.dim(),
            homomorphism_defect: hom,
            pairs_sampled: samples,
            homothety_defect: homothety,
            character_norm,
            psi_multiplicity,
            index,
            rho_recovered,
            passed,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffield::FiniteField;
    use crate::grouporacle::RingKind;
    use crate::matalg::{ComplementHint, Poly, RegularMatrix};

    fn build(kind: RingKind, beta: &RegularMatrix, l: &[u32]) -> PiPsi {
        let cong = Congruence::new(kind, beta).unwrap();
        let space = SymplecticSpace::new(beta, ComplementHint::Greedy).unwrap();
        let pol = Polarization::canonical(&space).unwrap();
        let f: Vec<Fq> = l.iter().map(|&x| Fq(x)).collect();
        PiPsi::new(&cong, &space, &pol, &f).unwrap()
    }

    #[test]
    fn jordan_q3_is_irreducible_extension() {
        let k = FiniteField::prime(3).unwrap();
        let beta = RegularMatrix::jordan(&k, &[(Fq(0), 2)]).unwrap();
        for kind in [RingKind::Unequal, RingKind::Equal] {
            for l in [[0, 0], [1, 2], [2, 1]] {
                let pi = build(kind, &beta, &l);
                assert_eq!(pi.dim(), 3);
                let r = pi.verify(300, 2);
                assert!(r.passed, "{kind:?} {l:?} {r:?}");
            }
        }
    }

    #[test]
    fn cuspidal_and_n3() {
        let k = FiniteField::prime(3).unwrap();
        let cusp = RegularMatrix::companion(&k, &Poly::parse("t^2+1", &k).unwrap()).unwrap();
        assert!(build(RingKind::Unequal, &cusp, &[1, 1]).verify(200, 3).passed);
        let j3 = RegularMatrix::jordan(&k, &[(Fq(1), 3)]).unwrap();
        let pi = build(RingKind::Equal, &j3, &[0, 2, 1]);
        assert_eq!(pi.dim(), 27);
        assert!(pi.verify(60, 4).passed);
    }
}
