use serde::Serialize;

use super::ring::{field_of, LMat, LocalRing, RingKind};
use crate::error::{Error, Result};
use crate::ffield::{AdditiveCharacter, FiniteField, Fq};
use crate::matalg::{Matrix, RegularMatrix};

/// Depth r of the oracle; l = 2 and l′ = 1.
pub const R: u32 = 3;
pub const L: u32 = 2;

/// G_3 = GL_n(O_3) around a fixed β = λ(β̄) ∈ M_n(O).
///
/// Character values are exponents of ζ_{p³}; τ̂ values therefore appear as
/// multiples of p².
#[derive(Clone, Debug)]
pub struct Congruence {
    ring: LocalRing,
    field: FiniteField,
    chi: AdditiveCharacter,
    beta: RegularMatrix,
    lift: LMat,
    n: usize,
}

impl Congruence {
    pub fn new(kind: RingKind, beta: &RegularMatrix) -> Result<Self> {
        let k = beta.field();
        if k.f() != 1 {
            return Err(Error::InvalidField("the oracle needs a prime residue field".into()));
        }
        if k.p() == 2 {
            return Err(Error::OddCharRequired);
        }
        if beta.n() > 3 {
            return Err(Error::WrongShape(format!("oracle supports n ≤ 3, got {}", beta.n())));
        }
        let ring = LocalRing::new(kind, k.p(), R)?;
        let field = field_of(&ring);
        Ok(Congruence {
            chi: AdditiveCharacter::canonical(&field),
            lift: LMat::lift(beta.beta()),
            field,
            ring,
            beta: beta.clone(),
            n: beta.n(),
        })
    }

    pub fn ring(&self) -> &LocalRing {
        &self.ring
    }
    pub fn field(&self) -> &FiniteField {
        &self.field
    }
    pub fn character(&self) -> &AdditiveCharacter {
        &self.chi
    }
    pub fn beta(&self) -> &RegularMatrix {
        &self.beta
    }
    pub fn beta_lift(&self) -> &LMat {
        &self.lift
    }
    pub fn n(&self) -> usize {
        self.n
    }
    pub fn p(&self) -> u32 {
        self.ring.p()
    }
    pub fn q(&self) -> u32 {
        self.ring.p()
    }
    /// Modulus of character exponents.
    pub fn modulus(&self) -> u64 {
        self.ring.tau_modulus()
    }
    /// τ̂(x) as an exponent of ζ_{p³}.
    pub fn hat(&self, x: Fq) -> u64 {
        (x.0 as u64) * (self.p() as u64).pow(R - 1)
    }

    /// 1 + ϖX mod ϖ³ for X over O (only X mod ϖ² matters).
    pub fn k1(&self, x: &LMat) -> LMat {
        LMat::identity(self.n).add(&x.shift(1, &self.ring), &self.ring)
    }
    /// 1 + ϖλ(X̄) + ϖ²λ(S̄).
    pub fn k1_from(&self, xbar: &Matrix, s: &Matrix) -> LMat {
        let o = &self.ring;
        let x = LMat::lift(xbar).add(&LMat::lift(s).shift(1, o), o);
        self.k1(&x)
    }
    /// 1 + ϖ²λ(Z̄).
    pub fn k2(&self, z: &Matrix) -> LMat {
        LMat::identity(self.n).add(&LMat::lift(z).shift(2, &self.ring), &self.ring)
    }
    /// l(X̄) = 1 + ϖλ(X̄).
    pub fn section(&self, xbar: &Matrix) -> LMat {
        self.k1(&LMat::lift(xbar))
    }

    /// The level of g: the largest i ≤ 3 with g ≡ 1 mod ϖ^i.
    pub fn level(&self, g: &LMat) -> u32 {
        let d = g.sub(&LMat::identity(self.n), &self.ring);
        (0..=R).rev().find(|&i| d.entries().iter().all(|&v| v % self.p().pow(i) == 0)).unwrap()
    }

    /// (X̄, S̄) with g = 1 + ϖλ(X̄) + ϖ²λ(S̄); g must lie in K_1.
    pub fn decompose(&self, g: &LMat) -> (Matrix, Matrix) {
        let o = &self.ring;
        let x = g.sub(&LMat::identity(self.n), o).unshift(1, o);
        let xbar = x.residue(o);
        let s = Matrix::from_fn(self.n, self.n, |i, j| Fq(x.get(i, j) / self.p() % self.p()));
        (xbar, s)
    }

    pub fn inv(&self, g: &LMat) -> LMat {
        g.inverse(&self.ring).expect("group elements are invertible")
    }
    pub fn mul(&self, a: &LMat, b: &LMat) -> LMat {
        a.mul(b, &self.ring)
    }
    /// a b a⁻¹.
    pub fn conj(&self, a: &LMat, b: &LMat) -> LMat {
        self.mul(&self.mul(a, b), &self.inv(a))
    }
    /// a b a⁻¹ b⁻¹.
    pub fn commutator(&self, a: &LMat, b: &LMat) -> LMat {
        self.mul(&self.conj(a, b), &self.inv(b))
    }

    /// ψ_β(1 + ϖ²Z) = τ(ϖ⁻¹tr(Zβ)).
    pub fn psi_beta(&self, g: &LMat) -> u64 {
        let o = &self.ring;
        debug_assert!(self.level(g) >= L);
        let z = g.sub(&LMat::identity(self.n), o).unshift(2, o);
        o.tau(z.mul(&self.lift, o).trace(o), 1) as u64
    }

    /// ψ₀(1 + ϖX) = τ(ϖ⁻²tr(Xβ) − 2⁻¹ϖ⁻¹tr(X²β)); a character on K_1(U) for
    /// every U isotropic for ⟨·,·⟩_β̄.
    pub fn psi0(&self, g: &LMat) -> u64 {
        let o = &self.ring;
        let x = g.sub(&LMat::identity(self.n), o).unshift(1, o);
        let a = o.tau(x.mul(&self.lift, o).trace(o), 2);
        let x2 = x.mul(&x, o).mul(&self.lift, o).trace(o);
        let b = o.tau(o.neg(o.mul(o.half(), x2)), 1);
        (a as u64 + b as u64) % self.modulus()
    }

    /// τ̂(tr(X̄A)) for g = 1 + ϖX.
    pub fn omega(&self, g: &LMat, a: &Matrix) -> u64 {
        let k = &self.field;
        let (xbar, _) = self.decompose(g);
        self.hat(xbar.mul(a, k).trace(k))
    }

    /// ⟨X̄, Ȳ⟩_β̄ = tr((XY − YX)β̄).
    pub fn form(&self, x: &Matrix, y: &Matrix) -> Fq {
        let k = &self.field;
        x.commutator(y, k).mul(self.beta.beta(), k).trace(k)
    }

    /// λ on F[β̄] through power-basis coordinates: Σ λ(c_j) β^j.
    pub fn centralizer_lift(&self, coords: &[Fq]) -> LMat {
        let o = &self.ring;
        let mut out = LMat::zeros(self.n);
        let mut pw = LMat::identity(self.n);
        for &c in coords {
            out = out.add(&pw.scale(o.lift(c), o), o);
            pw = pw.mul(&self.lift, o);
        }
        out
    }

    /// Generators of C = (O_3[β])^×: lifts of generators of F[β̄]^× together with
    /// 1 + ϖβ^j and 1 + ϖ²β^j.
    pub fn centralizer_generators(&self, unit_gens: &[Vec<Fq>]) -> Vec<LMat> {
        let o = &self.ring;
        let mut out: Vec<LMat> = unit_gens.iter().map(|e| self.centralizer_lift(e)).collect();
        let mut pw = LMat::identity(self.n);
        for _ in 0..self.n {
            out.push(LMat::identity(self.n).add(&pw.shift(1, o), o));
            out.push(LMat::identity(self.n).add(&pw.shift(2, o), o));
            pw = pw.mul(&self.lift, o);
        }
        out
    }

    /// Matrix units E_ij.
    pub fn units(&self) -> Vec<Matrix> {
        let n = self.n;
        (0..n * n).map(|t| Matrix::unit(n, t / n, t % n)).collect()
    }
}

/// K_i(U): the inverse image of U ⊆ M_n(F) in K_i (U = M_n(F) when absent).
#[derive(Clone, Debug)]
pub struct KGroup {
    pub level: u32,
    pub constraint: Option<Vec<Matrix>>,
}

impl KGroup {
    pub fn new(level: u32, constraint: Option<Vec<Matrix>>) -> Self {
        KGroup { level, constraint }
    }

    pub fn contains(&self, c: &Congruence, g: &LMat) -> bool {
        if g.det(c.ring()) % c.p() == 0 || c.level(g) < self.level {
            return false;
        }
        let Some(basis) = &self.constraint else { return true };
        if self.level >= R {
            return true;
        }
        let o = c.ring();
        let k = c.field();
        let x = g.sub(&LMat::identity(c.n()), o).unshift(self.level, o).residue(o);
        let mut rows: Vec<Vec<Fq>> = basis.iter().map(|b| b.entries().to_vec()).collect();
        let r0 = Matrix::from_rows(&rows).map(|m| m.rank(k)).unwrap_or(0);
        rows.push(x.entries().to_vec());
        Matrix::from_rows(&rows).unwrap().rank(k) == r0
    }

    /// log_q of the order: (r − i)·n² − (n² − dim U).
    pub fn log_order(&self, c: &Congruence) -> u32 {
        let n2 = (c.n() * c.n()) as u32;
        let full = (R - self.level) * n2;
        match &self.constraint {
            None => full,
            Some(b) if self.level < R => {
                let dim = Matrix::from_rows(&b.iter().map(|m| m.entries().to_vec()).collect::<Vec<_>>())
                    .map(|m| m.rank(c.field()) as u32)
                    .unwrap_or(0);
                full - (n2 - dim)
            }
            Some(_) => full,
        }
    }
}

/// Checks of the extension 0 → M_n(O_1) → K_1 → M_n(F) → 0 and of the
/// commutator pairing on K_1/K_1(F[β̄]).
#[derive(Clone, Debug, Serialize)]
pub struct ExtensionReport {
    /// l(X) k l(X)⁻¹ = k for k ∈ K_2.
    pub k2_central: bool,
    /// l(X)l(Y)l(X+Y)⁻¹ = 1 + ϖ²(λ(X)λ(Y) + μ(X,Y)).
    pub cocycle_matches: bool,
    /// ψ_β([x, y]) = τ̂(⟨X̄, Ȳ⟩_β̄).
    pub commutator_pairing_matches: bool,
    /// rank of ⟨·,·⟩_β̄ on M_n(F), expected n² − n.
    pub pairing_rank: usize,
    /// The radical equals F[β̄].
    pub radical_is_centralizer: bool,
    pub pairs_checked: usize,
}

impl Congruence {
    /// μ(X̄, Ȳ) with ϖμ = λ(X̄) + λ(Ȳ) − λ(X̄ + Ȳ), reduced mod ϖ.
    pub fn mu(&self, x: &Matrix, y: &Matrix) -> Matrix {
        let o = &self.ring;
        let s = LMat::lift(x).add(&LMat::lift(y), o).sub(&LMat::lift(&x.add(y, &self.field)), o);
        s.unshift(1, o).residue(o)
    }

    pub fn extension_report(&self, pairs: &[(Matrix, Matrix)]) -> ExtensionReport {
        let o = &self.ring;
        let k = &self.field;
        let mut k2_central = true;
        let mut cocycle_matches = true;
        let mut comm = true;
        for (x, y) in pairs {
            let lx = self.section(x);
            let ly = self.section(y);
            let kk = self.k2(y);
            k2_central &= self.conj(&lx, &kk) == kk;
            let lhs = self.mul(&self.mul(&lx, &ly), &self.inv(&self.section(&x.add(y, k))));
            let inner = LMat::lift(x).mul(&LMat::lift(y), o).add(&LMat::lift(&self.mu(x, y)), o);
            let rhs = LMat::identity(self.n).add(&inner.shift(2, o), o);
            cocycle_matches &= lhs == rhs;
            let c = self.commutator(&lx, &ly);
            comm &= self.level(&c) >= L && self.psi_beta(&c) == self.hat(self.form(x, y));
        }
        let basis = self.units();
        let gram = Matrix::from_fn(basis.len(), basis.len(), |i, j| self.form(&basis[i], &basis[j]));
        let n = self.n;
        let radical = gram.nullspace(k);
        let cent = self.beta.centralizer_basis();
        let radical_is_centralizer = radical.len() == n
            && cent.iter().all(|c| gram.mul_vec(c.entries(), k).iter().all(|v| v.is_zero()));
        ExtensionReport {
            k2_central,
            cocycle_matches,
            commutator_pairing_matches: comm,
            pairing_rank: gram.rank(k),
            radical_is_centralizer,
            pairs_checked: pairs.len(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all_matrices(k: &FiniteField, n: usize) -> Vec<Matrix> {
        let q = k.q() as usize;
        (0..q.pow((n * n) as u32))
            .map(|mut i| {
                Matrix::from_fn(n, n, |_, _| {
                    let c = Fq((i % q) as u32);
                    i /= q;
                    c
                })
            })
            .collect()
    }

    #[test]
    fn psi0_restricts_to_psi_beta() {
        for kind in [RingKind::Unequal, RingKind::Equal] {
            let k = FiniteField::prime(3).unwrap();
            let beta = RegularMatrix::jordan(&k, &[(Fq(0), 2)]).unwrap();
            let c = Congruence::new(kind, &beta).unwrap();
            for z in all_matrices(&k, 2) {
                let g = c.k2(&z);
                assert_eq!(c.psi0(&g), c.psi_beta(&g));
                assert_eq!(c.decompose(&g).0, Matrix::zeros(2, 2));
            }
        }
    }

    #[test]
    fn decompose_inverts_k1_from() {
        let k = FiniteField::prime(5).unwrap();
        let beta = RegularMatrix::jordan(&k, &[(Fq(1), 2)]).unwrap();
        let c = Congruence::new(RingKind::Equal, &beta).unwrap();
        let ms = all_matrices(&k, 2);
        for (a, b) in ms.iter().step_by(37).zip(ms.iter().skip(5).step_by(41)) {
            let g = c.k1_from(a, b);
            assert_eq!(c.decompose(&g), (a.clone(), b.clone()));
            assert_eq!(c.level(&g), if a.is_zero() { if b.is_zero() { 3 } else { 2 } } else { 1 });
        }
    }

    #[test]
    fn extension_data_exhaustive() {
        for kind in [RingKind::Unequal, RingKind::Equal] {
            let k = FiniteField::prime(3).unwrap();
            let beta = RegularMatrix::jordan(&k, &[(Fq(0), 2)]).unwrap();
            let c = Congruence::new(kind, &beta).unwrap();
            let ms = all_matrices(&k, 2);
            let pairs: Vec<_> = ms.iter().flat_map(|x| ms.iter().map(move |y| (x.clone(), y.clone()))).collect();
            let r = c.extension_report(&pairs);
            assert!(r.k2_central && r.cocycle_matches && r.commutator_pairing_matches, "{kind:?}");
            assert_eq!(r.pairing_rank, 2);
            assert!(r.radical_is_centralizer);
        }
    }

    #[test]
    fn k_group_membership() {
        let k = FiniteField::prime(3).unwrap();
        let beta = RegularMatrix::jordan(&k, &[(Fq(0), 2)]).unwrap();
        let c = Congruence::new(RingKind::Unequal, &beta).unwrap();
        let upper = vec![Matrix::unit(2, 0, 0), Matrix::unit(2, 0, 1), Matrix::unit(2, 1, 1)];
        let kw = KGroup::new(1, Some(upper));
        assert_eq!(kw.log_order(&c), 7);
        assert!(kw.contains(&c, &c.section(&Matrix::unit(2, 0, 1))));
        assert!(!kw.contains(&c, &c.section(&Matrix::unit(2, 1, 0))));
        // K_2 ⊂ K_1(W)
        assert!(kw.contains(&c, &c.k2(&Matrix::unit(2, 1, 0))));
        assert_eq!(KGroup::new(2, None).log_order(&c), 4);
    }
}
