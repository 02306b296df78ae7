use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::congruence::Congruence;
use super::ring::LMat;
use crate::error::{Error, Result};
use crate::ffield::Fq;
use crate::matalg::{Matrix, UnitGroup};

/// X(ψ_β) for β̄ in Jordan form: ψ_A = ψ₀·ω_A on K_1(W), W the upper
/// triangular matrices, with A lower triangular.
#[derive(Clone, Debug)]
pub struct XSet {
    cong: Congruence,
    /// (i, j) with i ≤ j; coordinate t of A is A_{ji}.
    upper: Vec<(usize, usize)>,
    gens: Vec<LMat>,
}

impl XSet {
    pub fn new(cong: &Congruence) -> Result<Self> {
        if cong.beta().jordan_data().is_none() {
            return Err(Error::NotSplit);
        }
        let n = cong.n();
        let upper: Vec<(usize, usize)> = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
        let gens = upper.iter().map(|&(i, j)| cong.section(&Matrix::unit(n, i, j))).collect();
        Ok(XSet { cong: cong.clone(), upper, gens })
    }

    pub fn len(&self) -> usize {
        (self.cong.q() as usize).pow(self.upper.len() as u32)
    }
    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn coords(&self, mut idx: usize) -> Vec<Fq> {
        let q = self.cong.q() as usize;
        (0..self.upper.len())
            .map(|_| {
                let c = Fq((idx % q) as u32);
                idx /= q;
                c
            })
            .collect()
    }
    pub fn index(&self, coords: &[Fq]) -> usize {
        let q = self.cong.q() as usize;
        coords.iter().rev().fold(0, |acc, c| acc * q + c.0 as usize)
    }

    /// The lower triangular A of ψ_A.
    pub fn matrix(&self, idx: usize) -> Matrix {
        let n = self.cong.n();
        let mut a = Matrix::zeros(n, n);
        for (c, &(i, j)) in self.coords(idx).into_iter().zip(&self.upper) {
            a.set(j, i, c);
        }
        a
    }

    /// ψ_A(g) for g ∈ K_1(W).
    pub fn eval(&self, idx: usize, g: &LMat) -> u64 {
        let m = self.cong.modulus();
        (self.cong.psi0(g) + self.cong.omega(g, &self.matrix(idx))) % m
    }

    /// Identifies a character χ of K_1(W) known to lie in X(ψ_β) from its values
    /// on 1 + ϖE_ij.
    fn identify(&self, chi: impl Fn(&LMat) -> u64) -> Result<usize> {
        let m = self.cong.modulus();
        let unit = self.cong.hat(Fq(1));
        let coords = self
            .gens
            .iter()
            .map(|g| {
                let d = (chi(g) + m - self.cong.psi0(g)) % m;
                if d % unit != 0 {
                    return Err(Error::WrongShape("conjugate character is not an extension of ψ_β".into()));
                }
                Ok(Fq((d / unit) as u32))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(self.index(&coords))
    }

    /// ψ^k with ψ^k(x) = ψ(kxk⁻¹).
    pub fn conjugate(&self, idx: usize, k: &LMat) -> Result<usize> {
        let c = &self.cong;
        let ki = c.inv(k);
        self.identify(|x| self.eval(idx, &c.mul(&c.mul(k, x), &ki)))
    }

    /// A pseudo-random element of K_1(W).
    pub fn random_element<R: Rng>(&self, rng: &mut R) -> LMat {
        let c = &self.cong;
        let k = c.field();
        let n = c.n();
        let x = Matrix::from_fn(n, n, |i, j| if i <= j { k.random(rng) } else { Fq::ZERO });
        let s = Matrix::from_fn(n, n, |_, _| k.random(rng));
        c.k1_from(&x, &s)
    }
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }
    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Brute-force orbit partition of X(ψ_β) under K_1, compared with the trace
/// criterion on X_0(ψ_β) and the restriction criterion on K_1(F[β̄]).
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct OrbitCensus {
    pub x_count: usize,
    pub orbit_count: usize,
    /// Every orbit has q^{n(n−1)/2} elements, i.e. the stabilizers are K_1(W).
    pub orbit_sizes_uniform: bool,
    pub orbit_size: usize,
    pub x0_count: usize,
    pub orbits_meeting_x0: usize,
    pub jordan_blocks: usize,
    /// ψ′ψ⁻¹ = ω_T with T diagonal for all ψ, ψ′ ∈ X_0.
    pub x0_differences_diagonal: bool,
    /// ψ, ψ′ ∈ X_0 share an orbit iff tr T_i ≡ 0 for every block.
    pub trace_criterion_holds: bool,
    /// ψ ~ ψ′ iff ψ and ψ′ agree on K_1(F[β̄]).
    pub restriction_criterion_holds: bool,
    /// Number of distinct ω_T, T diagonal; each is C-invariant.
    pub omega_distinct: usize,
    pub omega_invariant: bool,
    /// ψ₀ is multiplicative on sampled pairs of K_1(W) and conjugates of ψ
    /// agree with the identified ψ_A on sampled points.
    pub sampled_checks_pass: bool,
}

pub fn orbit_census(cong: &Congruence, units: &UnitGroup, seed: u64) -> Result<OrbitCensus> {
    let xs = XSet::new(cong)?;
    let n = cong.n();
    let k = cong.field();
    let q = cong.q() as usize;
    let size = xs.len();
    let m = cong.modulus();

    // conjugation by 1 + ϖE_ij generates the K_1-action (K_2 acts trivially)
    let k_gens: Vec<LMat> = cong.units().iter().map(|e| cong.section(e)).collect();
    let neighbours: Vec<Vec<usize>> = (0..size)
        .into_par_iter()
        .map(|a| k_gens.iter().map(|g| xs.conjugate(a, g)).collect::<Result<Vec<_>>>())
        .collect::<Result<_>>()?;
    let mut uf = UnionFind((0..size).collect());
    for (a, ns) in neighbours.iter().enumerate() {
        for &b in ns {
            uf.union(a, b);
        }
    }
    let roots: Vec<usize> = (0..size).map(|a| uf.find(a)).collect();
    let mut counts = std::collections::HashMap::new();
    for &r in &roots {
        *counts.entry(r).or_insert(0usize) += 1;
    }
    let orbit_size = q.pow((n * (n - 1) / 2) as u32);
    let orbit_sizes_uniform = counts.values().all(|&c| c == orbit_size);

    // X_0: fixed by C
    let unit_gens: Vec<Vec<Fq>> = units.table().generators().into_iter().map(|i| units.element(i).to_vec()).collect();
    let c_gens = cong.centralizer_generators(&unit_gens);
    let x0: Vec<usize> = (0..size)
        .into_par_iter()
        .filter(|&a| {
            c_gens.iter().all(|e| {
                let ei = cong.inv(e);
                xs.gens.iter().all(|x| xs.eval(a, &cong.mul(&cong.mul(e, x), &ei)) == xs.eval(a, x))
            })
        })
        .collect();
    let mut meeting: Vec<usize> = x0.iter().map(|&a| roots[a]).collect();
    meeting.sort_unstable();
    meeting.dedup();

    // trace criterion on X_0
    let blocks = cong.beta().blocks().to_vec();
    let mut diagonal = true;
    let mut trace_ok = true;
    for &a in &x0 {
        let ma = xs.matrix(a);
        for &b in &x0 {
            let d = xs.matrix(b).sub(&ma, k);
            let off = (0..n).any(|i| (0..n).any(|j| i != j && !d.get(i, j).is_zero()));
            diagonal &= !off;
            let predicted = blocks.iter().all(|&(s, len)| k.sum((s..s + len).map(|i| d.get(i, i))).is_zero());
            trace_ok &= predicted == (roots[a] == roots[b]);
        }
    }

    // restriction criterion: signatures on 1 + ϖλ(β̄^j)
    let f_gens: Vec<LMat> = cong.beta().centralizer_basis().iter().map(|b| cong.section(b)).collect();
    let sigs: Vec<Vec<u64>> = (0..size).into_par_iter().map(|a| f_gens.iter().map(|g| xs.eval(a, g)).collect()).collect();
    let mut by_sig = std::collections::HashMap::new();
    let mut restriction_ok = true;
    for a in 0..size {
        let r = *by_sig.entry(sigs[a].clone()).or_insert(roots[a]);
        restriction_ok &= r == roots[a];
    }
    restriction_ok &= by_sig.len() == counts.len();

    // ω_T
    let diag_ts: Vec<Matrix> = (0..q.pow(n as u32))
        .map(|mut i| {
            let mut t = Matrix::zeros(n, n);
            for d in 0..n {
                t.set(d, d, Fq((i % q) as u32));
                i /= q;
            }
            t
        })
        .collect();
    let mut omega_sigs: Vec<Vec<u64>> =
        diag_ts.iter().map(|t| xs.gens.iter().map(|g| cong.omega(g, t)).collect()).collect();
    let omega_invariant = diag_ts.iter().all(|t| {
        c_gens.iter().all(|e| {
            let ei = cong.inv(e);
            xs.gens.iter().all(|x| cong.omega(&cong.mul(&cong.mul(e, x), &ei), t) == cong.omega(x, t))
        })
    });
    omega_sigs.sort();
    omega_sigs.dedup();

    // sampled verification
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut sampled = true;
    for _ in 0..200 {
        let (g, h) = (xs.random_element(&mut rng), xs.random_element(&mut rng));
        sampled &= cong.psi0(&cong.mul(&g, &h)) == (cong.psi0(&g) + cong.psi0(&h)) % m;
    }
    for _ in 0..64 {
        let a = rng.gen_range(0..size);
        let gi = rng.gen_range(0..k_gens.len());
        let b = neighbours[a][gi];
        let kk = &k_gens[gi];
        let ki = cong.inv(kk);
        for _ in 0..8 {
            let x = xs.random_element(&mut rng);
            sampled &= xs.eval(a, &cong.mul(&cong.mul(kk, &x), &ki)) == xs.eval(b, &x);
        }
    }

    Ok(OrbitCensus {
        x_count: size,
        orbit_count: counts.len(),
        orbit_sizes_uniform,
        orbit_size,
        x0_count: x0.len(),
        orbits_meeting_x0: meeting.len(),
        jordan_blocks: blocks.len(),
        x0_differences_diagonal: diagonal,
        trace_criterion_holds: trace_ok,
        restriction_criterion_holds: restriction_ok,
        omega_distinct: omega_sigs.len(),
        omega_invariant,
        sampled_checks_pass: sampled,
    })
}
