use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::cocycle::{CentralizerCocycle, DualVectorCache};
use super::rho::Rho;
use crate::error::{Error, Result};
use crate::ffield::{AdditiveCharacter, FiniteField, Fq, RootOfUnity};
use crate::matalg::{ComplementHint, Matrix, RegularMatrix, SymplecticSpace};

fn single_jordan(beta: &RegularMatrix) -> Result<(Fq, usize)> {
    match beta.jordan_data() {
        Some(j) if j.len() == 1 => Ok(j[0]),
        _ => Err(Error::NotSplit),
    }
}

fn require_char(k: &FiniteField, min: u32) -> Result<()> {
    if k.p() <= min {
        return Err(Error::CharTooSmall { p: k.p(), min });
    }
    Ok(())
}

/// ε = r·exp(Σ s_k N^k) for ε ∈ F[J_n(a)]^×, N = J_n(0); needs ch F > n.
/// Returns (r, [s_1, …, s_{n−1}]).
pub fn exp_coordinates(beta: &RegularMatrix, eps: &[Fq]) -> Result<(Fq, Vec<Fq>)> {
    let (_, n) = single_jordan(beta)?;
    let k = beta.field();
    require_char(k, n as u32)?;
    let e = beta.algebra().to_matrix(eps);
    let r = e.get(0, 0);
    let u = e.scale(k.inv(r).map_err(|_| Error::NotUnit)?, k).sub(&Matrix::identity(n), k);
    // log(1 + u) = Σ (−1)^{j+1} u^j / j
    let mut log = Matrix::zeros(n, n);
    let mut pw = u.clone();
    for j in 1..n {
        let c = k.div(k.from_int(if j % 2 == 1 { 1 } else { -1 }), k.from_int(j as i64)).unwrap();
        log = log.add(&pw.scale(c, k), k);
        pw = pw.mul(&u, k);
    }
    Ok((r, (1..n).map(|j| log.get(0, j)).collect()))
}

/// r·exp(Σ s_k N^k) in power-basis coordinates.
pub fn from_exp_coordinates(beta: &RegularMatrix, r: Fq, s: &[Fq]) -> Result<Vec<Fq>> {
    let (a, n) = single_jordan(beta)?;
    let k = beta.field();
    require_char(k, n as u32)?;
    let nil = beta.beta().sub(&Matrix::scalar(n, a), k);
    let mut x = Matrix::zeros(n, n);
    let mut pw = nil.clone();
    for &c in s.iter().take(n - 1) {
        x = x.add(&pw.scale(c, k), k);
        pw = pw.mul(&nil, k);
    }
    let mut e = Matrix::identity(n);
    let mut term = Matrix::identity(n);
    for j in 1..n {
        term = term.mul(&x, k).scale(k.inv(k.from_int(j as i64)).unwrap(), k);
        e = e.add(&term, k);
    }
    Ok(beta.algebra().from_matrix(&e.scale(r, k)).expect("exp of a polynomial in N lies in F[β̄]"))
}

/// The closed-form δ for J_n(a), n ∈ {2, 3, 4}, as the argument x of τ̂(x).
/// `rho` holds ρ_0, …, ρ_{n−1}; `params` holds (r, s, t), the exp coordinates.
pub fn delta_split_argument(k: &FiniteField, n: usize, rho: &[Fq], params: &[Fq]) -> Result<Fq> {
    let min = match n {
        2 => 3,
        3 => 5,
        4 => 7,
        _ => return Err(Error::WrongShape(format!("closed-form witnesses exist for n = 2, 3, 4, not {n}"))),
    };
    require_char(k, min)?;
    if rho.len() != n || params.len() < n - 1 {
        return Err(Error::WrongShape("need n coefficients of ρ and n − 1 exp coordinates".into()));
    }
    let c = |num: i64, den: i64| k.div(k.from_int(num), k.from_int(den)).unwrap();
    let m = |xs: &[Fq]| xs.iter().fold(Fq::ONE, |acc, &x| k.mul(acc, x));
    let pw = |x: Fq, e: u64| k.pow(x, e);
    let sum = |xs: &[Fq]| k.sum(xs.iter().copied());
    let r = params[0];
    let s = params.get(1).copied().unwrap_or(Fq::ZERO);
    let t = params.get(2).copied().unwrap_or(Fq::ZERO);
    let r1 = rho[1];
    let r2 = rho.get(2).copied().unwrap_or(Fq::ZERO);
    let r3 = rho.get(3).copied().unwrap_or(Fq::ZERO);

    let mut inner = vec![m(&[c(1, 3), r1, r1, pw(r, 3)])];
    if n >= 3 {
        inner.push(m(&[k.from_int(2), r1, r2, pw(r, 2), s]));
    }
    match n {
        3 => inner.push(m(&[r2, r2, sum(&[m(&[r, s, s]), m(&[c(-1, 20), pw(r, 5)])])])),
        4 => {
            let two = k.from_int(2);
            inner.push(m(&[r2, r2, sum(&[m(&[two, r, s, s]), m(&[r, r, t]), m(&[c(-1, 30), pw(r, 5)])])]));
            inner.push(m(&[r1, r3, sum(&[m(&[two, r, s, s]), m(&[two, r, r, t]), m(&[c(1, 30), pw(r, 5)])])]));
            inner.push(m(&[
                r2,
                r3,
                sum(&[m(&[k.from_int(4), r, s, t]), m(&[c(4, 3), pw(s, 3)]), m(&[c(-1, 3), pw(r, 4), s])]),
            ]));
            inner.push(m(&[
                r3,
                r3,
                sum(&[
                    m(&[s, s, t]),
                    m(&[r, t, t]),
                    m(&[c(1, 12), pw(r, 4), t]),
                    m(&[c(-1, 3), pw(r, 3), s, s]),
                    m(&[c(1, 252), pw(r, 7)]),
                ]),
            ]));
        }
        _ => {}
    }
    Ok(k.mul(c(-1, 2), sum(&inner)))
}

/// c_{β̄,ρ} for β̄ = J_n(a) with ρ_A, A = Σ ρ_k N^k, and the section onto
/// V = {X : tr(X ᵗA) = 0 for all A ∈ F[β̄]}, against the closed-form δ.
#[derive(Clone, Debug)]
pub struct SplitWitness {
    beta: RegularMatrix,
    coeffs: Vec<Fq>,
    cocycle: CentralizerCocycle,
}

/// Outcome of comparing ∂δ with c on a set of pairs.
#[derive(Clone, Debug, Serialize)]
pub struct WitnessCheck {
    pub pairs: usize,
    pub mismatches: usize,
    pub exhaustive: bool,
}

impl WitnessCheck {
    pub fn passed(&self) -> bool {
        self.mismatches == 0
    }
}

impl SplitWitness {
    pub fn new(beta: &RegularMatrix, coeffs: &[Fq], chi: &AdditiveCharacter) -> Result<Self> {
        let (_, n) = single_jordan(beta)?;
        let k = beta.field();
        delta_split_argument(k, n, &vec![Fq::ZERO; n], &vec![Fq::ZERO; n - 1])?;
        let mut c = coeffs.to_vec();
        c.resize(n, Fq::ZERO);
        let rho = Rho::split_coefficients(beta, &c)?;
        let space = SymplecticSpace::new(beta, ComplementHint::TransposeOrthogonal)?;
        Ok(SplitWitness { beta: beta.clone(), coeffs: c, cocycle: CentralizerCocycle::new(&space, &rho, chi) })
    }

    pub fn cocycle(&self) -> &CentralizerCocycle {
        &self.cocycle
    }

    /// δ(ε); scalars are central, so only the unipotent part matters.
    pub fn delta(&self, eps: &[Fq]) -> Result<RootOfUnity> {
        let (_, s) = exp_coordinates(&self.beta, eps)?;
        let x = delta_split_argument(self.beta.field(), self.beta.n(), &self.coeffs, &s)?;
        Ok(self.cocycle.character().value(x))
    }

    fn coboundary_exponent(&self, eps: &[Fq], eta: &[Fq]) -> Result<u64> {
        let alg = self.beta.algebra();
        let d = self.delta(eta)?.mul(&self.delta(eps)?).div(&self.delta(&alg.mul(eps, eta))?);
        Ok(d.exponent_in(self.cocycle.character().p()).expect("δ takes values in μ_p"))
    }

    /// Every pair of units (q^n − q^{n−1} squared).
    pub fn check_exhaustive(&self) -> Result<WitnessCheck> {
        let units = self.beta.algebra().units(usize::MAX)?;
        let cache = DualVectorCache::new(&self.cocycle, &units)?;
        let mismatches = units
            .par_iter()
            .map(|e| -> Result<usize> {
                let mut bad = 0;
                for f in &units {
                    if cache.exponent(&self.cocycle, e, f)? != self.coboundary_exponent(e, f)? {
                        bad += 1;
                    }
                }
                Ok(bad)
            })
            .sum::<Result<usize>>()?;
        Ok(WitnessCheck { pairs: units.len() * units.len(), mismatches, exhaustive: true })
    }

    /// `pairs` pairs drawn uniformly from the unit group with a seeded generator.
    pub fn check_sampled(&self, pairs: usize, seed: u64) -> Result<WitnessCheck> {
        let units = self.beta.algebra().units(usize::MAX)?;
        let cache = DualVectorCache::new(&self.cocycle, &units)?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let idx: Vec<(usize, usize)> = (0..pairs).map(|_| (rng.gen_range(0..units.len()), rng.gen_range(0..units.len()))).collect();
        let mismatches = idx
            .par_iter()
            .map(|&(i, j)| -> Result<usize> {
                let (e, f) = (&units[i], &units[j]);
                Ok((cache.exponent(&self.cocycle, e, f)? != self.coboundary_exponent(e, f)?) as usize)
            })
            .sum::<Result<usize>>()?;
        Ok(WitnessCheck { pairs, mismatches, exhaustive: false })
    }
}
