use std::collections::{BTreeMap, HashSet};
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use super::congruence::{Congruence, R};
use super::intertwiner::{inverse_class, same_class};
use super::orbits::{orbit_census, OrbitCensus};
use super::pipsi::{PiPsi, PiPsiReport};
use super::ring::RingKind;
use crate::cohom::Cocycle2;
use crate::error::{Error, Result};
use crate::ffield::Fq;
use crate::matalg::{format_element, ComplementHint, Matrix, Polarization, RegularMatrix, SymplecticSpace, UnitGroup};
use crate::schurmult::CentralizerCocycle;
use crate::weilrep::WeilCocycle;

#[derive(Clone, Debug)]
pub struct OracleOptions {
    /// Functionals ℓ on the power basis; all q^n when absent.
    pub rhos: Option<Vec<Vec<Fq>>>,
    pub seed: u64,
    pub samples: usize,
    pub census: bool,
    pub timings: bool,
}

impl Default for OracleOptions {
    fn default() -> Self {
        OracleOptions { rhos: None, seed: 0, samples: 200, census: true, timings: true }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RhoEntry {
    pub rho: String,
    pub pi_psi: PiPsiReport,
    pub intertwining_defect: f64,
    pub unitarity_defect: f64,
    pub scalar_defect: f64,
    pub k1_scalar_defect: f64,
    #[serde(rename = "cU_class_trivial")]
    pub cu_class_trivial: bool,
    pub algebraic_class_trivial: bool,
    pub matches_algebraic_class: bool,
    /// [c_U] = [c_{β̄,ρ}·c_T]⁻¹; reported to expose orientation slips.
    pub matches_inverse_class: bool,
    #[serde(skip)]
    pub cu: Cocycle2,
    /// c_{β̄,ρ}·c_T on the same unit group.
    #[serde(skip)]
    pub algebraic: Cocycle2,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct IrrCount {
    /// |C/C∩K_1| = |F[β̄]^×|, counted among the q^n elements of F[β̄].
    pub c_quotient_order: usize,
    /// Centralizer of β̄ in GL_n(F), counted over all of GL_n(F) when small.
    pub centralizer_count: Option<usize>,
    /// Distinct restrictions ψ₀·(τ̂∘ℓ) to K_1(F[β̄]).
    pub y_count: usize,
    pub y_index: usize,
    pub count: usize,
    /// The Hypothesis (every class trivial) was not confirmed for this β̄.
    pub conditional: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct OracleReport {
    pub ring_kind: RingKind,
    pub p: u32,
    pub n: usize,
    pub r: u32,
    pub beta_descriptor: String,
    pub dim: usize,
    pub unit_count: usize,
    pub snap_modulus: u64,
    pub orbit_census: Option<OrbitCensus>,
    #[serde(rename = "cU_class_trivial")]
    pub cu_class_trivial: bool,
    pub matches_algebraic_class: bool,
    pub checks_passed: bool,
    pub rhos: Vec<RhoEntry>,
    pub count_irr: IrrCount,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings: Option<BTreeMap<String, f64>>,
}

fn all_vectors(q: usize, len: usize) -> Vec<Vec<Fq>> {
    (0..q.pow(len as u32))
        .map(|mut i| {
            (0..len)
                .map(|_| {
                    let c = Fq((i % q) as u32);
                    i /= q;
                    c
                })
                .collect()
        })
        .collect()
}

/// GL_n(F) is scanned only up to this many matrices.
const CENTRALIZER_SCAN: usize = 20_000;

pub fn count_irr(cong: &Congruence, hypothesis_holds: bool) -> IrrCount {
    let beta = cong.beta();
    let k = cong.field();
    let n = cong.n();
    let q = cong.q() as usize;
    let alg = beta.algebra();
    let elems = all_vectors(q, n);
    let c_quotient_order = elems.iter().filter(|a| alg.to_matrix(a).det(k) != Fq::ZERO).count();
    let centralizer_count = (q.pow((n * n) as u32) <= CENTRALIZER_SCAN).then(|| {
        let b = beta.beta();
        all_vectors(q, n * n)
            .into_iter()
            .filter(|v| {
                let g = Matrix::from_vec(n, n, v.clone()).unwrap();
                g.det(k) != Fq::ZERO && g.mul(b, k) == b.mul(&g, k)
            })
            .count()
    });
    // characters of K_1(F[β̄]) extending ψ_β, by their values on 1 + ϖλ(β̄^j)
    let gens: Vec<_> = beta.centralizer_basis().iter().map(|b| cong.section(b)).collect();
    let y: HashSet<Vec<u64>> = elems
        .iter()
        .map(|l| {
            gens.iter()
                .zip(l)
                .map(|(g, &lj)| (cong.psi0(g) + cong.hat(lj)) % cong.modulus())
                .collect()
        })
        .collect();
    IrrCount {
        c_quotient_order,
        centralizer_count,
        y_count: y.len(),
        y_index: q.pow(n as u32),
        count: c_quotient_order * y.len(),
        conditional: !hypothesis_holds,
    }
}

pub fn run_oracle(kind: RingKind, beta: &RegularMatrix, opts: &OracleOptions) -> Result<OracleReport> {
    let mut timings = BTreeMap::new();
    let start = Instant::now();
    let cong = Congruence::new(kind, beta)?;
    let space = SymplecticSpace::new(beta, ComplementHint::Greedy)?;
    let pol = Polarization::canonical(&space)?;
    let units = UnitGroup::new(beta.algebra(), crate::cohom::MAX_GROUP_ORDER)?;
    let chi = cong.character();
    let c_t = WeilCocycle::new(&space, &pol, chi).table(&units)?;
    let q = cong.q() as usize;

    let orbit = if opts.census && beta.jordan_data().is_some() {
        let t = Instant::now();
        let c = orbit_census(&cong, &units, opts.seed)?;
        timings.insert("orbit_census".to_string(), t.elapsed().as_secs_f64());
        Some(c)
    } else {
        None
    };

    let functionals = opts.rhos.clone().unwrap_or_else(|| all_vectors(q, beta.n()));
    if functionals.iter().any(|l| l.len() != beta.n()) {
        return Err(Error::DimensionMismatch(format!("ρ needs {} coordinates", beta.n())));
    }
    let t = Instant::now();
    let entries = functionals
        .par_iter()
        .enumerate()
        .map(|(i, l)| {
            let pi = PiPsi::new(&cong, &space, &pol, l)?;
            let seed = opts.seed.wrapping_add(i as u64);
            let check = pi.verify(opts.samples, seed);
            let cu = pi.extract_cu(&units, seed)?;
            let alg: Cocycle2 = CentralizerCocycle::new(&space, &pi.rho(), chi).table(&units)?.mul(&c_t)?;
            Ok(RhoEntry {
                rho: format_element(beta.algebra(), l),
                intertwining_defect: cu.intertwining_defect,
                unitarity_defect: cu.unitarity_defect,
                scalar_defect: cu.scalar_defect,
                k1_scalar_defect: cu.k1_scalar_defect,
                cu_class_trivial: cu.cocycle.is_trivial_class(),
                algebraic_class_trivial: alg.is_trivial_class(),
                matches_algebraic_class: same_class(&cu.cocycle, &alg),
                matches_inverse_class: inverse_class(&cu.cocycle, &alg),
                pi_psi: check,
                cu: cu.cocycle,
                algebraic: alg,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    timings.insert("rho_sweep".to_string(), t.elapsed().as_secs_f64());

    let dim = entries.first().map_or(0, |e| e.pi_psi.dim);
    let cu_trivial = entries.iter().all(|e| e.cu_class_trivial);
    let ops_ok = entries.iter().all(|e| {
        e.pi_psi.passed && e.intertwining_defect < super::OP_TOL && e.unitarity_defect < super::OP_TOL && e.k1_scalar_defect < super::OP_TOL
    });
    let census_ok = orbit.as_ref().is_none_or(|c| {
        c.orbit_sizes_uniform && c.trace_criterion_holds && c.restriction_criterion_holds && c.sampled_checks_pass
    });
    let all_functionals = opts.rhos.is_none();
    let count = count_irr(&cong, all_functionals && entries.iter().all(|e| e.algebraic_class_trivial));
    timings.insert("total".to_string(), start.elapsed().as_secs_f64());

    Ok(OracleReport {
        ring_kind: kind,
        p: cong.p(),
        n: beta.n(),
        r: R,
        beta_descriptor: beta.descriptor().to_string(),
        dim,
        unit_count: units.order(),
        snap_modulus: super::snap_modulus(cong.p(), dim.max(1)),
        orbit_census: orbit,
        cu_class_trivial: cu_trivial,
        matches_algebraic_class: entries.iter().all(|e| e.matches_algebraic_class),
        checks_passed: ops_ok && census_ok && count.y_count == count.y_index,
        rhos: entries,
        count_irr: count,
        timings: opts.timings.then_some(timings),
    })
}

/// Both ring kinds on the same β̄: equal orbit censuses and equal c_U classes.
#[derive(Clone, Debug, Serialize)]
pub struct RingComparison {
    pub unequal: OracleReport,
    pub equal: OracleReport,
    pub census_agree: bool,
    pub classes_agree: bool,
}

impl RingComparison {
    pub fn passed(&self) -> bool {
        self.census_agree
            && self.classes_agree
            && self.unequal.matches_algebraic_class
            && self.equal.matches_algebraic_class
            && self.unequal.checks_passed
            && self.equal.checks_passed
    }
}

pub fn compare_ring_kinds(beta: &RegularMatrix, opts: &OracleOptions) -> Result<RingComparison> {
    let unequal = run_oracle(RingKind::Unequal, beta, opts)?;
    let equal = run_oracle(RingKind::Equal, beta, opts)?;
    let census_agree = unequal.orbit_census == equal.orbit_census;
    let classes_agree =
        unequal.rhos.len() == equal.rhos.len() && unequal.rhos.iter().zip(&equal.rhos).all(|(a, b)| a.cu.antisym_roots() == b.cu.antisym_roots());
    Ok(RingComparison { unequal, equal, census_agree, classes_agree })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffield::FiniteField;
    use crate::matalg::Poly;

    fn q3() -> FiniteField {
        FiniteField::prime(3).unwrap()
    }

    #[test]
    fn jordan_block_all_rho() {
        let beta = RegularMatrix::jordan(&q3(), &[(Fq(0), 2)]).unwrap();
        let cmp = compare_ring_kinds(&beta, &OracleOptions { samples: 50, ..Default::default() }).unwrap();
        assert!(cmp.passed());
        let r = &cmp.unequal;
        assert_eq!((r.dim, r.rhos.len(), r.unit_count), (3, 9, 6));
        assert_eq!(r.count_irr.y_count, 9);
        assert_eq!(r.count_irr.c_quotient_order, 6);
        assert_eq!(r.count_irr.centralizer_count, Some(6));
        for e in &r.rhos {
            eprintln!("{} cu_trivial={} alg_trivial={}", e.rho, e.cu_class_trivial, e.algebraic_class_trivial);
        }
    }

    #[test]
    fn split_and_cuspidal() {
        let k = q3();
        let diag = RegularMatrix::jordan(&k, &[(Fq(0), 1), (Fq(1), 1)]).unwrap();
        let cusp = RegularMatrix::companion(&k, &Poly::parse("t^2+1", &k).unwrap()).unwrap();
        for beta in [diag, cusp] {
            let cmp = compare_ring_kinds(&beta, &OracleOptions { samples: 50, ..Default::default() }).unwrap();
            assert!(cmp.passed(), "{}", beta.descriptor());
            assert!(cmp.unequal.cu_class_trivial);
        }
    }

    #[test]
    fn diagonal_a_gives_trivial_class() {
        // ψ_A with A diagonal restricts to ℓ_j = tr(β̄^j A) on F[β̄]
        let k = q3();
        let beta = RegularMatrix::jordan(&k, &[(Fq(0), 2)]).unwrap();
        let mut rhos = Vec::new();
        for a in all_vectors(3, 2) {
            let am = Matrix::from_fn(2, 2, |i, j| if i == j { a[i] } else { Fq::ZERO });
            rhos.push(beta.centralizer_basis().iter().map(|b| b.mul(&am, &k).trace(&k)).collect());
        }
        let opts = OracleOptions { rhos: Some(rhos), census: false, samples: 20, ..Default::default() };
        let r = run_oracle(RingKind::Unequal, &beta, &opts).unwrap();
        assert!(r.cu_class_trivial && r.matches_algebraic_class);
        assert!(r.count_irr.conditional);
    }
}
