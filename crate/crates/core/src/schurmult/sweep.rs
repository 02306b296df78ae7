use rayon::prelude::*;
use serde::Serialize;

use super::cocycle::CentralizerCocycle;
use super::rho::{PairingKind, Rho};
use crate::cohom::{solve_coboundary, CoboundaryWitness, Cocycle2};
use crate::error::{Error, Result};
use crate::ffield::{AdditiveCharacter, FiniteField};
use crate::matalg::{format_element, ComplementHint, Poly, Polarization, PolarizationKind, RegularMatrix, SymplecticSpace, UnitGroup};
use crate::weilrep::WeilCocycle;

/// Which characters of F[β̄] a sweep visits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RhoSelector {
    All,
    /// A single A in power-basis coordinates.
    Single(Vec<u32>),
    /// Diagonal A (split β̄ only).
    Diagonal,
}

#[derive(Clone, Debug)]
pub struct SweepOptions {
    pub rho: RhoSelector,
    pub kind: Option<PairingKind>,
    pub rho_cap: usize,
    pub unit_bound: usize,
    pub witnesses: bool,
    pub complement: ComplementHint,
}

impl Default for SweepOptions {
    fn default() -> Self {
        SweepOptions {
            rho: RhoSelector::All,
            kind: None,
            rho_cap: 100_000,
            unit_bound: crate::cohom::MAX_GROUP_ORDER,
            witnesses: false,
            complement: ComplementHint::Greedy,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Counterexample {
    pub rho: String,
    /// Number of pairs (x, y) with c(x,y) ≠ c(y,x).
    pub asymmetric_pairs: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct WitnessEntry {
    pub rho: String,
    pub witness: CoboundaryWitness,
}

#[derive(Clone, Debug, Serialize)]
pub struct SweepReport {
    pub beta: String,
    pub q: u32,
    pub n: usize,
    pub unit_count: usize,
    pub pairing: PairingKind,
    pub polarization: PolarizationKind,
    pub c_t_trivial: bool,
    pub rho_count: usize,
    pub trivial_count: usize,
    pub counterexamples: Vec<Counterexample>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witnesses: Option<Vec<WitnessEntry>>,
}

impl SweepReport {
    pub fn all_trivial(&self) -> bool {
        self.counterexamples.is_empty()
    }
}

/// The products c_{β̄,ρ}·c_T for the selected characters, in enumeration order.
pub struct SweepTables {
    pub beta: RegularMatrix,
    pub units: UnitGroup,
    pub pairing: PairingKind,
    pub polarization: PolarizationKind,
    pub c_t: Cocycle2,
    pub products: Vec<(Rho, Cocycle2)>,
}

fn select(beta: &RegularMatrix, opts: &SweepOptions) -> Result<(PairingKind, Vec<Rho>)> {
    let kind = opts.kind.unwrap_or_else(|| PairingKind::default_for(beta));
    let rhos = match &opts.rho {
        RhoSelector::All => Rho::enumerate(beta, kind, opts.rho_cap),
        RhoSelector::Single(a) => {
            let k = beta.field();
            let coords = a.iter().map(|&x| k.element(x)).collect::<Result<Vec<_>>>()?;
            vec![Rho::new(beta, kind, &coords)?]
        }
        RhoSelector::Diagonal => {
            if beta.jordan_data().is_none() {
                return Err(Error::NotSplit);
            }
            Rho::diagonal(beta)
        }
    };
    Ok((kind, rhos))
}

pub fn sweep_tables(beta: &RegularMatrix, chi: &AdditiveCharacter, opts: &SweepOptions) -> Result<SweepTables> {
    let space = SymplecticSpace::new(beta, opts.complement.clone())?;
    let pol = Polarization::canonical(&space)?;
    let units = UnitGroup::new(beta.algebra(), opts.unit_bound)?;
    let c_t = WeilCocycle::new(&space, &pol, chi).table(&units)?;
    let (pairing, rhos) = select(beta, opts)?;
    let products = rhos
        .into_par_iter()
        .map(|rho| {
            let c = CentralizerCocycle::new(&space, &rho, chi).table(&units)?;
            Ok((rho, c.mul(&c_t)?))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SweepTables { beta: beta.clone(), units, pairing, polarization: pol.kind(), c_t, products })
}

fn rho_label(beta: &RegularMatrix, rho: &Rho) -> String {
    format_element(beta.algebra(), rho.a())
}

/// Decides [c_{β̄,ρ}·c_T] for every selected ρ.
pub fn conjecture_sweep(beta: &RegularMatrix, chi: &AdditiveCharacter, opts: &SweepOptions) -> Result<SweepReport> {
    let t = sweep_tables(beta, chi, opts)?;
    let verdicts: Vec<(bool, usize)> = t
        .products
        .par_iter()
        .map(|(_, c)| {
            let asym = c.antisym().iter().filter(|&&v| v != 0).count();
            (asym == 0, asym)
        })
        .collect();
    let counterexamples = t
        .products
        .iter()
        .zip(&verdicts)
        .filter(|(_, v)| !v.0)
        .map(|((rho, _), v)| Counterexample { rho: rho_label(beta, rho), asymmetric_pairs: v.1 })
        .collect();
    let witnesses = if opts.witnesses {
        let w = t
            .products
            .par_iter()
            .zip(&verdicts)
            .filter(|(_, v)| v.0)
            .map(|((rho, c), _)| Ok(WitnessEntry { rho: rho_label(beta, rho), witness: solve_coboundary(c)? }))
            .collect::<Result<Vec<_>>>()?;
        Some(w)
    } else {
        None
    };
    Ok(SweepReport {
        beta: beta.descriptor().to_string(),
        q: beta.field().q(),
        n: beta.n(),
        unit_count: t.units.order(),
        pairing: t.pairing,
        polarization: t.polarization,
        c_t_trivial: t.c_t.is_trivial_class(),
        rho_count: t.products.len(),
        trivial_count: verdicts.iter().filter(|v| v.0).count(),
        counterexamples,
        witnesses,
    })
}

/// One representative per squarefree characteristic polynomial of degree n.
pub fn separable_classes(k: &FiniteField, n: usize) -> Vec<RegularMatrix> {
    Poly::all_monic(n, k)
        .filter(|p| p.is_squarefree(k))
        .map(|p| RegularMatrix::separable_representative(k, &p).expect("squarefree polynomial"))
        .collect()
}

/// Companion matrices of p(t)^e with p irreducible, deg p ≥ 2, e ≥ 2, and
/// e·deg p = n: the regime where no closed-form answer is known.
pub fn primary_nonsplit_classes(k: &FiniteField, n: usize) -> Vec<RegularMatrix> {
    let mut out = Vec::new();
    for d in 2..=n / 2 {
        if n % d != 0 {
            continue;
        }
        let e = n / d;
        for p in Poly::all_monic(d, k).filter(|p| p.is_irreducible(k)) {
            let mut pe = Poly::constant(k.one());
            for _ in 0..e {
                pe = pe.mul(&p, k);
            }
            out.push(RegularMatrix::companion(k, &pe).expect("companion matrices are regular"));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffield::Fq;

    #[test]
    fn separable_small_all_trivial() {
        let k = FiniteField::prime(3).unwrap();
        let chi = AdditiveCharacter::canonical(&k);
        let classes = separable_classes(&k, 2);
        assert_eq!(classes.len(), 6);
        for beta in classes {
            let r = conjecture_sweep(&beta, &chi, &SweepOptions::default()).unwrap();
            assert_eq!(r.rho_count, 9);
            assert!(r.all_trivial(), "{}", r.beta);
        }
    }

    #[test]
    fn diagonal_rho_gives_trivial_centralizer_cocycle() {
        let k = FiniteField::prime(5).unwrap();
        let chi = AdditiveCharacter::canonical(&k);
        let beta = RegularMatrix::jordan(&k, &[(Fq(1), 3)]).unwrap();
        let opts = SweepOptions { rho: RhoSelector::Diagonal, complement: ComplementHint::TransposeOrthogonal, ..Default::default() };
        let t = sweep_tables(&beta, &chi, &opts).unwrap();
        assert_eq!(t.products.len(), 5);
        assert!(t.c_t.table().iter().all(|&v| v == 0));
        for (_, c) in &t.products {
            assert!(c.table().iter().all(|&v| v == 0));
        }
    }

    #[test]
    fn witnesses_verify() {
        let k = FiniteField::prime(5).unwrap();
        let chi = AdditiveCharacter::canonical(&k);
        let beta = RegularMatrix::jordan(&k, &[(Fq(0), 2)]).unwrap();
        let opts = SweepOptions { witnesses: true, ..Default::default() };
        let r = conjecture_sweep(&beta, &chi, &opts).unwrap();
        let t = sweep_tables(&beta, &chi, &opts).unwrap();
        let w = r.witnesses.unwrap();
        assert_eq!(w.len(), r.trivial_count);
        for ((_, c), entry) in t.products.iter().zip(&w) {
            assert!(entry.witness.verifies(c));
        }
    }

    #[test]
    fn primary_nonsplit_candidates() {
        let k = FiniteField::prime(3).unwrap();
        let c = primary_nonsplit_classes(&k, 4);
        // three monic irreducible quadratics over F_3
        assert_eq!(c.len(), 3);
        assert!(c.iter().all(|b| b.factors().len() == 1 && b.factors()[0].1 == 2));
    }
}
