use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::group::AbelianGroupTable;
use crate::error::{Error, Result};
use crate::ffield::RootOfUnity;
use crate::util::lcm;

/// Triple count up to which the cocycle identity is checked exhaustively.
const EXHAUSTIVE_TRIPLES: usize = 64 * 64 * 64;
const SAMPLED_TRIPLES: usize = 200_000;

/// A 2-cocycle G × G → μ_M stored as exponents: c(x, y) = ζ_M^{table[x·|G| + y]}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cocycle2 {
    group: Arc<AbelianGroupTable>,
    modulus: u64,
    table: Vec<u64>,
}

#[derive(Serialize, Deserialize)]
struct CocycleJson {
    group_order: usize,
    #[serde(rename = "M")]
    modulus: u64,
    table: Vec<u64>,
}

impl Cocycle2 {
    pub fn new(group: Arc<AbelianGroupTable>, modulus: u64, table: Vec<u64>) -> Result<Self> {
        let n = group.order();
        if modulus == 0 || table.len() != n * n {
            return Err(Error::WrongShape(format!("cocycle table of length {} for |G| = {n}", table.len())));
        }
        let table = table.into_iter().map(|v| v % modulus).collect();
        Ok(Cocycle2 { group, modulus, table })
    }

    pub fn from_fn<F>(group: Arc<AbelianGroupTable>, modulus: u64, f: F) -> Self
    where
        F: Fn(usize, usize) -> u64 + Sync,
    {
        let n = group.order();
        let table = (0..n * n).into_par_iter().map(|k| f(k / n, k % n) % modulus).collect();
        Cocycle2 { group, modulus, table }
    }

    /// Tabulates a root-of-unity valued function; the modulus is the lcm of the
    /// orders that occur.
    pub fn from_roots<F>(group: Arc<AbelianGroupTable>, f: F) -> Self
    where
        F: Fn(usize, usize) -> RootOfUnity + Sync,
    {
        let n = group.order();
        let values: Vec<RootOfUnity> = (0..n * n).into_par_iter().map(|k| f(k / n, k % n)).collect();
        let modulus = values.iter().map(|v| v.order()).fold(1, lcm);
        let table = values.iter().map(|v| v.exponent_in(modulus).unwrap()).collect();
        Cocycle2 { group, modulus, table }
    }

    pub fn trivial(group: Arc<AbelianGroupTable>) -> Self {
        let n = group.order();
        Cocycle2 { group, modulus: 1, table: vec![0; n * n] }
    }

    /// ∂δ(x, y) = δ(x) + δ(y) − δ(xy).
    pub fn coboundary(group: Arc<AbelianGroupTable>, modulus: u64, delta: &[u64]) -> Self {
        let g = group.clone();
        Self::from_fn(group, modulus, |x, y| {
            (delta[x] % modulus + delta[y] % modulus + modulus - delta[g.mul(x, y)] % modulus) % modulus
        })
    }

    pub fn group(&self) -> &Arc<AbelianGroupTable> {
        &self.group
    }
    pub fn modulus(&self) -> u64 {
        self.modulus
    }
    pub fn table(&self) -> &[u64] {
        &self.table
    }

    #[inline]
    pub fn value(&self, x: usize, y: usize) -> u64 {
        self.table[x * self.group.order() + y]
    }

    pub fn root(&self, x: usize, y: usize) -> RootOfUnity {
        RootOfUnity::new(self.modulus, self.value(x, y) as i64)
    }

    /// The same cocycle with exponents in Z/m, m a multiple of the modulus.
    pub fn lift(&self, m: u64) -> Result<Self> {
        if m % self.modulus != 0 {
            return Err(Error::WrongShape(format!("{m} is not a multiple of {}", self.modulus)));
        }
        let k = m / self.modulus;
        Ok(Cocycle2 { group: self.group.clone(), modulus: m, table: self.table.iter().map(|v| v * k).collect() })
    }

    /// Pointwise product.
    pub fn mul(&self, other: &Cocycle2) -> Result<Self> {
        if self.group != other.group {
            return Err(Error::DimensionMismatch("cocycles on different groups".into()));
        }
        let m = lcm(self.modulus, other.modulus);
        let (a, b) = (self.lift(m)?, other.lift(m)?);
        let table = a.table.iter().zip(&b.table).map(|(x, y)| (x + y) % m).collect();
        Ok(Cocycle2 { group: self.group.clone(), modulus: m, table })
    }

    /// Drops the modulus to the order of the subgroup of μ_M actually used.
    pub fn reduced(&self) -> Self {
        let g = self.table.iter().fold(self.modulus, |acc, &v| crate::util::gcd(acc, v));
        let m = self.modulus / g;
        Cocycle2 { group: self.group.clone(), modulus: m, table: self.table.iter().map(|v| v / g).collect() }
    }

    fn identity_holds(&self, x: usize, y: usize, z: usize) -> bool {
        let g = &self.group;
        let m = self.modulus;
        (self.value(x, y) + self.value(g.mul(x, y), z)) % m == (self.value(x, g.mul(y, z)) + self.value(y, z)) % m
    }

    /// c(x,y) + c(xy,z) = c(x,yz) + c(y,z), exhaustively for small groups and on a
    /// fixed pseudo-random sample of triples otherwise.
    pub fn is_cocycle(&self) -> bool {
        let n = self.group.order();
        if n * n * n <= EXHAUSTIVE_TRIPLES {
            (0..n).into_par_iter().all(|x| (0..n).all(|y| (0..n).all(|z| self.identity_holds(x, y, z))))
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(n as u64);
            let triples: Vec<(usize, usize, usize)> = (0..SAMPLED_TRIPLES)
                .map(|_| (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n)))
                .collect();
            triples.par_iter().all(|&(x, y, z)| self.identity_holds(x, y, z))
        }
    }

    /// The alternating pairing c(x,y) − c(y,x) mod M, row-major.
    pub fn antisym(&self) -> Vec<u64> {
        let n = self.group.order();
        let m = self.modulus;
        (0..n * n)
            .into_par_iter()
            .map(|k| {
                let (x, y) = (k / n, k % n);
                (self.value(x, y) + m - self.value(y, x)) % m
            })
            .collect()
    }

    /// Antisymmetrization as roots of unity, for comparing across moduli.
    pub fn antisym_roots(&self) -> Vec<RootOfUnity> {
        self.antisym().into_iter().map(|e| RootOfUnity::new(self.modulus, e as i64)).collect()
    }

    /// For a finite abelian group and divisible coefficients the class is
    /// trivial exactly when the cocycle is symmetric.
    pub fn is_trivial_class(&self) -> bool {
        let n = self.group.order();
        (0..n).into_par_iter().all(|x| (x + 1..n).all(|y| self.value(x, y) == self.value(y, x)))
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(CocycleJson {
            group_order: self.group.order(),
            modulus: self.modulus,
            table: self.table.clone(),
        })
        .expect("plain data serializes")
    }

    pub fn from_json(group: Arc<AbelianGroupTable>, v: &serde_json::Value) -> Result<Self> {
        let j: CocycleJson = serde_json::from_value(v.clone()).map_err(|e| Error::Parse(e.to_string()))?;
        if j.group_order != group.order() {
            return Err(Error::DimensionMismatch(format!("group order {} vs {}", j.group_order, group.order())));
        }
        if j.table.iter().any(|&v| v >= j.modulus) {
            return Err(Error::Parse("table entry out of range".into()));
        }
        Self::new(group, j.modulus, j.table)
    }
}

/// A map δ: G → Z/M′ with ∂δ = (M′/M)·c.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoboundaryWitness {
    #[serde(rename = "M_prime")]
    pub modulus: u64,
    pub delta: Vec<u64>,
}

impl CoboundaryWitness {
    pub fn value(&self, x: usize) -> RootOfUnity {
        RootOfUnity::new(self.modulus, self.delta[x] as i64)
    }

    /// Checks δ(y) − δ(xy) + δ(x) ≡ (M′/M)·c(x,y) for every pair.
    pub fn verifies(&self, c: &Cocycle2) -> bool {
        let g = c.group();
        let n = g.order();
        let m = self.modulus;
        if self.delta.len() != n || m % c.modulus() != 0 {
            return false;
        }
        let k = m / c.modulus();
        (0..n).into_par_iter().all(|x| {
            (0..n).all(|y| {
                let d = (self.delta[x] + self.delta[y] + m - self.delta[g.mul(x, y)]) % m;
                d == (k * c.value(x, y)) % m
            })
        })
    }
}

/// Random cocycles on Z/n₁ × … × Z/n_k, for exercising the triviality test
/// and the solver.
pub mod random {
    use super::*;

    fn decode(orders: &[usize], mut i: usize) -> Vec<u64> {
        let mut c = vec![0; orders.len()];
        for k in (0..orders.len()).rev() {
            c[k] = (i % orders[k]) as u64;
            i /= orders[k];
        }
        c
    }

    fn random_coboundary<R: Rng>(g: &Arc<AbelianGroupTable>, m: u64, rng: &mut R) -> Cocycle2 {
        let delta: Vec<u64> = (0..g.order()).map(|_| rng.gen_range(0..m)).collect();
        Cocycle2::coboundary(g.clone(), m, &delta)
    }

    /// Sum of carry cocycles, a symmetric bicharacter and a coboundary.
    pub fn symmetric<R: Rng>(orders: &[usize], m: u64, rng: &mut R) -> Result<Cocycle2> {
        let g = Arc::new(AbelianGroupTable::cyclic_product(orders)?);
        let r = orders.len();
        let carry: Vec<u64> = (0..r).map(|_| rng.gen_range(0..m)).collect();
        let mut bichar = vec![vec![0u64; r]; r];
        for i in 0..r {
            for j in i..r {
                let step = m / crate::util::gcd(m, crate::util::gcd(orders[i] as u64, orders[j] as u64));
                let v = step * rng.gen_range(0..m / step);
                bichar[i][j] = v;
                bichar[j][i] = v;
            }
        }
        let base = Cocycle2::from_fn(g.clone(), m, |x, y| {
            let (a, b) = (decode(orders, x), decode(orders, y));
            let mut s = 0u64;
            for i in 0..r {
                if a[i] + b[i] >= orders[i] as u64 {
                    s += carry[i];
                }
                for j in 0..r {
                    s += bichar[i][j] * a[i] % m * b[j] % m;
                }
            }
            s % m
        });
        base.mul(&random_coboundary(&g, m, rng))
    }

    /// ζ_M^{k·x₁y₂} times a coboundary, with k chosen so the first two factors
    /// pair nontrivially. Needs at least two factors with gcd(n₁, n₂, M) > 1.
    pub fn twisted<R: Rng>(orders: &[usize], m: u64, rng: &mut R) -> Result<Cocycle2> {
        if orders.len() < 2 {
            return Err(Error::WrongShape("twisted cocycle needs two cyclic factors".into()));
        }
        let d = crate::util::gcd(m, crate::util::gcd(orders[0] as u64, orders[1] as u64));
        if d < 2 {
            return Err(Error::WrongShape("no nontrivial pairing of the first two factors".into()));
        }
        let step = m / d;
        let k = step * rng.gen_range(1..d);
        let g = Arc::new(AbelianGroupTable::cyclic_product(orders)?);
        let base = Cocycle2::from_fn(g.clone(), m, |x, y| {
            let (a, b) = (decode(orders, x), decode(orders, y));
            k * a[0] % m * b[1] % m
        });
        base.mul(&random_coboundary(&g, m, rng))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: usize) -> Arc<AbelianGroupTable> {
        Arc::new(AbelianGroupTable::cyclic_product(&[n]).unwrap())
    }

    #[test]
    fn constant_and_perturbed() {
        let g = z(5);
        let c = Cocycle2::trivial(g.clone());
        assert!(c.is_cocycle());
        assert!(c.is_trivial_class());
        let mut t = vec![0; 25];
        t[7] = 1;
        let bad = Cocycle2::new(g, 3, t).unwrap();
        assert!(!bad.is_cocycle());
    }

    #[test]
    fn symplectic_commutator_pairing() {
        // F_3² with c(x, y) = ζ_3^{x₁y₂}; the pairing is the determinant form
        let g = Arc::new(AbelianGroupTable::cyclic_product(&[3, 3]).unwrap());
        let c = Cocycle2::from_fn(g.clone(), 3, |x, y| ((x / 3) * (y % 3)) as u64);
        assert!(c.is_cocycle());
        assert!(!c.is_trivial_class());
        let a = c.antisym();
        for x in 1..9 {
            assert!((0..9).any(|y| a[x * 9 + y] != 0), "radical element {x}");
        }
        for x in 0..9 {
            for y in 0..9 {
                let det = ((x / 3) * (y % 3) + 9 - (x % 3) * (y / 3)) % 3;
                assert_eq!(a[x * 9 + y], det as u64);
            }
        }
    }

    #[test]
    fn json_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let c = random::symmetric(&[2, 4], 8, &mut rng).unwrap();
        let j = c.to_json();
        let back = Cocycle2::from_json(c.group().clone(), &j).unwrap();
        assert_eq!(back, c);
        assert_eq!(serde_json::to_string(&back.to_json()).unwrap(), serde_json::to_string(&j).unwrap());
    }

    #[test]
    fn random_families() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..10 {
            let s = random::symmetric(&[3, 6], 12, &mut rng).unwrap();
            assert!(s.is_cocycle());
            assert!(s.is_trivial_class());
            let t = random::twisted(&[3, 6], 12, &mut rng).unwrap();
            assert!(t.is_cocycle());
            assert!(!t.is_trivial_class());
        }
    }

    #[test]
    fn from_roots_modulus() {
        let g = z(4);
        let c = Cocycle2::from_roots(g, |x, y| {
            if x + y >= 4 {
                RootOfUnity::sign(-1)
            } else {
                RootOfUnity::one()
            }
        });
        assert_eq!(c.modulus(), 2);
        assert!(c.is_cocycle());
    }
}
