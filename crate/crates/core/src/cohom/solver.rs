use std::collections::VecDeque;

use super::cocycle::{Cocycle2, CoboundaryWitness};
use crate::error::{Error, Result};
use crate::util::{ext_gcd, lcm};

const MODULUS_LIMIT: u128 = 1 << 63;

/// Rows over Z/N kept in Howell form: one row per pivot column, and for every
/// pivot row its annihilator multiple already reduced into the later rows.
struct Howell {
    n: u128,
    width: usize,
    pivots: Vec<Option<Vec<u128>>>,
}

struct Inconsistent;

impl Howell {
    fn new(n: u128, unknowns: usize) -> Self {
        Howell { n, width: unknowns + 1, pivots: vec![None; unknowns] }
    }

    fn combine(&self, a: &[u128], s: u128, b: &[u128], t: u128) -> Vec<u128> {
        let n = self.n;
        a.iter().zip(b).map(|(&x, &y)| (x * s % n + y * t % n) % n).collect()
    }

    fn modn(&self, v: i128) -> u128 {
        v.rem_euclid(self.n as i128) as u128
    }

    fn annihilator(&self, row: &[u128], col: usize) -> Option<Vec<u128>> {
        let k = self.n / gcd128(row[col], self.n);
        let a: Vec<u128> = row.iter().map(|&x| x * k % self.n).collect();
        (a.iter().any(|&x| x != 0)).then_some(a)
    }

    fn insert(&mut self, row: Vec<u128>) -> std::result::Result<(), Inconsistent> {
        let unknowns = self.width - 1;
        let mut stack = vec![row];
        'rows: while let Some(mut r) = stack.pop() {
            for j in 0..unknowns {
                if r[j] == 0 {
                    continue;
                }
                match self.pivots[j].take() {
                    None => {
                        if let Some(a) = self.annihilator(&r, j) {
                            stack.push(a);
                        }
                        self.pivots[j] = Some(r);
                        continue 'rows;
                    }
                    Some(p) => {
                        let (g, s, t) = ext_gcd(p[j] as i128, r[j] as i128);
                        let (pg, rg) = ((p[j] as i128) / g, (r[j] as i128) / g);
                        let new_p = self.combine(&p, self.modn(s), &r, self.modn(t));
                        let new_r = self.combine(&p, self.modn(rg), &r, self.modn(-pg));
                        if new_p[j] != p[j] {
                            if let Some(a) = self.annihilator(&new_p, j) {
                                stack.push(a);
                            }
                        }
                        self.pivots[j] = Some(new_p);
                        r = new_r;
                    }
                }
            }
            if r[unknowns] != 0 {
                return Err(Inconsistent);
            }
        }
        Ok(())
    }

    fn back_substitute(&self) -> Option<Vec<u128>> {
        let k = self.width - 1;
        let n = self.n;
        let mut u = vec![0u128; k];
        for j in (0..k).rev() {
            let Some(p) = &self.pivots[j] else { continue };
            let mut v = p[k];
            for l in j + 1..k {
                v = (v + n - p[l] * u[l] % n) % n;
            }
            let d = gcd128(p[j], n);
            if v % d != 0 {
                return None;
            }
            let nd = n / d;
            let (_, inv, _) = ext_gcd(((p[j] / d) % nd) as i128, nd as i128);
            u[j] = ((v / d) % nd) * (inv.rem_euclid(nd as i128) as u128) % nd;
        }
        Some(u)
    }
}

fn gcd128(a: u128, b: u128) -> u128 {
    if b == 0 {
        a
    } else {
        gcd128(b, a % b)
    }
}

/// Witness modulus M′ = lcm(M, e(G))·M.
pub fn witness_modulus(c: &Cocycle2) -> u128 {
    lcm(c.modulus(), c.group().exponent()) as u128 * c.modulus() as u128
}

/// Looks for δ with ∂δ = c over Z/M′, without consulting the triviality test.
pub fn find_coboundary(c: &Cocycle2) -> Result<CoboundaryWitness> {
    let first = witness_modulus(c);
    for m in [first, 2 * first] {
        if m > MODULUS_LIMIT {
            return Err(Error::SolverOverflow(m));
        }
        if let Some(w) = solve_at(c, m as u64) {
            return Ok(w);
        }
    }
    Err(Error::SolverFailed(2 * first as u64))
}

/// The solver entry point: checks that the class is trivial first.
pub fn solve_coboundary(c: &Cocycle2) -> Result<CoboundaryWitness> {
    if !c.is_trivial_class() {
        return Err(Error::NotTrivialClass);
    }
    find_coboundary(c)
}

/// δ is parametrized by its values u_i on the greedy generators; a spanning
/// tree of the Cayley graph expresses every δ(x) as an affine form in u, and
/// each remaining edge contributes one linear equation.
fn solve_at(c: &Cocycle2, m: u64) -> Option<CoboundaryWitness> {
    let g = c.group();
    let n = g.order();
    let mm = m as u128;
    let scale = (m / c.modulus()) as u128;
    let cv = |x: usize, y: usize| c.value(x, y) as u128 * scale % mm;
    let gens = g.generators();
    let k = gens.len();

    // δ(x) = a[x]·u + b[x]
    let mut a: Vec<Option<Vec<u128>>> = vec![None; n];
    let mut b = vec![0u128; n];
    let e = g.identity();
    a[e] = Some(vec![0; k]);
    b[e] = cv(e, e);
    let mut system = Howell::new(mm, k);
    let mut queue = VecDeque::from([e]);
    while let Some(x) = queue.pop_front() {
        let ax = a[x].clone().unwrap();
        for (i, &gi) in gens.iter().enumerate() {
            let y = g.mul(x, gi);
            // δ(y) = δ(x) + u_i − c(x, g_i)
            let mut ay = ax.clone();
            ay[i] = (ay[i] + 1) % mm;
            let by = (b[x] + mm - cv(x, gi)) % mm;
            match &a[y] {
                None => {
                    a[y] = Some(ay);
                    b[y] = by;
                    queue.push_back(y);
                }
                Some(existing) => {
                    let mut row: Vec<u128> = existing.iter().zip(&ay).map(|(s, t)| (s + mm - t) % mm).collect();
                    row.push((by + mm - b[y]) % mm);
                    if system.insert(row).is_err() {
                        return None;
                    }
                }
            }
        }
    }
    let u = system.back_substitute()?;
    let delta: Vec<u64> = (0..n)
        .map(|x| {
            let ax = a[x].as_ref().unwrap();
            let s = ax.iter().zip(&u).fold(b[x], |acc, (p, q)| (acc + p * q % mm) % mm);
            s as u64
        })
        .collect();
    let w = CoboundaryWitness { modulus: m, delta };
    w.verifies(c).then_some(w)
}
