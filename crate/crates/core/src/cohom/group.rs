use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::util::lcm;

/// Hard cap on dense tables.
pub const MAX_GROUP_ORDER: usize = 4096;

/// A finite abelian group on the indices `0..order`, stored as a dense table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianGroupTable {
    order: usize,
    identity: usize,
    mul: Vec<u32>,
    inv: Vec<u32>,
    exponent: u64,
    labels: Vec<String>,
}

impl AbelianGroupTable {
    /// Builds a table from a multiplication rule; the group axioms are checked.
    pub fn from_fn<F>(order: usize, mul: F) -> Result<Self>
    where
        F: Fn(usize, usize) -> usize + Sync,
    {
        if order == 0 {
            return Err(Error::WrongShape("empty group".into()));
        }
        if order > MAX_GROUP_ORDER {
            return Err(Error::GroupTooLarge(order));
        }
        use rayon::prelude::*;
        let table: Vec<u32> = (0..order * order)
            .into_par_iter()
            .map(|k| mul(k / order, k % order) as u32)
            .collect();
        Self::from_table(order, table)
    }

    pub fn from_table(order: usize, mul: Vec<u32>) -> Result<Self> {
        if mul.len() != order * order || mul.iter().any(|&m| m as usize >= order) {
            return Err(Error::WrongShape("multiplication table".into()));
        }
        let identity = (0..order)
            .find(|&e| (0..order).all(|x| mul[e * order + x] as usize == x))
            .ok_or_else(|| Error::WrongShape("no identity".into()))?;
        let mut inv = vec![u32::MAX; order];
        for x in 0..order {
            for y in 0..order {
                if mul[x * order + y] as usize == identity {
                    inv[x] = y as u32;
                    break;
                }
            }
            if inv[x] == u32::MAX {
                return Err(Error::WrongShape(format!("element {x} has no inverse")));
            }
        }
        let g = AbelianGroupTable { order, identity, mul, inv, exponent: 1, labels: Vec::new() };
        g.check_axioms()?;
        let exponent = (0..order).map(|x| g.element_order(x)).fold(1, lcm);
        Ok(AbelianGroupTable { exponent, ..g })
    }

    /// Commutativity on all pairs, then Light's test: associativity only has
    /// to be checked with the middle factor running over a generating set.
    fn check_axioms(&self) -> Result<()> {
        use rayon::prelude::*;
        let n = self.order;
        let gens = self.generators();
        let fail = (0..n).into_par_iter().any(|x| {
            (0..n).any(|y| {
                self.mul(x, y) != self.mul(y, x)
                    || gens.iter().any(|&g| self.mul(self.mul(x, g), y) != self.mul(x, self.mul(g, y)))
            })
        });
        if fail {
            return Err(Error::WrongShape("table is not an abelian group".into()));
        }
        Ok(())
    }

    /// Z/n₁ × … × Z/n_k with mixed-radix indices (first factor varies slowest).
    pub fn cyclic_product(orders: &[usize]) -> Result<Self> {
        let order: usize = orders.iter().product();
        let decode = |mut i: usize| {
            let mut c = vec![0; orders.len()];
            for k in (0..orders.len()).rev() {
                c[k] = i % orders[k];
                i /= orders[k];
            }
            c
        };
        let encode = |c: &[usize]| c.iter().zip(orders).fold(0, |acc, (&x, &m)| acc * m + x);
        let mut g = Self::from_fn(order, |x, y| {
            let (a, b) = (decode(x), decode(y));
            let s: Vec<usize> = a.iter().zip(&b).zip(orders).map(|((u, v), m)| (u + v) % m).collect();
            encode(&s)
        })?;
        g.labels = (0..order).map(|i| format!("{:?}", decode(i))).collect();
        Ok(g)
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.order);
        self.labels = labels;
        self
    }

    pub fn label(&self, x: usize) -> String {
        self.labels.get(x).cloned().unwrap_or_else(|| x.to_string())
    }

    pub fn order(&self) -> usize {
        self.order
    }
    pub fn identity(&self) -> usize {
        self.identity
    }
    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    #[inline]
    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.mul[x * self.order + y] as usize
    }

    #[inline]
    pub fn inv(&self, x: usize) -> usize {
        self.inv[x] as usize
    }

    pub fn pow(&self, x: usize, k: u64) -> usize {
        let mut r = self.identity;
        for _ in 0..k {
            r = self.mul(r, x);
        }
        r
    }

    pub fn element_order(&self, x: usize) -> u64 {
        let mut y = x;
        let mut k = 1;
        while y != self.identity {
            y = self.mul(y, x);
            k += 1;
        }
        k
    }

    /// Greedy generating set: scan indices in order and keep every element not
    /// already in the span of the earlier ones.
    pub fn generators(&self) -> Vec<usize> {
        let mut inside = vec![false; self.order];
        inside[self.identity] = true;
        let mut members = vec![self.identity];
        let mut gens = Vec::new();
        for g in 0..self.order {
            if inside[g] {
                continue;
            }
            gens.push(g);
            let mut queue: VecDeque<usize> = members.iter().copied().collect();
            while let Some(x) = queue.pop_front() {
                let y = self.mul(x, g);
                if !inside[y] {
                    inside[y] = true;
                    members.push(y);
                    queue.push_back(y);
                }
            }
            if members.len() == self.order {
                break;
            }
        }
        gens
    }
}
