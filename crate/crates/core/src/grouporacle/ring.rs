use serde::Serialize;

use crate::error::{Error, Result};
use crate::ffield::{FiniteField, Fq};
use crate::matalg::Matrix;

/// Mixed or equal characteristic.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum RingKind {
    /// Z/p^r.
    Unequal,
    /// F_p[t]/(t^r).
    Equal,
}

impl RingKind {
    pub fn parse(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "unequal" | "zp" | "mixed" => Ok(RingKind::Unequal),
            "equal" | "fpt" => Ok(RingKind::Equal),
            _ => Err(Error::Parse(format!("unknown ring kind '{s}' (expected unequal or equal)"))),
        }
    }
}

/// O_r = O/ϖ^r with prime residue field F_p.
///
/// Elements are codes in [0, p^r): the integer itself for Z/p^r, and
/// Σ a_i p^i for Σ a_i t^i in F_p[t]/(t^r). In both encodings multiplication
/// by ϖ is multiplication of the code by p (mod p^r), reduction mod ϖ^k is the
/// code mod p^k, and the lift λ of a residue a is the code a.
#[derive(Clone, Debug)]
pub struct LocalRing {
    kind: RingKind,
    p: u32,
    r: u32,
    size: u32,
    add: Vec<u32>,
    mul: Vec<u32>,
    inv: Vec<u32>,
}

impl LocalRing {
    pub fn new(kind: RingKind, p: u32, r: u32) -> Result<Self> {
        if !crate::util::is_prime(p as u64) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        if r == 0 || (p as u64).pow(r) > 1 << 12 {
            return Err(Error::InvalidField(format!("O_{r} over F_{p} is out of range")));
        }
        let size = p.pow(r);
        let digits = |x: u32| (0..r).map(|i| (x / p.pow(i)) % p).collect::<Vec<_>>();
        let undigits = |d: &[u32]| d.iter().rev().fold(0, |acc, &c| acc * p + c);
        let s = size as usize;
        let mut add = vec![0; s * s];
        let mut mul = vec![0; s * s];
        for a in 0..size {
            for b in 0..size {
                let i = (a * size + b) as usize;
                match kind {
                    RingKind::Unequal => {
                        add[i] = (a + b) % size;
                        mul[i] = ((a as u64 * b as u64) % size as u64) as u32;
                    }
                    RingKind::Equal => {
                        let (da, db) = (digits(a), digits(b));
                        let sum: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                        let mut prod = vec![0u32; r as usize];
                        for (i, x) in da.iter().enumerate() {
                            for (j, y) in db.iter().enumerate() {
                                if i + j < r as usize {
                                    prod[i + j] = (prod[i + j] + x * y) % p;
                                }
                            }
                        }
                        add[i] = undigits(&sum);
                        mul[i] = undigits(&prod);
                    }
                }
            }
        }
        let mut inv = vec![u32::MAX; s];
        for a in 0..size {
            if a % p != 0 {
                inv[a as usize] = (0..size).find(|&b| mul[(a * size + b) as usize] == 1).expect("units are invertible");
            }
        }
        Ok(LocalRing { kind, p, r, size, add, mul, inv })
    }

    pub fn kind(&self) -> RingKind {
        self.kind
    }
    pub fn p(&self) -> u32 {
        self.p
    }
    pub fn r(&self) -> u32 {
        self.r
    }
    pub fn size(&self) -> u32 {
        self.size
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        self.add[(a * self.size + b) as usize]
    }
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.mul[(a * self.size + b) as usize]
    }
    pub fn neg(&self, a: u32) -> u32 {
        match self.kind {
            RingKind::Unequal => (self.size - a) % self.size,
            RingKind::Equal => {
                let mut out = 0;
                let mut pw = 1;
                for _ in 0..self.r {
                    out += ((self.p - (a / pw) % self.p) % self.p) * pw;
                    pw *= self.p;
                }
                out
            }
        }
    }
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }
    pub fn inv(&self, a: u32) -> Result<u32> {
        match self.inv[a as usize] {
            u32::MAX => Err(Error::NotUnit),
            v => Ok(v),
        }
    }
    pub fn is_unit(&self, a: u32) -> bool {
        a % self.p != 0
    }
    /// The image of an integer (for Z/p^r) or of an integer constant (for F_p[t]/t^r).
    pub fn from_int(&self, n: i64) -> u32 {
        match self.kind {
            RingKind::Unequal => n.rem_euclid(self.size as i64) as u32,
            RingKind::Equal => n.rem_euclid(self.p as i64) as u32,
        }
    }
    pub fn half(&self) -> u32 {
        self.inv(self.from_int(2)).expect("p is odd")
    }

    /// ϖ^k·a.
    pub fn shift(&self, a: u32, k: u32) -> u32 {
        ((a as u64 * (self.p as u64).pow(k)) % self.size as u64) as u32
    }
    /// a/ϖ^k for a ≡ 0 mod ϖ^k, as an element of O_{r−k} (code).
    pub fn unshift(&self, a: u32, k: u32) -> u32 {
        debug_assert_eq!(a % self.p.pow(k), 0);
        a / self.p.pow(k)
    }
    /// a mod ϖ^k.
    pub fn reduce(&self, a: u32, k: u32) -> u32 {
        a % self.p.pow(k)
    }
    pub fn residue(&self, a: u32) -> Fq {
        Fq(a % self.p)
    }
    /// λ(x̄).
    pub fn lift(&self, x: Fq) -> u32 {
        x.0
    }

    /// τ(ϖ^{−k}a) for a ∈ O_k as an exponent of ζ_{p^r}. The character τ is
    /// x ↦ e^{2πi{x}_p} on Q_p and the residue of the t^{−1} coefficient on F_p((t)).
    pub fn tau(&self, a: u32, k: u32) -> u32 {
        debug_assert!(k >= 1 && k <= self.r);
        let a = self.reduce(a, k);
        match self.kind {
            RingKind::Unequal => a * self.p.pow(self.r - k),
            RingKind::Equal => (a / self.p.pow(k - 1)) * self.p.pow(self.r - 1),
        }
    }
    /// Exponent modulus of `tau`.
    pub fn tau_modulus(&self) -> u64 {
        self.size as u64
    }
}

/// An n × n matrix over O_r, n ≤ 3, stored row-major.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct LMat {
    n: usize,
    e: [u32; 9],
}

impl LMat {
    pub fn zeros(n: usize) -> Self {
        assert!(n <= 3, "oracle matrices are at most 3 × 3");
        LMat { n, e: [0; 9] }
    }
    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }
    pub fn n(&self) -> usize {
        self.n
    }
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.e[i * self.n + j]
    }
    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        self.e[i * self.n + j] = v;
    }
    pub fn entries(&self) -> &[u32] {
        &self.e[..self.n * self.n]
    }

    /// Entrywise λ.
    pub fn lift(m: &Matrix) -> Self {
        let n = m.nrows();
        let mut out = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                out.set(i, j, m.get(i, j).0);
            }
        }
        out
    }
    pub fn residue(&self, o: &LocalRing) -> Matrix {
        Matrix::from_fn(self.n, self.n, |i, j| o.residue(self.get(i, j)))
    }

    fn map(&self, f: impl Fn(u32) -> u32) -> Self {
        let mut out = *self;
        for v in out.e[..self.n * self.n].iter_mut() {
            *v = f(*v);
        }
        out
    }
    fn zip(&self, other: &Self, f: impl Fn(u32, u32) -> u32) -> Self {
        let mut out = *self;
        for i in 0..self.n * self.n {
            out.e[i] = f(self.e[i], other.e[i]);
        }
        out
    }

    pub fn add(&self, other: &Self, o: &LocalRing) -> Self {
        self.zip(other, |a, b| o.add(a, b))
    }
    pub fn sub(&self, other: &Self, o: &LocalRing) -> Self {
        self.zip(other, |a, b| o.sub(a, b))
    }
    pub fn scale(&self, c: u32, o: &LocalRing) -> Self {
        self.map(|a| o.mul(c, a))
    }
    pub fn shift(&self, k: u32, o: &LocalRing) -> Self {
        self.map(|a| o.shift(a, k))
    }
    pub fn unshift(&self, k: u32, o: &LocalRing) -> Self {
        self.map(|a| o.unshift(a, k))
    }
    pub fn reduce(&self, k: u32, o: &LocalRing) -> Self {
        self.map(|a| o.reduce(a, k))
    }
    pub fn mul(&self, other: &Self, o: &LocalRing) -> Self {
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = 0;
                for l in 0..n {
                    acc = o.add(acc, o.mul(self.get(i, l), other.get(l, j)));
                }
                out.set(i, j, acc);
            }
        }
        out
    }
    pub fn trace(&self, o: &LocalRing) -> u32 {
        (0..self.n).fold(0, |acc, i| o.add(acc, self.get(i, i)))
    }

    pub fn det(&self, o: &LocalRing) -> u32 {
        let g = |i, j| self.get(i, j);
        match self.n {
            0 => 1,
            1 => g(0, 0),
            2 => o.sub(o.mul(g(0, 0), g(1, 1)), o.mul(g(0, 1), g(1, 0))),
            _ => {
                let mut acc = 0;
                for j in 0..3 {
                    let minor = o.sub(o.mul(g(1, (j + 1) % 3), g(2, (j + 2) % 3)), o.mul(g(1, (j + 2) % 3), g(2, (j + 1) % 3)));
                    acc = o.add(acc, o.mul(g(0, j), minor));
                }
                acc
            }
        }
    }

    /// Inverse via the adjugate; fails when the determinant is not a unit.
    pub fn inverse(&self, o: &LocalRing) -> Result<Self> {
        let n = self.n;
        let d = o.inv(self.det(o))?;
        let mut out = Self::zeros(n);
        match n {
            1 => out.set(0, 0, d),
            2 => {
                out.set(0, 0, o.mul(d, self.get(1, 1)));
                out.set(0, 1, o.mul(d, o.neg(self.get(0, 1))));
                out.set(1, 0, o.mul(d, o.neg(self.get(1, 0))));
                out.set(1, 1, o.mul(d, self.get(0, 0)));
            }
            _ => {
                let g = |i: usize, j: usize| self.get(i % 3, j % 3);
                for i in 0..3 {
                    for j in 0..3 {
                        // cofactor C_ji
                        let c = o.sub(o.mul(g(j + 1, i + 1), g(j + 2, i + 2)), o.mul(g(j + 1, i + 2), g(j + 2, i + 1)));
                        out.set(i, j, o.mul(d, c));
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.n)
    }
}

/// The residue field F_p.
pub fn field_of(o: &LocalRing) -> FiniteField {
    FiniteField::prime(o.p()).expect("residue field of a local ring")
}
