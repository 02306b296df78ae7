//! Arithmetic in F_q for odd q, the additive character and Weil constants.

mod character;
pub(crate) mod primepoly;
mod quadratic;
mod roots;

pub use character::AdditiveCharacter;
pub use quadratic::QuadraticForm;
pub use roots::RootOfUnity;

use std::fmt;
use std::sync::Arc;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::util::is_prime;

/// Largest supported field order; all tables are O(q).
pub const MAX_ORDER: u64 = 1 << 22;

/// An element of F_q, packed as the integer Σ c_i p^i of its coefficient vector
/// on the basis 1, u, …, u^{f−1}.
#[derive(Copy, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Fq(pub u32);

impl Fq {
    pub const ZERO: Fq = Fq(0);
    pub const ONE: Fq = Fq(1);

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

struct Inner {
    p: u32,
    f: u32,
    q: u32,
    modulus: Vec<u32>,
    pw: Vec<u32>,
    exp: Vec<u32>,
    log: Vec<u32>,
    trace: Vec<u32>,
}

#[derive(Clone)]
pub struct FiniteField {
    inner: Arc<Inner>,
}

impl PartialEq for FiniteField {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.inner.p == other.inner.p && self.inner.modulus == other.inner.modulus)
    }
}
impl Eq for FiniteField {}

impl fmt::Debug for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.q())?;
        if self.f() > 1 {
            write!(f, " mod {:?}", self.inner.modulus)?;
        }
        Ok(())
    }
}

impl FiniteField {
    /// F_{p^f} with the default modulus (smallest monic irreducible of degree f).
    pub fn new(p: u32, f: u32) -> Result<Self> {
        Self::check_params(p, f)?;
        let modulus = primepoly::smallest_irreducible(f as usize, p);
        Self::build(p, modulus)
    }

    pub fn prime(p: u32) -> Result<Self> {
        Self::new(p, 1)
    }

    /// F_q from its order.
    pub fn with_order(q: u64) -> Result<Self> {
        let (p, f) = crate::util::prime_power(q)
            .ok_or_else(|| Error::InvalidField(format!("{q} is not a prime power")))?;
        Self::new(p as u32, f)
    }

    /// F_p[u]/(modulus); `modulus` is monic, lowest coefficient first.
    pub fn with_modulus(p: u32, modulus: &[u32]) -> Result<Self> {
        if modulus.len() < 2 || *modulus.last().unwrap() != 1 {
            return Err(Error::InvalidField("modulus must be monic of degree >= 1".into()));
        }
        let f = (modulus.len() - 1) as u32;
        Self::check_params(p, f)?;
        let m: Vec<u32> = modulus.iter().map(|&c| c % p).collect();
        if !primepoly::is_irreducible(&m, p) {
            return Err(Error::InvalidField(format!("{modulus:?} is reducible mod {p}")));
        }
        Self::build(p, m)
    }

    fn check_params(p: u32, f: u32) -> Result<()> {
        if !is_prime(p as u64) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        if p == 2 {
            return Err(Error::OddCharRequired);
        }
        if f == 0 || (p as u64).checked_pow(f).map_or(true, |q| q > MAX_ORDER) {
            return Err(Error::InvalidField(format!("unsupported order {p}^{f}")));
        }
        Ok(())
    }

    fn build(p: u32, modulus: Vec<u32>) -> Result<Self> {
        let f = (modulus.len() - 1) as u32;
        let q = p.pow(f);
        let pw: Vec<u32> = (0..f).map(|i| p.pow(i)).collect();
        let digits = |x: u32| -> Vec<u32> { (0..f).map(|i| (x / pw[i as usize]) % p).collect() };
        let pack = |v: &[u32]| -> u32 { v.iter().zip(&pw).map(|(c, w)| c * w).sum() };
        let mul_raw = |a: u32, b: u32| -> u32 {
            let (da, db) = (digits(a), digits(b));
            let mut prod = vec![0u32; 2 * f as usize - 1];
            for (i, &x) in da.iter().enumerate() {
                for (j, &y) in db.iter().enumerate() {
                    prod[i + j] = ((prod[i + j] as u64 + x as u64 * y as u64) % p as u64) as u32;
                }
            }
            let mut r = primepoly::rem(&prod, &modulus, p);
            r.resize(f as usize, 0);
            pack(&r)
        };

        let mut exp = Vec::with_capacity(q as usize - 1);
        for g in 1..q {
            exp.clear();
            let mut x = 1u32;
            loop {
                exp.push(x);
                x = mul_raw(x, g);
                if x == 1 || exp.len() >= q as usize - 1 {
                    break;
                }
            }
            if exp.len() == q as usize - 1 && x == 1 {
                break;
            }
        }
        let mut log = vec![0u32; q as usize];
        for (k, &x) in exp.iter().enumerate() {
            log[x as usize] = k as u32;
        }

        let mut field = FiniteField {
            inner: Arc::new(Inner { p, f, q, modulus, pw, exp, log, trace: Vec::new() }),
        };
        let trace: Vec<u32> = (0..q)
            .map(|x| {
                let mut acc = Fq(0);
                let mut y = Fq(x);
                for _ in 0..f {
                    acc = field.add(acc, y);
                    y = field.pow(y, p as u64);
                }
                debug_assert!(acc.0 < p);
                acc.0
            })
            .collect();
        Arc::get_mut(&mut field.inner).unwrap().trace = trace;
        Ok(field)
    }

    pub fn p(&self) -> u32 {
        self.inner.p
    }
    pub fn f(&self) -> u32 {
        self.inner.f
    }
    pub fn q(&self) -> u32 {
        self.inner.q
    }
    pub fn modulus(&self) -> &[u32] {
        &self.inner.modulus
    }

    pub fn zero(&self) -> Fq {
        Fq(0)
    }
    pub fn one(&self) -> Fq {
        Fq(1)
    }

    pub fn element(&self, index: u32) -> Result<Fq> {
        if index < self.q() {
            Ok(Fq(index))
        } else {
            Err(Error::InvalidField(format!("{index} is not an element index of F_{}", self.q())))
        }
    }

    /// Image of an integer in the prime field.
    pub fn from_int(&self, n: i64) -> Fq {
        Fq(n.rem_euclid(self.p() as i64) as u32)
    }

    pub fn from_coeffs(&self, coeffs: &[u32]) -> Result<Fq> {
        if coeffs.len() > self.f() as usize {
            return Err(Error::InvalidField(format!(
                "{} coefficients for a degree-{} field",
                coeffs.len(),
                self.f()
            )));
        }
        let p = self.p();
        Ok(Fq(coeffs.iter().zip(&self.inner.pw).map(|(c, w)| (c % p) * w).sum()))
    }

    pub fn coeffs(&self, x: Fq) -> Vec<u32> {
        let p = self.p();
        self.inner.pw.iter().map(|w| (x.0 / w) % p).collect()
    }

    /// The generator of F_q^× used by the log tables.
    pub fn primitive_element(&self) -> Fq {
        if self.q() == 2 {
            return Fq(1);
        }
        Fq(self.inner.exp[1])
    }

    pub fn add(&self, a: Fq, b: Fq) -> Fq {
        let p = self.p();
        if self.f() == 1 {
            let s = a.0 + b.0;
            return Fq(if s >= p { s - p } else { s });
        }
        let (mut x, mut y, mut out) = (a.0, b.0, 0u32);
        for &w in &self.inner.pw {
            let d = (x % p + y % p) % p;
            out += d * w;
            x /= p;
            y /= p;
        }
        Fq(out)
    }

    pub fn neg(&self, a: Fq) -> Fq {
        let p = self.p();
        if self.f() == 1 {
            return Fq(if a.0 == 0 { 0 } else { p - a.0 });
        }
        let (mut x, mut out) = (a.0, 0u32);
        for &w in &self.inner.pw {
            out += ((p - x % p) % p) * w;
            x /= p;
        }
        Fq(out)
    }

    pub fn sub(&self, a: Fq, b: Fq) -> Fq {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: Fq, b: Fq) -> Fq {
        if a.0 == 0 || b.0 == 0 {
            return Fq(0);
        }
        if self.f() == 1 {
            return Fq((a.0 as u64 * b.0 as u64 % self.p() as u64) as u32);
        }
        let n = self.q() - 1;
        let k = (self.inner.log[a.0 as usize] + self.inner.log[b.0 as usize]) % n;
        Fq(self.inner.exp[k as usize])
    }

    /// Discrete logarithm to the primitive element.
    pub fn log(&self, a: Fq) -> Option<u32> {
        (a.0 != 0).then(|| self.inner.log[a.0 as usize])
    }

    pub fn exp(&self, k: u64) -> Fq {
        Fq(self.inner.exp[(k % (self.q() as u64 - 1)) as usize])
    }

    pub fn inv(&self, a: Fq) -> Result<Fq> {
        if a.0 == 0 {
            return Err(Error::ZeroArgument);
        }
        let n = self.q() - 1;
        Ok(Fq(self.inner.exp[((n - self.inner.log[a.0 as usize]) % n) as usize]))
    }

    pub fn div(&self, a: Fq, b: Fq) -> Result<Fq> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: Fq, e: u64) -> Fq {
        if e == 0 {
            return Fq(1);
        }
        if a.0 == 0 {
            return Fq(0);
        }
        let n = (self.q() - 1) as u64;
        let k = (self.inner.log[a.0 as usize] as u64 * (e % n)) % n;
        Fq(self.inner.exp[k as usize])
    }

    /// 2⁻¹.
    pub fn half(&self) -> Fq {
        Fq((self.p() + 1) / 2)
    }

    /// Absolute trace Tr_{F_q/F_p}(x) as a residue in [0, p).
    pub fn trace(&self, x: Fq) -> u32 {
        self.inner.trace[x.0 as usize]
    }

    pub fn is_square(&self, a: Fq) -> bool {
        a.0 == 0 || self.inner.log[a.0 as usize] % 2 == 0
    }

    /// Legendre symbol (a / F_q) ∈ {+1, −1}.
    pub fn legendre(&self, a: Fq) -> Result<i32> {
        if a.0 == 0 {
            return Err(Error::ZeroArgument);
        }
        let e = self.pow(a, (self.q() as u64 - 1) / 2);
        Ok(if e == Fq(1) { 1 } else { -1 })
    }

    /// A square root, when one exists.
    pub fn sqrt(&self, a: Fq) -> Option<Fq> {
        if a.0 == 0 {
            return Some(Fq(0));
        }
        let l = self.inner.log[a.0 as usize];
        (l % 2 == 0).then(|| Fq(self.inner.exp[(l / 2) as usize]))
    }

    /// The smallest non-square (by index).
    pub fn nonsquare(&self) -> Fq {
        (1..self.q()).map(Fq).find(|&a| !self.is_square(a)).expect("q odd")
    }

    pub fn elements(&self) -> impl Iterator<Item = Fq> + Clone {
        (0..self.q()).map(Fq)
    }

    pub fn units(&self) -> impl Iterator<Item = Fq> + Clone {
        (1..self.q()).map(Fq)
    }

    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Fq {
        Fq(rng.gen_range(0..self.q()))
    }

    pub fn random_unit<R: Rng + ?Sized>(&self, rng: &mut R) -> Fq {
        Fq(rng.gen_range(1..self.q()))
    }

    /// Sum helper.
    pub fn sum<I: IntoIterator<Item = Fq>>(&self, it: I) -> Fq {
        it.into_iter().fold(Fq(0), |a, b| self.add(a, b))
    }

    /// Human-readable form: an integer for prime fields, a polynomial in u otherwise.
    pub fn format(&self, x: Fq) -> String {
        if self.f() == 1 {
            return x.0.to_string();
        }
        let c = self.coeffs(x);
        let terms: Vec<String> = c
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, &v)| v != 0)
            .map(|(i, &v)| match (i, v) {
                (0, v) => v.to_string(),
                (1, 1) => "u".to_string(),
                (1, v) => format!("{v}u"),
                (i, 1) => format!("u^{i}"),
                (i, v) => format!("{v}u^{i}"),
            })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join("+")
        }
    }

    /// Parses a signed integer (reduced into the prime field) or, for extension fields, a
    /// packed index prefixed by `#`.
    pub fn parse(&self, s: &str) -> Result<Fq> {
        let s = s.trim();
        if let Some(idx) = s.strip_prefix('#') {
            let i: u32 = idx.parse().map_err(|_| Error::Parse(format!("bad element '{s}'")))?;
            return self.element(i);
        }
        let n: i64 = s.parse().map_err(|_| Error::Parse(format!("bad element '{s}'")))?;
        Ok(self.from_int(n))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f9_trace_of_u_is_zero() {
        let k = FiniteField::new(3, 2).unwrap();
        assert_eq!(k.modulus(), &[1, 0, 1]);
        let u = k.from_coeffs(&[0, 1]).unwrap();
        assert_eq!(k.mul(u, u), k.from_int(-1));
        assert_eq!(k.trace(u), 0);
        assert_eq!(k.trace(Fq::ONE), 2);
    }

    #[test]
    fn legendre_f7() {
        let k = FiniteField::prime(7).unwrap();
        assert_eq!(k.legendre(k.from_int(1)), Ok(1));
        assert_eq!(k.legendre(k.from_int(2)), Ok(1));
        assert_eq!(k.legendre(k.from_int(3)), Ok(-1));
        assert_eq!(k.legendre(Fq::ZERO), Err(Error::ZeroArgument));
    }

    #[test]
    fn rejects_bad_parameters() {
        assert_eq!(FiniteField::prime(2).unwrap_err(), Error::OddCharRequired);
        assert!(FiniteField::prime(9).is_err());
        assert!(FiniteField::with_modulus(5, &[1, 0, 1]).is_err());
        assert!(FiniteField::with_modulus(5, &[2, 0, 1]).is_ok());
    }

    #[test]
    fn field_axioms_small() {
        for (p, f) in [(3, 1), (3, 2), (5, 2), (3, 3), (7, 1)] {
            let k = FiniteField::new(p, f).unwrap();
            for a in k.elements() {
                assert_eq!(k.add(a, k.neg(a)), Fq::ZERO);
                if !a.is_zero() {
                    assert_eq!(k.mul(a, k.inv(a).unwrap()), Fq::ONE);
                }
                for b in k.elements() {
                    assert_eq!(k.mul(a, b), k.mul(b, a));
                    for c in [Fq(1), k.primitive_element()] {
                        let lhs = k.mul(a, k.add(b, c));
                        let rhs = k.add(k.mul(a, b), k.mul(a, c));
                        assert_eq!(lhs, rhs);
                    }
                }
            }
            // the trace is F_p-linear and surjective
            let mut hit = vec![false; p as usize];
            for a in k.elements() {
                hit[k.trace(a) as usize] = true;
            }
            assert!(hit.iter().all(|&h| h));
        }
    }

    #[test]
    fn sqrt_and_squares() {
        let k = FiniteField::new(5, 2).unwrap();
        let squares = k.units().filter(|&a| k.is_square(a)).count();
        assert_eq!(squares, 12);
        for a in k.units() {
            if let Some(r) = k.sqrt(a) {
                assert_eq!(k.mul(r, r), a);
            }
        }
    }

    #[test]
    fn formatting() {
        let k = FiniteField::new(3, 2).unwrap();
        assert_eq!(k.format(k.from_coeffs(&[2, 1]).unwrap()), "u+2");
        assert_eq!(k.parse("#4").unwrap(), Fq(4));
        assert_eq!(FiniteField::prime(5).unwrap().parse("-1").unwrap(), Fq(4));
    }
}
