use std::fmt;

use crate::error::{Error, Result};
use crate::ffield::{FiniteField, Fq};
use crate::matalg::Matrix;

/// Polynomial over F_q, coefficients lowest degree first, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Poly {
    coeffs: Vec<Fq>,
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c: Vec<u32> = self.coeffs.iter().map(|x| x.0).collect();
        write!(f, "Poly{c:?}")
    }
}

impl Poly {
    pub fn new(mut coeffs: Vec<Fq>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: vec![] }
    }

    pub fn constant(c: Fq) -> Self {
        Self::new(vec![c])
    }

    /// t − a.
    pub fn linear(a: Fq, k: &FiniteField) -> Self {
        Self::new(vec![k.neg(a), Fq::ONE])
    }

    /// Monic polynomial of degree d whose lower coefficients are the base-q digits of `code`.
    pub fn monic_from_code(mut code: u64, d: usize, k: &FiniteField) -> Self {
        let q = k.q() as u64;
        let mut c = Vec::with_capacity(d + 1);
        for _ in 0..d {
            c.push(Fq((code % q) as u32));
            code /= q;
        }
        c.push(Fq::ONE);
        Poly { coeffs: c }
    }

    pub fn coeffs(&self) -> &[Fq] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Fq {
        self.coeffs.get(i).copied().unwrap_or(Fq::ZERO)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last() == Some(&Fq::ONE)
    }

    pub fn add(&self, o: &Self, k: &FiniteField) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        Self::new((0..n).map(|i| k.add(self.coeff(i), o.coeff(i))).collect())
    }

    pub fn sub(&self, o: &Self, k: &FiniteField) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        Self::new((0..n).map(|i| k.sub(self.coeff(i), o.coeff(i))).collect())
    }

    pub fn scale(&self, c: Fq, k: &FiniteField) -> Self {
        Self::new(self.coeffs.iter().map(|&x| k.mul(c, x)).collect())
    }

    pub fn mul(&self, o: &Self, k: &FiniteField) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut c = vec![Fq::ZERO; self.coeffs.len() + o.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in o.coeffs.iter().enumerate() {
                c[i + j] = k.add(c[i + j], k.mul(a, b));
            }
        }
        Self::new(c)
    }

    pub fn divrem(&self, d: &Self, k: &FiniteField) -> (Self, Self) {
        let dd = d.degree().expect("division by the zero polynomial");
        let lead_inv = k.inv(d.coeffs[dd]).unwrap();
        let mut r = self.coeffs.clone();
        let mut quo = vec![Fq::ZERO; r.len().saturating_sub(dd)];
        while r.len() > dd && !r.is_empty() {
            let top = r.len() - 1;
            let c = k.mul(*r.last().unwrap(), lead_inv);
            let shift = top - dd;
            quo[shift] = c;
            for (i, &di) in d.coeffs.iter().enumerate() {
                r[shift + i] = k.sub(r[shift + i], k.mul(c, di));
            }
            r.pop();
            while r.last().is_some_and(|x| x.is_zero()) {
                r.pop();
            }
        }
        (Self::new(quo), Self::new(r))
    }

    pub fn rem(&self, d: &Self, k: &FiniteField) -> Self {
        self.divrem(d, k).1
    }

    pub fn monic(&self, k: &FiniteField) -> Self {
        match self.coeffs.last() {
            None => Self::zero(),
            Some(&l) => self.scale(k.inv(l).unwrap(), k),
        }
    }

    pub fn gcd(&self, o: &Self, k: &FiniteField) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b, k);
            a = b;
            b = r;
        }
        a.monic(k)
    }

    pub fn eval(&self, x: Fq, k: &FiniteField) -> Fq {
        self.coeffs.iter().rev().fold(Fq::ZERO, |acc, &c| k.add(k.mul(acc, x), c))
    }

    pub fn eval_matrix(&self, m: &Matrix, k: &FiniteField) -> Matrix {
        let n = m.nrows();
        self.coeffs.iter().rev().fold(Matrix::zeros(n, n), |acc, &c| {
            acc.mul(m, k).add(&Matrix::scalar(n, c), k)
        })
    }

    /// self^e mod m.
    pub fn powmod(&self, mut e: u64, m: &Self, k: &FiniteField) -> Self {
        let mut base = self.rem(m, k);
        let mut acc = Self::constant(Fq::ONE).rem(m, k);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base, k).rem(m, k);
            }
            base = base.mul(&base, k).rem(m, k);
            e >>= 1;
        }
        acc
    }

    /// Irreducibility over F_q: no common factor with t^{q^i} − t for i ≤ d/2.
    pub fn is_irreducible(&self, k: &FiniteField) -> bool {
        let Some(d) = self.degree() else { return false };
        if d == 0 {
            return false;
        }
        let t = Self::new(vec![Fq::ZERO, Fq::ONE]);
        let mut h = t.rem(self, k);
        for _ in 1..=d / 2 {
            h = h.powmod(k.q() as u64, self, k);
            if h.sub(&t, k).gcd(self, k).degree() != Some(0) {
                return false;
            }
        }
        true
    }

    /// Monic irreducible factors with multiplicities, sorted by (degree, coefficients).
    pub fn factor(&self, k: &FiniteField) -> Vec<(Poly, usize)> {
        let mut f = self.monic(k);
        let mut out = Vec::new();
        let mut d = 1;
        while f.degree().unwrap_or(0) >= 2 * d {
            let count = (k.q() as u64).pow(d as u32);
            for code in 0..count {
                let g = Self::monic_from_code(code, d, k);
                if !g.is_irreducible(k) {
                    continue;
                }
                let mut e = 0;
                loop {
                    let (quo, r) = f.divrem(&g, k);
                    if !r.is_zero() {
                        break;
                    }
                    f = quo;
                    e += 1;
                }
                if e > 0 {
                    out.push((g, e));
                }
            }
            d += 1;
        }
        if f.degree().unwrap_or(0) >= 1 {
            out.push((f, 1));
        }
        out.sort_by(|a, b| (a.0.degree(), &a.0.coeffs).cmp(&(b.0.degree(), &b.0.coeffs)));
        out
    }

    pub fn is_squarefree(&self, k: &FiniteField) -> bool {
        self.factor(k).iter().all(|(_, e)| *e == 1)
    }

    /// Companion matrix: ones on the subdiagonal, last column −c_0, …, −c_{n−1}.
    /// For t² − α this is [[0, α], [1, 0]].
    pub fn companion(&self, k: &FiniteField) -> Matrix {
        assert!(self.is_monic(), "companion of a non-monic polynomial");
        let n = self.degree().unwrap();
        let mut m = Matrix::zeros(n, n);
        for i in 1..n {
            m.set(i, i - 1, Fq::ONE);
        }
        for i in 0..n {
            m.set(i, n - 1, k.neg(self.coeffs[i]));
        }
        m
    }

    pub fn format(&self, k: &FiniteField) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut terms = Vec::new();
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let cs = if k.f() == 1 { c.0.to_string() } else { format!("({})", k.format(c)) };
            terms.push(match i {
                0 => cs,
                1 if c == Fq::ONE => "t".into(),
                1 => format!("{cs}t"),
                _ if c == Fq::ONE => format!("t^{i}"),
                _ => format!("{cs}t^{i}"),
            });
        }
        terms.join("+")
    }

    /// Parses expressions like `t^2+2`, `t^3 - t + 1`, `2*t^2+t` (variable t or x, integer coefficients).
    pub fn parse(s: &str, k: &FiniteField) -> Result<Self> {
        let err = || Error::Parse(format!("bad polynomial '{s}'"));
        let cleaned: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if cleaned.is_empty() {
            return Err(err());
        }
        let mut terms: Vec<(i64, String)> = Vec::new();
        let mut sign = 1i64;
        let mut cur = String::new();
        for (i, ch) in cleaned.chars().enumerate() {
            if (ch == '+' || ch == '-') && i > 0 && !cur.ends_with('^') {
                terms.push((sign, std::mem::take(&mut cur)));
                sign = if ch == '-' { -1 } else { 1 };
            } else if (ch == '+' || ch == '-') && i == 0 {
                sign = if ch == '-' { -1 } else { 1 };
            } else {
                cur.push(ch);
            }
        }
        terms.push((sign, cur));
        let mut coeffs: Vec<i64> = Vec::new();
        for (sign, t) in terms {
            if t.is_empty() {
                return Err(err());
            }
            let t = t.replace('x', "t");
            let (c, deg) = match t.find('t') {
                None => (t.parse::<i64>().map_err(|_| err())?, 0usize),
                Some(pos) => {
                    let cpart = t[..pos].trim_end_matches('*');
                    let c = if cpart.is_empty() { 1 } else { cpart.parse::<i64>().map_err(|_| err())? };
                    let rest = &t[pos + 1..];
                    let deg = if rest.is_empty() {
                        1
                    } else {
                        rest.strip_prefix('^').ok_or_else(err)?.parse::<usize>().map_err(|_| err())?
                    };
                    (c, deg)
                }
            };
            if coeffs.len() <= deg {
                coeffs.resize(deg + 1, 0);
            }
            coeffs[deg] += sign * c;
        }
        Ok(Self::new(coeffs.into_iter().map(|c| k.from_int(c)).collect()))
    }

    /// All monic polynomials of degree d.
    pub fn all_monic(d: usize, k: &FiniteField) -> impl Iterator<Item = Poly> + '_ {
        (0..(k.q() as u64).pow(d as u32)).map(move |c| Self::monic_from_code(c, d, k))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        let k = FiniteField::prime(5).unwrap();
        let p = Poly::parse("t^2+2", &k).unwrap();
        assert_eq!(p.coeffs(), &[Fq(2), Fq(0), Fq(1)]);
        assert_eq!(p.format(&k), "t^2+2");
        let p = Poly::parse("x^3 - x + 1", &k).unwrap();
        assert_eq!(p.coeffs(), &[Fq(1), Fq(4), Fq(0), Fq(1)]);
        assert!(Poly::parse("t^", &k).is_err());
    }

    #[test]
    fn irreducibility_and_factoring() {
        let k = FiniteField::prime(3).unwrap();
        let n2 = Poly::all_monic(2, &k).filter(|p| p.is_irreducible(&k)).count();
        assert_eq!(n2, 3);
        let n3 = Poly::all_monic(3, &k).filter(|p| p.is_irreducible(&k)).count();
        assert_eq!(n3, 8);
        let n4 = Poly::all_monic(4, &k).filter(|p| p.is_irreducible(&k)).count();
        assert_eq!(n4, 18);
        // (t-1)^2 (t^2+1)
        let f = Poly::linear(Fq(1), &k).mul(&Poly::linear(Fq(1), &k), &k).mul(&Poly::parse("t^2+1", &k).unwrap(), &k);
        let fac = f.factor(&k);
        assert_eq!(fac.len(), 2);
        assert_eq!(fac[0], (Poly::linear(Fq(1), &k), 2));
        assert!(!f.is_squarefree(&k));
    }

    #[test]
    fn companion_annihilated_by_its_polynomial() {
        let k = FiniteField::prime(7).unwrap();
        for p in Poly::all_monic(3, &k).step_by(17) {
            let c = p.companion(&k);
            assert!(p.eval_matrix(&c, &k).is_zero());
        }
        let alpha = Poly::parse("t^2-3", &k).unwrap().companion(&k);
        assert_eq!(alpha, Matrix::from_ints(&k, &[&[0, 3], &[1, 0]]));
    }
}
