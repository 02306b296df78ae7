use std::fmt;
use std::hash::{Hash, Hasher};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::util::{gcd, lcm};

/// ζ_M^e with ζ_M = e^{2πi/M}. Equality compares values, not representations.
#[derive(Copy, Clone, Serialize, Deserialize)]
pub struct RootOfUnity {
    modulus: u64,
    exponent: u64,
}

impl RootOfUnity {
    pub fn new(modulus: u64, exponent: i64) -> Self {
        assert!(modulus > 0, "root of unity modulus must be positive");
        RootOfUnity { modulus, exponent: exponent.rem_euclid(modulus as i64) as u64 }
    }

    pub fn one() -> Self {
        RootOfUnity { modulus: 1, exponent: 0 }
    }

    /// The value ±1.
    pub fn sign(s: i32) -> Self {
        if s >= 0 {
            Self::one()
        } else {
            RootOfUnity { modulus: 2, exponent: 1 }
        }
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }
    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    pub fn is_one(&self) -> bool {
        self.exponent == 0
    }

    /// Multiplicative order.
    pub fn order(&self) -> u64 {
        self.modulus / gcd(self.modulus, self.exponent)
    }

    /// Lowest-terms representation.
    pub fn reduced(&self) -> Self {
        let g = gcd(self.modulus, self.exponent);
        RootOfUnity { modulus: self.modulus / g, exponent: self.exponent / g }
    }

    /// Exponent of this value as a power of ζ_m, if it lies in μ_m.
    pub fn exponent_in(&self, m: u64) -> Option<u64> {
        let r = self.reduced();
        (m % r.modulus == 0).then(|| r.exponent * (m / r.modulus))
    }

    /// Same value written over modulus m.
    pub fn lift(&self, m: u64) -> Option<Self> {
        self.exponent_in(m).map(|e| RootOfUnity { modulus: m, exponent: e })
    }

    pub fn mul(&self, other: &Self) -> Self {
        let m = lcm(self.modulus, other.modulus);
        let a = self.exponent * (m / self.modulus);
        let b = other.exponent * (m / other.modulus);
        RootOfUnity { modulus: m, exponent: (a + b) % m }
    }

    pub fn inv(&self) -> Self {
        RootOfUnity { modulus: self.modulus, exponent: (self.modulus - self.exponent) % self.modulus }
    }

    pub fn div(&self, other: &Self) -> Self {
        self.mul(&other.inv())
    }

    pub fn pow(&self, k: i64) -> Self {
        let m = self.modulus as i128;
        RootOfUnity {
            modulus: self.modulus,
            exponent: ((self.exponent as i128 * k as i128).rem_euclid(m)) as u64,
        }
    }

    pub fn to_complex(&self) -> Complex64 {
        let t = 2.0 * std::f64::consts::PI * self.exponent as f64 / self.modulus as f64;
        Complex64::new(t.cos(), t.sin())
    }

    /// Nearest element of μ_m to z, if within `tol`.
    pub fn snap(z: Complex64, m: u64, tol: f64) -> Option<Self> {
        let k = (z.arg() / (2.0 * std::f64::consts::PI) * m as f64).round() as i64;
        let r = RootOfUnity::new(m, k);
        ((r.to_complex() - z).norm() <= tol).then_some(r)
    }
}

impl PartialEq for RootOfUnity {
    fn eq(&self, other: &Self) -> bool {
        self.exponent as u128 * other.modulus as u128 == other.exponent as u128 * self.modulus as u128
    }
}
impl Eq for RootOfUnity {}

impl Hash for RootOfUnity {
    fn hash<H: Hasher>(&self, state: &mut H) {
        let r = self.reduced();
        r.modulus.hash(state);
        r.exponent.hash(state);
    }
}

impl fmt::Debug for RootOfUnity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ζ_{}^{}", self.modulus, self.exponent)
    }
}

impl fmt::Display for RootOfUnity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r = self.reduced();
        match (r.modulus, r.exponent) {
            (1, _) => write!(f, "1"),
            (2, _) => write!(f, "-1"),
            (4, 1) => write!(f, "i"),
            (4, 3) => write!(f, "-i"),
            (m, e) => write!(f, "zeta_{m}^{e}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn value_equality() {
        assert_eq!(RootOfUnity::new(12, 9), RootOfUnity::new(4, 3));
        assert_eq!(RootOfUnity::new(6, 0), RootOfUnity::one());
        assert_ne!(RootOfUnity::new(6, 1), RootOfUnity::new(3, 1));
        assert_eq!(RootOfUnity::new(4, 1).pow(2), RootOfUnity::sign(-1));
    }

    #[test]
    fn mixed_moduli() {
        let a = RootOfUnity::new(3, 1);
        let b = RootOfUnity::new(4, 1);
        let c = a.mul(&b);
        assert_eq!(c.modulus(), 12);
        assert_eq!(c.exponent(), 7);
        assert_eq!(c.div(&b), a);
        assert_eq!(c.exponent_in(24), Some(14));
        assert_eq!(c.exponent_in(6), None);
    }

    #[test]
    fn snapping() {
        let z = RootOfUnity::new(12, 5).to_complex() * Complex64::new(1.0, 1e-8);
        assert_eq!(RootOfUnity::snap(z, 12, 1e-6), Some(RootOfUnity::new(12, 5)));
        assert_eq!(RootOfUnity::snap(Complex64::new(0.0, 0.9), 12, 1e-6), None);
    }
}
