//! Dense polynomials over F_p as coefficient vectors, lowest degree first.

pub(crate) fn trim(a: &mut Vec<u32>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

pub(crate) fn rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut r: Vec<u32> = a.to_vec();
    trim(&mut r);
    let dm = m.len() - 1;
    let lead_inv = inv_mod(m[dm], p);
    while r.len() > dm {
        let d = r.len() - 1;
        let c = (r[d] as u64 * lead_inv as u64 % p as u64) as u32;
        let shift = d - dm;
        for (i, &mi) in m.iter().enumerate() {
            let sub = (c as u64 * mi as u64 % p as u64) as u32;
            r[shift + i] = (r[shift + i] + p - sub) % p;
        }
        trim(&mut r);
    }
    r
}

pub(crate) fn inv_mod(a: u32, p: u32) -> u32 {
    pow_mod(a, p - 2, p)
}

pub(crate) fn pow_mod(a: u32, mut e: u32, p: u32) -> u32 {
    let mut base = a as u64 % p as u64;
    let mut acc = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p as u64;
        }
        base = base * base % p as u64;
        e >>= 1;
    }
    acc as u32
}

/// Monic polynomial of degree `d` whose lower coefficients are the base-p digits of `code`.
pub(crate) fn monic_from_code(mut code: u64, d: usize, p: u32) -> Vec<u32> {
    let mut v = Vec::with_capacity(d + 1);
    for _ in 0..d {
        v.push((code % p as u64) as u32);
        code /= p as u64;
    }
    v.push(1);
    v
}

/// Irreducibility over F_p by trial division with all monic polynomials of degree ≤ d/2.
pub(crate) fn is_irreducible(m: &[u32], p: u32) -> bool {
    let d = m.len() - 1;
    if d == 0 {
        return false;
    }
    if d == 1 {
        return true;
    }
    for k in 1..=d / 2 {
        let count = (p as u64).pow(k as u32);
        for code in 0..count {
            let g = monic_from_code(code, k, p);
            if rem(m, &g, p).is_empty() {
                return false;
            }
        }
    }
    true
}

/// Lexicographically smallest monic irreducible of degree `d`, scanning lower coefficients
/// by their integer code.
pub(crate) fn smallest_irreducible(d: usize, p: u32) -> Vec<u32> {
    let count = (p as u64).pow(d as u32);
    (0..count)
        .map(|c| monic_from_code(c, d, p))
        .find(|m| is_irreducible(m, p))
        .expect("irreducible polynomials exist in every degree")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_moduli() {
        assert_eq!(smallest_irreducible(2, 3), vec![1, 0, 1]);
        assert_eq!(smallest_irreducible(1, 5), vec![0, 1]);
        assert!(is_irreducible(&[2, 0, 1], 5));
        assert!(!is_irreducible(&[1, 0, 1], 5));
    }

    #[test]
    fn irreducible_counts() {
        // number of monic irreducibles of degree 2 over F_p is (p^2 - p)/2
        for p in [3u32, 5, 7] {
            let n = (0..(p * p) as u64)
                .filter(|&c| is_irreducible(&monic_from_code(c, 2, p), p))
                .count();
            assert_eq!(n as u32, (p * p - p) / 2);
        }
        let n3 = (0..27u64).filter(|&c| is_irreducible(&monic_from_code(c, 3, 3), 3)).count();
        assert_eq!(n3, 8);
    }
}
