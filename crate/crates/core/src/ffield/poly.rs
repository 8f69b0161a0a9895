//! Dense polynomials over Z_p, used only while a field is being constructed.

/// Coefficients `c0, c1, ...`, trailing zeros trimmed.
pub(crate) type Poly = Vec<u32>;

pub(crate) fn trim(mut a: Poly) -> Poly {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

/// Remainder of `a` modulo the monic polynomial `m`.
pub(crate) fn rem_monic(a: &[u32], m: &[u32], p: u32) -> Poly {
    let mut a = a.to_vec();
    let dm = m.len() - 1;
    while a.len() > dm {
        let lead = *a.last().unwrap();
        let shift = a.len() - 1 - dm;
        if lead != 0 {
            for (i, &mc) in m.iter().enumerate() {
                let t = (lead as u64 * mc as u64 % p as u64) as u32;
                a[shift + i] = (a[shift + i] + p - t) % p;
            }
        }
        a.pop();
    }
    trim(a)
}

pub(crate) fn mul(a: &[u32], b: &[u32], p: u32) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x as u64 * y as u64) % p as u64;
        }
    }
    trim(out.into_iter().map(|c| c as u32).collect())
}

pub(crate) fn mul_mod(a: &[u32], b: &[u32], m: &[u32], p: u32) -> Poly {
    rem_monic(&mul(a, b, p), m, p)
}

pub(crate) fn pow_mod(a: &[u32], mut k: u128, m: &[u32], p: u32) -> Poly {
    let mut base = rem_monic(a, m, p);
    let mut acc: Poly = vec![1];
    while k > 0 {
        if k & 1 == 1 {
            acc = mul_mod(&acc, &base, m, p);
        }
        base = mul_mod(&base, &base, m, p);
        k >>= 1;
    }
    acc
}

/// Digits of `v` in base `p`, length `len`.
pub(crate) fn digits(mut v: u32, p: u32, len: usize) -> Vec<u32> {
    let mut out = Vec::with_capacity(len);
    for _ in 0..len {
        out.push(v % p);
        v /= p;
    }
    out
}

pub(crate) fn from_digits(d: &[u32], p: u32) -> u32 {
    d.iter().rev().fold(0u32, |acc, &c| acc * p + c)
}

/// Monic polynomial of degree `deg` whose lower coefficients are the base-`p`
/// digits of `tail`.
pub(crate) fn monic_from_tail(tail: u32, p: u32, deg: usize) -> Poly {
    let mut c = digits(tail, p, deg);
    c.push(1);
    c
}

/// Irreducibility by trial division against every monic polynomial of degree
/// at most `deg / 2`.
pub(crate) fn is_irreducible(m: &[u32], p: u32) -> bool {
    let deg = m.len() - 1;
    if deg <= 1 {
        return true;
    }
    for d in 1..=deg / 2 {
        let count = (p as u64).pow(d as u32);
        for tail in 0..count {
            let f = monic_from_tail(tail as u32, p, d);
            if rem_monic(m, &f, p).is_empty() {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn detects_reducible_quadratics() {
        // x^2 + 1 = (x + 1)^2 over GF(2)
        assert!(!is_irreducible(&[1, 0, 1], 2));
        assert!(is_irreducible(&[1, 1, 1], 2));
        // x^2 + 1 over GF(3) is irreducible, x^2 + 2 = (x-1)(x+1) is not
        assert!(is_irreducible(&[1, 0, 1], 3));
        assert!(!is_irreducible(&[2, 0, 1], 3));
    }

    #[test]
    fn remainder_and_power() {
        // x^3 mod (x^2 + x + 1) over GF(2) = 1
        assert_eq!(pow_mod(&[0, 1], 3, &[1, 1, 1], 2), vec![1]);
        assert_eq!(rem_monic(&[0, 0, 1], &[1, 1, 1], 2), vec![1, 1]);
    }
}
