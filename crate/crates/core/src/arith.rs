//! Small integer number theory used throughout: factoring, divisors, units.

use alloc::vec::Vec;
use num_integer::Integer;

pub fn gcd(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        0
    } else {
        a / gcd(a, b) * b
    }
}

/// Prime factorization by trial division, as `(prime, exponent)` pairs in
/// increasing order.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn totient(n: u64) -> u64 {
    factorize(n)
        .into_iter()
        .fold(n, |acc, (p, _)| acc / p * (p - 1))
}

/// All positive divisors of `n` in increasing order.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut ds = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            ds.push(d);
            if d * d != n {
                ds.push(n / d);
            }
        }
        d += 1;
    }
    ds.sort_unstable();
    ds
}

/// Representative of `a` in `[0, m)`.
pub fn rem(a: i64, m: u64) -> u64 {
    (a as i128).rem_euclid(m as i128) as u64
}

pub fn is_unit(q: i64, m: u64) -> bool {
    gcd(rem(q, m), m) == 1
}

/// The residues in `[0, m)` that are coprime to `m`; `[0]` for `m = 1`.
pub fn units(m: u64) -> Vec<u64> {
    if m == 1 {
        return alloc::vec![0];
    }
    (1..m).filter(|&q| gcd(q, m) == 1).collect()
}

pub fn mod_inverse(q: i64, m: u64) -> Option<u64> {
    if m == 1 {
        return Some(0);
    }
    let e = (rem(q, m) as i128).extended_gcd(&(m as i128));
    if e.gcd != 1 {
        return None;
    }
    Some(e.x.rem_euclid(m as i128) as u64)
}

/// Smallest `q' >= 0` with `q' ≡ q (mod n)` and `gcd(q', m) = 1`.
///
/// Used to realize an automorphism of `Q_n` on a larger field `Q_m`; any such
/// lift restricts to the same automorphism of `Q_n`.
pub fn lift_unit(q: i64, n: u64, m: u64) -> Option<u64> {
    if !is_unit(q, n) {
        return None;
    }
    let base = rem(q, n);
    let modulus = lcm(n, m).max(1);
    let mut cand = base;
    while cand < modulus + n {
        if gcd(cand, m) == 1 {
            return Some(cand);
        }
        cand += n;
    }
    None
}

/// Squarefree decomposition `n = k^2 * l` with `l` squarefree.
pub fn square_decompose(n: u64) -> (u64, u64) {
    let mut k = 1;
    let mut l = 1;
    for (p, e) in factorize(n) {
        k *= p.pow(e / 2);
        if e % 2 == 1 {
            l *= p;
        }
    }
    (k, l)
}

/// `|SL(2, Z/m)| = m^3 * prod_{p | m} (1 - p^-2)`.
pub fn sl2_order(m: u64) -> u64 {
    factorize(m)
        .into_iter()
        .fold(m * m * m, |acc, (p, _)| acc / (p * p) * (p * p - 1))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factor_and_divisors() {
        assert_eq!(factorize(360), alloc::vec![(2, 3), (3, 2), (5, 1)]);
        assert_eq!(divisors(12), alloc::vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(totient(24), 8);
        assert_eq!(totient(1), 1);
        assert_eq!(square_decompose(72), (6, 2));
    }

    #[test]
    fn unit_helpers() {
        assert_eq!(units(8), alloc::vec![1, 3, 5, 7]);
        assert_eq!(mod_inverse(2, 5), Some(3));
        assert_eq!(mod_inverse(-1, 4), Some(3));
        assert_eq!(mod_inverse(2, 4), None);
        // 3 mod 4 lifted to a unit mod 12
        assert_eq!(lift_unit(3, 4, 12), Some(7));
        assert_eq!(lift_unit(1, 1, 5), Some(1));
    }

    #[test]
    fn sl2_orders() {
        assert_eq!(sl2_order(1), 1);
        assert_eq!(sl2_order(2), 6);
        assert_eq!(sl2_order(4), 48);
        assert_eq!(sl2_order(8), 384);
        assert_eq!(sl2_order(24), 9216);
        assert_eq!(sl2_order(7), 336);
    }
}
