//! Small integer helpers used across the crate.

/// Deterministic trial-division primality test. Inputs in this crate are
/// small (primes of residue characteristic, orders dividing p-1), so trial
/// division is the right tool.
pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d.checked_mul(d).map_or(false, |sq| sq <= n) {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Prime factorization by trial division, returned as (prime, exponent) pairs
/// in increasing prime order.
pub(crate) fn factor(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d.checked_mul(d).map_or(false, |sq| sq <= n) {
        if n % d == 0 {
            let mut e = 0u32;
            while n % d == 0 {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Modular exponentiation on u64 with u128 intermediates.
pub(crate) fn mod_pow(base: u64, mut exp: u64, modulus: u64) -> u64 {
    assert!(modulus > 0);
    if modulus == 1 {
        return 0;
    }
    let m = modulus as u128;
    let mut acc = 1u128;
    let mut b = (base % modulus) as u128;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    acc as u64
}

/// Multiplicative order of `a` modulo the prime `p`; panics if p | a.
pub(crate) fn multiplicative_order(a: u64, p: u64) -> u64 {
    let a = a % p;
    assert!(a != 0, "order of zero residue is undefined");
    // The order divides p-1; scan its divisors in increasing order.
    let group = p - 1;
    let mut divisors: Vec<u64> = (1..=group).filter(|d| group % d == 0).collect();
    divisors.sort_unstable();
    for d in divisors {
        if mod_pow(a, d, p) == 1 {
            return d;
        }
    }
    unreachable!("order must divide p-1");
}

/// Smallest positive primitive root modulo the odd prime `p`.
pub(crate) fn smallest_primitive_root(p: u64) -> u64 {
    (2..p)
        .find(|&g| multiplicative_order(g, p) == p - 1)
        .expect("every prime has a primitive root")
}

/// Discrete logarithm of `a` to base `g` in F_p^x by direct scan.
pub(crate) fn discrete_log(a: u64, g: u64, p: u64) -> u64 {
    let a = a % p;
    assert!(a != 0);
    let mut acc = 1u64;
    for k in 0..p - 1 {
        if acc == a {
            return k;
        }
        acc = (acc as u128 * g as u128 % p as u128) as u64;
    }
    panic!("{a} is not in the group generated by {g} mod {p}");
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality_small() {
        let primes: Vec<u64> = (0..60).filter(|&n| is_prime(n)).collect();
        assert_eq!(
            primes,
            vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59]
        );
    }

    #[test]
    fn factor_roundtrip() {
        for n in 2u64..500 {
            let f = factor(n);
            let back: u64 = f.iter().map(|&(p, e)| p.pow(e)).product();
            assert_eq!(back, n);
            assert!(f.iter().all(|&(p, _)| is_prime(p)));
        }
    }

    #[test]
    fn orders_mod_5() {
        assert_eq!(multiplicative_order(1, 5), 1);
        assert_eq!(multiplicative_order(4, 5), 2);
        assert_eq!(multiplicative_order(2, 5), 4);
        assert_eq!(multiplicative_order(3, 5), 4);
        assert_eq!(smallest_primitive_root(5), 2);
        assert_eq!(smallest_primitive_root(7), 3);
        assert_eq!(discrete_log(4, 2, 5), 2);
    }
}
