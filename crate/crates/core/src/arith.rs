//! Small integer helpers for orders up to the configured bound.

/// Prime factorization by trial division, `(prime, multiplicity)` pairs
/// in ascending prime order.
pub fn prime_factors(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            let mut k = 0;
            while n % p == 0 {
                n /= p;
                k += 1;
            }
            out.push((p, k));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && prime_factors(n) == [(n, 1)]
}

/// Largest power of `p` dividing `n` (as a value, so `p_part(24, 2) == 8`).
pub fn p_part(n: u64, p: u64) -> u64 {
    let mut out = 1;
    let mut n = n;
    while n % p == 0 {
        out *= p;
        n /= p;
    }
    out
}

/// Is `n` a power of `p` (including `p^0 = 1`)?
pub fn is_p_power(n: u64, p: u64) -> bool {
    p_part(n, p) == n
}

/// Is `n` a prime power `p^k` with `k >= 1`? Returns the prime.
pub fn prime_power_base(n: u64) -> Option<u64> {
    match prime_factors(n).as_slice() {
        [(p, _)] => Some(*p),
        _ => None,
    }
}

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 { a } else { gcd(b, a % b) }
}

pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 { 0 } else { a / gcd(a, b) * b }
}

/// `log_p(n)` for exact powers; panics if `n` is not a power of `p`.
pub fn exact_log(n: u64, p: u64) -> u32 {
    let mut k = 0;
    let mut m = 1;
    while m < n {
        m *= p;
        k += 1;
    }
    assert_eq!(m, n, "{n} is not a power of {p}");
    k
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factorization() {
        assert_eq!(prime_factors(216), vec![(2, 3), (3, 3)]);
        assert_eq!(prime_factors(1), vec![]);
        assert!(is_prime(5));
        assert!(!is_prime(1));
        assert_eq!(p_part(216, 3), 27);
        assert_eq!(prime_power_base(81), Some(3));
        assert_eq!(prime_power_base(12), None);
        assert_eq!(exact_log(81, 3), 4);
        assert_eq!(lcm(9, 6), 18);
    }
}
