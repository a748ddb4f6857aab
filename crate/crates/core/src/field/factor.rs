//! Integer factorization helpers for square-class computations.
//!
//! Square classes over `Q` are represented by signed square-free integers,
//! and Hasse invariants need the odd primes dividing them. Diagonal entries
//! coming out of exact Gaussian elimination can carry large prime factors,
//! so trial division is backed by Miller–Rabin and Brent's variant of
//! Pollard's rho.

use num::bigint::{BigInt, BigUint};

use num::{Integer, One, Signed, Zero};

const TRIAL_BOUND: u64 = 1 << 13;

/// Deterministic Miller–Rabin for u64 moduli.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    // This base set is deterministic for all n < 3.3 * 10^24.
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod_u64(a % n, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod_u64(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

pub fn mul_mod_u64(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod_u64(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod_u64(acc, base, m);
        }
        base = mul_mod_u64(base, base, m);
        exp >>= 1;
    }
    acc
}

fn is_probable_prime(n: &BigUint) -> bool {
    if let Some(small) = n.to_u64_digits().first() {
        if n.bits() <= 64 {
            return is_prime_u64(*small);
        }
    } else {
        return false; // zero
    }
    let one = BigUint::one();
    let two = BigUint::from(2u32);
    if n.is_even() {
        return false;
    }
    let n_minus_1 = n - &one;
    let mut d = n_minus_1.clone();
    let mut s = 0u32;
    while d.is_even() {
        d >>= 1;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let a = BigUint::from(a);
        if &a >= n {
            continue;
        }
        let mut x = a.modpow(&d, n);
        if x == one || x == n_minus_1 {
            continue;
        }
        for _ in 1..s {
            x = x.modpow(&two, n);
            if x == n_minus_1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Brent's cycle-finding variant of Pollard's rho; `n` must be odd,
/// composite and not a prime power handled elsewhere.
fn pollard_rho(n: &BigUint) -> BigUint {
    let one = BigUint::one();
    let mut c = BigUint::from(1u32);
    loop {
        let mut x = BigUint::from(2u32);
        let mut y = BigUint::from(2u32);
        let mut d = BigUint::one();
        let f = |v: &BigUint| (v * v + &c) % n;
        while d == one {
            x = f(&x);
            y = f(&f(&y));
            let diff = if x > y { &x - &y } else { &y - &x };
            if diff.is_zero() {
                break;
            }
            d = diff.gcd(n);
        }
        if d != one && &d != n {
            return d;
        }
        c += 1u32;
    }
}

/// Full factorization of a positive integer as (prime, exponent) pairs.
pub fn factor(n: &BigUint) -> Vec<(BigUint, u32)> {
    let mut factors: std::collections::BTreeMap<BigUint, u32> = Default::default();
    let mut rest = n.clone();
    if rest.is_zero() {
        panic!("factor(0) is undefined");
    }
    let mut d = 2u64;
    while d <= TRIAL_BOUND {
        let big_d = BigUint::from(d);
        if &big_d * &big_d > rest {
            break;
        }
        while (&rest % &big_d).is_zero() {
            *factors.entry(big_d.clone()).or_insert(0) += 1;
            rest /= &big_d;
        }
        d += if d == 2 { 1 } else { 2 };
    }
    factor_large(rest, 1, &mut factors);
    factors.into_iter().collect()
}

fn factor_large(
    n: BigUint,
    multiplicity: u32,
    factors: &mut std::collections::BTreeMap<BigUint, u32>,
) {
    if n.is_one() {
        return;
    }
    if is_probable_prime(&n) {
        *factors.entry(n).or_insert(0) += multiplicity;
        return;
    }
    let root = n.sqrt();
    if &root * &root == n {
        factor_large(root, multiplicity * 2, factors);
        return;
    }
    let d = pollard_rho(&n);
    let q = &n / &d;
    factor_large(d, multiplicity, factors);
    factor_large(q, multiplicity, factors);
}

/// Signed square-free part: strips every square factor, keeping the sign.
pub fn squarefree_part(n: &BigInt) -> BigInt {
    assert!(!n.is_zero(), "squarefree part of zero is undefined");
    let mag = n.magnitude();
    let mut out = BigUint::one();
    for (p, e) in factor(mag) {
        if e % 2 == 1 {
            out *= p;
        }
    }
    let out = BigInt::from(out);
    if n.is_negative() {
        -out
    } else {
        out
    }
}

/// Odd primes dividing `n` (used for Hilbert-symbol support sets).
pub fn odd_prime_support(n: &BigInt) -> Vec<BigInt> {
    factor(n.magnitude())
        .into_iter()
        .filter(|(p, _)| p > &BigUint::from(2u32))
        .map(|(p, _)| BigInt::from(p))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality_small() {
        let primes = [2u64, 3, 5, 7, 101, 65537, 2147483647];
        for p in primes {
            assert!(is_prime_u64(p), "{p} should be prime");
        }
        for c in [1u64, 4, 9, 15, 1001, 65539 * 3] {
            assert!(!is_prime_u64(c), "{c} should be composite");
        }
    }

    #[test]
    fn factors_recombine() {
        for n in [2u64, 12, 360, 1024, 104729 * 104729, 999999937 * 3] {
            let n = BigUint::from(n);
            let fs = factor(&n);
            let mut prod = BigUint::one();
            for (p, e) in &fs {
                assert!(is_probable_prime(p));
                prod *= p.pow(*e);
            }
            assert_eq!(prod, n);
        }
    }

    #[test]
    fn squarefree_examples() {
        assert_eq!(squarefree_part(&BigInt::from(4)), BigInt::from(1));
        assert_eq!(squarefree_part(&BigInt::from(-12)), BigInt::from(-3));
        assert_eq!(squarefree_part(&BigInt::from(18)), BigInt::from(2));
        assert_eq!(squarefree_part(&BigInt::from(-1)), BigInt::from(-1));
    }

    #[test]
    fn factors_large_semiprime() {
        // Two 11-digit primes; exercises the rho path.
        let p = BigUint::from(10000000019u64);
        let q = BigUint::from(10000000033u64);
        let fs = factor(&(&p * &q));
        assert_eq!(fs, vec![(p, 1), (q, 1)]);
    }
}
