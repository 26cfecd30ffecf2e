//! Prime factorization of machine-sized integers.
//!
//! Small factors are stripped by trial division; whatever cofactor remains is
//! split with Pollard-Brent rho and certified with a deterministic
//! Miller-Rabin test, so every `u64` factors quickly.

use std::collections::BTreeMap;

use num_integer::Integer;

const TRIAL_BOUND: u64 = 1 << 10;

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic for all 64-bit inputs.
pub fn is_prime(n: u64) -> bool {
    const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &p in &WITNESSES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &WITNESSES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

// Returns a nontrivial divisor of the odd composite `n`.
fn pollard_brent(n: u64) -> u64 {
    let mut c = 1;
    loop {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let (mut x, mut y, mut g) = (2u64, 2u64, 1u64);
        let mut power = 1u64;
        let mut lam = 1u64;
        while g == 1 {
            if power == lam {
                x = y;
                power <<= 1;
                lam = 0;
            }
            y = f(y);
            lam += 1;
            g = x.abs_diff(y).gcd(&n);
        }
        if g != n {
            return g;
        }
        c += 1;
    }
}

fn split_into(n: u64, out: &mut BTreeMap<u64, u32>) {
    if n == 1 {
        return;
    }
    if is_prime(n) {
        *out.entry(n).or_insert(0) += 1;
        return;
    }
    let d = pollard_brent(n);
    split_into(d, out);
    split_into(n / d, out);
}

/// Prime factorization of `n` as `prime -> multiplicity`. `factorize(1)` is empty.
///
/// Panics on `n == 0`, which has no factorization.
pub fn factorize(mut n: u64) -> BTreeMap<u64, u32> {
    assert!(n != 0, "zero has no prime factorization");
    let mut out = BTreeMap::new();
    let mut p = 2;
    while p < TRIAL_BOUND && p * p <= n {
        while n.is_multiple_of(p) {
            *out.entry(p).or_insert(0) += 1;
            n /= p;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    split_into(n, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn trial_division(mut n: u64) -> BTreeMap<u64, u32> {
        let mut out = BTreeMap::new();
        let mut p = 2;
        while p * p <= n {
            while n.is_multiple_of(p) {
                *out.entry(p).or_insert(0) += 1;
                n /= p;
            }
            p += 1;
        }
        if n > 1 {
            *out.entry(n).or_insert(0) += 1;
        }
        out
    }

    #[test]
    fn small_values() {
        assert!(factorize(1).is_empty());
        assert_eq!(factorize(12), BTreeMap::from([(2, 2), (3, 1)]));
        assert_eq!(factorize(97), BTreeMap::from([(97, 1)]));
    }

    #[test]
    fn large_semiprime_and_prime() {
        // 4294967291 and 4294967279 are the two largest primes below 2^32.
        let n = 4294967291u64 * 4294967279u64;
        assert_eq!(factorize(n), BTreeMap::from([(4294967279, 1), (4294967291, 1)]));
        assert!(is_prime(18446744073709551557));
        assert_eq!(
            factorize(18446744073709551557),
            BTreeMap::from([(18446744073709551557, 1)])
        );
        assert!(!is_prime(3215031751)); // strong pseudoprime to bases 2, 3, 5, 7
    }

    proptest! {
        #[test]
        fn agrees_with_trial_division(n in 1u64..5_000_000) {
            prop_assert_eq!(factorize(n), trial_division(n));
        }

        #[test]
        fn factors_multiply_back(n in 1u64..) {
            let f = factorize(n);
            let mut prod = 1u128;
            for (&p, &e) in &f {
                prop_assert!(is_prime(p));
                prod *= (p as u128).pow(e);
            }
            prop_assert_eq!(prod, n as u128);
        }
    }
}
