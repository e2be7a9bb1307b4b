//! Scalar arithmetic helpers for small prime fields.

use crate::error::{Error, Result};

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Validates that `p` is an odd prime not exceeding `max`.
pub fn check_odd_prime(p: u32, max: u32) -> Result<()> {
    if p == 2 || !is_prime(p) {
        return Err(Error::NotOddPrime(p));
    }
    if p > max {
        return Err(Error::PrimeTooLarge(p, max));
    }
    Ok(())
}

#[inline]
pub fn add(a: u8, b: u8, p: u8) -> u8 {
    let t = a + b;
    if t >= p {
        t - p
    } else {
        t
    }
}

#[inline]
pub fn sub(a: u8, b: u8, p: u8) -> u8 {
    if a >= b {
        a - b
    } else {
        a + p - b
    }
}

#[inline]
pub fn mul(a: u8, b: u8, p: u8) -> u8 {
    ((a as u16 * b as u16) % p as u16) as u8
}

#[inline]
pub fn neg(a: u8, p: u8) -> u8 {
    if a == 0 {
        0
    } else {
        p - a
    }
}

/// Multiplicative inverse mod p (p prime, a != 0).
pub fn inv(a: u8, p: u8) -> u8 {
    debug_assert!(a != 0);
    let mut r = 1u8;
    let mut base = a;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            r = mul(r, base, p);
        }
        base = mul(base, base, p);
        e >>= 1;
    }
    r
}

/// Inverse of a unit mod p^2 (entry not divisible by p).
pub fn inv_mod_p2(a: u16, p: u8) -> u16 {
    let m = (p as u32) * (p as u32);
    debug_assert!(a as u32 % p as u32 != 0);
    let mut r = 1u32;
    let mut base = a as u32 % m;
    // phi(p^2) = p(p-1)
    let mut e = (p as u32) * (p as u32 - 1) - 1;
    while e > 0 {
        if e & 1 == 1 {
            r = r * base % m;
        }
        base = base * base % m;
        e >>= 1;
    }
    r as u16
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes() {
        assert!(is_prime(3) && is_prime(5) && is_prime(7) && is_prime(13));
        assert!(!is_prime(1) && !is_prime(9) && !is_prime(15));
        assert!(check_odd_prime(2, 13).is_err());
        assert!(check_odd_prime(9, 13).is_err());
        assert!(check_odd_prime(11, 7).is_err());
        assert!(check_odd_prime(7, 7).is_ok());
    }

    #[test]
    fn inverses() {
        for p in [3u8, 5, 7, 11, 13] {
            for a in 1..p {
                assert_eq!(mul(a, inv(a, p), p), 1);
            }
            let m = p as u16 * p as u16;
            for a in 1..m {
                if a % p as u16 != 0 {
                    assert_eq!((a as u32 * inv_mod_p2(a, p) as u32) % m as u32, 1);
                }
            }
        }
    }
}
