//! Hot dense-vector kernels over F_p, written to auto-vectorize.
//!
//! Entries are stored reduced in `0..p`. The inner loops use wrapping
//! arithmetic plus a branchless conditional subtract so the compiler can emit
//! SIMD; correctness relies on p <= 13 so no intermediate exceeds u8 range
//! for the add paths.

/// y += x (mod p), elementwise.
pub fn add_assign(y: &mut [u8], x: &[u8], p: u8) {
    debug_assert_eq!(y.len(), x.len());
    for (a, &b) in y.iter_mut().zip(x.iter()) {
        let t = a.wrapping_add(b);
        *a = t.min(t.wrapping_sub(p));
    }
}

/// y -= x (mod p), elementwise.
pub fn sub_assign(y: &mut [u8], x: &[u8], p: u8) {
    debug_assert_eq!(y.len(), x.len());
    for (a, &b) in y.iter_mut().zip(x.iter()) {
        let t = a.wrapping_add(p).wrapping_sub(b);
        *a = t.min(t.wrapping_sub(p));
    }
}

/// y += c * x (mod p). Fast paths for c = 1 and c = p-1; small c handled by
/// repeated addition so the loop stays branch-free and vectorizable.
pub fn add_scaled(y: &mut [u8], x: &[u8], c: u8, p: u8) {
    debug_assert!(c < p);
    match c {
        0 => {}
        1 => add_assign(y, x, p),
        c if c == p - 1 => sub_assign(y, x, p),
        c if c <= p / 2 => {
            for _ in 0..c {
                add_assign(y, x, p);
            }
        }
        c => {
            for _ in 0..(p - c) {
                sub_assign(y, x, p);
            }
        }
    }
}

/// y *= c (mod p).
pub fn scale(y: &mut [u8], c: u8, p: u8) {
    debug_assert!(c < p);
    match c {
        1 => {}
        0 => y.fill(0),
        c => {
            for a in y.iter_mut() {
                *a = ((*a as u16 * c as u16) % p as u16) as u8;
            }
        }
    }
}

pub fn is_zero(y: &[u8]) -> bool {
    y.iter().all(|&a| a == 0)
}

pub fn first_nonzero(y: &[u8]) -> Option<usize> {
    y.iter().position(|&a| a != 0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scaled_add_matches_scalar() {
        for p in [3u8, 5, 7, 11, 13] {
            let x: Vec<u8> = (0..100).map(|i| (i * 7 + 3) as u8 % p).collect();
            for c in 0..p {
                let mut y: Vec<u8> = (0..100).map(|i| (i * 5 + 1) as u8 % p).collect();
                let expect: Vec<u8> = y
                    .iter()
                    .zip(x.iter())
                    .map(|(&a, &b)| ((a as u16 + c as u16 * b as u16) % p as u16) as u8)
                    .collect();
                add_scaled(&mut y, &x, c, p);
                assert_eq!(y, expect, "p={p} c={c}");
            }
        }
    }
}
