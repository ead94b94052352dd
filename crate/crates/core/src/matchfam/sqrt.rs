// Copyright 2026 The ldcforge Authors
//
// Licensed under the Apache License, Version 2.0 (see
// LICENSE or https://www.apache.org/licenses/LICENSE-2.0).
// This file may not be copied, modified, or distributed
// except according to those terms.

use crate::modulus::factor::powmod_u64;

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn is_residue(a: u64, p: u64) -> bool {
    a.is_multiple_of(p) || powmod_u64(a, (p - 1) / 2, p) == 1
}

/// Smaller square root of `a` modulo an odd prime `p`, by Tonelli-Shanks.
pub fn sqrt_mod(a: u64, p: u64) -> Option<u64> {
    let a = a % p;
    if a == 0 {
        return Some(0);
    }
    if !is_residue(a, p) {
        return None;
    }
    let r = if p % 4 == 3 {
        powmod_u64(a, (p + 1) / 4, p)
    } else {
        let s = (p - 1).trailing_zeros();
        let q = (p - 1) >> s;
        let z = (2..p)
            .find(|z| !is_residue(*z, p))
            .expect("odd prime has a non-residue");
        let mut mm = s;
        let mut c = powmod_u64(z, q, p);
        let mut t = powmod_u64(a, q, p);
        let mut r = powmod_u64(a, q.div_ceil(2), p);
        while t != 1 {
            let mut i = 0;
            let mut tt = t;
            while tt != 1 {
                tt = mulmod(tt, tt, p);
                i += 1;
            }
            let b = powmod_u64(c, 1 << (mm - i - 1), p);
            mm = i;
            c = mulmod(b, b, p);
            t = mulmod(t, c, p);
            r = mulmod(r, b, p);
        }
        r
    };
    Some(r.min(p - r))
}

/// `(x, y)` with `x^2 + y^2 = d (mod p)`: the least `x >= 0` for which
/// `d - x^2` is a square, and the smaller root `y`.
pub fn sum_of_two_squares(d: u64, p: u64) -> (u64, u64) {
    let d = d % p;
    for x in 0..p {
        let rest = (d + p - mulmod(x, x, p)) % p;
        if let Some(y) = sqrt_mod(rest, p) {
            return (x, y);
        }
    }
    unreachable!("every residue modulo an odd prime is a sum of two squares")
}
