// Copyright 2026 The ldcforge Authors
//
// Licensed under the Apache License, Version 2.0 (see
// LICENSE or https://www.apache.org/licenses/LICENSE-2.0).
// This file may not be copied, modified, or distributed
// except according to those terms.

//! Polynomials over GF(2) packed into little-endian 64-bit words
//! (bit `i` of word `k` is the coefficient of `X^(64k + i)`).

use smallvec::SmallVec;

pub(crate) type Limbs = SmallVec<[u64; 2]>;

/// Degree of a packed polynomial, `None` for the zero polynomial.
pub(crate) fn degree(a: &[u64]) -> Option<usize> {
    a.iter()
        .enumerate()
        .rev()
        .find(|(_, w)| **w != 0)
        .map(|(i, w)| 64 * i + 63 - w.leading_zeros() as usize)
}

pub(crate) fn is_zero(a: &[u64]) -> bool {
    a.iter().all(|w| *w == 0)
}

pub(crate) fn is_one(a: &[u64]) -> bool {
    !a.is_empty() && a[0] == 1 && a[1..].iter().all(|w| *w == 0)
}

/// `dst ^= src << shift`, dropping bits that fall beyond `dst`.
pub(crate) fn xor_shifted(dst: &mut [u64], src: &[u64], shift: usize) {
    let ws = shift / 64;
    let bs = shift % 64;
    if ws >= dst.len() {
        return;
    }
    if bs == 0 {
        for (i, s) in src.iter().enumerate() {
            match dst.get_mut(i + ws) {
                Some(d) => *d ^= *s,
                None => break,
            }
        }
    } else {
        for (i, s) in src.iter().enumerate() {
            let lo = i + ws;
            if lo >= dst.len() {
                break;
            }
            dst[lo] ^= *s << bs;
            if lo + 1 < dst.len() {
                dst[lo + 1] ^= *s >> (64 - bs);
            }
        }
    }
}

/// Returns `a >> shift` with `words` output words.
pub(crate) fn shr(a: &[u64], shift: usize, words: usize) -> Limbs {
    let ws = shift / 64;
    let bs = shift % 64;
    let mut out: Limbs = SmallVec::from_elem(0, words);
    for (i, o) in out.iter_mut().enumerate() {
        let lo = a.get(i + ws).copied().unwrap_or(0);
        let hi = a.get(i + ws + 1).copied().unwrap_or(0);
        *o = if bs == 0 { lo } else { (lo >> bs) | (hi << (64 - bs)) };
    }
    out
}

/// Clears every bit at position `>= bits`.
pub(crate) fn truncate(a: &mut [u64], bits: usize) {
    let ws = bits / 64;
    let bs = bits % 64;
    for (i, w) in a.iter_mut().enumerate() {
        if i > ws || (i == ws && bs == 0) {
            *w = 0;
        } else if i == ws {
            *w &= (1u64 << bs) - 1;
        }
    }
}

#[inline]
fn clmul64_soft(a: u64, b: u64) -> u128 {
    let mut table = [0u128; 16];
    let a = a as u128;
    table[1] = a;
    for i in 2..16 {
        table[i] = if i % 2 == 0 {
            table[i / 2] << 1
        } else {
            table[i - 1] ^ a
        };
    }
    let mut r = 0u128;
    for k in (0..16).rev() {
        r = (r << 4) ^ table[((b >> (4 * k)) & 15) as usize];
    }
    r
}

#[cfg(target_arch = "x86_64")]
#[target_feature(enable = "pclmulqdq", enable = "sse2")]
unsafe fn clmul64_hw(a: u64, b: u64) -> u128 {
    use std::arch::x86_64::{_mm_clmulepi64_si128, _mm_set_epi64x, _mm_storeu_si128};
    let va = _mm_set_epi64x(0, a as i64);
    let vb = _mm_set_epi64x(0, b as i64);
    let r = _mm_clmulepi64_si128(va, vb, 0);
    let mut out = 0u128;
    _mm_storeu_si128(&mut out as *mut u128 as *mut _, r);
    out
}

/// Carry-less product of two 64-bit words.
#[inline]
pub(crate) fn clmul64(a: u64, b: u64) -> u128 {
    #[cfg(target_arch = "x86_64")]
    {
        if std::arch::is_x86_feature_detected!("pclmulqdq") {
            // SAFETY: feature presence checked at runtime.
            return unsafe { clmul64_hw(a, b) };
        }
    }
    clmul64_soft(a, b)
}

/// Full carry-less product; `out` must hold `a.len() + b.len()` words.
pub(crate) fn clmul(a: &[u64], b: &[u64], out: &mut [u64]) {
    out.iter_mut().for_each(|w| *w = 0);
    for (i, x) in a.iter().enumerate() {
        if *x == 0 {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            let p = clmul64(*x, *y);
            out[i + j] ^= p as u64;
            out[i + j + 1] ^= (p >> 64) as u64;
        }
    }
}

/// Remainder of `a` modulo `b` (`b` nonzero), in `b.len()` words.
pub(crate) fn rem(a: &[u64], b: &[u64]) -> Limbs {
    let db = degree(b).expect("polynomial remainder by zero");
    let mut r: Limbs = SmallVec::from_slice(a);
    while let Some(dr) = degree(&r) {
        if dr < db {
            break;
        }
        xor_shifted(&mut r, b, dr - db);
    }
    r.resize(b.len().max(1), 0);
    truncate(&mut r, db.max(1));
    if db == 0 {
        r.iter_mut().for_each(|w| *w = 0);
    }
    r
}

/// Greatest common divisor of two packed polynomials.
pub(crate) fn gcd(a: &[u64], b: &[u64]) -> Limbs {
    let mut x: Limbs = SmallVec::from_slice(a);
    let mut y: Limbs = SmallVec::from_slice(b);
    let n = x.len().max(y.len());
    x.resize(n, 0);
    y.resize(n, 0);
    while !is_zero(&y) {
        let r = rem(&x, &y);
        x = y;
        y = r;
        y.resize(n, 0);
    }
    x
}
