// Copyright 2026 The ldcforge Authors
//
// Licensed under the Apache License, Version 2.0 (see
// LICENSE or https://www.apache.org/licenses/LICENSE-2.0).
// This file may not be copied, modified, or distributed
// except according to those terms.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use smallvec::SmallVec;

use super::gf2x::{self, Limbs};
use super::hex;
use super::FieldElement;
use crate::error::{Error, Result};
use crate::modulus::factor;

/// Moduli fixed up front so artifacts are reproducible bit for bit.
/// Entries are the exponents of the nonzero terms below `X^t`.
const BUILTIN_MODULI: &[(u32, &[u32])] = &[(4, &[1, 0]), (9, &[4, 0]), (11, &[2, 0]), (23, &[5, 0])];

struct FieldInner {
    t: u32,
    words: usize,
    /// `t + 1` bits, bit `t` and bit 0 set.
    modulus: Vec<u64>,
    /// Exponents `e < t` with a nonzero coefficient in the modulus.
    tail: Vec<u32>,
}

/// The binary extension field GF(2^t) in a polynomial basis.
///
/// Cloning is cheap; all clones refer to the same modulus.
#[derive(Clone)]
pub struct FieldSpec(Arc<FieldInner>);

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || (self.0.t == other.0.t && self.0.modulus == other.0.modulus)
    }
}

impl Eq for FieldSpec {}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF(2^{})[modulus={}]", self.t(), self.modulus_hex())
    }
}

fn irreducible_cache() -> &'static Mutex<HashMap<u32, Vec<u64>>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Vec<u64>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

fn words_for(bits: usize) -> usize {
    bits.div_ceil(64).max(1)
}

fn modulus_from_exponents(t: u32, low: &[u32]) -> Vec<u64> {
    let mut m = vec![0u64; words_for(t as usize + 1)];
    m[(t / 64) as usize] |= 1u64 << (t % 64);
    for e in low {
        m[(*e / 64) as usize] ^= 1u64 << (e % 64);
    }
    m
}

impl FieldSpec {
    /// GF(2^t) under the default modulus for `t`: the built-in table for
    /// t in {4, 9, 11, 23}, otherwise the irreducible polynomial of degree
    /// `t` with the smallest coefficient bit string.
    pub fn new(t: u32) -> Result<Self> {
        if t == 0 {
            return Err(Error::InvalidInput("extension degree must be positive".into()));
        }
        if let Some((_, low)) = BUILTIN_MODULI.iter().find(|(d, _)| *d == t) {
            return Ok(Self::from_modulus_unchecked(t, modulus_from_exponents(t, low)));
        }
        if let Some(m) = irreducible_cache().lock().unwrap().get(&t) {
            return Ok(Self::from_modulus_unchecked(t, m.clone()));
        }
        let modulus = smallest_irreducible(t)?;
        irreducible_cache().lock().unwrap().insert(t, modulus.clone());
        Ok(Self::from_modulus_unchecked(t, modulus))
    }

    /// GF(2^t) with an explicit modulus given as packed coefficient words.
    pub fn with_modulus(t: u32, modulus: &[u64]) -> Result<Self> {
        if t == 0 {
            return Err(Error::InvalidInput("extension degree must be positive".into()));
        }
        let mut m = modulus.to_vec();
        m.resize(words_for(t as usize + 1), 0);
        if gf2x::degree(&m) != Some(t as usize) || modulus.len() > m.len() && !gf2x::is_zero(&modulus[m.len()..]) {
            return Err(Error::InvalidInput(format!("modulus does not have degree {t}")));
        }
        if !is_irreducible(t, &m) {
            return Err(Error::IrreducibleViolation(hex::encode_bits(&m, t as usize + 1)));
        }
        Ok(Self::from_modulus_unchecked(t, m))
    }

    /// GF(2^t) whose modulus is `X^t + sum X^e` over the given exponents.
    pub fn with_modulus_exponents(t: u32, low: &[u32]) -> Result<Self> {
        if low.iter().any(|e| *e >= t) {
            return Err(Error::InvalidInput("modulus term exponent must be below t".into()));
        }
        Self::with_modulus(t, &modulus_from_exponents(t, low))
    }

    pub(crate) fn from_modulus_unchecked(t: u32, modulus: Vec<u64>) -> Self {
        let tail = (0..t)
            .filter(|e| (modulus[(*e / 64) as usize] >> (e % 64)) & 1 == 1)
            .collect();
        FieldSpec(Arc::new(FieldInner {
            t,
            words: words_for(t as usize),
            modulus,
            tail,
        }))
    }

    pub fn t(&self) -> u32 {
        self.0.t
    }

    pub(crate) fn words(&self) -> usize {
        self.0.words
    }

    /// Bytes needed to store one element, `ceil(t / 8)`.
    pub fn element_bytes(&self) -> usize {
        (self.0.t as usize).div_ceil(8)
    }

    pub fn modulus_words(&self) -> &[u64] {
        &self.0.modulus
    }

    /// Exponents of the modulus terms, highest first.
    pub fn modulus_exponents(&self) -> Vec<u32> {
        let mut e = vec![self.0.t];
        e.extend(self.0.tail.iter().rev());
        e
    }

    pub fn modulus_hex(&self) -> String {
        hex::encode_bits(&self.0.modulus, self.0.t as usize + 1)
    }

    /// Size of the multiplicative group, `2^t - 1`.
    pub fn group_order(&self) -> BigUint {
        (BigUint::one() << self.0.t as usize) - 1u32
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement::from_raw(self.clone(), SmallVec::from_elem(0, self.words()))
    }

    pub fn one(&self) -> FieldElement {
        FieldElement::from_raw(self.clone(), self.one_raw())
    }

    /// The class of `X`, i.e. the root of the modulus.
    pub fn x(&self) -> FieldElement {
        self.element_from_u64(2)
    }

    /// Element whose coefficient bits are the low bits of `bits`, reduced.
    pub fn element_from_u64(&self, bits: u64) -> FieldElement {
        self.element_from_words(&[bits])
    }

    /// Element from packed coefficient words, reduced modulo the modulus.
    pub fn element_from_words(&self, words: &[u64]) -> FieldElement {
        let mut buf: Limbs = SmallVec::from_slice(words);
        let n = buf.len().max(self.words());
        buf.resize(n, 0);
        let r = if gf2x::degree(&buf).is_none_or(|d| d < self.0.t as usize) {
            buf.truncate(self.words());
            buf
        } else {
            gf2x::rem(&buf, &self.0.modulus)
        };
        let mut r = r;
        r.resize(self.words(), 0);
        FieldElement::from_raw(self.clone(), r)
    }

    /// Parses the hex form produced by [`FieldElement::to_hex`].
    pub fn element_from_hex(&self, s: &str) -> Result<FieldElement> {
        let words = hex::decode_bits(s, self.0.t as usize)?;
        Ok(FieldElement::from_raw(self.clone(), words))
    }

    /// Uniformly random element.
    pub fn random<R: rand::Rng + ?Sized>(&self, rng: &mut R) -> FieldElement {
        let mut w: Limbs = (0..self.words()).map(|_| rng.gen::<u64>()).collect();
        gf2x::truncate(&mut w, self.0.t as usize);
        FieldElement::from_raw(self.clone(), w)
    }

    /// Uniformly random nonzero element.
    pub fn random_nonzero<R: rand::Rng + ?Sized>(&self, rng: &mut R) -> FieldElement {
        loop {
            let x = self.random(rng);
            if !x.is_zero() {
                return x;
            }
        }
    }

    /// An element of multiplicative order exactly `m`.
    ///
    /// Scans candidates `y = 2, 3, 4, ...` in bit-string order and returns the
    /// first `y^((2^t - 1) / m)` whose order is `m`. When `m = 2^t - 1` this is
    /// the smallest generator of the multiplicative group.
    pub fn primitive_root(&self, m: u64) -> Result<FieldElement> {
        let order = self.group_order();
        if m == 0 || &order % m != BigUint::from(0u32) {
            return Err(Error::OrderUnsupported { m, t: self.t() });
        }
        if m == 1 {
            return Ok(self.one());
        }
        let cofactor = &order / m;
        let primes = factor::distinct_prime_factors_u64(m);
        let one = self.one_raw();
        let mut y = 2u64;
        loop {
            let cand = self.element_from_u64(y);
            if !cand.is_zero() {
                let x = self.pow_big_raw(cand.raw(), &cofactor);
                if primes.iter().all(|p| self.pow_u64_raw(&x, m / p) != one) {
                    return Ok(FieldElement::from_raw(self.clone(), x));
                }
            }
            y += 1;
            if y == u64::MAX || (self.t() < 64 && y >> self.t() != 0) {
                return Err(Error::InternalError("no element of the requested order found".into()));
            }
        }
    }

    // ---- raw arithmetic on packed words -------------------------------------------------

    pub(crate) fn zero_raw(&self) -> Limbs {
        SmallVec::from_elem(0, self.words())
    }

    pub(crate) fn one_raw(&self) -> Limbs {
        let mut w: Limbs = SmallVec::from_elem(0, self.words());
        w[0] = 1;
        w
    }

    pub(crate) fn add_raw(&self, a: &[u64], b: &[u64]) -> Limbs {
        a.iter().zip(b).map(|(x, y)| x ^ y).collect()
    }

    pub(crate) fn mul_raw(&self, a: &[u64], b: &[u64]) -> Limbs {
        if self.0.words == 1 {
            let p = gf2x::clmul64(a[0], b[0]);
            let mut out: Limbs = SmallVec::new();
            out.push(self.reduce_u128(p));
            return out;
        }
        let w = self.0.words;
        let mut prod: SmallVec<[u64; 8]> = SmallVec::from_elem(0, 2 * w);
        gf2x::clmul(a, b, &mut prod);
        self.reduce_wide(&mut prod)
    }

    pub(crate) fn square_raw(&self, a: &[u64]) -> Limbs {
        self.mul_raw(a, a)
    }

    fn reduce_u128(&self, mut p: u128) -> u64 {
        let t = self.0.t;
        loop {
            let hi = if t >= 128 { 0 } else { p >> t };
            if hi == 0 {
                return p as u64;
            }
            p &= (1u128 << t) - 1;
            for e in &self.0.tail {
                p ^= hi << e;
            }
        }
    }

    fn reduce_wide(&self, prod: &mut [u64]) -> Limbs {
        let t = self.0.t as usize;
        let n = prod.len();
        loop {
            match gf2x::degree(prod) {
                Some(d) if d >= t => {}
                _ => break,
            }
            let hi = gf2x::shr(prod, t, n);
            gf2x::truncate(prod, t);
            for e in &self.0.tail {
                gf2x::xor_shifted(prod, &hi, *e as usize);
            }
        }
        SmallVec::from_slice(&prod[..self.0.words])
    }

    /// Inverse by the extended Euclidean algorithm; `a` must be nonzero.
    pub(crate) fn inv_raw(&self, a: &[u64]) -> Limbs {
        let n = self.0.modulus.len();
        let mut u: Limbs = SmallVec::from_slice(a);
        u.resize(n, 0);
        let mut v: Limbs = SmallVec::from_slice(&self.0.modulus);
        let mut g1: Limbs = SmallVec::from_elem(0, n);
        g1[0] = 1;
        let mut g2: Limbs = SmallVec::from_elem(0, n);
        let mut du = gf2x::degree(&u).expect("inverse of zero");
        let mut dv = self.0.t as usize;
        while du != 0 {
            if du < dv {
                std::mem::swap(&mut u, &mut v);
                std::mem::swap(&mut g1, &mut g2);
                std::mem::swap(&mut du, &mut dv);
            }
            let j = du - dv;
            gf2x::xor_shifted(&mut u, &v, j);
            gf2x::xor_shifted(&mut g1, &g2, j);
            du = gf2x::degree(&u).expect("gcd with irreducible modulus is 1");
        }
        let mut r = if gf2x::degree(&g1).is_none_or(|d| d < self.0.t as usize) {
            g1
        } else {
            gf2x::rem(&g1, &self.0.modulus)
        };
        r.resize(self.0.words, 0);
        r
    }

    pub(crate) fn pow_u64_raw(&self, a: &[u64], e: u64) -> Limbs {
        let mut result = self.one_raw();
        if e == 0 {
            return result;
        }
        let bits = 64 - e.leading_zeros();
        for i in (0..bits).rev() {
            result = self.square_raw(&result);
            if (e >> i) & 1 == 1 {
                result = self.mul_raw(&result, a);
            }
        }
        result
    }

    pub(crate) fn pow_big_raw(&self, a: &[u64], e: &BigUint) -> Limbs {
        let mut result = self.one_raw();
        let bits = e.bits();
        for i in (0..bits).rev() {
            result = self.square_raw(&result);
            if e.bit(i) {
                result = self.mul_raw(&result, a);
            }
        }
        result
    }

    /// `a^(2^j)` by `j` squarings.
    pub(crate) fn frobenius_raw(&self, a: &[u64], j: u32) -> Limbs {
        let mut r: Limbs = SmallVec::from_slice(a);
        for _ in 0..j {
            r = self.square_raw(&r);
        }
        r
    }

    /// Table `[g^0, g^1, ..., g^(len-1)]` of packed powers.
    pub(crate) fn power_table_raw(&self, g: &[u64], len: usize) -> Vec<Limbs> {
        let mut table = Vec::with_capacity(len);
        let mut cur = self.one_raw();
        for _ in 0..len {
            table.push(cur.clone());
            cur = self.mul_raw(&cur, g);
        }
        table
    }
}

/// Ben-Or test: `f` of degree `t` is irreducible iff
/// `gcd(X^(2^k) - X, f) = 1` for every `1 <= k <= t/2`.
pub(crate) fn is_irreducible(t: u32, modulus: &[u64]) -> bool {
    if modulus[0] & 1 == 0 {
        return false;
    }
    if t == 1 {
        return true;
    }
    let scratch = FieldSpec::from_modulus_unchecked(t, modulus.to_vec());
    let x = scratch.element_from_u64(2).raw().clone();
    let mut r = x.clone();
    for _ in 1..=t / 2 {
        r = scratch.square_raw(&r);
        let diff = scratch.add_raw(&r, &x);
        if gf2x::is_zero(&diff) {
            return false;
        }
        let g = gf2x::gcd(modulus, &diff);
        if !gf2x::is_one(&g) {
            return false;
        }
    }
    true
}

fn smallest_irreducible(t: u32) -> Result<Vec<u64>> {
    if t == 1 {
        return Ok(vec![0b11]);
    }
    // X^t + g(X): g odd, and an odd number of terms overall (else X + 1 divides).
    let limit: u64 = if t >= 64 { u64::MAX } else { 1u64 << t };
    let mut g = 3u64;
    while g < limit {
        if g.count_ones().is_multiple_of(2) {
            let mut m = vec![0u64; words_for(t as usize + 1)];
            m[0] = g;
            m[(t / 64) as usize] |= 1u64 << (t % 64);
            if is_irreducible(t, &m) {
                return Ok(m);
            }
        }
        g += 2;
    }
    Err(Error::InternalError(format!(
        "no irreducible polynomial of degree {t} found"
    )))
}

#[derive(Serialize, Deserialize)]
struct FieldSpecJson {
    t: u32,
    modulus_hex: String,
}

impl Serialize for FieldSpec {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        FieldSpecJson {
            t: self.t(),
            modulus_hex: self.modulus_hex(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for FieldSpec {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = FieldSpecJson::deserialize(d)?;
        let words = hex::decode_bits(&j.modulus_hex, j.t as usize + 1).map_err(serde::de::Error::custom)?;
        FieldSpec::with_modulus(j.t, &words).map_err(serde::de::Error::custom)
    }
}
