// Copyright 2026 The ldcforge Authors
//
// Licensed under the Apache License, Version 2.0 (see
// LICENSE or https://www.apache.org/licenses/LICENSE-2.0).
// This file may not be copied, modified, or distributed
// except according to those terms.

//! Number theory for a modulus `m`: factorization, the order of 2,
//! Chinese remaindering, canonical residues and cyclotomic cosets.

pub mod factor;
mod mersenne;

use num_bigint::BigUint;
use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use factor::{
    factor_semiprime, factor_u64, factorize, is_prime, is_prime_u64, multiplicative_order_u64, primality,
    FactorStructure, Primality, DEFAULT_FACTOR_BUDGET,
};
pub use mersenne::{scan_mersenne, MersenneRow, MersenneScan, SkipReason, SkippedExponent};

/// Arithmetic facts about an odd squarefree modulus with at least two
/// prime factors.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModulusProfile {
    pub m: u64,
    /// Distinct prime factors, ascending.
    pub primes: Vec<u64>,
    /// Multiplicative order of 2 modulo `m`.
    pub t: u32,
    /// The `2^r - 1` nonzero residues whose reduction modulo every prime
    /// factor is 0 or 1, ascending.
    pub canonical: Vec<u64>,
}

impl ModulusProfile {
    pub fn r(&self) -> usize {
        self.primes.len()
    }

    /// The canonical residue with pattern `sigma` (bit `i` gives the
    /// residue modulo `primes[i]`).
    pub fn canonical_for(&self, sigma: u64) -> u64 {
        let residues: Vec<u64> = (0..self.r()).map(|i| (sigma >> i) & 1).collect();
        crt(&residues, &self.primes).expect("prime factors are coprime")
    }

    /// For two prime factors `p < q`: the residues `(s01, s10)` with
    /// `s01 = 0 mod p, 1 mod q` and `s10 = 1 mod p, 0 mod q`.
    pub fn s01_s10(&self) -> Result<(u64, u64)> {
        if self.r() != 2 {
            return Err(invalid(self.m, "expected exactly two prime factors"));
        }
        Ok((self.canonical_for(0b10), self.canonical_for(0b01)))
    }

    pub fn cosets(&self) -> CosetPartition {
        cyclotomic_cosets(self.m).expect("profiled modulus is odd")
    }
}

pub(crate) fn invalid(m: impl ToString, reason: &str) -> Error {
    Error::InvalidModulus {
        m: m.to_string(),
        reason: reason.to_string(),
    }
}

/// Profiles `m`, factoring it within the default budget.
pub fn profile(m: u64) -> Result<ModulusProfile> {
    if m < 15 || m.is_multiple_of(2) {
        return Err(invalid(m, "modulus must be odd with at least two prime factors"));
    }
    let all = factor_u64(m);
    let mut primes = all.clone();
    primes.dedup();
    if primes.len() != all.len() {
        return Err(invalid(m, "modulus is not squarefree"));
    }
    if primes.len() < 2 {
        return Err(invalid(m, "modulus is prime"));
    }
    if primes.len() > 16 {
        return Err(invalid(m, "too many prime factors"));
    }
    let t = multiplicative_order_u64(2, m) as u32;
    let r = primes.len();
    let mut canonical: Vec<u64> = (1u64..1 << r)
        .map(|sigma| {
            let residues: Vec<u64> = (0..r).map(|i| (sigma >> i) & 1).collect();
            crt(&residues, &primes).expect("distinct primes")
        })
        .collect();
    canonical.sort_unstable();
    Ok(ModulusProfile {
        m,
        primes,
        t,
        canonical,
    })
}

/// The unique `x` in `[0, prod moduli)` with `x = residues[i] mod moduli[i]`.
pub fn crt(residues: &[u64], moduli: &[u64]) -> Result<u64> {
    if residues.len() != moduli.len() {
        return Err(Error::InvalidInput("residue and modulus counts differ".into()));
    }
    let mut x: u128 = 0;
    let mut n: u128 = 1;
    for (r, q) in residues.iter().zip(moduli) {
        let q = *q as u128;
        if q == 0 {
            return Err(Error::InvalidInput("modulus must be positive".into()));
        }
        let g = (n as u64 as u128).gcd(&q);
        if n > u64::MAX as u128 || g != 1 {
            return Err(Error::CrtConflict {
                a: n.to_string(),
                b: q.to_string(),
            });
        }
        // x' = x + n * ((r - x) * n^{-1} mod q)
        let inv = mod_inverse((n % q) as u64, q as u64).expect("coprime") as u128;
        let diff = ((*r as u128 % q) + q - x % q) % q;
        let k = diff * inv % q;
        x += n * k;
        n *= q;
        if n > u64::MAX as u128 {
            return Err(Error::InvalidInput("product of moduli exceeds 64 bits".into()));
        }
    }
    Ok(x as u64)
}

/// Inverse of `a` modulo `n`, if it exists.
pub fn mod_inverse(a: u64, n: u64) -> Option<u64> {
    if n == 1 {
        return Some(0);
    }
    let (mut r0, mut r1) = (n as i128, (a % n) as i128);
    let (mut s0, mut s1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    (r0 == 1).then(|| s0.rem_euclid(n as i128) as u64)
}

/// Partition of `Z_m` into orbits under multiplication by 2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CosetPartition {
    pub m: u64,
    reps: Vec<u64>,
    offsets: Vec<usize>,
    members: Vec<u64>,
}

impl CosetPartition {
    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    /// Smallest element of each coset, ascending.
    pub fn representatives(&self) -> &[u64] {
        &self.reps
    }

    /// Members of the `k`-th coset, ascending.
    pub fn members(&self, k: usize) -> &[u64] {
        &self.members[self.offsets[k]..self.offsets[k + 1]]
    }

    pub fn iter(&self) -> impl Iterator<Item = (u64, &[u64])> {
        (0..self.len()).map(move |k| (self.reps[k], self.members(k)))
    }
}

/// Cyclotomic cosets of 2 modulo an odd `m`, each keyed by its minimum.
pub fn cyclotomic_cosets(m: u64) -> Result<CosetPartition> {
    if m.is_multiple_of(2) {
        return Err(invalid(m, "cyclotomic cosets of 2 need an odd modulus"));
    }
    if m > u32::MAX as u64 {
        return Err(Error::BudgetExceeded(format!("coset table for m = {m}")));
    }
    let mut seen = vec![false; m as usize];
    let mut reps = Vec::new();
    let mut offsets = vec![0];
    let mut members = Vec::with_capacity(m as usize);
    for s in 0..m {
        if seen[s as usize] {
            continue;
        }
        let start = members.len();
        let mut x = s;
        loop {
            seen[x as usize] = true;
            members.push(x);
            x = (2 * x) % m;
            if x == s {
                break;
            }
        }
        members[start..].sort_unstable();
        reps.push(s);
        offsets.push(members.len());
    }
    Ok(CosetPartition {
        m,
        reps,
        offsets,
        members,
    })
}

/// Whether `alpha` is the smallest element of its cyclotomic coset; `t` is
/// the order of 2 modulo `m`.
pub fn is_coset_minimum(alpha: u64, m: u64, t: u32) -> bool {
    let mut x = alpha;
    for _ in 1..t {
        x = ((x as u128 * 2) % m as u128) as u64;
        if x < alpha {
            return false;
        }
        if x == alpha {
            break;
        }
    }
    true
}

/// First pair of moduli sharing a factor, with their gcd.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SharedFactor {
    pub a: String,
    pub b: String,
    pub gcd: String,
}

/// `None` when the moduli are pairwise coprime, otherwise the first
/// offending pair in input order.
pub fn pairwise_coprime(ms: &[BigUint]) -> Option<SharedFactor> {
    for (i, a) in ms.iter().enumerate() {
        for b in &ms[i + 1..] {
            let g = a.gcd(b);
            if g != BigUint::from(1u32) {
                return Some(SharedFactor {
                    a: a.to_string(),
                    b: b.to_string(),
                    gcd: g.to_string(),
                });
            }
        }
    }
    None
}

/// Serde helper writing big integers as decimal strings.
pub(crate) mod decimal {
    use num_bigint::BigUint;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigUint, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Serde helper writing `u64` as a decimal string.
pub(crate) mod decimal_u64 {
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &u64, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<u64, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
