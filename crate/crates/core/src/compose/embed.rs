// Copyright 2026 The ldcforge Authors
//
// Licensed under the Apache License, Version 2.0 (see
// LICENSE or https://www.apache.org/licenses/LICENSE-2.0).
// This file may not be copied, modified, or distributed
// except according to those terms.

//! Embeddings of GF(2^s) into GF(2^t) for `s | t`, and discrete logarithms
//! in cyclic subgroups.

use std::collections::HashMap;

use num_bigint::BigUint;
use num_traits::One;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::gf2x::Limbs;
use crate::algebra::{FieldElement, FieldSpec};
use crate::error::{Error, Result};
use crate::modulus::factor::distinct_prime_factors_u64;

/// Largest subfield degree searched without a known generator.
pub const MAX_SEARCH_SUBFIELD: u32 = 24;
/// Largest cyclic group handled by [`discrete_log`].
pub const MAX_DLOG_ORDER: u64 = 1 << 44;

/// A field homomorphism `small -> big`, fixed by the image of `x`.
#[derive(Debug, Clone)]
pub struct Embedding {
    big: FieldSpec,
    small: FieldSpec,
    /// `theta^i` for `i < small.t()`.
    powers: Vec<Limbs>,
}

impl Embedding {
    pub fn image_of_x(&self) -> FieldElement {
        let raw = if self.powers.len() > 1 {
            self.powers[1].clone()
        } else {
            self.big.one_raw()
        };
        FieldElement::from_raw(self.big.clone(), raw)
    }

    pub fn map(&self, a: &FieldElement) -> Result<FieldElement> {
        if a.field() != &self.small {
            return Err(Error::FieldMismatch);
        }
        let mut acc = self.big.zero_raw();
        for (i, p) in self.powers.iter().enumerate() {
            if a.bit(i) {
                acc = self.big.add_raw(&acc, p);
            }
        }
        Ok(FieldElement::from_raw(self.big.clone(), acc))
    }
}

fn modulus_at(small: &FieldSpec, big: &FieldSpec, z: &[u64]) -> Limbs {
    small.modulus_exponents().iter().fold(big.zero_raw(), |acc, e| {
        big.add_raw(&acc, &big.pow_u64_raw(z, *e as u64))
    })
}

/// An element of order exactly `2^s - 1` in `big`, drawn deterministically.
fn subfield_generator(big: &FieldSpec, s: u32) -> Result<Limbs> {
    let n = (1u64 << s) - 1;
    let cofactor = (BigUint::one() << big.t()) - 1u32;
    let cofactor = cofactor / n;
    let primes = distinct_prime_factors_u64(n);
    let one = big.one_raw();
    let mut rng = ChaCha8Rng::seed_from_u64(u64::from(s));
    for _ in 0..256 {
        let z = big.random_nonzero(&mut rng);
        let w = big.pow_big_raw(z.raw(), &cofactor);
        if primes.iter().all(|p| big.pow_u64_raw(&w, n / p) != one) {
            return Ok(w);
        }
    }
    Err(Error::InternalError(format!("no generator of GF(2^{s})* found")))
}

/// Embeds `small` into `big` by locating a root of the modulus of `small`.
/// `generator`, if given, must generate the multiplicative group of the
/// copy of `small` inside `big`.
pub fn embedding(small: &FieldSpec, big: &FieldSpec, generator: Option<&FieldElement>) -> Result<Embedding> {
    let s = small.t();
    if !big.t().is_multiple_of(s) {
        return Err(Error::RepresentationUnsupported(format!(
            "GF(2^{s}) is not a subfield of GF(2^{})",
            big.t()
        )));
    }
    let w = match generator {
        Some(g) => g.raw().clone(),
        None if s <= MAX_SEARCH_SUBFIELD => subfield_generator(big, s)?,
        None => {
            return Err(Error::RepresentationUnsupported(format!(
                "root search in GF(2^{s}) needs a known generator"
            )))
        }
    };
    let order = if s >= 64 { u64::MAX } else { (1u64 << s) - 1 };
    let mut z = w.clone();
    let mut found = None;
    for _ in 0..order {
        if crate::algebra::gf2x::is_zero(&modulus_at(small, big, &z)) {
            found = Some(z);
            break;
        }
        z = big.mul_raw(&z, &w);
    }
    let theta = found.ok_or_else(|| Error::InternalError("modulus has no root in the subfield".into()))?;
    let mut powers = Vec::with_capacity(s as usize);
    let mut p = big.one_raw();
    for _ in 0..s {
        powers.push(p.clone());
        p = big.mul_raw(&p, &theta);
    }
    Ok(Embedding {
        big: big.clone(),
        small: small.clone(),
        powers,
    })
}

/// The `e` in `[0, n)` with `g^e = y`, where `g` has order `n`.
pub fn discrete_log(g: &FieldElement, y: &FieldElement, n: u64) -> Result<Option<u64>> {
    if n > MAX_DLOG_ORDER {
        return Err(Error::RepresentationUnsupported(format!(
            "discrete log in a group of order {n}"
        )));
    }
    let f = g.field();
    let s = (n as f64).sqrt().ceil() as u64 + 1;
    let mut table: HashMap<Limbs, u64> = HashMap::with_capacity(s as usize);
    let mut cur = f.one_raw();
    for j in 0..s {
        table.entry(cur.clone()).or_insert(j);
        cur = f.mul_raw(&cur, g.raw());
    }
    let step = f.inv_raw(&f.pow_u64_raw(g.raw(), s));
    let mut z = y.raw().clone();
    for i in 0..=s {
        if let Some(j) = table.get(&z) {
            let e = (i * s + j) % n;
            return Ok(Some(e));
        }
        z = f.mul_raw(&z, &step);
    }
    Ok(None)
}
