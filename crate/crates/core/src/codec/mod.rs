// Copyright 2026 The ldcforge Authors
//
// Licensed under the Apache License, Version 2.0 (see
// LICENSE or https://www.apache.org/licenses/LICENSE-2.0).
// This file may not be copied, modified, or distributed
// except according to those terms.

//! Matching vector codes: a message of `n` field elements becomes a word
//! indexed by `Z_m^h`, decodable from `k` uniformly distributed queries.
//!
//! Coordinates and message positions are 0-based. A vector
//! `v = (v_0, …, v_{h-1})` sits at index `v_0 + v_1 m + … + v_{h-1} m^{h-1}`.

mod channel;
mod file;

use std::sync::Arc;

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::algebra::gf2x::Limbs;
use crate::algebra::{FieldElement, FieldSpec};
use crate::decpoly::DecodingPolynomial;
use crate::error::{Error, Result};
use crate::matchfam::MatchingFamily;
use crate::modulus::{self, ModulusProfile};

pub use channel::{
    corrupt, smoothness_audit, success_rate, CorruptionPlan, Positions, Replacement, SmoothnessAudit, SuccessReport,
    AUDIT_LIMIT,
};
pub use file::{read_codeword, write_codeword, MAGIC};

/// Largest `m` for which a codeword may be materialized.
pub const MAX_CODE_MODULUS: u64 = 1 << 21;
/// Memory ceiling for a materialized codeword, in bytes.
pub const MAX_CODEWORD_BYTES: u128 = 2 << 30;

/// A matching family paired with a decoding polynomial over the same `m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CodeSpec {
    profile: ModulusProfile,
    family: MatchingFamily,
    poly: DecodingPolynomial,
    len: usize,
}

impl CodeSpec {
    pub fn new(family: MatchingFamily, poly: DecodingPolynomial) -> Result<Self> {
        let m = family.m;
        if poly.m() != m {
            return Err(Error::InvalidInput(format!(
                "family is over Z_{m} but the polynomial is over Z_{}",
                poly.m()
            )));
        }
        if m > MAX_CODE_MODULUS {
            return Err(Error::BudgetExceeded(format!(
                "materialized codes need m <= {MAX_CODE_MODULUS}"
            )));
        }
        let profile = modulus::profile(m)?;
        if family.target_set != profile.canonical {
            return Err(Error::InvalidInput(
                "family target set is not the canonical set of m".into(),
            ));
        }
        if let Some(v) = family.violation() {
            return Err(Error::InvalidInput(format!("not a matching family: {v:?}")));
        }
        if let Some(v) = poly.violation() {
            return Err(Error::InvalidInput(format!("not a decoding polynomial: {v:?}")));
        }
        if poly.constant_term().is_none() {
            return Err(Error::InvalidInput("decoder needs a nonzero constant term".into()));
        }
        if family.n == 0 {
            return Err(Error::InvalidInput("family is empty".into()));
        }
        let len = (m as u128)
            .checked_pow(family.h as u32)
            .filter(|n| n * poly.field().element_bytes() as u128 <= MAX_CODEWORD_BYTES)
            .ok_or_else(|| {
                Error::BudgetExceeded(format!(
                    "codeword of length {m}^{} exceeds {MAX_CODEWORD_BYTES} bytes",
                    family.h
                ))
            })?;
        Ok(CodeSpec {
            profile,
            family,
            poly,
            len: len as usize,
        })
    }

    pub fn m(&self) -> u64 {
        self.family.m
    }

    pub fn h(&self) -> usize {
        self.family.h
    }

    /// Message length.
    pub fn n(&self) -> usize {
        self.family.n
    }

    /// Codeword length `m^h`.
    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Query complexity, the number of terms of the polynomial.
    pub fn k(&self) -> usize {
        self.poly.k()
    }

    pub fn field(&self) -> &FieldSpec {
        self.poly.field()
    }

    pub fn gamma(&self) -> &FieldElement {
        self.poly.root()
    }

    pub fn profile(&self) -> &ModulusProfile {
        &self.profile
    }

    pub fn family(&self) -> &MatchingFamily {
        &self.family
    }

    pub fn poly(&self) -> &DecodingPolynomial {
        &self.poly
    }

    pub fn index_of(&self, v: &[u64]) -> Result<usize> {
        if v.len() != self.h() || v.iter().any(|x| *x >= self.m()) {
            return Err(Error::InvalidInput(format!(
                "{v:?} is not in Z_{}^{}",
                self.m(),
                self.h()
            )));
        }
        Ok(v.iter()
            .rev()
            .fold(0usize, |acc, x| acc * self.m() as usize + *x as usize))
    }

    pub fn vector_at(&self, index: usize) -> Result<Vec<u64>> {
        if index >= self.len {
            return Err(Error::IndexOutOfRange { index, bound: self.len });
        }
        let m = self.m() as usize;
        let mut rest = index;
        Ok((0..self.h())
            .map(|_| {
                let d = rest % m;
                rest /= m;
                d as u64
            })
            .collect())
    }

    fn check_position(&self, i: usize) -> Result<()> {
        if i >= self.n() {
            return Err(Error::IndexOutOfRange {
                index: i,
                bound: self.n(),
            });
        }
        Ok(())
    }

    /// The `k` query indices for position `i` and randomness `v`: `v`
    /// itself, then `v + b u_i` for each nonconstant exponent `b`.
    pub fn queries(&self, i: usize, v: &[u64]) -> Result<Vec<usize>> {
        self.check_position(i)?;
        self.index_of(v)?;
        let m = self.m() as u128;
        let u = &self.family.vectors[i];
        Ok(self
            .poly
            .terms()
            .iter()
            .map(|t| {
                let w: Vec<u64> = v
                    .iter()
                    .zip(u)
                    .map(|(a, b)| ((*a as u128 + t.exp as u128 * *b as u128) % m) as u64)
                    .collect();
                self.index_of(&w).expect("reduced vector")
            })
            .collect())
    }

    /// `gamma^(-<u_i, v>) * sum_l a_l y_l`, with answers in query order.
    pub fn combine(&self, i: usize, v: &[u64], answers: &[FieldElement]) -> Result<FieldElement> {
        self.check_position(i)?;
        if answers.len() != self.k() {
            return Err(Error::InvalidInput(format!(
                "expected {} answers, got {}",
                self.k(),
                answers.len()
            )));
        }
        let mut acc = self.field().zero();
        for (t, y) in self.poly.terms().iter().zip(answers) {
            acc = &acc + &t.coef.try_mul(y)?;
        }
        let ip = crate::matchfam::dot(&self.family.vectors[i], v, self.m());
        let back = self.gamma().pow_u64((self.m() - ip) % self.m());
        Ok(&acc * &back)
    }
}

#[derive(Serialize, Deserialize)]
struct SpecJson {
    family: MatchingFamily,
    poly: DecodingPolynomial,
}

impl Serialize for CodeSpec {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        SpecJson {
            family: self.family.clone(),
            poly: self.poly.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for CodeSpec {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let j = SpecJson::deserialize(d)?;
        CodeSpec::new(j.family, j.poly).map_err(D::Error::custom)
    }
}

/// An encoded message: `m^h` field elements in index order.
#[derive(Clone)]
pub struct Codeword {
    spec: Arc<CodeSpec>,
    values: Vec<Limbs>,
}

impl std::fmt::Debug for Codeword {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Codeword")
            .field("m", &self.spec.m())
            .field("h", &self.spec.h())
            .field("len", &self.values.len())
            .finish()
    }
}

impl PartialEq for Codeword {
    fn eq(&self, other: &Self) -> bool {
        self.spec == other.spec && self.values == other.values
    }
}

impl Eq for Codeword {}

impl Codeword {
    pub(crate) fn from_raw(spec: Arc<CodeSpec>, values: Vec<Limbs>) -> Self {
        Codeword { spec, values }
    }

    pub fn spec(&self) -> &Arc<CodeSpec> {
        &self.spec
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn get(&self, index: usize) -> Result<FieldElement> {
        let v = self.values.get(index).ok_or(Error::IndexOutOfRange {
            index,
            bound: self.values.len(),
        })?;
        Ok(FieldElement::from_raw(self.spec.field().clone(), v.clone()))
    }

    pub fn iter(&self) -> impl Iterator<Item = FieldElement> + '_ {
        let f = self.spec.field().clone();
        self.values
            .iter()
            .map(move |v| FieldElement::from_raw(f.clone(), v.clone()))
    }

    pub(crate) fn raw(&self) -> &[Limbs] {
        &self.values
    }

    /// Number of coordinates where the two words differ.
    pub fn hamming_distance(&self, other: &Codeword) -> usize {
        self.values.iter().zip(&other.values).filter(|(a, b)| a != b).count()
    }

    /// Coordinatewise sum of two words of the same code.
    pub fn try_add(&self, other: &Codeword) -> Result<Codeword> {
        if self.spec != other.spec {
            return Err(Error::FieldMismatch);
        }
        let f = self.spec.field();
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| f.add_raw(a, b))
            .collect();
        Ok(Codeword::from_raw(self.spec.clone(), values))
    }
}

/// Index block handled by one encoding task.
const ENCODE_CHUNK: usize = 1 << 14;

/// Encodes `x`: coordinate `v` is `sum_j x_j gamma^<u_j, v>`.
pub fn encode(spec: &Arc<CodeSpec>, x: &[FieldElement]) -> Result<Codeword> {
    if x.len() != spec.n() {
        return Err(Error::MessageLengthMismatch {
            expected: spec.n(),
            got: x.len(),
        });
    }
    if x.iter().any(|e| e.field() != spec.field()) {
        return Err(Error::FieldMismatch);
    }
    let f = spec.field();
    let m = spec.m();
    let h = spec.h();
    let powers = f.power_table_raw(spec.gamma().raw(), m as usize);
    // tables[j][e] = x_j * gamma^e for the nonzero message entries
    let active: Vec<usize> = (0..x.len()).filter(|j| !x[*j].is_zero()).collect();
    let tables: Vec<Vec<Limbs>> = active
        .iter()
        .map(|j| powers.iter().map(|p| f.mul_raw(x[*j].raw(), p)).collect())
        .collect();
    let us: Vec<&Vec<u64>> = active.iter().map(|j| &spec.family.vectors[*j]).collect();

    let mut values = vec![f.zero_raw(); spec.len()];
    values.par_chunks_mut(ENCODE_CHUNK).enumerate().for_each(|(c, out)| {
        let start = c * ENCODE_CHUNK;
        let mut v = spec.vector_at(start).expect("chunk start is in range");
        let mut ip: Vec<u64> = us.iter().map(|u| crate::matchfam::dot(u, &v, m)).collect();
        for slot in out.iter_mut() {
            let mut acc = f.zero_raw();
            for (t, e) in tables.iter().zip(&ip) {
                acc = f.add_raw(&acc, &t[*e as usize]);
            }
            *slot = acc;
            // mixed-radix increment; each touched coordinate adds u_j[d]
            for d in 0..h {
                v[d] += 1;
                for (e, u) in ip.iter_mut().zip(&us) {
                    *e = ((*e as u128 + u[d] as u128) % m as u128) as u64;
                }
                if v[d] < m {
                    break;
                }
                v[d] = 0;
            }
        }
    });
    Ok(Codeword::from_raw(spec.clone(), values))
}

/// Decodes position `i` from the `k` queries determined by `v`. All
/// queries are issued before any answer is combined.
pub fn local_decode_at(
    spec: &CodeSpec,
    oracle: impl FnMut(usize) -> FieldElement,
    i: usize,
    v: &[u64],
) -> Result<FieldElement> {
    let queries = spec.queries(i, v)?;
    let answers: Vec<FieldElement> = queries.into_iter().map(oracle).collect();
    spec.combine(i, v, &answers)
}

/// Draws `v` uniformly from `Z_m^h` and decodes position `i`.
pub fn local_decode<R: Rng + ?Sized>(
    spec: &CodeSpec,
    oracle: impl FnMut(usize) -> FieldElement,
    i: usize,
    rng: &mut R,
) -> Result<FieldElement> {
    spec.check_position(i)?;
    let v = random_vector(spec, rng);
    local_decode_at(spec, oracle, i, &v)
}

/// A uniform element of `Z_m^h`.
pub fn random_vector<R: Rng + ?Sized>(spec: &CodeSpec, rng: &mut R) -> Vec<u64> {
    (0..spec.h()).map(|_| rng.gen_range(0..spec.m())).collect()
}

#[cfg(test)]
#[allow(clippy::needless_range_loop)]
mod tests;
