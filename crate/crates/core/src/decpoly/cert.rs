// Copyright 2026 The ldcforge Authors
//
// Licensed under the Apache License, Version 2.0 (see
// LICENSE or https://www.apache.org/licenses/LICENSE-2.0).
// This file may not be copied, modified, or distributed
// except according to those terms.

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::poly::DecodingPolynomial;
use crate::algebra::{FieldElement, FieldSpec};
use crate::modulus::decimal_u64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Member,
    NonMember,
    Unknown,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SearchMethod {
    Collision,
    BruteForce,
}

/// Coset data and the solved three-term polynomial behind a membership claim.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MemberWitness {
    pub alpha: u64,
    pub c: u32,
    pub beta: u64,
    pub d: u32,
    /// `2^c alpha mod m`.
    pub u: u64,
    /// `2^d beta mod m`.
    pub v: u64,
    pub a: FieldElement,
    pub b: FieldElement,
    pub poly: DecodingPolynomial,
}

/// What an exhaustive search covered before concluding non-membership.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Exhaustion {
    /// Coset representatives (collision search) or ordered pairs (brute
    /// force) examined.
    pub examined: u64,
    /// Distinct orbit keys or projective classes encountered.
    pub classes: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BudgetReport {
    pub examined: u64,
    pub elapsed_ms: u64,
    pub reason: String,
}

/// Outcome of deciding whether `m = p q` admits a three-term decoding
/// polynomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct M2Certificate {
    pub m: u64,
    pub t: u32,
    pub field: FieldSpec,
    pub method: SearchMethod,
    pub verdict: Verdict,
    pub witness: Option<MemberWitness>,
    pub exhaustion: Option<Exhaustion>,
    pub budget: Option<BudgetReport>,
}

impl M2Certificate {
    pub fn is_member(&self) -> bool {
        self.verdict == Verdict::Member
    }

    pub fn polynomial(&self) -> Option<&DecodingPolynomial> {
        self.witness.as_ref().map(|w| &w.poly)
    }
}

#[derive(Serialize, Deserialize)]
struct CertJson {
    #[serde(with = "decimal_u64")]
    m: u64,
    verdict: Verdict,
    method: SearchMethod,
    t: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    alpha: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    c: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    beta: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    d: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    u: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    v: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    a_hex: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    b_hex: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    poly: Option<DecodingPolynomial>,
    field: FieldSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    exhaustion: Option<Exhaustion>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    budget: Option<BudgetReport>,
}

impl Serialize for M2Certificate {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let w = self.witness.as_ref();
        CertJson {
            m: self.m,
            verdict: self.verdict,
            method: self.method,
            t: self.t,
            alpha: w.map(|w| w.alpha),
            c: w.map(|w| w.c),
            beta: w.map(|w| w.beta),
            d: w.map(|w| w.d),
            u: w.map(|w| w.u),
            v: w.map(|w| w.v),
            a_hex: w.map(|w| w.a.to_hex()),
            b_hex: w.map(|w| w.b.to_hex()),
            poly: w.map(|w| w.poly.clone()),
            field: self.field.clone(),
            exhaustion: self.exhaustion.clone(),
            budget: self.budget.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for M2Certificate {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error as _;
        let j = CertJson::deserialize(d)?;
        let witness = match j.verdict {
            Verdict::Member => {
                let missing = |k: &str| D::Error::custom(format!("member certificate lacks {k}"));
                let elem = |h: Option<String>, k: &str| -> Result<FieldElement, D::Error> {
                    let h = h.ok_or_else(|| missing(k))?;
                    j.field.element_from_hex(&h).map_err(D::Error::custom)
                };
                Some(MemberWitness {
                    alpha: j.alpha.ok_or_else(|| missing("alpha"))?,
                    c: j.c.ok_or_else(|| missing("c"))?,
                    beta: j.beta.ok_or_else(|| missing("beta"))?,
                    d: j.d.ok_or_else(|| missing("d"))?,
                    u: j.u.ok_or_else(|| missing("u"))?,
                    v: j.v.ok_or_else(|| missing("v"))?,
                    a: elem(j.a_hex, "a_hex")?,
                    b: elem(j.b_hex, "b_hex")?,
                    poly: j.poly.ok_or_else(|| missing("poly"))?,
                })
            }
            _ => None,
        };
        Ok(M2Certificate {
            m: j.m,
            t: j.t,
            field: j.field,
            method: j.method,
            verdict: j.verdict,
            witness,
            exhaustion: j.exhaustion,
            budget: j.budget,
        })
    }
}
