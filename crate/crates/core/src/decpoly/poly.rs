// Copyright 2026 The ldcforge Authors
//
// Licensed under the Apache License, Version 2.0 (see
// LICENSE or https://www.apache.org/licenses/LICENSE-2.0).
// This file may not be copied, modified, or distributed
// except according to those terms.

use std::collections::BTreeMap;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::algebra::{FieldElement, FieldSpec};
use crate::error::{Error, Result};
use crate::modulus::{self, decimal_u64, ModulusProfile};

/// One monomial `coef * X^exp`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Term {
    pub exp: u64,
    pub coef: FieldElement,
}

/// A sparse polynomial over GF(2^t) together with the modulus `m` and the
/// primitive `m`-th root of unity it is evaluated against.
///
/// Terms are kept with exponents reduced modulo `m`, strictly increasing,
/// and nonzero coefficients. Whether the polynomial actually decodes is
/// checked by [`DecodingPolynomial::verify`]; every constructor in this
/// crate verifies before returning.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecodingPolynomial {
    m: u64,
    root: FieldElement,
    terms: Vec<Term>,
}

impl DecodingPolynomial {
    /// Collects terms, reducing exponents modulo `m` and merging equal ones.
    pub fn from_terms(
        m: u64,
        root: FieldElement,
        terms: impl IntoIterator<Item = (u64, FieldElement)>,
    ) -> Result<Self> {
        if m < 2 {
            return Err(Error::InvalidInput("modulus must exceed 1".into()));
        }
        let mut merged: BTreeMap<u64, FieldElement> = BTreeMap::new();
        for (e, c) in terms {
            if c.field() != root.field() {
                return Err(Error::FieldMismatch);
            }
            let e = e % m;
            match merged.get_mut(&e) {
                Some(acc) => *acc = &*acc + &c,
                None => {
                    merged.insert(e, c);
                }
            }
        }
        let terms = merged
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(exp, coef)| Term { exp, coef })
            .collect();
        Ok(DecodingPolynomial { m, root, terms })
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    pub fn field(&self) -> &FieldSpec {
        self.root.field()
    }

    /// The primitive `m`-th root of unity `gamma`.
    pub fn root(&self) -> &FieldElement {
        &self.root
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    /// Number of monomials, which is the query complexity of the code.
    pub fn k(&self) -> usize {
        self.terms.len()
    }

    pub fn constant_term(&self) -> Option<&FieldElement> {
        self.terms.first().filter(|t| t.exp == 0).map(|t| &t.coef)
    }

    /// `P(x)` for an arbitrary field element.
    pub fn evaluate(&self, x: &FieldElement) -> FieldElement {
        self.terms
            .iter()
            .fold(self.field().zero(), |acc, t| &acc + &(&t.coef * &x.pow_u64(t.exp)))
    }

    /// `P(gamma^s)`.
    pub fn evaluate_at_power(&self, s: u64) -> FieldElement {
        let f = self.field();
        let mut acc = f.zero_raw();
        for t in &self.terms {
            let e = ((s as u128 * t.exp as u128) % self.m as u128) as u64;
            let g = f.pow_u64_raw(self.root.raw(), e);
            acc = f.add_raw(&acc, &f.mul_raw(t.coef.raw(), &g));
        }
        FieldElement::from_raw(f.clone(), acc)
    }

    /// First violated condition, or `None` when `P(1) = 1`, `P` vanishes at
    /// `gamma^s` for every canonical `s`, and `gamma` has order exactly `m`.
    pub fn violation(&self) -> Option<Violation> {
        let profile = match modulus::profile(self.m) {
            Ok(p) => p,
            Err(e) => return Some(Violation::Modulus(e.to_string())),
        };
        if !root_has_order(&self.root, &profile) {
            return Some(Violation::RootOrder);
        }
        if !self.evaluate_at_power(0).is_one() {
            return Some(Violation::NotOneAtOne);
        }
        profile
            .canonical
            .iter()
            .find(|s| !self.evaluate_at_power(**s).is_zero())
            .map(|s| Violation::NonzeroAt(*s))
    }

    pub fn verify(&self) -> bool {
        self.violation().is_none()
    }

    /// `P(X) / c` for a nonzero `c`.
    pub(crate) fn scaled(&self, c: &FieldElement) -> Result<Self> {
        let inv = c.inv()?;
        Ok(DecodingPolynomial {
            m: self.m,
            root: self.root.clone(),
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    exp: t.exp,
                    coef: &t.coef * &inv,
                })
                .collect(),
        })
    }
}

pub(crate) fn root_has_order(root: &FieldElement, profile: &ModulusProfile) -> bool {
    root.pow_u64(profile.m).is_one() && profile.primes.iter().all(|p| !root.pow_u64(profile.m / p).is_one())
}

/// Why a polynomial fails to be a decoding polynomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    Modulus(String),
    RootOrder,
    NotOneAtOne,
    NonzeroAt(u64),
}

/// True iff `p` vanishes on every canonical power of its root and `p(1) = 1`.
pub fn verify_decoding_polynomial(p: &DecodingPolynomial) -> bool {
    p.verify()
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    exp: u64,
    coef_hex: String,
}

#[derive(Serialize, Deserialize)]
struct PolyJson {
    #[serde(with = "decimal_u64")]
    m: u64,
    field: FieldSpec,
    root_hex: String,
    k: usize,
    terms: Vec<TermJson>,
}

impl Serialize for DecodingPolynomial {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PolyJson {
            m: self.m,
            field: self.field().clone(),
            root_hex: self.root.to_hex(),
            k: self.k(),
            terms: self
                .terms
                .iter()
                .map(|t| TermJson {
                    exp: t.exp,
                    coef_hex: t.coef.to_hex(),
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for DecodingPolynomial {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let j = PolyJson::deserialize(d)?;
        let root = j.field.element_from_hex(&j.root_hex).map_err(D::Error::custom)?;
        let terms = j
            .terms
            .iter()
            .map(|t| Ok((t.exp, j.field.element_from_hex(&t.coef_hex)?)))
            .collect::<Result<Vec<_>>>()
            .map_err(D::Error::custom)?;
        let p = DecodingPolynomial::from_terms(j.m, root, terms).map_err(D::Error::custom)?;
        if p.k() != j.k {
            return Err(D::Error::custom(format!(
                "polynomial declares {} terms but lists {}",
                j.k,
                p.k()
            )));
        }
        Ok(p)
    }
}
