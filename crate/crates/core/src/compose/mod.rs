// Copyright 2026 The ldcforge Authors
//
// Licensed under the Apache License, Version 2.0 (see
// LICENSE or https://www.apache.org/licenses/LICENSE-2.0).
// This file may not be copied, modified, or distributed
// except according to those terms.

//! Products of decoding polynomials over coprime moduli, and query budgets
//! for codes assembled from such products.

mod embed;
mod plan;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::algebra::{FieldElement, FieldSpec};
use crate::decpoly::DecodingPolynomial;
use crate::error::{Error, Result};
use crate::modulus::{self, multiplicative_order_u64};

pub use embed::{discrete_log, embedding, Embedding, MAX_DLOG_ORDER, MAX_SEARCH_SUBFIELD};
pub use plan::{plan_queries, Block, BlockKind, Inventory, QueryPlan, MEMBER_QUERIES};

/// How two polynomials were carried into the composite field: with
/// `gamma` the chosen root of order `m1 m2`, `gamma^(mu m2)` is the image
/// of the left root and `gamma^(nu m1)` the image of the right one.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompositionPlan {
    pub m1: u64,
    pub m2: u64,
    pub t1: u32,
    pub t2: u32,
    pub t: u32,
    pub mu: u64,
    pub nu: u64,
    pub left: DecodingPolynomial,
    pub right: DecodingPolynomial,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Composition {
    pub plan: CompositionPlan,
    /// `k1 k2`, the most terms the product can have.
    pub k_bound: usize,
    pub poly: DecodingPolynomial,
}

/// One factor moved into the big field: exponents scaled by `scale` and
/// coefficients mapped through an embedding.
fn transport(
    p: &DecodingPolynomial,
    big: &FieldSpec,
    sub_root: &FieldElement,
    m: u64,
) -> Result<(u64, Vec<(u64, FieldElement)>)> {
    let mi = p.m();
    let cofactor = m / mi;
    // sub_root generates the copy of the small field's group when it is full
    let full = p.field().t() < 64 && (1u64 << p.field().t()) - 1 == mi;
    let emb = embedding(p.field(), big, full.then_some(sub_root))?;
    let image = emb.map(p.root())?;
    let mu = discrete_log(sub_root, &image, mi)?.ok_or_else(|| {
        Error::RepresentationUnsupported(format!(
            "image of the root of order {mi} is not a power of gamma^{cofactor}"
        ))
    })?;
    let scale = ((mu as u128 * cofactor as u128) % m as u128) as u64;
    let terms = p
        .terms()
        .iter()
        .map(|t| {
            let e = ((t.exp as u128 * scale as u128) % m as u128) as u64;
            Ok((e, emb.map(&t.coef)?))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((mu, terms))
}

/// `P(X) = P1(X^(mu m2)) P2(X^(nu m1))` over `m = m1 m2`, verified before
/// it is returned.
pub fn compose_detailed(p1: &DecodingPolynomial, p2: &DecodingPolynomial) -> Result<Composition> {
    let (m1, m2) = (p1.m(), p2.m());
    if m1.gcd(&m2) != 1 {
        return Err(Error::CrtConflict {
            a: m1.to_string(),
            b: m2.to_string(),
        });
    }
    for p in [p1, p2] {
        if let Some(v) = p.violation() {
            return Err(Error::InvalidInput(format!(
                "input over m = {} does not decode: {v:?}",
                p.m()
            )));
        }
    }
    let m = m1
        .checked_mul(m2)
        .ok_or_else(|| Error::InvalidInput(format!("{m1} * {m2} overflows")))?;
    let profile = modulus::profile(m)?;
    let t = profile.t;
    let big = FieldSpec::new(t)?;
    let gamma = big.primitive_root(m)?;

    let (mu, left) = transport(p1, &big, &gamma.pow_u64(m2), m)?;
    let (nu, right) = transport(p2, &big, &gamma.pow_u64(m1), m)?;
    let product = left.iter().flat_map(|(e1, c1)| {
        right
            .iter()
            .map(move |(e2, c2)| (((*e1 as u128 + *e2 as u128) % m as u128) as u64, c1 * c2))
    });
    let poly = DecodingPolynomial::from_terms(m, gamma, product)?;
    if !poly.verify() {
        return Err(Error::CompositionInvalid);
    }
    Ok(Composition {
        plan: CompositionPlan {
            m1,
            m2,
            t1: multiplicative_order_u64(2, m1) as u32,
            t2: multiplicative_order_u64(2, m2) as u32,
            t,
            mu,
            nu,
            left: p1.clone(),
            right: p2.clone(),
        },
        k_bound: p1.k() * p2.k(),
        poly,
    })
}

pub fn compose(p1: &DecodingPolynomial, p2: &DecodingPolynomial) -> Result<DecodingPolynomial> {
    compose_detailed(p1, p2).map(|c| c.poly)
}
