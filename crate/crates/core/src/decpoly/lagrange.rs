// Copyright 2026 The ldcforge Authors
//
// Licensed under the Apache License, Version 2.0 (see
// LICENSE or https://www.apache.org/licenses/LICENSE-2.0).
// This file may not be copied, modified, or distributed
// except according to those terms.

use super::poly::DecodingPolynomial;
use crate::algebra::{FieldElement, FieldSpec};
use crate::error::{Error, Result};
use crate::modulus::{self, ModulusProfile};

/// Largest number of prime factors accepted by [`lagrange_polynomial`].
pub const LAGRANGE_MAX_PRIMES: usize = 6;

/// The interpolating polynomial of degree below `2^r` that vanishes at
/// `gamma^s` for every canonical `s` and equals 1 at 1.
pub fn lagrange_polynomial(m: u64) -> Result<DecodingPolynomial> {
    let profile = modulus::profile(m)?;
    let field = FieldSpec::new(profile.t)?;
    let gamma = field.primitive_root(m)?;
    lagrange_in(&profile, &gamma)
}

/// Interpolation against a caller-chosen primitive `m`-th root.
pub fn lagrange_in(profile: &ModulusProfile, gamma: &FieldElement) -> Result<DecodingPolynomial> {
    if profile.r() > LAGRANGE_MAX_PRIMES {
        return Err(Error::BudgetExceeded(format!(
            "interpolation with 2^{} points",
            profile.r()
        )));
    }
    let field = gamma.field();
    // coefficients of prod (X - gamma^s), lowest degree first
    let mut coeffs = vec![field.one()];
    for s in &profile.canonical {
        let z = gamma.pow_u64(*s);
        let mut next = vec![field.zero(); coeffs.len() + 1];
        for (i, c) in coeffs.iter().enumerate() {
            next[i + 1] = &next[i + 1] + c;
            next[i] = &next[i] + &(c * &z);
        }
        coeffs = next;
    }
    let at_one = coeffs.iter().fold(field.zero(), |acc, c| &acc + c);
    let p = DecodingPolynomial::from_terms(
        profile.m,
        gamma.clone(),
        coeffs.into_iter().enumerate().map(|(i, c)| (i as u64, c)),
    )?
    .scaled(&at_one)?;
    if !p.verify() {
        return Err(Error::InternalError(format!(
            "interpolated polynomial for m = {} does not decode",
            profile.m
        )));
    }
    Ok(p)
}
