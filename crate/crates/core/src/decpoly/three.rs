// Copyright 2026 The ldcforge Authors
//
// Licensed under the Apache License, Version 2.0 (see
// LICENSE or https://www.apache.org/licenses/LICENSE-2.0).
// This file may not be copied, modified, or distributed
// except according to those terms.

//! Three-term decoding polynomials `X^u + a X^v + b` for `m = p q`.

use num_integer::Integer;

use super::cert::{M2Certificate, MemberWitness, Verdict};
use super::poly::DecodingPolynomial;
use crate::algebra::gf2x::Limbs;
use crate::algebra::{FieldElement, FieldSpec};
use crate::error::{Error, Result};
use crate::modulus::{self, ModulusProfile};

/// Shared state for work over `m = p q`: the field GF(2^t), its canonical
/// primitive `m`-th root `gamma`, and the residues `s01`, `s10`.
#[derive(Debug, Clone)]
pub struct TwoPrimeContext {
    pub profile: ModulusProfile,
    pub field: FieldSpec,
    pub gamma: FieldElement,
    pub s01: u64,
    pub s10: u64,
}

impl TwoPrimeContext {
    pub fn new(m: u64) -> Result<Self> {
        let profile = modulus::profile(m)?;
        Self::from_profile(profile)
    }

    pub fn from_profile(profile: ModulusProfile) -> Result<Self> {
        let (s01, s10) = profile.s01_s10()?;
        let field = FieldSpec::new(profile.t)?;
        let gamma = field.primitive_root(profile.m)?;
        Ok(TwoPrimeContext {
            profile,
            field,
            gamma,
            s01,
            s10,
        })
    }

    pub fn m(&self) -> u64 {
        self.profile.m
    }

    pub fn t(&self) -> u32 {
        self.profile.t
    }

    #[inline]
    pub(crate) fn gamma_pow(&self, e: u64) -> Limbs {
        let m = self.m();
        self.field.pow_u64_raw(self.gamma.raw(), e % m)
    }

    #[inline]
    pub(crate) fn mulmod(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.m() as u128) as u64
    }

    /// Numerator and denominator of the coset ratio at `alpha`:
    /// `(gamma^alpha + gamma^(alpha s01), gamma^alpha + gamma^(alpha s10))`.
    pub(crate) fn ratio_parts(&self, alpha: u64) -> (Limbs, Limbs) {
        let g = self.gamma_pow(alpha);
        let g01 = self.gamma_pow(self.mulmod(alpha, self.s01));
        let g10 = self.gamma_pow(self.mulmod(alpha, self.s10));
        (self.field.add_raw(&g, &g01), self.field.add_raw(&g, &g10))
    }

    /// `2^c * alpha mod m`.
    pub fn shift(&self, alpha: u64, c: u32) -> u64 {
        let m = self.m();
        let two_c = crate::modulus::factor::powmod_u64(2, c as u64, m);
        self.mulmod(alpha, two_c)
    }

    /// Solves `gamma^(u s) + a gamma^(v s) + b = 0` for `s` in `{s01, s10}`,
    /// checks the equation for `s = 1`, and requires `a`, `b` and `1 + a + b`
    /// to be nonzero.
    pub fn solve(&self, u: u64, v: u64) -> Result<(FieldElement, FieldElement)> {
        let f = &self.field;
        let u01 = self.gamma_pow(self.mulmod(u, self.s01));
        let u10 = self.gamma_pow(self.mulmod(u, self.s10));
        let v01 = self.gamma_pow(self.mulmod(v, self.s01));
        let v10 = self.gamma_pow(self.mulmod(v, self.s10));
        let den = f.add_raw(&v01, &v10);
        if crate::algebra::gf2x::is_zero(&den) {
            return Err(Error::CertificateInconsistent(format!(
                "rows s01 and s10 are dependent for v = {v}"
            )));
        }
        let a = f.mul_raw(&f.add_raw(&u01, &u10), &f.inv_raw(&den));
        let b = f.add_raw(&u01, &f.mul_raw(&a, &v01));
        let row1 = f.add_raw(&f.add_raw(&self.gamma_pow(u), &f.mul_raw(&a, &self.gamma_pow(v))), &b);
        let wrap = |x: Limbs| FieldElement::from_raw(f.clone(), x);
        let (a, b) = (wrap(a), wrap(b));
        if !crate::algebra::gf2x::is_zero(&row1) {
            return Err(Error::CertificateInconsistent(format!(
                "system is inconsistent for (u, v) = ({u}, {v})"
            )));
        }
        if a.is_zero() || b.is_zero() {
            return Err(Error::CertificateInconsistent(format!(
                "degenerate solution for (u, v) = ({u}, {v})"
            )));
        }
        if (&(&f.one() + &a) + &b).is_zero() {
            return Err(Error::CertificateInconsistent(format!(
                "1 + a + b vanishes for (u, v) = ({u}, {v})"
            )));
        }
        Ok((a, b))
    }

    /// `(X^u + a X^v + b) / (1 + a + b)`, verified.
    pub fn three_monomial(&self, u: u64, v: u64, a: &FieldElement, b: &FieldElement) -> Result<DecodingPolynomial> {
        let one = self.field.one();
        let p = DecodingPolynomial::from_terms(
            self.m(),
            self.gamma.clone(),
            [(u, one.clone()), (v, a.clone()), (0, b.clone())],
        )?;
        let p = p.scaled(&(&(&one + a) + b))?;
        if p.k() != 3 || !p.verify() {
            return Err(Error::CertificateInconsistent(format!(
                "polynomial built from (u, v) = ({u}, {v}) does not decode"
            )));
        }
        Ok(p)
    }

    pub(crate) fn member_witness(&self, alpha: u64, c: u32, beta: u64, d: u32) -> Result<MemberWitness> {
        let u = self.shift(alpha, c);
        let v = self.shift(beta, d);
        let (a, b) = self.solve(u, v)?;
        let poly = self.three_monomial(u, v, &a, &b)?;
        Ok(MemberWitness {
            alpha,
            c,
            beta,
            d,
            u,
            v,
            a,
            b,
            poly,
        })
    }
}

/// `R_alpha = (gamma^alpha + gamma^(alpha s01)) / (gamma^alpha + gamma^(alpha s10))`.
///
/// `gamma` must have order `m`; `alpha` must share no factor with `m`.
pub fn coset_ratio(profile: &ModulusProfile, gamma: &FieldElement, alpha: u64) -> Result<FieldElement> {
    let (s01, s10) = profile.s01_s10()?;
    let m = profile.m;
    if alpha.is_multiple_of(m) || alpha.gcd(&m) != 1 {
        return Err(Error::ForbiddenCoset { m, alpha });
    }
    let mm = |a: u64, b: u64| ((a as u128 * b as u128) % m as u128) as u64;
    let g = gamma.pow_u64(alpha % m);
    let num = &g + &gamma.pow_u64(mm(alpha, s01));
    let den = &g + &gamma.pow_u64(mm(alpha, s10));
    if num.is_zero() || den.is_zero() {
        return Err(Error::InternalError(format!(
            "coset ratio at {alpha} has a vanishing part; gamma does not have order {m}"
        )));
    }
    num.try_div(&den)
}

/// Rebuilds the three-term polynomial recorded in a member certificate from
/// its coset data alone.
pub fn build_three_monomial(cert: &M2Certificate) -> Result<DecodingPolynomial> {
    let w = match (&cert.verdict, &cert.witness) {
        (Verdict::Member, Some(w)) => w,
        _ => {
            return Err(Error::CertificateInconsistent(
                "certificate does not claim membership".into(),
            ))
        }
    };
    let ctx = TwoPrimeContext::new(cert.m)?;
    let u = ctx.shift(w.alpha, w.c);
    let v = ctx.shift(w.beta, w.d);
    if (u, v) != (w.u, w.v) {
        return Err(Error::CertificateInconsistent(format!(
            "recorded exponents ({}, {}) differ from recomputed ({u}, {v})",
            w.u, w.v
        )));
    }
    if (w.alpha, w.c) == (w.beta, w.d) {
        return Err(Error::CertificateInconsistent("the two coset shifts coincide".into()));
    }
    for x in [w.alpha, w.beta] {
        if x.gcd(&cert.m) != 1 {
            return Err(Error::ForbiddenCoset { m: cert.m, alpha: x });
        }
    }
    let (a, b) = ctx.solve(u, v)?;
    ctx.three_monomial(u, v, &a, &b)
}
