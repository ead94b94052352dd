// Copyright 2026 The ldcforge Authors
//
// Licensed under the Apache License, Version 2.0 (see
// LICENSE or https://www.apache.org/licenses/LICENSE-2.0).
// This file may not be copied, modified, or distributed
// except according to those terms.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul};
use std::time::Duration;

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::Zero;

use super::gf2x::{self, Limbs};
use super::hex;
use super::FieldSpec;
use crate::error::{Error, Result};
use crate::modulus::factor;

/// Default time allowed for factoring `2^t - 1` in [`FieldElement::order`].
pub const DEFAULT_ORDER_BUDGET: Duration = Duration::from_secs(10);

/// An element of GF(2^t), stored as its coefficient vector in the
/// polynomial basis.
#[derive(Clone)]
pub struct FieldElement {
    field: FieldSpec,
    coeffs: Limbs,
}

impl FieldElement {
    pub(crate) fn from_raw(field: FieldSpec, coeffs: Limbs) -> Self {
        debug_assert_eq!(coeffs.len(), field.words());
        FieldElement { field, coeffs }
    }

    pub(crate) fn raw(&self) -> &Limbs {
        &self.coeffs
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    /// Packed coefficient words, least significant first.
    pub fn words(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        gf2x::is_zero(&self.coeffs)
    }

    pub fn is_one(&self) -> bool {
        gf2x::is_one(&self.coeffs)
    }

    /// Coefficient of `X^i`.
    pub fn bit(&self, i: usize) -> bool {
        i < self.field.t() as usize && (self.coeffs[i / 64] >> (i % 64)) & 1 == 1
    }

    pub fn to_hex(&self) -> String {
        hex::encode_bits(&self.coeffs, self.field.t() as usize)
    }

    /// Little-endian byte form, `ceil(t / 8)` bytes.
    pub fn to_le_bytes(&self) -> Vec<u8> {
        let n = self.field.element_bytes();
        self.coeffs.iter().flat_map(|w| w.to_le_bytes()).take(n).collect()
    }

    fn same_field(&self, other: &FieldElement) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    pub fn try_add(&self, other: &FieldElement) -> Result<FieldElement> {
        self.same_field(other)?;
        Ok(self.wrap(self.field.add_raw(&self.coeffs, &other.coeffs)))
    }

    pub fn try_mul(&self, other: &FieldElement) -> Result<FieldElement> {
        self.same_field(other)?;
        Ok(self.wrap(self.field.mul_raw(&self.coeffs, &other.coeffs)))
    }

    pub fn try_div(&self, other: &FieldElement) -> Result<FieldElement> {
        self.same_field(other)?;
        let inv = other.inv()?;
        Ok(self.wrap(self.field.mul_raw(&self.coeffs, &inv.coeffs)))
    }

    pub fn square(&self) -> FieldElement {
        self.wrap(self.field.square_raw(&self.coeffs))
    }

    pub fn inv(&self) -> Result<FieldElement> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.wrap(self.field.inv_raw(&self.coeffs)))
    }

    /// `self^e` for any integer `e`; negative exponents need a nonzero base.
    pub fn pow(&self, e: i64) -> Result<FieldElement> {
        self.pow_int(&BigInt::from(e))
    }

    pub fn pow_int(&self, e: &BigInt) -> Result<FieldElement> {
        if self.is_zero() {
            return match e.sign() {
                Sign::Minus => Err(Error::DivisionByZero),
                Sign::NoSign => Ok(self.field.one()),
                Sign::Plus => Ok(self.field.zero()),
            };
        }
        let order = BigInt::from(self.field.group_order());
        let mut r = e % &order;
        if r.sign() == Sign::Minus {
            r += &order;
        }
        Ok(self.pow_big(&r.to_biguint().expect("nonnegative")))
    }

    pub fn pow_u64(&self, e: u64) -> FieldElement {
        self.wrap(self.field.pow_u64_raw(&self.coeffs, e))
    }

    pub fn pow_big(&self, e: &BigUint) -> FieldElement {
        self.wrap(self.field.pow_big_raw(&self.coeffs, e))
    }

    /// `self^(2^j)`, with `j` reduced mod `t`.
    pub fn frobenius(&self, j: u64) -> FieldElement {
        let j = (j % self.field.t() as u64) as u32;
        self.wrap(self.field.frobenius_raw(&self.coeffs, j))
    }

    /// Multiplicative order, factoring `2^t - 1` within the default budget.
    pub fn order(&self) -> Result<BigUint> {
        self.order_with_budget(DEFAULT_ORDER_BUDGET)
    }

    pub fn order_with_budget(&self, budget: Duration) -> Result<BigUint> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let t = self.field.t();
        let primes = factor::mersenne_factorization(t, budget).map_err(|_| Error::OrderBudgetExceeded { t })?;
        let mut order = self.field.group_order();
        let one = self.field.one_raw();
        for (p, _) in primes {
            while (&order % &p).is_zero() {
                let reduced = &order / &p;
                if self.field.pow_big_raw(&self.coeffs, &reduced) == one {
                    order = reduced;
                } else {
                    break;
                }
            }
        }
        Ok(order)
    }

    fn wrap(&self, coeffs: Limbs) -> FieldElement {
        FieldElement {
            field: self.field.clone(),
            coeffs,
        }
    }
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs && self.field == other.field
    }
}

impl Eq for FieldElement {}

impl Hash for FieldElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.field.t().hash(state);
        self.coeffs.hash(state);
    }
}

/// Bit-string order: compare coefficient vectors as binary numbers.
impl Ord for FieldElement {
    fn cmp(&self, other: &Self) -> Ordering {
        cmp_words(&self.coeffs, &other.coeffs)
    }
}

impl PartialOrd for FieldElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

pub(crate) fn cmp_words(a: &[u64], b: &[u64]) -> Ordering {
    a.iter().rev().cmp(b.iter().rev())
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "0x{}", self.to_hex())
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}

// Operators panic when the operands live in different fields; use the
// `try_*` methods where that can happen.

impl Add for &FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: &FieldElement) -> FieldElement {
        self.try_add(rhs).expect("field mismatch in addition")
    }
}

impl Add for FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: FieldElement) -> FieldElement {
        &self + &rhs
    }
}

impl Mul for &FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: &FieldElement) -> FieldElement {
        self.try_mul(rhs).expect("field mismatch in multiplication")
    }
}

impl Mul for FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: FieldElement) -> FieldElement {
        &self * &rhs
    }
}
