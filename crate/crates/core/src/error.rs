// Copyright 2026 The ldcforge Authors
//
// Licensed under the Apache License, Version 2.0 (see
// LICENSE or https://www.apache.org/licenses/LICENSE-2.0).
// This file may not be copied, modified, or distributed
// except according to those terms.

use num_bigint::BigUint;
use thiserror::Error;

/// Errors raised anywhere in the library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("modulus polynomial is reducible over GF(2): {0}")]
    IrreducibleViolation(String),
    #[error("internal error: {0}")]
    InternalError(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("no element of order {m} in GF(2^{t})")]
    OrderUnsupported { m: u64, t: u32 },
    #[error("factoring 2^{t} - 1 exceeded the time budget")]
    OrderBudgetExceeded { t: u32 },
    #[error("invalid modulus {m}: {reason}")]
    InvalidModulus { m: String, reason: String },
    #[error("factorization budget exceeded; known factors {partial:?}, unfactored {remaining}")]
    FactorBudgetExceeded { partial: Vec<BigUint>, remaining: BigUint },
    #[error("moduli {a} and {b} are not coprime")]
    CrtConflict { a: String, b: String },
    #[error("coset of {alpha} contains a multiple of a prime factor of {m}")]
    ForbiddenCoset { m: u64, alpha: u64 },
    #[error("certificate is inconsistent: {0}")]
    CertificateInconsistent(String),
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("message has length {got}, code expects {expected}")]
    MessageLengthMismatch { expected: usize, got: usize },
    #[error("index {index} out of range (bound {bound})")]
    IndexOutOfRange { index: usize, bound: usize },
    #[error("composed polynomial failed verification")]
    CompositionInvalid,
    #[error("coefficient cannot be transported into the composite field: {0}")]
    RepresentationUnsupported(String),
    #[error("inventory exhausted: {0}")]
    InventoryExhausted(String),
    #[error("malformed aux string: {0}")]
    AuxInvalid(String),
    #[error("reconstruction produced a non-bit value {0}")]
    ReconstructionError(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("malformed artifact: {0}")]
    Format(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
