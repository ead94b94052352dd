// Copyright 2026 The ldcforge Authors
//
// Licensed under the Apache License, Version 2.0 (see
// LICENSE or https://www.apache.org/licenses/LICENSE-2.0).
// This file may not be copied, modified, or distributed
// except according to those terms.

//! Arithmetic in binary extension fields GF(2^t).
//!
//! Elements are packed little-endian into 64-bit words, so any `t` is
//! supported; fields with `t <= 64` take a single-word fast path.

mod element;
mod field;
pub(crate) mod gf2x;
pub(crate) mod hex;

pub use element::{FieldElement, DEFAULT_ORDER_BUDGET};
pub use field::FieldSpec;

pub(crate) use element::cmp_words;
