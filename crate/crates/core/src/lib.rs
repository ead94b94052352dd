// Copyright 2026 The ldcforge Authors
//
// Licensed under the Apache License, Version 2.0 (see
// LICENSE or https://www.apache.org/licenses/LICENSE-2.0).
// This file may not be copied, modified, or distributed
// except according to those terms.

//! Matching-vector locally decodable codes over GF(2^t).
//!
//! The crate certifies moduli that admit three-term decoding polynomials,
//! builds matching families, encodes and locally decodes codewords,
//! composes decoding polynomials for coprime moduli and simulates the
//! private information retrieval schemes derived from smooth codes.

pub mod algebra;
pub mod codec;
pub mod compose;
pub mod decpoly;
pub mod error;
pub mod matchfam;
pub mod modulus;
pub mod pir;

pub use algebra::{FieldElement, FieldSpec};
pub use codec::{CodeSpec, Codeword};
pub use compose::{CompositionPlan, QueryPlan};
pub use decpoly::{DecodingPolynomial, M2Certificate, Verdict};
pub use error::{Error, Result};
pub use matchfam::MatchingFamily;
pub use modulus::{profile, ModulusProfile};
pub use pir::{PirScheme, PirTranscript};
