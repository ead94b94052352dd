// Copyright 2026 The ldcforge Authors
//
// Licensed under the Apache License, Version 2.0 (see
// LICENSE or https://www.apache.org/licenses/LICENSE-2.0).
// This file may not be copied, modified, or distributed
// except according to those terms.

//! One-round `k`-server private information retrieval on top of a
//! perfectly smooth matching vector code. Server `j` holds the encoded
//! database and answers the `j`-th decoder query.

use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::FieldElement;
use crate::codec::{encode, random_vector, CodeSpec, Codeword, AUDIT_LIMIT};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PirScheme {
    code: Arc<CodeSpec>,
}

impl PirScheme {
    pub fn new(code: Arc<CodeSpec>) -> Self {
        PirScheme { code }
    }

    pub fn code(&self) -> &Arc<CodeSpec> {
        &self.code
    }

    /// Number of servers.
    pub fn k(&self) -> usize {
        self.code.k()
    }

    /// Largest database length in bits.
    pub fn n(&self) -> usize {
        self.code.n()
    }

    /// `k (ceil(log2 N) + t)`.
    pub fn comm_bits(&self) -> u64 {
        let n = self.code.len() as u64;
        let log = if n <= 1 { 0 } else { 64 - (n - 1).leading_zeros() as u64 };
        self.k() as u64 * (log + u64::from(self.code.field().t()))
    }

    /// Bits on the wire: an 8-byte query and a `ceil(t / 8)`-byte answer
    /// per server.
    pub fn wire_bits(&self) -> u64 {
        self.k() as u64 * (64 + 8 * self.code.field().element_bytes() as u64)
    }

    fn check_aux(&self, aux: &[u64]) -> Result<()> {
        if aux.len() != self.code.h() || aux.iter().any(|x| *x >= self.code.m()) {
            return Err(Error::AuxInvalid(format!(
                "{aux:?} is not a vector of Z_{}^{}",
                self.code.m(),
                self.code.h()
            )));
        }
        Ok(())
    }

    /// Embeds the bits as 0 and 1, padding with zeros up to `n`.
    pub fn encode_database(&self, bits: &[bool]) -> Result<Codeword> {
        if bits.len() > self.n() {
            return Err(Error::MessageLengthMismatch {
                expected: self.n(),
                got: bits.len(),
            });
        }
        let f = self.code.field();
        let x: Vec<FieldElement> = (0..self.n())
            .map(|i| {
                if bits.get(i).copied().unwrap_or(false) {
                    f.one()
                } else {
                    f.zero()
                }
            })
            .collect();
        encode(&self.code, &x)
    }
}

/// Query `j` goes to server `j`.
pub fn query_gen(scheme: &PirScheme, i: usize, aux: &[u64]) -> Result<Vec<u64>> {
    scheme.check_aux(aux)?;
    Ok(scheme.code.queries(i, aux)?.into_iter().map(|q| q as u64).collect())
}

/// The codeword value at `que`.
pub fn answer(word: &Codeword, que: u64) -> Result<FieldElement> {
    let idx = usize::try_from(que).map_err(|_| Error::IndexOutOfRange {
        index: usize::MAX,
        bound: word.len(),
    })?;
    word.get(idx)
}

/// Combines the answers and maps the result back to a bit.
pub fn reconstruct(scheme: &PirScheme, i: usize, aux: &[u64], answers: &[FieldElement]) -> Result<bool> {
    scheme.check_aux(aux)?;
    let v = scheme.code.combine(i, aux, answers)?;
    if v.is_zero() {
        Ok(false)
    } else if v.is_one() {
        Ok(true)
    } else {
        Err(Error::ReconstructionError(format!(
            "recovered {} is not a bit",
            v.to_hex()
        )))
    }
}

/// A server: the encoded database and nothing else.
#[derive(Debug, Clone)]
pub struct Server {
    word: Arc<Codeword>,
}

impl Server {
    pub fn new(word: Arc<Codeword>) -> Self {
        Server { word }
    }

    pub fn answer(&self, que: u64) -> Result<FieldElement> {
        answer(&self.word, que)
    }

    /// Answers an 8-byte little-endian query with `ceil(t / 8)`
    /// little-endian bytes.
    pub fn answer_wire(&self, query: &[u8]) -> Result<Vec<u8>> {
        let q: [u8; 8] = query
            .try_into()
            .map_err(|_| Error::Format(format!("query of {} bytes, expected 8", query.len())))?;
        Ok(self.answer(u64::from_le_bytes(q))?.to_le_bytes())
    }
}

/// Carries one query to one server and brings back its answer.
pub trait Transport: Sync {
    fn exchange(&self, server: &Server, query: &[u8]) -> Result<Vec<u8>>;
}

/// Lossless in-process delivery.
#[derive(Debug, Clone, Copy, Default)]
pub struct InMemory;

impl Transport for InMemory {
    fn exchange(&self, server: &Server, query: &[u8]) -> Result<Vec<u8>> {
        server.answer_wire(query)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PirTranscript {
    pub i: usize,
    pub aux: Vec<u64>,
    pub queries: Vec<u64>,
    pub answers: Vec<String>,
    pub output: bool,
    pub comm_bits: u64,
    pub wire_bits: u64,
}

fn decode_answer(scheme: &PirScheme, bytes: &[u8]) -> Result<FieldElement> {
    let f = scheme.code.field();
    if bytes.len() != f.element_bytes() {
        return Err(Error::Format(format!(
            "answer of {} bytes, expected {}",
            bytes.len(),
            f.element_bytes()
        )));
    }
    let words: Vec<u64> = bytes
        .chunks(8)
        .map(|c| c.iter().rev().fold(0u64, |acc, b| acc << 8 | u64::from(*b)))
        .collect();
    let e = f.element_from_words(&words);
    if e.to_le_bytes() != bytes {
        return Err(Error::Format("answer has bits above the field degree".into()));
    }
    Ok(e)
}

/// Runs one retrieval of bit `i` against `k` servers over `transport`.
pub fn simulate_with(
    scheme: &PirScheme,
    servers: &[Server],
    transport: &dyn Transport,
    i: usize,
    seed: u64,
) -> Result<PirTranscript> {
    if servers.len() != scheme.k() {
        return Err(Error::InvalidInput(format!(
            "{} servers for a {}-server scheme",
            servers.len(),
            scheme.k()
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let aux = random_vector(&scheme.code, &mut rng);
    let queries = query_gen(scheme, i, &aux)?;
    let raw: Vec<Vec<u8>> = servers
        .par_iter()
        .zip(&queries)
        .map(|(s, q)| transport.exchange(s, &q.to_le_bytes()))
        .collect::<Result<_>>()?;
    let answers = raw
        .iter()
        .map(|b| decode_answer(scheme, b))
        .collect::<Result<Vec<_>>>()?;
    let output = reconstruct(scheme, i, &aux, &answers)?;
    Ok(PirTranscript {
        i,
        aux,
        queries,
        answers: answers.iter().map(|a| a.to_hex()).collect(),
        output,
        comm_bits: scheme.comm_bits(),
        wire_bits: scheme.wire_bits(),
    })
}

/// Encodes `database`, stands up `k` in-memory servers, and retrieves bit `i`.
pub fn simulate(scheme: &PirScheme, database: &[bool], i: usize, seed: u64) -> Result<PirTranscript> {
    let word = Arc::new(scheme.encode_database(database)?);
    let servers = vec![Server::new(word); scheme.k()];
    simulate_with(scheme, &servers, &InMemory, i, seed)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrivacyAudit {
    pub i1: usize,
    pub i2: usize,
    /// Per server, whether the query distributions for `i1` and `i2` agree.
    pub identical: Vec<bool>,
    /// Per server, whether the query for `i1` is uniform on `[0, N)`.
    pub uniform: Vec<bool>,
    pub verdict: bool,
}

fn query_histograms(scheme: &PirScheme, i: usize) -> Result<Vec<Vec<u32>>> {
    let code = &scheme.code;
    let mut h = vec![vec![0u32; code.len()]; scheme.k()];
    for idx in 0..code.len() {
        let v = code.vector_at(idx)?;
        for (j, q) in code.queries(i, &v)?.into_iter().enumerate() {
            h[j][q] += 1;
        }
    }
    Ok(h)
}

/// Compares, server by server, the exact query distributions for two
/// indices over every value of `aux`.
pub fn privacy_audit(scheme: &PirScheme, i1: usize, i2: usize) -> Result<PrivacyAudit> {
    if scheme.code.len() > AUDIT_LIMIT {
        return Err(Error::BudgetExceeded(format!(
            "audit enumerates {} values of aux (limit {AUDIT_LIMIT})",
            scheme.code.len()
        )));
    }
    let a = query_histograms(scheme, i1)?;
    let b = query_histograms(scheme, i2)?;
    let identical: Vec<bool> = a.iter().zip(&b).map(|(x, y)| x == y).collect();
    let uniform: Vec<bool> = a.iter().map(|h| h.iter().all(|c| *c == 1)).collect();
    let verdict = identical.iter().all(|x| *x);
    Ok(PrivacyAudit {
        i1,
        i2,
        identical,
        uniform,
        verdict,
    })
}
