// Copyright 2026 The ldcforge Authors
//
// Licensed under the Apache License, Version 2.0 (see
// LICENSE or https://www.apache.org/licenses/LICENSE-2.0).
// This file may not be copied, modified, or distributed
// except according to those terms.

use std::sync::Arc;

use rand::seq::index;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{encode, local_decode, CodeSpec, Codeword};
use crate::algebra::gf2x;
use crate::algebra::FieldElement;
use crate::error::{Error, Result};

/// Largest codeword length accepted by the exhaustive audits.
pub const AUDIT_LIMIT: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Replacement {
    /// A uniformly random value different from the original.
    FlipRandomNonequal,
    SetZero,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Positions {
    Explicit(Vec<usize>),
    /// Exactly `floor(delta N)` distinct indices drawn with this seed.
    Uniform {
        seed: u64,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorruptionPlan {
    pub delta: f64,
    pub positions: Positions,
    pub replacement: Replacement,
}

impl CorruptionPlan {
    /// Uniform positions with flipped values.
    pub fn uniform(delta: f64, seed: u64) -> Self {
        CorruptionPlan {
            delta,
            positions: Positions::Uniform { seed },
            replacement: Replacement::FlipRandomNonequal,
        }
    }

    fn budget(&self, len: usize) -> Result<usize> {
        if !(0.0..1.0).contains(&self.delta) {
            return Err(Error::InvalidInput(format!("delta = {} is outside [0, 1)", self.delta)));
        }
        Ok((self.delta * len as f64).floor() as usize)
    }

    /// The chosen indices, ascending and distinct.
    pub fn resolve(&self, len: usize) -> Result<Vec<usize>> {
        let budget = self.budget(len)?;
        let mut out = match &self.positions {
            Positions::Explicit(p) => {
                let mut p = p.clone();
                p.sort_unstable();
                p.dedup();
                if let Some(bad) = p.iter().find(|i| **i >= len) {
                    return Err(Error::IndexOutOfRange {
                        index: *bad,
                        bound: len,
                    });
                }
                if p.len() > budget {
                    return Err(Error::InvalidInput(format!(
                        "{} positions exceed delta N = {budget}",
                        p.len()
                    )));
                }
                p
            }
            Positions::Uniform { seed } => {
                let mut rng = ChaCha8Rng::seed_from_u64(*seed);
                index::sample(&mut rng, len, budget).into_vec()
            }
        };
        out.sort_unstable();
        Ok(out)
    }

    fn value_seed(&self) -> u64 {
        match self.positions {
            Positions::Uniform { seed } => seed ^ 0x9e37_79b9_7f4a_7c15,
            Positions::Explicit(_) => 0,
        }
    }
}

/// Overwrites the planned positions. With flipped values the result is at
/// Hamming distance exactly `|positions|`; zeroing leaves positions that
/// already hold 0 unchanged.
pub fn corrupt(cw: &Codeword, plan: &CorruptionPlan) -> Result<Codeword> {
    let positions = plan.resolve(cw.len())?;
    let f = cw.spec().field().clone();
    let mut rng = ChaCha8Rng::seed_from_u64(plan.value_seed());
    let mut values = cw.raw().to_vec();
    for p in &positions {
        values[*p] = match plan.replacement {
            Replacement::SetZero => f.zero_raw(),
            Replacement::FlipRandomNonequal => {
                // original + nonzero differs from the original
                let d = f.random_nonzero(&mut rng);
                f.add_raw(&values[*p], d.raw())
            }
        };
    }
    let out = Codeword::from_raw(cw.spec().clone(), values);
    let changed = out.hamming_distance(cw);
    let expected = match plan.replacement {
        Replacement::FlipRandomNonequal => positions.len(),
        Replacement::SetZero => positions.iter().filter(|p| !gf2x::is_zero(&cw.raw()[**p])).count(),
    };
    if changed != expected {
        return Err(Error::InternalError(format!(
            "corruption changed {changed} coordinates, planned {expected}"
        )));
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuccessReport {
    pub trials: u64,
    pub k: usize,
    pub delta: f64,
    pub corrupted: usize,
    pub successes: Vec<u64>,
    pub rates: Vec<f64>,
    /// `1 - k delta`.
    pub floor: f64,
}

/// Encodes `x`, corrupts the word per `plan`, and decodes every position
/// `trials` times with fresh randomness.
pub fn success_rate(
    spec: &Arc<CodeSpec>,
    x: &[FieldElement],
    plan: &CorruptionPlan,
    trials: u64,
    seed: u64,
) -> Result<SuccessReport> {
    if trials == 0 {
        return Err(Error::InvalidInput("trials must be positive".into()));
    }
    let clean = encode(spec, x)?;
    let word = corrupt(&clean, plan)?;
    let corrupted = word.hamming_distance(&clean);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut successes = vec![0u64; spec.n()];
    for (i, s) in successes.iter_mut().enumerate() {
        for _ in 0..trials {
            let got = local_decode(spec, |q| word.get(q).expect("query in range"), i, &mut rng)?;
            if got == x[i] {
                *s += 1;
            }
        }
    }
    let rates = successes.iter().map(|s| *s as f64 / trials as f64).collect();
    Ok(SuccessReport {
        trials,
        k: spec.k(),
        delta: plan.delta,
        corrupted,
        successes,
        rates,
        floor: 1.0 - spec.k() as f64 * plan.delta,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SmoothnessAudit {
    pub i: usize,
    /// One histogram per query slot, indexed by codeword coordinate.
    pub histograms: Vec<Vec<u32>>,
    pub uniform: bool,
}

/// Tallies, over every `v` in `Z_m^h`, which coordinate each query slot
/// reads when decoding position `i`.
pub fn smoothness_audit(spec: &CodeSpec, i: usize) -> Result<SmoothnessAudit> {
    if spec.len() > AUDIT_LIMIT {
        return Err(Error::BudgetExceeded(format!(
            "audit enumerates {} vectors (limit {AUDIT_LIMIT})",
            spec.len()
        )));
    }
    let mut histograms = vec![vec![0u32; spec.len()]; spec.k()];
    for idx in 0..spec.len() {
        let v = spec.vector_at(idx)?;
        for (slot, q) in spec.queries(i, &v)?.into_iter().enumerate() {
            histograms[slot][q] += 1;
        }
    }
    let uniform = histograms.iter().all(|h| h.iter().all(|c| *c == 1));
    Ok(SmoothnessAudit { i, histograms, uniform })
}
