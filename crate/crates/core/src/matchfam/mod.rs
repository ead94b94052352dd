// Copyright 2026 The ldcforge Authors
//
// Licensed under the Apache License, Version 2.0 (see
// LICENSE or https://www.apache.org/licenses/LICENSE-2.0).
// This file may not be copied, modified, or distributed
// except according to those terms.

//! Matching families: vectors in `Z_m^h` with isotropic self products and
//! cross products confined to a target set.

mod gram;
mod sqrt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::modulus;

pub use gram::{gram_family, realize_ones_gram};
pub use sqrt::{sqrt_mod, sum_of_two_squares};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatchingFamily {
    pub m: u64,
    pub h: usize,
    pub n: usize,
    /// Allowed values of cross inner products, ascending.
    #[serde(rename = "set")]
    pub target_set: Vec<u64>,
    pub vectors: Vec<Vec<u64>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MatchingViolation {
    Shape(String),
    /// `<u_i, u_i> mod m` is nonzero.
    SelfProduct {
        i: usize,
        value: u64,
    },
    /// `<u_i, u_j> mod m` lies outside the target set.
    CrossProduct {
        i: usize,
        j: usize,
        value: u64,
    },
}

pub(crate) fn dot(a: &[u64], b: &[u64], m: u64) -> u64 {
    let s = a
        .iter()
        .zip(b)
        .fold(0u128, |acc, (x, y)| (acc + *x as u128 * *y as u128) % m as u128);
    s as u64
}

impl MatchingFamily {
    /// Checks shape, isotropy and every cross product; returns the first
    /// violation in row-major pair order.
    pub fn violation(&self) -> Option<MatchingViolation> {
        if self.n != self.vectors.len() {
            return Some(MatchingViolation::Shape(format!(
                "n = {} but {} vectors",
                self.n,
                self.vectors.len()
            )));
        }
        if let Some(i) = self
            .vectors
            .iter()
            .position(|v| v.len() != self.h || v.iter().any(|x| *x >= self.m))
        {
            return Some(MatchingViolation::Shape(format!(
                "vector {i} is not an element of Z_{}^{}",
                self.m, self.h
            )));
        }
        for (i, u) in self.vectors.iter().enumerate() {
            let value = dot(u, u, self.m);
            if value != 0 {
                return Some(MatchingViolation::SelfProduct { i, value });
            }
        }
        for (i, u) in self.vectors.iter().enumerate() {
            for (j, w) in self.vectors.iter().enumerate().skip(i + 1) {
                let value = dot(u, w, self.m);
                if self.target_set.binary_search(&value).is_err() {
                    return Some(MatchingViolation::CrossProduct { i, j, value });
                }
            }
        }
        None
    }

    pub fn verify(&self) -> bool {
        self.violation().is_none()
    }

    /// Gram matrix `<u_i, u_j> mod m`.
    pub fn gram(&self) -> Vec<Vec<u64>> {
        self.vectors
            .iter()
            .map(|u| self.vectors.iter().map(|w| dot(u, w, self.m)).collect())
            .collect()
    }
}

/// Checks both matching conditions; `None` means the family is valid.
pub fn verify_matching(f: &MatchingFamily) -> Option<MatchingViolation> {
    f.violation()
}

/// Samples uniform vectors of `Z_m^h`, keeping each one that is isotropic
/// and whose products with all kept vectors are canonical residues of `m`.
/// Stops after `target_n` vectors or `max_samples` draws.
pub fn greedy_search(m: u64, h: usize, target_n: usize, seed: u64, max_samples: u64) -> Result<MatchingFamily> {
    if h < 2 {
        return Err(Error::InvalidInput("greedy search needs h >= 2".into()));
    }
    let profile = modulus::profile(m)?;
    let set = profile.canonical;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut kept: Vec<Vec<u64>> = Vec::new();
    let mut drawn = 0u64;
    while kept.len() < target_n && drawn < max_samples {
        drawn += 1;
        let v: Vec<u64> = (0..h).map(|_| rng.gen_range(0..m)).collect();
        if dot(&v, &v, m) != 0 {
            continue;
        }
        if kept.iter().all(|u| set.binary_search(&dot(u, &v, m)).is_ok()) {
            kept.push(v);
        }
    }
    Ok(MatchingFamily {
        m,
        h,
        n: kept.len(),
        target_set: set,
        vectors: kept,
    })
}
