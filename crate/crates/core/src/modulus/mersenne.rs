// Copyright 2026 The ldcforge Authors
//
// Licensed under the Apache License, Version 2.0 (see
// LICENSE or https://www.apache.org/licenses/LICENSE-2.0).
// This file may not be copied, modified, or distributed
// except according to those terms.

//! Scanning Mersenne numbers `2^t - 1` (prime `t`) for semiprimes.

use std::time::Duration;

use num_bigint::BigUint;
use num_traits::One;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::decimal;
use super::factor::{factor_semiprime, is_prime_u64, FactorStructure, Primality};
use crate::error::Error;

/// A Mersenne number `m = 2^t - 1 = p * q` with `p <= q` prime.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MersenneRow {
    pub t: u32,
    #[serde(with = "decimal")]
    pub m: BigUint,
    #[serde(with = "decimal")]
    pub p: BigUint,
    #[serde(with = "decimal")]
    pub q: BigUint,
    pub p_primality: Primality,
    pub q_primality: Primality,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "reason", rename_all = "snake_case")]
pub enum SkipReason {
    Prime {
        primality: Primality,
    },
    /// Three or more prime factors.
    TooManyFactors {
        known_prime_factors: Vec<String>,
        unfactored: Vec<String>,
    },
    Budget {
        known_prime_factors: Vec<String>,
        unfactored: String,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SkippedExponent {
    pub t: u32,
    #[serde(flatten)]
    pub reason: SkipReason,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MersenneScan {
    pub rows: Vec<MersenneRow>,
    pub skipped: Vec<SkippedExponent>,
}

fn strings(v: &[BigUint]) -> Vec<String> {
    v.iter().map(|x| x.to_string()).collect()
}

fn classify(t: u32, budget: Duration) -> Result<MersenneRow, SkipReason> {
    let m = (BigUint::one() << t as usize) - 1u32;
    match factor_semiprime(&m, budget) {
        Ok(FactorStructure::Semiprime {
            p,
            q,
            p_primality,
            q_primality,
        }) => Ok(MersenneRow {
            t,
            m,
            p,
            q,
            p_primality,
            q_primality,
        }),
        Ok(FactorStructure::Prime(primality)) => Err(SkipReason::Prime { primality }),
        Ok(FactorStructure::Unit) => Err(SkipReason::Prime {
            primality: Primality::Composite,
        }),
        Ok(FactorStructure::Composite {
            prime_factors,
            unfactored,
        }) => Err(SkipReason::TooManyFactors {
            known_prime_factors: strings(&prime_factors),
            unfactored: strings(&unfactored),
        }),
        Err(Error::FactorBudgetExceeded { partial, remaining }) => Err(SkipReason::Budget {
            known_prime_factors: strings(&partial),
            unfactored: remaining.to_string(),
        }),
        Err(e) => unreachable!("factor_semiprime only fails on budget: {e}"),
    }
}

/// Classifies `2^t - 1` for every prime `t` in `[t_min, t_max]`; rows and
/// skips are ordered by `t`.
pub fn scan_mersenne(t_min: u32, t_max: u32, budget_per_t: Duration) -> MersenneScan {
    let ts: Vec<u32> = (t_min.max(2)..=t_max).filter(|t| is_prime_u64(*t as u64)).collect();
    let results: Vec<(u32, Result<MersenneRow, SkipReason>)> =
        ts.par_iter().map(|t| (*t, classify(*t, budget_per_t))).collect();
    let mut scan = MersenneScan {
        rows: Vec::new(),
        skipped: Vec::new(),
    };
    for (t, r) in results {
        match r {
            Ok(row) => scan.rows.push(row),
            Err(reason) => scan.skipped.push(SkippedExponent { t, reason }),
        }
    }
    scan
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_range() {
        let s = scan_mersenne(11, 41, Duration::from_secs(10));
        let got: Vec<(u32, String)> = s.rows.iter().map(|r| (r.t, r.p.to_string())).collect();
        assert_eq!(
            got,
            vec![
                (11, "23".into()),
                (23, "47".into()),
                (37, "223".into()),
                (41, "13367".into())
            ]
        );
        let skip13 = s.skipped.iter().find(|k| k.t == 13).unwrap();
        assert_eq!(
            skip13.reason,
            SkipReason::Prime {
                primality: Primality::Proven
            }
        );
        let skip29 = s.skipped.iter().find(|k| k.t == 29).unwrap();
        assert!(
            matches!(&skip29.reason, SkipReason::TooManyFactors { known_prime_factors, .. }
            if known_prime_factors == &["233", "1103", "2089"])
        );
    }

    #[test]
    fn row_json_shape() {
        let s = scan_mersenne(11, 11, Duration::from_secs(10));
        let j = serde_json::to_value(&s.rows[0]).unwrap();
        assert_eq!(j["t"], 11);
        assert_eq!(j["m"], "2047");
        assert_eq!(j["p"], "23");
        assert_eq!(j["q"], "89");
        assert_eq!(j["p_primality"], "proven");
    }
}
