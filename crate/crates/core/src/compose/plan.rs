// Copyright 2026 The ldcforge Authors
//
// Licensed under the Apache License, Version 2.0 (see
// LICENSE or https://www.apache.org/licenses/LICENSE-2.0).
// This file may not be copied, modified, or distributed
// except according to those terms.

use num_bigint::BigUint;
use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::modulus::{decimal, is_prime_u64};

/// Queries made by the three-term decoder of a two-prime member.
pub const MEMBER_QUERIES: u32 = 3;

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Inventory {
    /// Certified two-prime moduli with three-term decoding polynomials.
    pub members: Vec<u64>,
    /// Primes for the interpolation block; `None` draws odd primes in
    /// increasing order, skipping divisors of the chosen members.
    pub primes: Option<Vec<u64>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BlockKind {
    Member,
    /// Product of distinct primes decoded by interpolation, `2^j` queries.
    Primes,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Block {
    pub kind: BlockKind,
    pub factors: Vec<u64>,
    #[serde(with = "decimal")]
    pub modulus: BigUint,
    #[serde(with = "decimal")]
    pub queries: BigUint,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QueryPlan {
    pub r: usize,
    pub recipe: Vec<Block>,
    #[serde(with = "decimal")]
    pub k_bound: BigUint,
}

/// Splits `r` primes into three-query member blocks and at most one
/// interpolation block. Even `r` wants `r / 2` members, odd `r` wants
/// `(r - 3) / 2` members plus three primes; with fewer members the rest
/// of the primes go into the interpolation block.
pub fn plan_queries(r: usize, inventory: &Inventory) -> Result<QueryPlan> {
    if r < 2 {
        return Err(Error::InvalidInput("plans need r >= 2".into()));
    }
    let members = &inventory.members;
    for (i, a) in members.iter().enumerate() {
        if let Some(b) = members[i + 1..].iter().find(|b| a.gcd(b) != 1) {
            return Err(Error::CrtConflict {
                a: a.to_string(),
                b: b.to_string(),
            });
        }
    }
    let wanted = if r.is_multiple_of(2) { r / 2 } else { (r - 3) / 2 };
    let used = wanted.min(members.len());
    let chosen = &members[..used];
    let rest = r - 2 * used;

    let coprime = |p: &u64| chosen.iter().all(|m| m % p != 0);
    let primes: Vec<u64> = match &inventory.primes {
        Some(pool) => {
            let mut pool: Vec<u64> = pool.iter().copied().filter(|p| *p > 2 && is_prime_u64(*p)).collect();
            pool.sort_unstable();
            pool.dedup();
            let picked: Vec<u64> = pool.into_iter().filter(coprime).take(rest).collect();
            if picked.len() < rest {
                return Err(Error::InventoryExhausted(format!(
                    "need {rest} odd primes coprime to the members, pool has {}",
                    picked.len()
                )));
            }
            picked
        }
        None => (3u64..).filter(|p| is_prime_u64(*p) && coprime(p)).take(rest).collect(),
    };

    let mut recipe: Vec<Block> = chosen
        .iter()
        .map(|m| Block {
            kind: BlockKind::Member,
            factors: vec![*m],
            modulus: BigUint::from(*m),
            queries: BigUint::from(MEMBER_QUERIES),
        })
        .collect();
    if rest > 0 {
        recipe.push(Block {
            kind: BlockKind::Primes,
            modulus: primes.iter().map(|p| BigUint::from(*p)).product(),
            factors: primes,
            queries: BigUint::from(1u32) << rest,
        });
    }
    let k_bound = recipe.iter().map(|b| &b.queries).product();
    Ok(QueryPlan { r, recipe, k_bound })
}
