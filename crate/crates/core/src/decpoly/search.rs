// Copyright 2026 The ldcforge Authors
//
// Licensed under the Apache License, Version 2.0 (see
// LICENSE or https://www.apache.org/licenses/LICENSE-2.0).
// This file may not be copied, modified, or distributed
// except according to those terms.

//! Collision search over Frobenius orbits of coset ratios.
//!
//! For every admissible coset representative `alpha` (a unit modulo `m`
//! that is the smallest element of its cyclotomic coset) the search keys
//! `R_alpha` by the minimum of its Frobenius orbit. Two representatives
//! with equal keys, or one whose ratio has an orbit shorter than `t`, give
//! a pair `(u, v)` with `R_u = R_v`, from which a three-term decoding
//! polynomial is solved.

use std::cmp::Ordering;
use std::time::{Duration, Instant};

use rayon::prelude::*;

use super::cert::{BudgetReport, Exhaustion, M2Certificate, SearchMethod, Verdict};
use super::three::TwoPrimeContext;
use crate::algebra::cmp_words;
use crate::algebra::gf2x::{self, Limbs};
use crate::error::{Error, Result};
use crate::modulus::{self, invalid, is_coset_minimum};

/// Largest modulus the collision search accepts.
pub const MAX_SEARCH_MODULUS: u64 = (1 << 37) - 1;
/// Largest extension degree the collision search accepts.
pub const MAX_SEARCH_DEGREE: u32 = 8192;

#[derive(Debug, Clone)]
pub struct SearchOptions {
    /// Number of contiguous shards of the representative range; defaults to
    /// eight per worker thread.
    pub shards: Option<usize>,
    pub time_budget: Option<Duration>,
    /// Bound on the key table; larger searches run in several passes, each
    /// keeping only one hash class of keys.
    pub memory_budget: u64,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            shards: None,
            time_budget: None,
            memory_budget: 8 << 30,
        }
    }
}

struct ShardOut {
    entries: Vec<(Limbs, u64)>,
    self_min: Option<u64>,
    examined: u64,
    timed_out: bool,
}

fn key_hash(k: &[u64]) -> u64 {
    k.iter().fold(0x9e37_79b9_7f4a_7c15u64, |h, w| {
        (h ^ w).wrapping_mul(0xff51_afd7_ed55_8ccd)
    })
}

/// The minimum of `{r^(2^j)}` and the least `j > 0` with `r^(2^j) = r`.
pub(crate) fn orbit_key(ctx: &TwoPrimeContext, r: &Limbs) -> (Limbs, u32) {
    let f = &ctx.field;
    let mut key = r.clone();
    let mut x = r.clone();
    for j in 1..ctx.t() {
        x = f.square_raw(&x);
        if &x == r {
            return (key, j);
        }
        if cmp_words(&x, &key) == Ordering::Less {
            key = x.clone();
        }
    }
    (key, ctx.t())
}

pub(crate) fn ratio(ctx: &TwoPrimeContext, alpha: u64) -> Result<Limbs> {
    let (num, den) = ctx.ratio_parts(alpha);
    if gf2x::is_zero(&num) || gf2x::is_zero(&den) {
        return Err(Error::InternalError(format!(
            "coset ratio at {alpha} has a vanishing part"
        )));
    }
    Ok(ctx.field.mul_raw(&num, &ctx.field.inv_raw(&den)))
}

fn scan_shard(
    ctx: &TwoPrimeContext,
    range: (u64, u64),
    pass: (u64, u64),
    deadline: Option<Instant>,
) -> Result<ShardOut> {
    let (p, q) = (ctx.profile.primes[0], ctx.profile.primes[1]);
    let (m, t) = (ctx.m(), ctx.t());
    let mut out = ShardOut {
        entries: Vec::new(),
        self_min: None,
        examined: 0,
        timed_out: false,
    };
    for alpha in range.0..range.1 {
        if alpha % p == 0 || alpha % q == 0 || !is_coset_minimum(alpha, m, t) {
            continue;
        }
        out.examined += 1;
        if out.examined.is_multiple_of(256) && deadline.is_some_and(|d| Instant::now() > d) {
            out.timed_out = true;
            return Ok(out);
        }
        let r = ratio(ctx, alpha)?;
        let (key, period) = orbit_key(ctx, &r);
        if period < t && out.self_min.is_none() {
            out.self_min = Some(alpha);
        }
        if pass.1 == 1 || key_hash(&key) % pass.1 == pass.0 {
            out.entries.push((key, alpha));
        }
    }
    Ok(out)
}

/// Decides membership of `m = p q` with default options.
pub fn collision_search(m: u64) -> Result<M2Certificate> {
    collision_search_with(m, &SearchOptions::default())
}

pub fn collision_search_with(m: u64, opts: &SearchOptions) -> Result<M2Certificate> {
    let started = Instant::now();
    let profile = modulus::profile(m)?;
    if profile.r() != 2 {
        return Err(invalid(m, "collision search needs exactly two prime factors"));
    }
    if m > MAX_SEARCH_MODULUS {
        return Err(Error::BudgetExceeded(format!("collision search over m = {m}")));
    }
    if profile.t > MAX_SEARCH_DEGREE {
        return Err(Error::BudgetExceeded(format!(
            "collision search in GF(2^{})",
            profile.t
        )));
    }
    let ctx = TwoPrimeContext::from_profile(profile)?;
    let (p, q) = (ctx.profile.primes[0], ctx.profile.primes[1]);
    let t = ctx.t();
    let deadline = opts.time_budget.map(|d| started + d);

    let words = ctx.field.modulus_words().len() as u64;
    let entry_bytes = 32 + if words > 2 { 8 * words } else { 0 };
    let estimate = (p - 1) * (q - 1) / t as u64 + 1;
    let passes = (estimate.saturating_mul(entry_bytes))
        .div_ceil(opts.memory_budget.max(1))
        .max(1);
    let shards = opts
        .shards
        .unwrap_or(rayon::current_num_threads() * 8)
        .clamp(1, m as usize) as u64;
    let bounds: Vec<(u64, u64)> = (0..shards)
        .map(|s| (1 + (m - 1) * s / shards, 1 + (m - 1) * (s + 1) / shards))
        .collect();

    let mut best: Option<(u64, u64)> = None;
    let mut examined = 0u64;
    let mut classes = 0u64;
    for pass in 0..passes {
        let outs = bounds
            .par_iter()
            .map(|b| scan_shard(&ctx, *b, (pass, passes), deadline))
            .collect::<Result<Vec<_>>>()?;
        if outs.iter().any(|o| o.timed_out) {
            return Ok(M2Certificate {
                m,
                t,
                field: ctx.field.clone(),
                method: SearchMethod::Collision,
                verdict: Verdict::Unknown,
                witness: None,
                exhaustion: None,
                budget: Some(BudgetReport {
                    examined: outs.iter().map(|o| o.examined).sum(),
                    elapsed_ms: started.elapsed().as_millis() as u64,
                    reason: "time budget exhausted".into(),
                }),
            });
        }
        if pass == 0 {
            examined = outs.iter().map(|o| o.examined).sum();
        }
        let self_min = outs.iter().filter_map(|o| o.self_min).min();
        let mut entries: Vec<(Limbs, u64)> = outs.into_iter().flat_map(|o| o.entries).collect();
        entries.par_sort_unstable_by(|a, b| cmp_words(&a.0, &b.0).then(a.1.cmp(&b.1)));
        let mut cand = self_min.map(|a| (a, a));
        for group in entries.chunk_by(|a, b| a.0 == b.0) {
            classes += 1;
            if group.len() >= 2 {
                let c = (group[0].1, group[1].1);
                cand = Some(cand.map_or(c, |x| x.min(c)));
            }
        }
        best = match (best, cand) {
            (Some(x), Some(y)) => Some(x.min(y)),
            (x, y) => x.or(y),
        };
    }

    let Some((alpha, beta)) = best else {
        return Ok(M2Certificate {
            m,
            t,
            field: ctx.field.clone(),
            method: SearchMethod::Collision,
            verdict: Verdict::NonMember,
            witness: None,
            exhaustion: Some(Exhaustion { examined, classes }),
            budget: None,
        });
    };
    let d = collision_shift(&ctx, alpha, beta)?;
    let witness = ctx.member_witness(alpha, 0, beta, d)?;
    Ok(M2Certificate {
        m,
        t,
        field: ctx.field.clone(),
        method: SearchMethod::Collision,
        verdict: Verdict::Member,
        witness: Some(witness),
        exhaustion: None,
        budget: None,
    })
}

/// Least `d` (positive when `alpha = beta`) with `R_beta^(2^d) = R_alpha`,
/// found by direct comparison in the field.
fn collision_shift(ctx: &TwoPrimeContext, alpha: u64, beta: u64) -> Result<u32> {
    let ra = ratio(ctx, alpha)?;
    let mut x = ratio(ctx, beta)?;
    let start = if alpha == beta {
        x = ctx.field.square_raw(&x);
        1
    } else {
        0
    };
    for d in start..ctx.t() {
        if x == ra {
            return Ok(d);
        }
        x = ctx.field.square_raw(&x);
    }
    Err(Error::CertificateInconsistent(format!(
        "orbit keys of {alpha} and {beta} agree but the ratios are not conjugate"
    )))
}
