// Copyright 2026 The ldcforge Authors
//
// Licensed under the Apache License, Version 2.0 (see
// LICENSE or https://www.apache.org/licenses/LICENSE-2.0).
// This file may not be copied, modified, or distributed
// except according to those terms.

//! Exhaustive decision over all ordered pairs `(u, v)` of nonzero residues.
//!
//! With `n_x = gamma^(x s01) + gamma^(x s10)` (nonzero for `x != 0`) the
//! solution of the two-row system is `a = n_u / n_v`, and each remaining
//! condition on the pair becomes an equality test between per-residue
//! values:
//!
//! * the third equation holds iff `P_u = P_v`, `P_x = (gamma^x + gamma^(x s01)) / n_x`;
//! * `b != 0` iff `Q_u != Q_v`, `Q_x = gamma^(x s01) / n_x`;
//! * `1 + a + b != 0` iff `W_u != W_v`, `W_x = Q_x + 1 / n_x`.
//!
//! Pairs are grouped by `P`, so every ordered pair is decided without a
//! per-pair field operation.

use std::collections::HashMap;

use super::cert::{Exhaustion, M2Certificate, MemberWitness, SearchMethod, Verdict};
use super::three::TwoPrimeContext;
use crate::algebra::gf2x::{self, Limbs};
use crate::error::{Error, Result};

/// Largest modulus accepted by [`brute_force_m2`].
pub const BRUTE_FORCE_CAP: u64 = 100_000;

/// Inverts every entry with one field inversion.
fn batch_invert(ctx: &TwoPrimeContext, xs: &[Limbs]) -> Vec<Limbs> {
    let f = &ctx.field;
    let mut prefix = Vec::with_capacity(xs.len());
    let mut acc = f.one_raw();
    for x in xs {
        prefix.push(acc.clone());
        acc = f.mul_raw(&acc, x);
    }
    let mut inv = f.inv_raw(&acc);
    let mut out = vec![Limbs::new(); xs.len()];
    for i in (0..xs.len()).rev() {
        out[i] = f.mul_raw(&inv, &prefix[i]);
        inv = f.mul_raw(&inv, &xs[i]);
    }
    out
}

/// Decides membership of `m = p q` by examining every ordered pair.
pub fn brute_force_m2(m: u64) -> Result<M2Certificate> {
    if m > BRUTE_FORCE_CAP {
        return Err(Error::BudgetExceeded(format!(
            "exhaustive pair search over m = {m} (cap {BRUTE_FORCE_CAP})"
        )));
    }
    let ctx = TwoPrimeContext::new(m)?;
    let f = &ctx.field;
    let pw = f.power_table_raw(ctx.gamma.raw(), m as usize);
    let at = |e: u64| &pw[ctx.mulmod(e, 1) as usize];

    let xs: Vec<u64> = (1..m).collect();
    let x01: Vec<&Limbs> = xs.iter().map(|x| at(ctx.mulmod(*x, ctx.s01))).collect();
    let n: Vec<Limbs> = xs
        .iter()
        .zip(&x01)
        .map(|(x, a)| f.add_raw(a, at(ctx.mulmod(*x, ctx.s10))))
        .collect();
    if let Some(i) = n.iter().position(|v| gf2x::is_zero(v)) {
        return Err(Error::InternalError(format!(
            "rows s01 and s10 coincide at x = {}",
            xs[i]
        )));
    }
    let inv_n = batch_invert(&ctx, &n);

    let mut groups: HashMap<Limbs, Vec<usize>> = HashMap::new();
    let mut qw: Vec<(Limbs, Limbs)> = Vec::with_capacity(xs.len());
    for (i, x) in xs.iter().enumerate() {
        let a = f.add_raw(at(*x), x01[i]);
        groups.entry(f.mul_raw(&a, &inv_n[i])).or_default().push(i);
        let q = f.mul_raw(x01[i], &inv_n[i]);
        let w = f.add_raw(&q, &inv_n[i]);
        qw.push((q, w));
    }

    let mut best: Option<(u64, u64)> = None;
    for members in groups.values() {
        if members.len() < 2 {
            continue;
        }
        if let Some(pair) = first_passing_pair(members, &qw) {
            let pair = (xs[pair.0], xs[pair.1]);
            best = Some(best.map_or(pair, |b| b.min(pair)));
        }
    }

    let examined = (m - 1) * (m - 2);
    let Some((u, v)) = best else {
        return Ok(M2Certificate {
            m,
            t: ctx.t(),
            field: ctx.field.clone(),
            method: SearchMethod::BruteForce,
            verdict: Verdict::NonMember,
            witness: None,
            exhaustion: Some(Exhaustion {
                examined,
                classes: groups.len() as u64,
            }),
            budget: None,
        });
    };

    // the projective identity must hold for the chosen pair
    let (au, bu) = ctx.ratio_parts(u);
    let (av, bv) = ctx.ratio_parts(v);
    if f.mul_raw(&au, &bv) != f.mul_raw(&bu, &av) {
        return Err(Error::CertificateInconsistent(format!(
            "pair ({u}, {v}) passes the solve but not the determinant identity"
        )));
    }
    let (a, b) = ctx.solve(u, v)?;
    let poly = ctx.three_monomial(u, v, &a, &b)?;
    let (alpha, c) = coset_position(u, m);
    let (beta, d) = coset_position(v, m);
    Ok(M2Certificate {
        m,
        t: ctx.t(),
        field: ctx.field.clone(),
        method: SearchMethod::BruteForce,
        verdict: Verdict::Member,
        witness: Some(MemberWitness {
            alpha,
            c,
            beta,
            d,
            u,
            v,
            a,
            b,
            poly,
        }),
        exhaustion: None,
        budget: None,
    })
}

/// Lexicographically first `(i, j)`, `i != j`, with `Q_i != Q_j` and
/// `W_i != W_j`; `members` is ascending.
fn first_passing_pair(members: &[usize], qw: &[(Limbs, Limbs)]) -> Option<(usize, usize)> {
    let mut cq: HashMap<&Limbs, usize> = HashMap::new();
    let mut cw: HashMap<&Limbs, usize> = HashMap::new();
    let mut cqw: HashMap<(&Limbs, &Limbs), usize> = HashMap::new();
    for i in members {
        let (q, w) = &qw[*i];
        *cq.entry(q).or_default() += 1;
        *cw.entry(w).or_default() += 1;
        *cqw.entry((q, w)).or_default() += 1;
    }
    let g = members.len();
    for i in members {
        let (q, w) = &qw[*i];
        // partners differing in both Q and W, by inclusion-exclusion
        let passing = g + cqw[&(q, w)] - cq[q] - cw[w];
        if passing > 0 {
            let j = members
                .iter()
                .find(|j| qw[**j].0 != *q && qw[**j].1 != *w)
                .expect("counted partner exists");
            return Some((*i, *j));
        }
    }
    None
}

/// `(alpha, c)` with `alpha` the smallest element of the coset of `x` and
/// `2^c alpha = x mod m`.
pub(crate) fn coset_position(x: u64, m: u64) -> (u64, u32) {
    let mut orbit = vec![x];
    let mut y = x;
    loop {
        y = ((y as u128 * 2) % m as u128) as u64;
        if y == x {
            break;
        }
        orbit.push(y);
    }
    let (k, alpha) = orbit
        .iter()
        .enumerate()
        .min_by_key(|(_, v)| **v)
        .expect("orbit is nonempty");
    // x = 2^(len - k) * alpha
    let c = (orbit.len() - k) % orbit.len();
    (*alpha, c as u32)
}
