// Copyright 2026 The ldcforge Authors
//
// Licensed under the Apache License, Version 2.0 (see
// LICENSE or https://www.apache.org/licenses/LICENSE-2.0).
// This file may not be copied, modified, or distributed
// except according to those terms.

//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use ldcforge::codec::{self, CorruptionPlan};
use ldcforge::compose::{self, plan_queries, Inventory};
use ldcforge::decpoly::{brute_force_m2, collision_search, lagrange_polynomial};
use ldcforge::matchfam::greedy_search;
use ldcforge::modulus::{scan_mersenne, SkipReason, DEFAULT_FACTOR_BUDGET};
use ldcforge::pir::{self, PirScheme};
use ldcforge::{CodeSpec, DecodingPolynomial, FieldElement, FieldSpec, Verdict};

type Check = std::result::Result<String, String>;
/// `(t, low modulus exponents, m, primes of m, (exponent, power of gamma) terms)`.
type PublishedPolynomial = (u32, &'static [u32], u64, &'static [u64], &'static [(u64, u64)]);
type Criterion = (u32, &'static str, fn() -> Check);

fn ensure(cond: bool, msg: impl Into<String>) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn fail<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

/// Residues mod `m` that are 0 or 1 modulo each prime factor, except 0.
fn canonical_by_hand(m: u64, primes: &[u64]) -> Vec<u64> {
    (1..m).filter(|s| primes.iter().all(|p| s % p <= 1)).collect()
}

fn two_prime_factors(m: u64) -> Option<(u64, u64)> {
    let p = (3..)
        .step_by(2)
        .take_while(|d| d * d <= m)
        .find(|d| m.is_multiple_of(*d))?;
    let q = m / p;
    let q_prime = q > p
        && (3..)
            .step_by(2)
            .take_while(|d| d * d <= q)
            .all(|d| !q.is_multiple_of(d));
    q_prime.then_some((p, q))
}

/// Sums `gamma^(c + s e)` for every term, with `gamma` of order `m`.
fn evaluate_by_exponents(gamma: &FieldElement, m: u64, terms: &[(u64, u64)], s: u64) -> FieldElement {
    terms.iter().fold(gamma.field().zero(), |acc, (e, c)| {
        &acc + &gamma.pow_u64((c + s * e) % m)
    })
}

fn criterion_1() -> Check {
    let mut notes = Vec::new();
    let rows: [PublishedPolynomial; 2] = [
        (11, &[2, 0], 2047, &[23, 89], &[(29, 1485), (27, 694), (0, 118)]),
        (
            23,
            &[5, 0],
            8_388_607,
            &[47, 178_481],
            &[(3526, 6_526_329), (3363, 7_574_532), (0, 2_861_754)],
        ),
    ];
    for (t, tail, m, primes, terms) in rows {
        let start = Instant::now();
        let field = FieldSpec::with_modulus_exponents(t, tail).map_err(fail)?;
        let gamma = field.x();
        let set = canonical_by_hand(m, primes);
        let profile = ldcforge::profile(m).map_err(fail)?;
        ensure(profile.canonical == set, format!("canonical set of {m} differs"))?;
        if m == 2047 {
            ensure(set == vec![1, 713, 1335], "canonical set of 2047 is not {1, 713, 1335}")?;
        }
        let poly = DecodingPolynomial::from_terms(m, gamma.clone(), terms.iter().map(|(e, c)| (*e, gamma.pow_u64(*c))))
            .map_err(fail)?;
        ensure(poly.verify(), format!("{m}: library verifier rejects the polynomial"))?;
        ensure(
            evaluate_by_exponents(&gamma, m, terms, 0).is_one(),
            format!("{m}: P(1) != 1"),
        )?;
        for s in &set {
            ensure(
                evaluate_by_exponents(&gamma, m, terms, *s).is_zero(),
                format!("{m}: P(gamma^{s}) != 0"),
            )?;
        }
        let took = start.elapsed();
        ensure(took < Duration::from_secs(1), format!("{m}: took {took:?}"))?;
        notes.push(format!("{m} in {took:.2?}"));
    }
    Ok(notes.join(", "))
}

fn criterion_2() -> Check {
    let cases = [
        (15u64, Verdict::NonMember, Duration::from_secs(1)),
        (511, Verdict::Member, Duration::from_secs(1)),
        (2047, Verdict::Member, Duration::from_secs(10)),
        (8_388_607, Verdict::Member, Duration::from_secs(300)),
    ];
    let mut notes = Vec::new();
    for (m, want, limit) in cases {
        let start = Instant::now();
        let c = collision_search(m).map_err(fail)?;
        let took = start.elapsed();
        ensure(c.verdict == want, format!("{m}: {:?}, expected {want:?}", c.verdict))?;
        if want == Verdict::Member {
            let p = c.polynomial().ok_or(format!("{m}: member without polynomial"))?;
            ensure(p.k() == 3 && p.verify(), format!("{m}: witness does not verify"))?;
        }
        ensure(took < limit, format!("{m}: took {took:?}, limit {limit:?}"))?;
        notes.push(format!("{m} {took:.2?}"));
    }
    Ok(notes.join(", "))
}

fn criterion_3() -> Check {
    let start = Instant::now();
    let moduli: Vec<u64> = (15..=3000u64)
        .step_by(2)
        .filter(|m| two_prime_factors(*m).is_some())
        .collect();
    let (mut members, mut non_members) = (0, 0);
    for m in &moduli {
        let a = brute_force_m2(*m).map_err(fail)?.verdict;
        let b = collision_search(*m).map_err(fail)?.verdict;
        ensure(a == b, format!("{m}: brute force {a:?}, collision search {b:?}"))?;
        ensure(a != Verdict::Unknown, format!("{m}: undecided"))?;
        if a == Verdict::Member {
            members += 1;
        } else {
            non_members += 1;
        }
    }
    let took = start.elapsed();
    ensure(took < Duration::from_secs(600), format!("took {took:?}"))?;
    Ok(format!(
        "{} moduli agree ({members} members, {non_members} non-members) in {took:.1?}",
        moduli.len()
    ))
}

fn criterion_4() -> Check {
    let expected: [(u32, &str); 11] = [
        (11, "23"),
        (23, "47"),
        (37, "223"),
        (41, "13367"),
        (59, "179951"),
        (67, "193707721"),
        (83, "167"),
        (97, "11447"),
        (101, "7432339208719"),
        (103, "2550183799"),
        (109, "745988807"),
    ];
    let start = Instant::now();
    let scan = scan_mersenne(2, 127, DEFAULT_FACTOR_BUDGET);
    let took = start.elapsed();
    for row in &scan.rows {
        let want = expected
            .iter()
            .find(|(t, _)| *t == row.t)
            .ok_or(format!("unexpected row t = {}", row.t))?;
        ensure(
            row.p.to_string() == want.1,
            format!("t = {}: p = {}, expected {}", row.t, row.p, want.1),
        )?;
        let m = (BigUint::from(1u32) << row.t) - 1u32;
        ensure(&row.p * &row.q == m, format!("t = {}: p q != 2^t - 1", row.t))?;
    }
    let mut budget_skips = Vec::new();
    for (t, _) in expected {
        if scan.rows.iter().any(|r| r.t == t) {
            continue;
        }
        let skip = scan
            .skipped
            .iter()
            .find(|s| s.t == t)
            .ok_or(format!("t = {t} neither emitted nor reported"))?;
        ensure(
            matches!(skip.reason, SkipReason::Budget { .. }),
            format!("t = {t} skipped for a reason other than budget"),
        )?;
        budget_skips.push(t);
    }
    ensure(took <= Duration::from_secs(1800), format!("took {took:?}"))?;
    Ok(format!(
        "{} rows, {} skipped for budget {:?}, in {took:.2?}",
        scan.rows.len(),
        budget_skips.len(),
        budget_skips
    ))
}

fn spec_for(m: u64, poly: DecodingPolynomial) -> std::result::Result<Arc<CodeSpec>, String> {
    let family = greedy_search(m, 2, 2, 7, 1_000_000).map_err(fail)?;
    ensure(
        family.n == 2 && family.verify(),
        format!("{m}: no matching family of size 2 in Z_{m}^2"),
    )?;
    Ok(Arc::new(CodeSpec::new(family, poly).map_err(fail)?))
}

fn specs() -> std::result::Result<Vec<Arc<CodeSpec>>, String> {
    let p15 = lagrange_polynomial(15).map_err(fail)?;
    let p511 = collision_search(511)
        .map_err(fail)?
        .polynomial()
        .cloned()
        .ok_or("511 has no witness")?;
    Ok(vec![spec_for(15, p15)?, spec_for(511, p511)?])
}

fn criterion_5() -> Check {
    let start = Instant::now();
    let mut notes = Vec::new();
    for spec in specs()? {
        let m = spec.m();
        ensure(
            spec.k() <= 4 && (m != 511 || spec.k() == 3),
            format!("{m}: k = {}", spec.k()),
        )?;
        let mut rng = ChaCha8Rng::seed_from_u64(m);
        for _ in 0..100 {
            let x: Vec<FieldElement> = (0..spec.n()).map(|_| spec.field().random(&mut rng)).collect();
            let word = codec::encode(&spec, &x).map_err(fail)?;
            for (i, xi) in x.iter().enumerate() {
                for seed in 0..100 {
                    let mut r = ChaCha8Rng::seed_from_u64(seed);
                    let got = codec::local_decode(&spec, |q| word.get(q).expect("query in range"), i, &mut r)
                        .map_err(fail)?;
                    ensure(&got == xi, format!("{m}: position {i} misdecoded without corruption"))?;
                }
            }
        }

        let delta = 0.01;
        let trials = 10_000u64;
        let x: Vec<FieldElement> = (0..spec.n()).map(|_| spec.field().random(&mut rng)).collect();
        let report = codec::success_rate(&spec, &x, &CorruptionPlan::uniform(delta, m), trials, m + 1).map_err(fail)?;
        let kd = spec.k() as f64 * delta;
        let threshold = 1.0 - kd - 3.0 * (kd / trials as f64).sqrt();
        for (i, r) in report.rates.iter().enumerate() {
            ensure(*r >= threshold, format!("{m}: position {i} rate {r} < {threshold:.4}"))?;
        }
        let worst = report.rates.iter().copied().fold(1.0, f64::min);
        notes.push(format!("N = {}: worst rate {worst:.4} >= {threshold:.4}", spec.len()));
    }
    let took = start.elapsed();
    ensure(took < Duration::from_secs(300), format!("took {took:?}"))?;
    Ok(format!("{} in {took:.1?}", notes.join("; ")))
}

fn criterion_6() -> Check {
    let start = Instant::now();
    let mut lens = Vec::new();
    for spec in specs()? {
        for i in 0..spec.n() {
            let a = codec::smoothness_audit(&spec, i).map_err(fail)?;
            ensure(
                a.uniform,
                format!("N = {}: queries for position {i} are not uniform", spec.len()),
            )?;
        }
        let scheme = PirScheme::new(spec.clone());
        let a = pir::privacy_audit(&scheme, 0, 1).map_err(fail)?;
        ensure(
            a.verdict,
            format!("N = {}: server views differ between indices", spec.len()),
        )?;
        lens.push(spec.len());
    }
    ensure(lens == vec![225, 261_121], format!("lengths {lens:?}"))?;
    let took = start.elapsed();
    ensure(took < Duration::from_secs(120), format!("took {took:?}"))?;
    Ok(format!("N = 225 and 261121 uniform in {took:.1?}"))
}

fn member_poly(m: u64) -> std::result::Result<DecodingPolynomial, String> {
    collision_search(m)
        .map_err(fail)?
        .polynomial()
        .cloned()
        .ok_or(format!("{m} has no witness"))
}

fn criterion_7() -> Check {
    let start = Instant::now();
    let a = compose::compose(&lagrange_polynomial(15).map_err(fail)?, &member_poly(511)?).map_err(fail)?;
    ensure(a.m() == 7665 && a.verify(), "15 x 511 product does not verify")?;
    let set = canonical_by_hand(7665, &[3, 5, 7, 73]);
    ensure(set.len() == 15, format!("7665 has {} canonical residues", set.len()))?;
    let b = compose::compose(&member_poly(511)?, &member_poly(2047)?).map_err(fail)?;
    ensure(b.m() == 1_046_017 && b.verify(), "511 x 2047 product does not verify")?;
    ensure(
        b.root().field().t() == 99,
        format!("511 x 2047 lives in GF(2^{})", b.root().field().t()),
    )?;
    ensure(
        a.k() <= 12 && b.k() <= 9,
        format!("term counts {} and {}", a.k(), b.k()),
    )?;
    for (p, set) in [(&a, set), (&b, canonical_by_hand(1_046_017, &[7, 73, 23, 89]))] {
        let g = p.root();
        let eval = |s: u64| {
            p.terms().iter().fold(g.field().zero(), |acc, t| {
                &acc + &(&t.coef * &g.pow_u64(s * t.exp % p.m()))
            })
        };
        ensure(eval(0).is_one(), format!("{}: P(1) != 1", p.m()))?;
        ensure(
            set.iter().all(|s| eval(*s).is_zero()),
            format!("{}: nonzero at a canonical residue", p.m()),
        )?;
    }
    let took = start.elapsed();
    ensure(took < Duration::from_secs(120), format!("took {took:?}"))?;
    Ok(format!("k = {} and {} in {took:.2?}", a.k(), b.k()))
}

fn criterion_8() -> Check {
    let mut members = Vec::new();
    for m in [511u64, 2047, 8_388_607] {
        let c = collision_search(m).map_err(fail)?;
        ensure(
            c.is_member() && c.polynomial().is_some_and(|p| p.verify()),
            format!("{m} not certified"),
        )?;
        members.push(m);
    }
    let inv = Inventory { members, primes: None };
    for (r, want) in [(4usize, 9u32), (5, 24), (6, 27)] {
        let got = plan_queries(r, &inv).map_err(fail)?.k_bound;
        ensure(got == BigUint::from(want), format!("r = {r}: {got}, expected {want}"))?;
    }
    let single = Inventory {
        members: vec![511],
        primes: None,
    };
    for r in 4..=20usize {
        let got = plan_queries(r, &single).map_err(fail)?.k_bound;
        let want = BigUint::from(3u32) << (r - 2);
        ensure(got == want, format!("single member, r = {r}: {got}, expected {want}"))?;
    }
    Ok("9, 24, 27 and 3*2^(r-2) for r = 4..20".into())
}

fn criterion_9() -> Check {
    let mut notes = Vec::new();
    for (spec, want) in specs()?.into_iter().zip([48u64, 81]) {
        let scheme = PirScheme::new(spec.clone());
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let db: Vec<bool> = (0..scheme.n()).map(|_| rng.gen()).collect();
        for i in 0..scheme.n() {
            let t = pir::simulate(&scheme, &db, i, 100 + i as u64).map_err(fail)?;
            ensure(t.output == db[i], format!("m = {}: wrong bit at {i}", spec.m()))?;
            ensure(
                t.comm_bits == want,
                format!("m = {}: comm_bits {}, expected {want}", spec.m(), t.comm_bits),
            )?;
        }
        notes.push(format!("m = {}: {want}", spec.m()));
    }
    Ok(notes.join(", "))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        (1, "published three-term polynomials verify", criterion_1),
        (2, "membership decisions", criterion_2),
        (3, "brute force agrees with collision search up to 3000", criterion_3),
        (4, "Mersenne semiprime scan up to t = 127", criterion_4),
        (5, "end-to-end local decoding", criterion_5),
        (6, "smoothness and privacy audits", criterion_6),
        (7, "composition", criterion_7),
        (8, "planner bounds", criterion_8),
        (9, "PIR communication", criterion_9),
    ];
    let mut failed = 0;
    for (n, name, f) in criteria {
        let start = Instant::now();
        let outcome = f();
        let took = start.elapsed();
        match outcome {
            Ok(detail) => println!("criterion {n}: PASS  {name} [{took:.2?}] {detail}"),
            Err(why) => {
                failed += 1;
                println!("criterion {n}: FAIL  {name} [{took:.2?}] {why}");
            }
        }
    }
    println!("{} of 9 criteria passed", 9 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
