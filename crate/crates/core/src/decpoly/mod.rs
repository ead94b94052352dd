// Copyright 2026 The ldcforge Authors
//
// Licensed under the Apache License, Version 2.0 (see
// LICENSE or https://www.apache.org/licenses/LICENSE-2.0).
// This file may not be copied, modified, or distributed
// except according to those terms.

//! Decoding polynomials: interpolation, verification, and the search for
//! three-term polynomials over moduli with two prime factors.

mod brute;
mod cert;
mod lagrange;
mod poly;
mod search;
mod three;

pub use brute::{brute_force_m2, BRUTE_FORCE_CAP};
pub use cert::{BudgetReport, Exhaustion, M2Certificate, MemberWitness, SearchMethod, Verdict};
pub use lagrange::{lagrange_in, lagrange_polynomial, LAGRANGE_MAX_PRIMES};
pub use poly::{verify_decoding_polynomial, DecodingPolynomial, Term, Violation};
pub use search::{collision_search, collision_search_with, SearchOptions, MAX_SEARCH_DEGREE, MAX_SEARCH_MODULUS};
pub use three::{build_three_monomial, coset_ratio, TwoPrimeContext};

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{FieldElement, FieldSpec};
    use crate::error::Error;
    use crate::modulus::{self, profile};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn table_poly(t: u32, m: u64, terms: &[(u64, u64)]) -> DecodingPolynomial {
        let f = FieldSpec::new(t).unwrap();
        let g = f.x();
        DecodingPolynomial::from_terms(m, g.clone(), terms.iter().map(|(e, c)| (*e, g.pow_u64(*c)))).unwrap()
    }

    #[test]
    fn published_m11_polynomial() {
        let p = table_poly(11, 2047, &[(29, 1485), (27, 694), (0, 118)]);
        assert_eq!(p.field().modulus_exponents(), vec![11, 2, 0]);
        assert_eq!(p.root(), &p.field().primitive_root(2047).unwrap());
        assert!(verify_decoding_polynomial(&p));
        let bad = table_poly(11, 2047, &[(29, 1485), (27, 694), (0, 117)]);
        assert!(!bad.verify());
        assert!(matches!(
            bad.violation(),
            Some(Violation::NonzeroAt(_)) | Some(Violation::NotOneAtOne)
        ));
    }

    #[test]
    fn published_m23_polynomial() {
        let p = table_poly(23, 8388607, &[(3526, 6526329), (3363, 7574532), (0, 2861754)]);
        assert!(p.verify());
    }

    #[test]
    fn zero_polynomial_fails() {
        let f = FieldSpec::new(11).unwrap();
        let p = DecodingPolynomial::from_terms(2047, f.x(), []).unwrap();
        assert_eq!(p.violation(), Some(Violation::NotOneAtOne));
    }

    #[test]
    fn wrong_root_order_fails() {
        let f = FieldSpec::new(11).unwrap();
        let p = DecodingPolynomial::from_terms(2047, f.x().pow_u64(89), [(0, f.one())]).unwrap();
        assert_eq!(p.violation(), Some(Violation::RootOrder));
    }

    #[test]
    fn coset_ratios_mod_15() {
        let prof = profile(15).unwrap();
        let g = FieldSpec::new(4).unwrap().primitive_root(15).unwrap();
        assert_eq!(coset_ratio(&prof, &g, 1).unwrap(), g.pow_u64(3));
        assert_eq!(coset_ratio(&prof, &g, 7).unwrap(), g.pow_u64(11));
        assert_eq!(
            coset_ratio(&prof, &g, 3),
            Err(Error::ForbiddenCoset { m: 15, alpha: 3 })
        );
        assert!(coset_ratio(&prof, &g, 5).is_err());
    }

    /// Solves the Vandermonde system for the coefficients of a polynomial
    /// of degree below `points.len()` by Gaussian elimination.
    fn vandermonde_solve(points: &[(FieldElement, FieldElement)]) -> Vec<FieldElement> {
        let n = points.len();
        let mut rows: Vec<Vec<FieldElement>> = points
            .iter()
            .map(|(x, y)| {
                let mut r: Vec<FieldElement> = (0..n).map(|j| x.pow_u64(j as u64)).collect();
                r.push(y.clone());
                r
            })
            .collect();
        for col in 0..n {
            let piv = (col..n).find(|r| !rows[*r][col].is_zero()).unwrap();
            rows.swap(col, piv);
            let inv = rows[col][col].inv().unwrap();
            rows[col] = rows[col].iter().map(|v| v * &inv).collect();
            for r in 0..n {
                if r != col && !rows[r][col].is_zero() {
                    let k = rows[r][col].clone();
                    rows[r] = rows[r].iter().zip(&rows[col]).map(|(a, b)| a + &(&k * b)).collect();
                }
            }
        }
        rows.into_iter().map(|r| r[n].clone()).collect()
    }

    #[test]
    fn lagrange_matches_vandermonde() {
        for m in [15u64, 511, 2047, 105] {
            let p = lagrange_polynomial(m).unwrap();
            let prof = profile(m).unwrap();
            let g = p.root().clone();
            let f = g.field().clone();
            let mut pts = vec![(f.one(), f.one())];
            pts.extend(prof.canonical.iter().map(|s| (g.pow_u64(*s), f.zero())));
            let coeffs = vandermonde_solve(&pts);
            let want: Vec<(u64, FieldElement)> = coeffs
                .into_iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (i as u64, c))
                .collect();
            let got: Vec<(u64, FieldElement)> = p.terms().iter().map(|t| (t.exp, t.coef.clone())).collect();
            assert_eq!(got, want, "m = {m}");
            assert!(p.k() <= 1 << prof.r());
            assert!(p.evaluate(&f.one()).is_one());
        }
        assert_eq!(lagrange_polynomial(15).unwrap().k(), 4);
    }

    #[test]
    fn decisions_for_small_moduli() {
        assert_eq!(collision_search(15).unwrap().verdict, Verdict::NonMember);
        assert_eq!(brute_force_m2(15).unwrap().verdict, Verdict::NonMember);
        assert_eq!(brute_force_m2(15).unwrap().exhaustion.unwrap().examined, 14 * 13);
        for m in [511u64, 2047] {
            let c = collision_search(m).unwrap();
            assert_eq!(c.verdict, Verdict::Member, "{m}");
            let w = c.witness.as_ref().unwrap();
            assert!(w.alpha <= w.beta);
            assert_eq!(w.c, 0);
            assert!(w.poly.verify());
            assert_eq!(w.poly.k(), 3);
            assert_eq!(build_three_monomial(&c).unwrap(), w.poly);
            let b = brute_force_m2(m).unwrap();
            assert_eq!(b.verdict, Verdict::Member, "{m}");
            assert!(b.polynomial().unwrap().verify());
        }
    }

    #[test]
    fn collision_search_rejects_bad_moduli() {
        assert!(matches!(collision_search(105), Err(Error::InvalidModulus { .. })));
        assert!(matches!(collision_search(45), Err(Error::InvalidModulus { .. })));
        assert!(matches!(brute_force_m2(200_003 * 3), Err(Error::BudgetExceeded(_))));
    }

    #[test]
    fn search_is_independent_of_sharding_and_passes() {
        for m in [511u64, 2047, 1501] {
            let base = collision_search(m).unwrap();
            for (shards, mem) in [(Some(1), 8 << 30), (Some(13), 8 << 30), (Some(3), 256)] {
                let opts = SearchOptions {
                    shards,
                    time_budget: None,
                    memory_budget: mem,
                };
                assert_eq!(collision_search_with(m, &opts).unwrap(), base, "{m} {shards:?} {mem}");
            }
        }
    }

    #[test]
    fn zero_time_budget_reports_unknown() {
        let opts = SearchOptions {
            shards: Some(1),
            time_budget: Some(std::time::Duration::ZERO),
            memory_budget: 8 << 30,
        };
        let c = collision_search_with(8388607, &opts).unwrap();
        assert_eq!(c.verdict, Verdict::Unknown);
        assert!(c.budget.is_some());
    }

    /// Every ordered pair decided by the determinant identity and an
    /// explicit solve, with no precomputed normalization.
    fn naive_member(m: u64) -> bool {
        let ctx = TwoPrimeContext::new(m).unwrap();
        let f = &ctx.field;
        let parts: Vec<(FieldElement, FieldElement)> = (0..m)
            .map(|x| {
                let (a, b) = ctx.ratio_parts(x);
                (
                    FieldElement::from_raw(f.clone(), a),
                    FieldElement::from_raw(f.clone(), b),
                )
            })
            .collect();
        (1..m).any(|u| {
            (1..m).any(|v| {
                u != v
                    && &parts[u as usize].0 * &parts[v as usize].1 == &parts[u as usize].1 * &parts[v as usize].0
                    && ctx.solve(u, v).is_ok()
            })
        })
    }

    #[test]
    fn brute_force_agrees_with_naive_pairs() {
        let moduli: Vec<u64> = (15..260)
            .step_by(2)
            .filter(|m| profile(*m).is_ok_and(|p| p.r() == 2))
            .collect();
        for m in moduli {
            let naive = naive_member(m);
            let b = brute_force_m2(m).unwrap();
            let c = collision_search(m).unwrap();
            assert_eq!(b.is_member(), naive, "{m}");
            assert_eq!(c.is_member(), naive, "{m}");
        }
    }

    #[test]
    fn orbit_keys_are_sound() {
        let ctx = TwoPrimeContext::new(2047).unwrap();
        let t = ctx.t();
        let reps: Vec<u64> = (1..2047)
            .filter(|a| a % 23 != 0 && a % 89 != 0 && modulus::is_coset_minimum(*a, 2047, t))
            .collect();
        let keyed: Vec<(u64, FieldElement, crate::algebra::gf2x::Limbs)> = reps
            .iter()
            .map(|a| {
                let r = search::ratio(&ctx, *a).unwrap();
                let (k, _) = search::orbit_key(&ctx, &r);
                (*a, FieldElement::from_raw(ctx.field.clone(), r), k)
            })
            .collect();
        let conjugate = |x: &FieldElement, y: &FieldElement| {
            (0..t as u64).any(|c| (0..t as u64).any(|d| x.frobenius(c) == y.frobenius(d)))
        };
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..1000 {
            let i = rng.gen_range(0..keyed.len());
            let j = rng.gen_range(0..keyed.len());
            let same_key = keyed[i].2 == keyed[j].2;
            assert_eq!(same_key, conjugate(&keyed[i].1, &keyed[j].1));
        }
    }

    #[test]
    fn no_two_term_decoding_polynomials() {
        // a X^u + b X^v with u != v decodes only if gamma^(s w) is the same
        // for every canonical s, where w = u - v
        for m in [15u64, 21, 35, 51, 511, 2047, 1501] {
            let ctx = TwoPrimeContext::new(m).unwrap();
            let g = &ctx.gamma;
            for w in 1..m {
                let e1 = g.pow_u64(w);
                let e01 = g.pow_u64(w * ctx.s01 % m);
                let e10 = g.pow_u64(w * ctx.s10 % m);
                assert!(!(e1 == e01 && e1 == e10), "m = {m}, w = {w}");
            }
        }
    }

    #[test]
    fn certificate_json_round_trip() {
        for m in [15u64, 2047] {
            let c = collision_search(m).unwrap();
            let s = serde_json::to_string(&c).unwrap();
            let back: M2Certificate = serde_json::from_str(&s).unwrap();
            assert_eq!(back, c);
            let v: serde_json::Value = serde_json::from_str(&s).unwrap();
            assert_eq!(v["m"], m.to_string());
        }
        let c = collision_search(2047).unwrap();
        let v = serde_json::to_value(&c).unwrap();
        assert_eq!(v["verdict"], "member");
        assert!(v["poly"]["terms"].as_array().unwrap().len() == 3);
        assert_eq!(v["field"]["modulus_hex"], "805");
    }
}
