// Copyright 2026 The ldcforge Authors
//
// Licensed under the Apache License, Version 2.0 (see
// LICENSE or https://www.apache.org/licenses/LICENSE-2.0).
// This file may not be copied, modified, or distributed
// except according to those terms.

use std::sync::Arc;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::decpoly::{collision_search, lagrange_polynomial};
use crate::matchfam::{gram_family, greedy_search};

fn spec15() -> Arc<CodeSpec> {
    let fam = greedy_search(15, 2, 2, 1, 100_000).unwrap();
    Arc::new(CodeSpec::new(fam, lagrange_polynomial(15).unwrap()).unwrap())
}

fn spec511(lagrange: bool) -> Arc<CodeSpec> {
    let fam = greedy_search(511, 2, 2, 1, 10_000_000).unwrap();
    let poly = if lagrange {
        lagrange_polynomial(511).unwrap()
    } else {
        collision_search(511).unwrap().polynomial().unwrap().clone()
    };
    Arc::new(CodeSpec::new(fam, poly).unwrap())
}

fn random_message<R: Rng>(spec: &CodeSpec, rng: &mut R) -> Vec<FieldElement> {
    (0..spec.n()).map(|_| spec.field().random(rng)).collect()
}

/// Coordinate `v` straight from the definition.
fn naive_value(spec: &CodeSpec, x: &[FieldElement], v: &[u64]) -> FieldElement {
    let m = spec.m();
    x.iter()
        .zip(&spec.family().vectors)
        .fold(spec.field().zero(), |acc, (xj, u)| {
            let e = u.iter().zip(v).map(|(a, b)| a * b).sum::<u64>() % m;
            &acc + &(xj * &spec.gamma().pow_u64(e))
        })
}

#[test]
fn index_rule() {
    let s = spec15();
    assert_eq!(s.index_of(&[3, 2]).unwrap(), 3 + 2 * 15);
    assert_eq!(s.vector_at(33).unwrap(), vec![3, 2]);
    assert_eq!(s.len(), 225);
    assert!(s.vector_at(225).is_err());
    for i in 0..225 {
        assert_eq!(s.index_of(&s.vector_at(i).unwrap()).unwrap(), i);
    }
}

#[test]
fn encode_examples() {
    let s = spec15();
    let zero = vec![s.field().zero(); s.n()];
    assert!(encode(&s, &zero).unwrap().iter().all(|v| v.is_zero()));

    let fam = MatchingFamily {
        m: 15,
        h: 2,
        n: 1,
        target_set: vec![1, 6, 10],
        vectors: vec![vec![6, 12]],
    };
    let single = Arc::new(CodeSpec::new(fam, lagrange_polynomial(15).unwrap()).unwrap());
    let cw = encode(&single, &[single.field().one()]).unwrap();
    assert!(cw.get(0).unwrap().is_one());

    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let x = random_message(&s, &mut rng);
    let cw = encode(&s, &x).unwrap();
    for i in 0..s.len() {
        assert_eq!(cw.get(i).unwrap(), naive_value(&s, &x, &s.vector_at(i).unwrap()));
    }
    assert!(matches!(
        encode(&s, &x[..1]),
        Err(Error::MessageLengthMismatch { expected: 2, got: 1 })
    ));
}

#[test]
fn encoding_matches_definition_across_chunks() {
    let s = spec511(false);
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let x = random_message(&s, &mut rng);
    let cw = encode(&s, &x).unwrap();
    for _ in 0..500 {
        let i = rng.gen_range(0..s.len());
        assert_eq!(cw.get(i).unwrap(), naive_value(&s, &x, &s.vector_at(i).unwrap()));
    }
    for i in [0, 16383, 16384, 16385, s.len() - 1] {
        assert_eq!(cw.get(i).unwrap(), naive_value(&s, &x, &s.vector_at(i).unwrap()));
    }
}

#[test]
fn spec_rejections() {
    let fam = greedy_search(15, 2, 2, 1, 100_000).unwrap();
    assert!(CodeSpec::new(fam.clone(), lagrange_polynomial(511).unwrap()).is_err());
    let mut bad = fam.clone();
    bad.vectors[0][0] = (bad.vectors[0][0] + 1) % 15;
    assert!(CodeSpec::new(bad, lagrange_polynomial(15).unwrap()).is_err());
    // no constant term: X^5 * P(X) still decodes up to scaling but is refused
    let p = lagrange_polynomial(15).unwrap();
    let shifted = DecodingPolynomial::from_terms(
        15,
        p.root().clone(),
        p.terms().iter().map(|t| (t.exp + 1, t.coef.clone())),
    )
    .unwrap();
    assert!(CodeSpec::new(fam.clone(), shifted).is_err());
    let big = MatchingFamily {
        h: 9,
        vectors: fam.vectors.iter().map(|v| [v.as_slice(), &[0; 7]].concat()).collect(),
        ..fam
    };
    assert!(matches!(
        CodeSpec::new(big, lagrange_polynomial(15).unwrap()),
        Err(Error::BudgetExceeded(_))
    ));
}

#[test]
fn perfect_decoding_without_corruption() {
    for s in [spec15(), spec511(false)] {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..10 {
            let x = random_message(&s, &mut rng);
            let cw = encode(&s, &x).unwrap();
            for i in 0..s.n() {
                for _ in 0..20 {
                    let mut calls = 0;
                    let got = local_decode(
                        &s,
                        |q| {
                            calls += 1;
                            cw.get(q).unwrap()
                        },
                        i,
                        &mut rng,
                    )
                    .unwrap();
                    assert_eq!(got, x[i]);
                    assert_eq!(calls, s.k());
                }
            }
        }
    }
}

#[test]
fn every_v_decodes_for_m15() {
    let s = spec15();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let x = random_message(&s, &mut rng);
    let cw = encode(&s, &x).unwrap();
    for idx in 0..s.len() {
        let v = s.vector_at(idx).unwrap();
        for i in 0..s.n() {
            assert_eq!(local_decode_at(&s, |q| cw.get(q).unwrap(), i, &v).unwrap(), x[i]);
        }
    }
}

#[test]
fn query_counts() {
    assert_eq!(spec15().k(), 4);
    assert_eq!(spec511(false).k(), 3);
    let fam = gram_family(2047, 1).unwrap();
    let poly = collision_search(2047).unwrap().polynomial().unwrap().clone();
    let s = CodeSpec::new(fam, poly).unwrap();
    let mut calls = 0;
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    local_decode(
        &s,
        |_| {
            calls += 1;
            s.field().zero()
        },
        0,
        &mut rng,
    )
    .unwrap();
    assert_eq!(calls, 3);
    assert!(matches!(
        local_decode(&s, |_| s.field().zero(), 1, &mut rng),
        Err(Error::IndexOutOfRange { index: 1, bound: 1 })
    ));
}

#[test]
fn both_511_polynomials_decode() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for s in [spec511(false), spec511(true)] {
        for _ in 0..3 {
            let x = random_message(&s, &mut rng);
            let cw = encode(&s, &x).unwrap();
            for i in 0..s.n() {
                let got = local_decode(&s, |q| cw.get(q).unwrap(), i, &mut rng).unwrap();
                assert_eq!(got, x[i]);
            }
        }
    }
}

#[test]
fn corruption() {
    let s = spec15();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let x = random_message(&s, &mut rng);
    let cw = encode(&s, &x).unwrap();
    assert_eq!(corrupt(&cw, &CorruptionPlan::uniform(0.0, 1)).unwrap(), cw);
    let c = corrupt(&cw, &CorruptionPlan::uniform(0.1, 1)).unwrap();
    assert_eq!(c.hamming_distance(&cw), 22);
    let plan = CorruptionPlan {
        delta: 0.05,
        positions: Positions::Explicit(vec![0, 5, 9]),
        replacement: Replacement::FlipRandomNonequal,
    };
    let c = corrupt(&cw, &plan).unwrap();
    assert_eq!(c.hamming_distance(&cw), 3);
    for p in [0, 5, 9] {
        assert_ne!(c.get(p).unwrap(), cw.get(p).unwrap());
    }
    let zero = CorruptionPlan {
        replacement: Replacement::SetZero,
        ..plan.clone()
    };
    let c = corrupt(&cw, &zero).unwrap();
    assert!([0, 5, 9].iter().all(|p| c.get(*p).unwrap().is_zero()));
    let over = CorruptionPlan { delta: 0.01, ..plan };
    assert!(corrupt(&cw, &over).is_err());
    assert!(corrupt(&cw, &CorruptionPlan::uniform(1.0, 1)).is_err());
}

#[test]
fn success_rates() {
    let s = spec15();
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let x = random_message(&s, &mut rng);
    let clean = success_rate(&s, &x, &CorruptionPlan::uniform(0.0, 1), 200, 1).unwrap();
    assert!(clean.rates.iter().all(|r| *r == 1.0));
    let noisy = success_rate(&s, &x, &CorruptionPlan::uniform(0.02, 1), 10_000, 2).unwrap();
    let kd: f64 = 4.0 * 0.02;
    let slack = 3.0 * (kd * (1.0 - kd) / 10_000.0).sqrt();
    assert!((noisy.floor - 0.92).abs() < 1e-12);
    for r in &noisy.rates {
        assert!(*r >= noisy.floor - slack, "{r}");
    }
}

#[test]
fn smoothness() {
    let s = spec15();
    for i in 0..s.n() {
        let a = smoothness_audit(&s, i).unwrap();
        assert!(a.uniform);
        assert_eq!(a.histograms.len(), 4);
        assert!(a.histograms.iter().all(|h| h.len() == 225));
    }
    assert_eq!(
        smoothness_audit(&s, 0).unwrap().histograms,
        smoothness_audit(&s, 1).unwrap().histograms
    );
}

#[test]
fn file_round_trip() {
    let s = spec15();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let cw = encode(&s, &random_message(&s, &mut rng)).unwrap();
    let mut buf = Vec::new();
    write_codeword(&cw, &mut buf).unwrap();
    assert_eq!(buf.len(), 16 + 225);
    assert_eq!(&buf[..4], b"LDC1");
    assert_eq!(&buf[4..16], &[4, 0, 0, 0, 15, 0, 0, 0, 2, 0, 0, 0]);
    assert_eq!(read_codeword(&s, buf.as_slice()).unwrap(), cw);

    let mut high = buf.clone();
    high[16] |= 0x10;
    assert!(matches!(read_codeword(&s, high.as_slice()), Err(Error::Format(_))));
    let mut magic = buf.clone();
    magic[3] = b'2';
    assert!(read_codeword(&s, magic.as_slice()).is_err());
    assert!(read_codeword(&s, &buf[..100]).is_err());
    let mut long = buf;
    long.push(0);
    assert!(read_codeword(&s, long.as_slice()).is_err());
}

#[test]
fn spec_json_round_trip() {
    let s = spec15();
    let j = serde_json::to_string(s.as_ref()).unwrap();
    let back: CodeSpec = serde_json::from_str(&j).unwrap();
    assert_eq!(&back, s.as_ref());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]
    #[test]
    fn encoding_is_linear(seed in any::<u64>()) {
        let s = spec15();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = random_message(&s, &mut rng);
        let y = random_message(&s, &mut rng);
        let xy: Vec<FieldElement> = x.iter().zip(&y).map(|(a, b)| a + b).collect();
        let lhs = encode(&s, &x).unwrap().try_add(&encode(&s, &y).unwrap()).unwrap();
        prop_assert_eq!(lhs, encode(&s, &xy).unwrap());
    }

    #[test]
    fn queries_stay_in_range(seed in any::<u64>(), i in 0usize..2) {
        let s = spec15();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let v = random_vector(&s, &mut rng);
        let q = s.queries(i, &v).unwrap();
        prop_assert_eq!(q.len(), s.k());
        prop_assert_eq!(q[0], s.index_of(&v).unwrap());
        prop_assert!(q.iter().all(|x| *x < s.len()));
    }
}
