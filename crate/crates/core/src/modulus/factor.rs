// Copyright 2026 The ldcforge Authors
//
// Licensed under the Apache License, Version 2.0 (see
// LICENSE or https://www.apache.org/licenses/LICENSE-2.0).
// This file may not be copied, modified, or distributed
// except according to those terms.

//! Primality testing and integer factorization.
//!
//! Trial division by every prime below 10^6 followed by Pollard's rho with
//! Brent's cycle detection. Inputs below 2^64 run on native integers; larger
//! inputs use arbitrary precision.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};
use std::time::{Duration, Instant};

use num_bigint::{BigUint, RandBigInt};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const TRIAL_DIVISION_BOUND: u32 = 1_000_000;

/// Default wall-clock budget for factoring one integer.
pub const DEFAULT_FACTOR_BUDGET: Duration = Duration::from_secs(30);

const RHO_BATCH: usize = 128;
const MR_ROUNDS: usize = 64;
const MR_SEED: u64 = 0x6c64_6366_6f72_6765;

/// How a primality verdict was reached.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Primality {
    /// Deterministic for n < 2^64.
    Proven,
    /// Passed 64 seeded Miller-Rabin rounds.
    Probable,
    Composite,
}

impl Primality {
    pub fn is_prime(self) -> bool {
        !matches!(self, Primality::Composite)
    }
}

pub(crate) fn small_primes() -> &'static [u32] {
    static PRIMES: OnceLock<Vec<u32>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let n = TRIAL_DIVISION_BOUND as usize;
        let mut sieve = vec![true; n + 1];
        sieve[0] = false;
        sieve[1] = false;
        let mut i = 2;
        while i * i <= n {
            if sieve[i] {
                let mut j = i * i;
                while j <= n {
                    sieve[j] = false;
                    j += i;
                }
            }
            i += 1;
        }
        (0..=n).filter(|k| sieve[*k]).map(|k| k as u32).collect()
    })
}

#[inline]
fn mulmod(a: u64, b: u64, n: u64) -> u64 {
    ((a as u128 * b as u128) % n as u128) as u64
}

pub(crate) fn powmod_u64(mut b: u64, mut e: u64, n: u64) -> u64 {
    let mut r = 1 % n;
    b %= n;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, b, n);
        }
        b = mulmod(b, b, n);
        e >>= 1;
    }
    r
}

fn mr_witness_u64(n: u64, a: u64) -> bool {
    let a = a % n;
    if a == 0 {
        return true;
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    let mut x = powmod_u64(a, d, n);
    if x == 1 || x == n - 1 {
        return true;
    }
    for _ in 1..s {
        x = mulmod(x, x, n);
        if x == n - 1 {
            return true;
        }
    }
    false
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    [2u64, 325, 9375, 28178, 450775, 9780504, 1795265022]
        .iter()
        .all(|a| mr_witness_u64(n, *a))
}

fn mr_witness_big(n: &BigUint, a: &BigUint, d: &BigUint, s: u64) -> bool {
    let n1 = n - 1u32;
    let mut x = a.modpow(d, n);
    if x.is_one() || x == n1 {
        return true;
    }
    for _ in 1..s {
        x = &x * &x % n;
        if x == n1 {
            return true;
        }
    }
    false
}

/// Primality of an arbitrary-precision integer.
pub fn primality(n: &BigUint) -> Primality {
    if let Some(v) = n.to_u64() {
        return if is_prime_u64(v) {
            Primality::Proven
        } else {
            Primality::Composite
        };
    }
    for p in small_primes().iter().take(200) {
        if (n % *p).is_zero() {
            return Primality::Composite;
        }
    }
    let n1 = n - 1u32;
    let s = n1.trailing_zeros().unwrap_or(0);
    let d = &n1 >> s;
    let mut rng = ChaCha8Rng::seed_from_u64(MR_SEED);
    let two = BigUint::from(2u32);
    for _ in 0..MR_ROUNDS {
        let a = rng.gen_biguint_range(&two, &n1);
        if !mr_witness_big(n, &a, &d, s) {
            return Primality::Composite;
        }
    }
    Primality::Probable
}

pub fn is_prime(n: &BigUint) -> bool {
    primality(n).is_prime()
}

enum Rho<T> {
    Factor(T),
    Failed,
    Timeout,
}

fn rho_u64(n: u64, c: u64, x0: u64, deadline: Option<Instant>) -> Rho<u64> {
    let f = |x: u64| (mulmod(x, x, n) + c) % n;
    let (mut x, mut y, mut ys) = (x0, x0, x0);
    let mut g = 1u64;
    let mut r = 1usize;
    let mut q = 1u64;
    while g == 1 {
        x = y;
        for _ in 0..r {
            y = f(y);
        }
        let mut k = 0;
        while k < r && g == 1 {
            ys = y;
            for _ in 0..RHO_BATCH.min(r - k) {
                y = f(y);
                q = mulmod(q, x.abs_diff(y), n);
            }
            g = q.gcd(&n);
            k += RHO_BATCH;
            if deadline.is_some_and(|d| Instant::now() > d) {
                return Rho::Timeout;
            }
        }
        r *= 2;
    }
    if g == n {
        loop {
            ys = f(ys);
            g = x.abs_diff(ys).gcd(&n);
            if g > 1 {
                break;
            }
        }
    }
    if g == n {
        Rho::Failed
    } else {
        Rho::Factor(g)
    }
}

/// Montgomery arithmetic modulo an odd `n < 2^127` with `R = 2^128`.
struct Mont128 {
    n: u128,
    ninv: u128,
}

#[inline]
fn mul_wide(a: u128, b: u128) -> (u128, u128) {
    let (a0, a1) = (a as u64 as u128, a >> 64);
    let (b0, b1) = (b as u64 as u128, b >> 64);
    let p00 = a0 * b0;
    let p01 = a0 * b1;
    let p10 = a1 * b0;
    let p11 = a1 * b1;
    let mid = (p00 >> 64) + (p01 as u64 as u128) + (p10 as u64 as u128);
    let lo = (p00 as u64 as u128) | (mid << 64);
    let hi = p11 + (p01 >> 64) + (p10 >> 64) + (mid >> 64);
    (lo, hi)
}

impl Mont128 {
    fn new(n: u128) -> Self {
        let mut inv = n;
        for _ in 0..7 {
            inv = inv.wrapping_mul(2u128.wrapping_sub(n.wrapping_mul(inv)));
        }
        Mont128 {
            n,
            ninv: inv.wrapping_neg(),
        }
    }

    #[inline]
    fn redc(&self, lo: u128, hi: u128) -> u128 {
        let k = lo.wrapping_mul(self.ninv);
        let (klo, khi) = mul_wide(k, self.n);
        let carry = lo.overflowing_add(klo).1 as u128;
        let r = hi + khi + carry;
        if r >= self.n {
            r - self.n
        } else {
            r
        }
    }

    #[inline]
    fn mul(&self, a: u128, b: u128) -> u128 {
        let (lo, hi) = mul_wide(a, b);
        self.redc(lo, hi)
    }
}

fn rho_u128(n: u128, c: u128, x0: u128, deadline: Option<Instant>) -> Rho<u128> {
    let mt = Mont128::new(n);
    let f = |x: u128| {
        let y = mt.mul(x, x) + c;
        if y >= n {
            y - n
        } else {
            y
        }
    };
    let (mut x, mut y, mut ys) = (x0, x0, x0);
    let mut g = 1u128;
    let mut r = 1usize;
    let mut q = 1u128;
    while g == 1 {
        x = y;
        for _ in 0..r {
            y = f(y);
        }
        let mut k = 0;
        while k < r && g == 1 {
            ys = y;
            for _ in 0..RHO_BATCH.min(r - k) {
                y = f(y);
                q = mt.mul(q, x.abs_diff(y));
            }
            g = q.gcd(&n);
            k += RHO_BATCH;
            if deadline.is_some_and(|d| Instant::now() > d) {
                return Rho::Timeout;
            }
        }
        r *= 2;
    }
    if g == n {
        loop {
            ys = f(ys);
            g = x.abs_diff(ys).gcd(&n);
            if g > 1 {
                break;
            }
        }
    }
    if g == n {
        Rho::Failed
    } else {
        Rho::Factor(g)
    }
}

fn rho_big(n: &BigUint, c: &BigUint, x0: &BigUint, deadline: Option<Instant>) -> Rho<BigUint> {
    let f = |x: &BigUint| (x * x + c) % n;
    let diff = |a: &BigUint, b: &BigUint| if a > b { a - b } else { b - a };
    let mut y = x0.clone();
    let mut x = x0.clone();
    let mut ys = x0.clone();
    let mut g = BigUint::one();
    let mut r = 1usize;
    let mut q = BigUint::one();
    while g.is_one() {
        x = y.clone();
        for _ in 0..r {
            y = f(&y);
        }
        let mut k = 0;
        while k < r && g.is_one() {
            ys = y.clone();
            for _ in 0..RHO_BATCH.min(r - k) {
                y = f(&y);
                q = q * diff(&x, &y) % n;
            }
            g = q.gcd(n);
            k += RHO_BATCH;
            if deadline.is_some_and(|d| Instant::now() > d) {
                return Rho::Timeout;
            }
        }
        r *= 2;
    }
    if &g == n {
        loop {
            ys = f(&ys);
            g = diff(&x, &ys).gcd(n);
            if !g.is_one() {
                break;
            }
        }
    }
    if &g == n {
        Rho::Failed
    } else {
        Rho::Factor(g)
    }
}

fn lift<T: Into<BigUint>>(r: Rho<T>) -> Rho<BigUint> {
    match r {
        Rho::Factor(d) => Rho::Factor(d.into()),
        Rho::Failed => Rho::Failed,
        Rho::Timeout => Rho::Timeout,
    }
}

/// Finds a nontrivial divisor of a composite `n`, or `None` on timeout.
fn split(n: &BigUint, deadline: Option<Instant>) -> Option<BigUint> {
    if n.is_even() {
        return Some(BigUint::from(2u32));
    }
    let mut c = 1u64;
    loop {
        let r = if let Some(v) = n.to_u64() {
            lift(rho_u64(v, c % v, 2, deadline))
        } else if n.bits() < 127 {
            lift(rho_u128(n.to_u128().expect("fits"), c as u128, 2, deadline))
        } else {
            rho_big(n, &BigUint::from(c), &BigUint::from(2u32), deadline)
        };
        match r {
            Rho::Factor(d) => return Some(d),
            Rho::Timeout => return None,
            Rho::Failed => c += 1,
        }
    }
}

/// Removes all prime factors below the trial bound; returns them (with
/// multiplicity, ascending) and the remaining cofactor.
pub fn trial_divide(n: &BigUint) -> (Vec<BigUint>, BigUint) {
    let mut found = Vec::new();
    let mut rest = n.clone();
    if let Some(mut v) = n.to_u64() {
        for p in small_primes() {
            let p = *p as u64;
            if p * p > v {
                break;
            }
            while v % p == 0 {
                found.push(BigUint::from(p));
                v /= p;
            }
        }
        // v is 1 or a prime if it survived up to sqrt; otherwise continue with the remainder
        if v > 1 && (v as u128) < (TRIAL_DIVISION_BOUND as u128).pow(2) {
            found.push(BigUint::from(v));
            v = 1;
        }
        return (found, BigUint::from(v));
    }
    for p in small_primes() {
        while (&rest % *p).is_zero() {
            found.push(BigUint::from(*p));
            rest /= *p;
        }
    }
    (found, rest)
}

/// Complete factorization (ascending, with multiplicity) within `budget`.
pub fn factorize(n: &BigUint, budget: Duration) -> Result<Vec<BigUint>> {
    let deadline = Instant::now() + budget;
    if n.is_zero() {
        return Err(Error::InvalidInput("cannot factor zero".into()));
    }
    let (mut primes, rest) = trial_divide(n);
    let mut stack = vec![rest];
    while let Some(c) = stack.pop() {
        if c.is_one() {
            continue;
        }
        if is_prime(&c) {
            primes.push(c);
            continue;
        }
        match split(&c, Some(deadline)) {
            Some(d) => {
                let e = &c / &d;
                stack.push(d);
                stack.push(e);
            }
            None => {
                stack.push(c);
                primes.sort();
                let remaining = stack.into_iter().fold(BigUint::one(), |a, b| a * b);
                return Err(Error::FactorBudgetExceeded {
                    partial: primes,
                    remaining,
                });
            }
        }
    }
    primes.sort();
    Ok(primes)
}

/// Complete factorization of a 64-bit integer (ascending, with multiplicity).
pub fn factor_u64(n: u64) -> Vec<u64> {
    if n <= 1 {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut v = n;
    for p in small_primes().iter().take(1000) {
        let p = *p as u64;
        if p * p > v {
            break;
        }
        while v.is_multiple_of(p) {
            out.push(p);
            v /= p;
        }
    }
    let mut stack = vec![v];
    while let Some(c) = stack.pop() {
        if c == 1 {
            continue;
        }
        if is_prime_u64(c) {
            out.push(c);
            continue;
        }
        let mut k = 1;
        let d = loop {
            match rho_u64(c, k, 2, None) {
                Rho::Factor(d) => break d,
                _ => k += 1,
            }
        };
        stack.push(d);
        stack.push(c / d);
    }
    out.sort_unstable();
    out
}

pub fn distinct_prime_factors_u64(n: u64) -> Vec<u64> {
    let mut f = factor_u64(n);
    f.dedup();
    f
}

type Factorization = Vec<(BigUint, u32)>;

/// Factorization of `2^t - 1` as (prime, multiplicity), memoized per `t`.
pub fn mersenne_factorization(t: u32, budget: Duration) -> Result<Vec<(BigUint, u32)>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Factorization>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(v) = cache.lock().unwrap().get(&t) {
        return Ok(v.clone());
    }
    let n = (BigUint::one() << t as usize) - 1u32;
    let flat = factorize(&n, budget)?;
    let mut grouped: Vec<(BigUint, u32)> = Vec::new();
    for p in flat {
        match grouped.last_mut() {
            Some((q, k)) if *q == p => *k += 1,
            _ => grouped.push((p, 1)),
        }
    }
    cache.lock().unwrap().insert(t, grouped.clone());
    Ok(grouped)
}

/// Shape of an integer as far as semiprime classification needs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FactorStructure {
    Unit,
    Prime(Primality),
    /// Exactly two prime factors, `p <= q`.
    Semiprime {
        p: BigUint,
        q: BigUint,
        p_primality: Primality,
        q_primality: Primality,
    },
    /// Three or more prime factors. `unfactored` holds composite cofactors
    /// that did not need splitting to decide this.
    Composite {
        prime_factors: Vec<BigUint>,
        unfactored: Vec<BigUint>,
    },
}

/// Decides whether `n` is a product of exactly two primes, splitting no
/// further than needed.
pub fn factor_semiprime(n: &BigUint, budget: Duration) -> Result<FactorStructure> {
    let deadline = Instant::now() + budget;
    if n.is_one() || n.is_zero() {
        return Ok(FactorStructure::Unit);
    }
    let (found, rest) = trial_divide(n);
    let rest_primality = if rest.is_one() { None } else { Some(primality(&rest)) };
    let semi = |mut a: BigUint, mut b: BigUint| {
        if a > b {
            std::mem::swap(&mut a, &mut b);
        }
        let (pa, pb) = (primality(&a), primality(&b));
        FactorStructure::Semiprime {
            p: a,
            q: b,
            p_primality: pa,
            q_primality: pb,
        }
    };
    match (found.len(), rest_primality) {
        (0, Some(p)) if p.is_prime() => Ok(FactorStructure::Prime(p)),
        (1, None) => Ok(FactorStructure::Prime(Primality::Proven)),
        (2, None) => Ok(semi(found[0].clone(), found[1].clone())),
        (1, Some(p)) if p.is_prime() => Ok(semi(found[0].clone(), rest)),
        (k, None) => Ok(FactorStructure::Composite {
            prime_factors: found[..k].to_vec(),
            unfactored: Vec::new(),
        }),
        (k, Some(p)) if k >= 2 || (k == 1 && !p.is_prime()) => {
            let (prime_factors, unfactored) = if p.is_prime() {
                let mut f = found;
                f.push(rest);
                (f, Vec::new())
            } else {
                (found, vec![rest])
            };
            Ok(FactorStructure::Composite {
                prime_factors,
                unfactored,
            })
        }
        // no small factors, composite remainder: one split decides it
        _ => {
            let remaining = deadline.saturating_duration_since(Instant::now());
            let d = split(&rest, Some(Instant::now() + remaining)).ok_or_else(|| Error::FactorBudgetExceeded {
                partial: Vec::new(),
                remaining: rest.clone(),
            })?;
            let e = &rest / &d;
            let (a, b) = if d < e { (d, e) } else { (e, d) };
            let (pa, pb) = (primality(&a), primality(&b));
            if pa.is_prime() && pb.is_prime() {
                Ok(semi(a, b))
            } else {
                let mut prime_factors = Vec::new();
                let mut unfactored = Vec::new();
                for (x, px) in [(a, pa), (b, pb)] {
                    if px.is_prime() {
                        prime_factors.push(x);
                    } else {
                        unfactored.push(x);
                    }
                }
                Ok(FactorStructure::Composite {
                    prime_factors,
                    unfactored,
                })
            }
        }
    }
}

/// Multiplicative order of `a` modulo `m` (`gcd(a, m) = 1`, `m > 1`).
pub fn multiplicative_order_u64(a: u64, m: u64) -> u64 {
    let primes = factor_u64(m);
    let mut distinct = primes.clone();
    distinct.dedup();
    // Carmichael lambda
    let mut lambda = 1u64;
    for p in &distinct {
        let k = primes.iter().filter(|q| *q == p).count() as u32;
        let phi = (p - 1) * p.pow(k - 1);
        lambda = lambda.lcm(&phi);
    }
    let mut order = lambda;
    for q in distinct_prime_factors_u64(lambda) {
        while order.is_multiple_of(q) && powmod_u64(a, order / q, m) == 1 {
            order /= q;
        }
    }
    order
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(s: &str) -> BigUint {
        s.parse().unwrap()
    }

    #[test]
    fn small_primality() {
        let brute = |n: u64| n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d));
        for n in 0..5000u64 {
            assert_eq!(is_prime_u64(n), brute(n), "{n}");
        }
        assert!(is_prime_u64(8191));
        assert!(is_prime_u64(2147483647));
        assert!(is_prime_u64(2305843009213693951));
        assert!(!is_prime_u64(3215031751)); // strong pseudoprime to bases 2,3,5,7
    }

    #[test]
    fn large_primality() {
        assert_eq!(
            primality(&big("170141183460469231731687303715884105727")),
            Primality::Probable
        );
        assert_eq!(
            primality(&big("170141183460469231731687303715884105729")),
            Primality::Composite
        );
    }

    #[test]
    fn mersenne_semiprimes() {
        let d = Duration::from_secs(30);
        let expect = |n: u64, p: u64, q: u64| {
            assert_eq!(
                factor_semiprime(&BigUint::from(n), d).unwrap(),
                FactorStructure::Semiprime {
                    p: p.into(),
                    q: q.into(),
                    p_primality: Primality::Proven,
                    q_primality: Primality::Proven
                }
            );
        };
        expect(2047, 23, 89);
        expect(8388607, 47, 178481);
        expect(511, 7, 73);
    }

    #[test]
    fn non_semiprimes() {
        let d = Duration::from_secs(30);
        assert_eq!(
            factor_semiprime(&BigUint::from(8191u32), d).unwrap(),
            FactorStructure::Prime(Primality::Proven)
        );
        match factor_semiprime(&BigUint::from((1u64 << 29) - 1), d).unwrap() {
            FactorStructure::Composite {
                prime_factors,
                unfactored,
            } => {
                assert_eq!(prime_factors, vec![big("233"), big("1103"), big("2089")]);
                assert!(unfactored.is_empty());
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn rho_splits_large_cofactor() {
        // 2^67 - 1 = 193707721 * 761838257287
        let n = (BigUint::one() << 67usize) - 1u32;
        let f = factorize(&n, Duration::from_secs(30)).unwrap();
        assert_eq!(f, vec![big("193707721"), big("761838257287")]);
        // product of two primes above the trial bound, below 2^64
        let f = factor_u64(1_000_003 * 1_000_033);
        assert_eq!(f, vec![1_000_003, 1_000_033]);
    }

    #[test]
    fn montgomery_path_splits_m101() {
        // 2^101 - 1 = 7432339208719 * 341117531003194129
        let n = (BigUint::one() << 101usize) - 1u32;
        let f = factorize(&n, Duration::from_secs(60)).unwrap();
        assert_eq!(f, vec![big("7432339208719"), big("341117531003194129")]);
    }

    #[test]
    fn montgomery_matches_bigint() {
        let n: u128 = (1u128 << 101) - 1;
        let mt = Mont128::new(n);
        let r = (BigUint::one() << 128usize) % BigUint::from(n);
        let to_mont = |a: u128| (BigUint::from(a) * &r % BigUint::from(n)).to_u128().unwrap();
        for (a, b) in [(3u128, 5u128), (n - 1, n - 2), (1 << 100, 12345678901234567890)] {
            let want = to_mont(
                (BigUint::from(a) * BigUint::from(b) % BigUint::from(n))
                    .to_u128()
                    .unwrap(),
            );
            assert_eq!(mt.mul(to_mont(a), to_mont(b)), want);
        }
    }

    #[test]
    fn budget_exhaustion_reports_partial() {
        let n = (BigUint::one() << 101usize) - 1u32;
        match factorize(&(n * 3u32), Duration::from_millis(0)) {
            Err(Error::FactorBudgetExceeded { partial, remaining }) => {
                assert_eq!(partial, vec![big("3")]);
                assert_eq!(remaining, (BigUint::one() << 101usize) - 1u32);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn orders_mod_m() {
        assert_eq!(multiplicative_order_u64(2, 15), 4);
        assert_eq!(multiplicative_order_u64(2, 2047), 11);
        assert_eq!(multiplicative_order_u64(2, 7665), 36);
        assert_eq!(multiplicative_order_u64(2, 511 * 2047), 99);
        for m in (3..500u64).step_by(2) {
            let brute = (1..).find(|k| powmod_u64(2, *k, m) == 1).unwrap();
            assert_eq!(multiplicative_order_u64(2, m), brute, "{m}");
        }
    }
}
