// Copyright 2026 The ldcforge Authors
//
// Licensed under the Apache License, Version 2.0 (see
// LICENSE or https://www.apache.org/licenses/LICENSE-2.0).
// This file may not be copied, modified, or distributed
// except according to those terms.

use super::sqrt::sum_of_two_squares;
use super::MatchingFamily;
use crate::error::{Error, Result};
use crate::modulus::{self, crt, mod_inverse};

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn addmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 + b as u128) % p as u128) as u64
}

/// `rows[k] += s rows[j]` on both the symmetric matrix (rows and columns)
/// and the accumulated transform.
#[allow(clippy::needless_range_loop)]
fn add_into(mat: &mut [Vec<u64>], l: &mut [Vec<u64>], k: usize, j: usize, s: u64, p: u64) {
    let n = mat.len();
    for c in 0..n {
        let v = mulmod(s, mat[j][c], p);
        mat[k][c] = addmod(mat[k][c], v, p);
    }
    for r in 0..n {
        let v = mulmod(s, mat[r][j], p);
        mat[r][k] = addmod(mat[r][k], v, p);
    }
    for c in 0..n {
        let v = mulmod(s, l[j][c], p);
        l[k][c] = addmod(l[k][c], v, p);
    }
}

fn invert(mut a: Vec<Vec<u64>>, p: u64) -> Vec<Vec<u64>> {
    let n = a.len();
    let mut inv: Vec<Vec<u64>> = (0..n).map(|i| (0..n).map(|j| u64::from(i == j)).collect()).collect();
    for col in 0..n {
        let piv = (col..n).find(|r| a[*r][col] != 0).expect("transform is invertible");
        a.swap(col, piv);
        inv.swap(col, piv);
        let d = mod_inverse(a[col][col], p).expect("nonzero pivot");
        for c in 0..n {
            a[col][c] = mulmod(a[col][c], d, p);
            inv[col][c] = mulmod(inv[col][c], d, p);
        }
        for r in 0..n {
            if r != col && a[r][col] != 0 {
                let f = p - a[r][col];
                for c in 0..n {
                    a[r][c] = addmod(a[r][c], mulmod(f, a[col][c], p), p);
                    inv[r][c] = addmod(inv[r][c], mulmod(f, inv[col][c], p), p);
                }
            }
        }
    }
    inv
}

/// `n` vectors over `F_p` whose Gram matrix is `J - I`, for an odd prime
/// `p`. Columns that vanish identically are dropped, keeping at least one.
pub fn realize_ones_gram(n: usize, p: u64) -> Vec<Vec<u64>> {
    let one = 1 % p;
    let mut mat: Vec<Vec<u64>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { 0 } else { one }).collect())
        .collect();
    let mut l: Vec<Vec<u64>> = (0..n).map(|i| (0..n).map(|j| u64::from(i == j)).collect()).collect();

    // congruence reduction: L M L^T becomes diagonal
    for k in 0..n {
        if mat[k][k] == 0 {
            if let Some(j) = (k + 1..n).find(|j| mat[k][*j] != 0) {
                let with_plus = addmod(addmod(mat[k][k], mulmod(2, mat[k][j], p), p), mat[j][j], p);
                let s = if with_plus != 0 { 1 } else { p - 1 };
                add_into(&mut mat, &mut l, k, j, s, p);
            }
        }
        let pivot = mat[k][k];
        if pivot == 0 {
            continue;
        }
        let pinv = mod_inverse(pivot, p).expect("nonzero pivot");
        for i in k + 1..n {
            if mat[i][k] != 0 {
                let f = p - mulmod(mat[i][k], pinv, p);
                add_into(&mut mat, &mut l, i, k, f, p);
            }
        }
    }
    debug_assert!((0..n).all(|i| (0..n).all(|j| i == j || mat[i][j] == 0)));

    // M = L^-1 D L^-T and D = E E^T with two columns per diagonal entry
    let linv = invert(l, p);
    let e: Vec<(u64, u64)> = (0..n).map(|i| sum_of_two_squares(mat[i][i], p)).collect();
    let mut cols: Vec<Vec<u64>> = Vec::with_capacity(2 * n);
    for (k, (x, y)) in e.iter().enumerate() {
        for w in [*x, *y] {
            cols.push((0..n).map(|i| mulmod(linv[i][k], w, p)).collect());
        }
    }
    cols.retain(|c| c.iter().any(|v| *v != 0));
    if cols.is_empty() {
        cols.push(vec![0; n]);
    }
    (0..n).map(|i| cols.iter().map(|c| c[i]).collect()).collect()
}

/// A family of `n` vectors over `Z_m`, `m = p q`, with every cross product
/// equal to 1 and every self product 0.
pub fn gram_family(m: u64, n: usize) -> Result<MatchingFamily> {
    let profile = modulus::profile(m)?;
    if profile.r() != 2 {
        return Err(modulus::invalid(m, "gram_family needs exactly two prime factors"));
    }
    if n == 0 {
        return Err(Error::InvalidInput("gram_family needs n >= 1".into()));
    }
    let (p, q) = (profile.primes[0], profile.primes[1]);
    let rp = realize_ones_gram(n, p);
    let rq = realize_ones_gram(n, q);
    let h = rp[0].len().max(rq[0].len());
    let vectors = (0..n)
        .map(|i| {
            (0..h)
                .map(|c| {
                    let a = rp[i].get(c).copied().unwrap_or(0);
                    let b = rq[i].get(c).copied().unwrap_or(0);
                    crt(&[a, b], &[p, q])
                })
                .collect::<Result<Vec<u64>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(MatchingFamily {
        m,
        h,
        n,
        target_set: profile.canonical,
        vectors,
    })
}

#[cfg(test)]
mod tests {
    use super::super::dot;
    use super::*;

    fn is_ones_gram(vs: &[Vec<u64>], m: u64) -> bool {
        vs.iter()
            .enumerate()
            .all(|(i, u)| vs.iter().enumerate().all(|(j, w)| dot(u, w, m) == u64::from(i != j)))
    }

    #[test]
    fn examples() {
        let f = gram_family(15, 2).unwrap();
        assert!(f.verify());
        assert_eq!(f.gram(), vec![vec![0, 1], vec![1, 0]]);
        let f = gram_family(511, 4).unwrap();
        assert!(f.verify() && f.h <= 8);
        assert!(is_ones_gram(&f.vectors, 511));
        let f = gram_family(2047, 1).unwrap();
        assert_eq!(f.n, 1);
        assert_eq!(dot(&f.vectors[0], &f.vectors[0], 2047), 0);
        assert!(matches!(gram_family(105, 2), Err(Error::InvalidModulus { .. })));
    }

    #[test]
    fn realizations_for_tested_moduli() {
        for m in [15u64, 35, 511, 2047] {
            let primes = modulus::profile(m).unwrap().primes;
            for n in 1..=16 {
                let f = gram_family(m, n).unwrap();
                assert!(f.h <= 2 * n && f.h >= 1);
                assert!(is_ones_gram(&f.vectors, m), "{m} {n}");
                assert!(f.verify());
                for p in &primes {
                    let red: Vec<Vec<u64>> = f.vectors.iter().map(|v| v.iter().map(|x| x % p).collect()).collect();
                    assert!(is_ones_gram(&red, *p), "{m} {n} mod {p}");
                }
            }
        }
    }
}
