use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::ParametricHomMatrix;

/// Exact determinant by fraction-free (Bareiss) elimination.
pub fn bareiss(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(r) = (k + 1..n).find(|&r| !a[r][k].is_zero()) else {
                return BigInt::zero();
            };
            a.swap(k, r);
            sign = !sign;
        }
        let (top, bottom) = a.split_at_mut(k + 1);
        let pivot_row = &top[k];
        let pivot = &pivot_row[k];
        for row in bottom.iter_mut() {
            let factor = row[k].clone();
            for j in k + 1..n {
                let v = &row[j] * pivot - &factor * &pivot_row[j];
                row[j] = v / &prev;
            }
            row[k] = BigInt::zero();
        }
        prev = pivot.clone();
    }
    let d = a[n - 1][n - 1].clone();
    if sign {
        -d
    } else {
        d
    }
}

/// Determinant modulo a small prime by Gaussian elimination.
pub fn det_mod(mut a: Vec<Vec<u64>>, p: u64) -> u64 {
    let n = a.len();
    let mut det = 1u64;
    for k in 0..n {
        let Some(r) = (k..n).find(|&r| a[r][k] % p != 0) else {
            return 0;
        };
        if r != k {
            a.swap(k, r);
            det = (p - det) % p;
        }
        let pivot = a[k][k] % p;
        det = det * pivot % p;
        let inv = pow_mod(pivot, p - 2, p);
        for r in k + 1..n {
            let f = a[r][k] % p * inv % p;
            if f == 0 {
                continue;
            }
            for j in k..n {
                a[r][j] = (a[r][j] + (p - f) * (a[k][j] % p)) % p;
            }
        }
    }
    det
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

/// `det M` at an integer assignment of the pattern's variables.
pub fn det_at(pattern: &ParametricHomMatrix, assignment: &[i64]) -> BigInt {
    let values: Vec<BigInt> = assignment.iter().map(|&v| BigInt::from(v)).collect();
    bareiss(pattern.instantiate(&values))
}

pub fn det_at_big(pattern: &ParametricHomMatrix, assignment: &[BigInt]) -> BigInt {
    bareiss(pattern.instantiate(assignment))
}

pub fn det_at_mod(pattern: &ParametricHomMatrix, assignment: &[i64], p: u64) -> u64 {
    let values: Vec<u64> = assignment
        .iter()
        .map(|&v| v.rem_euclid(p as i64) as u64)
        .collect();
    det_mod(pattern.instantiate(&values), p)
}

/// All unit vectors, then `random` assignments with entries in
/// `[-range, range]` drawn from a fixed seed.
pub fn default_assignments(nvars: usize, random: usize, range: i64, seed: u64) -> Vec<Vec<i64>> {
    let mut out: Vec<Vec<i64>> = (0..nvars)
        .map(|v| (0..nvars).map(|u| i64::from(u == v)).collect())
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..random {
        out.push((0..nvars).map(|_| rng.random_range(-range..=range)).collect());
    }
    out
}

/// `gcd |det M|` over the assignments. A value of 1 proves `d(H1, H2) = 1`;
/// in general `d(H1, H2)` divides the result.
pub fn sample_gcd(pattern: &ParametricHomMatrix, assignments: &[Vec<i64>]) -> BigInt {
    let mut g = BigInt::zero();
    for a in assignments {
        g = g.gcd(&det_at(pattern, a));
        if g.is_one() {
            break;
        }
    }
    g.abs()
}
