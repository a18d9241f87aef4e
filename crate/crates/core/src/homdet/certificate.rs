use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use super::factors::{det_from_factor_values, is_unit};
use super::{det_at, det_at_mod, FactorKind, FactorList, ParametricHomMatrix};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum CertificateStatus {
    ExistsWitness {
        /// Values of the matrix variables.
        #[serde(serialize_with = "super::ser_bigints")]
        assignment: Vec<BigInt>,
    },
    CertifiedNonexistent { reason: String },
    Unknown { reason: String },
}

/// One case of the analysis: every factor form set to a unit.
#[derive(Clone, Debug, Serialize)]
pub struct SystemRecord {
    /// Target value of each linear form, in factor order.
    pub signs: Vec<i8>,
    /// Quadratic cases as `(value of first difference, value of second)`.
    pub quadratic_case: Vec<(i8, i8)>,
    pub rationally_solvable: bool,
    pub integrally_solvable: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct UnimodularityCertificate {
    #[serde(flatten)]
    pub status: CertificateStatus,
    pub systems: Vec<SystemRecord>,
}

impl UnimodularityCertificate {
    pub fn is_nonexistent(&self) -> bool {
        matches!(self.status, CertificateStatus::CertifiedNonexistent { .. })
    }
}

/// Decides whether the claimed product can equal `±1` at an integer point.
///
/// Each factor must then be a unit. Linear forms give `2^k` sign patterns;
/// a quadratic `a s² + b t²` with `a, b ≥ 0` is `1` only for `|s|,|t| ≤ 1`.
/// Each case is a linear system solved over `Z`. With a `pattern`, a witness
/// is re-checked against the real determinant.
pub fn unimodularity_certificate(
    list: &FactorList,
    pattern: Option<&ParametricHomMatrix>,
) -> Result<UnimodularityCertificate> {
    let k = list.nvars;
    let mut linear: Vec<Vec<i64>> = Vec::new();
    // per quadratic factor: admissible (s, t) values plus the two difference rows
    let mut quads: Vec<(Vec<(i8, i8)>, Vec<i64>, Vec<i64>, i64, i64)> = Vec::new();
    for (i, f) in list.factors.iter().enumerate() {
        match &f.kind {
            FactorKind::Linear(c) => linear.push(c.clone()),
            FactorKind::Quadratic { a, b, u, v } => {
                if *a < 0 || *b < 0 {
                    return Err(Error::UnsupportedForm(format!(
                        "factor {} is not positive semidefinite",
                        i + 1
                    )));
                }
                let mut cases = Vec::new();
                for s in -1i8..=1 {
                    for t in -1i8..=1 {
                        // a zero coefficient leaves its difference unconstrained
                        if (*a == 0 && s != 0) || (*b == 0 && t != 0) {
                            continue;
                        }
                        if a * i64::from(s * s) + b * i64::from(t * t) == 1 {
                            cases.push((s, t));
                        }
                    }
                }
                if cases.is_empty() {
                    return Ok(UnimodularityCertificate {
                        status: CertificateStatus::CertifiedNonexistent {
                            reason: format!(
                                "factor {} ({f}) cannot take the value 1: {a}s² + {b}t² = 1 has no integer solution",
                                i + 1
                            ),
                        },
                        systems: Vec::new(),
                    });
                }
                let diff = |p: (usize, usize)| {
                    let mut r = vec![0i64; k];
                    r[p.0] += 1;
                    r[p.1] -= 1;
                    r
                };
                quads.push((cases, diff(*u), diff(*v), *a, *b));
            }
        }
    }
    if linear.len() > 24 {
        return Err(Error::Precondition(format!(
            "{} linear factors give too many sign patterns",
            linear.len()
        )));
    }

    let quad_cases: usize = quads.iter().map(|q| q.0.len()).product();
    let total = (1usize << linear.len()) * quad_cases;
    let systems: Vec<(SystemRecord, Option<Vec<BigInt>>)> = (0..total)
        .into_par_iter()
        .map(|n| {
            let bits = n % (1 << linear.len());
            let mut rest = n >> linear.len();
            let signs: Vec<i8> = (0..linear.len())
                .map(|i| if bits >> i & 1 == 1 { -1 } else { 1 })
                .collect();
            let mut rows: Vec<Vec<BigInt>> = Vec::new();
            let mut rhs: Vec<BigInt> = Vec::new();
            for (c, &s) in linear.iter().zip(&signs) {
                rows.push(c.iter().map(|&x| BigInt::from(x)).collect());
                rhs.push(BigInt::from(s));
            }
            let mut quadratic_case = Vec::new();
            for (cases, du, dv, a, b) in &quads {
                let (s, t) = cases[rest % cases.len()];
                rest /= cases.len();
                quadratic_case.push((s, t));
                for (d, val, coeff) in [(du, s, a), (dv, t, b)] {
                    if *coeff != 0 {
                        rows.push(d.iter().map(|&x| BigInt::from(x)).collect());
                        rhs.push(BigInt::from(val));
                    }
                }
            }
            let rational = rationally_solvable(&rows, &rhs, k);
            let solution = if rational { solve_integral(&rows, &rhs, k) } else { None };
            (
                SystemRecord {
                    signs,
                    quadratic_case,
                    rationally_solvable: rational,
                    integrally_solvable: solution.is_some(),
                },
                solution,
            )
        })
        .collect();

    let witness = systems.iter().find_map(|(_, s)| s.clone());
    let records: Vec<SystemRecord> = systems.into_iter().map(|(r, _)| r).collect();
    let status = match witness {
        Some(x) => {
            assert!(is_unit(&list.evaluate(&x)), "witness does not make the product a unit");
            let mut assignment = vec![BigInt::zero(); k];
            for (i, &v) in list.mapping().iter().enumerate() {
                assignment[v] = x[i].clone();
            }
            if let Some(p) = pattern {
                let d = det_from_factor_values(p, list, &x);
                if !is_unit(&d) {
                    return Err(Error::Precondition(format!(
                        "the factor list is wrong: it is a unit at the witness but det M = {d}"
                    )));
                }
            }
            CertificateStatus::ExistsWitness { assignment }
        }
        None => CertificateStatus::CertifiedNonexistent {
            reason: format!(
                "none of the {} linear systems has an integral solution",
                records.len()
            ),
        },
    };
    Ok(UnimodularityCertificate {
        status,
        systems: records,
    })
}

/// Row echelon form over `Z` by repeated division with remainder, tracking
/// the unimodular transform `u` (`rows_new = u · rows_old`).
fn echelon(rows: &mut [Vec<BigInt>], u: &mut [Vec<BigInt>]) -> Vec<(usize, usize)> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut top = 0;
    for col in 0..ncols {
        loop {
            let Some(p) = (top..rows.len())
                .filter(|&r| !rows[r][col].is_zero())
                .min_by(|&a, &b| rows[a][col].abs().cmp(&rows[b][col].abs()))
            else {
                break;
            };
            rows.swap(top, p);
            u.swap(top, p);
            let mut cleared = true;
            for r in top + 1..rows.len() {
                if rows[r][col].is_zero() {
                    continue;
                }
                let q = &rows[r][col] / &rows[top][col];
                for j in 0..ncols {
                    let d = &q * &rows[top][j];
                    rows[r][j] -= d;
                }
                for j in 0..u[r].len() {
                    let d = &q * &u[top][j];
                    u[r][j] -= d;
                }
                if !rows[r][col].is_zero() {
                    cleared = false;
                }
            }
            if cleared {
                pivots.push((top, col));
                top += 1;
                break;
            }
        }
        if top == rows.len() {
            break;
        }
    }
    pivots
}

/// Columns of `A` (the variables' coefficient vectors), as rows.
fn transpose(rows: &[Vec<BigInt>], k: usize) -> Vec<Vec<BigInt>> {
    (0..k)
        .map(|j| rows.iter().map(|r| r[j].clone()).collect())
        .collect()
}

fn rank(mut vectors: Vec<Vec<BigInt>>) -> usize {
    let mut u: Vec<Vec<BigInt>> = vec![Vec::new(); vectors.len()];
    echelon(&mut vectors, &mut u).len()
}

pub(crate) fn rationally_solvable(a: &[Vec<BigInt>], b: &[BigInt], k: usize) -> bool {
    let cols = transpose(a, k);
    let r = rank(cols.clone());
    let mut with_b = cols;
    with_b.push(b.to_vec());
    rank(with_b) == r
}

/// An integer solution of `A x = b`, if any.
///
/// `b` must lie in the lattice spanned by the columns of `A`: echelonize the
/// columns, peel `b` off pivot by pivot and map the coefficients back.
pub(crate) fn solve_integral(a: &[Vec<BigInt>], b: &[BigInt], k: usize) -> Option<Vec<BigInt>> {
    let mut cols = transpose(a, k);
    let mut u: Vec<Vec<BigInt>> = (0..k)
        .map(|i| (0..k).map(|j| BigInt::from(u8::from(i == j))).collect())
        .collect();
    let pivots = echelon(&mut cols, &mut u);
    let mut rest = b.to_vec();
    let mut x = vec![BigInt::zero(); k];
    for (row, col) in pivots {
        if rest[col].is_zero() {
            continue;
        }
        let piv = &cols[row][col];
        if !(&rest[col] % piv).is_zero() {
            return None;
        }
        let y = &rest[col] / piv;
        for (r, c) in rest.iter_mut().zip(&cols[row]) {
            *r -= &y * c;
        }
        for (xi, ui) in x.iter_mut().zip(&u[row]) {
            *xi += &y * ui;
        }
    }
    if rest.iter().any(|r| !r.is_zero()) {
        return None;
    }
    debug_assert!(a
        .iter()
        .zip(b)
        .all(|(row, bi)| row.iter().zip(&x).map(|(c, v)| c * v).sum::<BigInt>() == *bi));
    Some(x)
}

/// Outcome of [`unimodular_search`].
#[derive(Clone, Debug, Serialize)]
pub struct SearchOutcome {
    pub assignment: Option<Vec<i64>>,
    pub examined: u64,
    pub exact_evaluations: u64,
}

/// Scans `|x_i| ≤ bound` for `det M = ±1`, small values first.
///
/// Residue tables mod 2 and 3 discard most points, then mod 5 and mod 7,
/// and only survivors get an exact determinant. An empty result proves
/// nothing.
pub fn unimodular_search(pattern: &ParametricHomMatrix, bound: i64) -> Result<SearchOutcome> {
    let k = pattern.nvars();
    if k > 12 {
        return Err(Error::Precondition(format!(
            "unimodular search allows at most 12 variables, found {k}"
        )));
    }
    let bound = bound.max(0);
    let values: Vec<i64> = std::iter::once(0)
        .chain((1..=bound).flat_map(|v| [v, -v]))
        .collect();
    let table = |p: u64, allowed: &(dyn Fn(u64) -> bool + Sync)| -> Option<Vec<bool>> {
        let size = (p as usize).checked_pow(k as u32)?;
        if size > 60_000 {
            return None;
        }
        Some(
            (0..size)
                .into_par_iter()
                .map(|mut n| {
                    let a: Vec<i64> = (0..k)
                        .map(|_| {
                            let r = n % p as usize;
                            n /= p as usize;
                            r as i64
                        })
                        .collect();
                    allowed(det_at_mod(pattern, &a, p))
                })
                .collect(),
        )
    };
    let t2 = table(2, &|d| d == 1);
    let t3 = table(3, &|d| d != 0);
    let index = |a: &[i64], p: i64| a.iter().rev().fold(0usize, |acc, &v| acc * p as usize + v.rem_euclid(p) as usize);

    let total = (values.len() as u64).pow(k as u32);
    let decode = |mut n: u64| -> Vec<i64> {
        // last variable varies fastest
        let mut a = vec![0i64; k];
        for slot in a.iter_mut().rev() {
            *slot = values[(n % values.len() as u64) as usize];
            n /= values.len() as u64;
        }
        a
    };
    let exact = std::sync::atomic::AtomicU64::new(0);
    let found = (0..total).into_par_iter().find_first(|&n| {
        let a = decode(n);
        let pass = |t: &Option<Vec<bool>>, p: i64, m: u64, ok: &dyn Fn(u64) -> bool| match t {
            Some(t) => t[index(&a, p)],
            None => ok(det_at_mod(pattern, &a, m)),
        };
        if !pass(&t2, 2, 2, &|d| d == 1) || !pass(&t3, 3, 3, &|d| d != 0) {
            return false;
        }
        let d5 = det_at_mod(pattern, &a, 5);
        if d5 != 1 && d5 != 4 {
            return false;
        }
        let d7 = det_at_mod(pattern, &a, 7);
        if d7 != 1 && d7 != 6 {
            return false;
        }
        exact.fetch_add(1, std::sync::atomic::Ordering::Relaxed);
        det_at(pattern, &a).abs().is_one()
    });
    Ok(SearchOutcome {
        assignment: found.map(decode),
        examined: found.map_or(total, |n| n + 1),
        exact_evaluations: exact.into_inner(),
    })
}
