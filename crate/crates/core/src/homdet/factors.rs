use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{det_at, ParametricHomMatrix};
use crate::error::{Error, Result};

/// One irreducible factor of `det M`, as a form in the cell variables.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum FactorKind {
    /// `Σ c_i x_i`.
    Linear(Vec<i64>),
    /// `a (x_i - x_j)^2 + b (x_k - x_l)^2`, variables 0-based.
    Quadratic {
        a: i64,
        b: i64,
        u: (usize, usize),
        v: (usize, usize),
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Factor {
    pub kind: FactorKind,
    pub exponent: u32,
}

impl Factor {
    pub fn degree(&self) -> usize {
        let d = match self.kind {
            FactorKind::Linear(_) => 1,
            FactorKind::Quadratic { .. } => 2,
        };
        d * self.exponent as usize
    }

    /// Value of the form (without exponent) at `x`.
    pub fn form_at(&self, x: &[BigInt]) -> BigInt {
        match &self.kind {
            FactorKind::Linear(c) => c.iter().zip(x).map(|(&c, x)| BigInt::from(c) * x).sum(),
            FactorKind::Quadratic { a, b, u, v } => {
                let s = &x[u.0] - &x[u.1];
                let t = &x[v.0] - &x[v.1];
                BigInt::from(*a) * &s * &s + BigInt::from(*b) * &t * &t
            }
        }
    }
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            FactorKind::Linear(c) => {
                let c: Vec<String> = c.iter().map(i64::to_string).collect();
                write!(f, "lin {}", c.join(" "))?;
            }
            FactorKind::Quadratic { a, b, u, v } => write!(
                f,
                "quad {a} {b} (x{}-x{}) (x{}-x{})",
                u.0 + 1,
                u.1 + 1,
                v.0 + 1,
                v.1 + 1
            )?,
        }
        write!(f, " ^{}", self.exponent)
    }
}

/// A claimed factorization `det M = sign · Π f_i^{e_i}`.
///
/// Text form, one item per line, `#` comments:
///
/// ```text
/// sign -1
/// sizes 2 2 3        # optional: right cosets per variable
/// vars 1 2 3         # optional: matrix variable for each factor variable
/// lin 1 -1 0 ^2
/// quad 2 3 (x1-x2) (x2-x3) ^1
/// ```
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FactorList {
    pub sign: i8,
    pub nvars: usize,
    pub sizes: Option<Vec<usize>>,
    /// Factor variable `i` is matrix variable `vars[i]` (0-based).
    pub vars: Option<Vec<usize>>,
    pub factors: Vec<Factor>,
}

impl FactorList {
    pub fn degree(&self) -> usize {
        self.factors.iter().map(Factor::degree).sum()
    }

    /// `sign · Π f_i(x)^{e_i}`.
    pub fn evaluate(&self, x: &[BigInt]) -> BigInt {
        let mut p = BigInt::from(self.sign);
        for f in &self.factors {
            p *= num_traits::pow(f.form_at(x), f.exponent as usize);
        }
        p
    }

    pub fn linear_count(&self) -> usize {
        self.factors
            .iter()
            .filter(|f| matches!(f.kind, FactorKind::Linear(_)))
            .count()
    }

    /// The variable map, identity when none was given.
    pub fn mapping(&self) -> Vec<usize> {
        self.vars.clone().unwrap_or_else(|| (0..self.nvars).collect())
    }

    pub fn with_mapping(&self, vars: Vec<usize>) -> FactorList {
        FactorList {
            vars: Some(vars),
            ..self.clone()
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut sign = None;
        let mut sizes = None;
        let mut vars = None;
        let mut factors = Vec::new();
        let mut nvars: Option<usize> = None;
        let mut max_quad_var = 0;
        for (ln, raw) in text.lines().enumerate() {
            let ln = ln + 1;
            let line = raw.split('#').next().unwrap_or("");
            let toks: Vec<&str> = line.split_whitespace().collect();
            if toks.is_empty() {
                continue;
            }
            let col = |tok: &str| tok.as_ptr() as usize - raw.as_ptr() as usize + 1;
            let int = |tok: &str| -> Result<i64> {
                tok.parse()
                    .map_err(|_| Error::parse(ln, col(tok), format!("expected an integer, found {tok:?}")))
            };
            let exponent = |toks: &[&str]| -> Result<(u32, usize)> {
                match toks.last() {
                    Some(t) if t.starts_with('^') => {
                        let e: u32 = t[1..]
                            .parse()
                            .map_err(|_| Error::parse(ln, col(t), "bad exponent"))?;
                        if e == 0 {
                            return Err(Error::parse(ln, col(t), "exponent must be positive"));
                        }
                        Ok((e, toks.len() - 1))
                    }
                    _ => Ok((1, toks.len())),
                }
            };
            match toks[0] {
                "sign" => {
                    let s = toks.get(1).ok_or_else(|| Error::parse(ln, col(toks[0]), "missing sign"))?;
                    match int(s)? {
                        1 => sign = Some(1),
                        -1 => sign = Some(-1),
                        _ => return Err(Error::parse(ln, col(s), "sign must be 1 or -1")),
                    }
                }
                "sizes" | "vars" => {
                    let mut v = Vec::new();
                    for t in &toks[1..] {
                        let x = int(t)?;
                        if x <= 0 {
                            return Err(Error::parse(ln, col(t), "expected a positive integer"));
                        }
                        v.push(x as usize);
                    }
                    if toks[0] == "sizes" {
                        sizes = Some(v);
                    } else {
                        vars = Some(v.into_iter().map(|x| x - 1).collect::<Vec<_>>());
                    }
                }
                "lin" => {
                    let (e, end) = exponent(&toks)?;
                    let c = toks[1..end].iter().map(|t| int(t)).collect::<Result<Vec<_>>>()?;
                    match nvars {
                        None => nvars = Some(c.len()),
                        Some(n) if n != c.len() => {
                            return Err(Error::parse(
                                ln,
                                col(toks[0]),
                                format!("linear form has {} coefficients, expected {n}", c.len()),
                            ))
                        }
                        _ => {}
                    }
                    factors.push(Factor {
                        kind: FactorKind::Linear(c),
                        exponent: e,
                    });
                }
                "quad" => {
                    let (e, end) = exponent(&toks)?;
                    if end != 5 {
                        return Err(Error::parse(
                            ln,
                            col(toks[0]),
                            "expected `quad a b (xi-xj) (xk-xl) ^e`",
                        ));
                    }
                    let a = int(toks[1])?;
                    let b = int(toks[2])?;
                    let diff = |t: &str| -> Result<(usize, usize)> {
                        let bad = || Error::parse(ln, col(t), format!("expected (xi-xj), found {t:?}"));
                        let inner = t.strip_prefix('(').and_then(|t| t.strip_suffix(')')).ok_or_else(bad)?;
                        let (l, r) = inner.split_once('-').ok_or_else(bad)?;
                        let var = |s: &str| -> Result<usize> {
                            let k: usize = s.trim().trim_start_matches('x').parse().map_err(|_| bad())?;
                            if k == 0 {
                                return Err(bad());
                            }
                            Ok(k - 1)
                        };
                        Ok((var(l)?, var(r)?))
                    };
                    let u = diff(toks[3])?;
                    let v = diff(toks[4])?;
                    max_quad_var = max_quad_var.max(u.0.max(u.1).max(v.0).max(v.1) + 1);
                    factors.push(Factor {
                        kind: FactorKind::Quadratic { a, b, u, v },
                        exponent: e,
                    });
                }
                other => {
                    return Err(Error::parse(ln, col(other), format!("unknown item {other:?}")));
                }
            }
        }
        let nvars = nvars
            .or(sizes.as_ref().map(Vec::len))
            .unwrap_or(max_quad_var)
            .max(max_quad_var);
        if factors.is_empty() {
            return Err(Error::parse(1, 1, "no factors"));
        }
        if let Some(s) = &sizes {
            if s.len() != nvars {
                return Err(Error::Precondition(format!(
                    "{} sizes for {nvars} variables",
                    s.len()
                )));
            }
        }
        if let Some(v) = &vars {
            let mut sorted = v.clone();
            sorted.sort_unstable();
            if sorted != (0..nvars).collect::<Vec<_>>() {
                return Err(Error::Precondition(
                    "`vars` must list each variable exactly once".into(),
                ));
            }
        }
        Ok(FactorList {
            sign: sign.unwrap_or(1),
            nvars,
            sizes,
            vars,
            factors,
        })
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("sign {}\n", self.sign);
        let join = |v: &[usize], off: usize| {
            v.iter().map(|x| (x + off).to_string()).collect::<Vec<_>>().join(" ")
        };
        if let Some(z) = &self.sizes {
            s += &format!("sizes {}\n", join(z, 0));
        }
        if let Some(v) = &self.vars {
            s += &format!("vars {}\n", join(v, 1));
        }
        for f in &self.factors {
            s += &format!("{f}\n");
        }
        s
    }
}

/// Outcome of comparing `det M` with a claimed factorization.
#[derive(Clone, Debug, Serialize)]
pub struct FactorCheck {
    pub holds: bool,
    /// `ε` with `det M = ε · (claimed product)`; coset orderings fix the
    /// determinant only up to sign.
    pub orientation: i8,
    pub trials: usize,
    pub mapping: Vec<usize>,
    pub mismatch: Option<Mismatch>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Mismatch {
    pub assignment: Vec<i64>,
    #[serde(serialize_with = "crate::homdet::ser_bigint")]
    pub det: BigInt,
    #[serde(serialize_with = "crate::homdet::ser_bigint")]
    pub product: BigInt,
}

fn check_degree(pattern: &ParametricHomMatrix, list: &FactorList) -> Result<()> {
    if list.degree() != pattern.dim() {
        return Err(Error::DegreeMismatch {
            expected: pattern.dim(),
            found: list.degree(),
        });
    }
    if list.nvars != pattern.nvars() {
        return Err(Error::Precondition(format!(
            "factors use {} variables, the matrix has {}",
            list.nvars,
            pattern.nvars()
        )));
    }
    Ok(())
}

/// Compares `det M` with the claimed product at seeded random assignments
/// with entries in `[-50, 50]`, allowing one global sign `ε`.
pub fn verify_factor_product(
    pattern: &ParametricHomMatrix,
    list: &FactorList,
    trials: usize,
    seed: u64,
) -> Result<FactorCheck> {
    check_degree(pattern, list)?;
    let mapping = list.mapping();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut orientation = 0i8;
    for _ in 0..trials {
        let y: Vec<i64> = (0..pattern.nvars()).map(|_| rng.random_range(-50..=50)).collect();
        let x: Vec<BigInt> = mapping.iter().map(|&v| BigInt::from(y[v])).collect();
        let det = det_at(pattern, &y);
        let product = list.evaluate(&x);
        let eps = if det == product && det.is_zero() {
            continue;
        } else if det == product {
            1
        } else if det == -&product {
            -1
        } else {
            0
        };
        if eps == 0 || (orientation != 0 && eps != orientation) {
            return Ok(FactorCheck {
                holds: false,
                orientation,
                trials,
                mapping,
                mismatch: Some(Mismatch {
                    assignment: y,
                    det,
                    product,
                }),
            });
        }
        orientation = eps;
    }
    Ok(FactorCheck {
        holds: true,
        orientation: if orientation == 0 { 1 } else { orientation },
        trials,
        mapping,
        mismatch: None,
    })
}

/// Every size-preserving variable map under which the claimed product
/// equals `±det M` on all trials. Needs `sizes` in the list, or at most
/// eight variables.
pub fn find_variable_mappings(
    pattern: &ParametricHomMatrix,
    list: &FactorList,
    trials: usize,
    seed: u64,
) -> Result<Vec<FactorCheck>> {
    check_degree(pattern, list)?;
    let k = pattern.nvars();
    let cell_sizes = pattern.cell_sizes();
    let wanted: Vec<Option<usize>> = match &list.sizes {
        Some(s) => s.iter().map(|&z| Some(z)).collect(),
        None if k <= 8 => vec![None; k],
        None => {
            return Err(Error::Precondition(
                "mapping search needs `sizes` when there are more than 8 variables".into(),
            ))
        }
    };
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(k);
    let mut used = vec![false; k];
    search(&wanted, &cell_sizes, &mut current, &mut used, &mut |map| {
        let candidate = list.with_mapping(map.to_vec());
        // one cheap trial first, then the full run
        if verify_factor_product(pattern, &candidate, 1, seed ^ 0x5eed)?.holds {
            let check = verify_factor_product(pattern, &candidate, trials, seed)?;
            if check.holds {
                out.push(check);
            }
        }
        Ok(())
    })?;
    Ok(out)
}

fn search(
    wanted: &[Option<usize>],
    sizes: &[usize],
    current: &mut Vec<usize>,
    used: &mut [bool],
    visit: &mut dyn FnMut(&[usize]) -> Result<()>,
) -> Result<()> {
    let i = current.len();
    if i == wanted.len() {
        return visit(current);
    }
    for v in 0..sizes.len() {
        if used[v] || wanted[i].is_some_and(|z| z != sizes[v]) {
            continue;
        }
        used[v] = true;
        current.push(v);
        search(wanted, sizes, current, used, visit)?;
        current.pop();
        used[v] = false;
    }
    Ok(())
}

/// `|det M|` at the matrix assignment implied by factor-variable values.
pub fn det_from_factor_values(pattern: &ParametricHomMatrix, list: &FactorList, x: &[BigInt]) -> BigInt {
    let mut y = vec![BigInt::zero(); pattern.nvars()];
    for (i, &v) in list.mapping().iter().enumerate() {
        y[v] = x[i].clone();
    }
    super::det_at_big(pattern, &y)
}

pub(crate) fn is_unit(x: &BigInt) -> bool {
    x.abs().is_one()
}
