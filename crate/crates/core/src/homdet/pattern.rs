use std::fmt::Write as _;

use rustc_hash::FxHashMap;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{CosetAction, EnumeratedGroup, SubgroupSet};

/// The shape of every `G`-equivariant map `Z[H1\G] -> Z[H2\G]`: entry
/// `(i, j)` holds the variable of the diagonal orbit containing the coset
/// pair `(i, j)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParametricHomMatrix {
    m: usize,
    nvars: usize,
    entries: Vec<u32>,
}

impl ParametricHomMatrix {
    /// `entries` is row-major with 0-based variable numbers.
    pub fn new(m: usize, nvars: usize, entries: Vec<u32>) -> Result<Self> {
        if entries.len() != m * m {
            return Err(Error::Precondition(format!(
                "pattern has {} entries, expected {}",
                entries.len(),
                m * m
            )));
        }
        let mut seen = vec![false; nvars];
        for &v in &entries {
            let v = v as usize;
            if v >= nvars {
                return Err(Error::Precondition(format!("variable x{} out of range", v + 1)));
            }
            seen[v] = true;
        }
        if let Some(v) = seen.iter().position(|s| !s) {
            return Err(Error::Precondition(format!("variable x{} never occurs", v + 1)));
        }
        Ok(ParametricHomMatrix { m, nvars, entries })
    }

    pub fn dim(&self) -> usize {
        self.m
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    #[inline]
    pub fn var(&self, i: usize, j: usize) -> usize {
        self.entries[i * self.m + j] as usize
    }

    /// Occurrences of each variable in row 0.
    pub fn cell_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.nvars];
        for j in 0..self.m {
            sizes[self.var(0, j)] += 1;
        }
        sizes
    }

    /// Whether every variable occurs equally often in every row and column.
    pub fn is_balanced(&self) -> bool {
        let sizes = self.cell_sizes();
        (0..self.m).all(|i| {
            let mut row = vec![0; self.nvars];
            let mut col = vec![0; self.nvars];
            for j in 0..self.m {
                row[self.var(i, j)] += 1;
                col[self.var(j, i)] += 1;
            }
            row == sizes && col == sizes
        })
    }

    /// The integer matrix at an assignment.
    pub fn instantiate<T: Clone>(&self, assignment: &[T]) -> Vec<Vec<T>> {
        assert_eq!(assignment.len(), self.nvars, "one value per variable");
        (0..self.m)
            .map(|i| (0..self.m).map(|j| assignment[self.var(i, j)].clone()).collect())
            .collect()
    }

    /// Rows and columns reordered: new entry `(i, j)` is old
    /// `(rows[i], cols[j])`.
    pub fn permuted(&self, rows: &[usize], cols: &[usize]) -> Self {
        let entries = rows
            .iter()
            .flat_map(|&i| cols.iter().map(move |&j| (i, j)))
            .map(|(i, j)| self.entries[i * self.m + j])
            .collect();
        ParametricHomMatrix {
            m: self.m,
            nvars: self.nvars,
            entries,
        }
    }

    /// Variables renamed: old variable `v` becomes `map[v]`.
    pub fn relabelled(&self, map: &[usize]) -> Self {
        ParametricHomMatrix {
            m: self.m,
            nvars: self.nvars,
            entries: self.entries.iter().map(|&v| map[v as usize] as u32).collect(),
        }
    }

    /// Text form: a `pattern m k` line, then `m` rows of 1-based variable
    /// numbers. `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self> {
        let mut header: Option<(usize, usize)> = None;
        let mut entries = Vec::new();
        let mut rows = 0;
        for (ln, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("");
            if line.trim().is_empty() {
                continue;
            }
            let col = |tok: &str| tok.as_ptr() as usize - raw.as_ptr() as usize + 1;
            let toks: Vec<&str> = line.split_whitespace().collect();
            if header.is_none() {
                if toks.len() != 3 || toks[0] != "pattern" {
                    return Err(Error::parse(ln + 1, col(toks[0]), "expected `pattern <m> <k>`"));
                }
                let m = toks[1]
                    .parse()
                    .map_err(|_| Error::parse(ln + 1, col(toks[1]), "bad dimension"))?;
                let k = toks[2]
                    .parse()
                    .map_err(|_| Error::parse(ln + 1, col(toks[2]), "bad variable count"))?;
                header = Some((m, k));
                continue;
            }
            let (m, k) = header.unwrap();
            if toks.len() != m {
                return Err(Error::parse(ln + 1, 1, format!("expected {m} entries, found {}", toks.len())));
            }
            for t in toks {
                let v: usize = t
                    .trim_start_matches('x')
                    .parse()
                    .map_err(|_| Error::parse(ln + 1, col(t), format!("bad variable {t:?}")))?;
                if v == 0 || v > k {
                    return Err(Error::parse(ln + 1, col(t), format!("variable {v} not in 1..={k}")));
                }
                entries.push(v as u32 - 1);
            }
            rows += 1;
        }
        let Some((m, k)) = header else {
            return Err(Error::parse(1, 1, "missing `pattern` header"));
        };
        if rows != m {
            return Err(Error::parse(text.lines().count().max(1), 1, format!("expected {m} rows, found {rows}")));
        }
        Self::new(m, k, entries)
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("pattern {} {}\n", self.m, self.nvars);
        for i in 0..self.m {
            let row: Vec<String> = (0..self.m).map(|j| (self.var(i, j) + 1).to_string()).collect();
            writeln!(s, "{}", row.join(" ")).unwrap();
        }
        s
    }
}

/// One double coset `H1 g H2`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Cell {
    /// Smallest element index in the double coset.
    pub representative: usize,
    /// Number of right cosets it contains.
    pub size: usize,
}

#[derive(Clone, Debug)]
pub struct DoubleCosetDecomposition {
    pub cells: Vec<Cell>,
    pub pattern: ParametricHomMatrix,
}

/// Double cosets `H1 g H2`, one variable per cell, numbered by cell size
/// and then by smallest element index.
///
/// The pair of cosets `(H1 a, H2 b)` lies in the orbit of `H1 a b⁻¹ H2`
/// under the diagonal action, so orbits and double cosets correspond.
pub fn double_cosets(
    g: &EnumeratedGroup,
    h1: &SubgroupSet,
    h2: &SubgroupSet,
) -> Result<DoubleCosetDecomposition> {
    let a1 = CosetAction::new(g, h1);
    let a2 = CosetAction::new(g, h2);
    let m = a1.degree();
    if m != a2.degree() {
        return Err(Error::IndexMismatch(m, a2.degree()));
    }
    // union-find over coset pairs
    let mut parent: Vec<u32> = (0..(m * m) as u32).collect();
    fn find(p: &mut [u32], mut x: u32) -> u32 {
        while p[x as usize] != x {
            p[x as usize] = p[p[x as usize] as usize];
            x = p[x as usize];
        }
        x
    }
    for (r1, r2) in a1.generator_action().iter().zip(a2.generator_action()) {
        for i in 0..m {
            for j in 0..m {
                let a = find(&mut parent, (i * m + j) as u32);
                let b = find(&mut parent, r1[i] * m as u32 + r2[j]);
                if a != b {
                    parent[a as usize] = b;
                }
            }
        }
    }
    let roots: Vec<u32> = (0..(m * m) as u32).map(|x| find(&mut parent, x)).collect();

    // smallest element of each double coset: x lies in H1 x H2, the orbit of (H1, H2 x⁻¹)
    let mut rep_of_root: FxHashMap<u32, usize> = FxHashMap::default();
    for x in 0..g.order() {
        let j = a2.coset_of_element(g.inv(x));
        rep_of_root.entry(roots[j]).or_insert(x);
    }
    let mut size_of_root: FxHashMap<u32, usize> = FxHashMap::default();
    for &r in &roots[..m] {
        *size_of_root.entry(r).or_default() += 1;
    }
    let mut cells: Vec<(usize, usize, u32)> = size_of_root
        .iter()
        .map(|(&r, &size)| (size, rep_of_root[&r], r))
        .collect();
    cells.sort_unstable();
    let var_of_root: FxHashMap<u32, u32> =
        cells.iter().enumerate().map(|(v, c)| (c.2, v as u32)).collect();
    let entries: Vec<u32> = roots.iter().map(|r| var_of_root[r]).collect();
    let pattern = ParametricHomMatrix::new(m, cells.len(), entries)?;

    // M_ij = M_{ρ1(g)i, ρ2(g)j} for every generator
    for (r1, r2) in a1.generator_action().iter().zip(a2.generator_action()) {
        for i in 0..m {
            for j in 0..m {
                assert_eq!(pattern.var(i, j), pattern.var(r1[i] as usize, r2[j] as usize));
            }
        }
    }
    let cells: Vec<Cell> = cells
        .into_iter()
        .map(|(size, representative, _)| Cell { representative, size })
        .collect();
    assert_eq!(cells.iter().map(|c| c.size).sum::<usize>(), m);
    Ok(DoubleCosetDecomposition { cells, pattern })
}
