//! Permutations and generator-level group descriptions.
//!
//! Points are 1-based in every textual form (cycle notation, group files,
//! CLI arguments) and 0-based in memory. `Permutation::image` and
//! `Permutation::images` expose the 0-based view.

use std::fmt;

use num_integer::Integer;

use crate::error::{Error, Result};

/// A bijection of `{1, ..., degree}`.
///
/// Products compose left to right: `a.then(&b)` first applies `a`, then `b`,
/// so `x^(ab) = (x^a)^b` as for right actions.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Box<[u32]>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree as u32).collect(),
        }
    }

    /// Builds a permutation from 0-based images, checking bijectivity.
    pub fn from_images(images: Vec<u32>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            let x = x as usize;
            if x >= n || seen[x] {
                return Err(Error::InvalidPermutation(format!(
                    "images {images:?} do not form a bijection"
                )));
            }
            seen[x] = true;
        }
        Ok(Permutation {
            images: images.into_boxed_slice(),
        })
    }

    pub(crate) fn from_images_unchecked(images: Vec<u32>) -> Self {
        debug_assert!(Self::from_images(images.clone()).is_ok());
        Permutation {
            images: images.into_boxed_slice(),
        }
    }

    /// Builds a permutation from disjoint cycles written with 1-based points.
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        let mut used = vec![false; degree];
        for cycle in cycles {
            for &p in cycle {
                if p == 0 || p > degree {
                    return Err(Error::InvalidPermutation(format!(
                        "point {p} outside 1..={degree}"
                    )));
                }
                if used[p - 1] {
                    return Err(Error::InvalidPermutation(format!(
                        "point {p} appears twice"
                    )));
                }
                used[p - 1] = true;
            }
            for (i, &p) in cycle.iter().enumerate() {
                let q = cycle[(i + 1) % cycle.len()];
                images[p - 1] = (q - 1) as u32;
            }
        }
        Ok(Permutation {
            images: images.into_boxed_slice(),
        })
    }

    /// Parses disjoint-cycle notation such as `(1 2)(3 4 5)` or
    /// `(3, 4, 5)`; `()` is the identity.
    pub fn parse(text: &str, degree: usize) -> Result<Self> {
        parse_cycles_at(text, degree, 1, 1)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// 0-based image of a 0-based point.
    #[inline]
    pub fn image(&self, point: usize) -> usize {
        self.images[point] as usize
    }

    #[inline]
    pub fn images(&self) -> &[u32] {
        &self.images
    }

    /// The product "first `self`, then `other`".
    pub fn then(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.degree(), other.degree(), "degree mismatch in product");
        Permutation {
            images: self
                .images
                .iter()
                .map(|&x| other.images[x as usize])
                .collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u32; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as u32;
        }
        Permutation {
            images: inv.into_boxed_slice(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    /// Nontrivial cycles, 0-based, each starting at its smallest point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] || self.image(start) == start {
                seen[start] = true;
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut x = self.image(start);
            while x != start {
                seen[x] = true;
                cycle.push(x);
                x = self.image(x);
            }
            out.push(cycle);
        }
        out
    }

    /// All cycle lengths including fixed points, sorted descending.
    pub fn cycle_type(&self) -> Vec<usize> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut lens = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                len += 1;
                x = self.image(x);
            }
            lens.push(len);
        }
        lens.sort_unstable_by(|a, b| b.cmp(a));
        lens
    }

    pub fn order(&self) -> u64 {
        self.cycles()
            .iter()
            .fold(1u64, |acc, c| acc.lcm(&(c.len() as u64)))
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for cycle in cycles {
            f.write_str("(")?;
            for (i, p) in cycle.iter().enumerate() {
                if i > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{}", p + 1)?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Parses one line of cycle notation; `line` and `col0` locate errors.
pub(crate) fn parse_cycles_at(
    text: &str,
    degree: usize,
    line: usize,
    col0: usize,
) -> Result<Permutation> {
    let mut cycles: Vec<Vec<usize>> = Vec::new();
    let mut current: Option<Vec<usize>> = None;
    let mut open_col = 0;
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut i = 0;
    let mut any = false;
    while i < chars.len() {
        let (off, c) = chars[i];
        let col = col0 + text[..off].chars().count();
        match c {
            '(' => {
                if current.is_some() {
                    return Err(Error::parse(line, col, "nested '('"));
                }
                current = Some(Vec::new());
                open_col = col;
                any = true;
                i += 1;
            }
            ')' => {
                let Some(cycle) = current.take() else {
                    return Err(Error::parse(line, col, "')' without matching '('"));
                };
                if cycle.len() == 1 {
                    return Err(Error::parse(line, col, "cycle of length one"));
                }
                if !cycle.is_empty() {
                    cycles.push(cycle);
                }
                i += 1;
            }
            ',' => {
                if current.is_none() {
                    return Err(Error::parse(line, col, "',' outside a cycle"));
                }
                i += 1;
            }
            c if c.is_whitespace() => i += 1,
            c if c.is_ascii_digit() => {
                let Some(cycle) = current.as_mut() else {
                    return Err(Error::parse(line, col, "point outside a cycle"));
                };
                let mut j = i;
                while j < chars.len() && chars[j].1.is_ascii_digit() {
                    j += 1;
                }
                let end = if j < chars.len() { chars[j].0 } else { text.len() };
                let value: usize = text[off..end]
                    .parse()
                    .map_err(|_| Error::parse(line, col, "point out of range"))?;
                if value == 0 || value > degree {
                    return Err(Error::parse(
                        line,
                        col,
                        format!("point {value} outside 1..={degree}"),
                    ));
                }
                cycle.push(value);
                i = j;
            }
            other => {
                return Err(Error::parse(
                    line,
                    col,
                    format!("unexpected character {other:?}"),
                ))
            }
        }
    }
    if current.is_some() {
        return Err(Error::parse(line, open_col, "unclosed '('"));
    }
    if !any {
        return Err(Error::parse(line, col0, "expected a cycle"));
    }
    Permutation::from_cycles(degree, &cycles).map_err(|e| match e {
        Error::InvalidPermutation(msg) => Error::parse(line, col0, msg),
        other => other,
    })
}

/// A permutation group given by generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupSpec {
    degree: usize,
    generators: Vec<Permutation>,
    label: Option<String>,
}

impl GroupSpec {
    pub fn new(degree: usize, generators: Vec<Permutation>) -> Result<Self> {
        if degree == 0 {
            return Err(Error::Precondition("degree must be positive".into()));
        }
        for g in &generators {
            if g.degree() != degree {
                return Err(Error::MixedDegrees(degree, g.degree()));
            }
        }
        Ok(GroupSpec {
            degree,
            generators,
            label: None,
        })
    }

    /// Convenience constructor from cycle strings, e.g. `["(1 2)", "(1 2 3 4)"]`.
    pub fn from_cycles(degree: usize, generators: &[&str]) -> Result<Self> {
        let gens = generators
            .iter()
            .map(|s| Permutation::parse(s, degree))
            .collect::<Result<Vec<_>>>()?;
        GroupSpec::new(degree, gens)
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Result<Self> {
        let label = label.into();
        validate_label(&label).map_err(|m| Error::Precondition(m))?;
        self.label = Some(label);
        Ok(self)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    /// The GAP identifier `<order, ordinal>` embedded in the label, if any.
    pub fn gap_id(&self) -> Option<(u64, u64)> {
        self.label.as_deref().and_then(find_gap_id)
    }

    /// Parses the group file format:
    ///
    /// ```text
    /// # comment
    /// degree 9
    /// label A4 x S5 <1440,5846>
    /// (1 2 3)(5 6 7 8 9)
    /// (1 2)(3 4)(5 6)
    /// ```
    ///
    /// `degree` must precede the generators; blank lines and `#` comments are
    /// ignored; points inside a cycle may be separated by spaces or commas.
    pub fn parse(text: &str) -> Result<Self> {
        let mut degree: Option<usize> = None;
        let mut label: Option<String> = None;
        let mut gens = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = lineno + 1;
            let content = raw.split('#').next().unwrap_or("");
            let trimmed = content.trim_start();
            let col = 1 + content.chars().count() - trimmed.chars().count();
            let trimmed = trimmed.trim_end();
            if trimmed.is_empty() {
                continue;
            }
            if let Some(rest) = keyword(trimmed, "degree") {
                if degree.is_some() {
                    return Err(Error::parse(line, col, "duplicate 'degree' line"));
                }
                let n: usize = rest.trim().parse().map_err(|_| {
                    Error::parse(line, col + 7, format!("invalid degree {:?}", rest.trim()))
                })?;
                if n == 0 {
                    return Err(Error::parse(line, col + 7, "degree must be positive"));
                }
                degree = Some(n);
            } else if let Some(rest) = keyword(trimmed, "label") {
                if label.is_some() {
                    return Err(Error::parse(line, col, "duplicate 'label' line"));
                }
                let value = rest.trim().to_string();
                validate_label(&value).map_err(|m| Error::parse(line, col + 6, m))?;
                label = Some(value);
            } else if trimmed.starts_with('(') {
                let Some(n) = degree else {
                    return Err(Error::parse(line, col, "generator before 'degree' line"));
                };
                gens.push(parse_cycles_at(trimmed, n, line, col)?);
            } else {
                return Err(Error::parse(
                    line,
                    col,
                    format!("unrecognised line {trimmed:?}"),
                ));
            }
        }
        let Some(degree) = degree else {
            return Err(Error::parse(1, 1, "missing 'degree' line"));
        };
        let mut spec = GroupSpec::new(degree, gens)?;
        spec.label = label;
        Ok(spec)
    }

    /// Canonical text form; `GroupSpec::parse` inverts it exactly.
    pub fn to_text(&self) -> String {
        let mut out = format!("degree {}\n", self.degree);
        if let Some(label) = &self.label {
            out.push_str("label ");
            out.push_str(label);
            out.push('\n');
        }
        for g in &self.generators {
            out.push_str(&g.to_string());
            out.push('\n');
        }
        out
    }
}

fn keyword<'a>(line: &'a str, word: &str) -> Option<&'a str> {
    let rest = line.strip_prefix(word)?;
    if rest.is_empty() || rest.starts_with(char::is_whitespace) {
        Some(rest)
    } else {
        None
    }
}

fn validate_label(label: &str) -> std::result::Result<(), String> {
    if label.contains('\n') {
        return Err("label must be a single line".into());
    }
    if let Some(start) = label.find('<') {
        if let Some(len) = label[start..].find('>') {
            let inner = &label[start + 1..start + len];
            if let Some((a, b)) = inner.split_once(',') {
                let a: i64 = a.trim().parse().map_err(|_| "malformed GAP identifier")?;
                let b: i64 = b.trim().parse().map_err(|_| "malformed GAP identifier")?;
                if a <= 0 || b <= 0 {
                    return Err("GAP identifier entries must be positive".into());
                }
            }
        }
    }
    Ok(())
}

fn find_gap_id(label: &str) -> Option<(u64, u64)> {
    let start = label.find('<')?;
    let len = label[start..].find('>')?;
    let (a, b) = label[start + 1..start + len].split_once(',')?;
    Some((a.trim().parse().ok()?, b.trim().parse().ok()?))
}
