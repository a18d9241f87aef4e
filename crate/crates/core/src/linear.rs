//! `GL2`, `SL2` and `PSL2` over a prime field as permutation groups.
//!
//! `SL2(F_p)` and `GL2(F_p)` act on the `p² - 1` nonzero row vectors by
//! `v ↦ vA`, which is a right action matching permutation products.
//! `PSL2(F_p)` acts on the `p + 1` points of the projective line.

use std::collections::BTreeMap;
use std::fmt;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::equivalence::{solvably_equivalent, EquivalenceReport, Triple};
use crate::error::{Error, Result};
use crate::group::{transporter, EnumeratedGroup, SubgroupSet, DEFAULT_MAX_ORDER};
use crate::perm::{GroupSpec, Permutation};
use crate::subgroups::{all_subgroups, conjugacy_classes_of_subgroups, is_cyclic, is_perfect, is_prime};

/// A 2×2 matrix over `F_p`, rows `(a, b)` and `(c, d)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Mat2 {
    pub p: u64,
    pub a: u64,
    pub b: u64,
    pub c: u64,
    pub d: u64,
}

impl Mat2 {
    pub fn new(p: u64, a: i64, b: i64, c: i64, d: i64) -> Self {
        let r = |x: i64| x.rem_euclid(p as i64) as u64;
        Mat2 {
            p,
            a: r(a),
            b: r(b),
            c: r(c),
            d: r(d),
        }
    }

    pub fn identity(p: u64) -> Self {
        Mat2::new(p, 1, 0, 0, 1)
    }

    pub fn diag(p: u64, x: i64, y: i64) -> Self {
        Mat2::new(p, x, 0, 0, y)
    }

    pub fn det(&self) -> u64 {
        (self.a * self.d + self.p * self.p - self.b * self.c) % self.p
    }

    pub fn mul(&self, o: &Mat2) -> Mat2 {
        let p = self.p;
        Mat2 {
            p,
            a: (self.a * o.a + self.b * o.c) % p,
            b: (self.a * o.b + self.b * o.d) % p,
            c: (self.c * o.a + self.d * o.c) % p,
            d: (self.c * o.b + self.d * o.d) % p,
        }
    }

    pub fn inverse(&self) -> Option<Mat2> {
        let det = self.det();
        if det == 0 {
            return None;
        }
        let inv = pow_mod(det, self.p - 2, self.p);
        let p = self.p;
        Some(Mat2 {
            p,
            a: self.d * inv % p,
            b: (p - self.b) % p * inv % p,
            c: (p - self.c) % p * inv % p,
            d: self.a * inv % p,
        })
    }

    pub fn neg(&self) -> Mat2 {
        let p = self.p;
        Mat2 {
            p,
            a: (p - self.a) % p,
            b: (p - self.b) % p,
            c: (p - self.c) % p,
            d: (p - self.d) % p,
        }
    }

    pub fn trace(&self) -> u64 {
        (self.a + self.d) % self.p
    }

    /// `v A` for a row vector.
    fn apply(&self, (x, y): (u64, u64)) -> (u64, u64) {
        ((x * self.a + y * self.c) % self.p, (x * self.b + y * self.d) % self.p)
    }
}

impl fmt::Display for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.a, self.b, self.c, self.d)
    }
}

pub(crate) fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
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

pub fn is_quadratic_residue(r: u64, p: u64) -> bool {
    r % p != 0 && pow_mod(r, (p - 1) / 2, p) == 1
}

fn primitive_root(p: u64) -> u64 {
    let factors = crate::subgroups::prime_factors(p - 1);
    (2..p)
        .find(|&g| factors.iter().all(|&q| pow_mod(g, (p - 1) / q, p) != 1))
        .expect("prime fields have primitive roots")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum LinearKind {
    GL2,
    SL2,
    PSL2,
}

impl LinearKind {
    pub fn order(self, p: u64) -> u64 {
        let sl = p * (p * p - 1);
        match self {
            LinearKind::GL2 => sl * (p - 1),
            LinearKind::SL2 => sl,
            LinearKind::PSL2 => sl / 2,
        }
    }
}

impl fmt::Display for LinearKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LinearKind::GL2 => "GL2",
            LinearKind::SL2 => "SL2",
            LinearKind::PSL2 => "PSL2",
        })
    }
}

/// A linear group with its faithful permutation action.
#[derive(Debug)]
pub struct LinearGroupHandle {
    pub kind: LinearKind,
    pub p: u64,
    pub group: EnumeratedGroup,
}

/// Memory guard: elements times degree, in points.
const MAX_POINTS: usize = 60_000_000;

pub fn build_linear_group(kind: LinearKind, p: u64) -> Result<LinearGroupHandle> {
    if !is_prime(p) || p < 5 {
        return Err(Error::Precondition(format!("p = {p} must be a prime at least 5")));
    }
    let order = kind.order(p) as usize;
    let degree = degree_of(kind, p);
    if order > DEFAULT_MAX_ORDER || order.saturating_mul(degree) > MAX_POINTS {
        return Err(Error::OrderExceeded(DEFAULT_MAX_ORDER.min(MAX_POINTS / degree)));
    }
    let mut gens = vec![Mat2::new(p, 1, 1, 0, 1), Mat2::new(p, 1, 0, 1, 1)];
    if kind == LinearKind::GL2 {
        gens.push(Mat2::diag(p, primitive_root(p) as i64, 1));
    }
    let perms = gens
        .iter()
        .map(|m| lift_in(kind, m))
        .collect::<Result<Vec<_>>>()?;
    let spec = GroupSpec::new(degree, perms)?.with_label(format!("{kind}({p})"))?;
    let group = EnumeratedGroup::enumerate(spec, order)?;
    assert_eq!(group.order(), order, "|{kind}(F_{p})|");
    let handle = LinearGroupHandle { kind, p, group };
    // the kernel of the lift: -1 acts trivially only on the projective line
    let minus = lift_in(kind, &Mat2::identity(p).neg())?;
    assert_eq!(minus.is_identity(), kind == LinearKind::PSL2);
    Ok(handle)
}

fn degree_of(kind: LinearKind, p: u64) -> usize {
    match kind {
        LinearKind::PSL2 => p as usize + 1,
        _ => (p * p - 1) as usize,
    }
}

fn vector_index(p: u64, (x, y): (u64, u64)) -> u32 {
    (x * p + y - 1) as u32
}

fn vector_of(p: u64, i: usize) -> (u64, u64) {
    let n = i as u64 + 1;
    (n / p, n % p)
}

/// `[x : 1]` is point `x`, `[1 : 0]` is point `p`.
fn projective_index(p: u64, (x, y): (u64, u64)) -> u32 {
    if y == 0 {
        p as u32
    } else {
        (x * pow_mod(y, p - 2, p) % p) as u32
    }
}

fn lift_in(kind: LinearKind, m: &Mat2) -> Result<Permutation> {
    let p = m.p;
    let det = m.det();
    match kind {
        LinearKind::GL2 if det == 0 => return Err(Error::NotAMember(m.to_string())),
        LinearKind::SL2 | LinearKind::PSL2 if det != 1 => {
            return Err(Error::NotAMember(m.to_string()))
        }
        _ => {}
    }
    let images = match kind {
        LinearKind::PSL2 => (0..=p)
            .map(|i| {
                let v = if i == p { (1, 0) } else { (i, 1) };
                projective_index(p, m.apply(v))
            })
            .collect(),
        _ => (0..(p * p - 1) as usize)
            .map(|i| vector_index(p, m.apply(vector_of(p, i))))
            .collect(),
    };
    Permutation::from_images(images)
}

impl LinearGroupHandle {
    pub fn lift(&self, m: &Mat2) -> Result<Permutation> {
        if m.p != self.p {
            return Err(Error::NotAMember(m.to_string()));
        }
        lift_in(self.kind, m)
    }

    pub fn element_of(&self, m: &Mat2) -> Result<usize> {
        let perm = self.lift(m)?;
        self.group
            .index_of(&perm)
            .ok_or_else(|| Error::NotAMember(m.to_string()))
    }

    /// The matrix of an element: the images of `(1, 0)` and `(0, 1)`.
    pub fn matrix_of(&self, x: usize) -> Result<Mat2> {
        if self.kind == LinearKind::PSL2 {
            return Err(Error::Precondition("PSL2 elements are matrices only up to sign".into()));
        }
        let p = self.p;
        let e = self.group.element(x);
        let (a, b) = vector_of(p, e.image(vector_index(p, (1, 0)) as usize));
        let (c, d) = vector_of(p, e.image(vector_index(p, (0, 1)) as usize));
        Ok(Mat2 { p, a, b, c, d })
    }

    pub fn minus_one(&self) -> usize {
        self.element_of(&Mat2::identity(self.p).neg()).unwrap_or(0)
    }
}

/// An order-120 subgroup of `SL2(F_p)` containing `-1` with image `A5` in
/// `PSL2(F_p)`; needs `p ≡ ±1 mod 5`.
///
/// All elements of trace 0 are conjugate, so one fixed element `a` of order 4
/// is paired with elements `b` of order 5 or 10, tried in a seeded random
/// order until `<a, b>` closes at 120 elements and is perfect. `budget`
/// bounds the number of pairs tried; `None` means all of them.
pub fn find_icosahedral_subgroup(
    handle: &LinearGroupHandle,
    seed: u64,
    budget: Option<usize>,
) -> Result<SubgroupSet> {
    let p = handle.p;
    if handle.kind != LinearKind::SL2 {
        return Err(Error::Precondition("the search runs in SL2".into()));
    }
    if p % 5 != 1 && p % 5 != 4 {
        return Err(Error::Precondition(format!(
            "p = {p} is not ±1 mod 5, so SL2(F_{p}) has no subgroup 2.A5"
        )));
    }
    let g = &handle.group;
    let a = (0..g.order())
        .find(|&x| g.element_order(x) == 4)
        .expect("elements of trace 0 have order 4");
    let mut candidates: Vec<usize> = (0..g.order())
        .filter(|&x| matches!(g.element_order(x), 5 | 10))
        .collect();
    candidates.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    let minus = handle.minus_one();
    let budget = budget.unwrap_or(candidates.len());
    let start = g.subgroup(&[a]);
    for &b in candidates.iter().take(budget) {
        let Some(h) = g.extend_subgroup(&start, b, Some(120)) else {
            continue;
        };
        if h.order() == 120 && h.contains(minus) && is_perfect(g, &h) {
            return Ok(h);
        }
    }
    Err(Error::SearchExhausted(budget))
}

/// `σ H σ⁻¹` for `σ = diag(r, 1)` with `r` a non-square. `σ` normalizes
/// `SL2` inside `GL2`, so the result is again a subgroup of the handle.
pub fn outer_conjugate(handle: &LinearGroupHandle, h: &SubgroupSet, r: u64) -> Result<SubgroupSet> {
    let p = handle.p;
    if is_quadratic_residue(r, p) || r % p == 0 {
        return Err(Error::NotNonresidue { r, p });
    }
    let sigma = Mat2::diag(p, r as i64, 1);
    let sigma_inv = sigma.inverse().expect("invertible");
    let gens = h
        .generators()
        .iter()
        .map(|&x| {
            let m = handle.matrix_of(x)?;
            handle.element_of(&sigma.mul(&m).mul(&sigma_inv))
        })
        .collect::<Result<Vec<_>>>()?;
    let out = handle.group.subgroup(&gens);
    assert_eq!(out.order(), h.order());
    Ok(out)
}

/// Conjugacy classes of `SL2` moved by conjugation with `diag(r, 1)`.
pub fn classes_moved_by_outer(handle: &LinearGroupHandle, r: u64) -> Result<Vec<usize>> {
    let p = handle.p;
    if is_quadratic_residue(r, p) || r % p == 0 {
        return Err(Error::NotNonresidue { r, p });
    }
    let sigma = Mat2::diag(p, r as i64, 1);
    let sigma_inv = sigma.inverse().expect("invertible");
    let classes = handle.group.conjugacy_classes();
    let mut moved = Vec::new();
    for (c, &x) in classes.representatives().iter().enumerate() {
        let m = handle.matrix_of(x)?;
        let y = handle.element_of(&sigma.mul(&m).mul(&sigma_inv))?;
        if classes.class_of(y) != c {
            moved.push(c);
        }
    }
    Ok(moved)
}

/// Image of a subgroup of `SL2(F_p)` in `PSL2(F_p)`.
pub fn project(sl2: &LinearGroupHandle, psl2: &LinearGroupHandle, h: &SubgroupSet) -> Result<SubgroupSet> {
    if sl2.kind != LinearKind::SL2 || psl2.kind != LinearKind::PSL2 || sl2.p != psl2.p {
        return Err(Error::Precondition("project needs SL2(p) and PSL2(p)".into()));
    }
    let gens = h
        .generators()
        .iter()
        .map(|&x| psl2.element_of(&sl2.matrix_of(x)?))
        .collect::<Result<Vec<_>>>()?;
    Ok(psl2.group.subgroup(&gens))
}

/// Isomorphism type of a subgroup of `SL2(F_p)` of order prime to `p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum SubgroupType {
    /// Cyclic of order `n`.
    C(usize),
    /// Binary dihedral of order `4n`.
    BinaryDihedral(usize),
    BinaryTetrahedral,
    BinaryOctahedral,
    BinaryIcosahedral,
}

impl fmt::Display for SubgroupType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SubgroupType::C(n) => write!(f, "C{n}"),
            SubgroupType::BinaryDihedral(n) => write!(f, "2D{n}"),
            SubgroupType::BinaryTetrahedral => f.write_str("2A4"),
            SubgroupType::BinaryOctahedral => f.write_str("2S4"),
            SubgroupType::BinaryIcosahedral => f.write_str("2A5"),
        }
    }
}

/// Every non-cyclic subgroup of order prime to `p` contains `-1`; modulo
/// it the image is dihedral, `A4`, `S4` or `A5`. A binary dihedral group of
/// order `4n` has an element of order `2n`; the other three do not.
pub fn subgroup_type(g: &EnumeratedGroup, h: &SubgroupSet) -> SubgroupType {
    let n = h.order();
    if is_cyclic(g, h) {
        return SubgroupType::C(n);
    }
    if h.members().any(|x| g.element_order(x) as usize == n / 2) {
        return SubgroupType::BinaryDihedral(n / 4);
    }
    match n {
        24 => SubgroupType::BinaryTetrahedral,
        48 => SubgroupType::BinaryOctahedral,
        120 => SubgroupType::BinaryIcosahedral,
        _ => panic!("subgroup of order {n} prime to p is not of a known type"),
    }
}

/// Conjugacy class counts in `SL2(F_p)` predicted from congruences on `p`.
pub fn predicted_class_counts(p: u64) -> BTreeMap<SubgroupType, usize> {
    let pm = |n: u64| p % n == 1 || p % n == n - 1;
    let mut out = BTreeMap::new();
    for n in 1..=p + 1 {
        if (p - 1) % n == 0 || (p + 1) % n == 0 {
            out.insert(SubgroupType::C(n as usize), 1);
        }
    }
    for n in 2..=(p + 1) / 2 {
        let count = if pm(4 * n) {
            2
        } else if pm(2 * n) {
            1
        } else {
            0
        };
        if count > 0 {
            out.insert(SubgroupType::BinaryDihedral(n as usize), count);
        }
    }
    out.insert(SubgroupType::BinaryTetrahedral, if pm(8) { 2 } else { 1 });
    if pm(8) {
        out.insert(SubgroupType::BinaryOctahedral, 2);
    }
    if pm(5) {
        out.insert(SubgroupType::BinaryIcosahedral, 2);
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassificationRow {
    pub tag: String,
    pub order: usize,
    pub observed: usize,
    pub predicted: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct Classification {
    pub p: u64,
    pub rows: Vec<ClassificationRow>,
}

impl Classification {
    pub fn agrees(&self) -> bool {
        self.rows.iter().all(|r| r.observed == r.predicted)
    }

    pub fn count(&self, tag: &str) -> usize {
        self.rows.iter().find(|r| r.tag == tag).map_or(0, |r| r.observed)
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("{:<6} {:>6} {:>9} {:>10}\n", "type", "order", "observed", "predicted");
        for r in &self.rows {
            let mark = if r.observed == r.predicted { "" } else { "  MISMATCH" };
            s += &format!("{:<6} {:>6} {:>9} {:>10}{mark}\n", r.tag, r.order, r.observed, r.predicted);
        }
        s
    }
}

pub const DEFAULT_CLASSIFY_MAX_P: u64 = 13;

/// Counts `SL2`-conjugacy classes of subgroups of order prime to `p` by type
/// and sets them against [`predicted_class_counts`].
pub fn classify_prime_to_p_subgroups(handle: &LinearGroupHandle, max_p: u64) -> Result<Classification> {
    let p = handle.p;
    if handle.kind != LinearKind::SL2 {
        return Err(Error::Precondition("classification runs in SL2".into()));
    }
    if p > max_p {
        return Err(Error::OrderExceeded(LinearKind::SL2.order(max_p) as usize));
    }
    let g = &handle.group;
    let subs = all_subgroups(g, &g.whole(), Some((p * p - 1) as usize), usize::MAX)?;
    let classes = conjugacy_classes_of_subgroups(g, &subs);
    let mut observed: BTreeMap<SubgroupType, (usize, usize)> = BTreeMap::new();
    for class in &classes {
        let h = &subs[class[0]];
        let e = observed.entry(subgroup_type(g, h)).or_insert((h.order(), 0));
        e.1 += 1;
    }
    let predicted = predicted_class_counts(p);
    let mut tags: Vec<SubgroupType> = observed.keys().chain(predicted.keys()).copied().collect();
    tags.sort_unstable();
    tags.dedup();
    let order_of = |t: SubgroupType| match t {
        SubgroupType::C(n) => n,
        SubgroupType::BinaryDihedral(n) => 4 * n,
        SubgroupType::BinaryTetrahedral => 24,
        SubgroupType::BinaryOctahedral => 48,
        SubgroupType::BinaryIcosahedral => 120,
    };
    let rows = tags
        .into_iter()
        .map(|t| ClassificationRow {
            tag: t.to_string(),
            order: order_of(t),
            observed: observed.get(&t).map_or(0, |o| o.1),
            predicted: predicted.get(&t).copied().unwrap_or(0),
        })
        .collect();
    Ok(Classification { p, rows })
}

/// The class-count conditions behind the nonconjugate solvably equivalent
/// pair: one class each of `2D2`, `2D3`, `2D5` and `2A4`, as predicted for
/// `p`. All four hold when `p ≡ ±29 mod 120`.
pub fn solvable_family_conditions(p: u64) -> Vec<(SubgroupType, usize)> {
    let predicted = predicted_class_counts(p);
    [
        SubgroupType::BinaryDihedral(2),
        SubgroupType::BinaryDihedral(3),
        SubgroupType::BinaryDihedral(5),
        SubgroupType::BinaryTetrahedral,
    ]
    .into_iter()
    .map(|t| (t, predicted.get(&t).copied().unwrap_or(0)))
    .collect()
}

#[derive(Debug)]
pub struct SolvableFamilyResult {
    pub p: u64,
    pub h1_order: usize,
    pub intersection_order: usize,
    pub moved_classes: usize,
    pub sl2: EquivalenceReport,
    pub psl2: EquivalenceReport,
    pub psl2_class_sizes: Vec<usize>,
}

/// In `SL2(F_p)`, `p ≡ ±29 mod 120`: an icosahedral `H1` and its outer
/// conjugate `H2` are not conjugate but are solvably equivalent, in `SL2`
/// and again after projecting to `PSL2`.
pub fn verify_solvable_family(p: u64, seed: u64) -> Result<SolvableFamilyResult> {
    if !is_prime(p) {
        return Err(Error::Precondition(format!("{p} is not prime")));
    }
    if p % 120 != 29 && p % 120 != 91 {
        return Err(Error::Precondition(format!("p = {p} is not ±29 mod 120")));
    }
    let sl2 = build_linear_group(LinearKind::SL2, p)?;
    let psl2 = build_linear_group(LinearKind::PSL2, p)?;
    let r = (2..p).find(|&r| !is_quadratic_residue(r, p)).expect("non-squares exist");
    let h1 = find_icosahedral_subgroup(&sl2, seed, None)?;
    let h2 = outer_conjugate(&sl2, &h1, r)?;
    let g = &sl2.group;
    if transporter(g, &h1, &h2).is_some() {
        return Err(Error::Precondition("the outer conjugate is conjugate in SL2".into()));
    }
    let moved = classes_moved_by_outer(&sl2, r)?;
    let report = solvably_equivalent(&Triple::InGroup { g, h1: &h1, h2: &h2 })?;

    let k1 = project(&sl2, &psl2, &h1)?;
    let k2 = project(&sl2, &psl2, &h2)?;
    let pg = &psl2.group;
    if transporter(pg, &k1, &k2).is_some() {
        return Err(Error::Precondition("the projected pair is conjugate in PSL2".into()));
    }
    let preport = solvably_equivalent(&Triple::InGroup { g: pg, h1: &k1, h2: &k2 })?;
    let image = EnumeratedGroup::from_spec(k1.to_spec(pg))?;
    let mut sizes = image.conjugacy_classes().sizes().to_vec();
    sizes.sort_unstable();
    Ok(SolvableFamilyResult {
        p,
        h1_order: h1.order(),
        intersection_order: g.intersection(&h1, &h2).order(),
        moved_classes: moved.len(),
        sl2: report,
        psl2: preport,
        psl2_class_sizes: sizes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matrix_arithmetic() {
        let m = Mat2::new(7, 2, 3, 1, 4);
        assert_eq!(m.det(), 5);
        assert_eq!(m.mul(&m.inverse().unwrap()), Mat2::identity(7));
        assert!(is_quadratic_residue(2, 7));
        assert!(!is_quadratic_residue(3, 7));
        assert_eq!(primitive_root(29), 2);
    }

    #[test]
    fn orders_and_kernels() {
        for (kind, p, order) in [
            (LinearKind::SL2, 5, 120),
            (LinearKind::PSL2, 5, 60),
            (LinearKind::GL2, 5, 480),
            (LinearKind::SL2, 7, 336),
        ] {
            let h = build_linear_group(kind, p).unwrap();
            assert_eq!(h.group.order(), order, "{kind}({p})");
        }
        assert!(build_linear_group(LinearKind::SL2, 9).is_err());
        assert!(matches!(build_linear_group(LinearKind::GL2, 29), Err(Error::OrderExceeded(_))));
    }

    #[test]
    fn lift_is_a_homomorphism() {
        let h = build_linear_group(LinearKind::SL2, 7).unwrap();
        let a = Mat2::new(7, 3, 1, 2, 1);
        let b = Mat2::new(7, 0, 6, 1, 0);
        let ab = h.lift(&a.mul(&b)).unwrap();
        assert_eq!(ab, h.lift(&a).unwrap().then(&h.lift(&b).unwrap()));
        let x = h.element_of(&a).unwrap();
        assert_eq!(h.matrix_of(x).unwrap(), a);
        assert!(h.lift(&Mat2::diag(7, 3, 1)).is_err());
    }

    #[test]
    fn icosahedral_search() {
        let h = build_linear_group(LinearKind::SL2, 11).unwrap();
        let ico = find_icosahedral_subgroup(&h, 1, None).unwrap();
        assert_eq!(ico.order(), 120);
        assert!(ico.contains(h.minus_one()));
        assert!(is_perfect(&h.group, &ico));
        let h7 = build_linear_group(LinearKind::SL2, 7).unwrap();
        assert!(matches!(find_icosahedral_subgroup(&h7, 1, None), Err(Error::Precondition(_))));
        assert!(matches!(outer_conjugate(&h, &ico, 3), Err(Error::NotNonresidue { r: 3, p: 11 })));
        let w = h.group.whole();
        assert_eq!(outer_conjugate(&h, &w, 2).unwrap(), w);
    }

    #[test]
    fn twice_conjugated_is_conjugate() {
        let h = build_linear_group(LinearKind::SL2, 11).unwrap();
        let ico = find_icosahedral_subgroup(&h, 3, None).unwrap();
        let once = outer_conjugate(&h, &ico, 2).unwrap();
        let twice = outer_conjugate(&h, &once, 2).unwrap();
        // diag(4, 1) = diag(2, 1)^2 is a square class, hence inner up to scalars
        assert!(transporter(&h.group, &ico, &twice).is_some());
        assert!(transporter(&h.group, &ico, &once).is_none());
    }

    #[test]
    fn classification_small_primes() {
        for p in [5, 7] {
            let h = build_linear_group(LinearKind::SL2, p).unwrap();
            let c = classify_prime_to_p_subgroups(&h, DEFAULT_CLASSIFY_MAX_P).unwrap();
            assert!(c.agrees(), "p = {p}\n{}", c.to_text());
        }
    }

    #[test]
    fn family_preconditions() {
        assert!(matches!(verify_solvable_family(91, 0), Err(Error::Precondition(_))));
        assert!(matches!(verify_solvable_family(11, 0), Err(Error::Precondition(_))));
        let at11 = solvable_family_conditions(11);
        assert_eq!(at11.iter().filter(|(_, c)| *c != 1).count(), 1);
        assert!(solvable_family_conditions(29).iter().all(|(_, c)| *c == 1));
    }
}
