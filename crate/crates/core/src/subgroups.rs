//! Subgroup lattices, solvability, p-cyclicity and isomorphism testing.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::ControlFlow;
use std::sync::Arc;

use fixedbitset::FixedBitSet;
use num_integer::Integer;
use rustc_hash::FxHashSet;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{transporter, EnumeratedGroup, SubgroupSet};

/// Default bound on `|H|` for [`all_subgroups`].
pub const DEFAULT_LATTICE_BOUND: usize = 2000;

pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && prime_factors(n) == [n]
}

fn is_prime_power(n: usize) -> Option<usize> {
    let f = prime_factors(n as u64);
    (f.len() == 1).then(|| f[0] as usize)
}

fn p_part(n: usize, p: usize) -> usize {
    let mut q = 1;
    let mut n = n;
    while n % p == 0 {
        n /= p;
        q *= p;
    }
    q
}

/// Every subgroup of `h`, each exactly once, in discovery order (trivial
/// subgroup first).
///
/// Each subgroup is generated by its elements of prime-power order, so
/// starting from the trivial group and repeatedly adjoining cyclic subgroups
/// of prime-power order reaches all of them. `order_divides` restricts the
/// output to subgroups whose order divides it; by Lagrange every intermediate
/// step of such a subgroup satisfies the same restriction.
pub fn all_subgroups(
    g: &EnumeratedGroup,
    h: &SubgroupSet,
    order_divides: Option<usize>,
    bound: usize,
) -> Result<Vec<SubgroupSet>> {
    let limit = match order_divides {
        Some(n) => h.order().gcd(&n),
        None => {
            if h.order() > bound {
                return Err(Error::OrderExceeded(bound));
            }
            h.order()
        }
    };
    let admissible = |o: usize| limit % o == 0;

    let mut seen_cyclic: FxHashSet<FixedBitSet> = FxHashSet::default();
    let mut cyclic_gens = Vec::new();
    for x in h.members() {
        let o = g.element_order(x) as usize;
        if o == 1 || is_prime_power(o).is_none() || !admissible(o) {
            continue;
        }
        let c = g.subgroup(&[x]);
        if seen_cyclic.insert(c.member_set().clone()) {
            cyclic_gens.push(x);
        }
    }

    let mut seen: FxHashSet<FixedBitSet> = FxHashSet::default();
    let trivial = g.trivial();
    seen.insert(trivial.member_set().clone());
    let mut out = vec![trivial];
    let mut i = 0;
    while i < out.len() {
        let s = out[i].clone();
        for &x in &cyclic_gens {
            if s.contains(x) {
                continue;
            }
            let Some(t) = g.extend_subgroup(&s, x, Some(limit)) else {
                continue;
            };
            if !admissible(t.order()) {
                continue;
            }
            if seen.insert(t.member_set().clone()) {
                if out.len() >= 1_000_000 {
                    return Err(Error::OrderExceeded(1_000_000));
                }
                out.push(t);
            }
        }
        i += 1;
    }
    Ok(out)
}

/// Groups subgroups into `G`-conjugacy classes. Returns, for each class, the
/// indices into `subs` of its members; classes appear in order of their
/// first member.
pub fn conjugacy_classes_of_subgroups(g: &EnumeratedGroup, subs: &[SubgroupSet]) -> Vec<Vec<usize>> {
    let mut buckets: BTreeMap<(usize, Vec<(usize, usize)>), Vec<usize>> = BTreeMap::new();
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for (i, s) in subs.iter().enumerate() {
        let key = (s.order(), g.class_distribution(s));
        let reps = buckets.entry(key).or_default();
        let found = reps
            .iter()
            .copied()
            .find(|&c| transporter(g, &subs[classes[c][0]], s).is_some());
        match found {
            Some(c) => classes[c].push(i),
            None => {
                reps.push(classes.len());
                classes.push(vec![i]);
            }
        }
    }
    classes
}

/// Derived subgroup `[S, S]`, as the normal closure in `S` of the
/// commutators of its generators.
pub fn derived_subgroup(g: &EnumeratedGroup, s: &SubgroupSet) -> SubgroupSet {
    let gens = s.generators();
    let mut d = g.trivial();
    for (i, &a) in gens.iter().enumerate() {
        for &b in &gens[i + 1..] {
            let c = g.mul(g.mul(g.inv(a), g.inv(b)), g.mul(a, b));
            d = g.extend_subgroup(&d, c, None).unwrap();
        }
    }
    normal_closure_in(g, s, d)
}

fn normal_closure_in(g: &EnumeratedGroup, s: &SubgroupSet, mut n: SubgroupSet) -> SubgroupSet {
    loop {
        let mut grew = false;
        'outer: for &t in s.generators() {
            for &x in n.generators().to_vec().iter() {
                let y = g.conj(t, x);
                if !n.contains(y) {
                    n = g.extend_subgroup(&n, y, None).unwrap();
                    grew = true;
                    break 'outer;
                }
            }
        }
        if !grew {
            return n;
        }
    }
}

pub fn derived_series(g: &EnumeratedGroup, s: &SubgroupSet) -> Vec<SubgroupSet> {
    let mut series = vec![s.clone()];
    loop {
        let last = series.last().unwrap();
        let d = derived_subgroup(g, last);
        if d.order() == last.order() {
            return series;
        }
        series.push(d);
    }
}

pub fn is_solvable(g: &EnumeratedGroup, s: &SubgroupSet) -> bool {
    derived_series(g, s).last().unwrap().is_trivial()
}

pub fn is_perfect(g: &EnumeratedGroup, s: &SubgroupSet) -> bool {
    derived_subgroup(g, s).order() == s.order()
}

pub fn is_cyclic(g: &EnumeratedGroup, s: &SubgroupSet) -> bool {
    s.members().any(|x| g.element_order(x) as usize == s.order())
}

pub fn is_abelian(g: &EnumeratedGroup, s: &SubgroupSet) -> bool {
    let gens = s.generators();
    gens.iter()
        .enumerate()
        .all(|(i, &a)| gens[i + 1..].iter().all(|&b| g.commute(a, b)))
}

/// A Sylow `p`-subgroup of `s`: a maximal `p`-subgroup grown greedily.
pub fn sylow_subgroup(g: &EnumeratedGroup, s: &SubgroupSet, p: u64) -> SubgroupSet {
    let p = p as usize;
    let target = p_part(s.order(), p);
    let mut sylow = g.trivial();
    for x in s.members() {
        if sylow.order() == target {
            break;
        }
        if sylow.contains(x) || p_part(g.element_order(x) as usize, p) != g.element_order(x) as usize {
            continue;
        }
        if let Some(t) = g.extend_subgroup(&sylow, x, Some(target)) {
            if p_part(t.order(), p) == t.order() {
                sylow = t;
            }
        }
    }
    debug_assert_eq!(sylow.order(), target);
    sylow
}

/// The largest normal `p`-subgroup of `s`, as the intersection of the
/// `s`-conjugates of a Sylow subgroup.
pub fn p_core(g: &EnumeratedGroup, s: &SubgroupSet, p: u64) -> SubgroupSet {
    let sylow = sylow_subgroup(g, s, p);
    if sylow.is_trivial() {
        return sylow;
    }
    let mut members = sylow.member_set().clone();
    let mut seen: FxHashSet<FixedBitSet> = FxHashSet::default();
    for t in s.members() {
        let c = g.conjugate_subgroup(&sylow, t);
        if seen.insert(c.member_set().clone()) {
            members.intersect_with(c.member_set());
        }
    }
    g.subgroup_from_members(members)
}

/// Whether `s / O_p(s)` is cyclic.
pub fn is_p_cyclic(g: &EnumeratedGroup, s: &SubgroupSet, p: u64) -> bool {
    let core = p_core(g, s, p);
    let m = (s.order() / core.order()) as u64;
    if m == 1 {
        return true;
    }
    // the image of x has order m iff x^(m/q) lies outside the core for every prime q | m
    let qs = prime_factors(m);
    s.members()
        .any(|x| qs.iter().all(|&q| !core.contains(g.pow(x, m / q))))
}

pub fn is_p_cyclic_any_prime(g: &EnumeratedGroup, s: &SubgroupSet) -> bool {
    if is_cyclic(g, s) {
        return true;
    }
    prime_factors(s.order() as u64)
        .into_iter()
        .any(|p| is_p_cyclic(g, s, p))
}

pub fn center(g: &EnumeratedGroup, s: &SubgroupSet) -> SubgroupSet {
    let mut members = FixedBitSet::with_capacity(g.order());
    for x in s.members() {
        if s.generators().iter().all(|&y| g.commute(x, y)) {
            members.insert(x);
        }
    }
    g.subgroup_from_members(members)
}

/// A predicate on subgroups that is invariant under conjugation.
#[derive(Clone)]
pub enum SubgroupClass {
    All,
    Cyclic,
    PCyclic(u64),
    PCyclicAnyPrime,
    Solvable,
    /// A caller-supplied class, e.g. groups with a normal series
    /// `W ⊴ I ⊴ K` where `W` is a p-group and `I/W`, `K/I` are cyclic.
    Custom(
        &'static str,
        Arc<dyn Fn(&EnumeratedGroup, &SubgroupSet) -> bool + Send + Sync>,
    ),
}

impl fmt::Debug for SubgroupClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for SubgroupClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SubgroupClass::All => f.write_str("all"),
            SubgroupClass::Cyclic => f.write_str("cyclic"),
            SubgroupClass::PCyclic(p) => write!(f, "{p}-cyclic"),
            SubgroupClass::PCyclicAnyPrime => f.write_str("p-cyclic"),
            SubgroupClass::Solvable => f.write_str("solvable"),
            SubgroupClass::Custom(name, _) => f.write_str(name),
        }
    }
}

impl SubgroupClass {
    pub fn contains(&self, g: &EnumeratedGroup, s: &SubgroupSet) -> bool {
        match self {
            SubgroupClass::All => true,
            SubgroupClass::Cyclic => is_cyclic(g, s),
            SubgroupClass::PCyclic(p) => is_p_cyclic(g, s, *p),
            SubgroupClass::PCyclicAnyPrime => is_p_cyclic_any_prime(g, s),
            SubgroupClass::Solvable => is_solvable(g, s),
            SubgroupClass::Custom(_, f) => f(g, s),
        }
    }
}

/// Subgroups of `h` lying in `class`.
pub fn class_subgroups(
    g: &EnumeratedGroup,
    h: &SubgroupSet,
    class: &SubgroupClass,
) -> Result<Vec<SubgroupSet>> {
    let subs = match class {
        // cyclic subgroups are generated by single elements
        SubgroupClass::Cyclic => {
            let mut seen = FxHashSet::default();
            h.members()
                .map(|x| g.subgroup(&[x]))
                .filter(|c| seen.insert(c.member_set().clone()))
                .collect()
        }
        _ => all_subgroups(g, h, None, DEFAULT_LATTICE_BOUND.max(h.order()))?,
    };
    Ok(subs.into_iter().filter(|s| class.contains(g, s)).collect())
}

/// Isomorphism invariants. Equal for isomorphic groups; the converse can
/// fail, so buckets are refined with [`find_isomorphism`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct IsoFingerprint {
    pub order: usize,
    /// `(element order, count)` pairs, sorted.
    pub element_orders: Vec<(u32, usize)>,
    pub center_order: usize,
    pub derived_series_orders: Vec<usize>,
    /// Elementary divisors of the abelianization, as prime powers.
    pub abelianization: Vec<usize>,
    pub class_count: usize,
}

impl fmt::Display for IsoFingerprint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[usize]| {
            v.iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(",")
        };
        let orders: Vec<String> = self
            .element_orders
            .iter()
            .map(|(o, c)| format!("{o}:{c}"))
            .collect();
        write!(
            f,
            "order={};orders={};center={};derived={};ab={};classes={}",
            self.order,
            orders.join(","),
            self.center_order,
            join(&self.derived_series_orders),
            join(&self.abelianization),
            self.class_count
        )
    }
}

pub fn fingerprint(g: &EnumeratedGroup, s: &SubgroupSet) -> IsoFingerprint {
    let mut counts: BTreeMap<u32, usize> = BTreeMap::new();
    for x in s.members() {
        *counts.entry(g.element_order(x)).or_default() += 1;
    }
    let members: Vec<usize> = s.members().collect();
    // commuting pairs / |S| = number of classes
    let mut commuting = 0usize;
    let mut center_order = 0usize;
    for &x in &members {
        let c = members.iter().filter(|&&y| g.commute(x, y)).count();
        commuting += c;
        if c == members.len() {
            center_order += 1;
        }
    }
    let series = derived_series(g, s);
    let derived_series_orders = series.iter().map(|d| d.order()).collect();
    let abelianization = if series.len() > 1 {
        abelian_invariants(g, s, &series[1])
    } else {
        Vec::new()
    };
    IsoFingerprint {
        order: s.order(),
        element_orders: counts.into_iter().collect(),
        center_order,
        derived_series_orders,
        abelianization,
        class_count: commuting / members.len(),
    }
}

/// Elementary divisors of `s / n` for normal `n` with abelian quotient.
fn abelian_invariants(g: &EnumeratedGroup, s: &SubgroupSet, n: &SubgroupSet) -> Vec<usize> {
    let m = s.order() / n.order();
    let mut out = Vec::new();
    for p in prime_factors(m as u64) {
        let p = p as usize;
        // ranks[k] = log_p #{cosets c : c^(p^k) = 1}
        let mut ranks = vec![0usize];
        let mut pk = 1u64;
        loop {
            pk *= p as u64;
            let cosets = s.members().filter(|&x| n.contains(g.pow(x, pk))).count() / n.order();
            let mut r = 0;
            let mut c = cosets;
            while c > 1 {
                c /= p;
                r += 1;
            }
            let prev = *ranks.last().unwrap();
            if r == prev {
                break;
            }
            ranks.push(r);
        }
        // the number of cyclic factors of order >= p^k is ranks[k] - ranks[k-1]
        let at_least: Vec<usize> = ranks.windows(2).map(|w| w[1] - w[0]).collect();
        for k in 0..at_least.len() {
            let next = at_least.get(k + 1).copied().unwrap_or(0);
            for _ in 0..at_least[k] - next {
                out.push(p.pow(k as u32 + 1));
            }
        }
    }
    out.sort_unstable();
    out
}

/// A short generating set of `s`, largest element orders first.
fn small_generating_set(g: &EnumeratedGroup, s: &SubgroupSet) -> Vec<usize> {
    let rebuilt = g.subgroup_from_members(s.member_set().clone());
    rebuilt.generators().to_vec()
}

/// An isomorphism `s1 -> s2`, as `(x, φ(x))` pairs over the members of `s1`,
/// passed to `visit` for every isomorphism in turn until it breaks.
///
/// Images of a small generating set are chosen by backtracking among
/// elements of equal order; `compatible(x, y)` can prune further.
pub fn for_each_isomorphism<B>(
    g1: &EnumeratedGroup,
    s1: &SubgroupSet,
    g2: &EnumeratedGroup,
    s2: &SubgroupSet,
    compatible: &dyn Fn(usize, usize) -> bool,
    visit: &mut dyn FnMut(&[(usize, usize)]) -> ControlFlow<B>,
) -> Option<B> {
    if s1.order() != s2.order() {
        return None;
    }
    let gens = small_generating_set(g1, s1);
    if gens.is_empty() {
        return match visit(&[(0, 0)]) {
            ControlFlow::Break(b) => Some(b),
            ControlFlow::Continue(()) => None,
        };
    }
    let candidates: Vec<Vec<usize>> = gens
        .iter()
        .map(|&x| {
            s2.members()
                .filter(|&y| g1.element_order(x) == g2.element_order(y) && compatible(x, y))
                .collect()
        })
        .collect();
    let mut images = vec![0usize; gens.len()];
    search(g1, s1, g2, &gens, &candidates, &mut images, 0, compatible, visit)
}

#[allow(clippy::too_many_arguments)]
fn search<B>(
    g1: &EnumeratedGroup,
    s1: &SubgroupSet,
    g2: &EnumeratedGroup,
    gens: &[usize],
    candidates: &[Vec<usize>],
    images: &mut Vec<usize>,
    depth: usize,
    compatible: &dyn Fn(usize, usize) -> bool,
    visit: &mut dyn FnMut(&[(usize, usize)]) -> ControlFlow<B>,
) -> Option<B> {
    if depth == gens.len() {
        let map = extend_homomorphism(g1, s1, g2, gens, images, compatible)?;
        return match visit(&map) {
            ControlFlow::Break(b) => Some(b),
            ControlFlow::Continue(()) => None,
        };
    }
    for &y in &candidates[depth] {
        // pairwise products must keep their orders
        let ok = (0..depth).all(|i| {
            g1.element_order(g1.mul(gens[i], gens[depth]))
                == g2.element_order(g2.mul(images[i], y))
        });
        if !ok {
            continue;
        }
        images[depth] = y;
        if let Some(b) = search(g1, s1, g2, gens, candidates, images, depth + 1, compatible, visit) {
            return Some(b);
        }
    }
    None
}

/// Extends generator images along the Cayley graph and checks that the
/// result is a well-defined bijective homomorphism.
fn extend_homomorphism(
    g1: &EnumeratedGroup,
    s1: &SubgroupSet,
    g2: &EnumeratedGroup,
    gens: &[usize],
    images: &[usize],
    compatible: &dyn Fn(usize, usize) -> bool,
) -> Option<Vec<(usize, usize)>> {
    let mut phi: rustc_hash::FxHashMap<usize, usize> = rustc_hash::FxHashMap::default();
    phi.insert(0, 0);
    let mut queue = vec![0usize];
    let mut image_set = FxHashSet::default();
    image_set.insert(0usize);
    let mut head = 0;
    while head < queue.len() {
        let x = queue[head];
        head += 1;
        let fx = phi[&x];
        for (&a, &fa) in gens.iter().zip(images) {
            let y = g1.mul(x, a);
            let fy = g2.mul(fx, fa);
            match phi.get(&y) {
                Some(&v) if v != fy => return None,
                Some(_) => {}
                None => {
                    if !compatible(y, fy) || !image_set.insert(fy) {
                        return None;
                    }
                    phi.insert(y, fy);
                    queue.push(y);
                }
            }
        }
    }
    debug_assert_eq!(phi.len(), s1.order());
    let mut v: Vec<(usize, usize)> = phi.into_iter().collect();
    v.sort_unstable();
    Some(v)
}

/// An isomorphism `s1 -> s2` as sorted `(x, φ(x))` pairs, or `None`.
pub fn find_isomorphism(
    g1: &EnumeratedGroup,
    s1: &SubgroupSet,
    g2: &EnumeratedGroup,
    s2: &SubgroupSet,
) -> Option<Vec<(usize, usize)>> {
    if s1.order() != s2.order() {
        return None;
    }
    if fingerprint(g1, s1) != fingerprint(g2, s2) {
        return None;
    }
    for_each_isomorphism(g1, s1, g2, s2, &|_, _| true, &mut |map| {
        ControlFlow::Break(map.to_vec())
    })
}

pub fn is_isomorphic(
    g1: &EnumeratedGroup,
    s1: &SubgroupSet,
    g2: &EnumeratedGroup,
    s2: &SubgroupSet,
) -> bool {
    find_isomorphism(g1, s1, g2, s2).is_some()
}

/// One isomorphism class among the `P`-subgroups of a group.
#[derive(Clone, Debug)]
pub struct IsoClassCount {
    pub fingerprint: IsoFingerprint,
    pub representative: SubgroupSet,
    pub count: usize,
}

/// Number of `P`-subgroups of `h` in each isomorphism class.
pub fn p_statistics(
    g: &EnumeratedGroup,
    h: &SubgroupSet,
    class: &SubgroupClass,
) -> Result<Vec<IsoClassCount>> {
    let subs = class_subgroups(g, h, class)?;
    let mut out: Vec<IsoClassCount> = Vec::new();
    for s in subs {
        let fp = fingerprint(g, &s);
        let hit = out.iter_mut().find(|c| {
            c.fingerprint == fp && is_isomorphic(g, &c.representative, g, &s)
        });
        match hit {
            Some(c) => c.count += 1,
            None => out.push(IsoClassCount {
                fingerprint: fp,
                representative: s,
                count: 1,
            }),
        }
    }
    out.sort_by(|a, b| a.fingerprint.cmp(&b.fingerprint).then(b.count.cmp(&a.count)));
    Ok(out)
}

/// Whether two statistics agree, matching classes by explicit isomorphism.
pub fn same_statistics(
    g1: &EnumeratedGroup,
    a: &[IsoClassCount],
    g2: &EnumeratedGroup,
    b: &[IsoClassCount],
) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let mut used = vec![false; b.len()];
    a.iter().all(|x| {
        let hit = b.iter().enumerate().find(|(j, y)| {
            !used[*j]
                && x.count == y.count
                && x.fingerprint == y.fingerprint
                && is_isomorphic(g1, &x.representative, g2, &y.representative)
        });
        match hit {
            Some((j, _)) => {
                used[j] = true;
                true
            }
            None => false,
        }
    })
}
