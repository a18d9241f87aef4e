//! Conjugacy of subgroups inside a symmetric group too large to enumerate.
//!
//! `K1` and `K2` are conjugate in `S_n` exactly when they are permutation
//! isomorphic: some isomorphism `φ: K1 -> K2` carries the point stabilizers
//! of each `K1`-orbit onto point stabilizers of a matching `K2`-orbit.

use std::collections::BTreeMap;
use std::ops::ControlFlow;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::group::{EnumeratedGroup, SubgroupSet, DEFAULT_MAX_ORDER};
use crate::perm::{GroupSpec, Permutation};
use crate::subgroups::for_each_isomorphism;

/// Orbits of the whole group on points, largest first.
pub fn orbits(g: &EnumeratedGroup) -> Vec<Vec<usize>> {
    let n = g.degree();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut orbit = vec![start];
        let mut i = 0;
        while i < orbit.len() {
            let x = orbit[i];
            for p in g.spec().generators() {
                let y = p.image(x);
                if !seen[y] {
                    seen[y] = true;
                    orbit.push(y);
                }
            }
            i += 1;
        }
        out.push(orbit);
    }
    out.sort_by_key(|o| std::cmp::Reverse(o.len()));
    out
}

/// Invariants of a permutation group under `S_n`-conjugacy.
pub fn sn_invariants(g: &EnumeratedGroup) -> (usize, Vec<usize>, Vec<(Vec<usize>, usize)>) {
    let mut orbit_sizes: Vec<usize> = orbits(g).iter().map(|o| o.len()).collect();
    orbit_sizes.sort_unstable();
    let mut types: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
    for e in g.elements() {
        *types.entry(e.cycle_type()).or_default() += 1;
    }
    (g.order(), orbit_sizes, types.into_iter().collect())
}

fn stabilizer(g: &EnumeratedGroup, x: usize) -> FixedBitSet {
    let mut m = FixedBitSet::with_capacity(g.order());
    for (i, e) in g.elements().iter().enumerate() {
        if e.image(x) == x {
            m.insert(i);
        }
    }
    m
}

/// A point bijection `σ` with `σ⁻¹ K1 σ = K2`, or `None` when the two groups
/// are not conjugate in `S_n`.
pub fn sn_subgroup_conjugate(k1: &GroupSpec, k2: &GroupSpec) -> Result<Option<Permutation>> {
    sn_subgroup_conjugate_bounded(k1, k2, DEFAULT_MAX_ORDER)
}

pub fn sn_subgroup_conjugate_bounded(
    k1: &GroupSpec,
    k2: &GroupSpec,
    max_order: usize,
) -> Result<Option<Permutation>> {
    if k1.degree() != k2.degree() {
        return Err(Error::MixedDegrees(k1.degree(), k2.degree()));
    }
    let g1 = EnumeratedGroup::enumerate(k1.clone(), max_order)?;
    let g2 = EnumeratedGroup::enumerate(k2.clone(), max_order)?;
    Ok(permutation_isomorphism(&g1, &g2))
}

/// As [`sn_subgroup_conjugate`], for groups already enumerated.
pub fn permutation_isomorphism(g1: &EnumeratedGroup, g2: &EnumeratedGroup) -> Option<Permutation> {
    let n = g1.degree();
    if sn_invariants(g1) != sn_invariants(g2) {
        return None;
    }
    let mut a: Vec<&Permutation> = g1.elements().iter().collect();
    let mut b: Vec<&Permutation> = g2.elements().iter().collect();
    a.sort();
    b.sort();
    if a == b {
        return Some(Permutation::identity(n));
    }

    let orbits1 = orbits(g1);
    let orbits2 = orbits(g2);
    let stab1: Vec<FixedBitSet> = orbits1.iter().map(|o| stabilizer(g1, o[0])).collect();
    // every point of K2, with its stabilizer
    let stab2: Vec<FixedBitSet> = (0..n).map(|x| stabilizer(g2, x)).collect();
    let orbit_of2: Vec<usize> = {
        let mut v = vec![0; n];
        for (j, o) in orbits2.iter().enumerate() {
            for &x in o {
                v[x] = j;
            }
        }
        v
    };

    let (w1, w2) = (g1.whole(), g2.whole());
    let compatible = |x: usize, y: usize| g1.element(x).cycle_type() == g2.element(y).cycle_type();
    let found = for_each_isomorphism(g1, &w1, g2, &w2, &compatible, &mut |map| {
        let mut phi = vec![0usize; g1.order()];
        for &(x, y) in map {
            phi[x] = y;
        }
        // candidate target points in K2 for each K1-orbit
        let targets: Vec<Vec<usize>> = stab1
            .iter()
            .zip(&orbits1)
            .map(|(s, o)| {
                let mut image = FixedBitSet::with_capacity(g2.order());
                for x in s.ones() {
                    image.insert(phi[x]);
                }
                (0..n)
                    .filter(|&y| orbits2[orbit_of2[y]].len() == o.len() && stab2[y] == image)
                    .collect()
            })
            .collect();
        let mut chosen = vec![usize::MAX; orbits1.len()];
        let mut used = vec![false; orbits2.len()];
        if !match_orbits(&targets, &orbit_of2, &mut chosen, &mut used, 0) {
            return ControlFlow::Continue(());
        }
        let sigma = build_sigma(g1, &orbits1, &chosen, &phi, g2);
        match sigma {
            Some(s) => ControlFlow::Break(s),
            None => ControlFlow::Continue(()),
        }
    });
    if let Some(s) = &found {
        debug_assert!(verify_conjugator(g1, g2, s));
    }
    found
}

fn match_orbits(
    targets: &[Vec<usize>],
    orbit_of2: &[usize],
    chosen: &mut [usize],
    used: &mut [bool],
    i: usize,
) -> bool {
    if i == targets.len() {
        return true;
    }
    for &y in &targets[i] {
        let j = orbit_of2[y];
        if used[j] {
            continue;
        }
        used[j] = true;
        chosen[i] = y;
        if match_orbits(targets, orbit_of2, chosen, used, i + 1) {
            return true;
        }
        used[j] = false;
    }
    false
}

/// `σ(x^s) = y^φ(s)` orbit by orbit.
fn build_sigma(
    g1: &EnumeratedGroup,
    orbits1: &[Vec<usize>],
    chosen: &[usize],
    phi: &[usize],
    g2: &EnumeratedGroup,
) -> Option<Permutation> {
    let n = g1.degree();
    let mut images = vec![u32::MAX; n];
    for (o, &y) in orbits1.iter().zip(chosen) {
        let x = o[0];
        for s in 0..g1.order() {
            let from = g1.element(s).image(x);
            let to = g2.element(phi[s]).image(y) as u32;
            if images[from] == u32::MAX {
                images[from] = to;
            } else if images[from] != to {
                return None;
            }
        }
    }
    let sigma = Permutation::from_images(images).ok()?;
    verify_conjugator(g1, g2, &sigma).then_some(sigma)
}

/// Checks `σ⁻¹ K1 σ = K2` on generators.
pub fn verify_conjugator(g1: &EnumeratedGroup, g2: &EnumeratedGroup, sigma: &Permutation) -> bool {
    let inv = sigma.inverse();
    g1.spec()
        .generators()
        .iter()
        .all(|k| g2.index_of(&inv.then(k).then(sigma)).is_some())
        && g1.order() == g2.order()
}

/// Conjugacy in `S_n` of subgroups of two (possibly different) enumerated
/// groups of the same degree.
pub fn subgroups_sn_conjugate(
    g1: &EnumeratedGroup,
    k1: &SubgroupSet,
    g2: &EnumeratedGroup,
    k2: &SubgroupSet,
) -> Result<Option<Permutation>> {
    if k1.order() != k2.order() {
        return Ok(None);
    }
    sn_subgroup_conjugate(&k1.to_spec(g1), &k2.to_spec(g2))
}
