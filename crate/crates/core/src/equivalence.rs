//! Marks, class-preserving bijections and the hierarchy of equivalences
//! between subgroups: rational, p-local, locally integral and solvable.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{normal_core, transporter, CosetAction, EnumeratedGroup, SubgroupSet};
use crate::subgroups::{
    all_subgroups, class_subgroups, conjugacy_classes_of_subgroups, prime_factors, SubgroupClass,
};
use crate::symmetric::{permutation_isomorphism, sn_invariants};

/// Which relation a report decides.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Relation {
    Rational,
    PLocal(u64),
    LocalIntegral,
    Solvable,
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Relation::Rational => f.write_str("rational"),
            Relation::PLocal(p) => write!(f, "p-local:{p}"),
            Relation::LocalIntegral => f.write_str("local-integral"),
            Relation::Solvable => f.write_str("solvable"),
        }
    }
}

impl FromStr for Relation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "rational" | "gassmann" => Ok(Relation::Rational),
            "local-integral" | "locally-integral" => Ok(Relation::LocalIntegral),
            "solvable" => Ok(Relation::Solvable),
            _ => {
                let p = s
                    .strip_prefix("p-local:")
                    .and_then(|p| p.parse::<u64>().ok())
                    .filter(|&p| crate::subgroups::is_prime(p));
                p.map(Relation::PLocal).ok_or_else(|| {
                    Error::Precondition(format!(
                        "unknown relation {s:?}; expected rational, p-local:<prime>, local-integral or solvable"
                    ))
                })
            }
        }
    }
}

impl Serialize for Relation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Relation {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A subgroup class where the two sides have different counts.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Discrepancy {
    pub subgroup_gens: Vec<String>,
    pub order: usize,
    /// Number of subgroups of `H1` (resp. `H2`) in the ambient class.
    pub count1: usize,
    pub count2: usize,
    /// Marks `χ_{H1}(K)` and `χ_{H2}(K)`; absent inside a symmetric group.
    pub chi1: Option<u64>,
    pub chi2: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentVerdict {
    pub relation: Relation,
    pub verdict: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquivalenceReport {
    pub relation: Relation,
    pub verdict: bool,
    /// Pairs `(i, j)`: the `i`-th class subgroup of `H1` corresponds to the
    /// `j`-th class subgroup of `H2`; empty unless the verdict is true.
    pub witness: Vec<(usize, usize)>,
    pub discrepancy: Option<Discrepancy>,
    /// Number of ambient conjugacy classes met by the class subgroups.
    pub ambient_classes: usize,
    pub subgroup_counts: (usize, usize),
    /// Whether the marks of `H1` and `H2` agree on every class subgroup;
    /// only computed inside an enumerated ambient group.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub marks_agree: Option<bool>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub components: Vec<ComponentVerdict>,
}

impl EquivalenceReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("reports serialize")
    }
}

/// A pair of subgroups together with the group they are compared in.
#[derive(Clone, Copy)]
pub enum Triple<'a> {
    /// `H1, H2` inside an enumerated group `G`.
    InGroup {
        g: &'a EnumeratedGroup,
        h1: &'a SubgroupSet,
        h2: &'a SubgroupSet,
    },
    /// `H1, H2` inside the symmetric group on their points. Conjugacy is
    /// decided by permutation isomorphism; marks are not available.
    InSymmetric {
        h1: &'a EnumeratedGroup,
        h2: &'a EnumeratedGroup,
    },
}

impl<'a> Triple<'a> {
    fn side(&self, i: usize) -> (&'a EnumeratedGroup, SubgroupSet) {
        match *self {
            Triple::InGroup { g, h1, h2 } => (g, if i == 0 { h1.clone() } else { h2.clone() }),
            Triple::InSymmetric { h1, h2 } => {
                let g = if i == 0 { h1 } else { h2 };
                (g, g.whole())
            }
        }
    }

    pub fn orders(&self) -> (usize, usize) {
        (self.side(0).1.order(), self.side(1).1.order())
    }
}

/// `χ_H(K)`: the number of right cosets of `H` fixed by `K`. Also computed
/// as `#{g : g K g⁻¹ ≤ H} / |H|`; the two counts are asserted equal.
pub fn mark(g: &EnumeratedGroup, h: &SubgroupSet, k: &SubgroupSet) -> u64 {
    let action = CosetAction::new(g, h);
    let fixed = action.fixed_cosets(g, k) as u64;
    assert_eq!(fixed, mark_by_conjugation(g, h, k), "mark formulas disagree");
    fixed
}

pub fn mark_by_conjugation(g: &EnumeratedGroup, h: &SubgroupSet, k: &SubgroupSet) -> u64 {
    let count = (0..g.order())
        .filter(|&x| k.generators().iter().all(|&y| h.contains(g.conj(x, y))))
        .count();
    assert_eq!(count % h.order(), 0);
    (count / h.order()) as u64
}

/// Marks of one subgroup, with its coset action cached.
pub struct MarkTable<'a> {
    g: &'a EnumeratedGroup,
    action: CosetAction,
}

impl<'a> MarkTable<'a> {
    pub fn new(g: &'a EnumeratedGroup, h: &SubgroupSet) -> Self {
        MarkTable {
            g,
            action: CosetAction::new(g, h),
        }
    }

    pub fn mark(&self, k: &SubgroupSet) -> u64 {
        let fixed = self.action.fixed_cosets(self.g, k) as u64;
        debug_assert_eq!(fixed, mark_by_conjugation(self.g, self.action.subgroup(), k));
        fixed
    }
}

struct Tally {
    subs: [Vec<SubgroupSet>; 2],
    // per ambient class: members on each side
    classes: Vec<[Vec<usize>; 2]>,
}

fn tally(triple: &Triple, class: &SubgroupClass) -> Result<Tally> {
    let (g1, s1) = triple.side(0);
    let (g2, s2) = triple.side(1);
    let subs = [class_subgroups(g1, &s1, class)?, class_subgroups(g2, &s2, class)?];
    let mut classes: Vec<[Vec<usize>; 2]> = Vec::new();
    match *triple {
        Triple::InGroup { g, .. } => {
            let mut buckets: BTreeMap<(usize, Vec<(usize, usize)>), Vec<usize>> = BTreeMap::new();
            for side in 0..2 {
                for (i, k) in subs[side].iter().enumerate() {
                    let reps = buckets.entry((k.order(), g.class_distribution(k))).or_default();
                    let hit = reps.iter().copied().find(|&c| {
                        let (rs, ri) = first_member(&classes[c]);
                        transporter(g, &subs[rs][ri], k).is_some()
                    });
                    let c = hit.unwrap_or_else(|| {
                        reps.push(classes.len());
                        classes.push([Vec::new(), Vec::new()]);
                        classes.len() - 1
                    });
                    classes[c][side].push(i);
                }
            }
        }
        Triple::InSymmetric { .. } => {
            let parents = [g1, g2];
            let mut enumerated: [Vec<EnumeratedGroup>; 2] = [Vec::new(), Vec::new()];
            for side in 0..2 {
                for k in &subs[side] {
                    enumerated[side].push(EnumeratedGroup::from_spec(k.to_spec(parents[side]))?);
                }
            }
            type Key = (usize, Vec<usize>, Vec<(Vec<usize>, usize)>);
            let mut buckets: BTreeMap<Key, Vec<usize>> = BTreeMap::new();
            for side in 0..2 {
                for i in 0..subs[side].len() {
                    let e = &enumerated[side][i];
                    let reps = buckets.entry(sn_invariants(e)).or_default();
                    let hit = reps.iter().copied().find(|&c| {
                        let (rs, ri) = first_member(&classes[c]);
                        permutation_isomorphism(&enumerated[rs][ri], e).is_some()
                    });
                    let c = hit.unwrap_or_else(|| {
                        reps.push(classes.len());
                        classes.push([Vec::new(), Vec::new()]);
                        classes.len() - 1
                    });
                    classes[c][side].push(i);
                }
            }
        }
    }
    Ok(Tally { subs, classes })
}

fn first_member(c: &[Vec<usize>; 2]) -> (usize, usize) {
    if let Some(&i) = c[0].first() {
        (0, i)
    } else {
        (1, c[1][0])
    }
}

/// Decides whether there is an ambient-class-preserving bijection between
/// the `class`-subgroups of `H1` and of `H2`.
pub fn class_preserving_bijection(
    triple: &Triple,
    class: &SubgroupClass,
    relation: Relation,
) -> Result<EquivalenceReport> {
    let t = tally(triple, class)?;
    let verdict = t.classes.iter().all(|c| c[0].len() == c[1].len());
    let witness = if verdict {
        t.classes
            .iter()
            .flat_map(|c| c[0].iter().copied().zip(c[1].iter().copied()))
            .collect()
    } else {
        Vec::new()
    };

    let mut marks_agree = None;
    let mut discrepancy = None;
    match *triple {
        Triple::InGroup { g, h1, h2 } => {
            let (m1, m2) = (MarkTable::new(g, h1), MarkTable::new(g, h2));
            let marks: Vec<(u64, u64)> = t
                .classes
                .iter()
                .map(|c| {
                    let (s, i) = first_member(c);
                    let k = &t.subs[s][i];
                    (m1.mark(k), m2.mark(k))
                })
                .collect();
            let agree = marks.iter().all(|(a, b)| a == b);
            assert_eq!(agree, verdict, "class counts and marks disagree");
            marks_agree = Some(agree);
            if !verdict {
                let c = pick_discrepancy(&t, |c| marks[c].0 != marks[c].1);
                discrepancy = Some(make_discrepancy(&t, c, Some(marks[c]), g));
            }
        }
        Triple::InSymmetric { h1, h2 } => {
            if !verdict {
                let c = pick_discrepancy(&t, |_| true);
                let g = if t.classes[c][0].is_empty() { h2 } else { h1 };
                discrepancy = Some(make_discrepancy(&t, c, None, g));
            }
        }
    }
    Ok(EquivalenceReport {
        relation,
        verdict,
        witness,
        discrepancy,
        ambient_classes: t.classes.len(),
        subgroup_counts: (t.subs[0].len(), t.subs[1].len()),
        marks_agree,
        components: Vec::new(),
    })
}

/// The unbalanced class of largest order, preferring classes whose marks
/// differ and which meet `H1`.
fn pick_discrepancy(t: &Tally, marks_differ: impl Fn(usize) -> bool) -> usize {
    let order = |c: usize| {
        let (s, i) = first_member(&t.classes[c]);
        t.subs[s][i].order()
    };
    (0..t.classes.len())
        .filter(|&c| t.classes[c][0].len() != t.classes[c][1].len())
        .max_by_key(|&c| {
            (
                marks_differ(c),
                order(c),
                !t.classes[c][0].is_empty(),
                std::cmp::Reverse(c),
            )
        })
        .expect("an unbalanced class exists")
}

fn make_discrepancy(
    t: &Tally,
    c: usize,
    marks: Option<(u64, u64)>,
    g: &EnumeratedGroup,
) -> Discrepancy {
    let (s, i) = first_member(&t.classes[c]);
    let k = &t.subs[s][i];
    Discrepancy {
        subgroup_gens: k.generator_strings(g),
        order: k.order(),
        count1: t.classes[c][0].len(),
        count2: t.classes[c][1].len(),
        chi1: marks.map(|m| m.0),
        chi2: marks.map(|m| m.1),
    }
}

/// Class-intersection counts: `#(H1 ∩ C) = #(H2 ∩ C)` for every conjugacy
/// class `C` (cycle types inside a symmetric group). The witness comes from
/// the equivalent cyclic-subgroup bijection, which must agree.
pub fn rationally_equivalent(triple: &Triple) -> Result<EquivalenceReport> {
    let counts = match *triple {
        Triple::InGroup { g, h1, h2 } => {
            h1.order() == h2.order() && g.class_distribution(h1) == g.class_distribution(h2)
        }
        Triple::InSymmetric { h1, h2 } => {
            let types = |g: &EnumeratedGroup| {
                let mut m: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
                for e in g.elements() {
                    *m.entry(e.cycle_type()).or_default() += 1;
                }
                m
            };
            h1.order() == h2.order() && types(h1) == types(h2)
        }
    };
    let report = class_preserving_bijection(triple, &SubgroupClass::Cyclic, Relation::Rational)?;
    assert_eq!(
        counts, report.verdict,
        "class-intersection counts disagree with the cyclic-subgroup bijection"
    );
    Ok(report)
}

pub fn p_locally_equivalent(triple: &Triple, p: u64) -> Result<EquivalenceReport> {
    class_preserving_bijection(triple, &SubgroupClass::PCyclic(p), Relation::PLocal(p))
}

/// Rational equivalence together with p-local equivalence at every prime
/// dividing `|H1|`. For other primes a p-cyclic subgroup is cyclic, so
/// rational equivalence already covers them.
pub fn locally_integrally_equivalent(triple: &Triple) -> Result<EquivalenceReport> {
    let mut components = Vec::new();
    let rational = rationally_equivalent(triple)?;
    components.push(ComponentVerdict {
        relation: Relation::Rational,
        verdict: rational.verdict,
    });
    let mut failed = (!rational.verdict).then_some(rational);
    let (o1, _) = triple.orders();
    for p in prime_factors(o1 as u64) {
        let r = p_locally_equivalent(triple, p)?;
        components.push(ComponentVerdict {
            relation: r.relation,
            verdict: r.verdict,
        });
        if !r.verdict && failed.is_none() {
            failed = Some(r);
        }
    }
    let combined =
        class_preserving_bijection(triple, &SubgroupClass::PCyclicAnyPrime, Relation::LocalIntegral)?;
    assert_eq!(
        combined.verdict,
        failed.is_none(),
        "p-cyclic bijection disagrees with the per-prime checks"
    );
    let mut report = combined;
    if let Some(f) = failed {
        report.discrepancy = f.discrepancy;
    }
    report.components = components;
    Ok(report)
}

pub fn solvably_equivalent(triple: &Triple) -> Result<EquivalenceReport> {
    class_preserving_bijection(triple, &SubgroupClass::Solvable, Relation::Solvable)
}

pub fn equivalent(triple: &Triple, relation: Relation) -> Result<EquivalenceReport> {
    match relation {
        Relation::Rational => rationally_equivalent(triple),
        Relation::PLocal(p) => p_locally_equivalent(triple, p),
        Relation::LocalIntegral => locally_integrally_equivalent(triple),
        Relation::Solvable => solvably_equivalent(triple),
    }
}

/// Whether `(G, H1, H2)` is a faithful Gassmann triple: rationally
/// equivalent subgroups share their normal core, which must be trivial.
pub fn gassmann_faithful(g: &EnumeratedGroup, h1: &SubgroupSet, h2: &SubgroupSet) -> bool {
    let core = normal_core(g, h1);
    debug_assert!(
        g.class_distribution(h1) != g.class_distribution(h2) || core == normal_core(g, h2)
    );
    core.is_trivial()
}

/// Conjugacy class representatives of the subgroups of `G` with the given
/// index, optionally only those with trivial normal core.
pub fn subgroup_classes_of_index(
    g: &EnumeratedGroup,
    index: usize,
    faithful_only: bool,
) -> Result<Vec<SubgroupSet>> {
    if g.order() % index != 0 {
        return Ok(Vec::new());
    }
    let order = g.order() / index;
    let subs: Vec<SubgroupSet> = all_subgroups(g, &g.whole(), Some(order), usize::MAX)?
        .into_iter()
        .filter(|s| s.order() == order)
        .collect();
    let classes = conjugacy_classes_of_subgroups(g, &subs);
    Ok(classes
        .into_iter()
        .map(|c| subs[c[0]].clone())
        .filter(|s| !faithful_only || normal_core(g, s).is_trivial())
        .collect())
}

/// Conjugacy class representatives of all subgroups of `G`.
pub fn subgroup_class_representatives(
    g: &EnumeratedGroup,
    bound: usize,
) -> Result<Vec<SubgroupSet>> {
    let subs = all_subgroups(g, &g.whole(), None, bound)?;
    let classes = conjugacy_classes_of_subgroups(g, &subs);
    Ok(classes.into_iter().map(|c| subs[c[0]].clone()).collect())
}

/// Blocks of mutually equivalent candidates (indices into `candidates`,
/// which should be pairwise nonconjugate).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Partition {
    pub blocks: Vec<Vec<usize>>,
}

impl Partition {
    /// Blocks with at least two nonconjugate members.
    pub fn nontrivial(&self) -> impl Iterator<Item = &Vec<usize>> {
        self.blocks.iter().filter(|b| b.len() >= 2)
    }
}

pub fn partition_subgroup_classes(
    g: &EnumeratedGroup,
    candidates: &[SubgroupSet],
    relation: Relation,
) -> Result<Partition> {
    // every relation refines rational equivalence, which the class
    // distribution decides
    let mut buckets: BTreeMap<(usize, Vec<(usize, usize)>), Vec<usize>> = BTreeMap::new();
    for (i, s) in candidates.iter().enumerate() {
        buckets
            .entry((s.order(), g.class_distribution(s)))
            .or_default()
            .push(i);
    }
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    for members in buckets.into_values() {
        let mut local: Vec<Vec<usize>> = Vec::new();
        for i in members {
            let mut placed = false;
            for b in local.iter_mut() {
                let triple = Triple::InGroup {
                    g,
                    h1: &candidates[b[0]],
                    h2: &candidates[i],
                };
                if equivalent(&triple, relation)?.verdict {
                    b.push(i);
                    placed = true;
                    break;
                }
            }
            if !placed {
                local.push(vec![i]);
            }
        }
        blocks.extend(local);
    }
    blocks.sort();
    Ok(Partition { blocks })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::GroupSpec;

    fn s4() -> EnumeratedGroup {
        EnumeratedGroup::from_spec(GroupSpec::from_cycles(4, &["(1 2)", "(1 2 3 4)"]).unwrap())
            .unwrap()
    }

    #[test]
    fn marks_of_trivial_and_absent_subgroups() {
        let g = s4();
        let h = g.subgroup_from_spec(&GroupSpec::from_cycles(4, &["(1 2 3)"]).unwrap()).unwrap();
        assert_eq!(mark(&g, &h, &g.trivial()), 8);
        let k = g.subgroup_from_spec(&GroupSpec::from_cycles(4, &["(1 2)"]).unwrap()).unwrap();
        assert_eq!(mark(&g, &h, &k), 0);
    }

    #[test]
    fn identical_subgroups_are_equivalent() {
        let g = s4();
        let h = g.subgroup_from_spec(&GroupSpec::from_cycles(4, &["(1 2 3 4)"]).unwrap()).unwrap();
        let t = Triple::InGroup { g: &g, h1: &h, h2: &h };
        for r in [Relation::Rational, Relation::LocalIntegral, Relation::Solvable] {
            let rep = equivalent(&t, r).unwrap();
            assert!(rep.verdict);
            assert!(rep.witness.iter().all(|(a, b)| a == b));
        }
    }

    #[test]
    fn cyclic_versus_klein_four() {
        let g = s4();
        let c4 = g.subgroup_from_spec(&GroupSpec::from_cycles(4, &["(1 2 3 4)"]).unwrap()).unwrap();
        let v4 = g
            .subgroup_from_spec(&GroupSpec::from_cycles(4, &["(1 2)(3 4)", "(1 3)(2 4)"]).unwrap())
            .unwrap();
        let t = Triple::InGroup { g: &g, h1: &c4, h2: &v4 };
        let r = rationally_equivalent(&t).unwrap();
        assert!(!r.verdict);
        assert!(r.discrepancy.is_some());
        assert!(!locally_integrally_equivalent(&t).unwrap().verdict);
    }

    #[test]
    fn relation_names_round_trip() {
        for r in [
            Relation::Rational,
            Relation::PLocal(3),
            Relation::LocalIntegral,
            Relation::Solvable,
        ] {
            assert_eq!(r.to_string().parse::<Relation>().unwrap(), r);
        }
        assert!("p-local:4".parse::<Relation>().is_err());
    }

    #[test]
    fn s4_rational_partition_is_discrete() {
        let g = s4();
        let reps = subgroup_class_representatives(&g, 2000).unwrap();
        assert_eq!(reps.len(), 11);
        let part = partition_subgroup_classes(&g, &reps, Relation::Rational).unwrap();
        assert_eq!(part.nontrivial().count(), 0);
    }

    #[test]
    fn abelian_group_partition_is_discrete() {
        let g = EnumeratedGroup::from_spec(
            GroupSpec::from_cycles(6, &["(1 2)", "(3 4)", "(5 6)"]).unwrap(),
        )
        .unwrap();
        let reps = subgroup_class_representatives(&g, 2000).unwrap();
        assert_eq!(reps.len(), 16);
        let part = partition_subgroup_classes(&g, &reps, Relation::LocalIntegral).unwrap();
        assert_eq!(part.nontrivial().count(), 0);
    }
}
