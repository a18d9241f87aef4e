//! Local behaviour of primes read off from group data.
//!
//! For a Galois extension `L/Q` with group `G`, a prime with decomposition
//! group `D` and inertia group `I` splits in the fixed field of `H` with one
//! prime per `D`-orbit on the right cosets `[H\G]`. Inside an orbit the
//! `I`-orbits all have the same size `e` (the ramification index), and the
//! orbit has size `e·f`.

use std::collections::BTreeMap;
use std::fmt;

use fixedbitset::FixedBitSet;
use num_bigint::BigUint;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::group::{transporter_within, CosetAction, EnumeratedGroup, SubgroupSet};

/// A decomposition group `D` with inertia group `I ⊴ D`, `D/I` cyclic.
#[derive(Clone, Debug)]
pub struct LocalDatum {
    pub decomposition: SubgroupSet,
    pub inertia: SubgroupSet,
    arithmetic: bool,
}

impl LocalDatum {
    pub fn new(g: &EnumeratedGroup, d: SubgroupSet, i: SubgroupSet) -> Result<Self> {
        if !i.is_subgroup_of(&d) {
            return Err(Error::InvalidDatum("I is not contained in D".into()));
        }
        let normal = d
            .generators()
            .iter()
            .all(|&x| i.generators().iter().all(|&y| i.contains(g.conj(x, y))));
        if !normal {
            return Err(Error::InvalidDatum("I is not normal in D".into()));
        }
        let index = (d.order() / i.order()) as u32;
        let cyclic = d.members().any(|x| {
            let mut y = x;
            let mut k = 1;
            while !i.contains(y) {
                y = g.mul(y, x);
                k += 1;
            }
            k == index
        });
        if !cyclic {
            return Err(Error::InvalidDatum("D/I is not cyclic".into()));
        }
        Ok(LocalDatum {
            decomposition: d,
            inertia: i,
            arithmetic: true,
        })
    }

    /// Skips validation. Patterns computed from such data need not come from
    /// any prime of any number field.
    pub fn exploratory(d: SubgroupSet, i: SubgroupSet) -> Self {
        LocalDatum {
            decomposition: d,
            inertia: i,
            arithmetic: false,
        }
    }

    /// No ramification: `I` trivial, `D` cyclic.
    pub fn unramified(g: &EnumeratedGroup, frobenius: usize) -> Self {
        LocalDatum::new(g, g.subgroup(&[frobenius]), g.trivial()).expect("cyclic D, trivial I")
    }

    pub fn is_arithmetic(&self) -> bool {
        self.arithmetic
    }
}

/// The primes above `p`, as a multiset of `(e, f)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SplittingPattern {
    /// Sorted by `(f, e)`.
    primes: Vec<(u32, u32)>,
}

impl SplittingPattern {
    pub fn from_pairs(mut primes: Vec<(u32, u32)>) -> Result<Self> {
        if primes.iter().any(|&(e, f)| e == 0 || f == 0) {
            return Err(Error::InvalidDatum("e and f must be positive".into()));
        }
        primes.sort_unstable_by_key(|&(e, f)| (f, e));
        Ok(SplittingPattern { primes })
    }

    /// Ramification indices only, every residue degree 1.
    pub fn from_exponents(e: &[u32]) -> Result<Self> {
        Self::from_pairs(e.iter().map(|&e| (e, 1)).collect())
    }

    pub fn primes(&self) -> &[(u32, u32)] {
        &self.primes
    }

    pub fn degree(&self) -> u64 {
        self.primes.iter().map(|&(e, f)| u64::from(e * f)).sum()
    }

    pub fn sum_e(&self) -> u64 {
        self.primes.iter().map(|&(e, _)| u64::from(e)).sum()
    }

    pub fn prod_e(&self) -> BigUint {
        self.primes.iter().map(|&(e, _)| BigUint::from(e)).product()
    }

    /// `(e, f, count)`, sorted.
    pub fn counts(&self) -> Vec<(u32, u32, usize)> {
        let mut m: BTreeMap<(u32, u32), usize> = BTreeMap::new();
        for &p in &self.primes {
            *m.entry(p).or_default() += 1;
        }
        m.into_iter().map(|((e, f), c)| (e, f, c)).collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("plain data")
    }
}

impl Serialize for SplittingPattern {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.counts())
    }
}

impl fmt::Display for SplittingPattern {
    /// `p1 p2 p3^2 p4^2[f=2]`: exponent `e`, residue degree noted when above 1.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, &(e, deg)) in self.primes.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "p{}", i + 1)?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
            if deg > 1 {
                write!(f, "[f={deg}]")?;
            }
        }
        Ok(())
    }
}

fn orbits_under(g: &EnumeratedGroup, action: &CosetAction, gens: &[usize]) -> Vec<Vec<usize>> {
    let n = action.degree();
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
            for &x in gens {
                let c = action.act(g, orbit[i], x);
                if !seen[c] {
                    seen[c] = true;
                    orbit.push(c);
                }
            }
            i += 1;
        }
        out.push(orbit);
    }
    out
}

pub fn splitting_pattern(g: &EnumeratedGroup, h: &SubgroupSet, datum: &LocalDatum) -> Result<SplittingPattern> {
    let action = CosetAction::new(g, h);
    let d_orbits = orbits_under(g, &action, datum.decomposition.generators());
    let i_orbits = orbits_under(g, &action, datum.inertia.generators());
    let mut i_size = vec![0u32; action.degree()];
    for o in &i_orbits {
        for &c in o {
            i_size[c] = o.len() as u32;
        }
    }
    let mut primes = Vec::with_capacity(d_orbits.len());
    for o in &d_orbits {
        let e = i_size[o[0]];
        if o.iter().any(|&c| i_size[c] != e) {
            return Err(Error::InvalidDatum(
                "inertia orbits inside one decomposition orbit differ in size".into(),
            ));
        }
        primes.push((e, o.len() as u32 / e));
    }
    let pattern = SplittingPattern::from_pairs(primes)?;
    assert_eq!(pattern.degree(), action.degree() as u64, "Σ e·f = [G:H]");
    Ok(pattern)
}

#[derive(Clone, Debug, Serialize)]
pub struct RamificationDiagnostics {
    pub sum_e: (u64, u64),
    #[serde(serialize_with = "ser_pair")]
    pub prod_e: (BigUint, BigUint),
    pub sum_e_equal: bool,
    pub prod_e_equal: bool,
    pub multiset_equal: bool,
}

fn ser_pair<S: Serializer>(p: &(BigUint, BigUint), s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq([p.0.to_string(), p.1.to_string()])
}

pub fn ramification_diagnostics(p1: &SplittingPattern, p2: &SplittingPattern) -> RamificationDiagnostics {
    let sum_e = (p1.sum_e(), p2.sum_e());
    let prod_e = (p1.prod_e(), p2.prod_e());
    RamificationDiagnostics {
        sum_e_equal: sum_e.0 == sum_e.1,
        prod_e_equal: prod_e.0 == prod_e.1,
        multiset_equal: p1 == p2,
        sum_e,
        prod_e,
    }
}

/// One `D`-conjugacy class of point stabilizers and how many orbits have it.
#[derive(Clone, Debug, Serialize)]
pub struct StabilizerClass {
    pub generators: Vec<String>,
    pub order: usize,
    pub orbit_size: usize,
    pub count1: usize,
    pub count2: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct DsetComparison {
    pub isomorphic: bool,
    pub fixed_points: (usize, usize),
    pub classes: Vec<StabilizerClass>,
    /// A stabilizer class occurring a different number of times.
    pub discrepancy: Option<StabilizerClass>,
}

/// Whether `[H1\G]` and `[H2\G]` are isomorphic as `D`-sets.
///
/// Transitive `D`-sets are isomorphic exactly when their point stabilizers
/// are conjugate in `D`, so both sides reduce to a multiset of stabilizer
/// classes.
pub fn dsets_isomorphic(
    g: &EnumeratedGroup,
    h1: &SubgroupSet,
    h2: &SubgroupSet,
    d: &SubgroupSet,
) -> DsetComparison {
    let stabilizers = |h: &SubgroupSet| -> Vec<SubgroupSet> {
        let action = CosetAction::new(g, h);
        orbits_under(g, &action, d.generators())
            .iter()
            .map(|o| {
                let c = o[0];
                let mut m = FixedBitSet::with_capacity(g.order());
                for x in d.members().filter(|&x| action.act(g, c, x) == c) {
                    m.insert(x);
                }
                g.subgroup_from_members(m)
            })
            .collect()
    };
    let s1 = stabilizers(h1);
    let s2 = stabilizers(h2);
    let mut reps: Vec<SubgroupSet> = Vec::new();
    let mut classes: Vec<StabilizerClass> = Vec::new();
    for (side, list) in [(0, &s1), (1, &s2)] {
        for s in list {
            let found = reps
                .iter()
                .position(|r| r.order() == s.order() && transporter_within(g, d, r, s).is_some());
            let k = found.unwrap_or_else(|| {
                reps.push(s.clone());
                classes.push(StabilizerClass {
                    generators: s.generator_strings(g),
                    order: s.order(),
                    orbit_size: d.order() / s.order(),
                    count1: 0,
                    count2: 0,
                });
                reps.len() - 1
            });
            if side == 0 {
                classes[k].count1 += 1;
            } else {
                classes[k].count2 += 1;
            }
        }
    }
    let discrepancy = classes
        .iter()
        .filter(|c| c.count1 != c.count2)
        .max_by_key(|c| c.order)
        .cloned();
    let fixed = |list: &[SubgroupSet]| list.iter().filter(|s| s.order() == d.order()).count();
    DsetComparison {
        isomorphic: discrepancy.is_none(),
        fixed_points: (fixed(&s1), fixed(&s2)),
        classes,
        discrepancy,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::GroupSpec;

    fn s4() -> EnumeratedGroup {
        EnumeratedGroup::from_spec(GroupSpec::from_cycles(4, &["(1 2 3 4)", "(1 2)"]).unwrap()).unwrap()
    }

    #[test]
    fn fully_split_when_datum_trivial() {
        let g = s4();
        let h = g.subgroup_from_spec(&GroupSpec::from_cycles(4, &["(1 2)"]).unwrap()).unwrap();
        let datum = LocalDatum::new(&g, g.trivial(), g.trivial()).unwrap();
        let p = splitting_pattern(&g, &h, &datum).unwrap();
        assert_eq!(p.counts(), vec![(1, 1, 12)]);
        assert_eq!(p.to_json(), "[[1,1,12]]");
    }

    #[test]
    fn datum_validation() {
        let g = s4();
        let d = g.whole();
        let a4 = g.subgroup_from_spec(&GroupSpec::from_cycles(4, &["(1 2 3)", "(2 3 4)"]).unwrap()).unwrap();
        let c3 = g.subgroup_from_spec(&GroupSpec::from_cycles(4, &["(1 2 3)"]).unwrap()).unwrap();
        // S4/A4 is cyclic of order 2
        assert!(LocalDatum::new(&g, d.clone(), a4.clone()).is_ok());
        assert!(matches!(LocalDatum::new(&g, d.clone(), c3.clone()), Err(Error::InvalidDatum(_))));
        // S4/1 is not cyclic
        assert!(matches!(LocalDatum::new(&g, d.clone(), g.trivial()), Err(Error::InvalidDatum(_))));
        assert!(matches!(LocalDatum::new(&g, c3, a4), Err(Error::InvalidDatum(_))));
        assert!(!LocalDatum::exploratory(d, g.trivial()).is_arithmetic());
    }

    #[test]
    fn display_and_diagnostics() {
        let p = SplittingPattern::from_pairs(vec![(2, 2), (1, 1), (4, 1), (1, 1)]).unwrap();
        assert_eq!(p.to_string(), "p1 p2 p3^4 p4^2[f=2]");
        let a = SplittingPattern::from_exponents(&[1, 1, 2, 4]).unwrap();
        let b = SplittingPattern::from_exponents(&[2, 2, 2, 2]).unwrap();
        let r = ramification_diagnostics(&a, &b);
        assert!(r.sum_e_equal && !r.prod_e_equal && !r.multiset_equal);
        assert_eq!(r.prod_e, (BigUint::from(8u32), BigUint::from(16u32)));
        let same = ramification_diagnostics(&a, &a);
        assert!(same.sum_e_equal && same.prod_e_equal && same.multiset_equal);
    }

    #[test]
    fn cyclic_d_on_equivalent_pair() {
        // conjugate subgroups give isomorphic G-sets, hence D-sets
        let g = s4();
        let a = g.subgroup_from_spec(&GroupSpec::from_cycles(4, &["(1 2)"]).unwrap()).unwrap();
        let b = g.subgroup_from_spec(&GroupSpec::from_cycles(4, &["(3 4)"]).unwrap()).unwrap();
        for x in 0..g.order() {
            let d = g.subgroup(&[x]);
            assert!(dsets_isomorphic(&g, &a, &b, &d).isomorphic);
        }
        let c = g.subgroup_from_spec(&GroupSpec::from_cycles(4, &["(1 2)(3 4)"]).unwrap()).unwrap();
        let d = g.subgroup_from_spec(&GroupSpec::from_cycles(4, &["(1 2)"]).unwrap()).unwrap();
        let cmp = dsets_isomorphic(&g, &a, &c, &d);
        assert!(!cmp.isomorphic);
        // (1 2) fixes |C((1 2))| / 2 = 2 cosets of <(1 2)>
        assert_eq!(cmp.fixed_points, (2, 0));
    }
}
