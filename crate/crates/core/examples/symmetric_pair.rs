//! Two nonisomorphic groups of order 48 in degree 21, compared inside S21.

use gassmann::equivalence::{equivalent, Relation, Triple};
use gassmann::subgroups::{class_subgroups, find_isomorphism, p_statistics, SubgroupClass};
use gassmann::{fixtures, EnumeratedGroup};

fn main() -> gassmann::Result<()> {
    let h1 = EnumeratedGroup::from_spec(fixtures::group("s21_h1")?)?;
    let h2 = EnumeratedGroup::from_spec(fixtures::group("s21_h2")?)?;
    let t = Triple::InSymmetric { h1: &h1, h2: &h2 };

    for (name, h) in [("H1", &h1), ("H2", &h2)] {
        let subs = class_subgroups(h, &h.whole(), &SubgroupClass::PCyclicAnyPrime)?;
        let iso = p_statistics(h, &h.whole(), &SubgroupClass::PCyclicAnyPrime)?;
        let nontrivial = iso.iter().filter(|c| c.fingerprint.order > 1).count();
        println!("{name}: order {}, {} p-cyclic subgroups, {nontrivial} nontrivial isomorphism types", h.order(), subs.len());
    }

    let rep = equivalent(&t, Relation::LocalIntegral)?;
    println!(
        "class-preserving bijection: {} ({} S21-classes)",
        rep.verdict, rep.ambient_classes
    );
    let iso = find_isomorphism(&h1, &h1.whole(), &h2, &h2.whole());
    println!("H1 isomorphic to H2: {}", iso.is_some());
    Ok(())
}
