//! Rational, p-local, locally integral and solvable equivalence for the
//! order 1440 pair: equivalent locally, but not solvably.

use gassmann::equivalence::{equivalent, mark, Relation, Triple};
use gassmann::group::transporter;
use gassmann::{fixtures, EnumeratedGroup};

fn main() -> gassmann::Result<()> {
    let g = EnumeratedGroup::from_spec(fixtures::group("g1440")?)?;
    let h1 = g.subgroup_from_spec(&fixtures::group("g1440_h1")?)?;
    let h2 = g.subgroup_from_spec(&fixtures::group("g1440_h2")?)?;
    println!("|G| = {}, |H1| = {}, |H2| = {}", g.order(), h1.order(), h2.order());
    println!("conjugate: {}", transporter(&g, &h1, &h2).is_some());

    let t = Triple::InGroup { g: &g, h1: &h1, h2: &h2 };
    for r in [
        Relation::Rational,
        Relation::PLocal(2),
        Relation::PLocal(3),
        Relation::LocalIntegral,
        Relation::Solvable,
    ] {
        let rep = equivalent(&t, r)?;
        println!("{r:<15} {}", rep.verdict);
        if let Some(d) = rep.discrepancy {
            println!("  K = <{}>: marks {:?} vs {:?}", d.subgroup_gens.join(", "), d.chi1, d.chi2);
        }
    }
    println!(
        "chi_H1(H1) = {}, chi_H2(H1) = {}",
        mark(&g, &h1, &h1),
        mark(&g, &h2, &h1)
    );
    Ok(())
}
