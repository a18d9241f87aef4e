//! Splitting of a prime in the two fixed fields of the order 1440 pair,
//! with D = H1 and I = H1 ∩ H2.

use gassmann::arith::{dsets_isomorphic, ramification_diagnostics, splitting_pattern, LocalDatum};
use gassmann::{fixtures, EnumeratedGroup};

fn main() -> gassmann::Result<()> {
    let g = EnumeratedGroup::from_spec(fixtures::group("g1440")?)?;
    let h1 = g.subgroup_from_spec(&fixtures::group("g1440_h1")?)?;
    let h2 = g.subgroup_from_spec(&fixtures::group("g1440_h2")?)?;
    let datum = LocalDatum::new(&g, h1.clone(), g.intersection(&h1, &h2))?;

    let p1 = splitting_pattern(&g, &h1, &datum)?;
    let p2 = splitting_pattern(&g, &h2, &datum)?;
    println!("K1: {p1}\n    (e, f, count) {}", p1.to_json());
    println!("K2: {p2}\n    (e, f, count) {}", p2.to_json());

    let diag = ramification_diagnostics(&p1, &p2);
    println!("sum of e: {} vs {}", diag.sum_e.0, diag.sum_e.1);
    println!("product of e: {} vs {}", diag.prod_e.0, diag.prod_e.1);

    let cmp = dsets_isomorphic(&g, &h1, &h2, &h1);
    println!("locally isomorphic: {} (fixed points {:?})", cmp.isomorphic, cmp.fixed_points);
    Ok(())
}
