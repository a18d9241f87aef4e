//! Enumerate a permutation group from a group file and look at its classes.
//!
//! cargo run --example enumerate_group -- [path.grp]

use gassmann::group::{coset_action, normal_core};
use gassmann::{fixtures, EnumeratedGroup, GroupSpec};

fn main() -> gassmann::Result<()> {
    let spec = match std::env::args().nth(1) {
        Some(path) => GroupSpec::parse(&std::fs::read_to_string(path)?)?,
        None => fixtures::group("g1440")?,
    };
    print!("{}", spec.to_text());
    let g = EnumeratedGroup::from_spec(spec)?;
    let classes = g.conjugacy_classes();
    println!("order {}, {} conjugacy classes", g.order(), classes.len());
    for (&rep, &size) in classes.representatives().iter().zip(classes.sizes()) {
        let x = g.element(rep);
        println!("  {size:>5} x order {:<3} {x}", x.order());
    }

    // the first generator's cyclic subgroup and its coset action
    let h = g.subgroup(&g.generators()[..1]);
    let action = coset_action(&g, &h);
    println!(
        "<{}> has order {}, index {}, core of order {}",
        g.element(g.generators()[0]),
        h.order(),
        action.degree(),
        normal_core(&g, &h).order()
    );
    Ok(())
}
