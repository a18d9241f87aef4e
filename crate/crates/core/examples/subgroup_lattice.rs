//! Subgroup classes of a small group, by index, with p-cyclic statistics.

use gassmann::equivalence::subgroup_class_representatives;
use gassmann::group::normal_core;
use gassmann::subgroups::{is_p_cyclic_any_prime, is_solvable, p_statistics, SubgroupClass};
use gassmann::{EnumeratedGroup, GroupSpec};

fn main() -> gassmann::Result<()> {
    let s5 = EnumeratedGroup::from_spec(GroupSpec::from_cycles(5, &["(1 2 3 4 5)", "(1 2)"])?)?;
    let reps = subgroup_class_representatives(&s5, 1000)?;
    println!("S5: {} classes of subgroups", reps.len());
    for s in &reps {
        println!(
            "  order {:>3}  solvable {:<5}  p-cyclic {:<5}  faithful {:<5}  {}",
            s.order(),
            is_solvable(&s5, s),
            is_p_cyclic_any_prime(&s5, s),
            normal_core(&s5, s).is_trivial(),
            s.generator_strings(&s5).join(" ")
        );
    }

    let stats = p_statistics(&s5, &s5.whole(), &SubgroupClass::PCyclicAnyPrime)?;
    let total: usize = stats.iter().map(|c| c.count).sum();
    println!("{total} p-cyclic subgroups in {} isomorphism classes", stats.len());
    for c in stats {
        println!("  {:>3} of order {}", c.count, c.fingerprint.order);
    }
    Ok(())
}
