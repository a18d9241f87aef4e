//! An icosahedral subgroup of SL2(F_p) and its image under the outer
//! automorphism: not conjugate, yet solvably equivalent.
//!
//! cargo run --release --example sl2_family -- [p]

use gassmann::linear::{solvable_family_conditions, verify_solvable_family, LinearKind};

fn main() -> gassmann::Result<()> {
    let p: u64 = std::env::args().nth(1).and_then(|p| p.parse().ok()).unwrap_or(29);
    for (t, n) in solvable_family_conditions(p) {
        println!("{t}: {n} classes predicted");
    }
    let r = verify_solvable_family(p, 0)?;
    println!("|SL2| = {}, |PSL2| = {}", LinearKind::SL2.order(p), LinearKind::PSL2.order(p));
    println!("|H1| = {}, |H1 ∩ H2| = {}", r.h1_order, r.intersection_order);
    println!("classes moved: {}", r.moved_classes);
    println!("solvably equivalent: SL2 {}, PSL2 {}", r.sl2.verdict, r.psl2.verdict);
    println!("class sizes of the image in PSL2: {:?}", r.psl2_class_sizes);
    Ok(())
}
