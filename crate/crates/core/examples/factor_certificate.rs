//! Checks a claimed factorization of the intertwiner determinant and proves
//! that no integer point makes it a unit.

use gassmann::homdet::{
    double_cosets, find_variable_mappings, unimodularity_certificate, verify_factor_product,
    FactorList, ParametricHomMatrix,
};
use gassmann::{fixtures, EnumeratedGroup};

fn main() -> gassmann::Result<()> {
    let g = EnumeratedGroup::from_spec(fixtures::group("g384")?)?;
    let h1 = g.subgroup_from_spec(&fixtures::group("g384_h1")?)?;
    let h2 = g.subgroup_from_spec(&fixtures::group("g384_h2")?)?;
    let pattern = double_cosets(&g, &h1, &h2)?.pattern;
    let factors = FactorList::parse(fixtures::get("g384_factors.txt")?.text)?;
    for f in &factors.factors {
        println!("  {f}");
    }

    let check = verify_factor_product(&pattern, &factors, 20, 7)?;
    println!("product holds: {} (orientation {:+})", check.holds, check.orientation);

    // against the printed matrix the variables come in another order
    let printed = ParametricHomMatrix::parse(fixtures::get("g384_printed.pat")?.text)?;
    for m in find_variable_mappings(&printed, &factors, 10, 0)? {
        let one_based: Vec<usize> = m.mapping.iter().map(|v| v + 1).collect();
        println!("printed labelling matches via {one_based:?}, orientation {:+}", m.orientation);
    }

    let cert = unimodularity_certificate(&factors, Some(&pattern))?;
    println!("{}", serde_json::to_string(&cert.status)?);

    // factors alone, no matrix: 5 linear forms give 32 sign systems
    let g5760 = FactorList::parse(fixtures::get("g5760_factors.txt")?.text)?;
    let cert = unimodularity_certificate(&g5760, None)?;
    let rational = cert.systems.iter().filter(|s| s.rationally_solvable).count();
    println!(
        "index 96: {} systems, {rational} rationally solvable, nonexistent: {}",
        cert.systems.len(),
        cert.is_nonexistent()
    );
    Ok(())
}
