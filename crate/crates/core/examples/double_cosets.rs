//! Double cosets of the order 384 pair and exact determinants of the
//! intertwiner at a few integer points.

use gassmann::homdet::{default_assignments, det_at, double_cosets, sample_gcd, ParametricHomMatrix};
use gassmann::{fixtures, EnumeratedGroup};

fn main() -> gassmann::Result<()> {
    let g = EnumeratedGroup::from_spec(fixtures::group("g384")?)?;
    let h1 = g.subgroup_from_spec(&fixtures::group("g384_h1")?)?;
    let h2 = g.subgroup_from_spec(&fixtures::group("g384_h2")?)?;
    let dc = double_cosets(&g, &h1, &h2)?;
    let sizes: Vec<usize> = dc.cells.iter().map(|c| c.size).collect();
    println!("{} double cosets, sizes {sizes:?}", dc.cells.len());

    // gcd over unit vectors and a handful of random points
    let samples = default_assignments(dc.pattern.nvars(), 8, 50, 1);
    println!("gcd of sampled determinants: {}", sample_gcd(&dc.pattern, &samples));

    // the printed labelling of the same matrix
    let printed = ParametricHomMatrix::parse(fixtures::get("g384_printed.pat")?.text)?;
    for x in [[1, 1, -1, 0, 0, 0, 0, 0], [0, 0, 0, 0, 1, 0, 0, 0]] {
        println!("det at {x:?} = {}", det_at(&printed, &x));
    }
    Ok(())
}
