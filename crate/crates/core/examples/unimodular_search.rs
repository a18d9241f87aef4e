//! Brute-force search for det M = ±1 over a box of integer points.
//!
//! cargo run --release --example unimodular_search -- [bound]

use std::time::Instant;

use gassmann::homdet::{unimodular_search, ParametricHomMatrix};
use gassmann::fixtures;

fn main() -> gassmann::Result<()> {
    let bound: i64 = std::env::args().nth(1).and_then(|b| b.parse().ok()).unwrap_or(2);
    let pattern = ParametricHomMatrix::parse(fixtures::get("g384_printed.pat")?.text)?;
    let start = Instant::now();
    let out = unimodular_search(&pattern, bound)?;
    match out.assignment {
        Some(x) => println!("unimodular at {x:?}"),
        None => println!("none with |x_i| <= {bound}"),
    }
    println!(
        "{} points, {} exact determinants, {:.2?}",
        out.examined,
        out.exact_evaluations,
        start.elapsed()
    );
    Ok(())
}
