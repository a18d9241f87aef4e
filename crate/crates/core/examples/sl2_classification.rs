//! Subgroups of SL2(F_p) of order prime to p, counted up to conjugacy by
//! type and compared with the predicted counts.

use gassmann::linear::{build_linear_group, classify_prime_to_p_subgroups, LinearKind};

fn main() -> gassmann::Result<()> {
    let primes: Vec<u64> = std::env::args().skip(1).filter_map(|p| p.parse().ok()).collect();
    for p in if primes.is_empty() { vec![5, 7, 11] } else { primes } {
        let sl2 = build_linear_group(LinearKind::SL2, p)?;
        let c = classify_prime_to_p_subgroups(&sl2, 13)?;
        println!("p = {p}, agrees: {}", c.agrees());
        print!("{}", c.to_text());
    }
    Ok(())
}
