//! Exhaustive check of the commutator and power identities in the
//! Heisenberg group for a few primes.
//!
//!     cargo run --example verify_identities -- 3 5 7 11 13

use nearforge::group::verify_word_identities;

fn main() -> nearforge::Result<()> {
    let mut primes: Vec<u32> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    if primes.is_empty() {
        primes = vec![3, 5, 7, 11, 13];
    }
    for p in primes {
        let r = verify_word_identities(p)?;
        println!("p = {p}: {} checks, passed = {}", r.checks, r.passed);
        if let Some(c) = r.counterexample {
            println!("  {} fails at k={} l={} r={}", c.identity, c.k, c.l, c.r);
        }
    }
    Ok(())
}
