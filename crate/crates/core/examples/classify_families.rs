//! Counts isomorphism classes among the p + 1 constructions on the
//! Heisenberg group and on C_{p^2} x C_p.
//!
//!     cargo run --release --example classify_families -- 7

use nearforge::families::{family_count_lower_bound, Carrier};

fn main() -> nearforge::Result<()> {
    let p: u32 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(5);
    for carrier in [Carrier::G1, Carrier::G3] {
        let r = family_count_lower_bound(carrier, p)?;
        println!(
            "{} p={p}: {} constructions, {} classes (need >= {}), all local: {}",
            carrier.name(),
            r.members.len(),
            r.classes,
            r.claim,
            r.all_local
        );
    }
    Ok(())
}
