//! Identity order, non-invertible subgroup and ideal checks on every
//! construction at p = 3 and p = 5.

use nearforge::audit::structural_audit;
use nearforge::families::{build, Carrier, FamilySpec};

fn main() -> nearforge::Result<()> {
    for p in [3, 5] {
        for carrier in [Carrier::G1, Carrier::G2, Carrier::G3] {
            for spec in FamilySpec::all_for(carrier, p) {
                let a = structural_audit(&build(spec, p)?)?;
                let ideals: Vec<String> = a
                    .ideals
                    .iter()
                    .map(|i| format!("{} ideal: {}", i.subgroup, i.is_ideal))
                    .collect();
                println!("p={p} {spec:<20} violations: {:?} {}", a.violations, ideals.join(", "));
            }
        }
    }
    Ok(())
}
