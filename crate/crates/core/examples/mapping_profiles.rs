//! Reads the coordinate profile of `x b` off each construction and checks
//! the recursions it must satisfy.

use nearforge::families::{build, Carrier, FamilySpec};
use nearforge::profile::audit;

fn main() -> nearforge::Result<()> {
    let p = 5;
    for carrier in [Carrier::G1, Carrier::G3] {
        for spec in FamilySpec::all_for(carrier, p) {
            let a = audit(&build(spec, p)?)?;
            let failed: Vec<&str> = a
                .checks
                .iter()
                .filter(|c| c.holds == Some(false))
                .map(|c| c.name)
                .collect();
            println!("{spec:<20} {} constraints, failed: {failed:?}", a.checks.len());
        }
    }
    Ok(())
}
