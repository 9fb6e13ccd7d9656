//! Census of local nearrings on the groups of order 27, with the structural
//! audit of every class found.
//!
//!     cargo run --release --example census_order27

use nearforge::census::{census, census_audit, CensusFilter, CensusOptions};
use nearforge::{GroupDescriptor, GroupKind};

fn main() -> nearforge::Result<()> {
    let opts = CensusOptions {
        filter: CensusFilter::Local,
        ..Default::default()
    };
    for kind in GroupKind::ALL {
        let Ok(desc) = GroupDescriptor::new(kind, 3) else {
            continue;
        };
        let r = census(desc, &opts)?;
        let audit = census_audit(&r)?;
        println!(
            "{:<22} local: {:>2} (zero-symmetric {:>2}, of {} with identity)  audit violations: {}",
            desc.to_string(),
            r.counts.local,
            r.counts.local_zero_symmetric,
            r.counts.with_identity,
            audit.violations.len()
        );
    }
    Ok(())
}
