//! Census of nearrings with identity on the five groups of order 8.

use nearforge::census::{census, CensusOptions};
use nearforge::{GroupDescriptor, GroupKind};

fn main() -> nearforge::Result<()> {
    for kind in [
        GroupKind::CyclicP3,
        GroupKind::MetacyclicAbelian,
        GroupKind::ElemAbelian,
        GroupKind::Dihedral8,
        GroupKind::Quaternion8,
    ] {
        let r = census(GroupDescriptor::new(kind, 2)?, &CensusOptions::default())?;
        println!(
            "{:<22} with identity: {:>3}  local: {:>2}  local zero-symmetric: {:>2}",
            r.group.to_string(),
            r.counts.with_identity,
            r.counts.local,
            r.counts.local_zero_symmetric
        );
    }
    Ok(())
}
