//! A census interrupted by a time budget and resumed from its checkpoint.

use std::time::Duration;

use nearforge::census::{census, CensusOptions};
use nearforge::{Error, GroupDescriptor};

fn main() -> nearforge::Result<()> {
    let dir = std::env::temp_dir().join("nearforge-resumable-census");
    std::fs::create_dir_all(&dir)?;
    let checkpoint = dir.join("heisenberg-3.json");
    let _ = std::fs::remove_file(&checkpoint);

    let desc = GroupDescriptor::heisenberg(3)?;
    let mut opts = CensusOptions {
        checkpoint: Some(checkpoint.clone()),
        time_budget: Some(Duration::ZERO),
        ..Default::default()
    };
    match census(desc, &opts) {
        Err(Error::Timeout { completed, total, .. }) => {
            println!("stopped after {completed} of {total} root branches")
        }
        other => println!("finished early: {:?}", other.map(|r| r.counts)),
    }
    opts.time_budget = None;
    let r = census(desc, &opts)?;
    println!("resumed: {:?}", r.counts);
    Ok(())
}
