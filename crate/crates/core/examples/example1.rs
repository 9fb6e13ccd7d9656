//! The six displayed multiplications on the Heisenberg group of order 125,
//! read as printed and, where the print is suspect, under a corrected
//! reading.

use nearforge::families::example1_suite;

fn main() -> nearforge::Result<()> {
    let (report, _) = example1_suite(5)?;
    for item in &report.items {
        println!(
            "({}) {:<9?} nearring={:<5} local={:<5} zero-sym={:<5} matches={:?}",
            item.item,
            item.reading,
            item.left_distributive && item.associative,
            item.local,
            item.zero_symmetric,
            item.matches
        );
    }
    Ok(())
}
