//! Writes a construction as a JSON table file, reads it back, and exports
//! the Cayley table as CSV.

use nearforge::families::{build, Carrier, FamilySpec, Variant};
use nearforge::io;

fn main() -> nearforge::Result<()> {
    let r = build(FamilySpec::new(Carrier::G2, Variant::ZeroSym), 3)?;
    let json = io::to_json(&r);
    let back = io::from_json(&json)?;
    println!("json: {} bytes, round trip equal: {}", json.len(), back.agrees_with(&r));
    let csv = io::to_csv(&r)?;
    for line in csv.lines().take(3) {
        println!("{}...", &line[..line.len().min(72)]);
    }
    Ok(())
}
