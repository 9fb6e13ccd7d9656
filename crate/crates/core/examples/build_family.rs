//! Builds one explicit construction, evaluates a product and prints its
//! property report.
//!
//!     cargo run --example build_family -- g1 constant 5
//!     cargo run --example build_family -- g3 twisted 3

use nearforge::families::{build, Carrier, FamilySpec, Variant};
use nearforge::properties::PropertyReport;
use nearforge::Element;

fn main() -> nearforge::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let carrier: Carrier = args.first().map_or("g1", String::as_str).parse()?;
    let variant: Variant = args.get(1).map_or("power:i=1", String::as_str).parse()?;
    let p: u32 = args.get(2).and_then(|s| s.parse().ok()).unwrap_or(3);

    let spec = FamilySpec::new(carrier, variant);
    let r = build(spec, p)?;
    let basis = r.descriptor().basis();
    let x = basis[0];
    let y = basis[1];
    println!("{spec} on {}", r.descriptor());
    println!("a * b = {}", r.mul_elements(&x, &y)?);
    println!("b * b = {}", r.mul_elements(&y, &y)?);
    let z = Element::new(&vec![1; r.descriptor().arity()]);
    println!("{z} * {z} = {}", r.mul_elements(&z, &z)?);

    let report = PropertyReport::compute(&r);
    println!("{}", report.summary());
    println!("units: {}, non-invertible: {}", report.units.len(), report.noninvertible.len());
    Ok(())
}
