//! The colon-ideal criteria: embedded components, flatness over the germ
//! of the parameter line, and internal flatness with a test ideal.

use conelab::flatness::{has_no_embedded_components, is_flat_over_germ, is_internally_flat};
use conelab::ideal::Ideal;
use conelab::ideal_ops::{build_test_ideal, TestIdeal};
use conelab::{MonomialOrder, PolyRing};

fn main() -> conelab::Result<()> {
    let ring = PolyRing::new(
        &["x", "y", "t"],
        Some("t"),
        &[] as &[&str],
        MonomialOrder::Grevlex,
    )?;

    // A line with an embedded point at the origin.
    let i = Ideal::parse(&ring, "x^2, x*y")?;
    let j = TestIdeal::validate(&i, &Ideal::parse(&ring, "x^2")?)?;
    let r = has_no_embedded_components(&i, &j)?;
    println!(
        "<x^2, xy>: no embedded components = {}, witness {:?}",
        r.verdict, r.witness
    );

    // A vertical line over t = 0 breaks flatness but not internal flatness.
    let i = Ideal::parse(&ring, "t*x")?;
    let r = is_flat_over_germ(&i)?;
    println!("<tx>: flat = {}, witness {:?}", r.verdict, r.witness);
    let j = build_test_ideal(&i, 0)?;
    let r = is_internally_flat(&i, &j, true)?;
    println!(
        "<tx>: internally flat = {} (saturated: {:?})",
        r.verdict, r.saturated_verdict
    );

    let i = Ideal::parse(&ring, "x - t")?;
    println!("<x - t>: flat = {}", is_flat_over_germ(&i)?.verdict);
    Ok(())
}
