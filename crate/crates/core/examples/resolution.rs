//! Minimal free resolution, Betti table, projective dimension and the
//! Cohen-Macaulay test for the tangent star cone of three lines.

use conelab::ideal::Ideal;
use conelab::resolution::{free_resolution, is_cohen_macaulay};
use conelab::PolyRing;

fn main() -> conelab::Result<()> {
    let ring = PolyRing::plain(&["x", "y", "z", "a", "b", "c"])?;
    let i = Ideal::parse(
        &ring,
        "x*y, z*(z - x), z*a + x*c - 2*z*c, y*a + x*b, \
         c^2*(2*x*b - z*b + y*c), b*c^2*(a^2 - 2*a*c + c^2)",
    )?;
    let res = free_resolution(&i)?;
    println!("{res}");
    for ((k, d), n) in res.betti_table() {
        println!("  beta_{k},{d} = {n}");
    }
    let cm = is_cohen_macaulay(&i)?;
    println!(
        "pd {} height {} Cohen-Macaulay {:?}",
        cm.pd, cm.height, cm.verdict
    );
    Ok(())
}
