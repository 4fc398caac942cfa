//! Intersections, colon ideals, saturation, elimination and dimension.

use conelab::ideal::Ideal;
use conelab::ideal_ops::{colon, colon_poly, dimension, eliminate, height, intersect, saturate};
use conelab::script::parse_poly;
use conelab::PolyRing;

fn main() -> conelab::Result<()> {
    let ring = PolyRing::plain(&["x", "y", "z"])?;
    let i = Ideal::parse(&ring, "x^2, x*y")?;
    let j = Ideal::parse(&ring, "y^3, x*z")?;
    let x = parse_poly(&ring, "x")?;
    println!("I = <x^2, xy>, J = <y^3, xz>");
    println!("I ∩ J   = {:?}", intersect(&i, &j)?.reduced()?.generators());
    println!("I : J   = {:?}", colon(&i, &j)?.reduced()?.generators());
    println!(
        "I : x   = {:?}",
        colon_poly(&i, &x)?.reduced()?.generators()
    );
    println!("I : x^∞ = {:?}", saturate(&i, &x)?.reduced()?.generators());
    println!("dim R/I = {}, height I = {}", dimension(&i)?, height(&i)?);

    // Implicitization of the twisted cubic (s, s^2, s^3).
    let r = PolyRing::plain(&["s", "x", "y", "z"])?;
    let param = Ideal::parse(&r, "x - s, y - s^2, z - s^3")?;
    let cubic = eliminate(&param, &[0])?;
    println!("twisted cubic = {:?}", cubic.reduced()?.generators());
    Ok(())
}
