//! Tangent star cones: the three coordinate-like lines through the origin,
//! their relative version over a parameter, and a hypersurface cone from
//! its polarization equations.

use conelab::ideal::Ideal;
use conelab::normal_cone::{cone_fiber_compare, hypersurface_cone, tangent_star_ideal};
use conelab::script::parse_poly;
use conelab::{MonomialOrder, PolyRing};

fn main() -> conelab::Result<()> {
    let ring = PolyRing::new(
        &["x", "y", "z"],
        None,
        &[] as &[&str],
        MonomialOrder::Grevlex,
    )?;
    let x = Ideal::parse(&ring, "x*y, z*(z - x)")?;
    let cone = tangent_star_ideal(&x)?;
    let basis = cone.ideal.reduced()?;
    println!(
        "TS(xy = z(z - x) = 0) in {:?}, reduced basis of {} elements:",
        cone.ring.names(),
        basis.generators().len()
    );
    for g in basis.generators() {
        println!("  {g}");
    }

    let ring = PolyRing::new(
        &["x", "y", "z", "t"],
        Some("t"),
        &[] as &[&str],
        MonomialOrder::Grevlex,
    )?;
    let x = Ideal::parse(&ring, "x*y, z*(z - t*x)")?;
    let cone = tangent_star_ideal(&x)?;
    let cmp = cone_fiber_compare(&cone, &x)?;
    println!(
        "relative family: fiber comparison {:?}, certificate {:?}",
        cmp.outcome,
        cmp.certificate.map(|c| c.to_string())
    );

    let ring = PolyRing::new(
        &["x", "y", "t"],
        Some("t"),
        &[] as &[&str],
        MonomialOrder::Grevlex,
    )?;
    let f = parse_poly(&ring, "x^2*y")?;
    let cone = hypersurface_cone(&f)?;
    println!(
        "TS(x^2 y = 0) from polarization: {:?}",
        cone.ideal.generators()
    );
    Ok(())
}
