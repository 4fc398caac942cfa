//! Top Segre classes of hypersurface tangent star cones and the
//! coalescence test for families.

use conelab::script::parse_poly;
use conelab::segre::{coalescence_check, s0_specializes, s0_tangent_star};
use conelab::{MonomialOrder, PolyRing};

fn main() -> conelab::Result<()> {
    let ring = PolyRing::new(
        &["x", "y", "t"],
        Some("t"),
        &[] as &[&str],
        MonomialOrder::Grevlex,
    )?;
    println!(
        "s0(x^2 y) = {}",
        s0_tangent_star(&parse_poly(&ring, "x^2*y")?)?
    );
    for text in ["x*y - t", "x^2 - t^2", "x*(x - t)", "x^2*(y - t*x)^3"] {
        let f = parse_poly(&ring, text)?;
        let r = coalescence_check(&f)?;
        let s = s0_specializes(&f)?;
        println!(
            "{text}: do not coalesce = {} {:?} certificate {:?}; family {} vs fiber {}",
            r.verdict,
            r.failing_criterion,
            r.certificate.map(|c| c.to_string()),
            s.family,
            s.fiber
        );
    }
    Ok(())
}
