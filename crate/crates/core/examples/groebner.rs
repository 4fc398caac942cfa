//! Reduced Gröbner bases of the twisted cubic under two orders, and
//! normal forms.

use conelab::groebner::{GbOptions, GroebnerBasis};
use conelab::script::parse_poly_list;
use conelab::{MonomialOrder, PolyRing};

fn main() -> conelab::Result<()> {
    for order in [MonomialOrder::Lex, MonomialOrder::Grevlex] {
        let ring = PolyRing::new(&["x", "y", "z"], None, &[] as &[&str], order.clone())?;
        let gens = parse_poly_list(&ring, "x^2 - y, x*y - z, x*z - y^2")?;
        let gb = GroebnerBasis::compute(&ring, &gens, &GbOptions::default())?;
        println!("{order:?}: {} elements", gb.len());
        for g in gb.elements() {
            println!("  {g}");
        }
        let f = conelab::script::parse_poly(&ring, "x^5 + y*z")?;
        println!("  normal form of x^5 + y*z: {}", gb.normal_form(&f)?);
        println!("  stats: {:?}", gb.stats());
    }
    Ok(())
}
