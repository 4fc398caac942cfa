pub mod error;
pub mod flatness;
pub mod groebner;
pub mod ideal;
pub mod ideal_ops;
pub mod normal_cone;
pub mod poly;
pub mod resolution;
pub mod script;
pub mod segre;

pub use error::{Error, Result};
pub use poly::{Monomial, MonomialOrder, PolyRing, Polynomial};
