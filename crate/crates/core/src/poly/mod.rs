//! Exact multivariate polynomials over the rationals.

mod gcd;
mod monomial;
mod order;
mod polynomial;
mod ring;

pub use gcd::{
    content_in, gcd, primitive_part_in, proportional, pseudo_remainder, repeated_part,
    squarefree_decomposition,
};
pub use monomial::{Monomial, MAX_VARS};
pub use order::{BlockKind, MonomialOrder};
pub(crate) use polynomial::rat;
pub use polynomial::Polynomial;
pub use ring::PolyRing;
