use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use super::monomial::{Monomial, MAX_VARS};

/// Order used inside one block of a block order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BlockKind {
    Lex,
    Grevlex,
}

/// A monomial order over the ring's variables, indexed by position.
///
/// `Block` compares the variables in `first` (a bitmask) before the rest,
/// so every monomial involving a `first` variable is larger than every
/// monomial without one. This is the elimination order used for
/// intersection, saturation and projection.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MonomialOrder {
    Lex,
    #[default]
    Grevlex,
    Block {
        first: u32,
        first_kind: BlockKind,
        rest_kind: BlockKind,
    },
}

const ALL: u32 = u32::MAX;

fn cmp_lex(a: &Monomial, b: &Monomial, mask: u32) -> Ordering {
    for i in 0..MAX_VARS {
        if mask & (1 << i) == 0 {
            continue;
        }
        match a.exp(i).cmp(&b.exp(i)) {
            Ordering::Equal => {}
            o => return o,
        }
    }
    Ordering::Equal
}

fn cmp_grevlex(a: &Monomial, b: &Monomial, mask: u32) -> Ordering {
    let (da, db) = if mask == ALL {
        (a.degree(), b.degree())
    } else {
        (a.degree_in(mask), b.degree_in(mask))
    };
    match da.cmp(&db) {
        Ordering::Equal => {}
        o => return o,
    }
    for i in (0..MAX_VARS).rev() {
        if mask & (1 << i) == 0 {
            continue;
        }
        match a.exp(i).cmp(&b.exp(i)) {
            Ordering::Equal => {}
            o => return o.reverse(),
        }
    }
    Ordering::Equal
}

fn cmp_kind(kind: BlockKind, a: &Monomial, b: &Monomial, mask: u32) -> Ordering {
    match kind {
        BlockKind::Lex => cmp_lex(a, b, mask),
        BlockKind::Grevlex => cmp_grevlex(a, b, mask),
    }
}

impl MonomialOrder {
    /// Elimination order: the variables in `vars` form the first block.
    pub fn elimination(vars: &[usize]) -> Self {
        let mut first = 0u32;
        for &v in vars {
            first |= 1 << v;
        }
        MonomialOrder::Block {
            first,
            first_kind: BlockKind::Grevlex,
            rest_kind: BlockKind::Grevlex,
        }
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            MonomialOrder::Lex => cmp_lex(a, b, ALL),
            MonomialOrder::Grevlex => cmp_grevlex(a, b, ALL),
            MonomialOrder::Block {
                first,
                first_kind,
                rest_kind,
            } => match cmp_kind(*first_kind, a, b, *first) {
                Ordering::Equal => cmp_kind(*rest_kind, a, b, !*first),
                o => o,
            },
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            MonomialOrder::Lex => "lex",
            MonomialOrder::Grevlex => "grevlex",
            MonomialOrder::Block { .. } => "block",
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u16]) -> Monomial {
        Monomial::from_exponents(e)
    }

    #[test]
    fn lex_and_grevlex() {
        // x > y > z
        assert_eq!(
            MonomialOrder::Lex.cmp(&m(&[1, 0, 0]), &m(&[0, 5, 0])),
            Ordering::Greater
        );
        assert_eq!(
            MonomialOrder::Grevlex.cmp(&m(&[1, 0, 0]), &m(&[0, 2, 0])),
            Ordering::Less
        );
        // grevlex: x*z < y^2
        assert_eq!(
            MonomialOrder::Grevlex.cmp(&m(&[1, 0, 1]), &m(&[0, 2, 0])),
            Ordering::Less
        );
        assert_eq!(
            MonomialOrder::Lex.cmp(&m(&[1, 0, 1]), &m(&[0, 2, 0])),
            Ordering::Greater
        );
    }

    #[test]
    fn block_eliminates_first_group() {
        let o = MonomialOrder::elimination(&[2]);
        assert_eq!(o.cmp(&m(&[0, 0, 1]), &m(&[9, 9, 0])), Ordering::Greater);
        assert_eq!(o.cmp(&m(&[2, 0, 1]), &m(&[0, 1, 1])), Ordering::Greater);
    }
}
