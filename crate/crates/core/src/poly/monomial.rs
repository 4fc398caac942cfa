use std::fmt;

/// Upper bound on the number of variables a ring may declare.
pub const MAX_VARS: usize = 32;

/// Exponent vector of a monomial.
///
/// Stored inline so monomials are `Copy`; entries past the ring's variable
/// count are always zero, which lets comparisons and divisibility ignore the
/// ring length entirely.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: [u16; MAX_VARS],
}

impl Monomial {
    pub const fn one() -> Self {
        Monomial {
            exps: [0; MAX_VARS],
        }
    }

    pub fn var(index: usize) -> Self {
        Self::var_pow(index, 1)
    }

    pub fn var_pow(index: usize, exp: u16) -> Self {
        let mut m = Self::one();
        m.exps[index] = exp;
        m
    }

    pub fn from_exponents(exps: &[u16]) -> Self {
        assert!(exps.len() <= MAX_VARS, "too many exponents");
        let mut m = Self::one();
        m.exps[..exps.len()].copy_from_slice(exps);
        m
    }

    #[inline]
    pub fn exp(&self, index: usize) -> u16 {
        self.exps[index]
    }

    #[inline]
    pub fn set_exp(&mut self, index: usize, e: u16) {
        self.exps[index] = e;
    }

    /// The first `n` exponents.
    pub fn exponents(&self, n: usize) -> &[u16] {
        &self.exps[..n]
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.exps.iter().map(|&e| e as u32).sum()
    }

    /// Total degree restricted to the variables whose bit is set in `mask`.
    #[inline]
    pub fn degree_in(&self, mask: u32) -> u32 {
        let mut d = 0;
        for (i, &e) in self.exps.iter().enumerate() {
            if mask & (1 << i) != 0 {
                d += e as u32;
            }
        }
        d
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    /// Bitmask of the variables that occur.
    pub fn support(&self) -> u32 {
        let mut s = 0u32;
        for (i, &e) in self.exps.iter().enumerate() {
            if e != 0 {
                s |= 1 << i;
            }
        }
        s
    }

    #[inline]
    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut r = *self;
        for (a, b) in r.exps.iter_mut().zip(other.exps.iter()) {
            *a = a.checked_add(*b).expect("monomial exponent overflow");
        }
        r
    }

    #[inline]
    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(other.exps.iter()).all(|(a, b)| a <= b)
    }

    /// `self / other`; `other` must divide `self`.
    #[inline]
    pub fn div(&self, other: &Monomial) -> Monomial {
        let mut r = *self;
        for (a, b) in r.exps.iter_mut().zip(other.exps.iter()) {
            debug_assert!(*a >= *b);
            *a -= *b;
        }
        r
    }

    pub fn checked_div(&self, other: &Monomial) -> Option<Monomial> {
        if other.divides(self) {
            Some(self.div(other))
        } else {
            None
        }
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let mut r = *self;
        for (a, b) in r.exps.iter_mut().zip(other.exps.iter()) {
            *a = (*a).max(*b);
        }
        r
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        let mut r = *self;
        for (a, b) in r.exps.iter_mut().zip(other.exps.iter()) {
            *a = (*a).min(*b);
        }
        r
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.support() & other.support() == 0
    }
}

impl Default for Monomial {
    fn default() -> Self {
        Self::one()
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let last = self.exps.iter().rposition(|&e| e != 0).map_or(0, |p| p + 1);
        write!(f, "{:?}", &self.exps[..last])
    }
}
