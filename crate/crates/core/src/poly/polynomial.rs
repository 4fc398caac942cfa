use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::monomial::Monomial;
use super::ring::PolyRing;
use crate::error::{Error, Result};

/// Exact multivariate polynomial over the rationals.
///
/// Terms are kept strictly descending in the ring's monomial order with no
/// zero coefficients; the zero polynomial has no terms.
#[derive(Clone)]
pub struct Polynomial {
    ring: Arc<PolyRing>,
    terms: Vec<(BigRational, Monomial)>,
}

pub(crate) fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl Polynomial {
    pub fn zero(ring: &Arc<PolyRing>) -> Self {
        Polynomial {
            ring: ring.clone(),
            terms: Vec::new(),
        }
    }

    pub fn one(ring: &Arc<PolyRing>) -> Self {
        Self::constant(ring, BigRational::one())
    }

    pub fn constant(ring: &Arc<PolyRing>, c: BigRational) -> Self {
        let terms = if c.is_zero() {
            Vec::new()
        } else {
            vec![(c, Monomial::one())]
        };
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn from_int(ring: &Arc<PolyRing>, c: i64) -> Self {
        Self::constant(ring, rat(c))
    }

    pub fn var(ring: &Arc<PolyRing>, index: usize) -> Self {
        assert!(index < ring.nvars(), "variable index out of range");
        Polynomial {
            ring: ring.clone(),
            terms: vec![(BigRational::one(), Monomial::var(index))],
        }
    }

    /// Variable by name.
    pub fn named(ring: &Arc<PolyRing>, name: &str) -> Result<Self> {
        Ok(Self::var(ring, ring.var_index(name)?))
    }

    pub fn monomial(ring: &Arc<PolyRing>, c: BigRational, m: Monomial) -> Self {
        Self::from_terms(ring, [(c, m)])
    }

    /// Builds a polynomial from arbitrary terms, merging duplicates and
    /// dropping zeros.
    pub fn from_terms<I>(ring: &Arc<PolyRing>, terms: I) -> Self
    where
        I: IntoIterator<Item = (BigRational, Monomial)>,
    {
        let mut acc: HashMap<Monomial, BigRational> = HashMap::new();
        for (c, m) in terms {
            if c.is_zero() {
                continue;
            }
            *acc.entry(m).or_insert_with(BigRational::zero) += c;
        }
        Self::from_map(ring, acc)
    }

    fn from_map(ring: &Arc<PolyRing>, acc: HashMap<Monomial, BigRational>) -> Self {
        let mut terms: Vec<(BigRational, Monomial)> = acc
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(m, c)| (c, m))
            .collect();
        let order = ring.order().clone();
        terms.sort_by(|a, b| order.cmp(&b.1, &a.1));
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    /// Terms must already be strictly descending with nonzero coefficients.
    pub(crate) fn from_sorted(ring: &Arc<PolyRing>, terms: Vec<(BigRational, Monomial)>) -> Self {
        debug_assert!(terms.iter().all(|(c, _)| !c.is_zero()));
        debug_assert!(terms
            .windows(2)
            .all(|w| ring.order().cmp(&w[0].1, &w[1].1) == Ordering::Greater));
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn terms(&self) -> &[(BigRational, Monomial)] {
        &self.terms
    }

    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(_, m)| m.is_one())
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].1.is_one() && self.terms[0].0.is_one()
    }

    pub fn leading_term(&self) -> Option<&(BigRational, Monomial)> {
        self.terms.first()
    }

    pub fn leading_monomial(&self) -> Option<Monomial> {
        self.terms.first().map(|t| t.1)
    }

    pub fn leading_coeff(&self) -> Option<&BigRational> {
        self.terms.first().map(|t| &t.0)
    }

    /// Constant term value, zero if absent.
    pub fn constant_term(&self) -> BigRational {
        match self.terms.last() {
            Some((c, m)) if m.is_one() => c.clone(),
            _ => BigRational::zero(),
        }
    }

    /// Bitmask of variables that occur.
    pub fn support(&self) -> u32 {
        self.terms.iter().fold(0, |s, (_, m)| s | m.support())
    }

    pub fn involves(&self, var: usize) -> bool {
        self.support() & (1 << var) != 0
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms
            .iter()
            .map(|(_, m)| m.exp(var) as u32)
            .max()
            .unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms
            .iter()
            .map(|(_, m)| m.degree())
            .max()
            .unwrap_or(0)
    }

    /// Highest total degree in the variables of `mask`.
    pub fn degree_in_mask(&self, mask: u32) -> u32 {
        self.terms
            .iter()
            .map(|(_, m)| m.degree_in(mask))
            .max()
            .unwrap_or(0)
    }

    /// Lowest total degree in the variables of `mask`; zero for the zero polynomial.
    pub fn low_degree_in_mask(&self, mask: u32) -> u32 {
        self.terms
            .iter()
            .map(|(_, m)| m.degree_in(mask))
            .min()
            .unwrap_or(0)
    }

    /// Part of `self` of degree exactly `d` in the variables of `mask`.
    pub fn homogeneous_part(&self, mask: u32, d: u32) -> Polynomial {
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(_, m)| m.degree_in(mask) == d)
                .cloned()
                .collect(),
        }
    }

    /// Lowest-degree form in the variables of `mask`.
    pub fn lowest_form(&self, mask: u32) -> Polynomial {
        self.homogeneous_part(mask, self.low_degree_in_mask(mask))
    }

    pub fn is_homogeneous_in(&self, mask: u32) -> bool {
        let mut it = self.terms.iter().map(|(_, m)| m.degree_in(mask));
        match it.next() {
            None => true,
            Some(d) => it.all(|e| e == d),
        }
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_homogeneous_in(u32::MAX)
    }

    fn check_ring(&self, other: &Polynomial) -> Result<()> {
        if Arc::ptr_eq(&self.ring, &other.ring) || *self.ring == *other.ring {
            Ok(())
        } else {
            Err(Error::RingMismatch(format!(
                "{:?} vs {:?}",
                self.ring, other.ring
            )))
        }
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        Ok(self.merge(other, false))
    }

    pub fn checked_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        Ok(self.merge(other, true))
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        Ok(self.mul_impl(other))
    }

    fn merge(&self, other: &Polynomial, negate: bool) -> Polynomial {
        let order = self.ring.order();
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        while i < a.len() && j < b.len() {
            match order.cmp(&a[i].1, &b[j].1) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let c = if negate { -&b[j].0 } else { b[j].0.clone() };
                    out.push((c, b[j].1));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate {
                        &a[i].0 - &b[j].0
                    } else {
                        &a[i].0 + &b[j].0
                    };
                    if !c.is_zero() {
                        out.push((c, a[i].1));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        for (c, m) in &b[j..] {
            out.push((if negate { -c } else { c.clone() }, *m));
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: out,
        }
    }

    fn mul_impl(&self, other: &Polynomial) -> Polynomial {
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        if other.terms.len() == 1 {
            let (c, m) = &other.terms[0];
            return self.mul_term(c, m);
        }
        if self.terms.len() == 1 {
            let (c, m) = &self.terms[0];
            return other.mul_term(c, m);
        }
        let mut acc: HashMap<Monomial, BigRational> =
            HashMap::with_capacity(self.terms.len() * other.terms.len());
        for (c1, m1) in &self.terms {
            for (c2, m2) in &other.terms {
                *acc.entry(m1.mul(m2)).or_insert_with(BigRational::zero) += c1 * c2;
            }
        }
        Self::from_map(&self.ring, acc)
    }

    /// `c * m * self`; monomial multiplication preserves the term order.
    pub fn mul_term(&self, c: &BigRational, m: &Monomial) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(d, n)| (d * c, n.mul(m))).collect(),
        }
    }

    pub fn scale(&self, c: &BigRational) -> Polynomial {
        self.mul_term(c, &Monomial::one())
    }

    pub fn pow(&self, mut e: u32) -> Polynomial {
        let mut base = self.clone();
        let mut acc = Polynomial::one(&self.ring);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_impl(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_impl(&base);
            }
        }
        acc
    }

    /// Formal partial derivative with respect to variable `var`.
    pub fn differentiate(&self, var: usize) -> Polynomial {
        let terms = self
            .terms
            .iter()
            .filter(|(_, m)| m.exp(var) > 0)
            .map(|(c, m)| {
                let e = m.exp(var);
                let mut n = *m;
                n.set_exp(var, e - 1);
                (c * rat(e as i64), n)
            })
            .collect();
        // Dividing out one power of a variable keeps the relative order of
        // the surviving monomials.
        Polynomial {
            ring: self.ring.clone(),
            terms,
        }
    }

    /// Replaces variables of `self` by polynomials. Variables without an
    /// assignment are mapped to the same-named variable of the target ring.
    /// The target ring is the ring of the images (or `self`'s ring if there
    /// are none).
    pub fn substitute(&self, assignments: &[(usize, Polynomial)]) -> Result<Polynomial> {
        let target = assignments
            .first()
            .map(|(_, p)| p.ring.clone())
            .unwrap_or_else(|| self.ring.clone());
        self.substitute_into(assignments, &target)
    }

    pub fn substitute_into(
        &self,
        assignments: &[(usize, Polynomial)],
        target: &Arc<PolyRing>,
    ) -> Result<Polynomial> {
        let n = self.ring.nvars();
        let mut images: Vec<Option<Polynomial>> = vec![None; n];
        for (v, p) in assignments {
            if *v >= n {
                return Err(Error::InvalidArgument(format!(
                    "variable index {v} out of range"
                )));
            }
            if !(Arc::ptr_eq(&p.ring, target) || *p.ring == **target) {
                return Err(Error::RingMismatch(
                    "substitution images must live in the target ring".into(),
                ));
            }
            images[*v] = Some(p.clone());
        }
        let support = self.support();
        for (v, slot) in images.iter_mut().enumerate() {
            if slot.is_none() && support & (1 << v) != 0 {
                let j = target.var_index(self.ring.name(v)).map_err(|_| {
                    Error::RingMismatch(format!(
                        "variable `{}` has no image in the target ring",
                        self.ring.name(v)
                    ))
                })?;
                *slot = Some(Polynomial::var(target, j));
            }
        }
        // Monomial images of pure variable renamings stay monomials; do that
        // cheaply, otherwise expand with cached powers.
        let mut powers: HashMap<(usize, u16), Polynomial> = HashMap::new();
        let mut acc = Polynomial::zero(target);
        for (c, m) in &self.terms {
            let mut t = Polynomial::constant(target, c.clone());
            for (v, img) in images.iter().enumerate().take(n) {
                let e = m.exp(v);
                if e == 0 {
                    continue;
                }
                let img = img.as_ref().unwrap();
                let p = powers
                    .entry((v, e))
                    .or_insert_with(|| img.pow(e as u32))
                    .clone();
                t = t.mul_impl(&p);
                if t.is_zero() {
                    break;
                }
            }
            acc = acc.merge(&t, false);
        }
        Ok(acc)
    }

    /// Re-expresses `self` in another ring by variable name.
    pub fn map_into(&self, target: &Arc<PolyRing>) -> Result<Polynomial> {
        if Arc::ptr_eq(&self.ring, target) {
            return Ok(self.clone());
        }
        let n = self.ring.nvars();
        let mut map = vec![None; n];
        let support = self.support();
        for (v, slot) in map.iter_mut().enumerate() {
            if let Some(j) = target.index_of(self.ring.name(v)) {
                *slot = Some(j);
            } else if support & (1 << v) != 0 {
                return Err(Error::RingMismatch(format!(
                    "variable `{}` is missing from the target ring",
                    self.ring.name(v)
                )));
            }
        }
        let terms = self.terms.iter().map(|(c, m)| {
            let mut out = Monomial::one();
            for (v, j) in map.iter().enumerate().take(n) {
                if let Some(j) = *j {
                    out.set_exp(j, m.exp(v));
                }
            }
            (c.clone(), out)
        });
        Ok(Polynomial::from_terms(target, terms))
    }

    /// Sets variable `var` to the constant `value`.
    pub fn evaluate_var(&self, var: usize, value: &BigRational) -> Polynomial {
        let terms = self.terms.iter().map(|(c, m)| {
            let e = m.exp(var);
            let mut n = *m;
            n.set_exp(var, 0);
            let mut coeff = c.clone();
            if e > 0 {
                coeff *= num_traits::pow(value.clone(), e as usize);
            }
            (coeff, n)
        });
        Polynomial::from_terms(&self.ring, terms)
    }

    /// Scales to leading coefficient one.
    pub fn monic(&self) -> Polynomial {
        match self.leading_coeff() {
            None => self.clone(),
            Some(lc) if lc.is_one() => self.clone(),
            Some(lc) => self.scale(&lc.recip()),
        }
    }

    /// Scales to integer coefficients with gcd one and positive leading
    /// coefficient.
    pub fn primitive(&self) -> Polynomial {
        if self.is_zero() {
            return self.clone();
        }
        let mut den = BigInt::one();
        let mut num = BigInt::zero();
        for (c, _) in &self.terms {
            den = den.lcm(c.denom());
            num = num.gcd(c.numer());
        }
        let mut f = BigRational::new(den, num);
        if self.terms[0].0.is_negative() {
            f = -f;
        }
        self.scale(&f)
    }

    /// Exact quotient `self / g`, or `None` when `g` does not divide `self`.
    pub fn exact_div(&self, g: &Polynomial) -> Option<Polynomial> {
        let (lc, lm) = g.leading_term()?.clone();
        let mut rem = self.clone();
        let mut quot = Vec::new();
        while let Some((c, m)) = rem.leading_term().cloned() {
            let q = m.checked_div(&lm)?;
            let qc = &c / &lc;
            rem = rem.merge(&g.mul_term(&qc, &q), true);
            quot.push((qc, q));
        }
        Some(Polynomial::from_sorted(&self.ring, quot))
    }

    /// Coefficients in `var`: `self = Σ_k coeffs[k] * var^k`.
    pub fn coefficients_in(&self, var: usize) -> Vec<Polynomial> {
        let d = self.degree_in(var) as usize;
        let mut parts: Vec<Vec<(BigRational, Monomial)>> = vec![Vec::new(); d + 1];
        for (c, m) in &self.terms {
            let e = m.exp(var) as usize;
            let mut n = *m;
            n.set_exp(var, 0);
            parts[e].push((c.clone(), n));
        }
        parts
            .into_iter()
            .map(|t| Polynomial::from_terms(&self.ring, t))
            .collect()
    }

    /// Coefficient of `var^degree_in(var)`.
    pub fn leading_coeff_in(&self, var: usize) -> Polynomial {
        let d = self.degree_in(var);
        let terms = self
            .terms
            .iter()
            .filter(|(_, m)| m.exp(var) as u32 == d)
            .map(|(c, m)| {
                let mut n = *m;
                n.set_exp(var, 0);
                (c.clone(), n)
            });
        Polynomial::from_terms(&self.ring, terms)
    }
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        self.ring.same_variables(&other.ring) && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

impl<'a> Add<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.checked_add(rhs).expect("polynomial ring mismatch")
    }
}

impl<'a> Sub<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.checked_sub(rhs).expect("polynomial ring mismatch")
    }
}

impl<'a> Mul<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.checked_mul(rhs).expect("polynomial ring mismatch")
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(c, m)| (-c, *m)).collect(),
        }
    }
}

fn fmt_monomial(ring: &PolyRing, m: &Monomial) -> String {
    let mut parts = Vec::new();
    for v in 0..ring.nvars() {
        match m.exp(v) {
            0 => {}
            1 => parts.push(ring.name(v).to_string()),
            e => parts.push(format!("{}^{}", ring.name(v), e)),
        }
    }
    parts.join("*")
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (c, m)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            if m.is_one() {
                write!(f, "{abs}")?;
            } else {
                if !abs.is_one() {
                    write!(f, "{abs}*")?;
                }
                write!(f, "{}", fmt_monomial(&self.ring, m))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
