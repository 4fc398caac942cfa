//! Buchberger's algorithm with the coprime and Gebauer–Möller pair criteria.
//!
//! Reduction runs fraction-free over the integers: every intermediate
//! polynomial is kept primitive and the scalar multipliers are tracked so
//! that normal forms come out exact over the rationals.

use std::cmp::Ordering;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::poly::{Monomial, MonomialOrder, PolyRing, Polynomial};

/// Limits and switches for a Gröbner basis computation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GbOptions {
    /// Maximum number of S-pairs reduced before giving up.
    pub max_pairs: usize,
    /// Maximum number of intermediate basis elements.
    pub max_basis: usize,
    /// Apply the coprime-leading-monomial and chain criteria.
    pub criteria: bool,
}

impl Default for GbOptions {
    fn default() -> Self {
        GbOptions {
            max_pairs: 200_000,
            max_basis: 20_000,
            criteria: true,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct GbStats {
    pub pairs_created: usize,
    pub pairs_reduced: usize,
    pub zero_reductions: usize,
    pub basis_size: usize,
}

type Terms = Vec<(BigInt, Monomial)>;

#[derive(Clone, Debug)]
pub(crate) struct IPoly {
    terms: Terms,
    /// Sugar degree: the degree the element would have after
    /// homogenization.
    sugar: u32,
}

impl IPoly {
    pub(crate) fn from_poly(p: &Polynomial) -> IPoly {
        let mut den = BigInt::one();
        for (c, _) in p.terms() {
            den = den.lcm(c.denom());
        }
        let terms: Terms = p
            .terms()
            .iter()
            .map(|(c, m)| ((c.numer() * &den) / c.denom(), *m))
            .collect();
        let sugar = total_degree(&terms);
        let mut ip = IPoly { terms, sugar };
        ip.make_primitive();
        ip
    }

    fn lm(&self) -> &Monomial {
        &self.terms[0].1
    }

    fn lc(&self) -> &BigInt {
        &self.terms[0].0
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Divides out the content; returns it (one for zero).
    fn make_primitive(&mut self) -> BigInt {
        let c = content(&self.terms);
        if !c.is_one() && !c.is_zero() {
            for t in &mut self.terms {
                t.0 /= &c;
            }
        }
        if self.terms.first().is_some_and(|t| t.0.is_negative()) {
            for t in &mut self.terms {
                t.0 = -&t.0;
            }
        }
        c
    }

    fn to_monic(&self, ring: &Arc<PolyRing>) -> Polynomial {
        let lc = BigRational::from_integer(self.lc().clone());
        let terms = self
            .terms
            .iter()
            .map(|(c, m)| (BigRational::from_integer(c.clone()) / &lc, *m))
            .collect();
        Polynomial::from_sorted(ring, terms)
    }
}

fn total_degree(terms: &[(BigInt, Monomial)]) -> u32 {
    terms.iter().map(|t| t.1.degree()).max().unwrap_or(0)
}

fn content(terms: &[(BigInt, Monomial)]) -> BigInt {
    let mut g = BigInt::zero();
    for (c, _) in terms {
        g = g.gcd(c);
        if g.is_one() {
            break;
        }
    }
    g
}

/// `a*p - b*m*g`, all sorted descending in `order`.
fn sub_mul(
    p: &[(BigInt, Monomial)],
    a: &BigInt,
    b: &BigInt,
    m: &Monomial,
    g: &[(BigInt, Monomial)],
    order: &MonomialOrder,
) -> Terms {
    let mut out = Vec::with_capacity(p.len() + g.len());
    let a_one = a.is_one();
    let scale = |c: &BigInt| if a_one { c.clone() } else { c * a };
    let (mut i, mut j) = (0, 0);
    let mut gm: Option<Monomial> = g.first().map(|t| t.1.mul(m));
    while i < p.len() {
        let Some(cur) = gm else { break };
        match order.cmp(&p[i].1, &cur) {
            Ordering::Greater => {
                out.push((scale(&p[i].0), p[i].1));
                i += 1;
            }
            Ordering::Less => {
                out.push((-(b * &g[j].0), cur));
                j += 1;
                gm = g.get(j).map(|t| t.1.mul(m));
            }
            Ordering::Equal => {
                let c = scale(&p[i].0) - b * &g[j].0;
                if !c.is_zero() {
                    out.push((c, cur));
                }
                i += 1;
                j += 1;
                gm = g.get(j).map(|t| t.1.mul(m));
            }
        }
    }
    for t in &p[i..] {
        out.push((scale(&t.0), t.1));
    }
    while j < g.len() {
        out.push((-(b * &g[j].0), g[j].1.mul(m)));
        j += 1;
    }
    out
}

/// Reduces `f` by `reducers` (only those with `use_it[k]`), fully or only
/// at the top. Returns `(s, r)` with `s*f - r` in the ideal of the
/// reducers, where `s` is a nonzero rational.
fn reduce(
    f: Terms,
    reducers: &[IPoly],
    use_it: &dyn Fn(usize) -> bool,
    order: &MonomialOrder,
    full: bool,
) -> (BigRational, Terms) {
    let mut scale = BigRational::one();
    let mut rem: Terms = Vec::new();
    let mut p = f;
    let mut steps = 0usize;
    let mut start = 0usize;
    while start < p.len() {
        let m = p[start].1;
        let cands = reducers
            .iter()
            .enumerate()
            .filter(|(k, g)| use_it(*k) && !g.is_zero() && g.lm().divides(&m));
        // Shortest reducer first, then smallest leading coefficient: keeps
        // coefficient growth down, decisively so under lex.
        let found = cands.min_by_key(|(_, g)| (g.terms.len(), g.lc().bits()));
        let Some((_, g)) = found else {
            if !full {
                break;
            }
            start += 1;
            continue;
        };
        rem.extend(p.drain(..start));
        start = 0;
        let c = &p[0].0;
        let lcg = g.lc();
        let d = c.gcd(lcg);
        let a = lcg / &d;
        let b = c / &d;
        let shift = m.div(g.lm());
        let mut np = sub_mul(&p, &a, &b, &shift, &g.terms, order);
        debug_assert!(np
            .first()
            .is_none_or(|t| order.cmp(&t.1, &m) == Ordering::Less));
        if !a.is_one() {
            scale *= BigRational::from_integer(a.clone());
            for t in &mut rem {
                t.0 *= &a;
            }
        }
        steps += 1;
        if steps.is_multiple_of(16) {
            let c = content(&rem).gcd(&content(&np));
            if !c.is_zero() && !c.is_one() {
                for t in rem.iter_mut().chain(np.iter_mut()) {
                    t.0 /= &c;
                }
                scale /= BigRational::from_integer(c);
            }
        }
        p = np;
    }
    rem.append(&mut p);
    let c = content(&rem);
    if !c.is_zero() && !c.is_one() {
        for t in &mut rem {
            t.0 /= &c;
        }
        scale /= BigRational::from_integer(c);
    }
    (scale, rem)
}

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    sugar: u32,
}

fn pair_sugar(f: &IPoly, g: &IPoly, lcm: &Monomial) -> u32 {
    let d = lcm.degree();
    (f.sugar + d - f.lm().degree()).max(g.sugar + d - g.lm().degree())
}

/// Normal strategy (smallest lcm in the term order), ties broken by sugar
/// and then by insertion order.
fn pair_cmp(a: &Pair, b: &Pair, order: &MonomialOrder) -> Ordering {
    order
        .cmp(&a.lcm, &b.lcm)
        .then_with(|| a.sugar.cmp(&b.sugar))
        .then_with(|| (a.i, a.j).cmp(&(b.i, b.j)))
}

fn spoly(f: &IPoly, g: &IPoly, lcm: &Monomial, order: &MonomialOrder) -> Terms {
    let d = f.lc().gcd(g.lc());
    let a = g.lc() / &d;
    let b = f.lc() / &d;
    let fm = lcm.div(f.lm());
    let gm = lcm.div(g.lm());
    let left: Terms = f.terms[1..]
        .iter()
        .map(|(c, m)| (c * &a, m.mul(&fm)))
        .collect();
    sub_mul(&left, &BigInt::one(), &b, &gm, &g.terms[1..], order)
}

struct Engine<'a> {
    order: &'a MonomialOrder,
    opts: &'a GbOptions,
    polys: Vec<IPoly>,
    active: Vec<bool>,
    pairs: Vec<Pair>,
    stats: GbStats,
}

impl<'a> Engine<'a> {
    fn insert(&mut self, h: IPoly) -> Result<()> {
        let k = self.polys.len();
        if k >= self.opts.max_basis {
            return Err(Error::ResourceExhausted(format!(
                "Groebner basis exceeded {} elements",
                self.opts.max_basis
            )));
        }
        let hlm = *h.lm();
        self.polys.push(h);
        self.active.push(true);
        if !self.opts.criteria {
            for g in 0..k {
                let lcm = self.polys[g].lm().lcm(&hlm);
                let sugar = pair_sugar(&self.polys[g], &self.polys[k], &lcm);
                self.pairs.push(Pair {
                    i: g,
                    j: k,
                    lcm,
                    sugar,
                });
                self.stats.pairs_created += 1;
            }
            return Ok(());
        }
        // Gebauer–Möller update.
        let mut c: Vec<Pair> = (0..k)
            .filter(|&g| self.active[g])
            .map(|g| {
                let lcm = self.polys[g].lm().lcm(&hlm);
                let sugar = pair_sugar(&self.polys[g], &self.polys[k], &lcm);
                Pair {
                    i: g,
                    j: k,
                    lcm,
                    sugar,
                }
            })
            .collect();
        let mut d: Vec<Pair> = Vec::new();
        while let Some(p) = (!c.is_empty()).then(|| c.remove(0)) {
            let glm = self.polys[p.i].lm();
            let coprime = glm.is_coprime(&hlm);
            if coprime
                || (!c.iter().any(|q| q.lcm.divides(&p.lcm))
                    && !d.iter().any(|q| q.lcm.divides(&p.lcm)))
            {
                d.push(p);
            }
        }
        let polys = &self.polys;
        let e: Vec<Pair> = d
            .into_iter()
            .filter(|p| !polys[p.i].lm().is_coprime(&hlm))
            .collect();
        self.pairs.retain(|p| {
            let l1 = polys[p.i].lm().lcm(&hlm);
            let l2 = polys[p.j].lm().lcm(&hlm);
            !(hlm.divides(&p.lcm) && l1 != p.lcm && l2 != p.lcm)
        });
        self.stats.pairs_created += e.len();
        self.pairs.extend(e);
        for g in 0..k {
            if self.active[g] && hlm.divides(self.polys[g].lm()) {
                self.active[g] = false;
            }
        }
        Ok(())
    }

    fn select(&mut self) -> Option<Pair> {
        let (idx, _) = self
            .pairs
            .iter()
            .enumerate()
            .min_by(|a, b| pair_cmp(a.1, b.1, self.order))?;
        Some(self.pairs.swap_remove(idx))
    }

    fn reduce_new(&self, f: Terms, sugar: u32) -> IPoly {
        let active = &self.active;
        let (_, r) = reduce(f, &self.polys, &|k| active[k], self.order, true);
        let sugar = sugar.max(total_degree(&r));
        let mut ip = IPoly { terms: r, sugar };
        ip.make_primitive();
        ip
    }

    fn run(&mut self) -> Result<()> {
        while let Some(p) = self.select() {
            self.stats.pairs_reduced += 1;
            if self.stats.pairs_reduced > self.opts.max_pairs {
                return Err(Error::ResourceExhausted(format!(
                    "more than {} S-pairs",
                    self.opts.max_pairs
                )));
            }
            let s = spoly(&self.polys[p.i], &self.polys[p.j], &p.lcm, self.order);
            let h = self.reduce_new(s, p.sugar);
            if h.is_zero() {
                self.stats.zero_reductions += 1;
                continue;
            }
            if h.lm().is_one() {
                self.polys = vec![h];
                self.active = vec![true];
                self.pairs.clear();
                return Ok(());
            }
            self.insert(h)?;
        }
        Ok(())
    }

    /// Minimal, interreduced, sorted by ascending leading monomial.
    fn reduced_basis(&self) -> Vec<IPoly> {
        let mut keep: Vec<IPoly> = Vec::new();
        let mut cand: Vec<&IPoly> = self
            .polys
            .iter()
            .zip(&self.active)
            .filter(|(_, a)| **a)
            .map(|(p, _)| p)
            .collect();
        cand.sort_by(|a, b| self.order.cmp(a.lm(), b.lm()));
        for (idx, p) in cand.iter().enumerate() {
            let redundant = cand
                .iter()
                .enumerate()
                .any(|(j, q)| j != idx && q.lm().divides(p.lm()) && (q.lm() != p.lm() || j < idx));
            if !redundant {
                keep.push((*p).clone());
            }
        }
        for i in 0..keep.len() {
            let head = keep[i].terms[0].clone();
            let tail = keep[i].terms[1..].to_vec();
            let (scale, r) = reduce(tail, &keep, &|k| k != i, self.order, true);
            // head * scale-adjusted: s*tail ≡ r, so s*(head + tail) ≡ s*head + r
            let num = scale.numer().clone();
            let den = scale.denom().clone();
            // s = num/den: multiply head by num and r by den to stay integral
            let mut terms = vec![(head.0 * &num, head.1)];
            terms.extend(r.into_iter().map(|(c, m)| (c * &den, m)));
            let sugar = keep[i].sugar;
            let mut ip = IPoly { terms, sugar };
            ip.make_primitive();
            keep[i] = ip;
        }
        keep
    }
}

/// A reduced Gröbner basis: monic elements sorted by ascending leading
/// monomial in the ring's order.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    ring: Arc<PolyRing>,
    elements: Vec<Polynomial>,
    integral: Vec<IPoly>,
    stats: GbStats,
}

impl GroebnerBasis {
    /// Reduced basis of the ideal generated by `gens`, in the order of
    /// `ring` (all generators must live in `ring`).
    pub fn compute(ring: &Arc<PolyRing>, gens: &[Polynomial], opts: &GbOptions) -> Result<Self> {
        for g in gens {
            if !(Arc::ptr_eq(g.ring(), ring) || **g.ring() == **ring) {
                return Err(Error::RingMismatch(
                    "generator outside the ideal's ring".into(),
                ));
            }
        }
        let order = ring.order();
        let mut engine = Engine {
            order,
            opts,
            polys: Vec::new(),
            active: Vec::new(),
            pairs: Vec::new(),
            stats: GbStats::default(),
        };
        let mut input: Vec<IPoly> = gens
            .iter()
            .filter(|g| !g.is_zero())
            .map(IPoly::from_poly)
            .collect();
        input.sort_by(|a, b| order.cmp(a.lm(), b.lm()));
        let mut unit = false;
        for g in input {
            let h = engine.reduce_new(g.terms, g.sugar);
            if h.is_zero() {
                continue;
            }
            if h.lm().is_one() {
                unit = true;
                engine.polys = vec![h];
                engine.active = vec![true];
                engine.pairs.clear();
                break;
            }
            engine.insert(h)?;
        }
        if !unit {
            engine.run()?;
        }
        let integral = engine.reduced_basis();
        let elements: Vec<Polynomial> = integral.iter().map(|p| p.to_monic(ring)).collect();
        let mut stats = engine.stats;
        stats.basis_size = elements.len();
        Ok(GroebnerBasis {
            ring: ring.clone(),
            elements,
            integral,
            stats,
        })
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn order(&self) -> &MonomialOrder {
        self.ring.order()
    }

    pub fn elements(&self) -> &[Polynomial] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn stats(&self) -> &GbStats {
        &self.stats
    }

    /// True for the basis `{1}` of the unit ideal.
    pub fn is_unit(&self) -> bool {
        self.elements.len() == 1 && self.elements[0].is_constant()
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.elements
            .iter()
            .map(|g| g.leading_monomial().unwrap())
            .collect()
    }

    fn check(&self, f: &Polynomial) -> Result<()> {
        if Arc::ptr_eq(f.ring(), &self.ring) || **f.ring() == *self.ring {
            Ok(())
        } else if f.ring().same_variables(&self.ring) {
            Err(Error::RingMismatch(format!(
                "monomial order mismatch: polynomial uses {}, basis uses {}",
                f.ring().order().name(),
                self.ring.order().name()
            )))
        } else {
            Err(Error::RingMismatch(format!(
                "{:?} vs {:?}",
                f.ring(),
                self.ring
            )))
        }
    }

    /// Complete remainder of `f` on division by the basis.
    pub fn normal_form(&self, f: &Polynomial) -> Result<Polynomial> {
        self.check(f)?;
        if f.is_zero() {
            return Ok(f.clone());
        }
        let ip = IPoly::from_poly(f);
        // f = fc * ip with fc rational
        let fc = f.leading_coeff().unwrap() / BigRational::from_integer(ip.lc().clone());
        let (scale, r) = reduce(ip.terms, &self.integral, &|_| true, self.order(), true);
        let factor = fc / scale;
        let terms = r
            .into_iter()
            .map(|(c, m)| (BigRational::from_integer(c) * &factor, m))
            .collect();
        Ok(Polynomial::from_sorted(&self.ring, terms))
    }

    pub fn contains(&self, f: &Polynomial) -> Result<bool> {
        Ok(self.normal_form(f)?.is_zero())
    }

    /// Checks Buchberger's criterion directly: every S-polynomial of the
    /// basis reduces to zero.
    pub fn all_spolys_reduce_to_zero(&self) -> bool {
        for i in 0..self.integral.len() {
            for j in i + 1..self.integral.len() {
                let (f, g) = (&self.integral[i], &self.integral[j]);
                let lcm = f.lm().lcm(g.lm());
                let s = spoly(f, g, &lcm, self.order());
                let (_, r) = reduce(s, &self.integral, &|_| true, self.order(), true);
                if !r.is_empty() {
                    return false;
                }
            }
        }
        true
    }

    /// True when no term of any element is divisible by the leading
    /// monomial of another element and every element is monic.
    pub fn is_reduced(&self) -> bool {
        let lms = self.leading_monomials();
        self.elements.iter().enumerate().all(|(i, g)| {
            g.leading_coeff().is_some_and(|c| c.is_one())
                && g.terms()
                    .iter()
                    .all(|(_, m)| lms.iter().enumerate().all(|(j, l)| j == i || !l.divides(m)))
        })
    }
}

/// Reduced basis of `gens` in the order of their ring.
pub fn buchberger(
    gens: &[Polynomial],
    ring: &Arc<PolyRing>,
    opts: &GbOptions,
) -> Result<GroebnerBasis> {
    GroebnerBasis::compute(ring, gens, opts)
}
