//! Intersection, colon, saturation, elimination, dimension and the
//! regular-sequence test ideal.

use std::sync::Arc;

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ideal::Ideal;
use crate::poly::{rat, Monomial, MonomialOrder, PolyRing, Polynomial, MAX_VARS};

/// Ring with fresh variables prepended in an elimination block.
fn extended(ring: &Arc<PolyRing>, stems: &[&str]) -> Result<(Arc<PolyRing>, Vec<String>)> {
    let mut names = Vec::new();
    for s in stems {
        let mut n = ring.fresh_name(s);
        while names.contains(&n) {
            n = format!("{n}_");
        }
        names.push(n);
    }
    Ok((ring.extend_front(&names)?, names))
}

/// `⟨gens⟩ ∩ k[variables outside mask]`, mapped to `target`.
///
/// Inhomogeneous generators are homogenized with a fresh last variable `h`
/// before the basis is taken, and `h = 1` afterwards. Dehomogenization
/// commutes with elimination here, and the homogeneous computation avoids
/// the high-degree detours block orders take on inhomogeneous input.
fn eliminate_mask(
    ring: &Arc<PolyRing>,
    mask: u32,
    gens: Vec<Polynomial>,
    target: &Arc<PolyRing>,
    like: &Ideal,
) -> Result<Ideal> {
    let n = ring.nvars();
    let order =
        MonomialOrder::elimination(&(0..n).filter(|v| mask & (1 << v) != 0).collect::<Vec<_>>());
    let homogeneous = gens.iter().all(|g| g.is_homogeneous());
    let kept: Vec<Polynomial> = if homogeneous || n >= MAX_VARS {
        let r = ring.with_order(order);
        let tmp = Ideal::new(
            &r,
            gens.iter().map(|g| g.map_into(&r)).collect::<Result<_>>()?,
        )?
        .with_options(like.options().clone());
        tmp.gb()?
            .elements()
            .iter()
            .filter(|g| g.support() & mask == 0)
            .map(|g| g.map_into(ring))
            .collect::<Result<_>>()?
    } else {
        let mut names = ring.names().to_vec();
        names.push(ring.fresh_name("h"));
        let hr = PolyRing::new(&names, None, &[], order)?;
        let homog = gens
            .iter()
            .map(|g| {
                let d = g.total_degree();
                Polynomial::from_terms(
                    &hr,
                    g.terms().iter().map(|(c, m)| {
                        let mut m = *m;
                        m.set_exp(n, (d - m.degree()) as u16);
                        (c.clone(), m)
                    }),
                )
            })
            .collect();
        let tmp = Ideal::new(&hr, homog)?.with_options(like.options().clone());
        tmp.gb()?
            .elements()
            .iter()
            .filter(|g| g.support() & mask == 0)
            .map(|g| {
                Polynomial::from_terms(
                    ring,
                    g.terms().iter().map(|(c, m)| {
                        let mut m = *m;
                        m.set_exp(n, 0);
                        (c.clone(), m)
                    }),
                )
            })
            .collect()
    };
    let kept = kept
        .into_iter()
        .filter(|g| !g.is_zero())
        .map(|g| g.map_into(target).map(|p| p.monic()))
        .collect::<Result<Vec<_>>>()?;
    like.derive(kept)
}

/// `I ∩ J` by eliminating `w` from `w·I + (1 − w)·J`.
pub fn intersect(i: &Ideal, j: &Ideal) -> Result<Ideal> {
    if !i.ring().same_variables(j.ring()) || i.ring().order() != j.ring().order() {
        return Err(Error::RingMismatch(format!(
            "{:?} vs {:?}",
            i.ring(),
            j.ring()
        )));
    }
    if i.is_zero() || j.is_zero() {
        return Ok(Ideal::zero(i.ring()).with_options(i.options().clone()));
    }
    let (ext, _) = extended(i.ring(), &["w"])?;
    let w = Polynomial::var(&ext, 0);
    let one_minus_w = &Polynomial::one(&ext) - &w;
    let mut gens = Vec::new();
    for f in i.generators() {
        gens.push(&w * &f.map_into(&ext)?);
    }
    for g in j.generators() {
        gens.push(&one_minus_w * &g.map_into(&ext)?);
    }
    eliminate_mask(&ext, 1, gens, i.ring(), i)
}

/// `I : ⟨g⟩` for a single polynomial.
pub fn colon_poly(i: &Ideal, g: &Polynomial) -> Result<Ideal> {
    if g.is_zero() {
        return Err(Error::ZeroInput("colon by the zero ideal".into()));
    }
    if g.is_constant() {
        return Ok(i.clone());
    }
    if i.contains_poly(g)? {
        return Ok(Ideal::unit(i.ring()).with_options(i.options().clone()));
    }
    let meet = intersect(i, &Ideal::principal(g))?;
    let gens = meet
        .generators()
        .iter()
        .map(|h| {
            h.exact_div(g)
                .ok_or_else(|| Error::Inconsistent(format!("{g} does not divide {h} in I ∩ <g>")))
        })
        .collect::<Result<Vec<_>>>()?;
    i.derive(gens)
}

/// `I : J = ⋂_g (I : g)` over the generators of `J`.
pub fn colon(i: &Ideal, j: &Ideal) -> Result<Ideal> {
    let gens: Vec<&Polynomial> = j.generators().iter().filter(|g| !g.is_zero()).collect();
    if gens.is_empty() {
        return Err(Error::ZeroInput("colon by the zero ideal".into()));
    }
    let mut acc: Option<Ideal> = None;
    for g in gens {
        let q = colon_poly(i, g)?;
        acc = Some(match acc {
            None => q,
            Some(a) if a.is_unit()? => q,
            Some(a) if q.is_unit()? => a,
            Some(a) => intersect(&a, &q)?,
        });
    }
    acc.unwrap().reduced()
}

/// `I : f^∞` by eliminating `w` from `I + ⟨1 − w·f⟩`.
pub fn saturate(i: &Ideal, f: &Polynomial) -> Result<Ideal> {
    if f.is_zero() {
        return Err(Error::ZeroInput("saturation by zero".into()));
    }
    if f.is_constant() {
        return Ok(i.clone());
    }
    let (ext, _) = extended(i.ring(), &["w"])?;
    let w = Polynomial::var(&ext, 0);
    let mut gens = i
        .generators()
        .iter()
        .map(|g| g.map_into(&ext))
        .collect::<Result<Vec<_>>>()?;
    gens.push(&Polynomial::one(&ext) - &(&w * &f.map_into(&ext)?));
    eliminate_mask(&ext, 1, gens, i.ring(), i)
}

/// `I ∩ k[remaining variables]`, expressed in `I`'s ring.
pub fn eliminate(i: &Ideal, vars: &[usize]) -> Result<Ideal> {
    if vars.is_empty() {
        return Ok(i.clone());
    }
    for &v in vars {
        if v >= i.ring().nvars() {
            return Err(Error::InvalidArgument(format!(
                "variable index {v} out of range"
            )));
        }
    }
    eliminate_mask(
        i.ring(),
        PolyRing::mask_of(vars),
        i.generators().to_vec(),
        i.ring(),
        i,
    )
}

/// Largest set of variables containing the support of no leading monomial.
fn max_independent_set(lms: &[Monomial], n: usize) -> usize {
    let supports: Vec<u32> = lms.iter().map(|m| m.support()).collect();
    fn rec(v: usize, n: usize, chosen: u32, size: usize, supports: &[u32], best: &mut usize) {
        if size + (n - v) <= *best {
            return;
        }
        if v == n {
            *best = size;
            return;
        }
        let with = chosen | (1 << v);
        if !supports.iter().any(|s| s & !with == 0) {
            rec(v + 1, n, with, size + 1, supports, best);
        }
        rec(v + 1, n, chosen, size, supports, best);
    }
    let mut best = 0;
    rec(0, n, 0, 0, &supports, &mut best);
    best
}

/// Krull dimension of `R/I`.
pub fn dimension(i: &Ideal) -> Result<usize> {
    let gb = i.gb()?;
    if gb.is_unit() {
        return Err(Error::UnitIdeal);
    }
    Ok(max_independent_set(
        &gb.leading_monomials(),
        i.ring().nvars(),
    ))
}

/// `nvars − dim(R/I)`.
pub fn height(i: &Ideal) -> Result<usize> {
    Ok(i.ring().nvars() - dimension(i)?)
}

/// One accepted element of a test ideal.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TestStep {
    pub step: usize,
    /// Integer coefficients on the generators of `I`; empty for a
    /// user-supplied element.
    pub coefficients: Vec<i64>,
    pub height: usize,
}

/// An ideal `J ⊆ I` generated by a regular sequence of length `height(I)`.
#[derive(Clone, Debug)]
pub struct TestIdeal {
    pub ideal: Ideal,
    pub certificate: Vec<TestStep>,
    pub seed: Option<u64>,
}

/// Attempts per support size before widening the combination.
const ATTEMPTS_PER_SIZE: usize = 4;
/// Extra full-support attempts once every support size has been tried.
const EXTRA_FULL_ATTEMPTS: usize = 16;

impl TestIdeal {
    /// Checks a user-supplied `J` against `I`: `J ⊆ I`, `|gens(J)| =
    /// height(I)`, and every prefix of length `k` has height `k`. In a
    /// polynomial ring the prefix heights certify a regular sequence.
    pub fn validate(i: &Ideal, j: &Ideal) -> Result<TestIdeal> {
        if !i.contains(j)? {
            return Err(Error::InvalidTestIdeal("J is not contained in I".into()));
        }
        let h = height(i)?;
        let gens: Vec<Polynomial> = j.generators().to_vec();
        if gens.len() != h {
            return Err(Error::InvalidTestIdeal(format!(
                "J has {} generators but height(I) = {h}",
                gens.len()
            )));
        }
        let mut certificate = Vec::new();
        for k in 1..=h {
            let prefix = i.derive(gens[..k].to_vec())?;
            let hk = height(&prefix)?;
            if hk != k {
                return Err(Error::InvalidTestIdeal(format!(
                    "prefix of length {k} has height {hk}; not a regular sequence"
                )));
            }
            certificate.push(TestStep {
                step: k,
                coefficients: Vec::new(),
                height: hk,
            });
        }
        Ok(TestIdeal {
            ideal: j.clone(),
            certificate,
            seed: None,
        })
    }

    pub fn generators(&self) -> &[Polynomial] {
        self.ideal.generators()
    }
}

/// Builds `J ⊆ I` from seeded random small-integer combinations of the
/// generators of `I`, accepting an element only if it raises the height of
/// the prefix by one. Combinations start sparse and widen on failure.
pub fn build_test_ideal(i: &Ideal, seed: u64) -> Result<TestIdeal> {
    if i.is_zero() {
        return Err(Error::InvalidTestIdeal("I is the zero ideal".into()));
    }
    if i.is_unit()? {
        return Err(Error::InvalidTestIdeal("I is the unit ideal".into()));
    }
    let h = height(i)?;
    let gens: Vec<&Polynomial> = i.generators().iter().filter(|g| !g.is_zero()).collect();
    let ngen = gens.len();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut chosen: Vec<Polynomial> = Vec::new();
    let mut certificate = Vec::new();
    let budget = ATTEMPTS_PER_SIZE * ngen + EXTRA_FULL_ATTEMPTS;
    for step in 1..=h {
        let mut accepted = false;
        for attempt in 0..budget {
            let size = (1 + attempt / ATTEMPTS_PER_SIZE).min(ngen);
            let mut coeffs = vec![0i64; ngen];
            for idx in sample(&mut rng, ngen, size) {
                let mag = rng.gen_range(1..=3i64);
                coeffs[idx] = if rng.gen_bool(0.5) { mag } else { -mag };
            }
            let cand = gens
                .iter()
                .zip(&coeffs)
                .filter(|(_, c)| **c != 0)
                .fold(Polynomial::zero(i.ring()), |acc, (g, c)| {
                    &acc + &g.scale(&rat(*c))
                });
            if cand.is_zero() {
                continue;
            }
            let mut trial = chosen.clone();
            trial.push(cand.clone());
            let hk = height(&i.derive(trial)?)?;
            if hk == step {
                chosen.push(cand);
                certificate.push(TestStep {
                    step,
                    coefficients: coeffs,
                    height: hk,
                });
                accepted = true;
                break;
            }
        }
        if !accepted {
            return Err(Error::InvalidTestIdeal(format!(
                "retry budget of {budget} exhausted at step {step} of {h}"
            )));
        }
    }
    Ok(TestIdeal {
        ideal: i.derive(chosen)?,
        certificate,
        seed: Some(seed),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring() -> Arc<PolyRing> {
        PolyRing::plain(&["x", "y", "z", "t"]).unwrap()
    }

    fn id(s: &str) -> Ideal {
        Ideal::parse(&ring(), s).unwrap()
    }

    fn same(a: &Ideal, b: &Ideal) -> bool {
        a.equals(b).unwrap()
    }

    #[test]
    fn intersection_examples() {
        assert!(same(&intersect(&id("x"), &id("y")).unwrap(), &id("x*y")));
        let i = id("x^2 - y, z*t");
        assert!(same(&intersect(&i, &i).unwrap(), &i));
        assert!(same(&intersect(&id("x^2"), &id("x")).unwrap(), &id("x^2")));
    }

    #[test]
    fn colon_examples() {
        assert!(same(
            &colon(&id("x^2, x*y"), &id("x")).unwrap(),
            &id("x, y")
        ));
        let i = id("x^2 - y*z, t");
        assert!(same(&colon(&i, &id("1")).unwrap(), &i));
        assert!(matches!(colon(&i, &id("0")), Err(Error::ZeroInput(_))));
    }

    #[test]
    fn saturation_examples() {
        let r = ring();
        let x = Polynomial::var(&r, 0);
        assert!(saturate(&id("x^2, x*y"), &x).unwrap().is_unit().unwrap());
        let i = id("x*y - z^2");
        assert!(same(&saturate(&i, &Polynomial::one(&r)).unwrap(), &i));
        let t = Polynomial::var(&r, 3);
        assert!(same(&saturate(&id("t*x"), &t).unwrap(), &id("x")));
        assert!(saturate(&i, &Polynomial::zero(&r)).is_err());
    }

    #[test]
    fn elimination_examples() {
        let e = eliminate(&id("x - t, y - t^2"), &[3]).unwrap();
        assert!(same(&e, &id("y - x^2")));
        assert!(e.generators().iter().all(|g| !g.involves(3)));
        let i = id("x*y, z");
        assert!(same(&eliminate(&i, &[]).unwrap(), &i));
        assert!(eliminate(&id("x"), &[0]).unwrap().is_zero());
    }

    #[test]
    fn dimension_examples() {
        let r = PolyRing::plain(&["x", "y", "z"]).unwrap();
        let i = Ideal::parse(&r, "x*y, z*(z - x)").unwrap();
        assert_eq!(dimension(&i).unwrap(), 1);
        assert_eq!(dimension(&Ideal::zero(&r)).unwrap(), 3);
        assert!(matches!(dimension(&Ideal::unit(&r)), Err(Error::UnitIdeal)));
    }

    #[test]
    fn test_ideal_examples() {
        let j = build_test_ideal(&id("x, y"), 1).unwrap();
        assert_eq!(j.generators().len(), 2);
        assert!(same(&j.ideal, &id("x, y")));
        let p = id("x^2*y - z*t");
        let j = build_test_ideal(&p, 7).unwrap();
        assert_eq!(j.generators().len(), 1);
        assert!(same(&j.ideal, &p));
        assert!(TestIdeal::validate(&id("x, y"), &id("x, y")).is_ok());
        assert!(TestIdeal::validate(&id("x, y"), &id("x, x + x*y")).is_err());
        assert!(TestIdeal::validate(&id("x, y"), &id("x, z")).is_err());
    }

    #[test]
    fn test_ideal_is_deterministic() {
        let i = id("x*y, x*z, y*z");
        let a = build_test_ideal(&i, 3).unwrap();
        let b = build_test_ideal(&i, 3).unwrap();
        assert_eq!(a.generators(), b.generators());
        assert_eq!(a.certificate, b.certificate);
        assert!(i.contains(&a.ideal).unwrap());
        assert_eq!(a.generators().len(), height(&i).unwrap());
    }
}
