#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::sync::Arc;

use conelab::ideal::Ideal;
use conelab::ideal_ops::{colon, colon_poly, dimension, eliminate, intersect, saturate};
use conelab::poly::{gcd, squarefree_decomposition};
use conelab::resolution::free_resolution;
use conelab::script::{self, SessionScript};
use conelab::{Monomial, PolyRing, Polynomial};
use num_rational::BigRational;
use proptest::prelude::*;
use proptest::test_runner::TestCaseError;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn corpus(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("corpus")
        .join(name)
}

pub fn load(name: &str) -> SessionScript {
    let src = std::fs::read_to_string(corpus(name)).unwrap();
    script::parse(&src).unwrap_or_else(|e| panic!("{name}: {e}"))
}

pub fn binding(s: &SessionScript, name: &str) -> Ideal {
    Ideal::new(&s.ring, s.ideal(name).unwrap().to_vec()).unwrap()
}

/// The corpus hypersurface families, by file stem.
pub fn hypersurfaces() -> Vec<(String, Polynomial)> {
    let mut out: Vec<(String, Polynomial)> = std::fs::read_dir(corpus("hypersurfaces"))
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == "cone"))
        .map(|p| {
            let s = script::parse(&std::fs::read_to_string(&p).unwrap()).unwrap();
            let stem = p.file_stem().unwrap().to_string_lossy().into_owned();
            (stem, s.poly("f").unwrap().clone())
        })
        .collect();
    out.sort_by(|a, b| a.0.cmp(&b.0));
    out
}

pub fn ring(n: usize) -> Arc<PolyRing> {
    let names = ["x", "y", "z", "w", "v", "u"];
    PolyRing::plain(&names[..n]).unwrap()
}

pub fn poly(
    ring: Arc<PolyRing>,
    max_terms: usize,
    max_exp: u16,
) -> impl Strategy<Value = Polynomial> {
    let n = ring.nvars();
    prop::collection::vec(
        (
            (-3i64..=3).prop_filter("nonzero", |c| *c != 0),
            prop::collection::vec(0..=max_exp, n),
        ),
        1..=max_terms,
    )
    .prop_map(move |ts| {
        Polynomial::from_terms(
            &ring,
            ts.into_iter().map(|(c, e)| {
                (
                    BigRational::from_integer(c.into()),
                    Monomial::from_exponents(&e),
                )
            }),
        )
    })
}

pub fn ideal(ring: Arc<PolyRing>, gens: usize) -> impl Strategy<Value = Ideal> {
    prop::collection::vec(poly(ring.clone(), 3, 2), 1..=gens)
        .prop_map(move |g| Ideal::new(&ring, g).unwrap())
}

/// Ideals small enough for elimination-heavy laws: two multilinear
/// trinomials, two binomials of degree at most six, or one trinomial.
/// Dense pairs of quartics already make intersections take minutes.
pub fn small_ideal(ring: Arc<PolyRing>) -> impl Strategy<Value = Ideal> {
    let gens = |terms, exp, n| {
        let r = ring.clone();
        prop::collection::vec(poly(ring.clone(), terms, exp), 1..=n)
            .prop_map(move |g| Ideal::new(&r, g).unwrap())
    };
    prop_oneof![gens(3, 1, 2), gens(2, 2, 2), gens(3, 2, 1)]
}

/// Nonzero homogeneous polynomial of degree `d` with at most `terms` terms.
pub fn homogeneous(ring: Arc<PolyRing>, d: u16, terms: usize) -> impl Strategy<Value = Polynomial> {
    let n = ring.nvars();
    prop::collection::vec(
        ((1i64..=3), prop::collection::vec(0..n, d as usize)),
        1..=terms,
    )
    .prop_map(move |ts| {
        let p = Polynomial::from_terms(
            &ring,
            ts.into_iter().map(|(c, vars)| {
                let mut m = Monomial::one();
                for v in vars {
                    m = m.mul(&Monomial::var(v));
                }
                (BigRational::from_integer(c.into()), m)
            }),
        );
        if p.is_zero() {
            Polynomial::var(&ring, 0).pow(d as u32)
        } else {
            p
        }
    })
}

fn err(e: conelab::Error) -> TestCaseError {
    TestCaseError::fail(e.to_string())
}

/// Brute-force dimension: the largest set of variables `S` with
/// `I ∩ k[S] = 0`, each subset tested by elimination.
pub fn dimension_by_elimination(i: &Ideal) -> usize {
    let n = i.ring().nvars();
    let mut best = 0;
    for s in 0u32..(1 << n) {
        let size = s.count_ones() as usize;
        if size <= best {
            continue;
        }
        let rest: Vec<usize> = (0..n).filter(|v| s & (1 << v) == 0).collect();
        if eliminate(i, &rest).unwrap().is_zero() {
            best = size;
        }
    }
    best
}

/// `n − depth(R/I)`, with the depth found by adding generic linear forms
/// while each is a nonzerodivisor (valid for graded `I`).
pub fn pd_by_depth(i: &Ideal, seed: u64) -> usize {
    let ring = i.ring();
    let n = ring.nvars();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cur = i.clone();
    let mut depth = 0;
    while depth < n {
        let l = Polynomial::from_terms(
            ring,
            (0..n).map(|v| {
                (
                    BigRational::from_integer(rng.gen_range(1i64..1000).into()),
                    Monomial::var(v),
                )
            }),
        );
        if !cur.contains(&colon_poly(&cur, &l).unwrap()).unwrap() {
            break;
        }
        cur = cur.add_generators(&[l]).unwrap();
        depth += 1;
    }
    n - depth
}

#[allow(clippy::eq_op)]
pub fn check_ring_laws(
    a: &Polynomial,
    b: &Polynomial,
    c: &Polynomial,
) -> Result<(), TestCaseError> {
    prop_assert_eq!(&(&(a + b) + c), &(a + &(b + c)));
    prop_assert_eq!(&(a * b), &(b * a));
    prop_assert_eq!(&(a * &(b + c)), &(&(a * b) + &(a * c)));
    prop_assert!((a - a).is_zero());
    for v in 0..a.ring().nvars() {
        let lhs = (a * b).differentiate(v);
        let rhs = &(&a.differentiate(v) * b) + &(a * &b.differentiate(v));
        prop_assert_eq!(lhs, rhs);
    }
    let sub = [(0usize, c.clone())];
    let (sa, sb) = (
        a.substitute(&sub).map_err(err)?,
        b.substitute(&sub).map_err(err)?,
    );
    prop_assert_eq!((a * b).substitute(&sub).map_err(err)?, &sa * &sb);
    prop_assert_eq!((a + b).substitute(&sub).map_err(err)?, &sa + &sb);
    Ok(())
}

pub fn check_gcd_and_squarefree(
    a: &Polynomial,
    b: &Polynomial,
    c: &Polynomial,
) -> Result<(), TestCaseError> {
    if a.is_zero() || b.is_zero() || c.is_zero() {
        return Ok(());
    }
    let (ac, bc) = (a * c, b * c);
    let g = gcd(&ac, &bc);
    prop_assert!(ac.exact_div(&g).is_some() && bc.exact_div(&g).is_some());
    prop_assert!(
        g.exact_div(c).is_some(),
        "common factor {} lost in gcd {}",
        c,
        g
    );
    let f = &(a * &b.pow(2)) * &c.pow(3);
    if f.is_constant() {
        return Ok(());
    }
    let all = (1u32 << f.ring().nvars()) - 1;
    let parts = squarefree_decomposition(&f, all).map_err(err)?;
    let mut prod = Polynomial::one(f.ring());
    for (m, g) in &parts {
        prop_assert!(conelab::poly::repeated_part(g, all).is_none());
        prod = &prod * &g.pow(*m);
    }
    prop_assert!(conelab::poly::proportional(&prod, &f), "{} vs {}", prod, f);
    Ok(())
}

pub fn check_groebner(i: &Ideal, h: &Polynomial) -> Result<(), TestCaseError> {
    let gb = i.gb().map_err(err)?;
    prop_assert!(gb.all_spolys_reduce_to_zero());
    prop_assert!(gb.is_reduced());
    for g in i.generators() {
        prop_assert!(gb.normal_form(g).map_err(err)?.is_zero());
    }
    let r = gb.normal_form(h).map_err(err)?;
    prop_assert_eq!(&gb.normal_form(&r).map_err(err)?, &r);
    prop_assert!(gb.contains(&(h - &r)).map_err(err)?);
    let plain = conelab::groebner::GbOptions {
        criteria: false,
        ..Default::default()
    };
    let other =
        conelab::groebner::GroebnerBasis::compute(i.ring(), i.generators(), &plain).map_err(err)?;
    prop_assert_eq!(other.elements(), gb.elements());
    Ok(())
}

pub fn check_ideal_laws(
    i: &Ideal,
    j: &Ideal,
    k: &Ideal,
    f: &Polynomial,
) -> Result<(), TestCaseError> {
    let ij = intersect(i, j).map_err(err)?;
    prop_assert!(i.contains(&ij).map_err(err)? && j.contains(&ij).map_err(err)?);
    prop_assert!(ij.contains(&i.product(j).map_err(err)?).map_err(err)?);
    if j.is_zero() || k.is_zero() {
        prop_assert!(colon(i, &Ideal::zero(i.ring())).is_err());
        return Ok(());
    }
    let q = colon(i, j).map_err(err)?;
    prop_assert!(q.contains(i).map_err(err)?);
    prop_assert!(i.contains(&q.product(j).map_err(err)?).map_err(err)?);
    let lhs = colon(i, &j.sum(k).map_err(err)?).map_err(err)?;
    let rhs = intersect(&q, &colon(i, k).map_err(err)?).map_err(err)?;
    prop_assert!(lhs.equals(&rhs).map_err(err)?);
    if !f.is_zero() {
        let q1 = colon_poly(i, f).map_err(err)?;
        let sat = saturate(i, f).map_err(err)?;
        prop_assert!(q1.contains(i).map_err(err)? && sat.contains(&q1).map_err(err)?);
        prop_assert!(sat
            .equals(&colon_poly(&sat, f).map_err(err)?)
            .map_err(err)?);
    }
    Ok(())
}

pub fn check_dimension(i: &Ideal) -> Result<(), TestCaseError> {
    if i.is_unit().map_err(err)? {
        return Ok(());
    }
    prop_assert_eq!(dimension(i).map_err(err)?, dimension_by_elimination(i));
    Ok(())
}

pub fn check_resolution(i: &Ideal) -> Result<(), TestCaseError> {
    if i.is_unit().map_err(err)? {
        return Ok(());
    }
    let r = free_resolution(i).map_err(err)?;
    prop_assert!(r.is_complex());
    prop_assert!(r.length() <= i.ring().nvars());
    prop_assert_eq!(r.ranks[0], 1);
    if !i.is_zero() {
        prop_assert_eq!(r.euler_characteristic(), 0);
        prop_assert!(r
            .first_syzygy_ideal()
            .map_err(err)?
            .equals(i)
            .map_err(err)?);
    }
    if r.graded {
        prop_assert!(r.minimal);
        prop_assert_eq!(r.length(), pd_by_depth(i, 7));
    }
    Ok(())
}
