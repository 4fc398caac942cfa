mod common;

use common::*;
use conelab::flatness::{is_flat_over_germ, is_internally_flat, Criterion};
use conelab::ideal::Ideal;
use conelab::ideal_ops::{build_test_ideal, dimension, height, TestIdeal};
use conelab::normal_cone::{
    cone_fiber_compare, rees_normal_cone, tangent_star_ideal, FiberOutcome,
};
use conelab::resolution::{free_resolution, is_cohen_macaulay, projective_dimension};
use conelab::script::{self, parse_poly_list};
use conelab::Polynomial;

fn directions(ring: &std::sync::Arc<conelab::PolyRing>) -> Vec<Polynomial> {
    ring.directions()
        .into_iter()
        .map(|u| Polynomial::var(ring, u))
        .collect()
}

#[test]
fn three_lines_tangent_star_is_the_printed_ideal() {
    let s = load("ex51.cone");
    let cone = tangent_star_ideal(&binding(&s, "X")).unwrap();
    let printed = binding(&s, "TS");
    assert!(cone.ideal.equals(&printed).unwrap());
    assert!(cone.is_cone());
    // Over the center: setting the directions to zero gives back X.
    let u = directions(&s.ring);
    let lhs = cone.ideal.add_generators(&u).unwrap();
    let rhs = binding(&s, "X").add_generators(&u).unwrap();
    assert!(lhs.equals(&rhs).unwrap());
}

#[test]
fn three_lines_height_pd_and_cm() {
    let src = std::fs::read_to_string(corpus("ex51_ts.ideal")).unwrap();
    let s = script::parse(&src).unwrap();
    let ts = Ideal::new(&s.ring, s.ideal("I").unwrap().to_vec()).unwrap();
    assert_eq!(s.ring.nvars(), 6);
    assert_eq!(height(&ts).unwrap(), 4);
    assert_eq!(dimension(&ts).unwrap(), 2);
    let (pd, exact) = projective_dimension(&ts).unwrap();
    assert!(exact);
    assert_eq!(pd, 5);
    assert_eq!(pd, pd_by_depth(&ts, 11));
    let cm = is_cohen_macaulay(&ts).unwrap();
    assert_eq!(cm.verdict, Some(false));
    assert_eq!((cm.pd, cm.height), (5, 4));
    let res = free_resolution(&ts).unwrap();
    assert!(res.is_complex() && res.minimal);
    assert_eq!(res.euler_characteristic(), 0);
}

#[test]
fn three_lines_rees_presentation_agrees() {
    // Y = X ×_k X in coordinates (x, x + u); Z = the diagonal u = 0.
    let s = load("ex51.cone");
    let r = &s.ring;
    let iy = Ideal::new(
        r,
        parse_poly_list(
            r,
            "x*y, z*(z - x), (x + a)*(y + b), (z + c)*(z + c - x - a)",
        )
        .unwrap(),
    )
    .unwrap();
    let (cone, fiber) = rees_normal_cone(&iy, &directions(r)).unwrap();
    let out = cone.ring().clone();
    let renamed: Vec<Polynomial> = binding(&s, "TS")
        .generators()
        .iter()
        .map(|g| {
            let text = g
                .to_string()
                .replace('a', "y1")
                .replace('b', "y2")
                .replace('c', "y3");
            script::parse_poly(&out, &text).unwrap()
        })
        .chain(directions(r).iter().map(|u| u.map_into(&out).unwrap()))
        .collect();
    assert_eq!(fiber.len(), 3);
    assert!(cone.equals(&Ideal::new(&out, renamed).unwrap()).unwrap());
}

fn check_not_internally_flat(i: &Ideal, j: &TestIdeal) {
    let rep = is_internally_flat(i, j, true).unwrap();
    assert_eq!(rep.criterion, Criterion::InternallyFlat);
    assert!(!rep.verdict);
    assert!(rep.witness_is_valid(i).unwrap());
    assert_eq!(rep.saturated_verdict, Some(false));
}

#[test]
fn degenerating_conic_family() {
    let fam = load("ex52_family.cone");
    let cone = tangent_star_ideal(&binding(&fam, "X")).unwrap();
    assert!(cone.ideal.equals(&binding(&fam, "TS")).unwrap());

    let s = load("ex52.cone");
    let i = binding(&s, "I");
    assert_eq!(height(&i).unwrap(), 4);
    let j = TestIdeal::validate(&i, &binding(&s, "J")).unwrap();
    assert_eq!(j.certificate.len(), 4);
    check_not_internally_flat(&i, &j);
    for seed in 0..3 {
        check_not_internally_flat(&i, &build_test_ideal(&i, seed).unwrap());
    }
    assert!(!is_flat_over_germ(&i).unwrap().verdict);
}

#[test]
fn plane_triple_point_family() {
    let fam = load("ex53_family.cone");
    let x = binding(&fam, "X");
    let cone = tangent_star_ideal(&x).unwrap();
    assert!(cone.ideal.equals(&binding(&fam, "TS")).unwrap());
    let cmp = cone_fiber_compare(&cone, &x).unwrap();
    assert_eq!(cmp.outcome, FiberOutcome::ConeFiberStrictlyLarger);
    let w = cmp.certificate.unwrap();
    assert!(cmp.fiber_cone.contains_poly(&w).unwrap());
    assert!(!cmp.cone_fiber.contains_poly(&w).unwrap());

    let s = load("ex53.cone");
    let i = binding(&s, "I");
    assert_eq!(height(&i).unwrap(), 4);
    let j = TestIdeal::validate(&i, &binding(&s, "J")).unwrap();
    check_not_internally_flat(&i, &j);
    for seed in 0..3 {
        check_not_internally_flat(&i, &build_test_ideal(&i, seed).unwrap());
    }
}

#[test]
fn three_lines_betti_numbers_are_stable() {
    use num_rational::BigRational;
    use rand::{seq::SliceRandom, Rng, SeedableRng};

    let src = std::fs::read_to_string(corpus("ex51_ts.ideal")).unwrap();
    let s = script::parse(&src).unwrap();
    let ring = s.ring.clone();
    let gens = s.ideal("I").unwrap().to_vec();
    let reference = free_resolution(&Ideal::new(&ring, gens.clone()).unwrap()).unwrap();
    assert_eq!(reference.ranks, vec![1, 6, 14, 15, 7, 1]);
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
    for _ in 0..3 {
        let mut g = gens.clone();
        g.shuffle(&mut rng);
        // x_i -> x_i + Σ_{j>i} c_ij x_j keeps the ideal graded.
        let n = ring.nvars();
        let change: Vec<(usize, Polynomial)> = (0..n)
            .map(|i| {
                let mut p = Polynomial::var(&ring, i);
                for j in i + 1..n {
                    let c = BigRational::from_integer(rng.gen_range(-3i64..=3).into());
                    p = &p + &Polynomial::var(&ring, j).scale(&c);
                }
                (i, p)
            })
            .collect();
        let moved: Vec<Polynomial> = g.iter().map(|f| f.substitute(&change).unwrap()).collect();
        let res = free_resolution(&Ideal::new(&ring, moved).unwrap()).unwrap();
        assert_eq!(res.betti_table(), reference.betti_table());
    }
}
