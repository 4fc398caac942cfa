//! Normal cone ideals: deformation to the normal cone, the (relative)
//! tangent star cone through the diagonal, the polarization equations of a
//! hypersurface, and the Rees-algebra presentation for general centers.

use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ideal::Ideal;
use crate::ideal_ops::saturate;
use crate::poly::{squarefree_decomposition, PolyRing, Polynomial};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ConeProvenance {
    Deformation,
    Polarization,
    Rees,
}

/// Ideal of a cone inside the trivial bundle with fiber coordinates given
/// by the ring's direction variables.
#[derive(Clone, Debug)]
pub struct ConePresentation {
    pub ring: Arc<PolyRing>,
    pub ideal: Ideal,
    pub provenance: ConeProvenance,
}

impl ConePresentation {
    /// Bitmask of the direction variables.
    pub fn direction_mask(&self) -> u32 {
        PolyRing::mask_of(&self.ring.directions())
    }

    /// Every generator is homogeneous in the direction variables.
    pub fn is_cone(&self) -> bool {
        let mask = self.direction_mask();
        self.ideal
            .generators()
            .iter()
            .all(|g| g.is_homogeneous_in(mask))
    }
}

fn direction_ring(ring: &Arc<PolyRing>) -> Result<&Arc<PolyRing>> {
    if ring.has_directions() {
        Ok(ring)
    } else {
        Err(Error::NoDirections)
    }
}

/// Ideal of lowest-degree forms (in the direction variables) of all
/// elements of `q`: substitute `u ↦ s·u`, saturate by `s`, set `s = 0`.
pub fn initial_form_ideal(q: &Ideal) -> Result<Ideal> {
    let ring = direction_ring(q.ring())?;
    let ext = ring.extend_front(&[ring.fresh_name("s")])?;
    let s = Polynomial::var(&ext, 0);
    let mut scale = Vec::new();
    for u in ring.directions() {
        let uu = ext.var_index(ring.name(u))?;
        scale.push((uu, &s * &Polynomial::var(&ext, uu)));
    }
    let lifted = q
        .generators()
        .iter()
        .map(|g| g.map_into(&ext)?.substitute_into(&scale, &ext))
        .collect::<Result<Vec<_>>>()?;
    let deformed = Ideal::new(&ext, lifted)?.with_options(q.options().clone());
    let sat = saturate(&deformed, &s)?;
    let zero = [(0usize, Polynomial::zero(&ext))];
    let special = sat
        .generators()
        .iter()
        .map(|g| g.substitute_into(&zero, &ext)?.map_into(ring))
        .collect::<Result<Vec<_>>>()?;
    q.derive(special)?.reduced()
}

/// The ideal of the (relative) tangent star cone of `X = V(ix)`.
///
/// The second copy of `X` is written in coordinates `x + u`, so the diagonal
/// is `u = 0` and the parameter, if any, is shared by both copies (fiber
/// product over the base). If `ix`'s ring has no direction variables they
/// are added (see [`PolyRing::tangent_ring`]).
pub fn tangent_star_ideal(ix: &Ideal) -> Result<ConePresentation> {
    let ring = ix.ring().tangent_ring()?;
    let ix = ix.map_into(&ring)?;
    let dmask = PolyRing::mask_of(&ring.directions());
    if ix.generators().iter().any(|g| g.support() & dmask != 0) {
        return Err(Error::InvalidArgument(
            "the ideal of X must not involve direction variables".into(),
        ));
    }
    if ix.is_unit()? {
        return Err(Error::UnitIdeal);
    }
    let shift: Vec<(usize, Polynomial)> = ring
        .direction_pairs()
        .into_iter()
        .map(|(x, u)| (x, &Polynomial::var(&ring, x) + &Polynomial::var(&ring, u)))
        .collect();
    let mut gens = ix.generators().to_vec();
    for g in ix.generators() {
        gens.push(g.substitute_into(&shift, &ring)?);
    }
    let q = ix.derive(gens)?;
    Ok(ConePresentation {
        ring: ring.clone(),
        ideal: initial_form_ideal(&q)?,
        provenance: ConeProvenance::Deformation,
    })
}

/// `P^k f` with `P = Σ u_i ∂/∂x_i` over the ring's direction pairs.
pub fn polarize(f: &Polynomial, k: u32) -> Result<Polynomial> {
    let pairs = direction_ring(f.ring())?.direction_pairs();
    let mut cur = f.clone();
    for _ in 0..k {
        if cur.is_zero() {
            break;
        }
        let mut next = Polynomial::zero(f.ring());
        for &(x, u) in &pairs {
            let d = cur.differentiate(x);
            if !d.is_zero() {
                next = &next + &(&d * &Polynomial::var(f.ring(), u));
            }
        }
        cur = next;
    }
    Ok(cur)
}

/// `[f, S_1 f, S_2 f, …]` up to the first vanishing `S_m f`, where
///
/// `S_m f = (Π_{m'<m} g_{m'}^{m'})² · P^{2m−1}(Π_{m'≥m} g_{m'}^{m'+m−1})`
///
/// and `g_m` is the product of the factors of `f` of multiplicity `m`
/// (taken over the base variables and the parameter, so vertical factors
/// count as components). `f` must live in a ring with directions.
pub fn hypersurface_ts_generators(f: &Polynomial) -> Result<Vec<Polynomial>> {
    let ring = direction_ring(f.ring())?;
    let base = ring.base_vars();
    let base_mask = PolyRing::mask_of(&base);
    if f.support() & PolyRing::mask_of(&ring.directions()) != 0 {
        return Err(Error::InvalidArgument(
            "hypersurface equation must not involve direction variables".into(),
        ));
    }
    if f.is_zero() || f.support() & base_mask == 0 {
        return Err(Error::ConstantInput);
    }
    let mut vars = base_mask;
    if let Some(t) = ring.param() {
        vars |= 1 << t;
    }
    let parts = squarefree_decomposition(f, vars)?;
    let one = Polynomial::one(ring);
    let mut out = vec![f.clone()];
    for m in 1u32.. {
        let low = parts
            .iter()
            .filter(|(k, _)| *k < m)
            .fold(one.clone(), |acc, (k, g)| &acc * &g.pow(*k));
        let high = parts
            .iter()
            .filter(|(k, _)| *k >= m)
            .fold(one.clone(), |acc, (k, g)| &acc * &g.pow(k + m - 1));
        let s = &low.pow(2) * &polarize(&high, 2 * m - 1)?;
        if s.is_zero() {
            break;
        }
        out.push(s);
    }
    Ok(out)
}

/// The tangent star cone of a hypersurface from its polarization equations.
pub fn hypersurface_cone(f: &Polynomial) -> Result<ConePresentation> {
    let ring = f.ring().tangent_ring()?;
    let f = f.map_into(&ring)?;
    let gens = hypersurface_ts_generators(&f)?;
    Ok(ConePresentation {
        ring: ring.clone(),
        ideal: Ideal::new(&ring, gens)?,
        provenance: ConeProvenance::Polarization,
    })
}

/// Normal cone `N_Z Y` for `Y = V(iy)` and `Z = V(iy + ⟨g_1..g_s⟩)`.
///
/// The Rees algebra is presented by eliminating `w` from
/// `iy + ⟨y_i − w·g_i⟩`; adding the ideal of `Z` gives the associated
/// graded ring. The result lives in `iy`'s ring extended by fresh fiber
/// variables `y1..ys` appended at the end; their indices are returned.
pub fn rees_normal_cone(iy: &Ideal, center: &[Polynomial]) -> Result<(Ideal, Vec<usize>)> {
    let ring = iy.ring();
    let mut names: Vec<String> = ring.names().to_vec();
    let mut fiber = Vec::new();
    for k in 1..=center.len() {
        let mut n = format!("y{k}");
        while names.contains(&n) {
            n.push('_');
        }
        fiber.push(names.len());
        names.push(n);
    }
    let param = ring.param().map(|p| ring.name(p).to_string());
    let out_ring = PolyRing::new(
        &names,
        param.as_deref(),
        &[],
        crate::poly::MonomialOrder::Grevlex,
    )?;
    let mut ext_names = vec![out_ring.fresh_name("w")];
    ext_names.extend(names.iter().cloned());
    let ext = PolyRing::new(
        &ext_names,
        param.as_deref(),
        &[],
        crate::poly::MonomialOrder::elimination(&[0]),
    )?;
    let w = Polynomial::var(&ext, 0);
    let mut gens = iy
        .generators()
        .iter()
        .map(|g| g.map_into(&ext))
        .collect::<Result<Vec<_>>>()?;
    for (k, g) in center.iter().enumerate() {
        let y = Polynomial::var(&ext, fiber[k] + 1);
        gens.push(&y - &(&w * &g.map_into(&ext)?));
    }
    let rees = Ideal::new(&ext, gens)?.with_options(iy.options().clone());
    let gb = rees.gb()?;
    let mut cone: Vec<Polynomial> = gb
        .elements()
        .iter()
        .filter(|g| !g.involves(0))
        .map(|g| g.map_into(&out_ring))
        .collect::<Result<_>>()?;
    for g in iy.generators().iter().chain(center) {
        cone.push(g.map_into(&out_ring)?);
    }
    let cone = Ideal::new(&out_ring, cone)?
        .with_options(iy.options().clone())
        .reduced()?;
    Ok((cone, fiber))
}

/// Outcome of comparing the special fiber of a relative cone with the cone
/// of the special fiber.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FiberOutcome {
    Equal,
    ConeFiberStrictlyLarger,
}

#[derive(Clone, Debug)]
pub struct FiberComparison {
    pub outcome: FiberOutcome,
    /// A generator of the fiber cone's ideal that does not vanish on the
    /// special fiber of the family cone.
    pub certificate: Option<Polynomial>,
    pub cone_fiber: Ideal,
    pub fiber_cone: Ideal,
}

/// Compares `C|_{t=0}` with `TS(V(ix|_{t=0}))`. The first ideal is always
/// contained in the second; anything else is an internal inconsistency.
pub fn cone_fiber_compare(cone: &ConePresentation, ix: &Ideal) -> Result<FiberComparison> {
    let ring = &cone.ring;
    let t = ring.require_param()?;
    let zero = [(t, Polynomial::zero(ring))];
    let cone_fiber = cone.ideal.substitute(&zero)?;
    let ix0 = ix.map_into(ring)?.substitute(&zero)?;
    let fiber_cone = tangent_star_ideal(&ix0)?.ideal;
    if let Some(w) = fiber_cone.first_outside(&cone_fiber)? {
        return Err(Error::Inconsistent(format!(
            "special fiber of the family cone contains {w}, which is not in the fiber's cone ideal"
        )));
    }
    let certificate = cone_fiber.first_outside(&fiber_cone)?;
    Ok(FiberComparison {
        outcome: if certificate.is_none() {
            FiberOutcome::Equal
        } else {
            FiberOutcome::ConeFiberStrictlyLarger
        },
        certificate,
        cone_fiber,
        fiber_cone,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::MonomialOrder;
    use crate::script::{parse_poly, parse_poly_list};

    fn ring() -> Arc<PolyRing> {
        PolyRing::new(
            &["x", "y", "a", "b"],
            None,
            &["a", "b"],
            MonomialOrder::Grevlex,
        )
        .unwrap()
    }

    fn p(s: &str) -> Polynomial {
        parse_poly(&ring(), s).unwrap()
    }

    fn ideal(s: &str) -> Ideal {
        Ideal::parse(&ring(), s).unwrap()
    }

    #[test]
    fn polarization_iterates() {
        assert_eq!(polarize(&p("x^2*y"), 0).unwrap(), p("x^2*y"));
        assert_eq!(polarize(&p("x^2*y"), 1).unwrap(), p("2*x*y*a + x^2*b"));
        assert_eq!(polarize(&p("x^3"), 3).unwrap(), p("6*a^3"));
        assert!(polarize(&p("x^3"), 4).unwrap().is_zero());
        let plain = PolyRing::plain(&["x"]).unwrap();
        assert!(matches!(
            polarize(&Polynomial::var(&plain, 0), 1),
            Err(Error::NoDirections)
        ));
    }

    #[test]
    fn polarization_generators() {
        assert_eq!(
            hypersurface_ts_generators(&p("x*y")).unwrap(),
            vec![p("x*y"), p("y*a + x*b")]
        );
        assert_eq!(
            hypersurface_ts_generators(&p("x^2*y")).unwrap(),
            vec![p("x^2*y"), p("2*x*y*a + x^2*b"), p("6*y^2*a^3")]
        );
        let line = PolyRing::new(&["x", "u"], None, &["u"], MonomialOrder::Grevlex).unwrap();
        let q = |s: &str| parse_poly(&line, s).unwrap();
        assert_eq!(
            hypersurface_ts_generators(&q("x^2")).unwrap(),
            vec![q("x^2"), q("2*x*u"), q("6*u^3")]
        );
        assert!(hypersurface_ts_generators(&p("3")).is_err());
    }

    #[test]
    fn initial_forms() {
        let q = ideal("a");
        assert!(initial_form_ideal(&q).unwrap().equals(&q).unwrap());
        let q = ideal("x*b + y*a + a*b");
        let c = initial_form_ideal(&q).unwrap();
        assert!(c.contains_poly(&p("y*a + x*b")).unwrap());
        assert!(initial_form_ideal(&c).unwrap().equals(&c).unwrap());
    }

    #[test]
    fn node_tangent_star() {
        let plain = PolyRing::plain(&["x", "y"]).unwrap();
        let ts = tangent_star_ideal(&Ideal::parse(&plain, "x*y").unwrap()).unwrap();
        assert!(ts.is_cone());
        assert_eq!(ts.provenance, ConeProvenance::Deformation);
        let cone = hypersurface_cone(&parse_poly(&plain, "x*y").unwrap()).unwrap();
        assert!(ts
            .ideal
            .equals(&cone.ideal.map_into(&ts.ring).unwrap())
            .unwrap());
    }

    #[test]
    fn rees_cones() {
        let line = PolyRing::plain(&["x"]).unwrap();
        let x = Polynomial::var(&line, 0);
        let (cone, fiber) = rees_normal_cone(&Ideal::zero(&line), &[x]).unwrap();
        assert_eq!(fiber, vec![1]);
        assert!(cone.generators().iter().all(|g| !g.involves(1)));

        let plane = PolyRing::plain(&["x", "y"]).unwrap();
        let iy = Ideal::parse(&plane, "x*y").unwrap();
        let center = parse_poly_list(&plane, "x, y").unwrap();
        let (cone, fiber) = rees_normal_cone(&iy, &center).unwrap();
        let y1y2 =
            &Polynomial::var(cone.ring(), fiber[0]) * &Polynomial::var(cone.ring(), fiber[1]);
        assert!(cone.contains_poly(&y1y2).unwrap());
    }

    #[test]
    fn smooth_family_fibers_agree() {
        let r = PolyRing::new(&["x", "y", "t"], Some("t"), &[], MonomialOrder::Grevlex).unwrap();
        let f = parse_poly(&r, "x*y - t").unwrap();
        let ix = Ideal::principal(&f);
        let cone = tangent_star_ideal(&ix).unwrap();
        let cmp = cone_fiber_compare(&cone, &ix).unwrap();
        assert_eq!(cmp.outcome, FiberOutcome::Equal);
        assert!(cmp.certificate.is_none());
    }
}
