//! Top Segre class of the relative tangent star cone of a hypersurface
//! family `V(f) → T`, and the test that its components do not coalesce at
//! `t = 0`.
//!
//! For `f = Π f_k^{m_k}` the class is `Σ m_k² [V(f_k)]`. Components with
//! the same multiplicity are grouped into `g_m = Π_{m_k = m} f_k`, which is
//! what a squarefree decomposition returns, so no factorization is needed.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::poly::{
    gcd, proportional, repeated_part, squarefree_decomposition, PolyRing, Polynomial,
};

/// A divisor with multiplicities: `Σ weight · [V(component)]`.
#[derive(Clone, Debug, PartialEq)]
pub struct CycleClass {
    pub terms: Vec<(u32, Polynomial)>,
}

impl CycleClass {
    /// Same weights with proportional components, in any order.
    pub fn equivalent(&self, other: &CycleClass) -> bool {
        self.terms.len() == other.terms.len()
            && self.terms.iter().all(|(w, g)| {
                other
                    .terms
                    .iter()
                    .any(|(w2, g2)| w == w2 && proportional(g, g2))
            })
    }

    /// `Σ √weight · deg(component)` in the variables of `mask`.
    pub fn degree(&self, mask: u32) -> u32 {
        self.terms
            .iter()
            .map(|(w, g)| w.isqrt() * g.degree_in_mask(mask))
            .sum()
    }
}

impl fmt::Display for CycleClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(w, g)| format!("{w}*[{g}]"))
            .collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum CoalescenceCriterion {
    /// Some component does not specialize to a reduced subscheme.
    Reducedness = 1,
    /// Specializations of distinct components share a component.
    Disjointness = 2,
}

#[derive(Clone, Debug)]
pub struct CoalescenceReport {
    /// True when the components do not coalesce.
    pub verdict: bool,
    pub failing_criterion: Option<CoalescenceCriterion>,
    /// A nonconstant common factor of the offending specializations.
    pub certificate: Option<Polynomial>,
    /// The grouped components `(m, g_m)` of the family.
    pub classes: Vec<(u32, Polynomial)>,
}

fn x_block(f: &Polynomial) -> Result<u32> {
    let ring = f.ring();
    let dirs = PolyRing::mask_of(&ring.directions());
    if f.support() & dirs != 0 {
        return Err(Error::InvalidArgument(
            "hypersurface equation must not involve direction variables".into(),
        ));
    }
    Ok(PolyRing::mask_of(&ring.base_vars()))
}

fn decompose(f: &Polynomial) -> Result<(u32, Vec<(u32, Polynomial)>)> {
    let mask = x_block(f)?;
    if f.is_zero() || f.support() & mask == 0 {
        return Err(Error::ConstantInput);
    }
    // Over k(t): factors in t alone are units and get dropped.
    Ok((mask, squarefree_decomposition(f, mask)?))
}

/// `s_0(TS(X/T)) = Σ m² [V(g_m)]`, heaviest components first.
pub fn s0_tangent_star(f: &Polynomial) -> Result<CycleClass> {
    let (_, parts) = decompose(f)?;
    let mut terms: Vec<(u32, Polynomial)> = parts.into_iter().map(|(m, g)| (m * m, g)).collect();
    terms.sort_by_key(|t| std::cmp::Reverse(t.0));
    Ok(CycleClass { terms })
}

fn special_fiber(f: &Polynomial, t: usize) -> Polynomial {
    f.evaluate_var(t, &num_rational::BigRational::from_integer(0.into()))
}

/// Checks that the components of `V(f)` do not coalesce at `t = 0`:
/// (1) every component specializes to a reduced subscheme and (2) the
/// specializations of distinct components have no common component.
///
/// Both are tested on the multiplicity classes `g_m`. Write
/// `g_m = Π f_k` over the components of multiplicity `m`. The degree in
/// `x` does not drop (checked), so every `f_k(x,0)` is nonzero and
/// `g_m(x,0) = Π f_k(x,0)`. That product is squarefree exactly when each
/// `f_k(x,0)` is squarefree and the `f_k(x,0)` are pairwise coprime, which
/// is (1) for those components plus (2) for pairs within the class. Pairs
/// from different classes `m ≠ m'` satisfy (2) exactly when
/// `gcd(g_m(x,0), g_{m'}(x,0)) = 1`.
pub fn coalescence_check(f: &Polynomial) -> Result<CoalescenceReport> {
    let t = f.ring().require_param()?;
    let (mask, parts) = decompose(f)?;
    let f0 = special_fiber(f, t);
    if f0.is_zero() {
        return Err(Error::DegenerateFamily(
            "f vanishes identically at t = 0".into(),
        ));
    }
    let (d, d0) = (f.degree_in_mask(mask), f0.degree_in_mask(mask));
    if d != d0 {
        return Err(Error::DegenerateFamily(format!(
            "degree in x drops from {d} to {d0} at t = 0"
        )));
    }
    let specialized: Vec<Polynomial> = parts.iter().map(|(_, g)| special_fiber(g, t)).collect();
    let fail = |criterion, cert: Polynomial| CoalescenceReport {
        verdict: false,
        failing_criterion: Some(criterion),
        certificate: Some(cert.primitive()),
        classes: parts.clone(),
    };
    for g0 in &specialized {
        if let Some(r) = repeated_part(g0, mask) {
            return Ok(fail(CoalescenceCriterion::Reducedness, r));
        }
    }
    for (a, ga) in specialized.iter().enumerate() {
        for gb in &specialized[a + 1..] {
            let c = gcd(ga, gb);
            if c.support() & mask != 0 {
                return Ok(fail(CoalescenceCriterion::Disjointness, c));
            }
        }
    }
    Ok(CoalescenceReport {
        verdict: true,
        failing_criterion: None,
        certificate: None,
        classes: parts,
    })
}

#[derive(Clone, Debug)]
pub struct Specialization {
    pub verdict: bool,
    pub report: CoalescenceReport,
    pub family: CycleClass,
    pub fiber: CycleClass,
}

/// Whether `s_0(TS(X/T))` specializes to `s_0(TS(X_0))`, with both classes.
pub fn s0_specializes(f: &Polynomial) -> Result<Specialization> {
    let report = coalescence_check(f)?;
    let t = f.ring().require_param()?;
    let family = s0_tangent_star(f)?;
    let fiber = s0_tangent_star(&special_fiber(f, t))?;
    if report.verdict {
        let specialized = CycleClass {
            terms: family
                .terms
                .iter()
                .map(|(w, g)| (*w, special_fiber(g, t)))
                .collect(),
        };
        if !specialized.equivalent(&fiber) {
            return Err(Error::Inconsistent(format!(
                "components do not coalesce but {specialized} differs from {fiber}"
            )));
        }
    }
    Ok(Specialization {
        verdict: report.verdict,
        report,
        family,
        fiber,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::MonomialOrder;
    use std::sync::Arc;

    fn ring() -> Arc<PolyRing> {
        PolyRing::new(&["x", "y", "t"], Some("t"), &[], MonomialOrder::Grevlex).unwrap()
    }

    fn p(s: &str) -> Polynomial {
        crate::script::parse_poly(&ring(), s).unwrap()
    }

    fn class(f: &str) -> Vec<(u32, String)> {
        s0_tangent_star(&p(f))
            .unwrap()
            .terms
            .into_iter()
            .map(|(w, g)| (w, g.to_string()))
            .collect()
    }

    #[test]
    fn s0_examples() {
        assert_eq!(class("x*y - t"), vec![(1, "x*y - t".to_string())]);
        assert_eq!(
            class("x^2*y"),
            vec![(4, "x".to_string()), (1, "y".to_string())]
        );
        assert!(matches!(
            s0_tangent_star(&p("t + 2")),
            Err(Error::ConstantInput)
        ));
    }

    #[test]
    fn coalescence_examples() {
        assert!(coalescence_check(&p("x*y - t")).unwrap().verdict);
        for f in ["x^2 - t^2", "x*(x - t)"] {
            let r = coalescence_check(&p(f)).unwrap();
            assert!(!r.verdict);
            assert_eq!(r.failing_criterion, Some(CoalescenceCriterion::Reducedness));
            assert_eq!(r.certificate.unwrap().to_string(), "x");
        }
        let r = coalescence_check(&p("(x - t)^2*(x + t)")).unwrap();
        assert_eq!(
            r.failing_criterion,
            Some(CoalescenceCriterion::Disjointness)
        );
        assert_eq!(r.certificate.unwrap().to_string(), "x");
    }

    #[test]
    fn degenerate_families_are_rejected() {
        assert!(matches!(
            coalescence_check(&p("t*x")),
            Err(Error::DegenerateFamily(_))
        ));
        assert!(matches!(
            coalescence_check(&p("t*x^2 + x")),
            Err(Error::DegenerateFamily(_))
        ));
        let plain = PolyRing::plain(&["x", "y"]).unwrap();
        let f = crate::script::parse_poly(&plain, "x*y").unwrap();
        assert!(matches!(coalescence_check(&f), Err(Error::NoParameter)));
    }

    #[test]
    fn specialization_examples() {
        let s = s0_specializes(&p("x*y - t")).unwrap();
        assert!(s.verdict);
        let s = s0_specializes(&p("x^2 - t^2")).unwrap();
        assert!(!s.verdict);
        assert_eq!(s.family.to_string(), "1*[x^2 - t^2]");
        assert_eq!(s.fiber.to_string(), "4*[x]");
        let s = s0_specializes(&p("x^2*y")).unwrap();
        assert!(s.verdict && s.family == s.fiber);
    }
}
