//! Colon-ideal criteria for embedded components, flatness over the germ of
//! the parameter line at `t = 0`, and internal flatness.
//!
//! With `J ⊆ I` generated by a regular sequence of length `height(I)`,
//! `J : (J : I)` is the intersection of the minimal primary components of
//! `I`, and `I : t` keeps the components not lying over `t = 0`. Every test
//! is a containment in `I`, so no primary decomposition is needed.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ideal::Ideal;
use crate::ideal_ops::{colon, colon_poly, dimension, intersect, saturate, TestIdeal};
use crate::poly::Polynomial;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Criterion {
    NoEmbedded,
    Flat,
    InternallyFlat,
}

#[derive(Clone, Debug)]
pub struct FlatnessReport {
    pub criterion: Criterion,
    pub verdict: bool,
    /// Element of the tested ideal expression outside `I`; present exactly
    /// when the verdict is false.
    pub witness: Option<Polynomial>,
    pub test_ideal_used: Option<TestIdeal>,
    pub hypothesis_notes: Vec<String>,
    /// The ideal expression whose containment in `I` was tested.
    pub tested: Ideal,
    /// Internal flatness recomputed with `I : t^∞` in place of `I : t`.
    pub saturated_verdict: Option<bool>,
}

impl FlatnessReport {
    /// Re-checks the witness: it lies in the tested expression and has a
    /// nonzero normal form modulo `I`.
    pub fn witness_is_valid(&self, i: &Ideal) -> Result<bool> {
        match &self.witness {
            None => Ok(self.verdict),
            Some(w) => {
                Ok(!self.verdict && self.tested.contains_poly(w)? && !i.normal_form(w)?.is_zero())
            }
        }
    }
}

/// First element of the reduced basis of `expr` outside `i`.
fn witness(i: &Ideal, expr: &Ideal) -> Result<Option<Polynomial>> {
    let reduced = expr.reduced()?;
    i.first_outside(&reduced)
}

fn param(i: &Ideal) -> Result<Polynomial> {
    let t = i.ring().require_param()?;
    Ok(Polynomial::var(i.ring(), t))
}

fn check_test_ideal(i: &Ideal, j: &TestIdeal) -> Result<()> {
    if !i.contains(&j.ideal)? {
        return Err(Error::InvalidTestIdeal("J is not contained in I".into()));
    }
    Ok(())
}

/// `J : (J : I)` together with the equidimensionality notes.
fn unmixed_part(i: &Ideal, j: &TestIdeal, notes: &mut Vec<String>) -> Result<Ideal> {
    check_test_ideal(i, j)?;
    let u = colon(&j.ideal, &colon(&j.ideal, i)?)?;
    notes.push("equidimensionality of R/I is assumed, not verified".into());
    let (di, du) = (dimension(i)?, dimension(&u)?);
    if di == du {
        notes.push(format!(
            "sanity check passed: dim R/I = dim R/(J:(J:I)) = {di}"
        ));
    } else {
        notes.push(format!(
            "sanity check FAILED: dim R/I = {di} but dim R/(J:(J:I)) = {du}; R/I is not equidimensional"
        ));
    }
    Ok(u)
}

fn report(
    criterion: Criterion,
    i: &Ideal,
    tested: Ideal,
    j: Option<&TestIdeal>,
    notes: Vec<String>,
) -> Result<FlatnessReport> {
    let w = witness(i, &tested)?;
    Ok(FlatnessReport {
        criterion,
        verdict: w.is_none(),
        witness: w,
        test_ideal_used: j.cloned(),
        hypothesis_notes: notes,
        tested,
        saturated_verdict: None,
    })
}

/// `V(I)` has no embedded components iff `J : (J : I) ⊆ I`.
pub fn has_no_embedded_components(i: &Ideal, j: &TestIdeal) -> Result<FlatnessReport> {
    let mut notes = Vec::new();
    let u = unmixed_part(i, j, &mut notes)?;
    report(Criterion::NoEmbedded, i, u, Some(j), notes)
}

/// `V(I) → T` is flat near `t = 0` iff `I : t ⊆ I`.
pub fn is_flat_over_germ(i: &Ideal) -> Result<FlatnessReport> {
    let t = param(i)?;
    let q = colon_poly(i, &t)?;
    report(Criterion::Flat, i, q, None, Vec::new())
}

/// `V(I) → T` is internally flat iff `(I : t) ∩ (J : (J : I)) ⊆ I`.
///
/// With `saturated` the test is repeated with `I : t^∞`; the result is
/// stored in `saturated_verdict` and any disagreement is noted.
pub fn is_internally_flat(i: &Ideal, j: &TestIdeal, saturated: bool) -> Result<FlatnessReport> {
    let t = param(i)?;
    let mut notes = Vec::new();
    let u = unmixed_part(i, j, &mut notes)?;
    let q = colon_poly(i, &t)?;
    let tested = intersect(&q, &u)?;
    let mut r = report(Criterion::InternallyFlat, i, tested, Some(j), notes)?;
    if saturated {
        let sat = intersect(&saturate(i, &t)?, &u)?;
        let v = i.contains(&sat)?;
        if v != r.verdict {
            r.hypothesis_notes.push(format!(
                "single colon I:t gives {} but saturation I:t^inf gives {}",
                r.verdict, v
            ));
        }
        r.saturated_verdict = Some(v);
    }
    Ok(r)
}
