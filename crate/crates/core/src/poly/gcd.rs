//! Multivariate gcd by recursive subresultant PRS, and Yun's squarefree
//! decomposition built on it.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::polynomial::Polynomial;
use crate::error::{Error, Result};

/// Main variable for recursion: highest degree in `f` among `candidates`,
/// ties broken by ring position.
fn main_variable(f: &Polynomial, candidates: u32) -> Option<usize> {
    let n = f.ring().nvars();
    let mut best: Option<(u32, usize)> = None;
    for v in 0..n {
        if candidates & (1 << v) == 0 {
            continue;
        }
        let d = f.degree_in(v);
        if d > 0 && best.is_none_or(|(bd, _)| d > bd) {
            best = Some((d, v));
        }
    }
    best.map(|(_, v)| v)
}

/// Greatest common divisor, normalized to integer coefficients with content
/// one and positive leading coefficient. `gcd(0, 0) = 0`.
pub fn gcd(f: &Polynomial, g: &Polynomial) -> Polynomial {
    gcd_rec(f, g).primitive()
}

fn gcd_rec(f: &Polynomial, g: &Polynomial) -> Polynomial {
    if f.is_zero() {
        return g.primitive();
    }
    if g.is_zero() {
        return f.primitive();
    }
    if f.is_constant() || g.is_constant() {
        return Polynomial::one(f.ring());
    }
    if let Some(h) = heuristic_gcd(&f.primitive(), &g.primitive()) {
        return h;
    }
    if let Some(q) = f.exact_div(g) {
        if !q.is_zero() {
            return g.primitive();
        }
    }
    if let Some(q) = g.exact_div(f) {
        if !q.is_zero() {
            return f.primitive();
        }
    }
    let common = f.support() & g.support();
    // A variable occurring in only one argument: the gcd divides every
    // coefficient with respect to it.
    for (p, q) in [(f, g), (g, f)] {
        if let Some(v) = (0..p.ring().nvars()).find(|v| p.support() & !common & (1 << v) != 0) {
            return p.coefficients_in(v).iter().fold(q.clone(), |acc, c| {
                if acc.is_constant() {
                    acc
                } else {
                    gcd_rec(&acc, c)
                }
            });
        }
    }
    let var = (0..f.ring().nvars())
        .filter(|v| common & (1 << v) != 0)
        .min_by_key(|&v| f.degree_in(v).max(g.degree_in(v)))
        .expect("nonconstant polynomials share a variable");
    let cf = content_in(f, var);
    let cg = content_in(g, var);
    let c = gcd_rec(&cf, &cg);
    let pf = f.exact_div(&cf).expect("content divides");
    let pg = g.exact_div(&cg).expect("content divides");
    let h = subresultant_gcd(pf, pg, var);
    (&c * &h).primitive()
}

/// Evaluated coefficients beyond this many bits make the heuristic give up.
const HEU_MAX_BITS: u64 = 200_000;

fn int_coeff(c: &BigRational) -> &BigInt {
    debug_assert!(c.is_integer());
    c.numer()
}

fn int_content(f: &Polynomial) -> BigInt {
    f.terms()
        .iter()
        .fold(BigInt::zero(), |acc, (c, _)| acc.gcd(int_coeff(c)))
}

fn height(f: &Polynomial) -> BigInt {
    f.terms()
        .iter()
        .map(|(c, _)| int_coeff(c).abs())
        .max()
        .unwrap_or_default()
}

/// Heuristic gcd (Char, Geddes, Gonnet) of integer polynomials: evaluate
/// one variable at a large integer `xi`, recurse, and read the gcd back off
/// the symmetric `xi`-adic digits. A candidate is returned only after trial
/// division; `None` means the heuristic gave up.
fn heuristic_gcd(a: &Polynomial, b: &Polynomial) -> Option<Polynomial> {
    let ring = a.ring();
    // An evaluation can land on a root; then the gcd is the other argument.
    if a.is_zero() || b.is_zero() {
        let c = if a.is_zero() { b } else { a };
        return Some(if c.leading_coeff().is_some_and(|l| l.is_negative()) {
            -c
        } else {
            c.clone()
        });
    }
    let (ca, cb) = (int_content(a), int_content(b));
    let g0 = ca.gcd(&cb);
    let constant = |c: BigInt| Polynomial::constant(ring, BigRational::from_integer(c));
    if a.is_constant() || b.is_constant() {
        return Some(constant(g0));
    }
    let inv = |c: &BigInt| {
        BigRational::from_integer(BigInt::one()) / BigRational::from_integer(c.clone())
    };
    let (a, b) = (a.scale(&inv(&ca)), b.scale(&inv(&cb)));
    let both = a.support() | b.support();
    let x = (0..ring.nvars()).rev().find(|v| both & (1 << v) != 0)?;
    let deg = a.degree_in(x).max(b.degree_in(x)) as u64;
    let mut xi: BigInt = 2 * height(&a).min(height(&b)) + 29;
    for _ in 0..6 {
        if xi.bits() * (deg + 1) > HEU_MAX_BITS {
            return None;
        }
        let at = BigRational::from_integer(xi.clone());
        let gamma = heuristic_gcd(&a.evaluate_var(x, &at), &b.evaluate_var(x, &at))?;
        let cand = interpolate(&gamma, &xi, x);
        if !cand.is_zero() {
            let cand = cand.scale(&inv(&int_content(&cand)));
            if a.exact_div(&cand).is_some() && b.exact_div(&cand).is_some() {
                let cand = if cand.leading_coeff().is_some_and(|c| c.is_negative()) {
                    -&cand
                } else {
                    cand
                };
                return Some(cand.scale(&BigRational::from_integer(g0)));
            }
        }
        xi = xi * 73794 / 27011;
    }
    None
}

/// Rebuilds a polynomial in `x` from the symmetric `xi`-adic digits of the
/// coefficients of `gamma`.
fn interpolate(gamma: &Polynomial, xi: &BigInt, x: usize) -> Polynomial {
    let half: BigInt = xi / 2;
    let mut terms = Vec::new();
    for (c, m) in gamma.terms() {
        let mut c = int_coeff(c).clone();
        let mut e = 0u16;
        while !c.is_zero() {
            let mut d = c.mod_floor(xi);
            if d > half {
                d -= xi;
            }
            if !d.is_zero() {
                let mut mm = *m;
                mm.set_exp(x, e);
                terms.push((BigRational::from_integer(d.clone()), mm));
            }
            c = (c - d) / xi;
            e += 1;
        }
    }
    Polynomial::from_terms(gamma.ring(), terms)
}

/// Gcd of the coefficients of `f` viewed as a polynomial in `var`.
pub fn content_in(f: &Polynomial, var: usize) -> Polynomial {
    let mut acc = Polynomial::zero(f.ring());
    for c in f.coefficients_in(var) {
        if c.is_zero() {
            continue;
        }
        acc = gcd_rec(&acc, &c);
        if acc.is_constant() {
            return Polynomial::one(f.ring());
        }
    }
    acc
}

/// Primitive part with respect to `var`.
pub fn primitive_part_in(f: &Polynomial, var: usize) -> Polynomial {
    if f.is_zero() {
        return f.clone();
    }
    let c = content_in(f, var);
    f.exact_div(&c).expect("content divides").primitive()
}

/// Pseudo-remainder of `a` by `b` in `var`.
pub fn pseudo_remainder(a: &Polynomial, b: &Polynomial, var: usize) -> Polynomial {
    let db = b.degree_in(var);
    let lb = b.leading_coeff_in(var);
    let mut r = a.clone();
    while !r.is_zero() && r.degree_in(var) >= db {
        let dr = r.degree_in(var);
        let lr = r.leading_coeff_in(var);
        let shift = Polynomial::var(r.ring(), var).pow(dr - db);
        r = &(&lb * &r) - &(&(&lr * &shift) * b);
    }
    r
}

/// Subresultant PRS (Collins, Brown): coefficient growth stays polynomial
/// and only exact divisions are needed, so no gcd is taken until the end.
fn subresultant_gcd(a: Polynomial, b: Polynomial, var: usize) -> Polynomial {
    let (mut a, mut b) = if a.degree_in(var) >= b.degree_in(var) {
        (a, b)
    } else {
        (b, a)
    };
    let ring = a.ring().clone();
    let mut g = Polynomial::one(&ring);
    let mut h = Polynomial::one(&ring);
    loop {
        let delta = a.degree_in(var) - b.degree_in(var);
        let r = pseudo_remainder(&a, &b, var);
        if r.is_zero() {
            return primitive_part_in(&b, var);
        }
        if r.degree_in(var) == 0 {
            return Polynomial::one(&ring);
        }
        let div = &g * &h.pow(delta);
        a = b;
        b = r.exact_div(&div).expect("subresultant division is exact");
        g = a.leading_coeff_in(var);
        h = if delta == 0 {
            h
        } else {
            g.pow(delta)
                .exact_div(&h.pow(delta - 1))
                .expect("subresultant division is exact")
        };
    }
}

/// Squarefree decomposition with respect to the variables in `vars`
/// (a bitmask).
///
/// Returns `(m, g_m)` sorted by `m`, with `g_m` the product of the factors
/// of multiplicity exactly `m`. Each `g_m` is squarefree and the `g_m` are
/// pairwise coprime; `Π g_m^m` equals `f` up to a factor free of `vars`,
/// which is discarded.
pub fn squarefree_decomposition(f: &Polynomial, vars: u32) -> Result<Vec<(u32, Polynomial)>> {
    if f.is_zero() {
        return Err(Error::ZeroInput("squarefree decomposition of zero".into()));
    }
    let mut out: Vec<(u32, Polynomial)> = Vec::new();
    sqf_rec(f, vars, &mut out);
    out.sort_by_key(|(m, _)| *m);
    Ok(out)
}

fn merge_part(out: &mut Vec<(u32, Polynomial)>, m: u32, g: Polynomial) {
    if g.is_constant() {
        return;
    }
    match out.iter_mut().find(|(k, _)| *k == m) {
        Some((_, acc)) => *acc = (&*acc * &g).primitive(),
        None => out.push((m, g.primitive())),
    }
}

fn sqf_rec(f: &Polynomial, vars: u32, out: &mut Vec<(u32, Polynomial)>) {
    let Some(var) = main_variable(f, vars) else {
        return;
    };
    let content = content_in(f, var);
    let prim = f.exact_div(&content).expect("content divides");
    for (m, g) in yun(&prim, var) {
        merge_part(out, m, g);
    }
    if !content.is_constant() {
        sqf_rec(&content, vars & !(1 << var), out);
    }
}

/// Yun's algorithm for `p` primitive in `var`.
fn yun(p: &Polynomial, var: usize) -> Vec<(u32, Polynomial)> {
    let dp = p.differentiate(var);
    let a0 = gcd(p, &dp);
    let mut b = p.exact_div(&a0).expect("gcd divides");
    let c = dp.exact_div(&a0).expect("gcd divides");
    let mut d = &c - &b.differentiate(var);
    let mut out = Vec::new();
    let mut i = 1u32;
    while b.degree_in(var) > 0 {
        let a = gcd(&b, &d);
        let nb = b.exact_div(&a).expect("gcd divides");
        let nc = d.exact_div(&a).expect("gcd divides");
        d = &nc - &nb.differentiate(var);
        if !a.is_constant() {
            out.push((i, a));
        }
        b = nb;
        i += 1;
    }
    out
}

/// True when `g` has no repeated factor in the variables of `vars`:
/// `gcd(g, ∂g/∂x_i for x_i in vars)` is constant. Returns the repeated part
/// otherwise.
pub fn repeated_part(g: &Polynomial, vars: u32) -> Option<Polynomial> {
    let mut acc = g.clone();
    for v in 0..g.ring().nvars() {
        if vars & (1 << v) == 0 {
            continue;
        }
        acc = gcd(&acc, &g.differentiate(v));
        if acc.is_constant() {
            return None;
        }
    }
    if acc.is_constant() || acc.support() & vars == 0 {
        None
    } else {
        Some(acc)
    }
}

/// Unit multiple check: `a = c * b` for a nonzero rational `c`.
pub fn proportional(a: &Polynomial, b: &Polynomial) -> bool {
    if a.is_zero() || b.is_zero() {
        return a.is_zero() && b.is_zero();
    }
    if a.len() != b.len() {
        return false;
    }
    let ratio: BigRational = a.leading_coeff().unwrap() / b.leading_coeff().unwrap();
    b.scale(&ratio) == *a
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::PolyRing;
    use crate::script::parse_poly;
    use std::sync::Arc;

    fn ring() -> Arc<PolyRing> {
        PolyRing::plain(&["x", "y", "z", "t"]).unwrap()
    }

    fn p(s: &str) -> Polynomial {
        parse_poly(&ring(), s).unwrap()
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(
            gcd(&p("2*x*y - 4"), &Polynomial::zero(&ring())),
            p("x*y - 2")
        );
        assert_eq!(gcd(&p("x^2 - y^2"), &p("x^2 + 2*x*y + y^2")), p("x + y"));
        assert!(gcd(&p("x"), &p("y")).is_one());
        assert_eq!(gcd(&p("x^2*y*z"), &p("x*y^3")), p("x*y"));
        // y = 31 is a root of the second argument after z = 31
        assert_eq!(gcd(&p("-x"), &p("x^3*y^2*z - x^3*y*z^2")), p("x"));
        assert_eq!(
            gcd(&p("(x - t)^2*(y + 1)"), &p("(x - t)*(y + 1)^3*(z + x)")),
            p("(x - t)*(y + 1)")
        );
    }

    #[test]
    fn squarefree_examples() {
        let all = 0b1111;
        let d = squarefree_decomposition(&p("x^2*y"), all).unwrap();
        assert_eq!(d, vec![(1, p("y")), (2, p("x"))]);
        let d = squarefree_decomposition(&p("x^3 + y^3 + z^3"), all).unwrap();
        assert_eq!(d, vec![(1, p("x^3 + y^3 + z^3"))]);
        // over {x}, t is a parameter
        let d = squarefree_decomposition(&p("(x - t)^2*(x + t)"), 0b0001).unwrap();
        assert_eq!(d, vec![(1, p("x + t")), (2, p("x - t"))]);
    }

    #[test]
    fn squarefree_drops_excluded_content() {
        let d = squarefree_decomposition(&p("t^2*x^3"), 0b0111).unwrap();
        assert_eq!(d, vec![(3, p("x"))]);
        assert!(squarefree_decomposition(&Polynomial::zero(&ring()), 1).is_err());
    }

    #[test]
    fn repeated_part_detects_squares() {
        assert_eq!(repeated_part(&p("x^2"), 0b0111), Some(p("x")));
        assert_eq!(repeated_part(&p("x*y"), 0b0111), None);
    }
}
