//! Free resolutions of `R/I` by Schreyer's construction, minimization of
//! graded resolutions, Betti numbers, projective dimension and the
//! Cohen-Macaulay test `pd(R/I) = height(I)`.
//!
//! Each step works with a Gröbner basis `G` of a submodule of a free module
//! `F` under the order induced from the previous step: `m·e_c < n·e_d` when
//! `m·T_c < n·T_d` in the ring order, or when these agree and `c > d`. Here
//! `T_c` is the product of the leading monomials along the chain of
//! components below `e_c`. The syzygies obtained from the standard
//! representations of the S-pairs of `G` are a Gröbner basis of the syzygy
//! module for that order, so the next step needs no further Buchberger run.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::groebner::GroebnerBasis;
use crate::ideal::Ideal;
use crate::ideal_ops::height;
use crate::poly::{Monomial, MonomialOrder, PolyRing, Polynomial};

#[derive(Clone, Debug)]
struct Term {
    coeff: BigRational,
    mono: Monomial,
    comp: usize,
    /// `mono · T_comp`, the key compared in the ring order.
    key: Monomial,
}

type Vector = Vec<Term>;

struct Module<'a> {
    order: &'a MonomialOrder,
    /// `T_c` for each basis element.
    tmon: Vec<Monomial>,
}

impl Module<'_> {
    fn cmp(&self, a: &Term, b: &Term) -> Ordering {
        self.order.cmp(&a.key, &b.key).then(b.comp.cmp(&a.comp))
    }

    fn term(&self, coeff: BigRational, mono: Monomial, comp: usize) -> Term {
        let key = mono.mul(&self.tmon[comp]);
        Term {
            coeff,
            mono,
            comp,
            key,
        }
    }

    /// `v − a·n·w`.
    fn sub_mul(&self, v: &[Term], a: &BigRational, n: &Monomial, w: &[Term]) -> Vector {
        let mut out = Vec::with_capacity(v.len() + w.len());
        let (mut i, mut j) = (0, 0);
        let scaled = |t: &Term| Term {
            coeff: -(a * &t.coeff),
            mono: t.mono.mul(n),
            comp: t.comp,
            key: t.key.mul(n),
        };
        while i < v.len() || j < w.len() {
            if j == w.len() {
                out.push(v[i].clone());
                i += 1;
                continue;
            }
            let s = scaled(&w[j]);
            if i == v.len() {
                out.push(s);
                j += 1;
                continue;
            }
            match self.cmp(&v[i], &s) {
                Ordering::Greater => {
                    out.push(v[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(s);
                    j += 1;
                }
                Ordering::Equal => {
                    let c = &v[i].coeff + &s.coeff;
                    if !c.is_zero() {
                        out.push(Term { coeff: c, ..s });
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out
    }

    fn vector_from_map(&self, map: HashMap<(Monomial, usize), BigRational>) -> Vector {
        let mut v: Vector = map
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|((m, comp), c)| self.term(c, m, comp))
            .collect();
        v.sort_by(|a, b| self.cmp(b, a));
        v
    }
}

/// A matrix over the ring; column `j` is the image of the `j`-th basis
/// element of the source.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<Polynomial>>,
}

impl Matrix {
    fn zero(ring: &Arc<PolyRing>, rows: usize, cols: usize) -> Matrix {
        Matrix {
            rows,
            cols,
            entries: vec![vec![Polynomial::zero(ring); cols]; rows],
        }
    }

    pub fn column(&self, j: usize) -> Vec<Polynomial> {
        self.entries.iter().map(|r| r[j].clone()).collect()
    }

    /// `self · other`; panics on a dimension mismatch.
    pub fn compose(&self, other: &Matrix, ring: &Arc<PolyRing>) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix dimensions do not match");
        let mut out = Matrix::zero(ring, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self.entries[i][k].is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    if !other.entries[k][j].is_zero() {
                        let p = &self.entries[i][k] * &other.entries[k][j];
                        out.entries[i][j] = &out.entries[i][j] + &p;
                    }
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().flatten().all(Polynomial::is_zero)
    }

    fn unit_entry(&self) -> Option<(usize, usize)> {
        (0..self.rows)
            .flat_map(|r| (0..self.cols).map(move |c| (r, c)))
            .find(|&(r, c)| {
                let e = &self.entries[r][c];
                !e.is_zero() && e.is_constant()
            })
    }

    fn drop_row(&mut self, r: usize) {
        self.entries.remove(r);
        self.rows -= 1;
    }

    fn drop_col(&mut self, c: usize) {
        for row in &mut self.entries {
            row.remove(c);
        }
        self.cols -= 1;
    }
}

/// Syzygies of a Gröbner basis from the standard representations of its
/// S-pairs (only the pairs with minimal leading terms are used). The
/// returned vectors are indexed like `gb.elements()` and form a Gröbner
/// basis of the syzygy module for the induced order.
pub fn syzygies(gb: &GroebnerBasis) -> Vec<Vec<Polynomial>> {
    let ring = gb.ring();
    let order = gb.order();
    let base = Module {
        order,
        tmon: vec![Monomial::one()],
    };
    let gens: Vec<Vector> = gb
        .elements()
        .iter()
        .map(|g| {
            g.terms()
                .iter()
                .map(|(c, m)| base.term(c.clone(), *m, 0))
                .collect()
        })
        .collect();
    let (module, syz) = schreyer_step(order, &base, &gens);
    syz.iter()
        .map(|v| to_columns(ring, v, module.tmon.len()))
        .collect()
}

fn to_columns(ring: &Arc<PolyRing>, v: &[Term], rank: usize) -> Vec<Polynomial> {
    let mut cols: Vec<Vec<(BigRational, Monomial)>> = vec![Vec::new(); rank];
    for t in v {
        cols[t.comp].push((t.coeff.clone(), t.mono));
    }
    cols.into_iter()
        .map(|ts| Polynomial::from_terms(ring, ts))
        .collect()
}

/// One Schreyer step: `gens` is a Gröbner basis in the module `prev`.
/// Returns the module whose basis indexes `gens` and the syzygies, sorted
/// by component and then descending lex on the leading monomial.
fn schreyer_step<'a>(
    order: &'a MonomialOrder,
    prev: &Module<'_>,
    gens: &[Vector],
) -> (Module<'a>, Vec<Vector>) {
    let module = Module {
        order,
        tmon: gens.iter().map(|g| g[0].key).collect(),
    };
    let mut by_comp: HashMap<usize, Vec<usize>> = HashMap::new();
    for (k, g) in gens.iter().enumerate() {
        by_comp.entry(g[0].comp).or_default().push(k);
    }
    let mut syz: Vec<Vector> = Vec::new();
    for (c, gc) in gens.iter().enumerate() {
        let lead = &gc[0];
        let mut cands: Vec<(Monomial, usize)> = by_comp[&lead.comp]
            .iter()
            .filter(|&&d| d > c)
            .map(|&d| (lead.mono.lcm(&gens[d][0].mono).div(&lead.mono), d))
            .collect();
        cands.sort_by_key(|(m, d)| (m.degree(), *d));
        let mut kept: Vec<(Monomial, usize)> = Vec::new();
        for (m, d) in cands {
            if !kept.iter().any(|(k, _)| k.divides(&m)) {
                kept.push((m, d));
            }
        }
        for (m, d) in kept {
            syz.push(pair_syzygy(prev, &module, gens, &by_comp, c, d, &m));
        }
    }
    let lex = MonomialOrder::Lex;
    syz.sort_by(|a, b| {
        a[0].comp
            .cmp(&b[0].comp)
            .then(lex.cmp(&b[0].mono, &a[0].mono))
    });
    (module, syz)
}

fn pair_syzygy(
    prev: &Module<'_>,
    module: &Module<'_>,
    gens: &[Vector],
    by_comp: &HashMap<usize, Vec<usize>>,
    c: usize,
    d: usize,
    m: &Monomial,
) -> Vector {
    let (lc, ld) = (&gens[c][0], &gens[d][0]);
    let md = lc.mono.mul(m).div(&ld.mono);
    let ac = BigRational::one() / &lc.coeff;
    let ad = BigRational::one() / &ld.coeff;
    let mut quot: HashMap<(Monomial, usize), BigRational> = HashMap::new();
    quot.insert((*m, c), ac.clone());
    quot.insert((md, d), -ad.clone());
    let empty: Vector = Vec::new();
    let mut s = prev.sub_mul(&empty, &-ac, m, &gens[c]);
    s = prev.sub_mul(&s, &ad, &md, &gens[d]);
    while let Some(head) = s.first().cloned() {
        let k = by_comp
            .get(&head.comp)
            .and_then(|ks| {
                ks.iter()
                    .copied()
                    .find(|&k| gens[k][0].mono.divides(&head.mono))
            })
            .expect("S-pairs of a Gröbner basis reduce to zero");
        let g = &gens[k][0];
        let a = &head.coeff / &g.coeff;
        let n = head.mono.div(&g.mono);
        s = prev.sub_mul(&s, &a, &n, &gens[k]);
        *quot.entry((n, k)).or_insert_with(BigRational::zero) -= &a;
    }
    let mut v = module.vector_from_map(quot);
    let inv = BigRational::one() / &v[0].coeff;
    for t in &mut v {
        t.coeff *= &inv;
    }
    v
}

/// A free resolution `0 → F_p → … → F_1 → F_0 = R → R/I → 0`.
#[derive(Clone, Debug)]
pub struct FreeResolution {
    pub ring: Arc<PolyRing>,
    /// `maps[i]` is `d_{i+1}: F_{i+1} → F_i`.
    pub maps: Vec<Matrix>,
    /// `ranks[i]` is the rank of `F_i`; `ranks[0] = 1`.
    pub ranks: Vec<usize>,
    /// All generators of the input were homogeneous.
    pub graded: bool,
    /// Degree shifts of the basis elements of each `F_i` (graded input).
    pub shifts: Vec<Vec<u32>>,
    /// No map has a nonzero constant entry.
    pub minimal: bool,
}

impl FreeResolution {
    /// Length of the resolution. For graded input this is `pd(R/I)`;
    /// otherwise it is an upper bound.
    pub fn length(&self) -> usize {
        self.ranks.len() - 1
    }

    /// Graded Betti numbers: `(i, degree) → count`.
    pub fn betti_table(&self) -> BTreeMap<(usize, u32), usize> {
        let mut table = BTreeMap::new();
        for (i, s) in self.shifts.iter().enumerate() {
            for &d in s {
                *table.entry((i, d)).or_insert(0) += 1;
            }
        }
        table
    }

    /// `d_i ∘ d_{i+1} = 0` for every `i`.
    pub fn is_complex(&self) -> bool {
        self.maps
            .windows(2)
            .all(|w| w[0].compose(&w[1], &self.ring).is_zero())
    }

    /// `Σ (−1)^i rank F_i`.
    pub fn euler_characteristic(&self) -> i64 {
        self.ranks
            .iter()
            .enumerate()
            .map(|(i, &r)| if i % 2 == 0 { r as i64 } else { -(r as i64) })
            .sum()
    }

    /// The ideal generated by the entries of `d_1`.
    pub fn first_syzygy_ideal(&self) -> Result<Ideal> {
        let gens = self
            .maps
            .first()
            .map(|m| m.entries[0].clone())
            .unwrap_or_default();
        Ideal::new(&self.ring, gens)
    }

    fn prune_units(&mut self) {
        for i in 0..self.maps.len() {
            while let Some((r, c)) = self.maps[i].unit_entry() {
                let d = &mut self.maps[i];
                let u = d.entries[r][c].constant_term();
                for j in 0..d.cols {
                    if j == c || d.entries[r][j].is_zero() {
                        continue;
                    }
                    let a = d.entries[r][j].scale(&(BigRational::one() / &u));
                    for k in 0..d.rows {
                        if !d.entries[k][c].is_zero() {
                            let p = &a * &d.entries[k][c];
                            d.entries[k][j] = &d.entries[k][j] - &p;
                        }
                    }
                }
                d.drop_row(r);
                d.drop_col(c);
                if i > 0 {
                    self.maps[i - 1].drop_col(r);
                }
                if i + 1 < self.maps.len() {
                    self.maps[i + 1].drop_row(c);
                }
                self.shifts[i].remove(r);
                self.shifts[i + 1].remove(c);
            }
        }
        while self.maps.last().is_some_and(|m| m.cols == 0) {
            self.maps.pop();
            self.shifts.pop();
        }
        self.ranks = self.shifts.iter().map(Vec::len).collect();
        self.minimal = true;
    }
}

impl fmt::Display for FreeResolution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.ranks.iter().map(|r| format!("R^{r}")).collect();
        write!(f, "{}", parts.join(" <- "))
    }
}

/// Resolves `R/I` by iterated Schreyer syzygies, then removes unit entries
/// by row and column operations. For graded input the result is the
/// minimal resolution; otherwise its length only bounds `pd(R/I)`.
pub fn free_resolution(i: &Ideal) -> Result<FreeResolution> {
    let ring = i.ring().clone();
    let gb = i.gb()?;
    if gb.is_unit() {
        return Err(Error::UnitIdeal);
    }
    let graded = i.is_homogeneous();
    let order = ring.order();
    let mut base = Module {
        order,
        tmon: vec![Monomial::one()],
    };
    let lex = MonomialOrder::Lex;
    let mut elems: Vec<&Polynomial> = gb.elements().iter().collect();
    elems.sort_by(|a, b| {
        lex.cmp(
            &b.leading_monomial().unwrap(),
            &a.leading_monomial().unwrap(),
        )
    });
    let mut gens: Vec<Vector> = elems
        .iter()
        .map(|g| {
            g.terms()
                .iter()
                .map(|(c, m)| base.term(c.clone(), *m, 0))
                .collect()
        })
        .collect();
    let mut maps = Vec::new();
    let mut shifts = vec![vec![0u32]];
    while !gens.is_empty() {
        let rank_prev = base.tmon.len();
        let mut m = Matrix::zero(&ring, rank_prev, gens.len());
        for (j, g) in gens.iter().enumerate() {
            for (r, p) in to_columns(&ring, g, rank_prev).into_iter().enumerate() {
                m.entries[r][j] = p;
            }
        }
        maps.push(m);
        shifts.push(gens.iter().map(|g| g[0].key.degree()).collect());
        let (module, syz) = schreyer_step(order, &base, &gens);
        base = module;
        gens = syz;
    }
    let mut res = FreeResolution {
        ring,
        maps,
        ranks: Vec::new(),
        graded,
        shifts,
        minimal: false,
    };
    res.prune_units();
    res.minimal = graded;
    if !graded {
        res.shifts.iter_mut().for_each(Vec::clear);
    }
    Ok(res)
}

/// Projective dimension of `R/I` and whether it is exact (graded input) or
/// an upper bound.
pub fn projective_dimension(i: &Ideal) -> Result<(usize, bool)> {
    let r = free_resolution(i)?;
    Ok((r.length(), r.graded))
}

#[derive(Clone, Debug, Serialize)]
pub struct CmReport {
    /// `None` for non-graded input.
    pub verdict: Option<bool>,
    pub pd: usize,
    /// True when `pd` is only an upper bound.
    pub pd_is_bound: bool,
    pub height: usize,
    pub betti: Vec<usize>,
}

/// `R/I` is Cohen-Macaulay iff `pd(R/I) = height(I)` (graded case).
pub fn is_cohen_macaulay(i: &Ideal) -> Result<CmReport> {
    let r = free_resolution(i)?;
    let h = height(i)?;
    Ok(CmReport {
        verdict: r.graded.then(|| r.length() == h),
        pd: r.length(),
        pd_is_bound: !r.graded,
        height: h,
        betti: r.ranks.clone(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ideal(vars: &[&str], s: &str) -> Ideal {
        Ideal::parse(&PolyRing::plain(vars).unwrap(), s).unwrap()
    }

    #[test]
    fn koszul_and_principal() {
        let r = free_resolution(&ideal(&["x", "y"], "x, y")).unwrap();
        assert_eq!(r.ranks, vec![1, 2, 1]);
        assert!(r.is_complex());
        let r = free_resolution(&ideal(&["x", "y"], "x")).unwrap();
        assert_eq!(r.ranks, vec![1, 1]);
        let c = is_cohen_macaulay(&ideal(&["x", "y", "z"], "x^2 + y*z")).unwrap();
        assert_eq!((c.verdict, c.pd, c.height), (Some(true), 1, 1));
    }

    #[test]
    fn koszul_syzygy() {
        let i = ideal(&["x", "y"], "x, y");
        let s = syzygies(&i.gb().unwrap());
        assert_eq!(s.len(), 1);
        let g = i.gb().unwrap().elements().to_vec();
        let v = &(&s[0][0] * &g[0]) + &(&s[0][1] * &g[1]);
        assert!(v.is_zero());
        assert!(syzygies(&ideal(&["x"], "x").gb().unwrap()).is_empty());
    }

    #[test]
    fn twisted_cubic_syzygies() {
        let i = ideal(&["x", "y", "z"], "x^2 - y, x*y - z, x*z - y^2");
        let gb = i.gb().unwrap();
        let s = syzygies(&gb);
        assert_eq!(s.len(), 2);
        for v in &s {
            let mut acc = Polynomial::zero(i.ring());
            for (a, g) in v.iter().zip(gb.elements()) {
                acc = &acc + &(a * g);
            }
            assert!(acc.is_zero());
        }
    }

    #[test]
    fn minimal_resolution_of_twisted_cubic_cone() {
        let i = ideal(&["x", "y", "z", "w"], "x*z - y^2, y*w - z^2, x*w - y*z");
        let r = free_resolution(&i).unwrap();
        assert_eq!(r.ranks, vec![1, 3, 2]);
        assert!(r.is_complex() && r.minimal);
        assert_eq!(r.euler_characteristic(), 0);
        let b = r.betti_table();
        assert_eq!(b[&(1, 2)], 3);
        assert_eq!(b[&(2, 3)], 2);
        assert_eq!(is_cohen_macaulay(&i).unwrap().verdict, Some(true));
    }

    #[test]
    fn non_graded_gives_a_bound() {
        let c = is_cohen_macaulay(&ideal(&["x", "y"], "x^2 - y, x*y")).unwrap();
        assert_eq!(c.verdict, None);
        assert!(c.pd_is_bound);
    }

    #[test]
    fn unit_ideal_is_rejected() {
        assert!(matches!(
            free_resolution(&ideal(&["x"], "x, x + 1")),
            Err(Error::UnitIdeal)
        ));
    }
}
