use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::groebner::{GbOptions, GroebnerBasis};
use crate::poly::{PolyRing, Polynomial};

/// An ideal given by generators, with a lazily computed reduced Gröbner
/// basis in the ring's order. Clones share the cached basis.
#[derive(Clone)]
pub struct Ideal {
    ring: Arc<PolyRing>,
    gens: Vec<Polynomial>,
    opts: GbOptions,
    gb: Arc<OnceLock<Arc<GroebnerBasis>>>,
}

impl Ideal {
    pub fn new(ring: &Arc<PolyRing>, gens: Vec<Polynomial>) -> Result<Ideal> {
        for g in &gens {
            if !(Arc::ptr_eq(g.ring(), ring) || **g.ring() == **ring) {
                return Err(Error::RingMismatch(format!(
                    "generator {g} does not live in {ring:?}"
                )));
            }
        }
        Ok(Ideal {
            ring: ring.clone(),
            gens,
            opts: GbOptions::default(),
            gb: Arc::new(OnceLock::new()),
        })
    }

    /// Parses a comma-separated generator list.
    pub fn parse(ring: &Arc<PolyRing>, text: &str) -> Result<Ideal> {
        Ideal::new(ring, crate::script::parse_poly_list(ring, text)?)
    }

    pub fn zero(ring: &Arc<PolyRing>) -> Ideal {
        Ideal::new(ring, Vec::new()).expect("empty generator list")
    }

    pub fn unit(ring: &Arc<PolyRing>) -> Ideal {
        Ideal::new(ring, vec![Polynomial::one(ring)]).expect("unit generator")
    }

    pub fn principal(f: &Polynomial) -> Ideal {
        Ideal::new(f.ring(), vec![f.clone()]).expect("same ring")
    }

    pub fn with_options(mut self, opts: GbOptions) -> Ideal {
        if opts != self.opts {
            self.opts = opts;
            self.gb = Arc::new(OnceLock::new());
        }
        self
    }

    pub fn options(&self) -> &GbOptions {
        &self.opts
    }

    /// New ideal in the same ring and with the same options.
    pub fn derive(&self, gens: Vec<Polynomial>) -> Result<Ideal> {
        Ok(Ideal::new(&self.ring, gens)?.with_options(self.opts.clone()))
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.gens
    }

    /// Reduced Gröbner basis in the ring's order (cached).
    pub fn gb(&self) -> Result<Arc<GroebnerBasis>> {
        if let Some(g) = self.gb.get() {
            return Ok(g.clone());
        }
        let g = Arc::new(GroebnerBasis::compute(&self.ring, &self.gens, &self.opts)?);
        Ok(self.gb.get_or_init(|| g).clone())
    }

    /// The ideal generated by its own reduced basis.
    pub fn reduced(&self) -> Result<Ideal> {
        let g = self.gb()?;
        let out = self.derive(g.elements().to_vec())?;
        let _ = out.gb.set(g);
        Ok(out)
    }

    pub fn normal_form(&self, f: &Polynomial) -> Result<Polynomial> {
        self.gb()?.normal_form(f)
    }

    pub fn contains_poly(&self, f: &Polynomial) -> Result<bool> {
        self.gb()?.contains(f)
    }

    fn check_ring(&self, other: &Ideal) -> Result<()> {
        if Arc::ptr_eq(&self.ring, &other.ring) || *self.ring == *other.ring {
            Ok(())
        } else {
            Err(Error::RingMismatch(format!(
                "{:?} vs {:?}",
                self.ring, other.ring
            )))
        }
    }

    /// `other ⊆ self`: every generator of `other` reduces to zero.
    pub fn contains(&self, other: &Ideal) -> Result<bool> {
        self.check_ring(other)?;
        let g = self.gb()?;
        for f in &other.gens {
            if !g.contains(f)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// First generator of `other` (in its listed order) not in `self`.
    pub fn first_outside(&self, other: &Ideal) -> Result<Option<Polynomial>> {
        self.check_ring(other)?;
        let g = self.gb()?;
        for f in &other.gens {
            if !g.contains(f)? {
                return Ok(Some(f.clone()));
            }
        }
        Ok(None)
    }

    pub fn equals(&self, other: &Ideal) -> Result<bool> {
        Ok(self.contains(other)? && other.contains(self)?)
    }

    pub fn is_unit(&self) -> Result<bool> {
        Ok(self.gb()?.is_unit())
    }

    pub fn is_zero(&self) -> bool {
        self.gens.iter().all(|g| g.is_zero())
    }

    pub fn sum(&self, other: &Ideal) -> Result<Ideal> {
        self.check_ring(other)?;
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().cloned());
        self.derive(gens)
    }

    pub fn add_generators(&self, extra: &[Polynomial]) -> Result<Ideal> {
        let mut gens = self.gens.clone();
        gens.extend(extra.iter().cloned());
        self.derive(gens)
    }

    pub fn product(&self, other: &Ideal) -> Result<Ideal> {
        self.check_ring(other)?;
        let mut gens = Vec::new();
        for f in &self.gens {
            for g in &other.gens {
                gens.push(f.checked_mul(g)?);
            }
        }
        self.derive(gens)
    }

    /// Same generators, expressed in another ring by variable name.
    pub fn map_into(&self, ring: &Arc<PolyRing>) -> Result<Ideal> {
        let gens = self
            .gens
            .iter()
            .map(|g| g.map_into(ring))
            .collect::<Result<Vec<_>>>()?;
        Ok(Ideal::new(ring, gens)?.with_options(self.opts.clone()))
    }

    /// Applies a substitution to every generator.
    pub fn substitute(&self, assignments: &[(usize, Polynomial)]) -> Result<Ideal> {
        let target = assignments
            .first()
            .map(|(_, p)| p.ring().clone())
            .unwrap_or_else(|| self.ring.clone());
        let gens = self
            .gens
            .iter()
            .map(|g| g.substitute_into(assignments, &target))
            .collect::<Result<Vec<_>>>()?;
        Ok(Ideal::new(&target, gens)?.with_options(self.opts.clone()))
    }

    /// Every generator is homogeneous in total degree.
    pub fn is_homogeneous(&self) -> bool {
        self.gens.iter().all(|g| g.is_homogeneous())
    }
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<")?;
        for (i, g) in self.gens.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, ">")
    }
}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring() -> Arc<PolyRing> {
        PolyRing::plain(&["x", "y", "z"]).unwrap()
    }

    #[test]
    fn containment_examples() {
        let r = ring();
        let i = Ideal::parse(&r, "x^2, x*y").unwrap();
        assert!(i.contains(&Ideal::parse(&r, "x^2").unwrap()).unwrap());
        let sq = Ideal::parse(&r, "x^2").unwrap();
        assert!(!sq.contains(&Ideal::parse(&r, "x").unwrap()).unwrap());
    }

    #[test]
    fn equality_examples() {
        let r = ring();
        let a = Ideal::parse(&r, "x, y").unwrap();
        let b = Ideal::parse(&r, "x + y, x - y").unwrap();
        assert!(a.equals(&b).unwrap());
        let c = Ideal::parse(&r, "x").unwrap();
        let d = Ideal::parse(&r, "x^2").unwrap();
        assert!(!c.equals(&d).unwrap());
    }

    #[test]
    fn ring_mismatch() {
        let other = PolyRing::plain(&["x", "y"]).unwrap();
        let a = Ideal::parse(&ring(), "x").unwrap();
        let b = Ideal::parse(&other, "x").unwrap();
        assert!(matches!(a.contains(&b), Err(Error::RingMismatch(_))));
    }
}
