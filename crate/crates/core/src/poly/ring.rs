use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use super::monomial::MAX_VARS;
use super::order::MonomialOrder;
use crate::error::{Error, Result};

/// Ambient polynomial ring over the rationals.
///
/// Besides variable names and the monomial order, a ring may designate a
/// family parameter `t` and a block of direction variables. Direction
/// variables are paired positionally with the remaining "base" variables:
/// the `k`-th direction variable is the tangent coordinate dual to
/// `∂/∂x_k` for the `k`-th base variable.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PolyRing {
    names: Vec<String>,
    param: Option<usize>,
    /// `(base, direction)` index pairs.
    pairs: Vec<(usize, usize)>,
    order: MonomialOrder,
}

impl PolyRing {
    pub fn new<S: AsRef<str>>(
        names: &[S],
        param: Option<&str>,
        directions: &[&str],
        order: MonomialOrder,
    ) -> Result<Arc<PolyRing>> {
        let names: Vec<String> = names.iter().map(|s| s.as_ref().to_string()).collect();
        if names.len() > MAX_VARS {
            return Err(Error::InvalidRing(format!(
                "{} variables declared, at most {MAX_VARS} supported",
                names.len()
            )));
        }
        let mut seen = HashSet::new();
        for n in &names {
            if !is_identifier(n) {
                return Err(Error::InvalidRing(format!(
                    "`{n}` is not a valid variable name"
                )));
            }
            if !seen.insert(n.as_str()) {
                return Err(Error::InvalidRing(format!("variable `{n}` declared twice")));
            }
        }
        let index = |n: &str| {
            names
                .iter()
                .position(|x| x == n)
                .ok_or_else(|| Error::UnknownVariable(n.to_string()))
        };
        let param = param.map(index).transpose()?;
        let mut dirs = Vec::with_capacity(directions.len());
        for d in directions {
            let i = index(d)?;
            if Some(i) == param || dirs.contains(&i) {
                return Err(Error::InvalidRing(format!(
                    "direction variable `{d}` must be distinct from the parameter and other directions"
                )));
            }
            dirs.push(i);
        }
        let pairs = if dirs.is_empty() {
            Vec::new()
        } else {
            let base: Vec<usize> = (0..names.len())
                .filter(|i| Some(*i) != param && !dirs.contains(i))
                .collect();
            if base.len() != dirs.len() {
                return Err(Error::InvalidRing(format!(
                    "{} direction variables for {} base variables",
                    dirs.len(),
                    base.len()
                )));
            }
            base.into_iter().zip(dirs).collect()
        };
        let ring = PolyRing {
            names,
            param,
            pairs,
            order,
        };
        if let MonomialOrder::Block { first, .. } = ring.order {
            if ring.nvars() < 32 && first >> ring.nvars() != 0 {
                return Err(Error::InvalidRing(
                    "block order names a missing variable".into(),
                ));
            }
        }
        Ok(Arc::new(ring))
    }

    /// Ring with the given variables, grevlex order, no parameter.
    pub fn plain<S: AsRef<str>>(names: &[S]) -> Result<Arc<PolyRing>> {
        Self::new(names, None, &[], MonomialOrder::Grevlex)
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn var_index(&self, name: &str) -> Result<usize> {
        self.index_of(name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))
    }

    pub fn param(&self) -> Option<usize> {
        self.param
    }

    pub fn require_param(&self) -> Result<usize> {
        self.param.ok_or(Error::NoParameter)
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    /// Direction variables in pairing order.
    pub fn directions(&self) -> Vec<usize> {
        self.pairs.iter().map(|p| p.1).collect()
    }

    pub fn has_directions(&self) -> bool {
        !self.pairs.is_empty()
    }

    /// Base variables: those paired with a direction when directions are
    /// declared, otherwise every variable except the parameter.
    pub fn base_vars(&self) -> Vec<usize> {
        if self.pairs.is_empty() {
            (0..self.nvars())
                .filter(|i| Some(*i) != self.param)
                .collect()
        } else {
            self.pairs.iter().map(|p| p.0).collect()
        }
    }

    /// `(base, direction)` pairs; empty when no directions are declared.
    pub fn direction_pairs(&self) -> Vec<(usize, usize)> {
        self.pairs.clone()
    }

    pub fn mask_of(vars: &[usize]) -> u32 {
        vars.iter().fold(0u32, |m, &v| m | (1 << v))
    }

    pub fn same_variables(&self, other: &PolyRing) -> bool {
        self.names == other.names && self.param == other.param
    }

    pub fn with_order(&self, order: MonomialOrder) -> Arc<PolyRing> {
        Arc::new(PolyRing {
            order,
            ..self.clone()
        })
    }

    pub fn with_param(&self, param: Option<&str>) -> Result<Arc<PolyRing>> {
        let param = param.map(|p| self.var_index(p)).transpose()?;
        if let Some(p) = param {
            if self.pairs.iter().any(|&(b, d)| b == p || d == p) {
                return Err(Error::InvalidRing(format!(
                    "`{}` is paired with a direction and cannot be the parameter",
                    self.names[p]
                )));
            }
        }
        Ok(Arc::new(PolyRing {
            param,
            ..self.clone()
        }))
    }

    /// A fresh variable name not already used in the ring.
    pub fn fresh_name(&self, stem: &str) -> String {
        if self.index_of(stem).is_none() {
            return stem.to_string();
        }
        (1..)
            .map(|k| format!("{stem}{k}"))
            .find(|n| self.index_of(n).is_none())
            .unwrap()
    }

    /// Ring with `extra` variables prepended, carrying over the parameter and
    /// direction designations. The order is an elimination order with the new
    /// variables in the first block and grevlex inside each block.
    pub fn extend_front(&self, extra: &[String]) -> Result<Arc<PolyRing>> {
        let mut names: Vec<String> = extra.to_vec();
        names.extend(self.names.iter().cloned());
        let k = extra.len();
        let first: Vec<usize> = (0..k).collect();
        let ring = Self::new(&names, None, &[], MonomialOrder::elimination(&first))?;
        Ok(Arc::new(PolyRing {
            param: self.param.map(|p| p + k),
            pairs: self.pairs.iter().map(|&(b, d)| (b + k, d + k)).collect(),
            ..(*ring).clone()
        }))
    }

    /// Ring obtained by adding direction variables for every base variable
    /// (named `d<base>` unless taken). The parameter, if any, is kept last.
    pub fn tangent_ring(&self) -> Result<Arc<PolyRing>> {
        if self.has_directions() {
            return Ok(Arc::new(self.clone()));
        }
        let base = self.base_vars();
        let mut names: Vec<String> = base.iter().map(|&i| self.names[i].clone()).collect();
        let mut dirs = Vec::new();
        for &b in &base {
            let mut cand = format!("d{}", self.names[b]);
            let mut k = 1;
            while self.index_of(&cand).is_some() || names.contains(&cand) {
                cand = format!("d{}_{k}", self.names[b]);
                k += 1;
            }
            names.push(cand.clone());
            dirs.push(cand);
        }
        if let Some(p) = self.param {
            names.push(self.names[p].clone());
        }
        let dir_refs: Vec<&str> = dirs.iter().map(|s| s.as_str()).collect();
        let order = match self.order {
            MonomialOrder::Block { .. } => MonomialOrder::Grevlex,
            ref o => o.clone(),
        };
        Self::new(
            &names,
            self.param.map(|p| self.names[p].as_str()),
            &dir_refs,
            order,
        )
    }
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl fmt::Debug for PolyRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QQ[{}]", self.names.join(","))?;
        if let Some(p) = self.param {
            write!(f, " param {}", self.names[p])?;
        }
        if !self.pairs.is_empty() {
            let d: Vec<&str> = self
                .pairs
                .iter()
                .map(|&(_, i)| self.names[i].as_str())
                .collect();
            write!(f, " dirs {}", d.join(","))?;
        }
        write!(f, " {}", self.order.name())
    }
}
