//! Coefficient constraints for homomorphisms with a bounded p-polynomial ansatz.

use super::PPolyMap;
use crate::error::{Error, Result};
use crate::field::{FieldElem, FieldSpec, ParamRing};
use crate::groups::Space;
use crate::poly::{Poly, PolyRing};
use crate::ppoly::{reduce_mod, PPoly};

/// One unknown coefficient: the term c * X_var^(p^exp) of coordinate `coord`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Unknown {
    pub name: String,
    pub coord: usize,
    pub var: usize,
    pub exp: u32,
}

/// Largest Frobenius exponent allowed per (target coordinate, source variable);
/// `None` leaves the variable out of that coordinate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnsatzCaps {
    pub caps: Vec<Vec<Option<u32>>>,
}

impl AnsatzCaps {
    /// Pivot below p^N_pivot; every other variable up to the target's largest
    /// exponent plus the source's.
    pub fn default_for(source: &Space, target: &Space) -> Self {
        let src_max = source.group().and_then(|g| g.poly().max_exponent()).unwrap_or(0);
        let tgt_max = target.group().and_then(|g| g.poly().max_exponent()).unwrap_or(0);
        let row: Vec<Option<u32>> = (0..source.nvars())
            .map(|v| match source.group() {
                Some(g) if g.pivot() == v => g.pivot_exponent().checked_sub(1),
                _ => Some(src_max + tgt_max),
            })
            .collect();
        AnsatzCaps {
            caps: vec![row; target.nvars()],
        }
    }

    pub fn set(&mut self, coord: usize, var: usize, cap: Option<u32>) {
        self.caps[coord][var] = cap;
    }
}

/// The generic map and the coefficients of F_target(ansatz) mod F_source.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstraintSystem {
    pub source: Space,
    pub target: Space,
    pub unknowns: Vec<Unknown>,
    pub ring: PolyRing,
    /// (source variable, exponent) of the remainder term each constraint comes from.
    pub positions: Vec<(usize, u32)>,
    pub constraints: Vec<Poly>,
}

impl ConstraintSystem {
    pub fn unknown_names(&self) -> Vec<String> {
        self.unknowns.iter().map(|u| u.name.clone()).collect()
    }

    /// Each constraint divided by the coefficient of its graded-lex leading term.
    pub fn normalized(&self) -> Vec<Poly> {
        self.constraints.iter().map(normalize).collect()
    }

    /// The ansatz with unknowns as parameters.
    pub fn generic_map(&self) -> Result<PPolyMap> {
        let params = ParamRing::new(self.ring.field(), self.unknown_names())?;
        let mut coords = vec![PPoly::zero(&self.ring, self.source.nvars()); self.target.nvars()];
        for (i, u) in self.unknowns.iter().enumerate() {
            coords[u.coord].add_term(u.var, u.exp, Poly::var(&self.ring, i));
        }
        PPolyMap::new("ansatz", self.source.clone(), self.target.clone(), params, coords)
    }

    /// The map obtained by giving each unknown a value.
    pub fn instantiate(&self, values: &[FieldElem]) -> Result<PPolyMap> {
        if values.len() != self.unknowns.len() {
            return Err(Error::Arity {
                expected: self.unknowns.len(),
                got: values.len(),
            });
        }
        let field = self.ring.field();
        let mut coords = vec![PPoly::zero(field, self.source.nvars()); self.target.nvars()];
        for (u, x) in self.unknowns.iter().zip(values) {
            coords[u.coord].add_term(u.var, u.exp, x.clone());
        }
        PPolyMap::constant("hom", self.source.clone(), self.target.clone(), coords)
    }

    /// One constraint per line.
    pub fn lines(&self) -> Vec<String> {
        let names = self.unknown_names();
        self.constraints
            .iter()
            .map(|c| c.display_with(&names).to_string())
            .collect()
    }
}

pub fn normalize(c: &Poly) -> Poly {
    match c.leading_term() {
        Some((_, lead)) => c.scale(&lead.inv().unwrap()),
        None => c.clone(),
    }
}

/// Constraints on the coefficients of homomorphisms source -> target within the caps.
pub fn derive_hom_constraints(
    field: &FieldSpec,
    source: &Space,
    target: &Space,
    caps: &AnsatzCaps,
) -> Result<ConstraintSystem> {
    if caps.caps.len() != target.nvars() {
        return Err(Error::Arity {
            expected: target.nvars(),
            got: caps.caps.len(),
        });
    }
    let src_names = source.var_names();
    let mut unknowns = Vec::new();
    for (coord, row) in caps.caps.iter().enumerate() {
        if row.len() != source.nvars() {
            return Err(Error::Arity {
                expected: source.nvars(),
                got: row.len(),
            });
        }
        for (var, cap) in row.iter().enumerate() {
            let Some(cap) = *cap else { continue };
            if let Some(g) = source.group() {
                if g.pivot() == var && cap >= g.pivot_exponent() {
                    return Err(Error::Input(format!(
                        "cap p^{cap} on pivot {} exceeds the canonical bound p^{}",
                        src_names[var],
                        g.pivot_exponent().saturating_sub(1)
                    )));
                }
            }
            for exp in 0..=cap {
                unknowns.push(Unknown {
                    name: format!("c{coord}_{}{exp}", src_names[var]),
                    coord,
                    var,
                    exp,
                });
            }
        }
    }
    let ring = PolyRing::new(field, unknowns.len());
    let mut ansatz = vec![PPoly::zero(&ring, source.nvars()); target.nvars()];
    for (i, u) in unknowns.iter().enumerate() {
        ansatz[u.coord].add_term(u.var, u.exp, Poly::var(&ring, i));
    }
    let (positions, constraints) = match target.group() {
        None => (Vec::new(), Vec::new()),
        Some(t) => {
            let composed = t.poly().lift::<Poly>(&ring).compose(&ansatz)?;
            let remainder = match source.group() {
                Some(g) => reduce_mod(&composed, &g.poly().lift::<Poly>(&ring), g.pivot())?.remainder,
                None => composed,
            };
            remainder.terms().map(|(v, e, c)| ((v, e), c.clone())).unzip()
        }
    };
    Ok(ConstraintSystem {
        source: source.clone(),
        target: target.clone(),
        unknowns,
        ring,
        positions,
        constraints,
    })
}
