//! Coefficient rings F_q(b)[params] / (relations).

use super::FieldSpec;
use crate::error::{Error, Result};
use crate::field::FieldElem;
use crate::poly::{Poly, PolyRing, RelationSet};
use crate::ppoly::PPoly;

/// Parameters adjoined as transcendentals, reduced only through explicit
/// pivoted p-polynomial relations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParamRing {
    names: Vec<String>,
    relations: RelationSet,
}

impl ParamRing {
    pub fn new(field: &FieldSpec, names: Vec<String>) -> Result<Self> {
        for (i, n) in names.iter().enumerate() {
            if names[..i].contains(n) {
                return Err(Error::Input(format!("parameter {n} declared twice")));
            }
        }
        let relations = RelationSet::new(field, names.len());
        Ok(ParamRing { names, relations })
    }

    /// No parameters at all.
    pub fn empty(field: &FieldSpec) -> Self {
        ParamRing {
            names: Vec::new(),
            relations: RelationSet::new(field, 0),
        }
    }

    pub fn field(&self) -> &FieldSpec {
        self.relations.field()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn ring(&self) -> PolyRing {
        PolyRing::new(self.field(), self.names.len())
    }

    pub fn relations(&self) -> &RelationSet {
        &self.relations
    }

    /// Add the relation `poly = 0`, solved for `pivot`.
    pub fn add_relation(&mut self, poly: PPoly<FieldElem>, pivot: usize) -> Result<()> {
        self.relations.push(poly, pivot)
    }

    /// The parameter d as an element of the coefficient ring.
    pub fn param(&self, i: usize) -> Poly {
        Poly::var(&self.ring(), i)
    }

    pub fn reduce(&self, x: &Poly) -> Result<Poly> {
        self.relations.normal_form(x)
    }

    /// The relations moved to variables offset..offset+len of an `nvars`-variable ring.
    pub fn shifted_relations(&self, offset: usize, nvars: usize) -> Result<RelationSet> {
        if offset + self.len() > nvars {
            return Err(Error::Arity {
                expected: offset + self.len(),
                got: nvars,
            });
        }
        let mut out = RelationSet::new(self.field(), nvars);
        for r in self.relations.relations() {
            out.push(r.poly.shift_vars(offset, nvars), r.pivot + offset)?;
        }
        Ok(out)
    }
}
