//! Unipotent groups presented as kernels {F = 0} of p-polynomials, and
//! central extensions of one such group by another through a bi-additive cocycle.

mod extension;

use std::fmt;

pub use extension::{AxiomReport, CocycleExtension};

use crate::error::{Error, Result};
use crate::field::{FieldElem, FieldSpec};
use crate::poly::{random_point_oracle, OracleOptions, Poly, RelationSet};
use crate::ppoly::{decide_no_nontrivial_zero, DecideOptions, PPoly, Verdict, ZeroDecision};

/// The subgroup {F = 0} of G_a^n with a pivot variable whose top coefficient is a unit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HypersurfaceGroup {
    name: String,
    vars: Vec<String>,
    poly: PPoly<FieldElem>,
    pivot: usize,
}

impl HypersurfaceGroup {
    pub fn new(name: &str, vars: Vec<String>, poly: PPoly<FieldElem>, pivot: usize) -> Result<Self> {
        if vars.len() != poly.nvars() {
            return Err(Error::Arity {
                expected: vars.len(),
                got: poly.nvars(),
            });
        }
        if poly.is_zero() {
            return Err(Error::Input(format!("group {name}: defining polynomial is zero")));
        }
        if pivot >= vars.len() || poly.top_exponent(pivot).is_none() {
            return Err(Error::Precondition(format!(
                "group {name}: pivot does not occur in the defining polynomial"
            )));
        }
        Ok(HypersurfaceGroup {
            name: name.to_string(),
            vars,
            poly,
            pivot,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn poly(&self) -> &PPoly<FieldElem> {
        &self.poly
    }

    pub fn pivot(&self) -> usize {
        self.pivot
    }

    /// N with the pivot occurring as X^(p^N).
    pub fn pivot_exponent(&self) -> u32 {
        self.poly.top_exponent(self.pivot).unwrap()
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn field(&self) -> &FieldSpec {
        self.poly.field()
    }

    /// The defining relation placed on variables offset..offset+n of an `nvars`-variable ring.
    pub fn relations_at(&self, offset: usize, nvars: usize) -> Result<RelationSet> {
        RelationSet::new(self.field(), nvars).with(self.poly.shift_vars(offset, nvars), self.pivot + offset)
    }

    pub fn relations(&self) -> RelationSet {
        self.relations_at(0, self.nvars())
            .expect("a group's own relation is valid")
    }

    /// The group defined by F with every coefficient raised to the p^n-th power.
    pub fn twist(&self, n: u32) -> HypersurfaceGroup {
        let name = if n == 0 {
            self.name.clone()
        } else {
            format!("{}_tw{n}", self.name)
        };
        HypersurfaceGroup {
            name,
            vars: self.vars.clone(),
            poly: self.poly.frobenius_twist(n),
            pivot: self.pivot,
        }
    }

    /// Same group over a deeper tower.
    pub fn embed(&self, target: &FieldSpec) -> Result<Self> {
        Ok(HypersurfaceGroup {
            poly: self.poly.embed(target)?,
            ..self.clone()
        })
    }

    /// `group <name> vars=.. pivot=.. : <p-poly>`.
    pub fn statement(&self) -> String {
        format!(
            "group {} vars={} pivot={} : {}",
            self.name,
            self.vars.join(","),
            self.vars[self.pivot],
            self.poly.display_with(&self.vars)
        )
    }
}

/// A group or the affine line G_a (one variable, no relation).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Space {
    Group(HypersurfaceGroup),
    AffineLine,
}

/// Coordinate name of the affine line.
pub const LINE_VAR: &str = "T";

impl Space {
    pub fn nvars(&self) -> usize {
        match self {
            Space::Group(g) => g.nvars(),
            Space::AffineLine => 1,
        }
    }

    pub fn var_names(&self) -> Vec<String> {
        match self {
            Space::Group(g) => g.vars().to_vec(),
            Space::AffineLine => vec![LINE_VAR.to_string()],
        }
    }

    pub fn name(&self) -> &str {
        match self {
            Space::Group(g) => g.name(),
            Space::AffineLine => "Ga",
        }
    }

    pub fn group(&self) -> Option<&HypersurfaceGroup> {
        match self {
            Space::Group(g) => Some(g),
            Space::AffineLine => None,
        }
    }

    pub fn relations_at(&self, field: &FieldSpec, offset: usize, nvars: usize) -> Result<RelationSet> {
        match self {
            Space::Group(g) => g.relations_at(offset, nvars),
            Space::AffineLine => Ok(RelationSet::new(field, nvars)),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Connected {
    Yes,
    Unknown,
}

impl fmt::Display for Connected {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Connected::Yes => "yes",
            Connected::Unknown => "unknown",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassificationReport {
    pub smooth: bool,
    pub connected: Connected,
    /// Variable occurring in a single term, when connectedness was shown by projection.
    pub connected_via: Option<usize>,
    pub principal_part: PPoly<FieldElem>,
    pub wound: ZeroDecision,
    pub dimension: usize,
}

impl ClassificationReport {
    pub fn wound_verdict(&self) -> Verdict {
        self.wound.verdict()
    }
}

/// Smoothness from the linear part, connectedness from a variable occurring in
/// exactly one term, woundness from the principal part.
pub fn classify(g: &HypersurfaceGroup, opts: &DecideOptions) -> Result<ClassificationReport> {
    let f = g.poly();
    let connected_via = f.support().into_iter().find(|&v| f.occurrences(v) == 1);
    let principal_part = f.principal_part();
    let wound = decide_no_nontrivial_zero(&principal_part, opts)?;
    Ok(ClassificationReport {
        smooth: f.is_smooth(),
        connected: if connected_via.is_some() {
            Connected::Yes
        } else {
            Connected::Unknown
        },
        connected_via,
        principal_part,
        wound,
        dimension: g.nvars() - 1,
    })
}

/// A polynomial identity claim: every entry of `polys` vanishes modulo `relations`.
///
/// `polys` are kept unreduced so that an independent check (such as the
/// random point oracle) can be run on exactly what was decided.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityCheck {
    pub label: String,
    pub holds: bool,
    pub polys: Vec<Poly>,
    pub relations: RelationSet,
}

impl IdentityCheck {
    pub fn decide(label: impl Into<String>, polys: Vec<Poly>, relations: RelationSet) -> Result<Self> {
        let mut holds = true;
        for p in &polys {
            if !relations.is_identically_zero(p)? {
                holds = false;
                break;
            }
        }
        Ok(IdentityCheck {
            label: label.into(),
            holds,
            polys,
            relations,
        })
    }

    /// The random point oracle on every polynomial of the claim.
    pub fn oracle(&self, opts: &OracleOptions) -> Result<bool> {
        for p in &self.polys {
            if !random_point_oracle(p, &self.relations, opts)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// One-sided agreement: a proven identity passes every trial, and a
    /// failed trial only happens for a refuted identity.
    pub fn oracle_agrees(&self, opts: &OracleOptions) -> Result<bool> {
        let sampled = self.oracle(opts)?;
        Ok(!self.holds || sampled)
    }
}

/// Whether F_target(map) vanishes modulo the source relations.
pub fn check_lands_in(map: &[Poly], source: &RelationSet, target: &HypersurfaceGroup) -> Result<IdentityCheck> {
    if map.len() != target.nvars() {
        return Err(Error::Arity {
            expected: target.nvars(),
            got: map.len(),
        });
    }
    if let Some(bad) = map.iter().find(|m| m.nvars() != source.nvars()) {
        return Err(Error::Arity {
            expected: source.nvars(),
            got: bad.nvars(),
        });
    }
    let composed = Poly::from_ppoly(target.poly()).substitute(map)?;
    IdentityCheck::decide(format!("lands in {}", target.name()), vec![composed], source.clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::PolyRing;

    fn names(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    fn w_a(k: &FieldSpec) -> HypersurfaceGroup {
        let a = FieldElem::gen(k);
        let one = FieldElem::one(k);
        let f = PPoly::from_terms(k, 2, [(0, 0, one.clone()), (0, 1, one), (1, 1, a)]);
        HypersurfaceGroup::new("W_a", names(&["X", "Y"]), f, 0).unwrap()
    }

    #[test]
    fn classify_w_a() {
        let k = FieldSpec::rational(3).unwrap();
        let r = classify(&w_a(&k), &DecideOptions::default()).unwrap();
        assert!(r.smooth);
        assert_eq!(r.connected, Connected::Yes);
        assert_eq!(r.connected_via, Some(1));
        assert_eq!(r.wound_verdict(), Verdict::NoZero);
        assert_eq!(r.dimension, 1);
    }

    #[test]
    fn split_line_is_not_wound() {
        let k = FieldSpec::rational(3).unwrap();
        let g = HypersurfaceGroup::new("L", names(&["X", "Y"]), PPoly::var(&k, 2, 1), 1).unwrap();
        let r = classify(&g, &DecideOptions::default()).unwrap();
        assert!(r.smooth);
        assert_eq!(r.connected, Connected::Yes);
        let one = FieldElem::one(&k);
        assert_eq!(r.wound.witness().unwrap(), &[one, FieldElem::zero(&k)][..]);
    }

    #[test]
    fn twist_keeps_term_structure() {
        let k = FieldSpec::rational(3).unwrap();
        let g = w_a(&k);
        let t = g.twist(1);
        assert_eq!(t.poly().coeff(1, 1).unwrap(), &FieldElem::gen(&k).pow_u64(3));
        let r = classify(&t, &DecideOptions::default()).unwrap();
        let a = FieldElem::gen(&k);
        assert_eq!(r.wound.witness().unwrap(), &[a.neg(), FieldElem::one(&k)][..]);
        assert_eq!(g.twist(0), g);
    }

    #[test]
    fn zero_map_lands_anywhere() {
        let k = FieldSpec::rational(3).unwrap();
        let g = w_a(&k);
        let ring = PolyRing::new(&k, 1);
        let zero = Poly::zero(&ring);
        let check = check_lands_in(&[zero.clone(), zero], &RelationSet::new(&k, 1), &g).unwrap();
        assert!(check.holds);
    }

    #[test]
    fn statement_echoes_canonical_form() {
        let k = FieldSpec::rational(3).unwrap();
        assert_eq!(
            w_a(&k).statement(),
            "group W_a vars=X,Y pivot=X : 1*X^(p^0) + 1*X^(p^1) + a*Y^(p^1)"
        );
    }
}
