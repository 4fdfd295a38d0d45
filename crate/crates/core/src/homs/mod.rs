//! Homomorphisms between hypersurface groups, given by tuples of p-polynomials.
//!
//! A map into {F = 0} is a homomorphism exactly when F composed with it
//! vanishes on the source; coordinates are p-polynomials, so additivity is
//! automatic. Canonical forms reduce each coordinate below the source pivot
//! bound, which makes equality of morphisms a syntactic comparison.

mod derive;
mod solve;

use crate::error::{Error, Result};
use crate::field::{FieldElem, FieldSpec, ParamRing};
use crate::groups::{HypersurfaceGroup, IdentityCheck, Space};
use crate::poly::{Poly, PolyRing, RelationSet};
use crate::ppoly::{reduce_mod, PPoly};

pub use derive::{derive_hom_constraints, normalize, AnsatzCaps, ConstraintSystem, Unknown};
pub use solve::{solve_homs_bounded, Domain, SolveOptions, SolveResult};

/// A morphism source -> target whose coordinates are p-polynomials in the
/// source variables, with coefficients polynomial in the parameters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PPolyMap {
    name: String,
    source: Space,
    target: Space,
    params: ParamRing,
    coords: Vec<PPoly<Poly>>,
}

impl PPolyMap {
    pub fn new(name: &str, source: Space, target: Space, params: ParamRing, coords: Vec<PPoly<Poly>>) -> Result<Self> {
        if coords.len() != target.nvars() {
            return Err(Error::Arity {
                expected: target.nvars(),
                got: coords.len(),
            });
        }
        let ring = params.ring();
        for c in &coords {
            if c.nvars() != source.nvars() {
                return Err(Error::Arity {
                    expected: source.nvars(),
                    got: c.nvars(),
                });
            }
            if c.ctx() != &ring {
                return Err(Error::Input("map coordinates use a different coefficient ring".into()));
            }
        }
        Ok(PPolyMap {
            name: name.to_string(),
            source,
            target,
            params,
            coords,
        })
    }

    /// A map with coefficients in the field (no parameters).
    pub fn constant(name: &str, source: Space, target: Space, coords: Vec<PPoly<FieldElem>>) -> Result<Self> {
        let field = coords
            .first()
            .map(|c| c.field().clone())
            .ok_or_else(|| Error::Input("map without coordinates".into()))?;
        let params = ParamRing::empty(&field);
        let ring = params.ring();
        let coords = coords.iter().map(|c| c.lift::<Poly>(&ring)).collect();
        Self::new(name, source, target, params, coords)
    }

    pub fn identity(space: &Space, params: &ParamRing) -> Self {
        let ring = params.ring();
        PPolyMap {
            name: "id".into(),
            source: space.clone(),
            target: space.clone(),
            params: params.clone(),
            coords: PPoly::identity(&ring, space.nvars()),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn source(&self) -> &Space {
        &self.source
    }

    pub fn target(&self) -> &Space {
        &self.target
    }

    pub fn params(&self) -> &ParamRing {
        &self.params
    }

    pub fn coords(&self) -> &[PPoly<Poly>] {
        &self.coords
    }

    pub fn field(&self) -> &FieldSpec {
        self.params.field()
    }

    pub fn with_name(mut self, name: &str) -> Self {
        self.name = name.to_string();
        self
    }

    /// Each coordinate reduced modulo F_source at the source pivot, and each
    /// coefficient reduced modulo the parameter relations.
    pub fn canonical_form(&self) -> Result<PPolyMap> {
        let ring = self.params.ring();
        let mut coords = Vec::with_capacity(self.coords.len());
        for c in &self.coords {
            let reduced = match &self.source {
                Space::Group(g) => reduce_mod(c, &g.poly().lift::<Poly>(&ring), g.pivot())?.remainder,
                Space::AffineLine => c.clone(),
            };
            let mut out = PPoly::zero(&ring, reduced.nvars());
            for (v, e, coeff) in reduced.terms() {
                out.add_term(v, e, self.params.reduce(coeff)?);
            }
            coords.push(out);
        }
        Ok(PPolyMap { coords, ..self.clone() })
    }

    /// The ring of source variables followed by parameters, with both sets of relations.
    pub fn ambient_relations(&self) -> Result<RelationSet> {
        let n = self.source.nvars();
        let total = n + self.params.len();
        self.source
            .relations_at(self.field(), 0, total)?
            .union(&self.params.shifted_relations(n, total)?)
    }

    /// F_target(coords) as a polynomial in source variables and parameters.
    pub fn landing_polynomial(&self) -> Result<Option<Poly>> {
        let Space::Group(t) = &self.target else {
            return Ok(None);
        };
        let ring = self.params.ring();
        let composed = t.poly().lift::<Poly>(&ring).compose(&self.coords)?;
        Ok(Some(Poly::from_param_ppoly(&composed)))
    }

    /// The landing condition F_target(m) = 0 modulo the source and parameter relations.
    pub fn verify_hom(&self) -> Result<IdentityCheck> {
        let relations = self.ambient_relations()?;
        let polys = self.landing_polynomial()?.into_iter().collect();
        IdentityCheck::decide(
            format!(
                "{} is a homomorphism {} -> {}",
                self.name,
                self.source.name(),
                self.target.name()
            ),
            polys,
            relations,
        )
    }

    /// self after `first`: first: A -> B, self: B -> C.
    pub fn after(&self, first: &PPolyMap) -> Result<PPolyMap> {
        if first.target != self.source {
            return Err(Error::Input(format!(
                "cannot compose {} after {}: spaces differ",
                self.name, first.name
            )));
        }
        if first.params != self.params {
            return Err(Error::Input("composed maps must share their parameters".into()));
        }
        let coords = self
            .coords
            .iter()
            .map(|c| c.compose(&first.coords))
            .collect::<Result<_>>()?;
        Ok(PPolyMap {
            name: format!("{}.{}", self.name, first.name),
            source: first.source.clone(),
            target: self.target.clone(),
            params: self.params.clone(),
            coords,
        })
    }

    /// Coordinatewise difference, as polynomials over source variables and parameters.
    fn difference_polys(&self, other: &PPolyMap) -> Vec<Poly> {
        self.coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| Poly::from_param_ppoly(&a.sub(b)))
            .collect()
    }

    /// Whether the two maps agree as morphisms, decided by canonical forms.
    pub fn equals_as_morphism(&self, other: &PPolyMap, label: &str) -> Result<IdentityCheck> {
        if self.source != other.source || self.target != other.target {
            return Err(Error::Input("maps between different spaces".into()));
        }
        let holds = self.canonical_form()?.coords == other.canonical_form()?.coords;
        Ok(IdentityCheck {
            label: label.to_string(),
            holds,
            polys: self.difference_polys(other),
            relations: self.ambient_relations()?,
        })
    }

    /// `map <name> from=.. to=.. : <var> -> <p-poly> ; ...`.
    pub fn statement(&self) -> String {
        let src = self.source.var_names();
        let tgt = self.target.var_names();
        let parts: Vec<String> = tgt
            .iter()
            .zip(&self.coords)
            .map(|(t, c)| format!("{t} -> {}", coord_string(c, &src, self.params.names())))
            .collect();
        format!(
            "map {} from={} to={} : {}",
            self.name,
            self.source.name(),
            self.target.name(),
            parts.join(" ; ")
        )
    }
}

/// A p-polynomial with parameter-polynomial coefficients in the text grammar.
pub fn coord_string(c: &PPoly<Poly>, vars: &[String], params: &[String]) -> String {
    if c.is_zero() {
        return "0".into();
    }
    let parts: Vec<String> = c
        .terms()
        .map(|(v, e, coeff)| {
            let s = coeff.display_with(params).to_string();
            let s = if coeff.len() > 1 { format!("({s})") } else { s };
            format!("{s}*{}^(p^{e})", vars[v])
        })
        .collect();
    parts.join(" + ")
}

/// X_i -> X_i^(p^n) from G to its n-fold Frobenius twist.
pub fn relative_frobenius_map(g: &HypersurfaceGroup, n: u32) -> PPolyMap {
    let field = g.field().clone();
    let params = ParamRing::empty(&field);
    let ring: PolyRing = params.ring();
    let coords = (0..g.nvars())
        .map(|i| PPoly::monomial(&ring, g.nvars(), i, n, Poly::one(&ring)))
        .collect();
    PPolyMap {
        name: format!("frob{n}"),
        source: Space::Group(g.clone()),
        target: Space::Group(g.twist(n)),
        params,
        coords,
    }
}

/// Both maps are homomorphisms and both composites are identities.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InverseReport {
    pub checks: Vec<IdentityCheck>,
}

impl InverseReport {
    pub fn holds(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }
}

pub fn verify_mutual_inverse(f: &PPolyMap, g: &PPolyMap) -> Result<InverseReport> {
    let gf = g.after(f)?;
    let fg = f.after(g)?;
    let id_a = PPolyMap::identity(f.source(), f.params());
    let id_b = PPolyMap::identity(g.source(), g.params());
    Ok(InverseReport {
        checks: vec![
            f.verify_hom()?,
            g.verify_hom()?,
            gf.equals_as_morphism(
                &id_a,
                &format!("{} after {} is the identity of {}", g.name, f.name, f.source.name()),
            )?,
            fg.equals_as_morphism(
                &id_b,
                &format!("{} after {} is the identity of {}", f.name, g.name, g.source.name()),
            )?,
        ],
    })
}
