use super::{check_lands_in, HypersurfaceGroup, IdentityCheck};
use crate::error::{Error, Result};
use crate::poly::{Poly, PolyRing, RelationSet};

/// W x V with (w, v)(w', v') = (w + w' + h(v, v'), v + v').
///
/// Each component of `h` is a polynomial in 2n variables: the n coordinates
/// of v followed by the n coordinates of v'.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CocycleExtension {
    name: String,
    center: HypersurfaceGroup,
    base: HypersurfaceGroup,
    h: Vec<Poly>,
}

/// Outcome of every group-law check, in a fixed order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomReport {
    pub checks: Vec<IdentityCheck>,
}

impl AxiomReport {
    pub fn all_hold(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }
}

impl CocycleExtension {
    pub fn new(name: &str, center: HypersurfaceGroup, base: HypersurfaceGroup, h: Vec<Poly>) -> Result<Self> {
        if h.len() != center.nvars() {
            return Err(Error::Arity {
                expected: center.nvars(),
                got: h.len(),
            });
        }
        if let Some(bad) = h.iter().find(|c| c.nvars() != 2 * base.nvars()) {
            return Err(Error::Arity {
                expected: 2 * base.nvars(),
                got: bad.nvars(),
            });
        }
        Ok(CocycleExtension {
            name: name.to_string(),
            center,
            base,
            h,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn center(&self) -> &HypersurfaceGroup {
        &self.center
    }

    pub fn base(&self) -> &HypersurfaceGroup {
        &self.base
    }

    pub fn cocycle(&self) -> &[Poly] {
        &self.h
    }

    /// Names of the variables of h: V's coordinates, then primed copies.
    pub fn cocycle_var_names(&self) -> Vec<String> {
        let vars = self.base.vars();
        vars.iter()
            .cloned()
            .chain(vars.iter().map(|v| format!("{v}'")))
            .collect()
    }

    pub fn statement(&self) -> String {
        let names = self.cocycle_var_names();
        let parts: Vec<String> = self
            .h
            .iter()
            .enumerate()
            .map(|(i, c)| format!("h{} = {}", i + 1, c.display_with(&names)))
            .collect();
        format!(
            "extension {} center={} base={} : {}",
            self.name,
            self.center.name(),
            self.base.name(),
            parts.join(" ; ")
        )
    }

    fn n(&self) -> usize {
        self.base.nvars()
    }

    fn ring(&self, blocks: usize) -> PolyRing {
        PolyRing::new(self.base.field(), blocks * self.n())
    }

    /// Coordinates of block `b` in a ring of `blocks` copies of V.
    fn block(&self, blocks: usize, b: usize) -> Vec<Poly> {
        let ring = self.ring(blocks);
        (0..self.n()).map(|i| Poly::var(&ring, b * self.n() + i)).collect()
    }

    fn zeros(&self, blocks: usize) -> Vec<Poly> {
        vec![Poly::zero(&self.ring(blocks)); self.n()]
    }

    fn relations(&self, blocks: usize) -> Result<RelationSet> {
        let mut out = RelationSet::new(self.base.field(), blocks * self.n());
        for b in 0..blocks {
            out = out.union(&self.base.relations_at(b * self.n(), blocks * self.n())?)?;
        }
        Ok(out)
    }

    /// h(v, w) for coordinate tuples v, w over a common ring.
    pub fn h_at(&self, v: &[Poly], w: &[Poly]) -> Result<Vec<Poly>> {
        let images: Vec<Poly> = v.iter().chain(w).cloned().collect();
        self.h.iter().map(|c| c.substitute(&images)).collect()
    }

    fn sum(v: &[Poly], w: &[Poly]) -> Vec<Poly> {
        v.iter().zip(w).map(|(x, y)| x.add(y)).collect()
    }

    fn combine(terms: &[(bool, Vec<Poly>)]) -> Vec<Poly> {
        let mut acc = terms[0]
            .1
            .iter()
            .map(|p| if terms[0].0 { p.clone() } else { p.neg() })
            .collect::<Vec<_>>();
        for (positive, t) in &terms[1..] {
            for (a, p) in acc.iter_mut().zip(t) {
                *a = if *positive { a.add(p) } else { a.sub(p) };
            }
        }
        acc
    }

    /// Additivity in each slot, as identities in the ambient ring of three copies of G_a^n.
    pub fn check_biadditive(&self) -> Result<Vec<IdentityCheck>> {
        let (v, v1, v2) = (self.block(3, 0), self.block(3, 1), self.block(3, 2));
        let free = RelationSet::new(self.base.field(), 3 * self.n());
        let first = Self::combine(&[
            (true, self.h_at(&Self::sum(&v, &v2), &v1)?),
            (false, self.h_at(&v, &v1)?),
            (false, self.h_at(&v2, &v1)?),
        ]);
        let second = Self::combine(&[
            (true, self.h_at(&v, &Self::sum(&v1, &v2))?),
            (false, self.h_at(&v, &v1)?),
            (false, self.h_at(&v, &v2)?),
        ]);
        Ok(vec![
            IdentityCheck::decide("additive in first slot", first, free.clone())?,
            IdentityCheck::decide("additive in second slot", second, free)?,
        ])
    }

    /// Whether h maps V x V into W.
    pub fn check_lands_in(&self) -> Result<IdentityCheck> {
        check_lands_in(&self.h, &self.relations(2)?, &self.center)
    }

    /// Cocycle identity, two-sided identity and the stated inverse, modulo V's relation on every block.
    pub fn check_group_axioms(&self) -> Result<AxiomReport> {
        let (v, v1, v2) = (self.block(3, 0), self.block(3, 1), self.block(3, 2));
        let assoc = Self::combine(&[
            (true, self.h_at(&v, &v1)?),
            (true, self.h_at(&Self::sum(&v, &v1), &v2)?),
            (false, self.h_at(&v, &Self::sum(&v1, &v2))?),
            (false, self.h_at(&v1, &v2)?),
        ]);
        let u = self.block(1, 0);
        let zero = self.zeros(1);
        let minus_u: Vec<Poly> = u.iter().map(Poly::neg).collect();
        let rel1 = self.relations(1)?;
        Ok(AxiomReport {
            checks: vec![
                IdentityCheck::decide("associativity", assoc, self.relations(3)?)?,
                IdentityCheck::decide("left identity", self.h_at(&zero, &u)?, rel1.clone())?,
                IdentityCheck::decide("right identity", self.h_at(&u, &zero)?, rel1.clone())?,
                IdentityCheck::decide("inverse", self.h_at(&u, &minus_u)?, rel1)?,
            ],
        })
    }

    /// h(v, v') - h(v', v) = 0 on V x V.
    pub fn is_commutative(&self) -> Result<IdentityCheck> {
        let (v, v1) = (self.block(2, 0), self.block(2, 1));
        let diff = Self::combine(&[(true, self.h_at(&v, &v1)?), (false, self.h_at(&v1, &v)?)]);
        IdentityCheck::decide("commutative", diff, self.relations(2)?)
    }

    /// h(v, v) = 0 on V.
    pub fn is_alternating(&self) -> Result<IdentityCheck> {
        let v = self.block(1, 0);
        IdentityCheck::decide("alternating", self.h_at(&v, &v)?, self.relations(1)?)
    }
}
