use std::collections::BTreeMap;

use super::{Monomial, Poly};
use crate::error::{Error, Result};
use crate::field::{FieldElem, FieldSpec};
use crate::ppoly::PPoly;

/// A p-polynomial relation F = 0 solved for its pivot's top power.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub poly: PPoly<FieldElem>,
    pub pivot: usize,
}

impl Relation {
    /// The pivot exponent n and u^-1 F - X^(p^n).
    fn tail(&self) -> (u32, PPoly<FieldElem>) {
        let n = self.poly.top_exponent(self.pivot).unwrap();
        let u_inv = self.poly.leading_coeff(self.pivot).unwrap().inv().unwrap();
        let mut tail = self.poly.scale(&u_inv);
        tail.add_term(self.pivot, n, FieldElem::one(self.poly.field()).neg());
        (n, tail)
    }
}

/// Relations with pairwise distinct pivots and pairwise disjoint supports.
///
/// Disjoint supports make rewriting confluent: reducing by one relation
/// never touches the variables of another.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationSet {
    field: FieldSpec,
    nvars: usize,
    relations: Vec<Relation>,
}

impl RelationSet {
    pub fn new(field: &FieldSpec, nvars: usize) -> Self {
        RelationSet {
            field: field.clone(),
            nvars,
            relations: Vec::new(),
        }
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    pub fn is_empty(&self) -> bool {
        self.relations.is_empty()
    }

    pub fn push(&mut self, poly: PPoly<FieldElem>, pivot: usize) -> Result<()> {
        if poly.nvars() != self.nvars {
            return Err(Error::Arity {
                expected: self.nvars,
                got: poly.nvars(),
            });
        }
        if poly.field() != &self.field {
            return Err(Error::Precondition("relation over a different field".into()));
        }
        if poly.top_exponent(pivot).is_none() {
            return Err(Error::Precondition(format!(
                "pivot X{pivot} does not occur in its relation"
            )));
        }
        let support = poly.support();
        for r in &self.relations {
            if r.pivot == pivot {
                return Err(Error::Precondition(format!("two relations share the pivot X{pivot}")));
            }
            if r.poly.support().iter().any(|v| support.contains(v)) {
                return Err(Error::Precondition("relations must involve disjoint variables".into()));
            }
        }
        self.relations.push(Relation { poly, pivot });
        Ok(())
    }

    pub fn with(mut self, poly: PPoly<FieldElem>, pivot: usize) -> Result<Self> {
        self.push(poly, pivot)?;
        Ok(self)
    }

    /// Union of two sets over the same variables.
    pub fn union(&self, other: &RelationSet) -> Result<Self> {
        let mut out = self.clone();
        for r in &other.relations {
            out.push(r.poly.clone(), r.pivot)?;
        }
        Ok(out)
    }

    /// Rewrite until every pivot degree is below its bound p^n.
    pub fn normal_form(&self, h: &Poly) -> Result<Poly> {
        if h.nvars() != self.nvars {
            return Err(Error::Arity {
                expected: self.nvars,
                got: h.nvars(),
            });
        }
        let p = self.field.p() as u64;
        let tails: Vec<(u32, PPoly<FieldElem>)> = self.relations.iter().map(Relation::tail).collect();
        let bounds: Vec<u64> = tails.iter().map(|(n, _)| p.pow(*n)).collect();
        // tail^(p^e) as a polynomial, per relation, built on demand
        let mut powers: Vec<BTreeMap<u32, Poly>> = vec![BTreeMap::new(); tails.len()];
        let mut current = h.clone();
        loop {
            let mut next = Poly::zero(h.ring());
            let mut changed = false;
            for (m, c) in current.terms() {
                let hit = self
                    .relations
                    .iter()
                    .enumerate()
                    .find(|(i, r)| m.exponent(r.pivot) as u64 >= bounds[*i]);
                let Some((i, r)) = hit else {
                    next.add_term(m.clone(), c.clone());
                    continue;
                };
                changed = true;
                let k = m.exponent(r.pivot) as u64;
                let mut e = 0u32;
                while bounds[i] * p.pow(e + 1) <= k {
                    e += 1;
                }
                let step = bounds[i] * p.pow(e);
                let base = m.with_exponent(r.pivot, (k - step) as u32);
                let tail = powers[i]
                    .entry(e)
                    .or_insert_with(|| Poly::from_ppoly(&tails[i].1.frobenius_power(e)));
                for (tm, tc) in tail.terms() {
                    next.add_term(base.mul(tm), c.mul(tc).neg());
                }
            }
            current = next;
            if !changed {
                return Ok(current);
            }
        }
    }

    pub fn is_identically_zero(&self, h: &Poly) -> Result<bool> {
        Ok(self.normal_form(h)?.is_zero())
    }

    /// Whether `m` is already reduced.
    pub fn is_reduced(&self, m: &Monomial) -> bool {
        self.relations.iter().all(|r| {
            let n = r.poly.top_exponent(r.pivot).unwrap();
            (m.exponent(r.pivot) as usize) < self.field.p_pow(n)
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::PolyRing;

    fn v_a(k: &FieldSpec, nvars: usize, x: usize, y: usize) -> PPoly<FieldElem> {
        let a = FieldElem::gen(k);
        let one = FieldElem::one(k);
        PPoly::from_terms(k, nvars, [(x, 2, one.clone()), (x, 0, one.neg()), (y, 2, a)])
    }

    #[test]
    fn relation_reduces_itself_to_zero() {
        let k = FieldSpec::rational(3).unwrap();
        let f = v_a(&k, 2, 0, 1);
        let rs = RelationSet::new(&k, 2).with(f.clone(), 0).unwrap();
        assert!(rs.is_identically_zero(&Poly::from_ppoly(&f)).unwrap());
    }

    #[test]
    fn one_rewrite_of_a_product() {
        let k = FieldSpec::rational(3).unwrap();
        let a = FieldElem::gen(&k);
        let rs = RelationSet::new(&k, 4)
            .with(v_a(&k, 4, 0, 1), 0)
            .unwrap()
            .with(v_a(&k, 4, 2, 3), 2)
            .unwrap();
        let r = PolyRing::new(&k, 4);
        let (x, y, xp) = (Poly::var(&r, 0), Poly::var(&r, 1), Poly::var(&r, 2));
        let h = x.pow(9).mul(&xp);
        let expected = x.sub(&y.pow(9).scale(&a)).mul(&xp);
        assert_eq!(rs.normal_form(&h).unwrap(), expected);
    }

    #[test]
    fn rejects_overlapping_relations() {
        let k = FieldSpec::rational(3).unwrap();
        let rs = RelationSet::new(&k, 2).with(v_a(&k, 2, 0, 1), 0).unwrap();
        assert!(rs.clone().with(v_a(&k, 2, 1, 0), 1).is_err());
        assert!(RelationSet::new(&k, 2).with(v_a(&k, 2, 0, 1), 1).is_ok());
        assert!(rs.with(PPoly::var(&k, 2, 0), 0).is_err());
    }

    #[test]
    fn high_powers_reduce_below_the_bound() {
        let k = FieldSpec::rational(3).unwrap();
        let rs = RelationSet::new(&k, 2).with(v_a(&k, 2, 0, 1), 0).unwrap();
        let r = PolyRing::new(&k, 2);
        let h = Poly::var(&r, 0).pow(200).add(&Poly::var(&r, 1).pow(4));
        let nf = rs.normal_form(&h).unwrap();
        assert!(nf.terms().all(|(m, _)| rs.is_reduced(m)));
        assert_eq!(rs.normal_form(&nf).unwrap(), nf);
    }
}
