//! Multivariate p-polynomials: sums of c * X_i^(p^e).
//!
//! Such a polynomial defines an additive map G_a^n -> G_a. This module holds
//! the algebra (composition, Frobenius twists, principal and linear parts),
//! division by a p-polynomial with a unit pivot coefficient, and the
//! nontrivial-zero decision used to certify woundness.

mod coeff;
pub mod decide;
mod reduce;
pub mod search;

use std::collections::BTreeMap;
use std::fmt;

pub use coeff::Coeff;
pub use decide::{decide_no_nontrivial_zero, DecideOptions, NoZeroCertificate, Stage, Verdict, ZeroDecision};
pub use reduce::{default_pivot, reduce_mod, ReductionStep, ReductionTrace};

use crate::error::{Error, Result};
use crate::field::{as_factor, FieldElem, FieldSpec};

/// Sum of `coeff * X_var^(p^exp)` over the stored `(var, exp)` keys.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PPoly<C: Coeff> {
    ctx: C::Ctx,
    nvars: usize,
    terms: BTreeMap<(usize, u32), C>,
}

impl<C: Coeff> PPoly<C> {
    pub fn zero(ctx: &C::Ctx, nvars: usize) -> Self {
        PPoly {
            ctx: ctx.clone(),
            nvars,
            terms: BTreeMap::new(),
        }
    }

    /// The coordinate function X_var.
    pub fn var(ctx: &C::Ctx, nvars: usize, var: usize) -> Self {
        Self::monomial(ctx, nvars, var, 0, C::one(ctx))
    }

    pub fn monomial(ctx: &C::Ctx, nvars: usize, var: usize, exp: u32, coeff: C) -> Self {
        let mut p = Self::zero(ctx, nvars);
        p.add_term(var, exp, coeff);
        p
    }

    pub fn from_terms(ctx: &C::Ctx, nvars: usize, terms: impl IntoIterator<Item = (usize, u32, C)>) -> Self {
        let mut p = Self::zero(ctx, nvars);
        for (var, exp, c) in terms {
            p.add_term(var, exp, c);
        }
        p
    }

    /// Identity coordinates X_0, ..., X_{n-1}.
    pub fn identity(ctx: &C::Ctx, nvars: usize) -> Vec<Self> {
        (0..nvars).map(|i| Self::var(ctx, nvars, i)).collect()
    }

    pub fn add_term(&mut self, var: usize, exp: u32, coeff: C) {
        assert!(
            var < self.nvars,
            "variable {var} out of range for {} variables",
            self.nvars
        );
        if coeff.is_zero() {
            return;
        }
        match self.terms.get_mut(&(var, exp)) {
            Some(c) => {
                let sum = c.add(&coeff);
                if sum.is_zero() {
                    self.terms.remove(&(var, exp));
                } else {
                    *c = sum;
                }
            }
            None => {
                self.terms.insert((var, exp), coeff);
            }
        }
    }

    pub fn ctx(&self) -> &C::Ctx {
        &self.ctx
    }

    pub fn field(&self) -> &FieldSpec {
        C::field_of(&self.ctx)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical (var, exp) ascending order.
    pub fn terms(&self) -> impl Iterator<Item = (usize, u32, &C)> {
        self.terms.iter().map(|(&(v, e), c)| (v, e, c))
    }

    pub fn coeff(&self, var: usize, exp: u32) -> Option<&C> {
        self.terms.get(&(var, exp))
    }

    /// Largest Frobenius exponent with which `var` occurs.
    pub fn top_exponent(&self, var: usize) -> Option<u32> {
        self.terms
            .range((var, 0)..=(var, u32::MAX))
            .next_back()
            .map(|(&(_, e), _)| e)
    }

    pub fn leading_coeff(&self, var: usize) -> Option<&C> {
        self.terms.range((var, 0)..=(var, u32::MAX)).next_back().map(|(_, c)| c)
    }

    /// Variables that occur, ascending.
    pub fn support(&self) -> Vec<usize> {
        let mut vars: Vec<usize> = self.terms.keys().map(|&(v, _)| v).collect();
        vars.dedup();
        vars
    }

    /// Number of terms in which `var` occurs.
    pub fn occurrences(&self, var: usize) -> usize {
        self.terms.range((var, 0)..=(var, u32::MAX)).count()
    }

    pub fn max_exponent(&self) -> Option<u32> {
        self.terms.keys().map(|&(_, e)| e).max()
    }

    fn check_compatible(&self, other: &Self) {
        assert_eq!(self.nvars, other.nvars, "p-polynomials over different variable counts");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_compatible(other);
        let mut out = self.clone();
        for (&(v, e), c) in &other.terms {
            out.add_term(v, e, c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        PPoly {
            ctx: self.ctx.clone(),
            nvars: self.nvars,
            terms: self.terms.iter().map(|(&k, c)| (k, c.neg())).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &C) -> Self {
        let mut out = Self::zero(&self.ctx, self.nvars);
        for (&(v, e), d) in &self.terms {
            out.add_term(v, e, c.mul(d));
        }
        out
    }

    /// The p-polynomial P^(p^n): coefficients raised to p^n and exponents shifted by n.
    pub fn frobenius_power(&self, n: u32) -> Self {
        PPoly {
            ctx: self.ctx.clone(),
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(&(v, e), c)| ((v, e + n), c.frobenius(n)))
                .collect(),
        }
    }

    /// The n-fold Frobenius twist: every coefficient c replaced by c^(p^n).
    pub fn frobenius_twist(&self, n: u32) -> Self {
        self.map_coeffs(&self.ctx, |c| c.frobenius(n))
    }

    /// For each occurring variable keep only its top-exponent term.
    pub fn principal_part(&self) -> Self {
        let mut out = Self::zero(&self.ctx, self.nvars);
        for v in self.support() {
            let e = self.top_exponent(v).unwrap();
            out.add_term(v, e, self.terms[&(v, e)].clone());
        }
        out
    }

    pub fn is_principal(&self) -> bool {
        self.support().into_iter().all(|v| self.occurrences(v) == 1)
    }

    /// The terms with exponent 0.
    pub fn linear_part(&self) -> Self {
        let mut out = Self::zero(&self.ctx, self.nvars);
        for (&(v, e), c) in &self.terms {
            if e == 0 {
                out.add_term(v, e, c.clone());
            }
        }
        out
    }

    /// A p-polynomial is smooth when its linear part does not vanish.
    pub fn is_smooth(&self) -> bool {
        !self.linear_part().is_zero()
    }

    /// Sum of c * x_v^(p^e) over the terms.
    pub fn evaluate(&self, point: &[C]) -> Result<C> {
        if point.len() != self.nvars {
            return Err(Error::Arity {
                expected: self.nvars,
                got: point.len(),
            });
        }
        let mut acc = C::zero(&self.ctx);
        for (&(v, e), c) in &self.terms {
            acc = acc.add(&c.mul(&point[v].frobenius(e)));
        }
        Ok(acc)
    }

    /// P(maps_0, ..., maps_{m-1}) for p-polynomials `maps` in a common variable set.
    pub fn compose(&self, maps: &[PPoly<C>]) -> Result<Self> {
        if maps.len() != self.nvars {
            return Err(Error::Arity {
                expected: self.nvars,
                got: maps.len(),
            });
        }
        let Some(first) = maps.first() else {
            return Err(Error::Input("composition with zero-variable maps".into()));
        };
        let target_vars = first.nvars;
        if let Some(bad) = maps.iter().find(|m| m.nvars != target_vars) {
            return Err(Error::Arity {
                expected: target_vars,
                got: bad.nvars,
            });
        }
        let mut out = Self::zero(&self.ctx, target_vars);
        for (&(v, e), c) in &self.terms {
            for (&(w, f), d) in &maps[v].terms {
                out.add_term(w, f + e, c.mul(&d.frobenius(e)));
            }
        }
        Ok(out)
    }

    pub fn map_coeffs<D: Coeff>(&self, ctx: &D::Ctx, f: impl Fn(&C) -> D) -> PPoly<D> {
        let mut out = PPoly::zero(ctx, self.nvars);
        for (&(v, e), c) in &self.terms {
            out.add_term(v, e, f(c));
        }
        out
    }

    /// Re-index into `new_nvars` variables, sending X_i to X_{i + offset}.
    pub fn shift_vars(&self, offset: usize, new_nvars: usize) -> Self {
        assert!(self.nvars + offset <= new_nvars);
        PPoly {
            ctx: self.ctx.clone(),
            nvars: new_nvars,
            terms: self
                .terms
                .iter()
                .map(|(&(v, e), c)| ((v + offset, e), c.clone()))
                .collect(),
        }
    }

    pub fn display_with<'a>(&'a self, names: &'a [String]) -> PPolyDisplay<'a, C> {
        PPolyDisplay { poly: self, names }
    }
}

impl PPoly<FieldElem> {
    /// Coefficients moved into another coefficient ring.
    pub fn lift<D: Coeff>(&self, ctx: &D::Ctx) -> PPoly<D> {
        self.map_coeffs(ctx, |c| D::from_elem(ctx, c.clone()))
    }

    /// Image in a deeper tower.
    pub fn embed(&self, target: &FieldSpec) -> Result<Self> {
        let mut out = PPoly::zero(target, self.nvars);
        for (&(v, e), c) in &self.terms {
            out.add_term(v, e, c.embed(target)?);
        }
        Ok(out)
    }
}

pub fn default_names(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("X{i}")).collect()
}

pub struct PPolyDisplay<'a, C: Coeff> {
    poly: &'a PPoly<C>,
    names: &'a [String],
}

impl<C: Coeff> fmt::Display for PPolyDisplay<'_, C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .poly
            .terms()
            .map(|(v, e, c)| format!("{}*{}^(p^{e})", as_factor(c.to_string()), self.names[v]))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl<C: Coeff> fmt::Display for PPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = default_names(self.nvars);
        write!(f, "{}", self.display_with(&names))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn setup(p: u32) -> (FieldSpec, FieldElem, FieldElem) {
        let k = FieldSpec::rational(p).unwrap();
        let a = FieldElem::gen(&k);
        let one = FieldElem::one(&k);
        (k, a, one)
    }

    fn w_a(k: &FieldSpec, a: &FieldElem, one: &FieldElem) -> PPoly<FieldElem> {
        PPoly::from_terms(k, 2, [(0, 0, one.clone()), (0, 1, one.clone()), (1, 1, a.clone())])
    }

    #[test]
    fn evaluate_examples() {
        let (k, a, one) = setup(3);
        let w = w_a(&k, &a, &one);
        let zero = FieldElem::zero(&k);
        assert!(w.evaluate(&[zero.clone(), zero.clone()]).unwrap().is_zero());
        let u = PPoly::from_terms(&k, 2, [(0, 1, one.clone()), (0, 0, one.neg()), (1, 1, a.clone())]);
        assert!(u.evaluate(&[one.clone(), zero.clone()]).unwrap().is_zero());
        assert!(matches!(w.evaluate(&[zero]), Err(Error::Arity { .. })));
    }

    #[test]
    fn compose_examples() {
        let (k, a, one) = setup(3);
        let w = w_a(&k, &a, &one);
        assert_eq!(w.compose(&PPoly::identity(&k, 2)).unwrap(), w);
        let t_p = PPoly::monomial(&k, 1, 0, 1, one.clone());
        assert_eq!(
            t_p.compose(std::slice::from_ref(&t_p)).unwrap(),
            PPoly::monomial(&k, 1, 0, 2, one)
        );
    }

    #[test]
    fn splitting_map_lands_in_w_a_over_depth_one() {
        let k1 = FieldSpec::new(3, 1, "a", 1).unwrap();
        let a = FieldElem::gen(&k1);
        let one = FieldElem::one(&k1);
        let w = w_a(&k1, &a, &one);
        let root_inv = FieldElem::gen_root(&k1, 1).unwrap().inv().unwrap();
        // T -> (-T^p, a^(-1/p)(T + T^p))
        let x = PPoly::monomial(&k1, 1, 0, 1, one.neg());
        let y = PPoly::from_terms(&k1, 1, [(0, 0, root_inv.clone()), (0, 1, root_inv)]);
        assert!(w.compose(&[x, y]).unwrap().is_zero());
    }

    #[test]
    fn principal_and_linear_parts() {
        let (k, a, one) = setup(3);
        let w = w_a(&k, &a, &one);
        let pp = w.principal_part();
        assert_eq!(pp, PPoly::from_terms(&k, 2, [(0, 1, one.clone()), (1, 1, a.clone())]));
        assert_eq!(w.linear_part(), PPoly::var(&k, 2, 0));
        assert!(w.is_smooth());
        let x3 = PPoly::monomial(&k, 1, 0, 1, one.clone());
        assert!(x3.linear_part().is_zero());
        assert!(!x3.is_smooth());
        let x = PPoly::<FieldElem>::var(&k, 1, 0);
        assert_eq!(x.principal_part(), x);
        let v = PPoly::from_terms(&k, 2, [(0, 2, one.clone()), (0, 0, one.neg()), (1, 2, a.clone())]);
        assert_eq!(v.linear_part(), PPoly::monomial(&k, 2, 0, 0, one.neg()));
        assert!(v.is_smooth());
    }

    #[test]
    fn principal_part_in_characteristic_two() {
        let (k, a, one) = setup(2);
        let w2 = PPoly::from_terms(
            &k,
            3,
            [
                (0, 2, one.clone()),
                (0, 0, one.clone()),
                (1, 1, a.clone()),
                (2, 3, a.pow_u64(2)),
            ],
        );
        let expected = PPoly::from_terms(&k, 3, [(0, 2, one), (1, 1, a.clone()), (2, 3, a.pow_u64(2))]);
        assert_eq!(w2.principal_part(), expected);
    }

    #[test]
    fn twist_examples() {
        let (k, a, one) = setup(3);
        let w = w_a(&k, &a, &one);
        let twisted = PPoly::from_terms(&k, 2, [(0, 0, one.clone()), (0, 1, one.clone()), (1, 1, a.pow_u64(3))]);
        assert_eq!(w.frobenius_twist(1), twisted);
        assert_eq!(w.frobenius_twist(0), w);
        let v = PPoly::from_terms(&k, 2, [(0, 2, one.clone()), (0, 0, one.neg()), (1, 2, a.clone())]);
        let v2 = PPoly::from_terms(&k, 2, [(0, 2, one.clone()), (0, 0, one.neg()), (1, 2, a.pow_u64(9))]);
        assert_eq!(v.frobenius_twist(2), v2);
    }

    #[test]
    fn display_is_canonical() {
        let (k, a, one) = setup(3);
        let w = w_a(&k, &a, &one);
        let names = vec!["X".to_string(), "Y".to_string()];
        assert_eq!(w.display_with(&names).to_string(), "1*X^(p^0) + 1*X^(p^1) + a*Y^(p^1)");
    }
}
