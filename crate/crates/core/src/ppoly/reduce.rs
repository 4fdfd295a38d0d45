//! Division of p-polynomials by a p-polynomial whose pivot coefficient is a unit.
//!
//! Each step removes the top pivot term c * X^(p^N) of the dividend by
//! subtracting c * (u^-1 F)^(p^(N - n)), where u X^(p^n) is the pivot term of F.
//! The remainder is therefore again a p-polynomial, with pivot degree < p^n.

use super::{Coeff, PPoly};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionStep<C: Coeff> {
    pub coeff: C,
    /// The step subtracted `coeff * (u^-1 F)^(p^frobenius)`.
    pub frobenius: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionTrace<C: Coeff> {
    pub pivot: usize,
    /// n, where the pivot occurs in F as u X_pivot^(p^n).
    pub pivot_exponent: u32,
    /// u^-1 F.
    pub divisor: PPoly<C>,
    pub steps: Vec<ReductionStep<C>>,
    pub remainder: PPoly<C>,
}

impl<C: Coeff> ReductionTrace<C> {
    /// Rebuild the dividend as remainder + sum of the recorded multiples of F.
    pub fn replay(&self) -> PPoly<C> {
        let mut acc = self.remainder.clone();
        for step in &self.steps {
            acc = acc.add(&self.divisor.frobenius_power(step.frobenius).scale(&step.coeff));
        }
        acc
    }

    /// The accumulated quotient part, i.e. dividend minus remainder.
    pub fn multiple(&self) -> PPoly<C> {
        let zero = PPoly::zero(self.remainder.ctx(), self.remainder.nvars());
        self.steps.iter().fold(zero, |acc, step| {
            acc.add(&self.divisor.frobenius_power(step.frobenius).scale(&step.coeff))
        })
    }
}

/// Highest-index variable of `f` whose top coefficient is a unit.
pub fn default_pivot<C: Coeff>(f: &PPoly<C>) -> Option<usize> {
    f.support()
        .into_iter()
        .rev()
        .find(|&v| f.leading_coeff(v).and_then(|c| c.unit_inverse()).is_some())
}

pub(crate) fn normalized_divisor<C: Coeff>(f: &PPoly<C>, pivot: usize) -> Result<(PPoly<C>, u32)> {
    if pivot >= f.nvars() {
        return Err(Error::Precondition(format!("pivot X{pivot} out of range")));
    }
    let n = f
        .top_exponent(pivot)
        .ok_or_else(|| Error::Precondition(format!("pivot X{pivot} does not occur in the divisor")))?;
    let u_inv = f
        .leading_coeff(pivot)
        .and_then(|u| u.unit_inverse())
        .ok_or_else(|| Error::Precondition(format!("leading coefficient of pivot X{pivot} is not a unit")))?;
    Ok((f.scale(&u_inv), n))
}

/// Reduce `h` modulo `f` in the pivot variable.
pub fn reduce_mod<C: Coeff>(h: &PPoly<C>, f: &PPoly<C>, pivot: usize) -> Result<ReductionTrace<C>> {
    if h.nvars() != f.nvars() {
        return Err(Error::Arity {
            expected: f.nvars(),
            got: h.nvars(),
        });
    }
    let (divisor, n) = normalized_divisor(f, pivot)?;
    let mut rem = h.clone();
    let mut steps = Vec::new();
    while let Some(top) = rem.top_exponent(pivot).filter(|&e| e >= n) {
        let c = rem.coeff(pivot, top).unwrap().clone();
        let shift = top - n;
        rem = rem.sub(&divisor.frobenius_power(shift).scale(&c));
        steps.push(ReductionStep {
            coeff: c,
            frobenius: shift,
        });
    }
    Ok(ReductionTrace {
        pivot,
        pivot_exponent: n,
        divisor,
        steps,
        remainder: rem,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{FieldElem, FieldSpec};

    fn v_a(k: &FieldSpec) -> PPoly<FieldElem> {
        let a = FieldElem::gen(k);
        let one = FieldElem::one(k);
        PPoly::from_terms(k, 2, [(0, 2, one.clone()), (0, 0, one.neg()), (1, 2, a)])
    }

    #[test]
    fn single_step() {
        let k = FieldSpec::rational(3).unwrap();
        let f = v_a(&k);
        let a = FieldElem::gen(&k);
        let h = PPoly::monomial(&k, 2, 0, 2, FieldElem::one(&k));
        let t = reduce_mod(&h, &f, 0).unwrap();
        let expected = PPoly::from_terms(&k, 2, [(0, 0, FieldElem::one(&k)), (1, 2, a.neg())]);
        assert_eq!(t.remainder, expected);
        assert_eq!(t.steps.len(), 1);
        assert_eq!(t.replay(), h);
    }

    #[test]
    fn two_steps_match_hand_computation() {
        // X^27 = (X^9)^3 -> (X - aY^9)^3 = X^3 - a^3 Y^27, already reduced in X.
        let k = FieldSpec::rational(3).unwrap();
        let f = v_a(&k);
        let a = FieldElem::gen(&k);
        let h = PPoly::monomial(&k, 2, 0, 3, FieldElem::one(&k));
        let t = reduce_mod(&h, &f, 0).unwrap();
        let expected = PPoly::from_terms(&k, 2, [(0, 1, FieldElem::one(&k)), (1, 3, a.pow_u64(3).neg())]);
        assert_eq!(t.remainder, expected);
        assert_eq!(t.replay(), h);
    }

    #[test]
    fn divisor_reduces_to_zero() {
        let k = FieldSpec::rational(3).unwrap();
        let f = v_a(&k);
        let t = reduce_mod(&f, &f, 0).unwrap();
        assert!(t.remainder.is_zero());
    }

    #[test]
    fn precondition_errors() {
        let k = FieldSpec::rational(3).unwrap();
        let f = PPoly::<FieldElem>::var(&k, 2, 1);
        let h = PPoly::var(&k, 2, 0);
        assert!(matches!(reduce_mod(&h, &f, 0), Err(Error::Precondition(_))));
        assert_eq!(default_pivot(&v_a(&k)), Some(1));
    }
}
