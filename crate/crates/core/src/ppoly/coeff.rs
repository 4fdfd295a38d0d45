use std::fmt;

use crate::field::{FieldElem, FieldSpec};

/// Coefficient rings for p-polynomials: the field itself, or polynomials in
/// adjoined parameters over it.
pub trait Coeff: Clone + PartialEq + Eq + fmt::Debug + fmt::Display + Send + Sync {
    type Ctx: Clone + PartialEq + Eq + fmt::Debug + Send + Sync;

    fn ctx(&self) -> Self::Ctx;
    fn field_of(ctx: &Self::Ctx) -> &FieldSpec;
    fn zero(ctx: &Self::Ctx) -> Self;
    fn from_elem(ctx: &Self::Ctx, x: FieldElem) -> Self;

    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    /// self^(p^n).
    fn frobenius(&self, n: u32) -> Self;
    /// Inverse when the element is a unit of the ring.
    fn unit_inverse(&self) -> Option<Self>;

    fn one(ctx: &Self::Ctx) -> Self {
        let field = Self::field_of(ctx).clone();
        Self::from_elem(ctx, FieldElem::one(&field))
    }
}

impl Coeff for FieldElem {
    type Ctx = FieldSpec;

    fn ctx(&self) -> FieldSpec {
        self.field().clone()
    }

    fn field_of(ctx: &FieldSpec) -> &FieldSpec {
        ctx
    }

    fn zero(ctx: &FieldSpec) -> Self {
        FieldElem::zero(ctx)
    }

    fn from_elem(_ctx: &FieldSpec, x: FieldElem) -> Self {
        x
    }

    fn is_zero(&self) -> bool {
        FieldElem::is_zero(self)
    }

    fn add(&self, other: &Self) -> Self {
        FieldElem::add(self, other)
    }

    fn sub(&self, other: &Self) -> Self {
        FieldElem::sub(self, other)
    }

    fn mul(&self, other: &Self) -> Self {
        FieldElem::mul(self, other)
    }

    fn neg(&self) -> Self {
        FieldElem::neg(self)
    }

    fn frobenius(&self, n: u32) -> Self {
        FieldElem::frobenius(self, n)
    }

    fn unit_inverse(&self) -> Option<Self> {
        self.inv()
    }
}
