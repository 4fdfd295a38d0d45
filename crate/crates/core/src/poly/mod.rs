//! General multivariate polynomials over F_q(b) and normal forms modulo
//! pivoted p-polynomial relations.

pub mod oracle;
mod relations;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

pub use oracle::{random_point_oracle, OracleOptions};
pub use relations::{Relation, RelationSet};

use crate::error::{Error, Result};
use crate::field::{as_factor, FieldElem, FieldSpec};
use crate::ppoly::{Coeff, PPoly};

/// Exponent vector, ordered graded-lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, var: usize, exp: u32) -> Self {
        let mut m = Self::one(nvars);
        m.0[var] = exp;
        m
    }

    pub fn from_exponents(exps: Vec<u32>) -> Self {
        Monomial(exps)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn exponent(&self, var: usize) -> u32 {
        self.0[var]
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Self) -> Self {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn with_exponent(&self, var: usize, exp: u32) -> Self {
        let mut m = self.clone();
        m.0[var] = exp;
        m
    }

    fn scale_exponents(&self, k: u32) -> Self {
        Monomial(self.0.iter().map(|e| e * k).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// The ring F_q(b)[X_0, ..., X_{n-1}].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyRing {
    field: FieldSpec,
    nvars: usize,
}

impl PolyRing {
    pub fn new(field: &FieldSpec, nvars: usize) -> Self {
        PolyRing {
            field: field.clone(),
            nvars,
        }
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    ring: PolyRing,
    terms: BTreeMap<Monomial, FieldElem>,
}

impl Poly {
    pub fn zero(ring: &PolyRing) -> Self {
        Poly {
            ring: ring.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(ring: &PolyRing, c: FieldElem) -> Self {
        Self::term(ring, Monomial::one(ring.nvars), c)
    }

    pub fn one(ring: &PolyRing) -> Self {
        Self::constant(ring, FieldElem::one(&ring.field))
    }

    pub fn var(ring: &PolyRing, var: usize) -> Self {
        assert!(var < ring.nvars, "variable {var} out of range");
        Self::term(ring, Monomial::var(ring.nvars, var, 1), FieldElem::one(&ring.field))
    }

    pub fn term(ring: &PolyRing, m: Monomial, c: FieldElem) -> Self {
        assert_eq!(m.0.len(), ring.nvars, "monomial arity");
        let mut p = Self::zero(ring);
        p.add_term(m, c);
        p
    }

    pub fn from_terms(ring: &PolyRing, terms: impl IntoIterator<Item = (Monomial, FieldElem)>) -> Self {
        let mut p = Self::zero(ring);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    /// The polynomial sum c * X_v^(p^e) of a p-polynomial over the same variables.
    pub fn from_ppoly(p: &PPoly<FieldElem>) -> Self {
        let ring = PolyRing::new(p.field(), p.nvars());
        let mut out = Self::zero(&ring);
        for (v, e, c) in p.terms() {
            out.add_term(Monomial::var(ring.nvars, v, p.field().p_pow(e) as u32), c.clone());
        }
        out
    }

    /// Flatten p-polynomial coefficients that are themselves polynomials.
    ///
    /// Variables X_v become index v and the coefficient ring's variables
    /// follow after the p-polynomial's variables.
    pub fn from_param_ppoly(p: &PPoly<Poly>) -> Self {
        let inner = p.ctx();
        let n = p.nvars();
        let ring = PolyRing::new(&inner.field, n + inner.nvars);
        let mut out = Self::zero(&ring);
        for (v, e, c) in p.terms() {
            let x = Monomial::var(n, v, p.field().p_pow(e) as u32);
            for (m, d) in c.terms() {
                let mut exps = x.0.clone();
                exps.extend_from_slice(&m.0);
                out.add_term(Monomial(exps), d.clone());
            }
        }
        out
    }

    pub fn add_term(&mut self, m: Monomial, c: FieldElem) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(d) => {
                let sum = d.add(&c);
                if sum.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *d = sum;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn ring(&self) -> &PolyRing {
        &self.ring
    }

    pub fn field(&self) -> &FieldSpec {
        &self.ring.field
    }

    pub fn nvars(&self) -> usize {
        self.ring.nvars
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

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &FieldElem)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Option<&FieldElem> {
        self.terms.get(m)
    }

    /// Largest term in graded-lex order.
    pub fn leading_term(&self) -> Option<(&Monomial, &FieldElem)> {
        self.terms.iter().next_back()
    }

    pub fn constant_value(&self) -> Option<FieldElem> {
        match self.terms.len() {
            0 => Some(FieldElem::zero(self.field())),
            1 => self
                .terms
                .iter()
                .next()
                .filter(|(m, _)| m.is_one())
                .map(|(_, c)| c.clone()),
            _ => None,
        }
    }

    pub fn is_constant(&self) -> bool {
        self.constant_value().is_some()
    }

    pub fn degree_in(&self, var: usize) -> Option<u32> {
        self.terms.keys().map(|m| m.0[var]).max()
    }

    /// Variables that occur.
    pub fn variables(&self) -> Vec<usize> {
        (0..self.nvars())
            .filter(|&v| self.terms.keys().any(|m| m.0[v] > 0))
            .collect()
    }

    fn check_ring(&self, other: &Self) {
        assert_eq!(
            self.ring.nvars, other.ring.nvars,
            "polynomials over different variable counts"
        );
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_ring(other);
        let (mut out, small) = if self.len() >= other.len() {
            (self.clone(), other)
        } else {
            (other.clone(), self)
        };
        for (m, c) in &small.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        Poly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c.neg())).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &FieldElem) -> Self {
        if c.is_zero() {
            return Self::zero(&self.ring);
        }
        Poly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, d)| (m.clone(), d.mul(c))).collect(),
        }
    }

    pub fn mul_term(&self, m: &Monomial, c: &FieldElem) -> Self {
        if c.is_zero() {
            return Self::zero(&self.ring);
        }
        Poly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(n, d)| (n.mul(m), d.mul(c))).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check_ring(other);
        let mut out = Self::zero(&self.ring);
        for (m, c) in &self.terms {
            for (n, d) in &other.terms {
                out.add_term(m.mul(n), c.mul(d));
            }
        }
        out
    }

    /// self^(p^n), computed termwise.
    pub fn frobenius(&self, n: u32) -> Self {
        if n == 0 {
            return self.clone();
        }
        let k = self.field().p_pow(n) as u32;
        Poly {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.scale_exponents(k), c.frobenius(n)))
                .collect(),
        }
    }

    /// Power via base-p digits.
    pub fn pow(&self, k: u64) -> Self {
        let p = self.field().p() as u64;
        let mut acc = Self::one(&self.ring);
        let (mut k, mut level) = (k, 0u32);
        while k > 0 {
            let digit = k % p;
            if digit > 0 {
                let f = self.frobenius(level);
                for _ in 0..digit {
                    acc = acc.mul(&f);
                }
            }
            k /= p;
            level += 1;
        }
        acc
    }

    pub fn evaluate(&self, point: &[FieldElem]) -> Result<FieldElem> {
        if point.len() != self.nvars() {
            return Err(Error::Arity {
                expected: self.nvars(),
                got: point.len(),
            });
        }
        let mut acc = FieldElem::zero(self.field());
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(&m.0) {
                if e > 0 {
                    t = t.mul(&x.pow_u64(e as u64));
                }
            }
            acc = acc.add(&t);
        }
        Ok(acc)
    }

    /// Substitute `images[v]` for X_v; all images share a ring.
    pub fn substitute(&self, images: &[Poly]) -> Result<Poly> {
        if images.len() != self.nvars() {
            return Err(Error::Arity {
                expected: self.nvars(),
                got: images.len(),
            });
        }
        let Some(first) = images.first() else {
            return Ok(self.clone());
        };
        let ring = first.ring.clone();
        let mut powers: Vec<BTreeMap<u32, Poly>> = vec![BTreeMap::new(); images.len()];
        let mut out = Poly::zero(&ring);
        for (m, c) in &self.terms {
            let mut t = Poly::constant(&ring, c.clone());
            for (v, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    let pw = powers[v].entry(e).or_insert_with(|| images[v].pow(e as u64));
                    t = t.mul(pw);
                }
            }
            out = out.add(&t);
        }
        Ok(out)
    }

    /// Move into a ring with `nvars` variables, sending X_v to X_{map[v]}.
    pub fn rename(&self, map: &[usize], nvars: usize) -> Self {
        assert_eq!(map.len(), self.nvars());
        let ring = PolyRing::new(self.field(), nvars);
        let mut out = Self::zero(&ring);
        for (m, c) in &self.terms {
            let mut exps = vec![0; nvars];
            for (v, &e) in m.0.iter().enumerate() {
                exps[map[v]] += e;
            }
            out.add_term(Monomial(exps), c.clone());
        }
        out
    }

    /// Image in a deeper tower.
    pub fn embed(&self, target: &FieldSpec) -> Result<Self> {
        let ring = PolyRing::new(target, self.nvars());
        let mut out = Self::zero(&ring);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c.embed(target)?);
        }
        Ok(out)
    }

    /// Read a polynomial back as a p-polynomial when every monomial is c * X_v^(p^e).
    pub fn to_ppoly(&self) -> Option<PPoly<FieldElem>> {
        let mut out = PPoly::zero(self.field(), self.nvars());
        for (m, c) in &self.terms {
            let mut vars = m.0.iter().enumerate().filter(|(_, &e)| e > 0);
            let (v, &k) = vars.next()?;
            if vars.next().is_some() {
                return None;
            }
            out.add_term(v, p_log(self.field().p(), k)?, c.clone());
        }
        Some(out)
    }

    pub fn display_with<'a>(&'a self, names: &'a [String]) -> PolyDisplay<'a> {
        PolyDisplay { poly: self, names }
    }
}

/// e with p^e = k.
pub fn p_log(p: u32, mut k: u32) -> Option<u32> {
    let mut e = 0;
    while k > 1 {
        if !k.is_multiple_of(p) {
            return None;
        }
        k /= p;
        e += 1;
    }
    (k == 1).then_some(e)
}

pub struct PolyDisplay<'a> {
    poly: &'a Poly,
    names: &'a [String],
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .poly
            .terms
            .iter()
            .rev()
            .map(|(m, c)| {
                let mut s = as_factor(c.to_string());
                for (v, &e) in m.0.iter().enumerate() {
                    match e {
                        0 => {}
                        1 => s.push_str(&format!("*{}", self.names[v])),
                        _ => s.push_str(&format!("*{}^{e}", self.names[v])),
                    }
                }
                s
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..self.nvars()).map(|i| format!("X{i}")).collect();
        write!(f, "{}", self.display_with(&names))
    }
}

impl Coeff for Poly {
    type Ctx = PolyRing;

    fn ctx(&self) -> PolyRing {
        self.ring.clone()
    }

    fn field_of(ctx: &PolyRing) -> &FieldSpec {
        &ctx.field
    }

    fn zero(ctx: &PolyRing) -> Self {
        Poly::zero(ctx)
    }

    fn from_elem(ctx: &PolyRing, x: FieldElem) -> Self {
        Poly::constant(ctx, x)
    }

    fn is_zero(&self) -> bool {
        Poly::is_zero(self)
    }

    fn add(&self, other: &Self) -> Self {
        Poly::add(self, other)
    }

    fn sub(&self, other: &Self) -> Self {
        Poly::sub(self, other)
    }

    fn mul(&self, other: &Self) -> Self {
        Poly::mul(self, other)
    }

    fn neg(&self) -> Self {
        Poly::neg(self)
    }

    fn frobenius(&self, n: u32) -> Self {
        Poly::frobenius(self, n)
    }

    /// Only nonzero constants are treated as units.
    fn unit_inverse(&self) -> Option<Self> {
        let c = self.constant_value()?.inv()?;
        Some(Poly::constant(&self.ring, c))
    }
}
