//! Rational functions over F_q in the tower generator b, where b^(p^depth) = a.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use super::fq::FiniteField;
use super::upoly::{self, UPoly};
use crate::error::{Error, Result};

#[derive(Debug)]
struct FieldInner {
    fq: FiniteField,
    gen: String,
    depth: u32,
}

/// The field F_q(a^(1/p^depth)), shared by every element built over it.
#[derive(Clone, Debug)]
pub struct FieldSpec(Arc<FieldInner>);

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.fq == other.0.fq && self.0.gen == other.0.gen && self.0.depth == other.0.depth)
    }
}

impl Eq for FieldSpec {}

impl FieldSpec {
    pub fn new(p: u32, e: u32, gen: &str, depth: u32) -> Result<Self> {
        let fq = FiniteField::new(p, e)?;
        if gen.is_empty() || !gen.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
            return Err(Error::InvalidField(format!("bad generator name {gen:?}")));
        }
        if gen == "p" || (e > 1 && gen == FQ_GENERATOR) {
            return Err(Error::InvalidField(format!("generator name {gen:?} is reserved")));
        }
        let stride = (p as u64).checked_pow(depth);
        if stride.is_none_or(|s| s > u32::MAX as u64) {
            return Err(Error::InvalidField(format!("depth {depth} is too large for p = {p}")));
        }
        Ok(FieldSpec(Arc::new(FieldInner {
            fq,
            gen: gen.to_string(),
            depth,
        })))
    }

    /// F_p(a) with default generator name.
    pub fn rational(p: u32) -> Result<Self> {
        Self::new(p, 1, "a", 0)
    }

    pub fn p(&self) -> u32 {
        self.0.fq.p()
    }

    pub fn e(&self) -> u32 {
        self.0.fq.degree()
    }

    pub fn gen_name(&self) -> &str {
        &self.0.gen
    }

    pub fn depth(&self) -> u32 {
        self.0.depth
    }

    pub fn fq(&self) -> &FiniteField {
        &self.0.fq
    }

    /// p^n as a usize.
    pub fn p_pow(&self, n: u32) -> usize {
        (self.p() as usize).pow(n)
    }

    /// The tower of depth `m`; every element of `self` embeds via [`FieldElem::embed`].
    pub fn extend_depth(&self, m: u32) -> Result<FieldSpec> {
        if m < self.depth() {
            return Err(Error::Precondition(format!(
                "cannot extend depth {} down to {m}",
                self.depth()
            )));
        }
        if m == self.depth() {
            return Ok(self.clone());
        }
        FieldSpec::new(self.p(), self.e(), self.gen_name(), m)
    }

    /// Header line of the text format.
    pub fn header(&self) -> String {
        format!(
            "field p={} e={} gen={} depth={}",
            self.p(),
            self.e(),
            self.gen_name(),
            self.depth()
        )
    }
}

/// Name of the primitive element of F_q in the text format when e > 1.
pub const FQ_GENERATOR: &str = "z";

/// An element of F_q(b) stored as a reduced fraction with monic denominator.
#[derive(Clone, Debug)]
pub struct FieldElem {
    field: FieldSpec,
    num: UPoly,
    den: UPoly,
}

impl PartialEq for FieldElem {
    fn eq(&self, other: &Self) -> bool {
        self.num == other.num && self.den == other.den && self.field == other.field
    }
}

impl Eq for FieldElem {}

impl Hash for FieldElem {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.num.hash(state);
        self.den.hash(state);
    }
}

impl FieldElem {
    pub fn zero(field: &FieldSpec) -> Self {
        FieldElem {
            field: field.clone(),
            num: Vec::new(),
            den: vec![1],
        }
    }

    pub fn one(field: &FieldSpec) -> Self {
        Self::from_fq(field, 1)
    }

    pub fn from_int(field: &FieldSpec, n: i64) -> Self {
        Self::from_fq(field, field.fq().from_int(n))
    }

    pub fn from_fq(field: &FieldSpec, c: u32) -> Self {
        let num = if c == 0 { Vec::new() } else { vec![c] };
        FieldElem {
            field: field.clone(),
            num,
            den: vec![1],
        }
    }

    /// A polynomial in the tower generator b.
    pub fn from_poly(field: &FieldSpec, mut num: UPoly) -> Self {
        upoly::trim(&mut num);
        FieldElem {
            field: field.clone(),
            num,
            den: vec![1],
        }
    }

    /// The tower generator b = a^(1/p^depth).
    pub fn tower_generator(field: &FieldSpec) -> Self {
        Self::from_poly(field, vec![0, 1])
    }

    /// The transcendental a = b^(p^depth).
    pub fn gen(field: &FieldSpec) -> Self {
        let mut num = vec![0u32; field.p_pow(field.depth()) + 1];
        *num.last_mut().unwrap() = 1;
        Self::from_poly(field, num)
    }

    /// a^(1/p^j), available when j <= depth.
    pub fn gen_root(field: &FieldSpec, j: u32) -> Result<Self> {
        if j > field.depth() {
            return Err(Error::Precondition(format!(
                "{}^(1/p^{j}) needs depth >= {j}, field has depth {}",
                field.gen_name(),
                field.depth()
            )));
        }
        let mut num = vec![0u32; field.p_pow(field.depth() - j) + 1];
        *num.last_mut().unwrap() = 1;
        Ok(Self::from_poly(field, num))
    }

    pub fn from_fraction(field: &FieldSpec, num: UPoly, den: UPoly) -> Option<Self> {
        let mut den = den;
        upoly::trim(&mut den);
        if den.is_empty() {
            return None;
        }
        Some(Self::normalized(field.clone(), num, den))
    }

    fn normalized(field: FieldSpec, mut num: UPoly, mut den: UPoly) -> Self {
        upoly::trim(&mut num);
        upoly::trim(&mut den);
        if num.is_empty() {
            return FieldElem {
                field,
                num,
                den: vec![1],
            };
        }
        let f = field.fq();
        if den.len() > 1 {
            let g = upoly::gcd(f, &num, &den);
            if g.len() > 1 {
                num = upoly::divrem(f, &num, &g).0;
                den = upoly::divrem(f, &den, &g).0;
            }
        }
        let lead = *den.last().unwrap();
        if lead != 1 {
            let inv = f.inv(lead).unwrap();
            num = upoly::scale(f, &num, inv);
            den = upoly::scale(f, &den, inv);
        }
        FieldElem { field, num, den }
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn numerator(&self) -> &[u32] {
        &self.num
    }

    pub fn denominator(&self) -> &[u32] {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_empty()
    }

    pub fn is_one(&self) -> bool {
        upoly::is_one(&self.num) && upoly::is_one(&self.den)
    }

    /// True when the element lies in F_q.
    pub fn is_constant(&self) -> bool {
        self.num.len() <= 1 && self.den.len() == 1
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.len() == 1
    }

    /// The F_q value of a constant element.
    pub fn constant_value(&self) -> Option<u32> {
        if !self.is_constant() {
            return None;
        }
        Some(self.num.first().copied().unwrap_or(0))
    }

    fn same_field(&self, other: &Self) {
        debug_assert!(
            self.field == other.field,
            "mixed fields: {:?} vs {:?}",
            self.field,
            other.field
        );
    }

    pub fn add(&self, other: &Self) -> Self {
        self.same_field(other);
        let f = self.field.fq();
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        if self.den == other.den {
            let num = upoly::add(f, &self.num, &other.num);
            if upoly::is_one(&self.den) {
                return FieldElem {
                    field: self.field.clone(),
                    num,
                    den: self.den.clone(),
                };
            }
            return Self::normalized(self.field.clone(), num, self.den.clone());
        }
        let num = upoly::add(
            f,
            &upoly::mul(f, &self.num, &other.den),
            &upoly::mul(f, &other.num, &self.den),
        );
        let den = upoly::mul(f, &self.den, &other.den);
        Self::normalized(self.field.clone(), num, den)
    }

    pub fn neg(&self) -> Self {
        FieldElem {
            field: self.field.clone(),
            num: upoly::neg(self.field.fq(), &self.num),
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.same_field(other);
        let f = self.field.fq();
        if self.is_zero() || other.is_zero() {
            return Self::zero(&self.field);
        }
        let num = upoly::mul(f, &self.num, &other.num);
        if upoly::is_one(&self.den) && upoly::is_one(&other.den) {
            return FieldElem {
                field: self.field.clone(),
                num,
                den: vec![1],
            };
        }
        let den = upoly::mul(f, &self.den, &other.den);
        Self::normalized(self.field.clone(), num, den)
    }

    pub fn scale_fq(&self, c: u32) -> Self {
        if c == 0 {
            return Self::zero(&self.field);
        }
        FieldElem {
            field: self.field.clone(),
            num: upoly::scale(self.field.fq(), &self.num, c),
            den: self.den.clone(),
        }
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        Some(Self::normalized(self.field.clone(), self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, other: &Self) -> Option<Self> {
        Some(self.mul(&other.inv()?))
    }

    /// Integer power; negative exponents invert (None for 0^negative).
    pub fn pow(&self, k: i64) -> Option<Self> {
        let base = if k < 0 { self.inv()? } else { self.clone() };
        Some(base.pow_u64(k.unsigned_abs()))
    }

    /// Power by base-p digits, so that the p-power part costs only coefficient spreading.
    pub fn pow_u64(&self, k: u64) -> Self {
        let p = self.field.p() as u64;
        let mut acc = Self::one(&self.field);
        let mut k = k;
        let mut level = 0u32;
        while k > 0 {
            let digit = k % p;
            if digit > 0 {
                let f = self.frobenius(level);
                let mut t = f.clone();
                for _ in 1..digit {
                    t = t.mul(&f);
                }
                acc = acc.mul(&t);
            }
            k /= p;
            level += 1;
        }
        acc
    }

    /// x^(p^n).
    pub fn frobenius(&self, n: u32) -> Self {
        if n == 0 {
            return self.clone();
        }
        let f = self.field.fq();
        FieldElem {
            field: self.field.clone(),
            num: upoly::frobenius(f, &self.num, n),
            den: upoly::frobenius(f, &self.den, n),
        }
    }

    /// Formal derivative with respect to the tower generator.
    pub fn derivative(&self) -> Self {
        let f = self.field.fq();
        let num = upoly::sub(
            f,
            &upoly::mul(f, &upoly::derivative(f, &self.num), &self.den),
            &upoly::mul(f, &self.num, &upoly::derivative(f, &self.den)),
        );
        let den = upoly::mul(f, &self.den, &self.den);
        Self::normalized(self.field.clone(), num, den)
    }

    /// y with y^p = x when x is a p-th power in the current field.
    ///
    /// x is a p-th power exactly when its derivative in b vanishes.
    pub fn pth_root(&self) -> Option<Self> {
        if !self.derivative().is_zero() {
            return None;
        }
        self.frobenius_root(1)
    }

    /// y with y^(p^n) = x, if one exists in the current field.
    pub fn frobenius_root(&self, n: u32) -> Option<Self> {
        let f = self.field.fq();
        let num = upoly::frobenius_root(f, &self.num, n)?;
        let den = upoly::frobenius_root(f, &self.den, n)?;
        Some(FieldElem {
            field: self.field.clone(),
            num,
            den,
        })
    }

    /// Image in a deeper tower over the same base (b_old = b_new^(p^(m - depth))).
    pub fn embed(&self, target: &FieldSpec) -> Result<Self> {
        let src = &self.field;
        if src.p() != target.p() || src.e() != target.e() || src.gen_name() != target.gen_name() {
            return Err(Error::Precondition("embedding between unrelated fields".into()));
        }
        if target.depth() < src.depth() {
            return Err(Error::Precondition(format!(
                "cannot embed depth {} into depth {}",
                src.depth(),
                target.depth()
            )));
        }
        let stride = target.p_pow(target.depth() - src.depth());
        Ok(FieldElem {
            field: target.clone(),
            num: upoly::inflate(&self.num, stride),
            den: upoly::inflate(&self.den, stride),
        })
    }

    /// Largest degree of numerator and denominator.
    pub fn height(&self) -> usize {
        self.num.len().max(self.den.len()).saturating_sub(1)
    }
}

impl<'a> Add<&'a FieldElem> for &'a FieldElem {
    type Output = FieldElem;
    fn add(self, rhs: &'a FieldElem) -> FieldElem {
        FieldElem::add(self, rhs)
    }
}

impl<'a> Sub<&'a FieldElem> for &'a FieldElem {
    type Output = FieldElem;
    fn sub(self, rhs: &'a FieldElem) -> FieldElem {
        FieldElem::sub(self, rhs)
    }
}

impl<'a> Mul<&'a FieldElem> for &'a FieldElem {
    type Output = FieldElem;
    fn mul(self, rhs: &'a FieldElem) -> FieldElem {
        FieldElem::mul(self, rhs)
    }
}

impl Neg for &FieldElem {
    type Output = FieldElem;
    fn neg(self) -> FieldElem {
        FieldElem::neg(self)
    }
}

fn fmt_fq(field: &FieldSpec, c: u32) -> String {
    let f = field.fq();
    if f.degree() == 1 {
        return c.to_string();
    }
    let digits = f.digits(c);
    let mut parts = Vec::new();
    for (i, &d) in digits.iter().enumerate().rev() {
        if d == 0 {
            continue;
        }
        let power = match i {
            0 => String::new(),
            1 => FQ_GENERATOR.to_string(),
            _ => format!("{FQ_GENERATOR}^{i}"),
        };
        parts.push(match (d, power.is_empty()) {
            (_, true) => d.to_string(),
            (1, false) => power,
            (_, false) => format!("{d}*{power}"),
        });
    }
    if parts.is_empty() {
        "0".into()
    } else if parts.len() == 1 {
        parts.pop().unwrap()
    } else {
        format!("({})", parts.join(" + "))
    }
}

/// b^k written in terms of the generator: a^m, a^(1/p^j), or a^(1/p^j)^m.
fn fmt_gen_power(field: &FieldSpec, k: usize) -> String {
    let gen = field.gen_name();
    let p = field.p() as usize;
    let mut num = k;
    let mut j = field.depth();
    while j > 0 && num.is_multiple_of(p) {
        num /= p;
        j -= 1;
    }
    match (j, num) {
        (0, 1) => gen.to_string(),
        (0, m) => format!("{gen}^{m}"),
        (j, 1) => format!("{gen}^(1/p^{j})"),
        (j, m) => format!("{gen}^(1/p^{j})^{m}"),
    }
}

fn fmt_upoly(field: &FieldSpec, x: &[u32]) -> String {
    if x.is_empty() {
        return "0".into();
    }
    let mut parts = Vec::new();
    for (k, &c) in x.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        if k == 0 {
            parts.push(fmt_fq(field, c));
        } else if c == 1 {
            parts.push(fmt_gen_power(field, k));
        } else {
            parts.push(format!("{}*{}", fmt_fq(field, c), fmt_gen_power(field, k)));
        }
    }
    parts.join(" + ")
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let num = fmt_upoly(&self.field, &self.num);
        if upoly::is_one(&self.den) {
            return write!(f, "{num}");
        }
        let num_terms = self.num.iter().filter(|&&c| c != 0).count();
        let den_terms = self.den.iter().filter(|&&c| c != 0).count();
        let num = if num_terms > 1 { format!("({num})") } else { num };
        let den = fmt_upoly(&self.field, &self.den);
        let den = if den_terms > 1 || den.contains('*') {
            format!("({den})")
        } else {
            den
        };
        write!(f, "{num}/{den}")
    }
}
