//! Deciding whether a principal part sum c_i X_i^(p^(N_i)) has a nontrivial zero
//! over F_q(b).
//!
//! Equal exponents N: after clearing denominators, write each coefficient as
//! c_i = sum_{j < p^N} u_ij^(p^N) b^j. Since {b^j : j < p^N} is a basis of the
//! field over its p^N-th powers, P(x) = sum_j (sum_i u_ij x_i)^(p^N) b^j
//! vanishes iff x lies in the left kernel of [u_ij]. The rank of that matrix
//! decides the question, and a full-rank minor or a kernel vector certifies it.
//!
//! Mixed exponents go through, in order: the relaxation w_i = x_i^(p^(N_i - N_min))
//! (sound for NoZero only), an exact expansion of each x_i over the basis
//! {b^j : j < p^(M - N_i)} that yields an equal-exponent instance in more
//! variables, and finally a bounded witness search.

use std::fmt;

use super::search::{search_zero, SearchOutcome};
use super::PPoly;
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::field::{upoly, FieldElem, FieldSpec};
use crate::linalg::{determinant, kernel_vector, rref, transpose, Matrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    NoZero,
    Zero,
    Unknown,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::NoZero => "no-zero",
            Verdict::Zero => "zero",
            Verdict::Unknown => "unknown",
        })
    }
}

/// Which step produced a certificate or witness.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Stage {
    EqualExponent,
    Relaxation,
    Expansion,
    Search,
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Stage::EqualExponent => "equal-exponent",
            Stage::Relaxation => "relaxation",
            Stage::Expansion => "expansion",
            Stage::Search => "search",
        })
    }
}

/// Full-rank certificate for an equal-exponent instance sum_r coeffs[r] * W_r^(p^exponent).
///
/// For the relaxation and expansion stages the instance is the derived one,
/// not the input polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NoZeroCertificate {
    pub stage: Stage,
    pub exponent: u32,
    /// The common denominator lambda used to clear the coefficients.
    pub scale: FieldElem,
    pub coeffs: Vec<FieldElem>,
    /// One row per instance variable, p^exponent columns.
    pub matrix: Matrix,
    pub minor_columns: Vec<usize>,
    pub minor_determinant: FieldElem,
}

impl NoZeroCertificate {
    pub fn rank(&self) -> usize {
        self.minor_columns.len()
    }

    /// Re-derive the decomposition and the minor from the stored data.
    pub fn verify(&self) -> bool {
        let Some(first) = self.coeffs.first() else {
            return self.matrix.is_empty();
        };
        let field = first.field().clone();
        let b = FieldElem::tower_generator(&field);
        let width = field.p_pow(self.exponent);
        for (c, row) in self.coeffs.iter().zip(&self.matrix) {
            if row.len() != width {
                return false;
            }
            let mut recomposed = FieldElem::zero(&field);
            for (j, u) in row.iter().enumerate() {
                recomposed = recomposed.add(&u.frobenius(self.exponent).mul(&b.pow_u64(j as u64)));
            }
            if recomposed != c.mul(&self.scale) {
                return false;
            }
        }
        if self.minor_columns.len() != self.matrix.len() {
            return false;
        }
        let minor: Matrix = self
            .matrix
            .iter()
            .map(|row| self.minor_columns.iter().map(|&c| row[c].clone()).collect())
            .collect();
        match determinant(&minor) {
            Some(d) => !d.is_zero() && d == self.minor_determinant,
            None => false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ZeroDecision {
    NoZero(NoZeroCertificate),
    Zero { witness: Vec<FieldElem>, stage: Stage },
    Unknown { bound: u32, explored: u64 },
}

impl ZeroDecision {
    pub fn verdict(&self) -> Verdict {
        match self {
            ZeroDecision::NoZero(_) => Verdict::NoZero,
            ZeroDecision::Zero { .. } => Verdict::Zero,
            ZeroDecision::Unknown { .. } => Verdict::Unknown,
        }
    }

    pub fn witness(&self) -> Option<&[FieldElem]> {
        match self {
            ZeroDecision::Zero { witness, .. } => Some(witness),
            _ => None,
        }
    }

    pub fn certificate(&self) -> Option<&NoZeroCertificate> {
        match self {
            ZeroDecision::NoZero(c) => Some(c),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct DecideOptions {
    /// Degree bound D of the witness search.
    pub search_bound: u32,
    /// Maximum number of search candidates.
    pub search_budget: u64,
    /// Largest expanded variable count attempted by the exact expansion.
    pub expansion_limit: usize,
    pub exec: Execution,
}

impl Default for DecideOptions {
    fn default() -> Self {
        DecideOptions {
            search_bound: 3,
            search_budget: 10_000_000,
            expansion_limit: 256,
            exec: Execution::default(),
        }
    }
}

enum EqualOutcome {
    NoZero(NoZeroCertificate),
    Kernel(Vec<FieldElem>),
}

fn common_denominator(field: &FieldSpec, coeffs: &[FieldElem]) -> FieldElem {
    let fq = field.fq();
    let mut lcm: Vec<u32> = vec![1];
    for c in coeffs {
        let d = c.denominator();
        let g = upoly::gcd(fq, &lcm, d);
        lcm = upoly::divrem(fq, &upoly::mul(fq, &lcm, d), &g).0;
    }
    FieldElem::from_poly(field, lcm)
}

/// u_j with c = sum_{j < p^n} u_j^(p^n) b^j, for a polynomial c.
fn semilinear_decomposition(c: &FieldElem, n: u32) -> Vec<FieldElem> {
    let field = c.field();
    let fq = field.fq();
    let width = field.p_pow(n);
    let mut parts = vec![Vec::new(); width];
    for (k, &g) in c.numerator().iter().enumerate() {
        if g == 0 {
            continue;
        }
        let (m, j) = (k / width, k % width);
        let part = &mut parts[j];
        if part.len() <= m {
            part.resize(m + 1, 0);
        }
        part[m] = fq.frobenius_inverse(g, n);
    }
    parts.into_iter().map(|u| FieldElem::from_poly(field, u)).collect()
}

fn decide_equal(field: &FieldSpec, coeffs: &[FieldElem], n: u32, stage: Stage) -> EqualOutcome {
    let scale = common_denominator(field, coeffs);
    let matrix: Matrix = coeffs
        .iter()
        .map(|c| semilinear_decomposition(&c.mul(&scale), n))
        .collect();
    // x^T M = 0  <=>  M^T x = 0
    let mt = transpose(&matrix);
    if let Some(x) = kernel_vector(&mt, coeffs.len(), field) {
        return EqualOutcome::Kernel(x);
    }
    let (_, minor_columns) = rref(matrix.clone());
    let minor: Matrix = matrix
        .iter()
        .map(|row| minor_columns.iter().map(|&c| row[c].clone()).collect())
        .collect();
    let minor_determinant = determinant(&minor).unwrap_or_else(|| FieldElem::one(field));
    EqualOutcome::NoZero(NoZeroCertificate {
        stage,
        exponent: n,
        scale,
        coeffs: coeffs.to_vec(),
        matrix,
        minor_columns,
        minor_determinant,
    })
}

/// Scale so that the last nonzero entry is 1.
fn normalize_last(mut x: Vec<FieldElem>) -> Vec<FieldElem> {
    if let Some(last) = x.iter().rev().find(|v| !v.is_zero()).cloned() {
        let inv = last.inv().unwrap();
        for v in &mut x {
            *v = v.mul(&inv);
        }
    }
    x
}

/// Decide whether the principal part `p` has a zero other than the origin.
pub fn decide_no_nontrivial_zero(p: &PPoly<FieldElem>, opts: &DecideOptions) -> Result<ZeroDecision> {
    if !p.is_principal() {
        return Err(Error::Precondition(
            "decision expects a principal part (one term per variable)".into(),
        ));
    }
    let field = p.field().clone();
    let n = p.nvars();
    let support = p.support();
    // A variable that does not occur gives the unit-vector zero.
    if let Some(absent) = (0..n).rev().find(|v| !support.contains(v)) {
        let mut w = vec![FieldElem::zero(&field); n];
        w[absent] = FieldElem::one(&field);
        return Ok(ZeroDecision::Zero {
            witness: w,
            stage: Stage::EqualExponent,
        });
    }
    let coeffs: Vec<FieldElem> = support.iter().map(|&v| p.leading_coeff(v).unwrap().clone()).collect();
    let exps: Vec<u32> = support.iter().map(|&v| p.top_exponent(v).unwrap()).collect();
    let Some(&n_min) = exps.iter().min() else {
        // no variables: the origin is the only point
        return Ok(ZeroDecision::NoZero(NoZeroCertificate {
            stage: Stage::EqualExponent,
            exponent: 0,
            scale: FieldElem::one(&field),
            coeffs: Vec::new(),
            matrix: Vec::new(),
            minor_columns: Vec::new(),
            minor_determinant: FieldElem::one(&field),
        }));
    };
    let n_max = *exps.iter().max().unwrap();

    if n_min == n_max {
        return Ok(match decide_equal(&field, &coeffs, n_min, Stage::EqualExponent) {
            EqualOutcome::NoZero(cert) => ZeroDecision::NoZero(cert),
            EqualOutcome::Kernel(x) => ZeroDecision::Zero {
                witness: normalize_last(x),
                stage: Stage::EqualExponent,
            },
        });
    }

    // Relaxation: a zero x of P gives the zero w_i = x_i^(p^(N_i - N_min)) of Q.
    match decide_equal(&field, &coeffs, n_min, Stage::Relaxation) {
        EqualOutcome::NoZero(cert) => return Ok(ZeroDecision::NoZero(cert)),
        EqualOutcome::Kernel(w) => {
            let lifted: Option<Vec<FieldElem>> = w
                .iter()
                .zip(&exps)
                .map(|(wi, &e)| wi.frobenius_root(e - n_min))
                .collect();
            if let Some(x) = lifted {
                debug_assert!(p.evaluate(&x).map(|v| v.is_zero()).unwrap_or(false));
                return Ok(ZeroDecision::Zero {
                    witness: x,
                    stage: Stage::Relaxation,
                });
            }
        }
    }

    // Expansion: x_i = sum_{j < p^(M - N_i)} v_ij^(p^(M - N_i)) b^j, so that
    // x_i^(p^N_i) = sum_j v_ij^(p^M) b^(j p^N_i).
    let expanded: usize = exps.iter().map(|&e| field.p_pow(n_max - e)).sum();
    if expanded <= opts.expansion_limit {
        let b = FieldElem::tower_generator(&field);
        let mut ex_coeffs = Vec::with_capacity(expanded);
        let mut origin = Vec::with_capacity(expanded);
        for (i, (c, &e)) in coeffs.iter().zip(&exps).enumerate() {
            let step = b.pow_u64(field.p_pow(e) as u64);
            let mut shift = FieldElem::one(&field);
            for j in 0..field.p_pow(n_max - e) {
                ex_coeffs.push(c.mul(&shift));
                origin.push((i, j));
                shift = shift.mul(&step);
            }
        }
        return Ok(match decide_equal(&field, &ex_coeffs, n_max, Stage::Expansion) {
            EqualOutcome::NoZero(cert) => ZeroDecision::NoZero(cert),
            EqualOutcome::Kernel(v) => {
                let mut x = vec![FieldElem::zero(&field); n];
                for (vij, &(i, j)) in v.iter().zip(&origin) {
                    let term = vij.frobenius(n_max - exps[i]).mul(&b.pow_u64(j as u64));
                    x[support[i]] = x[support[i]].add(&term);
                }
                debug_assert!(p.evaluate(&x).map(|v| v.is_zero()).unwrap_or(false));
                ZeroDecision::Zero {
                    witness: x,
                    stage: Stage::Expansion,
                }
            }
        });
    }

    Ok(match search_zero(p, opts.search_bound, opts.search_budget, opts.exec) {
        SearchOutcome::Found(w) => ZeroDecision::Zero {
            witness: w,
            stage: Stage::Search,
        },
        SearchOutcome::Exhausted { explored } | SearchOutcome::BudgetExceeded { explored } => ZeroDecision::Unknown {
            bound: opts.search_bound,
            explored,
        },
    })
}
