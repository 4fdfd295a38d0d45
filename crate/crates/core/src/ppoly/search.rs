//! Bounded witness search for zeroes of a p-polynomial.
//!
//! Candidates are vectors of polynomials in the tower generator with F_q
//! coefficients and degree <= D, enumerated lexicographically by their base-q
//! digit expansion. A zero with rational entries can always be rescaled to one
//! with polynomial entries (scaling x_i by lambda^(p^(M - N_i)) multiplies the
//! value by lambda^(p^M)), so polynomial candidates are enough to find zeroes;
//! the degree bound is what makes the search incomplete.

use super::PPoly;
use crate::exec::Execution;
use crate::field::{upoly, FieldElem, FieldSpec};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchOutcome {
    Found(Vec<FieldElem>),
    /// The whole space was checked without finding a zero.
    Exhausted {
        explored: u64,
    },
    /// The budget ran out before the space was exhausted.
    BudgetExceeded {
        explored: u64,
    },
}

const CHUNK: u64 = 4096;

/// Number of nonzero candidate vectors, if it fits in u64.
pub fn space_size(field: &FieldSpec, nvars: usize, bound: u32) -> Option<u64> {
    let digits = (bound + 1).checked_mul(nvars as u32)?;
    (field.fq().order() as u64).checked_pow(digits).map(|s| s - 1)
}

struct Evaluator {
    field: FieldSpec,
    nvars: usize,
    bound: usize,
    /// (var, p^e, cleared coefficient numerator)
    terms: Vec<(usize, u32, usize, Vec<u32>)>,
    len: usize,
}

impl Evaluator {
    fn new(p: &PPoly<FieldElem>, bound: u32) -> Self {
        let field = p.field().clone();
        let fq = field.fq();
        let mut lcm: Vec<u32> = vec![1];
        for (_, _, c) in p.terms() {
            let d = c.denominator();
            let g = upoly::gcd(fq, &lcm, d);
            lcm = upoly::divrem(fq, &upoly::mul(fq, &lcm, d), &g).0;
        }
        let scale = FieldElem::from_poly(&field, lcm);
        let bound = bound as usize;
        let mut len = 1;
        let terms: Vec<_> = p
            .terms()
            .map(|(v, e, c)| {
                let cleared = c.mul(&scale).numerator().to_vec();
                let stride = field.p_pow(e);
                len = len.max(cleared.len() + bound * stride);
                (v, e, stride, cleared)
            })
            .collect();
        Evaluator {
            field,
            nvars: p.nvars(),
            bound,
            terms,
            len,
        }
    }

    fn digits(&self, mut index: u64, out: &mut [u32]) {
        let q = self.field.fq().order() as u64;
        for d in out.iter_mut().rev() {
            *d = (index % q) as u32;
            index /= q;
        }
    }

    fn is_zero_at(&self, digits: &[u32], acc: &mut [u32]) -> bool {
        let fq = self.field.fq();
        acc.iter_mut().for_each(|x| *x = 0);
        let width = self.bound + 1;
        for (v, e, stride, c) in &self.terms {
            let x = &digits[v * width..(v + 1) * width];
            for (j, &xj) in x.iter().enumerate() {
                if xj == 0 {
                    continue;
                }
                let xj = fq.frobenius(xj, *e);
                let shift = j * stride;
                for (k, &ck) in c.iter().enumerate() {
                    if ck != 0 {
                        acc[k + shift] = fq.add(acc[k + shift], fq.mul(ck, xj));
                    }
                }
            }
        }
        acc.iter().all(|&x| x == 0)
    }

    fn witness(&self, digits: &[u32]) -> Vec<FieldElem> {
        let width = self.bound + 1;
        (0..self.nvars)
            .map(|v| FieldElem::from_poly(&self.field, digits[v * width..(v + 1) * width].to_vec()))
            .collect()
    }
}

/// Search for a nonzero polynomial vector of degree <= `bound` on which `p` vanishes.
pub fn search_zero(p: &PPoly<FieldElem>, bound: u32, budget: u64, exec: Execution) -> SearchOutcome {
    let eval = Evaluator::new(p, bound);
    let total = space_size(p.field(), p.nvars(), bound).unwrap_or(u64::MAX);
    let limit = total.min(budget);
    let ndigits = (bound as usize + 1) * p.nvars();
    let chunks = limit.div_ceil(CHUNK) as usize;
    let found = exec.find_first(chunks, |chunk| {
        let start = 1 + chunk as u64 * CHUNK;
        let end = (start + CHUNK).min(limit + 1);
        let mut digits = vec![0u32; ndigits];
        let mut acc = vec![0u32; eval.len];
        (start..end).find_map(|index| {
            eval.digits(index, &mut digits);
            eval.is_zero_at(&digits, &mut acc).then(|| eval.witness(&digits))
        })
    });
    match found {
        Some(w) => SearchOutcome::Found(w),
        None if limit == total => SearchOutcome::Exhausted { explored: limit },
        None => SearchOutcome::BudgetExceeded { explored: limit },
    }
}
