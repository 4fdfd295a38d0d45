//! Exhaustive search for solutions of a constraint system over a finite coefficient set.

use super::{ConstraintSystem, PPolyMap};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::field::{FieldElem, FieldSpec};

/// A finite set of field elements, in a fixed enumeration order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Domain {
    pub description: String,
    pub elements: Vec<FieldElem>,
}

impl Domain {
    /// All polynomials in the transcendental of degree <= `degree` with F_q
    /// coefficients; degree 0 gives F_q itself. Ordered by base-q digits,
    /// constant coefficient least significant.
    pub fn polynomials(field: &FieldSpec, degree: u32) -> Result<Self> {
        let q = field.fq().order() as u64;
        let size = q
            .checked_pow(degree + 1)
            .filter(|&s| s <= 1 << 24)
            .ok_or_else(|| Error::Input(format!("domain of degree {degree} polynomials is too large")))?;
        let a = FieldElem::gen(field);
        let powers: Vec<FieldElem> = (0..=degree).map(|j| a.pow_u64(j as u64)).collect();
        let elements = (0..size)
            .map(|mut index| {
                let mut x = FieldElem::zero(field);
                for pw in &powers {
                    x = x.add(&pw.scale_fq((index % q) as u32));
                    index /= q;
                }
                x
            })
            .collect();
        let description = if degree == 0 {
            format!("F_{q}")
        } else {
            format!("polynomials of degree <= {degree}")
        };
        Ok(Domain { description, elements })
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

#[derive(Clone, Copy, Debug)]
pub struct SolveOptions {
    /// Refuse to enumerate more assignments than this.
    pub max_enum: u128,
    pub exec: Execution,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            max_enum: 10_000_000,
            exec: Execution::default(),
        }
    }
}

/// All solutions within the domain; complete within that bound only.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolveResult {
    pub assignments: Vec<Vec<FieldElem>>,
    pub maps: Vec<PPolyMap>,
    /// Size of the assignment space.
    pub space: u128,
}

struct Search<'a> {
    cs: &'a ConstraintSystem,
    domain: &'a Domain,
    /// Constraint indices that become fully assigned right after unknown i.
    checks: Vec<Vec<usize>>,
}

impl Search<'_> {
    fn satisfied(&self, level: usize, point: &[FieldElem]) -> bool {
        self.checks[level].iter().all(|&c| {
            self.cs.constraints[c]
                .evaluate(point)
                .map(|v| v.is_zero())
                .unwrap_or(false)
        })
    }

    fn extend(&self, level: usize, point: &mut Vec<FieldElem>, out: &mut Vec<Vec<FieldElem>>) {
        if level == point.len() {
            out.push(point.clone());
            return;
        }
        for x in &self.domain.elements {
            point[level] = x.clone();
            if self.satisfied(level, point) {
                self.extend(level + 1, point, out);
            }
        }
        point[level] = FieldElem::zero(self.cs.ring.field());
    }
}

/// Every assignment of domain values to the unknowns satisfying all constraints,
/// in lexicographic order of domain indices.
pub fn solve_homs_bounded(cs: &ConstraintSystem, domain: &Domain, opts: &SolveOptions) -> Result<SolveResult> {
    let m = cs.unknowns.len();
    let space = (domain.len() as u128).checked_pow(m as u32).unwrap_or(u128::MAX);
    if space > opts.max_enum {
        return Err(Error::EnumerationTooLarge {
            size: space,
            limit: opts.max_enum,
        });
    }
    let field = cs.ring.field();
    let mut checks = vec![Vec::new(); m];
    let mut constant_ok = true;
    for (i, c) in cs.constraints.iter().enumerate() {
        match c.variables().last() {
            Some(&last) => checks[last].push(i),
            None => constant_ok &= c.is_zero(),
        }
    }
    let assignments = if !constant_ok {
        Vec::new()
    } else if m == 0 {
        vec![Vec::new()]
    } else {
        let search = Search { cs, domain, checks };
        let parts = opts.exec.map(domain.len(), |i| {
            let mut point = vec![FieldElem::zero(field); m];
            point[0] = domain.elements[i].clone();
            let mut out = Vec::new();
            if search.satisfied(0, &point) {
                search.extend(1, &mut point, &mut out);
            }
            out
        });
        parts.into_iter().flatten().collect()
    };
    let maps = assignments
        .iter()
        .map(|a| cs.instantiate(a)?.canonical_form())
        .collect::<Result<Vec<_>>>()?;
    Ok(SolveResult {
        assignments,
        maps,
        space,
    })
}
