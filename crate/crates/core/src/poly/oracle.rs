//! Randomized one-sided check that a polynomial vanishes on the variety cut
//! out by a relation set.
//!
//! Free variables are drawn as random polynomials of degree <= 3 in the
//! transcendental a. Each relation is then solved for a variable that occurs
//! in exactly one of its terms, say c * X_s^(p^e), by taking a p^e-th root in
//! a tower deep enough to contain it.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Poly, RelationSet};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::field::FieldElem;

#[derive(Clone, Copy, Debug)]
pub struct OracleOptions {
    pub trials: usize,
    pub seed: u64,
    /// Degree bound of the sampled free coordinates.
    pub degree: usize,
    pub exec: Execution,
}

impl Default for OracleOptions {
    fn default() -> Self {
        OracleOptions {
            trials: 100,
            seed: 0,
            degree: 3,
            exec: Execution::default(),
        }
    }
}

struct Solved {
    var: usize,
    exp: u32,
    relation: usize,
}

fn choose_solved(rels: &RelationSet) -> Result<Vec<Solved>> {
    rels.relations()
        .iter()
        .enumerate()
        .map(|(i, r)| {
            r.poly
                .support()
                .into_iter()
                .filter(|&v| r.poly.occurrences(v) == 1)
                .map(|v| (r.poly.top_exponent(v).unwrap(), v))
                .min()
                .map(|(exp, var)| Solved { var, exp, relation: i })
                .ok_or_else(|| Error::UnsupportedRelation(r.poly.to_string()))
        })
        .collect()
}

/// False as soon as a sampled point of the relation variety gives a nonzero
/// value; true when every trial vanishes.
pub fn random_point_oracle(h: &Poly, rels: &RelationSet, opts: &OracleOptions) -> Result<bool> {
    if h.nvars() != rels.nvars() {
        return Err(Error::Arity {
            expected: rels.nvars(),
            got: h.nvars(),
        });
    }
    let solved = choose_solved(rels)?;
    let base = h.field().clone();
    let extra = solved.iter().map(|s| s.exp).max().unwrap_or(0);
    let field = base.extend_depth(base.depth() + extra)?;
    let h = h.embed(&field)?;
    let relations: Vec<_> = rels
        .relations()
        .iter()
        .map(|r| r.poly.embed(&field))
        .collect::<Result<_>>()?;
    let a = FieldElem::gen(&field);
    let powers: Vec<FieldElem> = (0..=opts.degree).map(|j| a.pow_u64(j as u64)).collect();
    let q = field.fq().order();
    let n = h.nvars();

    let sample = |trial: usize| -> Result<bool> {
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
        rng.set_stream(trial as u64);
        let mut point: Vec<FieldElem> = (0..n)
            .map(|_| {
                powers.iter().fold(FieldElem::zero(&field), |acc, pw| {
                    acc.add(&pw.scale_fq(rng.gen_range(0..q)))
                })
            })
            .collect();
        for s in &solved {
            let rel = &relations[s.relation];
            point[s.var] = FieldElem::zero(&field);
            let rest = rel.evaluate(&point)?;
            let c = rel.coeff(s.var, s.exp).unwrap();
            let target = rest.neg().div(c).unwrap();
            point[s.var] = target
                .frobenius_root(s.exp)
                .ok_or_else(|| Error::UnsupportedRelation(format!("no p^{}-th root available", s.exp)))?;
        }
        Ok(h.evaluate(&point)?.is_zero())
    };

    let outcomes = opts.exec.map(opts.trials, sample);
    for o in outcomes {
        if !o? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;
    use crate::poly::PolyRing;
    use crate::ppoly::PPoly;

    #[test]
    fn zero_and_free_variable() {
        let k = FieldSpec::rational(3).unwrap();
        let r = PolyRing::new(&k, 1);
        let rels = RelationSet::new(&k, 1);
        let opts = OracleOptions {
            trials: 10,
            ..Default::default()
        };
        assert!(random_point_oracle(&Poly::zero(&r), &rels, &opts).unwrap());
        assert!(!random_point_oracle(&Poly::var(&r, 0), &rels, &opts).unwrap());
    }

    #[test]
    fn samples_lie_on_the_relation() {
        let k = FieldSpec::rational(3).unwrap();
        let a = FieldElem::gen(&k);
        let one = FieldElem::one(&k);
        let f = PPoly::from_terms(&k, 2, [(0, 2, one.clone()), (0, 0, one.neg()), (1, 2, a)]);
        let rels = RelationSet::new(&k, 2).with(f.clone(), 0).unwrap();
        let opts = OracleOptions {
            trials: 20,
            seed: 7,
            ..Default::default()
        };
        let h = Poly::from_ppoly(&f);
        assert!(random_point_oracle(&h, &rels, &opts).unwrap());
        // X^9 alone is not in the ideal
        let r = PolyRing::new(&k, 2);
        assert!(!random_point_oracle(&Poly::var(&r, 0).pow(9), &rels, &opts).unwrap());
    }

    #[test]
    fn relation_without_single_term_variable_is_unsupported() {
        let k = FieldSpec::rational(3).unwrap();
        let one = FieldElem::one(&k);
        let f = PPoly::from_terms(&k, 1, [(0, 1, one.clone()), (0, 0, one)]);
        let rels = RelationSet::new(&k, 1).with(f, 0).unwrap();
        let r = PolyRing::new(&k, 1);
        let err = random_point_oracle(&Poly::var(&r, 0), &rels, &OracleOptions::default());
        assert!(matches!(err, Err(Error::UnsupportedRelation(_))));
    }
}
