//! Gaussian elimination over F_q(b).

use crate::field::{FieldElem, FieldSpec};

pub type Matrix = Vec<Vec<FieldElem>>;

/// Reduced row echelon form and its pivot columns.
pub fn rref(mut m: Matrix) -> (Matrix, Vec<usize>) {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(sel) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, sel);
        let inv = m[r][c].inv().unwrap();
        m[r] = m[r].iter().map(|x| x.mul(&inv)).collect();
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let factor = m[i][c].clone();
                let pivot_row = m[r].clone();
                for (x, y) in m[i].iter_mut().zip(&pivot_row) {
                    if !y.is_zero() {
                        *x = x.sub(&factor.mul(y));
                    }
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (m, pivots)
}

pub fn rank(m: &Matrix) -> usize {
    rref(m.clone()).1.len()
}

pub fn transpose(m: &Matrix) -> Matrix {
    let cols = m.first().map_or(0, Vec::len);
    (0..cols)
        .map(|c| m.iter().map(|row| row[c].clone()).collect())
        .collect()
}

/// A nonzero vector x with M x = 0, built from the last free column; `None` if M is injective.
pub fn kernel_vector(m: &Matrix, ncols: usize, field: &FieldSpec) -> Option<Vec<FieldElem>> {
    let (r, pivots) = rref(m.clone());
    let free = (0..ncols).rev().find(|c| !pivots.contains(c))?;
    let mut x = vec![FieldElem::zero(field); ncols];
    x[free] = FieldElem::one(field);
    for (row, &pc) in pivots.iter().enumerate() {
        x[pc] = r[row][free].neg();
    }
    Some(x)
}

pub fn determinant(m: &Matrix) -> Option<FieldElem> {
    let n = m.len();
    let field = m.first()?.first()?.field().clone();
    let mut a = m.clone();
    let mut det = FieldElem::one(&field);
    for c in 0..n {
        let sel = (c..n).find(|&i| !a[i][c].is_zero());
        let Some(sel) = sel else {
            return Some(FieldElem::zero(&field));
        };
        if sel != c {
            a.swap(sel, c);
            det = det.neg();
        }
        let pivot = a[c][c].clone();
        det = det.mul(&pivot);
        let inv = pivot.inv().unwrap();
        for i in c + 1..n {
            if a[i][c].is_zero() {
                continue;
            }
            let factor = a[i][c].mul(&inv);
            let pivot_row = a[c].clone();
            for (x, y) in a[i].iter_mut().zip(&pivot_row).skip(c) {
                *x = x.sub(&factor.mul(y));
            }
        }
    }
    Some(det)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kernel_and_rank() {
        let k = FieldSpec::rational(3).unwrap();
        let a = FieldElem::gen(&k);
        let one = FieldElem::one(&k);
        let zero = FieldElem::zero(&k);
        // single equation x + a y = 0
        let m = vec![vec![one.clone(), a.clone()]];
        assert_eq!(rank(&m), 1);
        let x = kernel_vector(&m, 2, &k).unwrap();
        assert_eq!(x, vec![a.neg(), one.clone()]);
        let id = vec![vec![one.clone(), zero.clone()], vec![zero, one.clone()]];
        assert!(kernel_vector(&id, 2, &k).is_none());
        assert_eq!(determinant(&id), Some(one));
    }
}
