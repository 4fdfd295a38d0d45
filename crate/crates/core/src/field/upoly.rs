//! Dense univariate polynomials over F_q in the tower generator.
//!
//! Coefficient vectors are ascending and trimmed; the zero polynomial is empty.

use super::fq::FiniteField;

pub type UPoly = Vec<u32>;

pub fn trim(p: &mut UPoly) {
    while p.last() == Some(&0) {
        p.pop();
    }
}

pub fn degree(p: &[u32]) -> Option<usize> {
    if p.is_empty() {
        None
    } else {
        Some(p.len() - 1)
    }
}

pub fn is_one(p: &[u32]) -> bool {
    p.len() == 1 && p[0] == 1
}

pub fn add(f: &FiniteField, x: &[u32], y: &[u32]) -> UPoly {
    let (long, short) = if x.len() >= y.len() { (x, y) } else { (y, x) };
    let mut out = long.to_vec();
    for (o, &s) in out.iter_mut().zip(short) {
        *o = f.add(*o, s);
    }
    trim(&mut out);
    out
}

pub fn neg(f: &FiniteField, x: &[u32]) -> UPoly {
    x.iter().map(|&c| f.neg(c)).collect()
}

pub fn sub(f: &FiniteField, x: &[u32], y: &[u32]) -> UPoly {
    let mut out = x.to_vec();
    if out.len() < y.len() {
        out.resize(y.len(), 0);
    }
    for (o, &s) in out.iter_mut().zip(y) {
        *o = f.sub(*o, s);
    }
    trim(&mut out);
    out
}

pub fn scale(f: &FiniteField, x: &[u32], c: u32) -> UPoly {
    if c == 0 {
        return Vec::new();
    }
    x.iter().map(|&a| f.mul(a, c)).collect()
}

pub fn mul(f: &FiniteField, x: &[u32], y: &[u32]) -> UPoly {
    if x.is_empty() || y.is_empty() {
        return Vec::new();
    }
    if is_one(x) {
        return y.to_vec();
    }
    if is_one(y) {
        return x.to_vec();
    }
    let mut out = vec![0u32; x.len() + y.len() - 1];
    if f.degree() == 1 {
        // Accumulate in u64 and reduce lazily; products are < p^2 < 2^62.
        let p = f.p() as u64;
        let mut acc = vec![0u64; out.len()];
        let limit = u64::MAX - p * p;
        for (i, &a) in x.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in y.iter().enumerate() {
                if b == 0 {
                    continue;
                }
                let slot = &mut acc[i + j];
                *slot += a as u64 * b as u64;
                if *slot > limit {
                    *slot %= p;
                }
            }
        }
        for (o, a) in out.iter_mut().zip(acc) {
            *o = (a % p) as u32;
        }
    } else {
        for (i, &a) in x.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in y.iter().enumerate() {
                if b != 0 {
                    out[i + j] = f.add(out[i + j], f.mul(a, b));
                }
            }
        }
    }
    trim(&mut out);
    out
}

/// Division with remainder by a nonzero divisor.
pub fn divrem(f: &FiniteField, x: &[u32], d: &[u32]) -> (UPoly, UPoly) {
    let dd = degree(d).expect("division by the zero polynomial");
    if x.len() < d.len() {
        return (Vec::new(), x.to_vec());
    }
    let lead_inv = f.inv(d[dd]).expect("nonzero leading coefficient");
    let mut rem = x.to_vec();
    let mut quo = vec![0u32; x.len() - dd];
    for k in (0..quo.len()).rev() {
        let c = rem[k + dd];
        if c == 0 {
            continue;
        }
        let t = f.mul(c, lead_inv);
        quo[k] = t;
        for (i, &di) in d.iter().enumerate() {
            rem[k + i] = f.sub(rem[k + i], f.mul(t, di));
        }
    }
    trim(&mut rem);
    trim(&mut quo);
    (quo, rem)
}

pub fn make_monic(f: &FiniteField, x: &[u32]) -> (UPoly, u32) {
    match x.last() {
        None => (Vec::new(), 0),
        Some(&lead) => {
            let inv = f.inv(lead).expect("nonzero");
            (scale(f, x, inv), lead)
        }
    }
}

/// Monic greatest common divisor (zero if both inputs are zero).
pub fn gcd(f: &FiniteField, x: &[u32], y: &[u32]) -> UPoly {
    let mut a = x.to_vec();
    let mut b = y.to_vec();
    while !b.is_empty() {
        if b.len() == 1 {
            return vec![1];
        }
        let (_, r) = divrem(f, &a, &b);
        a = b;
        b = r;
    }
    make_monic(f, &a).0
}

pub fn derivative(f: &FiniteField, x: &[u32]) -> UPoly {
    let mut out: UPoly = x
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, &c)| f.mul(c, f.from_int((i as u64 % f.p() as u64) as i64)))
        .collect();
    trim(&mut out);
    out
}

/// x(b)^(p^n): coefficients Frobenius-raised, b^j sent to b^(j p^n).
pub fn frobenius(f: &FiniteField, x: &[u32], n: u32) -> UPoly {
    if n == 0 || x.is_empty() {
        return x.to_vec();
    }
    let stride = (f.p() as usize).pow(n);
    let mut out = vec![0u32; (x.len() - 1) * stride + 1];
    for (j, &c) in x.iter().enumerate() {
        out[j * stride] = f.frobenius(c, n);
    }
    out
}

/// Substitute b -> b^(p^n) without touching coefficients.
pub fn inflate(x: &[u32], stride: usize) -> UPoly {
    if x.is_empty() || stride == 1 {
        return x.to_vec();
    }
    let mut out = vec![0u32; (x.len() - 1) * stride + 1];
    for (j, &c) in x.iter().enumerate() {
        out[j * stride] = c;
    }
    out
}

/// The p^n-th root, if every exponent is divisible by p^n.
pub fn frobenius_root(f: &FiniteField, x: &[u32], n: u32) -> Option<UPoly> {
    if n == 0 {
        return Some(x.to_vec());
    }
    let stride = (f.p() as usize).pow(n);
    if x.iter().enumerate().any(|(j, &c)| c != 0 && j % stride != 0) {
        return None;
    }
    Some(x.iter().step_by(stride).map(|&c| f.frobenius_inverse(c, n)).collect())
}

pub fn evaluate(f: &FiniteField, x: &[u32], at: u32) -> u32 {
    x.iter().rev().fold(0, |acc, &c| f.add(f.mul(acc, at), c))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f3() -> FiniteField {
        FiniteField::new(3, 1).unwrap()
    }

    #[test]
    fn divrem_reconstructs() {
        let f = f3();
        let x = vec![1, 2, 0, 1, 1];
        let d = vec![2, 1];
        let (q, r) = divrem(&f, &x, &d);
        assert_eq!(add(&f, &mul(&f, &q, &d), &r), x);
        assert!(r.len() < d.len());
    }

    #[test]
    fn gcd_is_monic() {
        let f = f3();
        // (b + 1)(b + 2) and 2(b + 1)
        let x = mul(&f, &[1, 1], &[2, 1]);
        let y = vec![2, 2];
        assert_eq!(gcd(&f, &x, &y), vec![1, 1]);
    }

    #[test]
    fn frobenius_spreads() {
        let f = f3();
        assert_eq!(frobenius(&f, &[1, 1], 1), vec![1, 0, 0, 1]);
        assert_eq!(frobenius_root(&f, &[1, 0, 0, 1], 1), Some(vec![1, 1]));
        assert_eq!(frobenius_root(&f, &[1, 1], 1), None);
        assert!(derivative(&f, &[1, 0, 0, 1]).is_empty());
    }
}
