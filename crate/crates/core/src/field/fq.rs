//! The constant field F_q, q = p^e.
//!
//! Elements are `u32` codes: the base-p digits of a code are the coefficients of
//! the element as a polynomial in a primitive root `z` of a fixed modulus. For
//! `e = 1` the code is the residue itself.

use crate::error::{Error, Result};

/// Largest q accepted when e > 1 (log/exp tables are materialized).
pub const MAX_EXTENSION_ORDER: u64 = 1 << 20;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteField {
    p: u32,
    e: u32,
    q: u32,
    /// Monic modulus of degree e, ascending digits (empty when e = 1).
    modulus: Vec<u32>,
    exp: Vec<u32>,
    log: Vec<u32>,
}

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= n as u64 {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl FiniteField {
    pub fn new(p: u32, e: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        if e == 0 {
            return Err(Error::InvalidField("extension degree must be >= 1".into()));
        }
        if e == 1 {
            return Ok(FiniteField {
                p,
                e,
                q: p,
                modulus: Vec::new(),
                exp: Vec::new(),
                log: Vec::new(),
            });
        }
        let q = (p as u64)
            .checked_pow(e)
            .filter(|&q| q <= MAX_EXTENSION_ORDER)
            .ok_or_else(|| {
                Error::InvalidField(format!("q = {p}^{e} exceeds the supported order {MAX_EXTENSION_ORDER}"))
            })? as u32;
        let modulus = first_primitive_modulus(p, e, q);
        let mut ff = FiniteField {
            p,
            e,
            q,
            modulus,
            exp: Vec::new(),
            log: Vec::new(),
        };
        ff.build_tables();
        Ok(ff)
    }

    fn build_tables(&mut self) {
        let order = (self.q - 1) as usize;
        let mut exp = Vec::with_capacity(order);
        let mut log = vec![0u32; self.q as usize];
        let z = self.p; // digits (0, 1): the class of z
        let mut cur = 1u32;
        for i in 0..order {
            exp.push(cur);
            log[cur as usize] = i as u32;
            cur = mul_by_modulus(self.p, &self.modulus, cur, z);
        }
        self.exp = exp;
        self.log = log;
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.e
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    /// Ascending coefficients of the defining modulus (empty for prime fields).
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// Reduce an integer literal into the prime subfield.
    pub fn from_int(&self, n: i64) -> u32 {
        n.rem_euclid(self.p as i64) as u32
    }

    /// The class of `z` (only meaningful for e > 1).
    pub fn generator(&self) -> u32 {
        if self.e == 1 {
            1
        } else {
            self.p
        }
    }

    pub fn digits(&self, x: u32) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.e as usize);
        let mut x = x;
        for _ in 0..self.e {
            out.push(x % self.p);
            x /= self.p;
        }
        out
    }

    #[inline]
    pub fn add(&self, x: u32, y: u32) -> u32 {
        if self.e == 1 {
            let s = x as u64 + y as u64;
            return (s % self.p as u64) as u32;
        }
        let (mut x, mut y) = (x, y);
        let mut out = 0u32;
        let mut scale = 1u32;
        for _ in 0..self.e {
            let d = (x % self.p + y % self.p) % self.p;
            out += d * scale;
            scale = scale.wrapping_mul(self.p);
            x /= self.p;
            y /= self.p;
        }
        out
    }

    #[inline]
    pub fn neg(&self, x: u32) -> u32 {
        if self.e == 1 {
            return if x == 0 { 0 } else { self.p - x };
        }
        let mut x = x;
        let mut out = 0u32;
        let mut scale = 1u32;
        for _ in 0..self.e {
            let d = x % self.p;
            out += ((self.p - d) % self.p) * scale;
            scale = scale.wrapping_mul(self.p);
            x /= self.p;
        }
        out
    }

    #[inline]
    pub fn sub(&self, x: u32, y: u32) -> u32 {
        self.add(x, self.neg(y))
    }

    #[inline]
    pub fn mul(&self, x: u32, y: u32) -> u32 {
        if x == 0 || y == 0 {
            return 0;
        }
        if self.e == 1 {
            return ((x as u64 * y as u64) % self.p as u64) as u32;
        }
        let order = self.q - 1;
        let l = (self.log[x as usize] + self.log[y as usize]) % order;
        self.exp[l as usize]
    }

    pub fn pow(&self, x: u32, mut k: u64) -> u32 {
        let mut base = x;
        let mut acc = 1u32;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, x: u32) -> Option<u32> {
        if x == 0 {
            return None;
        }
        if self.e == 1 {
            return Some(self.pow(x, (self.p - 2) as u64));
        }
        let order = self.q - 1;
        let l = (order - self.log[x as usize]) % order;
        Some(self.exp[l as usize])
    }

    /// x^(p^n): the n-th power of the Frobenius automorphism.
    pub fn frobenius(&self, x: u32, n: u32) -> u32 {
        if self.e == 1 || x == 0 {
            return x;
        }
        let n = n % self.e;
        let order = (self.q - 1) as u64;
        let l = (self.log[x as usize] as u64 * (self.p as u64).pow(n)) % order;
        self.exp[l as usize]
    }

    /// The unique y with y^(p^n) = x (F_q is perfect).
    pub fn frobenius_inverse(&self, x: u32, n: u32) -> u32 {
        if self.e == 1 {
            return x;
        }
        let n = n % self.e;
        self.frobenius(x, (self.e - n) % self.e)
    }

    pub fn elements(&self) -> impl Iterator<Item = u32> {
        0..self.q
    }
}

fn mul_by_modulus(p: u32, modulus: &[u32], x: u32, y: u32) -> u32 {
    let e = modulus.len() - 1;
    let dx = to_digits(p, e, x);
    let dy = to_digits(p, e, y);
    let mut prod = vec![0u64; 2 * e];
    for (i, &a) in dx.iter().enumerate() {
        for (j, &b) in dy.iter().enumerate() {
            prod[i + j] = (prod[i + j] + a as u64 * b as u64) % p as u64;
        }
    }
    for deg in (e..2 * e).rev() {
        let c = prod[deg];
        if c == 0 {
            continue;
        }
        for (k, &m) in modulus.iter().enumerate().take(e) {
            let idx = deg - e + k;
            prod[idx] = (prod[idx] + (p as u64 - c) * m as u64) % p as u64;
        }
        prod[deg] = 0;
    }
    let mut out = 0u32;
    for d in prod[..e].iter().rev() {
        out = out * p + *d as u32;
    }
    out
}

fn to_digits(p: u32, e: usize, mut x: u32) -> Vec<u32> {
    let mut out = Vec::with_capacity(e);
    for _ in 0..e {
        out.push(x % p);
        x /= p;
    }
    out
}

/// Lexicographically first monic polynomial of degree e whose root generates
/// the multiplicative group. Such a polynomial is irreducible.
fn first_primitive_modulus(p: u32, e: u32, q: u32) -> Vec<u32> {
    let e = e as usize;
    let order = (q - 1) as u64;
    let prime_factors = factor(order);
    for code in 0..q {
        let mut modulus = to_digits(p, e, code);
        if modulus[0] == 0 {
            continue;
        }
        modulus.push(1);
        let z = p;
        let pow = |k: u64| {
            let mut acc = 1u32;
            let mut base = z;
            let mut k = k;
            while k > 0 {
                if k & 1 == 1 {
                    acc = mul_by_modulus(p, &modulus, acc, base);
                }
                base = mul_by_modulus(p, &modulus, base, base);
                k >>= 1;
            }
            acc
        };
        if pow(order) != 1 {
            continue;
        }
        if prime_factors.iter().all(|&f| pow(order / f) != 1) {
            return modulus;
        }
    }
    unreachable!("a primitive polynomial of every degree exists")
}

fn factor(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_arithmetic() {
        let f = FiniteField::new(7, 1).unwrap();
        assert_eq!(f.add(5, 4), 2);
        assert_eq!(f.mul(3, 5), 1);
        assert_eq!(f.inv(3), Some(5));
        assert_eq!(f.neg(0), 0);
        assert_eq!(f.from_int(-1), 6);
    }

    #[test]
    fn rejects_non_prime() {
        assert!(FiniteField::new(9, 1).is_err());
        assert!(FiniteField::new(3, 0).is_err());
    }

    #[test]
    fn extension_field_is_a_field() {
        let f = FiniteField::new(3, 2).unwrap();
        assert_eq!(f.order(), 9);
        for x in 1..9 {
            let y = f.inv(x).unwrap();
            assert_eq!(f.mul(x, y), 1);
            assert_eq!(f.frobenius_inverse(f.frobenius(x, 1), 1), x);
            assert_eq!(f.frobenius(x, 1), f.pow(x, 3));
        }
        for x in 0..9 {
            for y in 0..9 {
                assert_eq!(f.frobenius(f.add(x, y), 1), f.add(f.frobenius(x, 1), f.frobenius(y, 1)));
            }
        }
    }

    #[test]
    fn modulus_is_deterministic() {
        let a = FiniteField::new(2, 4).unwrap();
        let b = FiniteField::new(2, 4).unwrap();
        assert_eq!(a.modulus(), b.modulus());
        assert_eq!(a.modulus().len(), 5);
    }
}
