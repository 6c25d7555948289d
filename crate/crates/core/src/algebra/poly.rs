//! Dense univariate polynomials over GF(p).

use super::prime::{add_mod, inv_mod, mul_mod, reduce, sub_mod};
use std::cmp::Ordering;

/// Coefficients low to high, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly {
    p: u32,
    c: Vec<u32>,
}

impl Poly {
    pub fn zero(p: u32) -> Self {
        Poly { p, c: Vec::new() }
    }

    pub fn one(p: u32) -> Self {
        Self::constant(p, 1)
    }

    pub fn constant(p: u32, v: i64) -> Self {
        Self::from_raw(p, vec![reduce(v, p)])
    }

    /// The variable itself.
    pub fn x(p: u32) -> Self {
        Self::monomial(p, 1, 1)
    }

    pub fn monomial(p: u32, coeff: i64, deg: usize) -> Self {
        let mut c = vec![0; deg + 1];
        c[deg] = reduce(coeff, p);
        Self::from_raw(p, c)
    }

    pub fn from_coeffs(p: u32, coeffs: &[i64]) -> Self {
        Self::from_raw(p, coeffs.iter().map(|&v| reduce(v, p)).collect())
    }

    /// Takes already-reduced coefficients.
    pub fn from_raw(p: u32, mut c: Vec<u32>) -> Self {
        while c.last() == Some(&0) {
            c.pop();
        }
        Poly { p, c }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.c
    }

    pub fn coeff(&self, i: usize) -> u32 {
        self.c.get(i).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.c == [1]
    }

    pub fn is_constant(&self) -> bool {
        self.c.len() <= 1
    }

    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn lead(&self) -> u32 {
        self.c.last().copied().unwrap_or(0)
    }

    pub fn is_monic(&self) -> bool {
        self.lead() == 1
    }

    pub fn add(&self, o: &Poly) -> Poly {
        let n = self.c.len().max(o.c.len());
        let c = (0..n).map(|i| add_mod(self.coeff(i), o.coeff(i), self.p)).collect();
        Poly::from_raw(self.p, c)
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        let n = self.c.len().max(o.c.len());
        let c = (0..n).map(|i| sub_mod(self.coeff(i), o.coeff(i), self.p)).collect();
        Poly::from_raw(self.p, c)
    }

    pub fn neg(&self) -> Poly {
        Poly::from_raw(self.p, self.c.iter().map(|&a| sub_mod(0, a, self.p)).collect())
    }

    pub fn scale(&self, k: u32) -> Poly {
        let k = k % self.p;
        Poly::from_raw(self.p, self.c.iter().map(|&a| mul_mod(a, k, self.p)).collect())
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero(self.p);
        }
        let p = self.p as u64;
        let mut acc = vec![0u64; self.c.len() + o.c.len() - 1];
        // p < 100, so each product is below 10^4 and u64 sums cannot overflow.
        for (i, &a) in self.c.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in o.c.iter().enumerate() {
                acc[i + j] += a as u64 * b as u64;
            }
        }
        Poly::from_raw(self.p, acc.into_iter().map(|v| (v % p) as u32).collect())
    }

    pub fn pow(&self, mut e: u64) -> Poly {
        let mut base = self.clone();
        let mut r = Poly::one(self.p);
        while e > 0 {
            if e & 1 == 1 {
                r = r.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        r
    }

    /// Quotient and remainder; panics on a zero divisor.
    pub fn div_rem(&self, d: &Poly) -> (Poly, Poly) {
        assert!(!d.is_zero(), "polynomial division by zero");
        let p = self.p;
        if self.c.len() < d.c.len() {
            return (Poly::zero(p), self.clone());
        }
        let inv = inv_mod(d.lead(), p);
        let dn = d.c.len() - 1;
        let mut r = self.c.clone();
        let mut q = vec![0u32; self.c.len() - dn];
        for k in (0..q.len()).rev() {
            let top = r[k + dn];
            if top == 0 {
                continue;
            }
            let f = mul_mod(top, inv, p);
            q[k] = f;
            for (i, &di) in d.c.iter().enumerate() {
                r[k + i] = sub_mod(r[k + i], mul_mod(f, di, p), p);
            }
        }
        r.truncate(dn);
        (Poly::from_raw(p, q), Poly::from_raw(p, r))
    }

    pub fn rem(&self, d: &Poly) -> Poly {
        self.div_rem(d).1
    }

    /// Exact division; panics if the remainder is nonzero.
    pub fn div_exact(&self, d: &Poly) -> Poly {
        let (q, r) = self.div_rem(d);
        assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(inv_mod(self.lead(), self.p))
    }

    /// Monic gcd (zero if both inputs are zero).
    pub fn gcd(&self, o: &Poly) -> Poly {
        let mut a = self.clone();
        let mut b = o.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> Poly {
        let p = self.p;
        let c = self
            .c
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &a)| mul_mod(a, (i as u32) % p, p))
            .collect();
        Poly::from_raw(p, c)
    }

    pub fn eval(&self, x: u32) -> u32 {
        self.c.iter().rev().fold(0, |acc, &a| add_mod(mul_mod(acc, x, self.p), a, self.p))
    }

    pub fn mul_mod(&self, o: &Poly, m: &Poly) -> Poly {
        self.mul(o).rem(m)
    }

    pub fn pow_mod(&self, mut e: u64, m: &Poly) -> Poly {
        let mut base = self.rem(m);
        let mut r = Poly::one(self.p).rem(m);
        while e > 0 {
            if e & 1 == 1 {
                r = r.mul_mod(&base, m);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_mod(&base, m);
            }
        }
        r
    }

    /// Substitutes x -> x^k.
    pub fn inflate(&self, k: usize) -> Poly {
        if self.is_zero() || k == 1 {
            return self.clone();
        }
        let mut c = vec![0; (self.c.len() - 1) * k + 1];
        for (i, &a) in self.c.iter().enumerate() {
            c[i * k] = a;
        }
        Poly::from_raw(self.p, c)
    }

    /// Inverse of `inflate`, if every exponent is divisible by k.
    pub fn deflate(&self, k: usize) -> Option<Poly> {
        if self.c.iter().enumerate().any(|(i, &a)| a != 0 && i % k != 0) {
            return None;
        }
        Some(Poly::from_raw(self.p, self.c.iter().step_by(k).copied().collect()))
    }

    /// Order of vanishing at 0; `None` for the zero polynomial.
    pub fn trailing_zeros(&self) -> Option<usize> {
        self.c.iter().position(|&a| a != 0)
    }

    pub fn to_string_var(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (i, &a) in self.c.iter().enumerate().rev() {
            if a == 0 {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            parts.push(match (a, i) {
                (_, 0) => a.to_string(),
                (1, _) => mono,
                _ => format!("{a}*{mono}"),
            });
        }
        parts.join(" + ")
    }
}

/// Degree first, then coefficients from the top down.
impl Ord for Poly {
    fn cmp(&self, o: &Self) -> Ordering {
        self.c
            .len()
            .cmp(&o.c.len())
            .then_with(|| self.c.iter().rev().cmp(o.c.iter().rev()))
    }
}

impl PartialOrd for Poly {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn div_rem_reconstructs() {
        let a = Poly::from_coeffs(5, &[1, 2, 3, 4, 1]);
        let b = Poly::from_coeffs(5, &[2, 0, 3]);
        let (q, r) = a.div_rem(&b);
        assert_eq!(q.mul(&b).add(&r), a);
        assert!(r.degree().unwrap_or(0) < 2);
    }

    #[test]
    fn gcd_is_monic() {
        let p = 3;
        let a = Poly::from_coeffs(p, &[-1, 0, 1]);
        let b = Poly::from_coeffs(p, &[-1, 1]).scale(2);
        assert_eq!(a.gcd(&b), Poly::from_coeffs(p, &[-1, 1]));
    }

    #[test]
    fn display() {
        let a = Poly::from_coeffs(5, &[1, 0, 3, 1]);
        assert_eq!(a.to_string_var("x"), "x^3 + 3*x^2 + 1");
        assert_eq!(Poly::zero(5).to_string_var("x"), "0");
    }

    #[test]
    fn inflate_deflate() {
        let a = Poly::from_coeffs(2, &[1, 1, 1]);
        let b = a.inflate(4);
        assert_eq!(b.degree(), Some(8));
        assert_eq!(b.deflate(4), Some(a.clone()));
        assert_eq!(a.deflate(2), None);
    }
}
