//! Prime fields GF(p) for 2 <= p <= 97.

use crate::error::{Error, Result};
use std::fmt;

pub const MAX_PRIME: u32 = 97;

pub fn is_prime(p: u32) -> bool {
    p >= 2 && (2..p).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

/// Validated modulus.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    pub fn new(p: u32) -> Result<Self> {
        if !is_prime(p) || p > MAX_PRIME {
            return Err(Error::UnsupportedPrime(p));
        }
        Ok(PrimeField { p })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn elem(&self, v: i64) -> PrimeFieldElement {
        PrimeFieldElement { p: self.p, value: reduce(v, self.p) }
    }

    /// Smallest generator of GF(p)^×.
    pub fn primitive_root(&self) -> u32 {
        primitive_root(self.p)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrimeFieldElement {
    p: u32,
    value: u32,
}

impl PrimeFieldElement {
    pub fn value(&self) -> u32 {
        self.value
    }
    pub fn p(&self) -> u32 {
        self.p
    }
    pub fn is_zero(&self) -> bool {
        self.value == 0
    }
    pub fn add(self, o: Self) -> Self {
        self.with(add_mod(self.value, o.value, self.p))
    }
    pub fn sub(self, o: Self) -> Self {
        self.with(sub_mod(self.value, o.value, self.p))
    }
    pub fn mul(self, o: Self) -> Self {
        self.with(mul_mod(self.value, o.value, self.p))
    }
    pub fn neg(self) -> Self {
        self.with(sub_mod(0, self.value, self.p))
    }
    pub fn inv(self) -> Result<Self> {
        if self.value == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(self.with(inv_mod(self.value, self.p)))
    }
    pub fn pow(self, e: u64) -> Self {
        self.with(pow_mod(self.value, e, self.p))
    }
    fn with(self, value: u32) -> Self {
        PrimeFieldElement { p: self.p, value }
    }
}

impl fmt::Display for PrimeFieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

#[inline]
pub fn reduce(v: i64, p: u32) -> u32 {
    v.rem_euclid(p as i64) as u32
}

#[inline]
pub fn add_mod(a: u32, b: u32, p: u32) -> u32 {
    let s = a + b;
    if s >= p {
        s - p
    } else {
        s
    }
}

#[inline]
pub fn sub_mod(a: u32, b: u32, p: u32) -> u32 {
    if a >= b {
        a - b
    } else {
        a + p - b
    }
}

#[inline]
pub fn mul_mod(a: u32, b: u32, p: u32) -> u32 {
    (a * b) % p
}

pub fn pow_mod(mut a: u32, mut e: u64, p: u32) -> u32 {
    let mut r = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    r
}

/// Inverse of a nonzero residue; callers guarantee `a != 0 mod p`.
pub fn inv_mod(a: u32, p: u32) -> u32 {
    debug_assert!(a % p != 0);
    pow_mod(a, (p - 2) as u64, p)
}

pub fn primitive_root(p: u32) -> u32 {
    if p == 2 {
        return 1;
    }
    let n = p - 1;
    let primes: Vec<u32> = (2..=n).filter(|&d| n % d == 0 && is_prime(d)).collect();
    (2..p)
        .find(|&g| primes.iter().all(|&q| pow_mod(g, (n / q) as u64, p) != 1))
        .expect("GF(p)^x is cyclic")
}

/// Exponent k with g^k = a for the primitive root g of `primitive_root`.
pub fn discrete_log(a: u32, p: u32) -> u32 {
    assert!(a % p != 0, "discrete log of zero");
    let g = primitive_root(p);
    let mut x = 1;
    for k in 0..p - 1 {
        if x == a % p {
            return k;
        }
        x = mul_mod(x, g, p);
    }
    unreachable!("primitive root generates GF(p)^x")
}
