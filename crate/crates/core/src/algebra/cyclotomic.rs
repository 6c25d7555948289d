//! Z[ζ_q] for q = p^m in the power basis 1, ζ, ..., ζ^(φ(q)-1).

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::ser::{Serialize, SerializeSeq, Serializer};
use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CyclotomicInteger {
    p: u32,
    m: u32,
    c: Vec<BigInt>,
}

impl CyclotomicInteger {
    pub fn zero(p: u32, m: u32) -> Self {
        let n = phi(p, m);
        CyclotomicInteger { p, m, c: vec![BigInt::zero(); n] }
    }

    pub fn from_int(p: u32, m: u32, v: impl Into<BigInt>) -> Self {
        let mut z = Self::zero(p, m);
        z.c[0] = v.into();
        z
    }

    pub fn one(p: u32, m: u32) -> Self {
        Self::from_int(p, m, 1)
    }

    /// ζ_q^k.
    pub fn zeta_power(p: u32, m: u32, k: i64) -> Self {
        let q = p.pow(m) as i64;
        let mut raw = vec![BigInt::zero(); q as usize];
        raw[k.rem_euclid(q) as usize] = BigInt::one();
        Self::from_cyclic(p, m, raw)
    }

    /// Reduce a vector indexed by exponents mod q.
    fn from_cyclic(p: u32, m: u32, mut raw: Vec<BigInt>) -> Self {
        let n = phi(p, m);
        if m == 0 {
            let s = raw.into_iter().sum();
            return CyclotomicInteger { p, m, c: vec![s] };
        }
        let step = p.pow(m - 1) as usize;
        for k in (n..raw.len()).rev() {
            if raw[k].is_zero() {
                continue;
            }
            let top = std::mem::take(&mut raw[k]);
            // ζ^n = -(1 + ζ^step + ... + ζ^((p-2)step))
            for i in 0..(p as usize - 1) {
                let t = k - n + i * step;
                raw[t] -= &top;
            }
        }
        raw.truncate(n);
        CyclotomicInteger { p, m, c: raw }
    }

    pub fn p(&self) -> u32 {
        self.p
    }
    pub fn m(&self) -> u32 {
        self.m
    }
    pub fn order(&self) -> u32 {
        self.p.pow(self.m)
    }
    pub fn coeffs(&self) -> &[BigInt] {
        &self.c
    }
    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|a| a.is_zero())
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!((self.p, self.m), (o.p, o.m), "cyclotomic order mismatch");
        CyclotomicInteger { p: self.p, m: self.m, c: self.c.iter().zip(&o.c).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        CyclotomicInteger { p: self.p, m: self.m, c: self.c.iter().map(|a| -a).collect() }
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        CyclotomicInteger { p: self.p, m: self.m, c: self.c.iter().map(|a| a * k).collect() }
    }

    pub fn scale_i64(&self, k: i64) -> Self {
        self.scale(&BigInt::from(k))
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!((self.p, self.m), (o.p, o.m), "cyclotomic order mismatch");
        let q = self.order() as usize;
        let mut raw = vec![BigInt::zero(); q.max(1)];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                if !b.is_zero() {
                    raw[(i + j) % q.max(1)] += a * b;
                }
            }
        }
        Self::from_cyclic(self.p, self.m, raw)
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(self.p, self.m), |acc, _| acc.mul(self))
    }

    /// The integer value if this lies in Z.
    pub fn as_integer(&self) -> Option<BigInt> {
        self.c[1..].iter().all(|a| a.is_zero()).then(|| self.c[0].clone())
    }

    pub fn as_i64(&self) -> Option<i64> {
        self.as_integer().and_then(|v| v.to_i64())
    }

    /// Exact division by a rational integer.
    pub fn div_exact(&self, k: &BigInt) -> Option<Self> {
        if k.is_zero() {
            return None;
        }
        let c: Option<Vec<BigInt>> =
            self.c.iter().map(|a| (a % k).is_zero().then(|| a / k)).collect();
        Some(CyclotomicInteger { p: self.p, m: self.m, c: c? })
    }

    /// Coefficientwise reduction into [0, k).
    pub fn reduce_mod(&self, k: u32) -> Self {
        let k = BigInt::from(k);
        let c = self
            .c
            .iter()
            .map(|a| {
                let r = a % &k;
                if r.is_negative() {
                    r + &k
                } else {
                    r
                }
            })
            .collect();
        CyclotomicInteger { p: self.p, m: self.m, c }
    }

    /// Image in Z[ζ_(p^m2)] for m2 >= m under ζ_(p^m) = ζ_(p^m2)^(p^(m2-m)).
    pub fn embed(&self, m2: u32) -> Self {
        assert!(m2 >= self.m);
        let q2 = self.p.pow(m2) as usize;
        let step = self.p.pow(m2 - self.m) as usize;
        let mut raw = vec![BigInt::zero(); q2];
        for (i, a) in self.c.iter().enumerate() {
            raw[(i * step) % q2] += a;
        }
        Self::from_cyclic(self.p, m2, raw)
    }
}

pub fn phi(p: u32, m: u32) -> usize {
    if m == 0 {
        1
    } else {
        ((p - 1) * p.pow(m - 1)) as usize
    }
}

impl fmt::Display for CyclotomicInteger {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => "z".into(),
                _ => format!("z^{i}"),
            };
            parts.push(match (i, a.to_i64()) {
                (0, _) => a.to_string(),
                (_, Some(1)) => mono,
                (_, Some(-1)) => format!("-{mono}"),
                _ => format!("{a}*{mono}"),
            });
        }
        if parts.is_empty() {
            return write!(f, "0");
        }
        write!(f, "{}", parts.join(" + ").replace("+ -", "- "))
    }
}

impl Serialize for CyclotomicInteger {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.c.len()))?;
        for a in &self.c {
            match a.to_i64() {
                Some(v) => seq.serialize_element(&v)?,
                None => seq.serialize_element(&a.to_string())?,
            }
        }
        seq.end()
    }
}
