//! Factorization over GF(p): square-free split, distinct-degree split, then
//! equal-degree splitting (root enumeration for linear factors,
//! Cantor-Zassenhaus with a seeded ChaCha stream otherwise).

use super::poly::Poly;
use crate::error::{Error, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const DEFAULT_SEED: u64 = 0x5eed_0001;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub unit: u32,
    /// Monic irreducible factors, sorted, with multiplicities.
    pub factors: Vec<(Poly, u32)>,
}

impl Factorization {
    pub fn reassemble(&self, p: u32) -> Poly {
        self.factors
            .iter()
            .fold(Poly::constant(p, self.unit as i64), |acc, (f, e)| acc.mul(&f.pow(*e as u64)))
    }
}

pub fn poly_factor(f: &Poly) -> Result<Vec<(Poly, u32)>> {
    Ok(factor_with_seed(f, DEFAULT_SEED)?.factors)
}

pub fn factor_with_seed(f: &Poly, seed: u64) -> Result<Factorization> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out: Vec<(Poly, u32)> = Vec::new();
    for (sq, mult) in squarefree(&f.monic()) {
        for (g, d) in distinct_degree(&sq) {
            for irr in equal_degree(&g, d, &mut rng) {
                out.push((irr, mult));
            }
        }
    }
    out.sort();
    let mut merged: Vec<(Poly, u32)> = Vec::new();
    for (g, e) in out {
        match merged.last_mut() {
            Some((h, m)) if *h == g => *m += e,
            _ => merged.push((g, e)),
        }
    }
    Ok(Factorization { unit: f.lead(), factors: merged })
}

pub fn is_irreducible(f: &Poly) -> bool {
    match poly_factor(f) {
        Ok(fs) => fs.len() == 1 && fs[0].1 == 1 && f.degree().unwrap_or(0) >= 1,
        Err(_) => false,
    }
}

/// All monic divisors of a nonzero polynomial.
pub fn monic_divisors(f: &Poly) -> Result<Vec<Poly>> {
    let p = f.p();
    let mut divs = vec![Poly::one(p)];
    for (g, e) in poly_factor(f)? {
        let mut next = Vec::with_capacity(divs.len() * (e as usize + 1));
        for d in &divs {
            let mut acc = d.clone();
            next.push(acc.clone());
            for _ in 0..e {
                acc = acc.mul(&g);
                next.push(acc.clone());
            }
        }
        divs = next;
    }
    divs.sort();
    Ok(divs)
}

/// p-th root of a polynomial whose derivative vanishes.
fn pth_root(f: &Poly) -> Poly {
    let p = f.p() as usize;
    f.deflate(p).expect("derivative zero implies exponents divisible by p")
}

fn squarefree(f: &Poly) -> Vec<(Poly, u32)> {
    let p = f.p();
    let mut res = Vec::new();
    if f.degree().unwrap_or(0) == 0 {
        return res;
    }
    let df = f.derivative();
    if df.is_zero() {
        for (g, m) in squarefree(&pth_root(f)) {
            res.push((g, m * p));
        }
        return res;
    }
    let mut c = f.gcd(&df);
    let mut w = f.div_exact(&c);
    let mut i = 1;
    while !w.is_one() {
        let y = w.gcd(&c);
        let z = w.div_exact(&y);
        if !z.is_one() {
            res.push((z, i));
        }
        i += 1;
        w = y;
        c = c.div_exact(&w);
    }
    if !c.is_one() {
        for (g, m) in squarefree(&pth_root(&c)) {
            res.push((g, m * p));
        }
    }
    res
}

/// Splits a square-free monic polynomial into products of equal-degree
/// irreducibles, returned as (product, degree).
fn distinct_degree(f: &Poly) -> Vec<(Poly, usize)> {
    let p = f.p() as u64;
    let x = Poly::x(f.p());
    let mut rest = f.clone();
    let mut h = x.clone();
    let mut out = Vec::new();
    let mut d = 1;
    while rest.degree().unwrap_or(0) >= 2 * d {
        h = h.pow_mod(p, &rest);
        let g = h.sub(&x).gcd(&rest);
        if !g.is_one() {
            rest = rest.div_exact(&g);
            h = h.rem(&rest);
            out.push((g, d));
        }
        d += 1;
    }
    if let Some(deg) = rest.degree() {
        if deg > 0 {
            out.push((rest, deg));
        }
    }
    out
}

fn equal_degree(f: &Poly, d: usize, rng: &mut ChaCha8Rng) -> Vec<Poly> {
    let n = f.degree().unwrap_or(0);
    if n == d {
        return vec![f.clone()];
    }
    if d == 1 {
        let p = f.p();
        return (0..p)
            .filter(|&a| f.eval(a) == 0)
            .map(|a| Poly::from_raw(p, vec![(p - a) % p, 1]))
            .collect();
    }
    loop {
        let g = splitting_candidate(f, d, rng);
        let g = g.gcd(f);
        let k = g.degree().unwrap_or(0);
        if k > 0 && k < n {
            let mut out = equal_degree(&g, d, rng);
            out.extend(equal_degree(&f.div_exact(&g), d, rng));
            return out;
        }
    }
}

/// For odd p: a^((p^d-1)/2) - 1; for p = 2: the trace a + a^2 + ... + a^(2^(d-1)).
fn splitting_candidate(f: &Poly, d: usize, rng: &mut ChaCha8Rng) -> Poly {
    let p = f.p();
    let n = f.degree().unwrap();
    let a = Poly::from_raw(p, (0..n).map(|_| rng.gen_range(0..p)).collect());
    if p == 2 {
        let mut acc = a.clone();
        let mut t = a;
        for _ in 1..d {
            t = t.mul_mod(&t, f);
            acc = acc.add(&t);
        }
        return acc;
    }
    // (p^d - 1)/2 = (1 + p + ... + p^(d-1)) * (p-1)/2
    let mut norm = a.clone();
    let mut frob = a;
    for _ in 1..d {
        frob = frob.pow_mod(p as u64, f);
        norm = norm.mul_mod(&frob, f);
    }
    norm.pow_mod(((p - 1) / 2) as u64, f).sub(&Poly::one(p))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn char_two_square() {
        let f = Poly::from_coeffs(2, &[1, 0, 1]);
        assert_eq!(poly_factor(&f).unwrap(), vec![(Poly::from_coeffs(2, &[1, 1]), 2)]);
    }

    #[test]
    fn linear() {
        for p in [2, 3, 97] {
            let f = Poly::x(p);
            assert_eq!(poly_factor(&f).unwrap(), vec![(f.clone(), 1)]);
        }
    }

    #[test]
    fn zero_rejected() {
        assert_eq!(poly_factor(&Poly::zero(5)), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn inseparable_power() {
        // (x^2 + 1)^3 over GF(3) has zero derivative.
        let f = Poly::from_coeffs(3, &[1, 0, 1]).pow(3);
        assert_eq!(poly_factor(&f).unwrap(), vec![(Poly::from_coeffs(3, &[1, 0, 1]), 3)]);
    }

    #[test]
    fn seed_does_not_change_result() {
        let f = Poly::from_coeffs(7, &[3, 1, 4, 1, 5, 2, 6, 1, 1]);
        let a = factor_with_seed(&f, 1).unwrap();
        let b = factor_with_seed(&f, 99).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.reassemble(7), f);
    }

    #[test]
    fn divisors_count() {
        let p = 3;
        let f = Poly::x(p).pow(2).mul(&Poly::from_coeffs(p, &[1, 1]));
        assert_eq!(monic_divisors(&f).unwrap().len(), 6);
    }
}
