//! Brute-force expansion of additive polynomials attached to F_p-independent points.

use crate::algebra::{EPoly, RationalFunction, Var};
use crate::error::{Error, Result};

/// All tuples of F_p^r in lexicographic order.
pub(crate) fn tuples(p: u32, r: usize) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new()];
    for _ in 0..r {
        out = out
            .into_iter()
            .flat_map(|t| {
                (0..p).map(move |j| {
                    let mut t = t.clone();
                    t.push(j);
                    t
                })
            })
            .collect();
    }
    out
}

fn combination(p: u32, var: Var, coeffs: &[u32], points: &[RationalFunction]) -> RationalFunction {
    coeffs
        .iter()
        .zip(points)
        .fold(RationalFunction::zero(p, var), |acc, (&j, x)| &acc + &x.scale(j))
}

/// ∏ over (j_1, …, j_r) ∈ F_p^r of (T + Σ j_i x_i).
pub fn additive_poly_oracle(p: u32, var: Var, points: &[RationalFunction]) -> Result<EPoly> {
    let r = points.len();
    let mut f = EPoly::constant(RationalFunction::one(p, var));
    let mut lambda0 = RationalFunction::one(p, var);
    for t in tuples(p, r) {
        let s = combination(p, var, &t, points);
        if t.iter().any(|&j| j != 0) {
            if s.is_zero() {
                return Err(Error::SpanConditionViolated);
            }
            lambda0 = &lambda0 * &s;
        }
        f = f.mul(&EPoly::linear(s));
    }
    if !f.is_additive() {
        return Err(Error::AdditivityViolation(format!("{f} has a non-additive monomial")));
    }
    if f.coeff(1) != lambda0 {
        return Err(Error::AdditivityViolation(format!("linear coefficient of {f} is not {lambda0}")));
    }
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_one_and_zero() {
        for p in [2u32, 3, 5] {
            let v = Var::U(1);
            let x = RationalFunction::gen(p, v);
            let f = additive_poly_oracle(p, v, std::slice::from_ref(&x)).unwrap();
            let expect = EPoly::monomial(p, v, p as usize)
                .sub(&EPoly::monomial(p, v, 1).scale(&x.pow(p as i64 - 1).unwrap()));
            assert_eq!(f, expect);
            assert_eq!(additive_poly_oracle(p, v, &[]).unwrap(), EPoly::monomial(p, v, 1));
        }
    }

    #[test]
    fn rank_two_char_two() {
        let p = 2;
        let v = Var::U(1);
        let one = RationalFunction::one(p, v);
        let u = RationalFunction::gen(p, v);
        let f = additive_poly_oracle(p, v, &[one.clone(), u.clone()]).unwrap();
        assert_eq!(f.degree(), Some(4));
        assert_eq!(f.coeff(1), &(&one * &u) * &(&one + &u));
        assert!(f.coeff(3).is_zero());
    }

    #[test]
    fn dependent_points() {
        let p = 3;
        let v = Var::U(1);
        let u = RationalFunction::gen(p, v);
        assert_eq!(additive_poly_oracle(p, v, &[u.clone(), u.scale(2)]), Err(Error::SpanConditionViolated));
    }
}
