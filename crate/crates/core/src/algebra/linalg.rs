//! Gaussian elimination over a rational function field.

use super::ratfun::RationalFunction;

pub type Matrix = Vec<Vec<RationalFunction>>;

/// Inverse of a square matrix, `None` if singular.
pub fn inverse(m: &Matrix) -> Option<Matrix> {
    let n = m.len();
    if n == 0 {
        return Some(Vec::new());
    }
    let p = m[0][0].p();
    let var = m[0][0].var();
    let mut a: Matrix = m.clone();
    let mut inv: Matrix = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { RationalFunction::one(p, var) } else { RationalFunction::zero(p, var) })
                .collect()
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, piv);
        inv.swap(col, piv);
        let pinv = a[col][col].inv().ok()?;
        for j in 0..n {
            a[col][j] = &a[col][j] * &pinv;
            inv[col][j] = &inv[col][j] * &pinv;
        }
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone();
            for j in 0..n {
                a[r][j] = &a[r][j] - &(&f * &a[col][j]);
                inv[r][j] = &inv[r][j] - &(&f * &inv[col][j]);
            }
        }
    }
    Some(inv)
}

pub fn rank(m: &Matrix) -> usize {
    let mut a = m.clone();
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut r = 0;
    for col in 0..cols {
        let Some(piv) = (r..rows).find(|&i| !a[i][col].is_zero()) else { continue };
        a.swap(r, piv);
        let pinv = a[r][col].inv().expect("nonzero pivot");
        for i in r + 1..rows {
            if a[i][col].is_zero() {
                continue;
            }
            let f = &a[i][col] * &pinv;
            for j in col..cols {
                a[i][j] = &a[i][j] - &(&f * &a[r][j]);
            }
        }
        r += 1;
    }
    r
}

pub fn mat_vec(m: &Matrix, v: &[RationalFunction]) -> Vec<RationalFunction> {
    m.iter()
        .map(|row| {
            row.iter()
                .zip(v)
                .fold(RationalFunction::zero(v[0].p(), v[0].var()), |acc, (a, b)| &acc + &(a * b))
        })
        .collect()
}
