//! Exact integer and rational linear algebra on small dense matrices.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::Rational;

pub type IntMatrix = Vec<Vec<BigInt>>;

/// Fraction-free (Bareiss) determinant with row pivoting.
pub fn determinant(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a: IntMatrix = m.to_vec();
    let mut sign = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(swap) = (k + 1..n).find(|&r| !a[r][k].is_zero()) else {
                return BigInt::zero();
            };
            a.swap(k, swap);
            sign = !sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if sign {
        -d
    } else {
        d
    }
}

/// Leading principal minors `det(M[..1,..1]), .., det(M)`.
pub fn leading_minors(m: &[Vec<BigInt>]) -> Vec<BigInt> {
    (1..=m.len())
        .map(|k| {
            let sub: IntMatrix = m[..k].iter().map(|row| row[..k].to_vec()).collect();
            determinant(&sub)
        })
        .collect()
}

/// Sylvester's criterion: minors alternate in sign starting negative.
pub fn is_negative_definite(m: &[Vec<BigInt>]) -> bool {
    leading_minors(m).iter().enumerate().all(|(k, d)| {
        if k % 2 == 0 {
            d.is_negative()
        } else {
            d.is_positive()
        }
    })
}

/// Solve `M x = rhs` over the rationals by Gauss-Jordan elimination.
pub fn solve(m: &[Vec<BigInt>], rhs: &[BigInt]) -> Result<Vec<Rational>> {
    let n = m.len();
    if rhs.len() != n || m.iter().any(|row| row.len() != n) {
        return Err(Error::Internal("linear system has inconsistent shape".into()));
    }
    let mut a: Vec<Vec<Rational>> = m
        .iter()
        .zip(rhs)
        .map(|(row, r)| {
            row.iter()
                .chain(std::iter::once(r))
                .map(|v| Rational::from_integer(v.clone()))
                .collect()
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n)
            .find(|&r| !a[r][col].is_zero())
            .ok_or(Error::SingularMatrix)?;
        a.swap(col, pivot);
        let inv = a[col][col].recip();
        for v in a[col][col..].iter_mut() {
            *v *= &inv;
        }
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let factor = a[r][col].clone();
            for c in col..=n {
                let delta = &factor * &a[col][c];
                a[r][c] -= delta;
            }
        }
    }
    Ok(a.into_iter().map(|row| row[n].clone()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat(rows: &[&[i64]]) -> IntMatrix {
        rows.iter()
            .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
            .collect()
    }

    /// Laplace expansion along the first row.
    fn det_cofactor(m: &IntMatrix) -> BigInt {
        let n = m.len();
        if n == 0 {
            return BigInt::one();
        }
        let mut total = BigInt::zero();
        for c in 0..n {
            let minor: IntMatrix = m[1..]
                .iter()
                .map(|row| row.iter().enumerate().filter(|(j, _)| *j != c).map(|(_, v)| v.clone()).collect())
                .collect();
            let term = &m[0][c] * det_cofactor(&minor);
            if c % 2 == 0 {
                total += term;
            } else {
                total -= term;
            }
        }
        total
    }

    #[test]
    fn determinant_examples() {
        assert_eq!(determinant(&mat(&[&[-2, 1], &[1, -1]])), BigInt::from(1));
        let m = mat(&[&[-2, 1, 0, 0], &[1, -2, 0, 1], &[0, 0, -4, 2], &[0, 1, 2, -2]]);
        assert_eq!(determinant(&m), BigInt::from(4));
        // zero leading pivot forces a swap
        let m = mat(&[&[0, 1, 2], &[1, 0, 3], &[4, -3, 8]]);
        assert_eq!(determinant(&m), det_cofactor(&m));
        assert_eq!(determinant(&mat(&[&[1, 2], &[2, 4]])), BigInt::zero());
    }

    #[test]
    fn determinant_matches_cofactor() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand::rngs::StdRng::seed_from_u64(7);
        for _ in 0..200 {
            let n = rng.gen_range(1..=6);
            let m: IntMatrix = (0..n)
                .map(|_| (0..n).map(|_| BigInt::from(rng.gen_range(-3..=3))).collect())
                .collect();
            assert_eq!(determinant(&m), det_cofactor(&m));
        }
    }

    #[test]
    fn definiteness() {
        assert!(is_negative_definite(&mat(&[&[-2, 1], &[1, -1]])));
        assert!(!is_negative_definite(&mat(&[&[-2, 2], &[2, -2]])));
        assert!(!is_negative_definite(&mat(&[&[1]])));
    }

    #[test]
    fn solve_small() {
        let m = mat(&[&[-2, 1], &[1, -1]]);
        let rhs = vec![BigInt::from(0), BigInt::from(-1)];
        let x = solve(&m, &rhs).unwrap();
        assert_eq!(x, vec![Rational::from_integer(1.into()), Rational::from_integer(2.into())]);

        let m = mat(&[&[0, 3], &[2, 1]]);
        let rhs = vec![BigInt::from(1), BigInt::from(1)];
        let x = solve(&m, &rhs).unwrap();
        assert_eq!(x[0], Rational::new(1.into(), 3.into()));
        assert_eq!(x[1], Rational::new(1.into(), 3.into()));

        assert_eq!(solve(&mat(&[&[1, 2], &[2, 4]]), &rhs), Err(Error::SingularMatrix));
    }
}
