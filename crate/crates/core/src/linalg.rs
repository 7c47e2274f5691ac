//! Small dense linear algebra: null-space parametrization of an equality system
//! through a column-pivoted Householder QR.

use thiserror::Error;

use crate::scalar::Scalar;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LinalgError {
    #[error("equality system is inconsistent (residual {0:e})")]
    Inconsistent(f64),
    #[error("equality row {row} has {got} columns, expected {expected}")]
    Shape {
        row: usize,
        expected: usize,
        got: usize,
    },
}

pub(crate) fn dot<T: Scalar>(a: &[T], b: &[T]) -> T {
    a.iter().zip(b).fold(T::zero(), |acc, (&x, &y)| acc + x * y)
}

pub(crate) fn norm<T: Scalar>(a: &[T]) -> T {
    dot(a, a).sqrt()
}

/// Solution set `{x0 + B y}` of `A x = b`, with `B` orthonormal.
#[derive(Debug, Clone, PartialEq)]
pub struct AffineParametrization<T> {
    /// Minimum-norm particular solution.
    pub origin: Vec<T>,
    /// Orthonormal null-space basis, one column per entry.
    pub basis: Vec<Vec<T>>,
    pub rank: usize,
}

impl<T: Scalar> AffineParametrization<T> {
    pub fn ambient_dim(&self) -> usize {
        self.origin.len()
    }

    pub fn reduced_dim(&self) -> usize {
        self.basis.len()
    }

    pub fn to_ambient(&self, y: &[T]) -> Vec<T> {
        let mut x = self.origin.clone();
        for (coef, column) in y.iter().zip(&self.basis) {
            for (xi, &bi) in x.iter_mut().zip(column) {
                *xi = *xi + *coef * bi;
            }
        }
        x
    }

    /// Coordinates of `row · (x0 + B y)` as `(row · B, row · x0)`.
    pub fn project_row(&self, row: &[T]) -> (Vec<T>, T) {
        let reduced = self.basis.iter().map(|col| dot(row, col)).collect();
        (reduced, dot(row, &self.origin))
    }
}

/// Parametrizes `{x in R^dim : rows · x = rhs}`.
///
/// Rank is decided relative to the largest row norm, so redundant equalities are
/// tolerated as long as they are consistent.
pub fn null_space<T: Scalar>(
    dim: usize,
    rows: &[Vec<T>],
    rhs: &[T],
) -> Result<AffineParametrization<T>, LinalgError> {
    for (i, r) in rows.iter().enumerate() {
        if r.len() != dim {
            return Err(LinalgError::Shape {
                row: i,
                expected: dim,
                got: r.len(),
            });
        }
    }
    let m = rows.len();
    // Work on A^T: column c is equality row c.
    let mut cols: Vec<Vec<T>> = rows.to_vec();
    let mut perm: Vec<usize> = (0..m).collect();
    let mut q: Vec<Vec<T>> = (0..dim)
        .map(|i| {
            (0..dim)
                .map(|j| if i == j { T::one() } else { T::zero() })
                .collect()
        })
        .collect();
    let scale = cols.iter().map(|c| norm(c)).fold(T::zero(), T::max);
    let tol = T::epsilon() * T::lit(1e3) * scale.max(T::one());
    let two = T::lit(2.0);

    let mut rank = 0;
    for i in 0..m.min(dim) {
        let (best, best_norm) =
            (i..m)
                .map(|c| (c, norm(&cols[c][i..])))
                .fold(
                    (i, -T::one()),
                    |acc, cur| if cur.1 > acc.1 { cur } else { acc },
                );
        if best_norm <= tol {
            break;
        }
        cols.swap(i, best);
        perm.swap(i, best);

        let x0 = cols[i][i];
        let alpha = if x0 >= T::zero() {
            -best_norm
        } else {
            best_norm
        };
        let mut v: Vec<T> = cols[i][i..].to_vec();
        v[0] = v[0] - alpha;
        let vn = norm(&v);
        if vn > T::zero() {
            v.iter_mut().for_each(|e| *e = *e / vn);
            for col in cols.iter_mut().skip(i) {
                let s = two * dot(&col[i..], &v);
                for (e, &ve) in col[i..].iter_mut().zip(&v) {
                    *e = *e - s * ve;
                }
            }
            for qrow in q.iter_mut() {
                let s = two * dot(&qrow[i..], &v);
                for (e, &ve) in qrow[i..].iter_mut().zip(&v) {
                    *e = *e - s * ve;
                }
            }
        }
        rank = i + 1;
    }

    // R11^T z = b_perm (forward substitution), x0 = Q1 z.
    let mut z = vec![T::zero(); rank];
    for c in 0..rank {
        let mut acc = rhs[perm[c]];
        for (i, &zi) in z.iter().enumerate().take(c) {
            acc = acc - cols[c][i] * zi;
        }
        z[c] = acc / cols[c][c];
    }
    let origin: Vec<T> = (0..dim)
        .map(|r| (0..rank).fold(T::zero(), |acc, c| acc + q[r][c] * z[c]))
        .collect();

    let residual = rows
        .iter()
        .zip(rhs)
        .map(|(row, &b)| (dot(row, &origin) - b).abs())
        .fold(T::zero(), T::max);
    let rhs_scale = rhs.iter().fold(T::one(), |acc, b| acc.max(b.abs()));
    if residual
        > T::lit(1e3) * T::epsilon() * rhs_scale.max(scale) * T::from_usize(dim.max(1)).unwrap()
    {
        return Err(LinalgError::Inconsistent(residual.to_f64_lossy()));
    }

    let basis = (rank..dim)
        .map(|c| (0..dim).map(|r| q[r][c]).collect())
        .collect();
    Ok(AffineParametrization {
        origin,
        basis,
        rank,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_param(dim: usize, rows: &[Vec<f64>], rhs: &[f64], expected_rank: usize) {
        let p = null_space(dim, rows, rhs).unwrap();
        assert_eq!(p.rank, expected_rank);
        assert_eq!(p.reduced_dim(), dim - expected_rank);
        for (row, &b) in rows.iter().zip(rhs) {
            assert!((dot(row, &p.origin) - b).abs() < 1e-12);
            for col in &p.basis {
                assert!(dot(row, col).abs() < 1e-12);
            }
        }
        for (i, a) in p.basis.iter().enumerate() {
            for (j, b) in p.basis.iter().enumerate() {
                let expect = if i == j { 1.0 } else { 0.0 };
                assert!((dot(a, b) - expect).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn simplex_equality() {
        check_param(3, &[vec![1.0, 1.0, 1.0]], &[1.0], 1);
        let p = null_space(3, &[vec![1.0_f64, 1.0, 1.0]], &[1.0]).unwrap();
        for x in &p.origin {
            assert!((x - 1.0 / 3.0).abs() < 1e-12);
        }
    }

    #[test]
    fn pinned_point() {
        let rows = vec![vec![1.0, 1.0], vec![1.0, -1.0]];
        check_param(2, &rows, &[1.0, 0.0], 2);
        let p = null_space(2, &rows, &[1.0, 0.0]).unwrap();
        assert!((p.origin[0] - 0.5).abs() < 1e-12 && (p.origin[1] - 0.5).abs() < 1e-12);
    }

    #[test]
    fn redundant_rows_are_tolerated() {
        let rows = vec![
            vec![1.0, 1.0, 0.0],
            vec![2.0, 2.0, 0.0],
            vec![1.0, -1.0, 0.0],
        ];
        check_param(3, &rows, &[1.0, 2.0, 0.0], 2);
    }

    #[test]
    fn inconsistent_rows_rejected() {
        let rows = vec![vec![1.0, 1.0], vec![2.0, 2.0]];
        assert!(matches!(
            null_space(2, &rows, &[1.0, 3.0]),
            Err(LinalgError::Inconsistent(_))
        ));
    }

    #[test]
    fn no_equalities_gives_full_space() {
        check_param(4, &[], &[], 0);
    }
}
