//! Dense two-phase simplex (Bland's rule) for the small LPs behind seed-point
//! computation.

use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq)]
pub enum LpOutcome<T> {
    Optimal {
        x: Vec<T>,
        value: T,
    },
    /// Rows of `A x <= b` still violated at the phase-one optimum.
    Infeasible {
        rows: Vec<usize>,
    },
    Unbounded,
}

struct Tableau<T> {
    rows: Vec<Vec<T>>,
    basis: Vec<usize>,
    width: usize,
    tol: T,
}

impl<T: Scalar> Tableau<T> {
    fn rhs(&self, r: usize) -> T {
        self.rows[r][self.width]
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let p = self.rows[r][c];
        self.rows[r].iter_mut().for_each(|e| *e = *e / p);
        let pivot_row = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r {
                continue;
            }
            let f = row[c];
            if f != T::zero() {
                for (e, &pv) in row.iter_mut().zip(&pivot_row) {
                    *e = *e - f * pv;
                }
            }
        }
        self.basis[r] = c;
    }

    /// Maximizes `obj · x` over columns `< allowed`; `false` when unbounded.
    fn optimize(&mut self, obj: &[T], allowed: usize) -> bool {
        for _ in 0..100_000 {
            let entering = (0..allowed).find(|&j| {
                if self.basis.contains(&j) {
                    return false;
                }
                let reduced = self
                    .basis
                    .iter()
                    .enumerate()
                    .fold(obj[j], |acc, (r, &b)| acc - obj[b] * self.rows[r][j]);
                reduced > self.tol
            });
            let Some(c) = entering else {
                return true;
            };
            let mut leave: Option<(usize, T)> = None;
            for r in 0..self.rows.len() {
                let a = self.rows[r][c];
                if a > self.tol {
                    let ratio = self.rhs(r) / a;
                    leave = match leave {
                        None => Some((r, ratio)),
                        Some((lr, lratio)) => {
                            if ratio < lratio - self.tol
                                || (ratio <= lratio + self.tol && self.basis[r] < self.basis[lr])
                            {
                                Some((r, ratio))
                            } else {
                                Some((lr, lratio))
                            }
                        }
                    };
                }
            }
            match leave {
                Some((r, _)) => self.pivot(r, c),
                None => return false,
            }
        }
        panic!("simplex iteration limit reached");
    }

    fn objective(&self, obj: &[T]) -> T {
        self.basis
            .iter()
            .enumerate()
            .fold(T::zero(), |acc, (r, &b)| acc + obj[b] * self.rhs(r))
    }
}

/// Maximizes `objective · x` subject to `a x <= b`, `x >= 0`.
pub fn maximize<T: Scalar>(objective: &[T], a: &[Vec<T>], b: &[T]) -> LpOutcome<T> {
    let nvars = objective.len();
    let m = a.len();
    let artificial_rows: Vec<usize> = (0..m).filter(|&i| b[i] < T::zero()).collect();
    let n_art = artificial_rows.len();
    let width = nvars + m + n_art;
    // Scaled by the coefficients only: a large right-hand side (such as a cap row)
    // must not swamp small margins elsewhere.
    let scale = a.iter().flatten().fold(T::one(), |acc, v| acc.max(v.abs()));
    let tol = T::epsilon() * T::lit(1e4) * scale;

    let mut rows = Vec::with_capacity(m);
    let mut basis = Vec::with_capacity(m);
    for i in 0..m {
        let mut row = vec![T::zero(); width + 1];
        let sign = if b[i] < T::zero() {
            -T::one()
        } else {
            T::one()
        };
        for (j, &v) in a[i].iter().enumerate() {
            row[j] = sign * v;
        }
        row[nvars + i] = sign;
        row[width] = sign * b[i];
        match artificial_rows.iter().position(|&r| r == i) {
            Some(k) => {
                row[nvars + m + k] = T::one();
                basis.push(nvars + m + k);
            }
            None => basis.push(nvars + i),
        }
        rows.push(row);
    }
    let mut tab = Tableau {
        rows,
        basis,
        width,
        tol,
    };

    if n_art > 0 {
        let mut phase_one = vec![T::zero(); width];
        phase_one[nvars + m..]
            .iter_mut()
            .for_each(|e| *e = -T::one());
        tab.optimize(&phase_one, width);
        if tab.objective(&phase_one) < -tol {
            let rows = (0..m)
                .filter(|&r| tab.basis[r] >= nvars + m && tab.rhs(r) > tol)
                .map(|r| artificial_rows[tab.basis[r] - nvars - m])
                .collect();
            return LpOutcome::Infeasible { rows };
        }
        for r in 0..m {
            if tab.basis[r] >= nvars + m {
                if let Some(c) = (0..nvars + m).find(|&c| tab.rows[r][c].abs() > tol) {
                    tab.pivot(r, c);
                }
            }
        }
    }

    let mut full = vec![T::zero(); width];
    full[..nvars].copy_from_slice(objective);
    if !tab.optimize(&full, nvars + m) {
        return LpOutcome::Unbounded;
    }
    let mut x = vec![T::zero(); nvars];
    for (r, &bcol) in tab.basis.iter().enumerate() {
        if bcol < nvars {
            x[bcol] = tab.rhs(r);
        }
    }
    let value = tab.objective(&full);
    LpOutcome::Optimal { x, value }
}
