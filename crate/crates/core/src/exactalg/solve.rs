use num_traits::Zero;

use super::{Int, IntMatrix, MatrixError, Rational};

/// Solves `M x = b` exactly over the rationals.
///
/// Returns `Ok(Some(x))` with one solution when the system is consistent
/// (free variables are set to zero), `Ok(None)` when it is not, and an
/// error when `b` does not match the row count of `M`.
pub fn solve_rational(m: &IntMatrix, b: &[Int]) -> Result<Option<Vec<Rational>>, MatrixError> {
    if b.len() != m.rows() {
        return Err(MatrixError::DimensionMismatch(format!(
            "matrix has {} rows but right-hand side has {} entries",
            m.rows(),
            b.len()
        )));
    }
    let rows = m.rows();
    let cols = m.cols();
    let mut a: Vec<Vec<Rational>> = (0..rows)
        .map(|i| {
            (0..cols + 1)
                .map(|j| {
                    if j < cols {
                        Rational::from(m[(i, j)].clone())
                    } else {
                        Rational::from(b[i].clone())
                    }
                })
                .collect()
        })
        .collect();

    // Gauss-Jordan with column pivot tracking.
    let mut pivot_col_of_row = vec![None; rows];
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][c].recip();
        for j in c..cols + 1 {
            a[r][j] = &a[r][j] * &inv;
        }
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in c..cols + 1 {
                    let delta = &f * &a[r][j];
                    a[i][j] = &a[i][j] - &delta;
                }
            }
        }
        pivot_col_of_row[r] = Some(c);
        r += 1;
        if r == rows {
            break;
        }
    }

    // Inconsistent row: 0 = nonzero.
    for i in r..rows {
        if !a[i][cols].is_zero() {
            return Ok(None);
        }
    }

    let mut x = vec![Rational::zero(); cols];
    for i in 0..r {
        if let Some(c) = pivot_col_of_row[i] {
            x[c] = a[i][cols].clone();
        }
    }
    Ok(Some(x))
}
