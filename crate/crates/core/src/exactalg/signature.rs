use num_traits::{Signed, Zero};

use super::{IntMatrix, MatrixError, Rational};

/// Signature of a symmetric integer matrix: the number of positive minus
/// the number of negative eigenvalues, computed exactly by rational
/// congruence diagonalization with symmetric pivoting.
///
/// Singular matrices are fine (zero eigenvalues contribute nothing). When
/// every remaining diagonal entry vanishes but some off-diagonal entry is
/// nonzero, that hyperbolic pair contributes zero and is split off.
pub fn signature(m: &IntMatrix) -> Result<i64, MatrixError> {
    if !m.is_symmetric() {
        return Err(MatrixError::NotSymmetric);
    }
    let n = m.rows();
    let mut a: Vec<Vec<Rational>> = (0..n)
        .map(|i| (0..n).map(|j| Rational::from(m[(i, j)].clone())).collect())
        .collect();
    let mut live: Vec<usize> = (0..n).collect();
    let mut sig: i64 = 0;

    while !live.is_empty() {
        if let Some(&p) = live.iter().find(|&&i| !a[i][i].is_zero()) {
            sig += if a[p][p].is_positive() { 1 } else { -1 };
            let pivot = a[p][p].clone();
            live.retain(|&i| i != p);
            // Symmetric Schur complement with respect to the 1x1 pivot.
            for (ki, &i) in live.iter().enumerate() {
                for &j in &live[ki..] {
                    let delta = &a[i][p] * &a[j][p] / &pivot;
                    let val = &a[i][j] - &delta;
                    a[i][j] = val.clone();
                    a[j][i] = val;
                }
            }
        } else if let Some((p, q)) = find_offdiag(&a, &live) {
            // Hyperbolic pair [[0, m], [m, 0]]: signature contribution 0.
            let coupling = a[p][q].clone();
            live.retain(|&i| i != p && i != q);
            for (ki, &i) in live.iter().enumerate() {
                for &j in &live[ki..] {
                    let delta = (&a[i][p] * &a[j][q] + &a[i][q] * &a[j][p]) / &coupling;
                    let val = &a[i][j] - &delta;
                    a[i][j] = val.clone();
                    a[j][i] = val;
                }
            }
        } else {
            break; // remaining block is zero
        }
    }
    Ok(sig)
}

fn find_offdiag(a: &[Vec<Rational>], live: &[usize]) -> Option<(usize, usize)> {
    for (ki, &i) in live.iter().enumerate() {
        for &j in &live[ki + 1..] {
            if !a[i][j].is_zero() {
                return Some((i, j));
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn negative_definite_one_by_one() {
        let m = IntMatrix::from_rows(&[vec![-1]]);
        assert_eq!(signature(&m).unwrap(), -1);
    }

    #[test]
    fn xi_minus_linking_matrix() {
        let m = IntMatrix::from_rows(&[vec![-5, -2], vec![-2, -1]]);
        assert_eq!(signature(&m).unwrap(), -2);
    }

    #[test]
    fn cancellation_matrix_has_signature_zero() {
        // M_tb for one push-off pair at tb = -2.
        let m = IntMatrix::from_rows(&[vec![-1, -2], vec![-2, -3]]);
        assert_eq!(signature(&m).unwrap(), 0);
    }

    #[test]
    fn hyperbolic_block() {
        let m = IntMatrix::from_rows(&[vec![0, 3], vec![3, 0]]);
        assert_eq!(signature(&m).unwrap(), 0);
    }

    #[test]
    fn singular_matrix() {
        let m = IntMatrix::from_rows(&[vec![0]]);
        assert_eq!(signature(&m).unwrap(), 0);
        let m = IntMatrix::from_rows(&[vec![0, 2], vec![2, 3]]);
        assert_eq!(signature(&m).unwrap(), 0);
    }

    #[test]
    fn non_symmetric_rejected() {
        let m = IntMatrix::from_rows(&[vec![0, 1], vec![2, 0]]);
        assert_eq!(signature(&m), Err(MatrixError::NotSymmetric));
    }

    #[test]
    fn mixed_signature() {
        let m = IntMatrix::from_rows(&[vec![2, 0, 0], vec![0, -3, 0], vec![0, 0, 5]]);
        assert_eq!(signature(&m).unwrap(), 1);
    }
}
