use num_traits::{Signed, Zero};

use super::{Int, IntMatrix};

/// Smith normal form `U * M * V = D` with `U`, `V` unimodular and `D`
/// diagonal with nonnegative entries forming a divisibility chain.
#[derive(Clone, Debug)]
pub struct SmithDecomposition {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl SmithDecomposition {
    /// Diagonal entries d_1 | d_2 | ... (including trailing zeros).
    pub fn diagonal(&self) -> Vec<Int> {
        let n = self.d.rows().min(self.d.cols());
        (0..n).map(|i| self.d[(i, i)].clone()).collect()
    }
}

/// Computes the Smith normal form of an arbitrary integer matrix by
/// gcd row/column reduction with smallest-nonzero-pivot selection.
pub fn smith_normal_form(m: &IntMatrix) -> SmithDecomposition {
    let rows = m.rows();
    let cols = m.cols();
    let mut d = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);

    let mut k = 0;
    while k < rows.min(cols) {
        let Some((pi, pj)) = smallest_nonzero(&d, k) else {
            break;
        };
        d.swap_rows(k, pi);
        u.swap_rows(k, pi);
        d.swap_cols(k, pj);
        v.swap_cols(k, pj);

        loop {
            // Reduce column k by the pivot; leftover remainders mean a
            // smaller pivot appeared, so re-select and start over.
            let mut clean = true;
            for i in k + 1..rows {
                if d[(i, k)].is_zero() {
                    continue;
                }
                let q = -(&d[(i, k)] / &d[(k, k)]);
                if !q.is_zero() {
                    d.add_row_multiple(i, k, &q);
                    u.add_row_multiple(i, k, &q);
                }
                if !d[(i, k)].is_zero() {
                    clean = false;
                }
            }
            for j in k + 1..cols {
                if d[(k, j)].is_zero() {
                    continue;
                }
                let q = -(&d[(k, j)] / &d[(k, k)]);
                if !q.is_zero() {
                    d.add_col_multiple(j, k, &q);
                    v.add_col_multiple(j, k, &q);
                }
                if !d[(k, j)].is_zero() {
                    clean = false;
                }
            }
            if !clean {
                let (pi, pj) = smallest_nonzero(&d, k).expect("pivot vanished");
                d.swap_rows(k, pi);
                u.swap_rows(k, pi);
                d.swap_cols(k, pj);
                v.swap_cols(k, pj);
                continue;
            }
            // Row and column are clear; enforce that the pivot divides the
            // remaining submatrix before moving on (divisibility chain).
            match entry_not_divisible(&d, k) {
                Some(i) => {
                    d.add_row_multiple(k, i, &Int::from(1));
                    u.add_row_multiple(k, i, &Int::from(1));
                }
                None => break,
            }
        }
        k += 1;
    }

    for i in 0..rows.min(cols) {
        if d[(i, i)].is_negative() {
            d.negate_row(i);
            u.negate_row(i);
        }
    }

    debug_assert_eq!(u.mul(m).mul(&v), d, "SNF reconstruction U*M*V != D");
    SmithDecomposition { u, d, v }
}

fn smallest_nonzero(d: &IntMatrix, k: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, Int)> = None;
    for i in k..d.rows() {
        for j in k..d.cols() {
            if d[(i, j)].is_zero() {
                continue;
            }
            let a = d[(i, j)].abs();
            if best.as_ref().is_none_or(|(_, _, b)| a < *b) {
                best = Some((i, j, a));
            }
        }
    }
    best.map(|(i, j, _)| (i, j))
}

/// Finds a row `i > k` containing an entry not divisible by the pivot.
fn entry_not_divisible(d: &IntMatrix, k: usize) -> Option<usize> {
    let pivot = &d[(k, k)];
    for i in k + 1..d.rows() {
        for j in k + 1..d.cols() {
            if !(&d[(i, j)] % pivot).is_zero() {
                return Some(i);
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::int;

    fn diag_i64(s: &SmithDecomposition) -> Vec<i64> {
        s.diagonal()
            .iter()
            .map(|d| i64::try_from(d).unwrap())
            .collect()
    }

    #[test]
    fn empty_matrix() {
        let s = smith_normal_form(&IntMatrix::zero(0, 0));
        assert!(s.diagonal().is_empty());
    }

    #[test]
    fn unimodular_input_has_trivial_cokernel() {
        let m = IntMatrix::from_rows(&[vec![-5, -2], vec![-2, -1]]);
        let s = smith_normal_form(&m);
        assert_eq!(diag_i64(&s), vec![1, 1]);
    }

    #[test]
    fn zero_one_by_one() {
        let m = IntMatrix::from_rows(&[vec![0]]);
        let s = smith_normal_form(&m);
        assert_eq!(diag_i64(&s), vec![0]);
    }

    #[test]
    fn divisibility_chain_on_diagonal_input() {
        let m = IntMatrix::from_rows(&[vec![6, 0], vec![0, 4]]);
        let s = smith_normal_form(&m);
        assert_eq!(diag_i64(&s), vec![2, 12]);
        assert_eq!(s.u.mul(&m).mul(&s.v), s.d);
    }

    #[test]
    fn non_square() {
        let m = IntMatrix::from_rows(&[vec![2, 4, 4]]);
        let s = smith_normal_form(&m);
        assert_eq!(diag_i64(&s), vec![2]);
        assert_eq!(s.u.mul(&m).mul(&s.v), s.d);
        assert_eq!(s.u.determinant().unwrap().abs(), int(1));
        assert_eq!(s.v.determinant().unwrap().abs(), int(1));
    }
}
