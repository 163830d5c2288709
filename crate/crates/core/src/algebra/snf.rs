//! Smith normal form over the integers.
//!
//! Entries are arbitrary precision. Pivoting always picks the nonzero entry
//! of least magnitude in the remaining minor, which keeps intermediate values
//! small on the tiny matrices this crate produces.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    /// Builds a matrix from rows of machine integers. All rows must have the same length.
    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> Self {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut m = Self::zeros(rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            assert_eq!(row.len(), cols, "ragged matrix rows");
            for (j, &v) in row.iter().enumerate() {
                m[(i, j)] = BigInt::from(v);
            }
        }
        m
    }

    pub fn diagonal(rows: usize, cols: usize, entries: &[i64]) -> Self {
        let mut m = Self::zeros(rows, cols);
        for (i, &v) in entries.iter().enumerate() {
            m[(i, i)] = BigInt::from(v);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let term = a * &other[(k, j)];
                    out[(i, j)] += term;
                }
            }
        }
        out
    }

    /// Diagonal entries `d[(i, i)]` for `i < min(rows, cols)`.
    pub fn diagonal_entries(&self) -> Vec<BigInt> {
        (0..self.rows.min(self.cols))
            .map(|i| self[(i, i)].clone())
            .collect()
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self[(i, j)].is_zero()))
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[target] += factor * row[source]
    fn add_row_multiple(&mut self, target: usize, source: usize, factor: &BigInt) {
        for j in 0..self.cols {
            let v = &self[(source, j)] * factor;
            self[(target, j)] += v;
        }
    }

    /// col[target] += factor * col[source]
    fn add_col_multiple(&mut self, target: usize, source: usize, factor: &BigInt) {
        for i in 0..self.rows {
            let v = &self[(i, source)] * factor;
            self[(i, target)] += v;
        }
    }

    fn negate_row(&mut self, r: usize) {
        for j in 0..self.cols {
            let v = -&self[(r, j)];
            self[(r, j)] = v;
        }
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<Vec<String>> = (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self[(i, j)].to_string()).collect())
            .collect();
        write!(f, "{rows:?}")
    }
}

/// `row_transform * input * col_transform == diagonal`.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub diagonal: IntMatrix,
    pub row_transform: IntMatrix,
    pub col_transform: IntMatrix,
}

impl SmithForm {
    /// Nonzero invariant factors, in divisibility order.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        self.diagonal
            .diagonal_entries()
            .into_iter()
            .filter(|d| !d.is_zero())
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors().len()
    }
}

pub fn smith_normal_form(input: &IntMatrix) -> SmithForm {
    let (rows, cols) = (input.rows, input.cols);
    let mut d = input.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);

    for t in 0..rows.min(cols) {
        loop {
            let Some((pi, pj)) = min_pivot(&d, t) else {
                return SmithForm {
                    diagonal: d,
                    row_transform: u,
                    col_transform: v,
                };
            };
            d.swap_rows(t, pi);
            u.swap_rows(t, pi);
            d.swap_cols(t, pj);
            v.swap_cols(t, pj);

            let mut reduced = true;
            for i in t + 1..rows {
                if d[(i, t)].is_zero() {
                    continue;
                }
                let q = -d[(i, t)].div_floor(&d[(t, t)]);
                d.add_row_multiple(i, t, &q);
                u.add_row_multiple(i, t, &q);
                if !d[(i, t)].is_zero() {
                    reduced = false;
                }
            }
            for j in t + 1..cols {
                if d[(t, j)].is_zero() {
                    continue;
                }
                let q = -d[(t, j)].div_floor(&d[(t, t)]);
                d.add_col_multiple(j, t, &q);
                v.add_col_multiple(j, t, &q);
                if !d[(t, j)].is_zero() {
                    reduced = false;
                }
            }
            if !reduced {
                // a smaller remainder now exists; pick it as the next pivot
                continue;
            }

            // pivot must divide the whole remaining minor
            let offender = (t + 1..rows).find(|&i| {
                (t + 1..cols).any(|j| !d[(i, j)].is_multiple_of(&d[(t, t)]))
            });
            match offender {
                Some(i) => {
                    let one = BigInt::one();
                    d.add_row_multiple(t, i, &one);
                    u.add_row_multiple(t, i, &one);
                }
                None => {
                    if d[(t, t)].is_negative() {
                        d.negate_row(t);
                        u.negate_row(t);
                    }
                    break;
                }
            }
        }
    }

    SmithForm {
        diagonal: d,
        row_transform: u,
        col_transform: v,
    }
}

fn min_pivot(m: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<((usize, usize), BigInt)> = None;
    for i in t..m.rows {
        for j in t..m.cols {
            let a = m[(i, j)].abs();
            if a.is_zero() {
                continue;
            }
            if best.as_ref().is_none_or(|(_, b)| a < *b) {
                best = Some(((i, j), a));
            }
        }
    }
    best.map(|(idx, _)| idx)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diag(m: &IntMatrix) -> Vec<i64> {
        m.diagonal_entries()
            .iter()
            .map(|d| i64::try_from(d).unwrap())
            .collect()
    }

    fn check(m: &IntMatrix) -> SmithForm {
        let s = smith_normal_form(m);
        assert_eq!(s.row_transform.mul(m).mul(&s.col_transform), s.diagonal);
        assert!(s.diagonal.is_diagonal());
        s
    }

    #[test]
    fn zero_matrix_is_fixed() {
        let s = check(&IntMatrix::from_rows(&[[0]]));
        assert_eq!(diag(&s.diagonal), vec![0]);
    }

    #[test]
    fn identity_is_fixed() {
        let s = check(&IntMatrix::identity(3));
        assert_eq!(diag(&s.diagonal), vec![1, 1, 1]);
    }

    #[test]
    fn coprime_diagonal_combines() {
        let s = check(&IntMatrix::from_rows(&[[2, 0], [0, 3]]));
        assert_eq!(diag(&s.diagonal), vec![1, 6]);
    }

    #[test]
    fn empty_matrices() {
        let s = check(&IntMatrix::zeros(0, 3));
        assert_eq!(s.col_transform, IntMatrix::identity(3));
        let s = check(&IntMatrix::zeros(2, 0));
        assert_eq!(s.row_transform, IntMatrix::identity(2));
    }

    #[test]
    fn negative_entries_become_positive() {
        let s = check(&IntMatrix::from_rows(&[[-4, 0], [0, -6]]));
        assert_eq!(diag(&s.diagonal), vec![2, 12]);
    }

    #[test]
    fn rectangular() {
        let s = check(&IntMatrix::from_rows(&[[2, 4, 4], [-6, 6, 12], [10, -4, -16]]));
        assert_eq!(diag(&s.diagonal), vec![2, 6, 12]);
        let s = check(&IntMatrix::from_rows(&[[1, 2, 3], [4, 5, 6]]));
        assert_eq!(diag(&s.diagonal), vec![1, 3]);
    }
}
