//! Small dense matrices with entries in `Z` (modulus 0) or `Z_p`.

use std::fmt;

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    modulus: u64,
    data: Vec<i64>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize, modulus: u64) -> Self {
        Matrix {
            rows,
            cols,
            modulus,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize, modulus: u64) -> Self {
        let mut m = Self::zeros(n, n, modulus);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>], modulus: u64) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(rows.len(), cols, modulus);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged matrix rows");
            for (j, &v) in row.iter().enumerate() {
                m.set(i, j, v);
            }
        }
        m
    }

    /// Matrix whose columns are the given vectors, each of length `rows`.
    pub fn from_columns(rows: usize, columns: &[Vec<i64>], modulus: u64) -> Self {
        let mut m = Self::zeros(rows, columns.len(), modulus);
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length mismatch");
            for (i, &v) in col.iter().enumerate() {
                m.set(i, j, v);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: i64) {
        let v = self.reduce(v);
        self.data[i * self.cols + j] = v;
    }

    fn reduce(&self, v: i64) -> i64 {
        if self.modulus == 0 {
            v
        } else {
            v.rem_euclid(self.modulus as i64)
        }
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows, self.modulus);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        assert_eq!(self.modulus, other.modulus, "modulus mismatch in product");
        let mut out = Matrix::zeros(self.rows, other.cols, self.modulus);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc: i128 = 0;
                for k in 0..self.cols {
                    acc += i128::from(self.get(i, k)) * i128::from(other.get(k, j));
                }
                let acc = if self.modulus == 0 {
                    acc
                } else {
                    acc.rem_euclid(i128::from(self.modulus))
                };
                out.set(i, j, i64::try_from(acc).expect("matrix entry overflow"));
            }
        }
        out
    }

    pub fn apply(&self, v: &[i64]) -> Vec<i64> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let acc: i128 = (0..self.cols)
                    .map(|k| i128::from(self.get(i, k)) * i128::from(v[k]))
                    .sum();
                let acc = if self.modulus == 0 {
                    acc
                } else {
                    acc.rem_euclid(i128::from(self.modulus))
                };
                i64::try_from(acc).expect("vector entry overflow")
            })
            .collect()
    }

    pub fn select_columns(&self, cols: &[usize]) -> Matrix {
        let mut m = Matrix::zeros(self.rows, cols.len(), self.modulus);
        for (jj, &j) in cols.iter().enumerate() {
            for i in 0..self.rows {
                m.set(i, jj, self.get(i, j));
            }
        }
        m
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    /// Rank over `Z_p`. Panics for integer matrices.
    pub fn rank(&self) -> usize {
        assert!(self.modulus > 1, "rank is only computed over a prime field");
        echelon_rank(self.data.clone(), self.rows, self.cols, self.modulus)
    }

    /// Basis of the null space over `Z_p`, as column vectors.
    pub fn kernel_basis(&self) -> Vec<Vec<i64>> {
        assert!(self.modulus > 1, "kernel is only computed over a prime field");
        let p = self.modulus as i64;
        let mut a = self.data.clone();
        let pivots = reduce_rows(&mut a, self.rows, self.cols, self.modulus);
        let pivot_cols: Vec<usize> = pivots.iter().map(|&(_, c)| c).collect();
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|c| !pivot_cols.contains(c)) {
            let mut v = vec![0i64; self.cols];
            v[free] = 1;
            for &(r, c) in &pivots {
                v[c] = (-a[r * self.cols + free]).rem_euclid(p);
            }
            basis.push(v);
        }
        basis
    }
}

fn inverse_mod(a: i64, p: i64) -> i64 {
    // p is prime: a^(p-2)
    let mut result = 1i64;
    let mut base = a.rem_euclid(p);
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    result
}

/// Reduced row echelon form in place; returns (row, column) of each pivot.
fn reduce_rows(a: &mut [i64], rows: usize, cols: usize, modulus: u64) -> Vec<(usize, usize)> {
    let p = modulus as i64;
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(pr) = (r..rows).find(|&i| a[i * cols + c] != 0) else {
            continue;
        };
        for j in 0..cols {
            a.swap(r * cols + j, pr * cols + j);
        }
        let inv = inverse_mod(a[r * cols + c], p);
        for j in 0..cols {
            a[r * cols + j] = a[r * cols + j] * inv % p;
        }
        for i in 0..rows {
            if i == r {
                continue;
            }
            let f = a[i * cols + c];
            if f == 0 {
                continue;
            }
            for j in 0..cols {
                a[i * cols + j] = (a[i * cols + j] - f * a[r * cols + j]).rem_euclid(p);
            }
        }
        pivots.push((r, c));
        r += 1;
    }
    pivots
}

fn echelon_rank(mut a: Vec<i64>, rows: usize, cols: usize, modulus: u64) -> usize {
    reduce_rows(&mut a, rows, cols, modulus).len()
}

/// Rank over `Z_p` of a set of vectors of equal length.
pub fn span_rank(vectors: &[Vec<i64>], prime: u64) -> usize {
    let Some(first) = vectors.first() else {
        return 0;
    };
    let m = Matrix::from_rows(vectors, prime);
    debug_assert!(vectors.iter().all(|v| v.len() == first.len()));
    m.rank()
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<&[i64]> = (0..self.rows).map(|i| self.row(i)).collect();
        write!(f, "Matrix(mod {}) {:?}", self.modulus, rows)
    }
}
