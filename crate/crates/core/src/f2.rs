//! Dense bit-packed matrices over the two-element field.
//!
//! Rows are packed into `u64` blocks; addition is XOR. This is plenty for the
//! desk-scale complexes handled here while keeping the elimination code exact
//! and allocation-light.

use std::fmt;

/// A rows x cols matrix over F2, row-major with bit-packed rows.
#[derive(Clone, PartialEq, Eq)]
pub struct F2Matrix {
    rows: usize,
    cols: usize,
    stride: usize,
    data: Vec<u64>,
}

impl F2Matrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        let stride = cols.div_ceil(64).max(1);
        F2Matrix {
            rows,
            cols,
            stride,
            data: vec![0; rows * stride],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = F2Matrix::zero(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    pub fn from_entries(rows: usize, cols: usize, entries: &[(usize, usize)]) -> Self {
        let mut m = F2Matrix::zero(rows, cols);
        for &(r, c) in entries {
            m.set(r, c, !m.get(r, c));
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        debug_assert!(r < self.rows && c < self.cols);
        self.data[r * self.stride + c / 64] >> (c % 64) & 1 == 1
    }

    pub fn set(&mut self, r: usize, c: usize, v: bool) {
        debug_assert!(r < self.rows && c < self.cols);
        let w = &mut self.data[r * self.stride + c / 64];
        if v {
            *w |= 1 << (c % 64);
        } else {
            *w &= !(1 << (c % 64));
        }
    }

    fn xor_row_into(&mut self, src: usize, dst: usize) {
        let (a, b) = (src * self.stride, dst * self.stride);
        for k in 0..self.stride {
            self.data[b + k] ^= self.data[a + k];
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&w| w == 0)
    }

    pub fn entries(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for r in 0..self.rows {
            for c in 0..self.cols {
                if self.get(r, c) {
                    out.push((r, c));
                }
            }
        }
        out
    }

    pub fn add(&self, other: &F2Matrix) -> F2Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (d, s) in out.data.iter_mut().zip(&other.data) {
            *d ^= s;
        }
        out
    }

    /// Matrix product over F2.
    pub fn mul(&self, other: &F2Matrix) -> F2Matrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out = F2Matrix::zero(self.rows, other.cols);
        for r in 0..self.rows {
            for j in 0..self.cols {
                if self.get(r, j) {
                    let (a, b) = (j * other.stride, r * out.stride);
                    for k in 0..other.stride {
                        out.data[b + k] ^= other.data[a + k];
                    }
                }
            }
        }
        out
    }

    pub fn transpose(&self) -> F2Matrix {
        let mut out = F2Matrix::zero(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                if self.get(r, c) {
                    out.set(c, r, true);
                }
            }
        }
        out
    }

    /// Apply to a column vector given as a bool slice of length `cols`.
    pub fn apply(&self, v: &[bool]) -> Vec<bool> {
        assert_eq!(v.len(), self.cols);
        let mut out = vec![false; self.rows];
        for (r, o) in out.iter_mut().enumerate() {
            let mut acc = false;
            for c in 0..self.cols {
                acc ^= self.get(r, c) && v[c];
            }
            *o = acc;
        }
        out
    }

    /// Horizontal concatenation [self | other].
    pub fn hstack(&self, other: &F2Matrix) -> F2Matrix {
        assert_eq!(self.rows, other.rows);
        let mut out = F2Matrix::zero(self.rows, self.cols + other.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                if self.get(r, c) {
                    out.set(r, c, true);
                }
            }
            for c in 0..other.cols {
                if other.get(r, c) {
                    out.set(r, self.cols + c, true);
                }
            }
        }
        out
    }

    /// Submatrix on the given row and column index sets (in order).
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> F2Matrix {
        let mut out = F2Matrix::zero(rows.len(), cols.len());
        for (i, &r) in rows.iter().enumerate() {
            for (j, &c) in cols.iter().enumerate() {
                if self.get(r, c) {
                    out.set(i, j, true);
                }
            }
        }
        out
    }

    /// Columns as bool vectors.
    pub fn column(&self, c: usize) -> Vec<bool> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn set_column(&mut self, c: usize, v: &[bool]) {
        assert_eq!(v.len(), self.rows);
        for (r, &x) in v.iter().enumerate() {
            self.set(r, c, x);
        }
    }

    /// Rank by row elimination on a working copy.
    pub fn rank(&self) -> usize {
        self.clone().eliminate().1.len()
    }

    /// In-place reduced row echelon form; returns (self, pivot columns).
    pub fn eliminate(mut self) -> (F2Matrix, Vec<usize>) {
        let mut pivots = Vec::new();
        let mut next_row = 0;
        for col in 0..self.cols {
            let Some(p) = (next_row..self.rows).find(|&r| self.get(r, col)) else {
                continue;
            };
            if p != next_row {
                // Swap rows p and next_row.
                for k in 0..self.stride {
                    self.data.swap(p * self.stride + k, next_row * self.stride + k);
                }
            }
            for r in 0..self.rows {
                if r != next_row && self.get(r, col) {
                    self.xor_row_into(next_row, r);
                }
            }
            pivots.push(col);
            next_row += 1;
            if next_row == self.rows {
                break;
            }
        }
        (self, pivots)
    }

    /// A basis of the right kernel, one bool vector per basis element.
    pub fn kernel_basis(&self) -> Vec<Vec<bool>> {
        let (rref, pivots) = self.clone().eliminate();
        let mut basis = Vec::new();
        let is_pivot = |c: usize| pivots.binary_search(&c).is_ok();
        for free in (0..self.cols).filter(|&c| !is_pivot(c)) {
            let mut v = vec![false; self.cols];
            v[free] = true;
            for (r, &pc) in pivots.iter().enumerate() {
                if rref.get(r, free) {
                    v[pc] = true;
                }
            }
            basis.push(v);
        }
        basis
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(rows: usize, cols: &[Vec<bool>]) -> F2Matrix {
        let mut m = F2Matrix::zero(rows, cols.len());
        for (j, v) in cols.iter().enumerate() {
            m.set_column(j, v);
        }
        m
    }

    /// Inverse of a square matrix, via elimination on [self | I].
    pub fn inverse(&self) -> Option<F2Matrix> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let (rref, pivots) = self.hstack(&F2Matrix::identity(n)).eliminate();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let cols: Vec<usize> = (n..2 * n).collect();
        let rows: Vec<usize> = (0..n).collect();
        Some(rref.submatrix(&rows, &cols))
    }
}

impl fmt::Debug for F2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "F2Matrix {}x{}", self.rows, self.cols)?;
        for r in 0..self.rows {
            let line: String = (0..self.cols)
                .map(|c| if self.get(r, c) { '1' } else { '0' })
                .collect();
            writeln!(f, "  {line}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_and_kernel_small() {
        // [1 1 0; 0 1 1]: rank 2, kernel spanned by (1,1,1).
        let m = F2Matrix::from_entries(2, 3, &[(0, 0), (0, 1), (1, 1), (1, 2)]);
        assert_eq!(m.rank(), 2);
        let k = m.kernel_basis();
        assert_eq!(k.len(), 1);
        assert_eq!(k[0], vec![true, true, true]);
        assert!(m.apply(&k[0]).iter().all(|&b| !b));
    }

    #[test]
    fn mul_against_identity_and_transpose() {
        let m = F2Matrix::from_entries(3, 2, &[(0, 0), (1, 1), (2, 0), (2, 1)]);
        assert_eq!(F2Matrix::identity(3).mul(&m), m);
        assert_eq!(m.transpose().transpose(), m);
    }

    #[test]
    fn rank_matches_naive_on_random_instances() {
        // Deterministic xorshift so the test is reproducible.
        let mut state = 0x9e3779b97f4a7c15u64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        for _ in 0..60 {
            let rows = (next() % 12 + 1) as usize;
            let cols = (next() % 12 + 1) as usize;
            let mut m = F2Matrix::zero(rows, cols);
            let mut dense = vec![vec![0u8; cols]; rows];
            for r in 0..rows {
                for c in 0..cols {
                    if next() % 3 == 0 {
                        m.set(r, c, true);
                        dense[r][c] = 1;
                    }
                }
            }
            assert_eq!(m.rank(), naive_rank(dense));
        }
    }

    /// Independent dense elimination used as the rank oracle.
    fn naive_rank(mut m: Vec<Vec<u8>>) -> usize {
        if m.is_empty() {
            return 0;
        }
        let cols = m[0].len();
        let mut rank = 0;
        for c in 0..cols {
            if let Some(p) = (rank..m.len()).find(|&r| m[r][c] == 1) {
                m.swap(rank, p);
                for r in 0..m.len() {
                    if r != rank && m[r][c] == 1 {
                        for k in 0..cols {
                            m[r][k] ^= m[rank][k];
                        }
                    }
                }
                rank += 1;
            }
        }
        rank
    }
}
