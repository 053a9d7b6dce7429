//! Dense linear algebra over the two-element field.
//!
//! Every complex in this crate is ungraded and small (a few hundred
//! generators at most), so matrices are stored as bit-packed rows and
//! reduced by plain Gaussian elimination.

use std::fmt;

use thiserror::Error;

const WORD: usize = 64;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum F2Error {
    #[error("dimension mismatch: {0}x{1} cannot be combined with {2}x{3}")]
    DimensionMismatch(usize, usize, usize, usize),
    #[error("differential must be square, got {0}x{1}")]
    NotSquare(usize, usize),
    #[error("d*d != 0: {0} nonzero entries in the square of the differential")]
    NotDifferential(usize),
}

/// A matrix over F2 with row-major bit-packed storage.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct F2Matrix {
    rows: usize,
    cols: usize,
    stride: usize,
    words: Vec<u64>,
}

impl F2Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let stride = cols.div_ceil(WORD);
        Self {
            rows,
            cols,
            stride,
            words: vec![0; rows * stride],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    /// Builds a matrix by toggling each listed `(row, col)` position, so
    /// repeated entries cancel in pairs.
    pub fn from_entries<I>(rows: usize, cols: usize, entries: I) -> Self
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut m = Self::zeros(rows, cols);
        for (r, c) in entries {
            m.toggle(r, c);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, row: usize, col: usize) -> bool {
        assert!(row < self.rows && col < self.cols, "index out of range");
        self.words[row * self.stride + col / WORD] >> (col % WORD) & 1 == 1
    }

    pub fn set(&mut self, row: usize, col: usize, value: bool) {
        assert!(row < self.rows && col < self.cols, "index out of range");
        let word = &mut self.words[row * self.stride + col / WORD];
        let bit = 1u64 << (col % WORD);
        if value {
            *word |= bit;
        } else {
            *word &= !bit;
        }
    }

    pub fn toggle(&mut self, row: usize, col: usize) {
        assert!(row < self.rows && col < self.cols, "index out of range");
        self.words[row * self.stride + col / WORD] ^= 1u64 << (col % WORD);
    }

    /// Number of nonzero entries.
    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Positions of the nonzero entries, row by row.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.rows).flat_map(move |r| {
            (0..self.cols)
                .filter(move |&c| self.get(r, c))
                .map(move |c| (r, c))
        })
    }

    fn row(&self, r: usize) -> &[u64] {
        &self.words[r * self.stride..(r + 1) * self.stride]
    }

    pub fn transpose(&self) -> Self {
        Self::from_entries(self.cols, self.rows, self.entries().map(|(r, c)| (c, r)))
    }

    pub fn mul(&self, other: &Self) -> Result<Self, F2Error> {
        if self.cols != other.rows {
            return Err(F2Error::DimensionMismatch(
                self.rows, self.cols, other.rows, other.cols,
            ));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                if self.get(r, k) {
                    let (dst, src) = (r * out.stride, k * other.stride);
                    for w in 0..out.stride {
                        out.words[dst + w] ^= other.words[src + w];
                    }
                }
            }
        }
        Ok(out)
    }

    /// Rank over F2 by row reduction.
    pub fn rank(&self) -> usize {
        let mut rows: Vec<Vec<u64>> = (0..self.rows).map(|r| self.row(r).to_vec()).collect();
        let mut rank = 0;
        for col in 0..self.cols {
            let (w, bit) = (col / WORD, 1u64 << (col % WORD));
            let Some(pivot) = (rank..rows.len()).find(|&r| rows[r][w] & bit != 0) else {
                continue;
            };
            rows.swap(rank, pivot);
            let pivot_row = rows[rank].clone();
            for (r, row) in rows.iter_mut().enumerate() {
                if r != rank && row[w] & bit != 0 {
                    for (a, b) in row.iter_mut().zip(&pivot_row) {
                        *a ^= b;
                    }
                }
            }
            rank += 1;
            if rank == rows.len() {
                break;
            }
        }
        rank
    }
}

impl fmt::Debug for F2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "F2Matrix {}x{}", self.rows, self.cols)?;
        for r in 0..self.rows {
            let line: String = (0..self.cols)
                .map(|c| if self.get(r, c) { '1' } else { '.' })
                .collect();
            writeln!(f, "  {line}")?;
        }
        Ok(())
    }
}

pub fn rank(m: &F2Matrix) -> usize {
    m.rank()
}

/// Total homology rank `dim - 2 rank(d)` of an ungraded complex.
pub fn homology_rank(d: &F2Matrix) -> Result<usize, F2Error> {
    if d.rows() != d.cols() {
        return Err(F2Error::NotSquare(d.rows(), d.cols()));
    }
    let square = d.mul(d)?;
    if !square.is_zero() {
        return Err(F2Error::NotDifferential(square.count_ones()));
    }
    Ok(d.rows() - 2 * d.rank())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_of_zero_and_identity() {
        assert_eq!(rank(&F2Matrix::zeros(3, 3)), 0);
        assert_eq!(rank(&F2Matrix::identity(2)), 2);
        assert_eq!(rank(&F2Matrix::zeros(0, 4)), 0);
    }

    #[test]
    fn rank_is_over_f2() {
        // rows 110, 011, 101 sum to zero mod 2
        let m = F2Matrix::from_entries(3, 3, [(0, 0), (0, 1), (1, 1), (1, 2), (2, 0), (2, 2)]);
        assert_eq!(m.rank(), 2);
    }

    #[test]
    fn wide_rows_cross_word_boundaries() {
        let n = 150;
        let m = F2Matrix::from_entries(n, n, (0..n).map(|i| (i, (i * 7 + 3) % n)));
        assert_eq!(m.rank(), n);
        assert_eq!(m.transpose().rank(), n);
    }

    #[test]
    fn homology_of_small_complexes() {
        assert_eq!(homology_rank(&F2Matrix::zeros(5, 5)), Ok(5));
        let arrow = F2Matrix::from_entries(2, 2, [(1, 0)]);
        assert_eq!(homology_rank(&arrow), Ok(0));
    }

    #[test]
    fn homology_rejects_non_differentials() {
        let d = F2Matrix::from_entries(3, 3, [(1, 0), (2, 1)]);
        assert_eq!(homology_rank(&d), Err(F2Error::NotDifferential(1)));
        assert_eq!(
            homology_rank(&F2Matrix::zeros(2, 3)),
            Err(F2Error::NotSquare(2, 3))
        );
    }

    #[test]
    fn toggling_twice_cancels() {
        let m = F2Matrix::from_entries(2, 2, [(0, 1), (0, 1), (1, 0)]);
        assert!(!m.get(0, 1));
        assert!(m.get(1, 0));
        assert_eq!(m.count_ones(), 1);
    }
}
