use std::fmt;

use super::bitvec::{BitVec, WORD_BITS};
use crate::error::{Error, Result};

/// Dense row-major matrix over GF(2).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    cols: usize,
    rows: Vec<BitVec>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            cols,
            rows: vec![BitVec::zeros(cols); rows],
        }
    }

    pub fn identity(size: usize) -> Self {
        let mut m = Self::zeros(size, size);
        for i in 0..size {
            m.set(i, i, true);
        }
        m
    }

    /// Builds a matrix from rows that must all have length `cols`.
    pub fn from_rows(cols: usize, rows: Vec<BitVec>) -> Result<Self> {
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch {
                context: "matrix row length",
                expected: cols,
                found: bad.len(),
            });
        }
        Ok(Self { cols, rows })
    }

    /// Builds a matrix from column vectors of equal length `rows`.
    pub fn from_columns(rows: usize, columns: &[BitVec]) -> Result<Self> {
        let mut m = Self::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            if col.len() != rows {
                return Err(Error::DimensionMismatch {
                    context: "matrix column length",
                    expected: rows,
                    found: col.len(),
                });
            }
            for i in col.iter_ones() {
                m.set(i, j, true);
            }
        }
        Ok(m)
    }

    /// Parses rows given as `0`/`1` strings.
    pub fn parse(rows: &[&str]) -> Result<Self> {
        let parsed = rows
            .iter()
            .map(|r| r.parse::<BitVec>())
            .collect::<Result<Vec<_>>>()?;
        let cols = parsed.first().map_or(0, BitVec::len);
        Self::from_rows(cols, parsed)
    }

    #[inline]
    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    #[inline]
    pub fn ncols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn row(&self, i: usize) -> &BitVec {
        &self.rows[i]
    }

    pub fn rows(&self) -> &[BitVec] {
        &self.rows
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.rows[i].get(j)
    }

    pub fn set(&mut self, i: usize, j: usize, bit: bool) {
        self.rows[i].set(j, bit);
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(BitVec::is_zero)
    }

    pub fn column(&self, j: usize) -> BitVec {
        BitVec::from_bools(self.rows.iter().map(|r| r.get(j)))
    }

    pub fn columns(&self) -> Vec<BitVec> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    /// Column `j` as an integer with row 0 in bit 0. Requires at most 64 rows.
    pub fn column_u64(&self, j: usize) -> u64 {
        assert!(self.nrows() <= WORD_BITS);
        self.rows
            .iter()
            .enumerate()
            .fold(0, |acc, (i, r)| acc | (u64::from(r.get(j)) << i))
    }

    pub fn select_columns(&self, indices: &[usize]) -> BitMatrix {
        let cols: Vec<BitVec> = indices.iter().map(|&j| self.column(j)).collect();
        Self::from_columns(self.nrows(), &cols).expect("columns share the row count")
    }

    /// The first `count` columns.
    pub fn prefix_columns(&self, count: usize) -> BitMatrix {
        assert!(count <= self.cols);
        Self {
            cols: count,
            rows: self.rows.iter().map(|r| r.prefix(count)).collect(),
        }
    }

    /// Rows `range` as a new matrix.
    pub fn row_slice(&self, range: std::ops::Range<usize>) -> BitMatrix {
        Self {
            cols: self.cols,
            rows: self.rows[range].to_vec(),
        }
    }

    pub fn transpose(&self) -> BitMatrix {
        Self::from_rows(self.nrows(), self.columns()).expect("uniform column length")
    }

    /// Multiset of columns in sorted order; equal for two matrices iff they
    /// differ by a column permutation.
    pub fn sorted_columns(&self) -> Vec<BitVec> {
        let mut cols = self.columns();
        cols.sort();
        cols
    }

    /// The GF(2) combination of rows selected by `u`.
    pub fn vec_mat_mul(&self, u: &BitVec) -> Result<BitVec> {
        if u.len() != self.nrows() {
            return Err(Error::DimensionMismatch {
                context: "vector-matrix product",
                expected: self.nrows(),
                found: u.len(),
            });
        }
        let mut out = BitVec::zeros(self.cols);
        for i in u.iter_ones() {
            out.xor_assign(&self.rows[i]);
        }
        Ok(out)
    }

    /// Row rank over GF(2).
    pub fn rank(&self) -> usize {
        let mut rows: Vec<Vec<u64>> = self.rows.iter().map(|r| r.words().to_vec()).collect();
        let mut rank = 0;
        for col in 0..self.cols {
            let (w, b) = (col / WORD_BITS, 1u64 << (col % WORD_BITS));
            let Some(pivot) = (rank..rows.len()).find(|&r| rows[r][w] & b != 0) else {
                continue;
            };
            rows.swap(rank, pivot);
            let (head, tail) = rows.split_at_mut(rank + 1);
            let p = &head[rank];
            for r in tail.iter_mut() {
                if r[w] & b != 0 {
                    for (x, y) in r.iter_mut().zip(p) {
                        *x ^= y;
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

    pub fn hstack(blocks: &[&BitMatrix]) -> Result<BitMatrix> {
        let Some(first) = blocks.first() else {
            return Ok(BitMatrix::zeros(0, 0));
        };
        let nrows = first.nrows();
        let mut rows: Vec<BitVec> = vec![BitVec::zeros(0); nrows];
        for block in blocks {
            if block.nrows() != nrows {
                return Err(Error::DimensionMismatch {
                    context: "hstack row count",
                    expected: nrows,
                    found: block.nrows(),
                });
            }
            for (acc, r) in rows.iter_mut().zip(&block.rows) {
                *acc = acc.concat(r);
            }
        }
        let cols = blocks.iter().map(|b| b.ncols()).sum();
        Ok(Self { cols, rows })
    }

    pub fn vstack(blocks: &[&BitMatrix]) -> Result<BitMatrix> {
        let Some(first) = blocks.first() else {
            return Ok(BitMatrix::zeros(0, 0));
        };
        let cols = first.ncols();
        let mut rows = Vec::new();
        for block in blocks {
            if block.ncols() != cols {
                return Err(Error::DimensionMismatch {
                    context: "vstack column count",
                    expected: cols,
                    found: block.ncols(),
                });
            }
            rows.extend(block.rows.iter().cloned());
        }
        Ok(Self { cols, rows })
    }

    /// Applies `perm` to the columns: column `j` of the result is column `perm[j]` of `self`.
    pub fn permute_columns(&self, perm: &[usize]) -> Result<BitMatrix> {
        if perm.len() != self.cols {
            return Err(Error::DimensionMismatch {
                context: "column permutation length",
                expected: self.cols,
                found: perm.len(),
            });
        }
        let mut seen = vec![false; perm.len()];
        for &p in perm {
            if p >= perm.len() || std::mem::replace(&mut seen[p], true) {
                return Err(Error::InvalidParameter("not a permutation".into()));
            }
        }
        Ok(self.select_columns(perm))
    }
}

impl fmt::Display for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, r) in self.rows.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{r}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitMatrix{}x{}[", self.nrows(), self.cols)?;
        for (i, r) in self.rows.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{r}")?;
        }
        f.write_str("]")
    }
}
