//! Simplex, partial simplex and k-partial simplex generators.
//!
//! Columns follow one canonical order. A column is split into a top part of
//! `k_top` rows read as an integer `t` (row 0 most significant) and a bottom
//! part read as an integer `w` (the first bottom row least significant).
//! Columns run over `w` descending in the outer loop and `t` descending from
//! `2^k_top - 1` to 1 in the inner loop. The full simplex generator lists
//! the values `2^k - 1` down to 1 with row 0 most significant.

use crate::error::{Error, Result};
use crate::gf2::{min_weight, BitMatrix, BitVec};

/// Which generator a [`SimplexFamily`] describes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SimplexKind {
    Full,
    Partial,
    KPartial,
}

/// Parameters of an m-fold simplex-type generator.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SimplexFamily {
    pub kind: SimplexKind,
    /// Total row count.
    pub dim: usize,
    /// Rows whose joint value must be nonzero (0 for the full simplex).
    pub k_top: usize,
    pub fold: usize,
}

impl SimplexFamily {
    pub fn full(dim: usize, fold: usize) -> Self {
        Self {
            kind: SimplexKind::Full,
            dim,
            k_top: 0,
            fold,
        }
    }

    pub fn partial(dim: usize, fold: usize) -> Self {
        Self {
            kind: SimplexKind::Partial,
            dim,
            k_top: 1,
            fold,
        }
    }

    /// `S(delta + k)_k` folded `fold` times.
    pub fn k_partial(k: usize, delta: usize, fold: usize) -> Self {
        Self {
            kind: SimplexKind::KPartial,
            dim: k + delta,
            k_top: k,
            fold,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.fold == 0 || self.dim == 0 || self.k_top > self.dim {
            return Err(Error::InvalidParameter(format!(
                "invalid simplex family: dim {}, k_top {}, fold {}",
                self.dim, self.k_top, self.fold
            )));
        }
        let expected_top = match self.kind {
            SimplexKind::Full => self.k_top == 0,
            SimplexKind::Partial => self.k_top == 1,
            SimplexKind::KPartial => self.k_top >= 1,
        };
        if !expected_top {
            return Err(Error::InvalidParameter(format!(
                "{:?} family cannot have k_top = {}",
                self.kind, self.k_top
            )));
        }
        Ok(())
    }

    /// Column count of the folded generator.
    pub fn width(&self) -> usize {
        let base = match self.kind {
            SimplexKind::Full => (1usize << self.dim) - 1,
            _ => (1usize << self.dim) - (1usize << (self.dim - self.k_top)),
        };
        self.fold * base
    }

    pub fn generate(&self) -> Result<BitMatrix> {
        self.validate()?;
        let base = match self.kind {
            SimplexKind::Full => simplex_generator(self.dim)?,
            _ => k_partial_simplex(self.k_top, self.dim - self.k_top)?,
        };
        m_fold(&base, self.fold)
    }
}

/// `S(k)`: every nonzero vector of GF(2)^k once, as columns.
pub fn simplex_generator(k: usize) -> Result<BitMatrix> {
    if k == 0 || k > 30 {
        return Err(Error::InvalidParameter(format!(
            "simplex dimension {k} out of range 1..=30"
        )));
    }
    let cols: Vec<BitVec> = (1..1u64 << k).rev().map(|v| msb_first(v, k)).collect();
    BitMatrix::from_columns(k, &cols)
}

/// `S(d)_1`: columns of `S(d)` whose first entry is 1.
pub fn partial_simplex(d: usize) -> Result<BitMatrix> {
    if d == 0 {
        return Err(Error::InvalidParameter(
            "partial simplex dimension must be positive".into(),
        ));
    }
    k_partial_simplex(1, d - 1)
}

/// `S(delta + k)_k`: columns of `S(delta + k)` whose first `k` entries are not all zero.
pub fn k_partial_simplex(k: usize, delta: usize) -> Result<BitMatrix> {
    if k == 0 || k + delta > 30 {
        return Err(Error::InvalidParameter(format!(
            "k-partial simplex needs 1 <= k and k + delta <= 30 (got k={k}, delta={delta})"
        )));
    }
    let dim = k + delta;
    let mut cols = Vec::with_capacity((1 << dim) - (1 << delta));
    for w in (0..1u64 << delta).rev() {
        for t in (1..1u64 << k).rev() {
            cols.push(column(t, w, k, delta));
        }
    }
    BitMatrix::from_columns(dim, &cols)
}

/// Column `(t, w)` in the canonical encoding.
pub(crate) fn column(t: u64, w: u64, k_top: usize, bottom: usize) -> BitVec {
    let mut v = BitVec::zeros(k_top + bottom);
    for r in 0..k_top {
        v.set(r, (t >> (k_top - 1 - r)) & 1 == 1);
    }
    for b in 0..bottom {
        v.set(k_top + b, (w >> b) & 1 == 1);
    }
    v
}

fn msb_first(v: u64, len: usize) -> BitVec {
    BitVec::from_bools((0..len).map(|r| (v >> (len - 1 - r)) & 1 == 1))
}

/// `[M M ... M]` with `m` copies.
pub fn m_fold(m_base: &BitMatrix, m: usize) -> Result<BitMatrix> {
    if m == 0 {
        return Err(Error::InvalidParameter(
            "fold count must be positive".into(),
        ));
    }
    let copies = vec![m_base; m];
    BitMatrix::hstack(&copies)
}

/// Minimum weight of the block code generated by the rows of `m`.
///
/// With `restrict_top = Some(k_top)` only messages touching the first `k_top`
/// rows are admitted.
pub fn min_weight_block_code(m: &BitMatrix, restrict_top: Option<usize>) -> Result<usize> {
    if m.nrows() == 0 {
        return Err(Error::InvalidParameter(
            "block code needs at least one row".into(),
        ));
    }
    let required = match restrict_top {
        None => u64::MAX,
        Some(k) if k == 0 || k > m.nrows() => {
            return Err(Error::InvalidParameter(format!(
                "restricted top row count {k} out of range for {} rows",
                m.nrows()
            )))
        }
        Some(k) => (1u64 << k) - 1,
    };
    Ok(min_weight(m, required)?.expect("admissible message set is nonempty"))
}

/// True when `a` and `b` have the same column multiset.
pub fn column_permutation_equivalent(a: &BitMatrix, b: &BitMatrix) -> bool {
    a.nrows() == b.nrows() && a.ncols() == b.ncols() && a.sorted_columns() == b.sorted_columns()
}
