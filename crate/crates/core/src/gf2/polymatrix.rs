use itertools::Itertools;

use super::bitvec::BitVec;
use super::matrix::BitMatrix;
use super::poly::Poly2;
use crate::error::{Error, Result};

/// A matrix over GF(2)[z], equivalently `G(z) = Σ G_i z^i`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Poly2>,
}

impl PolyMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Poly2>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                context: "polynomial matrix entries",
                expected: rows * cols,
                found: entries.len(),
            });
        }
        Ok(Self {
            rows,
            cols,
            entries,
        })
    }

    /// Assembles `Σ coeffs[i] z^i`; every coefficient must share one shape.
    pub fn from_coefficients(coeffs: &[BitMatrix]) -> Result<Self> {
        let first = coeffs
            .first()
            .ok_or_else(|| Error::InvalidParameter("empty coefficient list".into()))?;
        let (rows, cols) = (first.nrows(), first.ncols());
        for g in coeffs {
            if g.nrows() != rows || g.ncols() != cols {
                return Err(Error::DimensionMismatch {
                    context: "coefficient matrix shape",
                    expected: rows * cols,
                    found: g.nrows() * g.ncols(),
                });
            }
        }
        let entries = (0..rows)
            .cartesian_product(0..cols)
            .map(|(r, c)| Poly2::from_coeffs(coeffs.iter().map(|g| g.get(r, c))))
            .collect();
        Ok(Self {
            rows,
            cols,
            entries,
        })
    }

    /// Coefficient matrices `G_0..G_μ`; a zero matrix yields the single block `G_0 = 0`.
    pub fn to_coefficients(&self) -> Vec<BitMatrix> {
        let mu = self.degree().unwrap_or(0);
        (0..=mu)
            .map(|i| {
                let rows = (0..self.rows)
                    .map(|r| BitVec::from_bools((0..self.cols).map(|c| self.get(r, c).coeff(i))))
                    .collect();
                BitMatrix::from_rows(self.cols, rows).expect("uniform row length")
            })
            .collect()
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Poly2 {
        &self.entries[r * self.cols + c]
    }

    /// Largest entry degree (μ); `None` for the zero matrix.
    pub fn degree(&self) -> Option<usize> {
        self.entries.iter().filter_map(Poly2::degree).max()
    }

    /// Largest entry degree per row; `None` for a zero row.
    pub fn row_degrees(&self) -> Vec<Option<usize>> {
        (0..self.rows)
            .map(|r| (0..self.cols).filter_map(|c| self.get(r, c).degree()).max())
            .collect()
    }

    /// Determinants of all `rows × rows` column-submatrices, column sets in
    /// lexicographic order.
    pub fn k_minors(&self) -> Result<Vec<Poly2>> {
        Ok(self.minors()?.collect())
    }

    /// Lazy version of [`k_minors`](Self::k_minors).
    pub fn minors(&self) -> Result<impl Iterator<Item = Poly2> + '_> {
        if self.rows > self.cols {
            return Err(Error::DimensionMismatch {
                context: "k_minors needs rows <= cols",
                expected: self.cols,
                found: self.rows,
            });
        }
        Ok((0..self.cols)
            .combinations(self.rows)
            .map(move |cols| self.minor(&cols)))
    }

    fn minor(&self, cols: &[usize]) -> Poly2 {
        let square = (0..self.rows)
            .map(|r| cols.iter().map(|&c| self.get(r, c).clone()).collect())
            .collect();
        determinant(square)
    }
}

/// Fraction-free (Bareiss) elimination; every division is exact.
/// Row swaps need no sign fix in characteristic 2.
pub fn determinant(mut m: Vec<Vec<Poly2>>) -> Poly2 {
    let n = m.len();
    if n == 0 {
        return Poly2::one();
    }
    let mut prev = Poly2::one();
    for p in 0..n - 1 {
        if m[p][p].is_zero() {
            match (p + 1..n).find(|&r| !m[r][p].is_zero()) {
                Some(r) => m.swap(p, r),
                None => return Poly2::zero(),
            }
        }
        for i in p + 1..n {
            for j in p + 1..n {
                let num = &(&m[i][j] * &m[p][p]) + &(&m[i][p] * &m[p][j]);
                let (q, r) = num.div_rem(&prev).expect("Bareiss pivot is nonzero");
                debug_assert!(r.is_zero(), "Bareiss division must be exact");
                m[i][j] = q;
            }
        }
        prev = m[p][p].clone();
    }
    m[n - 1][n - 1].clone()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(bits: u64) -> Poly2 {
        Poly2::from_u64(bits)
    }

    fn pm(rows: usize, cols: usize, bits: &[u64]) -> PolyMatrix {
        PolyMatrix::new(rows, cols, bits.iter().map(|&b| p(b)).collect()).unwrap()
    }

    // permutation expansion, independent of elimination
    fn leibniz(m: &[Vec<Poly2>]) -> Poly2 {
        (0..m.len())
            .permutations(m.len())
            .map(|perm| {
                perm.iter()
                    .enumerate()
                    .fold(Poly2::one(), |acc, (r, &c)| &acc * &m[r][c])
            })
            .fold(Poly2::zero(), |acc, t| &acc + &t)
    }

    #[test]
    fn minors_examples() {
        // (1+z, 1, z)
        let g = pm(1, 3, &[0b11, 0b1, 0b10]);
        assert_eq!(g.k_minors().unwrap(), vec![p(0b11), p(1), p(0b10)]);
        // [[1, z], [z, 1]] -> 1 + z^2
        let g = pm(2, 2, &[1, 0b10, 0b10, 1]);
        assert_eq!(g.k_minors().unwrap(), vec![p(0b101)]);
        let g = pm(2, 3, &[1, 0, 1, 0, 1, 1]);
        assert_eq!(g.k_minors().unwrap(), vec![p(1), p(1), p(1)]);
        assert!(pm(2, 1, &[1, 1]).k_minors().is_err());
    }

    #[test]
    fn coefficient_views_agree() {
        let g0 = BitMatrix::parse(&["110", "011"]).unwrap();
        let g1 = BitMatrix::parse(&["100", "000"]).unwrap();
        let g = PolyMatrix::from_coefficients(&[g0.clone(), g1.clone()]).unwrap();
        assert_eq!(g.get(0, 0), &p(0b11));
        assert_eq!(g.degree(), Some(1));
        assert_eq!(g.row_degrees(), vec![Some(1), Some(0)]);
        assert_eq!(g.to_coefficients(), vec![g0, g1]);
    }

    proptest! {
        #[test]
        fn bareiss_matches_leibniz(n in 1usize..5, bits in proptest::collection::vec(0u64..16, 16)) {
            let m: Vec<Vec<Poly2>> = (0..n).map(|r| (0..n).map(|c| p(bits[r * 4 + c])).collect()).collect();
            prop_assert_eq!(determinant(m.clone()), leibniz(&m));
        }

        #[test]
        fn coefficient_round_trip(rows in 1usize..4, cols in 1usize..6, bits in proptest::collection::vec(0u64..32, 24)) {
            let g = PolyMatrix::new(rows, cols, (0..rows * cols).map(|i| p(bits[i])).collect()).unwrap();
            let coeffs = g.to_coefficients();
            if let Some(mu) = g.degree() {
                prop_assert_eq!(coeffs.len(), mu + 1);
                prop_assert!(!coeffs[mu].is_zero());
            }
            prop_assert_eq!(PolyMatrix::from_coefficients(&coeffs).unwrap(), g);
        }
    }
}
