use super::{ConvCode, ProfileMethod};
use crate::error::{Error, Result};
use crate::gf2::{min_weight, BitMatrix};

/// Per-`j` bounds on the column distances of one code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundReport {
    /// Sum over `i <= j` of the lightest block `i` output with `u_0 != 0`.
    pub lower: Vec<usize>,
    /// Lightest single-row impulse response through block `j`.
    pub upper: Vec<usize>,
    /// `n (min(j, δ) + 1)`.
    pub cap: Vec<usize>,
    /// `(n - k)(j + 1) + 1`.
    pub column: Vec<usize>,
    pub singleton: usize,
    /// `None` when `n == k`.
    pub l_value: Option<usize>,
}

/// Generalized Singleton bound `(n - k)(⌊δ/k⌋ + 1) + δ + 1`.
pub fn singleton_bound(n: usize, k: usize, delta: usize) -> usize {
    (n - k) * (delta / k + 1) + delta + 1
}

/// `(n - k)(j + 1) + 1`.
pub fn column_bound(n: usize, k: usize, j: usize) -> usize {
    (n - k) * (j + 1) + 1
}

/// `⌊δ/k⌋ + ⌊δ/(n-k)⌋`.
pub fn l_value(n: usize, k: usize, delta: usize) -> Result<usize> {
    if k == 0 || n <= k {
        return Err(Error::InvalidParameter(format!(
            "L needs n > k >= 1, got n={n}, k={k}"
        )));
    }
    Ok(delta / k + delta / (n - k))
}

impl ConvCode {
    /// Lightest output of block `i` over `(u_0, ..., u_i)` with `u_0 != 0`,
    /// where `u_0` multiplies `G_i`.
    pub fn block_increment(&self, i: usize) -> Result<usize> {
        if i > self.memory() {
            return Ok(0);
        }
        let blocks: Vec<BitMatrix> = (0..=i).rev().map(|l| self.coeff(l)).collect();
        let refs: Vec<&BitMatrix> = blocks.iter().collect();
        let stacked = BitMatrix::vstack(&refs)?;
        Ok(min_weight(&stacked, (1u64 << self.k()) - 1)?.unwrap_or(0))
    }

    pub fn bounds(&self, jmax: usize) -> Result<BoundReport> {
        self.require_delay_free()?;
        let (n, k, delta) = (self.n(), self.k(), self.degree());
        let mut lower = Vec::with_capacity(jmax + 1);
        let mut acc = 0;
        for i in 0..=jmax {
            acc += self.block_increment(i)?;
            lower.push(acc);
        }
        let upper = (0..=jmax)
            .map(|j| {
                (0..k)
                    .map(|r| {
                        // coefficients stop at the memory, which is δ for row-reduced codes
                        self.coeffs()
                            .iter()
                            .take(j + 1)
                            .map(|g| g.row(r).weight())
                            .sum::<usize>()
                    })
                    .min()
                    .expect("k >= 1")
            })
            .collect();
        let cap = (0..=jmax).map(|j| n * (j.min(delta) + 1)).collect();
        let column = (0..=jmax).map(|j| column_bound(n, k, j)).collect();
        Ok(BoundReport {
            lower,
            upper,
            cap,
            column,
            singleton: singleton_bound(n, k, delta),
            l_value: l_value(n, k, delta).ok(),
        })
    }

    /// `d_L^c` meets `(n - k)(L + 1) + 1`.
    pub fn is_mdp(&self) -> Result<bool> {
        let (n, k) = (self.n(), self.k());
        let l = l_value(n, k, self.degree())?;
        let d = match self.distance_profile(l, ProfileMethod::Trellis) {
            Ok(p) => p.values[l],
            Err(Error::ExhaustionGuard { .. }) => self.column_distance_exhaustive(l)?,
            Err(e) => return Err(e),
        };
        Ok(d == column_bound(n, k, l))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn code(n: usize, k: usize, blocks: &[&[&str]]) -> ConvCode {
        let coeffs = blocks
            .iter()
            .map(|b| BitMatrix::parse(b).unwrap())
            .collect();
        ConvCode::derive(n, k, coeffs).unwrap()
    }

    #[test]
    fn closed_forms() {
        assert_eq!(singleton_bound(2, 1, 1), 4);
        assert_eq!(column_bound(2, 1, 3), 5);
        assert_eq!(l_value(2, 1, 1).unwrap(), 2);
        assert!(l_value(1, 1, 1).is_err());
    }

    #[test]
    fn row_bounds_on_partial_simplex() {
        let c = code(4, 1, &[&["1111"], &["1010"], &["1100"]]);
        let b = c.bounds(4).unwrap();
        assert_eq!(b.lower, vec![4, 6, 8, 8, 8]);
        assert_eq!(b.upper, vec![4, 6, 8, 8, 8]);
        assert_eq!(b.cap, vec![4, 8, 12, 12, 12]);
        assert_eq!(b.column[2], 10);
    }

    #[test]
    fn mdp_check() {
        let c = code(2, 1, &[&["11"], &["10"]]);
        assert_eq!(c.column_distance_exhaustive(2).unwrap(), 3);
        assert!(!c.is_mdp().unwrap());
    }
}
