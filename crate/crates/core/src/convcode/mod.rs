//! Binary convolutional codes `G(z) = G_0 + G_1 z + ... + G_μ z^μ`.

mod bounds;
mod distance;
mod trellis;

pub use bounds::{column_bound, l_value, singleton_bound, BoundReport};
pub use distance::{DistanceProfile, ProfileMethod, TRELLIS_INPUT_GUARD, TRELLIS_MEMORY_GUARD};
pub use trellis::Encoder;

use crate::error::{Error, Result};
use crate::gf2::{BitMatrix, Poly2, PolyMatrix};

/// An `(n, k, δ)` binary convolutional code given by its coefficient matrices.
///
/// Construction validates shapes, drops trailing zero coefficients, requires
/// full rank over GF(2)[z] and checks the declared degree against the
/// maximal degree of the `k × k` minors.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ConvCode {
    n: usize,
    k: usize,
    coeffs: Vec<BitMatrix>,
    degree: usize,
}

impl ConvCode {
    pub fn new(n: usize, k: usize, coeffs: Vec<BitMatrix>, declared_degree: usize) -> Result<Self> {
        let code = Self::derive(n, k, coeffs)?;
        if code.degree != declared_degree {
            return Err(Error::DegreeMismatch {
                declared: declared_degree,
                measured: code.degree,
            });
        }
        Ok(code)
    }

    /// Like [`new`](Self::new) but takes the degree from the minors.
    pub fn derive(n: usize, k: usize, mut coeffs: Vec<BitMatrix>) -> Result<Self> {
        if n == 0 || k == 0 || k > n {
            return Err(Error::InvalidParameter(format!(
                "need 1 <= k <= n, got n={n}, k={k}"
            )));
        }
        if coeffs.is_empty() {
            return Err(Error::InvalidParameter(
                "at least one coefficient matrix is required".into(),
            ));
        }
        for g in &coeffs {
            if g.nrows() != k {
                return Err(Error::DimensionMismatch {
                    context: "coefficient row count",
                    expected: k,
                    found: g.nrows(),
                });
            }
            if g.ncols() != n {
                return Err(Error::DimensionMismatch {
                    context: "coefficient column count",
                    expected: n,
                    found: g.ncols(),
                });
            }
        }
        while coeffs.len() > 1 && coeffs.last().is_some_and(BitMatrix::is_zero) {
            coeffs.pop();
        }
        let mut code = Self {
            n,
            k,
            coeffs,
            degree: 0,
        };
        code.degree = code.measured_internal_degree()?;
        Ok(code)
    }

    fn measured_internal_degree(&self) -> Result<usize> {
        if self.k == 1 {
            return if self.coeffs.iter().all(BitMatrix::is_zero) {
                Err(Error::RankDeficient)
            } else {
                Ok(self.coeffs.len() - 1)
            };
        }
        self.poly_matrix()
            .minors()?
            .filter_map(|m| m.degree())
            .max()
            .ok_or(Error::RankDeficient)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// The degree δ (maximal degree of the `k × k` minors).
    pub fn degree(&self) -> usize {
        self.degree
    }

    /// `G_0, ..., G_μ` with `G_μ != 0` (except for the single zero block).
    pub fn coeffs(&self) -> &[BitMatrix] {
        &self.coeffs
    }

    /// `G_i`, zero beyond the memory.
    pub fn coeff(&self, i: usize) -> BitMatrix {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(|| BitMatrix::zeros(self.k, self.n))
    }

    /// The memory μ.
    pub fn memory(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn poly_matrix(&self) -> PolyMatrix {
        PolyMatrix::from_coefficients(&self.coeffs).expect("shapes validated on construction")
    }

    /// `(G_0^T ... G_μ^T)^T`.
    pub fn stacked(&self) -> BitMatrix {
        let blocks: Vec<&BitMatrix> = self.coeffs.iter().collect();
        BitMatrix::vstack(&blocks).expect("shapes validated on construction")
    }

    /// Row degrees ν_i; a zero row reports `None`.
    pub fn row_degrees(&self) -> Vec<Option<usize>> {
        (0..self.k)
            .map(|r| {
                (0..self.coeffs.len())
                    .rev()
                    .find(|&i| !self.coeffs[i].row(r).is_zero())
            })
            .collect()
    }

    /// Sum of the row degrees.
    pub fn external_degree(&self) -> usize {
        self.row_degrees().into_iter().flatten().sum()
    }

    pub fn internal_degree(&self) -> usize {
        self.degree
    }

    pub fn k_minors(&self) -> Vec<Poly2> {
        self.poly_matrix()
            .k_minors()
            .expect("k <= n validated on construction")
    }

    pub fn is_row_reduced(&self) -> bool {
        self.external_degree() == self.degree
    }

    /// `G_0` has full row rank.
    pub fn is_delay_free(&self) -> bool {
        self.coeffs[0].rank() == self.k
    }

    /// Sorted row degrees are `t` copies of ⌈δ/k⌉ followed by `k - t` copies of
    /// ⌊δ/k⌋, where `t = δ + k - k⌈δ/k⌉`.
    pub fn has_generic_row_degrees(&self) -> bool {
        let (d, k) = (self.degree, self.k);
        let hi = d.div_ceil(k);
        let t = d + k - k * hi;
        let mut got: Vec<usize> = self
            .row_degrees()
            .into_iter()
            .map(|v| v.unwrap_or(0))
            .collect();
        got.sort_unstable_by(|a, b| b.cmp(a));
        let expected: Vec<usize> = (0..k).map(|i| if i < t { hi } else { d / k }).collect();
        got == expected
    }

    /// The gcd of the `k × k` minors is 1.
    pub fn is_noncatastrophic(&self) -> bool {
        let mut g = Poly2::zero();
        for m in self
            .poly_matrix()
            .minors()
            .expect("k <= n validated on construction")
        {
            g = g.gcd(&m).unwrap_or_else(|_| Poly2::zero());
            if g.is_one() {
                return true;
            }
        }
        false
    }

    /// `G_j^c`: block `(r, s)` is `G_{s-r}` for `s >= r`.
    pub fn sliding_matrix(&self, j: usize) -> BitMatrix {
        let (k, n) = (self.k, self.n);
        let mut m = BitMatrix::zeros((j + 1) * k, (j + 1) * n);
        for r in 0..=j {
            for (i, g) in self.coeffs.iter().enumerate().take(j - r + 1) {
                let s = r + i;
                for row in 0..k {
                    for c in g.row(row).iter_ones() {
                        m.set(r * k + row, s * n + c, true);
                    }
                }
            }
        }
        m
    }

    /// Applies one column permutation to every coefficient matrix.
    pub fn permute_columns(&self, perm: &[usize]) -> Result<Self> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|g| g.permute_columns(perm))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            n: self.n,
            k: self.k,
            coeffs,
            degree: self.degree,
        })
    }

    pub(crate) fn require_delay_free(&self) -> Result<()> {
        if self.is_delay_free() {
            Ok(())
        } else {
            Err(Error::NotDelayFree)
        }
    }
}
