//! Codes whose stacked coefficient matrix is built from partial simplex columns.
//!
//! For `k = 1` the stacked matrix `(G_0^T ... G_δ^T)^T` has `δ + 1` rows. For
//! `k > 1` it has `δ + k` rows: `G_0 .. G_{μ-1}` take `k` rows each, with
//! `μ = ⌈δ/k⌉`, and the remaining `t = δ + k - kμ` rows become the leading rows
//! of `G_μ`, whose last `kμ - δ` rows are zero.

use std::fmt;

use crate::convcode::{ConvCode, DistanceProfile, ProfileMethod};
use crate::error::{Error, Result};
use crate::gf2::{BitMatrix, BitVec};
use crate::optsearch;
use crate::simplex::{column, k_partial_simplex, m_fold, partial_simplex};

/// Fixed optimal last row for the `δ = 3` residual columns.
pub const CANONICAL_G3: &str = "11100001";

/// Which construction produced a code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Provenance {
    RateOneNExact,
    TableExtension { delta: usize, s: usize },
    NearOptimal { exponents: Vec<usize> },
    KPartialExact,
    KPartialExtension,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Provenance::RateOneNExact => f.write_str("rate-1/n exact"),
            Provenance::TableExtension { s, .. } => write!(f, "table-backed extension, s={s}"),
            Provenance::NearOptimal { exponents } => {
                let a: Vec<String> = exponents.iter().map(ToString::to_string).collect();
                write!(f, "near-optimal, exponents ({})", a.join(","))
            }
            Provenance::KPartialExact => f.write_str("k-partial exact"),
            Provenance::KPartialExtension => f.write_str(
                "k-partial extension (search-based, optimal up to the residual search horizon)",
            ),
        }
    }
}

/// Columns appended to the folded base.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtensionChoice {
    pub width: usize,
    /// `(δ + k) × width`, each column taken from the canonical k-partial set.
    pub columns: BitMatrix,
    /// `a_1 > ... > a_b` when the near-optimal layout was used.
    pub exponents: Option<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstructionPlan {
    pub n: usize,
    pub k: usize,
    pub delta: usize,
    pub m: usize,
    pub n1: usize,
    pub extension: ExtensionChoice,
    pub provenance: Provenance,
}

#[derive(Clone, Debug)]
pub struct Construction {
    pub code: ConvCode,
    pub plan: ConstructionPlan,
}

/// Base block length: `2^δ` for `k = 1`, `2^δ (2^k - 1)` otherwise.
pub fn base_length(k: usize, delta: usize) -> usize {
    (1usize << delta) * ((1usize << k) - 1)
}

/// Splits a `(δ + k)`-row stacked matrix into `G_0 .. G_μ`.
pub fn split_stacked(stacked: &BitMatrix, k: usize, delta: usize) -> Result<Vec<BitMatrix>> {
    if k == 0 {
        return Err(Error::InvalidParameter("k must be positive".into()));
    }
    if stacked.nrows() != delta + k {
        return Err(Error::DimensionMismatch {
            context: "stacked matrix rows (delta + k)",
            expected: delta + k,
            found: stacked.nrows(),
        });
    }
    let mu = delta.div_ceil(k);
    let mut coeffs: Vec<BitMatrix> = (0..mu)
        .map(|i| stacked.row_slice(i * k..(i + 1) * k))
        .collect();
    let mut last = stacked.row_slice(k * mu..delta + k);
    let pad = BitMatrix::zeros(k * mu - delta, stacked.ncols());
    if pad.nrows() > 0 {
        last = BitMatrix::vstack(&[&last, &pad])?;
    }
    coeffs.push(last);
    Ok(coeffs)
}

/// The code with the given stacked matrix; errors unless its degree is `delta`.
pub fn code_from_stacked(stacked: &BitMatrix, k: usize, delta: usize) -> Result<ConvCode> {
    ConvCode::new(stacked.ncols(), k, split_stacked(stacked, k, delta)?, delta)
}

/// The `(m 2^δ, 1, δ)` code with stacked matrix `S(δ+1)_1^m`.
pub fn construct_rate_1_n(m: usize, delta: usize) -> Result<ConvCode> {
    code_from_stacked(&m_fold(&partial_simplex(delta + 1)?, m)?, 1, delta)
}

/// `d_j = n + min(j, δ) n/2` with free distance `n + δ n/2`.
pub fn predicted_profile_rate_1_n(n: usize, delta: usize, jmax: usize) -> Result<DistanceProfile> {
    if n == 0 || !n.is_multiple_of(1 << delta) {
        return Err(Error::InvalidParameter(format!(
            "2^{delta} does not divide n = {n}"
        )));
    }
    Ok(DistanceProfile {
        values: (0..=jmax).map(|j| n + j.min(delta) * n / 2).collect(),
        free_distance: Some(n + delta * n / 2),
        method: ProfileMethod::Predicted,
    })
}

/// `[S(3)_1^2 ; g3]`, a column permutation of `S(4)_1` when `g3` is admissible.
pub fn residual_table_d3(g3: &BitVec) -> Result<BitMatrix> {
    let top = m_fold(&partial_simplex(3)?, 2)?;
    let row = BitMatrix::from_rows(g3.len(), vec![g3.clone()])?;
    BitMatrix::vstack(&[&top, &row])
}

/// `[[S(3)_1^2 S(3)_1^2] ; [g3 g3]]`: the two-fold `S(4)_1` in the recursive layout.
pub fn recursive_s4_twofold(g3: &BitVec) -> Result<BitMatrix> {
    m_fold(&residual_table_d3(g3)?, 2)
}

/// `(g3^1 g3^1 g3^2 g3^2)` for the halves `g3^1, g3^2` of `g3`.
pub fn g4_from_g3(g3: &BitVec) -> BitVec {
    let half = g3.len() / 2;
    let (a, b) = (g3.prefix(half), BitVec::from_bools(g3.iter().skip(half)));
    a.concat(&a).concat(&b).concat(&b)
}

/// `[recursive S(4)_1 twofold ; g4]`.
pub fn residual_table_d4(g3: &BitVec, g4: &BitVec) -> Result<BitMatrix> {
    let top = recursive_s4_twofold(g3)?;
    let row = BitMatrix::from_rows(g4.len(), vec![g4.clone()])?;
    BitMatrix::vstack(&[&top, &row])
}

fn canonical_g3() -> BitVec {
    CANONICAL_G3.parse().expect("valid bit string")
}

/// Residual columns for `n ≡ s (mod 2^δ)`, `1 <= δ <= 4`.
fn residual_columns(delta: usize, s: usize) -> Result<BitMatrix> {
    let s21 = partial_simplex(2)?;
    let s31 = partial_simplex(3)?;
    Ok(match delta {
        // (1,1)
        1 => s21.select_columns(&[0]),
        2 => match s {
            // (1,0,0)
            1 => s31.select_columns(&[3]),
            // (1,1,1), (1,0,1)
            2 => s31.select_columns(&[0, 1]),
            // (1,1,1), (1,0,1), (1,1,0)
            _ => s31.select_columns(&[0, 1, 2]),
        },
        3 => residual_table_d3(&canonical_g3())?.prefix_columns(s),
        4 => {
            let g3 = canonical_g3();
            residual_table_d4(&g3, &g4_from_g3(&g3))?.prefix_columns(s)
        }
        _ => {
            return Err(Error::InvalidParameter(format!(
                "no residual table for delta = {delta}; use construct_near_optimal"
            )))
        }
    })
}

fn with_base(base_fold: usize, base: &BitMatrix, extra: &BitMatrix) -> Result<BitMatrix> {
    if base_fold == 0 {
        return Ok(extra.clone());
    }
    let folded = m_fold(base, base_fold)?;
    BitMatrix::hstack(&[&folded, extra])
}

/// `(n, 1, δ)` code from `S(δ+1)_1^⌊n/2^δ⌋` plus the tabulated residual columns.
pub fn construct_extended(n: usize, delta: usize) -> Result<ConvCode> {
    Ok(plan_extended(n, delta)?.code)
}

fn plan_extended(n: usize, delta: usize) -> Result<Construction> {
    if !(1..=4).contains(&delta) {
        return Err(Error::InvalidParameter(format!(
            "tabulated extensions exist for 1 <= delta <= 4 (got {delta}); use construct_near_optimal"
        )));
    }
    if n == 0 {
        return Err(Error::InvalidParameter("n must be positive".into()));
    }
    let base = 1usize << delta;
    let (m, s) = (n / base, n % base);
    if s == 0 {
        return plan_rate_1_n(m, delta);
    }
    let extra = residual_columns(delta, s)?;
    let stacked = with_base(m, &partial_simplex(delta + 1)?, &extra)?;
    let code = code_from_stacked(&stacked, 1, delta)?;
    Ok(Construction {
        code,
        plan: ConstructionPlan {
            n,
            k: 1,
            delta,
            m,
            n1: m * base,
            extension: ExtensionChoice {
                width: s,
                columns: extra,
                exponents: None,
            },
            provenance: Provenance::TableExtension { delta, s },
        },
    })
}

fn plan_rate_1_n(m: usize, delta: usize) -> Result<Construction> {
    let code = construct_rate_1_n(m, delta)?;
    Ok(Construction {
        plan: ConstructionPlan {
            n: code.n(),
            k: 1,
            delta,
            m,
            n1: code.n(),
            extension: ExtensionChoice {
                width: 0,
                columns: BitMatrix::zeros(delta + 1, 0),
                exponents: None,
            },
            provenance: Provenance::RateOneNExact,
        },
        code,
    })
}

/// Exponents `a_1 > ... > a_b >= 1` with `Σ 2^(a_i - 1) = r`.
pub fn binary_decomposition(r: usize) -> Vec<usize> {
    (0..usize::BITS as usize)
        .rev()
        .filter(|&b| (r >> b) & 1 == 1)
        .map(|b| b + 1)
        .collect()
}

/// The near-optimal layout: blocks `S(a_1)_1, S(a_2)_1, ...` on top of the
/// extension, the remaining rows of each column filled with the unused
/// `S(δ+1)_1` column of smallest canonical index that extends it.
///
/// Returns the code and the per-`j` lower bound for `j <= δ`.
pub fn construct_near_optimal(n: usize, delta: usize) -> Result<(ConvCode, Vec<usize>)> {
    let c = plan_near_optimal(n, delta)?;
    let bound = near_optimal_bound(n, delta)?;
    Ok((c.code, bound))
}

fn plan_near_optimal(n: usize, delta: usize) -> Result<Construction> {
    if n == 0 {
        return Err(Error::InvalidParameter("n must be positive".into()));
    }
    let base = 1usize << delta;
    let (m, r) = (n / base, n % base);
    if r == 0 {
        return plan_rate_1_n(m, delta);
    }
    let exponents = binary_decomposition(r);
    let mut used = vec![false; base];
    let mut cols = Vec::with_capacity(r);
    for &a in &exponents {
        let block = partial_simplex(a)?;
        for c in 0..block.ncols() {
            let top = block.column_u64(c);
            // canonical index i of S(δ+1)_1 is w = 2^δ - 1 - i
            let pick = (0..base)
                .find(|&i| !used[i] && (base - 1 - i) as u64 & ((1 << (a - 1)) - 1) == top >> 1)
                .expect("each top pattern has 2^(δ+1-a) completions");
            used[pick] = true;
            cols.push(column(1, (base - 1 - pick) as u64, 1, delta));
        }
    }
    let extra = BitMatrix::from_columns(delta + 1, &cols)?;
    let stacked = with_base(m, &partial_simplex(delta + 1)?, &extra)?;
    let code = code_from_stacked(&stacked, 1, delta)?;
    Ok(Construction {
        code,
        plan: ConstructionPlan {
            n,
            k: 1,
            delta,
            m,
            n1: m * base,
            extension: ExtensionChoice {
                width: r,
                columns: extra,
                exponents: Some(exponents.clone()),
            },
            provenance: Provenance::NearOptimal { exponents },
        },
    })
}

/// `b_0 = n`, `b_j = b_{j-1} + n_1/2 + Σ_{a_i > j} 2^(a_i - 2)` for `1 <= j <= δ`.
pub fn near_optimal_bound(n: usize, delta: usize) -> Result<Vec<usize>> {
    if n == 0 {
        return Err(Error::InvalidParameter("n must be positive".into()));
    }
    let base = 1usize << delta;
    let n1 = (n / base) * base;
    let exponents = binary_decomposition(n - n1);
    let mut out = vec![n];
    for j in 1..=delta {
        let extra: usize = exponents
            .iter()
            .filter(|&&a| a > j)
            .map(|&a| 1 << (a - 2))
            .sum();
        out.push(out[j - 1] + n1 / 2 + extra);
    }
    Ok(out)
}

/// The `(m 2^δ (2^k - 1), k, δ)` code with stacked matrix `S(δ+k)_k^m`.
pub fn construct_k_dim(m: usize, k: usize, delta: usize) -> Result<ConvCode> {
    code_from_stacked(&m_fold(&k_partial_simplex(k, delta)?, m)?, k, delta)
}

/// `d_j = n 2^(k-1)/(2^k - 1) + min(j, ⌊δ/k⌋) n/2`.
pub fn predicted_profile_k_dim(
    n: usize,
    k: usize,
    delta: usize,
    jmax: usize,
) -> Result<DistanceProfile> {
    let base = base_length(k, delta);
    if k == 0 || n == 0 || !n.is_multiple_of(base) {
        return Err(Error::InvalidParameter(format!(
            "2^{delta}(2^{k}-1) = {base} does not divide n = {n}"
        )));
    }
    let d0 = n / ((1 << k) - 1) * (1 << (k - 1));
    Ok(DistanceProfile {
        values: (0..=jmax).map(|j| d0 + j.min(delta / k) * n / 2).collect(),
        free_distance: None,
        method: ProfileMethod::Predicted,
    })
}

/// `S(δ+k)_k^m` plus extra canonical columns chosen by the greedy residual search.
pub fn construct_k_dim_extended(n: usize, k: usize, delta: usize) -> Result<ConvCode> {
    Ok(plan_k_dim(n, k, delta)?.code)
}

fn plan_k_dim(n: usize, k: usize, delta: usize) -> Result<Construction> {
    if k == 0 || n == 0 {
        return Err(Error::InvalidParameter("n and k must be positive".into()));
    }
    let base_len = base_length(k, delta);
    let (m, r) = (n / base_len, n % base_len);
    let base = k_partial_simplex(k, delta)?;
    let folded = if m == 0 {
        BitMatrix::zeros(delta + k, 0)
    } else {
        m_fold(&base, m)?
    };
    let extra = if r == 0 {
        BitMatrix::zeros(delta + k, 0)
    } else {
        optsearch::search_optimal_extension(&folded, k, delta, r, delta + 5)?
    };
    let stacked = BitMatrix::hstack(&[&folded, &extra])?;
    let code = code_from_stacked(&stacked, k, delta)?;
    let provenance = match (r, k) {
        (0, 1) => Provenance::RateOneNExact,
        (0, _) => Provenance::KPartialExact,
        _ => Provenance::KPartialExtension,
    };
    Ok(Construction {
        code,
        plan: ConstructionPlan {
            n,
            k,
            delta,
            m,
            n1: m * base_len,
            extension: ExtensionChoice {
                width: r,
                columns: extra,
                exponents: None,
            },
            provenance,
        },
    })
}

/// Picks the construction for `(n, k, δ)`.
///
/// `k = 1`: exact multiples use the folded partial simplex, `δ <= 4` uses the
/// tabulated residuals, larger `δ` the near-optimal layout. `k > 1`: the folded
/// k-partial simplex, extended by search when `n` is not a multiple.
pub fn construct(n: usize, k: usize, delta: usize) -> Result<Construction> {
    if n == 0 || k == 0 || k > n {
        return Err(Error::InvalidParameter(format!(
            "need 1 <= k <= n, got n={n}, k={k}"
        )));
    }
    if k > 1 {
        return plan_k_dim(n, k, delta);
    }
    let base = 1usize << delta;
    if n.is_multiple_of(base) {
        return plan_rate_1_n(n / base, delta);
    }
    if delta <= 4 {
        match plan_extended(n, delta) {
            Err(Error::DegreeMismatch { .. }) => {}
            other => return other,
        }
    }
    plan_near_optimal(n, delta)
}
