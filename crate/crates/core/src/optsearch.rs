//! Exhaustive searches: optimal residual rows and the brute-force optimality oracle.

use std::collections::BTreeMap;
use std::ops::RangeInclusive;

use itertools::Itertools;

use crate::construct::{code_from_stacked, split_stacked};
use crate::convcode::{ConvCode, DistanceProfile, ProfileMethod};
use crate::error::{Error, Result};
use crate::gf2::{min_weight, BitMatrix, BitVec, MESSAGE_GUARD};
use crate::par;
use crate::simplex::k_partial_simplex;

/// Largest candidate row length for [`search_optimal_row`].
pub const ROW_SEARCH_GUARD: usize = 24;
/// Largest `k n (δ + 1)` for the brute-force oracle.
pub const BRUTE_FORCE_GUARD: usize = 24;

const CHUNK_BITS: u32 = 10;

/// `wt^s` for each `s` in `widths`: the minimum weight of `u·M_s` over nonzero
/// messages `u`, where `M_s` is the first `s` columns of `stacked`. A rank
/// deficient `M_s` gives 0.
pub fn wt_profile(stacked: &BitMatrix, widths: RangeInclusive<usize>) -> Result<Vec<usize>> {
    if stacked.nrows() == 0 || stacked.ncols() == 0 {
        return Err(Error::InvalidParameter(
            "stacked matrix must be nonempty".into(),
        ));
    }
    if *widths.end() > stacked.ncols() {
        return Err(Error::DimensionMismatch {
            context: "wt profile width",
            expected: stacked.ncols(),
            found: *widths.end(),
        });
    }
    widths
        .map(|s| Ok(min_weight(&stacked.prefix_columns(s), u64::MAX)?.expect("rows >= 1")))
        .collect()
}

/// How candidate rows are ranked by [`search_optimal_row_with`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum RowOrder {
    /// Compare `(wt^1, ..., wt^w)` lexicographically.
    #[default]
    Lexicographic,
    /// Compare only `wt^w`, the minimum weight of the whole block.
    FinalWidth,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RowSearchResult {
    /// Sorted by the integer value of the row (coordinate 0 least significant).
    pub optimal_rows: Vec<BitVec>,
    /// `wt^1 .. wt^w` achieved by every optimal row.
    pub profile: Vec<usize>,
    pub evaluated: u64,
}

/// Which rows a search considers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum RowLayout {
    /// Every row of the given width.
    #[default]
    Any,
    /// Rows `(p p q q)` built from `(p q)` the way the top of the recursive
    /// two-fold layout is built. Width must be a multiple of 4.
    Doubled,
}

impl RowLayout {
    fn free_bits(self, width: usize) -> Result<usize> {
        match self {
            RowLayout::Any => Ok(width),
            RowLayout::Doubled if width.is_multiple_of(4) => Ok(width / 2),
            RowLayout::Doubled => Err(Error::InvalidParameter(format!(
                "doubled rows need a width divisible by 4, got {width}"
            ))),
        }
    }

    fn expand(self, h: u64, width: usize) -> u64 {
        match self {
            RowLayout::Any => h,
            RowLayout::Doubled => {
                let q = width / 4;
                let mask = (1u64 << q) - 1;
                let (p, r) = (h & mask, (h >> q) & mask);
                p | p << q | r << (2 * q) | r << (3 * q)
            }
        }
    }
}

/// Every row `g` maximizing the `wt` profile of `[top; g]` lexicographically.
pub fn search_optimal_row(top: &BitMatrix) -> Result<RowSearchResult> {
    search_optimal_row_with(top, RowOrder::Lexicographic)
}

pub fn search_optimal_row_with(top: &BitMatrix, order: RowOrder) -> Result<RowSearchResult> {
    search_optimal_row_in(top, order, RowLayout::Any)
}

pub fn search_optimal_row_in(
    top: &BitMatrix,
    order: RowOrder,
    layout: RowLayout,
) -> Result<RowSearchResult> {
    let (rows, width) = (top.nrows(), top.ncols());
    if width == 0 || width > ROW_SEARCH_GUARD {
        return Err(Error::ExhaustionGuard {
            bits: width,
            limit: ROW_SEARCH_GUARD,
        });
    }
    let free = layout.free_bits(width)?;
    if rows + 1 > MESSAGE_GUARD {
        return Err(Error::ExhaustionGuard {
            bits: rows + 1,
            limit: MESSAGE_GUARD,
        });
    }
    // codewords of the top rows alone; width <= 24 so one word suffices
    let mut top_cw = vec![0u64; 1 << rows];
    for v in 1usize..1 << rows {
        let low = v.trailing_zeros() as usize;
        top_cw[v] = top_cw[v & (v - 1)] ^ top.row(low).low_u64();
    }
    let prefix_mask = |s: usize| (1u64 << s) - 1;
    // messages that leave g out do not depend on the candidate
    let fixed: Vec<u32> = (1..=width)
        .map(|s| {
            top_cw[1..]
                .iter()
                .map(|cw| (cw & prefix_mask(s)).count_ones())
                .min()
                .unwrap_or(u32::MAX)
        })
        .collect();

    let key = |profile: &[u32]| -> Vec<u32> {
        match order {
            RowOrder::Lexicographic => profile.to_vec(),
            RowOrder::FinalWidth => vec![profile[width - 1]],
        }
    };
    let evaluate = |g: u64| -> Vec<u32> {
        let mut profile = fixed.clone();
        for cw in &top_cw {
            let x = cw ^ g;
            for (s, p) in profile.iter_mut().enumerate() {
                *p = (*p).min((x & prefix_mask(s + 1)).count_ones());
            }
        }
        profile
    };

    let chunk_bits = (free as u32).min(CHUNK_BITS);
    let chunks = 1u64 << (free as u32 - chunk_bits);
    type Best = Option<(Vec<u32>, Vec<u64>)>;
    let merge = |a: Best, b: Best| -> Best {
        match (a, b) {
            (None, x) | (x, None) => x,
            (Some((ka, mut ra)), Some((kb, rb))) => match ka.cmp(&kb) {
                std::cmp::Ordering::Greater => Some((ka, ra)),
                std::cmp::Ordering::Less => Some((kb, rb)),
                std::cmp::Ordering::Equal => {
                    ra.extend(rb);
                    Some((ka, ra))
                }
            },
        }
    };
    let best = par::map_reduce(
        0..chunks,
        None,
        |chunk| {
            let mut local: Best = None;
            for low in 0..1u64 << chunk_bits {
                let g = layout.expand((chunk << chunk_bits) | low, width);
                let k = key(&evaluate(g));
                local = merge(local, Some((k, vec![g])));
            }
            local
        },
        merge,
    );
    let (_, mut winners) = best.expect("at least one candidate");
    winners.sort_unstable();
    let profile = evaluate(winners[0])
        .into_iter()
        .map(|w| w as usize)
        .collect();
    Ok(RowSearchResult {
        optimal_rows: winners
            .into_iter()
            .map(|g| BitVec::from_u64(g, width))
            .collect(),
        profile,
        evaluated: 1 << free,
    })
}

/// Per-block lower increments of a `(δ + k)`-row residual: for each `i <= μ` the
/// lightest block-`i` output with `u_0 != 0`.
fn residual_increments(residual: &BitMatrix, k: usize, delta: usize) -> Result<Vec<usize>> {
    if residual.ncols() == 0 {
        return Ok(Vec::new());
    }
    let coeffs = split_stacked(residual, k, delta)?;
    (0..coeffs.len())
        .map(|i| {
            let blocks: Vec<&BitMatrix> = coeffs[..=i].iter().rev().collect();
            let stacked = BitMatrix::vstack(&blocks)?;
            Ok(min_weight(&stacked, (1u64 << k) - 1)?.unwrap_or(0))
        })
        .collect()
}

/// Greedily appends `width` columns of the canonical `S(δ+k)_k` to `base`.
///
/// Each step keeps the candidate maximizing, lexicographically, the residual
/// increments of the chosen columns and then the column-distance profile of
/// the combined code through `horizon`. Ties go to the smallest canonical index.
pub fn search_optimal_extension(
    base: &BitMatrix,
    k: usize,
    delta: usize,
    width: usize,
    horizon: usize,
) -> Result<BitMatrix> {
    let pool = k_partial_simplex(k, delta)?.columns();
    if base.nrows() != delta + k {
        return Err(Error::DimensionMismatch {
            context: "base rows (delta + k)",
            expected: delta + k,
            found: base.nrows(),
        });
    }
    let mut chosen: Vec<BitVec> = Vec::with_capacity(width);
    for step in 0..width {
        let last_step = step + 1 == width;
        let mut best: Option<((Vec<usize>, Vec<usize>), usize)> = None;
        for (idx, col) in pool.iter().enumerate() {
            let mut cols = chosen.clone();
            cols.push(col.clone());
            let residual = BitMatrix::from_columns(delta + k, &cols)?;
            let inc = residual_increments(&residual, k, delta)?;
            let stacked = BitMatrix::hstack(&[base, &residual])?;
            let profile = match code_from_stacked(&stacked, k, delta) {
                Ok(code) if code.is_delay_free() => code
                    .distance_profile(horizon, ProfileMethod::Trellis)
                    .map(|p| p.values)
                    .unwrap_or_default(),
                // an intermediate step may not reach the full degree yet
                _ if !last_step => Vec::new(),
                _ => continue,
            };
            let key = (inc, profile);
            if best.as_ref().is_none_or(|(b, _)| key > *b) {
                best = Some((key, idx));
            }
        }
        let (_, idx) = best.ok_or_else(|| {
            Error::InvalidParameter(format!(
                "no extension column yields a delay-free code of degree {delta}"
            ))
        })?;
        chosen.push(pool[idx].clone());
    }
    BitMatrix::from_columns(delta + k, &chosen)
}

/// Outcome of the brute-force comparison.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OptimalityVerdict {
    /// No code beats the candidate through the horizon and no tied code can
    /// overtake it later.
    pub optimal: bool,
    pub horizon: usize,
    /// A code whose profile is lexicographically larger, when one exists.
    pub witness: Option<ConvCode>,
    /// Some code not equivalent to the candidate ties it through the horizon.
    pub ties_at_horizon: bool,
    /// Tied codes whose column distances could still exceed the candidate's
    /// beyond the horizon.
    pub unresolved_ties: usize,
    /// Equivalence classes attaining the best profile.
    pub maximal_classes: usize,
    pub candidate_profile: Vec<usize>,
    pub best_profile: Vec<usize>,
}

impl OptimalityVerdict {
    pub fn inconclusive(&self) -> bool {
        self.witness.is_none() && self.unresolved_ties > 0
    }
}

/// Result of [`best_profile_bruteforce`].
#[derive(Clone, Debug)]
pub struct BruteForce {
    pub profile: DistanceProfile,
    /// The maximal code of smallest enumeration index.
    pub witness: ConvCode,
    /// Canonical form of each maximal class with the supremum bound of its
    /// column distances.
    pub classes: BTreeMap<Vec<u64>, usize>,
    pub enumerated: u64,
}

/// Canonical form up to column permutation and constant invertible row
/// transforms: the smallest sorted column list over all transforms.
pub fn canonical_form(code: &ConvCode, delta: usize) -> Vec<u64> {
    let k = code.k();
    let coeffs: Vec<BitMatrix> = (0..=delta.max(code.memory()))
        .map(|i| code.coeff(i))
        .collect();
    let transforms = invertible_matrices(k);
    transforms
        .iter()
        .map(|a| {
            let mut cols: Vec<u64> = (0..code.n())
                .map(|c| {
                    let mut v = 0u64;
                    for (i, g) in coeffs.iter().enumerate() {
                        for r in 0..k {
                            // row r of A·G_i is the sum of the rows of G_i selected by a[r]
                            let bit = (0..k)
                                .filter(|&s| (a[r] >> s) & 1 == 1)
                                .fold(false, |acc, s| acc ^ g.get(s, c));
                            if bit {
                                v |= 1 << (i * k + r);
                            }
                        }
                    }
                    v
                })
                .collect();
            cols.sort_unstable();
            cols
        })
        .min()
        .expect("identity is invertible")
}

/// Every invertible `k × k` matrix over GF(2), row `r` as the bit mask `a[r]`.
fn invertible_matrices(k: usize) -> Vec<Vec<u64>> {
    (0..k)
        .map(|_| 1u64..1 << k)
        .multi_cartesian_product()
        .filter(|rows| {
            let m = BitMatrix::from_rows(k, rows.iter().map(|&r| BitVec::from_u64(r, k)).collect())
                .expect("k columns");
            m.rank() == k
        })
        .collect()
}

fn coefficients_from_index(idx: u64, n: usize, k: usize, blocks: usize) -> Vec<BitMatrix> {
    (0..blocks)
        .map(|i| {
            let rows = (0..k)
                .map(|r| BitVec::from_u64(idx >> ((i * k + r) * n), n))
                .collect();
            BitMatrix::from_rows(n, rows).expect("n columns")
        })
        .collect()
}

#[derive(Clone)]
struct Scan {
    profile: Vec<usize>,
    witness: u64,
    classes: BTreeMap<Vec<u64>, usize>,
}

fn merge_scan(a: Option<Scan>, b: Option<Scan>) -> Option<Scan> {
    match (a, b) {
        (None, x) | (x, None) => x,
        (Some(mut a), Some(b)) => match a.profile.cmp(&b.profile) {
            std::cmp::Ordering::Greater => Some(a),
            std::cmp::Ordering::Less => Some(b),
            std::cmp::Ordering::Equal => {
                a.witness = a.witness.min(b.witness);
                a.classes.extend(b.classes);
                Some(a)
            }
        },
    }
}

/// Lexicographically largest column-distance profile through `horizon` over
/// every delay-free `(n, k, δ)` code with coefficients `G_0 .. G_δ`.
pub fn best_profile_bruteforce(
    n: usize,
    k: usize,
    delta: usize,
    horizon: usize,
) -> Result<BruteForce> {
    if n == 0 || k == 0 || k > n {
        return Err(Error::InvalidParameter(format!(
            "need 1 <= k <= n, got n={n}, k={k}"
        )));
    }
    let bits = k * n * (delta + 1);
    if bits > BRUTE_FORCE_GUARD {
        return Err(Error::ExhaustionGuard {
            bits,
            limit: BRUTE_FORCE_GUARD,
        });
    }
    let total = 1u64 << bits;
    let chunk_bits = (bits as u32).min(CHUNK_BITS);
    let scan = par::map_reduce(
        0..total >> chunk_bits,
        None,
        |chunk| {
            let mut local: Option<Scan> = None;
            for low in 0..1u64 << chunk_bits {
                let idx = (chunk << chunk_bits) | low;
                let coeffs = coefficients_from_index(idx, n, k, delta + 1);
                if coeffs[0].rank() != k || (k == 1 && coeffs[delta].is_zero()) {
                    continue;
                }
                let Ok(code) = ConvCode::new(n, k, coeffs, delta) else {
                    continue;
                };
                let Ok(profile) = code.trellis_profile(horizon) else {
                    continue;
                };
                if local.as_ref().is_some_and(|l| l.profile > profile) {
                    continue;
                }
                let ceiling = code.column_distance_ceiling().unwrap_or(usize::MAX);
                let classes = BTreeMap::from([(canonical_form(&code, delta), ceiling)]);
                local = merge_scan(
                    local,
                    Some(Scan {
                        profile,
                        witness: idx,
                        classes,
                    }),
                );
            }
            local
        },
        merge_scan,
    )
    .ok_or_else(|| {
        Error::InvalidParameter(format!("no delay-free ({n},{k},{delta}) code exists"))
    })?;
    let witness = ConvCode::new(
        n,
        k,
        coefficients_from_index(scan.witness, n, k, delta + 1),
        delta,
    )?;
    Ok(BruteForce {
        profile: DistanceProfile {
            values: scan.profile,
            free_distance: None,
            method: ProfileMethod::Trellis,
        },
        witness,
        classes: scan.classes,
        enumerated: total,
    })
}

/// Compares `code` against every code with the same parameters.
pub fn verify_optimal(code: &ConvCode, horizon: usize) -> Result<OptimalityVerdict> {
    let delta = code.degree();
    let brute = best_profile_bruteforce(code.n(), code.k(), delta, horizon)?;
    let mine = code.trellis_profile(horizon)?;
    let best = brute.profile.values.clone();
    let own_class = canonical_form(code, delta);
    let beaten = best > mine;
    let last = *mine.last().expect("horizon + 1 values");
    let others: Vec<usize> = if beaten {
        Vec::new()
    } else {
        brute
            .classes
            .iter()
            .filter(|(form, _)| **form != own_class)
            .map(|(_, &ceiling)| ceiling)
            .collect()
    };
    let unresolved_ties = others.iter().filter(|&&ceiling| ceiling > last).count();
    Ok(OptimalityVerdict {
        optimal: !beaten && unresolved_ties == 0,
        horizon,
        witness: beaten.then(|| brute.witness.clone()),
        ties_at_horizon: !others.is_empty(),
        unresolved_ties,
        maximal_classes: brute.classes.len(),
        candidate_profile: mine,
        best_profile: best,
    })
}
