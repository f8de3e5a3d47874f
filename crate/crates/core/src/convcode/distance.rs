use std::cmp::Reverse;
use std::collections::BinaryHeap;

use super::trellis::Encoder;
use super::ConvCode;
use crate::error::{Error, Result};
use crate::gf2::{min_weight, MESSAGE_GUARD};
use crate::par;

/// Largest total encoder memory (state bits) the trellis routines accept.
pub const TRELLIS_MEMORY_GUARD: usize = 24;
/// Largest input width `k` the trellis routines accept.
pub const TRELLIS_INPUT_GUARD: usize = 16;

const UNREACHED: u32 = u32::MAX;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProfileMethod {
    /// Minimum weight over the rows of the sliding matrix.
    Exhaustive,
    /// Dynamic programming over the encoder state graph.
    Trellis,
    /// Closed form attached to a construction.
    Predicted,
}

/// Column distances `d_0 .. d_jmax`, optionally with the free distance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceProfile {
    pub values: Vec<usize>,
    pub free_distance: Option<usize>,
    pub method: ProfileMethod,
}

impl DistanceProfile {
    pub fn get(&self, j: usize) -> Option<usize> {
        self.values.get(j).copied()
    }
}

impl ConvCode {
    /// `d_j^c` from the sliding matrix, message prefixes with `u_0 != 0`.
    pub fn column_distance_exhaustive(&self, j: usize) -> Result<usize> {
        self.require_delay_free()?;
        let bits = self.k() * (j + 1);
        if bits > MESSAGE_GUARD {
            return Err(Error::ExhaustionGuard {
                bits,
                limit: MESSAGE_GUARD,
            });
        }
        let required = (1u64 << self.k()) - 1;
        Ok(
            min_weight(&self.sliding_matrix(j), required)?
                .expect("delay-free codes admit u_0 != 0"),
        )
    }

    /// `d_j^c` through the encoder trellis.
    pub fn column_distance_trellis(&self, j: usize) -> Result<usize> {
        Ok(self.trellis_profile(j)?[j])
    }

    pub fn distance_profile(&self, jmax: usize, method: ProfileMethod) -> Result<DistanceProfile> {
        let values = match method {
            ProfileMethod::Exhaustive => (0..=jmax)
                .map(|j| self.column_distance_exhaustive(j))
                .collect::<Result<Vec<_>>>()?,
            ProfileMethod::Trellis => self.trellis_profile(jmax)?,
            ProfileMethod::Predicted => {
                return Err(Error::InvalidParameter(
                    "predicted profiles come from the construction functions".into(),
                ))
            }
        };
        Ok(DistanceProfile {
            values,
            free_distance: None,
            method,
        })
    }

    /// Profile plus free distance; the latter only for non-catastrophic codes.
    pub fn full_profile(&self, jmax: usize, method: ProfileMethod) -> Result<DistanceProfile> {
        let mut p = self.distance_profile(jmax, method)?;
        if self.is_noncatastrophic() {
            p.free_distance = Some(self.free_distance()?);
        }
        Ok(p)
    }

    /// Every `d_j^c` for `j <= jmax` in one forward pass.
    ///
    /// `dist[s]` is the lightest prefix ending in state `s`. Any state heavier
    /// than a codeword prefix bound for `jmax` cannot set a later minimum and
    /// is dropped.
    pub fn trellis_profile(&self, jmax: usize) -> Result<Vec<usize>> {
        self.require_delay_free()?;
        let enc = Encoder::new(self)?;
        trellis_profile_with(&enc, jmax, self.prefix_bound(jmax) as u32)
    }

    /// Weight of the lightest single-row impulse response through block `j`.
    fn prefix_bound(&self, j: usize) -> usize {
        (0..self.k())
            .map(|r| {
                self.coeffs()
                    .iter()
                    .take(j + 1)
                    .map(|g| g.row(r).weight())
                    .sum::<usize>()
            })
            .filter(|&w| w > 0)
            .min()
            .unwrap_or(usize::MAX)
    }

    /// Minimum weight of a nonzero finite codeword.
    pub fn free_distance(&self) -> Result<usize> {
        if !self.is_noncatastrophic() {
            return Err(Error::Catastrophic);
        }
        let enc = Encoder::new(self)?;
        Ok(free_distance_with(&enc))
    }

    /// Weight of the lightest finite codeword with `u_0 != 0`. No column
    /// distance exceeds it, catastrophic or not.
    pub fn column_distance_ceiling(&self) -> Result<usize> {
        self.require_delay_free()?;
        Ok(free_distance_with(&Encoder::new(self)?))
    }
}

pub(crate) fn trellis_profile_with(enc: &Encoder, jmax: usize, bound: u32) -> Result<Vec<usize>> {
    let states = enc.num_states();
    let mut dist = vec![UNREACHED; states];
    for u in 1..enc.num_inputs() {
        let s = enc.next_state(0, u) as usize;
        dist[s] = dist[s].min(enc.output_weight(0, u));
    }
    let mut out = Vec::with_capacity(jmax + 1);
    out.push(*dist.iter().min().expect("at least one state") as usize);
    let mut next = vec![UNREACHED; states];
    for _ in 1..=jmax {
        let prev = &dist;
        par::for_each_mut(&mut next, |t, slot| {
            let mut best = UNREACHED;
            enc.for_each_predecessor(t as u32, |s, u| {
                let d = prev[s as usize];
                if d != UNREACHED {
                    best = best.min(d + enc.output_weight(s, u));
                }
            });
            *slot = if best > bound { UNREACHED } else { best };
        });
        std::mem::swap(&mut dist, &mut next);
        let m = *dist.iter().min().expect("at least one state");
        if m == UNREACHED {
            return Err(Error::InvalidParameter(
                "trellis bound pruned every path".into(),
            ));
        }
        out.push(m as usize);
    }
    Ok(out)
}

/// Dijkstra from the zero state with a nonzero first input, stopping at the
/// first return to zero.
pub(crate) fn free_distance_with(enc: &Encoder) -> usize {
    let mut best = UNREACHED;
    let mut dist = vec![UNREACHED; enc.num_states()];
    let mut heap = BinaryHeap::new();
    for u in 1..enc.num_inputs() {
        let (s, w) = (enc.next_state(0, u), enc.output_weight(0, u));
        if s == 0 {
            best = best.min(w);
        } else if w < dist[s as usize] {
            dist[s as usize] = w;
            heap.push(Reverse((w, s)));
        }
    }
    while let Some(Reverse((d, s))) = heap.pop() {
        if d >= best {
            break;
        }
        if d > dist[s as usize] {
            continue;
        }
        for u in 0..enc.num_inputs() {
            let t = enc.next_state(s, u);
            let nd = d + enc.output_weight(s, u);
            if t == 0 {
                best = best.min(nd);
            } else if nd < dist[t as usize] {
                dist[t as usize] = nd;
                heap.push(Reverse((nd, t)));
            }
        }
    }
    best as usize
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf2::BitMatrix;

    fn code(n: usize, k: usize, blocks: &[&[&str]]) -> ConvCode {
        let coeffs = blocks
            .iter()
            .map(|b| BitMatrix::parse(b).unwrap())
            .collect();
        ConvCode::derive(n, k, coeffs).unwrap()
    }

    #[test]
    fn small_profiles() {
        let c = code(2, 1, &[&["11"], &["10"]]);
        for (j, want) in [(0, 2), (1, 3), (5, 3)] {
            assert_eq!(c.column_distance_exhaustive(j).unwrap(), want);
            assert_eq!(c.column_distance_trellis(j).unwrap(), want);
        }
        assert_eq!(c.free_distance().unwrap(), 3);

        let block = code(2, 1, &[&["11"]]);
        assert_eq!(
            block
                .distance_profile(3, ProfileMethod::Trellis)
                .unwrap()
                .values,
            vec![2; 4]
        );
        assert_eq!(block.free_distance().unwrap(), 2);

        let c = code(4, 1, &[&["1111"], &["1010"], &["1100"]]);
        let p = c.full_profile(5, ProfileMethod::Trellis).unwrap();
        assert_eq!(p.values, vec![4, 6, 8, 8, 8, 8]);
        assert_eq!(p.free_distance, Some(8));
        assert_eq!(
            c.distance_profile(5, ProfileMethod::Exhaustive)
                .unwrap()
                .values,
            p.values
        );

        let s2 = code(3, 2, &[&["110", "101"]]);
        assert_eq!(
            s2.distance_profile(3, ProfileMethod::Exhaustive)
                .unwrap()
                .values,
            vec![2; 4]
        );
        assert_eq!(
            s2.distance_profile(3, ProfileMethod::Trellis)
                .unwrap()
                .values,
            vec![2; 4]
        );
    }

    #[test]
    fn errors() {
        let c = code(2, 1, &[&["11"], &["11"]]);
        assert_eq!(c.free_distance(), Err(Error::Catastrophic));
        let c = code(2, 1, &[&["00"], &["11"]]);
        assert_eq!(c.column_distance_exhaustive(0), Err(Error::NotDelayFree));
        assert_eq!(c.column_distance_trellis(0), Err(Error::NotDelayFree));
        let c = code(2, 1, &[&["11"], &["10"]]);
        assert!(matches!(
            c.column_distance_exhaustive(30),
            Err(Error::ExhaustionGuard { .. })
        ));
    }
}
