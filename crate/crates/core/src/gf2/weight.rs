//! Exhaustive minimum-weight scans over the row space of a small matrix.

use super::matrix::BitMatrix;
use crate::error::{Error, Result};
use crate::par;

/// Largest message length (matrix row count) any exhaustive scan will enumerate.
pub const MESSAGE_GUARD: usize = 30;

// messages are enumerated in Gray-code order inside chunks of 2^CHUNK_BITS
const CHUNK_BITS: usize = 12;

/// Minimum weight of `u·m` over all messages `u` (bit `i` selects row `i`) with
/// `u & required != 0`. Pass `u64::MAX` to admit every nonzero message.
///
/// Returns `None` when no message is admissible.
pub fn min_weight(m: &BitMatrix, required: u64) -> Result<Option<usize>> {
    let rows = m.nrows();
    if rows > MESSAGE_GUARD {
        return Err(Error::ExhaustionGuard {
            bits: rows,
            limit: MESSAGE_GUARD,
        });
    }
    let required = required & ((1u64 << rows) - 1);
    if required == 0 {
        return Ok(None);
    }
    let words: Vec<&[u64]> = m.rows().iter().map(|r| r.words()).collect();
    let nwords = words.first().map_or(0, |w| w.len());
    let best = if nwords <= 1 {
        let single: Vec<u64> = words
            .iter()
            .map(|w| w.first().copied().unwrap_or(0))
            .collect();
        scan(rows, |chunk, low| {
            scan_chunk_single(&single, chunk, low, required)
        })
    } else {
        scan(rows, |chunk, low| {
            scan_chunk_multi(&words, nwords, chunk, low, required)
        })
    };
    Ok((best != usize::MAX).then_some(best))
}

fn scan<F>(rows: usize, chunk_min: F) -> usize
where
    F: Fn(u64, usize) -> usize + Sync + Send,
{
    let low = rows.min(CHUNK_BITS);
    let chunks = 1u64 << (rows - low);
    par::map_reduce(0..chunks, usize::MAX, |c| chunk_min(c, low), usize::min)
}

fn scan_chunk_single(rows: &[u64], chunk: u64, low: usize, required: u64) -> usize {
    let mut cur = 0u64;
    for (b, r) in rows[low..].iter().enumerate() {
        if (chunk >> b) & 1 == 1 {
            cur ^= r;
        }
    }
    let hi = chunk << low;
    let mut gray = 0u64;
    let mut best = usize::MAX;
    for i in 0..(1u64 << low) {
        if i > 0 {
            let t = i.trailing_zeros() as usize;
            gray ^= 1 << t;
            cur ^= rows[t];
        }
        let msg = hi | gray;
        if msg & required != 0 {
            best = best.min(cur.count_ones() as usize);
        }
    }
    best
}

fn scan_chunk_multi(
    rows: &[&[u64]],
    nwords: usize,
    chunk: u64,
    low: usize,
    required: u64,
) -> usize {
    let mut cur = vec![0u64; nwords];
    for (b, r) in rows[low..].iter().enumerate() {
        if (chunk >> b) & 1 == 1 {
            xor_into(&mut cur, r);
        }
    }
    let hi = chunk << low;
    let mut gray = 0u64;
    let mut best = usize::MAX;
    for i in 0..(1u64 << low) {
        if i > 0 {
            let t = i.trailing_zeros() as usize;
            gray ^= 1 << t;
            xor_into(&mut cur, rows[t]);
        }
        let msg = hi | gray;
        if msg & required != 0 {
            let w: usize = cur.iter().map(|x| x.count_ones() as usize).sum();
            best = best.min(w);
        }
    }
    best
}

#[inline]
fn xor_into(acc: &mut [u64], row: &[u64]) {
    for (a, r) in acc.iter_mut().zip(row) {
        *a ^= r;
    }
}
