//! Controller-canonical encoder: one shift register of length ν_i per input row.
//!
//! Row `i` owns state bits `off_i .. off_i + ν_i`; bit `off_i + l - 1` holds the
//! input of that row `l` steps ago. Output contributions are linear in the
//! state, so they come from two lookup tables indexed by the low and high
//! halves of the state word.

use super::distance::{TRELLIS_INPUT_GUARD, TRELLIS_MEMORY_GUARD};
use super::ConvCode;
use crate::error::{Error, Result};

const LOW_TABLE_BITS: usize = 12;

#[derive(Clone, Debug)]
pub struct Encoder {
    k: usize,
    nw: usize,
    memory: usize,
    /// `(row, offset)` for rows with positive degree.
    segments: Vec<(usize, usize)>,
    all_mask: u32,
    bottom_mask: u32,
    top_mask: u32,
    /// Inputs of degree-0 rows, as a mask over input bits.
    free_inputs: u64,
    /// `u -> u·G_0`, `nw` words per entry.
    input_out: Vec<u64>,
    /// `u -> register bits fed by u`.
    spread: Vec<u32>,
    low_bits: usize,
    mem_lo: Vec<u64>,
    mem_hi: Vec<u64>,
}

impl Encoder {
    pub fn new(code: &ConvCode) -> Result<Self> {
        let (k, n) = (code.k(), code.n());
        let nu: Vec<usize> = code
            .row_degrees()
            .into_iter()
            .map(|d| d.unwrap_or(0))
            .collect();
        let memory: usize = nu.iter().sum();
        if memory > TRELLIS_MEMORY_GUARD {
            return Err(Error::ExhaustionGuard {
                bits: memory,
                limit: TRELLIS_MEMORY_GUARD,
            });
        }
        if k > TRELLIS_INPUT_GUARD {
            return Err(Error::ExhaustionGuard {
                bits: k,
                limit: TRELLIS_INPUT_GUARD,
            });
        }
        let nw = n.div_ceil(64);

        let mut segments = Vec::new();
        let mut basis: Vec<&[u64]> = Vec::with_capacity(memory);
        let (mut bottom_mask, mut top_mask, mut free_inputs) = (0u32, 0u32, 0u64);
        for (row, &len) in nu.iter().enumerate() {
            if len == 0 {
                free_inputs |= 1 << row;
                continue;
            }
            let off = basis.len();
            segments.push((row, off));
            bottom_mask |= 1 << off;
            top_mask |= 1 << (off + len - 1);
            for l in 1..=len {
                basis.push(code.coeffs()[l].row(row).words());
            }
        }
        let all_mask = if memory == 32 {
            u32::MAX
        } else {
            (1u32 << memory) - 1
        };

        let g0 = &code.coeffs()[0];
        let mut input_out = vec![0u64; nw << k];
        let mut spread = vec![0u32; 1 << k];
        for u in 1usize..1 << k {
            let low = u.trailing_zeros() as usize;
            let prev = u & (u - 1);
            for w in 0..nw {
                input_out[u * nw + w] = input_out[prev * nw + w] ^ g0.row(low).words()[w];
            }
            spread[u] = spread[prev];
            if let Some(&(_, off)) = segments.iter().find(|&&(r, _)| r == low) {
                spread[u] |= 1 << off;
            }
        }

        let low_bits = memory.min(LOW_TABLE_BITS);
        let mem_lo = linear_table(&basis[..low_bits], nw);
        let mem_hi = linear_table(&basis[low_bits..], nw);
        Ok(Self {
            k,
            nw,
            memory,
            segments,
            all_mask,
            bottom_mask,
            top_mask,
            free_inputs,
            input_out,
            spread,
            low_bits,
            mem_lo,
            mem_hi,
        })
    }

    pub fn memory(&self) -> usize {
        self.memory
    }

    pub fn num_states(&self) -> usize {
        1 << self.memory
    }

    pub fn num_inputs(&self) -> u64 {
        1 << self.k
    }

    #[inline]
    pub fn next_state(&self, s: u32, u: u64) -> u32 {
        ((s << 1) & self.all_mask & !self.bottom_mask) | self.spread[u as usize]
    }

    /// Weight of the output block emitted from state `s` on input `u`.
    #[inline]
    pub fn output_weight(&self, s: u32, u: u64) -> u32 {
        let nw = self.nw;
        let lo = (s as usize & ((1 << self.low_bits) - 1)) * nw;
        let hi = (s as usize >> self.low_bits) * nw;
        let inp = u as usize * nw;
        let mut w = 0;
        for i in 0..nw {
            w += (self.mem_lo[lo + i] ^ self.mem_hi[hi + i] ^ self.input_out[inp + i]).count_ones();
        }
        w
    }

    /// Calls `f(s, u)` for every transition `s --u--> target`.
    #[inline]
    pub fn for_each_predecessor<F: FnMut(u32, u64)>(&self, target: u32, mut f: F) {
        let base = (target >> 1) & !self.top_mask & self.all_mask;
        let mut fed = 0u64;
        for &(row, off) in &self.segments {
            fed |= (((target >> off) & 1) as u64) << row;
        }
        let mut dropped = 0u32;
        loop {
            let mut free = 0u64;
            loop {
                f(base | dropped, fed | free);
                free = free.wrapping_sub(self.free_inputs) & self.free_inputs;
                if free == 0 {
                    break;
                }
            }
            dropped = dropped.wrapping_sub(self.top_mask) & self.top_mask;
            if dropped == 0 {
                break;
            }
        }
    }
}

/// All `2^len` XOR combinations of `basis`, `nw` words each.
fn linear_table(basis: &[&[u64]], nw: usize) -> Vec<u64> {
    let mut t = vec![0u64; nw << basis.len()];
    for idx in 1usize..1 << basis.len() {
        let low = idx.trailing_zeros() as usize;
        let prev = idx & (idx - 1);
        for w in 0..nw {
            t[idx * nw + w] = t[prev * nw + w] ^ basis[low][w];
        }
    }
    t
}
