#![allow(dead_code)]

use optcol::{BitMatrix, BitVec, ConvCode};
use rand::Rng;

/// Random delay-free code with `n <= max_n`, `k <= max_k` and memory `<= max_memory`.
/// Row-reduced codes are not enforced; `derive` reads the degree off the minors.
pub fn random_code<R: Rng>(rng: &mut R, max_n: usize, max_k: usize, max_memory: usize) -> ConvCode {
    loop {
        let k = rng.random_range(1..=max_k);
        let n = rng.random_range(k..=max_n);
        let blocks = rng.random_range(1..=max_memory + 1);
        let coeffs: Vec<BitMatrix> = (0..blocks)
            .map(|_| {
                let rows = (0..k).map(|_| BitVec::from_u64(rng.random(), n)).collect();
                BitMatrix::from_rows(n, rows).unwrap()
            })
            .collect();
        if coeffs[0].rank() < k {
            continue;
        }
        if let Ok(c) = ConvCode::derive(n, k, coeffs) {
            return c;
        }
    }
}

/// Random row-reduced delay-free code of degree exactly `delta`.
pub fn random_row_reduced<R: Rng>(rng: &mut R, n: usize, k: usize, delta: usize) -> ConvCode {
    loop {
        let mut nu = vec![0; k];
        for _ in 0..delta {
            nu[rng.random_range(0..k)] += 1;
        }
        let mu = nu.iter().copied().max().unwrap_or(0);
        let mut coeffs = vec![BitMatrix::zeros(k, n); mu + 1];
        for (r, &d) in nu.iter().enumerate() {
            for g in coeffs.iter_mut().take(d + 1) {
                for c in 0..n {
                    g.set(r, c, rng.random());
                }
            }
        }
        if coeffs[0].rank() < k {
            continue;
        }
        if let Ok(c) = ConvCode::new(n, k, coeffs, delta) {
            if c.is_row_reduced()
                && c.row_degrees()
                    .iter()
                    .map(|d| d.unwrap_or(0))
                    .sum::<usize>()
                    == delta
            {
                return c;
            }
        }
    }
}

pub fn code(n: usize, k: usize, blocks: &[&[&str]]) -> ConvCode {
    let coeffs = blocks
        .iter()
        .map(|b| BitMatrix::parse(b).unwrap())
        .collect();
    ConvCode::derive(n, k, coeffs).unwrap()
}
