use std::fmt;
use std::ops::{Add, Mul};

use super::bitvec::WORD_BITS;
use crate::error::{Error, Result};

/// A polynomial over GF(2), coefficient of `z^i` in bit `i`.
///
/// The word vector never carries trailing zero words, so the zero polynomial is
/// the empty vector and has no degree.
#[derive(Clone, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct Poly2 {
    words: Vec<u64>,
}

impl Poly2 {
    pub fn zero() -> Self {
        Self { words: Vec::new() }
    }

    pub fn one() -> Self {
        Self::from_u64(1)
    }

    pub fn monomial(degree: usize) -> Self {
        let mut words = vec![0; degree / WORD_BITS + 1];
        words[degree / WORD_BITS] = 1 << (degree % WORD_BITS);
        Self { words }
    }

    /// Bit `i` of `bits` is the coefficient of `z^i`.
    pub fn from_u64(bits: u64) -> Self {
        Self::from_words(vec![bits])
    }

    pub fn from_coeffs<I: IntoIterator<Item = bool>>(coeffs: I) -> Self {
        let mut words = Vec::new();
        for (i, c) in coeffs.into_iter().enumerate() {
            if i % WORD_BITS == 0 {
                words.push(0);
            }
            if c {
                words[i / WORD_BITS] |= 1 << (i % WORD_BITS);
            }
        }
        Self::from_words(words)
    }

    fn from_words(mut words: Vec<u64>) -> Self {
        while words.last() == Some(&0) {
            words.pop();
        }
        Self { words }
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        let last = *self.words.last()?;
        Some((self.words.len() - 1) * WORD_BITS + (WORD_BITS - 1 - last.leading_zeros() as usize))
    }

    pub fn is_zero(&self) -> bool {
        self.words.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.words == [1]
    }

    pub fn coeff(&self, i: usize) -> bool {
        self.words
            .get(i / WORD_BITS)
            .is_some_and(|w| (w >> (i % WORD_BITS)) & 1 == 1)
    }

    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Adds `other · z^shift` into `acc`.
    fn xor_shifted(acc: &mut Vec<u64>, other: &[u64], shift: usize) {
        let (ws, bs) = (shift / WORD_BITS, shift % WORD_BITS);
        let needed = other.len() + ws + 1;
        if acc.len() < needed {
            acc.resize(needed, 0);
        }
        for (i, &w) in other.iter().enumerate() {
            acc[i + ws] ^= w << bs;
            if bs != 0 {
                acc[i + ws + 1] ^= w >> (WORD_BITS - bs);
            }
        }
    }

    pub fn div_rem(&self, divisor: &Poly2) -> Result<(Poly2, Poly2)> {
        let dd = divisor.degree().ok_or(Error::ZeroPolynomial)?;
        let mut rem = self.words.clone();
        let mut quot: Vec<u64> = Vec::new();
        loop {
            let r = Poly2::from_words(rem.clone());
            match r.degree() {
                Some(rd) if rd >= dd => {
                    let shift = rd - dd;
                    Self::xor_shifted(&mut rem, &divisor.words, shift);
                    Self::xor_shifted(&mut quot, &[1], shift);
                }
                _ => return Ok((Poly2::from_words(quot), r)),
            }
        }
    }

    /// Monic gcd; errors when both inputs are zero.
    pub fn gcd(&self, other: &Poly2) -> Result<Poly2> {
        if self.is_zero() && other.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b)?;
            a = b;
            b = r;
        }
        Ok(a)
    }

    /// True when `self` is nonzero and divides `other` exactly.
    pub fn divides(&self, other: &Poly2) -> bool {
        other.div_rem(self).is_ok_and(|(_, r)| r.is_zero())
    }
}

impl Add for &Poly2 {
    type Output = Poly2;

    fn add(self, rhs: &Poly2) -> Poly2 {
        let n = self.words.len().max(rhs.words.len());
        let words = (0..n)
            .map(|i| self.words.get(i).unwrap_or(&0) ^ rhs.words.get(i).unwrap_or(&0))
            .collect();
        Poly2::from_words(words)
    }
}

impl Mul for &Poly2 {
    type Output = Poly2;

    fn mul(self, rhs: &Poly2) -> Poly2 {
        let mut acc = Vec::new();
        for (wi, &w) in self.words.iter().enumerate() {
            let mut w = w;
            while w != 0 {
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Poly2::xor_shifted(&mut acc, &rhs.words, wi * WORD_BITS + b);
            }
        }
        Poly2::from_words(acc)
    }
}

impl fmt::Display for Poly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let Some(deg) = self.degree() else {
            return f.write_str("0");
        };
        let mut first = true;
        for i in (0..=deg).filter(|&i| self.coeff(i)) {
            if !first {
                f.write_str("+")?;
            }
            first = false;
            match i {
                0 => f.write_str("1")?,
                1 => f.write_str("z")?,
                _ => write!(f, "z^{i}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly2({self})")
    }
}
