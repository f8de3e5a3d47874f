//! Linear algebra over GF(2) and GF(2)[z].

mod bitvec;
mod matrix;
mod poly;
mod polymatrix;
pub mod weight;

pub use bitvec::BitVec;
pub use matrix::BitMatrix;
pub use poly::Poly2;
pub use polymatrix::{determinant, PolyMatrix};
pub use weight::{min_weight, MESSAGE_GUARD};
