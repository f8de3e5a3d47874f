//! Binary convolutional codes with optimal column distances.
//!
//! The crate builds `(n, k, δ)` codes whose stacked coefficient matrices are
//! (folded) partial simplex generators, computes exact column-distance
//! profiles and free distances, and checks optimality against exhaustive
//! search.

pub mod construct;
pub mod convcode;
pub mod error;
pub mod gf2;
pub mod optsearch;
pub mod par;
pub mod simplex;

pub use convcode::{ConvCode, DistanceProfile, ProfileMethod};
pub use error::{Error, Result};
pub use gf2::{BitMatrix, BitVec, Poly2, PolyMatrix};
