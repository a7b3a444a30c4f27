//! Exact computation of ı-canonical bases on tensor spaces of the natural
//! representation and its dual, with the matching Hecke-side oracles.

pub mod canonical;
pub mod exactalg;
pub mod hecke;
pub mod intertwiner;
pub mod ospbridge;
pub mod qgroup;
pub mod qsp;
pub mod weights;

use num_bigint::BigInt;

/// Coefficient ring used throughout.
pub type Int = BigInt;
pub type LaurentPoly = exactalg::Laurent<Int>;
pub type RationalFunction = exactalg::RatFunc<Int>;
pub type Operator = exactalg::Mat<Int>;
pub type SparseVector = exactalg::SparseVec<Int>;
