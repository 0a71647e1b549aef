//! Magic labellings of the cube graph: the vertex equations, the
//! eight-type decomposition of their solutions, the edge action of the
//! automorphism group, and exact generating-function expansions.

pub mod cone;
pub mod cube;
pub mod enumerate;
pub mod error;
pub mod series;
pub mod symmetry;
pub mod verify;

pub use cone::{classify, compose, q_coordinates, ConeType, QCoords, TypeDecomposition};
pub use cube::{brute_force_enumerate, is_distinct, magic_sum_of, EdgeLabelling, Label, MagicSum};
pub use enumerate::{count_by_type, count_constrained, count_distinct, enumerate_by_type, DistinctMode};
pub use error::{Error, Result};
pub use symmetry::{canonical_form, cube_group, EdgePermutation, PermutationGroup};

/// Arbitrary-precision integer polynomial in `y`.
pub type IntPoly = series::Poly<num_bigint::BigInt>;
/// Arbitrary-precision rational generating function in `y`.
pub type RationalGF = series::RationalGf<num_bigint::BigInt>;
/// Machine-integer polynomial, for quick checks where coefficients stay small.
pub type SmallPoly = series::Poly<i64>;
