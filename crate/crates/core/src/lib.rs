//! Constructions of q-ary Z-complementary pairs (ZCPs) and 2-D Z-complementary
//! array pairs (ZCAPs), together with an exact correlation engine that decides
//! zero-correlation-zone membership without floating-point tolerance.
//!
//! Sequences and arrays are stored as exponent tables: an entry `e` over
//! modulus `M` stands for the root of unity `exp(2πi·e/M)`. Correlation values
//! are [`CycSum`]s, integer combinations of `M`-th roots of unity, and are
//! tested for zero by divisibility with the `M`-th cyclotomic polynomial.

pub mod algebra;
pub mod arrays;
pub mod constructions;
pub mod error;
pub mod format;
pub mod gbf;
pub mod sequences;
pub mod zq;

#[cfg(test)]
mod testing;

pub use algebra::{cyclotomic_poly, CycSum, IntPoly};
pub use arrays::{RootArray, Surface, ZcapCertificate, ZczFrontier};
pub use error::{Error, Result};
pub use gbf::{gdj_pair, parse_anf, Companion, Gbf, Gbf2D};
pub use sequences::{RootVector, Transform, ZcpCertificate};
pub use zq::{Permutation, Zq2DArray, ZqVector};
