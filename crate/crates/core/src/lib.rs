//! Exact arithmetic for the graded Lie algebra of cyclic coinvariants of a
//! symplectic vector space.
//!
//! The algebra `L(V)` is spanned by necklaces (cyclic words) over a basis of
//! `V`; the bracket contracts one letter of each necklace against the other
//! with the alternating form and splices the remainders. Everything is exact,
//! over `Q` or any prime field, including `F_2`.
//!
//! Module map:
//! - [`scalar`]: fields and truncated jets
//! - [`word`], [`space`], [`tensor`]: words, the symplectic space, the tensor algebra
//! - [`coinv`]: necklaces, the bracket, derivations, trace, involution
//! - [`matalg`]: matrices and the classical algebras
//! - [`fields2d`]: the dimension-2 vector fields on pairs of matrices
//! - [`verify`]: seeded property suites, driven by the [`cli`]

pub mod cli;
pub mod coinv;
pub mod error;
pub mod fields2d;
pub mod linalg;
pub mod matalg;
pub mod parse;
pub mod sample;
pub mod scalar;
pub mod space;
pub mod tensor;
pub mod verify;
pub mod word;

pub use coinv::{CoinvElem, Necklace};
pub use error::{Error, Result};
pub use matalg::{AlgebraKind, ClassicalAlgebra, Matrix};
pub use scalar::{FieldSpec, Jet, Ring, Scalar};
pub use space::SymplecticSpace;
pub use tensor::{Sign, TensorElem};
pub use word::{Letter, Word};
