//! Irreducible characters and decomposition numbers for type A_n in
//! characteristic p.

pub mod error;
pub mod gf;
pub mod hyperalgebra;
pub mod irreducibles;
pub mod roots;
pub mod verification;
pub mod weyl;

pub use error::{Error, Result};
pub use hyperalgebra::{Algebra, AlgebraVector, Letter, MemoCache, PbwMonomial, Word};
pub use irreducibles::Pipeline;
pub use roots::{GroupConfig, PositiveRoot, Weight};
pub use weyl::{CharVector, DecompMatrix};
