//! Reidemeister–Schreier kernels of homomorphisms from Coxeter doubles onto
//! elementary abelian 2-groups, with Tietze simplification and independent
//! finite checks (Todd–Coxeter enumeration, Smith normal form).

pub mod cli;
pub mod error;
pub mod presentation;
pub mod schreier;
pub mod tietze;
pub mod verify;
pub mod word;

pub use error::{Error, Result};
pub use presentation::{CoxeterMatrix, EmbeddingInstance, ExtNat, PcSpec, Presentation};
pub use schreier::{HomZ2n, KernelPresentation, Transversal};
pub use verify::{AbelianInvariants, CosetTable, IntMatrix, VerifyReport};
pub use word::{GenId, Letter, Word};

/// Abelian invariants with machine-word torsion coefficients.
pub type Invariants64 = AbelianInvariants<i64>;
/// Abelian invariants with arbitrary-precision torsion coefficients.
pub type InvariantsBig = AbelianInvariants<num_bigint::BigInt>;
/// Integer matrix over `i64`.
pub type IntMatrix64 = IntMatrix<i64>;
/// Integer matrix over arbitrary-precision integers.
pub type IntMatrixBig = IntMatrix<num_bigint::BigInt>;
