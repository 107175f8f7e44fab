//! Exact computation of string functions, weight multiplicities and characters
//! of integrable highest-weight modules of untwisted affine Lie algebras.
//!
//! The main path folds the fan of singular weights of the trivial module into
//! the fundamental chamber ([`folding`]), assembles the block-Toeplitz system
//! for one congruence class of dominant weights and solves it grade by grade
//! ([`strings`]). The [`oracle`] module recomputes multiplicities through the
//! unfolded recursion so the two routes can be checked against each other.
//!
//! ```
//! use affstr::{AlgebraSpec, strings::ModuleComputation};
//!
//! let a2 = AlgebraSpec::preset("A2").unwrap();
//! let run = ModuleComputation::run(&a2, 1, &[0, 0], 5, Default::default()).unwrap();
//! let coeffs: Vec<u64> = run.table.string(0).iter().map(|c| c.try_into().unwrap()).collect();
//! assert_eq!(coeffs, vec![1, 2, 5, 10, 20, 36]);
//! ```

#![allow(clippy::needless_range_loop)]

pub mod algebra;
pub mod error;
pub mod fan;
pub mod fixtures;
pub mod folding;
pub mod io;
pub mod linalg;
pub mod oracle;
pub mod par;
pub mod strings;
pub mod verify;
pub mod weyl;

pub use algebra::{AffineWeight, AlgebraSpec, CongruenceClassId, RootVector};
pub use error::{Error, Result};
pub use fan::{Fan, FanVector};
pub use folding::{BaseWeightSet, FoldedFan};
pub use par::Strategy;
pub use strings::{BlockSystem, StringTable};
pub use weyl::{TranslationDatum, WeylOutcome};
