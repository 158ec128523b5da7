//! Sumset divisor theory for finite sets of naturals, lunar arithmetic,
//! headstrong compositions, and multisets as set-arrays.
//!
//! ```
//! use sumset::{divisor_count, FiniteSet};
//!
//! let a: FiniteSet = "[3]".parse().unwrap();
//! assert_eq!(divisor_count(&a).unwrap(), 5);
//! ```

pub mod compositions;
pub mod error;
pub mod lunar;
pub mod multiset;
pub mod promotion;
pub mod set;
pub mod verify;

pub use compositions::{Composition, TableKind, TriangleTable};
pub use error::{Error, ParseError, Result};
pub use lunar::LunarNumber;
pub use multiset::SetArray;
pub use promotion::{Factorization, PromotedFamily};
pub use set::{divides, divisor_count, divisors, sum, FiniteSet};
pub use verify::{Status, Target, VerificationReport};
