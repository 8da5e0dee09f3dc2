//! Exact ideal arithmetic over concrete commutative semirings.

pub mod content;
pub mod enumerate;
pub mod error;
pub mod expr;
pub mod fraction;
pub mod ideal;
pub mod semiring;
pub mod suites;

pub use error::{Error, Result};
pub use ideal::{CanonicalForm, FgIdeal, VerificationLevel};
pub use semiring::{Carrier, Element, FiniteSemiringTable, Semiring, SemiringRef, Tropical};
