//! Exact (co)homology model of abelian varieties: exterior algebras,
//! morphisms, the Fourier–Mukai transform, and a rule engine over the
//! eigen-decomposition of Lawson homology.

pub mod error;
pub mod expr;
pub mod exterior;
pub mod fourier;
pub mod ledger;
pub mod random;
pub mod variety;

pub use error::{Error, Result};
pub use exterior::{ExteriorElement, LinearMap, MultiIndex};
pub use fourier::{Correspondence, FourierTransform};
pub use ledger::{Assumptions, GroupExpr, LedgerResult, Slot};
pub use variety::{CohClass, HomClass, Morphism, Variety};
