//! Quantum tori with character actions, tensor-product couplings and
//! free-group dual systems, with ergodic averages over Følner regions
//! evaluated in closed form.

pub mod config;
pub mod dynamics;
pub mod error;
pub mod experiments;
pub mod group;
pub mod qtorus;
pub mod report;
pub mod sampling;
pub mod surd;
pub mod tensor;

pub use dynamics::{ActionSpec, FolnerRegion, Frequency, GroupElement, GroupKind, RegionShape};
pub use error::{Error, Result};
pub use group::{DualSystemConfig, GroupObservable, LetterMap, S2Rule, Word};
pub use qtorus::{Monomial, TorusElement};
pub use report::ConvergenceRow;
pub use surd::{parse_scalar, Rational, SurdScalar};
pub use tensor::{StateFunctional, StateKind, TensorElement, TensorMonomial};
