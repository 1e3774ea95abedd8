//! Exact linear-algebra substrate for finite-dimensional quantum states:
//! tensor products, partial traces, purification, entropies, POVM
//! measurements and seeded Haar-random sampling.
//!
//! All values are immutable after construction and safe to share across
//! threads; there is no global state beyond explicitly passed seeds.

pub mod density;
pub mod dims;
pub mod ensemble;
pub mod error;
pub mod json;
pub mod linalg;
pub mod povm;
pub mod pure;
pub mod random;

pub use density::DensityMatrix;
pub use dims::Dims;
pub use ensemble::{Ensemble, EnsembleKind};
pub use error::{Result, StateError};
pub use linalg::{C64, CMatrix, CVector};
pub use povm::Povm;
pub use pure::PureState;
