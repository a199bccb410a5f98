pub mod cli;
pub mod config;
pub mod error;
pub mod field;
pub mod hwt;
pub mod lattice;
pub mod linalg;
pub mod lmod;
pub mod spanprobe;
pub mod suite;
pub mod tensor;
pub mod witt;
pub mod worked;

pub use error::{Error, Result};
pub use field::Scalar;
pub use lattice::{DVector, GroupElem, Pairing, Splitting, Sublattice};
pub use witt::{AElem, WittElem};
