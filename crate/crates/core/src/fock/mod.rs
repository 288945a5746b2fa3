//! Truncated bosonic Fock space: mode bookkeeping, basis enumeration,
//! state vectors, density matrices, and ladder operators.

mod basis;
pub(crate) mod density;
pub(crate) mod ops;
mod space;
mod state;

pub use basis::FockBasis;
pub use density::{partial_trace, tensor_product, DensityCheck, DensityMatrix};
pub use ops::{annihilation_op, creation_op, number_projector};
pub use space::ModeSpace;
pub use state::StateVector;
