//! Numerical toolkit for rating single-photon sources ("guns") against the
//! application that will consume their output.
//!
//! The crate models sources, targets, and passive optics on a truncated
//! bosonic Fock space and reduces every comparison to two families of
//! figure-of-merit:
//!
//! * **Suitability** `S_GT = F_GT / F_TT` with `F_AB = Tr(ρ_A ρ_B)`, which
//!   measures how much of the source's output lands inside the subspace the
//!   application accepts. For a subspace target it is exactly the accepted
//!   probability mass, so `S_GT = 1` is attainable by mixed sources.
//! * **Fidelity** `f_AB = {Tr[(√ρ_A ρ_B √ρ_A)^{1/2}]}²`, the conventional
//!   state-overlap measure, kept alongside for comparison.
//!
//! Module layout:
//!
//! * [`fock`]: mode bookkeeping, graded occupation-number basis, states,
//!   density matrices, ladder operators, composition and reduction.
//! * [`metrics`]: overlap, purity, fidelity, single-photon-projected
//!   overlap, and the suitability report with its bounds.
//! * [`targets`]: acceptance subspaces (generic spans/projectors, the
//!   key-distribution target, the two-photon interference targets).
//! * [`guns`]: source models (ideal, jittered, coherent, heralded
//!   down-conversion, products) and key-distribution security figures.
//! * [`optics`]: the balanced beam splitter lifted to Fock space and the
//!   two-photon coincidence / interference-visibility harness.
//!
//! All matrices are dense [`nalgebra`] matrices over `Complex<f64>`;
//! tolerances follow the constants in [`tol`].

#![forbid(unsafe_code)]

pub mod error;
pub mod fock;
pub mod guns;
pub mod metrics;
pub mod optics;
pub mod targets;
pub mod tol;

pub use error::{CoreError, Result};
pub use fock::{
    partial_trace, tensor_product, DensityCheck, DensityMatrix, FockBasis, ModeSpace, StateVector,
};

/// Complex scalar used throughout the crate.
pub type C64 = num_complex::Complex<f64>;

/// Dense complex matrix type used for operators and density matrices.
pub type CMatrix = nalgebra::DMatrix<C64>;

/// Dense complex vector type used for state amplitudes.
pub type CVector = nalgebra::DVector<C64>;
