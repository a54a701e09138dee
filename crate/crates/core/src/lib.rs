//! Forward simulation and reconstruction toolkit for Lorentz-force
//! (magneto-acousto-electric) tomography on the unit cube.
//!
//! The toolkit synthesizes boundary measurement functionals from a known
//! conductivity phantom and recovers the conductivity through a four-stage
//! inversion: wave time reversal of the boundary data, curl assembly,
//! spectral current recovery on the cube, and a pointwise gradient solve
//! followed by a zero-Dirichlet Poisson solve for ln σ.

pub mod conductivity;
pub mod current;
pub mod error;
pub mod export;
pub mod field;
pub mod fieldio;
pub mod forward;
pub mod metrics;
pub mod phantom;
pub mod pipeline;
pub mod spectral;
pub mod synth;
pub mod tat;
pub mod transform;

pub use error::{Error, Result};
pub use field::{Parity, ParitySignature, ScalarField3, SpectrumIndex, VectorField3};
pub use transform::{Spectrum3, Transformer};
