//! Quantum statistical mechanics of dessins: partition functions, Gibbs and
//! KMS states, and the `Ω_θ` extension.

pub mod gibbs;
pub mod kms;
pub mod partition;
pub mod series;
pub mod theta;

pub use series::{polylog, zeta, SeriesValue};
