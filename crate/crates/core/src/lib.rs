//! Numerical toolkit for aligning spatial reference frames with spin-j singlets.
//!
//! Two parties holding entangled spin-j pairs can estimate the relative rotation
//! between their frames. This crate computes the expected squared axis distance
//! achieved by the optimal covariant measurement, exactly and by simulation:
//!
//! - [`su2`]: characters, the Haar class measure, angular momentum matrices and
//!   the axis-averaged squared rotation distance.
//! - [`decomposition`]: total-angular-momentum sector multiplicities and
//!   amplitude vectors for n-fold singlet tensor powers.
//! - [`alignment`]: the exact error functional for any amplitude vector, its
//!   quadrature oracle, and the optimal-state amplitudes.
//! - [`filter`]: the probabilistic sector filter that remodulates a two-copy
//!   state into the optimal one, with success probability and branch errors.
//! - [`asymptotics`]: leading-order scaling laws and residual scans.
//! - [`fisher`]: quantum Fisher information of the singlet and Cramér-Rao
//!   comparisons.
//! - [`montecarlo`]: inverse-CDF simulation of the estimation protocol with
//!   deterministic, counter-based random numbers.
//! - [`locc`]: the best separable-measurement error for a single pair.

pub mod alignment;
pub mod asymptotics;
pub mod decomposition;
pub mod filter;
pub mod fisher;
pub mod locc;
pub mod montecarlo;
pub mod quad;
pub mod spin;
pub mod su2;

pub use alignment::{ErrorReport, Method};
pub use decomposition::{CoefficientVector, MultiplicityTable};
pub use filter::FilterDesign;
pub use quad::{QuadRule, QuadratureSpec};
pub use spin::{ClassAngle, Spin};

/// Errors reported by the library.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("spin label must be non-negative, got twice_j = {0}")]
    NegativeSpin(i64),

    #[error("class angle must lie in [0, 2*pi], got {0}")]
    AngleOutOfRange(f64),

    #[error("{0}")]
    InvalidArgument(String),

    #[error("trivial representation has no generators (twice_j = 0)")]
    TrivialRepresentation,

    #[error("sector capacity exceeded: n * twice_j = {0} > {1}")]
    CapacityExceeded(u64, u64),

    #[error("coefficient vector is not normalized: sum of squares = {0}")]
    Unnormalized(f64),

    #[error("requested tolerance {requested:e} not met, achieved {achieved:e}")]
    ToleranceNotMet { requested: f64, achieved: f64 },

    #[error("sector out of range: twice_k = {0}")]
    SectorOutOfRange(i64),

    #[error("dimension cap exceeded: twice_j = {0} > {1}")]
    DimensionCap(u32, u32),
}

pub type Result<T> = std::result::Result<T, Error>;
