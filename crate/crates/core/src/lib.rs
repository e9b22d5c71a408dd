//! Rigorous numerics for pinching sequences on hyperbolic surfaces.
//!
//! * [`hypgeom`]: collar, pentagon and length-comparison estimates.
//! * [`plumbing`]: hyperbolic length versus `log|t|` of plumbing coordinates.
//! * [`pinchseq`]: pinching sequences and their coordinate envelopes.
//! * [`series`]: germs, the order `≻`, tail bounds and domination certificates.
//! * [`strata`]: dimension and coarse-density verdicts for strata.
//! * [`cli`]: the `pinchcert` command surface.

pub mod cli;
pub mod error;
pub mod hypgeom;
pub mod logspace;
pub mod pinchseq;
pub mod plumbing;
pub mod report;
pub mod series;
pub mod strata;

pub use error::{PinchError, Result};
