//! Negativity-based strong monogamy scores for four-qubit pure states.
//!
//! Layers, bottom up:
//!
//! * [`tensor`]: dense complex matrices, pure and mixed qubit states, partial
//!   trace/transpose and a Jacobi eigensolver.
//! * [`negativity`]: negativity across a bipartition.
//! * [`monogamy`]: the `δ`/`π` residual hierarchy and fourth-order scores.
//! * [`families`]: named four-qubit state families.
//! * [`closed_forms`]: analytic expressions for the families, used as oracles.
//! * [`experiments`]: seeded sampling, sweeps, censuses, histograms and
//!   exponent-threshold search.
//! * [`output`] and [`cli`]: CSV/JSON sinks and the command-line front end.

pub mod cli;
pub mod closed_forms;
pub mod error;
pub mod experiments;
pub mod families;
pub mod monogamy;
pub mod negativity;
pub mod output;
pub mod tensor;
pub mod tolerance;

pub use error::{Error, Result};
