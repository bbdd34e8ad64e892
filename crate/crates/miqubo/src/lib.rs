//! Feature selection for regression by maximizing conditional mutual
//! information, formulated as a QUBO and solved with classical
//! annealing/tabu heuristics.
//!
//! The pipeline:
//!
//! 1. [`data`] — load or synthesize a tabular dataset, one-hot-encode
//!    categorical features, and discretize columns for probability
//!    estimation.
//! 2. [`infotheory`] — estimate per-feature mutual information with the
//!    target and the pairwise conditional-mutual-information tensor.
//! 3. [`qubo`] — map the tensor onto a quadratic binary program whose
//!    minimum encodes the CMI-maximizing feature subset, with an optional
//!    cardinality penalty.
//! 4. [`solve`] — exhaustive, simulated-annealing, tabu, sub-problem and
//!    hybrid solvers for the resulting QUBO.
//! 5. [`svr`] — an epsilon-insensitive support vector regressor used to
//!    score selections downstream.
//! 6. [`bench`] — paired train/test-split sweeps comparing MI-ranked
//!    selections against CMI-optimized ones.
//!
//! The `examples/` directory has one runnable example per capability;
//! the `miqubo` binary exposes the same pipeline as subcommands
//! (`mi-rank`, `select`, `evaluate`, `pipeline`, `synth`).

pub mod bench;
pub mod cli;
pub mod data;
pub mod error;
pub mod infotheory;
pub mod plot;
pub mod qubo;
pub mod seeding;
pub mod solve;
pub mod svr;

pub use error::{Error, Result};
