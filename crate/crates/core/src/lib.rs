//! Construction and distance analysis of (partial) unit memory convolutional
//! codes whose parity-check submatrices are Gabidulin parity-check matrices.
//!
//! Layers, bottom up:
//!
//! * [`field`]: `F_q` and `F_{q^s}` arithmetic, the q-power map, normal elements.
//! * [`matrix`]: linear algebra, rank norm, sum rank metric.
//! * [`gabidulin`]: Gabidulin block codes and brute-force MRD checks.
//! * [`pum`]: the parity-check chain construction, generator solving, encoding.
//! * [`distance`]: extended row distances by trellis search, free distance,
//!   slope and the associated bounds.
//! * [`record`]: versioned JSON records for codes, sequences and reports.

pub mod distance;
pub mod error;
pub mod field;
pub mod gabidulin;
pub mod matrix;
pub mod polymat;
pub mod pum;
pub mod record;

pub use error::{Error, Result};
pub use field::{ExtField, Felt, FieldOp, NormalElement};
pub use matrix::{BlockSeq, MatBase, MatExt};
