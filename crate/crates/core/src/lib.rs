//! Simulation of the two-process quantum switch together with a relabeling
//! that describes its indefinite causal order as a definite order of
//! superposed processes.
//!
//! The crate is layered bottom-up:
//!
//! - [`linalg`]: dense complex matrices and states.
//! - [`process`]: process vectors (Choi vectorization of operators),
//!   superposition and orthogonal distillation.
//! - [`switch`]: the switch unitary, control measurement and conditional
//!   target operators.
//! - [`relabel`]: the definite-order description of a switch for a given
//!   control state, its narrative, and a consistency report.
//! - [`harness`]: configuration parsing, command execution and report
//!   emission used by the `qswitch` binary.

pub mod error;
pub mod gates;
pub mod harness;
pub mod linalg;
pub mod process;
pub mod random;
pub mod relabel;
pub mod switch;

pub use num_complex::Complex64 as C64;

pub use error::{Error, Result};
pub use linalg::{Operator, StateVector, Tolerances, DEFAULT_TOL};
pub use process::{ProcessPair, ProcessVector};
pub use relabel::{ConsistencyReport, OrderedDescription};
pub use switch::{ControlBasis, ControlConvention, SwitchCircuit, SwitchOutcome};
