//! Nonlinear coherent states of a single field mode in a Kerr medium.
//!
//! The crate builds coherent, photon-added coherent, and f-deformed
//! (Kerr) nonlinear coherent states together with their deformed
//! photon-added variants as certified truncated Fock vectors, and evaluates
//! their photon statistics and phase-space functions (Husimi Q, Wigner).
//!
//! Closed forms and generic operator/overlap evaluations are kept on
//! separate code paths so that each can be checked against the other.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod phasespace;
pub mod specfun;
pub mod states;
pub mod stats;
pub mod tolerance;

pub use error::{Error, Result};
pub use phasespace::{FieldKind, FieldSource, PhaseSpaceField, PhaseSpaceGrid};
pub use specfun::SeriesTolerance;
pub use states::{DeformedLadder, Family, FockState, KerrParams, StateSpec};
pub use stats::{MandelSweep, PhotonDistribution};
pub use tolerance::{Profile, Tolerances};

pub use num_complex::Complex64;
