//! Little-group decompositions of the Lorentz group and the time-translation
//! mode kernels of free relativistic fields.
//!
//! The crate is organized bottom-up:
//!
//! - [`minkowski`]: metric conventions, four-vectors, Pauli-vector algebra,
//!   and the spinor-to-vector representation map;
//! - [`transmutators`]: coset representatives (Weyl/Lorentz boosts, Witt
//!   rotations, the Sylvester-Witt basis transmutator) and the projectors of
//!   the massive and massless little groups;
//! - [`time_reps`]: one-dimensional time representations, from the unitary
//!   `U(1)` phase through the indefinite-metric `U(1,1)` triangular
//!   representation, with the oscillator and two-position kernels;
//! - [`kernels`]: relativistic mode kernels (massive vector, massless Weyl
//!   spinor, massless gauge vector) with their gauge and dipole structure;
//! - [`electroweak`]: the coupling-constant triangle relating hypercharge,
//!   isospin, and electromagnetic couplings and the mass ratios it fixes;
//! - [`verify`]: the named-check verification suite used by the CLI.

// Validation guards are written as `!(x > 0.0)` on purpose: the negated
// form also rejects NaN, so malformed input fails closed.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod electroweak;
pub mod kernels;
pub mod minkowski;
pub mod numerics;
pub mod time_reps;
pub mod transmutators;
pub mod verify;

pub use minkowski::{FourVector, MetricForm, MinkowskiError, PauliVector, Tolerance};
pub use transmutators::{GaugeTriple, LightlikeMomentum, MassiveMomentum, TransmutatorError};
pub use verify::{
    all_pass, render_report, run_verify, CheckReport, ReportFormat, VerifyConfig, VerifyError,
};
