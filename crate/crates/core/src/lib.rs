//! Simulation of rotating-frame polarization transfer between anti-longitudinal
//! states of coupled abundant spins and the spin-locked magnetization of a rare
//! spin, for both J-coupled liquids and dipolar solids under magic-angle
//! spinning.
//!
//! The crate provides two independent routes to the same observables:
//!
//! - exact brute-force propagation of the deviation density operator under the
//!   full (possibly time-dependent) rotating-frame Hamiltonian
//!   ([`propagate::evolve_piecewise`]), and
//! - closed-form second-order effective Hamiltonians for the designated
//!   three-spin subsystem ([`liquid`], [`solid`]), cross-checked against a
//!   generic numeric second-order averaging engine ([`magnus`]).
//!
//! Higher-level experiment drivers (buildups, RF and offset scans, powder and
//! RF-inhomogeneity ensembles, figure presets) live in [`scenarios`], with the
//! CLI surface in the `spincp` binary.
//!
//! Conventions used throughout:
//!
//! - all frequencies, shifts and couplings are angular (rad/s) unless a name
//!   carries an explicit `_hz` suffix;
//! - spin 0 is the leftmost tensor factor of the 2^N product space, with the
//!   single-spin basis ordered (up, down);
//! - reported amplitudes follow a_Q(rho) = Tr(rho Q) / Tr(Q^2) for traceless
//!   Hermitian observables Q, with the abundant-spin thermal unit fixed to
//!   exactly [`constants::THERMAL_S_OVER_I`] times the rare-spin one.

pub mod config;
pub mod constants;
pub mod csvio;
pub mod liquid;
pub mod magnus;
pub mod operator;
pub mod powder;
pub mod presets;
pub mod propagate;
pub mod scenarios;
pub mod solid;
pub mod spin;

pub use operator::Operator;
pub use propagate::{DeviationState, Observable, TimeSeries};
pub use spin::{Species, SpinSystem};
