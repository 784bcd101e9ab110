//! Multiparameter braid matrices on nested projector bases: exact and
//! numeric construction, transfer matrices and their spectra, chain
//! Hamiltonians, Cayley potentials and the canonical R̂tt relations.

pub mod braid;
pub mod error;
pub mod exp_scalar;
pub mod hamiltonian;
pub mod params;
pub mod projectors;
pub mod ring;
pub mod rtt;
pub mod scattering;
pub mod sparse;
pub mod spectrum;
pub mod transfer;
pub mod verify;
pub mod words;

pub use error::{Error, Result};
