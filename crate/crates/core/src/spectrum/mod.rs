//! Sectors, closed-form eigenvectors, numeric spectra and their
//! classification into root-of-unity multiplets.

pub mod census;
pub mod classify;
pub mod eigenvectors;
pub mod numeric;
pub mod subspaces;

pub use census::{fermat_census, free_energy, is_prime, Census};
pub use classify::{classify_multiplets, Multiplet, SpectrumReport};
pub use eigenvectors::{ladder_eigenvectors, middle_state, trace_eigenvectors, AnalyticEigen};
pub use numeric::{dense_spectrum, full_spectrum, multiset_distance, SampleSpectrum};
pub use subspaces::{sector_dimension, subspace_decomposition, LadderOps, SubspaceIndex};
