//! Partial information decomposition with the `I_min` redundancy measure.
//!
//! Sources are numbered `0..r` internally and printed 1-based, so the
//! two-source redundancy node renders as `{1}{2}` and the synergy node as
//! `{1,2}`.

mod decomposition;
mod discontinuity;
mod imin;
mod lattice;

pub use decomposition::{
    decompose, hierarchy_terms, modified_information, partial_terms, NodeTerm, PidDecomposition,
};
pub use discontinuity::{
    discontinuity_scan, DiscontinuityReport, Imin, Localized, RedundancyMeasure, ScanPoint,
};
pub use imin::{
    i_min, local_i_min, specific_information, IminEstimator, LocalRedundancy, TIE_TOLERANCE,
};
pub use lattice::{build_lattice, Antichain, RedundancyLattice, SourceSet, MAX_SOURCES};
