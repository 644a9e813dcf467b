//! Complex unit gain graphs: switching, orientations, line graphs and
//! Hermitian spectra.
//!
//! A gain graph labels one direction of each edge of a simple graph with
//! an element of a group on the unit circle; the reverse direction
//! carries the inverse. This crate implements the algebra around that
//! idea with exact rational arithmetic:
//!
//! - [`gains`] — the circle group and its finite subgroups, stored as
//!   exact rational turns, plus the group-with-involution spec.
//! - [`graph`] — simple graphs, gain graphs, walks, switching, spanning
//!   forests, fundamental cycles, and the constructive decision of
//!   switching equivalence.
//! - [`orientation`] — incidence phase functions, the gain graph they
//!   induce, and orientations of a given gain graph.
//! - [`linegraph`] — line graphs of oriented gain graphs and the
//!   switching-class line graph of a gain graph.
//! - [`spectra`] — Hermitian adjacency and incidence matrices, a
//!   dependency-free eigensolver, the incidence identity
//!   `H* H = 2I + s A(line graph)` and the eigenvalue bounds it implies.
//! - [`oracles`] — brute-force references (exhaustive switching search,
//!   characteristic-polynomial eigenvalues) used by tests; no production
//!   path depends on them.
//!
//! Group arithmetic never touches floating point, so structural claims
//! (switching round trips, orientation identities, line-graph gains) are
//! tested with exact equality; floats appear only once matrices are
//! built.

pub mod gains;
pub mod graph;
pub mod linegraph;
pub mod oracles;
pub mod orientation;
pub mod spectra;

pub use gains::{GainError, GroupFamily, GroupSpec, UnitGain};
pub use graph::{
    find_switching, fundamental_cycle, is_switching_equivalent, spanning_forest, GainGraph,
    GraphError, SimpleGraph, SpanningForest, SwitchOutcome, SwitchingFunction, Walk,
};
pub use linegraph::{line_graph_class, line_graph_oriented, line_orientation, underlying_line_graph, LineGraphMap};
pub use orientation::{
    associated_gain_graph, default_orientation, random_orientation, random_orientation_with,
    switch_orientation, IncidencePhase, OrientationError, OrientedGainGraph,
};
pub use spectra::{
    adjacency_matrix, check_bound, check_line_identity, hermitian_eigenvalues, incidence_matrix,
    line_spectrum, spectrum_switching_invariance, BoundCheck, ComplexMatrix, SpectraError,
    Spectrum,
};
