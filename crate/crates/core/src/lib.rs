//! Perfect sampling of bicircular matroid bases by bicycle popping, and
//! approximate counting built on top of it.
//!
//! The bases of the bicircular matroid of a connected graph `G` with
//! `m >= n` are the spanning edge sets in which every component is
//! unicyclic. Sampling assigns each vertex a random out-arc and pops
//! 2-cycles and wrongly oriented cycles until none remain; the undirected
//! support is then a uniform basis.

pub mod arrows;
pub mod counting;
mod dsu;
pub mod error;
pub mod exec;
pub mod generators;
pub mod graph;
pub mod sampler;
pub mod stats;
pub mod table;

pub use arrows::{occurring_bad_events, ArrowConfig, BadEvent, EventRule, GibbsParams, Variant};
pub use counting::{
    build_deletion_sequence, count_exact, count_fpras_anneal, count_fpras_telescope,
    enumerate_bases, exact_expected_resamples, exact_partition_function, CountEstimate,
    CountMethod, DeletionSequence,
};
pub use error::{Error, Result};
pub use exec::Execution;
pub use graph::{
    arrow_support, cycle_orientation_sign, is_basis, parse_edge_list, validate_bicircular_instance,
    write_edge_list, Basis, DirectedCycle, Graph,
};
pub use sampler::{
    sample_basis, sample_gibbs, sample_lerw, sample_parallel, SampleOutcome, SampleReport,
};
pub use table::ResamplingTable;
