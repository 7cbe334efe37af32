//! Hidden consistent subelections in ordinal elections.
//!
//! Finds, maximizes and counts clone sets, identity subelections (voters
//! agreeing on the order of some candidates) and antagonism subelections
//! (two equal groups with exactly reversed orders).

pub mod antagonism;
pub mod clones;
pub mod election;
pub mod error;
pub mod fixtures;
pub mod generators;
pub mod identity;
pub mod ilp;
pub mod io;
pub mod search;
pub mod witness;

pub use antagonism::{antagonism_signature, hidden_an, max_an, AntagonismScore, AntagonismVariant};
pub use clones::{
    build_segment_index, clone_swap_distance, closest_clone_set, count_hidden_clones,
    hidden_clones, max_clone, CloneUniverse, SegmentIndex,
};
pub use election::Election;
pub use error::{Error, Result};
pub use generators::{sample, sample_batch, Culture, CultureSpec};
pub use identity::{
    count_hidden_id, hidden_id, identity_signature, max_id, unanimity_graph, UnanimityGraph,
};
pub use io::{parse_election, parse_preflib_soc, write_election};
pub use search::{SearchConfig, Strategy};
pub use witness::{Signature, SubelectionWitness, WitnessKind};
