//! Generalized total σ-irregularity `σ_t^f` of degree sequences.
//!
//! `σ_t^f(S) = Σ_{pairs} |a − b|^f` over all unordered position pairs of a
//! sequence. The crate computes it (and the related integer indices), tests
//! graphicality, enumerates degree-sequence domains in canonical order, and
//! exhaustively searches those domains for extremal sequences.

pub mod enumerate;
pub mod error;
pub mod extremal;
pub mod graphical;
pub mod index;

pub use enumerate::{domain_size, enumerate, shard, Domain, DomainKind, Shard};
pub use error::{Error, Result};
pub use graphical::{
    antiregular_sequence, has_connected_realization, is_graphical, is_tree_sequence, realizations,
    SmallGraph,
};
pub use index::{
    compare_values, difference_profile, first_zagreb, irr_t, sigma_t_classic, sigma_t_f,
    sigma_t_f_seq, Comparison, DegreeSequence, DifferenceProfile, ExponentSpec, IndexValue,
    TIE_TOLERANCE,
};
