//! Exhaustive argmax/argmin search over sequence domains and the harness that
//! checks each extremal statement against it.

mod checks;
mod search;
mod verify;

pub use checks::{
    chem_relaxation, distinct_pair_count, distinct_pair_exchange_check, relaxation_objective,
    y_closed_form, y_graph_check, y_sequence, Relaxation, YGraphRow,
};
pub use search::{
    search_extremum, Direction, Exponent, ExtremalReport, SearchOptions, Verdict, DEFAULT_BUDGET,
};
pub use verify::{
    chemical_maximizers, path_sequence, star_sequence, verify, TheoremId, VerifyOptions,
    DEFAULT_CONSTANTS, THRESHOLD_OFFSET,
};
