//! Windowed sumsets and representation enumeration.

mod kernel;
mod lattice;
mod reps;

pub use kernel::{sumset, sumset_union_family};
pub use lattice::{for_each_pair_in_box, sumset_lattice};
pub use reps::{
    DEFAULT_HORIZON_MARGIN, MAX_HORIZON, RepresentationReport, Tail, TailKind, default_horizon,
    min_horizon, representations, representations_with,
};
