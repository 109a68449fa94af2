//! Knot specifications, diagrams and knot groups with marked meridians.

mod diagram;
mod group;
mod spec;

pub use diagram::{Crossing, OrientedDiagram};
pub use group::{check_knot, diagram_group, two_bridge_presentation, wirtinger, MarkedGroup};
pub use spec::{named_diagram, parse_knot, KnotSpec, PdCrossing};

/// `n`-fold connected sum of `J # -J`.
pub fn build_jn(j: &KnotSpec, n: usize) -> KnotSpec {
    KnotSpec::jn(j, n)
}
