//! Fuzzy magic labelings of graphs.
//!
//! A fuzzy graph carries a membership value in `[0, 1]` on every vertex and
//! edge. It is *fuzzy magic* when vertex labels are distinct, edge labels are
//! distinct, every edge label is below the sum of its endpoint labels, and
//! `alpha(u) + beta(uv) + alpha(v)` is the same constant `m(G) <= 1` on every
//! edge.
//!
//! - [`label`]: exact rational membership values.
//! - [`graph`]: the graph model and basic checks (degrees, edge bounds,
//!   distinctness).
//! - [`construct`]: closed-form labelings of paths, stars and odd cycles.
//! - [`verify`]: the fuzzy magic verifier.
//! - [`search`]: grid search for labelings of arbitrary small graphs.
//! - [`io`]: JSON documents, DOT/CSV export, and the workload demo.

pub mod construct;
pub mod graph;
pub mod io;
pub mod label;
pub mod search;
pub mod verify;

pub use construct::{
    label_cycle, label_family, label_path, label_star, magic_coefficient, minimal_unit,
    paper_unit, ConstructError, Family, FamilySpec, MagicLabeling, PaperUnit, UnitDeviation,
};
pub use graph::{
    DegreeSummary, Edge, Element, FuzzyGraph, GraphError, GraphStructure, VertexId,
};
pub use label::{Label, LabelError, Rational};
pub use search::{
    enumerate_magic, explore_family, minimal_magic_coefficient, Assignment, SearchError,
    SearchResult, SearchSpec,
};
pub use verify::{
    is_fuzzy_magic_and_labeling, magic_constant_of, verify_magic, VerificationReport, Violation,
};
