//! Backtracking search for fuzzy magic labelings on an integer grid.
//!
//! Labels are restricted to distinct multiples `c * d` with `c` in `1..=K`.
//! For a fixed magic coefficient `T` the search assigns vertices in id order
//! and derives each edge as `T - c(u) - c(v)` as soon as both endpoints are
//! set, backtracking on range, bound, or distinctness failures. An empty
//! result only says nothing exists on this grid.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::ToPrimitive;
use rayon::prelude::*;
use thiserror::Error;

use crate::graph::{Edge, FuzzyGraph, GraphStructure, VertexId};
use crate::label::{format_rational, Label, Rational};

pub const DEFAULT_LIMIT: usize = 10_000;

/// Grid sizes beyond this are rejected up front.
pub const MAX_COEFFICIENT: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("{items} vertices and edges cannot take distinct values in 1..={max_coefficient}")]
    Infeasible { items: usize, max_coefficient: u64 },
    #[error("target {target} times unit {unit} exceeds 1")]
    TargetTooLarge { target: u64, unit: String },
    #[error("structure has no edges")]
    NoEdges,
    #[error("invalid search spec: {0}")]
    InvalidSpec(&'static str),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchSpec {
    /// `K`: coefficients range over `1..=K`.
    pub max_coefficient: u64,
    /// `T`: required edge sum coefficient; any `T` with `T * d <= 1` if unset.
    pub target: Option<u64>,
    pub unit: Label,
    pub limit: Option<usize>,
    pub parallel: bool,
}

impl SearchSpec {
    pub fn new(max_coefficient: u64, unit: Label) -> Self {
        SearchSpec {
            max_coefficient,
            target: None,
            unit,
            limit: Some(DEFAULT_LIMIT),
            parallel: true,
        }
    }

    pub fn with_target(mut self, target: u64) -> Self {
        self.target = Some(target);
        self
    }

    pub fn with_limit(mut self, limit: Option<usize>) -> Self {
        self.limit = limit;
        self
    }

    pub fn sequential(mut self) -> Self {
        self.parallel = false;
        self
    }
}

/// Integer coefficients for every vertex and edge. Ordering is lexicographic
/// over vertex coefficients (by id) and then edge coefficients.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Assignment {
    pub vertices: BTreeMap<VertexId, u64>,
    pub edges: BTreeMap<Edge, u64>,
}

impl Assignment {
    pub fn vector(&self) -> Vec<u64> {
        self.vertices.values().chain(self.edges.values()).copied().collect()
    }

    /// Edge sum coefficient of the first edge.
    pub fn magic_coefficient(&self) -> Option<u64> {
        let (edge, c) = self.edges.iter().next()?;
        Some(self.vertices.get(&edge.u())? + c + self.vertices.get(&edge.v())?)
    }

    /// Scales every coefficient by `unit`.
    pub fn to_graph(&self, unit: &Label) -> Result<FuzzyGraph, crate::graph::GraphError> {
        FuzzyGraph::build(
            self.vertices.iter().map(|(id, c)| (*id, unit.times(*c))),
            self.edges.iter().map(|(e, c)| (e.u(), e.v(), unit.times(*c))),
        )
    }
}

impl fmt::Display for Assignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vs: Vec<String> = self.vertices.iter().map(|(id, c)| format!("{id}:{c}")).collect();
        let es: Vec<String> = self.edges.iter().map(|(e, c)| format!("{e}:{c}")).collect();
        write!(f, "{{{}; {}}}", vs.join(", "), es.join(", "))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchResult {
    pub solutions: Vec<Assignment>,
    /// False when the limit cut the enumeration short.
    pub exhausted: bool,
}

/// Vertices and edges flattened to indices for the search loop.
struct Layout {
    vertices: Vec<VertexId>,
    edges: Vec<Edge>,
    /// For vertex `k`: `(edge index, other endpoint)` with the other endpoint `< k`.
    back_edges: Vec<Vec<(usize, usize)>>,
    isolated: Vec<bool>,
}

impl Layout {
    fn new(structure: &GraphStructure) -> Self {
        let vertices: Vec<VertexId> = structure.vertices().collect();
        let index: BTreeMap<VertexId, usize> =
            vertices.iter().enumerate().map(|(i, v)| (*v, i)).collect();
        let edges: Vec<Edge> = structure.edges().collect();
        let mut back_edges = vec![Vec::new(); vertices.len()];
        let mut isolated = vec![true; vertices.len()];
        for (ei, e) in edges.iter().enumerate() {
            let (a, b) = (index[&e.u()], index[&e.v()]);
            let (lo, hi) = if a < b { (a, b) } else { (b, a) };
            back_edges[hi].push((ei, lo));
            isolated[a] = false;
            isolated[b] = false;
        }
        Layout {
            vertices,
            edges,
            back_edges,
            isolated,
        }
    }

    fn assignment(&self, raw: &[u64]) -> Assignment {
        let nv = self.vertices.len();
        Assignment {
            vertices: self.vertices.iter().copied().zip(raw[..nv].iter().copied()).collect(),
            edges: self.edges.iter().copied().zip(raw[nv..].iter().copied()).collect(),
        }
    }
}

/// Largest `T` with `T * unit <= 1`, capped at `cap`.
fn max_target(unit: &Label, cap: u64) -> u64 {
    if unit.is_zero() {
        return cap;
    }
    let inverse: Rational = unit.value().recip();
    inverse.floor().to_integer().to_u64().unwrap_or(u64::MAX).min(cap)
}

struct Dfs<'a> {
    layout: &'a Layout,
    target: u64,
    max_coefficient: u64,
    isolated_cap: u64,
    limit: usize,
    used: Vec<bool>,
    vertex_values: Vec<u64>,
    edge_values: Vec<u64>,
    found: Vec<Vec<u64>>,
}

impl<'a> Dfs<'a> {
    fn new(layout: &'a Layout, target: u64, max_coefficient: u64, isolated_cap: u64, limit: usize) -> Self {
        Dfs {
            layout,
            target,
            max_coefficient,
            isolated_cap,
            limit,
            used: vec![false; max_coefficient as usize + 1],
            vertex_values: vec![0; layout.vertices.len()],
            edge_values: vec![0; layout.edges.len()],
            found: Vec::new(),
        }
    }

    fn cap(&self, k: usize) -> u64 {
        if self.layout.isolated[k] {
            self.isolated_cap
        } else {
            // a vertex and an edge on it need at least 1 more
            self.max_coefficient.min(self.target.saturating_sub(2))
        }
    }

    /// Places `value` on vertex `k` and derives its back edges. Returns false
    /// (leaving state untouched) if any derived edge is invalid.
    fn place(&mut self, k: usize, value: u64) -> bool {
        if self.used[value as usize] {
            return false;
        }
        self.used[value as usize] = true;
        self.vertex_values[k] = value;
        for i in 0..self.layout.back_edges[k].len() {
            let (ei, j) = self.layout.back_edges[k][i];
            let ends = value + self.vertex_values[j];
            let ok = self.target > ends && {
                let c = self.target - ends;
                c <= self.max_coefficient && c < ends && !self.used[c as usize]
            };
            if !ok {
                self.undo(k, i);
                return false;
            }
            let c = self.target - ends;
            self.used[c as usize] = true;
            self.edge_values[ei] = c;
        }
        true
    }

    /// Releases vertex `k` and its first `placed` back edges.
    fn undo(&mut self, k: usize, placed: usize) {
        for &(ei, _) in &self.layout.back_edges[k][..placed] {
            self.used[self.edge_values[ei] as usize] = false;
        }
        self.used[self.vertex_values[k] as usize] = false;
    }

    fn run(&mut self, k: usize) {
        if self.found.len() >= self.limit {
            return;
        }
        if k == self.layout.vertices.len() {
            let mut raw = self.vertex_values.clone();
            raw.extend_from_slice(&self.edge_values);
            self.found.push(raw);
            return;
        }
        for value in 1..=self.cap(k) {
            if self.place(k, value) {
                self.run(k + 1);
                self.undo(k, self.layout.back_edges[k].len());
                if self.found.len() >= self.limit {
                    return;
                }
            }
        }
    }
}

fn validate(structure: &GraphStructure, spec: &SearchSpec) -> Result<(), SearchError> {
    if structure.size() == 0 {
        return Err(SearchError::NoEdges);
    }
    if spec.max_coefficient == 0 {
        return Err(SearchError::InvalidSpec("max coefficient must be at least 1"));
    }
    if spec.max_coefficient > MAX_COEFFICIENT {
        return Err(SearchError::InvalidSpec("max coefficient above 1000000"));
    }
    if spec.unit.is_zero() {
        return Err(SearchError::InvalidSpec("unit must be positive"));
    }
    let items = structure.order() + structure.size();
    if (spec.max_coefficient as u128) < items as u128 {
        return Err(SearchError::Infeasible {
            items,
            max_coefficient: spec.max_coefficient,
        });
    }
    if let Some(target) = spec.target {
        if spec.unit.times(target) > Rational::from_integer(1.into()) {
            return Err(SearchError::TargetTooLarge {
                target,
                unit: spec.unit.to_string(),
            });
        }
    }
    Ok(())
}

/// All grid labelings of `structure` that are fuzzy magic (and fuzzy
/// labelings, since every coefficient is distinct), in lexicographic order.
pub fn enumerate_magic(
    structure: &GraphStructure,
    spec: &SearchSpec,
) -> Result<SearchResult, SearchError> {
    validate(structure, spec)?;
    let layout = Layout::new(structure);
    let k = spec.max_coefficient;
    let targets: Vec<u64> = match spec.target {
        Some(t) => vec![t],
        None => (1..=max_target(&spec.unit, k.saturating_mul(3))).collect(),
    };
    let isolated_cap = max_target(&spec.unit, k);
    let limit = spec.limit.map_or(usize::MAX, |l| l.saturating_add(1));

    // One shard per (target, value of the first vertex).
    let first_cap = k;
    let shards: Vec<(u64, u64)> = targets
        .iter()
        .flat_map(|&t| (1..=first_cap).map(move |v| (t, v)))
        .collect();
    let run_shard = |&(target, first): &(u64, u64)| -> Vec<Vec<u64>> {
        let mut dfs = Dfs::new(&layout, target, k, isolated_cap, limit);
        if first <= dfs.cap(0) && dfs.place(0, first) {
            dfs.run(1);
        }
        dfs.found
    };
    let mut raw: Vec<Vec<u64>> = if spec.parallel {
        shards.par_iter().flat_map_iter(run_shard).collect()
    } else {
        shards.iter().flat_map(run_shard).collect()
    };
    raw.sort_unstable();
    let exhausted = match spec.limit {
        Some(l) if raw.len() > l => {
            raw.truncate(l);
            false
        }
        _ => true,
    };
    Ok(SearchResult {
        solutions: raw.iter().map(|r| layout.assignment(r)).collect(),
        exhausted,
    })
}

/// Smallest `T` admitting a grid labeling, with the lexicographically first
/// witness.
pub fn minimal_magic_coefficient(
    structure: &GraphStructure,
    max_coefficient: u64,
    unit: &Label,
) -> Result<Option<(u64, Assignment)>, SearchError> {
    let base = SearchSpec::new(max_coefficient, unit.clone());
    validate(structure, &base)?;
    for target in 1..=max_target(unit, max_coefficient.saturating_mul(3)) {
        let spec = base.clone().with_target(target).with_limit(Some(1));
        if let Some(witness) = enumerate_magic(structure, &spec)?.solutions.into_iter().next() {
            return Ok(Some((target, witness)));
        }
    }
    Ok(None)
}

/// One family member's evidence. Says nothing beyond the grid `K`, `d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExploreRow {
    pub n: u64,
    pub max_coefficient: u64,
    pub unit: Label,
    pub target: Option<u64>,
    /// Whether `target` admits a labeling; `None` when no target was given.
    pub target_witness: Option<Option<Assignment>>,
    /// Smallest magic coefficient on the grid with a witness.
    pub minimal: Option<(u64, Assignment)>,
}

impl ExploreRow {
    pub fn found(&self) -> bool {
        match &self.target_witness {
            Some(w) => w.is_some(),
            None => self.minimal.is_some(),
        }
    }
}

impl fmt::Display for ExploreRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "n={} within grid K={}, d={}: found={}",
            self.n,
            self.max_coefficient,
            self.unit,
            self.found()
        )?;
        if let Some(t) = self.target {
            write!(f, " (target T={t})")?;
        }
        match &self.minimal {
            Some((t, w)) => write!(
                f,
                ", minimal T={t} (m={}), witness {w}",
                format_rational(&self.unit.times(*t))
            ),
            None => write!(f, ", no labeling on this grid"),
        }
    }
}

/// Runs the search over a family: each row gives `n`, its structure and the
/// grid to search.
pub fn explore_family(
    rows: impl IntoIterator<Item = (u64, GraphStructure, SearchSpec)>,
) -> Vec<Result<ExploreRow, SearchError>> {
    rows.into_iter()
        .map(|(n, structure, spec)| {
            let target_witness = match spec.target {
                Some(_) => Some(
                    enumerate_magic(&structure, &spec.clone().with_limit(Some(1)))?
                        .solutions
                        .into_iter()
                        .next(),
                ),
                None => None,
            };
            let minimal = minimal_magic_coefficient(&structure, spec.max_coefficient, &spec.unit)?;
            Ok(ExploreRow {
                n,
                max_coefficient: spec.max_coefficient,
                unit: spec.unit.clone(),
                target: spec.target,
                target_witness,
                minimal,
            })
        })
        .collect()
}
