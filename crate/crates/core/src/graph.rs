//! Fuzzy graph data model and the preliminary checks on it: order and size,
//! degrees, the product and sum edge bounds, and label distinctness.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::label::{Label, LabelError, Rational};

#[derive(
    Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize,
)]
#[serde(transparent)]
pub struct VertexId(pub u64);

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl From<u64> for VertexId {
    fn from(id: u64) -> Self {
        VertexId(id)
    }
}

/// An undirected edge, stored with its smaller endpoint first so that `uv`
/// and `vu` are the same value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    u: VertexId,
    v: VertexId,
}

impl Edge {
    /// Returns `None` for a self-loop.
    pub fn new(a: impl Into<VertexId>, b: impl Into<VertexId>) -> Option<Self> {
        let (a, b) = (a.into(), b.into());
        match a.cmp(&b) {
            std::cmp::Ordering::Less => Some(Edge { u: a, v: b }),
            std::cmp::Ordering::Greater => Some(Edge { u: b, v: a }),
            std::cmp::Ordering::Equal => None,
        }
    }

    pub fn u(&self) -> VertexId {
        self.u
    }

    pub fn v(&self) -> VertexId {
        self.v
    }

    pub fn endpoints(&self) -> (VertexId, VertexId) {
        (self.u, self.v)
    }

    pub fn touches(&self, id: VertexId) -> bool {
        self.u == id || self.v == id
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.u, self.v)
    }
}

/// Something that carries a label: a vertex or an edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Element {
    Vertex(VertexId),
    Edge(Edge),
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Element::Vertex(id) => write!(f, "vertex {id}"),
            Element::Edge(e) => write!(f, "edge {e}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex {0} declared more than once")]
    DuplicateVertex(VertexId),
    #[error("edge {0} declared more than once")]
    DuplicateEdge(Edge),
    #[error("self-loop on vertex {0}")]
    SelfLoop(VertexId),
    #[error("edge {u}-{v} references undeclared vertex {missing}")]
    UnknownEndpoint {
        u: VertexId,
        v: VertexId,
        missing: VertexId,
    },
    #[error("label of {element}: {source}")]
    LabelOutOfRange {
        element: Element,
        #[source]
        source: LabelError,
    },
}

/// Vertices and edges without labels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphStructure {
    vertices: BTreeSet<VertexId>,
    edges: BTreeSet<Edge>,
}

impl GraphStructure {
    pub fn new(
        vertices: impl IntoIterator<Item = VertexId>,
        edges: impl IntoIterator<Item = (VertexId, VertexId)>,
    ) -> Result<Self, GraphError> {
        let mut vertex_set = BTreeSet::new();
        for id in vertices {
            if !vertex_set.insert(id) {
                return Err(GraphError::DuplicateVertex(id));
            }
        }
        let mut edge_set = BTreeSet::new();
        for (a, b) in edges {
            let edge = checked_edge(&vertex_set, a, b)?;
            if !edge_set.insert(edge) {
                return Err(GraphError::DuplicateEdge(edge));
            }
        }
        Ok(GraphStructure {
            vertices: vertex_set,
            edges: edge_set,
        })
    }

    /// Path of length `n` on vertices `1..=n+1`.
    pub fn path(n: u64) -> Self {
        let vertices: BTreeSet<_> = (1..=n + 1).map(VertexId).collect();
        let edges = (1..=n).filter_map(|j| Edge::new(j, j + 1)).collect();
        GraphStructure { vertices, edges }
    }

    /// Star with center `0` and leaves `1..=n`.
    pub fn star(n: u64) -> Self {
        let vertices: BTreeSet<_> = (0..=n).map(VertexId).collect();
        let edges = (1..=n).filter_map(|i| Edge::new(0, i)).collect();
        GraphStructure { vertices, edges }
    }

    /// Cycle of length `n` on vertices `1..=n`. Both parities are produced;
    /// `n < 3` yields a path rather than a cycle.
    pub fn cycle(n: u64) -> Self {
        let vertices: BTreeSet<_> = (1..=n).map(VertexId).collect();
        let mut edges: BTreeSet<_> = (1..n).filter_map(|i| Edge::new(i, i + 1)).collect();
        if n >= 3 {
            edges.extend(Edge::new(1, n));
        }
        GraphStructure { vertices, edges }
    }

    pub fn vertices(&self) -> impl ExactSizeIterator<Item = VertexId> + '_ {
        self.vertices.iter().copied()
    }

    pub fn edges(&self) -> impl ExactSizeIterator<Item = Edge> + '_ {
        self.edges.iter().copied()
    }

    pub fn order(&self) -> usize {
        self.vertices.len()
    }

    pub fn size(&self) -> usize {
        self.edges.len()
    }
}

fn checked_edge(
    vertices: &BTreeSet<VertexId>,
    a: VertexId,
    b: VertexId,
) -> Result<Edge, GraphError> {
    let edge = Edge::new(a, b).ok_or(GraphError::SelfLoop(a))?;
    for end in [a, b] {
        if !vertices.contains(&end) {
            return Err(GraphError::UnknownEndpoint {
                u: a,
                v: b,
                missing: end,
            });
        }
    }
    Ok(edge)
}

/// A graph with a membership value on every vertex (`alpha`) and every edge
/// (`beta`). Immutable once built.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FuzzyGraph {
    alpha: BTreeMap<VertexId, Label>,
    beta: BTreeMap<Edge, Label>,
}

impl FuzzyGraph {
    /// Validates and assembles a graph. Labels may be passed as [`Label`]s or
    /// as raw rationals, which are range checked here.
    pub fn build<L: Into<Rational>>(
        vertex_labels: impl IntoIterator<Item = (VertexId, L)>,
        edge_labels: impl IntoIterator<Item = (VertexId, VertexId, L)>,
    ) -> Result<Self, GraphError> {
        let mut alpha = BTreeMap::new();
        for (id, value) in vertex_labels {
            if alpha.contains_key(&id) {
                return Err(GraphError::DuplicateVertex(id));
            }
            let label = Label::new(value.into()).map_err(|source| GraphError::LabelOutOfRange {
                element: Element::Vertex(id),
                source,
            })?;
            alpha.insert(id, label);
        }
        let mut beta = BTreeMap::new();
        for (a, b, value) in edge_labels {
            if a == b {
                return Err(GraphError::SelfLoop(a));
            }
            for end in [a, b] {
                if !alpha.contains_key(&end) {
                    return Err(GraphError::UnknownEndpoint {
                        u: a,
                        v: b,
                        missing: end,
                    });
                }
            }
            let edge = Edge::new(a, b).expect("endpoints differ");
            if beta.contains_key(&edge) {
                return Err(GraphError::DuplicateEdge(edge));
            }
            let label = Label::new(value.into()).map_err(|source| GraphError::LabelOutOfRange {
                element: Element::Edge(edge),
                source,
            })?;
            beta.insert(edge, label);
        }
        Ok(FuzzyGraph { alpha, beta })
    }

    pub fn vertices(&self) -> impl ExactSizeIterator<Item = (VertexId, &Label)> + '_ {
        self.alpha.iter().map(|(id, l)| (*id, l))
    }

    pub fn edges(&self) -> impl ExactSizeIterator<Item = (Edge, &Label)> + '_ {
        self.beta.iter().map(|(e, l)| (*e, l))
    }

    pub fn alpha(&self, id: VertexId) -> Option<&Label> {
        self.alpha.get(&id)
    }

    pub fn beta(&self, edge: Edge) -> Option<&Label> {
        self.beta.get(&edge)
    }

    pub fn label(&self, element: Element) -> Option<&Label> {
        match element {
            Element::Vertex(id) => self.alpha(id),
            Element::Edge(e) => self.beta(e),
        }
    }

    /// Every labelled element, vertices first, in sorted order.
    pub fn elements(&self) -> impl Iterator<Item = (Element, &Label)> + '_ {
        self.vertices()
            .map(|(id, l)| (Element::Vertex(id), l))
            .chain(self.edges().map(|(e, l)| (Element::Edge(e), l)))
    }

    /// Copy of the graph with one label replaced.
    pub fn with_label(&self, element: Element, label: Label) -> Option<Self> {
        let mut out = self.clone();
        let slot = match element {
            Element::Vertex(id) => out.alpha.get_mut(&id)?,
            Element::Edge(e) => out.beta.get_mut(&e)?,
        };
        *slot = label;
        Some(out)
    }

    pub fn structure(&self) -> GraphStructure {
        GraphStructure {
            vertices: self.alpha.keys().copied().collect(),
            edges: self.beta.keys().copied().collect(),
        }
    }

    /// `alpha(u) + beta(uv) + alpha(v)`.
    pub fn edge_sum(&self, edge: Edge) -> Option<Rational> {
        let beta = self.beta.get(&edge)?;
        Some(self.alpha[&edge.u].value() + beta.value() + self.alpha[&edge.v].value())
    }

    /// Crisp order and size: `(|V|, |E|)`.
    pub fn crisp_order_size(&self) -> (usize, usize) {
        (self.alpha.len(), self.beta.len())
    }

    pub fn degrees(&self) -> DegreeSummary {
        let mut degrees: BTreeMap<VertexId, Rational> =
            self.alpha.keys().map(|id| (*id, Rational::zero())).collect();
        for (edge, label) in &self.beta {
            for end in [edge.u, edge.v] {
                *degrees.get_mut(&end).expect("endpoint declared") += label.value();
            }
        }
        let min_degree = degrees.values().min().cloned().unwrap_or_else(Rational::zero);
        let max_degree = degrees.values().max().cloned().unwrap_or_else(Rational::zero);
        DegreeSummary {
            degrees,
            min_degree,
            max_degree,
        }
    }

    /// Edges with `beta(uv) >= alpha(u) * alpha(v)`, sorted.
    pub fn check_product_condition(&self) -> Vec<Edge> {
        self.beta
            .iter()
            .filter(|(e, b)| {
                *b.value() >= self.alpha[&e.u].value() * self.alpha[&e.v].value()
            })
            .map(|(e, _)| *e)
            .collect()
    }

    /// Edges with `beta(uv) >= alpha(u) + alpha(v)`, sorted.
    pub fn check_sum_condition(&self) -> Vec<Edge> {
        self.beta
            .iter()
            .filter(|(e, b)| {
                *b.value() >= self.alpha[&e.u].value() + self.alpha[&e.v].value()
            })
            .map(|(e, _)| *e)
            .collect()
    }

    /// Whether all vertex and edge labels, taken as one pool, are distinct.
    pub fn fuzzy_labeling_report(&self) -> LabelingReport {
        let duplicates = duplicate_labels(self.elements());
        LabelingReport {
            distinct: duplicates.is_empty(),
            duplicates,
        }
    }

    pub fn is_fuzzy_labeling(&self) -> bool {
        self.fuzzy_labeling_report().distinct
    }
}

/// Groups `items` by label and returns the groups with more than one holder,
/// ordered by their first holder.
pub(crate) fn duplicate_labels<'a>(
    items: impl Iterator<Item = (Element, &'a Label)>,
) -> Vec<DuplicateLabel> {
    let mut by_value: BTreeMap<&Label, Vec<Element>> = BTreeMap::new();
    for (element, label) in items {
        by_value.entry(label).or_default().push(element);
    }
    let mut out: Vec<DuplicateLabel> = by_value
        .into_iter()
        .filter(|(_, holders)| holders.len() > 1)
        .map(|(value, mut holders)| {
            holders.sort();
            DuplicateLabel {
                value: value.clone(),
                holders,
            }
        })
        .collect();
    out.sort_by(|a, b| a.holders.cmp(&b.holders));
    out
}

/// Degree of each vertex (sum of incident edge labels) with the minimum and
/// maximum over all vertices. Both extremes are zero for a graph without
/// vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeSummary {
    pub degrees: BTreeMap<VertexId, Rational>,
    pub min_degree: Rational,
    pub max_degree: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DuplicateLabel {
    pub value: Label,
    pub holders: Vec<Element>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabelingReport {
    pub distinct: bool,
    pub duplicates: Vec<DuplicateLabel>,
}
