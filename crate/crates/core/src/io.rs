//! JSON documents, DOT and CSV export, and the departmental workload demo.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::construct::{label_star, Family, MagicLabeling};
use crate::graph::{FuzzyGraph, GraphError, VertexId};
use crate::label::{parse_rational, render_percent, Label, LabelError, Rational};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum IoError {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("field {field}: {source}")]
    Field {
        field: String,
        #[source]
        source: LabelError,
    },
    #[error("unsupported format_version {0} (expected {FORMAT_VERSION})")]
    UnsupportedVersion(u32),
    #[error("invalid graph: {0}")]
    Validation(#[from] GraphError),
    #[error("csv export failed: {0}")]
    Csv(#[from] csv::Error),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphDocument {
    pub format_version: u32,
    pub vertices: Vec<VertexEntry>,
    pub edges: Vec<EdgeEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub meta: Option<DocumentMeta>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VertexEntry {
    pub id: VertexId,
    pub alpha: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeEntry {
    pub u: VertexId,
    pub v: VertexId,
    pub beta: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DocumentMeta {
    pub family: Family,
    pub n: u64,
    /// Always `p/q`.
    pub unit: String,
    pub magic_constant: String,
}

impl GraphDocument {
    pub fn from_graph(g: &FuzzyGraph) -> Self {
        GraphDocument {
            format_version: FORMAT_VERSION,
            vertices: g
                .vertices()
                .map(|(id, alpha)| VertexEntry {
                    id,
                    alpha: alpha.to_string(),
                })
                .collect(),
            edges: g
                .edges()
                .map(|(e, beta)| EdgeEntry {
                    u: e.u(),
                    v: e.v(),
                    beta: beta.to_string(),
                })
                .collect(),
            meta: None,
        }
    }

    pub fn from_labeling(labeling: &MagicLabeling) -> Self {
        let mut doc = Self::from_graph(&labeling.graph);
        doc.meta = Some(DocumentMeta {
            family: labeling.spec.family(),
            n: labeling.spec.n(),
            unit: labeling.unit.to_fraction_string(),
            magic_constant: labeling.magic_constant().to_string(),
        });
        doc
    }

    pub fn parse(text: &str) -> Result<Self, IoError> {
        let doc: GraphDocument = serde_json::from_str(text).map_err(|e| IoError::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })?;
        if doc.format_version != FORMAT_VERSION {
            return Err(IoError::UnsupportedVersion(doc.format_version));
        }
        Ok(doc)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(self).expect("document serializes") + "\n"
    }

    /// Parses every label and validates the result as a graph.
    pub fn to_graph(&self) -> Result<FuzzyGraph, IoError> {
        let field = |name: String, text: &str| -> Result<Rational, IoError> {
            parse_rational(text).map_err(|source| IoError::Field { field: name, source })
        };
        let vertices = self
            .vertices
            .iter()
            .enumerate()
            .map(|(i, v)| Ok((v.id, field(format!("vertices[{i}].alpha"), &v.alpha)?)))
            .collect::<Result<Vec<_>, IoError>>()?;
        let edges = self
            .edges
            .iter()
            .enumerate()
            .map(|(i, e)| Ok((e.u, e.v, field(format!("edges[{i}].beta"), &e.beta)?)))
            .collect::<Result<Vec<_>, IoError>>()?;
        Ok(FuzzyGraph::build(vertices, edges)?)
    }

    /// Unit recorded in the metadata, if any.
    pub fn unit(&self) -> Result<Option<Label>, IoError> {
        match &self.meta {
            Some(meta) => meta
                .unit
                .parse()
                .map(Some)
                .map_err(|source| IoError::Field {
                    field: "meta.unit".into(),
                    source,
                }),
            None => Ok(None),
        }
    }
}

pub fn to_json(g: &FuzzyGraph) -> String {
    GraphDocument::from_graph(g).to_json_string()
}

pub fn labeling_to_json(labeling: &MagicLabeling) -> String {
    GraphDocument::from_labeling(labeling).to_json_string()
}

pub fn from_json(text: &str) -> Result<FuzzyGraph, IoError> {
    GraphDocument::parse(text)?.to_graph()
}

/// Undirected DOT text with `id: alpha` node labels and `beta` edge labels.
pub fn to_dot(g: &FuzzyGraph) -> String {
    let mut out = String::from("graph G {\n");
    for (id, alpha) in g.vertices() {
        out.push_str(&format!("  {id} [label=\"{id}: {alpha}\"];\n"));
    }
    for (e, beta) in g.edges() {
        out.push_str(&format!("  {} -- {} [label=\"{beta}\"];\n", e.u(), e.v()));
    }
    out.push_str("}\n");
    out
}

/// One row per element: `kind,u,v,label` with `v` empty for vertices.
pub fn to_csv(g: &FuzzyGraph) -> Result<String, IoError> {
    let mut writer = csv::Writer::from_writer(Vec::new());
    writer.write_record(["kind", "u", "v", "label"])?;
    for (id, alpha) in g.vertices() {
        writer.write_record(["vertex", &id.to_string(), "", &alpha.to_string()])?;
    }
    for (e, beta) in g.edges() {
        writer.write_record(["edge", &e.u().to_string(), &e.v().to_string(), &beta.to_string()])?;
    }
    let bytes = writer.into_inner().map_err(|e| IoError::Csv(e.into_error().into()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

/// Coordinator `D` shares work with departments `D1..D4`; each
/// `D + Di + Ei` must total the whole task. This is the star with four
/// leaves at unit `1/15`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WorkloadTable {
    /// `D, D1..D4`.
    pub departments: Vec<(String, Rational)>,
    /// `E1..E4`, the share between `D` and `Di`.
    pub shares: Vec<(String, Rational)>,
    /// `D + Di + Ei` for each `i`.
    pub totals: Vec<Rational>,
}

pub fn demo_workload() -> WorkloadTable {
    let unit = Label::from_ratio(1, 15).expect("1/15 is a label");
    let labeling = label_star(4, Some(unit)).expect("3 * 5 / 15 = 1");
    let g = &labeling.graph;
    let alpha = |id: u64| g.alpha(VertexId(id)).expect("vertex").value().clone();
    let departments = (0..=4u64)
        .map(|i| {
            let name = if i == 0 { "D".to_string() } else { format!("D{i}") };
            (name, alpha(i))
        })
        .collect();
    let mut shares = Vec::new();
    let mut totals = Vec::new();
    for (e, beta) in g.edges() {
        let leaf = e.v().0;
        shares.push((format!("E{leaf}"), beta.value().clone()));
        totals.push(g.edge_sum(e).expect("edge"));
    }
    WorkloadTable {
        departments,
        shares,
        totals,
    }
}

impl fmt::Display for WorkloadTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let row = |f: &mut fmt::Formatter<'_>, head: &str, cells: Vec<String>| {
            let mut line = format!("{head:<16}");
            for c in cells {
                line.push_str(&format!("{c:<8}"));
            }
            writeln!(f, "{}", line.trim_end())
        };
        let blank = || std::iter::once(String::new());
        row(f, "Dep.", self.departments.iter().map(|(n, _)| n.clone()).collect())?;
        row(
            f,
            "D.'s Work",
            self.departments.iter().map(|(_, v)| render_percent(v)).collect(),
        )?;
        row(
            f,
            "Sharing",
            blank().chain(self.shares.iter().map(|(n, _)| n.clone())).collect(),
        )?;
        row(
            f,
            "S.'s work",
            blank().chain(self.shares.iter().map(|(_, v)| render_percent(v))).collect(),
        )?;
        row(
            f,
            "D + Di + Ei",
            blank().chain(self.totals.iter().map(render_percent)).collect(),
        )
    }
}
