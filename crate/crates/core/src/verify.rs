//! Decides whether a fuzzy graph is a fuzzy magic graph: injective vertex
//! and edge labels, `beta(uv) < alpha(u) + alpha(v)` on every edge, and a
//! common edge sum `alpha(u) + beta(uv) + alpha(v) = m(G) <= 1`.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use thiserror::Error;

use crate::graph::{duplicate_labels, Edge, Element, FuzzyGraph, VertexId};
use crate::label::{cmp_value, format_rational, same_value, Label, Rational};

/// One failed clause. Variants are declared in report order.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Violation {
    NotInjectiveVertexLabels {
        value: Label,
        holders: Vec<VertexId>,
    },
    NotInjectiveEdgeLabels {
        value: Label,
        holders: Vec<Edge>,
    },
    EdgeBoundViolation {
        edge: Edge,
        beta: Label,
        alpha_sum: Rational,
    },
    NonConstantSum {
        edge: Edge,
        sum: Rational,
        reference_sum: Rational,
    },
    ConstantExceedsOne(Rational),
    NoEdges,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NotInjectiveVertexLabels { value, holders } => {
                let ids: Vec<String> = holders.iter().map(|h| h.to_string()).collect();
                write!(f, "vertex label {value} repeated on vertices {}", ids.join(", "))
            }
            Violation::NotInjectiveEdgeLabels { value, holders } => {
                let ids: Vec<String> = holders.iter().map(|h| h.to_string()).collect();
                write!(f, "edge label {value} repeated on edges {}", ids.join(", "))
            }
            Violation::EdgeBoundViolation {
                edge,
                beta,
                alpha_sum,
            } => write!(
                f,
                "edge {edge}: label {beta} is not below endpoint sum {}",
                format_rational(alpha_sum)
            ),
            Violation::NonConstantSum {
                edge,
                sum,
                reference_sum,
            } => write!(
                f,
                "edge {edge}: sum {} differs from {}",
                format_rational(sum),
                format_rational(reference_sum)
            ),
            Violation::ConstantExceedsOne(m) => {
                write!(f, "magic constant {} exceeds 1", format_rational(m))
            }
            Violation::NoEdges => f.write_str("graph has no edges"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationReport {
    /// Present exactly when the graph passes.
    pub magic_constant: Option<Label>,
    pub violations: Vec<Violation>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.magic_constant {
            Some(m) => writeln!(f, "PASS: fuzzy magic graph, m(G) = {m}"),
            None => {
                writeln!(f, "FAIL: {} violation(s)", self.violations.len())?;
                for v in &self.violations {
                    writeln!(f, "  - {v}")?;
                }
                Ok(())
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("graph is not fuzzy magic:\n{0}")]
pub struct NotMagic(pub VerificationReport);

/// Runs every clause and collects all failures.
///
/// Sums that disagree are reported against the most common edge sum; ties
/// go to the sum found on the smallest edge.
pub fn verify_magic(g: &FuzzyGraph) -> VerificationReport {
    let mut violations = Vec::new();

    for dup in duplicate_labels(g.vertices().map(|(id, l)| (Element::Vertex(id), l))) {
        violations.push(Violation::NotInjectiveVertexLabels {
            value: dup.value,
            holders: dup
                .holders
                .into_iter()
                .filter_map(|h| match h {
                    Element::Vertex(id) => Some(id),
                    Element::Edge(_) => None,
                })
                .collect(),
        });
    }
    for dup in duplicate_labels(g.edges().map(|(e, l)| (Element::Edge(e), l))) {
        violations.push(Violation::NotInjectiveEdgeLabels {
            value: dup.value,
            holders: dup
                .holders
                .into_iter()
                .filter_map(|h| match h {
                    Element::Edge(e) => Some(e),
                    Element::Vertex(_) => None,
                })
                .collect(),
        });
    }

    if g.edges().len() == 0 {
        violations.push(Violation::NoEdges);
        return VerificationReport {
            magic_constant: None,
            violations,
        };
    }

    let mut sums: Vec<(Edge, Rational)> = Vec::with_capacity(g.edges().len());
    for (edge, beta) in g.edges() {
        let alpha_sum = g.alpha(edge.u()).expect("endpoint").value()
            + g.alpha(edge.v()).expect("endpoint").value();
        if cmp_value(beta.value(), &alpha_sum).is_ge() {
            violations.push(Violation::EdgeBoundViolation {
                edge,
                beta: beta.clone(),
                alpha_sum: alpha_sum.clone(),
            });
        }
        sums.push((edge, alpha_sum + beta.value()));
    }

    let reference = reference_sum(&sums);
    let mut constant = true;
    for (edge, sum) in &sums {
        if !same_value(sum, reference) {
            constant = false;
            violations.push(Violation::NonConstantSum {
                edge: *edge,
                sum: sum.clone(),
                reference_sum: reference.clone(),
            });
        }
    }
    if constant && reference.numer() > reference.denom() {
        violations.push(Violation::ConstantExceedsOne(reference.clone()));
    }

    let magic_constant = if violations.is_empty() {
        Some(Label::new(reference.clone()).expect("checked against one"))
    } else {
        None
    };
    VerificationReport {
        magic_constant,
        violations,
    }
}

/// Most frequent sum; among equally frequent sums the one met first in edge
/// order.
fn reference_sum(sums: &[(Edge, Rational)]) -> &Rational {
    let mut counts: HashMap<(&BigInt, &BigInt), (usize, usize)> = HashMap::new();
    for (pos, (_, sum)) in sums.iter().enumerate() {
        counts.entry((sum.numer(), sum.denom())).or_insert((0, pos)).0 += 1;
    }
    let (_, (_, first)) = counts
        .into_iter()
        .max_by(|(_, (ca, pa)), (_, (cb, pb))| ca.cmp(cb).then(pb.cmp(pa)))
        .expect("at least one edge");
    &sums[first].1
}

/// `m(G)` of a fuzzy magic graph.
pub fn magic_constant_of(g: &FuzzyGraph) -> Result<Label, NotMagic> {
    let report = verify_magic(g);
    report.magic_constant.clone().ok_or(NotMagic(report))
}

/// Fuzzy magic, and additionally no vertex label equals any edge label.
pub fn is_fuzzy_magic_and_labeling(g: &FuzzyGraph) -> bool {
    verify_magic(g).passed() && g.is_fuzzy_labeling()
}
