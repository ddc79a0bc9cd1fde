//! Closed-form fuzzy magic labelings of paths, stars and odd cycles.
//!
//! Every construction works on integer coefficients first: each vertex and
//! edge gets a distinct positive integer `c`, and the membership value is
//! `c * d` for a unit step `d`. Edges always take `{1..n}`; vertices take
//! `{n+1..2n+1}` (path, star) or `{n+1..2n}` (cycle). The common edge sum is
//! `M * d` where `M` is [`magic_coefficient`].
//!
//! The default unit is [`minimal_unit`], the coarsest power of ten keeping
//! `M * d <= 1`. [`paper_unit`] reproduces the fixed piecewise unit tables
//! for comparison; those tables have gaps and a few rows that push the
//! magic constant above one, which is reported as a [`UnitDeviation`].

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_traits::One;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Edge, Element, FuzzyGraph, VertexId};
use crate::label::{Label, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Path,
    Star,
    Cycle,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Path => "path",
            Family::Star => "star",
            Family::Cycle => "cycle",
        })
    }
}

impl FromStr for Family {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "path" => Ok(Family::Path),
            "star" => Ok(Family::Star),
            "cycle" => Ok(Family::Cycle),
            other => Err(format!("unknown family {other:?}")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructError {
    #[error("invalid {family} size n = {n}: {reason}")]
    InvalidN {
        family: Family,
        n: u64,
        reason: &'static str,
    },
    #[error("unit {unit} gives magic constant {magic_constant} > 1")]
    UnitTooLarge { unit: String, magic_constant: String },
    #[error("unit must be positive")]
    ZeroUnit,
    #[error("the piecewise unit table for {family} has no row covering n = {n}")]
    TableGap { family: Family, n: u64 },
}

/// A family member: path of length `n`, star with `n` leaves, or cycle of
/// length `n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FamilySpec {
    family: Family,
    n: u64,
}

/// Largest `n` accepted, so coefficient arithmetic stays inside `u64`.
const MAX_N: u64 = 1 << 56;

impl FamilySpec {
    pub fn new(family: Family, n: u64) -> Result<Self, ConstructError> {
        let invalid = |reason| ConstructError::InvalidN { family, n, reason };
        if n > MAX_N {
            return Err(invalid("too large"));
        }
        match family {
            Family::Path if n < 1 => Err(invalid("a path needs length n >= 1")),
            Family::Star if n < 2 => Err(invalid("a star needs n >= 2 leaves")),
            Family::Cycle if n < 3 => Err(invalid("a cycle needs length n >= 3")),
            Family::Cycle if n % 2 == 0 => Err(invalid("only odd cycles are constructed")),
            _ => Ok(FamilySpec { family, n }),
        }
    }

    pub fn path(n: u64) -> Result<Self, ConstructError> {
        Self::new(Family::Path, n)
    }

    pub fn star(n: u64) -> Result<Self, ConstructError> {
        Self::new(Family::Star, n)
    }

    pub fn cycle(n: u64) -> Result<Self, ConstructError> {
        Self::new(Family::Cycle, n)
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn n(&self) -> u64 {
        self.n
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} n={}", self.family, self.n)
    }
}

/// The integer `M` with `m(G) = M * d` for the construction of `spec`.
pub fn magic_coefficient(spec: FamilySpec) -> u64 {
    let n = spec.n;
    match spec.family {
        Family::Star => 3 * (n + 1),
        Family::Path if n % 2 == 1 => (7 * n + 5) / 2,
        Family::Path => (7 * n + 4) / 2,
        Family::Cycle => (7 * n + 3) / 2,
    }
}

/// Smallest `k >= 1` with `10^k >= magic`.
pub fn minimal_unit_exponent(magic: u64) -> u32 {
    let mut k = 1;
    let mut power: u128 = 10;
    while power < u128::from(magic) {
        power *= 10;
        k += 1;
    }
    k
}

/// Coarsest unit `10^-k` (`k >= 1`) with `magic * 10^-k <= 1`.
pub fn minimal_unit(magic: u64) -> Label {
    Label::decimal_unit(minimal_unit_exponent(magic))
}

/// How the tabulated unit for some `n` differs from [`minimal_unit`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum UnitDeviation {
    /// The tabulated unit makes the magic constant exceed one.
    ExceedsOne,
    /// The tabulated unit is valid but finer than necessary.
    NotMinimal,
}

impl fmt::Display for UnitDeviation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            UnitDeviation::ExceedsOne => "exceeds-one",
            UnitDeviation::NotMinimal => "not-minimal",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PaperUnit {
    pub exponent: u32,
    pub unit: Label,
    pub deviation: Option<UnitDeviation>,
}

/// The unit `10^-k` given by the piecewise table for `spec`, with
/// a deviation flag whenever it differs from [`minimal_unit`].
pub fn paper_unit(spec: FamilySpec) -> Result<PaperUnit, ConstructError> {
    let exponent = paper_table_exponent(spec).ok_or(ConstructError::TableGap {
        family: spec.family,
        n: spec.n,
    })?;
    let minimal = minimal_unit_exponent(magic_coefficient(spec));
    let deviation = match exponent.cmp(&minimal) {
        std::cmp::Ordering::Less => Some(UnitDeviation::ExceedsOne),
        std::cmp::Ordering::Greater => Some(UnitDeviation::NotMinimal),
        std::cmp::Ordering::Equal => None,
    };
    Ok(PaperUnit {
        exponent,
        unit: Label::decimal_unit(exponent),
        deviation,
    })
}

fn paper_table_exponent(spec: FamilySpec) -> Option<u32> {
    let n = spec.n;
    match spec.family {
        Family::Path if n % 2 == 1 => match n {
            1 => Some(1),
            3..=27 => Some(2),
            29..=285 => Some(3),
            _ => open_band(n, 285, 0, 0).map(|i| i + 4),
        },
        Family::Path => match n {
            2 => Some(1),
            4..=28 => Some(2),
            30..=284 => Some(3),
            _ => open_band(n, 284, 0, 0).map(|i| i + 4),
        },
        Family::Star => star_table_exponent(n),
        Family::Cycle => match n {
            3..=27 => Some(2),
            29..=287 => Some(3),
            289..=2849 => Some(3),
            _ => open_band(n, 285, 1, 1).map(|i| i + 4),
        },
    }
}

/// Finds `i >= first` with `base*10^i + slack < n < base*10^(i+1) - slack`.
fn open_band(n: u64, base: u128, first: u32, slack: u128) -> Option<u32> {
    let n = u128::from(n);
    let mut i = first;
    let mut low = base * 10u128.pow(first);
    while low + slack < n {
        let high = low * 10;
        if n + slack < high {
            return Some(i);
        }
        low = high;
        i += 1;
    }
    None
}

/// Star rows: `n = 2`, `3 < n <= 9`, then for `l`-digit `n` (`l >= 2`) the
/// bands `10^(l-1) <= n <= a` and `b <= n <= 10^l - 1` with
/// `a = 3 * sum_{j<l} (10^j - 1)` and `b = 3 * sum_{j<l} 10^j`.
fn star_table_exponent(n: u64) -> Option<u32> {
    match n {
        2 => return Some(1),
        4..=9 => return Some(2),
        0..=9 => return None,
        _ => {}
    }
    let digits = n.to_string().len() as u32;
    let n = u128::from(n);
    let repunit_sum: u128 = (0..digits).map(|j| 10u128.pow(j)).sum();
    let a = 3 * (repunit_sum - u128::from(digits));
    let b = 3 * repunit_sum;
    if 10u128.pow(digits - 1) <= n && n <= a {
        Some(digits)
    } else if b <= n && n < 10u128.pow(digits) {
        Some(digits + 1)
    } else {
        None
    }
}

/// A constructed labeling with its integer view.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MagicLabeling {
    pub spec: FamilySpec,
    pub graph: FuzzyGraph,
    pub unit: Label,
    pub magic_coefficient: u64,
    pub coefficients: BTreeMap<Element, u64>,
}

impl MagicLabeling {
    /// `m(G) = M * d`.
    pub fn magic_constant(&self) -> Label {
        Label::new(self.unit.times(self.magic_coefficient))
            .expect("constructor guarantees M * d <= 1")
    }
}

/// Builds the labeling for `spec`, using `unit` or [`minimal_unit`] by default.
pub fn label_family(spec: FamilySpec, unit: Option<Label>) -> Result<MagicLabeling, ConstructError> {
    let magic = magic_coefficient(spec);
    let unit = unit.unwrap_or_else(|| minimal_unit(magic));
    if unit.is_zero() {
        return Err(ConstructError::ZeroUnit);
    }
    let constant = unit.times(magic);
    if constant > Rational::one() {
        return Err(ConstructError::UnitTooLarge {
            unit: unit.to_string(),
            magic_constant: crate::label::format_rational(&constant),
        });
    }
    let coefficients = match spec.family {
        Family::Path => path_coefficients(spec.n),
        Family::Star => star_coefficients(spec.n),
        Family::Cycle => cycle_coefficients(spec.n),
    };
    let scaled = |c: u64| unit.times(c);
    let vertices = coefficients.iter().filter_map(|(el, c)| match el {
        Element::Vertex(id) => Some((*id, scaled(*c))),
        Element::Edge(_) => None,
    });
    let edges = coefficients.iter().filter_map(|(el, c)| match el {
        Element::Edge(e) => Some((e.u(), e.v(), scaled(*c))),
        Element::Vertex(_) => None,
    });
    let graph = FuzzyGraph::build(vertices, edges).expect("constructed graph is well formed");
    Ok(MagicLabeling {
        spec,
        graph,
        unit,
        magic_coefficient: magic,
        coefficients,
    })
}

pub fn label_path(n: u64, unit: Option<Label>) -> Result<MagicLabeling, ConstructError> {
    label_family(FamilySpec::path(n)?, unit)
}

pub fn label_star(n: u64, unit: Option<Label>) -> Result<MagicLabeling, ConstructError> {
    label_family(FamilySpec::star(n)?, unit)
}

pub fn label_cycle(n: u64, unit: Option<Label>) -> Result<MagicLabeling, ConstructError> {
    label_family(FamilySpec::cycle(n)?, unit)
}

fn vertex(id: u64) -> Element {
    Element::Vertex(VertexId(id))
}

fn edge(a: u64, b: u64) -> Element {
    Element::Edge(Edge::new(a, b).expect("distinct endpoints"))
}

/// Vertices `v_1..v_{n+1}`. Edge `v_j v_{j+1}` gets `j`; odd vertex
/// `v_{2i-1}` gets `2n+2-i`; even vertex `v_{2i}` gets `B-i` where
/// `B = floor((3n+3)/2)`. Every edge sums to `2n+1+B`.
fn path_coefficients(n: u64) -> BTreeMap<Element, u64> {
    let top = (3 * n + 3) / 2;
    let mut out = BTreeMap::new();
    for k in 1..=n + 1 {
        let c = if k % 2 == 1 {
            2 * n + 2 - (k + 1) / 2
        } else {
            top - k / 2
        };
        out.insert(vertex(k), c);
    }
    for j in 1..=n {
        out.insert(edge(j, j + 1), j);
    }
    out
}

/// Center `0` gets `n+1`, leaf `i` gets `n+1+i`, edge `0i` gets `n+1-i`.
fn star_coefficients(n: u64) -> BTreeMap<Element, u64> {
    let mut out = BTreeMap::new();
    out.insert(vertex(0), n + 1);
    for i in 1..=n {
        out.insert(vertex(i), n + 1 + i);
        out.insert(edge(0, i), n + 1 - i);
    }
    out
}

/// Edges `v_i v_{i+1}` get `i` and the closing edge `v_n v_1` gets `n`.
/// Walking down from `v_n` in steps of two, `v_{n+2-2i}` gets `n+i`; the
/// remaining vertices `v_{n+1-2i}` continue from `v_1` as `c(v_1) + i`.
fn cycle_coefficients(n: u64) -> BTreeMap<Element, u64> {
    let mut out = BTreeMap::new();
    for i in 1..n {
        out.insert(edge(i, i + 1), i);
    }
    out.insert(edge(1, n), n);
    for i in 1..=(n + 1) / 2 {
        out.insert(vertex(n + 2 - 2 * i), n + i);
    }
    let first = n + (n + 1) / 2;
    for i in 1..=(n - 1) / 2 {
        out.insert(vertex(n + 1 - 2 * i), first + i);
    }
    out
}
