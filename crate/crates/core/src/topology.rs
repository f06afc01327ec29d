//! Topological data of real curves and coverings, and the admissibility
//! predicates that decide which coverings can exist.
//!
//! A real curve has a topological type `(g, s, a)`: genus, number of real
//! circles, and whether the complement of the real locus is connected
//! (`a = 1`) or splits into two halves (`a = 0`). A covering of degree `k`
//! restricts to each real circle as a circle map whose absolute winding
//! number is that component's topological degree.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TopologyError {
    #[error("a must be 0 or 1, got {0}")]
    BadA(u8),
    #[error("topological type ({g},{s},{a}) is not realizable by a real curve")]
    NotWeichold { g: u32, s: u32, a: u8 },
    #[error("degree vector {0:?} is not sorted non-increasing")]
    Unsorted(Vec<u32>),
    #[error("degree vector has {len} entries but s = {s}")]
    LengthMismatch { len: usize, s: u32 },
    #[error("covering degree must be at least 2, got {0}")]
    DegreeTooSmall(u32),
    #[error("unknown target {0:?}; expected \"P1\" or \"R0\"")]
    UnknownTarget(String),
}

/// Existence criterion for real curves of a given topological type.
pub fn weichold_admissible(g: u32, s: u32, a: u8) -> bool {
    match a {
        1 => s <= g,
        0 => s % 2 == (g + 1) % 2 && 1 <= s && s <= g + 1,
        _ => false,
    }
}

/// Topological type `(g, s, a)` of a real curve.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct TopType {
    pub g: u32,
    pub s: u32,
    pub a: u8,
}

impl TopType {
    /// Validated constructor: rejects types no real curve has.
    pub fn new(g: u32, s: u32, a: u8) -> Result<Self, TopologyError> {
        if a > 1 {
            return Err(TopologyError::BadA(a));
        }
        if !weichold_admissible(g, s, a) {
            return Err(TopologyError::NotWeichold { g, s, a });
        }
        Ok(Self { g, s, a })
    }

    /// A candidate type that may fail the existence criterion.
    pub const fn candidate(g: u32, s: u32, a: u8) -> Self {
        Self { g, s, a }
    }

    pub fn is_admissible(&self) -> bool {
        weichold_admissible(self.g, self.s, self.a)
    }

    /// M-curves have the maximal number `g + 1` of real components.
    pub fn is_m_curve(&self) -> bool {
        self.s == self.g + 1
    }
}

impl fmt::Display for TopType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.g, self.s, self.a)
    }
}

/// The real rational curve a covering maps to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CoverTarget {
    /// The projective line, real locus a circle.
    #[serde(rename = "P1")]
    ProjLine,
    /// The anisotropic conic: genus 0, no real points.
    #[serde(rename = "R0")]
    AnisotropicConic,
}

impl CoverTarget {
    pub fn as_str(&self) -> &'static str {
        match self {
            CoverTarget::ProjLine => "P1",
            CoverTarget::AnisotropicConic => "R0",
        }
    }
}

impl fmt::Display for CoverTarget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CoverTarget {
    type Err = TopologyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "P1" => Ok(CoverTarget::ProjLine),
            "R0" => Ok(CoverTarget::AnisotropicConic),
            other => Err(TopologyError::UnknownTarget(other.to_string())),
        }
    }
}

/// Topological degrees of the real components, sorted non-increasing.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DegreeVector(Vec<u32>);

impl DegreeVector {
    /// Accepts only canonical (non-increasing) input.
    pub fn new(entries: Vec<u32>) -> Result<Self, TopologyError> {
        if entries.windows(2).any(|w| w[0] < w[1]) {
            return Err(TopologyError::Unsorted(entries));
        }
        Ok(Self(entries))
    }

    /// Sorts arbitrary component degrees into canonical form.
    pub fn canonical(mut entries: Vec<u32>) -> Self {
        entries.sort_unstable_by(|a, b| b.cmp(a));
        Self(entries)
    }

    pub fn zeros(s: u32) -> Self {
        Self(vec![0; s as usize])
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn sum(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Number of components with nonzero degree.
    pub fn nonzero_count(&self) -> u32 {
        self.0.iter().filter(|&&d| d != 0).count() as u32
    }

    pub fn last(&self) -> Option<u32> {
        self.0.last().copied()
    }

    pub fn into_inner(self) -> Vec<u32> {
        self.0
    }
}

/// The three clauses characterizing degree vectors of real morphisms of
/// degree `k`. For `s = 0` the zero-component clause is vacuous and the
/// parity clause forces `k` even.
pub fn degree_admissible(degrees: &DegreeVector, k: u32) -> bool {
    first_degree_violation(degrees, k).is_none()
}

fn first_degree_violation(degrees: &DegreeVector, k: u32) -> Option<Violation> {
    let sum = degrees.sum();
    if sum > k {
        return Some(Violation::DegreeSum);
    }
    if !(k - sum).is_multiple_of(2) {
        return Some(Violation::Parity);
    }
    if degrees.last() == Some(0) && sum + 2 > k {
        return Some(Violation::ZeroComponent);
    }
    None
}

/// First predicate a candidate covering fails, in evaluation order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Violation {
    Weichold,
    DegreeSum,
    Parity,
    ZeroComponent,
    /// Non-separating curves never have a totally real fiber.
    Separating,
    ConicRealPoints,
    ConicParity,
}

impl Violation {
    pub fn name(&self) -> &'static str {
        match self {
            Violation::Weichold => "weichold",
            Violation::DegreeSum => "degree_sum",
            Violation::Parity => "parity",
            Violation::ZeroComponent => "zero_component",
            Violation::Separating => "separating",
            Violation::ConicRealPoints => "conic_real_points",
            Violation::ConicParity => "conic_parity",
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Symbolic description of a covering: source type, target, degree and the
/// sorted topological degrees of the real components.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "CoverSpecWire", into = "CoverSpecWire")]
pub struct CoverSpec {
    pub top: TopType,
    pub target: CoverTarget,
    pub k: u32,
    pub degrees: DegreeVector,
}

impl CoverSpec {
    /// Structural checks only; admissibility is a separate question.
    pub fn new(
        top: TopType,
        target: CoverTarget,
        k: u32,
        degrees: DegreeVector,
    ) -> Result<Self, TopologyError> {
        if top.a > 1 {
            return Err(TopologyError::BadA(top.a));
        }
        if degrees.len() != top.s as usize {
            return Err(TopologyError::LengthMismatch { len: degrees.len(), s: top.s });
        }
        if k < 2 {
            return Err(TopologyError::DegreeTooSmall(k));
        }
        Ok(Self { top, target, k, degrees })
    }

    pub fn projective(g: u32, s: u32, a: u8, k: u32, degrees: &[u32]) -> Result<Self, TopologyError> {
        Self::new(
            TopType::candidate(g, s, a),
            CoverTarget::ProjLine,
            k,
            DegreeVector::new(degrees.to_vec())?,
        )
    }

    pub fn conic(g: u32, k: u32) -> Result<Self, TopologyError> {
        Self::new(TopType::candidate(g, 0, 1), CoverTarget::AnisotropicConic, k, DegreeVector::default())
    }

    pub fn is_admissible(&self) -> bool {
        target_admissible(self)
    }

    /// Lexicographic key matching the JSON field order.
    fn sort_key(&self) -> (u32, u32, u8, CoverTarget, u32, &[u32]) {
        (self.top.g, self.top.s, self.top.a, self.target, self.k, self.degrees.entries())
    }
}

impl PartialOrd for CoverSpec {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for CoverSpec {
    fn cmp(&self, other: &Self) -> Ordering {
        self.sort_key().cmp(&other.sort_key())
    }
}

impl fmt::Display for CoverSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {} deg {} delta {:?}", self.top, self.target, self.k, self.degrees.entries())
    }
}

/// JSON layout: `{"g","s","a","target","k","deg"}` in that order.
#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CoverSpecWire {
    g: u32,
    s: u32,
    a: u8,
    target: CoverTarget,
    k: u32,
    deg: Vec<u32>,
}

impl TryFrom<CoverSpecWire> for CoverSpec {
    type Error = TopologyError;

    fn try_from(w: CoverSpecWire) -> Result<Self, Self::Error> {
        CoverSpec::new(TopType::candidate(w.g, w.s, w.a), w.target, w.k, DegreeVector::new(w.deg)?)
    }
}

impl From<CoverSpec> for CoverSpecWire {
    fn from(c: CoverSpec) -> Self {
        CoverSpecWire {
            g: c.top.g,
            s: c.top.s,
            a: c.top.a,
            target: c.target,
            k: c.k,
            deg: c.degrees.into_inner(),
        }
    }
}

/// Returns the first predicate `spec` violates, or `None` if a covering
/// with this data exists (for `k >= 3`; see [`crate::planner`] for `k = 2`).
pub fn admissibility_violation(spec: &CoverSpec) -> Option<Violation> {
    let top = spec.top;
    if !top.is_admissible() {
        return Some(Violation::Weichold);
    }
    match spec.target {
        CoverTarget::ProjLine => {
            if let Some(v) = first_degree_violation(&spec.degrees, spec.k) {
                return Some(v);
            }
            if top.a == 1 && spec.degrees.sum() + 2 > spec.k {
                return Some(Violation::Separating);
            }
            None
        }
        CoverTarget::AnisotropicConic => {
            if top.s != 0 || !spec.degrees.is_empty() {
                return Some(Violation::ConicRealPoints);
            }
            if spec.k % 2 != (top.g + 1) % 2 {
                return Some(Violation::ConicParity);
            }
            None
        }
    }
}

pub fn target_admissible(spec: &CoverSpec) -> bool {
    admissibility_violation(spec).is_none()
}

/// All non-increasing vectors of length `len` with entries summing to at
/// most `budget`, in lexicographic order.
pub(crate) fn sorted_vectors(len: u32, budget: u32) -> Vec<Vec<u32>> {
    fn rec(len: u32, cap: u32, budget: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if len == 0 {
            out.push(prefix.clone());
            return;
        }
        for d in 0..=cap.min(budget) {
            prefix.push(d);
            rec(len - 1, d, budget - d, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(len, budget, budget, &mut Vec::new(), &mut out);
    out
}

/// Every admissible covering with `g <= g_max` and `2 <= k <= k_max`, for both
/// targets, in lexicographic order of `(g, s, a, target, k, deg)`.
pub fn enumerate_admissible(g_max: u32, k_max: u32) -> Vec<CoverSpec> {
    (0..=g_max).flat_map(|g| enumerate_genus(g, k_max)).collect()
}

/// The slice of [`enumerate_admissible`] for a single genus.
pub fn enumerate_genus(g: u32, k_max: u32) -> Vec<CoverSpec> {
    let mut out = Vec::new();
    for s in 0..=g + 1 {
        for a in 0..=1u8 {
            let top = TopType::candidate(g, s, a);
            if !top.is_admissible() {
                continue;
            }
            for target in [CoverTarget::ProjLine, CoverTarget::AnisotropicConic] {
                if target == CoverTarget::AnisotropicConic && s != 0 {
                    continue;
                }
                for k in 2..=k_max {
                    for deg in sorted_vectors(s, k) {
                        let spec = CoverSpec {
                            top,
                            target,
                            k,
                            degrees: DegreeVector(deg),
                        };
                        if target_admissible(&spec) {
                            out.push(spec);
                        }
                    }
                }
            }
        }
    }
    out.sort();
    out
}
