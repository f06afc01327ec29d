//! Node-smoothing constructions as symbolic operators on covering data.
//!
//! Each construction glues something onto an existing covering at a node
//! and smooths it. Symbolically it changes the genus, the degree, the
//! number of real components, the invariant `a`, and the topological degree
//! of at most one real component:
//!
//! | step            | g  | k  | s  | degrees / a                                  |
//! |-----------------|----|----|----|----------------------------------------------|
//! | I, real ram.    | +0 | +1 | +0 | placed `d -> |d - 1|`                        |
//! | I, no real ram. | +0 | +1 | +0 | placed `d -> d + 1`                          |
//! | II, real ram.   | +1 | +0 | +1 | new component of degree 0                    |
//! | II, no real ram.| +1 | +0 | +0 | `a = 1`                                      |
//! | III             | +1 | +1 | +1 | new component of degree 1                    |
//! | IV              | +1 | +2 | 0  | no real points                               |
//! | V               | +1 | +1 | 0  | covering of the anisotropic conic            |
//!
//! Components carry stable labels so that plans can name them: `C<i>` for
//! components of the seed covering and `N<i>` for components created by
//! steps, both numbered from 1 in creation order.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::topology::{
    admissibility_violation, CoverSpec, CoverTarget, DegreeVector, TopType, TopologyError,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConstructionError {
    #[error("construction {kind} not applicable: {reason}")]
    PreconditionViolated { kind: Kind, reason: String },
    #[error("seed not in catalog: {0}")]
    SeedNotInCatalog(String),
    #[error("step {index}: {source}")]
    Step {
        index: usize,
        #[source]
        source: Box<ConstructionError>,
    },
    #[error(transparent)]
    Topology(#[from] TopologyError),
}

impl ConstructionError {
    fn pre(kind: Kind, reason: impl Into<String>) -> Self {
        ConstructionError::PreconditionViolated { kind, reason: reason.into() }
    }
}

/// Stable name of a real component.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Label {
    /// Component of the seed covering, `C<i>`.
    Seed(u32),
    /// Component created by a construction step, `N<i>`.
    Created(u32),
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Seed(i) => write!(f, "C{i}"),
            Label::Created(i) => write!(f, "N{i}"),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("bad component label {0:?}; expected C<n> or N<n>")]
pub struct LabelParseError(pub String);

impl FromStr for Label {
    type Err = LabelParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || LabelParseError(s.to_string());
        let (head, tail) = s.split_at(s.char_indices().nth(1).map_or(s.len(), |(i, _)| i));
        let index: u32 = tail.parse().map_err(|_| bad())?;
        if index == 0 {
            return Err(bad());
        }
        match head {
            "C" => Ok(Label::Seed(index)),
            "N" => Ok(Label::Created(index)),
            _ => Err(bad()),
        }
    }
}

impl Serialize for Label {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Label {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Kind {
    I,
    II,
    III,
    IV,
    V,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Kind::I => "I",
            Kind::II => "II",
            Kind::III => "III",
            Kind::IV => "IV",
            Kind::V => "V",
        };
        f.write_str(s)
    }
}

/// Sign of the smoothing parameter at a real node.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Variant {
    /// Two new real branch points: a fold in the real locus.
    WithRealRam,
    /// No real points near the node.
    WithoutRealRam,
    NotApplicable,
}

/// One construction applied to a covering.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "StepWire", into = "StepWire")]
pub struct ConstructionStep {
    kind: Kind,
    variant: Variant,
    placement: Option<Label>,
}

impl ConstructionStep {
    pub fn one(variant: Variant, placement: Label) -> Self {
        assert!(variant != Variant::NotApplicable, "construction I needs a deformation variant");
        Self { kind: Kind::I, variant, placement: Some(placement) }
    }

    pub fn two(variant: Variant) -> Self {
        assert!(variant != Variant::NotApplicable, "construction II needs a deformation variant");
        Self { kind: Kind::II, variant, placement: None }
    }

    pub fn three() -> Self {
        Self { kind: Kind::III, variant: Variant::NotApplicable, placement: None }
    }

    pub fn four() -> Self {
        Self { kind: Kind::IV, variant: Variant::NotApplicable, placement: None }
    }

    pub fn five() -> Self {
        Self { kind: Kind::V, variant: Variant::NotApplicable, placement: None }
    }

    /// Checked constructor for untrusted input.
    pub fn try_new(kind: Kind, variant: Variant, placement: Option<Label>) -> Result<Self, ConstructionError> {
        let has_variant = variant != Variant::NotApplicable;
        match kind {
            Kind::I | Kind::II if !has_variant => {
                return Err(ConstructionError::pre(kind, "a deformation variant is required"))
            }
            Kind::III | Kind::IV | Kind::V if has_variant => {
                return Err(ConstructionError::pre(kind, "takes no deformation variant"))
            }
            _ => {}
        }
        match (kind, placement) {
            (Kind::I, None) => Err(ConstructionError::pre(kind, "a placement is required")),
            (Kind::I, Some(_)) | (_, None) => Ok(Self { kind, variant, placement }),
            (_, Some(_)) => Err(ConstructionError::pre(kind, "takes no placement")),
        }
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    pub fn placement(&self) -> Option<Label> {
        self.placement
    }
}

impl fmt::Display for ConstructionStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.kind)?;
        match self.variant {
            Variant::WithRealRam => write!(f, "/ram")?,
            Variant::WithoutRealRam => write!(f, "/noram")?,
            Variant::NotApplicable => {}
        }
        if let Some(p) = self.placement {
            write!(f, "@{p}")?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
enum VariantWire {
    Ram,
    Noram,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct StepWire {
    kind: Kind,
    #[serde(default)]
    variant: Option<VariantWire>,
    #[serde(default)]
    placement: Option<Label>,
}

impl TryFrom<StepWire> for ConstructionStep {
    type Error = ConstructionError;

    fn try_from(w: StepWire) -> Result<Self, Self::Error> {
        let variant = match w.variant {
            Some(VariantWire::Ram) => Variant::WithRealRam,
            Some(VariantWire::Noram) => Variant::WithoutRealRam,
            None => Variant::NotApplicable,
        };
        ConstructionStep::try_new(w.kind, variant, w.placement)
    }
}

impl From<ConstructionStep> for StepWire {
    fn from(s: ConstructionStep) -> Self {
        StepWire {
            kind: s.kind,
            variant: match s.variant {
                Variant::WithRealRam => Some(VariantWire::Ram),
                Variant::WithoutRealRam => Some(VariantWire::Noram),
                Variant::NotApplicable => None,
            },
            placement: s.placement,
        }
    }
}

/// A covering taken to exist without construction: real hyperelliptic
/// double covers from the known classification, and pencils of general
/// divisors.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum BaseSeed {
    /// Double cover of the projective line.
    Hyperelliptic {
        g: u32,
        s: u32,
        a: u8,
        deg: Vec<u32>,
    },
    /// Double cover of the anisotropic conic; `g` odd.
    HyperellipticR0 { g: u32 },
    /// Real pencil of a general divisor on a curve without real points.
    GenericPencil { g: u32, k: u32 },
    /// Invariant non-real pencil, mapping to the anisotropic conic.
    GenericR0Pencil { g: u32, k: u32 },
}

impl BaseSeed {
    pub fn hyperelliptic(top: TopType, degrees: &DegreeVector) -> Self {
        BaseSeed::Hyperelliptic { g: top.g, s: top.s, a: top.a, deg: degrees.entries().to_vec() }
    }

    /// Checks the seed against the catalog of coverings taken as given.
    pub fn validate(&self) -> Result<(), ConstructionError> {
        let reject = |why: String| Err(ConstructionError::SeedNotInCatalog(why));
        match *self {
            BaseSeed::Hyperelliptic { g, s, a, ref deg } => {
                if TopType::new(g, s, a).is_err() {
                    return reject(format!("({g},{s},{a}) is not a real curve type"));
                }
                if deg.len() != s as usize {
                    return reject(format!("{} degrees for {s} components", deg.len()));
                }
                let all_zero = deg.iter().all(|&d| d == 0);
                let ok = match (a, deg.as_slice()) {
                    (0, [2]) | (0, [1, 1]) => true,
                    (1, _) => all_zero,
                    // Separating hyperelliptic curves with all degrees 0 are M-curves.
                    (0, _) => all_zero && s == g + 1,
                    _ => false,
                };
                if ok {
                    Ok(())
                } else {
                    reject(format!("no real hyperelliptic double cover of type ({g},{s},{a}) with degrees {deg:?}"))
                }
            }
            BaseSeed::HyperellipticR0 { g } => {
                if g % 2 == 1 {
                    Ok(())
                } else {
                    reject(format!("double cover of R0 needs odd genus, got {g}"))
                }
            }
            BaseSeed::GenericPencil { g, k } => {
                if k >= 2 && k % 2 == 0 && g < k {
                    Ok(())
                } else {
                    reject(format!("general real pencil needs even k > g, got g={g} k={k}"))
                }
            }
            BaseSeed::GenericR0Pencil { g, k } => {
                if k >= 2 && k > g && k % 2 == (g + 1) % 2 {
                    Ok(())
                } else {
                    reject(format!("pencil to R0 needs k >= g+1 and k = g+1 mod 2, got g={g} k={k}"))
                }
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Component {
    pub label: Label,
    pub delta: u32,
}

/// Covering data with labeled real components, in creation order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LabeledState {
    pub g: u32,
    pub a: u8,
    pub k: u32,
    pub target: CoverTarget,
    pub components: Vec<Component>,
    created: u32,
}

impl LabeledState {
    pub fn s(&self) -> u32 {
        self.components.len() as u32
    }

    pub fn delta_sum(&self) -> u32 {
        self.components.iter().map(|c| c.delta).sum()
    }

    pub fn component(&self, label: Label) -> Option<&Component> {
        self.components.iter().find(|c| c.label == label)
    }

    /// Sort degrees and forget labels.
    pub fn canonicalize(&self) -> CoverSpec {
        CoverSpec {
            top: TopType::candidate(self.g, self.s(), self.a),
            target: self.target,
            k: self.k,
            degrees: DegreeVector::canonical(self.components.iter().map(|c| c.delta).collect()),
        }
    }

    /// First broken invariant, if any.
    pub fn invariant_violation(&self) -> Option<String> {
        let sum = self.delta_sum();
        if sum > self.k {
            return Some(format!("degree sum {sum} exceeds k = {}", self.k));
        }
        if self.target == CoverTarget::ProjLine && !(self.k - sum).is_multiple_of(2) {
            return Some(format!("k - sum = {} is odd", self.k - sum));
        }
        admissibility_violation(&self.canonicalize())
            .map(|v| format!("{} fails {v}", self.canonicalize()))
    }

    fn push_created(&mut self, delta: u32) {
        self.created += 1;
        self.components.push(Component { label: Label::Created(self.created), delta });
    }
}

pub fn seed_state(seed: &BaseSeed) -> Result<LabeledState, ConstructionError> {
    seed.validate()?;
    let state = match *seed {
        BaseSeed::Hyperelliptic { g, a, ref deg, .. } => LabeledState {
            g,
            a,
            k: 2,
            target: CoverTarget::ProjLine,
            components: deg
                .iter()
                .enumerate()
                .map(|(i, &delta)| Component { label: Label::Seed(i as u32 + 1), delta })
                .collect(),
            created: 0,
        },
        BaseSeed::HyperellipticR0 { g } => LabeledState {
            g,
            a: 1,
            k: 2,
            target: CoverTarget::AnisotropicConic,
            components: Vec::new(),
            created: 0,
        },
        BaseSeed::GenericPencil { g, k } => LabeledState {
            g,
            a: 1,
            k,
            target: CoverTarget::ProjLine,
            components: Vec::new(),
            created: 0,
        },
        BaseSeed::GenericR0Pencil { g, k } => LabeledState {
            g,
            a: 1,
            k,
            target: CoverTarget::AnisotropicConic,
            components: Vec::new(),
            created: 0,
        },
    };
    Ok(state)
}

/// Checks the symbolic preconditions of `step` on `state`.
pub fn check_step(state: &LabeledState, step: &ConstructionStep) -> Result<(), ConstructionError> {
    let kind = step.kind;
    let need_line = || {
        if state.target == CoverTarget::ProjLine {
            Ok(())
        } else {
            Err(ConstructionError::pre(kind, "target must be the projective line"))
        }
    };
    // Re-check well-formedness: fields may have been built by hand.
    ConstructionStep::try_new(step.kind, step.variant, step.placement)?;
    match kind {
        Kind::I => {
            need_line()?;
            let label = step.placement.expect("checked by try_new");
            if state.component(label).is_none() {
                return Err(ConstructionError::pre(kind, format!("no component {label}")));
            }
        }
        Kind::II => {
            need_line()?;
            if state.delta_sum() >= state.k {
                return Err(ConstructionError::pre(
                    kind,
                    "every real fiber is totally real; no non-real point over a real value",
                ));
            }
        }
        Kind::III => need_line()?,
        Kind::IV => {
            need_line()?;
            if state.s() != 0 {
                return Err(ConstructionError::pre(kind, "source must have no real points"));
            }
        }
        Kind::V => {
            if state.target != CoverTarget::AnisotropicConic {
                return Err(ConstructionError::pre(kind, "target must be the anisotropic conic"));
            }
        }
    }
    Ok(())
}

pub fn apply_step(state: &LabeledState, step: &ConstructionStep) -> Result<LabeledState, ConstructionError> {
    check_step(state, step)?;
    let mut next = state.clone();
    match (step.kind, step.variant) {
        (Kind::I, variant) => {
            next.k += 1;
            let label = step.placement.expect("checked");
            let comp = next
                .components
                .iter_mut()
                .find(|c| c.label == label)
                .expect("checked");
            comp.delta = match variant {
                // Degree drops by one; from 0 the orientation flips to give 1.
                Variant::WithRealRam => comp.delta.abs_diff(1),
                _ => comp.delta + 1,
            };
        }
        (Kind::II, Variant::WithRealRam) => {
            next.g += 1;
            next.push_created(0);
        }
        (Kind::II, _) => {
            next.g += 1;
            next.a = 1;
        }
        (Kind::III, _) => {
            next.g += 1;
            next.k += 1;
            next.push_created(1);
        }
        (Kind::IV, _) => {
            next.g += 1;
            next.k += 2;
        }
        (Kind::V, _) => {
            next.g += 1;
            next.k += 1;
        }
    }
    Ok(next)
}

/// Every intermediate state of running `steps` from `seed`, seed first.
pub fn execute_trace(seed: &BaseSeed, steps: &[ConstructionStep]) -> Result<Vec<LabeledState>, ConstructionError> {
    let mut states = vec![seed_state(seed)?];
    for (index, step) in steps.iter().enumerate() {
        let next = apply_step(states.last().expect("nonempty"), step)
            .map_err(|e| ConstructionError::Step { index, source: Box::new(e) })?;
        states.push(next);
    }
    Ok(states)
}

pub fn execute(seed: &BaseSeed, steps: &[ConstructionStep]) -> Result<CoverSpec, ConstructionError> {
    let states = execute_trace(seed, steps)?;
    Ok(states.last().expect("nonempty").canonicalize())
}
