//! Piecewise-linear models of the real locus of a covering.
//!
//! A real component is a circle mapped to the target circle `R/Z`. It is
//! stored as a lifted polygon: breakpoints `(t, x)` with `t` in `[0, 1)` and
//! `x` a lift to the real line, closed up by `x(t_0 + 1) = x(t_0) + w` where
//! `w` is the winding number. The covering degree `k` is carried as a sheet
//! budget: non-real sheets are never modelled, only counted.
//!
//! Everything is exact rational arithmetic.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::constructions::{BaseSeed, ConstructionError, ConstructionStep, Kind, Label, Variant};
use crate::planner::Plan;
use crate::topology::CoverTarget;

pub type Q = BigRational;

pub fn q(num: i64, den: i64) -> Q {
    Q::new(BigInt::from(num), BigInt::from(den))
}

pub fn qi(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// Representative of `x mod 1` in `[0, 1)`.
pub fn frac(x: &Q) -> Q {
    x - x.floor()
}

fn to_i64(x: &Q) -> i64 {
    x.to_integer().to_i64().expect("lift out of range")
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PlError {
    #[error("invalid PL map: {0}")]
    InvalidMap(String),
    #[error("{0} is the image of a breakpoint")]
    SingularValue(Q),
    #[error("surgery {kind} not applicable: {reason}")]
    PreconditionViolated { kind: Kind, reason: String },
    #[error("fiber over {x} has {count} real points, more than k = {k}")]
    BudgetExceeded { x: Q, count: usize, k: u32 },
    #[error(transparent)]
    Seed(#[from] ConstructionError),
    #[error("step {index}: {source}")]
    Step {
        index: usize,
        #[source]
        source: Box<PlError>,
    },
}

fn pre(kind: Kind, reason: impl Into<String>) -> PlError {
    PlError::PreconditionViolated { kind, reason: reason.into() }
}

/// One linear piece of a lifted map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Segment {
    pub t0: Q,
    pub x0: Q,
    pub t1: Q,
    pub x1: Q,
}

impl Segment {
    fn lo_hi(&self) -> (&Q, &Q) {
        if self.x0 < self.x1 {
            (&self.x0, &self.x1)
        } else {
            (&self.x1, &self.x0)
        }
    }

    /// Parameters where the lift crosses `x + n` for some integer `n`,
    /// with endpoints excluded.
    fn preimages(&self, x: &Q) -> Vec<Q> {
        let (lo, hi) = self.lo_hi();
        let first = (lo - x).floor() + Q::one();
        let mut out = Vec::new();
        let mut n = first;
        while &(x + &n) < hi {
            let y = x + &n;
            let t = &self.t0 + (&y - &self.x0) / (&self.x1 - &self.x0) * (&self.t1 - &self.t0);
            out.push(frac(&t));
            n += Q::one();
        }
        out
    }

    fn crossings(&self, x: &Q) -> usize {
        let (lo, hi) = self.lo_hi();
        // Integers n with lo < x + n < hi; x is regular so no endpoint hits.
        let count = (hi - x).ceil() - (lo - x).floor() - Q::one();
        to_i64(&count).max(0) as usize
    }
}

/// A lifted circle map with integer winding.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PlMap {
    breakpoints: Vec<(Q, Q)>,
    winding: i64,
}

impl PlMap {
    pub fn new(breakpoints: Vec<(Q, Q)>, winding: i64) -> Result<Self, PlError> {
        if breakpoints.len() < 2 {
            return Err(PlError::InvalidMap("at least two breakpoints needed".into()));
        }
        for (t, _) in &breakpoints {
            if t.is_negative() || *t >= Q::one() {
                return Err(PlError::InvalidMap(format!("parameter {t} outside [0, 1)")));
            }
        }
        if breakpoints.windows(2).any(|w| w[0].0 >= w[1].0) {
            return Err(PlError::InvalidMap("parameters must increase strictly".into()));
        }
        let map = Self { breakpoints, winding };
        if map.segments().iter().any(|s| s.x0 == s.x1) {
            return Err(PlError::InvalidMap("segment with zero slope".into()));
        }
        Ok(map)
    }

    /// Map through the given lifts at uniformly spaced parameters.
    pub fn from_lifts(lifts: Vec<Q>, winding: i64) -> Result<Self, PlError> {
        let n = lifts.len() as i64;
        let points = lifts.into_iter().enumerate().map(|(j, x)| (q(j as i64, n.max(1)), x)).collect();
        Self::new(points, winding)
    }

    pub fn breakpoints(&self) -> &[(Q, Q)] {
        &self.breakpoints
    }

    pub fn winding(&self) -> i64 {
        self.winding
    }

    pub fn lifts(&self) -> Vec<Q> {
        self.breakpoints.iter().map(|(_, x)| x.clone()).collect()
    }

    pub fn segments(&self) -> Vec<Segment> {
        let n = self.breakpoints.len();
        (0..n)
            .map(|i| {
                let (t0, x0) = self.breakpoints[i].clone();
                let (t1, x1) = if i + 1 < n {
                    self.breakpoints[i + 1].clone()
                } else {
                    let (t, x) = &self.breakpoints[0];
                    (t + Q::one(), x + qi(self.winding))
                };
                Segment { t0, x0, t1, x1 }
            })
            .collect()
    }

    /// Same map with nonnegative winding, first lift in `[0, 1)` and
    /// uniform parameters.
    pub fn normalized(&self) -> Self {
        let mut lifts = self.lifts();
        let mut w = self.winding;
        if w < 0 {
            let n = lifts.len();
            let mut rev = Vec::with_capacity(n);
            rev.push(&lifts[0] + qi(w));
            rev.extend(lifts[1..].iter().rev().cloned());
            lifts = rev;
            w = -w;
        }
        let shift = lifts[0].floor();
        let lifts = lifts.into_iter().map(|x| x - &shift).collect();
        Self::from_lifts(lifts, w).expect("normalization keeps validity")
    }

    pub fn image_arc(&self) -> Arc {
        if self.winding != 0 {
            return Arc::FullCircle;
        }
        let lifts = self.lifts();
        let lo = lifts.iter().min().expect("nonempty");
        let hi = lifts.iter().max().expect("nonempty");
        if hi - lo >= Q::one() {
            Arc::FullCircle
        } else {
            Arc::Proper { start: frac(lo), end: frac(hi) }
        }
    }
}

pub fn winding(map: &PlMap) -> i64 {
    map.winding()
}

/// A closed arc of the target circle.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Arc {
    FullCircle,
    /// Counterclockwise from `start` to `end`, both in `[0, 1)`.
    Proper { start: Q, end: Q },
}

impl Arc {
    /// Arc from `start` to `end`, both taken mod 1.
    pub fn proper(start: Q, end: Q) -> Self {
        let (start, end) = (frac(&start), frac(&end));
        assert!(start != end, "degenerate arc");
        Arc::Proper { start, end }
    }

    pub fn length(&self) -> Q {
        match self {
            Arc::FullCircle => Q::one(),
            Arc::Proper { start, end } => frac(&(end - start)),
        }
    }

    pub fn contains(&self, x: &Q) -> bool {
        match self {
            Arc::FullCircle => true,
            Arc::Proper { start, .. } => frac(&(x - start)) <= self.length(),
        }
    }
}

impl fmt::Display for Arc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Arc::FullCircle => f.write_str("circle"),
            Arc::Proper { start, end } => write!(f, "[{start}, {end}]"),
        }
    }
}

#[derive(Debug, Error, Clone, Copy, PartialEq, Eq)]
#[error("the arcs do not cover the circle")]
pub struct NoCover;

/// Size of a smallest subfamily of `arcs` covering the circle.
///
/// Greedy from every starting arc. Starting from the longest arc of an
/// optimal cover, each other arc of that cover meets the rest of the circle
/// in one interval, so the interval greedy is optimal there.
pub fn min_circle_cover(arcs: &[Arc]) -> Result<usize, NoCover> {
    if arcs.iter().any(|a| matches!(a, Arc::FullCircle)) {
        return Ok(1);
    }
    let spans: Vec<(Q, Q)> = arcs
        .iter()
        .map(|a| match a {
            Arc::Proper { start, .. } => (start.clone(), a.length()),
            Arc::FullCircle => unreachable!(),
        })
        .collect();
    let mut best: Option<usize> = None;
    for (s0, l0) in &spans {
        let goal = s0 + Q::one();
        let mut reach = s0 + l0;
        let mut used = 1;
        while reach < goal {
            // Furthest end among arcs containing the current frontier.
            let mut next: Option<Q> = None;
            for (s, l) in &spans {
                let lifted = &reach - frac(&(&reach - s));
                if &reach - &lifted <= *l {
                    let end = lifted + l;
                    if next.as_ref().is_none_or(|n| end > *n) {
                        next = Some(end);
                    }
                }
            }
            match next {
                Some(end) if end > reach => {
                    reach = end;
                    used += 1;
                }
                _ => return Err(NoCover),
            }
            if best.is_some_and(|b| used >= b) {
                break;
            }
        }
        if reach >= goal {
            best = Some(best.map_or(used, |b| b.min(used)));
        }
    }
    best.ok_or(NoCover)
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PlComponent {
    pub label: Label,
    pub map: PlMap,
}

/// Real locus of a covering together with its degree.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PlCover {
    pub target: CoverTarget,
    pub k: u32,
    pub components: Vec<PlComponent>,
}

/// Where to perform a surgery.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Site {
    /// Midpoint of the largest suitable gap between critical values, ties
    /// broken by the smaller start.
    Canonical,
    /// At a given regular value of the target circle.
    Value(Q),
}

impl PlCover {
    pub fn empty(target: CoverTarget, k: u32) -> Self {
        Self { target, k, components: Vec::new() }
    }

    pub fn component(&self, label: Label) -> Option<&PlComponent> {
        self.components.iter().find(|c| c.label == label)
    }

    fn next_created(&self) -> Label {
        let n = self.components.iter().filter(|c| matches!(c.label, Label::Created(_))).count();
        Label::Created(n as u32 + 1)
    }

    /// Images of breakpoints, sorted, in `[0, 1)`.
    pub fn critical_values(&self) -> Vec<Q> {
        let set: BTreeSet<Q> = self
            .components
            .iter()
            .flat_map(|c| c.map.breakpoints.iter().map(|(_, x)| frac(x)))
            .collect();
        set.into_iter().collect()
    }

    /// Open intervals between circularly consecutive critical values, as
    /// lifts `(a, b)` with `a` in `[0, 1)`.
    pub fn gaps(&self) -> Vec<(Q, Q)> {
        let crit = self.critical_values();
        match crit.len() {
            0 => vec![(Q::zero(), Q::one())],
            n => (0..n)
                .map(|i| {
                    let b = if i + 1 < n { crit[i + 1].clone() } else { &crit[0] + Q::one() };
                    (crit[i].clone(), b)
                })
                .collect(),
        }
    }

    /// Gaps ordered by decreasing length, then increasing start.
    fn ranked_gaps(&self) -> Vec<(Q, Q)> {
        let mut gaps = self.gaps();
        gaps.sort_by(|(a1, b1), (a2, b2)| (b2 - a2).cmp(&(b1 - a1)).then(a1.cmp(a2)));
        gaps
    }

    fn gap_containing(&self, x: &Q) -> Result<(Q, Q), PlError> {
        let x = frac(x);
        let crit = self.critical_values();
        if crit.binary_search(&x).is_ok() {
            return Err(PlError::SingularValue(x));
        }
        for (a, b) in self.gaps() {
            if a < x && x < b {
                return Ok((a, b));
            }
            let x1 = &x + Q::one();
            if a < x1 && x1 < b {
                return Ok((a, b));
            }
        }
        unreachable!("gaps cover every regular value")
    }

    pub fn is_regular(&self, x: &Q) -> bool {
        self.critical_values().binary_search(&frac(x)).is_err()
    }

    /// All real points over `x`, as (component, parameter).
    pub fn fiber(&self, x: &Q) -> Result<Vec<(Label, Q)>, PlError> {
        if !self.is_regular(x) {
            return Err(PlError::SingularValue(frac(x)));
        }
        let mut out = Vec::new();
        for c in &self.components {
            for seg in c.map.segments() {
                out.extend(seg.preimages(x).into_iter().map(|t| (c.label, t)));
            }
        }
        Ok(out)
    }

    pub fn fiber_count(&self, x: &Q) -> Result<usize, PlError> {
        if !self.is_regular(x) {
            return Err(PlError::SingularValue(frac(x)));
        }
        Ok(self.count_unchecked(x))
    }

    fn count_unchecked(&self, x: &Q) -> usize {
        self.components
            .iter()
            .flat_map(|c| c.map.segments())
            .map(|s| s.crossings(x))
            .sum()
    }

    /// Regular values at which to sample fibers: every gap midpoint (fiber
    /// counts are constant on gaps) plus grid points, at least 100 in all.
    pub fn regular_samples(&self) -> Vec<Q> {
        let crit = self.critical_values();
        let mut out: BTreeSet<Q> = self.gaps().iter().map(|(a, b)| frac(&((a + b) / qi(2)))).collect();
        for den in [101i64, 103, 107, 109, 113] {
            if out.len() >= 100 {
                break;
            }
            for j in 0..den {
                let x = q(j, den);
                if crit.binary_search(&x).is_err() {
                    out.insert(x);
                }
            }
        }
        out.into_iter().collect()
    }

    /// (value, number of real points) at every sample.
    pub fn sample_fibers(&self) -> Vec<(Q, usize)> {
        self.regular_samples()
            .into_iter()
            .map(|x| {
                let n = self.count_unchecked(&x);
                (x, n)
            })
            .collect()
    }

    pub fn check_budget(&self) -> Result<(), PlError> {
        for (a, b) in self.gaps() {
            let x = frac(&((a + b) / qi(2)));
            let count = self.count_unchecked(&x);
            if count > self.k as usize {
                return Err(PlError::BudgetExceeded { x, count, k: self.k });
            }
        }
        Ok(())
    }

    pub fn image_arcs(&self) -> Vec<(Label, Arc)> {
        self.components.iter().map(|c| (c.label, c.map.image_arc())).collect()
    }

    pub fn windings(&self) -> Vec<(Label, i64)> {
        self.components.iter().map(|c| (c.label, c.map.winding)).collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("serializable")
    }

    /// CSV of `x,fiber_count` over the regular samples.
    pub fn fiber_csv(&self) -> String {
        let mut out = String::from("x,fiber_count\n");
        for (x, n) in self.sample_fibers() {
            let xf = x.to_f64().unwrap_or(f64::NAN);
            out.push_str(&format!("{xf:.6},{n}\n"));
        }
        out
    }
}

pub fn fiber(c: &PlCover, x: &Q) -> Result<Vec<(Label, Q)>, PlError> {
    c.fiber(x)
}

pub fn image_arcs(c: &PlCover) -> Vec<(Label, Arc)> {
    c.image_arcs()
}

/// A point on an increasing segment of `label` over a regular value, with
/// room `eps` on both sides before the next critical value.
struct UpSite {
    segment: usize,
    x: Q,
    eps: Q,
}

fn up_site(c: &PlCover, label: Label, site: &Site) -> Result<UpSite, PlError> {
    let comp = c.component(label).ok_or_else(|| pre(Kind::I, format!("no component {label}")))?;
    let segs = comp.map.segments();
    let find = |a: &Q, b: &Q, x: &Q| -> Option<UpSite> {
        segs.iter().enumerate().find_map(|(i, s)| {
            if s.x1 <= s.x0 {
                return None;
            }
            let n = (&s.x0 - a).ceil();
            let (la, lb) = (a + &n, b + &n);
            (la >= s.x0 && lb <= s.x1).then(|| UpSite {
                segment: i,
                x: x + &n,
                eps: (x - a).min(b - x) / qi(2),
            })
        })
    };
    match site {
        Site::Canonical => {
            for (a, b) in c.ranked_gaps() {
                let mid = (&a + &b) / qi(2);
                if let Some(found) = find(&a, &b, &mid) {
                    return Ok(found);
                }
            }
            Err(pre(Kind::I, format!("{label} has no increasing segment")))
        }
        Site::Value(x) => {
            let (a, b) = c.gap_containing(x)?;
            let x = if frac(x) > a { frac(x) } else { frac(x) + Q::one() };
            find(&a, &b, &x).ok_or_else(|| pre(Kind::I, format!("{label} is not increasing over {x}")))
        }
    }
}

/// Midpoint and half-width for a new fold over a value with at least two
/// free sheets.
fn free_window(c: &PlCover, kind: Kind, site: &Site) -> Result<(Q, Q), PlError> {
    let free = |x: &Q| c.count_unchecked(&frac(x)) + 2 <= c.k as usize;
    match site {
        Site::Canonical => c
            .ranked_gaps()
            .into_iter()
            .map(|(a, b)| ((&a + &b) / qi(2), (b - a) / qi(4)))
            .find(|(m, _)| free(m))
            .ok_or_else(|| pre(kind, "every real fiber has at least k - 1 points")),
        Site::Value(x) => {
            let (a, b) = c.gap_containing(x)?;
            let x = if frac(x) > a { frac(x) } else { frac(x) + Q::one() };
            if !free(&x) {
                return Err(pre(kind, format!("fiber over {} has fewer than two non-real points", frac(&x))));
            }
            let eps = (&x - &a).min(&b - &x) / qi(2);
            Ok((x, eps))
        }
    }
}

fn splice(map: &PlMap, segment: usize, insert: Vec<Q>, shift: i64) -> PlMap {
    let lifts = map.lifts();
    let mut out: Vec<Q> = lifts[..=segment].to_vec();
    out.extend(insert);
    out.extend(lifts[segment + 1..].iter().map(|x| x + qi(shift)));
    PlMap::from_lifts(out, map.winding + shift).expect("splice keeps slopes nonzero").normalized()
}

/// Applies the real-locus counterpart of `step`.
///
/// IV and V and II without real ramification leave the real locus alone
/// and only change the sheet budget.
pub fn surgery(c: &PlCover, step: &ConstructionStep, site: &Site) -> Result<PlCover, PlError> {
    let kind = step.kind();
    let need_line = || {
        if c.target == CoverTarget::ProjLine {
            Ok(())
        } else {
            Err(pre(kind, "target must be the projective line"))
        }
    };
    let mut next = c.clone();
    match kind {
        Kind::I => {
            need_line()?;
            let label = step.placement().ok_or_else(|| pre(kind, "a placement is required"))?;
            let at = up_site(c, label, site)?;
            let idx = c.components.iter().position(|x| x.label == label).expect("found by up_site");
            let map = &c.components[idx].map;
            next.components[idx].map = match step.variant() {
                Variant::WithRealRam => {
                    // Fold back just before x, fold forward again just after x - 1.
                    let insert = vec![&at.x - &at.eps, &at.x + &at.eps - Q::one()];
                    splice(map, at.segment, insert, -1)
                }
                Variant::WithoutRealRam => splice(map, at.segment, vec![at.x], 1),
                Variant::NotApplicable => return Err(pre(kind, "a deformation variant is required")),
            };
            next.k += 1;
        }
        Kind::II => {
            need_line()?;
            let (m, eps) = free_window(c, kind, site)?;
            match step.variant() {
                Variant::WithRealRam => {
                    let map = PlMap::from_lifts(vec![&m - &eps, &m + &eps], 0)?.normalized();
                    next.components.push(PlComponent { label: c.next_created(), map });
                }
                Variant::WithoutRealRam => {}
                Variant::NotApplicable => return Err(pre(kind, "a deformation variant is required")),
            }
        }
        Kind::III => {
            need_line()?;
            let m = match site {
                Site::Canonical => {
                    let (a, b) = c.ranked_gaps().swap_remove(0);
                    (a + b) / qi(2)
                }
                Site::Value(x) => {
                    c.gap_containing(x)?;
                    x.clone()
                }
            };
            let map = PlMap::from_lifts(vec![m.clone(), m + q(1, 2)], 1)?.normalized();
            next.components.push(PlComponent { label: c.next_created(), map });
            next.k += 1;
        }
        Kind::IV => {
            need_line()?;
            if !c.components.is_empty() {
                return Err(pre(kind, "source must have no real points"));
            }
            next.k += 2;
        }
        Kind::V => {
            if c.target != CoverTarget::AnisotropicConic {
                return Err(pre(kind, "target must be the anisotropic conic"));
            }
            next.k += 1;
        }
    }
    next.check_budget()?;
    Ok(next)
}

fn tent(lo: Q, hi: Q) -> PlMap {
    PlMap::from_lifts(vec![lo, hi], 0).expect("tent").normalized()
}

pub fn realize_seed(seed: &BaseSeed) -> Result<PlCover, PlError> {
    seed.validate()?;
    let cover = match *seed {
        BaseSeed::Hyperelliptic { ref deg, .. } => {
            let maps: Vec<PlMap> = match deg.as_slice() {
                [2] => vec![PlMap::from_lifts(vec![qi(0), qi(1)], 2)?],
                [1, 1] => vec![
                    PlMap::from_lifts(vec![qi(0), q(1, 2)], 1)?,
                    PlMap::from_lifts(vec![qi(0), q(1, 2)], 1)?,
                ],
                zeros => {
                    let s = zeros.len() as i64;
                    (0..s).map(|j| tent(q(4 * j + 1, 4 * s), q(4 * j + 3, 4 * s))).collect()
                }
            };
            PlCover {
                target: CoverTarget::ProjLine,
                k: 2,
                components: maps
                    .into_iter()
                    .enumerate()
                    .map(|(i, map)| PlComponent { label: Label::Seed(i as u32 + 1), map })
                    .collect(),
            }
        }
        BaseSeed::HyperellipticR0 { .. } => PlCover::empty(CoverTarget::AnisotropicConic, 2),
        BaseSeed::GenericPencil { k, .. } => PlCover::empty(CoverTarget::ProjLine, k),
        BaseSeed::GenericR0Pencil { k, .. } => PlCover::empty(CoverTarget::AnisotropicConic, k),
    };
    Ok(cover)
}

/// Realizes a plan step by step with canonical sites.
pub fn realize(plan: &Plan) -> Result<PlCover, PlError> {
    let mut cover = realize_seed(&plan.seed)?;
    for (index, step) in plan.steps.iter().enumerate() {
        cover = surgery(&cover, step, &Site::Canonical)
            .map_err(|e| PlError::Step { index, source: Box::new(e) })?;
    }
    Ok(cover)
}

mod wire {
    use super::*;

    #[derive(Serialize, Deserialize)]
    #[serde(deny_unknown_fields)]
    pub struct ComponentWire {
        pub label: Label,
        pub breakpoints: Vec<(String, String)>,
        pub winding: i64,
    }

    #[derive(Serialize, Deserialize)]
    #[serde(deny_unknown_fields)]
    pub struct CoverWire {
        pub target: CoverTarget,
        pub k: u32,
        pub components: Vec<ComponentWire>,
    }

    pub fn parse_q(s: &str) -> Result<Q, String> {
        s.trim().parse::<Q>().map_err(|_| format!("bad rational {s:?}"))
    }
}

impl Serialize for PlCover {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        wire::CoverWire {
            target: self.target,
            k: self.k,
            components: self
                .components
                .iter()
                .map(|c| wire::ComponentWire {
                    label: c.label,
                    breakpoints: c.map.breakpoints.iter().map(|(t, x)| (t.to_string(), x.to_string())).collect(),
                    winding: c.map.winding,
                })
                .collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for PlCover {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let w = wire::CoverWire::deserialize(deserializer)?;
        let mut components = Vec::with_capacity(w.components.len());
        for c in w.components {
            let points = c
                .breakpoints
                .iter()
                .map(|(t, x)| Ok((wire::parse_q(t)?, wire::parse_q(x)?)))
                .collect::<Result<Vec<_>, String>>()
                .map_err(D::Error::custom)?;
            let map = PlMap::new(points, c.winding).map_err(D::Error::custom)?;
            components.push(PlComponent { label: c.label, map });
        }
        Ok(PlCover { target: w.target, k: w.k, components })
    }
}

impl Serialize for Arc {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let mut m = serializer.serialize_map(None)?;
        match self {
            Arc::FullCircle => m.serialize_entry("full", &true)?,
            Arc::Proper { start, end } => {
                m.serialize_entry("start", &start.to_string())?;
                m.serialize_entry("end", &end.to_string())?;
            }
        }
        m.end()
    }
}
