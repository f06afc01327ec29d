//! Degree-4 coverings with all topological degrees 0 and a prescribed
//! covering number.
//!
//! Every build starts from a cyclic chain of `N` fold components over the
//! arcs `[(m - 0.6)/N, (m + 0.6)/N]`. Consecutive arcs overlap in a band of
//! width `0.2/N`, and arcs two apart are disjoint. Even arcs belong to one
//! hyperelliptic M-curve, odd arcs to the other. Nodes between real
//! components are smoothed either into one component (`merge`) or, for a
//! node joining two points of the same component, into two components with
//! a pair of new folds (`split`).

use num_traits::Signed;
use serde::Serialize;
use thiserror::Error;

use crate::constructions::{ConstructionStep, Label, Variant};
use crate::pl::{min_circle_cover, q, qi, surgery, PlComponent, PlCover, PlMap, Site, Q};
use crate::topology::{CoverSpec, CoverTarget, TopType};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Covering4Error {
    #[error("infeasible covering-number target: {0}")]
    InfeasibleTarget(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct CoveringNumberTarget {
    pub top: TopType,
    pub kcov: u32,
}

impl CoveringNumberTarget {
    pub fn new(g: u32, s: u32, a: u8, kcov: u32) -> Result<Self, Covering4Error> {
        let top = TopType::new(g, s, a).map_err(|e| Covering4Error::InfeasibleTarget(e.to_string()))?;
        if s == 0 {
            return Err(Covering4Error::InfeasibleTarget("no real components".into()));
        }
        if kcov == 0 || kcov > s {
            return Err(Covering4Error::InfeasibleTarget(format!("covering number {kcov} outside 1..={s}")));
        }
        Ok(Self { top, kcov })
    }
}

/// Minimal number of real components whose images cover the circle, or 0
/// when they never do.
pub fn covering_number(c: &PlCover) -> usize {
    let arcs: Vec<_> = c.image_arcs().into_iter().map(|(_, a)| a).collect();
    min_circle_cover(&arcs).unwrap_or(0)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BuiltCover {
    pub spec: CoverSpec,
    pub cover: PlCover,
    pub covering_number: usize,
}

/// Real components and the symbolic type they belong to.
struct Build {
    maps: Vec<PlMap>,
    g: u32,
    s: u32,
    a: u8,
}

struct ChainLink {
    comp: usize,
    last_arc: i64,
}

/// The M-curve of genus `G` whose `G + 1` components form a cyclic chain.
struct Chain {
    build: Build,
    links: Vec<ChainLink>,
    n: i64,
    /// Part of the first link's image met by no other component.
    private: (Q, Q),
}

fn tent(lo: Q, hi: Q) -> PlMap {
    PlMap::from_lifts(vec![lo, hi], 0).expect("tent").normalized()
}

fn chain_arc(m: i64, n: i64) -> PlMap {
    tent(q(10 * m - 6, 10 * n), q(10 * m + 6, 10 * n))
}

fn lift_at(lifts: &[Q], w: i64, idx: usize) -> Q {
    let n = lifts.len();
    &lifts[idx % n] + qi(w * (idx / n) as i64)
}

fn to_int(x: &Q) -> i64 {
    assert!(x.is_integer());
    i64::try_from(x.to_integer()).expect("small winding")
}

/// First increasing segment passing over `x`, with the lift there.
fn up_point(map: &PlMap, x: &Q) -> (usize, Q) {
    map.segments()
        .iter()
        .enumerate()
        .find_map(|(i, s)| {
            let y = x + (&s.x0 - x).floor() + qi(1);
            (s.x1 > s.x0 && y < s.x1).then_some((i, y))
        })
        .unwrap_or_else(|| panic!("no increasing branch over {x}"))
}

/// Smooths a node joining increasing branches of `a` and `b` over `x`.
fn merge(a: &PlMap, b: &PlMap, x: &Q) -> PlMap {
    let (i, pa) = up_point(a, x);
    let (j, pb) = up_point(b, x);
    let shift = &pa - &pb;
    let (la, lb, wb) = (a.lifts(), b.lifts(), b.winding());
    let mut out: Vec<Q> = la[..=i].to_vec();
    out.push(pa.clone());
    out.extend((j + 1..=j + lb.len()).map(|idx| lift_at(&lb, wb, idx) + &shift));
    out.push(&pa + qi(wb));
    out.extend(la[i + 1..].iter().map(|y| y + qi(wb)));
    PlMap::from_lifts(out, a.winding() + wb).expect("merge keeps slopes nonzero").normalized()
}

/// Arc of the loop from a point on segment `from` (lift `start`) forward
/// to a point on segment `to` (lift `end`), closed by a fold at distance
/// `eps` on the inner side.
fn piece(lifts: &[Q], w: i64, from: usize, start: &Q, to: usize, end: &Q, eps: &Q) -> PlMap {
    let n = lifts.len();
    let (stop, end) = if to > from { (to, end.clone()) } else { (to + n, end + qi(w)) };
    // Going up at the start means the closing fold is a minimum above `start`.
    let ahead = if lift_at(lifts, w, from + 1) > *start { eps.clone() } else { -eps.clone() };
    let mut out = vec![start + &ahead];
    out.extend((from + 1..=stop).map(|idx| lift_at(lifts, w, idx)));
    PlMap::from_lifts(out, to_int(&(end - start))).expect("fold keeps slopes nonzero")
}

fn total_variation(map: &PlMap) -> Q {
    map.segments().iter().map(|s| (&s.x1 - &s.x0).abs()).sum()
}

/// Smooths the node identifying an increasing and a decreasing point of
/// `map` over `c`, with real ramification. Returns `(beta, alpha)` where
/// `beta` runs from the decreasing point to the increasing one; among all
/// such pairs the one with the shortest `beta` is used.
fn split(map: &PlMap, c: &Q, eps: &Q) -> (PlMap, PlMap) {
    let lifts = map.lifts();
    let w = map.winding();
    let mut ups = Vec::new();
    let mut downs = Vec::new();
    for (i, s) in map.segments().iter().enumerate() {
        let (lo, hi) = if s.x0 < s.x1 { (&s.x0, &s.x1) } else { (&s.x1, &s.x0) };
        let mut y = c + (lo - c).floor() + qi(1);
        while &y < hi {
            if s.x1 > s.x0 {
                ups.push((i, y.clone()));
            } else {
                downs.push((i, y.clone()));
            }
            y += qi(1);
        }
    }
    let mut best: Option<(Q, PlMap, PlMap)> = None;
    for (i, p) in &ups {
        for (j, qd) in &downs {
            let beta = piece(&lifts, w, *j, qd, *i, p, eps);
            let tv = total_variation(&beta);
            if best.as_ref().is_none_or(|(b, _, _)| tv < *b) {
                let alpha = piece(&lifts, w, *i, p, *j, qd, eps);
                best = Some((tv, beta, alpha));
            }
        }
    }
    let (_, beta, alpha) = best.unwrap_or_else(|| panic!("no fold pair over {c}"));
    (beta.normalized(), alpha.normalized())
}

/// Two hyperelliptic M-curves with interleaved ovals glued at one real node.
fn base_mcurve(genus: u32) -> Chain {
    let g = genus as i64;
    if g % 2 == 0 {
        let n = g + 2;
        let mut maps: Vec<PlMap> = (0..n).map(|m| chain_arc(m, n)).collect();
        let first = merge(&maps[0], &maps[1], &q(5, 10 * n));
        maps.drain(..2);
        maps.insert(0, first);
        let mut links = vec![ChainLink { comp: 0, last_arc: 1 }];
        links.extend((2..n).map(|m| ChainLink { comp: (m - 1) as usize, last_arc: m }));
        let build = Build { maps, g: genus, s: (n - 1) as u32, a: 0 };
        Chain { build, links, n, private: (q(-35, 100 * n), q(35, 100 * n)) }
    } else {
        let n = g + 1;
        let mut maps: Vec<PlMap> = (0..n).map(|m| chain_arc(m, n)).collect();
        // The extra oval of the larger curve sits inside the first arc.
        let inner = tent(q(-35, 100 * n), q(-5, 100 * n));
        maps[0] = merge(&maps[0], &inner, &q(-20, 100 * n));
        let links = (0..n).map(|m| ChainLink { comp: m as usize, last_arc: m }).collect();
        let build = Build { maps, g: genus, s: n as u32, a: 0 };
        Chain { build, links, n, private: (q(5, 100 * n), q(35, 100 * n)) }
    }
}

/// M-curve of genus `genus` with covering number `kcov`.
fn mcurve(genus: u32, kcov: u32) -> Build {
    let chain = base_mcurve(kcov - 1);
    let mut build = chain.build;
    let splits = genus + 1 - kcov;
    if splits == 0 {
        return build;
    }
    let link = chain.links.get(1).unwrap_or(&chain.links[0]);
    let lo = q(10 * link.last_arc + 4, 10 * chain.n);
    let width = q(2, 10 * chain.n);
    let r = splits as i64;
    let eps = &width / qi(4 * (r + 1));
    let mut current = link.comp;
    for i in 1..=r {
        let c = &lo + &width * q(i, r + 1);
        let (beta, alpha) = split(&build.maps[current], &c, &eps);
        build.maps[current] = beta;
        build.maps.push(alpha);
        current = build.maps.len() - 1;
        build.g += 1;
        build.s += 1;
    }
    build
}

/// Separating curve that is not an M-curve: an M-curve with extra folds
/// inside the first link, then the first `b + 1` links joined in a row.
fn separating(g: u32, s: u32, kcov: u32) -> Build {
    let b = (g + 1 - s) / 2;
    let chain = base_mcurve(kcov + b - 1);
    let mut build = chain.build;
    let extra = (s - kcov) as i64;
    let (lo, hi) = chain.private;
    let slot = (&hi - &lo) / qi(extra.max(1));
    for j in 0..extra {
        let start = &lo + &slot * qi(j);
        build.maps.push(tent(&start + &slot * q(1, 4), &start + &slot * q(3, 4)));
        build.g += 1;
        build.s += 1;
    }
    let first = chain.links[0].comp;
    for j in 1..=b as usize {
        let x = q(10 * chain.links[j - 1].last_arc + 5, 10 * chain.n);
        let joined = merge(&build.maps[first], &build.maps[chain.links[j].comp], &x);
        build.maps[first] = joined;
        build.g += 1;
        build.s -= 1;
    }
    let absorbed: Vec<usize> = chain.links[1..=b as usize].iter().map(|l| l.comp).collect();
    build.maps = std::mem::take(&mut build.maps)
        .into_iter()
        .enumerate()
        .filter(|(i, _)| !absorbed.contains(i))
        .map(|(_, m)| m)
        .collect();
    build
}

fn into_cover(build: &Build) -> PlCover {
    PlCover {
        target: CoverTarget::ProjLine,
        k: 4,
        components: build
            .maps
            .iter()
            .enumerate()
            .map(|(i, map)| PlComponent { label: Label::Seed(i as u32 + 1), map: map.clone() })
            .collect(),
    }
}

fn build(g: u32, s: u32, a: u8, kcov: u32) -> Build {
    if a == 1 {
        // One conjugate pair over a real value with free sheets is glued
        // and smoothed without real points: genus up, a = 1.
        let below = if s % 2 == g % 2 { 0 } else { 1 };
        let mut inner = build(g - 1, s, below, kcov);
        let step = ConstructionStep::two(Variant::WithoutRealRam);
        surgery(&into_cover(&inner), &step, &Site::Canonical).expect("a fiber with non-real points");
        inner.g += 1;
        inner.a = 1;
        return inner;
    }
    if s == g + 1 {
        mcurve(g, kcov)
    } else {
        separating(g, s, kcov)
    }
}

/// Builds a degree-4 covering of the given type, all topological degrees
/// 0, with covering number `target.kcov`.
pub fn build_covnum(target: &CoveringNumberTarget) -> Result<BuiltCover, Covering4Error> {
    let TopType { g, s, a } = target.top;
    CoveringNumberTarget::new(g, s, a, target.kcov)?;
    let built = build(g, s, a, target.kcov);
    assert_eq!((built.g, built.s, built.a), (g, s, a), "symbolic bookkeeping");
    assert_eq!(built.maps.len(), s as usize, "one map per real component");
    let cover = into_cover(&built);
    let spec = CoverSpec::projective(g, s, a, 4, &vec![0; s as usize]).expect("valid type");
    let covering_number = covering_number(&cover);
    Ok(BuiltCover { spec, cover, covering_number })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pl::Arc;

    fn arcs(c: &PlCover) -> Vec<Arc> {
        c.image_arcs().into_iter().map(|(_, a)| a).collect()
    }

    fn meets(a: &Arc, b: &Arc) -> bool {
        match (a, b) {
            (Arc::Proper { start: s1, end: e1 }, Arc::Proper { start: s2, end: e2 }) => {
                a.contains(s2) || a.contains(e2) || b.contains(s1) || b.contains(e1)
            }
            _ => true,
        }
    }

    #[test]
    fn covering_number_zero_without_components() {
        assert_eq!(covering_number(&PlCover::empty(CoverTarget::ProjLine, 4)), 0);
    }

    #[test]
    fn covering_number_one_with_winding() {
        let c = PlCover {
            target: CoverTarget::ProjLine,
            k: 3,
            components: vec![PlComponent {
                label: Label::Seed(1),
                map: PlMap::from_lifts(vec![qi(0), q(1, 2)], 1).unwrap(),
            }],
        };
        assert_eq!(covering_number(&c), 1);
    }

    #[test]
    fn genus_two_mcurve() {
        let t = CoveringNumberTarget::new(2, 3, 0, 3).unwrap();
        let built = build_covnum(&t).unwrap();
        assert_eq!(built.covering_number, 3);
        let a = arcs(&built.cover);
        for i in 0..3 {
            for j in 0..3 {
                if i != j {
                    assert!(meets(&a[i], &a[j]), "3-cycle {i} {j}");
                }
            }
        }
    }

    #[test]
    fn genus_six_split_recipe() {
        let t = CoveringNumberTarget::new(6, 7, 0, 4).unwrap();
        let built = build_covnum(&t).unwrap();
        assert_eq!(built.covering_number, 4);
        assert_eq!(built.cover.components.len(), 7);
    }

    #[test]
    fn even_genus_chain_incidence() {
        // Ovals of the two curves before gluing, genus 2 each.
        let n = 6;
        let ovals: Vec<Arc> = (0..n).map(|m| chain_arc(m, n).image_arc()).collect();
        let one = |j: usize| &ovals[2 * j];
        let two = |j: usize| &ovals[2 * j + 1];
        let gp = 2;
        for j1 in 0..=gp {
            for j2 in 0..=gp {
                let expected = j1 == j2 || j1 == j2 + 1 || (j1 == 0 && j2 == gp);
                assert_eq!(meets(one(j1), two(j2)), expected, "{j1} {j2}");
            }
        }
    }

    #[test]
    fn merge_and_split_bookkeeping() {
        let a = tent(qi(0), q(1, 2));
        let b = tent(q(1, 4), q(3, 4));
        let m = merge(&a, &b, &q(3, 8));
        assert_eq!(m.winding(), 0);
        assert_eq!(m.image_arc(), Arc::proper(qi(0), q(3, 4)));
        let (beta, alpha) = split(&tent(qi(0), q(1, 2)), &q(1, 4), &q(1, 100));
        assert_eq!(beta.image_arc(), Arc::proper(qi(0), q(24, 100)));
        assert_eq!(alpha.image_arc(), Arc::proper(q(26, 100), q(1, 2)));
    }

    #[test]
    fn rejects_bad_targets() {
        assert!(CoveringNumberTarget::new(2, 3, 0, 4).is_err());
        assert!(CoveringNumberTarget::new(2, 3, 0, 0).is_err());
        assert!(CoveringNumberTarget::new(2, 0, 1, 1).is_err());
        assert!(CoveringNumberTarget::new(2, 2, 0, 1).is_err());
    }
}
