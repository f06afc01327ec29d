//! Brute-force oracles shared by the integration tests. None of these
//! call into the code paths they check.
#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use realcover_core::pl::{Arc, PlCover};
use realcover_core::topology::{CoverSpec, CoverTarget};

pub type Q = BigRational;

pub fn q(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

fn fractional(x: &Q) -> Q {
    let mut y = x.clone();
    while y < Q::zero() {
        y += Q::one();
    }
    while y >= Q::one() {
        y -= Q::one();
    }
    y
}

/// Admissibility straight from the definitions.
pub fn admissible(spec: &CoverSpec) -> bool {
    let (g, s, a, k) = (spec.top.g, spec.top.s, spec.top.a, spec.k);
    let deg = spec.degrees.entries();
    let real_type = match a {
        1 => s <= g,
        0 => 1 <= s && s <= g + 1 && (g + 1 - s) % 2 == 0,
        _ => false,
    };
    if !real_type {
        return false;
    }
    match spec.target {
        CoverTarget::AnisotropicConic => s == 0 && k % 2 == (g + 1) % 2,
        CoverTarget::ProjLine => {
            let sum: u32 = deg.iter().sum();
            if sum > k || (k - sum) % 2 == 1 {
                return false;
            }
            let has_zero = deg.contains(&0);
            let needs_gap = has_zero || a == 1;
            !(needs_gap && sum + 2 > k)
        }
    }
}

/// Number of real points over `x`, counted segment by segment over a
/// generous range of lifts.
pub fn fiber_count(cover: &PlCover, x: &Q) -> usize {
    let mut count = 0;
    for comp in &cover.components {
        let pts = comp.map.breakpoints();
        let n = pts.len();
        for i in 0..n {
            let x0 = pts[i].1.clone();
            let x1 = if i + 1 < n {
                pts[i + 1].1.clone()
            } else {
                &pts[0].1 + Q::from_integer(BigInt::from(comp.map.winding()))
            };
            let (lo, hi) = if x0 < x1 { (x0, x1) } else { (x1, x0) };
            let from: BigInt = lo.floor().to_integer() - 2;
            let to: BigInt = hi.ceil().to_integer() + 2;
            let mut m = from;
            while m <= to {
                let y = x + Q::from_integer(m.clone());
                if lo < y && y < hi {
                    count += 1;
                }
                m += 1;
            }
        }
    }
    count
}

fn covered(arcs: &[&Arc], x: &Q) -> bool {
    arcs.iter().any(|a| match a {
        Arc::FullCircle => true,
        Arc::Proper { start, end } => {
            let hi = if end > start { end.clone() } else { end + Q::one() };
            let x0 = if x >= start { x.clone() } else { x + Q::one() };
            x0 <= hi
        }
    })
}

/// Whether the closed arcs cover the circle: coverage is constant between
/// consecutive endpoints, so endpoints and midpoints decide it.
pub fn covers(arcs: &[&Arc]) -> bool {
    if arcs.iter().any(|a| matches!(a, Arc::FullCircle)) {
        return true;
    }
    let mut pts: Vec<Q> = Vec::new();
    for a in arcs {
        if let Arc::Proper { start, end } = a {
            pts.push(fractional(start));
            pts.push(fractional(end));
        }
    }
    pts.sort();
    pts.dedup();
    if pts.is_empty() {
        return false;
    }
    let n = pts.len();
    for i in 0..n {
        let next = if i + 1 < n { pts[i + 1].clone() } else { &pts[0] + Q::one() };
        let mid = fractional(&((&pts[i] + next) / Q::from_integer(BigInt::from(2))));
        if !covered(arcs, &pts[i]) || !covered(arcs, &mid) {
            return false;
        }
    }
    true
}

/// Smallest covering subfamily by exhaustive search.
pub fn brute_force_cover(arcs: &[Arc]) -> Option<usize> {
    let n = arcs.len();
    let mut best: Option<usize> = None;
    for mask in 1u32..(1u32 << n) {
        let size = mask.count_ones() as usize;
        if best.is_some_and(|b| size >= b) {
            continue;
        }
        let sub: Vec<&Arc> = (0..n).filter(|i| mask & (1 << i) != 0).map(|i| &arcs[i]).collect();
        if covers(&sub) {
            best = Some(size);
        }
    }
    best
}

/// All non-increasing vectors of length `len` with entries at most `max`.
pub fn degree_vectors(len: usize, max: u32) -> Vec<Vec<u32>> {
    fn go(len: usize, max: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if prefix.len() == len {
            out.push(prefix.clone());
            return;
        }
        for d in 0..=max {
            prefix.push(d);
            go(len, d, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(len, max, &mut Vec::new(), &mut out);
    out
}

/// Whether two closed arcs share a point.
pub fn meets(a: &Arc, b: &Arc) -> bool {
    match (a, b) {
        (Arc::Proper { start: sa, .. }, Arc::Proper { start: sb, .. }) => {
            covered(&[a], &fractional(sb)) || covered(&[b], &fractional(sa))
        }
        _ => true,
    }
}
