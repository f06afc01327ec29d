//! Brill-Noether numbers, dimension counts for spaces of coverings, and a
//! small table of known facts about real pencils.

use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BnError {
    #[error("expected dimension of W^1_k is only defined for k <= g (got g={g}, k={k})")]
    DegreeAboveGenus { g: u32, k: u32 },
    #[error("dimension counts need g >= 2 (got {0})")]
    GenusTooSmall(u32),
    #[error("bad query: {0}")]
    BadQuery(String),
}

/// `g - (r + 1)(g - k + r)`.
pub fn rho(g: u32, k: u32, r: u32) -> i64 {
    let (g, k, r) = (g as i64, k as i64, r as i64);
    g - (r + 1) * (g - k + r)
}

pub fn check_query(k: u32, r: u32) -> Result<(), BnError> {
    if k == 0 {
        return Err(BnError::BadQuery("degree must be at least 1".into()));
    }
    if r == 0 {
        return Err(BnError::BadQuery("r must be at least 1".into()));
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "dim", rename_all = "snake_case")]
pub enum ExpectedW1k {
    Empty,
    Dim(i64),
}

/// Expected shape of the variety of degree-`k` pencils on a general curve.
pub fn expected_w1k(g: u32, k: u32) -> Result<ExpectedW1k, BnError> {
    if k > g {
        return Err(BnError::DegreeAboveGenus { g, k });
    }
    let r = rho(g, k, 1);
    Ok(if r < 0 { ExpectedW1k::Empty } else { ExpectedW1k::Dim(r) })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Dims {
    /// Space of degree-`k` coverings by genus-`g` curves.
    pub hurwitz: i64,
    /// Moduli of genus-`g` curves.
    pub moduli: i64,
    /// Upper bound for the image of the coverings in moduli.
    pub image_bound: i64,
}

pub fn dims(g: u32, k: u32) -> Result<Dims, BnError> {
    if g < 2 {
        return Err(BnError::GenusTooSmall(g));
    }
    let (gi, ki) = (g as i64, k as i64);
    Ok(Dims {
        hurwitz: 2 * ki + 2 * gi - 2,
        moduli: 3 * gi - 3,
        image_bound: 3 * gi - 3 + rho(g, k, 1),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "fact", rename_all = "snake_case")]
pub enum Fact {
    NoRealPencil,
    TwoPencils { degrees: [Vec<u32>; 2] },
    GeneralPencil { degree: Vec<u32>, base_point_free: bool },
    NotRecorded,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FactEntry {
    pub g: u32,
    pub s: u32,
    pub a: u8,
    pub k: u32,
    pub fact: Fact,
    pub caveat: &'static str,
}

pub fn facts() -> Vec<FactEntry> {
    vec![
        FactEntry {
            g: 4,
            s: 0,
            a: 1,
            k: 3,
            fact: Fact::NoRealPencil,
            caveat: "holds for every real curve of this type: real divisors have even degree",
        },
        FactEntry {
            g: 4,
            s: 1,
            a: 0,
            k: 3,
            fact: Fact::TwoPencils { degrees: [vec![3], vec![1]] },
            caveat: "non-hyperelliptic curves of this type only",
        },
        FactEntry {
            g: 8,
            s: 1,
            a: 0,
            k: 5,
            fact: Fact::GeneralPencil { degree: vec![5], base_point_free: true },
            caveat: "general real curves of this type only",
        },
    ]
}

pub fn lookup(g: u32, s: u32, a: u8, k: u32) -> Fact {
    facts()
        .into_iter()
        .find(|e| (e.g, e.s, e.a, e.k) == (g, s, a, k))
        .map_or(Fact::NotRecorded, |e| e.fact)
}
