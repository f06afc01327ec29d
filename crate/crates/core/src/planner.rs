//! Case dispatch from an admissible target to a construction plan.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::constructions::{
    execute_trace, BaseSeed, ConstructionStep, Label, LabeledState, Variant,
};
use crate::topology::{admissibility_violation, CoverSpec, CoverTarget};

/// Which recipe produced a plan.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Provenance {
    #[serde(rename = "A1-sPos")]
    A1SPos,
    #[serde(rename = "A1-s0-small-g")]
    A1S0SmallG,
    #[serde(rename = "A1-s0-big-g")]
    A1S0BigG,
    Case1,
    #[serde(rename = "Case2-all1")]
    Case2All1,
    #[serde(rename = "Case2-big")]
    Case2Big,
    Case3,
    Case4,
    Case5,
    #[serde(rename = "R0-big-k")]
    R0BigK,
    #[serde(rename = "R0-small-k")]
    R0SmallK,
}

impl Provenance {
    pub fn as_str(&self) -> &'static str {
        match self {
            Provenance::A1SPos => "A1-sPos",
            Provenance::A1S0SmallG => "A1-s0-small-g",
            Provenance::A1S0BigG => "A1-s0-big-g",
            Provenance::Case1 => "Case1",
            Provenance::Case2All1 => "Case2-all1",
            Provenance::Case2Big => "Case2-big",
            Provenance::Case3 => "Case3",
            Provenance::Case4 => "Case4",
            Provenance::Case5 => "Case5",
            Provenance::R0BigK => "R0-big-k",
            Provenance::R0SmallK => "R0-small-k",
        }
    }
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A seed and a sequence of steps. Executing it certifies the existence
/// of the covering it reaches.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Plan {
    pub seed: BaseSeed,
    pub steps: Vec<ConstructionStep>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub provenance: Option<Provenance>,
}

impl Plan {
    pub fn new(seed: BaseSeed, steps: Vec<ConstructionStep>) -> Self {
        Self { seed, steps, provenance: None }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PlanError {
    #[error("infeasible: {0}")]
    Infeasible(String),
}

fn noram(label: Label) -> ConstructionStep {
    ConstructionStep::one(Variant::WithoutRealRam, label)
}

fn ram(label: Label) -> ConstructionStep {
    ConstructionStep::one(Variant::WithRealRam, label)
}

/// `count` kind-I steps on `label`, ram first, alternating.
fn alternate(steps: &mut Vec<ConstructionStep>, label: Label, count: u32) {
    for i in 0..count {
        steps.push(if i % 2 == 0 { ram(label) } else { noram(label) });
    }
}

fn repeat(steps: &mut Vec<ConstructionStep>, step: ConstructionStep, count: u32) {
    steps.extend(std::iter::repeat_n(step, count as usize));
}

fn hyper(g: u32, s: u32, a: u8, deg: Vec<u32>) -> BaseSeed {
    BaseSeed::Hyperelliptic { g, s, a, deg }
}

/// Synthesizes a plan reaching `target`, or names the first obstruction.
pub fn plan(target: &CoverSpec) -> Result<Plan, PlanError> {
    if let Some(v) = admissibility_violation(target) {
        return Err(PlanError::Infeasible(v.name().to_string()));
    }
    let (g, s, a, k) = (target.top.g, target.top.s, target.top.a, target.k);
    if target.target == CoverTarget::AnisotropicConic {
        return Ok(if k > g {
            plan_of(BaseSeed::GenericR0Pencil { g, k }, Vec::new(), Provenance::R0BigK)
        } else {
            let mut steps = Vec::new();
            repeat(&mut steps, ConstructionStep::five(), k - 2);
            plan_of(BaseSeed::HyperellipticR0 { g: g + 2 - k }, steps, Provenance::R0SmallK)
        });
    }
    if k == 2 {
        return Err(PlanError::Infeasible("k=2 out of scope".to_string()));
    }
    let deg = target.degrees.entries();
    let nonzero: Vec<u32> = deg.iter().copied().filter(|&d| d > 0).collect();
    let s1 = nonzero.len() as u32;
    let sum: u32 = nonzero.iter().sum();
    let mut steps = Vec::new();

    if a == 1 {
        if s == 0 {
            if g < k {
                return Ok(plan_of(BaseSeed::GenericPencil { g, k }, steps, Provenance::A1S0SmallG));
            }
            repeat(&mut steps, ConstructionStep::four(), k / 2 - 1);
            return Ok(plan_of(hyper(g - k / 2 + 1, 0, 1, Vec::new()), steps, Provenance::A1S0BigG));
        }
        let seed = hyper(g - s1, s - s1, 1, vec![0; (s - s1) as usize]);
        repeat(&mut steps, ConstructionStep::three(), s1);
        for (i, &d) in nonzero.iter().enumerate() {
            repeat(&mut steps, noram(Label::Created(i as u32 + 1)), d - 1);
        }
        let rest = k - 2 - sum;
        if s > s1 {
            repeat(&mut steps, ram(Label::Seed(1)), rest);
        } else {
            alternate(&mut steps, Label::Created(1), rest);
        }
        return Ok(plan_of(seed, steps, Provenance::A1SPos));
    }

    if sum == k {
        if s == 1 {
            repeat(&mut steps, noram(Label::Seed(1)), k - 2);
            return Ok(plan_of(hyper(g, 1, 0, vec![2]), steps, Provenance::Case1));
        }
        if deg[0] == 1 {
            assert!(
                g + 2 > k && g % 2 == (k + 1) % 2,
                "all-ones branch reached with g={g}, k={k}"
            );
            repeat(&mut steps, ConstructionStep::three(), k - 2);
            return Ok(plan_of(hyper(g + 2 - k, 2, 0, vec![1, 1]), steps, Provenance::Case2All1));
        }
        repeat(&mut steps, ConstructionStep::three(), s - 1);
        repeat(&mut steps, noram(Label::Seed(1)), deg[0] - 2);
        for (i, &d) in deg.iter().enumerate().skip(1) {
            repeat(&mut steps, noram(Label::Created(i as u32)), d - 1);
        }
        return Ok(plan_of(hyper(g + 1 - s, 1, 0, vec![2]), steps, Provenance::Case2Big));
    }

    if s1 == 0 {
        repeat(&mut steps, ram(Label::Seed(1)), k - 2);
        repeat(&mut steps, ConstructionStep::two(Variant::WithRealRam), s - 1);
        return Ok(plan_of(hyper(g + 1 - s, 1, 0, vec![2]), steps, Provenance::Case5));
    }

    // Case 3 on the nonzero part, then one new oval per zero entry.
    let g3 = g + s1 - s;
    steps.push(ram(Label::Seed(1)));
    repeat(&mut steps, ConstructionStep::three(), s1 - 1);
    repeat(&mut steps, noram(Label::Seed(1)), nonzero[0] - 1);
    for (i, &d) in nonzero.iter().enumerate().skip(1) {
        repeat(&mut steps, noram(Label::Created(i as u32)), d - 1);
    }
    alternate(&mut steps, Label::Seed(1), k - sum - 2);
    let seed = hyper(g3 + 1 - s1, 1, 0, vec![2]);
    if s1 == s {
        return Ok(plan_of(seed, steps, Provenance::Case3));
    }
    repeat(&mut steps, ConstructionStep::two(Variant::WithRealRam), s - s1);
    Ok(plan_of(seed, steps, Provenance::Case4))
}

fn plan_of(seed: BaseSeed, steps: Vec<ConstructionStep>, provenance: Provenance) -> Plan {
    Plan { seed, steps, provenance: Some(provenance) }
}

/// Outcome of checking a plan against a target, with a readable trail.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub ok: bool,
    pub trail: Vec<String>,
    pub reached: Option<CoverSpec>,
}

fn describe(state: &LabeledState) -> String {
    let comps: Vec<String> = state
        .components
        .iter()
        .map(|c| format!("{}:{}", c.label, c.delta))
        .collect();
    format!(
        "g={} s={} a={} k={} target={} [{}]",
        state.g,
        state.s(),
        state.a,
        state.k,
        state.target,
        comps.join(" ")
    )
}

pub fn verify_report(plan: &Plan, target: &CoverSpec) -> VerifyReport {
    let mut trail = Vec::new();
    let states = match execute_trace(&plan.seed, &plan.steps) {
        Ok(states) => states,
        Err(e) => {
            trail.push(format!("execution failed: {e}"));
            return VerifyReport { ok: false, trail, reached: None };
        }
    };
    let mut ok = true;
    for (i, state) in states.iter().enumerate() {
        let name = if i == 0 { "seed".to_string() } else { format!("after {}", plan.steps[i - 1]) };
        trail.push(format!("{name}: {}", describe(state)));
        if let Some(why) = state.invariant_violation() {
            trail.push(format!("  invariant broken: {why}"));
            ok = false;
        }
    }
    let reached = states.last().expect("nonempty").canonicalize();
    if &reached != target {
        trail.push(format!("reached {reached}, expected {target}"));
        ok = false;
    }
    VerifyReport { ok, trail, reached: Some(reached) }
}

pub fn verify_plan(plan: &Plan, target: &CoverSpec) -> bool {
    verify_report(plan, target).ok
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::execute;
    use crate::topology::enumerate_genus;

    fn spec(g: u32, s: u32, a: u8, k: u32, deg: &[u32]) -> CoverSpec {
        CoverSpec::projective(g, s, a, k, deg).unwrap()
    }

    #[test]
    fn case2_all_ones_example() {
        let p = plan(&spec(6, 3, 0, 3, &[1, 1, 1])).unwrap();
        assert_eq!(p.provenance, Some(Provenance::Case2All1));
        assert_eq!(p.seed, hyper(5, 2, 0, vec![1, 1]));
        assert_eq!(p.steps, vec![ConstructionStep::three()]);
    }

    #[test]
    fn no_real_trigonal_in_genus_four() {
        assert_eq!(
            plan(&spec(4, 0, 1, 3, &[])),
            Err(PlanError::Infeasible("parity".to_string()))
        );
    }

    #[test]
    fn conic_big_k() {
        for g in 0..6 {
            let t = CoverSpec::conic(g, g + 3).unwrap();
            let p = plan(&t).unwrap();
            assert_eq!(p.seed, BaseSeed::GenericR0Pencil { g, k: g + 3 });
            assert!(p.steps.is_empty());
        }
    }

    #[test]
    fn case5_example() {
        let t = spec(5, 2, 0, 4, &[0, 0]);
        let p = plan(&t).unwrap();
        assert_eq!(p.provenance, Some(Provenance::Case5));
        assert_eq!(execute(&p.seed, &p.steps).unwrap(), t);
    }

    #[test]
    fn case1_verifies() {
        let t = spec(4, 1, 0, 3, &[3]);
        let p = plan(&t).unwrap();
        assert_eq!(p.provenance, Some(Provenance::Case1));
        assert!(verify_plan(&p, &t));
    }

    #[test]
    fn k2_refused_after_admissibility() {
        assert_eq!(
            plan(&spec(3, 2, 0, 2, &[1, 1])),
            Err(PlanError::Infeasible("k=2 out of scope".to_string()))
        );
        assert_eq!(
            plan(&spec(3, 2, 0, 2, &[2, 0])),
            Err(PlanError::Infeasible("zero_component".to_string()))
        );
    }

    #[test]
    fn deleted_step_fails() {
        for g in 0..=6 {
            for t in enumerate_genus(g, 6) {
                let Ok(p) = plan(&t) else { continue };
                for i in 0..p.steps.len() {
                    let mut q = p.clone();
                    q.steps.remove(i);
                    assert!(!verify_plan(&q, &t), "{t} minus step {i}");
                }
            }
        }
    }

    #[test]
    fn wrong_target_reported() {
        // Hand-built plan: an M-curve of genus 2 with one oval removed is
        // still a legal state, but not the requested one.
        let p = Plan::new(hyper(2, 3, 0, vec![0, 0, 0]), vec![ConstructionStep::two(Variant::WithRealRam)]);
        let t = spec(3, 3, 0, 2, &[0, 0, 0]);
        let report = verify_report(&p, &t);
        assert!(!report.ok);
        assert_eq!(report.reached, Some(spec(3, 4, 0, 2, &[0, 0, 0, 0])));
        assert!(report.trail.last().unwrap().contains("expected"));
    }

    #[test]
    fn plan_json_round_trip() {
        let p = plan(&spec(7, 2, 0, 5, &[2, 1])).unwrap();
        let text = serde_json::to_string(&p).unwrap();
        assert!(text.contains(r#""provenance":"Case3""#), "{text}");
        let back: Plan = serde_json::from_str(&text).unwrap();
        assert_eq!(back, p);
        let bare = r#"{"seed":{"type":"generic_pencil","g":1,"k":4},"steps":[]}"#;
        assert_eq!(serde_json::from_str::<Plan>(bare).unwrap().provenance, None);
    }
}
