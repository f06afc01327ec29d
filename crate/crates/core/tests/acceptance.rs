//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

mod common;

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use realcover_core::bn::{self, Fact};
use realcover_core::constructions::{
    apply_step, seed_state, BaseSeed, ConstructionStep, Label, LabeledState, Variant,
};
use realcover_core::covering4::{build_covnum, covering_number, CoveringNumberTarget};
use realcover_core::pl::{min_circle_cover, realize, Arc};
use realcover_core::planner::{plan, verify_plan};
use realcover_core::topology::{target_admissible, weichold_admissible, CoverSpec, CoverTarget, TopType};

use common::{admissible, brute_force_cover, degree_vectors, fiber_count, q};

// Every criterion is an exact integer or exact rational comparison.
const TOLERANCE: i64 = 0;

const BOX1_G_MAX: u32 = 8;
const BOX1_K: (u32, u32) = (3, 6);
const BUDGET1: Duration = Duration::from_secs(30);

const BOX3_G_MAX: u32 = 6;
const BOX3_K_MAX: u32 = 5;
const MIN_SAMPLES: usize = 100;
const BUDGET3: Duration = Duration::from_secs(120);

const BOX4_G_MAX: u32 = 7;
const COVER_DEGREE: u32 = 4;
const BUDGET4: Duration = Duration::from_secs(60);

const RANDOM_INSTANCES: usize = 1000;
const MAX_ARCS: usize = 12;
const RNG_SEED: u64 = 0x5eed_a4c5;

const BN_G: (u32, u32) = (2, 20);

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);
// (name, before, step, (dg, ds, dk), expected degrees after, expected a after)
type DeltaCase<'a> = (&'a str, &'a LabeledState, ConstructionStep, (i64, i64, i64), Vec<u32>, u8);

fn exact(lhs: i64, rhs: i64) -> bool {
    (lhs - rhs).abs() <= TOLERANCE
}

fn within(start: Instant, budget: Duration) -> Result<Duration, String> {
    let took = start.elapsed();
    if took <= budget {
        Ok(took)
    } else {
        Err(format!("took {took:.1?}, budget {budget:?}"))
    }
}

fn all_specs(g_max: u32, k_lo: u32, k_hi: u32) -> Vec<CoverSpec> {
    let mut out = Vec::new();
    for g in 0..=g_max {
        for k in k_lo..=k_hi {
            for a in 0..=1u8 {
                for s in 0..=g + 2 {
                    for deg in degree_vectors(s as usize, k) {
                        out.push(CoverSpec::projective(g, s, a, k, &deg).expect("structurally valid"));
                    }
                    if s == 0 {
                        let mut r0 = CoverSpec::projective(g, 0, a, k, &[]).expect("valid");
                        r0.target = CoverTarget::AnisotropicConic;
                        out.push(r0);
                    }
                }
            }
        }
    }
    out
}

fn criterion1() -> Outcome {
    let start = Instant::now();
    let specs = all_specs(BOX1_G_MAX, BOX1_K.0, BOX1_K.1);
    let mut planned = 0;
    for spec in &specs {
        let oracle = admissible(spec);
        if oracle != target_admissible(spec) {
            return Err(format!("{spec}: predicate disagrees with oracle ({oracle})"));
        }
        match plan(spec) {
            Ok(p) => {
                if !oracle {
                    return Err(format!("{spec}: planned but not admissible"));
                }
                if !verify_plan(&p, spec) {
                    return Err(format!("{spec}: emitted plan does not verify"));
                }
                planned += 1;
            }
            Err(e) if oracle => return Err(format!("{spec}: admissible but {e}")),
            Err(_) => {}
        }
    }
    let took = within(start, BUDGET1)?;
    Ok(format!("{} specs, {planned} plans verified, {took:.1?}", specs.len()))
}

fn state_of(seed: BaseSeed) -> LabeledState {
    seed_state(&seed).expect("catalog seed")
}

fn degrees(s: &LabeledState) -> Vec<u32> {
    s.components.iter().map(|c| c.delta).collect()
}

fn criterion2() -> Outcome {
    let hyper = |g, s, a, deg: &[u32]| BaseSeed::Hyperelliptic { g, s, a, deg: deg.to_vec() };
    let line = state_of(hyper(4, 1, 0, &[2]));
    let zeros = state_of(hyper(2, 3, 0, &[0, 0, 0]));
    let flat = state_of(hyper(2, 1, 1, &[0]));
    let empty = state_of(hyper(3, 0, 1, &[]));
    let conic = state_of(BaseSeed::HyperellipticR0 { g: 3 });
    let c1 = Label::Seed(1);
    let cases: Vec<DeltaCase> = vec![
        ("I/ram", &line, ConstructionStep::one(Variant::WithRealRam, c1), (0, 0, 1), vec![1], 0),
        ("I/ram at 0", &flat, ConstructionStep::one(Variant::WithRealRam, c1), (0, 0, 1), vec![1], 1),
        ("I/noram", &line, ConstructionStep::one(Variant::WithoutRealRam, c1), (0, 0, 1), vec![3], 0),
        ("II/ram", &zeros, ConstructionStep::two(Variant::WithRealRam), (1, 1, 0), vec![0, 0, 0, 0], 0),
        ("II/noram", &zeros, ConstructionStep::two(Variant::WithoutRealRam), (1, 0, 0), vec![0, 0, 0], 1),
        ("III", &line, ConstructionStep::three(), (1, 1, 1), vec![2, 1], 0),
        ("IV", &empty, ConstructionStep::four(), (1, 0, 2), vec![], 1),
        ("V", &conic, ConstructionStep::five(), (1, 0, 1), vec![], 1),
    ];
    let mut failed = Vec::new();
    for (name, before, step, (dg, ds, dk), deg, a) in &cases {
        let after = match apply_step(before, step) {
            Ok(s) => s,
            Err(e) => {
                failed.push(format!("{name}: {e}"));
                continue;
            }
        };
        let got = (
            after.g as i64 - before.g as i64,
            after.s() as i64 - before.s() as i64,
            after.k as i64 - before.k as i64,
        );
        let ok = exact(got.0, *dg) && exact(got.1, *ds) && exact(got.2, *dk) && degrees(&after) == *deg && after.a == *a;
        if !ok {
            failed.push(format!("{name}: got {got:?} {:?} a={}", degrees(&after), after.a));
        }
    }
    if failed.is_empty() {
        Ok(format!("{} variant checks", cases.len()))
    } else {
        Err(failed.join("; "))
    }
}

fn criterion3() -> Outcome {
    let start = Instant::now();
    let mut checked = 0;
    let mut samples = 0;
    for spec in all_specs(BOX3_G_MAX, BOX1_K.0, BOX3_K_MAX) {
        if spec.target != CoverTarget::ProjLine {
            continue;
        }
        let Ok(p) = plan(&spec) else { continue };
        let cover = realize(&p).map_err(|e| format!("{spec}: {e}"))?;
        let mut windings: Vec<u32> = cover.components.iter().map(|c| c.map.winding().unsigned_abs() as u32).collect();
        windings.sort_unstable_by(|a, b| b.cmp(a));
        if windings != spec.degrees.entries() {
            return Err(format!("{spec}: windings {windings:?}"));
        }
        let xs = cover.regular_samples();
        if xs.len() < MIN_SAMPLES {
            return Err(format!("{spec}: only {} samples", xs.len()));
        }
        for x in &xs {
            let n = fiber_count(&cover, x);
            if n > spec.k as usize || !(spec.k as usize - n).is_multiple_of(2) {
                return Err(format!("{spec}: {n} real points over {x}"));
            }
        }
        samples += xs.len();
        checked += 1;
    }
    let took = within(start, BUDGET3)?;
    Ok(format!("{checked} realizations, {samples} fibers, {took:.1?}"))
}

fn criterion4() -> Outcome {
    let start = Instant::now();
    let mut built = 0;
    for g in 0..=BOX4_G_MAX {
        for s in 1..=g + 1 {
            for a in 0..=1u8 {
                if !weichold_admissible(g, s, a) {
                    continue;
                }
                for kcov in 1..=s {
                    let t = CoveringNumberTarget::new(g, s, a, kcov).map_err(|e| e.to_string())?;
                    let b = build_covnum(&t).map_err(|e| format!("({g},{s},{a}) k={kcov}: {e}"))?;
                    let tag = format!("({g},{s},{a}) kcov={kcov}");
                    if b.cover.k != COVER_DEGREE || b.spec.k != COVER_DEGREE {
                        return Err(format!("{tag}: degree {}", b.cover.k));
                    }
                    if b.spec.top != TopType::new(g, s, a).unwrap() || b.cover.components.len() != s as usize {
                        return Err(format!("{tag}: type {} with {} components", b.spec, b.cover.components.len()));
                    }
                    if b.cover.components.iter().any(|c| c.map.winding() != 0) {
                        return Err(format!("{tag}: nonzero winding"));
                    }
                    for x in b.cover.regular_samples() {
                        let n = fiber_count(&b.cover, &x);
                        if n > 4 || !n.is_multiple_of(2) {
                            return Err(format!("{tag}: {n} real points over {x}"));
                        }
                    }
                    let arcs: Vec<Arc> = b.cover.image_arcs().into_iter().map(|(_, a)| a).collect();
                    let brute = brute_force_cover(&arcs).unwrap_or(0);
                    let fast = covering_number(&b.cover);
                    if !exact(fast as i64, kcov as i64) || !exact(brute as i64, kcov as i64) || b.covering_number != fast {
                        return Err(format!("{tag}: covering number {fast}, brute force {brute}"));
                    }
                    built += 1;
                }
            }
        }
    }
    let took = within(start, BUDGET4)?;
    Ok(format!("{built} builds, {took:.1?}"))
}

fn random_arc(rng: &mut ChaCha8Rng) -> Arc {
    if rng.gen_range(0..15) == 0 {
        return Arc::FullCircle;
    }
    let start = rng.gen_range(0..60);
    let len = rng.gen_range(1..60);
    Arc::proper(q(start, 60), q(start + len, 60))
}

fn criterion5() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(RNG_SEED);
    let mut covered = 0;
    for i in 0..RANDOM_INSTANCES {
        let n = rng.gen_range(0..=MAX_ARCS);
        let arcs: Vec<Arc> = (0..n).map(|_| random_arc(&mut rng)).collect();
        let fast = min_circle_cover(&arcs).ok();
        let brute = brute_force_cover(&arcs);
        if fast != brute {
            return Err(format!("instance {i}: greedy {fast:?}, brute force {brute:?}"));
        }
        covered += fast.is_some() as usize;
    }
    Ok(format!("{RANDOM_INSTANCES} instances, {covered} coverable"))
}

fn criterion6() -> Outcome {
    if !exact(bn::rho(4, 3, 1), 0) {
        return Err(format!("rho(4,3,1) = {}", bn::rho(4, 3, 1)));
    }
    let mut pairs = 0;
    for g in BN_G.0..=BN_G.1 {
        for k in 2..=g {
            let d = bn::dims(g, k).map_err(|e| e.to_string())?;
            let rho = 2 * k as i64 - g as i64 - 2;
            if !exact(bn::rho(g, k, 1), rho) || !exact(d.hurwitz - 3, d.image_bound) || !exact(d.image_bound - d.moduli, rho) {
                return Err(format!("g={g} k={k}: {d:?}"));
            }
            pairs += 1;
        }
    }
    Ok(format!("rho(4,3,1)=0; identities hold for {pairs} (g,k) pairs"))
}

fn criterion7() -> Outcome {
    let fact = bn::lookup(4, 0, 1, 3);
    let spec = CoverSpec::projective(4, 0, 1, 3, &[]).map_err(|e| e.to_string())?;
    let adm = target_admissible(&spec);
    if fact == Fact::NoRealPencil && !adm && !admissible(&spec) {
        Ok("(4,0,1), k=3: no real pencil, not admissible".into())
    } else {
        Err(format!("fact {fact:?}, admissible {adm}"))
    }
}

fn main() {
    let criteria: [Criterion; 7] = [
        ("admissibility iff plannability", criterion1),
        ("construction deltas", criterion2),
        ("symbolic and PL agreement", criterion3),
        ("degree-4 covering numbers", criterion4),
        ("circle cover against brute force", criterion5),
        ("Brill-Noether formulas", criterion6),
        ("facts cross-check", criterion7),
    ];
    let mut results = BTreeMap::new();
    for (i, (name, run)) in criteria.iter().enumerate() {
        let outcome = run();
        let line = match &outcome {
            Ok(detail) => format!("criterion {}: PASS  {name}: {detail}", i + 1),
            Err(why) => format!("criterion {}: FAIL  {name}: {why}", i + 1),
        };
        println!("{line}");
        results.insert(i + 1, outcome.is_ok());
    }
    let failed: Vec<_> = results.iter().filter(|(_, ok)| !**ok).map(|(i, _)| *i).collect();
    if !failed.is_empty() {
        eprintln!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}
