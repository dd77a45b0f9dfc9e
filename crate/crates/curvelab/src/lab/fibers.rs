//! Fibers of the forgetful map on separating curves: same-fiber pairs from
//! point pushes, walked to disjointness by bigon surgery.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use serde_json::json;

use crate::curve::Curve;
use crate::enumerate::{enumerate_curves, CurveFilter, DEFAULT_CAP};
use crate::error::{Error, Result};
use crate::lab::{rng, ExperimentConfig, Report, Table};
use crate::mcg::{bigon_surgery_step, forget_boundary, library, point_push, UPSTAIRS};

/// Outcome of walking one pair to disjointness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiberWalk {
    pub start: usize,
    /// Intersection with the target after each step.
    pub trail: Vec<usize>,
    pub fiber_kept: bool,
    pub steps_disjoint: bool,
    pub terminated: bool,
}

impl FiberWalk {
    pub fn steps(&self) -> usize {
        self.trail.len()
    }

    pub fn drops(&self) -> Vec<usize> {
        let mut prev = self.start;
        self.trail
            .iter()
            .map(|&x| {
                let d = prev - x;
                prev = x;
                d
            })
            .collect()
    }

    /// Every step lowered the intersection by a positive even amount.
    pub fn even_drops(&self) -> bool {
        self.drops().iter().all(|&d| d >= 2 && d % 2 == 0)
    }

    pub fn passed(&self) -> bool {
        self.terminated && self.fiber_kept && self.steps_disjoint && self.even_drops()
    }
}

/// Repeats bigon surgery of `a` against `b` until they are disjoint.
pub fn walk_fiber(a: &Curve, b: &Curve) -> Result<FiberWalk> {
    let label = forget_boundary(a)?;
    if forget_boundary(b)? != label {
        return Err(Error::DifferentFibers);
    }
    let start = a.intersection(b)?;
    let mut walk = FiberWalk { start, trail: Vec::new(), fiber_kept: true, steps_disjoint: true, terminated: false };
    let mut cur = a.clone();
    for _ in 0..=start {
        match bigon_surgery_step(&cur, b, false) {
            Ok(next) => {
                walk.fiber_kept &= forget_boundary(&next)? == label;
                walk.steps_disjoint &= next.intersection(&cur)? == 0;
                walk.trail.push(next.intersection(b)?);
                cur = next;
            }
            Err(Error::AlreadyDisjoint) => {
                walk.terminated = true;
                break;
            }
            Err(Error::NoAdmissibleBigon) => break,
            Err(e) => return Err(e),
        }
    }
    Ok(walk)
}

/// Same-fiber pairs `(c, P(c))` for separating `c` and library point
/// pushes `P`, with `0 < i ≤ max_i`, in a seeded order.
pub fn same_fiber_pairs(bound: u32, max_i: usize, seed: u64, cap: usize) -> Result<Vec<(Curve, Curve, String)>> {
    let lib = library()?;
    let seps = enumerate_curves(UPSTAIRS, bound, CurveFilter::Separating, cap)?;
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for id in lib.loop_ids() {
        for exp in [1, -1, 2] {
            let push = point_push(id, lib.push_loop(id)?, exp)?;
            if push.is_empty() {
                continue;
            }
            for c in &seps {
                let d = push.apply(c)?;
                let i = c.intersection(&d)?;
                if i == 0 || i > max_i {
                    continue;
                }
                let key = if c <= &d { (c.clone(), d.clone()) } else { (d.clone(), c.clone()) };
                if seen.insert(key) {
                    out.push((c.clone(), d, format!("{}", push)));
                }
            }
        }
    }
    out.shuffle(&mut rng(seed, "fibers"));
    Ok(out)
}

/// Walks seeded same-fiber pairs to disjointness.
pub fn verify_fibers(cfg: &ExperimentConfig) -> Result<Report> {
    if let Some(sig) = cfg.surface {
        if sig != UPSTAIRS {
            return Err(Error::SurfaceMismatch { expected: UPSTAIRS.to_string(), found: sig.to_string() });
        }
    }
    let wanted = cfg.samples.unwrap_or(50);
    let bound = cfg.weight_bound.unwrap_or(4);
    let max_i = 20;
    let pairs = same_fiber_pairs(bound, max_i, cfg.seed(), cfg.cap.unwrap_or(DEFAULT_CAP))?;
    if pairs.len() < wanted {
        return Err(Error::SampleExhausted { wanted, found: pairs.len() });
    }
    let mut report = Report::new("fibers");
    let mut table = Table::new("surgery walks", &["pair", "push", "i", "steps", "drops", "fiber", "ok"]);
    let mut rows = Vec::new();
    let (mut failed, mut half) = (0, 0);
    let mut drop_hist = std::collections::BTreeMap::<usize, usize>::new();
    for (k, (a, b, push)) in pairs.iter().take(wanted).enumerate() {
        let w = walk_fiber(a, b)?;
        if !w.passed() {
            failed += 1;
        }
        if 2 * w.steps() == w.start {
            half += 1;
        }
        for d in w.drops() {
            *drop_hist.entry(d).or_default() += 1;
        }
        let drops: Vec<String> = w.drops().iter().map(|d| d.to_string()).collect();
        table.row(vec![
            k.to_string(),
            push.clone(),
            w.start.to_string(),
            w.steps().to_string(),
            drops.join(","),
            if w.fiber_kept { "kept" } else { "lost" }.into(),
            if w.passed() { "yes" } else { "no" }.into(),
        ]);
        rows.push(json!({
            "a": a.name(), "b": b.name(), "push": push, "i": w.start, "trail": w.trail,
            "terminated": w.terminated, "fiber_kept": w.fiber_kept, "steps_disjoint": w.steps_disjoint,
        }));
    }
    // The trivial case: a curve against itself needs no steps.
    let (c, _, _) = &pairs[0];
    let trivial = walk_fiber(c, c)?;
    report.check(
        "surgery connects every sampled pair within its fiber",
        failed == 0 && trivial.steps() == 0 && trivial.terminated,
        format!("{wanted} pairs with 0 < i <= {max_i}: {failed} failures (each step disjoint from the last, same label, even drop >= 2)"),
    );
    let hist: Vec<String> = drop_hist.iter().map(|(d, n)| format!("{d}:{n}")).collect();
    report.note(format!(
        "pairs finishing in exactly i/2 steps: {half} of {wanted}; per-step intersection drops {}",
        hist.join(" ")
    ));
    report.tables.push(table);
    report.data = json!({
        "weight_bound": bound, "max_intersection": max_i, "pairs": rows,
        "exact_half_steps": half, "drop_histogram": drop_hist,
    });
    Ok(report)
}
