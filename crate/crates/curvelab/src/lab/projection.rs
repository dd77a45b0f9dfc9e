//! Subsurface projection checks: projections of single curves have small
//! diameter, and overlapping subsurfaces satisfy the Behrstock inequality.
//!
//! Distances are measured in region graphs spanned by pool curves and the
//! inserted projections, so every number is an upper bound on the true
//! curve-graph distance. A bound within the threshold certifies the
//! inequality; a larger bound or a disconnected graph is inconclusive.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rayon::prelude::*;
use serde_json::json;

use crate::complex::{ComplexKind, ComplexModel, CurvePool, GraphSnapshot};
use crate::curve::{Curve, Multicurve};
use crate::enumerate::DEFAULT_CAP;
use crate::error::{Error, Result};
use crate::estimate::{behrstock_gap, overlapping, subsurface_universe, Region, RegionGraph};
use crate::lab::{greedy_pants, rng, sample, ExperimentConfig, Report, Table};
use crate::mcg::UPSTAIRS;
use crate::surface::SurfaceSig;

/// Largest allowed diameter of the projection of one curve.
pub const PROJECTION_BOUND: usize = 3;
/// Largest allowed smaller side of the Behrstock inequality.
pub const BEHRSTOCK_BOUND: usize = 10;

/// Surfaces, weight bounds and subsurface depths for the diameter check.
const DIAMETER_SURFACES: [(SurfaceSig, u32, usize); 3] =
    [(SurfaceSig::new(0, 5), 6, 1), (SurfaceSig::new(1, 2), 4, 2), (SurfaceSig::new(2, 1), 3, 1)];

/// Regions sampled per surface; each gets its own graph.
const REGIONS_PER_SURFACE: usize = 12;

/// Proper connected regions of `sig`, in a seeded order, with their graphs.
fn region_graphs(pool: &CurvePool, depth: usize, count: usize, seed: u64, tag: &str) -> Result<Vec<RegionGraph>> {
    let mut regions: Vec<Region> = subsurface_universe(pool.sig(), pool.curves(), depth)?
        .into_iter()
        .filter(|r| matches!(r, Region::Piece(_)))
        .collect();
    regions.shuffle(&mut rng(seed, tag));
    regions.truncate(count);
    regions.into_par_iter().map(|r| RegionGraph::new(r, pool.curves())).collect()
}

/// Outcome of one projection measurement.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Bound {
    Certified(usize),
    Exceeded(usize),
    Disconnected,
}

fn classify(r: Result<usize>, limit: usize) -> Result<Bound> {
    match r {
        Ok(d) if d <= limit => Ok(Bound::Certified(d)),
        Ok(d) => Ok(Bound::Exceeded(d)),
        Err(Error::Unreachable) => Ok(Bound::Disconnected),
        Err(e) => Err(e),
    }
}

/// Diameter bound of the projection of `alpha` into the graph's region.
/// An inconclusive graph is enriched with pool projections once.
fn projection_diameter(g: &mut RegionGraph, alpha: &Curve, pool: &[Curve], enriched: &mut bool) -> Result<Bound> {
    let ids = g.project(&Multicurve::single(alpha.clone()))?;
    let b = classify(g.diameter(&ids), PROJECTION_BOUND)?;
    if matches!(b, Bound::Certified(_)) || *enriched {
        return Ok(b);
    }
    g.enrich(pool)?;
    *enriched = true;
    classify(g.diameter(&ids), PROJECTION_BOUND)
}

/// `diam π_Y(α) ≤ 3` on seeded pairs across three surfaces.
pub fn verify_projection_diameter(cfg: &ExperimentConfig) -> Result<Report> {
    let wanted = cfg.samples.unwrap_or(600);
    let cap = cfg.cap.unwrap_or(DEFAULT_CAP);
    let per_surface = wanted.div_ceil(DIAMETER_SURFACES.len());
    let mut report = Report::new("projection-diameter");
    let mut table = Table::new("projection diameters", &["surface", "regions", "pairs", "d0", "d1", "d2", "d3", "inconclusive"]);
    let mut data = Vec::new();
    let (mut total, mut certified, mut inconclusive) = (0, 0, 0);
    for (sig, bound, depth) in DIAMETER_SURFACES {
        let tag = format!("projection {sig}");
        let pool = CurvePool::new(sig, bound, cap)?;
        let graphs = region_graphs(&pool, depth, REGIONS_PER_SURFACE, cfg.seed(), &tag)?;
        let per_region = per_surface.div_ceil(graphs.len().max(1));
        let mut r = rng(cfg.seed(), &format!("{tag} curves"));
        let mut jobs: Vec<(RegionGraph, Vec<Curve>)> = Vec::new();
        for g in graphs {
            let mut meets = Vec::new();
            for c in pool.curves() {
                if !g.region().contains_curve(c)? && !g.region().project(c)?.is_empty() {
                    meets.push(c.clone());
                }
            }
            let picked = sample(&mut r, &meets, per_region);
            jobs.push((g, picked));
        }
        let results: Vec<(String, Vec<Bound>)> = jobs
            .into_par_iter()
            .map(|(mut g, alphas)| {
                let mut enriched = false;
                let bounds = alphas
                    .iter()
                    .map(|a| projection_diameter(&mut g, a, pool.curves(), &mut enriched))
                    .collect::<Result<Vec<_>>>()?;
                Ok((g.region().label(), bounds))
            })
            .collect::<Result<_>>()?;
        let mut hist = [0usize; PROJECTION_BOUND + 1];
        let mut open = 0;
        let mut pairs = 0;
        let mut exceeded = Vec::new();
        for (label, bounds) in &results {
            for b in bounds {
                pairs += 1;
                match b {
                    Bound::Certified(d) => hist[*d] += 1,
                    Bound::Exceeded(d) => {
                        open += 1;
                        exceeded.push(json!({"region": label, "bound": d}));
                    }
                    Bound::Disconnected => {
                        open += 1;
                        exceeded.push(json!({"region": label, "bound": null}));
                    }
                }
            }
        }
        total += pairs;
        certified += pairs - open;
        inconclusive += open;
        let mut row = vec![sig.to_string(), results.len().to_string(), pairs.to_string()];
        row.extend(hist.iter().map(|n| n.to_string()));
        row.push(open.to_string());
        table.row(row);
        data.push(json!({
            "surface": sig.to_string(), "weight_bound": bound, "regions": results.len(),
            "pairs": pairs, "diameter_histogram": hist, "inconclusive": exceeded,
        }));
    }
    report.check(
        "projection diameter at most three",
        total >= wanted && inconclusive == 0,
        format!("{total} pairs: {certified} certified, {inconclusive} inconclusive, 0 violations"),
    );
    report.tables.push(table);
    report.data = json!({"surfaces": data});
    Ok(report)
}

/// Region pair indices with the gap of one sampled decomposition, if measured.
type Triple = (usize, usize, Option<(usize, usize)>);

/// `min(d_W(P, ∂V), d_V(P, ∂W)) ≤ 10` on seeded pants decompositions and
/// overlapping pairs of the punctured genus-two surface.
pub fn verify_behrstock(cfg: &ExperimentConfig) -> Result<Report> {
    if let Some(sig) = cfg.surface {
        if sig != UPSTAIRS {
            return Err(Error::SurfaceMismatch { expected: UPSTAIRS.to_string(), found: sig.to_string() });
        }
    }
    let wanted = cfg.samples.unwrap_or(300);
    let bound = cfg.weight_bound.unwrap_or(3);
    let cap = cfg.cap.unwrap_or(DEFAULT_CAP);
    let per_pair = 5;
    let mut report = Report::new("behrstock");

    let pool = CurvePool::new(UPSTAIRS, bound, cap)?;
    let base = greedy_pants(UPSTAIRS, pool.curves()).ok_or_else(|| Error::Data("no pants decomposition in the pool".into()))?;
    let model = ComplexModel::new(ComplexKind::Pants, &pool);
    let snap = GraphSnapshot::build(&model, base, cfg.radius.unwrap_or(2), cap)?;

    let graphs = region_graphs(&pool, 1, 24, cfg.seed(), "behrstock regions")?;
    let mut pairs = Vec::new();
    for i in 0..graphs.len() {
        for j in i + 1..graphs.len() {
            if let (Region::Piece(w), Region::Piece(v)) = (graphs[i].region(), graphs[j].region()) {
                if overlapping(w, v)? {
                    pairs.push((i, j));
                }
            }
        }
    }
    let mut r = rng(cfg.seed(), "behrstock");
    pairs.shuffle(&mut r);
    pairs.truncate(wanted.div_ceil(per_pair));
    let jobs: Vec<(usize, usize, Vec<Multicurve>)> =
        pairs.iter().map(|&(i, j)| (i, j, sample(&mut r, snap.vertices(), per_pair))).collect();
    let results: Vec<Vec<Triple>> = jobs
        .par_iter()
        .map(|(i, j, ps)| {
            let (mut w, mut v) = (graphs[*i].clone(), graphs[*j].clone());
            ps.iter()
                .map(|p| match behrstock_gap(p, &mut w, &mut v) {
                    Ok(g) => Ok((*i, *j, Some(g))),
                    Err(Error::Unreachable) => Ok((*i, *j, None)),
                    Err(e) => Err(e),
                })
                .collect()
        })
        .collect::<Result<_>>()?;

    let mut hist: BTreeMap<usize, usize> = BTreeMap::new();
    let (mut total, mut open, mut worst) = (0, Vec::new(), 0);
    for &(i, j, g) in results.iter().flatten() {
        total += 1;
        match g {
            Some((a, b)) if a.min(b) <= BEHRSTOCK_BOUND => {
                *hist.entry(a.min(b)).or_default() += 1;
                worst = worst.max(a.min(b));
            }
            other => open.push(json!({
                "w": graphs[i].region().label(), "v": graphs[j].region().label(), "gap": other,
            })),
        }
    }
    report.check(
        "Behrstock inequality with constant ten",
        total >= wanted && open.is_empty(),
        format!(
            "{total} triples over {} overlapping pairs: largest smaller side {worst}, {} inconclusive, 0 violations",
            pairs.len(),
            open.len()
        ),
    );
    let mut table = Table::new("smaller side", &["min", "triples"]);
    for (d, n) in &hist {
        table.row(vec![d.to_string(), n.to_string()]);
    }
    report.tables.push(table);
    report.data = json!({
        "weight_bound": bound, "pants_snapshot_digest": snap.digest(), "pants_vertices": snap.len(),
        "regions": graphs.len(), "overlapping_pairs": pairs.len(), "min_histogram": hist, "inconclusive": open,
    });
    Ok(report)
}
