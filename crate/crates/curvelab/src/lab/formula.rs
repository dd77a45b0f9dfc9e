//! Distance-formula sanity: compares exact pants distances in a snapshot
//! with the thresholded sum of subsurface projection distances.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde_json::json;

use crate::complex::{ComplexKind, ComplexModel, CurvePool, GraphSnapshot};
use crate::enumerate::DEFAULT_CAP;
use crate::error::{Error, Result};
use crate::estimate::{subsurface_universe, Estimator};
use crate::lab::{fmt_f, greedy_pants, spearman, upper_affine, ExperimentConfig, Report, Table};
use crate::surface::SurfaceSig;

/// Smallest rank correlation accepted between distance and estimate.
pub const MIN_SPEARMAN: f64 = 0.8;

const DEFAULT_SURFACE: SurfaceSig = SurfaceSig::new(0, 5);

/// One compared pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FormulaRow {
    pub u: usize,
    pub v: usize,
    pub distance: usize,
    /// Thresholded distance-formula sum.
    pub estimate: usize,
}

/// All pairs of a pants snapshot with their thresholded estimates, plus
/// the per-pair region distances for re-thresholding.
pub fn formula_rows(snap: &GraphSnapshot, est: &mut Estimator, threshold: usize) -> Result<(Vec<FormulaRow>, Vec<Vec<usize>>)> {
    let profiles = snap.vertices().iter().map(|p| est.profile(p)).collect::<Result<Vec<_>>>()?;
    let est = &*est;
    let per_u: Vec<Vec<(FormulaRow, Vec<usize>)>> = (0..snap.len())
        .into_par_iter()
        .map(|u| {
            let dist = snap.distances_from(u);
            let mut out = Vec::new();
            for v in u + 1..snap.len() {
                let Some(d) = dist[v] else { continue };
                let rd = est.region_distances(&profiles[u], &profiles[v]).map_err(|e| match e {
                    Error::Unreachable => Error::UniverseTooSmall("a region graph is disconnected".into()),
                    e => e,
                })?;
                let e = est.estimate_from(&profiles[u], &profiles[v], &rd, threshold).sum;
                out.push((FormulaRow { u, v, distance: d, estimate: e }, rd));
            }
            Ok(out)
        })
        .collect::<Result<_>>()?;
    Ok(per_u.into_iter().flatten().unzip())
}

fn thresholded(rd: &[usize], m: usize) -> usize {
    rd.iter().filter(|&&d| d >= m).sum()
}

/// Exact distance against the distance-formula sum on every pair of the
/// pants ball, with fitted affine constants both ways.
pub fn verify_formula(cfg: &ExperimentConfig) -> Result<Report> {
    let sig = cfg.surface.unwrap_or(DEFAULT_SURFACE);
    let bound = cfg.weight_bound.unwrap_or(4);
    let radius = cfg.radius.unwrap_or(4);
    let threshold = cfg.threshold.unwrap_or(4);
    if threshold == 0 {
        return Err(Error::Parse("threshold must be at least 1".into()));
    }
    let cap = cfg.cap.unwrap_or(DEFAULT_CAP);
    let mut report = Report::new("formula");

    let pool = CurvePool::new(sig, bound, cap)?;
    let base = greedy_pants(sig, pool.curves()).ok_or_else(|| Error::Data("no pants decomposition in the pool".into()))?;
    let model = ComplexModel::new(ComplexKind::Pants, &pool);
    let snap = GraphSnapshot::build(&model, base, radius, cap)?;
    let universe = subsurface_universe(sig, pool.curves(), sig.complexity().max(1) as usize - 1)?;
    let regions = universe.len();
    let mut est = Estimator::new(universe, pool.curves())?;
    let (rows, region_d) = formula_rows(&snap, &mut est, threshold)?;

    let d: Vec<f64> = rows.iter().map(|r| r.distance as f64).collect();
    let e: Vec<f64> = rows.iter().map(|r| r.estimate as f64).collect();
    let rho = spearman(&d, &e);
    let (a, b) = upper_affine(&d, &e);
    let (a2, b2) = upper_affine(&e, &d);
    report.check(
        "estimate is affinely bounded by distance",
        e.iter().zip(&d).all(|(y, x)| *y <= a * x + b + 1e-9),
        format!("estimate <= {} d + {}", fmt_f(a), fmt_f(b)),
    );
    report.check(
        "distance is affinely bounded by estimate",
        d.iter().zip(&e).all(|(y, x)| *y <= a2 * x + b2 + 1e-9),
        format!("d <= {} estimate + {}", fmt_f(a2), fmt_f(b2)),
    );
    report.check(
        "rank correlation at least 0.8",
        rho.is_some_and(|r| r >= MIN_SPEARMAN),
        format!(
            "Spearman {} over {} pairs of a {}-vertex ball, {regions} regions, M = {threshold}",
            rho.map_or("undefined".into(), fmt_f),
            rows.len(),
            snap.len()
        ),
    );

    let mut table = Table::new("estimate by distance", &["d", "pairs", "min", "mean", "max"]);
    let mut by_d: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for r in &rows {
        by_d.entry(r.distance).or_default().push(r.estimate);
    }
    let mut summary = Vec::new();
    for (dist, es) in &by_d {
        let mean = es.iter().sum::<usize>() as f64 / es.len() as f64;
        let (lo, hi) = (es.iter().min().copied().unwrap_or(0), es.iter().max().copied().unwrap_or(0));
        table.row(vec![dist.to_string(), es.len().to_string(), lo.to_string(), fmt_f(mean), hi.to_string()]);
        summary.push(json!({"d": dist, "pairs": es.len(), "min": lo, "mean": fmt_f(mean), "max": hi}));
    }
    report.tables.push(table);

    let mut sweep = Table::new("threshold sweep", &["M", "Spearman"]);
    let mut sweep_data = Vec::new();
    for m in 1..=threshold.max(4) {
        let em: Vec<f64> = region_d.iter().map(|rd| thresholded(rd, m) as f64).collect();
        let r = spearman(&d, &em).map_or("undefined".into(), fmt_f);
        sweep.row(vec![m.to_string(), r.clone()]);
        sweep_data.push(json!({"threshold": m, "spearman": r}));
    }
    report.tables.push(sweep);
    report.data = json!({
        "surface": sig.to_string(), "weight_bound": bound, "radius": radius, "threshold": threshold,
        "snapshot_digest": snap.digest(), "vertices": snap.len(), "regions": regions, "pairs": rows.len(),
        "spearman": rho.map(fmt_f), "upper": {"a": fmt_f(a), "b": fmt_f(b)}, "lower": {"a": fmt_f(a2), "b": fmt_f(b2)},
        "by_distance": summary, "threshold_sweep": sweep_data,
    });
    Ok(report)
}
