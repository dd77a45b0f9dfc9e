//! The pseudo-Anosov axis in the pants graph of the punctured genus-two
//! surface, and probes of its divergence and contraction.
//!
//! Axis points `P_j` are lifts of pants decompositions built from
//! consecutive images of the seed curve. A path from `P_0` to `P_1` is
//! found by greedy elementary moves and translated by powers of the
//! mapping class to give a periodic path through every `P_j`.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use rand::seq::SliceRandom;
use rayon::prelude::*;
use serde_json::json;

use crate::complex::{pants_neighbors, ComplexKind, ComplexModel, CurvePool, GraphSnapshot};
use crate::curve::{Curve, Multicurve};
use crate::enumerate::{enumerate_curves, CurveFilter, DEFAULT_CAP};
use crate::error::{Error, Result};
use crate::estimate::{Region, RegionGraph};
use crate::lab::sep::{label_component, push_words};
use crate::lab::{fmt_f, rng, ExperimentConfig, Ratio, Report, Table};
use crate::mcg::{forget_boundary, lift_curve, lift_multicurve, pseudo_anosov_seed, MoveKind, Seed, TwistWord, UPSTAIRS};
use crate::subsurface::{extend_multicurve, x_region_contains, Subsurface};

/// Weight bound of the background curves offered to greedy moves.
const GREEDY_BOUND: u32 = 2;
/// Greedy moves allowed per twist letter before giving up.
const GREEDY_STEPS: usize = 60;

/// Axis points `P_j` for `j ∈ [-n, n]` with the closed-surface data they
/// come from.
#[derive(Debug, Clone)]
pub struct AxisSegment {
    pub n: usize,
    /// `ᾱ_j` for `j ∈ [-n, n + 1]`.
    pub alphas: Vec<Curve>,
    /// `Q̄_j`, the pants decomposition through `ᾱ_j` and `ᾱ_{j+1}`.
    pub quotients: Vec<Multicurve>,
    pub points: Vec<Multicurve>,
}

impl AxisSegment {
    fn slot(&self, j: i32) -> usize {
        (j + self.n as i32) as usize
    }

    pub fn alpha(&self, j: i32) -> &Curve {
        &self.alphas[self.slot(j)]
    }

    pub fn quotient(&self, j: i32) -> &Multicurve {
        &self.quotients[self.slot(j)]
    }

    pub fn point(&self, j: i32) -> &Multicurve {
        &self.points[self.slot(j)]
    }
}

/// `Q̄_j` extends `ᾱ_j` by the projections of `ᾱ_{j+1}`; `P_j` extends the
/// lift of `Q̄_j` by the projections of the lift of `ᾱ_{j+1}`.
pub fn axis_point(alpha: &Curve, next: &Curve) -> Result<(Multicurve, Multicurve)> {
    let q = extend_multicurve(&Multicurve::single(alpha.clone()), &Multicurve::single(next.clone()))?;
    let p = extend_multicurve(&lift_multicurve(&q)?, &Multicurve::single(lift_curve(next)?))?;
    Ok((q, p))
}

/// Builds `P_{-n}, …, P_n`.
pub fn build_axis(seed: &Seed, n: usize) -> Result<AxisSegment> {
    if n == 0 {
        return Err(Error::Parse("axis half-length must be at least 1".into()));
    }
    let alphas = (-(n as i32)..=n as i32 + 1).map(|j| seed.alpha(j)).collect::<Result<Vec<_>>>()?;
    let (quotients, points) = alphas.par_windows(2).map(|w| axis_point(&w[0], &w[1])).collect::<Result<Vec<_>>>()?.into_iter().unzip();
    Ok(AxisSegment { n, alphas, quotients, points })
}

/// Elementary moves from `x` to a pants decomposition containing `c`,
/// each strictly lowering the intersection with `c`. Candidates are the
/// `background` curves and the projections of `c` into the pieces left by
/// dropping one curve; ties go to the least fingerprint.
pub fn greedy_reach(x: &Multicurve, c: &Curve, background: &[Curve]) -> Result<Vec<Multicurve>> {
    let mut path = vec![x.clone()];
    let mut cur = x.clone();
    for _ in 0..GREEDY_STEPS {
        if cur.contains(c) {
            return Ok(path);
        }
        let score = cur.intersection_with(c)?;
        let mut cands: BTreeSet<Curve> = background.iter().cloned().collect();
        cands.insert(c.clone());
        for y in cur.curves() {
            for z in Subsurface::pieces_of(&cur.without(y)) {
                cands.extend(z.project(c)?);
            }
        }
        let pool = CurvePool::from_curves(x.sig(), 0, cands.into_iter().collect());
        let mut best: Option<(usize, Multicurve)> = None;
        for n in pants_neighbors(&cur, &pool)? {
            let s = n.intersection_with(c)?;
            if best.as_ref().is_none_or(|(b, m)| (s, &n) < (*b, m)) {
                best = Some((s, n));
            }
        }
        match best {
            Some((s, n)) if s < score => {
                path.push(n.clone());
                cur = n;
            }
            _ => return Err(Error::Unreachable),
        }
    }
    Err(Error::Unreachable)
}

/// Drops loops and jumps over vertices whenever a later vertex is already
/// adjacent, so no vertex is adjacent to a non-consecutive one ahead.
pub fn shortcut(path: &[Multicurve]) -> Result<Vec<Multicurve>> {
    let pool = CurvePool::from_curves(UPSTAIRS, 0, Vec::new());
    let model = ComplexModel::new(ComplexKind::Pants, &pool);
    let mut out: Vec<Multicurve> = Vec::new();
    let mut i = 0;
    while i < path.len() {
        out.push(path[i].clone());
        let mut next = i + 1;
        for k in (i + 1..path.len()).rev() {
            if path[k] == path[i] {
                next = k + 1;
                break;
            }
            if k > i + 1 && model.adjacent(&path[i], &path[k])? {
                next = k;
                break;
            }
        }
        i = next;
    }
    Ok(out)
}

/// Path from `P_0` to `f·P_0`: for every twist letter `T_c` in acting
/// order, walk to a decomposition `R ∋ c` and then along the twisted
/// reverse, which ends at `T_c` of the start since `T_c R = R`.
pub fn fundamental_path(seed: &Seed, p0: &Multicurve) -> Result<Vec<Multicurve>> {
    let background = enumerate_curves(UPSTAIRS, GREEDY_BOUND, CurveFilter::All, DEFAULT_CAP)?;
    let mut x = p0.clone();
    let mut path = vec![x.clone()];
    for mv in seed.up.moves().iter().rev() {
        let MoveKind::Twist(c) = &mv.kind else {
            return Err(Error::Data("axis letters must be twists".into()));
        };
        let t = TwistWord::new(UPSTAIRS, vec![mv.clone()])?;
        let there = greedy_reach(&x, c, &background)?;
        let back = there.iter().rev().skip(1).map(|m| t.apply_multicurve(m)).collect::<Result<Vec<_>>>()?;
        path.extend(there.into_iter().skip(1));
        path.extend(back);
        x = t.apply_multicurve(&x)?;
    }
    if path.last() != Some(&seed.up.apply_multicurve(p0)?) {
        return Err(Error::Data("fundamental path does not end at the translate".into()));
    }
    shortcut(&path)
}

/// A periodic path through the axis points: translates `f^j G` of one
/// fundamental path for `j ∈ [-k, k]`.
#[derive(Debug, Clone)]
pub struct AxisPath {
    pub vertices: Vec<Multicurve>,
    /// Index of `P_0`, the parameter origin.
    pub origin: usize,
    /// Length of one period.
    pub period: usize,
}

impl AxisPath {
    /// `γ(t)`, if the path reaches that far.
    pub fn at(&self, t: i64) -> Option<&Multicurve> {
        let i = self.origin as i64 + t;
        (0..self.vertices.len() as i64).contains(&i).then(|| &self.vertices[i as usize])
    }

    /// Parameters covered, as `(min, max)`.
    pub fn range(&self) -> (i64, i64) {
        (-(self.origin as i64), (self.vertices.len() - 1 - self.origin) as i64)
    }
}

pub fn axis_path(seed: &Seed, p0: &Multicurve, periods: usize) -> Result<AxisPath> {
    let g = fundamental_path(seed, p0)?;
    let period = g.len() - 1;
    let k = periods as i32;
    let mut vertices: Vec<Multicurve> = Vec::new();
    for j in -k..k {
        let f = seed.up.pow(j);
        let seg = g.par_iter().map(|m| f.apply_multicurve(m)).collect::<Result<Vec<_>>>()?;
        if !vertices.is_empty() {
            vertices.pop();
        }
        vertices.extend(seg);
    }
    Ok(AxisPath { vertices, origin: periods * period, period })
}

/// Everything the axis drivers share.
pub struct AxisLab {
    pub seed: Seed,
    pub segment: AxisSegment,
    pub path: AxisPath,
}

impl AxisLab {
    pub fn new(n: usize) -> Result<Self> {
        let seed = pseudo_anosov_seed()?;
        let segment = build_axis(&seed, n)?;
        let path = axis_path(&seed, segment.point(0), 1)?;
        Ok(AxisLab { seed, segment, path })
    }

    /// Pants ball of `radius` around `γ(0)` over the curves of weight at
    /// most `bound` and the curves of `γ(t)` for `|t| ≤ radius`.
    pub fn snapshot(&self, bound: u32, radius: usize, cap: usize) -> Result<GraphSnapshot> {
        let mut curves: BTreeSet<Curve> = enumerate_curves(UPSTAIRS, bound, CurveFilter::All, cap)?.into_iter().collect();
        for t in -(radius as i64)..=radius as i64 {
            if let Some(m) = self.path.at(t) {
                curves.extend(m.curves().iter().cloned());
            }
        }
        let pool = CurvePool::from_curves(UPSTAIRS, bound, curves.into_iter().collect());
        let model = ComplexModel::new(ComplexKind::Pants, &pool);
        GraphSnapshot::build(&model, self.path.vertices[self.path.origin].clone(), radius, cap)
    }
}

fn lab_for(cfg: &ExperimentConfig) -> Result<AxisLab> {
    if let Some(sig) = cfg.surface {
        if sig != UPSTAIRS {
            return Err(Error::SurfaceMismatch { expected: UPSTAIRS.to_string(), found: sig.to_string() });
        }
    }
    AxisLab::new(3)
}

/// Seed facts and the translation invariant along the axis.
pub fn verify_axis(cfg: &ExperimentConfig) -> Result<Report> {
    let lab = lab_for(cfg)?;
    let (seed, seg) = (&lab.seed, &lab.segment);
    let n = seg.n as i32;
    let mut report = Report::new("axis-build");

    let i = seed.down.apply(&seed.alpha0)?.intersection(&seed.alpha0)?;
    report.check("seed curve meets its image four times", i == 4, format!("i = {i}"));

    let mut table = Table::new("axis points", &["j", "|alpha_j|", "Q pants", "f Q_j = Q_j+1", "f P_j = P_j+1", "P in X_alpha_j"]);
    let (mut pants_ok, mut down_ok, mut up_ok, mut region_ok) = (true, true, true, true);
    let mut rows = Vec::new();
    for j in -n..=n {
        let q = seg.quotient(j);
        let pants = q.is_pants_decomposition() && q.contains(seg.alpha(j));
        let down = if j < n { Some(seed.down.apply_multicurve(q)? == *seg.quotient(j + 1)) } else { None };
        let up = if j < n { Some(seed.up.apply_multicurve(seg.point(j))? == *seg.point(j + 1)) } else { None };
        let inside = seg.point(j).is_pants_decomposition() && x_region_contains(seg.alpha(j), seg.point(j))?;
        pants_ok &= pants;
        down_ok &= down.unwrap_or(true);
        up_ok &= up.unwrap_or(true);
        region_ok &= inside;
        let show = |b: Option<bool>| b.map_or("-".to_string(), |b| b.to_string());
        table.row(vec![
            j.to_string(),
            seg.alpha(j).word().len().to_string(),
            pants.to_string(),
            show(down),
            show(up),
            inside.to_string(),
        ]);
        rows.push(json!({"j": j, "alpha": seg.alpha(j).name(), "quotient": q.to_line(), "point": seg.point(j).to_line()}));
    }
    report.check(
        "every quotient decomposition is full",
        pants_ok,
        format!("Q_j for |j| <= {n} contain alpha_j and have 3 curves"),
    );
    report.check("the closed-surface map translates the quotients", down_ok, format!("{} identities", 2 * n));
    report.check("the lift translates the axis points", up_ok, format!("{} fingerprint identities", 2 * n));
    report.check("axis points lie over the seed images", region_ok, "each P_j is a pants decomposition containing a lift of alpha_j");

    // Equivariance of the forgetful map on the enumerated curves.
    let curves = enumerate_curves(UPSTAIRS, cfg.weight_bound.unwrap_or(3), CurveFilter::All, cfg.cap.unwrap_or(DEFAULT_CAP))?;
    let outcomes: Vec<Option<bool>> = curves
        .par_iter()
        .map(|c| match forget_boundary(c) {
            Ok(d) => Ok(Some(forget_boundary(&seed.up.apply(c)?)? == seed.down.apply(&d)?)),
            Err(Error::InvalidCurve(_)) => Ok(None),
            Err(e) => Err(e),
        })
        .collect::<Result<_>>()?;
    let compared = outcomes.iter().flatten().count();
    let bad = outcomes.iter().flatten().filter(|b| !**b).count();
    report.check(
        "forgetting the puncture commutes with the map",
        bad == 0 && compared > 0,
        format!("{compared} curves stay essential after forgetting, {bad} mismatches; {} become inessential", curves.len() - compared),
    );

    let p = &lab.path;
    let lengths: Vec<usize> = (0..p.vertices.len() / p.period.max(1)).map(|_| p.period).collect();
    let periodic = (p.period..p.vertices.len())
        .map(|i| Ok(seed.up.apply_multicurve(&p.vertices[i - p.period])? == p.vertices[i]))
        .collect::<Result<Vec<bool>>>()?
        .into_iter()
        .all(|b| b);
    report.check(
        "path segments between consecutive axis points are translates",
        periodic && p.at(0) == Some(seg.point(0)) && p.at(p.period as i64) == Some(seg.point(1)),
        format!("period {} moves, {} vertices", p.period, p.vertices.len()),
    );
    report.tables.push(table);
    report.data = json!({
        "intersection": i, "points": rows, "period": p.period, "segment_lengths": lengths,
        "path": p.vertices.iter().map(|m| m.to_line()).collect::<Vec<_>>(),
    });
    Ok(report)
}

/// One divergence measurement.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DivergenceRow {
    pub r: usize,
    /// Radius of the removed open ball, `⌈εr⌉`.
    pub forbidden: usize,
    pub ordinary: Option<usize>,
    pub detour: Option<usize>,
}

impl DivergenceRow {
    /// `2r` minus the snapshot distance between the endpoints.
    pub fn slack(&self) -> Option<i64> {
        self.ordinary.map(|d| 2 * self.r as i64 - d as i64)
    }
}

/// Shortest path from `γ(-r)` to `γ(r)` in the snapshot with the open
/// ball `B_{⌈εr⌉}(γ(0))` removed.
pub fn divergence_probe(path: &AxisPath, snap: &GraphSnapshot, r: usize, eps: Ratio) -> Result<DivergenceRow> {
    if r > snap.radius {
        return Err(Error::RadiusExceedsSnapshot { radius: r, snapshot: snap.radius });
    }
    let forbidden = eps.ceil_mul(r);
    let (a, b) = match (path.at(-(r as i64)), path.at(r as i64)) {
        (Some(a), Some(b)) => (snap.index_of(a), snap.index_of(b)),
        _ => (None, None),
    };
    let (Some(a), Some(b)) = (a, b) else {
        return Ok(DivergenceRow { r, forbidden, ordinary: None, detour: None });
    };
    let center = snap.index_of(&path.vertices[path.origin]).ok_or(Error::UnknownVertex)?;
    let from_center = snap.distances_from(center);
    let ordinary = snap.distances_from(a)[b];
    let blocked = |v: usize| from_center[v].is_some_and(|d| d < forbidden);
    let detour = if blocked(a) || blocked(b) {
        None
    } else {
        let mut dist = vec![None; snap.len()];
        dist[a] = Some(0);
        let mut q = VecDeque::from([a]);
        while let Some(u) = q.pop_front() {
            let du = dist[u].expect("visited");
            for &v in snap.neighbors(u) {
                if dist[v].is_none() && !blocked(v) {
                    dist[v] = Some(du + 1);
                    q.push_back(v);
                }
            }
        }
        dist[b]
    };
    Ok(DivergenceRow { r, forbidden, ordinary, detour })
}

/// Least-squares slope of `log y` against `log x`.
fn log_slope(points: &[(f64, f64)]) -> Option<f64> {
    let pts: Vec<(f64, f64)> = points.iter().filter(|(x, y)| *x > 0.0 && *y > 0.0).map(|(x, y)| (x.ln(), y.ln())).collect();
    if pts.len() < 2 {
        return None;
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    (sxx > 0.0).then(|| sxy / sxx)
}

const DEFAULT_BOUND: u32 = 3;
const DEFAULT_RADIUS: usize = 6;
const PROBE_RADII: [usize; 3] = [1, 2, 3];

/// Detour distances for `r = 1, 2, 3` around `γ(0)`.
pub fn verify_divergence(cfg: &ExperimentConfig) -> Result<Report> {
    let lab = lab_for(cfg)?;
    verify_divergence_with(&lab, cfg)
}

pub fn verify_divergence_with(lab: &AxisLab, cfg: &ExperimentConfig) -> Result<Report> {
    let eps = cfg.epsilon.unwrap_or(Ratio::HALF);
    let bound = cfg.weight_bound.unwrap_or(DEFAULT_BOUND);
    let radius = cfg.radius.unwrap_or(DEFAULT_RADIUS);
    let snap = lab.snapshot(bound, radius, cfg.cap.unwrap_or(DEFAULT_CAP))?;
    let mut report = Report::new("axis-diverge");
    let rows = PROBE_RADII
        .iter()
        .filter(|&&r| r <= radius)
        .map(|&r| divergence_probe(&lab.path, &snap, r, eps))
        .collect::<Result<Vec<_>>>()?;
    let defined = rows.len() == PROBE_RADII.len() && rows.iter().all(|r| r.detour.is_some());
    let monotone = rows.windows(2).all(|w| match (w[0].detour, w[1].detour) {
        (Some(x), Some(y)) => x <= y,
        (None, Some(_)) => false,
        _ => true,
    });
    let lower = rows.iter().all(|r| match (r.detour, r.slack()) {
        (Some(d), Some(s)) => d as i64 >= 2 * r.r as i64 - s,
        _ => false,
    });
    report.check(
        "detours are defined",
        defined,
        format!("r in {PROBE_RADII:?} inside a radius-{radius} ball of {} vertices", snap.len()),
    );
    report.check("detours never decrease", monotone, "rows in increasing r");
    report.check("detour is at least 2r minus slack", lower, "slack = 2r - d(gamma(-r), gamma(r))");
    let mut table = Table::new("divergence", &["r", "ball", "d", "slack", "detour"]);
    let show = |x: Option<usize>| x.map_or("unreachable".to_string(), |v| v.to_string());
    let mut data = Vec::new();
    for r in &rows {
        table.row(vec![
            r.r.to_string(),
            r.forbidden.to_string(),
            show(r.ordinary),
            r.slack().map_or("-".into(), |s| s.to_string()),
            show(r.detour),
        ]);
        data.push(json!({"r": r.r, "forbidden": r.forbidden, "distance": r.ordinary, "slack": r.slack(), "detour": r.detour}));
    }
    report.tables.push(table);
    let pts: Vec<(f64, f64)> = rows.iter().filter_map(|r| r.detour.map(|d| (r.r as f64, d as f64))).collect();
    let exponent = log_slope(&pts);
    report.note(format!(
        "fitted growth exponent {} (informational only: three radii cannot certify asymptotic divergence)",
        exponent.map_or("undefined".into(), fmt_f)
    ));
    report.data = json!({
        "epsilon": eps.to_string(), "weight_bound": bound, "radius": radius,
        "snapshot_digest": snap.digest(), "vertices": snap.len(), "rows": data,
        "exponent": exponent.map(fmt_f),
    });
    Ok(report)
}

/// Fraction of `d(x, axis)` within which moves of `x` are compared.
pub const CONTRACTION_B: Ratio = Ratio::HALF;

/// Nearest axis parameters of every snapshot vertex.
#[derive(Debug, Clone)]
pub struct NearestPoints {
    /// Axis parameters present in the snapshot, with their vertices.
    pub axis: Vec<(i64, usize)>,
    /// Per vertex: distance to the axis and the minimizing parameters.
    pub nearest: Vec<Option<(usize, Vec<i64>)>>,
}

impl NearestPoints {
    /// The projection of `v`: the least minimizing parameter.
    pub fn project(&self, v: usize) -> Option<i64> {
        self.nearest[v].as_ref().map(|(_, ts)| ts[0])
    }
}

/// Exhaustive nearest-point projection onto the axis vertices inside the
/// snapshot.
pub fn nearest_points(path: &AxisPath, snap: &GraphSnapshot) -> NearestPoints {
    let (lo, hi) = path.range();
    let axis: Vec<(i64, usize)> = (lo..=hi).filter_map(|t| snap.index_of(path.at(t)?).map(|v| (t, v))).collect();
    let dists: Vec<Vec<Option<usize>>> = axis.par_iter().map(|&(_, v)| snap.distances_from(v)).collect();
    let nearest = (0..snap.len())
        .map(|v| {
            let best = axis.iter().zip(&dists).filter_map(|(&(_, _), d)| d[v]).min()?;
            let ts: Vec<i64> = axis.iter().zip(&dists).filter(|(_, d)| d[v] == Some(best)).map(|(&(t, _), _)| t).collect();
            Some((best, ts))
        })
        .collect();
    NearestPoints { axis, nearest }
}

/// Diameter of the projection of every axis vertex into `region`, with a
/// single enrichment when the region graph leaves it undetermined.
pub fn axis_projection_diameter(path: &AxisPath, region: Region, pool: &[Curve]) -> Result<Option<usize>> {
    let mut g = RegionGraph::new(region, pool)?;
    let mut ids = Vec::new();
    for m in &path.vertices {
        ids.extend(g.project(m)?);
    }
    ids.sort_unstable();
    ids.dedup();
    match g.diameter(&ids) {
        Ok(d) => Ok(Some(d)),
        Err(Error::Unreachable) => {
            g.enrich(pool)?;
            match g.diameter(&ids) {
                Ok(d) => Ok(Some(d)),
                Err(Error::Unreachable) => Ok(None),
                Err(e) => Err(e),
            }
        }
        Err(e) => Err(e),
    }
}

/// Nearest-point projections of snapshot vertices onto the axis, and
/// projections of the axis to separating subsurfaces.
pub fn verify_contraction(cfg: &ExperimentConfig) -> Result<Report> {
    let lab = lab_for(cfg)?;
    verify_contraction_with(&lab, cfg)
}

pub fn verify_contraction_with(lab: &AxisLab, cfg: &ExperimentConfig) -> Result<Report> {
    let bound = cfg.weight_bound.unwrap_or(DEFAULT_BOUND);
    let radius = cfg.radius.unwrap_or(DEFAULT_RADIUS);
    let cap = cfg.cap.unwrap_or(DEFAULT_CAP);
    let samples = cfg.samples.unwrap_or(200);
    let snap = lab.snapshot(bound, radius, cap)?;
    let np = nearest_points(&lab.path, &snap);
    let mut report = Report::new("axis-contract");

    let fixed = np.axis.iter().all(|&(t, v)| np.nearest[v].as_ref().is_some_and(|(d, ts)| *d == 0 && ts == &vec![t]));
    report.check(
        "axis vertices project to themselves",
        fixed,
        format!("{} axis vertices inside a radius-{radius} ball of {} vertices", np.axis.len(), snap.len()),
    );

    // Off-axis samples and their moves within b·d(x, axis).
    let off: Vec<usize> = (0..snap.len()).filter(|&v| np.nearest[v].as_ref().is_some_and(|(d, _)| *d > 0)).collect();
    let mut r = rng(cfg.seed(), "contraction");
    let mut picked = off.clone();
    picked.shuffle(&mut r);
    picked.truncate(samples);
    picked.sort_unstable();
    let axis_index: BTreeMap<i64, usize> = np.axis.iter().copied().collect();
    let per_x: Vec<(usize, usize, usize, usize)> = picked
        .par_iter()
        .map(|&x| {
            let (dx, ts) = np.nearest[x].clone().expect("sampled vertices reach the axis");
            let dist = snap.distances_from(x);
            let reach = CONTRACTION_B.num as usize * dx / CONTRACTION_B.den as usize;
            let px = axis_index[&ts[0]];
            let from_px = snap.distances_from(px);
            let set_diam = ts.iter().map(|t| from_px[axis_index[t]].unwrap_or(usize::MAX)).max().unwrap_or(0);
            let mut moved = 0;
            let mut worst = 0;
            for (y, d) in dist.iter().enumerate() {
                if d.is_some_and(|d| d <= reach) {
                    if let Some(py) = np.project(y) {
                        moved += 1;
                        worst = worst.max(from_px[axis_index[&py]].unwrap_or(usize::MAX));
                    }
                }
            }
            (dx, set_diam, moved, worst)
        })
        .collect();
    let c_fit = per_x.iter().map(|p| p.3).max().unwrap_or(0);
    let set_diam = per_x.iter().map(|p| p.1).max().unwrap_or(0);
    let finite = per_x.iter().all(|p| p.1 != usize::MAX && p.3 != usize::MAX);
    report.check(
        "nearest-point projections of small balls are bounded",
        finite && !per_x.is_empty(),
        format!(
            "{} off-axis samples, b = {}: projection moves at most c = {c_fit}; nearest sets have diameter <= {set_diam}",
            per_x.len(),
            CONTRACTION_B
        ),
    );
    let mut by_d: BTreeMap<usize, (usize, usize)> = BTreeMap::new();
    for &(dx, _, _, worst) in &per_x {
        let e = by_d.entry(dx).or_default();
        e.0 += 1;
        e.1 = e.1.max(worst);
    }
    let mut table = Table::new("nearest-point projection", &["d(x, axis)", "samples", "max move"]);
    for (d, (n, w)) in &by_d {
        table.row(vec![d.to_string(), n.to_string(), w.to_string()]);
    }
    report.tables.push(table);

    // Separating subsurfaces: both pieces of every enumerated separating curve.
    let sep_bound = bound.max(4);
    let seps = enumerate_curves(UPSTAIRS, sep_bound, CurveFilter::Separating, cap)?;
    let pool = enumerate_curves(UPSTAIRS, bound, CurveFilter::All, cap)?;
    let regions: Vec<Region> =
        seps.iter().flat_map(|c| Subsurface::pieces_of(&Multicurve::single(c.clone()))).map(Region::Piece).collect();
    let diams: Vec<(String, Option<usize>)> = regions
        .into_par_iter()
        .map(|y| {
            let label = y.label();
            Ok((label, axis_projection_diameter(&lab.path, y, &pool)?))
        })
        .collect::<Result<_>>()?;
    let undetermined = diams.iter().filter(|d| d.1.is_none()).count();
    let c_sep = diams.iter().filter_map(|d| d.1).max().unwrap_or(0);
    let mut hist: BTreeMap<usize, usize> = BTreeMap::new();
    for d in diams.iter().filter_map(|d| d.1) {
        *hist.entry(d).or_default() += 1;
    }
    report.check(
        "axis projections to separating subsurfaces are uniformly bounded",
        undetermined == 0 && !diams.is_empty(),
        format!(
            "{} subsurfaces cut off by {} separating curves of weight <= {sep_bound}: diameter <= {c_sep}, {undetermined} undetermined",
            diams.len(),
            seps.len()
        ),
    );
    let mut table = Table::new("axis projection diameters", &["diameter", "subsurfaces"]);
    for (d, n) in &hist {
        table.row(vec![d.to_string(), n.to_string()]);
    }
    report.tables.push(table);
    report.data = json!({
        "weight_bound": bound, "radius": radius, "snapshot_digest": snap.digest(), "vertices": snap.len(),
        "axis_vertices": np.axis.len(), "b": CONTRACTION_B.to_string(), "c": c_fit, "nearest_set_diameter": set_diam,
        "samples": by_d.iter().map(|(d, (n, w))| json!({"d": d, "samples": n, "max_move": w})).collect::<Vec<_>>(),
        "separating_constant": c_sep, "separating_histogram": hist,
        "undetermined": diams.iter().filter(|d| d.1.is_none()).map(|d| d.0.clone()).collect::<Vec<_>>(),
    });
    Ok(report)
}

/// Powers of the push word checked by the thick chain.
pub const CHAIN_POWERS: i32 = 3;
/// Largest ball searched for the distance between the chained points.
const CHAIN_MAX_RADIUS: usize = 6;

/// Pants distance between `p` and `q` in balls around `p` over `pool`,
/// growing the radius until `q` appears.
fn ball_distance(pool: Vec<Curve>, p: &Multicurve, q: &Multicurve, cap: usize) -> Result<(usize, usize)> {
    let pool = CurvePool::from_curves(UPSTAIRS, 0, pool);
    let model = ComplexModel::new(ComplexKind::Pants, &pool);
    for radius in 0..=CHAIN_MAX_RADIUS {
        let snap = GraphSnapshot::build(&model, p.clone(), radius, cap)?;
        if let Ok(d) = snap.distance_between(p, q) {
            return Ok((d, snap.len()));
        }
    }
    Err(Error::Unreachable)
}

/// Thickly chained regions: `P_1 ∋ α`, `P'_1 ∋ α'` with `i(α, α') = 4`,
/// and `d(g^n P_1, g^n P'_1)` for a point push `g`.
pub fn verify_chain(cfg: &ExperimentConfig) -> Result<Report> {
    let lab = lab_for(cfg)?;
    let bound = cfg.weight_bound.unwrap_or(DEFAULT_BOUND);
    let cap = cfg.cap.unwrap_or(DEFAULT_CAP);
    let (down, down2) = (lab.segment.alpha(0).clone(), lab.segment.alpha(1).clone());
    let (a, a2) = (lift_curve(&down)?, lift_curve(&down2)?);
    let i = a.intersection(&a2)?;
    if i != 4 {
        return Err(Error::WrongIntersection { expected: 4, found: i });
    }
    let mut report = Report::new("axis-chain");
    let p1 = extend_multicurve(&Multicurve::single(a.clone()), &Multicurve::single(a2.clone()))?;
    let q1 = extend_multicurve(&Multicurve::single(a2.clone()), &Multicurve::single(a.clone()))?;
    let mut pool: BTreeSet<Curve> = enumerate_curves(UPSTAIRS, bound, CurveFilter::All, cap)?.into_iter().collect();
    pool.extend(p1.curves().iter().cloned());
    pool.extend(q1.curves().iter().cloned());
    let pool: Vec<Curve> = pool.into_iter().collect();

    let (label, label2) = (label_component(&a)?, label_component(&a2)?);
    let (name, g) = push_words()?
        .into_iter()
        .find(|(_, g)| g.apply(&a).is_ok_and(|x| x != a) && g.apply(&a2).is_ok_and(|x| x != a2))
        .ok_or_else(|| Error::Data("no library push moves both curves".into()))?;
    let rows: Vec<(i32, usize, usize, bool, usize)> = (0..=CHAIN_POWERS)
        .into_par_iter()
        .map(|n| {
            let gn = g.pow(n);
            let pool_n = pool.iter().map(|c| gn.apply(c)).collect::<Result<Vec<_>>>()?;
            let (pn, qn) = (gn.apply_multicurve(&p1)?, gn.apply_multicurve(&q1)?);
            let (d, size) = ball_distance(pool_n, &pn, &qn, cap)?;
            let fibers = x_region_contains(&down, &pn)? && x_region_contains(&down2, &qn)?;
            let (an, a2n) = (gn.apply(&a)?, gn.apply(&a2)?);
            let labels = label_component(&an)? == label && label_component(&a2n)? == label2;
            Ok((n, d, size, fibers && labels, an.intersection(&a2n)?))
        })
        .collect::<Result<_>>()?;
    let dist = rows[0].1;
    report.check(
        "chained distance is constant under the push",
        rows.iter().all(|r| r.1 == dist),
        format!("D = {dist} for n = 0..{CHAIN_POWERS} with g = {name}"),
    );
    report.check(
        "pushed points stay in their regions",
        rows.iter().all(|r| r.3 && r.4 == 4),
        "g^n P_1 lies over alpha, g^n P'_1 over alpha', and the pushed curves still meet four times",
    );
    let mut table = Table::new("thick chain", &["n", "d(g^n P, g^n P')", "ball", "in regions", "i"]);
    for r in &rows {
        table.row(vec![r.0.to_string(), r.1.to_string(), r.2.to_string(), r.3.to_string(), r.4.to_string()]);
    }
    report.tables.push(table);
    report.data = json!({
        "alpha": a.name(), "alpha_prime": a2.name(), "intersection": i, "push": name,
        "p1": p1.to_line(), "p1_prime": q1.to_line(), "distance": dist,
        "rows": rows.iter().map(|r| json!({"n": r.0, "distance": r.1, "ball": r.2, "in_regions": r.3, "intersection": r.4})).collect::<Vec<_>>(),
    });
    Ok(report)
}
