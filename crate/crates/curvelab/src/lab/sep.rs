//! Separating curves on the punctured genus-two surface: component labels
//! from the forgetful map, and metric facts about the complexes of
//! separating multicurves.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use rayon::prelude::*;
use serde_json::json;

use crate::complex::{sep_adjacent, sep_prime_adjacent, union_boundaries, ComplexKind, ComplexModel, CurvePool, GraphSnapshot};
use crate::curve::{Curve, Fingerprint, Multicurve};
use crate::enumerate::{enumerate_curves, CurveFilter, DEFAULT_CAP};
use crate::error::{Error, Result};
use crate::estimate::overlapping;
use crate::lab::{ExperimentConfig, Report, Table};
use crate::mcg::{forget_boundary, library, lift_curve, point_push, pseudo_anosov_seed, TwistWord, DOWNSTAIRS, UPSTAIRS};
use crate::subsurface::Subsurface;

/// Depth of the point-push orbit added to the separating candidates.
pub const PUSH_DEPTH: usize = 2;

/// The fiber of a separating curve: the fingerprint of its image after
/// the puncture is filled in.
pub fn label_component(c: &Curve) -> Result<Fingerprint> {
    if c.sig() != UPSTAIRS {
        return Err(Error::SurfaceMismatch { expected: UPSTAIRS.to_string(), found: c.sig().to_string() });
    }
    if !c.is_separating() {
        return Err(Error::NotSeparating);
    }
    Ok(forget_boundary(c)?.fingerprint().clone())
}

fn require_upstairs(cfg: &ExperimentConfig) -> Result<()> {
    match cfg.surface {
        Some(sig) if sig != UPSTAIRS => {
            Err(Error::SurfaceMismatch { expected: UPSTAIRS.to_string(), found: sig.to_string() })
        }
        _ => Ok(()),
    }
}

/// Library point pushes and their inverses, skipping trivial ones.
pub fn push_words() -> Result<Vec<(String, TwistWord)>> {
    let lib = library()?;
    let mut out = Vec::new();
    for id in lib.loop_ids() {
        for exp in [1, -1] {
            let p = point_push(id, lib.push_loop(id)?, exp)?;
            if !p.is_empty() {
                out.push((format!("{p}"), p));
            }
        }
    }
    Ok(out)
}

/// Curves reached from `c` by at most `depth` library pushes, sorted.
pub fn push_orbit(c: &Curve, depth: usize) -> Result<Vec<Curve>> {
    let pushes = push_words()?;
    let mut orbit = BTreeSet::from([c.clone()]);
    let mut layer = vec![c.clone()];
    for _ in 0..depth {
        let mut next = Vec::new();
        for x in &layer {
            for (_, p) in &pushes {
                let y = p.apply(x)?;
                if orbit.insert(y.clone()) {
                    next.push(y);
                }
            }
        }
        layer = next;
    }
    Ok(orbit.into_iter().collect())
}

/// Basepoint and vertex candidates for the separating complexes: the
/// lift of the seed curve, every separating curve up to `bound`, and the
/// push orbit of the basepoint.
pub fn sep_candidates(bound: u32, cap: usize) -> Result<(Multicurve, Vec<Multicurve>)> {
    let base = lift_curve(&pseudo_anosov_seed()?.alpha0)?;
    let mut set: BTreeSet<Curve> = enumerate_curves(UPSTAIRS, bound, CurveFilter::Separating, cap)?.into_iter().collect();
    set.extend(push_orbit(&base, PUSH_DEPTH)?);
    Ok((Multicurve::single(base), set.into_iter().map(Multicurve::single).collect()))
}

/// Ball in the complex of separating multicurves around the lifted seed
/// curve, with the vertex pool it was drawn from.
pub fn sep_snapshot(cfg: &ExperimentConfig) -> Result<GraphSnapshot> {
    let bound = cfg.weight_bound.unwrap_or(4);
    let cap = cfg.cap.unwrap_or(DEFAULT_CAP);
    let (base, cands) = sep_candidates(bound, cap)?;
    let pool = CurvePool::from_curves(UPSTAIRS, bound, Vec::new());
    let model = ComplexModel::with_candidates(ComplexKind::Sep, &pool, cands);
    GraphSnapshot::build(&model, base, cfg.radius.unwrap_or(4), cap)
}

/// Labels partition separating curves, label every component of the
/// complexes consistently, and are stable under lifting and pushing.
pub fn verify_labels(cfg: &ExperimentConfig) -> Result<Report> {
    require_upstairs(cfg)?;
    let bound = cfg.weight_bound.unwrap_or(4);
    let cap = cfg.cap.unwrap_or(DEFAULT_CAP);
    let mut report = Report::new("labels");
    let seps = enumerate_curves(UPSTAIRS, bound, CurveFilter::Separating, cap)?;
    let labels: Vec<Fingerprint> = seps.iter().map(label_component).collect::<Result<_>>()?;
    let mut sizes: BTreeMap<&Fingerprint, usize> = BTreeMap::new();
    for l in &labels {
        *sizes.entry(l).or_default() += 1;
    }

    // Disjointness graph on the enumerated separating curves.
    let pairs: Vec<(usize, usize)> = (0..seps.len()).flat_map(|i| (i + 1..seps.len()).map(move |j| (i, j))).collect();
    let disjoint: Vec<(usize, usize)> = pairs
        .par_iter()
        .map(|&(i, j)| Ok((seps[i].intersection(&seps[j])? == 0).then_some((i, j))))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    let csep_cross = disjoint.iter().filter(|&&(i, j)| labels[i] != labels[j]).count();

    let snap = sep_snapshot(cfg)?;
    let snap_labels: Vec<Fingerprint> =
        snap.vertices().iter().map(|m| label_component(&m.curves()[0])).collect::<Result<_>>()?;
    let edges = snap.edges();
    let snap_cross = edges.iter().filter(|&&(u, v)| snap_labels[u] != snap_labels[v]).count();
    report.check(
        "no edge joins distinct labels",
        csep_cross == 0 && snap_cross == 0,
        format!(
            "curve graph on {} separating curves: {} edges, {csep_cross} crossing; separating complex ball: {} vertices, {} edges, {snap_cross} crossing",
            seps.len(),
            disjoint.len(),
            snap.len(),
            edges.len()
        ),
    );
    report.check(
        "at least three labels",
        sizes.len() >= 3,
        format!("{} distinct labels on {} curves of weight <= {bound}", sizes.len(), seps.len()),
    );

    let downstairs = enumerate_curves(DOWNSTAIRS, bound, CurveFilter::Separating, cap)?;
    let mut lift_bad = 0;
    for x in &downstairs {
        if label_component(&lift_curve(x)?)? != *x.fingerprint() {
            lift_bad += 1;
        }
    }
    report.check(
        "label of a lift is the curve itself",
        lift_bad == 0 && !downstairs.is_empty(),
        format!("{} closed-surface separating curves, {lift_bad} mismatches", downstairs.len()),
    );

    let pushes = push_words()?;
    let push_bad: usize = seps
        .par_iter()
        .zip(labels.par_iter())
        .map(|(c, l)| {
            let mut bad = 0;
            for (_, p) in &pushes {
                if label_component(&p.apply(c)?)? != *l {
                    bad += 1;
                }
            }
            Ok(bad)
        })
        .collect::<Result<Vec<usize>>>()?
        .into_iter()
        .sum();
    report.check(
        "labels are invariant under point pushes",
        push_bad == 0,
        format!("{} curves x {} pushes, {push_bad} changes", seps.len(), pushes.len()),
    );

    let mut table = Table::new("label classes", &["label", "curves", "example"]);
    let mut classes = Vec::new();
    for (k, (l, n)) in sizes.iter().enumerate() {
        let ex = seps.iter().zip(&labels).find(|(_, m)| m == l).map(|(c, _)| c.name()).unwrap_or_default();
        table.row(vec![k.to_string(), n.to_string(), ex.clone()]);
        classes.push(json!({"label": l, "curves": n, "example": ex}));
    }
    report.tables.push(table);
    report.data = json!({
        "weight_bound": bound,
        "separating_curves": seps.len(),
        "disjoint_pairs": disjoint.len(),
        "snapshot_digest": snap.digest(),
        "classes": classes,
    });
    Ok(report)
}

/// All-pairs distances inside a snapshot.
fn all_distances(snap: &GraphSnapshot) -> Vec<Vec<Option<usize>>> {
    (0..snap.len()).into_par_iter().map(|u| snap.distances_from(u)).collect()
}

/// Pairs at distance at least four have pairwise overlapping essential
/// complementary pieces.
pub fn verify_overlap(cfg: &ExperimentConfig) -> Result<Report> {
    require_upstairs(cfg)?;
    let mut report = Report::new("overlap");
    let snap = sep_snapshot(cfg)?;
    let dist = all_distances(&snap);
    let pieces: Vec<Vec<Subsurface>> = snap.vertices().iter().map(Subsurface::pieces_of).collect();
    let mut hist: BTreeMap<usize, usize> = BTreeMap::new();
    let mut far = Vec::new();
    for (u, row) in dist.iter().enumerate() {
        for (v, d) in row.iter().enumerate().skip(u + 1) {
            if let Some(d) = *d {
                *hist.entry(d).or_default() += 1;
                if d >= 4 {
                    far.push((u, v, d));
                }
            }
        }
    }
    let results: Vec<bool> = far
        .par_iter()
        .map(|&(u, v, _)| {
            for w in &pieces[u] {
                for x in &pieces[v] {
                    if !overlapping(w, x)? {
                        return Ok(false);
                    }
                }
            }
            Ok(true)
        })
        .collect::<Result<_>>()?;
    let counter: Vec<_> = far
        .iter()
        .zip(&results)
        .filter(|(_, ok)| !**ok)
        .map(|(&(u, v, d), _)| json!({"c": snap.vertex(u).to_line(), "d": snap.vertex(v).to_line(), "distance": d}))
        .collect();
    report.check(
        "distance at least four forces overlapping pieces",
        counter.is_empty(),
        format!("{} vertices, {} pairs at distance >= 4, {} counterexamples", snap.len(), far.len(), counter.len()),
    );
    if far.is_empty() {
        report.note("no pair reached distance four; the check is vacuous at this size");
    }
    let mut table = Table::new("pair distances", &["d", "pairs"]);
    for (d, n) in &hist {
        table.row(vec![d.to_string(), n.to_string()]);
    }
    report.tables.push(table);
    report.data = json!({
        "snapshot_digest": snap.digest(),
        "vertices": snap.len(),
        "edges": snap.edge_count(),
        "distance_histogram": hist,
        "counterexamples": counter,
    });
    Ok(report)
}

/// A disjoint separating witness for an intersecting edge `(c, d)`: the
/// boundary of an essential piece of the complement of `c ∪ d`.
pub fn edge_witness(c: &Multicurve, d: &Multicurve) -> Result<Option<Multicurve>> {
    for e in union_boundaries(c, d)? {
        if e.is_separating() && sep_prime_adjacent(c, &e)? && sep_prime_adjacent(&e, d)? {
            return Ok(Some(e));
        }
    }
    Ok(None)
}

fn bfs(adj: &[Vec<usize>], s: usize) -> Vec<Option<usize>> {
    let mut d = vec![None; adj.len()];
    d[s] = Some(0);
    let mut q = VecDeque::from([s]);
    while let Some(u) = q.pop_front() {
        let du = d[u].expect("visited");
        for &v in &adj[u] {
            if d[v].is_none() {
                d[v] = Some(du + 1);
                q.push_back(v);
            }
        }
    }
    d
}

/// `d ≤ d′ ≤ 2d` between the complex and its disjointness version on the
/// ball, with one witness vertex added per intersecting edge.
pub fn verify_bilipschitz(cfg: &ExperimentConfig) -> Result<Report> {
    require_upstairs(cfg)?;
    let mut report = Report::new("bilipschitz");
    let snap = sep_snapshot(cfg)?;
    let edges = snap.edges();
    let found: Vec<(bool, Option<Multicurve>)> = edges
        .par_iter()
        .map(|&(u, v)| {
            let (c, d) = (snap.vertex(u), snap.vertex(v));
            if c.intersection(d)? == 0 {
                Ok((sep_prime_adjacent(c, d)?, None))
            } else {
                Ok((false, edge_witness(c, d)?))
            }
        })
        .collect::<Result<_>>()?;

    let mut ids: BTreeMap<Multicurve, usize> = BTreeMap::new();
    for (k, m) in snap.vertices().iter().enumerate() {
        ids.insert(m.clone(), k);
    }
    let mut adj_prime: Vec<Vec<usize>> = vec![Vec::new(); snap.len()];
    let mut missing = Vec::new();
    let mut witnesses = 0;
    for (&(u, v), (direct, w)) in edges.iter().zip(&found) {
        if *direct {
            adj_prime[u].push(v);
            adj_prime[v].push(u);
        } else if let Some(e) = w {
            let next = ids.len();
            let k = *ids.entry(e.clone()).or_insert(next);
            if k == adj_prime.len() {
                adj_prime.push(Vec::new());
                witnesses += 1;
            }
            for x in [u, v] {
                adj_prime[x].push(k);
                adj_prime[k].push(x);
            }
        } else {
            missing.push(json!([snap.vertex(u).to_line(), snap.vertex(v).to_line()]));
        }
    }
    // The full complex on the enlarged vertex set: ball edges plus every
    // disjoint edge found above, each of which is checked to be an edge.
    let mut adj = adj_prime.clone();
    for (u, list) in adj.iter_mut().enumerate().take(snap.len()) {
        list.extend(snap.neighbors(u).iter().copied());
    }
    for list in &mut adj {
        list.sort_unstable();
        list.dedup();
    }
    let verts: Vec<Multicurve> = {
        let mut v = vec![None; ids.len()];
        for (m, &k) in &ids {
            v[k] = Some(m.clone());
        }
        v.into_iter().map(|m| m.expect("dense ids")).collect()
    };
    let not_edges: usize = (0..adj_prime.len())
        .into_par_iter()
        .map(|u| {
            let mut bad = 0;
            for &v in &adj_prime[u] {
                if u < v && !sep_adjacent(&verts[u], &verts[v])? {
                    bad += 1;
                }
            }
            Ok(bad)
        })
        .collect::<Result<Vec<usize>>>()?
        .into_iter()
        .sum();

    let rows: Vec<Vec<(usize, Option<usize>)>> = (0..snap.len())
        .into_par_iter()
        .map(|u| {
            let (d, dp) = (bfs(&adj, u), bfs(&adj_prime, u));
            (u + 1..snap.len()).filter_map(|v| d[v].map(|x| (x, dp[v]))).collect()
        })
        .collect();
    let (mut pairs, mut lower, mut upper) = (0, 0, 0);
    let mut ratio: BTreeMap<String, usize> = BTreeMap::new();
    for &(x, y) in rows.iter().flatten() {
        pairs += 1;
        match y {
            Some(y) => {
                lower += usize::from(x > y);
                upper += usize::from(y > 2 * x);
                *ratio.entry(format!("{x}->{y}")).or_default() += 1;
            }
            None => {
                upper += 1;
                *ratio.entry(format!("{x}->none")).or_default() += 1;
            }
        }
    }
    report.check(
        "witnesses are disjoint separating neighbours",
        missing.is_empty() && not_edges == 0,
        format!(
            "{} ball edges, {witnesses} witness vertices, {} edges without a witness, {not_edges} disjoint edges failing adjacency",
            edges.len(),
            missing.len()
        ),
    );
    report.check(
        "d <= d' <= 2d",
        lower == 0 && upper == 0 && pairs > 0,
        format!("{pairs} pairs of ball vertices: {lower} below, {upper} above"),
    );
    let mut table = Table::new("distance pairs", &["d -> d'", "pairs"]);
    for (k, n) in &ratio {
        table.row(vec![k.clone(), n.to_string()]);
    }
    report.tables.push(table);
    report.data = json!({
        "snapshot_digest": snap.digest(),
        "vertices": snap.len(),
        "witnesses": witnesses,
        "distance_pairs": ratio,
        "missing_witnesses": missing,
    });
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::surface;

    #[test]
    fn labels_reject_nonseparating_curves() {
        let ctx = surface(UPSTAIRS).unwrap();
        assert_eq!(label_component(&ctx.parse("a").unwrap()), Err(Error::NotSeparating));
    }

    #[test]
    fn lift_of_the_seed_curve_is_labelled_by_it() {
        let seed = pseudo_anosov_seed().unwrap();
        let up = lift_curve(&seed.alpha0).unwrap();
        assert_eq!(label_component(&up).unwrap(), *seed.alpha0.fingerprint());
    }
}
