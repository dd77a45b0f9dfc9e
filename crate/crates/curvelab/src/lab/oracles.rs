//! Checks against independent arithmetic: slopes on the once-punctured
//! torus, and the twist intersection identity on every supported surface.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use rand::Rng;
use serde_json::json;

use crate::complex::{ComplexKind, ComplexModel, CurvePool, GraphSnapshot};
use crate::curve::{surface, Curve, Multicurve};
use crate::enumerate::{enumerate_curves, CurveFilter, DEFAULT_CAP};
use crate::error::Result;
use crate::lab::{rng, sample, ExperimentConfig, Report, Table};
use crate::mcg::{Move, TwistWord};
use crate::surface::SurfaceSig;

const TORUS: SurfaceSig = SurfaceSig::new(1, 1);

/// A reduced slope `p/q` with a fixed sign convention.
pub type Slope = (i64, i64);

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// Normalizes the sign so that `q > 0`, or `q = 0` and `p = 1`.
pub fn normalize((p, q): Slope) -> Slope {
    let g = gcd(p, q).max(1);
    let (p, q) = (p / g, q / g);
    if q < 0 || (q == 0 && p < 0) {
        (-p, -q)
    } else {
        (p, q)
    }
}

/// Slope of a torus curve read off its word (letters `a A b B`).
pub fn slope_of(c: &Curve) -> Slope {
    let (mut p, mut q) = (0i64, 0i64);
    for &x in c.word() {
        match x {
            0 => p += 1,
            1 => p -= 1,
            2 => q += 1,
            3 => q -= 1,
            _ => {}
        }
    }
    normalize((p, q))
}

/// Christoffel word of a slope, spelled with `a`/`A` and `b`/`B`.
pub fn slope_word((p, q): Slope) -> String {
    let (ap, aq) = (p.unsigned_abs(), q.unsigned_abs());
    let n = ap + aq;
    let (x, y) = (if p >= 0 { 'a' } else { 'A' }, if q >= 0 { 'b' } else { 'B' });
    (1..=n).map(|i| if (i * aq) / n > ((i - 1) * aq) / n { y } else { x }).collect()
}

/// Normal coordinates of a slope in the reference triangulation.
pub fn slope_weight((p, q): Slope) -> i64 {
    p.abs().max(q.abs()).max((p + q).abs())
}

pub fn slope_intersection(a: Slope, b: Slope) -> i64 {
    (a.0 * b.1 - a.1 * b.0).abs()
}

/// Ball of the Farey graph around `1/0` restricted to slopes of weight at
/// most `bound`, computed by arithmetic alone.
pub fn farey_ball(bound: i64, radius: usize) -> (BTreeSet<Slope>, BTreeSet<(Slope, Slope)>) {
    let mut all = Vec::new();
    for p in -bound..=bound {
        for q in 0..=bound {
            let s = (p, q);
            if gcd(p, q) == 1 && normalize(s) == s && slope_weight(s) <= bound {
                all.push(s);
            }
        }
    }
    let mut depth: BTreeMap<Slope, usize> = BTreeMap::from([((1, 0), 0)]);
    let mut queue = VecDeque::from([(1i64, 0i64)]);
    while let Some(s) = queue.pop_front() {
        let d = depth[&s];
        if d == radius {
            continue;
        }
        for &t in &all {
            if slope_intersection(s, t) == 1 && !depth.contains_key(&t) {
                depth.insert(t, d + 1);
                queue.push_back(t);
            }
        }
    }
    let verts: BTreeSet<Slope> = depth.keys().copied().collect();
    let mut edges = BTreeSet::new();
    for &s in &verts {
        for &t in &verts {
            if s < t && slope_intersection(s, t) == 1 {
                edges.insert((s, t));
            }
        }
    }
    (verts, edges)
}

/// Compares the torus curve-graph snapshot with the arithmetic Farey ball
/// and checks the intersection formula on seeded slope pairs.
pub fn verify_farey(cfg: &ExperimentConfig) -> Result<Report> {
    let bound = cfg.weight_bound.unwrap_or(8);
    let radius = cfg.radius.unwrap_or(3);
    let pairs = cfg.samples.unwrap_or(200);
    let ctx = surface(TORUS)?;
    let mut report = Report::new("farey");

    let pool = CurvePool::new(TORUS, bound, cfg.cap.unwrap_or(DEFAULT_CAP))?;
    let model = ComplexModel::new(ComplexKind::Curve, &pool);
    let base = Multicurve::single(ctx.parse("a")?);
    let snap = GraphSnapshot::build(&model, base, radius, cfg.cap.unwrap_or(DEFAULT_CAP))?;
    let slopes: Vec<Slope> = snap.vertices().iter().map(|m| slope_of(&m.curves()[0])).collect();
    let verts: BTreeSet<Slope> = slopes.iter().copied().collect();
    let edges: BTreeSet<(Slope, Slope)> = snap
        .edges()
        .into_iter()
        .map(|(u, v)| (slopes[u].min(slopes[v]), slopes[u].max(slopes[v])))
        .collect();
    let (overts, oedges) = farey_ball(bound as i64, radius);
    let weights_agree = snap
        .vertices()
        .iter()
        .zip(&slopes)
        .all(|(m, &s)| m.curves()[0].max_weight() as i64 == slope_weight(s));
    report.check(
        "snapshot is the Farey ball",
        verts.len() == slopes.len() && verts == overts && edges == oedges && weights_agree,
        format!(
            "snapshot {} vertices / {} edges, oracle {} / {}",
            snap.len(),
            snap.edge_count(),
            overts.len(),
            oedges.len()
        ),
    );

    let mut rng = rng(cfg.seed(), "farey");
    let mut mismatches = Vec::new();
    let mut table = Table::new("sampled slope pairs", &["p/q", "r/s", "|ps-qr|", "i"]);
    for k in 0..pairs {
        let mut draw = || loop {
            let s = normalize((rng.gen_range(-12..=12), rng.gen_range(0..=12)));
            if s != (0, 0) && gcd(s.0, s.1) == 1 {
                return s;
            }
        };
        let (a, b) = (draw(), draw());
        let ca = ctx.parse(&slope_word(a))?;
        let cb = ctx.parse(&slope_word(b))?;
        let i = ca.intersection(&cb)? as i64;
        let expect = slope_intersection(a, b);
        if slope_of(&ca) != a || slope_of(&cb) != b || i != expect {
            mismatches.push(json!([a, b, expect, i]));
        }
        if k < 10 {
            table.row(vec![format!("{}/{}", a.0, a.1), format!("{}/{}", b.0, b.1), expect.to_string(), i.to_string()]);
        }
    }
    report.check(
        "intersection equals |ps - qr|",
        mismatches.is_empty(),
        format!("{pairs} seeded pairs, {} mismatches", mismatches.len()),
    );
    report.tables.push(table);
    report.data = json!({
        "weight_bound": bound,
        "radius": radius,
        "snapshot_digest": snap.digest(),
        "vertices": snap.len(),
        "edges": snap.edge_count(),
        "mismatches": mismatches,
    });
    Ok(report)
}

/// Per-surface weight bounds that give enough intersecting pairs.
const TWIST_SURFACES: [(SurfaceSig, u32); 7] = [
    (SurfaceSig::new(0, 4), 4),
    (SurfaceSig::new(0, 5), 3),
    (SurfaceSig::new(1, 1), 5),
    (SurfaceSig::new(1, 2), 3),
    (SurfaceSig::new(1, 3), 2),
    (SurfaceSig::new(2, 0), 3),
    (SurfaceSig::new(2, 1), 2),
];

/// `i(T_b^n(a), a) = |n|·i(a, b)²` for `n ∈ {-3..3} \ {0}` on seeded
/// intersecting pairs; on the torus the image slope is also checked
/// against matrix arithmetic.
pub fn verify_twists(cfg: &ExperimentConfig) -> Result<Report> {
    let per_surface = cfg.samples.unwrap_or(100);
    let max_i = 4usize;
    let mut report = Report::new("twists");
    let mut table = Table::new("twist identity", &["surface", "pairs", "checks", "failures"]);
    let mut failures = Vec::new();
    let mut short = Vec::new();
    for (sig, bound) in TWIST_SURFACES {
        let curves = enumerate_curves(sig, bound, CurveFilter::All, cfg.cap.unwrap_or(DEFAULT_CAP))?;
        let mut rng = rng(cfg.seed(), &format!("twists {sig}"));
        let mut pairs = Vec::new();
        let mut attempts = 0;
        while pairs.len() < per_surface && attempts < 200 * per_surface {
            attempts += 1;
            let ab = sample(&mut rng, &curves, 2);
            let i = ab[0].intersection(&ab[1])?;
            if i > 0 && i <= max_i {
                pairs.push((ab[0].clone(), ab[1].clone(), i));
            }
        }
        if pairs.len() < per_surface {
            short.push(format!("{sig}: {} of {per_surface}", pairs.len()));
        }
        let mut checks = 0;
        let mut bad = 0;
        for (a, b, i) in &pairs {
            for n in [-3, -2, -1, 1, 2, 3] {
                let t = TwistWord::new(sig, vec![Move::twist("b", b.clone(), n)])?;
                let img = t.apply(a)?;
                let got = img.intersection(a)?;
                let want = n.unsigned_abs() as usize * i * i;
                let mut ok = got == want;
                if sig == TORUS {
                    let (sa, sb) = (slope_of(a), slope_of(b));
                    let k = slope_intersection(sa, sb);
                    let si = slope_of(&img);
                    ok &= k as usize == *i && slope_intersection(si, sa) as usize == want;
                }
                checks += 1;
                if !ok {
                    bad += 1;
                    failures.push(json!({"surface": sig.to_string(), "a": a.name(), "b": b.name(), "n": n, "want": want, "got": got}));
                }
            }
        }
        table.row(vec![sig.to_string(), pairs.len().to_string(), checks.to_string(), bad.to_string()]);
    }
    report.check(
        "twist intersection identity",
        failures.is_empty() && short.is_empty(),
        format!("{} failures; short samples: {}", failures.len(), if short.is_empty() { "none".into() } else { short.join(", ") }),
    );
    report.tables.push(table);
    report.data = json!({"pairs_per_surface": per_surface, "max_intersection": max_i, "failures": failures});
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn christoffel_words_have_their_slopes() {
        let ctx = surface(TORUS).unwrap();
        for s in [(1, 0), (0, 1), (2, 3), (-3, 5), (5, 2), (-1, 1)] {
            let c = ctx.parse(&slope_word(s)).unwrap();
            assert_eq!(slope_of(&c), normalize(s), "{s:?}");
            assert_eq!(c.max_weight() as i64, slope_weight(normalize(s)));
        }
    }

    #[test]
    fn farey_ball_of_radius_one_is_the_integers() {
        let (v, e) = farey_ball(3, 1);
        let expected: BTreeSet<Slope> = [(1, 0), (-3, 1), (-2, 1), (-1, 1), (0, 1), (1, 1), (2, 1)].into();
        assert_eq!(v, expected);
        assert!(e.contains(&((-1, 1), (0, 1))));
    }
}
