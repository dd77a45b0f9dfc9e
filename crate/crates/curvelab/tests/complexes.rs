use proptest::prelude::*;

use curvelab::complex::{pants_neighbors, ComplexKind, ComplexModel, CurvePool, GraphSnapshot};
use curvelab::curve::{Curve, Multicurve};
use curvelab::enumerate::DEFAULT_CAP;
use curvelab::lab::sep::sep_snapshot;
use curvelab::lab::{greedy_pants, ExperimentConfig};
use curvelab::subsurface::{extend_multicurve, Subsurface};
use curvelab::surface::SurfaceSig;
use curvelab::Error;

fn pants_ball(sig: SurfaceSig, bound: u32, radius: usize) -> (CurvePool, GraphSnapshot) {
    let pool = CurvePool::new(sig, bound, DEFAULT_CAP).unwrap();
    let base = greedy_pants(sig, pool.curves()).unwrap();
    let snap = GraphSnapshot::build(&ComplexModel::new(ComplexKind::Pants, &pool), base, radius, DEFAULT_CAP).unwrap();
    (pool, snap)
}

/// Every edge satisfies the adjacency predicate and every non-edge fails it.
fn assert_sound(model: &ComplexModel<'_>, snap: &GraphSnapshot) {
    for u in 0..snap.len() {
        assert!(model.is_vertex(snap.vertex(u)));
        for v in u + 1..snap.len() {
            let edge = snap.neighbors(u).contains(&v);
            assert_eq!(model.adjacent(snap.vertex(u), snap.vertex(v)).unwrap(), edge, "{u} {v}");
            assert_eq!(snap.neighbors(v).contains(&u), edge);
        }
    }
}

#[test]
fn pants_snapshots_are_sound() {
    for (sig, bound, radius) in [(SurfaceSig::new(0, 5), 3, 2), (SurfaceSig::new(1, 2), 3, 1), (SurfaceSig::new(0, 4), 4, 2)] {
        let (pool, snap) = pants_ball(sig, bound, radius);
        assert!(snap.len() > 1, "{sig}");
        assert_sound(&ComplexModel::new(ComplexKind::Pants, &pool), &snap);
    }
}

#[test]
fn curve_snapshots_are_sound() {
    for (sig, bound, radius) in [(SurfaceSig::new(1, 1), 6, 2), (SurfaceSig::new(0, 5), 2, 2)] {
        let pool = CurvePool::new(sig, bound, DEFAULT_CAP).unwrap();
        let base = Multicurve::single(pool.curves()[0].clone());
        let model = ComplexModel::new(ComplexKind::Curve, &pool);
        let snap = GraphSnapshot::build(&model, base, radius, DEFAULT_CAP).unwrap();
        assert!(snap.len() > 1, "{sig}");
        assert_sound(&model, &snap);
    }
}

#[test]
fn separating_snapshot_edges_hold() {
    let cfg = ExperimentConfig { weight_bound: Some(3), radius: Some(1), ..Default::default() };
    let snap = sep_snapshot(&cfg).unwrap();
    assert!(snap.len() > 1);
    let pool = CurvePool::from_curves(snap.surface, 3, Vec::new());
    let model = ComplexModel::new(ComplexKind::Sep, &pool);
    for (u, v) in snap.edges() {
        assert!(model.adjacent(snap.vertex(u), snap.vertex(v)).unwrap());
    }
}

#[test]
fn pants_neighbors_are_symmetric() {
    let (pool, snap) = pants_ball(SurfaceSig::new(0, 5), 3, 2);
    for p in snap.vertices() {
        for q in pants_neighbors(p, &pool).unwrap() {
            assert!(pants_neighbors(&q, &pool).unwrap().contains(p));
        }
    }
}

#[test]
fn distances_are_symmetric_and_bounded_by_depth() {
    let (_, snap) = pants_ball(SurfaceSig::new(0, 5), 3, 3);
    for u in 0..snap.len() {
        let du = snap.distances_from(u);
        assert_eq!(du[snap.basepoint], Some(snap.depth(u)));
        for (v, dv) in du.iter().enumerate() {
            assert_eq!(*dv, snap.distances_from(v)[u]);
            if let Some(d) = *dv {
                assert!(d <= snap.depth(u) + snap.depth(v));
            }
        }
    }
}

#[test]
fn snapshot_files_round_trip() {
    let (_, snap) = pants_ball(SurfaceSig::new(0, 5), 3, 2);
    let (_, again) = pants_ball(SurfaceSig::new(0, 5), 3, 2);
    assert_eq!(snap.to_json(), again.to_json());
    assert_eq!(snap.digest(), again.digest());
    let dir = tempfile::tempdir().unwrap();
    let path = snap.store(dir.path()).unwrap();
    assert!(path.ends_with(format!("{}.json", snap.digest())));
    let loaded = GraphSnapshot::load(dir.path(), &snap.digest()).unwrap();
    assert_eq!(loaded.to_json(), snap.to_json());
    assert_eq!(loaded.edges(), snap.edges());
}

#[test]
fn corrupted_snapshot_names_its_digest() {
    let (_, snap) = pants_ball(SurfaceSig::new(0, 5), 3, 1);
    let digest = snap.digest();
    let dir = tempfile::tempdir().unwrap();
    let path = snap.store(dir.path()).unwrap();

    let text = std::fs::read_to_string(&path).unwrap();
    let edited = text.replacen("\"depth\": 1", "\"depth\": 2", 1);
    assert_ne!(edited, text);
    std::fs::write(&path, edited).unwrap();
    let err = GraphSnapshot::load(dir.path(), &digest).unwrap_err();
    assert!(matches!(&err, Error::Data(m) if m.contains(&digest)), "{err}");

    std::fs::write(&path, &text[..text.len() / 2]).unwrap();
    let err = GraphSnapshot::load(dir.path(), &digest).unwrap_err();
    assert!(matches!(&err, Error::Data(m) if m.contains(&digest)), "{err}");

    let err = GraphSnapshot::load(dir.path(), "missing").unwrap_err();
    assert!(matches!(err, Error::Io { .. }));
}

#[test]
fn vertices_outside_the_ball_are_unreachable() {
    let (pool, snap) = pants_ball(SurfaceSig::new(0, 5), 3, 1);
    let far = pants_ball(SurfaceSig::new(0, 5), 3, 3).1;
    let outside = far.vertices().iter().find(|v| snap.index_of(v).is_none()).unwrap();
    assert!(snap.distance_between(snap.vertex(0), outside).is_err());
    assert!(pool.curves().len() > 1);
}

fn s05() -> &'static [Curve] {
    static POOL: std::sync::OnceLock<CurvePool> = std::sync::OnceLock::new();
    POOL.get_or_init(|| CurvePool::new(SurfaceSig::new(0, 5), 3, DEFAULT_CAP).unwrap()).curves()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn projection_fixes_inner_curves_and_ignores_outer(i in any::<usize>(), j in any::<usize>()) {
        let cs = s05();
        let (b, c) = (&cs[i % cs.len()], &cs[j % cs.len()]);
        for y in Subsurface::pieces_of(&Multicurve::single(b.clone())) {
            let proj = y.project(c).unwrap();
            if y.contains_curve(c).unwrap() {
                prop_assert_eq!(proj.into_iter().collect::<Vec<_>>(), vec![c.clone()]);
            } else if c.intersection(b).unwrap() == 0 {
                prop_assert!(proj.is_empty());
            } else {
                prop_assert!(!proj.is_empty());
                for x in &proj {
                    prop_assert!(y.contains_curve(x).unwrap());
                }
            }
        }
    }

    #[test]
    fn extension_is_a_pants_decomposition_containing_its_core(i in any::<usize>(), k in any::<usize>()) {
        let cs = s05();
        let c = Multicurve::single(cs[i % cs.len()].clone());
        let (_, snap) = pants_ball(SurfaceSig::new(0, 5), 3, 1);
        let x = snap.vertex(k % snap.len());
        let p = extend_multicurve(&c, x).unwrap();
        prop_assert!(p.is_pants_decomposition());
        prop_assert!(p.contains(&c.curves()[0]));
        if x.contains(&c.curves()[0]) {
            prop_assert_eq!(&p, x);
        }
    }
}
