use curvelab::curve::Curve;
use curvelab::enumerate::{enumerate_curves, CurveFilter, DEFAULT_CAP};
use curvelab::mcg::*;
use curvelab::Error;

fn upstairs(bound: u32, filter: CurveFilter) -> Vec<Curve> {
    enumerate_curves(UPSTAIRS, bound, filter, DEFAULT_CAP).unwrap()
}

#[test]
fn lift_commutes_with_forgetting() {
    let seed = pseudo_anosov_seed().unwrap();
    for c in upstairs(2, CurveFilter::All) {
        let lhs = forget_boundary(&seed.up.apply(&c).unwrap()).unwrap();
        let rhs = seed.down.apply(&forget_boundary(&c).unwrap()).unwrap();
        assert_eq!(lhs, rhs, "{}", c.name());
    }
}

#[test]
fn forgetting_a_lift_is_identity() {
    for x in enumerate_curves(DOWNSTAIRS, 2, CurveFilter::All, DEFAULT_CAP).unwrap() {
        let up = lift_curve(&x).unwrap();
        assert_eq!(forget_boundary(&up).unwrap(), x);
        assert_eq!(up.is_separating(), x.is_separating(), "{}", x.name());
    }
}

#[test]
fn pushes_act_trivially_downstairs_and_keep_labels() {
    let lib = library().unwrap();
    let curves = upstairs(2, CurveFilter::All);
    for id in lib.loop_ids() {
        let push = point_push(id, lib.push_loop(id).unwrap(), 1).unwrap();
        for c in &curves {
            let img = push.apply(c).unwrap();
            assert_eq!(forget_boundary(&img).unwrap(), forget_boundary(c).unwrap());
            assert_eq!(img.is_separating(), c.is_separating());
        }
    }
}

#[test]
fn twist_words_preserve_intersections_and_invert() {
    let seed = pseudo_anosov_seed().unwrap();
    let lib = library().unwrap();
    let push = point_push("d4", lib.push_loop("d4").unwrap(), 1).unwrap();
    let w = push.compose(&seed.up).unwrap();
    let curves: Vec<Curve> = upstairs(2, CurveFilter::All).into_iter().step_by(5).collect();
    let imgs: Vec<Curve> = curves.iter().map(|c| w.apply(c).unwrap()).collect();
    let inv = w.inverse();
    for (i, a) in curves.iter().enumerate() {
        assert_eq!(&inv.apply(&imgs[i]).unwrap(), a);
        for (j, b) in curves.iter().enumerate().skip(i + 1) {
            assert_eq!(a.intersection(b).unwrap(), imgs[i].intersection(&imgs[j]).unwrap());
        }
    }
}

#[test]
fn seed_growth_is_strictly_increasing() {
    let seed = pseudo_anosov_seed().unwrap();
    let a0 = &seed.alpha0;
    let mut last = 0;
    for n in 1..=4 {
        let i = seed.alpha(n).unwrap().intersection(a0).unwrap();
        assert!(i > last, "n = {n}: {i} after {last}");
        last = i;
    }
}

#[test]
fn stored_alpha0_is_first_enumerated_candidate() {
    let seed = pseudo_anosov_seed().unwrap();
    let seps = enumerate_curves(DOWNSTAIRS, 4, CurveFilter::Separating, DEFAULT_CAP).unwrap();
    let first = seps
        .iter()
        .find(|s| seed.down.apply(s).unwrap().intersection(s).unwrap() == 4)
        .unwrap();
    assert_eq!(first, &seed.alpha0);
}

#[test]
fn surgery_walks_a_fiber_to_disjointness() {
    let lib = library().unwrap();
    let mut checked = 0;
    for c in upstairs(3, CurveFilter::Separating).iter().take(20) {
        for id in ["d2", "d5", "la"] {
            let push = point_push(id, lib.push_loop(id).unwrap(), 1).unwrap();
            let b = push.apply(c).unwrap();
            let mut a = c.clone();
            let i0 = a.intersection(&b).unwrap();
            let mut steps = 0;
            loop {
                match bigon_surgery_step(&a, &b, true) {
                    Ok(next) => {
                        let (before, after) = (a.intersection(&b).unwrap(), next.intersection(&b).unwrap());
                        assert!(after + 2 <= before && (before - after) % 2 == 0);
                        assert_eq!(next.intersection(&a).unwrap(), 0);
                        a = next;
                        steps += 1;
                    }
                    Err(Error::AlreadyDisjoint) => break,
                    Err(e) => panic!("{} vs {}: {e}", a.name(), b.name()),
                }
            }
            assert!(2 * steps <= i0);
            assert!(a.is_separating());
            checked += 1;
        }
    }
    assert!(checked > 0);
}
