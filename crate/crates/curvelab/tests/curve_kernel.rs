use std::collections::{BTreeSet, HashMap};
use std::sync::OnceLock;

use proptest::prelude::*;

use curvelab::curve::{surface, Curve, Multicurve};
use curvelab::enumerate::{enumerate_curves, twist_orbit, CurveFilter, DEFAULT_CAP};
use curvelab::lab::greedy_pants;
use curvelab::mcg::{Move, TwistWord};
use curvelab::surface::SurfaceSig;

/// Surfaces and weight bounds exercised here, with cached enumerations.
const CASES: [(SurfaceSig, u32); 6] = [
    (SurfaceSig::new(1, 1), 6),
    (SurfaceSig::new(0, 4), 4),
    (SurfaceSig::new(0, 5), 3),
    (SurfaceSig::new(1, 2), 3),
    (SurfaceSig::new(2, 0), 2),
    (SurfaceSig::new(2, 1), 2),
];

fn curves(case: usize) -> &'static [Curve] {
    static CACHE: OnceLock<Vec<Vec<Curve>>> = OnceLock::new();
    &CACHE.get_or_init(|| {
        CASES.iter().map(|&(sig, b)| enumerate_curves(sig, b, CurveFilter::All, DEFAULT_CAP).unwrap()).collect()
    })[case]
}

fn pick(case: usize, k: usize) -> &'static Curve {
    let cs = curves(case);
    &cs[k % cs.len()]
}

/// Twists about marking curves of the surface.
fn marking_move(sig: SurfaceSig, k: usize, exp: i32) -> Move {
    let ctx = surface(sig).unwrap();
    let m = &ctx.marking()[k % ctx.marking().len()];
    Move::twist(format!("m{}", k % ctx.marking().len()), ctx.curve(m).unwrap(), exp)
}

fn word(sig: SurfaceSig, letters: &[(usize, bool)]) -> TwistWord {
    let moves = letters.iter().map(|&(k, pos)| marking_move(sig, k, if pos { 1 } else { -1 })).collect();
    TwistWord::new(sig, moves).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn intersection_is_symmetric(case in 0..CASES.len(), i in any::<usize>(), j in any::<usize>()) {
        let (a, b) = (pick(case, i), pick(case, j));
        prop_assert_eq!(a.intersection(b).unwrap(), b.intersection(a).unwrap());
        prop_assert_eq!(a.intersection(a).unwrap(), 0);
    }

    #[test]
    fn twist_words_preserve_intersection(
        case in 0..CASES.len(),
        i in any::<usize>(),
        j in any::<usize>(),
        letters in prop::collection::vec((any::<usize>(), any::<bool>()), 0..=6),
    ) {
        let sig = CASES[case].0;
        let w = word(sig, &letters);
        let (a, b) = (pick(case, i), pick(case, j));
        let (wa, wb) = (w.apply(a).unwrap(), w.apply(b).unwrap());
        prop_assert_eq!(wa.intersection(&wb).unwrap(), a.intersection(b).unwrap());
        prop_assert_eq!(&w.inverse().apply(&wa).unwrap(), a);
        prop_assert_eq!(wa.is_separating(), a.is_separating());
    }

    #[test]
    fn single_twist_intersection_formula(case in 0..CASES.len(), i in any::<usize>(), j in any::<usize>(), n in -3i32..=3) {
        prop_assume!(n != 0);
        let (a, b) = (pick(case, i), pick(case, j));
        let t = TwistWord::new(CASES[case].0, vec![Move::twist("b", b.clone(), n)]).unwrap();
        let k = a.intersection(b).unwrap();
        prop_assert_eq!(t.apply(a).unwrap().intersection(a).unwrap(), n.unsigned_abs() as usize * k * k);
    }

    #[test]
    fn cutting_one_curve_drops_complexity_by_one(case in 0..CASES.len(), i in any::<usize>()) {
        let c = pick(case, i);
        let sig = c.sig();
        let cut = Multicurve::single(c.clone()).cut();
        prop_assert_eq!(cut.chi(), sig.euler());
        prop_assert_eq!(cut.pieces.iter().map(|p| p.complexity()).sum::<i64>(), sig.complexity() - 1);
        prop_assert!(!c.is_separating() || cut.pieces.len() == 2);
        prop_assert_eq!(c.is_separating(), cut.essential().count() >= 2);
    }

    #[test]
    fn reparsing_a_curve_is_stable(case in 0..CASES.len(), i in any::<usize>()) {
        let c = pick(case, i);
        let again = surface(c.sig()).unwrap().parse(&c.name()).unwrap();
        prop_assert_eq!(again.fingerprint(), c.fingerprint());
        prop_assert_eq!(again.word(), c.word());
        let line = Multicurve::single(c.clone()).to_line();
        prop_assert_eq!(&Multicurve::parse_line(&line).unwrap().multicurve, &Multicurve::single(c.clone()));
    }
}

#[test]
fn euler_characteristic_is_conserved_on_multicurves() {
    for (case, &(sig, _)) in CASES.iter().enumerate() {
        let cs = curves(case);
        let mut checked = 0;
        for (i, a) in cs.iter().enumerate() {
            for b in &cs[i + 1..] {
                if a.intersection(b).unwrap() != 0 {
                    continue;
                }
                let Ok(m) = Multicurve::new(sig, vec![a.clone(), b.clone()]) else { continue };
                assert_eq!(m.cut().chi(), sig.euler(), "{}", m.to_line());
                checked += 1;
            }
        }
        if let Some(p) = greedy_pants(sig, cs) {
            assert!(p.is_pants_decomposition());
            assert_eq!(p.cut().chi(), sig.euler());
        }
        assert!(sig.complexity() < 2 || checked > 0, "{sig}");
    }
}

#[test]
fn distinct_curves_have_distinct_fingerprints() {
    for case in 0..CASES.len() {
        let mut by_fp: HashMap<&[u32], &Curve> = HashMap::new();
        for c in curves(case) {
            assert!(c.fingerprint().starts_with(c.marking_vector()));
            if let Some(prev) = by_fp.insert(c.fingerprint(), c) {
                panic!("{} and {} share a fingerprint", prev.name(), c.name());
            }
        }
    }
}

#[test]
fn equal_marking_vectors_share_cut_invariants() {
    for case in 0..CASES.len() {
        let mut by_marking: HashMap<&[u32], Vec<&Curve>> = HashMap::new();
        for c in curves(case) {
            by_marking.entry(c.marking_vector()).or_default().push(c);
        }
        for group in by_marking.values().filter(|g| g.len() > 1) {
            let sigs: BTreeSet<Vec<SurfaceSig>> = group
                .iter()
                .map(|c| {
                    let mut v: Vec<SurfaceSig> = Multicurve::single((*c).clone()).cut().pieces.iter().map(|p| p.sig).collect();
                    v.sort();
                    v
                })
                .collect();
            assert_eq!(sigs.len(), 1, "{}", group[0].name());
        }
    }
}

#[test]
fn twist_orbits_agree_with_the_sweep() {
    // Equality where marking twists reach every curve within the explore
    // bound; elsewhere the orbit must still stay inside the sweep.
    for (sig, bound, explore, exact) in [
        (SurfaceSig::new(1, 1), 4, 8, true),
        (SurfaceSig::new(0, 4), 3, 6, true),
        (SurfaceSig::new(0, 5), 2, 4, false),
        (SurfaceSig::new(1, 2), 2, 4, false),
    ] {
        let sweep: BTreeSet<Curve> = enumerate_curves(sig, bound, CurveFilter::All, DEFAULT_CAP).unwrap().into_iter().collect();
        let orbit = twist_orbit(sig, bound, explore).unwrap();
        assert!(!orbit.is_empty() && orbit.is_subset(&sweep), "{sig}: orbit leaves the sweep");
        if exact {
            assert_eq!(orbit, sweep, "{sig}: orbit misses sweep curves");
        }
    }
}

#[test]
fn separating_filter_matches_cut_pieces() {
    let sig = SurfaceSig::new(2, 1);
    let all = enumerate_curves(sig, 3, CurveFilter::All, DEFAULT_CAP).unwrap();
    let sep = enumerate_curves(sig, 3, CurveFilter::Separating, DEFAULT_CAP).unwrap();
    let expected: Vec<Curve> = all.into_iter().filter(|c| Multicurve::single(c.clone()).cut().pieces.len() == 2).collect();
    assert!(!sep.is_empty());
    assert_eq!(sep, expected);
}
