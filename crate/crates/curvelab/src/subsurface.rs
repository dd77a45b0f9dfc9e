//! Essential subsurfaces as complementary pieces of a multicurve, with
//! subsurface projection, projection of pants decompositions, extension
//! of multicurves and the quasi-convex region predicates.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arrange::{backward_path, forward_path, Arrangement, CurvePos};
use crate::closed::descend_all;
use crate::curve::{check_same, cut_pieces, surface, Curve, CutPiece, CutSurface, Fingerprint, Multicurve};
use crate::error::{Error, Result};
use crate::mcg::forget_boundary;
use crate::realize::Realization;
use crate::surface::SurfaceSig;
use crate::word::{inverse, reduce_cyclic, Letter};

/// Whether the complement of a subsurface contains an essential piece.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Separation {
    Separating,
    Nonseparating,
}

/// Union of selected complementary pieces of a multicurve.
#[derive(Clone)]
pub struct Subsurface {
    boundary: Multicurve,
    cut: CutSurface,
    selected: Vec<usize>,
}

impl Subsurface {
    /// Selects pieces (indices into `boundary.cut()`); each must be
    /// essential.
    pub fn new(boundary: Multicurve, selected: Vec<usize>) -> Result<Self> {
        if boundary.is_empty() {
            return Err(Error::NotProper);
        }
        let cut = boundary.cut();
        let mut selected = selected;
        selected.sort_unstable();
        selected.dedup();
        if selected.is_empty() {
            return Err(Error::InvalidDescriptor("no piece selected".into()));
        }
        for &s in &selected {
            let piece = cut.pieces.get(s).ok_or_else(|| Error::InvalidDescriptor(format!("no piece {s}")))?;
            if !piece.is_essential() {
                return Err(Error::InvalidDescriptor(format!("piece {s} is {}, not essential", piece.sig)));
            }
        }
        Ok(Subsurface { boundary, cut, selected })
    }

    /// Every essential complementary piece of `m`, as a connected
    /// subsurface.
    pub fn pieces_of(m: &Multicurve) -> Vec<Subsurface> {
        if m.is_empty() {
            return Vec::new();
        }
        let cut = m.cut();
        cut.essential()
            .map(|(i, _)| Subsurface { boundary: m.clone(), cut: cut.clone(), selected: vec![i] })
            .collect()
    }

    pub fn ambient(&self) -> SurfaceSig {
        self.boundary.sig()
    }

    /// The multicurve whose pieces were selected.
    pub fn multicurve(&self) -> &Multicurve {
        &self.boundary
    }

    pub fn selected(&self) -> &[usize] {
        &self.selected
    }

    pub fn is_connected(&self) -> bool {
        self.selected.len() == 1
    }

    fn pieces(&self) -> impl Iterator<Item = &CutPiece> {
        self.selected.iter().map(|&s| &self.cut.pieces[s])
    }

    /// Signatures of the selected pieces.
    pub fn sigs(&self) -> Vec<SurfaceSig> {
        self.pieces().map(|p| p.sig).collect()
    }

    /// Signature of a connected subsurface.
    pub fn sig(&self) -> Result<SurfaceSig> {
        if !self.is_connected() {
            return Err(Error::DisconnectedSubsurface);
        }
        Ok(self.cut.pieces[self.selected[0]].sig)
    }

    pub fn complexity(&self) -> i64 {
        self.pieces().map(|p| p.complexity()).sum()
    }

    /// Components of the multicurve that bound a selected piece.
    pub fn boundary_indices(&self) -> Vec<usize> {
        let mut out: Vec<usize> = self.pieces().flat_map(|p| p.sides.iter().map(|s| s.0)).collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// The boundary multicurve of the subsurface.
    pub fn boundary_curves(&self) -> Vec<Curve> {
        self.boundary_indices().into_iter().map(|i| self.boundary.curves()[i].clone()).collect()
    }

    pub fn boundary_multicurve(&self) -> Result<Multicurve> {
        Multicurve::new(self.ambient(), self.boundary_curves())
    }

    /// Separating iff the complement contains an essential piece.
    pub fn classify(&self) -> Separation {
        // Glue the unselected pieces along components that do not touch
        // the subsurface, then test each glued component.
        let n = self.cut.pieces.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut x = x;
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        let touching: BTreeSet<usize> = self.boundary_indices().into_iter().collect();
        for comp in 0..self.boundary.len() {
            if touching.contains(&comp) {
                continue;
            }
            let a = self.cut.piece_of_side(comp, true);
            let b = self.cut.piece_of_side(comp, false);
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            parent[ra] = rb;
        }
        let mut chi = vec![0i64; n];
        let mut holes = vec![0i64; n];
        for (i, p) in self.cut.pieces.iter().enumerate() {
            if self.selected.contains(&i) {
                continue;
            }
            let r = find(&mut parent, i);
            chi[r] += p.chi;
            holes[r] += p.punctures.len() as i64
                + p.sides.iter().filter(|s| touching.contains(&s.0)).count() as i64;
        }
        let essential = (0..n).any(|r| {
            if self.selected.contains(&r) || find(&mut parent, r) != r {
                return false;
            }
            // 3g - 3 + b with 2 - 2g - b = chi.
            let genus2 = 2 - chi[r] - holes[r];
            genus2 >= 0 && 3 * genus2 / 2 - 3 + holes[r] >= 1
        });
        if essential {
            Separation::Separating
        } else {
            Separation::Nonseparating
        }
    }

    /// True if `c` lies in the subsurface and is not parallel to its
    /// boundary.
    pub fn contains_curve(&self, c: &Curve) -> Result<bool> {
        check_same(self.ambient(), c.sig())?;
        if self.boundary.contains(c) {
            return Ok(false);
        }
        Ok(self.locate(c)?.map(|p| self.selected.contains(&p)).unwrap_or(false))
    }

    /// The piece containing `c` if `c` misses the multicurve.
    fn locate(&self, c: &Curve) -> Result<Option<usize>> {
        let layout = Layout::new(self, c)?;
        Ok(if layout.events.is_empty() { Some(layout.piece_after(None)) } else { None })
    }

    /// Subsurface projection of a curve.
    pub fn project(&self, alpha: &Curve) -> Result<BTreeSet<Curve>> {
        check_same(self.ambient(), alpha.sig())?;
        if !self.is_connected() {
            return Err(Error::DisconnectedSubsurface);
        }
        if self.boundary.contains(alpha) {
            return Ok(BTreeSet::new());
        }
        let sel = self.selected[0];
        let layout = Layout::new(self, alpha)?;
        let mut out = BTreeSet::new();
        if layout.events.is_empty() {
            if layout.piece_after(None) == sel {
                out.insert(alpha.clone());
            }
            return Ok(out);
        }
        let ctx = surface(self.ambient())?;
        let n = layout.events.len();
        for k in 0..n {
            if layout.piece_after(Some(k)) != sel {
                continue;
            }
            let (e, f) = (&layout.events[k], &layout.events[(k + 1) % n]);
            let side_out = (e.comp, layout.left_of(e.other_chord, layout.alpha_chord_end(e, true)));
            let side_in = (f.comp, layout.left_of(f.other_chord, layout.alpha_chord_end(f, false)));
            let sides = &self.cut.pieces[sel].sides;
            if !sides.contains(&side_out) || !sides.contains(&side_in) {
                return Err(Error::Data("arc endpoints disagree with the cut".into()));
            }
            let arc = forward_path(&layout.alpha, e.pos, f.pos);
            let mut candidates: Vec<Vec<Letter>> = Vec::new();
            if side_out == side_in {
                let w = &layout.words[e.comp];
                for back in [forward_path(w, f.comp_pos, e.comp_pos), backward_path(w, f.comp_pos, e.comp_pos)] {
                    let mut c = arc.clone();
                    c.extend(back);
                    candidates.push(c);
                }
            } else {
                let (wi, wj) = (&layout.words[e.comp], &layout.words[f.comp]);
                let li = forward_path(wi, e.comp_pos, e.comp_pos);
                let lj = forward_path(wj, f.comp_pos, f.comp_pos);
                for loop_i in [li.clone(), inverse(&li)] {
                    for loop_j in [lj.clone(), inverse(&lj)] {
                        let mut c = arc.clone();
                        c.extend(loop_j.iter().copied());
                        c.extend(inverse(&arc));
                        c.extend(loop_i.iter().copied());
                        candidates.push(c);
                    }
                }
            }
            for w in candidates {
                let w = reduce_cyclic(&w);
                let Ok(c) = ctx.curve(&w) else { continue };
                if out.contains(&c) || self.boundary.contains(&c) {
                    continue;
                }
                if self.boundary.intersection_with(&c)? == 0 {
                    out.insert(c);
                }
            }
        }
        Ok(out)
    }

    /// Union of the projections of the components.
    pub fn project_multicurve(&self, m: &Multicurve) -> Result<BTreeSet<Curve>> {
        let mut out = BTreeSet::new();
        for c in m.curves() {
            out.extend(self.project(c)?);
        }
        Ok(out)
    }

    /// A key identifying the subsurface independently of the multicurve
    /// it was cut from: boundary fingerprints, signatures, and the least
    /// projection of the marking.
    pub fn key(&self) -> Result<SubsurfaceKey> {
        let ctx = surface(self.ambient())?;
        let mut witness: Vec<Fingerprint> = Vec::new();
        for (i, _) in self.selected.iter().enumerate() {
            let single = Subsurface { boundary: self.boundary.clone(), cut: self.cut.clone(), selected: vec![self.selected[i]] };
            let mut least: Option<Curve> = None;
            for m in ctx.marking() {
                let c = ctx.curve(m)?;
                if let Some(p) = single.project(&c)?.into_iter().next() {
                    if least.as_ref().map(|l| p < *l).unwrap_or(true) {
                        least = Some(p);
                    }
                }
            }
            witness.push(least.map(|c| c.fingerprint().clone()).unwrap_or_default());
        }
        witness.sort();
        let mut boundary: Vec<Fingerprint> = self.boundary_curves().iter().map(|c| c.fingerprint().clone()).collect();
        boundary.sort();
        let mut sigs = self.sigs();
        sigs.sort();
        Ok(SubsurfaceKey { boundary, sigs, witness })
    }
}

impl fmt::Debug for Subsurface {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = self.boundary_curves().iter().map(|c| c.name()).collect();
        write!(f, "Subsurface({:?} bounded by [{}])", self.sigs(), names.join(", "))
    }
}

/// Identity of a subsurface up to isotopy.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct SubsurfaceKey {
    pub boundary: Vec<Fingerprint>,
    pub sigs: Vec<SurfaceSig>,
    pub witness: Vec<Fingerprint>,
}

/// A crossing of the projected curve with the multicurve.
struct Event {
    /// Chord of the projected curve and index of the crossing on it.
    chord: usize,
    index: usize,
    pos: CurvePos,
    comp: usize,
    other_chord: usize,
    comp_pos: CurvePos,
}

/// The multicurve and one more curve realized together.
struct Layout<'a> {
    arr: Arrangement<'static>,
    face_piece: Vec<usize>,
    words: Vec<Vec<Letter>>,
    alpha: Vec<Letter>,
    events: Vec<Event>,
    _sub: &'a Subsurface,
}

impl<'a> Layout<'a> {
    fn new(sub: &'a Subsurface, alpha: &Curve) -> Result<Self> {
        let ctx = surface(sub.ambient())?;
        let words: Vec<Vec<Letter>> = sub.boundary.lifts().to_vec();
        let a = if sub.ambient().is_closed() { descend_all(&ctx.fg, alpha.word(), &words) } else { alpha.word().to_vec() };
        let mut all = words.clone();
        all.push(a.clone());
        let k = words.len();
        let arr = Arrangement::new(Realization::new(&ctx.fg, all));
        let mut mask = vec![true; k];
        mask.push(false);
        let (cut, face_piece) = cut_pieces(&arr, &mask, sub.ambient().is_closed());
        if cut.pieces != sub.cut.pieces {
            return Err(Error::Data("cut changed when adding a curve".into()));
        }
        let mut events = Vec::new();
        for j in 0..a.len() {
            let chord = arr.chord_id(k, j);
            for (t, &x) in arr.chord_crossings(chord).iter().enumerate() {
                let other = arr.crossings[x].chords.iter().copied().find(|&c| c != chord).expect("two chords");
                events.push(Event {
                    chord,
                    index: t,
                    pos: arr.crossing_pos(x, chord),
                    comp: arr.chord_curve(other).0,
                    other_chord: other,
                    comp_pos: arr.crossing_pos(x, other),
                });
            }
        }
        Ok(Layout { arr, face_piece, words, alpha: a, events, _sub: sub })
    }

    /// Piece containing the segment after event `k`, or the first segment.
    fn piece_after(&self, k: Option<usize>) -> usize {
        let h = match k {
            None => self.arr.seg_half(self.arr.chord_id(self.words.len(), 0), 0),
            Some(k) => {
                let e = &self.events[k];
                self.arr.seg_half(e.chord, e.index + 1)
            }
        };
        self.face_piece[self.arr.face(h)]
    }

    /// End (`true`) or start of the projected curve's chord at an event.
    fn alpha_chord_end(&self, e: &Event, end: bool) -> u32 {
        let (p, q) = self.arr.chord_ends(e.chord);
        if end {
            q
        } else {
            p
        }
    }

    /// Whether circle point `z` lies to the left of directed chord `chord`.
    fn left_of(&self, chord: usize, z: u32) -> bool {
        let (p, q) = self.arr.chord_ends(chord);
        if q < p {
            z > q && z < p
        } else {
            z > q || z < p
        }
    }
}

/// Pants decomposition of a connected subsurface built from a pants
/// decomposition of the ambient surface: repeatedly keep one projected
/// curve and recurse into the pieces it cuts off. `choose` picks among
/// the candidates, given in fingerprint order.
pub fn project_pants_by(
    p: &Multicurve,
    y: &Subsurface,
    choose: &mut dyn FnMut(&[Curve]) -> usize,
) -> Result<Multicurve> {
    check_same(y.ambient(), p.sig())?;
    let mut out = Vec::new();
    project_into(p, y, choose, &mut out)?;
    Multicurve::new(y.ambient(), out)
}

fn project_into(
    p: &Multicurve,
    y: &Subsurface,
    choose: &mut dyn FnMut(&[Curve]) -> usize,
    out: &mut Vec<Curve>,
) -> Result<()> {
    let proj: Vec<Curve> = y.project_multicurve(p)?.into_iter().collect();
    if proj.is_empty() {
        return Err(Error::NoIntersection);
    }
    let c = proj[choose(&proj).min(proj.len() - 1)].clone();
    out.push(c.clone());
    let grown = y.multicurve().with(&c)?;
    let idx = grown.index_of(&c).expect("added component is present");
    let cut = grown.cut();
    let mut next: Vec<usize> = cut
        .pieces
        .iter()
        .enumerate()
        .filter(|(_, piece)| piece.is_essential() && piece.sides.iter().any(|s| s.0 == idx))
        .map(|(i, _)| i)
        .collect();
    next.dedup();
    for piece in next {
        let z = Subsurface { boundary: grown.clone(), cut: cut.clone(), selected: vec![piece] };
        project_into(p, &z, choose, out)?;
    }
    Ok(())
}

/// Projection of a pants decomposition with fingerprint-least choices.
pub fn project_pants(p: &Multicurve, y: &Subsurface) -> Result<Multicurve> {
    project_pants_by(p, y, &mut |_| 0)
}

/// `C ∪ π(X)` over the essential pieces of the complement of `C`: a pants
/// decomposition containing `C`.
pub fn extend_multicurve(c: &Multicurve, x: &Multicurve) -> Result<Multicurve> {
    check_same(c.sig(), x.sig())?;
    if c.is_empty() {
        return Ok(x.clone());
    }
    let mut curves: Vec<Curve> = c.curves().to_vec();
    for z in Subsurface::pieces_of(c) {
        curves.extend(project_pants(x, &z)?.curves().iter().cloned());
    }
    Multicurve::new(c.sig(), curves)
}

/// Membership in the region of pants decompositions containing `C`.
pub fn region_contains(c: &Multicurve, p: &Multicurve) -> bool {
    c.curves().iter().all(|x| p.contains(x))
}

/// Membership of a pants decomposition of the punctured carrier in the
/// region over the closed-surface separating curve `alpha`.
pub fn x_region_contains(alpha: &Curve, q: &Multicurve) -> Result<bool> {
    for c in q.curves() {
        if c.is_separating() && forget_boundary(c)? == *alpha {
            return Ok(true);
        }
    }
    Ok(false)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mc(sig: SurfaceSig, words: &[&str]) -> Multicurve {
        let ctx = surface(sig).unwrap();
        Multicurve::new(sig, words.iter().map(|w| ctx.parse(w).unwrap()).collect()).unwrap()
    }

    #[test]
    fn handle_of_genus_two_is_separating() {
        let m = mc(SurfaceSig::new(2, 1), &["abAB"]);
        let pieces = Subsurface::pieces_of(&m);
        assert_eq!(pieces.len(), 2);
        for y in &pieces {
            assert_eq!(y.classify(), Separation::Separating);
        }
        let mut sigs: Vec<SurfaceSig> = pieces.iter().map(|y| y.sig().unwrap()).collect();
        sigs.sort();
        assert_eq!(sigs, vec![SurfaceSig::new(1, 1), SurfaceSig::new(1, 2)]);
    }

    #[test]
    fn complement_of_nonseparating_curve_is_nonseparating() {
        let m = mc(SurfaceSig::new(2, 0), &["a"]);
        let pieces = Subsurface::pieces_of(&m);
        assert_eq!(pieces.len(), 1);
        assert_eq!(pieces[0].sig().unwrap(), SurfaceSig::new(1, 2));
        assert_eq!(pieces[0].classify(), Separation::Nonseparating);
    }

    #[test]
    fn empty_boundary_is_not_proper() {
        assert!(matches!(Subsurface::new(Multicurve::empty(SurfaceSig::new(1, 1)), vec![0]), Err(Error::NotProper)));
    }

    #[test]
    fn projection_of_inner_and_outer_curves() {
        let sig = SurfaceSig::new(2, 1);
        let m = mc(sig, &["abAB"]);
        let ctx = surface(sig).unwrap();
        let (a, c) = (ctx.parse("a").unwrap(), ctx.parse("c").unwrap());
        for y in Subsurface::pieces_of(&m) {
            let pa = y.project(&a).unwrap();
            let pc = y.project(&c).unwrap();
            // Exactly one of the two handles holds each curve.
            assert!(pa.is_empty() != pc.is_empty());
            assert!(pa.is_empty() || pa == BTreeSet::from([a.clone()]));
        }
    }

    #[test]
    fn crossing_curve_projects_into_both_sides() {
        let sig = SurfaceSig::new(2, 1);
        let m = mc(sig, &["abAB"]);
        let ctx = surface(sig).unwrap();
        let x = ctx.parse("ac").unwrap();
        for y in Subsurface::pieces_of(&m) {
            let p = y.project(&x).unwrap();
            assert!(!p.is_empty(), "{y:?}");
            for c in &p {
                assert!(y.contains_curve(c).unwrap());
            }
        }
    }

    #[test]
    fn projected_pants_have_full_size() {
        let sig = SurfaceSig::new(2, 1);
        let ctx = surface(sig).unwrap();
        let p = mc(sig, &["a", "c", "abAB", "cdCD"]);
        assert!(p.is_pants_decomposition(), "{p:?}");
        let m = mc(sig, &["bc"]);
        for y in Subsurface::pieces_of(&m) {
            let q = project_pants(&p, &y).unwrap();
            assert_eq!(q.len() as i64, y.complexity());
            for c in q.curves() {
                assert!(y.contains_curve(c).unwrap());
            }
        }
        let e = extend_multicurve(&m, &p).unwrap();
        assert!(e.is_pants_decomposition());
        assert!(region_contains(&m, &e));
        let _ = ctx;
    }
}
