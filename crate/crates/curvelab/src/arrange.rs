//! Planar arrangement of realized curves and the complementary pieces of a
//! chosen subfamily.
//!
//! Chords are drawn as straight segments between points on a circle, which
//! fixes the cyclic order of edges at every crossing. Faces of the
//! resulting planar map are glued across side intervals to recover the
//! surface cut along the selected ("mask") curves.

use crate::realize::{chords_cross, Point, Realization};
use crate::surface::SurfaceSig;
use crate::word::{inverse, Letter};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HalfKind {
    /// Boundary-circle arc on `side` between consecutive circle points;
    /// `interval` counts from the side's first corner.
    Arc { side: usize, interval: usize, ccw: bool },
    /// Piece `seg` of chord `chord`, traversed along (`forward`) or against
    /// the curve's direction.
    Seg { chord: usize, seg: usize, forward: bool },
}

#[derive(Debug, Clone, Copy)]
pub struct Crossing {
    pub chords: [usize; 2],
    /// Parameter of the crossing along each chord, in (0, 1).
    pub lambda: [f64; 2],
}

/// A position on a curve: chord `visit` at parameter `lambda`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurvePos {
    pub visit: usize,
    pub lambda: f64,
}

#[derive(Debug, Clone)]
pub struct Arrangement<'g> {
    pub real: Realization<'g>,
    chord_base: Vec<usize>,
    chord_curve: Vec<(usize, usize)>,
    pub crossings: Vec<Crossing>,
    /// Per chord: crossing ids sorted along the chord.
    chord_crossings: Vec<Vec<usize>>,
    nverts: usize,
    from: Vec<usize>,
    to: Vec<usize>,
    twin: Vec<usize>,
    next: Vec<usize>,
    kind: Vec<HalfKind>,
    face: Vec<usize>,
    outer: usize,
    nfaces: usize,
    seg_half: Vec<Vec<usize>>,
}

/// A complementary piece of the mask curves.
#[derive(Debug, Clone)]
pub struct Piece {
    pub chi: i64,
    pub punctures: Vec<usize>,
    pub cycles: Vec<usize>,
    pub genus: i64,
}

impl Piece {
    pub fn boundary_count(&self) -> usize {
        self.punctures.len() + self.cycles.len()
    }

    pub fn sig(&self) -> SurfaceSig {
        SurfaceSig::new(self.genus.max(0) as u32, self.boundary_count() as u32)
    }

    pub fn complexity(&self) -> i64 {
        3 * self.genus - 3 + self.boundary_count() as i64
    }
}

/// A boundary cycle of a piece, as the list of mask half-edges met while
/// walking with the piece on the left.
#[derive(Debug, Clone)]
pub struct Cycle {
    pub halfedges: Vec<usize>,
    pub piece: usize,
}

/// Pieces of the surface cut along the mask curves.
#[derive(Debug, Clone)]
pub struct Cut {
    pub mask: Vec<bool>,
    pub pieces: Vec<Piece>,
    pub cycles: Vec<Cycle>,
    face_piece: Vec<usize>,
}

/// Letters read while moving forwards along the cyclic word `w` from `p`
/// to `q`.
pub fn forward_path(w: &[Letter], p: CurvePos, q: CurvePos) -> Vec<Letter> {
    let n = w.len();
    let steps = if q.visit == p.visit {
        if q.lambda > p.lambda {
            0
        } else {
            n
        }
    } else {
        (q.visit + n - p.visit) % n
    };
    (0..steps).map(|k| w[(p.visit + k) % n]).collect()
}

/// Letters read while moving backwards along `w` from `p` to `q`.
pub fn backward_path(w: &[Letter], p: CurvePos, q: CurvePos) -> Vec<Letter> {
    inverse(&forward_path(w, q, p))
}

fn jitter(key: usize, salt: u64) -> f64 {
    let mut z = (key as u64).wrapping_add(salt.wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^= z >> 31;
    ((z >> 11) as f64 / (1u64 << 53) as f64 - 0.5) * 0.6
}

fn intersect(p1: (f64, f64), q1: (f64, f64), p2: (f64, f64), q2: (f64, f64)) -> (f64, f64) {
    let d1 = (q1.0 - p1.0, q1.1 - p1.1);
    let d2 = (q2.0 - p2.0, q2.1 - p2.1);
    let den = d1.0 * d2.1 - d1.1 * d2.0;
    let w = (p2.0 - p1.0, p2.1 - p1.1);
    let l1 = (w.0 * d2.1 - w.1 * d2.0) / den;
    let l2 = (w.0 * d1.1 - w.1 * d1.0) / den;
    (l1, l2)
}

impl<'g> Arrangement<'g> {
    pub fn new(real: Realization<'g>) -> Self {
        for salt in 0..64u64 {
            if let Some(a) = Self::build(real.clone(), salt) {
                return a;
            }
        }
        panic!("arrangement: could not separate crossings");
    }

    fn build(real: Realization<'g>, salt: u64) -> Option<Self> {
        let total = real.total_points();
        let coords: Vec<(f64, f64)> = (0..total)
            .map(|k| {
                let t = std::f64::consts::TAU * (k as f64 + jitter(k, salt)) / total as f64;
                (t.cos(), t.sin())
            })
            .collect();
        let mut chord_base = Vec::new();
        let mut chord_curve = Vec::new();
        let mut chord_ends = Vec::new();
        for (c, ch) in real.chords.iter().enumerate() {
            chord_base.push(chord_ends.len());
            for (j, &e) in ch.iter().enumerate() {
                chord_curve.push((c, j));
                chord_ends.push(e);
            }
        }
        let nch = chord_ends.len();
        let mut crossings = Vec::new();
        let mut chord_crossings: Vec<Vec<usize>> = vec![Vec::new(); nch];
        for a in 0..nch {
            for b in a + 1..nch {
                let (ea, eb) = (chord_ends[a], chord_ends[b]);
                if chords_cross(ea, eb) {
                    let (la, lb) = intersect(
                        coords[ea.0 as usize],
                        coords[ea.1 as usize],
                        coords[eb.0 as usize],
                        coords[eb.1 as usize],
                    );
                    let id = crossings.len();
                    crossings.push(Crossing { chords: [a, b], lambda: [la, lb] });
                    chord_crossings[a].push(id);
                    chord_crossings[b].push(id);
                }
            }
        }
        let lam = |x: usize, ch: usize| -> f64 {
            let c: &Crossing = &crossings[x];
            if c.chords[0] == ch {
                c.lambda[0]
            } else {
                c.lambda[1]
            }
        };
        for (ch, list) in chord_crossings.iter_mut().enumerate() {
            list.sort_by(|&x, &y| lam(x, ch).partial_cmp(&lam(y, ch)).unwrap());
            for w in list.windows(2) {
                if (lam(w[1], ch) - lam(w[0], ch)).abs() < 1e-9 {
                    return None;
                }
            }
        }
        let nverts = total + crossings.len();
        let mut from = Vec::new();
        let mut to = Vec::new();
        let mut kind = Vec::new();
        let mut add = |u: usize, v: usize, k1: HalfKind, k2: HalfKind| -> usize {
            let h = from.len();
            from.push(u);
            to.push(v);
            kind.push(k1);
            from.push(v);
            to.push(u);
            kind.push(k2);
            h
        };
        let mut out: Vec<Vec<(usize, usize)>> = vec![Vec::new(); nverts];
        for k in 0..total {
            let (side, interval) = match real.point(k as u32) {
                Point::Corner(s) => (s, 0),
                Point::Strand { side, index, .. } => (side, index + 1),
            };
            let k2 = (k + 1) % total;
            let h = add(
                k,
                k2,
                HalfKind::Arc { side, interval, ccw: true },
                HalfKind::Arc { side, interval, ccw: false },
            );
            debug_assert_eq!(h, 2 * k);
            // sort keys: ccw arc first, then chord, then cw arc
            out[k].push((0, h));
            out[k2].push((2, h + 1));
        }
        let mut seg_half = vec![Vec::new(); nch];
        for ch in 0..nch {
            let (u, v) = chord_ends[ch];
            let mut verts = vec![u as usize];
            verts.extend(chord_crossings[ch].iter().map(|&x| total + x));
            verts.push(v as usize);
            for s in 0..verts.len() - 1 {
                let h = add(
                    verts[s],
                    verts[s + 1],
                    HalfKind::Seg { chord: ch, seg: s, forward: true },
                    HalfKind::Seg { chord: ch, seg: s, forward: false },
                );
                seg_half[ch].push(h);
                let key_fwd = v as usize;
                let key_bwd = u as usize;
                if s == 0 {
                    out[verts[0]].push((1, h));
                } else {
                    out[verts[s]].push((key_fwd, h));
                }
                if s + 1 == verts.len() - 1 {
                    out[verts[s + 1]].push((1, h + 1));
                } else {
                    out[verts[s + 1]].push((key_bwd, h + 1));
                }
            }
        }
        let nh = from.len();
        let twin: Vec<usize> = (0..nh).map(|h| h ^ 1).collect();
        let mut pos_in_rot = vec![0usize; nh];
        for list in out.iter_mut() {
            list.sort_by_key(|&(k, _)| k);
            for (i, &(_, h)) in list.iter().enumerate() {
                pos_in_rot[h] = i;
            }
        }
        let mut next = vec![0usize; nh];
        for h in 0..nh {
            let t = twin[h];
            let w = to[h];
            let rot = &out[w];
            let i = pos_in_rot[t];
            next[h] = rot[(i + rot.len() - 1) % rot.len()].1;
        }
        let mut face = vec![usize::MAX; nh];
        let mut nfaces = 0;
        let mut outer = usize::MAX;
        for h in 0..nh {
            if face[h] != usize::MAX {
                continue;
            }
            let f = nfaces;
            nfaces += 1;
            let mut x = h;
            while face[x] == usize::MAX {
                face[x] = f;
                x = next[x];
            }
            if matches!(kind[h], HalfKind::Arc { ccw: false, .. }) {
                outer = f;
            }
        }
        Some(Arrangement {
            real,
            chord_base,
            chord_curve,
            crossings,
            chord_crossings,
            nverts,
            from,
            to,
            twin,
            next,
            kind,
            face,
            outer,
            nfaces,
            seg_half,
        })
    }

    pub fn curve_count(&self) -> usize {
        self.real.words.len()
    }

    pub fn chord_id(&self, curve: usize, visit: usize) -> usize {
        self.chord_base[curve] + visit
    }

    pub fn chord_curve(&self, chord: usize) -> (usize, usize) {
        self.chord_curve[chord]
    }

    pub fn chord_ends(&self, chord: usize) -> (u32, u32) {
        let (c, j) = self.chord_curve[chord];
        self.real.chords[c][j]
    }

    pub fn kind(&self, h: usize) -> HalfKind {
        self.kind[h]
    }

    pub fn head(&self, h: usize) -> usize {
        self.to[h]
    }

    pub fn tail(&self, h: usize) -> usize {
        self.from[h]
    }

    pub fn twin(&self, h: usize) -> usize {
        self.twin[h]
    }

    pub fn face(&self, h: usize) -> usize {
        self.face[h]
    }

    /// Vertex id of a crossing.
    pub fn crossing_vertex(&self, x: usize) -> usize {
        self.real.total_points() + x
    }

    /// Crossing id of a vertex, if it is one.
    pub fn vertex_crossing(&self, v: usize) -> Option<usize> {
        v.checked_sub(self.real.total_points())
    }

    /// Position of crossing `x` on the curve of `chord`.
    pub fn crossing_pos(&self, x: usize, chord: usize) -> CurvePos {
        let c = &self.crossings[x];
        let lambda = if c.chords[0] == chord { c.lambda[0] } else { c.lambda[1] };
        CurvePos { visit: self.chord_curve[chord].1, lambda }
    }

    /// The chord of `x` that belongs to `curve`, if any.
    pub fn crossing_chord_on(&self, x: usize, curve: usize) -> Option<usize> {
        self.crossings[x].chords.iter().copied().find(|&ch| self.chord_curve[ch].0 == curve)
    }

    /// Crossing ids along a chord in curve order.
    pub fn chord_crossings(&self, chord: usize) -> &[usize] {
        &self.chord_crossings[chord]
    }

    /// Forward half-edge of segment `seg` of `chord`.
    pub fn seg_half(&self, chord: usize, seg: usize) -> usize {
        self.seg_half[chord][seg]
    }

    pub fn face_count(&self) -> usize {
        self.nfaces
    }

    pub fn vertex_count(&self) -> usize {
        self.nverts
    }

    /// Ccw half-edge of interval `interval` on `side`.
    pub fn arc_ccw(&self, side: usize, interval: usize) -> usize {
        2 * (self.real.corner_key(side) as usize + interval)
    }

    /// Ccw half-edge of the arc glued to the ccw arc `h`.
    fn glued(&self, h: usize) -> usize {
        match self.kind[h] {
            HalfKind::Arc { side, interval, ccw: true } => {
                let fg = self.real.fg;
                let p = fg.partner(side);
                let n = self.real.side_points(side);
                self.arc_ccw(p, n - interval)
            }
            _ => unreachable!("glued called on a non-arc half-edge"),
        }
    }

    fn is_mask_seg(&self, h: usize, mask: &[bool]) -> bool {
        match self.kind[h] {
            HalfKind::Seg { chord, .. } => mask[self.chord_curve[chord].0],
            _ => false,
        }
    }

    /// Next mask half-edge along the boundary of the cut piece to the left
    /// of mask half-edge `h`.
    pub fn boundary_succ(&self, h: usize, mask: &[bool]) -> usize {
        let mut x = self.next[h];
        loop {
            match self.kind[x] {
                HalfKind::Seg { .. } if self.is_mask_seg(x, mask) => return x,
                HalfKind::Seg { .. } => x = self.next[self.twin[x]],
                HalfKind::Arc { ccw: true, .. } => x = self.next[self.glued(x)],
                HalfKind::Arc { ccw: false, .. } => unreachable!("walked onto the outer face"),
            }
        }
    }

    /// Cuts the surface along the curves with `mask[c]` set.
    pub fn cut(&self, mask: &[bool]) -> Cut {
        let fg = self.real.fg;
        let mut uf: Vec<usize> = (0..self.nfaces).collect();
        fn find(uf: &mut [usize], mut x: usize) -> usize {
            while uf[x] != x {
                uf[x] = uf[uf[x]];
                x = uf[x];
            }
            x
        }
        let unite = |uf: &mut Vec<usize>, a: usize, b: usize| {
            let (ra, rb) = (find(uf, a), find(uf, b));
            if ra != rb {
                uf[ra.max(rb)] = ra.min(rb);
            }
        };
        let mut glue_pairs = Vec::new();
        for side in 0..fg.sides() {
            if side > fg.partner(side) {
                continue;
            }
            for interval in 0..=self.real.side_points(side) {
                let h = self.arc_ccw(side, interval);
                let g = self.glued(h);
                glue_pairs.push((h, g));
                unite(&mut uf, self.face[h], self.face[g]);
            }
        }
        let mut free_segs = Vec::new();
        for ch in 0..self.seg_half.len() {
            if mask[self.chord_curve[ch].0] {
                continue;
            }
            for &h in &self.seg_half[ch] {
                free_segs.push(h);
                unite(&mut uf, self.face[h], self.face[h + 1]);
            }
        }
        let mut piece_of_root = vec![usize::MAX; self.nfaces];
        let mut face_piece = vec![usize::MAX; self.nfaces];
        let mut chi: Vec<i64> = Vec::new();
        let mut order: Vec<usize> = (0..self.nfaces).filter(|&f| f != self.outer).collect();
        order.sort_unstable();
        for f in order {
            let r = find(&mut uf, f);
            if piece_of_root[r] == usize::MAX {
                piece_of_root[r] = chi.len();
                chi.push(0);
            }
            let id = piece_of_root[r];
            face_piece[f] = id;
            chi[id] += 1;
        }
        for &(h, _) in &glue_pairs {
            chi[face_piece[self.face[h]]] -= 1;
        }
        for &h in &free_segs {
            chi[face_piece[self.face[h]]] -= 1;
        }
        // interior vertices: strand points of free curves, free-free crossings
        let total = self.real.total_points();
        for k in 0..total {
            if let Point::Strand { curve, exit: true, side, index, .. } = self.real.point(k as u32) {
                if !mask[curve] {
                    let h = self.arc_ccw(side, index + 1);
                    chi[face_piece[self.face[h]]] += 1;
                }
            }
        }
        for (x, c) in self.crossings.iter().enumerate() {
            let m0 = mask[self.chord_curve[c.chords[0]].0];
            let m1 = mask[self.chord_curve[c.chords[1]].0];
            if !m0 && !m1 {
                let ch = c.chords[0];
                let p = self.chord_crossings[ch].iter().position(|&y| y == x).unwrap();
                let h = self.seg_half[ch][p + 1];
                chi[face_piece[self.face[h]]] += 1;
            }
        }
        let mut punctures: Vec<Vec<usize>> = vec![Vec::new(); chi.len()];
        for s in 0..fg.sides() {
            let h = self.arc_ccw(s, 0);
            let p = face_piece[self.face[h]];
            let pid = fg.corner_puncture(s);
            if !punctures[p].contains(&pid) {
                punctures[p].push(pid);
            }
        }
        let mut cycles = Vec::new();
        let mut cyc_of = vec![usize::MAX; self.from.len()];
        let mut piece_cycles: Vec<Vec<usize>> = vec![Vec::new(); chi.len()];
        for ch in 0..self.seg_half.len() {
            if !mask[self.chord_curve[ch].0] {
                continue;
            }
            for &hf in &self.seg_half[ch] {
                for h in [hf, hf + 1] {
                    if cyc_of[h] != usize::MAX {
                        continue;
                    }
                    let id = cycles.len();
                    let mut list = Vec::new();
                    let mut x = h;
                    while cyc_of[x] == usize::MAX {
                        cyc_of[x] = id;
                        list.push(x);
                        x = self.boundary_succ(x, mask);
                    }
                    let piece = face_piece[self.face[h]];
                    piece_cycles[piece].push(id);
                    cycles.push(Cycle { halfedges: list, piece });
                }
            }
        }
        let pieces = chi
            .iter()
            .enumerate()
            .map(|(i, &x)| {
                let b = (punctures[i].len() + piece_cycles[i].len()) as i64;
                let mut p = punctures[i].clone();
                p.sort_unstable();
                Piece { chi: x, punctures: p, cycles: piece_cycles[i].clone(), genus: (2 - x - b) / 2 }
            })
            .collect();
        Cut { mask: mask.to_vec(), pieces, cycles, face_piece }
    }
}

impl Cut {
    pub fn piece_of_face(&self, f: usize) -> usize {
        self.face_piece[f]
    }

    /// Piece to the left (`true`) or right of mask curve `curve`, read off
    /// its first segment.
    pub fn side_piece(&self, arr: &Arrangement<'_>, curve: usize, left: bool) -> usize {
        let h = arr.seg_half(arr.chord_id(curve, 0), 0);
        let h = if left { h } else { arr.twin(h) };
        self.face_piece[arr.face(h)]
    }

    /// Piece containing the (non-mask) curve's first segment.
    pub fn curve_piece(&self, arr: &Arrangement<'_>, curve: usize) -> usize {
        self.side_piece(arr, curve, true)
    }

    /// Word of the curve obtained by pushing a boundary cycle slightly into
    /// its piece: the sides crossed while following the mask curves.
    pub fn cycle_word(&self, arr: &Arrangement<'_>, cycle: usize) -> Vec<Letter> {
        let hs = &self.cycles[cycle].halfedges;
        let mut out = Vec::new();
        for i in 0..hs.len() {
            let (HalfKind::Seg { chord: a, forward, .. }, HalfKind::Seg { chord: b, .. }) =
                (arr.kind(hs[i]), arr.kind(hs[(i + 1) % hs.len()]))
            else {
                continue;
            };
            let ((ca, va), (cb, _)) = (arr.chord_curve(a), arr.chord_curve(b));
            if ca != cb {
                continue;
            }
            let w = &arr.real.words[ca];
            if forward {
                out.push(w[va]);
            } else {
                out.push(crate::word::inv(w[(va + w.len() - 1) % w.len()]));
            }
        }
        out
    }

    /// Turning points of a cycle: indices `i` where half-edge `i` and its
    /// successor lie on different curves.
    pub fn turns(&self, arr: &Arrangement<'_>, cycle: usize) -> Vec<usize> {
        let hs = &self.cycles[cycle].halfedges;
        let curve_of = |h: usize| match arr.kind(h) {
            HalfKind::Seg { chord, .. } => arr.chord_curve(chord).0,
            _ => usize::MAX,
        };
        (0..hs.len()).filter(|&i| curve_of(hs[i]) != curve_of(hs[(i + 1) % hs.len()])).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::{FatGraph, SurfaceSig};

    fn cut_of(sig: SurfaceSig, words: &[&str], mask: &[bool]) -> Vec<SurfaceSig> {
        let fg = FatGraph::new(sig).unwrap();
        let ws = words.iter().map(|w| fg.parse_word(w).unwrap()).collect();
        let arr = Arrangement::new(Realization::new(&fg, ws));
        let cut = arr.cut(mask);
        let mut sigs: Vec<SurfaceSig> = cut.pieces.iter().map(|p| p.sig()).collect();
        sigs.sort();
        sigs
    }

    #[test]
    fn empty_cut_is_whole_surface() {
        for sig in [SurfaceSig::new(1, 1), SurfaceSig::new(2, 1), SurfaceSig::new(0, 5)] {
            assert_eq!(cut_of(sig, &[], &[]), vec![sig]);
        }
    }

    #[test]
    fn separating_curve_genus_two() {
        let s = SurfaceSig::new(2, 1);
        assert_eq!(
            cut_of(s, &["abAB"], &[true]),
            vec![SurfaceSig::new(1, 1), SurfaceSig::new(1, 2)]
        );
        assert_eq!(cut_of(s, &["a"], &[true]), vec![SurfaceSig::new(1, 3)]);
    }

    #[test]
    fn crossing_curves_fill_torus() {
        let s = SurfaceSig::new(1, 1);
        assert_eq!(cut_of(s, &["a", "b"], &[true, true]), vec![SurfaceSig::new(0, 2)]);
        assert_eq!(cut_of(s, &["a", "b"], &[true, false]), vec![SurfaceSig::new(0, 3)]);
    }
}
