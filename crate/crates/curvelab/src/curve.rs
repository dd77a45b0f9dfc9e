//! Isotopy classes of essential simple closed curves and multicurves, with
//! fingerprints against a fixed marking, cutting and separation tests.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::OnceLock;

use crate::arrange::Arrangement;
use crate::closed::descend;
use crate::error::{Error, Result};
use crate::normal::{self, ReferenceTriangulation, DATA_VERSION};
use crate::realize::Realization;
use crate::surface::{FatGraph, SurfaceSig, SUPPORTED};
use crate::twist::twist_word;
use crate::word::{canonical, is_primitive, reduce_cyclic, Letter};

/// Canonical identity of a curve: intersection numbers with the marking,
/// followed on punctured surfaces by the canonical word.
pub type Fingerprint = Vec<u32>;

/// Per-signature context: carrier fat graph, triangulation and marking.
#[derive(Debug)]
pub struct Surface {
    pub sig: SurfaceSig,
    pub fg: FatGraph,
    pub tri: ReferenceTriangulation,
    marking: Vec<Vec<Letter>>,
    peripheral: BTreeSet<Vec<Letter>>,
}

static CONTEXTS: [OnceLock<Surface>; 8] = [
    OnceLock::new(),
    OnceLock::new(),
    OnceLock::new(),
    OnceLock::new(),
    OnceLock::new(),
    OnceLock::new(),
    OnceLock::new(),
    OnceLock::new(),
];

fn shipped(sig: SurfaceSig) -> &'static str {
    match (sig.genus, sig.boundary) {
        (0, 3) => include_str!("../data/tri_0_3.json"),
        (0, 4) => include_str!("../data/tri_0_4.json"),
        (0, 5) => include_str!("../data/tri_0_5.json"),
        (1, 1) => include_str!("../data/tri_1_1.json"),
        (1, 2) => include_str!("../data/tri_1_2.json"),
        (1, 3) => include_str!("../data/tri_1_3.json"),
        (2, 0) => include_str!("../data/tri_2_0.json"),
        (2, 1) => include_str!("../data/tri_2_1.json"),
        _ => unreachable!("signature checked against the supported list"),
    }
}

/// Shared context for a supported signature.
pub fn surface(sig: SurfaceSig) -> Result<&'static Surface> {
    let idx = SUPPORTED
        .iter()
        .position(|s| *s == sig)
        .ok_or_else(|| Error::UnsupportedSurface(sig.to_string()))?;
    Ok(CONTEXTS[idx].get_or_init(|| {
        let tri = ReferenceTriangulation::from_json(shipped(sig)).expect("shipped triangulation parses");
        Surface::from_reference(tri).expect("shipped triangulation is consistent")
    }))
}

impl Surface {
    /// Builds a context from triangulation data, checking that it matches
    /// the fat graph of its signature and that the marking is made of
    /// essential simple curves.
    pub fn from_reference(tri: ReferenceTriangulation) -> Result<Self> {
        let sig = tri.sig();
        let fg = FatGraph::new(sig)?;
        let expected = normal::reference(&fg, Vec::new());
        if expected.triangles != tri.triangles || expected.gluings != tri.gluings || expected.edges != tri.edges {
            return Err(Error::Data(format!("triangulation for {sig} does not match its cell structure")));
        }
        let peripheral = fg.punctures().iter().enumerate().map(|(p, _)| canonical(&fg.peripheral_word(p))).collect();
        let mut ctx = Surface { sig, fg, tri, marking: Vec::new(), peripheral };
        let mut marking: Vec<Vec<Letter>> = Vec::new();
        for w in &ctx.tri.marking {
            let words = normal::trace(&ctx.fg, w)?;
            if words.len() != 1 {
                return Err(Error::Data("marking entries must be single curves".into()));
            }
            let mut word = ctx.simple_word(&words[0])?;
            if sig.is_closed() {
                for m in &marking {
                    word = descend(&ctx.fg, &word, m).0;
                }
            }
            marking.push(word);
        }
        ctx.marking = marking;
        Ok(ctx)
    }

    /// Carrier words of the marking curves.
    pub fn marking(&self) -> &[Vec<Letter>] {
        &self.marking
    }

    fn is_peripheral(&self, w: &[Letter]) -> bool {
        self.peripheral.contains(&canonical(w))
    }

    /// Reduces `w` and checks that it is a simple essential curve; returns
    /// its canonical word.
    pub fn simple_word(&self, w: &[Letter]) -> Result<Vec<Letter>> {
        let w = reduce_cyclic(w);
        let name = || FatGraph::format_word(&w);
        if w.is_empty() {
            return Err(Error::InvalidCurve("trivial word".into()));
        }
        if w.iter().any(|&l| l as usize >= self.fg.letter_count()) {
            return Err(Error::InvalidCurve(format!("letter out of range in {}", name())));
        }
        if !is_primitive(&w) {
            return Err(Error::InvalidCurve(format!("{} is a proper power", name())));
        }
        if Realization::new(&self.fg, vec![w.clone()]).crossings(0, 0) != 0 {
            return Err(Error::InvalidCurve(format!("{} is not simple", name())));
        }
        if self.is_peripheral(&w) {
            return Err(Error::InvalidCurve(format!("{} is peripheral", name())));
        }
        Ok(canonical(&w))
    }

    /// Intersection number of two carrier words, downstairs for the closed
    /// surface.
    pub fn word_intersection(&self, a: &[Letter], b: &[Letter]) -> usize {
        if self.sig.is_closed() {
            if canonical(a) == canonical(b) {
                return 0;
            }
            descend(&self.fg, a, b).1
        } else {
            pair_crossings(&self.fg, a, b)
        }
    }

    /// The curve carried by word `w`.
    pub fn curve(&'static self, w: &[Letter]) -> Result<Curve> {
        let mut word = self.simple_word(w)?;
        let mut fp = Vec::with_capacity(self.marking.len() + word.len() + 1);
        if self.sig.is_closed() {
            for m in &self.marking {
                let (next, n) = if canonical(&word) == canonical(m) {
                    (word.clone(), 0)
                } else {
                    descend(&self.fg, &word, m)
                };
                word = next;
                fp.push(n as u32);
            }
            word = canonical(&word);
        } else {
            fp.extend(self.marking.iter().map(|m| pair_crossings(&self.fg, &word, m) as u32));
            fp.push(word.len() as u32);
            fp.extend(word.iter().map(|&l| l as u32));
        }
        Ok(Curve { ctx: self, word, fp })
    }

    /// Parses a word written with letters `a`, `A`, `b`, ...
    pub fn parse(&'static self, text: &str) -> Result<Curve> {
        let w = self.fg.parse_word(text)?;
        self.curve(&w)
    }
}

/// Crossings of two distinct-or-equal words realized together.
pub fn pair_crossings(fg: &FatGraph, a: &[Letter], b: &[Letter]) -> usize {
    if canonical(a) == canonical(b) {
        return 0;
    }
    Realization::new(fg, vec![a.to_vec(), b.to_vec()]).crossings(0, 1)
}

/// An essential simple closed curve up to isotopy.
#[derive(Clone)]
pub struct Curve {
    ctx: &'static Surface,
    word: Vec<Letter>,
    fp: Fingerprint,
}

impl Curve {
    pub fn sig(&self) -> SurfaceSig {
        self.ctx.sig
    }

    pub fn surface(&self) -> &'static Surface {
        self.ctx
    }

    /// A carrier word for the curve (on the closed surface, one lift).
    pub fn word(&self) -> &[Letter] {
        &self.word
    }

    pub fn fingerprint(&self) -> &Fingerprint {
        &self.fp
    }

    /// Intersections with the marking curves.
    pub fn marking_vector(&self) -> &[u32] {
        &self.fp[..self.ctx.marking.len()]
    }

    pub fn name(&self) -> String {
        FatGraph::format_word(&self.word)
    }

    /// Normal coordinates on the reference triangulation.
    pub fn weights(&self) -> Vec<u32> {
        normal::weights(&self.ctx.fg, std::slice::from_ref(&self.word))
    }

    pub fn max_weight(&self) -> u32 {
        self.weights().into_iter().max().unwrap_or(0)
    }

    /// Geometric intersection number.
    pub fn intersection(&self, other: &Curve) -> Result<usize> {
        check_same(self.sig(), other.sig())?;
        if self == other {
            return Ok(0);
        }
        Ok(self.ctx.word_intersection(&self.word, &other.word))
    }

    pub fn is_separating(&self) -> bool {
        Multicurve::single(self.clone()).is_separating()
    }
}

pub(crate) fn check_same(a: SurfaceSig, b: SurfaceSig) -> Result<()> {
    if a == b {
        Ok(())
    } else {
        Err(Error::SurfaceMismatch { expected: a.to_string(), found: b.to_string() })
    }
}

impl PartialEq for Curve {
    fn eq(&self, other: &Self) -> bool {
        self.sig() == other.sig() && self.fp == other.fp
    }
}

impl Eq for Curve {}

impl Hash for Curve {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.sig().hash(state);
        self.fp.hash(state);
    }
}

impl PartialOrd for Curve {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Curve {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.sig(), &self.fp).cmp(&(other.sig(), &other.fp))
    }
}

impl fmt::Debug for Curve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Curve({} {})", self.sig(), self.name())
    }
}

impl fmt::Display for Curve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

/// One complementary piece of a multicurve.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct CutPiece {
    /// Boundary circles as (component index, left side) pairs.
    pub sides: Vec<(usize, bool)>,
    /// Punctures of the surface lying in the piece.
    pub punctures: Vec<usize>,
    pub sig: SurfaceSig,
    pub chi: i64,
}

impl CutPiece {
    pub fn complexity(&self) -> i64 {
        self.sig.complexity()
    }

    /// Essential pieces have complexity at least one.
    pub fn is_essential(&self) -> bool {
        self.complexity() >= 1
    }
}

/// A surface cut along a multicurve.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CutSurface {
    pub pieces: Vec<CutPiece>,
}

impl CutSurface {
    pub fn essential(&self) -> impl Iterator<Item = (usize, &CutPiece)> {
        self.pieces.iter().enumerate().filter(|(_, p)| p.is_essential())
    }

    pub fn chi(&self) -> i64 {
        self.pieces.iter().map(|p| p.chi).sum()
    }

    /// Index of the piece on the given side of component `comp`.
    pub fn piece_of_side(&self, comp: usize, left: bool) -> usize {
        self.pieces
            .iter()
            .position(|p| p.sides.contains(&(comp, left)))
            .expect("every side bounds a piece")
    }
}

/// Reads off the pieces of the arrangement cut along the curves in
/// `mask`, with the puncture of the carrier filled for closed surfaces.
pub(crate) fn cut_pieces(arr: &Arrangement<'_>, mask: &[bool], closed: bool) -> (CutSurface, Vec<usize>) {
    let cut = arr.cut(mask);
    let mut pieces: Vec<CutPiece> = cut
        .pieces
        .iter()
        .map(|p| {
            let mut sides: Vec<(usize, bool)> = p
                .cycles
                .iter()
                .map(|&c| {
                    let h = cut.cycles[c].halfedges[0];
                    match arr.kind(h) {
                        crate::arrange::HalfKind::Seg { chord, forward, .. } => (arr.chord_curve(chord).0, forward),
                        _ => unreachable!("cycles run along curves"),
                    }
                })
                .collect();
            sides.sort_unstable();
            let (chi, punctures) = if closed && !p.punctures.is_empty() {
                (p.chi + 1, Vec::new())
            } else {
                (p.chi, p.punctures.clone())
            };
            let b = (punctures.len() + sides.len()) as i64;
            let genus = ((2 - chi - b) / 2).max(0) as u32;
            CutPiece { sig: SurfaceSig::new(genus, b as u32), sides, punctures, chi }
        })
        .collect();
    let mut order: Vec<usize> = (0..pieces.len()).collect();
    order.sort_by(|&a, &b| pieces[a].cmp(&pieces[b]));
    let mut new_index = vec![0; pieces.len()];
    for (i, &o) in order.iter().enumerate() {
        new_index[o] = i;
    }
    let mut sorted: Vec<CutPiece> = order.iter().map(|&o| pieces[o].clone()).collect();
    std::mem::swap(&mut pieces, &mut sorted);
    let face_piece = (0..arr.face_count())
        .map(|f| {
            let p = cut.piece_of_face(f);
            if p == usize::MAX {
                usize::MAX
            } else {
                new_index[p]
            }
        })
        .collect();
    (CutSurface { pieces }, face_piece)
}

/// A multicurve: pairwise disjoint, pairwise distinct essential curves.
#[derive(Clone)]
pub struct Multicurve {
    sig: SurfaceSig,
    curves: Vec<Curve>,
    /// Carrier words of the components, realized pairwise disjointly.
    lifts: Vec<Vec<Letter>>,
}

impl Multicurve {
    pub fn empty(sig: SurfaceSig) -> Self {
        Multicurve { sig, curves: Vec::new(), lifts: Vec::new() }
    }

    pub fn single(c: Curve) -> Self {
        let lifts = vec![c.word.clone()];
        Multicurve { sig: c.sig(), curves: vec![c], lifts }
    }

    /// Builds a multicurve, sorting components by fingerprint. Repeated
    /// components are merged.
    pub fn new(sig: SurfaceSig, curves: Vec<Curve>) -> Result<Self> {
        let mut curves = curves;
        for c in &curves {
            check_same(sig, c.sig())?;
        }
        curves.sort();
        curves.dedup();
        for i in 0..curves.len() {
            for j in i + 1..curves.len() {
                if curves[i].intersection(&curves[j])? != 0 {
                    return Err(Error::NotMulticurve);
                }
            }
        }
        let ctx = surface(sig)?;
        let mut lifts: Vec<Vec<Letter>> = Vec::with_capacity(curves.len());
        for c in &curves {
            let mut w = c.word.clone();
            if sig.is_closed() {
                for l in &lifts {
                    w = descend(&ctx.fg, &w, l).0;
                }
            }
            lifts.push(w);
        }
        if sig.is_closed() && !Realization::new(&ctx.fg, lifts.clone()).is_embedded() {
            return Err(Error::Data("could not realize components disjointly".into()));
        }
        Ok(Multicurve { sig, curves, lifts })
    }

    pub fn sig(&self) -> SurfaceSig {
        self.sig
    }

    pub fn curves(&self) -> &[Curve] {
        &self.curves
    }

    pub fn len(&self) -> usize {
        self.curves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.curves.is_empty()
    }

    /// Carrier words of the components, realized pairwise disjointly.
    pub fn lifts(&self) -> &[Vec<Letter>] {
        &self.lifts
    }

    pub fn contains(&self, c: &Curve) -> bool {
        self.curves.binary_search(c).is_ok()
    }

    pub fn index_of(&self, c: &Curve) -> Option<usize> {
        self.curves.binary_search(c).ok()
    }

    pub fn fingerprint(&self) -> Vec<Fingerprint> {
        self.curves.iter().map(|c| c.fp.clone()).collect()
    }

    /// Normal coordinates of the union.
    pub fn weights(&self) -> Vec<u32> {
        let ctx = surface(self.sig).expect("multicurve surfaces are supported");
        normal::weights(&ctx.fg, &self.lifts)
    }

    /// Adds `c`, which must be disjoint from every component.
    pub fn with(&self, c: &Curve) -> Result<Self> {
        let mut v = self.curves.clone();
        v.push(c.clone());
        Multicurve::new(self.sig, v)
    }

    /// Removes `c` if present.
    pub fn without(&self, c: &Curve) -> Self {
        match self.index_of(c) {
            None => self.clone(),
            Some(i) => {
                let mut m = self.clone();
                m.curves.remove(i);
                m.lifts.remove(i);
                m
            }
        }
    }

    /// Sum of intersection numbers of the components with `c`.
    pub fn intersection_with(&self, c: &Curve) -> Result<usize> {
        let mut n = 0;
        for d in &self.curves {
            n += d.intersection(c)?;
        }
        Ok(n)
    }

    pub fn intersection(&self, other: &Multicurve) -> Result<usize> {
        let mut n = 0;
        for c in &other.curves {
            n += self.intersection_with(c)?;
        }
        Ok(n)
    }

    /// Complementary pieces.
    pub fn cut(&self) -> CutSurface {
        let ctx = surface(self.sig).expect("multicurve surfaces are supported");
        let arr = Arrangement::new(Realization::new(&ctx.fg, self.lifts.clone()));
        cut_pieces(&arr, &vec![true; self.lifts.len()], self.sig.is_closed()).0
    }

    /// At least two complementary pieces are essential.
    pub fn is_separating(&self) -> bool {
        !self.is_empty() && self.cut().essential().count() >= 2
    }

    /// Maximal: every piece is a pair of pants.
    pub fn is_pants_decomposition(&self) -> bool {
        self.len() as i64 == self.sig.complexity()
            && self.cut().pieces.iter().all(|p| p.sig == SurfaceSig::new(0, 3))
    }

    /// Line in the curve file format.
    pub fn to_line(&self) -> String {
        let w: Vec<String> = self.weights().iter().map(|x| x.to_string()).collect();
        format!("surface={},{} tri={} w=[{}]", self.sig.genus, self.sig.boundary, DATA_VERSION, w.join(","))
    }

    /// Parses a line of the curve file format.
    pub fn parse_line(line: &str) -> Result<Canonicalized> {
        let mut sig = None;
        let mut version = None;
        let mut weights = None;
        for tok in line.split_whitespace() {
            if let Some(v) = tok.strip_prefix("surface=") {
                sig = Some(v.parse::<SurfaceSig>()?);
            } else if let Some(v) = tok.strip_prefix("tri=") {
                version = Some(v.to_string());
            } else if let Some(v) = tok.strip_prefix("w=") {
                let inner = v.trim_start_matches('[').trim_end_matches(']');
                let parsed: std::result::Result<Vec<u32>, _> =
                    inner.split(',').filter(|s| !s.is_empty()).map(|s| s.trim().parse::<u32>()).collect();
                weights = Some(parsed.map_err(|e| Error::Parse(format!("bad weight: {e}")))?);
            } else {
                return Err(Error::Parse(format!("unexpected token {tok:?}")));
            }
        }
        let sig = sig.ok_or_else(|| Error::Parse("missing surface=".into()))?;
        let version = version.ok_or_else(|| Error::Parse("missing tri=".into()))?;
        let weights = weights.ok_or_else(|| Error::Parse("missing w=".into()))?;
        if version != DATA_VERSION {
            return Err(Error::MixedTriangulations);
        }
        canonicalize(&surface(sig)?.tri, &weights)
    }
}

impl PartialEq for Multicurve {
    fn eq(&self, other: &Self) -> bool {
        self.sig == other.sig && self.curves == other.curves
    }
}

impl Eq for Multicurve {}

impl Hash for Multicurve {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.sig.hash(state);
        self.curves.hash(state);
    }
}

impl PartialOrd for Multicurve {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Multicurve {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.sig, &self.curves).cmp(&(other.sig, &other.curves))
    }
}

impl fmt::Debug for Multicurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Multicurve({} {{{}}})", self.sig, self.curves.iter().map(|c| c.name()).collect::<Vec<_>>().join(", "))
    }
}

/// Result of canonicalizing a raw weight vector.
#[derive(Debug, Clone)]
pub struct Canonicalized {
    pub multicurve: Multicurve,
    /// Peripheral or trivial components that were dropped.
    pub stripped: usize,
    /// Parallel copies merged into one component.
    pub merged: usize,
}

/// Validates a weight vector on `tri`, splits it into components, strips
/// peripheral ones and merges parallel copies.
pub fn canonicalize(tri: &ReferenceTriangulation, raw: &[u32]) -> Result<Canonicalized> {
    let ctx = surface(tri.sig())?;
    if tri.version != ctx.tri.version || tri.triangles != ctx.tri.triangles || tri.gluings != ctx.tri.gluings {
        return Err(Error::MixedTriangulations);
    }
    let words = normal::trace(&ctx.fg, raw)?;
    let total = words.len();
    let mut curves = Vec::new();
    let mut stripped = 0;
    for w in &words {
        if ctx.is_peripheral(w) {
            stripped += 1;
            continue;
        }
        curves.push(ctx.curve(w)?);
    }
    if curves.is_empty() {
        return Err(Error::EmptyAfterReduction);
    }
    let kept = curves.len();
    let multicurve = Multicurve::new(tri.sig(), curves)?;
    let merged = kept - multicurve.len();
    debug_assert_eq!(total, stripped + kept);
    Ok(Canonicalized { multicurve, stripped, merged })
}

/// Marking used in the shipped data: short simple curves on punctured
/// surfaces; on the closed surface, a pants decomposition with a dual
/// curve and its twist for each pants curve.
pub fn generate_reference(sig: SurfaceSig) -> Result<ReferenceTriangulation> {
    let fg = FatGraph::new(sig)?;
    let peripheral: BTreeSet<Vec<Letter>> =
        (0..fg.punctures().len()).map(|p| canonical(&fg.peripheral_word(p))).collect();
    let simple = |w: &[Letter]| -> bool {
        let w = reduce_cyclic(w);
        !w.is_empty()
            && is_primitive(&w)
            && !peripheral.contains(&canonical(&w))
            && Realization::new(&fg, vec![w.clone()]).crossings(0, 0) == 0
    };
    let words: Vec<Vec<Letter>> = if sig.is_closed() {
        let p = |t: &str| fg.parse_word(t).expect("fixed marking words parse");
        let (a, b, c, d, s) = (p("a"), p("b"), p("c"), p("d"), p("abAB"));
        let mut dual = None;
        for w in short_words(&fg, 4) {
            if !simple(&w) {
                continue;
            }
            let i = |y: &[Letter]| descend(&fg, &w, y).1;
            if i(&a) == 0 && i(&c) == 0 && i(&s) == 2 {
                dual = Some(w);
                break;
            }
        }
        let e = dual.ok_or_else(|| Error::Data("no dual curve for the separating marking curve".into()))?;
        vec![
            a.clone(),
            b.clone(),
            twist_word(&fg, &a, &b, 1),
            c.clone(),
            d.clone(),
            twist_word(&fg, &c, &d, 1),
            s.clone(),
            e.clone(),
            twist_word(&fg, &s, &e, 1),
        ]
    } else {
        let mut seen = BTreeSet::new();
        short_words(&fg, 2).into_iter().filter(|w| simple(w) && seen.insert(canonical(w))).map(|w| canonical(&w)).collect()
    };
    let marking = words.iter().map(|w| normal::weights(&fg, std::slice::from_ref(w))).collect();
    Ok(normal::reference(&fg, marking))
}

/// Cyclically reduced words of length 1 to `max_len`, in shortlex order.
pub fn short_words(fg: &FatGraph, max_len: usize) -> Vec<Vec<Letter>> {
    let n = fg.letter_count() as Letter;
    let mut out = Vec::new();
    let mut layer: Vec<Vec<Letter>> = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &layer {
            for x in 0..n {
                if w.last() == Some(&(x ^ 1)) {
                    continue;
                }
                let mut v = w.clone();
                v.push(x);
                next.push(v);
            }
        }
        for w in &next {
            if w.len() == 1 || w[0] != (w[w.len() - 1] ^ 1) {
                out.push(w.clone());
            }
        }
        layer = next;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(g: u32, n: u32) -> &'static Surface {
        surface(SurfaceSig::new(g, n)).unwrap()
    }

    #[test]
    fn shipped_data_matches_generator() {
        for sig in SUPPORTED {
            let t = generate_reference(sig).unwrap();
            assert_eq!(t, ReferenceTriangulation::from_json(shipped(sig)).unwrap(), "{sig}");
        }
    }

    #[test]
    fn torus_generators() {
        let t = s(1, 1);
        let a = t.parse("a").unwrap();
        let b = t.parse("b").unwrap();
        assert_eq!(a.intersection(&b).unwrap(), 1);
        assert_eq!(a.intersection(&a).unwrap(), 0);
        assert!(t.parse("aBAb").is_err());
        assert!(t.parse("aabb").is_err());
    }

    #[test]
    fn cut_signatures() {
        let t = s(2, 1);
        let sep = Multicurve::single(t.parse("abAB").unwrap());
        let mut sigs: Vec<SurfaceSig> = sep.cut().pieces.iter().map(|p| p.sig).collect();
        sigs.sort();
        assert_eq!(sigs, vec![SurfaceSig::new(1, 1), SurfaceSig::new(1, 2)]);
        assert!(sep.is_separating());
        let c = s(2, 0);
        let nonsep = Multicurve::single(c.parse("a").unwrap());
        assert_eq!(nonsep.cut().pieces.iter().map(|p| p.sig).collect::<Vec<_>>(), vec![SurfaceSig::new(1, 2)]);
        assert!(!nonsep.is_separating());
        assert!(c.parse("abAB").unwrap().is_separating());
    }

    #[test]
    fn canonicalize_rejects_empty_and_odd() {
        let t = s(1, 1);
        assert!(matches!(canonicalize(&t.tri, &[0, 0, 0]), Err(Error::EmptyAfterReduction)));
        assert!(matches!(canonicalize(&t.tri, &[1, 0, 0]), Err(Error::NotAdmissible(_))));
        let c = canonicalize(&t.tri, &[1, 1, 0]).unwrap();
        assert_eq!(c.multicurve.len(), 1);
    }

    #[test]
    fn line_roundtrip() {
        let t = s(2, 1);
        let m = Multicurve::new(t.sig, vec![t.parse("a").unwrap(), t.parse("c").unwrap()]).unwrap();
        let back = Multicurve::parse_line(&m.to_line()).unwrap();
        assert_eq!(back.multicurve, m);
    }
}
