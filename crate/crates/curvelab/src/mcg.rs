//! Mapping classes as words in Dehn twists and point pushes, the lift and
//! forgetful maps between the once-punctured and closed genus-two
//! surfaces, bigon surgery within a fiber, and the pseudo-Anosov seed.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::OnceLock;

use crate::closed::surgery_step;
use crate::curve::{check_same, surface, Curve, Multicurve};
use crate::error::{Error, Result};
use crate::surface::{FatGraph, SurfaceSig};
use crate::twist::twist_word;
use crate::word::{canonical, inverse, reduce_cyclic, Letter};

/// The punctured carrier and its closed quotient.
pub const UPSTAIRS: SurfaceSig = SurfaceSig { genus: 2, boundary: 1 };
pub const DOWNSTAIRS: SurfaceSig = SurfaceSig { genus: 2, boundary: 0 };

/// A loop based at the puncture of the genus-two carrier: an arc leaving
/// polygon corner `start`, crossing the sides named by `letters`, and
/// arriving at corner `end`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PushLoop {
    pub start: usize,
    pub letters: Vec<Letter>,
    pub end: usize,
}

impl PushLoop {
    /// Parses `start:word:end`, e.g. `0:aB:3`.
    pub fn parse(text: &str) -> Result<Self> {
        let fg = &surface(UPSTAIRS)?.fg;
        let parts: Vec<&str> = text.split(':').collect();
        if parts.len() != 3 {
            return Err(Error::Parse(format!("loop {text:?} is not start:word:end")));
        }
        let corner = |s: &str| -> Result<usize> {
            let k: usize = s.parse().map_err(|_| Error::Parse(format!("bad corner {s:?}")))?;
            if k >= fg.sides() {
                return Err(Error::Parse(format!("corner {k} out of range")));
            }
            Ok(k)
        };
        let letters = if parts[1].is_empty() { Vec::new() } else { fg.parse_word(parts[1])? };
        Ok(PushLoop { start: corner(parts[0])?, letters, end: corner(parts[2])? })
    }

    /// Words of the two boundary curves of a regular neighbourhood of the
    /// loop together with the puncture.
    pub fn push_off_words(&self) -> Result<(Vec<Letter>, Vec<Letter>)> {
        let fg = &surface(UPSTAIRS)?.fg;
        // Corner-to-corner path around the puncture; `full` walks the whole
        // cycle when the corners agree.
        let around = |from: usize, to: usize, full: bool| -> Vec<Letter> {
            let mut out = Vec::new();
            let mut k = from;
            while k != to || (full && out.is_empty()) {
                out.push(fg.side_letter(k));
                k = fg.corner_next(k);
            }
            out
        };
        let mut plus = self.letters.clone();
        plus.extend(around(self.end, self.start, false));
        let mut minus = self.letters.clone();
        minus.extend(inverse(&around(self.start, self.end, true)));
        Ok((reduce_cyclic(&plus), reduce_cyclic(&minus)))
    }

    /// The push-off curves `(plus, minus)`, or `None` for a loop that is
    /// null-homotopic.
    pub fn push_offs(&self) -> Result<Option<(Curve, Curve)>> {
        let ctx = surface(UPSTAIRS)?;
        let (p, m) = self.push_off_words()?;
        match (ctx.curve(&p), ctx.curve(&m)) {
            (Ok(p), Ok(m)) => {
                if p == m {
                    return Ok(None);
                }
                if p.intersection(&m)? != 0 {
                    return Err(Error::NotSimpleLoop);
                }
                Ok(Some((p, m)))
            }
            (Err(_), Err(_)) if inessential(&p) && inessential(&m) => Ok(None),
            _ => Err(Error::NotSimpleLoop),
        }
    }
}

/// True for the trivial word and for powers of the peripheral loop.
fn inessential(w: &[Letter]) -> bool {
    let Ok(ctx) = surface(UPSTAIRS) else { return false };
    let w = reduce_cyclic(w);
    if w.is_empty() {
        return true;
    }
    let per = ctx.fg.peripheral_word(0);
    [canonical(&per), canonical(&inverse(&per))].contains(&canonical(&w))
}

impl fmt::Display for PushLoop {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}", self.start, FatGraph::format_word(&self.letters), self.end)
    }
}

/// What a letter of a twist word does.
#[derive(Debug, Clone)]
pub enum MoveKind {
    /// Dehn twist about a curve.
    Twist(Curve),
    /// Point push: twist about `plus` composed with the inverse twist
    /// about `minus`.
    Push { plus: Curve, minus: Curve },
}

/// One signed letter of a twist word.
#[derive(Debug, Clone)]
pub struct Move {
    pub id: String,
    pub kind: MoveKind,
    pub exp: i32,
}

impl Move {
    pub fn twist(id: impl Into<String>, curve: Curve, exp: i32) -> Self {
        Move { id: id.into(), kind: MoveKind::Twist(curve), exp }
    }

    fn sig(&self) -> SurfaceSig {
        match &self.kind {
            MoveKind::Twist(c) => c.sig(),
            MoveKind::Push { plus, .. } => plus.sig(),
        }
    }

    fn apply_word(&self, fg: &FatGraph, w: &[Letter]) -> Vec<Letter> {
        match &self.kind {
            MoveKind::Twist(c) => twist_word(fg, c.word(), w, self.exp),
            MoveKind::Push { plus, minus } => {
                let w = twist_word(fg, minus.word(), w, -self.exp);
                twist_word(fg, plus.word(), &w, self.exp)
            }
        }
    }
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match self.kind {
            MoveKind::Twist(_) => 'T',
            MoveKind::Push { .. } => 'P',
        };
        write!(f, "{tag}[{}]^{}", self.id, self.exp)
    }
}

/// A mapping class as a product of twists and pushes, composed right to
/// left: the last letter acts first.
#[derive(Debug, Clone)]
pub struct TwistWord {
    sig: SurfaceSig,
    moves: Vec<Move>,
}

impl TwistWord {
    pub fn identity(sig: SurfaceSig) -> Self {
        TwistWord { sig, moves: Vec::new() }
    }

    /// Word with the given letters, written left to right. Zero exponents
    /// are dropped.
    pub fn new(sig: SurfaceSig, moves: Vec<Move>) -> Result<Self> {
        for m in &moves {
            check_same(sig, m.sig())?;
        }
        Ok(TwistWord { sig, moves: moves.into_iter().filter(|m| m.exp != 0).collect() })
    }

    pub fn sig(&self) -> SurfaceSig {
        self.sig
    }

    pub fn moves(&self) -> &[Move] {
        &self.moves
    }

    pub fn len(&self) -> usize {
        self.moves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.moves.is_empty()
    }

    /// `self ∘ other`: `other` acts first.
    pub fn compose(&self, other: &TwistWord) -> Result<Self> {
        check_same(self.sig, other.sig)?;
        let mut moves = self.moves.clone();
        moves.extend(other.moves.iter().cloned());
        Ok(TwistWord { sig: self.sig, moves })
    }

    pub fn inverse(&self) -> Self {
        let moves = self.moves.iter().rev().map(|m| Move { exp: -m.exp, ..m.clone() }).collect();
        TwistWord { sig: self.sig, moves }
    }

    /// The `n`-th power; negative powers use the inverse.
    pub fn pow(&self, n: i32) -> Self {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut moves = Vec::with_capacity(base.moves.len() * n.unsigned_abs() as usize);
        for _ in 0..n.unsigned_abs() {
            moves.extend(base.moves.iter().cloned());
        }
        TwistWord { sig: self.sig, moves }
    }

    /// Image of a carrier word; for the closed surface any lift works.
    pub fn apply_word(&self, w: &[Letter]) -> Result<Vec<Letter>> {
        let fg = &surface(self.sig)?.fg;
        let mut cur = w.to_vec();
        for m in self.moves.iter().rev() {
            cur = m.apply_word(fg, &cur);
        }
        Ok(cur)
    }

    /// Image of a curve.
    pub fn apply(&self, c: &Curve) -> Result<Curve> {
        check_same(self.sig, c.sig())?;
        if self.moves.is_empty() {
            return Ok(c.clone());
        }
        surface(self.sig)?.curve(&self.apply_word(c.word())?)
    }

    /// Image of a multicurve, componentwise.
    pub fn apply_multicurve(&self, m: &Multicurve) -> Result<Multicurve> {
        check_same(self.sig, m.sig())?;
        let curves = m.curves().iter().map(|c| self.apply(c)).collect::<Result<Vec<_>>>()?;
        Multicurve::new(self.sig, curves)
    }

    /// Parses letters `T[id]^e` and `P[id]^e` against a curve library.
    pub fn parse(text: &str, lib: &CurveLibrary) -> Result<Self> {
        let mut moves = Vec::new();
        let mut sig = None;
        for tok in text.split_whitespace() {
            let bad = || Error::Parse(format!("bad twist letter {tok:?}"));
            let (tag, rest) = tok.split_at(1);
            let rest = rest.strip_prefix('[').ok_or_else(bad)?;
            let (id, tail) = rest.split_once(']').ok_or_else(bad)?;
            let exp = match tail.strip_prefix('^') {
                Some(e) => e.parse::<i32>().map_err(|_| bad())?,
                None if tail.is_empty() => 1,
                None => return Err(bad()),
            };
            let m = match tag {
                "T" => Move::twist(id, lib.curve(id)?.clone(), exp),
                "P" => {
                    let lp = lib.push_loop(id)?;
                    match lp.push_offs()? {
                        Some((plus, minus)) => Move { id: id.to_string(), kind: MoveKind::Push { plus, minus }, exp },
                        None => continue,
                    }
                }
                _ => return Err(bad()),
            };
            let s = *sig.get_or_insert(m.sig());
            check_same(s, m.sig())?;
            moves.push(m);
        }
        TwistWord::new(sig.unwrap_or(UPSTAIRS), moves)
    }
}

impl fmt::Display for TwistWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.moves.iter().map(|m| m.to_string()).collect();
        f.write_str(&parts.join(" "))
    }
}

/// The point push along `lp`, or the identity for a null-homotopic loop.
pub fn point_push(id: &str, lp: &PushLoop, exp: i32) -> Result<TwistWord> {
    match lp.push_offs()? {
        None => Ok(TwistWord::identity(UPSTAIRS)),
        Some((plus, minus)) => {
            TwistWord::new(UPSTAIRS, vec![Move { id: id.to_string(), kind: MoveKind::Push { plus, minus }, exp }])
        }
    }
}

/// Image of a curve on the punctured carrier after filling the puncture.
pub fn forget_boundary(c: &Curve) -> Result<Curve> {
    check_same(UPSTAIRS, c.sig())?;
    surface(DOWNSTAIRS)?.curve(c.word())
}

/// Componentwise image of a multicurve; components that become parallel
/// are merged.
pub fn forget_boundary_multicurve(m: &Multicurve) -> Result<Multicurve> {
    check_same(UPSTAIRS, m.sig())?;
    let curves = m.curves().iter().map(forget_boundary).collect::<Result<Vec<_>>>()?;
    Multicurve::new(DOWNSTAIRS, curves)
}

/// The stored carrier lift of a closed-surface curve.
pub fn lift_curve(c: &Curve) -> Result<Curve> {
    check_same(DOWNSTAIRS, c.sig())?;
    surface(UPSTAIRS)?.curve(c.word())
}

/// Lift of a multicurve using its disjointly realized carrier words.
pub fn lift_multicurve(m: &Multicurve) -> Result<Multicurve> {
    check_same(DOWNSTAIRS, m.sig())?;
    let ctx = surface(UPSTAIRS)?;
    let curves = m.lifts().iter().map(|w| ctx.curve(w)).collect::<Result<Vec<_>>>()?;
    Multicurve::new(UPSTAIRS, curves)
}

/// One bigon surgery of `a` against `b` on the punctured carrier, across
/// the bigon containing the puncture. The result is disjoint from `a` and
/// meets `b` in at most `i(a, b) - 2` points. With `fiber_guard` the two
/// curves must have the same image downstairs, and the result keeps it.
pub fn bigon_surgery_step(a: &Curve, b: &Curve, fiber_guard: bool) -> Result<Curve> {
    check_same(UPSTAIRS, a.sig())?;
    check_same(UPSTAIRS, b.sig())?;
    let before = a.intersection(b)?;
    if before == 0 {
        return Err(Error::AlreadyDisjoint);
    }
    let fiber = if fiber_guard {
        let fa = forget_boundary(a)?;
        if fa != forget_boundary(b)? {
            return Err(Error::DifferentFibers);
        }
        Some(fa)
    } else {
        None
    };
    let ctx = surface(UPSTAIRS)?;
    let w = surgery_step(&ctx.fg, a.word(), b.word()).ok_or(Error::NoAdmissibleBigon)?;
    let next = ctx.curve(&w).map_err(|_| Error::NoAdmissibleBigon)?;
    // The pushed representative meets `b` in two fewer points; pulling it
    // tight can remove more, never an odd number.
    let after = next.intersection(b)?;
    if after + 2 > before || (before - after) % 2 != 0 || next.intersection(a)? != 0 {
        return Err(Error::NoAdmissibleBigon);
    }
    if let Some(fa) = fiber {
        if forget_boundary(&next)? != fa {
            return Err(Error::NoAdmissibleBigon);
        }
    }
    Ok(next)
}

/// Named curves and push loops shipped with the crate.
#[derive(Debug, Clone, Default)]
pub struct CurveLibrary {
    curves: BTreeMap<String, Curve>,
    loops: BTreeMap<String, PushLoop>,
}

impl CurveLibrary {
    /// Parses lines `id surface=g,n tri=v w=[...]` and
    /// `id surface=2,1 loop=start:word:end`; `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lib = CurveLibrary::default();
        for line in text.lines() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (id, rest) = line.split_once(char::is_whitespace).ok_or_else(|| Error::Parse(line.into()))?;
            let rest = rest.trim();
            if lib.curves.contains_key(id) || lib.loops.contains_key(id) {
                return Err(Error::Parse(format!("duplicate id {id:?}")));
            }
            if let Some(pos) = rest.find("loop=") {
                let sig: SurfaceSig = rest[..pos]
                    .trim()
                    .strip_prefix("surface=")
                    .ok_or_else(|| Error::Parse(format!("loop {id:?} lacks surface=")))?
                    .parse()?;
                check_same(UPSTAIRS, sig)?;
                lib.loops.insert(id.to_string(), PushLoop::parse(&rest[pos + 5..])?);
            } else {
                let m = Multicurve::parse_line(rest)?.multicurve;
                if m.len() != 1 {
                    return Err(Error::Parse(format!("curve {id:?} has {} components", m.len())));
                }
                lib.curves.insert(id.to_string(), m.curves()[0].clone());
            }
        }
        Ok(lib)
    }

    pub fn curve(&self, id: &str) -> Result<&Curve> {
        self.curves.get(id).ok_or_else(|| Error::Parse(format!("unknown curve id {id:?}")))
    }

    pub fn push_loop(&self, id: &str) -> Result<&PushLoop> {
        self.loops.get(id).ok_or_else(|| Error::Parse(format!("unknown loop id {id:?}")))
    }

    pub fn curve_ids(&self) -> impl Iterator<Item = &str> {
        self.curves.keys().map(String::as_str)
    }

    pub fn loop_ids(&self) -> impl Iterator<Item = &str> {
        self.loops.keys().map(String::as_str)
    }
}

/// The shipped curve library.
pub fn library() -> Result<&'static CurveLibrary> {
    static LIB: OnceLock<std::result::Result<CurveLibrary, Error>> = OnceLock::new();
    LIB.get_or_init(|| CurveLibrary::parse(include_str!("../data/curves.txt"))).as_ref().map_err(Clone::clone)
}

/// Twisting curves of the pseudo-Anosov, in the order they act, with
/// their exponents.
pub const SEED_LETTERS: [(&str, i32); 5] = [("a1", 1), ("a2", 1), ("b1", -1), ("b2", -1), ("a3", 1)];

/// The pseudo-Anosov on the closed surface, its lift to the punctured
/// carrier, and the separating curve its axis is built from.
#[derive(Debug, Clone)]
pub struct Seed {
    pub down: TwistWord,
    pub up: TwistWord,
    pub alpha0: Curve,
}

impl Seed {
    /// `α_j = f̄^j(α_0)` downstairs.
    pub fn alpha(&self, j: i32) -> Result<Curve> {
        self.down.pow(j).apply(&self.alpha0)
    }
}

/// Builds the seed from the library and checks that the stored separating
/// curve meets its first image four times.
pub fn pseudo_anosov_seed() -> Result<Seed> {
    let lib = library()?;
    let mut down = Vec::new();
    let mut up = Vec::new();
    // Written left to right, so the first-acting letter goes last.
    for &(id, exp) in SEED_LETTERS.iter().rev() {
        let c = lib.curve(id)?;
        down.push(Move::twist(id, c.clone(), exp));
        up.push(Move::twist(id, lift_curve(c)?, exp));
    }
    let down = TwistWord::new(DOWNSTAIRS, down)?;
    let up = TwistWord::new(UPSTAIRS, up)?;
    let alpha0 = lib.curve("alpha0")?.clone();
    if !alpha0.is_separating() {
        return Err(Error::Data("alpha0 is not separating".into()));
    }
    let i = down.apply(&alpha0)?.intersection(&alpha0)?;
    if i != 4 {
        return Err(Error::WrongIntersection { expected: 4, found: i });
    }
    Ok(Seed { down, up, alpha0 })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn up(w: &str) -> Curve {
        surface(UPSTAIRS).unwrap().parse(w).unwrap()
    }

    #[test]
    fn twist_word_round_trips_through_text() {
        let lib = library().unwrap();
        let seed = pseudo_anosov_seed().unwrap();
        let text = seed.down.to_string();
        assert_eq!(text, "T[a3]^1 T[b2]^-1 T[b1]^-1 T[a2]^1 T[a1]^1");
        let back = TwistWord::parse(&text, lib).unwrap();
        let c = lib.curve("alpha0").unwrap();
        assert_eq!(back.apply(c).unwrap(), seed.down.apply(c).unwrap());
    }

    #[test]
    fn inverse_undoes_word() {
        let seed = pseudo_anosov_seed().unwrap();
        let c = up("aBc");
        let img = seed.up.apply(&c).unwrap();
        assert_ne!(img, c);
        assert_eq!(seed.up.inverse().apply(&img).unwrap(), c);
    }

    #[test]
    fn seed_facts() {
        let seed = pseudo_anosov_seed().unwrap();
        let a1 = seed.alpha(1).unwrap();
        assert!(a1.is_separating());
        assert!(lift_curve(&seed.alpha0).unwrap().is_separating());
    }

    #[test]
    fn null_homotopic_loop_pushes_trivially() {
        let lp = PushLoop { start: 3, letters: Vec::new(), end: 3 };
        assert!(point_push("triv", &lp, 1).unwrap().is_empty());
    }

    #[test]
    fn push_is_trivial_downstairs() {
        let lib = library().unwrap();
        for id in lib.loop_ids() {
            let w = point_push(id, lib.push_loop(id).unwrap(), 1).unwrap();
            for name in ["a", "aBc", "abAB", "cdCD"] {
                let c = up(name);
                let img = w.apply(&c).unwrap();
                assert_eq!(forget_boundary(&img).unwrap(), forget_boundary(&c).unwrap(), "{id} on {name}");
            }
        }
    }

    #[test]
    fn surgery_rejects_disjoint_pairs() {
        let a = up("a");
        let c = up("c");
        assert_eq!(bigon_surgery_step(&a, &c, false), Err(Error::AlreadyDisjoint));
    }
}
