//! Simultaneous minimal-position realization of cyclic words as chord
//! systems in the fat-graph polygon.
//!
//! Strands crossing a polygon edge are ordered by comparing their
//! backward itineraries; the first difference decides which side of the
//! other strand each one arrives on. With this order, two chords cross
//! inside the polygon exactly when their endpoints interleave on the
//! boundary circle, and the total number of crossings is the geometric
//! intersection number.

use std::cmp::Ordering;

use crate::surface::FatGraph;
use crate::word::{inv, Letter};

/// A point on the boundary circle of the polygon.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Point {
    Corner(usize),
    /// `index` counts ccw along `side`; the point is the end of chord
    /// `visit` of `curve` when `exit` is set, else its start.
    Strand { side: usize, index: usize, curve: usize, visit: usize, exit: bool },
}

/// Chords of several curves realized together.
#[derive(Debug, Clone)]
pub struct Realization<'g> {
    pub fg: &'g FatGraph,
    pub words: Vec<Vec<Letter>>,
    side_points: Vec<usize>,
    corner_key: Vec<u32>,
    points: Vec<Point>,
    /// Per curve, per visit `j`: boundary keys of the chord entering after
    /// letter `j - 1` and leaving through letter `j`.
    pub chords: Vec<Vec<(u32, u32)>>,
}

#[inline]
fn at(w: &[Letter], i: isize) -> Letter {
    let n = w.len() as isize;
    w[i.rem_euclid(n) as usize]
}

/// Letter `k` steps away from position `j` along the direction that
/// crosses the edge of `w[j]` positively; negative `k` looks backwards.
#[inline]
fn step(w: &[Letter], j: usize, k: isize) -> Letter {
    if w[j].is_multiple_of(2) {
        at(w, j as isize + k)
    } else {
        inv(at(w, j as isize - k))
    }
}

/// Walks away from the shared crossing of two strands until they diverge.
/// Returns the number of shared steps and the ccw order of the strands on
/// the positive exit side of the edge as seen from that end, or `None` if
/// they never diverge.
fn diverge(
    fg: &FatGraph,
    edge: usize,
    wa: &[Letter],
    a: usize,
    wb: &[Letter],
    b: usize,
    forward: bool,
) -> Option<(usize, Ordering)> {
    let limit = wa.len() + wb.len();
    let dir: isize = if forward { 1 } else { -1 };
    let mut cur = (2 * edge) as Letter;
    for k in 1..=limit {
        let ya = step(wa, a, dir * k as isize);
        let yb = step(wb, b, dir * k as isize);
        if ya != yb {
            // Chords leave the shared side `s`; the one turning less far
            // ccw sits further along `s`.
            let (s, ta, tb) = if forward {
                (fg.side_of(inv(cur)), fg.side_of(ya), fg.side_of(yb))
            } else {
                (fg.side_of(cur), fg.side_of(inv(ya)), fg.side_of(inv(yb)))
            };
            let ord = if fg.side_gap(s, ta) < fg.side_gap(s, tb) {
                Ordering::Greater
            } else {
                Ordering::Less
            };
            // Forward walks measure along the entry side, which is glued
            // with reversed orientation.
            return Some((k - 1, if forward { ord.reverse() } else { ord }));
        }
        cur = ya;
    }
    None
}

/// Order of two strands on `edge`, measured ccw along the side through
/// which positive crossings leave.
///
/// Two strands sharing a run of edges stay parallel along it; if they must
/// cross, the crossing is placed at the middle of the run. This choice only
/// depends on the pair of strands, so every pair crosses at most once.
fn compare_strands(
    fg: &FatGraph,
    edge: usize,
    words: &[Vec<Letter>],
    a: (usize, usize),
    b: (usize, usize),
) -> Ordering {
    let wa = &words[a.0];
    let wb = &words[b.0];
    let back = diverge(fg, edge, wa, a.1, wb, b.1, false);
    let fwd = diverge(fg, edge, wa, a.1, wb, b.1, true);
    match (back, fwd) {
        (Some((kb, ob)), Some((kf, of))) => {
            if ob == of || kb <= kf {
                ob
            } else {
                of
            }
        }
        _ => {
            // Parallel copies of one class: order them consistently along
            // the curves' own direction.
            let own = a.cmp(&b);
            if wa[a.1].is_multiple_of(2) {
                own
            } else {
                own.reverse()
            }
        }
    }
}

impl<'g> Realization<'g> {
    /// Realizes cyclically reduced words. Distinct entries must be
    /// distinct primitive classes for the result to be in minimal position.
    pub fn new(fg: &'g FatGraph, words: Vec<Vec<Letter>>) -> Self {
        let r = fg.rank();
        let mut per_edge: Vec<Vec<(usize, usize)>> = vec![Vec::new(); r];
        for (c, w) in words.iter().enumerate() {
            for (j, &x) in w.iter().enumerate() {
                per_edge[(x / 2) as usize].push((c, j));
            }
        }
        let mut rank: Vec<Vec<usize>> = words.iter().map(|w| vec![0; w.len()]).collect();
        for (e, strands) in per_edge.iter_mut().enumerate() {
            strands.sort_by(|&a, &b| compare_strands(fg, e, &words, a, b));
            for (rho, &(c, j)) in strands.iter().enumerate() {
                rank[c][j] = rho;
            }
        }
        let m = fg.sides();
        let side_points: Vec<usize> =
            (0..m).map(|s| per_edge[(fg.side_letter(s) / 2) as usize].len()).collect();
        let mut corner_key = Vec::with_capacity(m);
        let mut key = 0u32;
        for &n in &side_points {
            corner_key.push(key);
            key += 1 + n as u32;
        }
        let mut points = vec![Point::Corner(0); key as usize];
        for s in 0..m {
            points[corner_key[s] as usize] = Point::Corner(s);
        }
        let mut exit_key: Vec<Vec<u32>> = words.iter().map(|w| vec![0; w.len()]).collect();
        let mut entry_key: Vec<Vec<u32>> = words.iter().map(|w| vec![0; w.len()]).collect();
        for (c, w) in words.iter().enumerate() {
            let len = w.len();
            for (j, &x) in w.iter().enumerate() {
                let rho = rank[c][j];
                let n = per_edge[(x / 2) as usize].len();
                let (ex_idx, en_idx) = if x % 2 == 0 { (rho, n - 1 - rho) } else { (n - 1 - rho, rho) };
                let ex_side = fg.side_of(x);
                let en_side = fg.side_of(inv(x));
                let ek = corner_key[ex_side] + 1 + ex_idx as u32;
                let nk = corner_key[en_side] + 1 + en_idx as u32;
                exit_key[c][j] = ek;
                entry_key[c][j] = nk;
                points[ek as usize] =
                    Point::Strand { side: ex_side, index: ex_idx, curve: c, visit: j, exit: true };
                points[nk as usize] = Point::Strand {
                    side: en_side,
                    index: en_idx,
                    curve: c,
                    visit: (j + 1) % len,
                    exit: false,
                };
            }
        }
        let chords = words
            .iter()
            .enumerate()
            .map(|(c, w)| {
                let len = w.len();
                (0..len).map(|j| (entry_key[c][(j + len - 1) % len], exit_key[c][j])).collect()
            })
            .collect();
        Realization { fg, words, side_points, corner_key, points, chords }
    }

    pub fn total_points(&self) -> usize {
        self.points.len()
    }

    pub fn point(&self, key: u32) -> Point {
        self.points[key as usize]
    }

    pub fn corner_key(&self, side: usize) -> u32 {
        self.corner_key[side]
    }

    pub fn side_points(&self, side: usize) -> usize {
        self.side_points[side]
    }

    /// Number of crossings between curves `a` and `b`, or self-crossings
    /// when `a == b`.
    pub fn crossings(&self, a: usize, b: usize) -> usize {
        let ca = &self.chords[a];
        let cb = &self.chords[b];
        let mut count = 0;
        if a == b {
            for i in 0..ca.len() {
                for j in i + 1..ca.len() {
                    count += usize::from(chords_cross(ca[i], ca[j]));
                }
            }
        } else {
            for &x in ca {
                for &y in cb {
                    count += usize::from(chords_cross(x, y));
                }
            }
        }
        count
    }

    /// True if the realized curves have no crossings at all.
    pub fn is_embedded(&self) -> bool {
        let all: Vec<(u32, u32)> = self.chords.iter().flatten().copied().collect();
        (0..all.len()).all(|i| (i + 1..all.len()).all(|j| !chords_cross(all[i], all[j])))
    }
}

/// Two chords with distinct endpoints cross iff their endpoints interleave.
#[inline]
pub fn chords_cross(x: (u32, u32), y: (u32, u32)) -> bool {
    let (lo, hi) = if x.0 < x.1 { (x.0, x.1) } else { (x.1, x.0) };
    let in0 = lo < y.0 && y.0 < hi;
    let in1 = lo < y.1 && y.1 < hi;
    in0 != in1
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::SurfaceSig;

    fn fg(g: u32, n: u32) -> FatGraph {
        FatGraph::new(SurfaceSig::new(g, n)).unwrap()
    }

    #[test]
    fn torus_generators_meet_once() {
        let f = fg(1, 1);
        let a = f.parse_word("a").unwrap();
        let b = f.parse_word("b").unwrap();
        let r = Realization::new(&f, vec![a, b]);
        assert_eq!(r.crossings(0, 1), 1);
        assert_eq!(r.crossings(0, 0), 0);
    }

    #[test]
    fn torus_slopes() {
        let f = fg(1, 1);
        // slope 1/1 is ab, slope 2/1 is aab
        let ab = f.parse_word("ab").unwrap();
        let aab = f.parse_word("aab").unwrap();
        let a = f.parse_word("a").unwrap();
        let r = Realization::new(&f, vec![ab.clone(), aab.clone(), a]);
        assert_eq!(r.crossings(0, 1), 1);
        assert_eq!(r.crossings(1, 2), 1);
        assert_eq!(r.crossings(0, 0), 0);
        assert_eq!(r.crossings(1, 1), 0);
    }

    #[test]
    fn figure_eight_self_crosses() {
        let f = fg(1, 1);
        let w = f.parse_word("aabb").unwrap();
        let r = Realization::new(&f, vec![w]);
        assert!(r.crossings(0, 0) >= 1);
    }

    #[test]
    fn strand_order_is_total() {
        let f = fg(2, 1);
        let words: Vec<Vec<Letter>> = ["bcbcDCbcbcD", "DcDcbcDcDcbcDcDcbcDcDcbcDCdCdCbc", "abAB", "acdd"]
            .iter()
            .map(|w| f.parse_word(w).unwrap())
            .collect();
        for e in 0..f.rank() {
            let strands: Vec<(usize, usize)> = words
                .iter()
                .enumerate()
                .flat_map(|(c, w)| w.iter().enumerate().filter(move |(_, &x)| (x / 2) as usize == e).map(move |(j, _)| (c, j)))
                .collect();
            let cmp = |a, b| compare_strands(&f, e, &words, a, b);
            for &a in &strands {
                for &b in &strands {
                    assert_eq!(cmp(a, b), cmp(b, a).reverse());
                    for &c in &strands {
                        if cmp(a, b) == Ordering::Less && cmp(b, c) == Ordering::Less {
                            assert_eq!(cmp(a, c), Ordering::Less);
                        }
                    }
                }
            }
        }
    }
}
