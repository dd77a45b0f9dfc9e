//! Curves on the closed genus-two surface, carried as curves on the
//! once-punctured carrier.
//!
//! Two carrier curves in minimal position can still fail to be minimal
//! once the puncture is filled; the only obstruction is a bigon that
//! contains the puncture. Pushing one curve across such a bigon removes
//! two crossings without changing its class downstairs, so repeating the
//! surgery computes intersection numbers on the closed surface.

use crate::arrange::{backward_path, forward_path, Arrangement, CurvePos, Cut, HalfKind};
use crate::realize::Realization;
use crate::surface::FatGraph;
use crate::word::{canonical, reduce_cyclic, Letter};

/// Position of crossing vertex `v` on `curve`.
fn vertex_pos(arr: &Arrangement<'_>, v: usize, curve: usize) -> CurvePos {
    let x = arr.vertex_crossing(v).expect("bigon corners are crossings");
    let ch = arr.crossing_chord_on(x, curve).expect("bigon corner lies on both curves");
    arr.crossing_pos(x, ch)
}

fn seg_of(arr: &Arrangement<'_>, h: usize) -> (usize, bool) {
    match arr.kind(h) {
        HalfKind::Seg { chord, forward, .. } => (arr.chord_curve(chord).0, forward),
        HalfKind::Arc { .. } => unreachable!("cycles consist of curve segments"),
    }
}

/// Index of the cycle bounding a once-punctured disk with two corners, if
/// the cut of curves `x` and `y` has one.
pub fn punctured_bigon(arr: &Arrangement<'_>, cut: &Cut) -> Option<usize> {
    let piece = cut.pieces.iter().position(|p| !p.punctures.is_empty())?;
    let p = &cut.pieces[piece];
    if p.genus != 0 || p.punctures.len() != 1 || p.cycles.len() != 1 {
        return None;
    }
    let cyc = p.cycles[0];
    (cut.turns(arr, cyc).len() == 2).then_some(cyc)
}

/// Pushes curve 0 of the arrangement across the bigon bounded by `cycle`,
/// returning the new word of curve 0.
pub fn push_across(arr: &Arrangement<'_>, cut: &Cut, cycle: usize) -> Vec<Letter> {
    let hs = &cut.cycles[cycle].halfedges;
    let turns = cut.turns(arr, cycle);
    let n = hs.len();
    let run = |from: usize, to: usize| -> Vec<usize> {
        let mut out = Vec::new();
        let mut i = (from + 1) % n;
        loop {
            out.push(hs[i]);
            if i == to {
                break;
            }
            i = (i + 1) % n;
        }
        out
    };
    let r1 = run(turns[0], turns[1]);
    let r2 = run(turns[1], turns[0]);
    let (rx, ry) = if seg_of(arr, r1[0]).0 == 0 { (r1, r2) } else { (r2, r1) };
    let fwd_x = seg_of(arr, rx[0]).1;
    let fwd_y = seg_of(arr, ry[0]).1;
    let p = arr.tail(rx[0]);
    let q = arr.head(*rx.last().unwrap());
    let wx = &arr.real.words[0];
    let wy = &arr.real.words[1];
    let (px, qx) = (vertex_pos(arr, p, 0), vertex_pos(arr, q, 0));
    let (py, qy) = (vertex_pos(arr, p, 1), vertex_pos(arr, q, 1));
    let mut out = Vec::new();
    if fwd_x {
        out.extend(forward_path(wx, qx, px));
        if fwd_y {
            out.extend(backward_path(wy, py, qy));
        } else {
            out.extend(forward_path(wy, py, qy));
        }
    } else {
        out.extend(forward_path(wx, px, qx));
        if fwd_y {
            out.extend(forward_path(wy, qy, py));
        } else {
            out.extend(backward_path(wy, qy, py));
        }
    }
    reduce_cyclic(&out)
}

/// One surgery step of `x` against `y` on the carrier, or `None` when no
/// bigon around the puncture remains.
pub fn surgery_step(fg: &FatGraph, x: &[Letter], y: &[Letter]) -> Option<Vec<Letter>> {
    let real = Realization::new(fg, vec![x.to_vec(), y.to_vec()]);
    if real.crossings(0, 1) == 0 {
        return None;
    }
    let arr = Arrangement::new(real);
    let cut = arr.cut(&[true, true]);
    let cyc = punctured_bigon(&arr, &cut)?;
    Some(push_across(&arr, &cut, cyc))
}

/// Repeats surgery of `x` against `y` until no punctured bigon is left.
/// Returns the final representative of `x` and its crossing count with
/// `y`, which is the intersection number after filling the puncture.
pub fn descend(fg: &FatGraph, x: &[Letter], y: &[Letter]) -> (Vec<Letter>, usize) {
    let mut cur = x.to_vec();
    while let Some(next) = surgery_step(fg, &cur, y) {
        cur = next;
    }
    let count = Realization::new(fg, vec![cur.clone(), y.to_vec()]).crossings(0, 1);
    (cur, count)
}

/// Descends `x` against every word of `ys` in turn until no punctured
/// bigon is left with any of them.
pub fn descend_all(fg: &FatGraph, x: &[Letter], ys: &[Vec<Letter>]) -> Vec<Letter> {
    let mut cur = x.to_vec();
    loop {
        let mut moved = false;
        for y in ys {
            if canonical(&cur) == canonical(y) {
                continue;
            }
            while let Some(next) = surgery_step(fg, &cur, y) {
                cur = next;
                moved = true;
            }
        }
        if !moved {
            return cur;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::SurfaceSig;

    #[test]
    fn puncture_slide_is_undone() {
        let fg = FatGraph::new(SurfaceSig::new(2, 1)).unwrap();
        let a = fg.parse_word("a").unwrap();
        // `a` and a copy slid across the puncture are disjoint downstairs.
        let pushed = fg.parse_word("aDCdc").unwrap();
        let real = Realization::new(&fg, vec![pushed.clone(), a.clone()]);
        let upstairs = real.crossings(0, 1);
        let (_, n) = descend(&fg, &pushed, &a);
        assert!(upstairs >= n);
        assert_eq!(n % 2, upstairs % 2);
    }
}
