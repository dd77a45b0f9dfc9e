//! Dehn twists on cyclic words: at every crossing with the twisting curve,
//! the twisted word detours once around that curve, turning left for
//! positive powers and right for negative ones.

use crate::realize::Realization;
use crate::surface::FatGraph;
use crate::word::{canonical, inv, reduce_cyclic, Letter};

/// True if `p` lies strictly inside the ccw arc from `from` to `to`.
fn in_ccw_arc(p: u32, from: u32, to: u32) -> bool {
    if from < to {
        from < p && p < to
    } else {
        p > from || p < to
    }
}

fn ccw_dist(from: u32, to: u32, total: u32) -> u32 {
    (to + total - from) % total
}

/// Image of the curve `x` under the `n`-th power of the twist about `c`.
/// Both words must be cyclically reduced, primitive and simple.
pub fn twist_word(fg: &FatGraph, c: &[Letter], x: &[Letter], n: i32) -> Vec<Letter> {
    if n == 0 || c.is_empty() || canonical(c) == canonical(x) {
        return x.to_vec();
    }
    let real = Realization::new(fg, vec![x.to_vec(), c.to_vec()]);
    let total = real.total_points() as u32;
    let xc = &real.chords[0];
    let cc = &real.chords[1];
    let len_c = c.len();
    let mut out = Vec::with_capacity(x.len() + 4 * len_c);
    for (j, &(p1, q1)) in xc.iter().enumerate() {
        let mut hits: Vec<(u32, usize, bool)> = Vec::new();
        for (k, &(p2, q2)) in cc.iter().enumerate() {
            if !crate::realize::chords_cross((p1, q1), (p2, q2)) {
                continue;
            }
            let right_end = if in_ccw_arc(p2, p1, q1) { p2 } else { q2 };
            let c_points_left = in_ccw_arc(q2, q1, p1);
            hits.push((ccw_dist(p1, right_end, total), k, c_points_left));
        }
        hits.sort_unstable();
        for &(_, k, left) in &hits {
            let forward = left == (n > 0);
            for _ in 0..n.unsigned_abs() {
                if forward {
                    out.extend((0..len_c).map(|t| c[(k + t) % len_c]));
                } else {
                    out.extend((1..=len_c).map(|t| inv(c[(k + len_c - t) % len_c])));
                }
            }
        }
        out.push(x[j]);
    }
    reduce_cyclic(&out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::SurfaceSig;
    use crate::word::canonical;

    #[test]
    fn torus_twist_moves_slope() {
        let fg = FatGraph::new(SurfaceSig::new(1, 1)).unwrap();
        let a = fg.parse_word("a").unwrap();
        let b = fg.parse_word("b").unwrap();
        let t = twist_word(&fg, &a, &b, 1);
        assert_eq!(t.len(), 2);
        let real = Realization::new(&fg, vec![t.clone(), b.clone()]);
        assert_eq!(real.crossings(0, 1), 1);
        let back = twist_word(&fg, &a, &t, -1);
        assert_eq!(canonical(&back), canonical(&b));
    }
}
