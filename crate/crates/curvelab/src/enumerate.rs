//! Bounded enumeration of curves by a sweep over admissible weight
//! vectors, with an independent twist-orbit cross-check.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::curve::{surface, Curve, Fingerprint};
use crate::error::{Error, Result};
use crate::normal;
use crate::surface::SurfaceSig;
use crate::twist::twist_word;

/// Which curves to keep.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CurveFilter {
    All,
    Separating,
    Nonseparating,
}

impl std::str::FromStr for CurveFilter {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "all" => Ok(CurveFilter::All),
            "separating" | "sep" => Ok(CurveFilter::Separating),
            "nonseparating" | "nonsep" => Ok(CurveFilter::Nonseparating),
            _ => Err(Error::Parse(format!("unknown filter {s:?}"))),
        }
    }
}

impl CurveFilter {
    pub fn keeps(&self, c: &Curve) -> bool {
        match self {
            CurveFilter::All => true,
            CurveFilter::Separating => c.is_separating(),
            CurveFilter::Nonseparating => !c.is_separating(),
        }
    }
}

/// Default cap on the number of admissible vectors examined.
pub const DEFAULT_CAP: usize = 5_000_000;

/// Every essential simple closed curve with an admissible weight vector of
/// maximal entry at most `bound`, deduplicated and ordered by (smallest
/// total weight, fingerprint).
pub fn enumerate_curves(sig: SurfaceSig, bound: u32, filter: CurveFilter, cap: usize) -> Result<Vec<Curve>> {
    if bound == 0 {
        return Err(Error::Parse("weight bound must be at least 1".into()));
    }
    let ctx = surface(sig)?;
    let tris = normal::triangles(&ctx.fg);
    let ne = normal::edge_count(&ctx.fg);
    let mut order = Vec::with_capacity(ne);
    let mut seen = vec![false; ne];
    for t in &tris {
        for &e in t {
            if !seen[e] {
                seen[e] = true;
                order.push(e);
            }
        }
    }
    // Triangles checked once their last edge (in `order`) is assigned.
    let pos: Vec<usize> = {
        let mut p = vec![0; ne];
        for (i, &e) in order.iter().enumerate() {
            p[e] = i;
        }
        p
    };
    let mut checks: Vec<Vec<usize>> = vec![Vec::new(); ne];
    for (t, tri) in tris.iter().enumerate() {
        let last = tri.iter().map(|&e| pos[e]).max().unwrap();
        checks[last].push(t);
    }
    let mut w = vec![0u32; ne];
    let mut found: BTreeMap<Fingerprint, (u32, Curve)> = BTreeMap::new();
    let mut visited = 0usize;
    let mut stack: Vec<(usize, u32)> = vec![(0, 0)];
    // Iterative depth-first sweep: (depth, value to try).
    while let Some((depth, val)) = stack.pop() {
        if depth == ne {
            continue;
        }
        if val > bound {
            continue;
        }
        stack.push((depth, val + 1));
        w[order[depth]] = val;
        let ok = checks[depth].iter().all(|&t| {
            let [a, b, c] = tris[t];
            let (x, y, z) = (w[a] as i64, w[b] as i64, w[c] as i64);
            (x + y + z) % 2 == 0 && x <= y + z && y <= x + z && z <= x + y
        });
        if !ok {
            continue;
        }
        if depth + 1 < ne {
            stack.push((depth + 1, 0));
            continue;
        }
        visited += 1;
        if visited > cap {
            return Err(Error::BudgetExceeded(cap));
        }
        if w.iter().all(|&x| x == 0) {
            continue;
        }
        let words = normal::trace(&ctx.fg, &w)?;
        if words.len() != 1 {
            continue;
        }
        let Ok(c) = ctx.curve(&words[0]) else { continue };
        let total: u32 = w.iter().sum();
        found
            .entry(c.fingerprint().clone())
            .and_modify(|e| {
                if total < e.0 {
                    e.0 = total;
                }
            })
            .or_insert((total, c));
    }
    let mut out: Vec<(u32, Curve)> = found.into_values().filter(|(_, c)| filter.keeps(c)).collect();
    out.sort_by(|a, b| (a.0, &a.1).cmp(&(b.0, &b.1)));
    Ok(out.into_iter().map(|(_, c)| c).collect())
}

/// Curves reachable from the marking by single twists about marking
/// curves, exploring curves of maximal weight at most `explore` and
/// keeping those of weight at most `bound`. Only meaningful on punctured
/// surfaces, where the canonical word fixes the weights.
pub fn twist_orbit(sig: SurfaceSig, bound: u32, explore: u32) -> Result<BTreeSet<Curve>> {
    let ctx = surface(sig)?;
    let gens: Vec<Curve> = ctx.marking().iter().map(|m| ctx.curve(m)).collect::<Result<_>>()?;
    let mut seen: BTreeSet<Curve> = BTreeSet::new();
    let mut queue: VecDeque<Curve> = VecDeque::new();
    for g in &gens {
        if g.max_weight() <= explore && seen.insert(g.clone()) {
            queue.push_back(g.clone());
        }
    }
    while let Some(c) = queue.pop_front() {
        for g in &gens {
            for e in [-1, 1] {
                let img = twist_word(&ctx.fg, g.word(), c.word(), e);
                let Ok(d) = ctx.curve(&img) else { continue };
                if d.max_weight() <= explore && seen.insert(d.clone()) {
                    queue.push_back(d);
                }
            }
        }
    }
    Ok(seen.into_iter().filter(|c| c.max_weight() <= bound).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn torus_bound_one_has_three_slopes() {
        let cs = enumerate_curves(SurfaceSig::new(1, 1), 1, CurveFilter::All, DEFAULT_CAP).unwrap();
        assert_eq!(cs.len(), 3);
    }

    #[test]
    fn four_holed_sphere_has_no_separating_curves() {
        let cs = enumerate_curves(SurfaceSig::new(0, 4), 3, CurveFilter::Separating, DEFAULT_CAP).unwrap();
        assert!(cs.is_empty());
    }

    #[test]
    fn cap_is_enforced() {
        let r = enumerate_curves(SurfaceSig::new(2, 1), 2, CurveFilter::All, 10);
        assert!(matches!(r, Err(Error::BudgetExceeded(10))));
    }
}
