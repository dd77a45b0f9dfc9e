//! Fan triangulation of the fat-graph polygon and normal coordinates.
//!
//! Edges `0..r` are the glued polygon sides; edge `r + v - 2` is the
//! diagonal from corner 0 to corner `v`. Triangle `t` (for `v = t + 1`)
//! has corners `(0, v, v + 1)` and slots `[0v, v(v+1), (v+1)0]`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::surface::{FatGraph, SurfaceSig};
use crate::word::Letter;

/// Version tag embedded in every shipped data file.
pub const DATA_VERSION: &str = "curvelab-tri-1";

/// Triangulation data in its serialized form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReferenceTriangulation {
    pub surface: [u32; 2],
    pub version: String,
    pub edges: usize,
    /// Edge index per slot of each triangle.
    pub triangles: Vec<[usize; 3]>,
    /// Pairs of (triangle, slot) sharing an edge, one entry per edge.
    pub gluings: Vec<[[usize; 2]; 2]>,
    /// Normal coordinates of the marking curves.
    pub marking: Vec<Vec<u32>>,
}

impl ReferenceTriangulation {
    pub fn sig(&self) -> SurfaceSig {
        SurfaceSig::new(self.surface[0], self.surface[1])
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("triangulation serializes")
    }

    /// Parses triangulation data and checks its version tag and gluing
    /// structure.
    pub fn from_json(text: &str) -> Result<Self> {
        let t: ReferenceTriangulation =
            serde_json::from_str(text).map_err(|e| Error::Data(e.to_string()))?;
        if t.version != DATA_VERSION {
            return Err(Error::Data(format!("version {} is not {DATA_VERSION}", t.version)));
        }
        let mut seen = vec![0usize; t.edges];
        for tri in &t.triangles {
            for &e in tri {
                if e >= t.edges {
                    return Err(Error::Data(format!("edge {e} out of range")));
                }
                seen[e] += 1;
            }
        }
        if seen.iter().any(|&c| c != 2) {
            return Err(Error::Data("every edge must appear exactly twice".into()));
        }
        Ok(t)
    }
}

/// Edge index of the diagonal from corner 0 to corner `v`, or of the side
/// it coincides with.
fn fan_edge(fg: &FatGraph, v: usize) -> usize {
    let m = fg.sides();
    if v == 1 {
        (fg.side_letter(0) / 2) as usize
    } else if v == m - 1 {
        (fg.side_letter(m - 1) / 2) as usize
    } else {
        fg.rank() + v - 2
    }
}

/// Edges of each triangle in slot order.
pub fn triangles(fg: &FatGraph) -> Vec<[usize; 3]> {
    let m = fg.sides();
    (1..m - 1)
        .map(|v| [fan_edge(fg, v), (fg.side_letter(v) / 2) as usize, fan_edge(fg, v + 1)])
        .collect()
}

pub fn edge_count(fg: &FatGraph) -> usize {
    3 * fg.rank() - 3
}

/// Builds the triangulation record for `sig` with the given marking
/// coordinates.
pub fn reference(fg: &FatGraph, marking: Vec<Vec<u32>>) -> ReferenceTriangulation {
    let tris = triangles(fg);
    let mut slots: Vec<Vec<[usize; 2]>> = vec![Vec::new(); edge_count(fg)];
    for (t, tri) in tris.iter().enumerate() {
        for (s, &e) in tri.iter().enumerate() {
            slots[e].push([t, s]);
        }
    }
    let gluings = slots.into_iter().map(|v| [v[0], v[1]]).collect();
    ReferenceTriangulation {
        surface: [fg.sig.genus, fg.sig.boundary],
        version: DATA_VERSION.to_string(),
        edges: edge_count(fg),
        triangles: tris,
        gluings,
        marking,
    }
}

/// Normal coordinates of a family of cyclically reduced words realized
/// without crossings.
pub fn weights(fg: &FatGraph, words: &[Vec<Letter>]) -> Vec<u32> {
    let r = fg.rank();
    let m = fg.sides();
    let mut w = vec![0u32; edge_count(fg)];
    for word in words {
        let n = word.len();
        for j in 0..n {
            let x = word[j];
            w[(x / 2) as usize] += 1;
            let prev = word[(j + n - 1) % n];
            let a = fg.side_of(prev ^ 1);
            let b = fg.side_of(x);
            for v in 2..m - 1 {
                if (a < v) != (b < v) {
                    w[r + v - 2] += 1;
                }
            }
        }
    }
    w
}

/// Reconstructs the cyclic words of the normal multicurve with the given
/// coordinates, one word per component (parallel copies included).
pub fn trace(fg: &FatGraph, weights: &[u32]) -> Result<Vec<Vec<Letter>>> {
    let m = fg.sides();
    if weights.len() != edge_count(fg) {
        return Err(Error::NotAdmissible(format!(
            "expected {} weights, got {}",
            edge_count(fg),
            weights.len()
        )));
    }
    let tris = triangles(fg);
    let mut corners = Vec::with_capacity(tris.len());
    for (t, tri) in tris.iter().enumerate() {
        let (x, y, z) =
            (weights[tri[0]] as i64, weights[tri[1]] as i64, weights[tri[2]] as i64);
        if (x + y + z) % 2 != 0 {
            return Err(Error::NotAdmissible(format!("odd weight sum in triangle {t}")));
        }
        let c0 = (z + x - y) / 2;
        let c1 = (x + y - z) / 2;
        let c2 = (y + z - x) / 2;
        if c0 < 0 || c1 < 0 || c2 < 0 {
            return Err(Error::NotAdmissible(format!("negative corner in triangle {t}")));
        }
        corners.push([c0 as usize, c1 as usize, c2 as usize]);
    }
    let wt = |t: usize, s: usize| weights[tris[t][s]] as usize;
    // side -> (triangle, slot)
    let side_slot = |s: usize| -> (usize, usize) {
        if s == 0 {
            (0, 0)
        } else if s == m - 1 {
            (m - 3, 2)
        } else {
            (s - 1, 1)
        }
    };
    let slot_side = |t: usize, s: usize| -> Option<usize> {
        match s {
            1 => Some(t + 1),
            0 if t == 0 => Some(0),
            2 if t == m - 3 => Some(m - 1),
            _ => None,
        }
    };
    let inner = |t: usize, s: usize, i: usize| -> (usize, usize) {
        let [c0, c1, c2] = corners[t];
        let (x, y, z) = (wt(t, 0), wt(t, 1), wt(t, 2));
        match s {
            0 if i < c0 => (2, z - 1 - i),
            0 => (1, x - 1 - i),
            1 if i < c1 => (0, x - 1 - i),
            1 => (2, y - 1 - i),
            2 if i < c2 => (1, y - 1 - i),
            _ => (0, z - 1 - i),
        }
    };
    let follow = |side: usize, idx: usize| -> (usize, usize) {
        let (mut t, mut s) = side_slot(side);
        let mut i = idx;
        loop {
            let (s2, i2) = inner(t, s, i);
            if let Some(side2) = slot_side(t, s2) {
                return (side2, i2);
            }
            let w = wt(t, s2);
            if s2 == 0 {
                t -= 1;
                s = 2;
            } else {
                t += 1;
                s = 0;
            }
            i = w - 1 - i2;
        }
    };
    let side_n: Vec<usize> = (0..m).map(|s| weights[(fg.side_letter(s) / 2) as usize] as usize).collect();
    let mut offset = vec![0usize; m + 1];
    for s in 0..m {
        offset[s + 1] = offset[s] + side_n[s];
    }
    let mut seen = vec![false; offset[m]];
    let mut words = Vec::new();
    for s0 in 0..m {
        for t0 in 0..side_n[s0] {
            if seen[offset[s0] + t0] {
                continue;
            }
            let mut word = Vec::new();
            let (mut s, mut t) = (s0, t0);
            loop {
                seen[offset[s] + t] = true;
                word.push(fg.side_letter(s));
                let p = fg.partner(s);
                let tp = side_n[s] - 1 - t;
                seen[offset[p] + tp] = true;
                let (s2, t2) = follow(p, tp);
                if (s2, t2) == (s0, t0) {
                    break;
                }
                s = s2;
                t = t2;
            }
            words.push(word);
        }
    }
    Ok(words)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::canonical;

    #[test]
    fn triangle_and_edge_counts() {
        for (g, n, t, e) in [(1, 1, 2, 3), (0, 4, 4, 6), (2, 1, 6, 9), (0, 5, 6, 9), (1, 2, 4, 6)] {
            let fg = FatGraph::new(SurfaceSig::new(g, n)).unwrap();
            assert_eq!(triangles(&fg).len(), t);
            assert_eq!(edge_count(&fg), e);
        }
    }

    #[test]
    fn trace_inverts_weights() {
        let fg = FatGraph::new(SurfaceSig::new(2, 1)).unwrap();
        for w in ["a", "abAB", "ab", "acd", "abbb"] {
            let word = fg.parse_word(w).unwrap();
            let wt = weights(&fg, std::slice::from_ref(&word));
            let back = trace(&fg, &wt).unwrap();
            assert_eq!(back.len(), 1, "{w}");
            assert_eq!(canonical(&back[0]), canonical(&word), "{w}");
        }
    }

    #[test]
    fn odd_sum_rejected() {
        let fg = FatGraph::new(SurfaceSig::new(1, 1)).unwrap();
        assert!(matches!(trace(&fg, &[1, 0, 0]), Err(Error::NotAdmissible(_))));
    }

    #[test]
    fn json_roundtrip() {
        let fg = FatGraph::new(SurfaceSig::new(1, 1)).unwrap();
        let t = reference(&fg, vec![vec![1, 1, 0]]);
        let back = ReferenceTriangulation::from_json(&t.to_json()).unwrap();
        assert_eq!(back, t);
        let bad = t.to_json().replace(DATA_VERSION, "v0");
        assert!(ReferenceTriangulation::from_json(&bad).is_err());
    }
}
