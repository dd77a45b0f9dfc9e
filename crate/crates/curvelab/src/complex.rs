//! Bounded snapshots of the curve graph, the pants graph and the
//! complexes of separating multicurves, with exact distances inside a
//! snapshot.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::sync::Mutex;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::closed::descend_all;
use crate::curve::{check_same, cut_pieces, surface, Curve, Fingerprint, Multicurve};
use crate::enumerate::{enumerate_curves, CurveFilter};
use crate::error::{Error, Result};
use crate::normal::DATA_VERSION;
use crate::realize::Realization;
use crate::arrange::Arrangement;
use crate::surface::SurfaceSig;
use crate::word::Letter;

/// Which complex a snapshot samples.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ComplexKind {
    Curve,
    Pants,
    Sep,
    SepPrime,
}

impl FromStr for ComplexKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "curve" => Ok(ComplexKind::Curve),
            "pants" => Ok(ComplexKind::Pants),
            "sep" => Ok(ComplexKind::Sep),
            "sep_prime" | "sep-prime" => Ok(ComplexKind::SepPrime),
            _ => Err(Error::Parse(format!("unknown complex {s:?}"))),
        }
    }
}

impl fmt::Display for ComplexKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ComplexKind::Curve => "curve",
            ComplexKind::Pants => "pants",
            ComplexKind::Sep => "sep",
            ComplexKind::SepPrime => "sep_prime",
        })
    }
}

/// Adjacency in the curve graph: disjoint and distinct, or for the
/// complexity-one surfaces, minimal intersection (once on the
/// once-punctured torus, twice on the four-punctured sphere).
pub fn curve_adjacent(a: &Curve, b: &Curve) -> Result<bool> {
    check_same(a.sig(), b.sig())?;
    if a == b {
        return Ok(false);
    }
    Ok(a.intersection(b)? == adjacency_intersection(a.sig()))
}

/// Intersection number of adjacent curves on a surface.
pub fn adjacency_intersection(sig: SurfaceSig) -> usize {
    if sig.complexity() == 1 {
        if sig.genus == 1 {
            1
        } else {
            2
        }
    } else {
        0
    }
}

fn realize_union(c: &Multicurve, d: &Multicurve) -> Result<(Vec<Vec<Letter>>, bool)> {
    let ctx = surface(c.sig())?;
    let mut words: Vec<Vec<Letter>> = c.lifts().to_vec();
    for (x, w) in d.curves().iter().zip(d.lifts()) {
        if c.contains(x) {
            continue;
        }
        let w = if c.sig().is_closed() { descend_all(&ctx.fg, w, &words) } else { w.clone() };
        words.push(w);
    }
    Ok((words, c.sig().is_closed()))
}

/// True if the complement of `C ∪ D` (in minimal position) has an
/// essential piece. Both must be separating multicurves.
pub fn sep_adjacent(c: &Multicurve, d: &Multicurve) -> Result<bool> {
    check_same(c.sig(), d.sig())?;
    if !c.is_separating() || !d.is_separating() {
        return Err(Error::NotSeparating);
    }
    if c == d {
        return Ok(false);
    }
    let ctx = surface(c.sig())?;
    let (words, closed) = realize_union(c, d)?;
    let n = words.len();
    let arr = Arrangement::new(Realization::new(&ctx.fg, words));
    let (cut, _) = cut_pieces(&arr, &vec![true; n], closed);
    let found = cut.essential().next().is_some();
    Ok(found)
}

/// Boundaries of the essential complementary pieces of `C ∪ D` in
/// minimal position, each as the multicurve of its essential boundary
/// curves. For adjacent separating multicurves these are the disjoint
/// witnesses that a path in the disjointness version can pass through.
pub fn union_boundaries(c: &Multicurve, d: &Multicurve) -> Result<Vec<Multicurve>> {
    check_same(c.sig(), d.sig())?;
    let ctx = surface(c.sig())?;
    let (words, closed) = realize_union(c, d)?;
    let n = words.len();
    let arr = Arrangement::new(Realization::new(&ctx.fg, words));
    let cut = arr.cut(&vec![true; n]);
    let mut out = Vec::new();
    for p in &cut.pieces {
        let (chi, punctures) = if closed && !p.punctures.is_empty() { (p.chi + 1, 0) } else { (p.chi, p.punctures.len()) };
        let b = (punctures + p.cycles.len()) as i64;
        let genus = (2 - chi - b) / 2;
        if 3 * genus - 3 + b < 1 {
            continue;
        }
        let mut curves: Vec<Curve> = Vec::new();
        for &cy in &p.cycles {
            if let Ok(x) = ctx.curve(&cut.cycle_word(&arr, cy)) {
                if !curves.contains(&x) {
                    curves.push(x);
                }
            }
        }
        if let Ok(m) = Multicurve::new(c.sig(), curves) {
            if !m.is_empty() {
                out.push(m);
            }
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}

/// As [`sep_adjacent`], additionally requiring disjointness.
pub fn sep_prime_adjacent(c: &Multicurve, d: &Multicurve) -> Result<bool> {
    Ok(sep_adjacent(c, d)? && c.intersection(d)? == 0)
}

/// Enumerated curves of bounded weight with a shared intersection cache.
pub struct CurvePool {
    sig: SurfaceSig,
    bound: u32,
    curves: Vec<Curve>,
    index: HashMap<Fingerprint, usize>,
    cache: Mutex<HashMap<(usize, usize), usize>>,
}

impl CurvePool {
    pub fn new(sig: SurfaceSig, bound: u32, cap: usize) -> Result<Self> {
        Ok(Self::from_curves(sig, bound, enumerate_curves(sig, bound, CurveFilter::All, cap)?))
    }

    pub fn from_curves(sig: SurfaceSig, bound: u32, curves: Vec<Curve>) -> Self {
        let index = curves.iter().enumerate().map(|(i, c)| (c.fingerprint().clone(), i)).collect();
        CurvePool { sig, bound, curves, index, cache: Mutex::new(HashMap::new()) }
    }

    pub fn sig(&self) -> SurfaceSig {
        self.sig
    }

    pub fn bound(&self) -> u32 {
        self.bound
    }

    pub fn curves(&self) -> &[Curve] {
        &self.curves
    }

    pub fn id(&self, c: &Curve) -> Option<usize> {
        self.index.get(c.fingerprint()).copied()
    }

    /// Cached intersection number of two pool curves.
    pub fn intersection(&self, i: usize, j: usize) -> Result<usize> {
        if i == j {
            return Ok(0);
        }
        let key = (i.min(j), i.max(j));
        if let Some(&v) = self.cache.lock().expect("cache lock").get(&key) {
            return Ok(v);
        }
        let v = self.curves[i].intersection(&self.curves[j])?;
        self.cache.lock().expect("cache lock").insert(key, v);
        Ok(v)
    }

    /// Intersection of any curve with pool curve `j`.
    pub fn intersection_with(&self, c: &Curve, j: usize) -> Result<usize> {
        match self.id(c) {
            Some(i) => self.intersection(i, j),
            None => c.intersection(&self.curves[j]),
        }
    }

    /// Separating curves of the pool as one-component multicurves.
    pub fn separating(&self) -> Vec<Multicurve> {
        self.curves.iter().filter(|c| c.is_separating()).map(|c| Multicurve::single(c.clone())).collect()
    }
}

/// Pants decompositions one elementary move away from `p`, with the new
/// curve taken from the pool.
pub fn pants_neighbors(p: &Multicurve, pool: &CurvePool) -> Result<Vec<Multicurve>> {
    check_same(pool.sig(), p.sig())?;
    let mut out = Vec::new();
    for c in p.curves() {
        let rest = p.without(c);
        let piece = rest.cut();
        let target = match piece.essential().next() {
            Some((_, z)) => adjacency_intersection(z.sig),
            None => continue,
        };
        'cand: for (j, d) in pool.curves().iter().enumerate() {
            if p.contains(d) {
                continue;
            }
            for o in rest.curves() {
                if pool.intersection_with(o, j)? != 0 {
                    continue 'cand;
                }
            }
            if pool.intersection_with(c, j)? == target {
                out.push(rest.with(d)?);
            }
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}

/// Vertex source and adjacency for one complex over a pool.
pub struct ComplexModel<'p> {
    pub kind: ComplexKind,
    pub pool: &'p CurvePool,
    /// Vertex candidates for the separating complexes.
    sep: Vec<Multicurve>,
}

impl<'p> ComplexModel<'p> {
    /// Separating complexes use the pool's separating curves as vertices.
    pub fn new(kind: ComplexKind, pool: &'p CurvePool) -> Self {
        let sep = match kind {
            ComplexKind::Sep | ComplexKind::SepPrime => pool.separating(),
            _ => Vec::new(),
        };
        ComplexModel { kind, pool, sep }
    }

    /// With explicit candidates for the separating complexes.
    pub fn with_candidates(kind: ComplexKind, pool: &'p CurvePool, sep: Vec<Multicurve>) -> Self {
        ComplexModel { kind, pool, sep }
    }

    pub fn is_vertex(&self, v: &Multicurve) -> bool {
        match self.kind {
            ComplexKind::Curve => v.len() == 1,
            ComplexKind::Pants => v.is_pants_decomposition(),
            ComplexKind::Sep | ComplexKind::SepPrime => v.is_separating(),
        }
    }

    pub fn adjacent(&self, u: &Multicurve, v: &Multicurve) -> Result<bool> {
        match self.kind {
            ComplexKind::Curve => curve_adjacent(&u.curves()[0], &v.curves()[0]),
            ComplexKind::Pants => {
                if u.len() != v.len() {
                    return Ok(false);
                }
                let shared = u.curves().iter().filter(|c| v.contains(c)).count();
                if shared + 1 != u.len() {
                    return Ok(false);
                }
                let a = u.curves().iter().find(|c| !v.contains(c)).expect("one curve differs");
                let b = v.curves().iter().find(|c| !u.contains(c)).expect("one curve differs");
                let rest = u.without(a);
                let target = match rest.cut().essential().next() {
                    Some((_, z)) => adjacency_intersection(z.sig),
                    None => return Ok(false),
                };
                Ok(a.intersection(b)? == target)
            }
            ComplexKind::Sep => sep_adjacent(u, v),
            ComplexKind::SepPrime => sep_prime_adjacent(u, v),
        }
    }

    /// Neighbours of `v` among the bounded vertices.
    pub fn neighbors(&self, v: &Multicurve) -> Result<Vec<Multicurve>> {
        match self.kind {
            ComplexKind::Curve => {
                let c = &v.curves()[0];
                let target = adjacency_intersection(c.sig());
                let mut out = Vec::new();
                for (j, d) in self.pool.curves().iter().enumerate() {
                    if d != c && self.pool.intersection_with(c, j)? == target {
                        out.push(Multicurve::single(d.clone()));
                    }
                }
                Ok(out)
            }
            ComplexKind::Pants => pants_neighbors(v, self.pool),
            ComplexKind::Sep | ComplexKind::SepPrime => {
                let mut out = Vec::new();
                for d in &self.sep {
                    if self.adjacent(v, d)? {
                        out.push(d.clone());
                    }
                }
                Ok(out)
            }
        }
    }
}

/// A ball in a complex: every bounded vertex within `radius` of the
/// basepoint, with all edges among them.
#[derive(Clone)]
pub struct GraphSnapshot {
    pub kind: ComplexKind,
    pub surface: SurfaceSig,
    pub weight_bound: u32,
    pub radius: usize,
    pub basepoint: usize,
    vertices: Vec<Multicurve>,
    keys: Vec<Vec<Fingerprint>>,
    index: BTreeMap<Vec<Fingerprint>, usize>,
    adj: Vec<Vec<usize>>,
    depth: Vec<usize>,
}

/// Serialized form of a snapshot.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SnapshotFile {
    pub header: SnapshotHeader,
    pub vertices: Vec<SnapshotVertex>,
    pub edges: Vec<(usize, usize)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SnapshotHeader {
    pub kind: ComplexKind,
    pub surface: SurfaceSig,
    pub weight_bound: u32,
    pub radius: usize,
    pub version: String,
    pub basepoint: Vec<Fingerprint>,
    pub vertex_count: usize,
    pub edge_count: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SnapshotVertex {
    pub fingerprint: Vec<Fingerprint>,
    pub line: String,
    pub depth: usize,
}

impl GraphSnapshot {
    /// Breadth-first ball around `base`; each layer's neighbourhoods are
    /// computed in parallel and admitted in fingerprint order. Fails with `BudgetExceeded` past `cap` vertices.
    pub fn build(model: &ComplexModel<'_>, base: Multicurve, radius: usize, cap: usize) -> Result<Self> {
        if !model.is_vertex(&base) {
            return Err(Error::InvalidDescriptor(format!("basepoint is not a {} vertex", model.kind)));
        }
        let mut snap = GraphSnapshot {
            kind: model.kind,
            surface: model.pool.sig(),
            weight_bound: model.pool.bound(),
            radius,
            basepoint: 0,
            vertices: Vec::new(),
            keys: Vec::new(),
            index: BTreeMap::new(),
            adj: Vec::new(),
            depth: Vec::new(),
        };
        snap.admit(base, 0);
        // Each admitted vertex has its neighbours computed exactly once.
        let mut frontier = vec![0usize];
        let mut found: Vec<Vec<Multicurve>> = Vec::new();
        for d in 0..=radius {
            let mut next: BTreeMap<Vec<Fingerprint>, Multicurve> = BTreeMap::new();
            let layer_ns: Vec<Vec<Multicurve>> =
                frontier.par_iter().map(|&u| model.neighbors(&snap.vertices[u])).collect::<Result<_>>()?;
            for ns in layer_ns {
                if d < radius {
                    for w in &ns {
                        let key = w.fingerprint();
                        if !snap.index.contains_key(&key) {
                            next.entry(key).or_insert_with(|| w.clone());
                        }
                    }
                }
                found.push(ns);
            }
            if d == radius {
                break;
            }
            let mut layer = Vec::new();
            for (_, w) in next {
                if snap.vertices.len() >= cap {
                    return Err(Error::BudgetExceeded(cap));
                }
                layer.push(snap.admit(w, d + 1));
            }
            frontier = layer;
        }
        // Vertices are admitted in frontier order, so `found[u]` belongs to `u`.
        let mut edges: Vec<(usize, usize)> = Vec::new();
        for (u, ns) in found.iter().enumerate() {
            for w in ns {
                if let Some(&v) = snap.index.get(&w.fingerprint()) {
                    edges.push((u.min(v), u.max(v)));
                }
            }
        }
        edges.sort_unstable();
        edges.dedup();
        for &(u, v) in &edges {
            snap.adj[u].push(v);
            snap.adj[v].push(u);
        }
        Ok(snap)
    }

    fn admit(&mut self, v: Multicurve, depth: usize) -> usize {
        let key = v.fingerprint();
        let id = self.vertices.len();
        self.index.insert(key.clone(), id);
        self.keys.push(key);
        self.vertices.push(v);
        self.adj.push(Vec::new());
        self.depth.push(depth);
        id
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertices(&self) -> &[Multicurve] {
        &self.vertices
    }

    pub fn vertex(&self, u: usize) -> &Multicurve {
        &self.vertices[u]
    }

    pub fn neighbors(&self, u: usize) -> &[usize] {
        &self.adj[u]
    }

    /// Distance of each vertex from the basepoint.
    pub fn depth(&self, u: usize) -> usize {
        self.depth[u]
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (u, ns) in self.adj.iter().enumerate() {
            out.extend(ns.iter().filter(|&&v| u < v).map(|&v| (u, v)));
        }
        out
    }

    pub fn index_of(&self, m: &Multicurve) -> Option<usize> {
        self.index.get(&m.fingerprint()).copied()
    }

    /// Shortest-path lengths from `u` inside the snapshot.
    pub fn distances_from(&self, u: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.len()];
        dist[u] = Some(0);
        let mut queue = VecDeque::from([u]);
        while let Some(x) = queue.pop_front() {
            let dx = dist[x].expect("queued vertices have distances");
            for &y in &self.adj[x] {
                if dist[y].is_none() {
                    dist[y] = Some(dx + 1);
                    queue.push_back(y);
                }
            }
        }
        dist
    }

    /// Exact distance inside the snapshot.
    pub fn distance(&self, u: usize, v: usize) -> Result<usize> {
        if u >= self.len() || v >= self.len() {
            return Err(Error::UnknownVertex);
        }
        self.distances_from(u)[v].ok_or(Error::Unreachable)
    }

    /// Distance between two multicurves given by value.
    pub fn distance_between(&self, a: &Multicurve, b: &Multicurve) -> Result<usize> {
        let u = self.index_of(a).ok_or(Error::UnknownVertex)?;
        let v = self.index_of(b).ok_or(Error::UnknownVertex)?;
        self.distance(u, v)
    }

    pub fn header(&self) -> SnapshotHeader {
        SnapshotHeader {
            kind: self.kind,
            surface: self.surface,
            weight_bound: self.weight_bound,
            radius: self.radius,
            version: DATA_VERSION.to_string(),
            basepoint: self.keys[self.basepoint].clone(),
            vertex_count: self.len(),
            edge_count: self.edge_count(),
        }
    }

    /// Hex digest of the serialized contents: header, vertices and edges.
    pub fn digest(&self) -> String {
        let text = serde_json::to_string(&self.to_file()).expect("snapshot serializes");
        hex(&Sha256::digest(text.as_bytes()))
    }

    pub fn to_file(&self) -> SnapshotFile {
        let vertices = (0..self.len())
            .map(|u| SnapshotVertex {
                fingerprint: self.keys[u].clone(),
                line: self.vertices[u].to_line(),
                depth: self.depth[u],
            })
            .collect();
        SnapshotFile { header: self.header(), vertices, edges: self.edges() }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("snapshot serializes")
    }

    /// Restores a snapshot, checking the version and every fingerprint.
    pub fn from_json(text: &str) -> Result<Self> {
        let file: SnapshotFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let h = &file.header;
        if h.version != DATA_VERSION {
            return Err(Error::Data(format!("data-format version {} (expected {DATA_VERSION})", h.version)));
        }
        let mut snap = GraphSnapshot {
            kind: h.kind,
            surface: h.surface,
            weight_bound: h.weight_bound,
            radius: h.radius,
            basepoint: 0,
            vertices: Vec::new(),
            keys: Vec::new(),
            index: BTreeMap::new(),
            adj: Vec::new(),
            depth: Vec::new(),
        };
        for v in &file.vertices {
            let m = Multicurve::parse_line(&v.line)?.multicurve;
            if m.fingerprint() != v.fingerprint {
                return Err(Error::Data(format!("fingerprint mismatch for {}", v.line)));
            }
            snap.admit(m, v.depth);
        }
        snap.basepoint = *snap.index.get(&h.basepoint).ok_or(Error::UnknownVertex)?;
        for &(u, v) in &file.edges {
            if u >= snap.len() || v >= snap.len() || u == v {
                return Err(Error::Data(format!("bad edge ({u}, {v})")));
            }
            snap.adj[u].push(v);
            snap.adj[v].push(u);
        }
        Ok(snap)
    }
}

impl GraphSnapshot {
    /// Writes `<digest>.json` into `dir`.
    pub fn store(&self, dir: &Path) -> Result<PathBuf> {
        std::fs::create_dir_all(dir).map_err(|e| io_error(dir, e))?;
        let path = dir.join(format!("{}.json", self.digest()));
        std::fs::write(&path, self.to_json()).map_err(|e| io_error(&path, e))?;
        Ok(path)
    }

    /// Loads the snapshot stored under `digest`, naming the digest in any
    /// failure and checking that the contents hash to it.
    pub fn load(dir: &Path, digest: &str) -> Result<Self> {
        let path = dir.join(format!("{digest}.json"));
        let text = std::fs::read_to_string(&path).map_err(|e| io_error(&path, e))?;
        let snap = Self::from_json(&text).map_err(|e| Error::Data(format!("snapshot {digest} is corrupt: {e}")))?;
        if snap.digest() != digest {
            return Err(Error::Data(format!("snapshot {digest} is corrupt: contents hash to {}", snap.digest())));
        }
        Ok(snap)
    }
}

fn io_error(path: &Path, e: std::io::Error) -> Error {
    Error::Io { path: path.display().to_string(), message: e.to_string() }
}

impl fmt::Debug for GraphSnapshot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "GraphSnapshot({} on {}, bound {}, radius {}, {} vertices, {} edges)",
            self.kind,
            self.surface,
            self.weight_bound,
            self.radius,
            self.len(),
            self.edge_count()
        )
    }
}

pub(crate) fn hex(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn torus() -> CurvePool {
        CurvePool::new(SurfaceSig::new(1, 1), 3, 1_000_000).unwrap()
    }

    #[test]
    fn farey_edges() {
        let pool = torus();
        let ctx = surface(SurfaceSig::new(1, 1)).unwrap();
        let (a, b, ab) = (ctx.parse("a").unwrap(), ctx.parse("b").unwrap(), ctx.parse("ab").unwrap());
        assert!(curve_adjacent(&a, &b).unwrap());
        assert!(!curve_adjacent(&a, &a).unwrap());
        let model = ComplexModel::new(ComplexKind::Curve, &pool);
        let snap = GraphSnapshot::build(&model, Multicurve::single(a.clone()), 2, 10_000).unwrap();
        let d = snap.distance_between(&Multicurve::single(a.clone()), &Multicurve::single(ab)).unwrap();
        assert_eq!(d, 1);
        assert_eq!(snap.distance(0, 0).unwrap(), 0);
        let _ = b;
    }

    #[test]
    fn pants_neighbors_of_a_slope_are_its_farey_neighbors() {
        let pool = torus();
        let ctx = surface(SurfaceSig::new(1, 1)).unwrap();
        let a = Multicurve::single(ctx.parse("a").unwrap());
        let ns = pants_neighbors(&a, &pool).unwrap();
        for n in &ns {
            assert_eq!(n.curves()[0].intersection(&a.curves()[0]).unwrap(), 1);
        }
        let expected = pool.curves().iter().filter(|c| c.intersection(&a.curves()[0]).unwrap() == 1).count();
        assert_eq!(ns.len(), expected);
    }

    #[test]
    fn neighbourhood_of_a_one_holed_torus_is_cut_off_by_its_commutator() {
        let sig = SurfaceSig::new(2, 1);
        let ctx = surface(sig).unwrap();
        let (a, b) = (Multicurve::single(ctx.parse("a").unwrap()), Multicurve::single(ctx.parse("b").unwrap()));
        let got = union_boundaries(&a, &b).unwrap();
        assert_eq!(got, vec![Multicurve::single(ctx.parse("abAB").unwrap())]);
        for m in &got {
            assert_eq!(m.intersection(&a).unwrap() + m.intersection(&b).unwrap(), 0);
        }
    }

    #[test]
    fn snapshot_round_trips() {
        let pool = torus();
        let ctx = surface(SurfaceSig::new(1, 1)).unwrap();
        let model = ComplexModel::new(ComplexKind::Curve, &pool);
        let snap = GraphSnapshot::build(&model, Multicurve::single(ctx.parse("a").unwrap()), 2, 10_000).unwrap();
        let back = GraphSnapshot::from_json(&snap.to_json()).unwrap();
        assert_eq!(back.to_file(), snap.to_file());
        assert_eq!(back.digest(), snap.digest());
    }
}
