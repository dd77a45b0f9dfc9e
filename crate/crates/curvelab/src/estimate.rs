//! Curve graphs of subsurfaces, projection distances between pants
//! decompositions, the thresholded distance-formula sum and the two-sided
//! projection gap of overlapping subsurfaces.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::complex::adjacency_intersection;
use crate::curve::{check_same, Curve, Fingerprint, Multicurve};
use crate::error::{Error, Result};
use crate::subsurface::{Subsurface, SubsurfaceKey};
use crate::surface::SurfaceSig;

/// A connected essential subsurface, or the whole surface.
#[derive(Clone, Debug)]
pub enum Region {
    Whole(SurfaceSig),
    Piece(Subsurface),
}

impl Region {
    pub fn ambient(&self) -> SurfaceSig {
        match self {
            Region::Whole(sig) => *sig,
            Region::Piece(y) => y.ambient(),
        }
    }

    /// Signature of the region itself.
    pub fn sig(&self) -> Result<SurfaceSig> {
        match self {
            Region::Whole(sig) => Ok(*sig),
            Region::Piece(y) => y.sig(),
        }
    }

    pub fn contains_curve(&self, c: &Curve) -> Result<bool> {
        match self {
            Region::Whole(sig) => {
                check_same(*sig, c.sig())?;
                Ok(true)
            }
            Region::Piece(y) => y.contains_curve(c),
        }
    }

    pub fn project(&self, c: &Curve) -> Result<BTreeSet<Curve>> {
        match self {
            Region::Whole(sig) => {
                check_same(*sig, c.sig())?;
                Ok(BTreeSet::from([c.clone()]))
            }
            Region::Piece(y) => y.project(c),
        }
    }

    pub fn project_multicurve(&self, m: &Multicurve) -> Result<BTreeSet<Curve>> {
        let mut out = BTreeSet::new();
        for c in m.curves() {
            out.extend(self.project(c)?);
        }
        Ok(out)
    }

    /// Boundary curves (none for the whole surface).
    pub fn boundary(&self) -> Multicurve {
        match self {
            Region::Whole(sig) => Multicurve::empty(*sig),
            Region::Piece(y) => y.boundary_multicurve().unwrap_or_else(|_| Multicurve::empty(y.ambient())),
        }
    }

    /// Short human-readable descriptor.
    pub fn label(&self) -> String {
        match self {
            Region::Whole(sig) => format!("{sig}"),
            Region::Piece(y) => {
                let names: Vec<String> = y.boundary_curves().iter().map(|c| c.name()).collect();
                let sig = y.sig().map(|s| s.to_string()).unwrap_or_else(|_| "?".into());
                format!("{sig} bounded by {}", names.join(" + "))
            }
        }
    }

    pub fn key(&self) -> Result<Option<SubsurfaceKey>> {
        match self {
            Region::Whole(_) => Ok(None),
            Region::Piece(y) => y.key().map(Some),
        }
    }
}

/// Finite subgraph of the curve graph of a region: pool curves lying in
/// the region plus any curves inserted later. Distances in it are upper
/// bounds for distances in the full curve graph of the region.
#[derive(Clone)]
pub struct RegionGraph {
    region: Region,
    adjacency: usize,
    curves: Vec<Curve>,
    index: HashMap<Fingerprint, usize>,
    adj: Vec<Vec<usize>>,
}

impl RegionGraph {
    pub fn new(region: Region, pool: &[Curve]) -> Result<Self> {
        let sig = region.sig()?;
        if sig.complexity() < 1 {
            return Err(Error::InvalidDescriptor(format!("{sig} has no curve graph")));
        }
        let mut g = RegionGraph {
            region,
            adjacency: adjacency_intersection(sig),
            curves: Vec::new(),
            index: HashMap::new(),
            adj: Vec::new(),
        };
        for c in pool {
            if g.region.contains_curve(c)? {
                g.insert(c)?;
            }
        }
        Ok(g)
    }

    pub fn region(&self) -> &Region {
        &self.region
    }

    pub fn len(&self) -> usize {
        self.curves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.curves.is_empty()
    }

    pub fn curves(&self) -> &[Curve] {
        &self.curves
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Adds a curve of the region (callers guarantee membership, e.g.
    /// projections) and returns its vertex.
    pub fn insert(&mut self, c: &Curve) -> Result<usize> {
        if let Some(&i) = self.index.get(c.fingerprint()) {
            return Ok(i);
        }
        let id = self.curves.len();
        let mut ns = Vec::new();
        for (j, d) in self.curves.iter().enumerate() {
            if c.intersection(d)? == self.adjacency {
                ns.push(j);
            }
        }
        for &j in &ns {
            self.adj[j].push(id);
        }
        self.adj.push(ns);
        self.index.insert(c.fingerprint().clone(), id);
        self.curves.push(c.clone());
        Ok(id)
    }

    pub fn insert_all(&mut self, cs: &BTreeSet<Curve>) -> Result<Vec<usize>> {
        cs.iter().map(|c| self.insert(c)).collect()
    }

    /// Multi-source breadth-first distances.
    pub fn distances_from(&self, sources: &[usize]) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.len()];
        let mut queue = VecDeque::new();
        for &s in sources {
            if dist[s].is_none() {
                dist[s] = Some(0);
                queue.push_back(s);
            }
        }
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

    /// Least distance between two nonempty vertex sets.
    pub fn set_distance(&self, a: &[usize], b: &[usize]) -> Result<usize> {
        if a.is_empty() || b.is_empty() {
            return Err(Error::NoIntersection);
        }
        let dist = self.distances_from(a);
        b.iter().filter_map(|&v| dist[v]).min().ok_or(Error::Unreachable)
    }

    /// Largest distance within a nonempty vertex set.
    pub fn diameter(&self, a: &[usize]) -> Result<usize> {
        if a.is_empty() {
            return Err(Error::NoIntersection);
        }
        let mut best = 0;
        for &u in a {
            let dist = self.distances_from(&[u]);
            for &v in a {
                best = best.max(dist[v].ok_or(Error::Unreachable)?);
            }
        }
        Ok(best)
    }

    /// Inserts the projections of every pool curve that meets the region,
    /// adding short curves the pool itself lacks inside it.
    pub fn enrich(&mut self, pool: &[Curve]) -> Result<()> {
        for c in pool {
            let proj = self.region.project(c)?;
            self.insert_all(&proj)?;
        }
        Ok(())
    }

    /// Projection of a multicurve, inserted as vertices.
    pub fn project(&mut self, m: &Multicurve) -> Result<Vec<usize>> {
        let proj = self.region.project_multicurve(m)?;
        if proj.is_empty() {
            return Err(Error::NoIntersection);
        }
        self.insert_all(&proj)
    }

    /// Projection distance between two multicurves.
    pub fn projection_distance(&mut self, a: &Multicurve, b: &Multicurve) -> Result<usize> {
        let pa = self.project(a)?;
        let pb = self.project(b)?;
        self.set_distance(&pa, &pb)
    }
}

/// The whole surface followed by every connected essential proper
/// subsurface cut off by at most `max_components` disjoint pool curves,
/// deduplicated by isotopy class.
pub fn subsurface_universe(sig: SurfaceSig, pool: &[Curve], max_components: usize) -> Result<Vec<Region>> {
    let mut seen: BTreeMap<SubsurfaceKey, ()> = BTreeMap::new();
    let mut out = vec![Region::Whole(sig)];
    let mut frontier: Vec<Multicurve> = vec![Multicurve::empty(sig)];
    for _ in 0..max_components {
        let mut next = BTreeSet::new();
        for m in &frontier {
            let start = m.curves().last().map(|c| pool.iter().position(|d| d == c).map_or(0, |i| i + 1)).unwrap_or(0);
            for c in &pool[start..] {
                check_same(sig, c.sig())?;
                if m.intersection_with(c)? == 0 && !m.contains(c) {
                    next.insert(m.with(c)?);
                }
            }
        }
        for m in &next {
            for y in Subsurface::pieces_of(m) {
                if y.complexity() >= 1 && seen.insert(y.key()?, ()).is_none() {
                    out.push(Region::Piece(y));
                }
            }
        }
        frontier = next.into_iter().collect();
    }
    Ok(out)
}

/// One thresholded term of the distance-formula sum.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EstimateTerm {
    pub subsurface: String,
    pub distance: usize,
}

/// The distance-formula sum for a pair of pants decompositions.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DistanceEstimate {
    pub pair: (Vec<Fingerprint>, Vec<Fingerprint>),
    pub threshold: usize,
    pub terms: Vec<EstimateTerm>,
    pub sum: usize,
}

/// Per-region projection of one pants decomposition, as vertex sets.
pub struct Profile {
    pub fingerprint: Vec<Fingerprint>,
    vertices: Vec<Vec<usize>>,
}

/// Region graphs over a universe, shared by all estimates.
pub struct Estimator {
    graphs: Vec<RegionGraph>,
}

impl Estimator {
    pub fn new(universe: Vec<Region>, pool: &[Curve]) -> Result<Self> {
        let graphs = universe.into_iter().map(|r| RegionGraph::new(r, pool)).collect::<Result<_>>()?;
        Ok(Estimator { graphs })
    }

    pub fn graphs(&self) -> &[RegionGraph] {
        &self.graphs
    }

    /// Projects `p` into every region, inserting the projections.
    pub fn profile(&mut self, p: &Multicurve) -> Result<Profile> {
        let vertices = self.graphs.iter_mut().map(|g| g.project(p)).collect::<Result<_>>()?;
        Ok(Profile { fingerprint: p.fingerprint(), vertices })
    }

    /// Projection distances of two profiles in every region, measured in
    /// the graphs as they stand (later insertions can only shorten them).
    pub fn region_distances(&self, a: &Profile, b: &Profile) -> Result<Vec<usize>> {
        self.graphs
            .iter()
            .zip(a.vertices.iter().zip(&b.vertices))
            .map(|(g, (x, y))| g.set_distance(x, y))
            .collect()
    }

    /// Thresholded sum from precomputed region distances.
    pub fn estimate_from(&self, a: &Profile, b: &Profile, distances: &[usize], threshold: usize) -> DistanceEstimate {
        let terms: Vec<EstimateTerm> = self
            .graphs
            .iter()
            .zip(distances)
            .filter(|(_, &d)| d >= threshold)
            .map(|(g, &d)| EstimateTerm { subsurface: g.region().label(), distance: d })
            .collect();
        let sum = terms.iter().map(|t| t.distance).sum();
        DistanceEstimate { pair: (a.fingerprint.clone(), b.fingerprint.clone()), threshold, terms, sum }
    }

    /// Distance-formula sum `Σ_Y [d_Y(P, Q)]_M` over the universe.
    pub fn estimate(&mut self, p: &Multicurve, q: &Multicurve, threshold: usize) -> Result<DistanceEstimate> {
        if threshold == 0 {
            return Err(Error::Parse("threshold must be at least 1".into()));
        }
        let a = self.profile(p)?;
        let b = self.profile(q)?;
        let d = self.region_distances(&a, &b).map_err(|e| match e {
            Error::Unreachable => Error::UniverseTooSmall("a projection distance is unreachable in its region graph".into()),
            e => e,
        })?;
        Ok(self.estimate_from(&a, &b, &d, threshold))
    }
}

/// Whether two subsurfaces overlap: each boundary projects nontrivially
/// to the other.
pub fn overlapping(w: &Subsurface, v: &Subsurface) -> Result<bool> {
    let bw = w.boundary_multicurve()?;
    let bv = v.boundary_multicurve()?;
    Ok(!v.project_multicurve(&bw)?.is_empty() && !w.project_multicurve(&bv)?.is_empty())
}

/// `(d_W(P, ∂V), d_V(P, ∂W))` for overlapping `W` and `V`, measured in the
/// given region graphs of `W` and `V`.
pub fn behrstock_gap(p: &Multicurve, w: &mut RegionGraph, v: &mut RegionGraph) -> Result<(usize, usize)> {
    let (Region::Piece(ws), Region::Piece(vs)) = (w.region().clone(), v.region().clone()) else {
        return Err(Error::NotOverlapping);
    };
    if !overlapping(&ws, &vs)? {
        return Err(Error::NotOverlapping);
    }
    let dw = w.projection_distance(p, &vs.boundary_multicurve()?)?;
    let dv = v.projection_distance(p, &ws.boundary_multicurve()?)?;
    Ok((dw, dv))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::surface;
    use crate::enumerate::{enumerate_curves, CurveFilter, DEFAULT_CAP};

    fn s05() -> (SurfaceSig, Vec<Curve>) {
        let sig = SurfaceSig::new(0, 5);
        (sig, enumerate_curves(sig, 4, CurveFilter::All, DEFAULT_CAP).unwrap())
    }

    fn pants(sig: SurfaceSig, pool: &[Curve], skip: usize) -> Multicurve {
        let mut m = Multicurve::empty(sig);
        for c in pool.iter().skip(skip) {
            if let Ok(n) = m.with(c) {
                m = n;
            }
        }
        m
    }

    #[test]
    fn universe_of_the_five_punctured_sphere_is_the_whole_surface_and_four_holed_spheres() {
        let (sig, pool) = s05();
        let u = subsurface_universe(sig, &pool, 2).unwrap();
        assert!(matches!(u[0], Region::Whole(_)));
        assert_eq!(u.len(), 1 + pool.len());
        for r in &u[1..] {
            assert_eq!(r.sig().unwrap(), SurfaceSig::new(0, 4));
        }
    }

    #[test]
    fn estimate_of_a_pair_with_itself_is_zero_and_monotone() {
        let (sig, pool) = s05();
        let u = subsurface_universe(sig, &pool, 1).unwrap();
        let mut est = Estimator::new(u, &pool).unwrap();
        let p = pants(sig, &pool, 0);
        let q = pants(sig, &pool, 7);
        assert!(p.is_pants_decomposition() && q.is_pants_decomposition());
        assert_eq!(est.estimate(&p, &p, 1).unwrap().sum, 0);
        let mut last = usize::MAX;
        for m in 1..6 {
            let e = est.estimate(&p, &q, m).unwrap();
            assert!(e.terms.iter().all(|t| t.distance >= m));
            assert_eq!(e.sum, e.terms.iter().map(|t| t.distance).sum::<usize>());
            assert!(e.sum <= last);
            last = e.sum;
        }
    }

    #[test]
    fn gap_is_zero_when_the_decomposition_contains_the_other_boundary() {
        let sig = SurfaceSig::new(2, 1);
        let ctx = surface(sig).unwrap();
        let pool = enumerate_curves(sig, 2, CurveFilter::All, DEFAULT_CAP).unwrap();
        let a = ctx.parse("a").unwrap();
        let b = ctx.parse("b").unwrap();
        let w = Subsurface::pieces_of(&Multicurve::single(a.clone())).remove(0);
        let v = Subsurface::pieces_of(&Multicurve::single(b.clone())).remove(0);
        assert!(overlapping(&w, &v).unwrap());
        let p = pants(sig, &[vec![b.clone()], pool.clone()].concat(), 0);
        assert!(p.contains(&b));
        let mut gw = RegionGraph::new(Region::Piece(w), &pool).unwrap();
        let mut gv = RegionGraph::new(Region::Piece(v), &pool).unwrap();
        let (x, y) = behrstock_gap(&p, &mut gw, &mut gv).unwrap();
        assert_eq!(x, 0);
        let (y2, x2) = behrstock_gap(&p, &mut gv, &mut gw).unwrap();
        assert_eq!((x2, y2), (x, y));
    }
}
