//! The laboratory: verification drivers, the pseudo-Anosov axis probes and
//! the suite runner, each producing a [`Report`].

pub mod axis;
pub mod config;
pub mod fibers;
pub mod formula;
pub mod oracles;
pub mod projection;
pub mod report;
pub mod sep;
pub mod suite;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use sha2::{Digest, Sha256};

use crate::curve::{Curve, Multicurve};
use crate::surface::SurfaceSig;

pub use config::{ExperimentConfig, Ratio};
pub use report::{Check, Report, Table};

/// Generator for one driver, derived from the run seed and a tag so that
/// drivers draw independent streams regardless of execution order.
pub fn rng(seed: u64, tag: &str) -> ChaCha8Rng {
    let mut h = Sha256::new();
    h.update(seed.to_le_bytes());
    h.update(tag.as_bytes());
    let digest = h.finalize();
    let mut key = [0u8; 32];
    key.copy_from_slice(&digest);
    ChaCha8Rng::from_seed(key)
}

/// Greedy pants decomposition: add curves in order while they stay
/// disjoint from those already taken.
pub fn greedy_pants(sig: SurfaceSig, curves: &[Curve]) -> Option<Multicurve> {
    let mut m = Multicurve::empty(sig);
    for c in curves {
        if m.len() as i64 == sig.complexity() {
            break;
        }
        if let Ok(n) = m.with(c) {
            m = n;
        }
    }
    m.is_pants_decomposition().then_some(m)
}

/// A seeded sample of `k` items without replacement, in sampled order.
pub fn sample<T: Clone>(rng: &mut ChaCha8Rng, items: &[T], k: usize) -> Vec<T> {
    items.choose_multiple(rng, k.min(items.len())).cloned().collect()
}

/// Spearman rank correlation with average ranks for ties; `None` when
/// either side is constant.
pub fn spearman(x: &[f64], y: &[f64]) -> Option<f64> {
    let rx = ranks(x);
    let ry = ranks(y);
    pearson(&rx, &ry)
}

fn ranks(v: &[f64]) -> Vec<f64> {
    let mut idx: Vec<usize> = (0..v.len()).collect();
    idx.sort_by(|&a, &b| v[a].total_cmp(&v[b]));
    let mut r = vec![0.0; v.len()];
    let mut i = 0;
    while i < idx.len() {
        let mut j = i;
        while j + 1 < idx.len() && v[idx[j + 1]] == v[idx[i]] {
            j += 1;
        }
        let avg = (i + j) as f64 / 2.0 + 1.0;
        for &k in &idx[i..=j] {
            r[k] = avg;
        }
        i = j + 1;
    }
    r
}

fn pearson(x: &[f64], y: &[f64]) -> Option<f64> {
    let n = x.len() as f64;
    if x.len() < 2 {
        return None;
    }
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (a, b) in x.iter().zip(y) {
        sxy += (a - mx) * (b - my);
        sxx += (a - mx) * (a - mx);
        syy += (b - my) * (b - my);
    }
    if sxx == 0.0 || syy == 0.0 {
        return None;
    }
    Some(sxy / (sxx * syy).sqrt())
}

/// Least-squares slope `a` of `y ≈ a·x + b`, with `b` then raised until
/// `y ≤ a·x + b` holds on every point. Returns `(a, b)`.
pub fn upper_affine(x: &[f64], y: &[f64]) -> (f64, f64) {
    let n = x.len() as f64;
    if x.is_empty() {
        return (0.0, 0.0);
    }
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let sxx: f64 = x.iter().map(|a| (a - mx) * (a - mx)).sum();
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let a = if sxx > 0.0 { (sxy / sxx).max(0.0) } else { 0.0 };
    let b = x.iter().zip(y).map(|(p, q)| q - a * p).fold(f64::NEG_INFINITY, f64::max);
    (a, b)
}

/// Formats a float with fixed precision for byte-stable reports.
pub fn fmt_f(x: f64) -> String {
    format!("{x:.4}")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spearman_handles_ties_and_constants() {
        let x = [1.0, 2.0, 3.0, 4.0];
        assert!((spearman(&x, &[10.0, 20.0, 30.0, 40.0]).unwrap() - 1.0).abs() < 1e-12);
        assert!((spearman(&x, &[4.0, 3.0, 2.0, 1.0]).unwrap() + 1.0).abs() < 1e-12);
        assert!(spearman(&x, &[1.0, 1.0, 1.0, 1.0]).is_none());
        let r = spearman(&[1.0, 1.0, 2.0], &[1.0, 2.0, 3.0]).unwrap();
        assert!(r > 0.8 && r < 1.0);
    }

    #[test]
    fn upper_affine_bounds_every_point() {
        let x = [0.0, 1.0, 2.0, 3.0];
        let y = [1.0, 2.5, 2.0, 4.0];
        let (a, b) = upper_affine(&x, &y);
        assert!(x.iter().zip(&y).all(|(p, q)| *q <= a * p + b + 1e-12));
    }

    #[test]
    fn rng_streams_depend_on_tag() {
        use rand::Rng;
        let a: u64 = rng(7, "x").gen();
        let b: u64 = rng(7, "y").gen();
        let c: u64 = rng(7, "x").gen();
        assert_ne!(a, b);
        assert_eq!(a, c);
    }
}
