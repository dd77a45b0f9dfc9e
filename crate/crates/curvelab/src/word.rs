//! Cyclic words in the free group carried by the fat graph.

/// Letter code: `2e` crosses edge `e` forwards, `2e + 1` backwards.
pub type Letter = u8;

#[inline]
pub fn inv(x: Letter) -> Letter {
    x ^ 1
}

/// Inverse word.
pub fn inverse(w: &[Letter]) -> Vec<Letter> {
    w.iter().rev().map(|&x| inv(x)).collect()
}

/// Free reduction followed by cyclic reduction.
pub fn reduce_cyclic(w: &[Letter]) -> Vec<Letter> {
    let mut out: Vec<Letter> = Vec::with_capacity(w.len());
    for &x in w {
        if out.last() == Some(&inv(x)) {
            out.pop();
        } else {
            out.push(x);
        }
    }
    let mut lo = 0;
    let mut hi = out.len();
    while hi - lo >= 2 && out[lo] == inv(out[hi - 1]) {
        lo += 1;
        hi -= 1;
    }
    out[lo..hi].to_vec()
}

/// Lexicographically least rotation.
pub fn least_rotation(w: &[Letter]) -> Vec<Letter> {
    let n = w.len();
    if n == 0 {
        return Vec::new();
    }
    let mut best = 0;
    for r in 1..n {
        for k in 0..n {
            let a = w[(r + k) % n];
            let b = w[(best + k) % n];
            if a != b {
                if a < b {
                    best = r;
                }
                break;
            }
        }
    }
    (0..n).map(|k| w[(best + k) % n]).collect()
}

/// Canonical representative of an unoriented conjugacy class: the least
/// rotation of the word or of its inverse. The input must be cyclically
/// reduced.
pub fn canonical(w: &[Letter]) -> Vec<Letter> {
    let a = least_rotation(w);
    let b = least_rotation(&inverse(w));
    if a <= b {
        a
    } else {
        b
    }
}

/// Rotation of `w` starting at index `start`.
pub fn rotate(w: &[Letter], start: usize) -> Vec<Letter> {
    let n = w.len();
    (0..n).map(|k| w[(start + k) % n]).collect()
}

/// Smallest period `p` with `w = u^(n/p)`.
pub fn primitive_period(w: &[Letter]) -> usize {
    let n = w.len();
    for p in 1..=n {
        if n.is_multiple_of(p) && (0..n).all(|i| w[i] == w[(i + p) % n]) {
            return p;
        }
    }
    n
}

pub fn is_primitive(w: &[Letter]) -> bool {
    !w.is_empty() && primitive_period(w) == w.len()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduction() {
        assert_eq!(reduce_cyclic(&[0, 2, 3, 1]), Vec::<Letter>::new());
        assert_eq!(reduce_cyclic(&[1, 0, 2, 4, 0]), vec![2, 4, 0]);
        assert_eq!(reduce_cyclic(&[3, 0, 4, 2]), vec![0, 4]);
    }

    #[test]
    fn canonical_is_class_invariant() {
        let w = vec![0, 2, 1, 3];
        let c = canonical(&w);
        assert_eq!(canonical(&rotate(&w, 2)), c);
        assert_eq!(canonical(&inverse(&w)), c);
    }

    #[test]
    fn powers() {
        assert_eq!(primitive_period(&[0, 2, 0, 2]), 2);
        assert!(is_primitive(&[0, 2, 2]));
        assert!(!is_primitive(&[]));
    }
}
