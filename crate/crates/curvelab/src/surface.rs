//! Surface signatures and the one-vertex fat graph used to model every
//! supported surface.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::word::{inv, Letter};

/// A connected orientable surface of genus `genus` with `boundary`
/// punctures (boundary components and punctures are treated alike).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SurfaceSig {
    pub genus: u32,
    pub boundary: u32,
}

/// Signatures accepted by the surface constructors.
pub const SUPPORTED: [SurfaceSig; 8] = [
    SurfaceSig::new(0, 3),
    SurfaceSig::new(0, 4),
    SurfaceSig::new(0, 5),
    SurfaceSig::new(1, 1),
    SurfaceSig::new(1, 2),
    SurfaceSig::new(1, 3),
    SurfaceSig::new(2, 0),
    SurfaceSig::new(2, 1),
];

impl SurfaceSig {
    pub const fn new(genus: u32, boundary: u32) -> Self {
        SurfaceSig { genus, boundary }
    }

    /// 3g - 3 + n, the number of curves in a pants decomposition.
    pub fn complexity(&self) -> i64 {
        3 * self.genus as i64 - 3 + self.boundary as i64
    }

    pub fn euler(&self) -> i64 {
        2 - 2 * self.genus as i64 - self.boundary as i64
    }

    pub fn is_supported(&self) -> bool {
        SUPPORTED.contains(self)
    }

    pub fn check_supported(&self) -> Result<()> {
        if self.is_supported() {
            Ok(())
        } else {
            Err(Error::UnsupportedSurface(self.to_string()))
        }
    }

    /// True for the closed genus-two surface, which is modeled through its
    /// once-punctured cover by forgetting the puncture.
    pub fn is_closed(&self) -> bool {
        self.boundary == 0
    }

    /// The punctured surface whose fat graph carries this surface's curves.
    pub fn carrier(&self) -> SurfaceSig {
        if self.is_closed() {
            SurfaceSig::new(self.genus, 1)
        } else {
            *self
        }
    }
}

impl fmt::Display for SurfaceSig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "S_{{{},{}}}", self.genus, self.boundary)
    }
}

impl FromStr for SurfaceSig {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().trim_start_matches("S_").trim_matches(|c| c == '{' || c == '}');
        let mut parts = t.split(',');
        let g = parts.next().and_then(|x| x.trim().parse().ok());
        let n = parts.next().and_then(|x| x.trim().parse().ok());
        match (g, n, parts.next()) {
            (Some(g), Some(n), None) => Ok(SurfaceSig::new(g, n)),
            _ => Err(Error::Parse(format!("bad surface signature {s:?}, expected g,n"))),
        }
    }
}

/// One-vertex ribbon graph: an ideal 2r-gon whose sides are glued in pairs.
///
/// Letters `2e` and `2e + 1` cross edge `e` in opposite directions. Reading
/// letter `x` means leaving the polygon through side `side_of(x)` and
/// re-entering through side `side_of(inv(x))`. Corners of the polygon are
/// punctures; corner `k` sits at the start of side `k` in ccw order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FatGraph {
    pub sig: SurfaceSig,
    rank: usize,
    side_letter: Vec<Letter>,
    letter_side: Vec<usize>,
    corner_next: Vec<usize>,
    corner_puncture: Vec<usize>,
    punctures: Vec<Vec<usize>>,
}

impl FatGraph {
    /// Builds the standard fat graph: genus handles `a b A B` followed by
    /// `c C` pairs for the extra punctures. The closed genus-two surface
    /// uses the fat graph of its once-punctured cover.
    pub fn new(sig: SurfaceSig) -> Result<Self> {
        sig.check_supported()?;
        let carrier = sig.carrier();
        let g = carrier.genus as usize;
        let n = carrier.boundary as usize;
        let rank = 2 * g + n - 1;
        let mut side_letter = Vec::with_capacity(2 * rank);
        for h in 0..g {
            let a = (4 * h) as Letter;
            let b = (4 * h + 2) as Letter;
            side_letter.extend_from_slice(&[a, b, inv(a), inv(b)]);
        }
        for c in 0..n - 1 {
            let x = (2 * (2 * g + c)) as Letter;
            side_letter.extend_from_slice(&[x, inv(x)]);
        }
        let mut letter_side = vec![0; 2 * rank];
        for (s, &l) in side_letter.iter().enumerate() {
            letter_side[l as usize] = s;
        }
        let m = 2 * rank;
        let corner_next: Vec<usize> = (0..m)
            .map(|k| (letter_side[inv(side_letter[k]) as usize] + 1) % m)
            .collect();
        let mut corner_puncture = vec![usize::MAX; m];
        let mut punctures = Vec::new();
        for k in 0..m {
            if corner_puncture[k] != usize::MAX {
                continue;
            }
            let id = punctures.len();
            let mut cyc = Vec::new();
            let mut c = k;
            while corner_puncture[c] == usize::MAX {
                corner_puncture[c] = id;
                cyc.push(c);
                c = corner_next[c];
            }
            punctures.push(cyc);
        }
        debug_assert_eq!(punctures.len(), n);
        Ok(FatGraph { sig, rank, side_letter, letter_side, corner_next, corner_puncture, punctures })
    }

    /// Number of polygon edge pairs (generators).
    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Number of polygon sides, 2r.
    pub fn sides(&self) -> usize {
        2 * self.rank
    }

    pub fn letter_count(&self) -> usize {
        2 * self.rank
    }

    pub fn side_letter(&self, side: usize) -> Letter {
        self.side_letter[side]
    }

    pub fn side_of(&self, letter: Letter) -> usize {
        self.letter_side[letter as usize]
    }

    /// Side glued to `side`.
    pub fn partner(&self, side: usize) -> usize {
        self.side_of(inv(self.side_letter[side]))
    }

    /// The corner reached after circling corner `k` once through side `k`.
    pub fn corner_next(&self, k: usize) -> usize {
        self.corner_next[k]
    }

    pub fn corner_puncture(&self, k: usize) -> usize {
        self.corner_puncture[k]
    }

    /// Corner cycles, one per puncture.
    pub fn punctures(&self) -> &[Vec<usize>] {
        &self.punctures
    }

    /// Cyclic word of the loop around puncture `p`.
    pub fn peripheral_word(&self, p: usize) -> Vec<Letter> {
        self.punctures[p].iter().map(|&k| self.side_letter[k]).collect()
    }

    /// Ccw distance from side `from` to side `to`.
    pub fn side_gap(&self, from: usize, to: usize) -> usize {
        (to + self.sides() - from) % self.sides()
    }

    /// Human-readable letter name (`a`, `A`, `b`, ...).
    pub fn letter_name(letter: Letter) -> char {
        let e = letter / 2;
        let base = if e < 26 { (b'a' + e) as char } else { '?' };
        if letter.is_multiple_of(2) {
            base
        } else {
            base.to_ascii_uppercase()
        }
    }

    /// Parses a word written with letter names.
    pub fn parse_word(&self, text: &str) -> Result<Vec<Letter>> {
        text.chars()
            .filter(|c| !c.is_whitespace())
            .map(|c| {
                let lower = c.to_ascii_lowercase();
                if !lower.is_ascii_lowercase() {
                    return Err(Error::Parse(format!("bad letter {c:?}")));
                }
                let e = lower as u8 - b'a';
                let l = 2 * e + u8::from(c.is_ascii_uppercase());
                if (l as usize) < self.letter_count() {
                    Ok(l)
                } else {
                    Err(Error::Parse(format!("letter {c:?} not on {}", self.sig)))
                }
            })
            .collect()
    }

    pub fn format_word(word: &[Letter]) -> String {
        word.iter().map(|&l| Self::letter_name(l)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complexity_values() {
        assert_eq!(SurfaceSig::new(1, 1).complexity(), 1);
        assert_eq!(SurfaceSig::new(2, 0).complexity(), 3);
        assert_eq!(SurfaceSig::new(2, 1).complexity(), 4);
        assert_eq!(SurfaceSig::new(0, 5).complexity(), 2);
    }

    #[test]
    fn puncture_counts_match_signature() {
        for sig in SUPPORTED {
            let fg = FatGraph::new(sig).unwrap();
            let carrier = sig.carrier();
            assert_eq!(fg.punctures().len(), carrier.boundary as usize, "{sig}");
            let chi = 1 - fg.rank() as i64;
            assert_eq!(chi, carrier.euler(), "{sig}");
        }
    }

    #[test]
    fn torus_peripheral_is_commutator() {
        let fg = FatGraph::new(SurfaceSig::new(1, 1)).unwrap();
        assert_eq!(FatGraph::format_word(&fg.peripheral_word(0)), "aBAb");
    }

    #[test]
    fn parse_roundtrip() {
        let sig: SurfaceSig = "2,1".parse().unwrap();
        assert_eq!(sig, SurfaceSig::new(2, 1));
        assert!(SurfaceSig::new(3, 0).check_supported().is_err());
        let fg = FatGraph::new(sig).unwrap();
        let w = fg.parse_word("abAB").unwrap();
        assert_eq!(FatGraph::format_word(&w), "abAB");
        assert!(fg.parse_word("e").is_err());
    }
}
