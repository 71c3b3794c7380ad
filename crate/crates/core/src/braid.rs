//! Braid words, Markov moves and the tensor representation of `B_n`.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::models::VertexModel;
use crate::ring::RingElem;
use crate::tensor::SqMatrix;

/// Letter `±i` is `b_i^{±1}`, with `1 ≤ i < strands`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<i32>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum MarkovMove {
    /// `g·w·g⁻¹` for a letter `g`.
    Conjugate(i32),
    /// Append `b_n` on `n + 1` strands.
    StabilizePos,
    /// Append `b_n⁻¹` on `n + 1` strands.
    StabilizeNeg,
    /// Cancel adjacent `i, -i` pairs (cyclically adjacent ones are kept).
    FreeReduce,
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<i32>) -> Result<Self> {
        if strands == 0 {
            return Err(Error::BadLetter("a braid needs at least one strand".into()));
        }
        if let Some(&bad) = letters.iter().find(|&&l| l == 0 || l.unsigned_abs() as usize >= strands) {
            return Err(Error::BadLetter(format!("{bad} on {strands} strands")));
        }
        Ok(BraidWord { strands, letters })
    }

    /// The identity braid on `strands` strands.
    pub fn identity(strands: usize) -> Self {
        BraidWord { strands: strands.max(1), letters: Vec::new() }
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Exponent sum of the letters.
    pub fn writhe(&self) -> i64 {
        self.letters.iter().map(|l| l.signum() as i64).sum()
    }

    pub fn inverse(&self) -> BraidWord {
        BraidWord { strands: self.strands, letters: self.letters.iter().rev().map(|l| -l).collect() }
    }

    /// `self · other`, on the larger strand count.
    pub fn concat(&self, other: &BraidWord) -> BraidWord {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        BraidWord { strands: self.strands.max(other.strands), letters }
    }

    /// Append `b_i^k` (negative `k` for inverses).
    pub fn with_power(&self, i: i32, k: i32) -> Result<BraidWord> {
        let mut letters = self.letters.clone();
        letters.extend(std::iter::repeat(if k >= 0 { i } else { -i }).take(k.unsigned_abs() as usize));
        BraidWord::new(self.strands, letters)
    }

    pub fn markov_move(&self, mv: MarkovMove) -> Result<BraidWord> {
        match mv {
            MarkovMove::Conjugate(g) => {
                let mut letters = vec![g];
                letters.extend_from_slice(&self.letters);
                letters.push(-g);
                BraidWord::new(self.strands, letters)
            }
            MarkovMove::StabilizePos | MarkovMove::StabilizeNeg => {
                let n = self.strands as i32;
                let mut letters = self.letters.clone();
                letters.push(if mv == MarkovMove::StabilizePos { n } else { -n });
                BraidWord::new(self.strands + 1, letters)
            }
            MarkovMove::FreeReduce => {
                let mut out: Vec<i32> = Vec::with_capacity(self.letters.len());
                for &l in &self.letters {
                    if out.last() == Some(&-l) {
                        out.pop();
                    } else {
                        out.push(l);
                    }
                }
                Ok(BraidWord { strands: self.strands, letters: out })
            }
        }
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let text: Vec<String> = self.letters.iter().map(i32::to_string).collect();
        write!(f, "[{}] on {} strands", text.join(" "), self.strands)
    }
}

/// Parse whitespace-separated signed integers. Without `strands` the count is
/// `max|letter| + 1`.
pub fn parse_braid(text: &str, strands: Option<usize>) -> Result<BraidWord> {
    let letters = text
        .split(|c: char| c.is_whitespace() || c == ',')
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<i32>().map_err(|_| Error::BadLetter(t.to_string())))
        .collect::<Result<Vec<i32>>>()?;
    if letters.contains(&0) {
        return Err(Error::BadLetter("0".into()));
    }
    let needed = letters.iter().map(|l| l.unsigned_abs() as usize + 1).max().unwrap_or(1);
    BraidWord::new(strands.unwrap_or(needed), letters)
}

/// `M · (1^{⊗(i-1)} ⊗ G ⊗ 1^{⊗(n-i-1)})` where `G` acts on tensor factors
/// `i-1, i` (0-based) of an `n`-fold product of `N`-dimensional spaces.
pub fn apply_local_right(m: &SqMatrix, g: &SqMatrix, i: usize, n: usize, states: usize) -> SqMatrix {
    let after = states.pow((n - i - 1) as u32);
    let pair = states * states;
    let mut out = SqMatrix::zero(m.dim());
    for row in 0..m.dim() {
        let mut acc: BTreeMap<usize, RingElem> = BTreeMap::new();
        for (&col, v) in m.row(row) {
            let suffix = col % after;
            let x = (col / after) % pair;
            let prefix = col / (after * pair);
            for (&y, w) in g.row(x) {
                let target = (prefix * pair + y) * after + suffix;
                let p = v * w;
                match acc.get_mut(&target) {
                    Some(e) => *e = &*e + &p,
                    None => {
                        acc.insert(target, p);
                    }
                }
            }
        }
        for (c, v) in acc {
            out.set(row, c, v);
        }
    }
    out
}

/// Product over letters of `1^{⊗(i-1)} ⊗ R^{±1} ⊗ 1^{⊗(n-i-1)}`, built one
/// letter at a time.
pub fn represent(w: &BraidWord, m: &VertexModel) -> SqMatrix {
    let dim = m.n.pow(w.strands as u32);
    w.letters.iter().fold(SqMatrix::identity(dim), |acc, &l| {
        let g = if l > 0 { &m.r } else { &m.r_inv };
        apply_local_right(&acc, g, l.unsigned_abs() as usize, w.strands, m.n)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::{build_model, Sign};

    #[test]
    fn parsing() {
        let w = parse_braid("1 1 1", None).unwrap();
        assert_eq!((w.strands(), w.letters()), (2, &[1, 1, 1][..]));
        let w = parse_braid("3 3 3 -1 -1", None).unwrap();
        assert_eq!((w.strands(), w.writhe()), (4, 1));
        assert!(matches!(parse_braid("0", None), Err(Error::BadLetter(_))));
        assert!(matches!(parse_braid("2", Some(2)), Err(Error::BadLetter(_))));
        assert!(matches!(parse_braid("1 x", None), Err(Error::BadLetter(_))));
        assert_eq!(parse_braid("", None).unwrap(), BraidWord::identity(1));
        assert_eq!(parse_braid("1", Some(4)).unwrap().strands(), 4);
    }

    #[test]
    fn moves() {
        let w = parse_braid("1 1 1", None).unwrap();
        let s = w.markov_move(MarkovMove::StabilizePos).unwrap();
        assert_eq!((s.strands(), s.letters()), (3, &[1, 1, 1, 2][..]));
        let c = parse_braid("1", None).unwrap().markov_move(MarkovMove::Conjugate(1)).unwrap();
        assert_eq!(c.letters(), &[1, 1, -1]);
        assert_eq!(c.markov_move(MarkovMove::FreeReduce).unwrap().letters(), &[1]);
        assert_eq!(c.writhe(), 1);
        assert!(w.markov_move(MarkovMove::Conjugate(2)).is_err());
    }

    #[test]
    fn single_generator_is_r() {
        let m = build_model(2, Sign::Plus).unwrap();
        assert_eq!(represent(&parse_braid("1", None).unwrap(), &m), m.r);
        assert!(represent(&BraidWord::identity(2), &m).is_identity());
        assert!(represent(&parse_braid("1 -1", None).unwrap(), &m).is_identity());
    }

    #[test]
    fn local_application_matches_kron() {
        let m = build_model(3, Sign::Plus).unwrap();
        let id = SqMatrix::identity(3);
        let b2 = represent(&parse_braid("2", Some(3)).unwrap(), &m);
        assert_eq!(b2, id.kron(&m.r));
        let b1 = represent(&parse_braid("1", Some(3)).unwrap(), &m);
        assert_eq!(b1, m.r.kron(&id));
    }
}
