//! Kauffman-bracket state sum for braid-closure diagrams.
//!
//! Every crossing of the closed braid diagram is smoothed in one of two ways
//! and the resulting loops are counted with a union-find over arc endpoints.
//! Weights are `s^{-1}` for the vertical smoothing of a positive crossing and
//! `s` for its cup-cap smoothing (inverted for negative crossings); each loop
//! contributes `d = -(s^2 + s^{-2})`, with `s^2 = q`.
//!
//! This crate deliberately shares no code with the tensor engine so it can
//! serve as an independent reference value.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Laurent polynomial in `s` with `i128` coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SPoly(BTreeMap<i64, i128>);

impl SPoly {
    pub fn zero() -> Self {
        SPoly(BTreeMap::new())
    }

    pub fn monomial(coeff: i128, exp: i64) -> Self {
        let mut p = SPoly::zero();
        p.add_term(exp, coeff);
        p
    }

    fn add_term(&mut self, exp: i64, coeff: i128) {
        let c = self.0.entry(exp).or_insert(0);
        *c = c.checked_add(coeff).expect("oracle coefficient overflow");
        if *c == 0 {
            self.0.remove(&exp);
        }
    }

    pub fn add(&self, other: &SPoly) -> SPoly {
        let mut out = self.clone();
        for (&e, &c) in &other.0 {
            out.add_term(e, c);
        }
        out
    }

    pub fn mul(&self, other: &SPoly) -> SPoly {
        let mut out = SPoly::zero();
        for (&e1, &c1) in &self.0 {
            for (&e2, &c2) in &other.0 {
                out.add_term(e1 + e2, c1.checked_mul(c2).expect("oracle coefficient overflow"));
            }
        }
        out
    }

    pub fn pow(&self, n: u32) -> SPoly {
        (0..n).fold(SPoly::monomial(1, 0), |acc, _| acc.mul(self))
    }

    /// `(exponent of s, coefficient)` pairs in ascending exponent order.
    pub fn terms(&self) -> Vec<(i64, i128)> {
        self.0.iter().map(|(&e, &c)| (e, c)).collect()
    }

    /// Exact value at a rational `q`; requires every `s` exponent to be even.
    pub fn eval_q(&self, q: &BigRational) -> Option<BigRational> {
        let mut acc = BigRational::zero();
        for (&e, &c) in &self.0 {
            if e % 2 != 0 {
                return None;
            }
            let k = (e / 2) as i32;
            let base = if k >= 0 { q.clone() } else { q.recip() };
            let mut term = BigRational::one();
            for _ in 0..k.unsigned_abs() {
                term *= &base;
            }
            acc += term * BigRational::from_integer(BigInt::from(c));
        }
        Some(acc)
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut cur = x;
        while self.parent[cur] != root {
            let next = self.parent[cur];
            self.parent[cur] = root;
            cur = next;
        }
        root
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra] = rb;
        }
    }

    fn components(&mut self) -> usize {
        (0..self.parent.len()).filter(|&i| self.find(i) == i).count()
    }
}

fn loop_count(strands: usize, letters: &[i32], state: u64) -> usize {
    let levels = letters.len() + 1;
    let node = |p: usize, t: usize| p * levels + t;
    let mut uf = UnionFind::new(strands * levels);
    for p in 0..strands {
        uf.union(node(p, levels - 1), node(p, 0));
    }
    for (t, &letter) in letters.iter().enumerate() {
        let i = letter.unsigned_abs() as usize - 1;
        for p in 0..strands {
            if p != i && p != i + 1 {
                uf.union(node(p, t), node(p, t + 1));
            }
        }
        if state >> t & 1 == 0 {
            uf.union(node(i, t), node(i, t + 1));
            uf.union(node(i + 1, t), node(i + 1, t + 1));
        } else {
            uf.union(node(i, t), node(i + 1, t));
            uf.union(node(i, t + 1), node(i + 1, t + 1));
        }
    }
    uf.components()
}

/// Unnormalized bracket `<L>` of the closure of a braid word (letters `±i`).
pub fn bracket(strands: usize, letters: &[i32]) -> SPoly {
    assert!(letters.len() < 40, "state sum limited to fewer than 40 crossings");
    for &l in letters {
        assert!(l != 0 && (l.unsigned_abs() as usize) < strands, "bad braid letter {l}");
    }
    let d = SPoly::monomial(-1, 2).add(&SPoly::monomial(-1, -2));
    let mut total = SPoly::zero();
    for state in 0..(1u64 << letters.len()) {
        let mut exp = 0i64;
        for (t, &letter) in letters.iter().enumerate() {
            let cup = state >> t & 1 == 1;
            let sign = if letter > 0 { 1 } else { -1 };
            exp += if cup { sign } else { -sign };
        }
        let loops = loop_count(strands, letters, state) as u32;
        total = total.add(&SPoly::monomial(1, exp).mul(&d.pow(loops)));
    }
    total
}

/// Writhe of the closed braid diagram: the exponent sum of the word.
pub fn writhe(letters: &[i32]) -> i64 {
    letters.iter().map(|l| l.signum() as i64).sum()
}

/// `V_L = (-q^{3/2})^{w(L)} <L>`, written in `s`.
pub fn normalized_bracket(strands: usize, letters: &[i32]) -> SPoly {
    let w = writhe(letters);
    let sign = if w.rem_euclid(2) == 0 { 1 } else { -1 };
    SPoly::monomial(sign, 3 * w).mul(&bracket(strands, letters))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknot_is_loop_value() {
        assert_eq!(bracket(1, &[]), SPoly::monomial(-1, 2).add(&SPoly::monomial(-1, -2)));
    }

    #[test]
    fn curl_removal_factor() {
        // One positive curl multiplies the bracket by -s^{-3}.
        let unknot = bracket(1, &[]);
        let curl = bracket(2, &[1]);
        assert_eq!(curl, unknot.mul(&SPoly::monomial(-1, -3)));
        let neg = bracket(2, &[-1]);
        assert_eq!(neg, unknot.mul(&SPoly::monomial(-1, 3)));
    }

    #[test]
    fn normalized_bracket_unchanged_by_stabilization() {
        let a = normalized_bracket(2, &[1, 1, 1]);
        let b = normalized_bracket(3, &[1, 1, 1, 2]);
        let c = normalized_bracket(3, &[1, 1, 1, -2]);
        assert_eq!(a, b);
        assert_eq!(a, c);
    }

    #[test]
    fn standard_knots() {
        // d * (t + t^3 - t^4), d * (t^-2 - t^-1 + 1 - t + t^2), d * (-t^{1/2} - t^{5/2}) in s.
        let t = |n: usize, w: &[i32]| normalized_bracket(n, w).terms();
        assert_eq!(t(2, &[1, 1, 1]), vec![(2, -1), (6, -1), (10, -1), (18, 1)]);
        assert_eq!(t(3, &[1, -2, 1, -2]), vec![(-10, -1), (10, -1)]);
        assert_eq!(t(2, &[1, 1]), vec![(0, 1), (4, 1), (8, 1), (12, 1)]);
    }
}
