//! Sparse exact matrices over [`RingElem`] and the four-index convention.

mod nullspace;

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ring::{parse, RingElem, Variable};

pub use nullspace::{nullspace, NullspaceResult, PivotStats};

/// A label from an index set, stored as twice its value so that `±1/2`,
/// `±3/2` are integers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct HalfInt(pub i32);

impl HalfInt {
    pub fn twice(self) -> i32 {
        self.0
    }

    pub fn value(self) -> f64 {
        self.0 as f64 / 2.0
    }

    pub fn neg(self) -> HalfInt {
        HalfInt(-self.0)
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 % 2 == 0 {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

/// Ordered index set `-(N-1)/2, ..., (N-1)/2` with the row/column flattening
/// used for every four-index object: `R^a_c^b_d` lives at row
/// `flatten(a, b)`, column `flatten(c, d)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IndexConvention {
    pub n: usize,
    pub labels: Vec<HalfInt>,
}

impl IndexConvention {
    pub fn new(n: usize) -> Self {
        let labels = (0..n as i32).map(|i| HalfInt(2 * i - (n as i32 - 1))).collect();
        IndexConvention { n, labels }
    }

    pub fn pos(&self, a: HalfInt) -> Option<usize> {
        let p = (a.0 + self.n as i32 - 1) / 2;
        ((a.0 + self.n as i32 - 1) % 2 == 0 && p >= 0 && (p as usize) < self.n).then_some(p as usize)
    }

    pub fn flatten(&self, a: HalfInt, b: HalfInt) -> usize {
        self.pos(a).expect("label outside index set") * self.n + self.pos(b).expect("label outside index set")
    }

    pub fn label(&self, p: usize) -> HalfInt {
        self.labels[p]
    }

    /// Inverse of [`flatten`](Self::flatten).
    pub fn unflatten(&self, k: usize) -> (HalfInt, HalfInt) {
        (self.labels[k / self.n], self.labels[k % self.n])
    }
}

/// Square sparse matrix; row `i` maps column index to a nonzero entry.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SqMatrix {
    dim: usize,
    rows: Vec<BTreeMap<usize, RingElem>>,
}

impl SqMatrix {
    pub fn zero(dim: usize) -> Self {
        SqMatrix { dim, rows: vec![BTreeMap::new(); dim] }
    }

    pub fn identity(dim: usize) -> Self {
        SqMatrix::scalar(dim, &RingElem::one())
    }

    pub fn scalar(dim: usize, c: &RingElem) -> Self {
        let mut m = SqMatrix::zero(dim);
        if !c.is_zero() {
            for i in 0..dim {
                m.rows[i].insert(i, c.clone());
            }
        }
        m
    }

    pub fn from_entries<I: IntoIterator<Item = (usize, usize, RingElem)>>(dim: usize, entries: I) -> Self {
        let mut m = SqMatrix::zero(dim);
        for (i, j, v) in entries {
            m.add_at(i, j, &v);
        }
        m
    }

    /// Build from a dense row-major table.
    pub fn from_dense(rows: Vec<Vec<RingElem>>) -> Self {
        let dim = rows.len();
        let mut m = SqMatrix::zero(dim);
        for (i, row) in rows.into_iter().enumerate() {
            assert_eq!(row.len(), dim, "dense table is not square");
            for (j, v) in row.into_iter().enumerate() {
                m.set(i, j, v);
            }
        }
        m
    }

    /// `P^a_c^b_d = δ^a_d δ^b_c`: the swap of the two tensor factors.
    pub fn permutation(n: usize) -> Self {
        SqMatrix::from_entries(
            n * n,
            (0..n).flat_map(|a| (0..n).map(move |b| (a * n + b, b * n + a, RingElem::one()))),
        )
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> Option<&RingElem> {
        self.rows[i].get(&j)
    }

    /// Entry value, zero when absent.
    pub fn at(&self, i: usize, j: usize) -> RingElem {
        self.get(i, j).cloned().unwrap_or_default()
    }

    pub fn set(&mut self, i: usize, j: usize, v: RingElem) {
        if v.is_zero() {
            self.rows[i].remove(&j);
        } else {
            self.rows[i].insert(j, v);
        }
    }

    pub fn add_at(&mut self, i: usize, j: usize, v: &RingElem) {
        if v.is_zero() {
            return;
        }
        match self.rows[i].get_mut(&j) {
            Some(x) => {
                *x = &*x + v;
                if x.is_zero() {
                    self.rows[i].remove(&j);
                }
            }
            None => {
                self.rows[i].insert(j, v.clone());
            }
        }
    }

    pub fn row(&self, i: usize) -> &BTreeMap<usize, RingElem> {
        &self.rows[i]
    }

    /// Nonzero entries in row-major order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &RingElem)> + '_ {
        self.rows.iter().enumerate().flat_map(|(i, r)| r.iter().map(move |(&j, v)| (i, j, v)))
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(BTreeMap::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(BTreeMap::is_empty)
    }

    pub fn is_identity(&self) -> bool {
        self == &SqMatrix::identity(self.dim)
    }

    pub fn is_diagonal(&self) -> bool {
        self.entries().all(|(i, j, _)| i == j)
    }

    fn check_dim(&self, other: &SqMatrix) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch(self.dim, other.dim));
        }
        Ok(())
    }

    pub fn matmul(&self, other: &SqMatrix) -> Result<SqMatrix> {
        self.check_dim(other)?;
        let mut out = SqMatrix::zero(self.dim);
        for (i, row) in self.rows.iter().enumerate() {
            let mut acc: BTreeMap<usize, RingElem> = BTreeMap::new();
            for (k, a) in row {
                for (j, b) in &other.rows[*k] {
                    let p = a * b;
                    match acc.get_mut(j) {
                        Some(x) => *x = &*x + &p,
                        None => {
                            acc.insert(*j, p);
                        }
                    }
                }
            }
            acc.retain(|_, v| !v.is_zero());
            out.rows[i] = acc;
        }
        Ok(out)
    }

    /// Matrix product for operands already known to be conformable.
    pub fn mul(&self, other: &SqMatrix) -> SqMatrix {
        self.matmul(other).expect("conformable matrices")
    }

    pub fn add(&self, other: &SqMatrix) -> Result<SqMatrix> {
        self.check_dim(other)?;
        let mut out = self.clone();
        for (i, j, v) in other.entries() {
            out.add_at(i, j, v);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &SqMatrix) -> Result<SqMatrix> {
        self.add(&other.scale(&RingElem::int(-1)))
    }

    pub fn scale(&self, c: &RingElem) -> SqMatrix {
        if c.is_zero() {
            return SqMatrix::zero(self.dim);
        }
        let rows = self
            .rows
            .iter()
            .map(|r| r.iter().map(|(&j, v)| (j, v * c)).filter(|(_, v)| !v.is_zero()).collect())
            .collect();
        SqMatrix { dim: self.dim, rows }
    }

    pub fn transpose(&self) -> SqMatrix {
        let mut out = SqMatrix::zero(self.dim);
        for (i, j, v) in self.entries() {
            out.rows[j].insert(i, v.clone());
        }
        out
    }

    /// `(A⊗B)[(i·dimB+k), (j·dimB+l)] = A[i,j]·B[k,l]`.
    pub fn kron(&self, other: &SqMatrix) -> SqMatrix {
        let db = other.dim;
        let mut out = SqMatrix::zero(self.dim * db);
        for (i, j, a) in self.entries() {
            for (k, l, b) in other.entries() {
                out.rows[i * db + k].insert(j * db + l, a * b);
            }
        }
        out
    }

    /// `A^{⊗n}`, with `A^{⊗0}` the 1×1 identity.
    pub fn kron_power(&self, n: usize) -> SqMatrix {
        (0..n).fold(SqMatrix::identity(1), |acc, _| acc.kron(self))
    }

    pub fn trace(&self) -> RingElem {
        (0..self.dim).filter_map(|i| self.get(i, i)).sum()
    }

    /// `trace(A·B)` without forming the product.
    pub fn trace_of_product(&self, other: &SqMatrix) -> Result<RingElem> {
        self.check_dim(other)?;
        Ok(self
            .entries()
            .filter_map(|(i, j, a)| other.get(j, i).map(|b| a * b))
            .sum())
    }

    /// Determinant by cofactor expansion; meant for the small `M` matrices.
    pub fn determinant(&self) -> RingElem {
        fn det(m: &SqMatrix, rows: &[usize], cols: &[usize]) -> RingElem {
            if rows.is_empty() {
                return RingElem::one();
            }
            let r = rows[0];
            let mut acc = RingElem::zero();
            for (idx, &c) in cols.iter().enumerate() {
                if let Some(v) = m.get(r, c) {
                    let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
                    let minor = det(m, &rows[1..], &rest);
                    let term = v * &minor;
                    acc = if idx % 2 == 0 { &acc + &term } else { &acc - &term };
                }
            }
            acc
        }
        let idx: Vec<usize> = (0..self.dim).collect();
        det(self, &idx, &idx)
    }

    /// Exact inverse through the adjugate; meant for the small `M` matrices.
    pub fn inverse_exact(&self) -> Result<SqMatrix> {
        let det = self.determinant();
        if det.is_zero() {
            return Err(Error::DomainError("singular matrix".into()));
        }
        let n = self.dim;
        let mut out = SqMatrix::zero(n);
        for i in 0..n {
            for j in 0..n {
                let minor = SqMatrix::from_entries(
                    n - 1,
                    self.entries()
                        .filter(|(r, c, _)| *r != j && *c != i)
                        .map(|(r, c, v)| (r - (r > j) as usize, c - (c > i) as usize, v.clone())),
                );
                let cof = minor.determinant();
                let cof = if (i + j) % 2 == 0 { cof } else { -cof };
                out.set(i, j, cof.exact_div(&det)?);
            }
        }
        Ok(out)
    }

    /// `K[a,b] = Σ_{c,e} R[flatten(a,c), flatten(b,e)]·μ[e,c]`: close the
    /// second strand of a two-strand operator through `μ`.
    pub fn partial_close_second(&self, mu: &SqMatrix, conv: &IndexConvention) -> Result<SqMatrix> {
        let n = conv.n;
        if self.dim != n * n {
            return Err(Error::DimensionMismatch(self.dim, n * n));
        }
        if mu.dim != n {
            return Err(Error::DimensionMismatch(mu.dim, n));
        }
        let mut out = SqMatrix::zero(n);
        for (row, col, v) in self.entries() {
            let (a, c) = (row / n, row % n);
            let (b, e) = (col / n, col % n);
            if let Some(m) = mu.get(e, c) {
                out.add_at(a, b, &(v * m));
            }
        }
        Ok(out)
    }

    /// Inverse from a minimal polynomial `Π (R - λ_k) = 0` with unit `λ_k`.
    ///
    /// Writing the expanded product as `Σ c_j R^j`, the inverse is
    /// `-(Σ_{j≥1} c_j R^{j-1}) / c_0` and `c_0 = Π(-λ_k)` is a unit.
    pub fn inverse_via_minpoly(&self, eigenvalues: &[RingElem]) -> Result<SqMatrix> {
        if let Some(bad) = eigenvalues.iter().find(|l| !l.is_unit()) {
            return Err(Error::NonUnitEigenvalue(bad.to_string()));
        }
        let id = SqMatrix::identity(self.dim);
        let mut prod = id.clone();
        for l in eigenvalues {
            prod = prod.mul(&self.sub(&id.scale(l))?);
        }
        if !prod.is_zero() {
            return Err(Error::MinPolyViolated);
        }
        // coefficients of Π (x - λ_k), lowest degree first
        let mut coeffs = vec![RingElem::one()];
        for l in eigenvalues {
            let mut next = vec![RingElem::zero(); coeffs.len() + 1];
            for (j, c) in coeffs.iter().enumerate() {
                next[j + 1] = &next[j + 1] + c;
                next[j] = &next[j] - &(c * l);
            }
            coeffs = next;
        }
        let c0_inv = coeffs[0].unit_inverse().expect("product of units");
        // Horner: Σ_{j≥1} c_j R^{j-1}
        let mut acc = SqMatrix::zero(self.dim);
        for c in coeffs[1..].iter().rev() {
            acc = acc.mul(self).add(&id.scale(c))?;
        }
        Ok(acc.scale(&-c0_inv))
    }

    /// Numeric value at `q`; fails with [`Error::DomainError`] as
    /// [`RingElem::eval_numeric`] does.
    pub fn eval_numeric(&self, q: f64) -> Result<nalgebra::DMatrix<f64>> {
        let mut out = nalgebra::DMatrix::zeros(self.dim, self.dim);
        for (i, j, v) in self.entries() {
            out[(i, j)] = v.eval_numeric(q)?;
        }
        Ok(out)
    }

    pub fn to_json(&self) -> MatrixJson {
        MatrixJson {
            dim: self.dim,
            entries: self
                .entries()
                .map(|(i, j, v)| (i, j, v.render(Variable::Q).text))
                .collect(),
        }
    }

    pub fn from_json(json: &MatrixJson) -> Result<SqMatrix> {
        let mut m = SqMatrix::zero(json.dim);
        for (i, j, text) in &json.entries {
            if *i >= json.dim || *j >= json.dim {
                return Err(Error::Parse(format!("entry ({i}, {j}) outside dimension {}", json.dim)));
            }
            m.add_at(*i, *j, &parse(text)?);
        }
        Ok(m)
    }
}

/// JSON form `{dim, entries: [[row, col, poly-text], ...]}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub dim: usize,
    pub entries: Vec<(usize, usize, String)>,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(k: i64) -> RingElem {
        RingElem::q_pow(k)
    }

    #[test]
    fn flatten_orders_labels_ascending() {
        let c = IndexConvention::new(2);
        assert_eq!(c.labels, vec![HalfInt(-1), HalfInt(1)]);
        assert_eq!(c.flatten(HalfInt(-1), HalfInt(1)), 1);
        assert_eq!(c.flatten(HalfInt(1), HalfInt(-1)), 2);
        let c3 = IndexConvention::new(3);
        assert_eq!(c3.labels, vec![HalfInt(-2), HalfInt(0), HalfInt(2)]);
        assert_eq!(c3.pos(HalfInt(1)), None);
        assert_eq!(c3.unflatten(5), (HalfInt(0), HalfInt(2)));
        assert_eq!(HalfInt(-3).to_string(), "-3/2");
    }

    #[test]
    fn permutation_is_an_involution() {
        for n in 2..=4 {
            let p = SqMatrix::permutation(n);
            assert!(p.mul(&p).is_identity());
        }
    }

    #[test]
    fn kron_dims_and_mixed_product() {
        let a = SqMatrix::from_entries(2, [(0, 1, q(1)), (1, 0, RingElem::int(2))]);
        let b = SqMatrix::from_entries(2, [(0, 0, q(-1)), (1, 1, RingElem::rad())]);
        let k = a.kron(&b);
        assert_eq!(k.dim(), 4);
        assert_eq!(k.at(1, 3), &q(1) * &RingElem::rad());
        let lhs = a.kron(&b).mul(&b.kron(&a));
        let rhs = a.mul(&b).kron(&b.mul(&a));
        assert_eq!(lhs, rhs);
        assert!(SqMatrix::identity(2).kron(&SqMatrix::identity(2)).is_identity());
    }

    #[test]
    fn dimension_mismatch_is_reported() {
        let r = SqMatrix::identity(2).matmul(&SqMatrix::identity(3));
        assert_eq!(r, Err(Error::DimensionMismatch(2, 3)));
    }

    #[test]
    fn trivial_partial_closure() {
        let conv = IndexConvention::new(3);
        let k = SqMatrix::identity(9)
            .partial_close_second(&SqMatrix::identity(3), &conv)
            .unwrap();
        assert_eq!(k, SqMatrix::scalar(3, &RingElem::int(3)));
    }

    #[test]
    fn minpoly_inverse_of_scalar() {
        let c = RingElem::mono(-1, 3);
        let m = SqMatrix::scalar(4, &c);
        let inv = m.inverse_via_minpoly(&[c.clone()]).unwrap();
        assert_eq!(inv, SqMatrix::scalar(4, &RingElem::mono(-1, -3)));
        assert_eq!(m.inverse_via_minpoly(&[q(1)]), Err(Error::MinPolyViolated));
        assert!(matches!(
            m.inverse_via_minpoly(&[RingElem::int(2)]),
            Err(Error::NonUnitEigenvalue(_))
        ));
    }

    #[test]
    fn json_roundtrip() {
        let m = SqMatrix::from_entries(
            3,
            [(0, 2, q(1)), (1, 1, -RingElem::one()), (2, 0, q(-1) + RingElem::rad().shift(3))],
        );
        let back = SqMatrix::from_json(&m.to_json()).unwrap();
        assert_eq!(back, m);
    }

    #[test]
    fn small_determinant() {
        let m = SqMatrix::from_dense(vec![
            vec![RingElem::zero(), RingElem::s_pow(1)],
            vec![RingElem::mono(-1, -1), RingElem::zero()],
        ]);
        assert!(m.determinant().is_one());
        assert!(m.mul(&m.inverse_exact().unwrap()).is_identity());
    }
}
