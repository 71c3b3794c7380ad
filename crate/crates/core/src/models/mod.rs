//! Exact N = 2, 3, 4 vertex-model data and the numeric spectral models.

pub mod spectral;
mod tables;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ring::{parse, RingElem};
use crate::tensor::{HalfInt, IndexConvention, SqMatrix};

pub use spectral::{limit_check, spectral_checks, LimitReport, SpectralModel, SpectralReport};

/// Which square root `Z = ±q^{-(N-1)^2/2}` the model uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Sign {
    #[default]
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn elem(self) -> RingElem {
        RingElem::int(self.value())
    }
}

/// `numerator / denominator` with a unit numerator; the denominators that
/// occur are `D = q^{2(N-1)} + ... + q^2 + 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UnitFraction {
    pub numerator: RingElem,
    pub denominator: RingElem,
}

impl UnitFraction {
    /// Equality as fractions, by cross-multiplication.
    pub fn same_value(&self, other: &UnitFraction) -> bool {
        &self.numerator * &other.denominator == &other.numerator * &self.denominator
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct VertexModel {
    pub n: usize,
    pub conv: IndexConvention,
    pub sign: Sign,
    pub z: RingElem,
    pub r: SqMatrix,
    pub r_inv: SqMatrix,
    pub m_u: SqMatrix,
    pub m_d: SqMatrix,
    /// `μ = M_u·M_d^t`.
    pub mu: SqMatrix,
    /// Loop value `trace(μ)`.
    pub k: RingElem,
    pub tau: UnitFraction,
    pub taubar: UnitFraction,
    /// Roots of the minimal polynomial of `R`, each a unit.
    pub eigenvalues: Vec<RingElem>,
}

fn product(factors: &[&str]) -> RingElem {
    factors
        .iter()
        .map(|f| parse(f).expect("table entry parses"))
        .fold(RingElem::one(), |acc, x| &acc * &x)
}

fn dense<const D: usize>(rows: &[[&str; D]; D]) -> SqMatrix {
    SqMatrix::from_dense(
        rows.iter()
            .map(|r| r.iter().map(|x| parse(x).expect("table entry parses")).collect())
            .collect(),
    )
}

/// `D = Σ_{j<N} q^{2j}`.
pub fn denominator(n: usize) -> RingElem {
    (0..n as i64).map(|j| RingElem::q_pow(2 * j)).sum()
}

/// Exponent of `s` in `Z = ±q^{-(N-1)^2/2}`.
pub fn z_exponent(n: usize) -> i64 {
    -((n as i64 - 1).pow(2))
}

/// `Π_i (R - λ_i)` roots from the generic formula:
/// `λ_i = (-1)^{i+1} q^{N(N-1) - (N-i+1)(N-i)} Z`.
pub fn generic_eigenvalues(n: usize, z: &RingElem) -> Vec<RingElem> {
    let n = n as i64;
    (1..=n)
        .map(|i| {
            let sign = if i % 2 == 1 { 1 } else { -1 };
            let e = n * (n - 1) - (n - i + 1) * (n - i);
            &RingElem::mono(sign, 2 * e) * z
        })
        .collect()
}

/// The unknot values `tr(M_u M_d^t)` as printed for each model.
pub fn unknot_value(n: usize) -> Result<RingElem> {
    let text = match n {
        2 => "-q - q^-1",
        3 => "q^2 + 1 + q^-2",
        4 => "-q^3 - q - q^-1 - q^-3",
        _ => return Err(Error::UnsupportedN(n)),
    };
    Ok(parse(text).expect("fixed text"))
}

/// The dimensionless table `R/Z`.
pub fn r_over_z(n: usize) -> Result<SqMatrix> {
    let table = match n {
        2 => tables::R2,
        3 => tables::R3,
        4 => tables::R4,
        _ => return Err(Error::UnsupportedN(n)),
    };
    let conv = IndexConvention::new(n);
    let mut r = SqMatrix::zero(n * n);
    for &(a, c, b, d, factors) in table {
        let (a, b, c, d) = (HalfInt(a), HalfInt(b), HalfInt(c), HalfInt(d));
        let (row, col) = (conv.flatten(a, b), conv.flatten(c, d));
        if r.get(row, col).is_some() {
            return Err(Error::ConventionValidationFailed(format!("entry ({row}, {col}) listed twice")));
        }
        r.set(row, col, product(factors));
    }
    Ok(r)
}

/// The tabulated `M_u` for `N` (with the determinant-one normalization).
pub fn m_u_table(n: usize) -> Result<SqMatrix> {
    match n {
        2 => Ok(dense(&tables::MU2)),
        3 => Ok(dense(&tables::MU3)),
        4 => Ok(dense(&tables::MU4)),
        _ => Err(Error::UnsupportedN(n)),
    }
}

/// Rows `(a,b)`, columns `(c,d)` must reproduce the printed square arrays,
/// and every entry must conserve charge.
fn validate_convention(n: usize, r_hat: &SqMatrix) -> Result<()> {
    let printed = match n {
        2 => Some(dense(&tables::R2_DISPLAY)),
        3 => Some(dense(&tables::R3_DISPLAY)),
        _ => None,
    };
    if let Some(p) = printed {
        if let Some((i, j, _)) = p.entries().find(|(i, j, v)| r_hat.get(*i, *j) != Some(*v)) {
            return Err(Error::ConventionValidationFailed(format!(
                "N={n}: entry ({i}, {j}) differs from the printed array"
            )));
        }
        if p.nnz() != r_hat.nnz() {
            return Err(Error::ConventionValidationFailed(format!("N={n}: nonzero pattern differs")));
        }
    }
    if let Some(bad) = charge_violations(r_hat, &IndexConvention::new(n)).first() {
        return Err(Error::ConventionValidationFailed(format!("charge not conserved at {bad:?}")));
    }
    Ok(())
}

/// Entries `R^a_c^b_d ≠ 0` with `a + b ≠ c + d`, as `(a, c, b, d)`.
pub fn charge_violations(r: &SqMatrix, conv: &IndexConvention) -> Vec<(HalfInt, HalfInt, HalfInt, HalfInt)> {
    r.entries()
        .filter_map(|(row, col, _)| {
            let (a, b) = conv.unflatten(row);
            let (c, d) = conv.unflatten(col);
            (a.0 + b.0 != c.0 + d.0).then_some((a, c, b, d))
        })
        .collect()
}

impl VertexModel {
    /// Assemble a model from raw parts, deriving `μ`, `k` and the closed-form
    /// Markov constants. Nothing is verified here.
    pub fn from_parts(
        n: usize,
        sign: Sign,
        z: RingElem,
        r: SqMatrix,
        r_inv: SqMatrix,
        m_u: SqMatrix,
        m_d: SqMatrix,
        eigenvalues: Vec<RingElem>,
    ) -> VertexModel {
        let mu = m_u.mul(&m_d.transpose());
        let k = mu.trace();
        let d = denominator(n);
        let nn = n as i64 - 1;
        let tau = UnitFraction { numerator: RingElem::mono(sign.value(), -nn * nn), denominator: d.clone() };
        let taubar = UnitFraction { numerator: RingElem::mono(sign.value(), nn * (nn + 4)), denominator: d };
        VertexModel { n, conv: IndexConvention::new(n), sign, z, r, r_inv, m_u, m_d, mu, k, tau, taubar, eigenvalues }
    }

    /// The model obtained by closing strands on the other side of the plane:
    /// `(P R P, M_u^t, M_d^t)`.
    pub fn mirror(&self) -> VertexModel {
        let p = SqMatrix::permutation(self.n);
        VertexModel::from_parts(
            self.n,
            self.sign,
            self.z.clone(),
            p.mul(&self.r).mul(&p),
            p.mul(&self.r_inv).mul(&p),
            self.m_u.transpose(),
            self.m_d.transpose(),
            self.eigenvalues.clone(),
        )
    }

    /// `D` for this model.
    pub fn denominator(&self) -> RingElem {
        denominator(self.n)
    }

    /// `k = u·D` with `u = ±q^{-(N-1)}`; returns the unit `u`.
    pub fn loop_unit(&self) -> Result<RingElem> {
        let u = self.k.exact_div(&self.denominator())?;
        if !u.is_unit() {
            return Err(Error::ClosedFormMismatch {
                what: "k / D".into(),
                computed: u.to_string(),
                expected: "a unit".into(),
            });
        }
        Ok(u)
    }
}

/// Build and validate the exact model for `N ∈ {2, 3, 4}`.
pub fn build_model(n: usize, sign: Sign) -> Result<VertexModel> {
    let r_hat = r_over_z(n)?;
    validate_convention(n, &r_hat)?;
    let z = RingElem::mono(sign.value(), z_exponent(n));
    let r = r_hat.scale(&z);
    let m_u = m_u_table(n)?;
    let m_d = if n == 3 { m_u.clone() } else { m_u.scale(&RingElem::int(-1)) };
    let shape = match n {
        2 => vec![(1, 0), (-1, 2)],
        3 => vec![(1, 0), (-1, 4), (1, 6)],
        _ => vec![(1, 0), (-1, 6), (1, 10), (-1, 12)],
    };
    let eigenvalues: Vec<RingElem> =
        shape.iter().map(|&(c, e)| &RingElem::mono(c, 2 * e) * &z).collect();
    let r_inv = r.inverse_via_minpoly(&eigenvalues)?;
    if !r.mul(&r_inv).is_identity() {
        return Err(Error::ConventionValidationFailed("R·R⁻¹ ≠ 1".into()));
    }
    let model = VertexModel::from_parts(n, sign, z, r, r_inv, m_u, m_d, eigenvalues);
    let expected = unknot_value(n)?;
    if model.k != expected {
        return Err(Error::ClosedFormMismatch {
            what: format!("unknot value for N={n}"),
            computed: model.k.to_string(),
            expected: expected.to_string(),
        });
    }
    Ok(model)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn n2_convention_matches_display() {
        let m = build_model(2, Sign::Plus).unwrap();
        let conv = &m.conv;
        let row = conv.flatten(HalfInt(-1), HalfInt(1));
        let col = conv.flatten(HalfInt(1), HalfInt(-1));
        assert_eq!(m.r.at(row, col), &m.z * &RingElem::q_pow(1));
        // the displayed zero at position (3,3) of the 4x4 array
        assert!(m.r.get(2, 2).is_none());
        assert_eq!(m.z, RingElem::s_pow(-1));
        assert_eq!(m.k, parse("-q - q^-1").unwrap());
    }

    #[test]
    fn basic_model_data() {
        for n in 2..=4 {
            for sign in [Sign::Plus, Sign::Minus] {
                let m = build_model(n, sign).unwrap();
                assert!(m.m_d.mul(&m.m_u).is_identity());
                assert!(m.m_u.mul(&m.m_d).is_identity());
                assert!(m.r.mul(&m.r_inv).is_identity());
                assert!(charge_violations(&m.r, &m.conv).is_empty());
                assert!(m.m_u.determinant().is_one());
                assert_eq!(m.eigenvalues, generic_eigenvalues(n, &m.z));
            }
        }
        let m3 = build_model(3, Sign::Plus).unwrap();
        assert_eq!(m3.z, RingElem::q_pow(-2));
        assert_eq!(m3.m_u.at(0, 2), RingElem::q_pow(1));
        assert_eq!(m3.m_u.at(1, 1), RingElem::int(-1));
        assert_eq!(m3.m_u.at(2, 0), RingElem::q_pow(-1));
        assert_eq!(build_model(4, Sign::Plus).unwrap().z, RingElem::s_pow(-9));
    }

    #[test]
    fn mu_is_diagonal() {
        let m = build_model(2, Sign::Plus).unwrap();
        assert_eq!(m.mu, SqMatrix::from_entries(2, [(0, 0, RingElem::mono(-1, 2)), (1, 1, RingElem::mono(-1, -2))]));
        let m4 = build_model(4, Sign::Plus).unwrap();
        assert!(m4.mu.is_diagonal());
        assert_eq!(m4.mu.at(0, 0), RingElem::mono(-1, 6));
    }

    #[test]
    fn unsupported_n() {
        assert_eq!(build_model(5, Sign::Plus), Err(Error::UnsupportedN(5)));
    }
}
