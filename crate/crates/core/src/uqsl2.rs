//! Numeric `U_q sl(2)` cross-checks at real `q`: spin-`j` generators, the
//! element `w`, the truncated universal R-matrix and its relation to the
//! vertex models with `N = 2j + 1`.
//!
//! Everything here is `f64` except `w`, whose entries are monomials and
//! which is therefore built exactly and compared with `M_d` exactly.

use nalgebra::DMatrix;
use serde::Serialize;

use crate::axioms::check_axioms;
use crate::error::{Error, Result};
use crate::models::{r_over_z, VertexModel};
use crate::ring::RingElem;
use crate::tensor::{HalfInt, SqMatrix};

/// `[x] = (q^x - q^{-x}) / (q - q^{-1})`, with the `q → 1` limit `x`.
pub fn qnum(x: f64, q: f64) -> f64 {
    if (q - 1.0).abs() < 1e-12 {
        x
    } else {
        (q.powf(x) - q.powf(-x)) / (q - 1.0 / q)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct UqRep {
    pub j: HalfInt,
    pub q: f64,
    pub h: DMatrix<f64>,
    pub xp: DMatrix<f64>,
    pub xm: DMatrix<f64>,
    /// Normalization of `w`; fixed to 1.
    pub gamma: f64,
}

impl UqRep {
    pub fn dim(&self) -> usize {
        self.h.nrows()
    }

    /// `q^{cH}`, diagonal.
    pub fn q_power_h(&self, c: f64) -> DMatrix<f64> {
        DMatrix::from_diagonal(&self.h.diagonal().map(|h| self.q.powf(c * h)))
    }
}

fn supported(j: HalfInt) -> Result<()> {
    if (1..=3).contains(&j.twice()) {
        Ok(())
    } else {
        Err(Error::DomainError(format!("spin {j} outside 1/2, 1, 3/2")))
    }
}

/// `π^j(H) e_m = 2m e_m`, `π^j(X^±) e_m = ([j∓m][j±m+1])^{1/2} e_{m±1}` in
/// the basis `e_{-j}, ..., e_j`.
pub fn build_rep(j: HalfInt, q: f64) -> Result<UqRep> {
    supported(j)?;
    if !(q > 0.0) || !q.is_finite() {
        return Err(Error::DomainError(format!("q = {q} must be positive")));
    }
    let d = (j.twice() + 1) as usize;
    let jv = j.value();
    let ms: Vec<f64> = (0..d).map(|i| -jv + i as f64).collect();
    let h = DMatrix::from_diagonal(&nalgebra::DVector::from_iterator(d, ms.iter().map(|m| 2.0 * m)));
    let mut xp = DMatrix::zeros(d, d);
    let mut xm = DMatrix::zeros(d, d);
    for (i, &m) in ms.iter().enumerate() {
        if i + 1 < d {
            xp[(i + 1, i)] = (qnum(jv - m, q) * qnum(jv + m + 1.0, q)).sqrt();
        }
        if i > 0 {
            xm[(i - 1, i)] = (qnum(jv + m, q) * qnum(jv - m + 1.0, q)).sqrt();
        }
    }
    Ok(UqRep { j, q, h, xp, xm, gamma: 1.0 })
}

fn max_abs(m: &DMatrix<f64>) -> f64 {
    m.iter().fold(0.0, |acc, x| acc.max(x.abs()))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RepReport {
    /// `[H, X^±] = ±2X^±` and `[X^+, X^-] = [H]`.
    pub algebra: f64,
    /// `π(X^+) - π(X^-)^t`.
    pub transposition: f64,
    /// Distance of both Casimir forms from `[j + 1/2]²·1`.
    pub casimir: f64,
    pub casimir_value: f64,
}

pub fn rep_checks(rep: &UqRep) -> RepReport {
    let (h, xp, xm, q) = (&rep.h, &rep.xp, &rep.xm, rep.q);
    let d = rep.dim();
    let id = DMatrix::<f64>::identity(d, d);
    let comm = |a: &DMatrix<f64>, b: &DMatrix<f64>| a * b - b * a;
    let qh = (rep.q_power_h(1.0) - rep.q_power_h(-1.0)) / (q - 1.0 / q);
    let algebra = if (q - 1.0).abs() < 1e-12 { comm(xp, xm) - h } else { comm(xp, xm) - qh };
    let algebra = [max_abs(&(comm(h, xp) - xp * 2.0)), max_abs(&(comm(h, xm) + xm * 2.0)), max_abs(&algebra)]
        .into_iter()
        .fold(0.0, f64::max);
    let half = |shift: f64| {
        let top = rep.q_power_h(0.5) * q.powf(shift / 2.0) - rep.q_power_h(-0.5) * q.powf(-shift / 2.0);
        let a = top / (q - 1.0 / q);
        &a * &a
    };
    let c_value = qnum(rep.j.value() + 0.5, q).powi(2);
    let c1 = half(1.0) + xm * xp;
    let c2 = half(-1.0) + xp * xm;
    let casimir = max_abs(&(c1 - &id * c_value)).max(max_abs(&(c2 - &id * c_value)));
    RepReport { algebra, transposition: max_abs(&(xp - xm.transpose())), casimir, casimir_value: c_value }
}

/// `w^j_{m m'} = (-1)^{j+m} q^{j+m} γ δ_{m,-m'}`, exact.
#[derive(Clone, Debug, PartialEq)]
pub struct WElement {
    pub j: HalfInt,
    pub matrix: SqMatrix,
}

pub fn build_w(j: HalfInt) -> Result<WElement> {
    supported(j)?;
    let d = (j.twice() + 1) as usize;
    let entries = (0..d).map(|a| {
        // 2m = 2a - 2j, and q^{j+m} = s^{2j + 2m}
        let m2 = 2 * a as i64 - j.twice() as i64;
        let jm = (j.twice() as i64 + m2) / 2;
        let sign = if jm % 2 == 0 { 1 } else { -1 };
        (a, d - 1 - a, RingElem::mono(sign, 2 * jm))
    });
    Ok(WElement { j, matrix: SqMatrix::from_entries(d, entries) })
}

impl WElement {
    pub fn numeric(&self, q: f64, gamma: f64) -> Result<DMatrix<f64>> {
        Ok(self.matrix.eval_numeric(q)? * gamma)
    }
}

/// The anti-automorphism `τ(H) = H`, `τ(X^±) = X^∓`. Because
/// `π(X^+) = π(X^-)^t` it acts on representation matrices as transposition.
pub fn transpose_automorphism(a: &DMatrix<f64>) -> DMatrix<f64> {
    a.transpose()
}

/// Antipode on the generators: `S(H) = -H`, `S(X^±) = -q^{∓1} X^±`.
pub fn antipode(rep: &UqRep) -> (DMatrix<f64>, DMatrix<f64>, DMatrix<f64>) {
    (-&rep.h, &rep.xp * (-1.0 / rep.q), &rep.xm * -rep.q)
}

/// Largest residual of `w a w⁻¹ = τ(S(a))` over `a ∈ {H, X^+, X^-}`.
pub fn w_conjugation_residual(rep: &UqRep, w: &WElement) -> Result<f64> {
    if w.j != rep.j {
        return Err(Error::DimensionMismatch(w.matrix.dim(), rep.dim()));
    }
    let wm = w.numeric(rep.q, rep.gamma)?;
    let wi = wm.clone().try_inverse().ok_or(Error::NotScalar)?;
    let (sh, sxp, sxm) = antipode(rep);
    Ok([(&rep.h, sh), (&rep.xp, sxp), (&rep.xm, sxm)]
        .into_iter()
        .map(|(a, sa)| max_abs(&(&wm * a * &wi - transpose_automorphism(&sa))))
        .fold(0.0, f64::max))
}

pub fn w_conjugation_check(rep: &UqRep, w: &WElement) -> bool {
    w_conjugation_residual(rep, w).is_ok_and(|r| r <= 1e-10)
}

/// Universal R summed up to `n = terms - 1`.
pub fn universal_r_truncated(rep: &UqRep, terms: usize) -> DMatrix<f64> {
    let q = rep.q;
    let d = rep.dim();
    let hh = rep.h.kronecker(&rep.h);
    let pre = DMatrix::from_diagonal(&hh.diagonal().map(|x| q.powf(-x / 2.0)));
    let a = rep.q_power_h(-0.5) * &rep.xp;
    let b = rep.q_power_h(0.5) * &rep.xm;
    let mut sum = DMatrix::zeros(d * d, d * d);
    let mut fact = 1.0;
    let mut an = DMatrix::<f64>::identity(d, d);
    let mut bn = DMatrix::<f64>::identity(d, d);
    for n in 0..terms {
        if n > 0 {
            fact *= qnum(n as f64, q);
            an = &an * &a;
            bn = &bn * &b;
        }
        let nf = n as f64;
        let coeff = (1.0 - q * q).powi(n as i32) / fact * q.powf(-nf * (nf - 1.0) / 2.0);
        sum += an.kronecker(&bn) * coeff;
    }
    pre * sum
}

/// `R^{jj}`: the series stops at `n = 2j` because `X^±` are nilpotent.
pub fn universal_r(rep: &UqRep) -> DMatrix<f64> {
    universal_r_truncated(rep, rep.j.twice() as usize + 1)
}

/// Change from adding the `n = 2j + 1` term.
pub fn truncation_residual(rep: &UqRep) -> f64 {
    let t = rep.j.twice() as usize + 1;
    max_abs(&(universal_r_truncated(rep, t + 1) - universal_r_truncated(rep, t)))
}

fn permutation(d: usize) -> DMatrix<f64> {
    let mut p = DMatrix::zeros(d * d, d * d);
    for a in 0..d {
        for b in 0..d {
            p[(a * d + b, b * d + a)] = 1.0;
        }
    }
    p
}

/// Transpose in the first (`first = true`) or second tensor factor.
pub fn partial_transpose(m: &DMatrix<f64>, d: usize, first: bool) -> DMatrix<f64> {
    let mut out = DMatrix::zeros(d * d, d * d);
    for a in 0..d {
        for b in 0..d {
            for c in 0..d {
                for e in 0..d {
                    // m[(a,b),(c,e)] → row (c,b), col (a,e) or row (a,e), col (c,b)
                    let v = m[(a * d + b, c * d + e)];
                    if first {
                        out[(c * d + b, a * d + e)] = v;
                    } else {
                        out[(a * d + e, c * d + b)] = v;
                    }
                }
            }
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CrossingReport {
    /// `((R^{jj})^{-1})^{t1} = (w⊗1) R^{jj} (w⁻¹⊗1)`
    pub cs1: f64,
    /// `(R^{jj})^{t2} = (1⊗w) (R^{jj})^{-1} (1⊗w⁻¹)`
    pub cs2: f64,
}

pub fn cs_checks(rep: &UqRep, w: &WElement) -> Result<CrossingReport> {
    let d = rep.dim();
    let r = universal_r(rep);
    let ri = r.clone().try_inverse().ok_or(Error::NotScalar)?;
    let wm = w.numeric(rep.q, rep.gamma)?;
    let wi = wm.clone().try_inverse().ok_or(Error::NotScalar)?;
    let id = DMatrix::<f64>::identity(d, d);
    let cs1 = partial_transpose(&ri, d, true) - wm.kronecker(&id) * &r * wi.kronecker(&id);
    let cs2 = partial_transpose(&r, d, false) - id.kronecker(&wm) * &ri * id.kronecker(&wi);
    Ok(CrossingReport { cs1: max_abs(&cs1), cs2: max_abs(&cs2) })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ProportionalityReport {
    /// Ratio `(P R^{jj}) / (R/Z)` at the first nonzero entry.
    pub ratio: f64,
    /// Largest relative deviation of any entrywise ratio from `ratio`.
    pub spread: f64,
    /// The same with signs ignored (diagnostic for sign-only defects).
    pub abs_spread: f64,
    /// Largest `|P R^{jj}|` where `R/Z` vanishes.
    pub off_support: f64,
}

impl ProportionalityReport {
    pub fn passed(&self, tol: f64) -> bool {
        self.spread <= tol && self.off_support <= tol * self.ratio.abs().max(1.0)
    }
}

/// Compare `P·R^{jj}` with the vertex table `R/Z` for `N = 2j + 1`.
pub fn proportionality(rep: &UqRep) -> Result<ProportionalityReport> {
    let d = rep.dim();
    let x = permutation(d) * universal_r(rep);
    let v = r_over_z(d)?.eval_numeric(rep.q)?;
    let scale = max_abs(&v);
    let mut ratio = None;
    let (mut spread, mut abs_spread, mut off_support) = (0.0_f64, 0.0_f64, 0.0_f64);
    for i in 0..d * d {
        for k in 0..d * d {
            if v[(i, k)].abs() <= 1e-12 * scale {
                off_support = off_support.max(x[(i, k)].abs());
                continue;
            }
            let r = x[(i, k)] / v[(i, k)];
            let r0 = *ratio.get_or_insert(r);
            spread = spread.max(((r - r0) / r0).abs());
            abs_spread = abs_spread.max(((r.abs() - r0.abs()) / r0).abs());
        }
    }
    Ok(ProportionalityReport { ratio: ratio.unwrap_or(0.0), spread, abs_spread, off_support })
}

/// `c` with `(π^j(w))^t = c·M_d`, if such a ring element exists.
pub fn w_transpose_factor(w: &WElement, m: &VertexModel) -> Option<RingElem> {
    let wt = w.matrix.transpose();
    if wt.dim() != m.m_d.dim() {
        return None;
    }
    let (i, j, x) = wt.entries().next()?;
    let c = x.exact_div(&m.m_d.at(i, j)).ok()?;
    (wt == m.m_d.scale(&c)).then_some(c)
}

/// Replace `M_d` by `(π^j(w))^t` (and `M_u` by its inverse) and rerun the
/// exact twist checks.
pub fn twist_with_w(w: &WElement, m: &VertexModel) -> Result<bool> {
    let m_d = w.matrix.transpose();
    let m_u = m_d.inverse_exact()?;
    let swapped = VertexModel::from_parts(
        m.n,
        m.sign,
        m.z.clone(),
        m.r.clone(),
        m.r_inv.clone(),
        m_u,
        m_d,
        m.eigenvalues.clone(),
    );
    let rep = check_axioms(&swapped);
    Ok(["twist1", "twist2"].iter().all(|name| rep.get(name).is_some_and(|c| c.passed)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::{build_model, Sign};

    const SPINS: [HalfInt; 3] = [HalfInt(1), HalfInt(2), HalfInt(3)];

    #[test]
    fn spin_half_generators() {
        let rep = build_rep(HalfInt(1), 2.0).unwrap();
        assert_eq!(rep.h, DMatrix::from_row_slice(2, 2, &[-1.0, 0.0, 0.0, 1.0]));
        assert_eq!(rep.xp, DMatrix::from_row_slice(2, 2, &[0.0, 0.0, 1.0, 0.0]));
    }

    #[test]
    fn spin_three_halves_entries() {
        let q = 1.2;
        let rep = build_rep(HalfInt(3), q).unwrap();
        assert!((rep.xp[(1, 0)] - (qnum(3.0, q) * qnum(1.0, q)).sqrt()).abs() < 1e-14);
        assert!((rep.xp[(2, 1)] - (qnum(2.0, q) * qnum(2.0, q)).sqrt()).abs() < 1e-14);
    }

    #[test]
    fn relations_and_crossing() {
        for j in SPINS {
            for q in [1.2, 1.5, 2.0] {
                let rep = build_rep(j, q).unwrap();
                let r = rep_checks(&rep);
                assert!(r.algebra <= 1e-10 && r.casimir <= 1e-10 && r.transposition == 0.0, "{j} {q}: {r:?}");
                let w = build_w(j).unwrap();
                assert!(w_conjugation_check(&rep, &w));
                let cs = cs_checks(&rep, &w).unwrap();
                assert!(cs.cs1 <= 1e-9 && cs.cs2 <= 1e-9, "{cs:?}");
                assert!(truncation_residual(&rep) <= 1e-12);
            }
        }
    }

    #[test]
    fn gamma_does_not_matter_for_conjugation() {
        let mut rep = build_rep(HalfInt(2), 1.5).unwrap();
        rep.gamma = 3.7;
        assert!(w_conjugation_check(&rep, &build_w(HalfInt(2)).unwrap()));
    }

    #[test]
    fn w_transpose_is_m_d() {
        for j in SPINS {
            let n = j.twice() as usize + 1;
            let m = build_model(n, Sign::Plus).unwrap();
            let w = build_w(j).unwrap();
            assert_eq!(w_transpose_factor(&w, &m), Some(RingElem::s_pow(j.twice() as i64)));
            assert!(twist_with_w(&w, &m).unwrap());
        }
    }

    #[test]
    fn half_and_three_halves_proportional() {
        for j in [HalfInt(1), HalfInt(3)] {
            let p = proportionality(&build_rep(j, 1.5).unwrap()).unwrap();
            assert!(p.passed(1e-8), "{j}: {p:?}");
        }
    }

    #[test]
    fn spin_one_has_sign_defect() {
        let p = proportionality(&build_rep(HalfInt(2), 1.5).unwrap()).unwrap();
        assert!(p.abs_spread <= 1e-8 && p.off_support <= 1e-12);
        assert!((p.spread - 2.0).abs() <= 1e-8, "{p:?}");
    }

    #[test]
    fn unsupported_spin() {
        assert!(matches!(build_rep(HalfInt(4), 1.5), Err(Error::DomainError(_))));
        assert!(matches!(build_rep(HalfInt(1), -1.0), Err(Error::DomainError(_))));
    }
}
