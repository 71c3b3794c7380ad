//! Solving the twist equations for `M_d` (and `Z`) given the table `R/Z`.
//!
//! Contracting (twist1) on the left with `M_d` and (twist2) on the right
//! with `M_d` removes `M_u`, leaving for `R = Z R̂`:
//!
//! ```text
//! Σ_a M_d[a',a] R̂⁻¹[(a,b),(c,d)] = Z² Σ_f R̂[(b,f),(a',c)] M_d[f,d]
//! Σ_b R̂⁻¹[(a,b),(c,d)] M_d[b,b'] = Z² Σ_e M_d[c,e] R̂[(e,a),(d,b')]
//! ```
//!
//! i.e. `A x = Z² B x` for the `N²` unknowns `x = M_d`.

use std::collections::BTreeMap;

use nalgebra::DMatrix;
use serde::Serialize;

use super::check_axioms;
use crate::error::{Error, Result};
use crate::models::{Sign, VertexModel};
use crate::ring::RingElem;
use crate::tensor::{nullspace, PivotStats, SqMatrix};

type Row = BTreeMap<usize, RingElem>;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TwistSolution {
    pub z_squared: RingElem,
    pub z_candidates: Vec<RingElem>,
    /// Each basis element is `M_d` as an `N × N` matrix.
    #[serde(skip)]
    pub m_d_basis: Vec<SqMatrix>,
    pub uniqueness: usize,
    /// Nullspace dimension above one: solutions are not unique at this `Z`.
    pub non_generic: bool,
    pub pivots: PivotStats,
}

fn add(row: &mut Row, col: usize, v: RingElem) {
    if v.is_zero() {
        return;
    }
    let e = row.entry(col).or_default();
    *e = &*e + &v;
    if e.is_zero() {
        row.remove(&col);
    }
}

/// The two coefficient blocks `(A, B)` of the linear system `A x = ζ B x`,
/// as sparse rows over the `N²` unknowns `M_d[p,q] ↦ p·N + q`.
pub fn twist_system(r_hat: &SqMatrix, r_hat_inv: &SqMatrix, n: usize) -> (Vec<Row>, Vec<Row>) {
    let x = |p: usize, q: usize| p * n + q;
    let mut a_rows = Vec::new();
    let mut b_rows = Vec::new();
    for i in 0..n {
        for b in 0..n {
            for c in 0..n {
                for d in 0..n {
                    // first family, free indices (a' = i, b, c, d)
                    let (mut arow, mut brow) = (Row::new(), Row::new());
                    for a in 0..n {
                        add(&mut arow, x(i, a), r_hat_inv.at(a * n + b, c * n + d));
                    }
                    for f in 0..n {
                        add(&mut brow, x(f, d), r_hat.at(b * n + f, i * n + c));
                    }
                    a_rows.push(arow);
                    b_rows.push(brow);
                    // second family, free indices (a = i, b' = b, c, d)
                    let (mut arow, mut brow) = (Row::new(), Row::new());
                    for bb in 0..n {
                        add(&mut arow, x(bb, b), r_hat_inv.at(i * n + bb, c * n + d));
                    }
                    for e in 0..n {
                        add(&mut brow, x(c, e), r_hat.at(e * n + i, d * n + b));
                    }
                    a_rows.push(arow);
                    b_rows.push(brow);
                }
            }
        }
    }
    (a_rows, b_rows)
}

fn vector_to_matrix(v: &[RingElem], n: usize) -> SqMatrix {
    SqMatrix::from_entries(n, v.iter().enumerate().map(|(k, x)| (k / n, k % n, x.clone())))
}

/// Solve for `M_d` at a given `Z`. Without `Z`, run [`discover_z`] first and
/// use the first confirmed candidate.
pub fn solve_twist(r_hat: &SqMatrix, r_hat_inv: &SqMatrix, z: Option<&RingElem>) -> Result<TwistSolution> {
    let n = (r_hat.dim() as f64).sqrt().round() as usize;
    if n * n != r_hat.dim() {
        return Err(Error::DimensionMismatch(r_hat.dim(), n * n));
    }
    let z = match z {
        Some(z) => z.clone(),
        None => discover_z(r_hat, r_hat_inv)?.z.ok_or(Error::NoSolution)?,
    };
    if !z.is_unit() {
        return Err(Error::NonUnitEigenvalue(z.to_string()));
    }
    let zeta = &z * &z;
    let (a_rows, b_rows) = twist_system(r_hat, r_hat_inv, n);
    let rows: Vec<Row> = a_rows
        .into_iter()
        .zip(b_rows)
        .map(|(mut a, b)| {
            for (col, v) in b {
                add(&mut a, col, -(&zeta * &v));
            }
            a
        })
        .collect();
    let ns = nullspace(&rows, n * n);
    if ns.basis.is_empty() {
        return Err(Error::NoSolution);
    }
    let m_d_basis: Vec<SqMatrix> = ns.basis.iter().map(|v| vector_to_matrix(v, n)).collect();
    let uniqueness = m_d_basis.len();
    Ok(TwistSolution {
        z_squared: zeta,
        z_candidates: vec![z.clone(), -z],
        m_d_basis,
        uniqueness,
        non_generic: uniqueness > 1,
        pivots: ns.stats,
    })
}

/// Pair a solved `M_d` with its inverse and `R = Z R̂` and run the full
/// (nonlinear) axiom checks on the result.
pub fn solution_model(r_hat: &SqMatrix, r_hat_inv: &SqMatrix, z: &RingElem, m_d: &SqMatrix) -> Result<VertexModel> {
    let n = m_d.dim();
    let m_u = m_d.inverse_exact()?;
    let z_inv = z.unit_inverse().ok_or_else(|| Error::NonUnitEigenvalue(z.to_string()))?;
    let sign = if z.as_unit().is_some_and(|(c, _)| c < 0) { Sign::Minus } else { Sign::Plus };
    let eig = Vec::new();
    Ok(VertexModel::from_parts(n, sign, z.clone(), r_hat.scale(z), r_hat_inv.scale(&z_inv), m_u, m_d.clone(), eig))
}

/// Verify a solution end to end: the reconstructed model passes every axiom.
pub fn verify_solution(r_hat: &SqMatrix, r_hat_inv: &SqMatrix, z: &RingElem, m_d: &SqMatrix) -> Result<bool> {
    Ok(check_axioms(&solution_model(r_hat, r_hat_inv, z, m_d)?).passed())
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ZSample {
    pub q: f64,
    /// Real `ζ` for which `A - ζB` has a numerically trivial singular value.
    pub zetas: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ZDiscovery {
    pub samples: Vec<ZSample>,
    /// `ζ = sign · s^exponent` consistent across every sample.
    pub fits: Vec<(i64, i64)>,
    /// Fits confirmed by an exact nonempty nullspace.
    pub confirmed_z_squared: Vec<RingElem>,
    /// First confirmed `Z` with positive sign.
    pub z: Option<RingElem>,
}

const SAMPLE_Q: [f64; 3] = [1.5, 2.0, 2.5];

fn dense(rows: &[Row], ncols: usize, q: f64) -> Result<DMatrix<f64>> {
    let mut m = DMatrix::zeros(rows.len(), ncols);
    for (i, r) in rows.iter().enumerate() {
        for (&j, v) in r {
            m[(i, j)] = v.eval_numeric(q)?;
        }
    }
    Ok(m)
}

/// Generalized eigenvalues `ζ` of the rectangular pencil `(A, B)` at `q`.
fn pencil_eigenvalues(a: &DMatrix<f64>, b: &DMatrix<f64>) -> Vec<f64> {
    let bt = b.transpose();
    let Some(btb_inv) = (&bt * b).try_inverse() else { return Vec::new() };
    let c = btb_inv * (&bt * a);
    let mut out: Vec<f64> = Vec::new();
    for ev in c.complex_eigenvalues().iter() {
        if ev.im.abs() > 1e-7 * ev.re.abs().max(1.0) {
            continue;
        }
        let zeta = ev.re;
        let pencil = a - b * zeta;
        let sv = pencil.singular_values();
        let smallest = sv.iter().cloned().fold(f64::INFINITY, f64::min);
        if smallest <= 1e-8 * sv.max().max(1.0) && !out.iter().any(|z| (z - zeta).abs() <= 1e-9 * zeta.abs()) {
            out.push(zeta);
        }
    }
    out
}

/// Recover `Z²` from `R/Z` alone: sample `q`, solve the generalized
/// eigenproblem numerically, fit `ζ(q) = ±q^{m/2}` and confirm exactly.
pub fn discover_z(r_hat: &SqMatrix, r_hat_inv: &SqMatrix) -> Result<ZDiscovery> {
    let n = (r_hat.dim() as f64).sqrt().round() as usize;
    let (a_rows, b_rows) = twist_system(r_hat, r_hat_inv, n);
    let mut samples = Vec::new();
    for q in SAMPLE_Q {
        let a = dense(&a_rows, n * n, q)?;
        let b = dense(&b_rows, n * n, q)?;
        samples.push(ZSample { q, zetas: pencil_eigenvalues(&a, &b) });
    }
    let fit_one = |q: f64, zeta: f64| -> Option<(i64, i64)> {
        let e = 2.0 * zeta.abs().ln() / q.ln();
        let r = e.round();
        ((e - r).abs() < 1e-6).then_some((zeta.signum() as i64, r as i64))
    };
    let first = &samples[0];
    let mut fits: Vec<(i64, i64)> = first
        .zetas
        .iter()
        .filter_map(|&z| fit_one(first.q, z))
        .filter(|fit| {
            samples[1..].iter().all(|s| s.zetas.iter().any(|&z| fit_one(s.q, z) == Some(*fit)))
        })
        .collect();
    fits.sort();
    fits.dedup();
    let mut confirmed = Vec::new();
    let mut z_found = None;
    for &(sign, e) in &fits {
        if sign < 0 || e % 2 != 0 {
            // Z² would not be the square of a ring element
            continue;
        }
        let z = RingElem::s_pow(e / 2);
        if solve_twist(r_hat, r_hat_inv, Some(&z)).is_ok() {
            confirmed.push(RingElem::mono(sign, e));
            z_found.get_or_insert(z);
        }
    }
    Ok(ZDiscovery { samples, fits, confirmed_z_squared: confirmed, z: z_found })
}

/// `a = c·b` for some ring element `c`: same support and all 2x2 minors vanish.
pub fn is_proportional(a: &SqMatrix, b: &SqMatrix) -> bool {
    if a.dim() != b.dim() || a.is_zero() || b.is_zero() {
        return false;
    }
    let support = |m: &SqMatrix| m.entries().map(|(i, j, _)| (i, j)).collect::<Vec<_>>();
    if support(a) != support(b) {
        return false;
    }
    let (i0, j0, a0) = a.entries().next().expect("nonzero");
    let b0 = b.at(i0, j0);
    a.entries().all(|(i, j, v)| v * &b0 == &b.at(i, j) * a0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::{build_model, r_over_z};

    fn hat_pair(n: usize) -> (SqMatrix, SqMatrix) {
        let m = build_model(n, Sign::Plus).unwrap();
        let z = m.z.clone();
        (r_over_z(n).unwrap(), m.r_inv.scale(&z))
    }

    #[test]
    fn n2_unique_solution_proportional_to_table() {
        let (r, ri) = hat_pair(2);
        let m = build_model(2, Sign::Plus).unwrap();
        let sol = solve_twist(&r, &ri, Some(&m.z)).unwrap();
        assert_eq!(sol.uniqueness, 1);
        assert!(is_proportional(&sol.m_d_basis[0], &m.m_d));
        assert!(verify_solution(&r, &ri, &m.z, &sol.m_d_basis[0]).unwrap());
    }

    #[test]
    fn wrong_z_has_no_solution() {
        let (r, ri) = hat_pair(2);
        assert_eq!(solve_twist(&r, &ri, Some(&RingElem::q_pow(1))), Err(Error::NoSolution));
    }

    #[test]
    fn n2_discovers_z() {
        let (r, ri) = hat_pair(2);
        let d = discover_z(&r, &ri).unwrap();
        assert_eq!(d.confirmed_z_squared, vec![RingElem::q_pow(-1)]);
        assert_eq!(d.z, Some(RingElem::s_pow(-1)));
    }

    #[test]
    fn n3_n4_unique_solutions() {
        for n in [3, 4] {
            let (r, ri) = hat_pair(n);
            let m = build_model(n, Sign::Plus).unwrap();
            let sol = solve_twist(&r, &ri, Some(&m.z)).unwrap();
            assert_eq!(sol.uniqueness, 1, "N={n}");
            assert!(is_proportional(&sol.m_d_basis[0], &m.m_d));
            assert!(verify_solution(&r, &ri, &m.z, &sol.m_d_basis[0]).unwrap());
        }
    }

    #[test]
    fn n3_n4_discover_z() {
        for n in [3, 4] {
            let (r, ri) = hat_pair(n);
            let d = discover_z(&r, &ri).unwrap();
            let e = -((n as i64 - 1).pow(2));
            assert_eq!(d.confirmed_z_squared, vec![RingElem::s_pow(2 * e)], "N={n}");
        }
    }
}
