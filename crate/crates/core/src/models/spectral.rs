//! Boltzmann weights with spectral parameter for N = 2, 3, in double precision.

use nalgebra::DMatrix;
use serde::Serialize;

use super::VertexModel;
use crate::error::{Error, Result};
use crate::tensor::{HalfInt, IndexConvention};

/// Weights at fixed `λ` and anisotropy `μ`; `u` is supplied per evaluation.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SpectralModel {
    pub n: usize,
    pub lambda: f64,
    pub mu_aniso: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SpectralReport {
    pub ybe: f64,
    pub unitarity: f64,
    pub crossing: f64,
}

impl SpectralReport {
    pub fn max(&self) -> f64 {
        self.ybe.max(self.unitarity).max(self.crossing)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LimitReport {
    pub u: f64,
    pub q: f64,
    /// `max |R(u)/ρ(u) - R/Z| / max(1, max |R/Z|)`.
    pub deviation: f64,
    /// Number of nonzero weights compared.
    pub weights: usize,
}

fn sh(x: f64) -> f64 {
    x.sinh()
}

impl SpectralModel {
    pub fn new(n: usize, lambda: f64, mu_aniso: f64) -> Result<Self> {
        if !(n == 2 || n == 3) {
            return Err(Error::UnsupportedN(n));
        }
        Ok(SpectralModel { n, lambda, mu_aniso })
    }

    /// `ρ(u) = Π_{k=1}^{N-1} sinh(kλ - u)`.
    pub fn rho(&self, u: f64) -> f64 {
        (1..self.n).map(|k| sh(k as f64 * self.lambda - u)).product()
    }

    /// `(a, c, b, d, weight)` for every weight that is not identically zero.
    fn weights(&self, u: f64) -> Vec<(i32, i32, i32, i32, f64)> {
        let (l, m) = (self.lambda, self.mu_aniso);
        let ex = |x: f64| x.exp();
        match self.n {
            2 => vec![
                (-1, -1, -1, -1, sh(l - u)),
                (1, 1, 1, 1, sh(l - u)),
                (-1, -1, 1, 1, ex(2.0 * m * u) * sh(l)),
                (1, 1, -1, -1, ex(-2.0 * m * u) * sh(l)),
                (-1, 1, 1, -1, sh(u)),
                (1, -1, -1, 1, sh(u)),
            ],
            _ => {
                let a = sh(l - u) * sh(2.0 * l - u);
                let b = sh(u) * sh(l + u);
                let c = sh(l) * sh(2.0 * l);
                let d = sh(u) * sh(l - u);
                let e = sh(2.0 * l) * sh(l - u);
                let f = sh(2.0 * l) * sh(u);
                let g = |k: f64| ex(k * m * u);
                vec![
                    (2, 2, 2, 2, a),
                    (-2, -2, -2, -2, a),
                    (2, -2, -2, 2, b),
                    (-2, 2, 2, -2, b),
                    (2, 2, -2, -2, g(-4.0) * c),
                    (-2, -2, 2, 2, g(4.0) * c),
                    (2, 0, 0, 2, d),
                    (-2, 0, 0, -2, d),
                    (0, 2, 2, 0, d),
                    (0, -2, -2, 0, d),
                    (2, 2, 0, 0, g(-2.0) * e),
                    (-2, -2, 0, 0, g(2.0) * e),
                    (0, 0, 2, 2, g(2.0) * e),
                    (0, 0, -2, -2, g(-2.0) * e),
                    (0, -2, 0, 2, g(2.0) * f),
                    (0, 2, 0, -2, g(-2.0) * f),
                    (2, 0, -2, 0, g(-2.0) * f),
                    (-2, 0, 2, 0, g(2.0) * f),
                    (0, 0, 0, 0, c - d),
                ]
            }
        }
    }

    /// `R(u)` with row `flatten(a, b)` and column `flatten(c, d)`.
    pub fn boltzmann_matrix(&self, u: f64) -> DMatrix<f64> {
        let conv = IndexConvention::new(self.n);
        let dim = self.n * self.n;
        let mut m = DMatrix::zeros(dim, dim);
        for (a, c, b, d, w) in self.weights(u) {
            m[(conv.flatten(HalfInt(a), HalfInt(b)), conv.flatten(HalfInt(c), HalfInt(d)))] = w;
        }
        m
    }

    /// Number of weights that are not identically zero.
    pub fn weight_count(&self) -> usize {
        self.weights(0.5).len()
    }
}

fn kron(a: &DMatrix<f64>, b: &DMatrix<f64>) -> DMatrix<f64> {
    a.kronecker(b)
}

fn scaled_residual(lhs: &DMatrix<f64>, rhs: &DMatrix<f64>) -> f64 {
    let scale = lhs.amax().max(rhs.amax()).max(1.0);
    (lhs - rhs).amax() / scale
}

/// Residuals of the spectral Yang-Baxter equation at `(u, v)`, of unitarity
/// `R(u) R(-u) = ρ(u) ρ(-u)` and of crossing symmetry at `u`. Each residual
/// is measured relative to the size of the entries involved.
pub fn spectral_checks(sm: &SpectralModel, u: f64, v: f64) -> SpectralReport {
    let n = sm.n;
    let id = DMatrix::<f64>::identity(n, n);
    let (ru, rv, ruv) = (sm.boltzmann_matrix(u), sm.boltzmann_matrix(v), sm.boltzmann_matrix(u + v));
    let lhs = kron(&ru, &id) * kron(&id, &ruv) * kron(&rv, &id);
    let rhs = kron(&id, &rv) * kron(&ruv, &id) * kron(&id, &ru);
    let ybe = scaled_residual(&lhs, &rhs);

    let unit_lhs = &ru * sm.boltzmann_matrix(-u);
    let unit_rhs = DMatrix::identity(n * n, n * n) * (sm.rho(u) * sm.rho(-u));
    let unitarity = scaled_residual(&unit_lhs, &unit_rhs);

    SpectralReport { ybe, unitarity, crossing: crossing_residual(sm, u) }
}

/// `R^i_k^j_l(u) = (r(i) r(k) / (r(j) r(l)))^{1/2} R^j_{-i}^{-l}_k(λ-u)` with
/// `r(p) = e^{-2μλp}`.
pub fn crossing_residual(sm: &SpectralModel, u: f64) -> f64 {
    let conv = IndexConvention::new(sm.n);
    let a = sm.boltzmann_matrix(u);
    let b = sm.boltzmann_matrix(sm.lambda - u);
    let r = |p: HalfInt| (-2.0 * sm.mu_aniso * sm.lambda * p.value()).exp();
    let scale = a.amax().max(b.amax()).max(1.0);
    let mut worst: f64 = 0.0;
    for &i in &conv.labels {
        for &j in &conv.labels {
            for &k in &conv.labels {
                for &l in &conv.labels {
                    let lhs = a[(conv.flatten(i, j), conv.flatten(k, l))];
                    let factor = (r(i) * r(k) / (r(j) * r(l))).sqrt();
                    let rhs = factor * b[(conv.flatten(j, l.neg()), conv.flatten(i.neg(), k))];
                    worst = worst.max((lhs - rhs).abs());
                }
            }
        }
    }
    worst / scale
}

/// Compare `R(u)/ρ(u)` at large `u` with the exact `R/Z` at `q = -e^λ`.
pub fn limit_check(sm: &SpectralModel, model: &VertexModel, u_large: f64) -> Result<LimitReport> {
    if sm.n != model.n {
        return Err(Error::DimensionMismatch(sm.n, model.n));
    }
    let q = -sm.lambda.exp();
    let z_inv = model.z.unit_inverse().expect("Z is a unit");
    let exact = model.r.scale(&z_inv).eval_numeric(q)?;
    let approx = sm.boltzmann_matrix(u_large) / sm.rho(u_large);
    let scale = exact.amax().max(1.0);
    Ok(LimitReport {
        u: u_large,
        q,
        deviation: (&approx - &exact).amax() / scale,
        weights: sm.weight_count(),
    })
}
