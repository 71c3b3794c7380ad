//! Closure invariants: `<L>`, the Markov constants, the ambient invariant
//! `α'`, minimal polynomials, skein relations and Markov-move harnesses.
//!
//! With `φ(A) = <L>/k^n` and `k = u·D` (`u` a unit, `D = Σ_{j<N} q^{2j}`):
//!
//! ```text
//! α'(A) = σ^{n-1} q^{-(N-1)(n-1)} s^{(N²-1)e} <L> / (u^n D)
//! ```
//!
//! `σ` is the sign of `Z`; it fixes the square root of `1/ττ̄` so that
//! `α'(A b_n) = α'(A)` holds exactly for both signs.

use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::braid::{BraidWord, MarkovMove};
use crate::error::{Error, Result};
use crate::models::{generic_eigenvalues, Sign, UnitFraction, VertexModel};
use crate::ring::{parse, RingElem};
use crate::tensor::SqMatrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum InvariantKind {
    Regular,
    PhiNumerator,
    Ambient,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct InvariantResult {
    pub value: RingElem,
    pub kind: InvariantKind,
    pub n_states: usize,
    pub strands: usize,
    pub writhe: i64,
    /// What was multiplied in or divided out, in order.
    pub normalization: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ModelConstants {
    pub tau: UnitFraction,
    pub taubar: UnitFraction,
    pub d: RingElem,
    /// `trace(R μ⊗μ)` and `trace(R⁻¹ μ⊗μ)`, the raw closures behind τ, τ̄.
    pub closure_pos: RingElem,
    pub closure_neg: RingElem,
}

/// Sparse column vector over the `N^n` basis states.
type Vector = HashMap<usize, RingElem>;

/// Columns of a two-strand operator: `cols[c] = [(row, value)]`.
fn columns(g: &SqMatrix) -> Vec<Vec<(usize, RingElem)>> {
    let mut cols = vec![Vec::new(); g.dim()];
    for (i, j, v) in g.entries() {
        cols[j].push((i, v.clone()));
    }
    cols
}

fn apply_local(v: &Vector, cols: &[Vec<(usize, RingElem)>], i: usize, strands: usize, n: usize) -> Vector {
    let after = n.pow((strands - i - 1) as u32);
    let pair = n * n;
    let mut out: Vector = HashMap::with_capacity(v.len() * 2);
    for (&x, val) in v {
        let suffix = x % after;
        let p = (x / after) % pair;
        let prefix = x / (after * pair);
        for (y, g) in &cols[p] {
            let target = (prefix * pair + y) * after + suffix;
            let prod = val * g;
            match out.get_mut(&target) {
                Some(e) => *e = &*e + &prod,
                None => {
                    out.insert(target, prod);
                }
            }
        }
    }
    out.retain(|_, v| !v.is_zero());
    out
}

/// `trace(represent(w)·μ^{⊗n})` without building the `N^n × N^n` matrix:
/// each basis state is pushed through the letters (right to left) and only
/// its diagonal component is kept. Needs `μ` diagonal.
fn closure_trace(w: &BraidWord, m: &VertexModel) -> RingElem {
    let n = m.n;
    let strands = w.strands();
    let states = n.pow(strands as u32);
    let pos = columns(&m.r);
    let neg = columns(&m.r_inv);
    let mu: Vec<RingElem> = (0..n).map(|a| m.mu.at(a, a)).collect();
    let weight = |mut x: usize| {
        let mut acc = RingElem::one();
        for _ in 0..strands {
            acc = &acc * &mu[x % n];
            x /= n;
        }
        acc
    };
    (0..states)
        .into_par_iter()
        .map(|x| {
            let mut v: Vector = HashMap::from([(x, RingElem::one())]);
            for &l in w.letters().iter().rev() {
                let cols = if l > 0 { &pos } else { &neg };
                v = apply_local(&v, cols, l.unsigned_abs() as usize, strands, n);
                if v.is_empty() {
                    break;
                }
            }
            v.get(&x).map_or_else(RingElem::zero, |d| d * &weight(x))
        })
        .reduce(RingElem::zero, |a, b| &a + &b)
}

/// `<L> = tr(A (M_u M_d^t)^{⊗n})` for the closure of `w`.
pub fn regular_invariant(w: &BraidWord, m: &VertexModel) -> InvariantResult {
    let value = if m.mu.is_diagonal() {
        closure_trace(w, m)
    } else {
        crate::braid::represent(w, m)
            .trace_of_product(&m.mu.kron_power(w.strands()))
            .expect("dimensions agree")
    };
    InvariantResult {
        value,
        kind: InvariantKind::Regular,
        n_states: m.n,
        strands: w.strands(),
        writhe: w.writhe(),
        normalization: Vec::new(),
    }
}

/// The Markov constant τ with `φ(A b_n) = τ φ(A)`. Named so as not to
/// clash with the transposition in [`crate::uqsl2::transpose_automorphism`].
pub fn markov_tau(m: &VertexModel) -> &UnitFraction {
    &m.tau
}

/// τ̄, the constant for stabilization by `b_n⁻¹`.
pub fn markov_taubar(m: &VertexModel) -> &UnitFraction {
    &m.taubar
}

/// τ, τ̄ from closures of one crossing, checked against the closed forms
/// `τ = σ q^{-(N-1)²/2}/D` and `τ̄ = σ q^{(N-1)(N+3)/2}/D`.
pub fn compute_constants(m: &VertexModel) -> Result<ModelConstants> {
    let mm = m.mu.kron(&m.mu);
    let closure_pos = m.r.trace_of_product(&mm)?;
    let closure_neg = m.r_inv.trace_of_product(&mm)?;
    let k2 = &m.k * &m.k;
    let computed = |closure: &RingElem| UnitFraction { numerator: closure.clone(), denominator: k2.clone() };
    for (what, got, expected) in [("tau", &closure_pos, &m.tau), ("taubar", &closure_neg, &m.taubar)] {
        if !computed(got).same_value(expected) {
            return Err(Error::ClosedFormMismatch {
                what: what.into(),
                computed: format!("({got}) / ({k2})"),
                expected: format!("({}) / ({})", expected.numerator, expected.denominator),
            });
        }
    }
    Ok(ModelConstants {
        tau: m.tau.clone(),
        taubar: m.taubar.clone(),
        d: m.denominator(),
        closure_pos,
        closure_neg,
    })
}

/// `α'` from `<L>` with every division exact.
pub fn ambient_from_regular(regular: &InvariantResult, m: &VertexModel) -> Result<InvariantResult> {
    let n = regular.strands as i64;
    let e = regular.writhe;
    let nn = m.n as i64;
    let u = m.loop_unit()?;
    let u_inv = u.unit_inverse().expect("loop unit");
    let sigma = if m.sign == Sign::Minus && (n - 1) % 2 == 1 { -1 } else { 1 };
    let prefactor = RingElem::mono(sigma, -2 * (nn - 1) * (n - 1) + (nn * nn - 1) * e);
    let num = &(&prefactor * &regular.value) * &u_inv.pow(n as u32);
    let value = num.exact_div(&m.denominator())?;
    if value.has_radical() {
        return Err(Error::RadicalResidue(value.to_string()));
    }
    let mut normalization = vec![
        if m.sign == Sign::Minus { format!("sigma^{}", n - 1) } else { String::new() },
        format!("q^{}", -(nn - 1) * (n - 1)),
        format!("s^{}", (nn * nn - 1) * e),
        format!("/ ({u})^{n}"),
        format!("/ ({})", m.denominator()),
    ];
    normalization.retain(|s| !s.is_empty() && !s.ends_with("^0"));
    Ok(InvariantResult { value, kind: InvariantKind::Ambient, normalization, ..regular.clone() })
}

pub fn ambient_invariant(w: &BraidWord, m: &VertexModel) -> Result<InvariantResult> {
    ambient_from_regular(&regular_invariant(w, m), m)
}

/// `φ` as an unreduced fraction `<L> / k^n`: the numerator is `<L>` and the
/// trail records the denominator.
pub fn phi_numerator(w: &BraidWord, m: &VertexModel) -> InvariantResult {
    let mut r = regular_invariant(w, m);
    r.kind = InvariantKind::PhiNumerator;
    r.normalization = vec![format!("/ ({})^{}", m.k, w.strands())];
    r
}

/// `Π_k (R - λ_k) = 0` for an arbitrary eigenvalue list.
pub fn minpoly_holds(r: &SqMatrix, eigenvalues: &[RingElem]) -> bool {
    let id = SqMatrix::identity(r.dim());
    eigenvalues
        .iter()
        .try_fold(id.clone(), |acc, l| r.sub(&id.scale(l)).map(|f| acc.mul(&f)))
        .is_ok_and(|p| p.is_zero())
}

/// Stored eigenvalues annihilate `R` and agree with the generic formula.
pub fn minpoly_check(m: &VertexModel) -> bool {
    m.eigenvalues == generic_eigenvalues(m.n, &m.z) && minpoly_holds(&m.r, &m.eigenvalues)
}

/// Coefficient of `α'(b^p)` on the right-hand side, for `p = N-2 .. -1`,
/// followed by nothing: the left-hand side is `α'(b^{N-1})`.
fn skein_coefficients(n: usize, sign: Sign) -> Result<Vec<(i32, RingElem)>> {
    let sg = sign.elem();
    let t = |text: &str| parse(text).expect("fixed polynomial");
    // t^{1/2} = s^2
    let half = |k: i64| RingElem::s_pow(2 * k);
    Ok(match n {
        2 => vec![(0, &(&sg * &t("1 - t")) * &half(1)), (-1, t("t^2"))],
        3 => vec![
            (1, &sg * &t("t - t^3 + t^4")),
            (0, t("t^4 - t^5 + t^7")),
            (-1, -(&sg * &t("t^8"))),
        ],
        4 => vec![
            (2, &(&sg * &half(3)) * &t("1 - t^3 + t^5 - t^6")),
            (1, t("t^6 - t^8 + t^9 + t^11 - t^12 + t^14")),
            (0, -(&(&sg * &half(9)) * &t("t^8 - t^9 + t^11 - t^14"))),
            (-1, -t("t^20")),
        ],
        other => return Err(Error::UnsupportedN(other)),
    })
}

/// `α'(w·b_i^{N-1}) - Σ_p c_p α'(w·b_i^p)`; zero when the skein relation holds.
pub fn skein_residual(m: &VertexModel, context: &BraidWord, i: i32) -> Result<RingElem> {
    let coeffs = skein_coefficients(m.n, m.sign)?;
    let alpha = |p: i32| -> Result<RingElem> { Ok(ambient_invariant(&context.with_power(i, p)?, m)?.value) };
    let mut residual = alpha(m.n as i32 - 1)?;
    for (p, c) in coeffs {
        residual = &residual - &(&c * &alpha(p)?);
    }
    Ok(residual)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct InvarianceReport {
    pub base: String,
    pub base_value: RingElem,
    pub trials: usize,
    pub moves_applied: usize,
    pub stabilizations_checked: usize,
    pub failures: Vec<String>,
}

impl InvarianceReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Strand count beyond which the suite stops stabilizing.
pub fn default_strand_cap(n: usize) -> usize {
    if n >= 4 {
        5
    } else {
        6
    }
}

/// Apply `trials` random Markov-move sequences to `w` and check that `α'`
/// never changes; each stabilization also checks `φ(A b_n^{±1}) = τ φ(A)`
/// (resp. `τ̄`) in the division-free form `<A b_n> = τk <A>`.
pub fn invariance_suite(
    w: &BraidWord,
    m: &VertexModel,
    trials: usize,
    seed: u64,
    strand_cap: usize,
) -> Result<InvarianceReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cache: HashMap<BraidWord, RingElem> = HashMap::new();
    let mut regular = |word: &BraidWord| -> RingElem {
        cache.entry(word.clone()).or_insert_with(|| regular_invariant(word, m).value).clone()
    };
    let alpha = |word: &BraidWord, reg: RingElem| -> Result<RingElem> {
        let r = InvariantResult {
            value: reg,
            kind: InvariantKind::Regular,
            n_states: m.n,
            strands: word.strands(),
            writhe: word.writhe(),
            normalization: Vec::new(),
        };
        Ok(ambient_from_regular(&r, m)?.value)
    };
    let base_value = alpha(w, regular(w))?;
    let tk = &m.tau.numerator * &m.loop_unit()?;
    let tbk = &m.taubar.numerator * &m.loop_unit()?;
    let max_len = w.len() + 8;
    let mut report = InvarianceReport {
        base: w.to_string(),
        base_value: base_value.clone(),
        trials,
        moves_applied: 0,
        stabilizations_checked: 0,
        failures: Vec::new(),
    };
    for trial in 0..trials {
        let mut cur = w.clone();
        let steps = rng.gen_range(1..=4);
        for _ in 0..steps {
            let can_grow = cur.len() + 2 <= max_len;
            let mv = match rng.gen_range(0..4) {
                0 | 1 if cur.strands() < strand_cap && can_grow => {
                    if rng.gen_bool(0.5) {
                        MarkovMove::StabilizePos
                    } else {
                        MarkovMove::StabilizeNeg
                    }
                }
                0 | 1 | 2 if cur.strands() > 1 && can_grow => {
                    let g = rng.gen_range(1..cur.strands() as i32);
                    MarkovMove::Conjugate(if rng.gen_bool(0.5) { g } else { -g })
                }
                _ => MarkovMove::FreeReduce,
            };
            let next = cur.markov_move(mv)?;
            report.moves_applied += 1;
            if matches!(mv, MarkovMove::StabilizePos | MarkovMove::StabilizeNeg) {
                report.stabilizations_checked += 1;
                let factor = if mv == MarkovMove::StabilizePos { &tk } else { &tbk };
                if regular(&next) != factor * &regular(&cur) {
                    report.failures.push(format!("trial {trial}: phi stabilization failed at {next}"));
                }
            }
            let value = alpha(&next, regular(&next))?;
            if value != base_value {
                report.failures.push(format!("trial {trial}: alpha' changed at {next}: {value}"));
            }
            cur = next;
        }
    }
    Ok(report)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MirrorReport {
    pub axioms: bool,
    pub markov: bool,
    pub original: RingElem,
    pub mirrored: RingElem,
}

impl MirrorReport {
    pub fn passed(&self) -> bool {
        self.axioms && self.markov && self.original == self.mirrored
    }
}

/// The model `(P R P, M_u^t, M_d^t)` is again a solution and gives the same
/// closure invariant on `w`.
pub fn mirror_model_check(w: &BraidWord, m: &VertexModel) -> MirrorReport {
    let mirror = m.mirror();
    MirrorReport {
        axioms: crate::axioms::check_axioms(&mirror).passed(),
        markov: crate::axioms::check_markov_conditions(&mirror).passed(),
        original: regular_invariant(w, m).value,
        mirrored: regular_invariant(w, &mirror).value,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::{parse_braid, represent};
    use crate::models::build_model;

    fn word(text: &str, strands: Option<usize>) -> BraidWord {
        parse_braid(text, strands).unwrap()
    }

    #[test]
    fn closure_trace_matches_dense_trace() {
        for n in 2..=4 {
            let m = build_model(n, Sign::Plus).unwrap();
            for text in ["", "1", "1 1 -2", "-1 2 -1 2"] {
                let w = word(text, Some(3));
                let dense = represent(&w, &m).trace_of_product(&m.mu.kron_power(3)).unwrap();
                assert_eq!(regular_invariant(&w, &m).value, dense, "N={n} {text}");
            }
        }
    }

    #[test]
    fn unknots() {
        let m2 = build_model(2, Sign::Plus).unwrap();
        assert_eq!(regular_invariant(&BraidWord::identity(1), &m2).value, parse("-q - q^-1").unwrap());
        let m3 = build_model(3, Sign::Plus).unwrap();
        let k = parse("q^2 + 1 + q^-2").unwrap();
        assert_eq!(regular_invariant(&BraidWord::identity(2), &m3).value, &k * &k);
        for n in 2..=4 {
            for sign in [Sign::Plus, Sign::Minus] {
                let m = build_model(n, sign).unwrap();
                assert!(ambient_invariant(&BraidWord::identity(1), &m).unwrap().value.is_one());
                assert!(ambient_invariant(&word("1", None), &m).unwrap().value.is_one());
                assert!(ambient_invariant(&word("-1 -2", None), &m).unwrap().value.is_one());
            }
        }
    }

    #[test]
    fn constants_match_displays() {
        for n in 2..=4 {
            for sign in [Sign::Plus, Sign::Minus] {
                let m = build_model(n, sign).unwrap();
                let c = compute_constants(&m).unwrap();
                let nn = n as i64 - 1;
                let tau_tau = UnitFraction {
                    numerator: &c.tau.numerator * &c.taubar.numerator,
                    denominator: &c.d * &c.d,
                };
                assert!(tau_tau.same_value(&UnitFraction { numerator: RingElem::q_pow(2 * nn), denominator: &c.d * &c.d }));
            }
        }
        // half-integer q powers written as s powers
        let m2 = build_model(2, Sign::Plus).unwrap();
        assert_eq!(m2.tau.numerator, RingElem::s_pow(-1));
        assert_eq!(m2.taubar.numerator, RingElem::s_pow(5));
        let m4 = build_model(4, Sign::Minus).unwrap();
        assert_eq!(m4.tau.numerator, RingElem::mono(-1, -9));
        assert_eq!(m4.taubar.numerator, RingElem::mono(-1, 21));
    }

    #[test]
    fn minpoly() {
        for n in 2..=4 {
            assert!(minpoly_check(&build_model(n, Sign::Plus).unwrap()));
        }
        let m3 = build_model(3, Sign::Plus).unwrap();
        let mut wrong = m3.eigenvalues.clone();
        wrong[2] = &m3.z * &RingElem::q_pow(5);
        assert!(!minpoly_holds(&m3.r, &wrong));
    }

    #[test]
    fn skein_examples() {
        let m2 = build_model(2, Sign::Plus).unwrap();
        assert!(skein_residual(&m2, &BraidWord::identity(2), 1).unwrap().is_zero());
        let m3 = build_model(3, Sign::Plus).unwrap();
        assert!(skein_residual(&m3, &word("2 2", Some(3)), 1).unwrap().is_zero());
        let m4 = build_model(4, Sign::Plus).unwrap();
        assert!(skein_residual(&m4, &word("1", Some(2)), 1).unwrap().is_zero());
        for n in 2..=4 {
            let m = build_model(n, Sign::Minus).unwrap();
            assert!(skein_residual(&m, &word("1", Some(2)), 1).unwrap().is_zero(), "N={n} minus");
        }
    }

    #[test]
    fn suite_small() {
        let m = build_model(2, Sign::Plus).unwrap();
        let rep = invariance_suite(&word("1 1 1", None), &m, 10, 7, 4).unwrap();
        assert!(rep.passed(), "{:?}", rep.failures);
        assert!(rep.moves_applied >= 10);
    }

    #[test]
    fn mirror_examples() {
        let m2 = build_model(2, Sign::Plus).unwrap();
        assert!(mirror_model_check(&word("1 1 1", None), &m2).passed());
        let m3 = build_model(3, Sign::Plus).unwrap();
        assert!(mirror_model_check(&BraidWord::identity(1), &m3).passed());
        let m4 = build_model(4, Sign::Plus).unwrap();
        assert!(mirror_model_check(&word("1 1", None), &m4).passed());
        assert!(mirror_model_check(&word("1 -2 2 2", None), &m4).passed());
    }
}
