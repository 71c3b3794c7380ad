//! Component-level checks of the regular-isotopy axioms and Markov
//! conditions, and the solver for `M_u`, `M_d` given `R`.

mod twist;

use std::collections::BTreeMap;

use serde::Serialize;

use crate::braid::{parse_braid, represent};
use crate::models::VertexModel;
use crate::ring::RingElem;
use crate::tensor::{HalfInt, SqMatrix};

pub use twist::{
    discover_z, is_proportional, solution_model, solve_twist, twist_system, verify_solution, TwistSolution,
    ZDiscovery, ZSample,
};

/// A failing equation: its free indices and both sides.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Witness {
    pub indices: Vec<String>,
    pub lhs: RingElem,
    pub rhs: RingElem,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AxiomCheck {
    pub name: String,
    pub passed: bool,
    pub equations: usize,
    pub witness: Option<Witness>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AxiomReport {
    pub checks: Vec<AxiomCheck>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn get(&self, name: &str) -> Option<&AxiomCheck> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn first_failure(&self) -> Option<&AxiomCheck> {
        self.checks.iter().find(|c| !c.passed)
    }
}

type Key = Vec<usize>;

/// Compare two sparse tensors given as maps from index tuples to values;
/// `equations` is the number of index tuples the identity ranges over.
fn compare(
    name: &str,
    labels: &[HalfInt],
    lhs: &BTreeMap<Key, RingElem>,
    rhs: &BTreeMap<Key, RingElem>,
    equations: usize,
) -> AxiomCheck {
    let zero = RingElem::zero();
    let mut keys: Vec<&Key> = lhs.keys().chain(rhs.keys()).collect();
    keys.sort();
    keys.dedup();
    let witness = keys.into_iter().find_map(|k| {
        let (l, r) = (lhs.get(k).unwrap_or(&zero), rhs.get(k).unwrap_or(&zero));
        (l != r).then(|| Witness {
            indices: k.iter().map(|&p| labels[p].to_string()).collect(),
            lhs: l.clone(),
            rhs: r.clone(),
        })
    });
    AxiomCheck { name: name.into(), passed: witness.is_none(), equations, witness }
}

fn accumulate(map: &mut BTreeMap<Key, RingElem>, key: Key, v: RingElem) {
    match map.get_mut(&key) {
        Some(x) => *x = &*x + &v,
        None => {
            map.insert(key, v);
        }
    }
}

fn prune(map: &mut BTreeMap<Key, RingElem>) {
    map.retain(|_, v| !v.is_zero());
}

/// Four-index view: `R^a_c^b_d` at row `(a,b)`, column `(c,d)`, positions
/// rather than labels. Yields `(a, b, c, d, value)` for nonzero entries.
fn four(r: &SqMatrix, n: usize) -> Vec<(usize, usize, usize, usize, &RingElem)> {
    r.entries().map(|(row, col, v)| (row / n, row % n, col / n, col % n, v)).collect()
}

/// `M_{ab} M^{bc} = δ_a^c`, checked as `M_d M_u = 1` and `M_u M_d = 1`.
fn check_m(m: &VertexModel) -> AxiomCheck {
    let n = m.n;
    let one_order = |x: &SqMatrix, y: &SqMatrix| {
        let mut lhs = BTreeMap::new();
        for (a, b, v) in x.entries() {
            for (&c, w) in y.row(b) {
                accumulate(&mut lhs, vec![a, c], v * w);
            }
        }
        prune(&mut lhs);
        let rhs = (0..n).map(|a| (vec![a, a], RingElem::one())).collect();
        compare("m", &m.conv.labels, &lhs, &rhs, n * n)
    };
    let du = one_order(&m.m_d, &m.m_u);
    let ud = one_order(&m.m_u, &m.m_d);
    AxiomCheck {
        name: "m".into(),
        passed: du.passed && ud.passed,
        equations: du.equations + ud.equations,
        witness: du.witness.or(ud.witness),
    }
}

/// `R^a_c^b_d (R⁻¹)^c_e^d_f = δ^a_e δ^b_f`.
fn check_r(m: &VertexModel) -> AxiomCheck {
    let n = m.n;
    let mut lhs = BTreeMap::new();
    for (a, b, c, d, v) in four(&m.r, n) {
        for (&col, w) in m.r_inv.row(c * n + d) {
            accumulate(&mut lhs, vec![a, b, col / n, col % n], v * w);
        }
    }
    prune(&mut lhs);
    let rhs = (0..n)
        .flat_map(|a| (0..n).map(move |b| (vec![a, b, a, b], RingElem::one())))
        .collect();
    compare("r", &m.conv.labels, &lhs, &rhs, n.pow(4))
}

/// `R^a_i^b_j R^j_k^c_f R^i_d^k_e = R^b_i^c_j R^a_d^i_k R^k_e^j_f` for all
/// `(a, b, c, d, e, f)`.
fn check_braid_components(m: &VertexModel) -> AxiomCheck {
    let n = m.n;
    let r = &m.r;
    let at = |a: usize, b: usize| r.row(a * n + b);
    let mut lhs = BTreeMap::new();
    let mut rhs = BTreeMap::new();
    for a in 0..n {
        for b in 0..n {
            // R^a_i^b_j at row (a,b), column (i,j)
            for (&col1, v1) in at(a, b) {
                let (i, j) = (col1 / n, col1 % n);
                for c in 0..n {
                    // R^j_k^c_f at row (j,c), column (k,f)
                    for (&col2, v2) in at(j, c) {
                        let (k, f) = (col2 / n, col2 % n);
                        let v12 = v1 * v2;
                        // R^i_d^k_e at row (i,k), column (d,e)
                        for (&col3, v3) in at(i, k) {
                            accumulate(&mut lhs, vec![a, b, c, col3 / n, col3 % n, f], &v12 * v3);
                        }
                    }
                }
            }
            // R^b_i^c_j with (b, c) playing the role of the first row pair
            let (bb, cc) = (a, b);
            for (&col1, v1) in at(bb, cc) {
                let (i, j) = (col1 / n, col1 % n);
                for aa in 0..n {
                    // R^a_d^i_k at row (a,i), column (d,k)
                    for (&col2, v2) in at(aa, i) {
                        let (d, k) = (col2 / n, col2 % n);
                        let v12 = v1 * v2;
                        // R^k_e^j_f at row (k,j), column (e,f)
                        for (&col3, v3) in at(k, j) {
                            accumulate(&mut rhs, vec![aa, bb, cc, d, col3 / n, col3 % n], &v12 * v3);
                        }
                    }
                }
            }
        }
    }
    prune(&mut lhs);
    prune(&mut rhs);
    compare("braid", &m.conv.labels, &lhs, &rhs, n.pow(6))
}

/// `(R⁻¹)^a_c^b_d = Σ_{e,f} M_u[a,e] R^b_e^f_c M_d[f,d]`.
fn check_twist1(m: &VertexModel) -> AxiomCheck {
    let n = m.n;
    let mut rhs = BTreeMap::new();
    // R^b_e^f_c sits at row (b,f), column (e,c)
    for (b, f, e, c, v) in four(&m.r, n) {
        for a in 0..n {
            let Some(mu) = m.m_u.get(a, e) else { continue };
            let left = mu * v;
            for (&d, md) in m.m_d.row(f) {
                accumulate(&mut rhs, vec![a, b, c, d], &left * md);
            }
        }
    }
    prune(&mut rhs);
    compare("twist1", &m.conv.labels, &inverse_components(m), &rhs, n.pow(4))
}

/// `(R⁻¹)^a_c^b_d = Σ_{e,f} M_d[c,e] R^e_d^a_f M_u[f,b]`.
fn check_twist2(m: &VertexModel) -> AxiomCheck {
    let n = m.n;
    let mut rhs = BTreeMap::new();
    // R^e_d^a_f sits at row (e,a), column (d,f)
    for (e, a, d, f, v) in four(&m.r, n) {
        for c in 0..n {
            let Some(md) = m.m_d.get(c, e) else { continue };
            let left = md * v;
            for (&b, mu) in m.m_u.row(f) {
                accumulate(&mut rhs, vec![a, b, c, d], &left * mu);
            }
        }
    }
    prune(&mut rhs);
    compare("twist2", &m.conv.labels, &inverse_components(m), &rhs, n.pow(4))
}

/// `(R⁻¹)^a_c^b_d` keyed `[a, b, c, d]`.
fn inverse_components(m: &VertexModel) -> BTreeMap<Key, RingElem> {
    four(&m.r_inv, m.n).into_iter().map(|(a, b, c, d, v)| (vec![a, b, c, d], v.clone())).collect()
}

/// All five regular-isotopy axioms in literal component form.
pub fn check_axioms(m: &VertexModel) -> AxiomReport {
    AxiomReport {
        checks: vec![check_m(m), check_r(m), check_braid_components(m), check_twist1(m), check_twist2(m)],
    }
}

/// The braid relation as matrices: `b1 b2 b1 = b2 b1 b2` in `B_3`.
pub fn braid_relation_matrix_form(m: &VertexModel) -> bool {
    let lhs = represent(&parse_braid("1 2 1", Some(3)).expect("fixed word"), m);
    let rhs = represent(&parse_braid("2 1 2", Some(3)).expect("fixed word"), m);
    lhs == rhs
}

fn matrix_check(name: &str, lhs: &SqMatrix, rhs: &SqMatrix, labels: &[HalfInt], n: usize) -> AxiomCheck {
    let to_map = |m: &SqMatrix| -> BTreeMap<Key, RingElem> {
        m.entries().map(|(i, j, v)| (vec![i / n, i % n, j / n, j % n], v.clone())).collect()
    };
    compare(name, labels, &to_map(lhs), &to_map(rhs), lhs.dim() * lhs.dim())
}

/// `(X (μ⊗μ))^a_b^c_c · tr μ = μ^a_b · tr(X (μ⊗μ))` for all `a, b`.
fn check_c2(name: &str, x: &SqMatrix, m: &VertexModel) -> AxiomCheck {
    let n = m.n;
    let mm = m.mu.kron(&m.mu);
    let xm = x.mul(&mm);
    let total = xm.trace();
    let mut lhs = BTreeMap::new();
    for (row, col, v) in xm.entries() {
        let (a, c) = (row / n, row % n);
        let (b, c2) = (col / n, col % n);
        if c == c2 {
            accumulate(&mut lhs, vec![a, b], v * &m.k);
        }
    }
    prune(&mut lhs);
    let rhs: BTreeMap<Key, RingElem> = m
        .mu
        .entries()
        .map(|(a, b, v)| (vec![a, b], v * &total))
        .filter(|(_, v)| !v.is_zero())
        .collect();
    compare(name, &m.conv.labels, &lhs, &rhs, n * n)
}

/// (c1) and (c2) for `R` and for `R⁻¹`.
pub fn check_markov_conditions(m: &VertexModel) -> AxiomReport {
    let n = m.n;
    let mm = m.mu.kron(&m.mu);
    let labels = &m.conv.labels;
    AxiomReport {
        checks: vec![
            matrix_check("c1", &m.r.mul(&mm), &mm.mul(&m.r), labels, n),
            matrix_check("c1_inverse", &m.r_inv.mul(&mm), &mm.mul(&m.r_inv), labels, n),
            check_c2("c2", &m.r, m),
            check_c2("c2_inverse", &m.r_inv, m),
        ],
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::{build_model, Sign};

    #[test]
    fn n2_axioms_and_markov() {
        let m = build_model(2, Sign::Plus).unwrap();
        let rep = check_axioms(&m);
        assert!(rep.passed(), "{rep:?}");
        assert!(braid_relation_matrix_form(&m));
        assert!(check_markov_conditions(&m).passed());
    }

    #[test]
    fn zeroed_entry_breaks_braid() {
        let mut m = build_model(2, Sign::Plus).unwrap();
        m.r.set(1, 2, RingElem::zero());
        let rep = check_axioms(&m);
        let braid = rep.get("braid").unwrap();
        assert!(!braid.passed);
        let w = braid.witness.as_ref().unwrap();
        assert_eq!(w.indices.len(), 6);
        assert_ne!(w.lhs, w.rhs);
    }

    #[test]
    fn every_model_and_mirror() {
        for n in 2..=4 {
            for sign in [Sign::Plus, Sign::Minus] {
                let m = build_model(n, sign).unwrap();
                let rep = check_axioms(&m);
                assert!(rep.passed(), "N={n} {sign:?}: {:?}", rep.first_failure());
                assert!(braid_relation_matrix_form(&m));
                assert!(check_markov_conditions(&m).passed(), "N={n}");
                let mirror = m.mirror();
                assert!(check_axioms(&mirror).passed(), "mirror N={n}: {:?}", check_axioms(&mirror).first_failure());
                assert!(check_markov_conditions(&mirror).passed(), "mirror N={n}");
            }
        }
    }
}
