//! Exact nullspace of a sparse homogeneous system over the ring.
//!
//! Gauss-Jordan elimination that pivots on units (`±s^k`) whenever one is
//! available, so elimination needs no division at all. When only non-unit
//! pivots remain, rows are combined by cross-multiplication
//! (`p·row - a·pivot_row`), which stays exact at the cost of coefficient
//! growth.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::ring::RingElem;

type Row = BTreeMap<usize, RingElem>;

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct PivotStats {
    pub unit_pivots: usize,
    pub non_unit_pivots: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NullspaceResult {
    pub rank: usize,
    /// One vector per free column; each satisfies every equation exactly.
    pub basis: Vec<Vec<RingElem>>,
    pub stats: PivotStats,
}

fn combine(target: &mut Row, scale_target: Option<&RingElem>, factor: &RingElem, pivot_row: &Row) {
    if let Some(p) = scale_target {
        for v in target.values_mut() {
            *v = &*v * p;
        }
    }
    for (j, v) in pivot_row {
        let delta = factor * v;
        match target.get_mut(j) {
            Some(x) => *x = &*x - &delta,
            None => {
                target.insert(*j, -delta);
            }
        }
    }
    target.retain(|_, v| !v.is_zero());
}

fn choose_pivot(rows: &[Row]) -> Option<(usize, usize, bool)> {
    let mut best_unit: Option<(usize, usize, usize)> = None;
    let mut best_other: Option<(usize, usize, usize)> = None;
    for (r, row) in rows.iter().enumerate() {
        for (&c, v) in row {
            if v.is_unit() {
                if best_unit.map_or(true, |(_, _, len)| row.len() < len) {
                    best_unit = Some((r, c, row.len()));
                }
            } else {
                let cost = v.term_count() * 16 + row.len();
                if best_other.map_or(true, |(_, _, k)| cost < k) {
                    best_other = Some((r, c, cost));
                }
            }
        }
    }
    best_unit
        .map(|(r, c, _)| (r, c, true))
        .or(best_other.map(|(r, c, _)| (r, c, false)))
}

/// Remove a common factor: whenever some entry divides all the others, divide
/// through by it (a cheap stand-in for a polynomial gcd that is enough when
/// the kernel is spanned by a vector with a unit entry). Then divide out the
/// common power of `s` and make the leading entry positive.
fn tidy(v: &mut [RingElem]) {
    let mut order: Vec<usize> = (0..v.len()).filter(|&i| !v[i].is_zero()).collect();
    order.sort_by_key(|&i| v[i].term_count());
    for &i in &order {
        let g = v[i].clone();
        if g.is_unit() {
            break;
        }
        let divided: Option<Vec<RingElem>> = v.iter().map(|x| x.exact_div(&g).ok()).collect();
        if let Some(d) = divided {
            v.clone_from_slice(&d);
            break;
        }
    }
    let min = v
        .iter()
        .filter(|x| !x.is_zero())
        .filter_map(|x| {
            let lo = [x.rational_part().min_exp(), x.radical_part().min_exp()];
            lo.into_iter().flatten().min()
        })
        .min();
    if let Some(min) = min {
        for x in v.iter_mut() {
            *x = x.shift(-min);
        }
    }
    let lead_negative = v.iter().find(|x| !x.is_zero()).is_some_and(|x| {
        let lead = x.rational_part().terms().next_back().or(x.radical_part().terms().next_back());
        lead.is_some_and(|(_, c)| c.is_negative())
    });
    if lead_negative {
        for x in v.iter_mut() {
            *x = -&*x;
        }
    }
}

pub fn nullspace(equations: &[Row], ncols: usize) -> NullspaceResult {
    let mut rest: Vec<Row> = equations.iter().filter(|r| !r.is_empty()).cloned().collect();
    let mut pivots: Vec<(usize, Row)> = Vec::new();
    let mut stats = PivotStats::default();
    while let Some((r, c, unit)) = choose_pivot(&rest) {
        let mut prow = rest.swap_remove(r);
        if unit {
            let inv = prow[&c].unit_inverse().expect("unit pivot");
            for v in prow.values_mut() {
                *v = &*v * &inv;
            }
            stats.unit_pivots += 1;
        } else {
            stats.non_unit_pivots += 1;
        }
        let p = prow[&c].clone();
        let scale = (!p.is_one()).then_some(&p);
        for row in rest.iter_mut().chain(pivots.iter_mut().map(|(_, r)| r)) {
            if let Some(a) = row.get(&c).cloned() {
                combine(row, scale, &a, &prow);
            }
        }
        rest.retain(|r| !r.is_empty());
        pivots.push((c, prow));
    }

    let pivot_cols: Vec<usize> = pivots.iter().map(|(c, _)| *c).collect();
    let mut basis = Vec::new();
    for f in (0..ncols).filter(|f| !pivot_cols.contains(f)) {
        let involved: Vec<&(usize, Row)> = pivots.iter().filter(|(_, r)| r.contains_key(&f)).collect();
        let piv = |(c, r): &(usize, Row)| r[c].clone();
        let mut x = vec![RingElem::zero(); ncols];
        x[f] = involved.iter().map(|e| piv(e)).fold(RingElem::one(), |acc, p| &acc * &p);
        for (k, entry) in involved.iter().enumerate() {
            let others = involved
                .iter()
                .enumerate()
                .filter(|(i, _)| *i != k)
                .fold(RingElem::one(), |acc, (_, e)| &acc * &piv(e));
            x[entry.0] = -(&entry.1[&f] * &others);
        }
        tidy(&mut x);
        basis.push(x);
    }
    NullspaceResult { rank: pivots.len(), basis, stats }
}
