//! Line families around a base point of a 2-metric, and twin removal.

use std::collections::BTreeSet;

use serde_json::{json, Value};

use super::{is_two_metric, metrics, Outcome};
use crate::metric::{
    all_pairs, is_twin_pair, line_census, restrict, twin_pairs, DistanceMatrix, LineKernel,
};
use crate::pointset::PointSet;

/// Every line of a space, indexed by ordered pair.
struct LineTable {
    n: usize,
    lines: Vec<PointSet>,
}

impl LineTable {
    fn new(d: &DistanceMatrix) -> Self {
        let n = d.len();
        let k = LineKernel::new(d);
        let mut lines = vec![PointSet::empty(n); n * n];
        for (x, y) in all_pairs(n) {
            let l = k.line(x, y, d.get(x, y));
            lines[y * n + x] = l.clone();
            lines[x * n + y] = l;
        }
        LineTable { n, lines }
    }

    fn get(&self, a: usize, b: usize) -> &PointSet {
        &self.lines[a * self.n + b]
    }

    fn universal(&self, a: usize, b: usize) -> bool {
        self.get(a, b).len() == self.n
    }
}

fn fail(v: usize, clause: &str, detail: Value, n: usize) -> Outcome {
    Outcome::fail(
        json!({ "base": v, "clause": clause, "detail": detail }),
        metrics([("n", n)]),
    )
}

fn unmet_unless_two_metric(d: &DistanceMatrix) -> Option<Outcome> {
    if d.len() < 3 {
        return Some(Outcome::unmet("fewer than three points"));
    }
    if !is_two_metric(d) {
        return Some(Outcome::unmet("not a 2-metric"));
    }
    None
}

/// The base-point machinery for one base point `v`: the three facts about
/// repeated lines, then the six facts about the families `vF`, `vS`, `S*`
/// and `FS` built from the points at distance one (`F`) and two (`S`).
pub fn check_section3_machinery(d: &DistanceMatrix, v: usize) -> Outcome {
    if let Some(o) = unmet_unless_two_metric(d) {
        return o;
    }
    if v >= d.len() {
        return Outcome::unmet(format!("base point {v} out of range"));
    }
    let t = LineTable::new(d);
    match base_point_clauses(d, &t, v) {
        Some((clause, detail)) => fail(v, clause, detail, d.len()),
        None => Outcome::pass(metrics([("n", d.len())])),
    }
}

/// [`check_section3_machinery`] for every base point; reports the first
/// failing one.
pub fn check_section3_all(d: &DistanceMatrix) -> Outcome {
    if let Some(o) = unmet_unless_two_metric(d) {
        return o;
    }
    let t = LineTable::new(d);
    for v in 0..d.len() {
        if let Some((clause, detail)) = base_point_clauses(d, &t, v) {
            return fail(v, clause, detail, d.len());
        }
    }
    Outcome::pass(metrics([("n", d.len()), ("base_points", d.len())]))
}

fn base_point_clauses(
    d: &DistanceMatrix,
    t: &LineTable,
    v: usize,
) -> Option<(&'static str, Value)> {
    let n = d.len();
    let others: Vec<usize> = (0..n).filter(|&u| u != v).collect();
    let near: Vec<usize> = others
        .iter()
        .copied()
        .filter(|&u| d.get(v, u) == 1)
        .collect();
    let far: Vec<usize> = others
        .iter()
        .copied()
        .filter(|&u| d.get(v, u) == 2)
        .collect();
    let near_set = PointSet::from_indices(n, near.iter().copied());

    for &x in &others {
        for &y in &others {
            if x != y
                && t.get(v, x) == t.get(v, y)
                && d.get(v, x) == d.get(v, y)
                && !(is_twin_pair(d, x, y) && d.get(v, x) == 1)
            {
                return Some(("repeated_line_distances", json!({ "x": x, "y": y })));
            }
        }
    }
    for &y in &far {
        if let Some(u) = t.get(v, y).iter().find(|&u| u != y && d.get(v, u) == 2) {
            return Some(("far_point_alone", json!({ "y": y, "other": u })));
        }
    }
    for &y in &far {
        for &x in &near {
            if t.get(v, y) != t.get(v, x) {
                continue;
            }
            for &z in &far {
                if z != y && d.get(x, z) == 1 && t.get(x, y).contains(z) {
                    return Some(("shared_line_partner", json!({ "x": x, "y": y, "z": z })));
                }
            }
        }
    }

    let up_near = near.iter().filter(|&&u| t.universal(v, u)).count();
    let up_far = far.iter().filter(|&&u| t.universal(v, u)).count();
    let up_rest = all_pairs(n)
        .filter(|&(a, b)| a != v && b != v && t.universal(a, b))
        .count();
    let up = all_pairs(n).filter(|&(a, b)| t.universal(a, b)).count();
    let v_near: BTreeSet<&PointSet> = near
        .iter()
        .map(|&x| t.get(v, x))
        .filter(|l| l.len() < n)
        .collect();
    let v_far: BTreeSet<&PointSet> = far
        .iter()
        .map(|&y| t.get(v, y))
        .filter(|l| l.len() < n)
        .collect();
    let far_far: BTreeSet<&PointSet> = far
        .iter()
        .enumerate()
        .flat_map(|(i, &y)| far[i + 1..].iter().map(move |&w| (y, w)))
        .map(|(y, w)| t.get(y, w))
        .collect();
    let mut cross: BTreeSet<&PointSet> = BTreeSet::new();
    for &x in &near {
        for &z in &far {
            if far
                .iter()
                .any(|&y| t.get(v, x) == t.get(v, y) && !t.get(x, y).contains(z))
            {
                cross.insert(t.get(x, z));
            }
        }
    }

    if up != up_rest + up_far + up_near {
        return Some((
            "universal_pair_split",
            json!({ "up": up, "away_from_base": up_rest, "far": up_far, "near": up_near }),
        ));
    }
    if v_far.len() != far.len() - up_far {
        return Some((
            "far_family_size",
            json!({ "family": v_far.len(), "far": far.len(), "universal": up_far }),
        ));
    }
    if twin_pairs(d).is_empty() && v_near.len() != near.len() - up_near {
        return Some((
            "near_family_size",
            json!({ "family": v_near.len(), "near": near.len(), "universal": up_near }),
        ));
    }
    for l in &cross {
        if !far.iter().any(|&z| {
            let mut allowed = near_set.clone();
            allowed.insert(z);
            l.is_subset(&allowed)
        }) {
            return Some(("cross_line_shape", json!({ "line": l })));
        }
    }
    if !cross.is_empty() && far.len() < 2 {
        return Some(("cross_needs_two_far", json!({ "far": far.len() })));
    }
    if let Some(l) = cross
        .iter()
        .chain(far_far.iter())
        .find(|l| v_far.contains(*l) || v_near.contains(*l))
    {
        return Some(("families_disjoint", json!({ "line": l })));
    }
    let overlap = v_near.intersection(&v_far).count();
    if cross.len() + up_rest < overlap {
        return Some((
            "cross_covers_overlap",
            json!({ "cross": cross.len(), "away_from_base": up_rest, "overlap": overlap }),
        ));
    }
    let union: BTreeSet<&PointSet> = v_near.iter().chain(&v_far).chain(&cross).copied().collect();
    if union.len() + up < n - 1 {
        return Some((
            "families_count",
            json!({
                "families": union.len(), "up": up, "n": n,
                "near_family": v_near.len(), "far_family": v_far.len(), "cross": cross.len(),
                "twins": twin_pairs(d),
            }),
        ));
    }
    if let Some(l) = far_far.intersection(&cross).next() {
        return Some(("far_cross_disjoint", json!({ "line": l })));
    }
    None
}

/// Removing one point of a twin pair: asserts the line lower bound, the
/// universal-pair balance, monotonicity of non-universal lines, symmetry of
/// twins on lines, and universality of twins adjacent to everything.
pub fn check_twin_removal(d: &DistanceMatrix) -> Outcome {
    if let Some(o) = unmet_unless_two_metric(d) {
        return o;
    }
    let twins = twin_pairs(d);
    if twins.is_empty() {
        return Outcome::unmet("no twin pair");
    }
    let n = d.len();
    let t = LineTable::new(d);
    let full = line_census(d).expect("n >= 3");
    let m = metrics([
        ("n", n),
        ("ell_star", full.ell_star),
        ("up", full.up),
        ("twin_pairs", twins.len()),
    ]);
    for &(a, b) in &twins {
        for (v, vt) in [(a, b), (b, a)] {
            if let Some(w) = twin_removal_clauses(d, &t, full.ell_star, full.up, v, vt) {
                return Outcome::fail(w, m);
            }
        }
    }
    Outcome::pass(m)
}

fn twin_removal_clauses(
    d: &DistanceMatrix,
    t: &LineTable,
    ell_star: usize,
    up: usize,
    v: usize,
    vt: usize,
) -> Option<Value> {
    let n = d.len();
    let sub = restrict(d, vt).expect("n >= 3");
    let back: Vec<usize> = (0..n).filter(|&u| u != vt).collect();
    let vi = back.iter().position(|&u| u == v).unwrap();
    let sub_census = line_census(&sub).expect("n >= 3");
    let sub_t = LineTable::new(&sub);
    let mut universal_partners = Vec::new();
    let mut other_partners = Vec::new();
    for (u, &orig) in back.iter().enumerate() {
        if sub.get(vi, u) == 2 {
            if sub_t.universal(vi, u) {
                universal_partners.push(orig);
            } else {
                other_partners.push(orig);
            }
        }
    }
    let (nu, nw) = (universal_partners.len(), other_partners.len());

    let mut failed = Vec::new();
    if ell_star < sub_census.ell_star + 2 * nu + nw {
        failed.push("lines_lower_bound");
    }
    if up + nu != sub_census.up {
        failed.push("universal_pair_balance");
    }
    if ell_star < sub_census.ell_star {
        failed.push("lines_monotone");
    }
    let asymmetric = all_pairs(n)
        .filter(|&(x, y)| ![v, vt].contains(&x) && ![v, vt].contains(&y))
        .find(|&(x, y)| t.get(x, y).contains(v) != t.get(x, y).contains(vt));
    if asymmetric.is_some() {
        failed.push("twin_symmetry");
    }
    let hub = (0..n).all(|u| u == v || u == vt || d.get(v, u) == 1);
    if hub && !t.universal(v, vt) {
        failed.push("adjacent_twins_universal");
    }
    if failed.is_empty() {
        return None;
    }
    let removed_twin_universal = (0..n).filter(|&y| y != vt && t.universal(vt, y)).count();
    Some(json!({
        "clause": failed[0],
        "failed_clauses": failed,
        "kept": v,
        "removed": vt,
        "ell_star": ell_star,
        "ell_star_restricted": sub_census.ell_star,
        "up": up,
        "up_restricted": sub_census.up,
        "universal_partners": universal_partners,
        "other_partners": other_partners,
        "universal_pairs_at_removed": removed_twin_universal,
        "twin_pair_universal": t.universal(v, vt),
        "asymmetric_pair": asymmetric,
    }))
}
