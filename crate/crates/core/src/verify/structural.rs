//! Structural facts about lines generated by pairs at distance two.

use serde_json::{json, Value};

use super::{metrics, Outcome};
use crate::graph::{
    enumerate_induced_cycles, neighbors_at_distance, structure_summary, Graph, StructureSummary,
    DEFAULT_CYCLE_MAX_N,
};
use crate::lines::{proof_sets_with, yxst_holds, Distance2Census, Hypotheses};
use crate::metric::{is_twin_pair, DistanceMatrix, Pair};
use crate::pointset::PointSet;

type Clause = std::result::Result<(), Value>;

struct Ctx<'a> {
    g: &'a Graph,
    d: DistanceMatrix,
    s: StructureSummary,
    census: Distance2Census,
    cycles: Option<Vec<(usize, PointSet)>>,
    tuples: usize,
    splits: usize,
}

impl Ctx<'_> {
    fn n(&self) -> usize {
        self.g.n()
    }

    fn line(&self, x: usize, y: usize) -> &PointSet {
        &self.census.line_of(x, y).expect("distance-two pair").points
    }

    fn common(&self, x: usize, y: usize) -> PointSet {
        self.g.neighbors(x).intersection(self.g.neighbors(y))
    }

    fn is_cut(&self, v: usize) -> bool {
        self.s.cut_vertices.contains(&v)
    }

    fn distance2_pairs(&self) -> Vec<Pair> {
        self.census
            .lines
            .iter()
            .flat_map(|l| l.generators.iter().copied())
            .collect()
    }

    fn on_induced_cycle(&mut self, len: usize, a: usize, b: usize) -> Option<bool> {
        if self.cycles.is_none() {
            if self.n() > DEFAULT_CYCLE_MAX_N {
                return None;
            }
            let n = self.n();
            let all = enumerate_induced_cycles(self.g, 4).ok()?;
            self.cycles = Some(
                all.into_iter()
                    .map(|c| (c.len(), PointSet::from_indices(n, c)))
                    .collect(),
            );
        }
        let cycles = self.cycles.as_ref().expect("filled above");
        Some(
            cycles
                .iter()
                .any(|(l, c)| *l == len && c.contains(a) && c.contains(b)),
        )
    }
}

/// Runs every structural clause whose hypotheses the graph meets and
/// reports the first violation with its tuple.
pub fn check_structural_lemmas(g: &Graph) -> Outcome {
    let Ok(d) = g.shortest_path_metric() else {
        return Outcome::unmet("disconnected");
    };
    let census = Distance2Census::build(&d);
    let mut c = Ctx {
        g,
        s: structure_summary(g),
        census,
        d,
        cycles: None,
        tuples: 0,
        splits: 0,
    };
    let result = run(&mut c);
    let m = metrics([
        ("n", c.n()),
        ("ell2", c.census.ell2),
        ("br", c.s.bridge_count),
        ("uniqueline_tuples", c.tuples),
        ("cut_splits", c.splits),
    ]);
    match result {
        Ok(()) => Outcome::pass(m),
        Err(w) => Outcome::fail(w, m),
    }
}

fn run(c: &mut Ctx) -> Clause {
    separation(c)?;
    geodesic_extension(c)?;
    if c.s.is_biconnected {
        universal_twins(c)?;
    }
    if c.s.bridge_count == 0 && !c.s.cut_vertices.is_empty() {
        cut_vertex(c)?;
    }
    if c.s.is_bipartite() {
        uniqueline(c)?;
    }
    if Hypotheses::of(c.g, &c.d).hold() {
        aligned_far(c)?;
        proof_set_clauses(c)?;
    }
    Ok(())
}

/// Inside the line of `x`, `y`, every path from the `y` side to the `x`
/// side runs through `x`, through `y` and through a common neighbor.
fn separation(c: &Ctx) -> Clause {
    for (x, y) in c.distance2_pairs() {
        let l = c.line(x, y);
        let delta = |v: usize| c.d.get(y, v) as i32 - c.d.get(x, v) as i32;
        let near_y: Vec<usize> = l.iter().filter(|&v| delta(v) == -2).collect();
        let near_x = PointSet::from_indices(c.n(), l.iter().filter(|&v| delta(v) == 2));
        let removals = [
            PointSet::from_indices(c.n(), [x]),
            PointSet::from_indices(c.n(), [y]),
            c.common(x, y),
        ];
        for removed in &removals {
            let allowed = l.difference(removed);
            for &a in near_y.iter().filter(|&&a| !removed.contains(a)) {
                let reach = c.g.reachable_within(a, &allowed);
                if let Some(b) = reach.intersection(&near_x).first() {
                    return Err(json!({
                        "clause": "separation", "x": x, "y": y, "a": a, "b": b,
                        "removed": removed,
                    }));
                }
            }
        }
    }
    Ok(())
}

/// A point of the line reached from `x` without passing `y`, and not a
/// common neighbor, sees `y` behind `x`.
fn geodesic_extension(c: &Ctx) -> Clause {
    for (p, q) in c.distance2_pairs() {
        for (x, y) in [(p, q), (q, p)] {
            let l = c.line(x, y);
            let mut allowed = l.clone();
            allowed.remove(y);
            let common = c.common(x, y);
            for z in c.g.reachable_within(x, &allowed).difference(&common).iter() {
                if c.d.get(z, y) != c.d.get(z, x) + 2 {
                    return Err(json!({ "clause": "geodesic_extension", "x": x, "y": y, "z": z }));
                }
            }
        }
    }
    Ok(())
}

/// In a 2-connected graph a universal line from a distance-two pair comes
/// from twins adjacent to everything else.
fn universal_twins(c: &Ctx) -> Clause {
    for (x, y) in c.distance2_pairs() {
        if c.line(x, y).len() < c.n() {
            continue;
        }
        let mut span = c.g.neighbors(x).clone();
        span.insert(x);
        span.insert(y);
        if !is_twin_pair(&c.d, x, y) || span.len() != c.n() {
            return Err(json!({ "clause": "universal_twins", "x": x, "y": y }));
        }
    }
    Ok(())
}

/// Splitting a bridgeless graph at a cut vertex into two sides: the line
/// count bound, and how lines of a side extend to the whole graph.
fn cut_vertex(c: &mut Ctx) -> Clause {
    let n = c.n();
    for v in c.s.cut_vertices.clone() {
        let mut rest = c.g.vertices();
        rest.remove(v);
        let mut comps: Vec<PointSet> = Vec::new();
        let mut seen = PointSet::empty(n);
        for u in rest.iter() {
            if !seen.contains(u) {
                let comp = c.g.reachable_within(u, &rest);
                seen.union_with(&comp);
                comps.push(comp);
            }
        }
        let k = comps.len();
        // The first component always sits on side one.
        for mask in (1u64..1 << k).step_by(2) {
            if mask == (1 << k) - 1 {
                continue;
            }
            c.splits += 1;
            let mut sides = [
                PointSet::from_indices(n, [v]),
                PointSet::from_indices(n, [v]),
            ];
            for (i, comp) in comps.iter().enumerate() {
                sides[usize::from(mask >> i & 1 == 0)].union_with(comp);
            }
            split_clauses(c, v, &sides)?;
        }
    }
    Ok(())
}

fn split_clauses(c: &Ctx, v: usize, sides: &[PointSet; 2]) -> Clause {
    let mut side_ell2 = [0; 2];
    let mut deg = [0; 2];
    for i in 0..2 {
        let (h, map) = c.g.induced(&sides[i]);
        let dh = h
            .shortest_path_metric()
            .expect("a side of a cut vertex is connected");
        let ch = Distance2Census::build(&dh);
        side_ell2[i] = ch.ell2;
        deg[i] = c.g.neighbors(v).intersection(&sides[i]).len();
        let other = sides[1 - i].difference(&PointSet::from_indices(c.n(), [v]));
        for line in &ch.lines {
            let local = PointSet::from_indices(c.n(), line.points.iter().map(|p| map[p]));
            let extended = local.union(&other);
            for &(a, b) in &line.generators {
                let (a, b) = (map[a], map[b]);
                let whole = c.line(a, b);
                if *whole != local && *whole != extended {
                    return Err(json!({
                        "clause": "cut_vertex_lines", "cut": v, "side": sides[i], "x": a, "y": b,
                        "line": whole, "side_line": local,
                    }));
                }
            }
        }
    }
    if c.census.ell2 + 1 < side_ell2[0] + side_ell2[1] + deg[0] * deg[1] {
        return Err(json!({
            "clause": "cut_vertex_bound", "cut": v, "sides": sides,
            "ell2": c.census.ell2, "side_ell2": side_ell2, "side_degrees": deg,
        }));
    }
    Ok(())
}

/// Ordered generator pairs `(x, y)`, `(s, t)` of one line, both orientations
/// of each, with a shortest `y`-`t` path through `x` and then `s`.
fn aligned_tuples(c: &Ctx) -> Vec<[usize; 4]> {
    let mut out = Vec::new();
    for line in c.census.lines.iter().filter(|l| l.width() >= 2) {
        for (i, &(p, q)) in line.generators.iter().enumerate() {
            for (j, &(r, w)) in line.generators.iter().enumerate() {
                if i == j {
                    continue;
                }
                for (x, y) in [(p, q), (q, p)] {
                    for (s, t) in [(r, w), (w, r)] {
                        if yxst_holds(&c.d, y, x, s, t) {
                            out.push([y, x, s, t]);
                        }
                    }
                }
            }
        }
    }
    out
}

fn uniqueline(c: &mut Ctx) -> Clause {
    let tuples = aligned_tuples(c);
    c.tuples = tuples.len();
    for [y, x, s, t] in tuples {
        let tuple = json!({ "y": y, "x": x, "s": s, "t": t });
        let dominated = |a: usize, b: usize| c.g.neighbors(a).is_subset(c.g.neighbors(b));
        if !(c.is_cut(y) || dominated(y, x)) || !(c.is_cut(t) || dominated(t, s)) {
            return Err(json!({ "clause": "uniqueline_domination", "tuple": tuple }));
        }
        if !c.s.is_biconnected {
            continue;
        }
        let d = &c.d;
        let around_y = neighbors_at_distance(c.g, y, 2);
        let around_t = neighbors_at_distance(c.g, t, 2);
        let target = d.get(x, t);
        for z in around_y.iter() {
            for w in around_t.iter() {
                let vals = [d.get(z, t), target, d.get(y, s), d.get(w, y)];
                if vals.iter().any(|&v| v != target) {
                    return Err(json!({
                        "clause": "uniqueline_distances", "tuple": tuple, "z": z, "w": w,
                        "distances": vals,
                    }));
                }
            }
        }
        for z in around_y.iter().filter(|&z| z != x) {
            for v in (0..c.n()).filter(|&v| v != t) {
                if d.get(z, t) == d.get(z, v) + d.get(v, t) && d.get(v, s) != d.get(v, t) {
                    return Err(
                        json!({ "clause": "uniqueline_geodesics", "tuple": tuple, "z": z, "v": v }),
                    );
                }
            }
        }
        for w in around_t.iter().filter(|&w| w != s) {
            for u in (0..c.n()).filter(|&u| u != y) {
                if d.get(y, w) == d.get(y, u) + d.get(u, w) && d.get(u, y) != d.get(u, x) {
                    return Err(
                        json!({ "clause": "uniqueline_geodesics", "tuple": tuple, "w": w, "u": u }),
                    );
                }
            }
        }
        let len = 2 * (d.get(x, s) as usize + 2);
        if c.on_induced_cycle(len, x, s) == Some(false) {
            return Err(json!({ "clause": "uniqueline_cycle", "tuple": tuple, "length": len }));
        }
    }
    Ok(())
}

/// Two generator pairs of one line are far apart, and the farthest
/// labeling lines them up along a shortest path.
fn aligned_far(c: &Ctx) -> Clause {
    let d = &c.d;
    for line in c.census.lines.iter().filter(|l| l.width() >= 2) {
        for (i, &(p, q)) in line.generators.iter().enumerate() {
            for &(r, w) in &line.generators[i + 1..] {
                let beta = [d.get(p, r), d.get(p, w), d.get(q, r), d.get(q, w)]
                    .into_iter()
                    .max()
                    .expect("four values");
                let pairs = json!([[p, q], [r, w]]);
                if beta < 4 {
                    return Err(
                        json!({ "clause": "aligned_far", "pairs": pairs, "max_distance": beta }),
                    );
                }
                for (x, y) in [(p, q), (q, p)] {
                    for (s, t) in [(r, w), (w, r)] {
                        if d.get(y, t) == beta && !yxst_holds(d, y, x, s, t) {
                            return Err(json!({
                                "clause": "aligned_far", "pairs": pairs, "max_distance": beta,
                                "tuple": { "y": y, "x": x, "s": s, "t": t },
                            }));
                        }
                    }
                }
            }
        }
    }
    Ok(())
}

fn proof_set_clauses(c: &Ctx) -> Clause {
    let sets = proof_sets_with(c.g, &c.d, &c.census);
    if let Some(u) = sets.dominators.intersection(&sets.all_partners).first() {
        return Err(json!({ "clause": "dominators_not_partners", "vertex": u }));
    }
    for (&x, ys) in &sets.partners {
        for u in ys.iter() {
            for z in ys.iter().filter(|&z| c.d.get(u, z) == 2) {
                if !sets.long_cycle.contains(u) || !sets.long_cycle.contains(z) {
                    return Err(
                        json!({ "clause": "partners_on_long_cycles", "x": x, "u": u, "z": z }),
                    );
                }
            }
        }
    }
    Ok(())
}
