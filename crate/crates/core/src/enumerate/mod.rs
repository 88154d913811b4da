//! Exhaustive generation of small instance families.

mod canon;

pub use canon::{canonical_form, canonical_labeling, CANON_MAX_N};

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{structure_summary, Graph};
use crate::io::graph6;
use crate::metric::{all_pairs, DistanceMatrix};

pub const MAX_N_ENV: &str = "METRIC_LINES_MAX_N";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Connected,
    ConnectedBipartite,
    TwoMetric,
}

impl Family {
    pub fn is_graph(self) -> bool {
        !matches!(self, Family::TwoMetric)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Connected => "connected",
            Family::ConnectedBipartite => "connected_bipartite",
            Family::TwoMetric => "two_metric",
        })
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "connected" => Ok(Family::Connected),
            "connected_bipartite" | "bipartite" => Ok(Family::ConnectedBipartite),
            "two_metric" | "2metric" => Ok(Family::TwoMetric),
            _ => Err(Error::Parse(format!(
                "unknown family {s:?} (expected connected, bipartite or two_metric)"
            ))),
        }
    }
}

/// Selects every `count`-th instance of a stream, starting at `index`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Shard {
    pub index: usize,
    pub count: usize,
}

impl Shard {
    pub const ALL: Shard = Shard { index: 0, count: 1 };

    pub fn new(index: usize, count: usize) -> Result<Self> {
        if count == 0 || index >= count {
            return Err(Error::Domain(format!(
                "shard {index}/{count}: need index < count"
            )));
        }
        Ok(Shard { index, count })
    }

    pub fn keeps(&self, position: usize) -> bool {
        position % self.count == self.index
    }
}

impl Default for Shard {
    fn default() -> Self {
        Shard::ALL
    }
}

impl FromStr for Shard {
    type Err = Error;

    /// Parses `I/K`.
    fn from_str(s: &str) -> Result<Self> {
        let (i, k) = s
            .split_once('/')
            .ok_or_else(|| Error::Parse(format!("shard must look like I/K, got {s:?}")))?;
        let num = |t: &str| {
            t.trim()
                .parse::<usize>()
                .map_err(|_| Error::Parse(format!("bad shard component {t:?}")))
        };
        Shard::new(num(i)?, num(k)?)
    }
}

/// Size limits for built-in enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Ceilings {
    pub graphs: usize,
    pub two_metric_iso: usize,
    pub two_metric_labeled: usize,
}

impl Default for Ceilings {
    fn default() -> Self {
        Ceilings {
            graphs: 8,
            two_metric_iso: 7,
            two_metric_labeled: 8,
        }
    }
}

impl Ceilings {
    /// The defaults, or a single override for all of them taken from
    /// `METRIC_LINES_MAX_N`.
    pub fn from_env() -> Self {
        match std::env::var(MAX_N_ENV)
            .ok()
            .and_then(|v| v.trim().parse().ok())
        {
            Some(n) => Ceilings {
                graphs: n,
                two_metric_iso: n,
                two_metric_labeled: n,
            },
            None => Ceilings::default(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct FamilySpec {
    pub family: Family,
    pub n_min: usize,
    pub n_max: usize,
    pub up_to_iso: bool,
    pub shard: Shard,
}

impl FamilySpec {
    pub fn new(family: Family, n_min: usize, n_max: usize) -> Self {
        FamilySpec {
            family,
            n_min,
            n_max,
            up_to_iso: true,
            shard: Shard::ALL,
        }
    }

    pub fn labeled(mut self) -> Self {
        self.up_to_iso = false;
        self
    }

    pub fn sharded(mut self, shard: Shard) -> Self {
        self.shard = shard;
        self
    }

    pub fn check(&self, ceilings: &Ceilings) -> Result<()> {
        if self.n_min < 2 || self.n_min > self.n_max {
            return Err(Error::Domain(format!(
                "need 2 <= n_min <= n_max, got {}..{}",
                self.n_min, self.n_max
            )));
        }
        let ceiling = match (self.family, self.up_to_iso) {
            (Family::TwoMetric, true) => ceilings.two_metric_iso,
            (Family::TwoMetric, false) => ceilings.two_metric_labeled,
            _ => ceilings.graphs,
        };
        if !self.up_to_iso && self.n_max > 11 {
            return Err(Error::Resource(format!(
                "labeled enumeration indexes edge subsets with 64 bits, n = {} is too large",
                self.n_max
            )));
        }
        if self.n_max > ceiling {
            return Err(Error::Resource(format!(
                "{} enumeration is capped at n = {ceiling} (asked for {}); feed larger \
                 instances from an external graph6 corpus with --graph6, or raise the cap \
                 with {MAX_N_ENV}",
                self.family, self.n_max
            )));
        }
        Ok(())
    }
}

pub type Stream<T> = Box<dyn Iterator<Item = T> + Send>;

fn shard<T: 'static>(it: impl Iterator<Item = T> + Send + 'static, s: Shard) -> Stream<T> {
    if s == Shard::ALL {
        return Box::new(it);
    }
    Box::new(
        it.enumerate()
            .filter(move |(i, _)| s.keeps(*i))
            .map(|(_, x)| x),
    )
}

/// One canonical representative per class, per level, for levels `1..=n_max`.
/// Each level extends the previous one by a vertex with every allowed
/// neighborhood and deduplicates by canonical form.
fn iso_levels(n_max: usize, connected: bool) -> Vec<Vec<Graph>> {
    let mut levels = vec![Vec::new(), vec![Graph::new(1)]];
    for n in 2..=n_max {
        let parents = &levels[n - 1];
        let mut forms: Vec<String> = parents
            .par_iter()
            .flat_map_iter(|p| {
                let first = u64::from(connected);
                (first..1u64 << (n - 1)).map(move |mask| {
                    let mut g = Graph::new(n);
                    for (u, v) in p.edges() {
                        g.add_edge(u, v);
                    }
                    for u in 0..n - 1 {
                        if mask >> u & 1 == 1 {
                            g.add_edge(u, n - 1);
                        }
                    }
                    canonical_form(&g).expect("within canonical size limit")
                })
            })
            .collect();
        forms.par_sort_unstable();
        forms.dedup();
        let level = forms
            .iter()
            .map(|s| graph6::decode(s).expect("own encoding decodes"))
            .collect();
        levels.push(level);
    }
    levels
}

fn labeled_graphs(n: usize) -> impl Iterator<Item = Graph> + Send {
    let pairs: Vec<_> = all_pairs(n).collect();
    (0..1u64 << pairs.len()).map(move |mask| {
        let mut g = Graph::new(n);
        for (k, &(u, v)) in pairs.iter().enumerate() {
            if mask >> k & 1 == 1 {
                g.add_edge(u, v);
            }
        }
        g
    })
}

fn is_bipartite(g: &Graph) -> bool {
    structure_summary(g).is_bipartite()
}

/// Connected (optionally bipartite) graphs in `n_min..=n_max`, smaller `n`
/// first. Up to isomorphism the graphs are canonical and sorted by their
/// graph6 string; labeled streams follow the edge-subset bit order.
pub fn enumerate_graphs(spec: &FamilySpec) -> Result<Stream<Graph>> {
    enumerate_graphs_with(spec, &Ceilings::from_env())
}

pub fn enumerate_graphs_with(spec: &FamilySpec, ceilings: &Ceilings) -> Result<Stream<Graph>> {
    spec.check(ceilings)?;
    let bipartite = match spec.family {
        Family::Connected => false,
        Family::ConnectedBipartite => true,
        Family::TwoMetric => {
            return Err(Error::Domain("two_metric is not a graph family".into()));
        }
    };
    let keep = move |g: &Graph| !bipartite || is_bipartite(g);
    let range = spec.n_min..=spec.n_max;
    if spec.up_to_iso {
        let levels = iso_levels(spec.n_max, true);
        let all: Vec<Graph> = levels
            .into_iter()
            .skip(spec.n_min)
            .flatten()
            .filter(keep)
            .collect();
        Ok(shard(all.into_iter(), spec.shard))
    } else {
        let it = range
            .flat_map(labeled_graphs)
            .filter(|g| g.is_connected())
            .filter(move |g| keep(g));
        Ok(shard(it, spec.shard))
    }
}

/// The 2-metric with `d = 1` exactly on the edges of `g`.
pub fn two_metric_of(g: &Graph) -> DistanceMatrix {
    DistanceMatrix::from_fn(g.n(), |i, j| if g.has_edge(i, j) { 1 } else { 2 })
}

/// The graph of pairs at distance one.
pub fn unit_distance_graph(d: &DistanceMatrix) -> Graph {
    let mut g = Graph::new(d.len());
    for (i, j) in all_pairs(d.len()) {
        if d.get(i, j) == 1 {
            g.add_edge(i, j);
        }
    }
    g
}

/// All `{1,2}`-valued metrics on `n_min..=n_max` points. Up to isomorphism
/// there is one per class of the distance-one graph.
pub fn enumerate_two_metrics(spec: &FamilySpec) -> Result<Stream<DistanceMatrix>> {
    enumerate_two_metrics_with(spec, &Ceilings::from_env())
}

pub fn enumerate_two_metrics_with(
    spec: &FamilySpec,
    ceilings: &Ceilings,
) -> Result<Stream<DistanceMatrix>> {
    if spec.family != Family::TwoMetric {
        return Err(Error::Domain(format!(
            "{} is not a metric family",
            spec.family
        )));
    }
    spec.check(ceilings)?;
    if spec.up_to_iso {
        let levels = iso_levels(spec.n_max, false);
        let all: Vec<DistanceMatrix> = levels
            .into_iter()
            .skip(spec.n_min)
            .flatten()
            .map(|g| two_metric_of(&g))
            .collect();
        Ok(shard(all.into_iter(), spec.shard))
    } else {
        let it =
            (spec.n_min..=spec.n_max).flat_map(|n| labeled_graphs(n).map(|g| two_metric_of(&g)));
        Ok(shard(it, spec.shard))
    }
}

/// Distinct canonical forms among `graphs`; a convenience for counting
/// classes.
pub fn distinct_classes<'a>(
    graphs: impl IntoIterator<Item = &'a Graph>,
) -> Result<BTreeSet<String>> {
    graphs.into_iter().map(canonical_form).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn count(spec: FamilySpec) -> usize {
        enumerate_graphs(&spec).unwrap().count()
    }

    #[test]
    fn connected_counts() {
        let want = [1, 2, 6, 21, 112];
        for (i, &w) in want.iter().enumerate() {
            let n = i + 2;
            assert_eq!(count(FamilySpec::new(Family::Connected, n, n)), w, "n={n}");
        }
    }

    #[test]
    fn bipartite_n4() {
        let forms: BTreeSet<String> =
            enumerate_graphs(&FamilySpec::new(Family::ConnectedBipartite, 4, 4))
                .unwrap()
                .map(|g| canonical_form(&g).unwrap())
                .collect();
        assert_eq!(forms.len(), 3);
        for g in [Graph::cycle(4), Graph::path(4), Graph::star(3)] {
            assert!(forms.contains(&canonical_form(&g).unwrap()));
        }
    }

    #[test]
    fn two_metric_counts() {
        let labeled = FamilySpec::new(Family::TwoMetric, 4, 4).labeled();
        assert_eq!(enumerate_two_metrics(&labeled).unwrap().count(), 64);
        assert_eq!(
            enumerate_two_metrics(&FamilySpec::new(Family::TwoMetric, 3, 3))
                .unwrap()
                .count(),
            4
        );
    }

    #[test]
    fn ceilings_enforced() {
        let c = Ceilings::default();
        let spec = FamilySpec::new(Family::Connected, 3, 20);
        assert!(matches!(
            enumerate_graphs_with(&spec, &c),
            Err(Error::Resource(_))
        ));
        let spec = FamilySpec::new(Family::TwoMetric, 3, 8);
        assert!(enumerate_two_metrics_with(&spec, &c).is_err());
        assert!(spec.labeled().check(&c).is_ok());
        assert!(FamilySpec::new(Family::Connected, 1, 3).check(&c).is_err());
    }

    #[test]
    fn shards_partition_the_stream() {
        let spec = FamilySpec::new(Family::Connected, 3, 5);
        let full: Vec<Graph> = enumerate_graphs(&spec).unwrap().collect();
        let mut merged = Vec::new();
        for i in 0..3 {
            let part: Vec<Graph> = enumerate_graphs(&spec.sharded(Shard::new(i, 3).unwrap()))
                .unwrap()
                .collect();
            merged.extend(part);
        }
        assert_eq!(merged.len(), full.len());
        let a: BTreeSet<String> = distinct_classes(&full).unwrap();
        let b: BTreeSet<String> = distinct_classes(&merged).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn shard_parsing() {
        assert_eq!(
            "1/4".parse::<Shard>().unwrap(),
            Shard { index: 1, count: 4 }
        );
        assert!("4/4".parse::<Shard>().is_err());
        assert!("x".parse::<Shard>().is_err());
    }
}
