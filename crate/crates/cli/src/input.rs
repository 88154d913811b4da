//! Turning command-line input selections into an instance stream.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::Args;

use metric_lines::enumerate::{
    enumerate_graphs, enumerate_two_metrics, Family, FamilySpec, Shard, Stream,
};
use metric_lines::io::{graph6, text};
use metric_lines::metric::validate_metric;
use metric_lines::verify::{Instance, FIXTURES};
use metric_lines::DistanceMatrix;

#[derive(Debug, Clone, Args)]
pub struct InputArgs {
    /// Enumerated family: connected, bipartite or two_metric.
    #[arg(long)]
    pub family: Option<Family>,

    /// Vertex counts for --family, as `A..B` (inclusive) or a single `N`.
    #[arg(long, value_parser = parse_range, value_name = "A..B")]
    pub n: Option<(usize, usize)>,

    /// Enumerate one instance per isomorphism class (the default).
    #[arg(long, conflicts_with = "labeled")]
    pub iso: bool,

    /// Enumerate every labeled instance.
    #[arg(long)]
    pub labeled: bool,

    /// File of graphs, one graph6 string per line.
    #[arg(long, value_name = "FILE")]
    pub graph6: Vec<PathBuf>,

    /// File of distance matrices in the text format.
    #[arg(long, value_name = "FILE")]
    pub metric: Vec<PathBuf>,

    /// File holding one graph as an edge list.
    #[arg(long, value_name = "FILE")]
    pub edges: Vec<PathBuf>,

    /// Built-in fixture names, comma separated, or `all`.
    #[arg(long, value_delimiter = ',', value_name = "NAME")]
    pub fixture: Vec<String>,

    /// Keep only stream positions congruent to I modulo K.
    #[arg(long, value_name = "I/K")]
    pub shard: Option<Shard>,
}

pub fn parse_range(s: &str) -> Result<(usize, usize), String> {
    let num = |t: &str| {
        t.trim()
            .parse::<usize>()
            .map_err(|_| format!("bad vertex count {t:?}"))
    };
    match s.split_once("..") {
        Some((a, b)) => {
            let b = b.strip_prefix('=').unwrap_or(b);
            let (a, b) = (num(a)?, num(b)?);
            if a > b {
                return Err(format!("empty range {s}"));
            }
            Ok((a, b))
        }
        None => num(s).map(|n| (n, n)),
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn checked_metric(d: DistanceMatrix, path: &Path, k: usize) -> Result<DistanceMatrix> {
    let bad = validate_metric(&d);
    if let Some(v) = bad.first() {
        bail!(
            "{} matrix {}: not a metric ({} violations), first: {v}",
            path.display(),
            k + 1,
            bad.len()
        );
    }
    Ok(d)
}

impl InputArgs {
    pub fn family_spec(&self) -> Result<Option<FamilySpec>> {
        match (self.family, self.n) {
            (None, None) => Ok(None),
            (None, Some(_)) => bail!("--n needs --family"),
            (Some(_), None) => bail!("--family needs --n"),
            (Some(f), Some((a, b))) => {
                let spec = FamilySpec::new(f, a, b);
                Ok(Some(if self.labeled { spec.labeled() } else { spec }))
            }
        }
    }

    /// Fixtures first, then files in the order given, then the family.
    /// Files are read and validated up front.
    pub fn instances(&self) -> Result<Stream<Instance>> {
        let mut front: Vec<Instance> = Vec::new();
        for name in &self.fixture {
            if name == "all" {
                for f in FIXTURES {
                    front.push(Instance::fixture(f)?);
                }
            } else {
                front.push(Instance::fixture(name)?);
            }
        }
        for p in &self.graph6 {
            let gs = graph6::decode_lines(&read(p)?).with_context(|| p.display().to_string())?;
            front.extend(gs.into_iter().map(Instance::graph));
        }
        for p in &self.edges {
            let g = text::parse_edge_list(&read(p)?).with_context(|| p.display().to_string())?;
            front.push(Instance::graph(g));
        }
        for p in &self.metric {
            let ds = text::parse_matrices(&read(p)?).with_context(|| p.display().to_string())?;
            for (k, d) in ds.into_iter().enumerate() {
                front.push(Instance::metric(checked_metric(d, p, k)?));
            }
        }
        let family: Stream<Instance> = match self.family_spec()? {
            None => Box::new(std::iter::empty()),
            Some(spec) if spec.family == Family::TwoMetric => {
                Box::new(enumerate_two_metrics(&spec)?.map(Instance::metric))
            }
            Some(spec) => Box::new(enumerate_graphs(&spec)?.map(Instance::graph)),
        };
        if front.is_empty() && self.family.is_none() {
            bail!("no input: give --family with --n, --graph6, --metric, --edges or --fixture");
        }
        let all = front.into_iter().chain(family);
        Ok(match self.shard {
            None => Box::new(all),
            Some(s) => Box::new(
                all.enumerate()
                    .filter(move |(i, _)| s.keeps(*i))
                    .map(|(_, x)| x),
            ),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        assert_eq!(parse_range("3..8"), Ok((3, 8)));
        assert_eq!(parse_range("3..=8"), Ok((3, 8)));
        assert_eq!(parse_range("5"), Ok((5, 5)));
        assert!(parse_range("8..3").is_err());
        assert!(parse_range("x").is_err());
    }
}
