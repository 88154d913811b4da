//! Named checks over graphs and metric spaces, and a streaming runner.

mod base_point;
mod checks;
mod fixtures;
mod structural;

pub use base_point::{check_section3_all, check_section3_machinery, check_twin_removal};
pub use checks::{
    check_br_bound, check_chen_chvatal, check_figure1_exceptions, check_notwins_bound,
    check_up_bound,
};
pub use fixtures::{fixture, fixture_graph, vertex_names, EXEMPT_GRAPHS, FIXTURES};
pub use structural::check_structural_lemmas;

use std::collections::BTreeMap;
use std::fmt;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;
use serde_json::Value;

use crate::enumerate::unit_distance_graph;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::io::graph6;
use crate::metric::{is_k_metric, validate_metric, DistanceMatrix};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    Exempt,
    PreconditionUnmet,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Exempt => "exempt",
            Status::PreconditionUnmet => "precondition_unmet",
        })
    }
}

pub type Metrics = BTreeMap<String, i64>;

pub(crate) fn metrics<const K: usize>(pairs: [(&str, usize); K]) -> Metrics {
    pairs
        .iter()
        .map(|&(k, v)| (k.to_string(), v as i64))
        .collect()
}

/// Result of one check on one subject, before it is tied to names.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Outcome {
    pub status: Status,
    pub witness: Option<Value>,
    pub metrics: Metrics,
}

impl Outcome {
    pub fn pass(metrics: Metrics) -> Self {
        Outcome {
            status: Status::Pass,
            witness: None,
            metrics,
        }
    }

    pub fn fail(witness: Value, metrics: Metrics) -> Self {
        Outcome {
            status: Status::Fail,
            witness: Some(witness),
            metrics,
        }
    }

    pub fn exempt(reason: &str, metrics: Metrics) -> Self {
        Outcome {
            status: Status::Exempt,
            witness: Some(serde_json::json!({ "reason": reason })),
            metrics,
        }
    }

    pub fn unmet(reason: impl Into<String>) -> Self {
        Outcome {
            status: Status::PreconditionUnmet,
            witness: Some(serde_json::json!({ "reason": reason.into() })),
            metrics: Metrics::new(),
        }
    }
}

/// One check applied to one instance.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Verdict {
    pub check: String,
    pub instance: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
    pub metrics: Metrics,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub duration_ms: Option<f64>,
}

impl Verdict {
    pub fn new(check: &str, instance: &str, o: Outcome) -> Self {
        Verdict {
            check: check.to_string(),
            instance: instance.to_string(),
            status: o.status,
            witness: o.witness,
            metrics: o.metrics,
            duration_ms: None,
        }
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("verdicts serialize")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Subject {
    Graph(Graph),
    Metric(DistanceMatrix),
}

#[derive(Debug, Clone)]
pub struct Instance {
    pub id: String,
    pub subject: Subject,
    /// Set for built-in fixtures.
    pub fixture: Option<String>,
}

impl Instance {
    pub fn graph(g: Graph) -> Self {
        Instance {
            id: format!("g6:{}", graph6::encode(&g)),
            subject: Subject::Graph(g),
            fixture: None,
        }
    }

    pub fn metric(d: DistanceMatrix) -> Self {
        let id = if is_two_metric(&d) {
            format!("m2:{}", graph6::encode(&unit_distance_graph(&d)))
        } else {
            let entries: Vec<String> = d.upper_triangle().iter().map(u32::to_string).collect();
            format!("dm:{}:{}", d.len(), entries.join("."))
        };
        Instance {
            id,
            subject: Subject::Metric(d),
            fixture: None,
        }
    }

    pub fn fixture(name: &str) -> Result<Self> {
        Ok(Instance {
            id: format!("fixture:{name}"),
            subject: Subject::Graph(fixture(name)?),
            fixture: Some(name.to_string()),
        })
    }

    pub fn with_id(mut self, id: impl Into<String>) -> Self {
        self.id = id.into();
        self
    }
}

/// A valid metric with every off-diagonal distance in `{1, 2}`.
pub fn is_two_metric(d: &DistanceMatrix) -> bool {
    is_k_metric(d, 2) && validate_metric(d).is_empty()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Target {
    /// Graph subjects only.
    Graph,
    /// Metric subjects, and graph subjects through their shortest-path metric.
    Metric,
    /// The six exempted fixtures.
    ExemptGraphs,
}

pub struct Check {
    pub name: &'static str,
    pub summary: &'static str,
    pub target: Target,
    run: fn(&Instance) -> Outcome,
}

impl fmt::Debug for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Check").field("name", &self.name).finish()
    }
}

impl Check {
    pub fn applies_to(&self, inst: &Instance) -> bool {
        match (self.target, &inst.subject) {
            (Target::Graph, Subject::Graph(_)) => true,
            (Target::Graph, Subject::Metric(_)) => false,
            (Target::Metric, _) => true,
            (Target::ExemptGraphs, _) => inst
                .fixture
                .as_deref()
                .is_some_and(|f| EXEMPT_GRAPHS.contains(&f)),
        }
    }

    pub fn evaluate(&self, inst: &Instance) -> Outcome {
        (self.run)(inst)
    }
}

fn with_graph(inst: &Instance, f: fn(&Graph) -> Outcome) -> Outcome {
    match &inst.subject {
        Subject::Graph(g) => f(g),
        Subject::Metric(_) => Outcome::unmet("needs a graph"),
    }
}

fn with_metric(inst: &Instance, f: fn(&DistanceMatrix) -> Outcome) -> Outcome {
    match &inst.subject {
        Subject::Metric(d) => {
            if !validate_metric(d).is_empty() {
                return Outcome::unmet("invalid metric");
            }
            f(d)
        }
        Subject::Graph(g) => match g.shortest_path_metric() {
            Ok(d) => f(&d),
            Err(e) => Outcome::unmet(e.to_string()),
        },
    }
}

static REGISTRY: [Check; 8] = [
    Check {
        name: "chen_chvatal",
        summary: "fewer than n lines forces a universal line",
        target: Target::Metric,
        run: |i| with_metric(i, check_chen_chvatal),
    },
    Check {
        name: "br_bound",
        summary: "distance-two lines plus bridges reach n on connected bipartite graphs",
        target: Target::Graph,
        run: |i| with_graph(i, check_br_bound),
    },
    Check {
        name: "notwins_bound",
        summary: "at least n distance-two lines on 2-connected bipartite twin-free graphs",
        target: Target::Graph,
        run: |i| with_graph(i, check_notwins_bound),
    },
    Check {
        name: "up_bound",
        summary: "non-universal lines plus universal pairs reach n on 2-metrics",
        target: Target::Metric,
        run: |i| with_metric(i, check_up_bound),
    },
    Check {
        name: "base_point",
        summary: "base-point line families of 2-metrics, for every base point",
        target: Target::Metric,
        run: |i| with_metric(i, check_section3_all),
    },
    Check {
        name: "twin_removal",
        summary: "line and universal-pair accounting when a twin is removed",
        target: Target::Metric,
        run: |i| with_metric(i, check_twin_removal),
    },
    Check {
        name: "structural",
        summary: "separation, cut-vertex, alignment and domination lemmas",
        target: Target::Graph,
        run: |i| with_graph(i, check_structural_lemmas),
    },
    Check {
        name: "exceptions",
        summary: "the exempted graphs have few lines and several universal pairs",
        target: Target::ExemptGraphs,
        run: |i| match &i.fixture {
            Some(name) => {
                check_figure1_exceptions(name).unwrap_or_else(|e| Outcome::unmet(e.to_string()))
            }
            None => Outcome::unmet("not a fixture"),
        },
    },
];

pub fn registry() -> &'static [Check] {
    &REGISTRY
}

pub fn find_check(name: &str) -> Option<&'static Check> {
    REGISTRY.iter().find(|c| c.name == name)
}

/// Resolves a comma-separated list of check names; `all` selects everything.
pub fn select_checks(names: &str) -> Result<Vec<&'static Check>> {
    let mut out: Vec<&'static Check> = Vec::new();
    for name in names.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        if name == "all" {
            return Ok(REGISTRY.iter().collect());
        }
        let c = find_check(name).ok_or_else(|| {
            let known: Vec<&str> = REGISTRY.iter().map(|c| c.name).collect();
            Error::Parse(format!(
                "unknown check {name:?}; known: {}, all",
                known.join(", ")
            ))
        })?;
        if !out.iter().any(|o| o.name == c.name) {
            out.push(c);
        }
    }
    if out.is_empty() {
        return Err(Error::Parse("no checks selected".into()));
    }
    Ok(out)
}

/// Every applicable check on one instance, in the given order.
pub fn evaluate_instance(inst: &Instance, checks: &[&Check], timings: bool) -> Vec<Verdict> {
    checks
        .iter()
        .filter(|c| c.applies_to(inst))
        .map(|c| {
            let start = Instant::now();
            let mut v = Verdict::new(c.name, &inst.id, c.evaluate(inst));
            if timings {
                v.duration_ms = Some(start.elapsed().as_secs_f64() * 1e3);
            }
            v
        })
        .collect()
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Counts {
    pub pass: usize,
    pub fail: usize,
    pub exempt: usize,
    pub unmet: usize,
}

impl Counts {
    fn add(&mut self, s: Status) {
        match s {
            Status::Pass => self.pass += 1,
            Status::Fail => self.fail += 1,
            Status::Exempt => self.exempt += 1,
            Status::PreconditionUnmet => self.unmet += 1,
        }
    }

    pub fn total(&self) -> usize {
        self.pass + self.fail + self.exempt + self.unmet
    }
}

#[derive(Debug, Clone, Default)]
pub struct SuiteOptions {
    /// Worker threads; `None` uses the global pool.
    pub jobs: Option<usize>,
    pub max_instances: Option<usize>,
    pub time_limit: Option<Duration>,
    pub timings: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    /// Per check, in selection order.
    pub counts: Vec<(String, Counts)>,
    pub failures: Vec<Verdict>,
    pub instances: usize,
    /// False when a budget stopped the run early.
    pub complete: bool,
}

impl SuiteReport {
    pub fn counts_for(&self, check: &str) -> Option<&Counts> {
        self.counts.iter().find(|(c, _)| c == check).map(|(_, c)| c)
    }

    pub fn total_failures(&self) -> usize {
        self.counts.iter().map(|(_, c)| c.fail).sum()
    }

    /// `check,pass,fail,exempt,unmet` with a header line.
    pub fn summary_csv(&self) -> String {
        let mut s = String::from("check,pass,fail,exempt,unmet\n");
        for (name, c) in &self.counts {
            s.push_str(&format!(
                "{name},{},{},{},{}\n",
                c.pass, c.fail, c.exempt, c.unmet
            ));
        }
        s
    }
}

const CHUNK: usize = 2048;

/// Runs `checks` over `instances` in parallel, handing every verdict to
/// `sink` in stream order.
pub fn run_suite(
    instances: impl Iterator<Item = Instance>,
    checks: &[&'static Check],
    opts: &SuiteOptions,
    mut sink: impl FnMut(&Verdict),
) -> Result<SuiteReport> {
    if checks.is_empty() {
        return Err(Error::Domain("run_suite needs at least one check".into()));
    }
    let pool = match opts.jobs {
        Some(j) => Some(
            rayon::ThreadPoolBuilder::new()
                .num_threads(j)
                .build()
                .map_err(|e| Error::Resource(e.to_string()))?,
        ),
        None => None,
    };
    let start = Instant::now();
    let mut report = SuiteReport {
        counts: checks
            .iter()
            .map(|c| (c.name.to_string(), Counts::default()))
            .collect(),
        failures: Vec::new(),
        instances: 0,
        complete: true,
    };
    let mut instances = instances.peekable();
    let limit = opts.max_instances.unwrap_or(usize::MAX);
    while instances.peek().is_some() {
        if report.instances >= limit || opts.time_limit.is_some_and(|t| start.elapsed() >= t) {
            report.complete = false;
            break;
        }
        let take = CHUNK.min(limit - report.instances);
        let chunk: Vec<Instance> = instances.by_ref().take(take).collect();
        let eval = || -> Vec<Vec<Verdict>> {
            chunk
                .par_iter()
                .map(|inst| evaluate_instance(inst, checks, opts.timings))
                .collect()
        };
        let results = match &pool {
            Some(p) => p.install(eval),
            None => eval(),
        };
        report.instances += chunk.len();
        for v in results.into_iter().flatten() {
            let slot = report
                .counts
                .iter_mut()
                .find(|(c, _)| *c == v.check)
                .expect("verdict from a selected check");
            slot.1.add(v.status);
            sink(&v);
            if v.status == Status::Fail {
                report.failures.push(v);
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn verdict_json_shape() {
        let v = Verdict::new("br_bound", "fixture:P3", Outcome::pass(metrics([("n", 3)])));
        assert_eq!(
            v.to_json_line(),
            r#"{"check":"br_bound","instance":"fixture:P3","status":"pass","metrics":{"n":3}}"#
        );
    }

    #[test]
    fn selection() {
        assert_eq!(select_checks("all").unwrap().len(), 8);
        assert_eq!(
            select_checks("br_bound,up_bound,br_bound").unwrap().len(),
            2
        );
        assert!(select_checks("nosuch").is_err());
        assert!(select_checks("").is_err());
    }

    #[test]
    fn empty_stream() {
        let r = run_suite(
            std::iter::empty(),
            &select_checks("all").unwrap(),
            &SuiteOptions::default(),
            |_| {},
        )
        .unwrap();
        assert_eq!(r.instances, 0);
        assert!(r.complete);
        assert_eq!(r.total_failures(), 0);
    }

    #[test]
    fn budget_marks_incomplete() {
        let insts = (3..8).map(|n| Instance::graph(Graph::cycle(n)));
        let opts = SuiteOptions {
            max_instances: Some(2),
            ..Default::default()
        };
        let r = run_suite(
            insts,
            &select_checks("chen_chvatal").unwrap(),
            &opts,
            |_| {},
        )
        .unwrap();
        assert_eq!(r.instances, 2);
        assert!(!r.complete);
    }

    #[test]
    fn instance_ids() {
        assert_eq!(Instance::graph(Graph::cycle(4)).id, "g6:Cl");
        let d = crate::enumerate::two_metric_of(&Graph::path(3));
        assert_eq!(Instance::metric(d).id, "m2:Bg");
        assert_eq!(Instance::fixture("C4").unwrap().id, "fixture:C4");
    }
}
