//! Per-instance line counts for the `lines` command.

use std::collections::BTreeMap;

use anyhow::{Context, Result};
use serde_json::{json, Value};

use metric_lines::graph::structure_summary;
use metric_lines::lines::Distance2Census;
use metric_lines::metric::{line_census, twin_pairs};
use metric_lines::verify::{vertex_names, Instance, Subject};
use metric_lines::{DistanceMatrix, PointSet};

pub struct LinesRow {
    pub instance: String,
    pub n: usize,
    pub ell: usize,
    pub ell_star: usize,
    pub up: usize,
    pub twins: usize,
    /// Graph subjects only.
    pub ell2: Option<usize>,
    pub br: Option<usize>,
    pub widths: Option<BTreeMap<usize, usize>>,
    pub lines: Vec<Vec<String>>,
    pub universal: bool,
}

fn names(inst: &Instance, n: usize) -> Vec<String> {
    match inst.fixture.as_deref().and_then(vertex_names) {
        Some(v) => v.iter().map(|s| s.to_string()).collect(),
        None => (0..n).map(|i| i.to_string()).collect(),
    }
}

fn named(p: &PointSet, names: &[String]) -> Vec<String> {
    p.iter().map(|i| names[i].clone()).collect()
}

pub fn lines_row(inst: &Instance) -> Result<LinesRow> {
    let (d, graph_parts): (DistanceMatrix, Option<(usize, Distance2Census)>) = match &inst.subject {
        Subject::Graph(g) => {
            let d = g.shortest_path_metric().with_context(|| inst.id.clone())?;
            let census = Distance2Census::build(&d);
            (d, Some((structure_summary(g).bridge_count, census)))
        }
        Subject::Metric(d) => (d.clone(), None),
    };
    let c = line_census(&d).with_context(|| inst.id.clone())?;
    let names = names(inst, d.len());
    Ok(LinesRow {
        instance: inst.id.clone(),
        n: d.len(),
        ell: c.ell,
        ell_star: c.ell_star,
        up: c.up,
        twins: twin_pairs(&d).len(),
        ell2: graph_parts.as_ref().map(|(_, c2)| c2.ell2),
        br: graph_parts.as_ref().map(|(br, _)| *br),
        widths: graph_parts.as_ref().map(|(_, c2)| c2.width_histogram()),
        lines: c.lines.iter().map(|l| named(&l.points, &names)).collect(),
        universal: c.universal_line().is_some(),
    })
}

impl LinesRow {
    pub fn to_json(&self) -> Value {
        json!({
            "instance": self.instance,
            "n": self.n,
            "ell": self.ell,
            "ell_star": self.ell_star,
            "ell2": self.ell2,
            "up": self.up,
            "br": self.br,
            "twins": self.twins,
            "width_histogram": self.widths,
            "lines": self.lines,
        })
    }

    pub const CSV_HEADER: &'static str = "instance,n,ell,ell_star,ell2,up,br,twins";

    pub fn to_csv(&self) -> String {
        let opt = |v: Option<usize>| v.map(|x| x.to_string()).unwrap_or_default();
        format!(
            "{},{},{},{},{},{},{},{}",
            self.instance,
            self.n,
            self.ell,
            self.ell_star,
            opt(self.ell2),
            self.up,
            opt(self.br),
            self.twins
        )
    }

    pub fn to_human(&self) -> String {
        let mut s = format!(
            "{}\n  n={} ell={} ell*={} up={} twins={}",
            self.instance, self.n, self.ell, self.ell_star, self.up, self.twins
        );
        if let (Some(ell2), Some(br)) = (self.ell2, self.br) {
            s.push_str(&format!(" ell2={ell2} br={br}"));
        }
        s.push('\n');
        if let Some(w) = &self.widths {
            let parts: Vec<String> = w.iter().map(|(k, v)| format!("{k}:{v}")).collect();
            s.push_str(&format!(
                "  distance-two line widths: {}\n",
                parts.join(" ")
            ));
        }
        s.push_str("  lines:\n");
        for l in &self.lines {
            s.push_str(&format!("    {{{}}}\n", l.join(",")));
        }
        let verdict = if self.ell >= self.n {
            "holds (ell >= n)"
        } else if self.universal {
            "holds (universal line)"
        } else {
            "FAILS (ell < n and no universal line)"
        };
        s.push_str(&format!("  chen_chvatal: {verdict}\n"));
        s
    }
}
