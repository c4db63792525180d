//! JSON and DOT serialization. Costs are written as exact `num/den`
//! strings and vertex sets as label arrays in vertex-id order.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::time::Duration;

use serde::{Deserialize, Serialize};

use crate::clustering::{Clustering, Hierarchy};
use crate::cost::Cost;
use crate::error::{Error, Result};
use crate::graph::{Graph, GraphBuilder, VertexSet};
use crate::queries::{ClusterKind, SCClustering};
use crate::tree::{CommunityCutTree, TreeEdge};

pub const FORMAT_VERSION: u32 = 1;

/// Work counters attached to every command's output.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub flows: usize,
    pub cutc_calls: usize,
    pub levels: usize,
    /// Seconds; excluded from the determinism contract.
    pub wall_time: f64,
}

impl RunReport {
    pub fn with_time(mut self, elapsed: Duration) -> Self {
        self.wall_time = elapsed.as_secs_f64();
        self
    }
}

#[derive(Serialize, Deserialize)]
struct GraphJson {
    labels: Vec<String>,
    edges: Vec<EdgeJson>,
}

#[derive(Serialize, Deserialize)]
struct EdgeJson {
    u: String,
    v: String,
    cost: Cost,
}

#[derive(Serialize, Deserialize)]
struct TreeEdgeJson {
    tail: String,
    head: String,
    cost: Cost,
    sc: Vec<String>,
    opposite: Vec<String>,
    opposite_valid: bool,
}

#[derive(Serialize, Deserialize)]
struct TreeJson {
    format_version: u32,
    graph: GraphJson,
    roots: Vec<String>,
    edges: Vec<TreeEdgeJson>,
    flow_count: usize,
    invalidated_opposites: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    report: Option<RunReport>,
}

fn graph_json(g: &Graph) -> GraphJson {
    GraphJson {
        labels: g.labels().to_vec(),
        edges: g
            .edges()
            .iter()
            .map(|e| EdgeJson {
                u: g.label(e.u).to_string(),
                v: g.label(e.v).to_string(),
                cost: e.cost.clone(),
            })
            .collect(),
    }
}

fn graph_from_json(json: &GraphJson) -> Result<Graph> {
    let mut b = GraphBuilder::new();
    for (i, label) in json.labels.iter().enumerate() {
        if b.vertex(label) != i {
            return Err(Error::Validation(format!("duplicate vertex label {label:?}")));
        }
    }
    let labels: HashMap<&str, usize> = json.labels.iter().enumerate().map(|(i, l)| (l.as_str(), i)).collect();
    for e in &json.edges {
        let u = labels.get(e.u.as_str()).copied();
        let v = labels.get(e.v.as_str()).copied();
        let (Some(u), Some(v)) = (u, v) else {
            return Err(Error::Validation(format!("edge {} - {} has an unknown endpoint", e.u, e.v)));
        };
        b.edge(u, v, e.cost.clone())?;
    }
    Ok(b.build())
}

fn known(g: &Graph, label: &str) -> Result<usize> {
    g.vertex(label)
        .ok_or_else(|| Error::Validation(format!("unknown vertex label {label:?}")))
}

fn json_error(e: serde_json::Error) -> Error {
    Error::Parse {
        line: e.line(),
        message: e.to_string(),
    }
}

fn to_pretty<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

fn check_version(v: u32) -> Result<()> {
    if v != FORMAT_VERSION {
        return Err(Error::Validation(format!("unsupported format_version {v}")));
    }
    Ok(())
}

pub fn tree_to_json(tree: &CommunityCutTree, report: Option<&RunReport>) -> String {
    let g = tree.graph();
    let json = TreeJson {
        format_version: FORMAT_VERSION,
        graph: graph_json(g),
        roots: tree.roots().iter().map(|&r| g.label(r).to_string()).collect(),
        edges: tree
            .edges()
            .iter()
            .map(|e| TreeEdgeJson {
                tail: g.label(e.tail).to_string(),
                head: g.label(e.head).to_string(),
                cost: e.cost.clone(),
                sc: g.labels_of(&e.sc),
                opposite: g.labels_of(&e.opposite),
                opposite_valid: e.opposite_valid,
            })
            .collect(),
        flow_count: tree.flow_count(),
        invalidated_opposites: tree.invalidated_opposites(),
        report: report.cloned(),
    };
    to_pretty(&json)
}

/// Reads a tree written by [`tree_to_json`], re-checking its structure.
pub fn tree_from_json(text: &str) -> Result<CommunityCutTree> {
    let json: TreeJson = serde_json::from_str(text).map_err(json_error)?;
    check_version(json.format_version)?;
    let g = graph_from_json(&json.graph)?;
    let mut edges = Vec::with_capacity(json.edges.len());
    for e in &json.edges {
        edges.push(TreeEdge {
            tail: known(&g, &e.tail)?,
            head: known(&g, &e.head)?,
            cost: e.cost.clone(),
            sc: g.set_of(&e.sc)?,
            opposite: g.set_of(&e.opposite)?,
            opposite_valid: e.opposite_valid,
        });
    }
    CommunityCutTree::assemble(g, edges, json.flow_count, json.invalidated_opposites)
}

/// Tells a tree document from a graph file.
pub fn looks_like_tree_json(text: &str) -> bool {
    text.trim_start().starts_with('{')
}

fn quote(label: &str) -> String {
    format!("\"{}\"", label.replace('\\', "\\\\").replace('"', "\\\""))
}

pub fn tree_to_dot(tree: &CommunityCutTree) -> String {
    let g = tree.graph();
    let mut out = String::from("digraph sc_tree {\n  node [shape=circle];\n");
    for v in 0..g.n() {
        let _ = writeln!(out, "  {};", quote(g.label(v)));
    }
    for e in tree.edges() {
        let style = if e.opposite_valid { "" } else { ", style=dashed" };
        let _ = writeln!(
            out,
            "  {} -> {} [label={}{style}];",
            quote(g.label(e.tail)),
            quote(g.label(e.head)),
            quote(&e.cost.to_string())
        );
    }
    out.push_str("}\n");
    out
}

#[derive(Serialize)]
struct LevelJson {
    alpha: Cost,
    clusters: Vec<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    modularity: Option<Cost>,
}

#[derive(Serialize)]
struct HierarchyJson<'a> {
    format_version: u32,
    mode: &'a str,
    h: usize,
    levels: Vec<LevelJson>,
    breakpoints: Vec<Cost>,
    cutc_calls: usize,
    flows: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    best_modularity_level: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    report: Option<RunReport>,
}

/// Hierarchy document. `modularity` carries one score per level when the
/// best level was requested.
pub fn hierarchy_to_json(
    g: &Graph,
    hierarchy: &Hierarchy,
    mode: &str,
    modularity: Option<(&[Cost], usize)>,
    report: Option<&RunReport>,
) -> String {
    let json = HierarchyJson {
        format_version: FORMAT_VERSION,
        mode,
        h: hierarchy.h(),
        levels: hierarchy
            .levels
            .iter()
            .enumerate()
            .map(|(i, l)| LevelJson {
                alpha: l.alpha.clone(),
                clusters: l.clustering.labelled(g),
                modularity: modularity.map(|m| m.0[i].clone()),
            })
            .collect(),
        breakpoints: hierarchy.breakpoints.clone(),
        cutc_calls: hierarchy.cutc_calls,
        flows: hierarchy.flows,
        best_modularity_level: modularity.map(|m| m.1),
        report: report.cloned(),
    };
    to_pretty(&json)
}

#[derive(Serialize)]
struct ClusterJson {
    members: Vec<String>,
    representative: String,
    boundary: Cost,
    #[serde(skip_serializing_if = "Option::is_none")]
    kind: Option<&'static str>,
}

#[derive(Serialize)]
struct ClusteringJson {
    format_version: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    alpha: Option<Cost>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    anchors: Vec<Vec<String>>,
    clusters: Vec<ClusterJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    report: Option<RunReport>,
}

fn kind_name(kind: ClusterKind) -> &'static str {
    match kind {
        ClusterKind::Given => "given_sc",
        ClusterKind::Derived => "derived_sc",
        ClusterKind::OverlayIntersection => "overlay_intersection",
    }
}

fn clustering_json(
    g: &Graph,
    c: &Clustering,
    kinds: Option<&[ClusterKind]>,
    anchors: &[VertexSet],
    report: Option<&RunReport>,
) -> String {
    let json = ClusteringJson {
        format_version: FORMAT_VERSION,
        alpha: c.alpha().cloned(),
        anchors: anchors.iter().map(|a| g.labels_of(a)).collect(),
        clusters: c
            .clusters()
            .iter()
            .enumerate()
            .map(|(i, cl)| ClusterJson {
                members: g.labels_of(&cl.members),
                representative: g.label(cl.representative).to_string(),
                boundary: cl.boundary.clone(),
                kind: kinds.map(|k| kind_name(k[i])),
            })
            .collect(),
        report: report.cloned(),
    };
    to_pretty(&json)
}

pub fn clustering_to_json(g: &Graph, c: &Clustering, report: Option<&RunReport>) -> String {
    clustering_json(g, c, None, &[], report)
}

pub fn sc_clustering_to_json(g: &Graph, c: &SCClustering, report: Option<&RunReport>) -> String {
    clustering_json(g, &c.clustering, Some(&c.kinds), &c.anchors, report)
}

/// Undirected graph with vertices filled by cluster; edges between clusters
/// are drawn dashed.
pub fn clustering_to_dot(g: &Graph, c: &Clustering) -> String {
    let mut out = String::from("graph clustering {\n  node [style=filled, colorscheme=set312];\n");
    for v in 0..g.n() {
        let _ = writeln!(
            out,
            "  {} [fillcolor={}];",
            quote(g.label(v)),
            c.cluster_of(v) % 12 + 1
        );
    }
    for e in g.edges() {
        let style = if c.cluster_of(e.u) == c.cluster_of(e.v) {
            ""
        } else {
            ", style=dashed"
        };
        let _ = writeln!(
            out,
            "  {} -- {} [label={}{style}];",
            quote(g.label(e.u)),
            quote(g.label(e.v)),
            quote(&e.cost.to_string())
        );
    }
    out.push_str("}\n");
    out
}
