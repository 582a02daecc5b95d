use std::fmt::Write as _;
use std::path::Path;
use std::str::FromStr;

use super::lon::LonGraph;
use super::plateau::PlateauGraph;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphFormat {
    GraphMl,
    Dot,
}

impl GraphFormat {
    pub fn extension(self) -> &'static str {
        match self {
            GraphFormat::GraphMl => "graphml",
            GraphFormat::Dot => "dot",
        }
    }
}

impl FromStr for GraphFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "graphml" => Ok(GraphFormat::GraphMl),
            "dot" => Ok(GraphFormat::Dot),
            _ => Err(Error::invalid(format!("unknown graph format `{s}` (graphml|dot)"))),
        }
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

fn plateau_attrs(p: Option<&PlateauGraph>, v: usize) -> (i64, bool) {
    p.map_or((-1, false), |p| {
        let id = p.plateau_of[v];
        (id as i64, p.plateaus[id].sink)
    })
}

/// GraphML with node keys `fitness`, `size` (weighted in-degree), `hits`, `plateau`,
/// `sink` and edge key `weight`. Plateau fields are -1/false without a plateau graph.
pub fn to_graphml(g: &LonGraph, plateaus: Option<&PlateauGraph>) -> String {
    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    out.push_str("<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\">\n");
    for (id, target, ty) in [
        ("fitness", "node", "double"),
        ("size", "node", "long"),
        ("hits", "node", "long"),
        ("plateau", "node", "long"),
        ("sink", "node", "boolean"),
        ("label", "node", "string"),
        ("weight", "edge", "long"),
    ] {
        let _ = writeln!(
            out,
            "  <key id=\"{id}\" for=\"{target}\" attr.name=\"{id}\" attr.type=\"{ty}\"/>"
        );
    }
    out.push_str("  <graph id=\"lon\" edgedefault=\"directed\">\n");
    for n in &g.nodes {
        let (pid, sink) = plateau_attrs(plateaus, n.id);
        let _ = writeln!(out, "    <node id=\"n{}\">", n.id);
        let _ = writeln!(out, "      <data key=\"fitness\">{}</data>", n.fitness);
        let _ = writeln!(out, "      <data key=\"size\">{}</data>", n.in_weight);
        let _ = writeln!(out, "      <data key=\"hits\">{}</data>", n.hits);
        let _ = writeln!(out, "      <data key=\"plateau\">{pid}</data>");
        let _ = writeln!(out, "      <data key=\"sink\">{sink}</data>");
        let _ = writeln!(out, "      <data key=\"label\">{}</data>", escape(&n.key));
        out.push_str("    </node>\n");
    }
    for (i, e) in g.edges.iter().enumerate() {
        let _ = writeln!(
            out,
            "    <edge id=\"e{i}\" source=\"n{}\" target=\"n{}\"><data key=\"weight\">{}</data></edge>",
            e.source, e.target, e.weight
        );
    }
    out.push_str("  </graph>\n</graphml>\n");
    out
}

pub fn to_dot(g: &LonGraph, plateaus: Option<&PlateauGraph>) -> String {
    let mut out = String::from("digraph lon {\n");
    for n in &g.nodes {
        let (pid, sink) = plateau_attrs(plateaus, n.id);
        let _ = writeln!(
            out,
            "  n{} [label=\"{}\", fitness={}, size={}, hits={}, plateau={pid}, sink={sink}];",
            n.id,
            n.key.replace('"', "\\\""),
            n.fitness,
            n.in_weight,
            n.hits
        );
    }
    for e in &g.edges {
        let _ = writeln!(out, "  n{} -> n{} [weight={}];", e.source, e.target, e.weight);
    }
    out.push_str("}\n");
    out
}

pub fn export_graph(
    g: &LonGraph,
    plateaus: Option<&PlateauGraph>,
    format: GraphFormat,
    path: impl AsRef<Path>,
) -> Result<()> {
    let text = match format {
        GraphFormat::GraphMl => to_graphml(g, plateaus),
        GraphFormat::Dot => to_dot(g, plateaus),
    };
    let path = path.as_ref();
    std::fs::write(path, text).map_err(|e| Error::io(path, e))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_graph_documents() {
        let g = LonGraph::default();
        let xml = to_graphml(&g, None);
        assert!(xml.contains("<graph id=\"lon\" edgedefault=\"directed\">"));
        assert!(!xml.contains("<node"));
        assert_eq!(to_dot(&g, None), "digraph lon {\n}\n");
    }

    #[test]
    fn unwritable_path() {
        let g = LonGraph::default();
        assert!(export_graph(&g, None, GraphFormat::Dot, "/nonexistent-dir/x.dot").is_err());
    }
}
