//! JSON graph and weight files.
//!
//! A graph file is an object `{"vertex_count": 3, "edges": [[0,1],[1,2]],
//! "weights": [1.0, 2.5]}` with `weights` optional. A weights file is either a
//! bare array or an object with a `weights` array.

use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::spanning::EdgeWeights;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GraphFile {
    pub vertex_count: usize,
    pub edges: Vec<(usize, usize)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weights: Option<Vec<f64>>,
}

fn format_err(field: impl Into<String>, message: impl Into<String>) -> Error {
    Error::Format {
        field: field.into(),
        message: message.into(),
    }
}

fn parse_json(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| {
        format_err(
            format!("line {} column {}", e.line(), e.column()),
            e.to_string(),
        )
    })
}

fn as_index(v: &Value, field: &str) -> Result<usize> {
    v.as_u64()
        .map(|x| x as usize)
        .ok_or_else(|| format_err(field, format!("expected a nonnegative integer, found {v}")))
}

fn parse_weights_value(v: &Value, field: &str) -> Result<Vec<f64>> {
    let arr = v
        .as_array()
        .ok_or_else(|| format_err(field, "expected an array of positive numbers"))?;
    arr.iter()
        .enumerate()
        .map(|(k, x)| {
            let f = format!("{field}[{k}]");
            let w = x
                .as_f64()
                .ok_or_else(|| format_err(&f, format!("expected a number, found {x}")))?;
            if !(w > 0.0 && w.is_finite()) {
                return Err(format_err(&f, format!("weight must be positive, found {w}")));
            }
            Ok(w)
        })
        .collect()
}

/// Parses a graph file, reporting problems by field path
/// (`edges[3]`, `weights`, ...).
pub fn parse_graph(text: &str) -> Result<(Graph, Option<EdgeWeights>)> {
    let root = parse_json(text)?;
    let obj = root
        .as_object()
        .ok_or_else(|| format_err("<root>", "expected an object"))?;
    for key in obj.keys() {
        if !matches!(key.as_str(), "vertex_count" | "edges" | "weights") {
            return Err(format_err(key.clone(), "unknown field"));
        }
    }
    let vc = obj
        .get("vertex_count")
        .ok_or_else(|| format_err("vertex_count", "missing"))?;
    let vertex_count = as_index(vc, "vertex_count")?;
    if vertex_count == 0 {
        return Err(format_err("vertex_count", "must be positive"));
    }
    let edges_v = obj
        .get("edges")
        .ok_or_else(|| format_err("edges", "missing"))?
        .as_array()
        .ok_or_else(|| format_err("edges", "expected an array of [u, v] pairs"))?;
    let mut edges = Vec::with_capacity(edges_v.len());
    for (k, e) in edges_v.iter().enumerate() {
        let field = format!("edges[{k}]");
        let pair = e
            .as_array()
            .filter(|p| p.len() == 2)
            .ok_or_else(|| format_err(&field, "expected a 2-element array"))?;
        let a = as_index(&pair[0], &format!("{field}[0]"))?;
        let b = as_index(&pair[1], &format!("{field}[1]"))?;
        if a == b {
            return Err(format_err(&field, format!("self-loop at vertex {a}")));
        }
        for (side, x) in [(0, a), (1, b)] {
            if x >= vertex_count {
                return Err(format_err(
                    format!("{field}[{side}]"),
                    format!("endpoint {x} out of range (vertex_count {vertex_count})"),
                ));
            }
        }
        edges.push((a, b));
    }
    let weights = match obj.get("weights") {
        None | Some(Value::Null) => None,
        Some(v) => {
            let w = parse_weights_value(v, "weights")?;
            if w.len() != edges.len() {
                return Err(format_err(
                    "weights",
                    format!("{} weights for {} edges", w.len(), edges.len()),
                ));
            }
            Some(EdgeWeights::new(w)?)
        }
    };
    Ok((Graph::new(vertex_count, edges)?, weights))
}

/// Parses a weights file for `g`: a bare array or `{"weights": [...]}`.
pub fn parse_weights(text: &str, g: &Graph) -> Result<EdgeWeights> {
    let root = parse_json(text)?;
    let w = match &root {
        Value::Array(_) => parse_weights_value(&root, "weights")?,
        Value::Object(obj) => parse_weights_value(
            obj.get("weights")
                .ok_or_else(|| format_err("weights", "missing"))?,
            "weights",
        )?,
        _ => return Err(format_err("<root>", "expected an array or an object")),
    };
    if w.len() != g.edge_count() {
        return Err(format_err(
            "weights",
            format!("{} weights for {} edges", w.len(), g.edge_count()),
        ));
    }
    EdgeWeights::new(w)
}

pub fn read_graph(path: &Path) -> Result<(Graph, Option<EdgeWeights>)> {
    parse_graph(&std::fs::read_to_string(path)?)
}

pub fn graph_to_json(g: &Graph, weights: Option<&EdgeWeights>) -> String {
    let file = GraphFile {
        vertex_count: g.vertex_count(),
        edges: g.edges().to_vec(),
        weights: weights.map(|w| w.as_slice().to_vec()),
    };
    serde_json::to_string(&file).expect("graph file serializes")
}

/// Writes `contents` to a temporary file beside `path` and renames it into
/// place, so an interrupted write never leaves a partial file.
pub fn write_atomic(path: &Path, contents: &[u8]) -> Result<()> {
    use std::io::Write;
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(contents)?;
    tmp.flush()?;
    tmp.persist(path).map_err(|e| Error::Io(e.error))?;
    Ok(())
}
