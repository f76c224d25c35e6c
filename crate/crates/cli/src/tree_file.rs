//! Versioned JSON tree files.
//!
//! `{"format": 1, "n": 5, "edges": [...]}` is a tree of the size-`n` lattice
//! (edges index the modified grid `(n-1, n-1)`), `"grid": [m, n]` a tree of
//! the modified grid `(m, n)` and `"graph": {...}` a tree of an explicit
//! graph. Edge arrays are sorted.

use fairpeano::io::GraphFile;
use fairpeano::{Graph, ModifiedGrid, SpanningTree, SquareLattice};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::CliError;

pub const FORMAT_VERSION: u64 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TreeHost {
    Lattice(usize),
    Grid(usize, usize),
    Graph(GraphFile),
}

impl TreeHost {
    pub fn graph(&self) -> Result<Graph, CliError> {
        Ok(match self {
            TreeHost::Lattice(n) => SquareLattice::new(*n)?.grid().graph().clone(),
            TreeHost::Grid(m, n) => ModifiedGrid::new(*m, *n)?.graph().clone(),
            TreeHost::Graph(f) => Graph::new(f.vertex_count, f.edges.clone())?,
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TreeFile {
    pub host: TreeHost,
    pub tree: SpanningTree,
}

fn field(name: impl Into<String>, message: impl Into<String>) -> CliError {
    CliError::Format {
        field: name.into(),
        message: message.into(),
    }
}

fn index(v: &Value, name: &str) -> Result<usize, CliError> {
    v.as_u64()
        .map(|x| x as usize)
        .ok_or_else(|| field(name, format!("expected a nonnegative integer, found {v}")))
}

impl TreeFile {
    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct Out<'a> {
            format: u64,
            #[serde(skip_serializing_if = "Option::is_none")]
            n: Option<usize>,
            #[serde(skip_serializing_if = "Option::is_none")]
            grid: Option<[usize; 2]>,
            #[serde(skip_serializing_if = "Option::is_none")]
            graph: Option<&'a GraphFile>,
            edges: &'a [usize],
        }
        let mut out = Out {
            format: FORMAT_VERSION,
            n: None,
            grid: None,
            graph: None,
            edges: self.tree.edges(),
        };
        match &self.host {
            TreeHost::Lattice(n) => out.n = Some(*n),
            TreeHost::Grid(m, n) => out.grid = Some([*m, *n]),
            TreeHost::Graph(g) => out.graph = Some(g),
        }
        let mut s = serde_json::to_string(&out).expect("tree serializes");
        s.push('\n');
        s
    }

    /// Parses and validates a tree file, naming the offending field on
    /// failure.
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let root: Value = serde_json::from_str(text).map_err(|e| {
            field(format!("line {} column {}", e.line(), e.column()), e.to_string())
        })?;
        let obj = root
            .as_object()
            .ok_or_else(|| field("<root>", "expected an object"))?;
        for key in obj.keys() {
            if !matches!(key.as_str(), "format" | "n" | "grid" | "graph" | "edges") {
                return Err(field(key.clone(), "unknown field"));
            }
        }
        let version = index(obj.get("format").ok_or_else(|| field("format", "missing"))?, "format")?;
        if version as u64 != FORMAT_VERSION {
            return Err(field("format", format!("unsupported version {version}")));
        }
        let hosts = ["n", "grid", "graph"].iter().filter(|k| obj.contains_key(**k)).count();
        if hosts != 1 {
            return Err(field("n", "exactly one of `n`, `grid`, `graph` is required"));
        }
        let host = if let Some(v) = obj.get("n") {
            TreeHost::Lattice(index(v, "n")?)
        } else if let Some(v) = obj.get("grid") {
            let arr = v
                .as_array()
                .filter(|a| a.len() == 2)
                .ok_or_else(|| field("grid", "expected [m, n]"))?;
            TreeHost::Grid(index(&arr[0], "grid[0]")?, index(&arr[1], "grid[1]")?)
        } else {
            let text = obj["graph"].to_string();
            let (g, w) = fairpeano::io::parse_graph(&text).map_err(|e| match e {
                fairpeano::Error::Format { field: f, message } => field(format!("graph.{f}"), message),
                other => field("graph", other.to_string()),
            })?;
            TreeHost::Graph(GraphFile {
                vertex_count: g.vertex_count(),
                edges: g.edges().to_vec(),
                weights: w.map(|w| w.as_slice().to_vec()),
            })
        };
        let g = host.graph().map_err(|e| field(host_field(&host), e.to_string()))?;
        let edges = obj
            .get("edges")
            .ok_or_else(|| field("edges", "missing"))?
            .as_array()
            .ok_or_else(|| field("edges", "expected an array of edge indices"))?
            .iter()
            .enumerate()
            .map(|(k, v)| index(v, &format!("edges[{k}]")))
            .collect::<Result<Vec<_>, _>>()?;
        if let Some(k) = edges.windows(2).position(|w| w[0] >= w[1]) {
            return Err(field(format!("edges[{}]", k + 1), "edge indices must be strictly increasing"));
        }
        let tree = SpanningTree::new(&g, edges).map_err(|e| field("edges", e.to_string()))?;
        Ok(TreeFile { host, tree })
    }
}

fn host_field(host: &TreeHost) -> &'static str {
    match host {
        TreeHost::Lattice(_) => "n",
        TreeHost::Grid(..) => "grid",
        TreeHost::Graph(_) => "graph",
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lattice_tree() -> TreeFile {
        let lat = SquareLattice::new(3).unwrap();
        let t = fairpeano::spanning::sample_fair_tree(lat.grid(), &mut fairpeano::rng::stream(4));
        TreeFile {
            host: TreeHost::Lattice(3),
            tree: t,
        }
    }

    #[test]
    fn round_trip() {
        let f = lattice_tree();
        let text = f.to_json();
        assert!(text.starts_with("{\"format\":1,\"n\":3,\"edges\":["));
        assert_eq!(TreeFile::parse(&text).unwrap(), f);

        let g = TreeFile {
            host: TreeHost::Graph(GraphFile {
                vertex_count: 3,
                edges: vec![(0, 1), (1, 2), (2, 0)],
                weights: None,
            }),
            tree: SpanningTree::new(&Graph::triangle(), vec![0, 2]).unwrap(),
        };
        assert_eq!(TreeFile::parse(&g.to_json()).unwrap(), g);
    }

    fn err_field(text: &str) -> String {
        match TreeFile::parse(text) {
            Err(CliError::Format { field, .. }) => field,
            other => panic!("expected a format error, got {other:?}"),
        }
    }

    #[test]
    fn errors_name_fields() {
        assert_eq!(err_field(r#"{"format":2,"n":3,"edges":[]}"#), "format");
        assert_eq!(err_field(r#"{"format":1,"n":3,"edges":[0,"x"]}"#), "edges[1]");
        assert_eq!(err_field(r#"{"format":1,"n":3,"edges":[2,1]}"#), "edges[1]");
        assert_eq!(err_field(r#"{"format":1,"n":3,"edges":[0,1]}"#), "edges");
        assert_eq!(err_field(r#"{"format":1,"grid":[1],"edges":[]}"#), "grid");
        assert_eq!(err_field(r#"{"format":1,"n":3,"edges":[],"extra":0}"#), "extra");
        assert_eq!(
            err_field(r#"{"format":1,"graph":{"vertex_count":2,"edges":[[0,"a"]]},"edges":[0]}"#),
            "graph.edges[0][1]"
        );
        assert_eq!(err_field("{\"format\":1,"), "line 1 column 12");
    }
}
