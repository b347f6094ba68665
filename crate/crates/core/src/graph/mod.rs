//! Simple undirected graphs, labels, text I/O and generators.

mod cuts;
mod generate;
mod io;
mod plc;

pub use cuts::{cut_edge_pairs, enumerate_cut_vectors};
pub use generate::{generate_family, Family};
pub use io::{parse_edge_list, serialize_edge_list};
pub use plc::{generate_plc, log2_floor, PlcGraph, PlcRole};

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};

/// A finite simple undirected graph on vertices `0..n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    num_edges: usize,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); n],
            num_edges: 0,
        }
    }

    /// Builds a graph, rejecting self-loops, duplicates and out-of-range endpoints.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::empty(n);
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        let n = self.adj.len();
        if u >= n || v >= n {
            return Err(Error::InvalidParameter(format!(
                "edge {u}-{v} has an endpoint outside 0..{n}"
            )));
        }
        if u == v {
            return Err(Error::InvalidParameter(format!("self-loop at {u}")));
        }
        match self.adj[u].binary_search(&v) {
            Ok(_) => Err(Error::InvalidParameter(format!("duplicate edge {u}-{v}"))),
            Err(pos) => {
                self.adj[u].insert(pos, v);
                let pos = self.adj[v].binary_search(&u).unwrap_err();
                self.adj[v].insert(pos, u);
                self.num_edges += 1;
                Ok(())
            }
        }
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn num_edges(&self) -> usize {
        self.num_edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n() && self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, nb)| nb.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    pub fn is_independent(&self, set: &[usize]) -> bool {
        set.iter()
            .enumerate()
            .all(|(i, &u)| set[i + 1..].iter().all(|&v| u != v && !self.has_edge(u, v)))
    }

    /// Subgraph induced on `vertices` (sorted ascending); vertex `i` of the
    /// result is `vertices[i]` of `self`.
    pub fn induced(&self, vertices: &[usize]) -> Graph {
        let index: BTreeMap<usize, usize> =
            vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut g = Graph::empty(vertices.len());
        for (i, &v) in vertices.iter().enumerate() {
            for &w in self.neighbors(v) {
                if let Some(&j) = index.get(&w) {
                    if j > i {
                        g.add_edge(i, j).expect("induced subgraph of a simple graph");
                    }
                }
            }
        }
        g
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n()];
        let mut out = Vec::new();
        for s in 0..self.n() {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut stack = vec![s];
            while let Some(v) = stack.pop() {
                for &w in self.neighbors(v) {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        stack.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }
}

/// A graph with named vertex and edge labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledGraph {
    pub base: Graph,
    pub vertex_labels: BTreeMap<String, BTreeSet<usize>>,
    pub edge_labels: BTreeMap<String, BTreeSet<(usize, usize)>>,
}

impl LabeledGraph {
    pub fn new(base: Graph) -> Self {
        LabeledGraph {
            base,
            vertex_labels: BTreeMap::new(),
            edge_labels: BTreeMap::new(),
        }
    }

    pub fn add_vertex_label(&mut self, name: &str, v: usize) -> Result<()> {
        if v >= self.base.n() {
            return Err(Error::InvalidParameter(format!(
                "label {name} on missing vertex {v}"
            )));
        }
        self.vertex_labels
            .entry(name.to_string())
            .or_default()
            .insert(v);
        Ok(())
    }

    pub fn add_edge_label(&mut self, name: &str, u: usize, v: usize) -> Result<()> {
        if !self.base.has_edge(u, v) {
            return Err(Error::InvalidParameter(format!(
                "label {name} on missing edge {u}-{v}"
            )));
        }
        self.edge_labels
            .entry(name.to_string())
            .or_default()
            .insert((u.min(v), u.max(v)));
        Ok(())
    }

    pub fn has_vertex_label(&self, name: &str, v: usize) -> bool {
        self.vertex_labels.get(name).is_some_and(|s| s.contains(&v))
    }

    pub fn has_edge_label(&self, name: &str, u: usize, v: usize) -> bool {
        self.edge_labels
            .get(name)
            .is_some_and(|s| s.contains(&(u.min(v), u.max(v))))
    }

    /// Induced labeled subgraph; labels are restricted and renumbered.
    pub fn induced(&self, vertices: &[usize]) -> LabeledGraph {
        let index: BTreeMap<usize, usize> =
            vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut out = LabeledGraph::new(self.base.induced(vertices));
        for (name, set) in &self.vertex_labels {
            let s: BTreeSet<usize> = set.iter().filter_map(|v| index.get(v).copied()).collect();
            out.vertex_labels.insert(name.clone(), s);
        }
        for (name, set) in &self.edge_labels {
            let s: BTreeSet<(usize, usize)> = set
                .iter()
                .filter_map(|(u, v)| {
                    let (a, b) = (*index.get(u)?, *index.get(v)?);
                    Some((a.min(b), a.max(b)))
                })
                .collect();
            out.edge_labels.insert(name.clone(), s);
        }
        out
    }
}

impl From<Graph> for LabeledGraph {
    fn from(g: Graph) -> Self {
        LabeledGraph::new(g)
    }
}
