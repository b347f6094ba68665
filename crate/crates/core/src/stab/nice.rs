//! Nice tree decompositions: leaf, introduce, forget and binary join nodes
//! under an empty-bag root.

use crate::decomposition::TreeDecomposition;
use crate::error::Result;
use crate::graph::Graph;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NiceKind {
    Leaf,
    Introduce(usize),
    Forget(usize),
    Join,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NiceNode {
    pub kind: NiceKind,
    /// Sorted.
    pub bag: Vec<usize>,
    pub children: Vec<usize>,
}

/// Nodes are stored children-first; the last node is the root.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NiceDecomposition {
    pub nodes: Vec<NiceNode>,
}

impl NiceDecomposition {
    pub fn root(&self) -> usize {
        self.nodes.len() - 1
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn width(&self) -> usize {
        self.nodes
            .iter()
            .map(|n| n.bag.len())
            .max()
            .unwrap_or(0)
            .saturating_sub(1)
    }

    /// Validates `td` against `g` and refines it; the width is unchanged.
    pub fn from_tree_decomposition(g: &Graph, td: &TreeDecomposition) -> Result<Self> {
        td.validate(g)?;
        let children = td.children();
        let mut nice = NiceDecomposition { nodes: Vec::new() };
        let top = nice.build(td, &children, td.root());
        let mut cur = top;
        for v in td.bags[td.root()].clone() {
            cur = nice.push_forget(cur, v);
        }
        debug_assert!(nice.nodes[cur].bag.is_empty());
        Ok(nice)
    }

    fn push(&mut self, kind: NiceKind, bag: Vec<usize>, children: Vec<usize>) -> usize {
        self.nodes.push(NiceNode { kind, bag, children });
        self.nodes.len() - 1
    }

    fn push_forget(&mut self, child: usize, v: usize) -> usize {
        let bag = self.nodes[child].bag.iter().copied().filter(|&u| u != v).collect();
        self.push(NiceKind::Forget(v), bag, vec![child])
    }

    fn push_introduce(&mut self, child: usize, v: usize) -> usize {
        let mut bag = self.nodes[child].bag.clone();
        let pos = bag.binary_search(&v).unwrap_err();
        bag.insert(pos, v);
        self.push(NiceKind::Introduce(v), bag, vec![child])
    }

    /// Returns a node whose bag equals the bag of `x`.
    fn build(&mut self, td: &TreeDecomposition, children: &[Vec<usize>], x: usize) -> usize {
        let bag = &td.bags[x];
        let mut heads = Vec::new();
        if children[x].is_empty() {
            let mut cur = self.push(NiceKind::Leaf, Vec::new(), Vec::new());
            for &v in bag {
                cur = self.push_introduce(cur, v);
            }
            heads.push(cur);
        }
        for &c in &children[x] {
            let mut cur = self.build(td, children, c);
            for &v in &td.bags[c] {
                if !bag.contains(&v) {
                    cur = self.push_forget(cur, v);
                }
            }
            for &v in bag {
                if !td.bags[c].contains(&v) {
                    cur = self.push_introduce(cur, v);
                }
            }
            heads.push(cur);
        }
        let mut cur = heads[0];
        for &h in &heads[1..] {
            cur = self.push(NiceKind::Join, bag.clone(), vec![cur, h]);
        }
        cur
    }
}
