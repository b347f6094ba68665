//! Treedepth: exact branch-and-bound for small graphs, DFS upper bounds.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::graph::Graph;

pub const DEFAULT_EXACT_BUDGET: usize = 20;

/// A rooted forest on `V(G)`; certifies `td(G) <= height + 1` when every edge
/// of `G` joins an ancestor-descendant pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreedepthForest {
    pub parent: Vec<Option<usize>>,
}

impl TreedepthForest {
    pub fn n(&self) -> usize {
        self.parent.len()
    }

    /// Distance to the root of each vertex's tree. Panics on a cyclic parent map.
    pub fn depths(&self) -> Vec<usize> {
        let n = self.n();
        let mut depth: Vec<Option<usize>> = vec![None; n];
        for start in 0..n {
            let mut path = Vec::new();
            let mut v = start;
            let base = loop {
                if let Some(d) = depth[v] {
                    break d + 1;
                }
                path.push(v);
                assert!(path.len() <= n, "parent map has a cycle");
                match self.parent[v] {
                    Some(p) => v = p,
                    None => break 0,
                }
            };
            for (offset, &u) in path.iter().rev().enumerate() {
                depth[u] = Some(base + offset);
            }
        }
        depth.into_iter().map(|d| d.unwrap()).collect()
    }

    pub fn is_acyclic(&self) -> bool {
        let n = self.n();
        (0..n).all(|start| {
            let mut v = start;
            for _ in 0..=n {
                match self.parent[v] {
                    Some(p) if p < n => v = p,
                    Some(_) => return false,
                    None => return true,
                }
            }
            false
        })
    }

    /// Maximum root-to-vertex distance (0 for an empty forest).
    pub fn height(&self) -> usize {
        self.depths().into_iter().max().unwrap_or(0)
    }

    /// The certified treedepth bound, `height + 1` (0 for the empty graph).
    pub fn value(&self) -> usize {
        if self.n() == 0 {
            0
        } else {
            self.height() + 1
        }
    }

    pub fn is_ancestor(&self, anc: usize, mut v: usize) -> bool {
        loop {
            if v == anc {
                return true;
            }
            match self.parent[v] {
                Some(p) => v = p,
                None => return false,
            }
        }
    }

    /// Root path of `v`, starting at `v`.
    pub fn root_path(&self, mut v: usize) -> Vec<usize> {
        let mut out = vec![v];
        while let Some(p) = self.parent[v] {
            out.push(p);
            v = p;
        }
        out
    }

    /// Checks that every edge of `g` joins an ancestor-descendant pair.
    pub fn check_closure(&self, g: &Graph) -> Result<()> {
        if self.n() != g.n() {
            return Err(Error::DimensionMismatch(format!(
                "forest on {} vertices, graph on {}",
                self.n(),
                g.n()
            )));
        }
        if !self.is_acyclic() {
            return Err(Error::Malformed("treedepth forest has a cycle".into()));
        }
        let depth = self.depths();
        for (u, v) in g.edges() {
            let (lo, hi) = if depth[u] >= depth[v] { (u, v) } else { (v, u) };
            if !self.is_ancestor(hi, lo) {
                return Err(Error::ClosureViolated(u, v));
            }
        }
        Ok(())
    }
}

struct ExactSolver {
    adj: Vec<u64>,
    /// Connected masks with at least two vertices -> (treedepth, best root).
    memo: HashMap<u64, (u8, u8)>,
}

fn bits(mut mask: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let v = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(v)
        }
    })
}

impl ExactSolver {
    fn components(&self, mask: u64) -> Vec<u64> {
        let mut rest = mask;
        let mut out = Vec::new();
        while rest != 0 {
            let mut comp = rest & rest.wrapping_neg();
            let mut frontier = comp;
            while frontier != 0 {
                let mut next = 0;
                for v in bits(frontier) {
                    next |= self.adj[v];
                }
                next &= mask & !comp;
                comp |= next;
                frontier = next;
            }
            rest &= !comp;
            out.push(comp);
        }
        out
    }

    fn degeneracy(&self, mask: u64) -> u32 {
        let mut rest = mask;
        let mut best = 0;
        while rest != 0 {
            let (v, d) = bits(rest)
                .map(|v| (v, (self.adj[v] & rest).count_ones()))
                .min_by_key(|&(v, d)| (d, v))
                .unwrap();
            best = best.max(d);
            rest &= !(1u64 << v);
        }
        best
    }

    fn solve(&mut self, mask: u64) -> u32 {
        match mask.count_ones() {
            0 => return 0,
            1 => return 1,
            _ => {}
        }
        let comps = self.components(mask);
        if comps.len() > 1 {
            return comps.into_iter().map(|c| self.solve(c)).max().unwrap();
        }
        if let Some(&(td, _)) = self.memo.get(&mask) {
            return td as u32;
        }
        let lower = 1 + self.degeneracy(mask);
        let mut best = u32::MAX;
        let mut root = 0;
        for v in bits(mask) {
            let t = 1 + self.solve(mask & !(1u64 << v));
            if t < best {
                best = t;
                root = v;
                if best <= lower {
                    break;
                }
            }
        }
        self.memo.insert(mask, (best as u8, root as u8));
        best
    }

    fn build(&self, mask: u64, above: Option<usize>, parent: &mut [Option<usize>]) {
        for comp in self.components(mask) {
            if comp.count_ones() == 1 {
                parent[comp.trailing_zeros() as usize] = above;
                continue;
            }
            let (_, root) = self.memo[&comp];
            let root = root as usize;
            parent[root] = above;
            self.build(comp & !(1u64 << root), Some(root), parent);
        }
    }
}

/// Exact treedepth with an optimal elimination forest. Roots are tried in
/// increasing vertex order, so ties resolve to the smallest index.
pub fn treedepth_exact(g: &Graph, budget: usize) -> Result<(usize, TreedepthForest)> {
    let n = g.n();
    if n > budget.min(64) {
        return Err(Error::TooLargeForExact {
            n,
            budget: budget.min(64),
        });
    }
    let adj: Vec<u64> = (0..n)
        .map(|v| g.neighbors(v).iter().fold(0u64, |m, &w| m | (1u64 << w)))
        .collect();
    let mut solver = ExactSolver {
        adj,
        memo: HashMap::new(),
    };
    let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let td = solver.solve(full) as usize;
    let mut parent = vec![None; n];
    solver.build(full, None, &mut parent);
    let forest = TreedepthForest { parent };
    debug_assert_eq!(forest.value(), td);
    Ok((td, forest))
}

/// Depth-first search forest, one tree per component rooted at its smallest
/// vertex. An undirected DFS has no cross edges, so its closure contains `g`.
pub fn treedepth_upper(g: &Graph) -> TreedepthForest {
    let n = g.n();
    let mut parent = vec![None; n];
    let mut seen = vec![false; n];
    for s in 0..n {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut stack: Vec<(usize, usize)> = vec![(s, 0)];
        while let Some(top) = stack.last_mut() {
            let (v, next) = *top;
            if let Some(&w) = g.neighbors(v).get(next) {
                top.1 += 1;
                if !seen[w] {
                    seen[w] = true;
                    parent[w] = Some(v);
                    stack.push((w, 0));
                }
            } else {
                stack.pop();
            }
        }
    }
    TreedepthForest { parent }
}

/// Exact treedepth of each component when it fits the budget, DFS otherwise;
/// returns the merged forest. The result is deterministic given the graph.
pub fn treedepth_forest_per_component(g: &Graph, budget: usize) -> TreedepthForest {
    let mut parent = vec![None; g.n()];
    for comp in g.components() {
        let sub = g.induced(&comp);
        let forest = if comp.len() <= budget.min(64) {
            treedepth_exact(&sub, budget).expect("within budget").1
        } else {
            treedepth_upper(&sub)
        };
        for (i, p) in forest.parent.iter().enumerate() {
            parent[comp[i]] = p.map(|p| comp[p]);
        }
    }
    TreedepthForest { parent }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate_family, Family};

    /// Independent oracle: td(G) = 1 + min_v td(G - v) for connected G,
    /// max over components otherwise, without memoisation or bounds.
    fn td_brute(g: &Graph, verts: &[usize]) -> usize {
        if verts.is_empty() {
            return 0;
        }
        let sub = g.induced(verts);
        let comps = sub.components();
        if comps.len() > 1 {
            return comps
                .iter()
                .map(|c| td_brute(g, &c.iter().map(|&i| verts[i]).collect::<Vec<_>>()))
                .max()
                .unwrap();
        }
        (0..verts.len())
            .map(|skip| {
                let rest: Vec<usize> = verts
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| i != skip)
                    .map(|(_, &v)| v)
                    .collect();
                1 + td_brute(g, &rest)
            })
            .min()
            .unwrap()
    }

    #[test]
    fn closed_forms() {
        let k4 = generate_family(Family::Complete, &[4]).unwrap();
        assert_eq!(treedepth_exact(&k4, 20).unwrap().0, 4);
        let p4 = generate_family(Family::Path, &[4]).unwrap();
        assert_eq!(treedepth_exact(&p4, 20).unwrap().0, 3);
        assert_eq!(treedepth_exact(&Graph::empty(5), 20).unwrap().0, 1);
        assert_eq!(treedepth_exact(&Graph::empty(0), 20).unwrap().0, 0);
    }

    #[test]
    fn agrees_with_brute_force() {
        let graphs = [
            generate_family(Family::Cycle, &[6]).unwrap(),
            generate_family(Family::Grid, &[2, 3]).unwrap(),
            generate_family(Family::Star, &[4]).unwrap(),
            generate_family(Family::RandomPlanar, &[7, 1]).unwrap(),
            generate_family(Family::SubdividedClique, &[3]).unwrap(),
        ];
        for g in &graphs {
            let verts: Vec<usize> = (0..g.n()).collect();
            let (td, cert) = treedepth_exact(g, 20).unwrap();
            assert_eq!(td, td_brute(g, &verts));
            cert.check_closure(g).unwrap();
            assert_eq!(cert.value(), td);
        }
    }

    #[test]
    fn budget_enforced() {
        let g = Graph::empty(21);
        assert!(matches!(
            treedepth_exact(&g, 20),
            Err(Error::TooLargeForExact { .. })
        ));
    }

    #[test]
    fn dfs_upper_bounds() {
        let p4 = generate_family(Family::Path, &[4]).unwrap();
        let f = treedepth_upper(&p4);
        f.check_closure(&p4).unwrap();
        assert_eq!((f.height(), f.value()), (3, 4));
        let star = generate_family(Family::Star, &[5]).unwrap();
        assert_eq!(treedepth_upper(&star).value(), 2);
        let k3 = generate_family(Family::Complete, &[3]).unwrap();
        assert_eq!(treedepth_upper(&k3).value(), 3);
    }

    #[test]
    fn closure_violation_detected() {
        let p3 = generate_family(Family::Path, &[3]).unwrap();
        let bad = TreedepthForest {
            parent: vec![None, None, Some(1)],
        };
        assert!(matches!(bad.check_closure(&p3), Err(Error::ClosureViolated(0, 1))));
    }
}
