use super::TreedepthForest;
use crate::error::{Error, Result};
use crate::graph::Graph;

/// A rooted tree decomposition. Bags are sorted vertex lists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeDecomposition {
    pub bags: Vec<Vec<usize>>,
    pub parent: Vec<Option<usize>>,
}

impl TreeDecomposition {
    pub fn num_nodes(&self) -> usize {
        self.bags.len()
    }

    pub fn root(&self) -> usize {
        self.parent
            .iter()
            .position(|p| p.is_none())
            .expect("tree has a root")
    }

    pub fn children(&self) -> Vec<Vec<usize>> {
        let mut ch = vec![Vec::new(); self.num_nodes()];
        for (x, p) in self.parent.iter().enumerate() {
            if let Some(p) = p {
                ch[*p].push(x);
            }
        }
        ch
    }

    /// Largest bag size minus one (0 when every bag is empty).
    pub fn width(&self) -> usize {
        self.bags
            .iter()
            .map(|b| b.len())
            .max()
            .unwrap_or(0)
            .saturating_sub(1)
    }

    /// Checks the tree shape and the three decomposition conditions: every
    /// vertex is covered, every edge lies in a bag, and the nodes holding
    /// any vertex form a connected subtree.
    pub fn validate(&self, g: &Graph) -> Result<()> {
        let t = self.num_nodes();
        if t == 0 || self.parent.len() != t {
            return Err(Error::InvalidDecomposition("empty or inconsistent tree".into()));
        }
        let roots = self.parent.iter().filter(|p| p.is_none()).count();
        if roots != 1 {
            return Err(Error::InvalidDecomposition(format!("{roots} roots")));
        }
        for x in 0..t {
            let mut v = x;
            let mut steps = 0;
            while let Some(p) = self.parent[v] {
                if p >= t || steps > t {
                    return Err(Error::InvalidDecomposition("parent map is not a tree".into()));
                }
                v = p;
                steps += 1;
            }
        }
        let mut holders = vec![Vec::new(); g.n()];
        for (x, bag) in self.bags.iter().enumerate() {
            if bag.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::InvalidDecomposition(format!("bag {x} is not sorted")));
            }
            for &v in bag {
                if v >= g.n() {
                    return Err(Error::InvalidDecomposition(format!("bag {x} holds unknown vertex {v}")));
                }
                holders[v].push(x);
            }
        }
        for (v, hs) in holders.iter().enumerate() {
            if hs.is_empty() {
                return Err(Error::InvalidDecomposition(format!("vertex {v} is in no bag")));
            }
            let tops = hs
                .iter()
                .filter(|&&x| match self.parent[x] {
                    Some(p) => self.bags[p].binary_search(&v).is_err(),
                    None => true,
                })
                .count();
            if tops != 1 {
                return Err(Error::InvalidDecomposition(format!(
                    "bags holding vertex {v} are disconnected"
                )));
            }
        }
        for (u, v) in g.edges() {
            let covered = holders[u]
                .iter()
                .any(|&x| self.bags[x].binary_search(&v).is_ok());
            if !covered {
                return Err(Error::InvalidDecomposition(format!("edge {u}-{v} is in no bag")));
            }
        }
        Ok(())
    }
}

/// One node per vertex whose bag is its root path; trees of the forest hang
/// under an extra empty-bag root when there is more than one.
pub fn td_to_tree_decomposition(g: &Graph, forest: &TreedepthForest) -> Result<TreeDecomposition> {
    forest.check_closure(g)?;
    let n = g.n();
    let mut bags: Vec<Vec<usize>> = (0..n)
        .map(|v| {
            let mut b = forest.root_path(v);
            b.sort_unstable();
            b
        })
        .collect();
    let roots: Vec<usize> = (0..n).filter(|&v| forest.parent[v].is_none()).collect();
    let mut parent = forest.parent.clone();
    if roots.len() != 1 {
        bags.push(Vec::new());
        for r in roots {
            parent[r] = Some(n);
        }
        parent.push(None);
    }
    let td = TreeDecomposition { bags, parent };
    debug_assert!(td.validate(g).is_ok());
    Ok(td)
}
