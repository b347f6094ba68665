//! The paired local-cut gadget `PLC(k, n)`.
//!
//! Group indices `i, j` are 1-based. Subsets `S ⊆ {1..L}` with
//! `L = ⌊log₂ n⌋` are bitmasks: bit `ℓ-1` set iff `ℓ ∈ S`.

use super::Graph;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PlcRole {
    Cut { i: usize, s: u32 },
    Pairing { i: usize, j: usize, s1: u32, s2: u32 },
}

#[derive(Debug, Clone)]
pub struct PlcGraph {
    pub base: Graph,
    pub k: usize,
    pub n: usize,
    /// `⌊log₂ n⌋`.
    pub l: usize,
    pub roles: Vec<PlcRole>,
}

pub fn log2_floor(n: usize) -> usize {
    assert!(n > 0);
    (usize::BITS - 1 - n.leading_zeros()) as usize
}

impl PlcGraph {
    pub fn subsets(&self) -> u32 {
        1u32 << self.l
    }

    pub fn cut_index(&self, i: usize, s: u32) -> usize {
        (i - 1) * self.subsets() as usize + s as usize
    }

    /// Rank of the ordered pair `(i, j)`, `i ≠ j`, in lexicographic order.
    pub fn pair_rank(&self, i: usize, j: usize) -> usize {
        (i - 1) * (self.k - 1) + (j - 1) - usize::from(j > i)
    }

    pub fn pairing_index(&self, i: usize, j: usize, s1: u32, s2: u32) -> usize {
        let m = self.subsets() as usize;
        self.k * m + self.pair_rank(i, j) * m * m + s1 as usize * m + s2 as usize
    }

    pub fn index_of(&self, role: PlcRole) -> usize {
        match role {
            PlcRole::Cut { i, s } => self.cut_index(i, s),
            PlcRole::Pairing { i, j, s1, s2 } => self.pairing_index(i, j, s1, s2),
        }
    }

    /// Clique groups: the `k` cut groups followed by the `k(k-1)` pairing
    /// groups, each as a list of vertex indices.
    pub fn groups(&self) -> Vec<Vec<usize>> {
        let m = self.subsets() as usize;
        let mut out: Vec<Vec<usize>> = (0..self.k)
            .map(|g| (g * m..(g + 1) * m).collect())
            .collect();
        let base = self.k * m;
        for p in 0..self.k * (self.k - 1) {
            out.push((base + p * m * m..base + (p + 1) * m * m).collect());
        }
        out
    }

    /// Vertex count predicted by the closed form `k(k-1)·4^L + k·2^L`.
    pub fn formula_vertex_count(k: usize, n: usize) -> usize {
        let l = log2_floor(n);
        k * (k - 1) * (1usize << (2 * l)) + k * (1usize << l)
    }
}

fn adjacent(a: PlcRole, b: PlcRole) -> bool {
    use PlcRole::*;
    match (a, b) {
        (Cut { i: i1, .. }, Cut { i: i2, .. }) => i1 == i2,
        (Pairing { i: a1, j: b1, .. }, Pairing { i: a2, j: b2, .. }) => a1 == a2 && b1 == b2,
        (Cut { i, s }, Pairing { i: j1, j: j2, s1, s2 })
        | (Pairing { i: j1, j: j2, s1, s2 }, Cut { i, s }) => {
            (i == j1 && s != s1) || (i == j2 && s != s2)
        }
    }
}

pub fn generate_plc(k: usize, n: usize) -> Result<PlcGraph> {
    if k < 1 || n < 2 {
        return Err(Error::InvalidParameter(format!(
            "PLC needs k >= 1 and n >= 2, got k={k}, n={n}"
        )));
    }
    let l = log2_floor(n);
    if l > 8 {
        return Err(Error::InvalidParameter(format!("PLC with n={n} is too large")));
    }
    let m = 1u32 << l;
    let mut roles = Vec::new();
    for i in 1..=k {
        for s in 0..m {
            roles.push(PlcRole::Cut { i, s });
        }
    }
    for i in 1..=k {
        for j in (1..=k).filter(|&j| j != i) {
            for s1 in 0..m {
                for s2 in 0..m {
                    roles.push(PlcRole::Pairing { i, j, s1, s2 });
                }
            }
        }
    }
    let mut base = Graph::empty(roles.len());
    for a in 0..roles.len() {
        for b in a + 1..roles.len() {
            if adjacent(roles[a], roles[b]) {
                base.add_edge(a, b)?;
            }
        }
    }
    Ok(PlcGraph {
        base,
        k,
        n,
        l,
        roles,
    })
}
