//! The projection from the maximum independent sets of `PLC(k, n)` onto the
//! cut polytope of `K_r`, `r = k·⌊log₂ n⌋`, and its exhaustive certification.
//!
//! Vertex `v^i_ℓ` of `K_r` (1-based `i ≤ k`, `ℓ ≤ L`) has index
//! `(i-1)·L + (ℓ-1)`; cut coordinates follow [`cut_edge_pairs`].

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{cut_edge_pairs, enumerate_cut_vectors, generate_plc, PlcGraph, PlcRole};
use crate::polytope::{vrep_to_ef, AffineMap, VRep};
use crate::rational::Rational;

/// Enumeration budget in search-tree nodes.
pub const PLC_ENUM_CAP: usize = 50_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PlcProjection {
    pub k: usize,
    pub n: usize,
    pub l: usize,
    pub r: usize,
    /// Number of PLC coordinates.
    pub s: usize,
    /// `(i1, ℓ1, i2, ℓ2)` per cut coordinate, 1-based.
    pub labels: Vec<(usize, usize, usize, usize)>,
    /// Sorted PLC coordinates with coefficient 1 in each cut coordinate.
    pub support: Vec<Vec<usize>>,
}

impl PlcProjection {
    pub fn apply(&self, set: &[usize]) -> Vec<u32> {
        let members: BTreeSet<usize> = set.iter().copied().collect();
        self.support
            .iter()
            .map(|row| row.iter().filter(|c| members.contains(c)).count() as u32)
            .collect()
    }

    pub fn to_affine_map(&self) -> AffineMap {
        let mut map = AffineMap::zero(self.labels.len());
        for (t, row) in self.support.iter().enumerate() {
            for &c in row {
                map.matrix[t].insert(c, Rational::one());
            }
        }
        map
    }
}

fn has(s: u32, l: usize) -> bool {
    s >> (l - 1) & 1 == 1
}

pub fn plc_projection(k: usize, n: usize) -> Result<PlcProjection> {
    let plc = generate_plc(k, n)?;
    Ok(projection_for(&plc))
}

fn projection_for(plc: &PlcGraph) -> PlcProjection {
    let (k, l) = (plc.k, plc.l);
    let r = k * l;
    let m = plc.subsets();
    let mut labels = Vec::new();
    let mut support = Vec::new();
    for (a, b) in cut_edge_pairs(r) {
        let (i1, l1) = (a / l + 1, a % l + 1);
        let (i2, l2) = (b / l + 1, b % l + 1);
        let mut row = Vec::new();
        if i1 == i2 {
            for s in 0..m {
                if has(s, l1) != has(s, l2) {
                    row.push(plc.cut_index(i1, s));
                }
            }
        } else {
            for s1 in 0..m {
                for s2 in 0..m {
                    if has(s1, l1) != has(s2, l2) {
                        row.push(plc.pairing_index(i1, i2, s1, s2));
                    }
                }
            }
        }
        row.sort_unstable();
        labels.push((i1, l1, i2, l2));
        support.push(row);
    }
    PlcProjection {
        k,
        n: plc.n,
        l,
        r,
        s: plc.base.n(),
        labels,
        support,
    }
}

/// All independent sets of maximum size, choosing at most one vertex per
/// clique group. Returns the maximum size and the sets attaining it.
fn maximum_independent_sets(plc: &PlcGraph) -> Result<(usize, Vec<Vec<usize>>)> {
    struct Search<'a> {
        plc: &'a PlcGraph,
        groups: Vec<Vec<usize>>,
        best: usize,
        found: Vec<Vec<usize>>,
        nodes: usize,
    }
    impl Search<'_> {
        fn rec(&mut self, g: usize, cur: &mut Vec<usize>) -> Result<()> {
            self.nodes += 1;
            if self.nodes > PLC_ENUM_CAP {
                return Err(Error::CapExceeded(format!(
                    "PLC enumeration exceeded {PLC_ENUM_CAP} nodes"
                )));
            }
            if cur.len() + (self.groups.len() - g) < self.best {
                return Ok(());
            }
            if g == self.groups.len() {
                if cur.len() > self.best {
                    self.best = cur.len();
                    self.found.clear();
                }
                let mut set = cur.clone();
                set.sort_unstable();
                self.found.push(set);
                return Ok(());
            }
            for idx in 0..self.groups[g].len() {
                let v = self.groups[g][idx];
                if cur.iter().all(|&u| !self.plc.base.has_edge(u, v)) {
                    cur.push(v);
                    self.rec(g + 1, cur)?;
                    cur.pop();
                }
            }
            self.rec(g + 1, cur)
        }
    }
    let mut search = Search {
        plc,
        groups: plc.groups(),
        best: 0,
        found: Vec::new(),
        nodes: 0,
    };
    search.rec(0, &mut Vec::new())?;
    let mut found = search.found;
    found.sort();
    Ok((search.best, found))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PlcMaxReport {
    pub k: usize,
    pub n: usize,
    pub vertices: usize,
    pub formula_vertices: usize,
    pub max_size: usize,
    pub expected_max: usize,
    pub num_max_sets: usize,
    /// Every maximum set has exactly one cut vertex per `i` and one pairing
    /// vertex per ordered pair `(i, j)`.
    pub structure_ok: bool,
    pub passed: bool,
}

pub fn verify_plc_max_is(k: usize, n: usize) -> Result<PlcMaxReport> {
    let plc = generate_plc(k, n)?;
    let (max_size, sets) = maximum_independent_sets(&plc)?;
    let structure_ok = sets.iter().all(|set| {
        let mut cuts = BTreeMap::new();
        let mut pairs = BTreeMap::new();
        for &v in set {
            match plc.roles[v] {
                PlcRole::Cut { i, .. } => *cuts.entry(i).or_insert(0) += 1,
                PlcRole::Pairing { i, j, .. } => *pairs.entry((i, j)).or_insert(0) += 1,
            }
        }
        cuts.len() == k
            && cuts.values().all(|&c| c == 1)
            && pairs.len() == k * (k - 1)
            && pairs.values().all(|&c| c == 1)
    });
    let formula_vertices = PlcGraph::formula_vertex_count(k, n);
    let vertices = plc.base.n();
    let passed = vertices == formula_vertices && max_size == k * k && structure_ok;
    Ok(PlcMaxReport {
        k,
        n,
        vertices,
        formula_vertices,
        max_size,
        expected_max: k * k,
        num_max_sets: sets.len(),
        structure_ok,
        passed,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PlcProjectionReport {
    pub k: usize,
    pub n: usize,
    pub r: usize,
    pub num_max_sets: usize,
    pub num_cut_vectors: usize,
    pub image_size: usize,
    /// Maximum sets whose image is not a 0/1 vector.
    pub non_binary: usize,
    pub missing: Vec<Vec<u32>>,
    pub extra: Vec<Vec<u32>>,
    /// Preimage sizes that differ from 2, keyed by image vector.
    pub irregular_fibres: Vec<(Vec<u32>, usize)>,
    pub passed: bool,
}

impl PlcProjectionReport {
    pub fn summary(&self) -> String {
        if self.passed {
            format!(
                "image = {} cut vectors of K_{}, 2-to-1 from {} maximum independent sets",
                self.image_size, self.r, self.num_max_sets
            )
        } else {
            format!(
                "image has {} vectors against {} cut vectors of K_{}: {} missing, {} extra, {} irregular fibres",
                self.image_size,
                self.num_cut_vectors,
                self.r,
                self.missing.len(),
                self.extra.len(),
                self.irregular_fibres.len()
            )
        }
    }
}

pub fn verify_plc_projection(k: usize, n: usize) -> Result<PlcProjectionReport> {
    let plc = generate_plc(k, n)?;
    let pi = projection_for(&plc);
    let (_, sets) = maximum_independent_sets(&plc)?;
    let mut fibres: BTreeMap<Vec<u32>, usize> = BTreeMap::new();
    let mut non_binary = 0;
    for set in &sets {
        let z = pi.apply(set);
        if z.iter().any(|&x| x > 1) {
            non_binary += 1;
        }
        *fibres.entry(z).or_insert(0) += 1;
    }
    let cuts: BTreeSet<Vec<u32>> = enumerate_cut_vectors(pi.r)
        .into_iter()
        .map(|v| v.into_iter().map(u32::from).collect())
        .collect();
    let missing: Vec<Vec<u32>> = cuts.iter().filter(|c| !fibres.contains_key(*c)).cloned().collect();
    let extra: Vec<Vec<u32>> = fibres.keys().filter(|z| !cuts.contains(*z)).cloned().collect();
    let irregular_fibres: Vec<(Vec<u32>, usize)> =
        fibres.iter().filter(|(_, &c)| c != 2).map(|(z, &c)| (z.clone(), c)).collect();
    let passed = non_binary == 0 && missing.is_empty() && extra.is_empty() && irregular_fibres.is_empty();
    Ok(PlcProjectionReport {
        k,
        n,
        r: pi.r,
        num_max_sets: sets.len(),
        num_cut_vectors: cuts.len(),
        image_size: fibres.len(),
        non_binary,
        missing,
        extra,
        irregular_fibres,
        passed,
    })
}

/// Measured size of the trivial formulation of `STAB_{k²}(PLC(k, n))` next to
/// the symbolic lower-bound forms.
pub fn gap_report(k: usize, n: usize) -> Result<String> {
    let plc = generate_plc(k, n)?;
    let (max_size, sets) = maximum_independent_sets(&plc)?;
    let ef = vrep_to_ef(&VRep::from_indicators(plc.base.n(), sets.iter().map(|s| s.iter().copied()))?)?;
    let r = k * plc.l;
    let mut out = String::new();
    writeln!(out, "PLC({k}, {n}): {} vertices, r = k*floor(log2 n) = {r}", plc.base.n()).unwrap();
    writeln!(
        out,
        "measured: trivial formulation of STAB_{max_size}(PLC) has size {} ({} maximum independent sets)",
        ef.size(),
        sets.len()
    )
    .unwrap();
    writeln!(out, "lower-bound form: xc(STAB_k^2(PLC(k, n))) >= n^(c'*k), c' unspecified").unwrap();
    writeln!(out, "cut polytope: xc(CUT(K_{r})) >= 2^(Omega(r)), constant unspecified").unwrap();
    writeln!(out, "status: asymptotic, not checkable at this scale (context only, not a certificate)").unwrap();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn projection_supports() {
        let pi = plc_projection(2, 2).unwrap();
        assert_eq!(pi.r, 2);
        assert_eq!(pi.labels, vec![(1, 1, 2, 1)]);
        // Pairing coordinates (1,2,S',S'') with exactly one of 1 ∈ S', 1 ∈ S''.
        let plc = generate_plc(2, 2).unwrap();
        let expected = vec![plc.pairing_index(1, 2, 0, 1), plc.pairing_index(1, 2, 1, 0)];
        assert_eq!(pi.support[0], expected);
        // No cut vertex contributes when every group has a single K_r vertex.
        assert!(pi.support.iter().flatten().all(|&c| c >= 4));

        let pi = plc_projection(2, 4).unwrap();
        assert_eq!(pi.labels.len(), 6);
        assert_eq!(pi.labels[0], (1, 1, 1, 2));
        assert_eq!(pi.support[0].len(), 2);
        assert_eq!(pi.support[1].len(), 8);
        let map = pi.to_affine_map();
        assert!(map.matrix.iter().flat_map(|r| r.values()).all(|v| v.is_one()));
    }

    #[test]
    fn max_sets() {
        let r = verify_plc_max_is(2, 2).unwrap();
        assert!(r.passed);
        assert_eq!((r.max_size, r.num_max_sets), (4, 4));
        let r = verify_plc_max_is(2, 4).unwrap();
        assert!(r.passed);
        assert_eq!((r.max_size, r.num_max_sets), (4, 16));
    }

    #[test]
    fn image_is_cut_polytope_two_to_one() {
        for (k, n, cuts) in [(2, 2, 2), (2, 3, 2), (2, 4, 8)] {
            let r = verify_plc_projection(k, n).unwrap();
            assert!(r.passed, "{r:?}");
            assert_eq!(r.image_size, cuts);
            assert_eq!(r.num_max_sets, 2 * cuts);
        }
        assert!(verify_plc_projection(2, 4).unwrap().summary().contains("8 cut vectors of K_4, 2-to-1"));
    }

    #[test]
    fn gap_text() {
        let t = gap_report(2, 2).unwrap();
        assert!(t.contains("has size 4"));
        assert!(t.contains("asymptotic, not checkable at this scale"));
        assert!(gap_report(2, 4).unwrap().contains("has size 16"));
    }
}
