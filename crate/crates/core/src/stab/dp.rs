//! The independent-set dynamic program over a nice tree decomposition, lifted
//! to a hypergraph flow polytope.
//!
//! A state at node `x` is a pair `(A, j)`: `A` is the independent set chosen
//! inside the bag, `j` the number of chosen vertices already forgotten below
//! `x`. Each transition of the program is a nonnegative variable; a join
//! transition consumes one unit from a state of each child. Flow is conserved
//! at every state and one unit leaves through the admissible root states, so
//! integral flows are exactly the traces of the program. The target
//! coordinate of a vertex is the flow on the forget transitions that drop it
//! from the chosen set.
//!
//! Transitions that lie on no complete trace are pruned before the system is
//! emitted; when nothing survives the polytope is empty.

use std::collections::HashMap;

use super::nice::{NiceDecomposition, NiceKind};
use super::oracle::StabMode;
use crate::decomposition::TreeDecomposition;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::polytope::{AffineMap, ExtendedFormulation, LinearSystem, Relation};
use crate::rational::Rational;

type StateKey = (Vec<usize>, usize);

struct Transition {
    node: usize,
    label: String,
    tails: Vec<usize>,
    head: usize,
    /// Vertex whose coordinate this transition carries.
    selects: Option<usize>,
}

/// An EF from the program together with the data its size bound depends on.
#[derive(Debug, Clone)]
pub struct DpFormulation {
    pub ef: ExtendedFormulation,
    pub width: usize,
    pub nice_nodes: usize,
}

/// `C·2^(w+1)·(k+1)^2·t` with `C = 1`.
pub fn dp_size_bound(width: usize, k: usize, nice_nodes: usize) -> u128 {
    (1u128 << (width + 1)) * ((k as u128 + 1).pow(2)) * nice_nodes as u128
}

pub const DP_SIZE_CONSTANT: u64 = 1;

/// Projects onto `R^{|V(G)|}`; errors with [`Error::EmptyPolytope`] when no
/// independent set has the requested size.
pub fn stab_ef_treedec(g: &Graph, td: &TreeDecomposition, mode: StabMode) -> Result<ExtendedFormulation> {
    let coords: Vec<usize> = (0..g.n()).collect();
    stab_ef_dp(g, td, mode, &coords, g.n())?
        .map(|d| d.ef)
        .ok_or(Error::EmptyPolytope)
}

/// As [`stab_ef_treedec`], writing vertex `v` of `g` to target coordinate
/// `coords[v]` of a `target_dim`-dimensional space. Returns `None` when the
/// polytope is empty.
pub fn stab_ef_dp(
    g: &Graph,
    td: &TreeDecomposition,
    mode: StabMode,
    coords: &[usize],
    target_dim: usize,
) -> Result<Option<DpFormulation>> {
    let nice = NiceDecomposition::from_tree_decomposition(g, td)?;
    let k = mode.k();

    let mut states: Vec<StateKey> = Vec::new();
    let mut node_states: Vec<HashMap<StateKey, usize>> = Vec::with_capacity(nice.len());
    let mut transitions: Vec<Transition> = Vec::new();
    for (x, node) in nice.nodes.iter().enumerate() {
        let mut here: HashMap<StateKey, usize> = HashMap::new();
        let mut produce = |key: StateKey, states: &mut Vec<StateKey>| -> usize {
            *here.entry(key.clone()).or_insert_with(|| {
                states.push(key);
                states.len() - 1
            })
        };
        let sorted_child_states = |c: usize| {
            let mut v: Vec<(&StateKey, &usize)> = node_states[c].iter().collect();
            v.sort();
            v.into_iter().map(|(k, &s)| (k.clone(), s)).collect::<Vec<_>>()
        };
        match node.kind {
            NiceKind::Leaf => {
                let head = produce((Vec::new(), 0), &mut states);
                transitions.push(Transition { node: x, label: "leaf".into(), tails: vec![], head, selects: None });
            }
            NiceKind::Introduce(v) => {
                for ((a, j), s) in sorted_child_states(node.children[0]) {
                    let head = produce((a.clone(), j), &mut states);
                    transitions.push(Transition {
                        node: x,
                        label: format!("skip{v}"),
                        tails: vec![s],
                        head,
                        selects: None,
                    });
                    if j + a.len() < k && a.iter().all(|&u| !g.has_edge(u, v)) {
                        let mut b = a.clone();
                        let pos = b.binary_search(&v).unwrap_err();
                        b.insert(pos, v);
                        let head = produce((b, j), &mut states);
                        transitions.push(Transition {
                            node: x,
                            label: format!("take{v}"),
                            tails: vec![s],
                            head,
                            selects: None,
                        });
                    }
                }
            }
            NiceKind::Forget(v) => {
                for ((a, j), s) in sorted_child_states(node.children[0]) {
                    let chosen = a.contains(&v);
                    let b: Vec<usize> = a.iter().copied().filter(|&u| u != v).collect();
                    let head = produce((b, j + chosen as usize), &mut states);
                    transitions.push(Transition {
                        node: x,
                        label: format!("forget{v}"),
                        tails: vec![s],
                        head,
                        selects: chosen.then_some(v),
                    });
                }
            }
            NiceKind::Join => {
                let left = sorted_child_states(node.children[0]);
                let right = sorted_child_states(node.children[1]);
                for ((a, j1), s1) in &left {
                    for ((b, j2), s2) in &right {
                        if a == b && j1 + j2 + a.len() <= k {
                            let head = produce((a.clone(), j1 + j2), &mut states);
                            transitions.push(Transition {
                                node: x,
                                label: "join".into(),
                                tails: vec![*s1, *s2],
                                head,
                                selects: None,
                            });
                        }
                    }
                }
            }
        }
        node_states.push(here);
    }

    // Keep the transitions that lie on a trace ending in an admissible root state.
    let root = nice.root();
    let mut useful_state = vec![false; states.len()];
    for (key, &s) in &node_states[root] {
        if mode.admits(key.1) {
            useful_state[s] = true;
        }
    }
    let mut useful = vec![false; transitions.len()];
    for (i, t) in transitions.iter().enumerate().rev() {
        if useful_state[t.head] {
            useful[i] = true;
            for &s in &t.tails {
                useful_state[s] = true;
            }
        }
    }
    if !useful.iter().any(|&u| u) {
        return Ok(None);
    }

    let mut system = LinearSystem::new(0);
    let mut inflow: Vec<Vec<usize>> = vec![Vec::new(); states.len()];
    let mut outflow: Vec<Vec<usize>> = vec![Vec::new(); states.len()];
    let mut projection = AffineMap::zero(target_dim);
    for (i, t) in transitions.iter().enumerate() {
        if !useful[i] {
            continue;
        }
        let (a, j) = &states[t.head];
        let name = format!("n{}.{}[{}|{}]", t.node, t.label, join_ids(a), j);
        let var = system.add_var(name);
        system.add_nonneg(var);
        inflow[t.head].push(var);
        for &s in &t.tails {
            outflow[s].push(var);
        }
        if let Some(v) = t.selects {
            projection.matrix[coords[v]].insert(var, Rational::one());
        }
    }
    let root_states: Vec<usize> = {
        let mut r: Vec<(&StateKey, &usize)> = node_states[root].iter().collect();
        r.sort();
        r.into_iter().map(|(_, &s)| s).collect()
    };
    for (s, _) in states.iter().enumerate() {
        if !useful_state[s] || root_states.contains(&s) {
            continue;
        }
        let terms = inflow[s]
            .iter()
            .map(|&v| (v, Rational::one()))
            .chain(outflow[s].iter().map(|&v| (v, Rational::from(-1))));
        system.add_row(terms, Relation::Eq, Rational::zero());
    }
    let root_terms: Vec<(usize, Rational)> = root_states
        .iter()
        .filter(|&&s| useful_state[s])
        .flat_map(|&s| inflow[s].iter().map(|&v| (v, Rational::one())))
        .collect();
    system.add_row(root_terms, Relation::Eq, Rational::one());

    Ok(Some(DpFormulation {
        ef: ExtendedFormulation {
            system,
            target_dim,
            projection,
        },
        width: nice.width(),
        nice_nodes: nice.len(),
    }))
}

fn join_ids(a: &[usize]) -> String {
    a.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomposition::{td_to_tree_decomposition, treedepth_upper};
    use crate::graph::{generate_family, Family};
    use crate::polytope::verify_ef;
    use crate::stab::oracle::stab_vrep;

    fn dfs_td(g: &Graph) -> TreeDecomposition {
        td_to_tree_decomposition(g, &treedepth_upper(g)).unwrap()
    }

    #[test]
    fn p3_exact_two_is_a_point() {
        let g = generate_family(Family::Path, &[3]).unwrap();
        let ef = stab_ef_treedec(&g, &dfs_td(&g), StabMode::Exact(2)).unwrap();
        let expected = stab_vrep(&g, StabMode::Exact(2)).unwrap();
        assert_eq!(expected.points().len(), 1);
        assert!(verify_ef(&ef, &expected).unwrap().passed());
    }

    #[test]
    fn edgeless_exact_one_is_a_simplex() {
        let g = Graph::empty(3);
        let ef = stab_ef_treedec(&g, &dfs_td(&g), StabMode::Exact(1)).unwrap();
        let simplex = crate::polytope::VRep::from_indicators(3, [[0], [1], [2]]).unwrap();
        assert!(verify_ef(&ef, &simplex).unwrap().passed());
    }

    #[test]
    fn at_most_zero_is_the_origin() {
        let g = generate_family(Family::Petersen, &[]).unwrap();
        let ef = stab_ef_treedec(&g, &dfs_td(&g), StabMode::AtMost(0)).unwrap();
        let origin = crate::polytope::VRep::new(vec![vec![Rational::zero(); 10]]).unwrap();
        assert!(verify_ef(&ef, &origin).unwrap().passed());
    }

    #[test]
    fn empty_when_no_set_of_that_size() {
        let g = generate_family(Family::Complete, &[4]).unwrap();
        assert!(matches!(
            stab_ef_treedec(&g, &dfs_td(&g), StabMode::Exact(2)),
            Err(Error::EmptyPolytope)
        ));
    }

    #[test]
    fn matches_oracle_on_small_graphs() {
        let graphs = [
            generate_family(Family::Cycle, &[5]).unwrap(),
            generate_family(Family::Grid, &[2, 3]).unwrap(),
            generate_family(Family::Star, &[4]).unwrap(),
        ];
        for g in &graphs {
            let td = dfs_td(g);
            for k in 0..=3 {
                for mode in [StabMode::Exact(k), StabMode::AtMost(k)] {
                    match stab_vrep(g, mode) {
                        Ok(expected) => {
                            let ef = stab_ef_treedec(g, &td, mode).unwrap();
                            let r = verify_ef(&ef, &expected).unwrap();
                            assert!(r.passed(), "{mode} on {} vertices: {r:?}", g.n());
                        }
                        Err(Error::EmptyPolytope) => assert!(matches!(
                            stab_ef_treedec(g, &td, mode),
                            Err(Error::EmptyPolytope)
                        )),
                        Err(e) => panic!("{e}"),
                    }
                }
            }
        }
    }

    #[test]
    fn size_respects_bound() {
        let g = generate_family(Family::Grid, &[3, 3]).unwrap();
        let td = dfs_td(&g);
        for k in 0..=3 {
            let d = stab_ef_dp(&g, &td, StabMode::AtMost(k), &(0..9).collect::<Vec<_>>(), 9)
                .unwrap()
                .unwrap();
            assert!(d.ef.size() as u128 <= dp_size_bound(d.width, k, d.nice_nodes));
        }
    }

    #[test]
    fn rejects_invalid_decomposition() {
        let g = generate_family(Family::Path, &[3]).unwrap();
        let bad = TreeDecomposition {
            bags: vec![vec![0, 1], vec![2]],
            parent: vec![None, Some(0)],
        };
        assert!(matches!(
            stab_ef_treedec(&g, &bad, StabMode::Exact(1)),
            Err(Error::InvalidDecomposition(_))
        ));
    }
}
