//! Characteristic vectors of satisfying tuples and their polytopes.

use std::collections::BTreeSet;

use serde::Serialize;

use super::formula::{eval, parse_formula, FoFormula};
use crate::decomposition::Coloring;
use crate::error::{Error, Result};
use crate::graph::LabeledGraph;
use crate::polytope::{balas_union, vrep_to_ef, ExtendedFormulation, VRep};
use crate::rational::Rational;
use crate::util::combinations;

/// Evaluation budget: `n^(k+ℓ)` may not exceed this.
pub const FOP_CAP: u128 = 10_000_000;

/// The characteristic vector of a `k`-tuple of vertices of an `n`-vertex graph.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct CharVector {
    pub n: usize,
    pub tuple: Vec<usize>,
}

impl CharVector {
    pub fn k(&self) -> usize {
        self.tuple.len()
    }

    /// Flattened entries, `i`-major: entry `i·n + v` is 1 iff `w_i = v`.
    pub fn entries(&self) -> Vec<u8> {
        let mut e = vec![0; self.k() * self.n];
        for (i, &v) in self.tuple.iter().enumerate() {
            e[i * self.n + v] = 1;
        }
        e
    }

    pub fn to_rationals(&self) -> Vec<Rational> {
        self.entries().into_iter().map(|x| Rational::from(x as i64)).collect()
    }
}

fn check_cap(n: usize, exponent: usize) -> Result<()> {
    let work = (n as u128).checked_pow(exponent as u32).unwrap_or(u128::MAX);
    if work > FOP_CAP {
        return Err(Error::CapExceeded(format!(
            "{n}^{exponent} evaluations exceed the cap of {FOP_CAP}"
        )));
    }
    Ok(())
}

/// Satisfying tuples of `φ` in lexicographic order.
pub fn satisfying_tuples(g: &LabeledGraph, phi: &FoFormula) -> Result<Vec<Vec<usize>>> {
    let n = g.base.n();
    let k = phi.k();
    check_cap(n, k + phi.ell)?;
    let mut out = Vec::new();
    let mut w = vec![0; k];
    if n == 0 {
        return Ok(out);
    }
    loop {
        if eval(g, phi, &w)? {
            out.push(w.clone());
        }
        let mut i = k;
        loop {
            if i == 0 {
                return Ok(out);
            }
            i -= 1;
            w[i] += 1;
            if w[i] < n {
                break;
            }
            w[i] = 0;
        }
    }
}

/// One characteristic vector per satisfying tuple.
pub fn fop_vertices(g: &LabeledGraph, phi: &FoFormula) -> Result<Vec<CharVector>> {
    let n = g.base.n();
    Ok(satisfying_tuples(g, phi)?
        .into_iter()
        .map(|tuple| CharVector { n, tuple })
        .collect())
}

/// `y_v = Σ_i χ_{v,i}`, deduplicated and sorted.
pub fn iota_project(vectors: &[CharVector]) -> Vec<Vec<Rational>> {
    let set: BTreeSet<Vec<Rational>> = vectors
        .iter()
        .map(|cv| {
            let mut y = vec![Rational::zero(); cv.n];
            for &v in &cv.tuple {
                y[v] += &Rational::one();
            }
            y
        })
        .collect();
    set.into_iter().collect()
}

/// The formula stating that `x1..xk` are pairwise distinct and non-adjacent.
pub fn iota_formula(k: usize) -> Result<FoFormula> {
    if k == 0 {
        return Err(Error::InvalidParameter("iota needs k >= 1".into()));
    }
    let vars: Vec<String> = (1..=k).map(|i| format!("x{i}")).collect();
    let mut conj = String::new();
    for i in 0..k {
        for j in i + 1..k {
            conj.push_str(&format!(
                " (not (edge {a} {b})) (not (= {a} {b}))",
                a = vars[i],
                b = vars[j]
            ));
        }
    }
    parse_formula(&format!("(free ({}) (and{conj}))", vars.join(" ")))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DecompositionReport {
    pub passed: bool,
    pub k: usize,
    pub ell: usize,
    pub num_colors: usize,
    pub num_subgraphs: usize,
    pub global_tuples: usize,
    pub union_tuples: usize,
    /// A tuple found on exactly one side, and the side it was found on.
    pub witness: Option<(Vec<usize>, &'static str)>,
}

fn require_existential(phi: &FoFormula, c: &Coloring, n: usize) -> Result<usize> {
    if !phi.existential {
        return Err(Error::NotExistential(
            "the formula contains a universal quantifier".into(),
        ));
    }
    if c.color.len() != n {
        return Err(Error::DimensionMismatch(format!(
            "coloring has {} vertices, graph has {n}",
            c.color.len()
        )));
    }
    let m = c.num_colors.min(phi.k() + phi.ell);
    if c.order < m {
        return Err(Error::ColoringNotVerified { have: c.order, need: m });
    }
    Ok(m)
}

/// Satisfying tuples of every `G_J`, `J ∈ C([N], m)`, in global vertex ids.
fn piece_tuples(g: &LabeledGraph, phi: &FoFormula, c: &Coloring, m: usize) -> Result<Vec<Vec<Vec<usize>>>> {
    combinations(c.num_colors, m)
        .map(|colors| {
            let verts = c.union_of(&colors);
            let sub = g.induced(&verts);
            Ok(satisfying_tuples(&sub, phi)?
                .into_iter()
                .map(|t| t.into_iter().map(|v| verts[v]).collect())
                .collect())
        })
        .collect()
}

/// Checks that the satisfying tuples of `G` are exactly those of the
/// subgraphs induced by `k + ℓ` color classes.
pub fn check_existential_decomposition(
    g: &LabeledGraph,
    phi: &FoFormula,
    c: &Coloring,
) -> Result<DecompositionReport> {
    let m = require_existential(phi, c, g.base.n())?;
    let global: BTreeSet<Vec<usize>> = satisfying_tuples(g, phi)?.into_iter().collect();
    let pieces = piece_tuples(g, phi, c, m)?;
    let num_subgraphs = pieces.len();
    let union: BTreeSet<Vec<usize>> = pieces.into_iter().flatten().collect();
    let witness = global
        .difference(&union)
        .next()
        .map(|t| (t.clone(), "graph only"))
        .or_else(|| union.difference(&global).next().map(|t| (t.clone(), "subgraph only")));
    Ok(DecompositionReport {
        passed: witness.is_none(),
        k: phi.k(),
        ell: phi.ell,
        num_colors: c.num_colors,
        num_subgraphs,
        global_tuples: global.len(),
        union_tuples: union.len(),
        witness,
    })
}

/// Union of the trivial formulations of the nonempty pieces.
pub fn fop_ef_union(g: &LabeledGraph, phi: &FoFormula, c: &Coloring) -> Result<ExtendedFormulation> {
    let n = g.base.n();
    let m = require_existential(phi, c, n)?;
    let dim = phi.k() * n;
    let efs = piece_tuples(g, phi, c, m)?
        .into_iter()
        .filter(|tuples| !tuples.is_empty())
        .map(|tuples| {
            let points = tuples
                .into_iter()
                .map(|tuple| CharVector { n, tuple }.to_rationals())
                .collect();
            vrep_to_ef(&VRep::new(points)?)
        })
        .collect::<Result<Vec<_>>>()?;
    if efs.is_empty() {
        return Err(Error::EmptyPolytope);
    }
    balas_union(&efs, dim)
}
