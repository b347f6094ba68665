//! Assembly over color-class subgraphs and size accounting.

use std::fmt::Write;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};
use serde::Serialize;

use super::dp::{dp_size_bound, stab_ef_dp};
use super::oracle::StabMode;
use crate::decomposition::{
    td_to_tree_decomposition, treedepth_forest_per_component, Coloring, ColoringBackend,
    DEFAULT_EXACT_BUDGET,
};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::polytope::{balas_union, ExtendedFormulation};
use crate::rational::Rational;
use crate::util::combinations;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PieceReport {
    #[serde(rename = "J")]
    pub colors: Vec<usize>,
    pub vertices: usize,
    /// Height of the treedepth forest used for the subgraph.
    pub td_used: usize,
    /// Whether every component's forest came from the exact solver.
    pub td_exact: bool,
    pub tw_used: usize,
    pub nice_nodes: usize,
    /// `None` when the subgraph has no independent set of the requested size.
    pub size: Option<usize>,
    pub size_bound: u128,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SizeReport {
    pub n: usize,
    pub k: usize,
    pub mode: String,
    #[serde(rename = "N")]
    pub num_colors: usize,
    pub coloring_backend: String,
    pub coloring_order: usize,
    /// Number of color subsets `J`, `C(N, min(N, k))`.
    pub num_subgraphs: usize,
    pub pieces: Vec<PieceReport>,
    /// Nonempty pieces entering the union.
    pub union_pieces: usize,
    pub sum_piece_sizes: usize,
    pub total: usize,
    pub bound_line: String,
    /// The coloring has one class per vertex, so the piece count grows like
    /// `C(n, k)` rather than linearly.
    pub singleton_fallback: bool,
}

fn backend_name(b: &ColoringBackend) -> String {
    match b {
        ColoringBackend::Augmented => "augmented".into(),
        ColoringBackend::Split { splits } => format!("augmented+{splits}-splits"),
        ColoringBackend::Singleton => "singleton".into(),
        ColoringBackend::External => "external".into(),
    }
}

/// Union over `J ∈ C([N], min(N, k))` of the program's formulation for the
/// subgraph induced by the classes in `J`.
pub fn stab_ef_colored(
    g: &Graph,
    c: &Coloring,
    mode: StabMode,
) -> Result<(ExtendedFormulation, SizeReport)> {
    let n = g.n();
    if c.color.len() != n {
        return Err(Error::DimensionMismatch(format!(
            "coloring has {} vertices, graph has {n}",
            c.color.len()
        )));
    }
    let k = mode.k();
    let m = c.num_colors.min(k);
    if c.order < m {
        return Err(Error::ColoringNotVerified { have: c.order, need: m });
    }
    let mut pieces = Vec::new();
    let mut efs = Vec::new();
    for colors in combinations(c.num_colors, m) {
        let verts = c.union_of(&colors);
        let sub = g.induced(&verts);
        let forest = treedepth_forest_per_component(&sub, DEFAULT_EXACT_BUDGET);
        let td_exact = sub
            .components()
            .iter()
            .all(|comp| comp.len() <= DEFAULT_EXACT_BUDGET);
        let td = td_to_tree_decomposition(&sub, &forest)?;
        let dp = stab_ef_dp(&sub, &td, mode, &verts, n)?;
        let (size, nice_nodes) = match &dp {
            Some(d) => (Some(d.ef.size()), d.nice_nodes),
            None => (None, 0),
        };
        let tw = td.width();
        pieces.push(PieceReport {
            colors,
            vertices: verts.len(),
            td_used: forest.value(),
            td_exact,
            tw_used: tw,
            nice_nodes,
            size,
            size_bound: dp.as_ref().map_or(0, |d| dp_size_bound(d.width, k, d.nice_nodes)),
        });
        if let Some(d) = dp {
            efs.push(d.ef);
        }
    }
    if efs.is_empty() {
        return Err(Error::EmptyPolytope);
    }
    let ef = balas_union(&efs, n)?;
    let sum: usize = efs.iter().map(ExtendedFormulation::size).sum();
    let s = efs.len();
    let report = SizeReport {
        n,
        k,
        mode: mode.name().into(),
        num_colors: c.num_colors,
        coloring_backend: backend_name(&c.backend),
        coloring_order: c.order,
        num_subgraphs: pieces.len(),
        bound_line: format!(
            "size {} = s + sum = {s} + {sum} (s = nonempty pieces of {} subgraphs C({}, {m}))",
            ef.size(),
            pieces.len(),
            c.num_colors
        ),
        pieces,
        union_pieces: s,
        sum_piece_sizes: sum,
        total: ef.size(),
        singleton_fallback: c.backend == ColoringBackend::Singleton
            || (c.num_colors == n && n > k && g.num_edges() > 0),
    };
    Ok((ef, report))
}

/// Accounting for the union of exact pieces `i = 0..=k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct UnionReport {
    pub k: usize,
    /// Size of each exact piece, `None` when it is empty and skipped.
    pub piece_sizes: Vec<Option<usize>>,
    pub union_pieces: usize,
    pub sum_piece_sizes: usize,
    pub total: usize,
}

/// `conv` of the exact polytopes for every cardinality `0..=k`.
pub fn stab_le_via_union(
    g: &Graph,
    c: &Coloring,
    k: usize,
) -> Result<(ExtendedFormulation, UnionReport)> {
    let mut efs = Vec::new();
    let mut piece_sizes = Vec::new();
    for i in 0..=k {
        match stab_ef_colored(g, c, StabMode::Exact(i)) {
            Ok((ef, _)) => {
                piece_sizes.push(Some(ef.size()));
                efs.push(ef);
            }
            Err(Error::EmptyPolytope) => piece_sizes.push(None),
            Err(e) => return Err(e),
        }
    }
    let ef = balas_union(&efs, g.n())?;
    let report = UnionReport {
        k,
        piece_sizes,
        union_pieces: efs.len(),
        sum_piece_sizes: efs.iter().map(ExtendedFormulation::size).sum(),
        total: ef.size(),
    };
    Ok((ef, report))
}

fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::from(0);
    }
    (0..k).fold(BigInt::one(), |acc, i| acc * (n - i) / (i + 1))
}

/// `base^(p/q) >= value`, decided exactly as `base^p >= value^q`.
fn pow_ge(base: usize, eps: &Rational, value: &BigInt) -> bool {
    let p = eps.numer().to_u32().unwrap_or(u32::MAX);
    let q = eps.denom().to_u32().unwrap_or(u32::MAX);
    num_traits::pow(BigInt::from(base), p as usize) >= num_traits::pow(value.clone(), q as usize)
}

/// Human-readable decomposition of the measured size against the bound.
pub fn size_accounting(report: &SizeReport, epsilon: Option<&Rational>) -> String {
    let mut out = String::new();
    let m = report.num_colors.min(report.k);
    let count = binomial(report.num_colors, m);
    let s0 = report.pieces.iter().filter_map(|p| p.size).max().unwrap_or(0);
    writeln!(
        out,
        "measured: n = {}, k = {}, N = {}, mode = {}, total size = {}",
        report.n, report.k, report.num_colors, report.mode, report.total
    )
    .unwrap();
    writeln!(
        out,
        "union: {} nonempty of C({}, {m}) = {count} pieces; total = {} + {} = {}",
        report.union_pieces, report.num_colors, report.union_pieces, report.sum_piece_sizes, report.total
    )
    .unwrap();
    writeln!(
        out,
        "bound: total <= C(N, k) + C(N, k)*s0 = {count} + {count}*{s0} = {} (s0 = largest piece)",
        &count + &count * BigInt::from(s0)
    )
    .unwrap();
    let max_ratio = report
        .pieces
        .iter()
        .filter_map(|p| p.size.map(|s| Rational::new(s as i64, (1i64 << report.k.min(62)) * report.n.max(1) as i64)))
        .max()
        .unwrap_or_default();
    writeln!(
        out,
        "per-piece constant: max size / (2^k * n) = {max_ratio}"
    )
    .unwrap();
    if report.singleton_fallback {
        writeln!(
            out,
            "note: singleton coloring; the piece count is C(n, k) = {count}, so this bound is not of the form f(k)*n"
        )
        .unwrap();
    }
    if let Some(eps) = epsilon {
        let nk = num_traits::pow(BigInt::from(report.num_colors), report.k);
        if pow_ge(report.n, eps, &nk) {
            writeln!(
                out,
                "n^(1+eps): N^k = {nk} <= n^eps with eps = {eps}; total <= n^eps * (1 + c*2^k*n) <= (1 + c*2^k) * n^(1+eps) with c = {max_ratio}"
            )
            .unwrap();
        } else {
            writeln!(out, "n^(1+eps): not applicable, N^k = {nk} exceeds n^eps with eps = {eps}").unwrap();
        }
    }
    out
}
