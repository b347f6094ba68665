//! First-order formulas on labeled graphs and their tuple polytopes.

mod formula;
mod polytope;

pub use formula::{eval, parse_formula, FoFormula, Formula, Quantifier};
pub use polytope::{
    check_existential_decomposition, fop_ef_union, fop_vertices, iota_formula, iota_project,
    satisfying_tuples, CharVector, DecompositionReport, FOP_CAP,
};
