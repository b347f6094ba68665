//! Treedepth, tree decompositions and low treedepth colorings.

mod coloring;
mod treedec;
mod treedepth;

pub use coloring::{
    low_td_coloring, verify_coloring, Coloring, ColoringBackend, ColoringReport, Verdict,
    DEFAULT_SUBSET_CAP,
};
pub use treedec::{td_to_tree_decomposition, TreeDecomposition};
pub use treedepth::{
    treedepth_exact, treedepth_forest_per_component, treedepth_upper, TreedepthForest,
    DEFAULT_EXACT_BUDGET,
};
