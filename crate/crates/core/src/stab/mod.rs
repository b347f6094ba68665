//! Extended formulations of bounded-size independent set polytopes.

mod colored;
mod dp;
mod nice;
mod oracle;

pub use colored::{
    size_accounting, stab_ef_colored, stab_le_via_union, PieceReport, SizeReport, UnionReport,
};
pub use dp::{dp_size_bound, stab_ef_dp, stab_ef_treedec, DpFormulation, DP_SIZE_CONSTANT};
pub use nice::{NiceDecomposition, NiceKind, NiceNode};
pub use oracle::{independence_number_capped, independent_sets, stab_vrep, StabMode, ORACLE_CAP};
