//! Exact extended formulations of k-independent-set polytopes on sparse
//! graphs, the paired local-cut lower-bound gadget, and brute-force polyhedral
//! certification at desk scale.

pub mod decomposition;
pub mod error;
pub mod fop;
pub mod graph;
pub mod lowerbound;
pub mod polytope;
pub mod rational;
pub mod stab;
pub mod util;

pub use error::{Error, Result};
pub use rational::Rational;
