//! Point-set representations and the trivial convex-combination extension.

use std::collections::BTreeSet;

use super::ef::{AffineMap, ExtendedFormulation};
use super::linsys::{LinearSystem, Relation};
use crate::error::{Error, Result};
use crate::rational::Rational;

/// A finite point set; `conv(points)` is the polytope it represents.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VRep {
    dim: usize,
    points: Vec<Vec<Rational>>,
}

impl VRep {
    /// Sorts and deduplicates the points. Fails on an empty set or ragged input.
    pub fn new(points: Vec<Vec<Rational>>) -> Result<Self> {
        let Some(first) = points.first() else {
            return Err(Error::EmptyPolytope);
        };
        let dim = first.len();
        if let Some(p) = points.iter().find(|p| p.len() != dim) {
            return Err(Error::DimensionMismatch(format!(
                "point of dimension {} among points of dimension {dim}",
                p.len()
            )));
        }
        let set: BTreeSet<Vec<Rational>> = points.into_iter().collect();
        Ok(VRep {
            dim,
            points: set.into_iter().collect(),
        })
    }

    /// Builds a point set from 0/1 indicator vectors.
    pub fn from_indicators<I, S>(dim: usize, sets: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: IntoIterator<Item = usize>,
    {
        let points = sets
            .into_iter()
            .map(|s| {
                let mut p = vec![Rational::zero(); dim];
                for v in s {
                    p[v] = Rational::one();
                }
                p
            })
            .collect();
        VRep::new(points)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn points(&self) -> &[Vec<Rational>] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// `x = Σ λ_j v_j`, `Σ λ_j = 1`, `λ ≥ 0`; size equals the number of points.
pub fn vrep_to_ef(v: &VRep) -> Result<ExtendedFormulation> {
    if v.is_empty() {
        return Err(Error::EmptyPolytope);
    }
    let mut system = LinearSystem::new(0);
    for j in 0..v.len() {
        let l = system.add_var(format!("lambda[{j}]"));
        system.add_nonneg(l);
    }
    system.add_row(
        (0..v.len()).map(|j| (j, Rational::one())),
        Relation::Eq,
        Rational::one(),
    );
    let mut projection = AffineMap::zero(v.dim());
    for (j, p) in v.points().iter().enumerate() {
        for (t, c) in p.iter().enumerate() {
            if !c.is_zero() {
                projection.matrix[t].insert(j, c.clone());
            }
        }
    }
    Ok(ExtendedFormulation {
        system,
        target_dim: v.dim(),
        projection,
    })
}
