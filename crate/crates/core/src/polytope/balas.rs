//! Convex hulls of unions of polytopes via the disjunctive lift.
//!
//! Piece `i` keeps its own block of lifted variables `y^i` and gets a
//! multiplier `λ_i`. Every row `a·y <= b` of the piece becomes
//! `a·y^i - b·λ_i <= 0` (equalities likewise), and the target point is
//! `x = Σ_i (P_i y^i + o_i λ_i)`. Together with `λ >= 0` and `Σ λ = 1` this
//! describes `conv(∪ P_i)` when every piece is bounded.

use super::ef::{AffineMap, ExtendedFormulation};
use super::linsys::{LinearSystem, Relation};
use crate::error::{Error, Result};
use crate::rational::Rational;

/// Size is exactly `s + Σ size(ef_i)` for `s` pieces.
pub fn balas_union(efs: &[ExtendedFormulation], target_dim: usize) -> Result<ExtendedFormulation> {
    if efs.is_empty() {
        return Err(Error::InvalidParameter("union of zero polytopes".into()));
    }
    if let Some(ef) = efs.iter().find(|ef| ef.target_dim != target_dim) {
        return Err(Error::DimensionMismatch(format!(
            "piece of target dimension {} in a union of dimension {target_dim}",
            ef.target_dim
        )));
    }
    let mut system = LinearSystem::new(0);
    let mut projection = AffineMap::zero(target_dim);
    let mut lambdas = Vec::with_capacity(efs.len());
    for (i, ef) in efs.iter().enumerate() {
        let shift = system.num_vars;
        for j in 0..ef.num_vars() {
            system.add_var(format!("p{i}.{}", ef.system.var_name(j)));
        }
        let lambda = system.add_var(format!("lambda[{i}]"));
        lambdas.push(lambda);
        for row in &ef.system.rows {
            let terms = row
                .coeffs
                .iter()
                .map(|(&j, a)| (j + shift, a.clone()))
                .chain(std::iter::once((lambda, -&row.rhs)));
            system.add_row(terms, row.rel, Rational::zero());
        }
        system.add_nonneg(lambda);
        for (t, row) in ef.projection.matrix.iter().enumerate() {
            for (&j, a) in row {
                projection.matrix[t].insert(j + shift, a.clone());
            }
            let o = &ef.projection.offset[t];
            if !o.is_zero() {
                projection.matrix[t].insert(lambda, o.clone());
            }
        }
    }
    system.add_row(
        lambdas.iter().map(|&l| (l, Rational::one())),
        Relation::Eq,
        Rational::one(),
    );
    Ok(ExtendedFormulation {
        system,
        target_dim,
        projection,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polytope::{verify_ef, vrep_to_ef, VRep};

    fn pt(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&x| Rational::from(x)).collect()
    }

    fn single(p: &[i64]) -> ExtendedFormulation {
        vrep_to_ef(&VRep::new(vec![pt(p)]).unwrap()).unwrap()
    }

    #[test]
    fn two_points() {
        let u = balas_union(&[single(&[0, 0]), single(&[1, 1])], 2).unwrap();
        assert_eq!(u.size(), 2 + 1 + 1);
        let expected = VRep::new(vec![pt(&[0, 0]), pt(&[1, 1])]).unwrap();
        assert!(verify_ef(&u, &expected).unwrap().passed());
    }

    #[test]
    fn single_piece_is_identity() {
        let tri = VRep::new(vec![pt(&[0, 0]), pt(&[1, 0]), pt(&[0, 1])]).unwrap();
        let ef = vrep_to_ef(&tri).unwrap();
        let u = balas_union(std::slice::from_ref(&ef), 2).unwrap();
        assert_eq!(u.size(), ef.size() + 1);
        assert!(verify_ef(&u, &tri).unwrap().passed());
    }

    #[test]
    fn segment_and_point_on_a_line() {
        let seg = vrep_to_ef(&VRep::new(vec![pt(&[0]), pt(&[1])]).unwrap()).unwrap();
        let u = balas_union(&[seg, single(&[2])], 1).unwrap();
        let hull = VRep::new(vec![pt(&[0]), pt(&[1]), pt(&[2])]).unwrap();
        assert!(verify_ef(&u, &hull).unwrap().passed());
        let short = VRep::new(vec![pt(&[0]), pt(&[1])]).unwrap();
        assert!(!verify_ef(&u, &short).unwrap().passed());
    }

    #[test]
    fn offsets_are_homogenised() {
        // A piece whose projection has a nonzero offset: x = y + 5, 0 <= y <= 1.
        let mut sys = LinearSystem::new(1);
        sys.add_nonneg(0);
        sys.add_row([(0, Rational::one())], Relation::Le, Rational::one());
        let mut proj = AffineMap::zero(1);
        proj.matrix[0].insert(0, Rational::one());
        proj.offset[0] = Rational::from(5);
        let shifted = ExtendedFormulation {
            system: sys,
            target_dim: 1,
            projection: proj,
        };
        let u = balas_union(&[shifted, single(&[0])], 1).unwrap();
        let expected = VRep::new(vec![pt(&[0]), pt(&[6])]).unwrap();
        assert!(verify_ef(&u, &expected).unwrap().passed());
    }

    #[test]
    fn rejects_bad_input() {
        assert!(balas_union(&[], 1).is_err());
        assert!(balas_union(&[single(&[0])], 2).is_err());
    }
}
