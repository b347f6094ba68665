//! Exact certification that an extended formulation projects onto
//! `conv(expected)`.
//!
//! Containment of the projection in the hull is checked facet by facet: the
//! facet functional is pulled back through the projection and maximised over
//! the lifted system. Once containment holds, each vertex `v` of the hull is
//! checked by maximising an exposing functional (the sum of the normals of
//! the facets tight at `v`); `v` is the unique maximiser over the hull, so
//! the optimum reaches `w·v` exactly when `v` lifts. Non-vertex points lift
//! by convexity. Every LP optimum is itself a feasible lifted point, so a
//! vertex equal to the projection of an earlier optimum needs no LP of its
//! own. If containment fails, vertices are instead checked one at a time by
//! feasibility of the lifted system with the projection fixed.

use std::collections::HashSet;

use serde::Serialize;

use super::dd::hull;
use super::ef::ExtendedFormulation;
use super::linsys::{LinearSystem, Relation, Row};
use super::lp::{implied_lower_bounds, LpSolver, LpStatus};
use super::vrep::VRep;
use crate::error::{Error, Result};
use crate::rational::Rational;

#[derive(Debug, Clone, Serialize)]
pub struct FacetViolation {
    /// The hull row, as text over `x0, x1, …`.
    pub row: String,
    /// `"facet"`, `"equality-max"` or `"equality-min"`.
    pub kind: &'static str,
    pub bound: Rational,
    pub lp_value: Rational,
    /// Projection of the lifted optimum, a point outside the hull.
    pub witness: Vec<Rational>,
}

#[derive(Debug, Clone, Serialize)]
pub struct EfReport {
    pub verdict: &'static str,
    pub ef_size: usize,
    pub ef_vars: usize,
    pub num_points: usize,
    pub num_vertices: usize,
    pub hull_facets: usize,
    pub hull_equalities: usize,
    pub lp_solves: usize,
    pub feasible: bool,
    pub violations: Vec<FacetViolation>,
    /// Hull vertices that are not the projection of any feasible lifted point.
    pub unlifted: Vec<Vec<Rational>>,
}

impl EfReport {
    pub fn passed(&self) -> bool {
        self.verdict == "PASS"
    }
}

pub fn format_row(row: &Row) -> String {
    let mut s = String::new();
    for (k, (j, a)) in row.coeffs.iter().enumerate() {
        let (sign, mag) = if a.is_negative() { ("-", a.abs()) } else { ("+", a.clone()) };
        if k == 0 {
            if sign == "-" {
                s.push('-');
            }
        } else {
            s.push_str(&format!(" {sign} "));
        }
        if !mag.is_one() {
            s.push_str(&format!("{mag} "));
        }
        s.push_str(&format!("x{j}"));
    }
    if s.is_empty() {
        s.push('0');
    }
    let rel = match row.rel {
        Relation::Le => "<=",
        Relation::Eq => "=",
    };
    format!("{s} {rel} {}", row.rhs)
}

fn dense(row: &Row, dim: usize) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); dim];
    for (&j, a) in &row.coeffs {
        v[j] = a.clone();
    }
    v
}

fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Fails with [`Error::Unbounded`] if the lifted system is unbounded.
fn check_bounded(ef: &ExtendedFormulation, solver: &mut LpSolver) -> Result<usize> {
    let n = ef.num_vars();
    let lower = implied_lower_bounds(&ef.system);
    let mut solves = 0;
    let mut objectives = Vec::new();
    let sum: Vec<Rational> = (0..n)
        .map(|j| if lower[j].is_some() { Rational::one() } else { Rational::zero() })
        .collect();
    if sum.iter().any(|c| !c.is_zero()) {
        objectives.push(sum);
    }
    for j in (0..n).filter(|&j| lower[j].is_none()) {
        for s in [1i64, -1] {
            let mut c = vec![Rational::zero(); n];
            c[j] = Rational::from(s);
            objectives.push(c);
        }
    }
    for c in objectives {
        solves += 1;
        if solver.maximize(&c).status == LpStatus::Unbounded {
            return Err(Error::Unbounded);
        }
    }
    Ok(solves)
}

fn lifts(ef: &ExtendedFormulation, point: &[Rational]) -> bool {
    let mut sys: LinearSystem = ef.system.clone();
    for (t, row) in ef.projection.matrix.iter().enumerate() {
        sys.add_row(
            row.iter().map(|(&j, a)| (j, a.clone())),
            Relation::Eq,
            &point[t] - &ef.projection.offset[t],
        );
    }
    LpSolver::new(&sys).is_feasible()
}

/// Certifies that `ef` describes the empty set: PASS iff its system is infeasible.
pub fn verify_empty(ef: &ExtendedFormulation) -> Result<EfReport> {
    ef.validate()?;
    let feasible = LpSolver::new(&ef.system).is_feasible();
    Ok(EfReport {
        verdict: if feasible { "FAIL" } else { "PASS" },
        ef_size: ef.size(),
        ef_vars: ef.num_vars(),
        num_points: 0,
        num_vertices: 0,
        hull_facets: 0,
        hull_equalities: 0,
        lp_solves: 1,
        feasible,
        violations: Vec::new(),
        unlifted: Vec::new(),
    })
}

pub fn verify_ef(ef: &ExtendedFormulation, expected: &VRep) -> Result<EfReport> {
    ef.validate()?;
    if ef.target_dim != expected.dim() {
        return Err(Error::DimensionMismatch(format!(
            "formulation has target dimension {}, points have dimension {}",
            ef.target_dim,
            expected.dim()
        )));
    }
    let h = hull(expected)?;
    let vertices = h.vertex_indices(expected.len());
    let mut report = EfReport {
        verdict: "FAIL",
        ef_size: ef.size(),
        ef_vars: ef.num_vars(),
        num_points: expected.len(),
        num_vertices: vertices.len(),
        hull_facets: h.facets.len(),
        hull_equalities: h.equalities.len(),
        lp_solves: 1,
        feasible: false,
        violations: Vec::new(),
        unlifted: Vec::new(),
    };
    let mut solver = LpSolver::new(&ef.system);
    if !solver.is_feasible() {
        report.unlifted = vertices.iter().map(|&i| expected.points()[i].clone()).collect();
        return Ok(report);
    }
    report.feasible = true;
    report.lp_solves += check_bounded(ef, &mut solver)?;

    let d = expected.dim();
    let n = ef.num_vars();
    let mut checks: Vec<(&Row, &'static str, Vec<Rational>, Rational)> = Vec::new();
    for row in &h.facets {
        checks.push((row, "facet", dense(row, d), row.rhs.clone()));
    }
    for row in &h.equalities {
        checks.push((row, "equality-max", dense(row, d), row.rhs.clone()));
        let neg: Vec<Rational> = dense(row, d).iter().map(|a| -a).collect();
        checks.push((row, "equality-min", neg, -&row.rhs));
    }
    let mut reached: HashSet<Vec<Rational>> = HashSet::new();
    let record = |y: &[Rational], reached: &mut HashSet<Vec<Rational>>| {
        if ef.system.is_satisfied(y) {
            reached.insert(ef.project(y));
        }
    };
    for (row, kind, a, b) in checks {
        let (c, c0) = ef.projection.pullback(&a, n);
        let out = solver.maximize(&c);
        report.lp_solves += 1;
        let y = match out.status {
            LpStatus::Optimal => out.witness.unwrap(),
            LpStatus::Unbounded => return Err(Error::Unbounded),
            LpStatus::Infeasible => unreachable!("feasibility established above"),
        };
        record(&y, &mut reached);
        let value = out.value.unwrap() + c0;
        if value > b {
            let bound = if kind == "equality-min" { -&b } else { b };
            let lp_value = if kind == "equality-min" { -&value } else { value };
            report.violations.push(FacetViolation {
                row: format_row(row),
                kind,
                bound,
                lp_value,
                witness: ef.project(&y),
            });
        }
    }

    if report.violations.is_empty() {
        let mut tight: Vec<Vec<usize>> = vec![Vec::new(); expected.len()];
        for (f, pts) in h.incidence.iter().enumerate() {
            for &p in pts {
                tight[p].push(f);
            }
        }
        for &i in &vertices {
            let v = &expected.points()[i];
            if reached.contains(v) {
                continue;
            }
            let mut w = vec![Rational::zero(); d];
            for &f in &tight[i] {
                for (&j, a) in &h.facets[f].coeffs {
                    w[j] += a;
                }
            }
            let (c, c0) = ef.projection.pullback(&w, n);
            let out = solver.maximize(&c);
            report.lp_solves += 1;
            if let Some(y) = &out.witness {
                record(y, &mut reached);
            }
            if out.value.map(|val| val + c0) != Some(dot(&w, v)) {
                report.unlifted.push(v.clone());
            }
        }
    } else {
        for &i in &vertices {
            report.lp_solves += 1;
            if !lifts(ef, &expected.points()[i]) {
                report.unlifted.push(expected.points()[i].clone());
            }
        }
    }
    if report.violations.is_empty() && report.unlifted.is_empty() {
        report.verdict = "PASS";
    }
    Ok(report)
}
