//! Exact rational linear programming.
//!
//! A revised primal simplex over the standard form `A x = b, x >= 0`, with
//! the basis inverse kept in product form (an eta file) and periodically
//! refactored. Entering columns are chosen by Dantzig's rule over a rotating
//! window of columns; after a run of
//! degenerate pivots the solver switches to Bland's smallest-index rule until
//! the objective moves again, which rules out cycling. There is no floating
//! point anywhere.
//!
//! [`LpSolver`] keeps its basis between calls, so a sequence of objectives
//! over the same system only pays for phase 1 once.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use super::linsys::{LinearSystem, Relation};
use crate::rational::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LpOutcome {
    pub status: LpStatus,
    pub value: Option<Rational>,
    pub witness: Option<Vec<Rational>>,
}

/// Maximises `objective · x` over `sys`.
pub fn lp_max(sys: &LinearSystem, objective: &[Rational]) -> LpOutcome {
    LpSolver::new(sys).maximize(objective)
}

/// Lower bounds implied by single-variable rows `a·x_j <= b` with `a < 0`.
pub fn implied_lower_bounds(sys: &LinearSystem) -> Vec<Option<Rational>> {
    let mut lb: Vec<Option<Rational>> = vec![None; sys.num_vars];
    for row in &sys.rows {
        if row.rel != Relation::Le || row.coeffs.len() != 1 {
            continue;
        }
        let (&j, a) = row.coeffs.iter().next().unwrap();
        if a.is_negative() {
            let bound = &row.rhs / a;
            if lb[j].as_ref().map_or(true, |cur| bound > *cur) {
                lb[j] = Some(bound);
            }
        }
    }
    lb
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum ColKind {
    /// `x_var = lb + col`.
    Shifted(usize),
    Plus(usize),
    Minus(usize),
    Slack,
    Artificial,
}

struct Eta {
    row: usize,
    pivot: Rational,
    others: Vec<(usize, Rational)>,
}

const REFACTOR_EVERY: usize = 100;
const DEGENERATE_RUN: usize = 30;
const PRICE_CHUNK_MIN: usize = 256;

pub struct LpSolver {
    num_vars: usize,
    lower: Vec<Option<Rational>>,
    plus_col: Vec<usize>,
    minus_col: Vec<Option<usize>>,
    m: usize,
    cols: Vec<Vec<(usize, Rational)>>,
    kind: Vec<ColKind>,
    b: Vec<Rational>,
    basis: Vec<usize>,
    position: Vec<Option<usize>>,
    x_b: Vec<Rational>,
    etas: Vec<Eta>,
    pivots_since_refactor: usize,
    /// Nonzeros in the etas from the last refactor, and in those pushed since.
    base_nnz: usize,
    pivot_nnz: usize,
    /// Where the next partial pricing pass starts.
    price_from: usize,
    /// `None` until phase 1 has run; then whether the system is feasible.
    feasible: Option<bool>,
    pub pivots: u64,
}

enum Step {
    Optimal,
    Unbounded,
}

impl LpSolver {
    pub fn new(sys: &LinearSystem) -> Self {
        let n = sys.num_vars;
        let lower = implied_lower_bounds(sys);
        let mut kind = Vec::new();
        let mut plus_col = vec![0; n];
        let mut minus_col = vec![None; n];
        for j in 0..n {
            plus_col[j] = kind.len();
            if lower[j].is_some() {
                kind.push(ColKind::Shifted(j));
            } else {
                kind.push(ColKind::Plus(j));
                minus_col[j] = Some(kind.len());
                kind.push(ColKind::Minus(j));
            }
        }
        let mut cols: Vec<Vec<(usize, Rational)>> = vec![Vec::new(); kind.len()];
        let mut b = Vec::new();
        let mut basic_slack = Vec::new();
        let mut m = 0;
        for row in &sys.rows {
            let is_bound = row.rel == Relation::Le
                && row.coeffs.len() == 1
                && row.coeffs.values().next().unwrap().is_negative();
            if is_bound {
                continue;
            }
            let mut rhs = row.rhs.clone();
            for (&j, a) in &row.coeffs {
                if let Some(l) = &lower[j] {
                    rhs -= &(a * l);
                }
            }
            let flip = rhs.is_negative();
            let sign = |a: &Rational| if flip { -a } else { a.clone() };
            for (&j, a) in &row.coeffs {
                cols[plus_col[j]].push((m, sign(a)));
                if let Some(mc) = minus_col[j] {
                    cols[mc].push((m, -sign(a)));
                }
            }
            if row.rel == Relation::Le {
                let s = cols.len();
                cols.push(vec![(m, if flip { Rational::from(-1) } else { Rational::one() })]);
                kind.push(ColKind::Slack);
                basic_slack.push(if flip { None } else { Some(s) });
            } else {
                basic_slack.push(None);
            }
            b.push(if flip { -rhs } else { rhs });
            m += 1;
        }
        let mut basis = Vec::with_capacity(m);
        for (r, slack) in basic_slack.into_iter().enumerate() {
            match slack {
                Some(s) => basis.push(s),
                None => {
                    basis.push(cols.len());
                    cols.push(vec![(r, Rational::one())]);
                    kind.push(ColKind::Artificial);
                }
            }
        }
        let mut position = vec![None; cols.len()];
        for (r, &c) in basis.iter().enumerate() {
            position[c] = Some(r);
        }
        let x_b = b.clone();
        LpSolver {
            num_vars: n,
            lower,
            plus_col,
            minus_col,
            m,
            cols,
            kind,
            b,
            basis,
            position,
            x_b,
            etas: Vec::new(),
            pivots_since_refactor: 0,
            base_nnz: 0,
            pivot_nnz: 0,
            price_from: 0,
            feasible: None,
            pivots: 0,
        }
    }

    pub fn num_rows(&self) -> usize {
        self.m
    }

    pub fn num_cols(&self) -> usize {
        self.cols.len()
    }

    fn ftran_dense(&self, mut v: Vec<Rational>) -> Vec<Rational> {
        for eta in &self.etas {
            if v[eta.row].is_zero() {
                continue;
            }
            let t = &v[eta.row] / &eta.pivot;
            for (i, a) in &eta.others {
                let d = a * &t;
                v[*i] -= &d;
            }
            v[eta.row] = t;
        }
        v
    }

    fn ftran(&self, col: &[(usize, Rational)]) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); self.m];
        for (i, a) in col {
            v[*i] = a.clone();
        }
        self.ftran_dense(v)
    }

    /// `ftran` through an eta file holding at most one eta per row, visiting
    /// only the etas whose row becomes nonzero. `eta_of_row[r]` is the index
    /// of the eta pivoting on `r`. `work` must be all zero on entry and is
    /// left all zero; the result lists the nonzero entries.
    fn ftran_sparse(
        &self,
        col: &[(usize, Rational)],
        eta_of_row: &[usize],
        work: &mut [Rational],
        mark: &mut [bool],
    ) -> Vec<(usize, Rational)> {
        let mut touched: Vec<usize> = Vec::with_capacity(col.len());
        let mut pending = BinaryHeap::new();
        for (i, a) in col {
            work[*i] = a.clone();
            mark[*i] = true;
            touched.push(*i);
            if eta_of_row[*i] != usize::MAX {
                pending.push(Reverse(eta_of_row[*i]));
            }
        }
        while let Some(Reverse(e)) = pending.pop() {
            let eta = &self.etas[e];
            if work[eta.row].is_zero() {
                continue;
            }
            let t = &work[eta.row] / &eta.pivot;
            for (i, a) in &eta.others {
                let d = a * &t;
                work[*i] -= &d;
                if !mark[*i] {
                    mark[*i] = true;
                    touched.push(*i);
                    if eta_of_row[*i] != usize::MAX && eta_of_row[*i] > e {
                        pending.push(Reverse(eta_of_row[*i]));
                    }
                }
            }
            work[eta.row] = t;
        }
        touched.sort_unstable();
        let mut out = Vec::new();
        for i in touched {
            mark[i] = false;
            let v = std::mem::replace(&mut work[i], Rational::zero());
            if !v.is_zero() {
                out.push((i, v));
            }
        }
        out
    }

    fn btran(&self, mut u: Vec<Rational>) -> Vec<Rational> {
        for eta in self.etas.iter().rev() {
            let mut acc = u[eta.row].clone();
            for (i, a) in &eta.others {
                if !u[*i].is_zero() {
                    acc -= &(&u[*i] * a);
                }
            }
            u[eta.row] = if acc.is_zero() { acc } else { &acc / &eta.pivot };
        }
        u
    }

    fn push_eta(&mut self, row: usize, alpha: &[Rational]) {
        let others = alpha
            .iter()
            .enumerate()
            .filter(|(i, a)| *i != row && !a.is_zero())
            .map(|(i, a)| (i, a.clone()))
            .collect();
        self.etas.push(Eta {
            row,
            pivot: alpha[row].clone(),
            others,
        });
    }

    fn eta_nnz(&self) -> usize {
        self.etas.iter().map(|e| e.others.len() + 1).sum()
    }

    fn push_sparse_eta(&mut self, row: usize, alpha: Vec<(usize, Rational)>) {
        let mut pivot = Rational::zero();
        let mut others = Vec::with_capacity(alpha.len().saturating_sub(1));
        for (i, a) in alpha {
            if i == row {
                pivot = a;
            } else {
                others.push((i, a));
            }
        }
        self.etas.push(Eta { row, pivot, others });
    }

    /// Rebuilds the eta file from the current basis columns, pivoting row
    /// singletons first so that triangular parts of the basis cause no fill.
    fn refactor(&mut self) {
        self.etas.clear();
        let m = self.m;
        let slots = self.basis.clone();
        let mut row_cnt = vec![0usize; m];
        let mut row_slots: Vec<Vec<usize>> = vec![Vec::new(); m];
        for (slot, &c) in slots.iter().enumerate() {
            for (i, _) in &self.cols[c] {
                row_cnt[*i] += 1;
                row_slots[*i].push(slot);
            }
        }
        let mut slot_done = vec![false; m];
        let mut row_used = vec![false; m];
        let mut new_basis = vec![usize::MAX; m];
        let mut work = vec![Rational::zero(); m];
        let mut mark = vec![false; m];
        let mut eta_of_row = vec![usize::MAX; m];
        let mut singles: Vec<usize> = (0..m).filter(|&r| row_cnt[r] == 1).collect();
        let mut by_len: Vec<usize> = (0..m).collect();
        by_len.sort_by_key(|&s| (self.cols[slots[s]].len(), s));
        let mut next_long = 0;
        for _ in 0..m {
            let mut pick = None;
            while let Some(r) = singles.pop() {
                if row_used[r] || row_cnt[r] != 1 {
                    continue;
                }
                let slot = *row_slots[r].iter().find(|&&s| !slot_done[s]).unwrap();
                let alpha = self.ftran_sparse(&self.cols[slots[slot]], &eta_of_row, &mut work, &mut mark);
                if alpha.iter().any(|(i, _)| *i == r) {
                    pick = Some((slot, r, alpha));
                    break;
                }
            }
            let (slot, r, alpha) = match pick {
                Some(p) => p,
                None => {
                    while slot_done[by_len[next_long]] {
                        next_long += 1;
                    }
                    let slot = by_len[next_long];
                    let alpha = self.ftran_sparse(&self.cols[slots[slot]], &eta_of_row, &mut work, &mut mark);
                    let r = alpha
                        .iter()
                        .map(|(i, _)| *i)
                        .filter(|&i| !row_used[i])
                        .min_by_key(|&i| (row_cnt[i], i))
                        .expect("basis matrix is nonsingular");
                    (slot, r, alpha)
                }
            };
            eta_of_row[r] = self.etas.len();
            self.push_sparse_eta(r, alpha);
            slot_done[slot] = true;
            row_used[r] = true;
            new_basis[r] = slots[slot];
            for (i, _) in &self.cols[slots[slot]] {
                row_cnt[*i] -= 1;
                if row_cnt[*i] == 1 && !row_used[*i] {
                    singles.push(*i);
                }
            }
        }
        self.basis = new_basis;
        for p in self.position.iter_mut() {
            *p = None;
        }
        for (r, &c) in self.basis.iter().enumerate() {
            self.position[c] = Some(r);
        }
        self.x_b = self.ftran_dense(self.b.clone());
        self.pivots_since_refactor = 0;
        self.base_nnz = self.eta_nnz();
        self.pivot_nnz = 0;
    }

    fn pivot(&mut self, entering: usize, row: usize, alpha: &[Rational]) {
        let theta = &self.x_b[row] / &alpha[row];
        if !theta.is_zero() {
            for (i, a) in alpha.iter().enumerate() {
                if i != row && !a.is_zero() {
                    let d = a * &theta;
                    self.x_b[i] -= &d;
                }
            }
        }
        self.x_b[row] = theta;
        let leaving = self.basis[row];
        self.position[leaving] = None;
        self.position[entering] = Some(row);
        self.basis[row] = entering;
        self.push_eta(row, alpha);
        self.pivot_nnz += self.etas.last().map_or(0, |e| e.others.len() + 1);
        self.pivots += 1;
        self.pivots_since_refactor += 1;
        if self.pivots_since_refactor >= REFACTOR_EVERY || self.pivot_nnz > self.base_nnz + self.m {
            self.refactor();
        }
    }

    fn enterable(&self, j: usize, allow_artificial: bool) -> bool {
        self.position[j].is_none() && (allow_artificial || self.kind[j] != ColKind::Artificial)
    }

    /// Primal simplex on costs `c` from the current (feasible) basis.
    fn run(&mut self, c: &[Rational], allow_artificial: bool) -> Step {
        let mut degenerate = 0usize;
        loop {
            let cb: Vec<Rational> = self.basis.iter().map(|&j| c[j].clone()).collect();
            let y = self.btran(cb);
            let bland = degenerate >= DEGENERATE_RUN;
            let mut entering: Option<(usize, Rational)> = None;
            let ncols = self.cols.len();
            let start = if bland { 0 } else { self.price_from % ncols.max(1) };
            let chunk = (ncols / 8).max(PRICE_CHUNK_MIN);
            for step in 0..ncols {
                if !bland && step >= chunk && entering.is_some() {
                    self.price_from = start + step;
                    break;
                }
                let j = (start + step) % ncols;
                if !self.enterable(j, allow_artificial) {
                    continue;
                }
                let mut d = c[j].clone();
                for (i, a) in &self.cols[j] {
                    if !y[*i].is_zero() {
                        d -= &(&y[*i] * a);
                    }
                }
                if d.is_positive() {
                    if bland {
                        entering = Some((j, d));
                        break;
                    }
                    if entering.as_ref().map_or(true, |(_, best)| d > *best) {
                        entering = Some((j, d));
                    }
                }
            }
            let Some((q, _)) = entering else {
                return Step::Optimal;
            };
            let alpha = self.ftran(&self.cols[q]);
            let mut leave: Option<(usize, Rational)> = None;
            for (i, a) in alpha.iter().enumerate() {
                if !a.is_positive() {
                    continue;
                }
                let ratio = &self.x_b[i] / a;
                let better = match &leave {
                    None => true,
                    Some((r, best)) => {
                        ratio < *best || (ratio == *best && self.basis[i] < self.basis[*r])
                    }
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            let Some((r, ratio)) = leave else {
                return Step::Unbounded;
            };
            if ratio.is_zero() {
                degenerate += 1;
            } else {
                degenerate = 0;
            }
            self.pivot(q, r, &alpha);
        }
    }

    fn phase_one(&mut self) -> bool {
        if let Some(f) = self.feasible {
            return f;
        }
        let c: Vec<Rational> = self
            .kind
            .iter()
            .map(|k| match k {
                ColKind::Artificial => Rational::from(-1),
                _ => Rational::zero(),
            })
            .collect();
        match self.run(&c, true) {
            Step::Optimal => {}
            Step::Unbounded => unreachable!("phase 1 objective is bounded"),
        }
        let infeasible = (0..self.m)
            .any(|r| self.kind[self.basis[r]] == ColKind::Artificial && !self.x_b[r].is_zero());
        if infeasible {
            self.feasible = Some(false);
            return false;
        }
        // Drive zero-level artificials out where a structural column can replace them.
        for r in 0..self.m {
            if self.kind[self.basis[r]] != ColKind::Artificial {
                continue;
            }
            let mut e = vec![Rational::zero(); self.m];
            e[r] = Rational::one();
            let rho = self.btran(e);
            let replacement = (0..self.cols.len()).find(|&j| {
                self.enterable(j, false)
                    && self.cols[j]
                        .iter()
                        .any(|(i, _)| !rho[*i].is_zero())
                    && !self.cols[j]
                        .iter()
                        .map(|(i, a)| &rho[*i] * a)
                        .sum::<Rational>()
                        .is_zero()
            });
            if let Some(j) = replacement {
                let alpha = self.ftran(&self.cols[j]);
                self.pivot(j, r, &alpha);
            }
        }
        self.feasible = Some(true);
        true
    }

    pub fn is_feasible(&mut self) -> bool {
        self.phase_one()
    }

    /// Maximises `objective · x`, warm-starting from the previous basis.
    pub fn maximize(&mut self, objective: &[Rational]) -> LpOutcome {
        assert_eq!(objective.len(), self.num_vars, "objective length");
        if !self.phase_one() {
            return LpOutcome {
                status: LpStatus::Infeasible,
                value: None,
                witness: None,
            };
        }
        let mut c = vec![Rational::zero(); self.cols.len()];
        let mut constant = Rational::zero();
        for (j, cj) in objective.iter().enumerate() {
            if cj.is_zero() {
                continue;
            }
            c[self.plus_col[j]] = cj.clone();
            if let Some(mc) = self.minus_col[j] {
                c[mc] = -cj;
            }
            if let Some(l) = &self.lower[j] {
                constant += &(cj * l);
            }
        }
        match self.run(&c, false) {
            Step::Unbounded => LpOutcome {
                status: LpStatus::Unbounded,
                value: None,
                witness: None,
            },
            Step::Optimal => {
                let witness = self.current_point();
                let value: Rational = objective
                    .iter()
                    .zip(&witness)
                    .map(|(c, x)| c * x)
                    .sum();
                let from_basis: Rational = self
                    .basis
                    .iter()
                    .zip(&self.x_b)
                    .map(|(&j, x)| &c[j] * x)
                    .sum::<Rational>()
                    + constant;
                debug_assert_eq!(value, from_basis);
                LpOutcome {
                    status: LpStatus::Optimal,
                    value: Some(value),
                    witness: Some(witness),
                }
            }
        }
    }

    /// The basic solution in the original variables.
    pub fn current_point(&self) -> Vec<Rational> {
        let val = |col: usize| match self.position[col] {
            Some(r) => self.x_b[r].clone(),
            None => Rational::zero(),
        };
        (0..self.num_vars)
            .map(|j| {
                let mut x = val(self.plus_col[j]);
                if let Some(mc) = self.minus_col[j] {
                    x -= &val(mc);
                }
                if let Some(l) = &self.lower[j] {
                    x += l;
                }
                x
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polytope::linsys::LinearSystem;
    use proptest::prelude::*;

    fn q(n: i64) -> Rational {
        Rational::from(n)
    }

    fn sys(num_vars: usize, rows: &[(&[(usize, i64)], Relation, i64)]) -> LinearSystem {
        let mut s = LinearSystem::new(num_vars);
        for (terms, rel, rhs) in rows {
            s.add_row(terms.iter().map(|&(j, a)| (j, q(a))), *rel, q(*rhs));
        }
        s
    }

    #[test]
    fn basic_statuses() {
        use Relation::*;
        let s = sys(1, &[(&[(0, 1)], Le, 1), (&[(0, -1)], Le, 0)]);
        let out = lp_max(&s, &[q(1)]);
        assert_eq!(out.status, LpStatus::Optimal);
        assert_eq!(out.value, Some(q(1)));
        assert_eq!(out.witness, Some(vec![q(1)]));

        let s = sys(1, &[(&[(0, 1)], Le, -1), (&[(0, -1)], Le, -2)]);
        assert_eq!(lp_max(&s, &[q(1)]).status, LpStatus::Infeasible);

        let s = sys(1, &[(&[(0, -1)], Le, 0)]);
        assert_eq!(lp_max(&s, &[q(1)]).status, LpStatus::Unbounded);
    }

    #[test]
    fn free_variables_and_equalities() {
        use Relation::*;
        // x + y = 3, x - y <= 1, y <= 5, maximise x: optimum x = 2, y = 1.
        let s = sys(2, &[(&[(0, 1), (1, 1)], Eq, 3), (&[(0, 1), (1, -1)], Le, 1), (&[(1, 1)], Le, 5)]);
        let out = lp_max(&s, &[q(1), q(0)]);
        assert_eq!(out.value, Some(q(2)));
        assert!(s.is_satisfied(out.witness.as_ref().unwrap()));
        // Minimising x drives y to its upper bound.
        let out = lp_max(&s, &[q(-1), q(0)]);
        assert_eq!(out.value, Some(q(2)));
    }

    #[test]
    fn redundant_equalities_keep_working() {
        use Relation::*;
        let s = sys(
            2,
            &[
                (&[(0, 1), (1, 1)], Eq, 1),
                (&[(0, 2), (1, 2)], Eq, 2),
                (&[(0, -1)], Le, 0),
                (&[(1, -1)], Le, 0),
            ],
        );
        let mut solver = LpSolver::new(&s);
        assert_eq!(solver.maximize(&[q(1), q(0)]).value, Some(q(1)));
        assert_eq!(solver.maximize(&[q(0), q(1)]).value, Some(q(1)));
        assert_eq!(solver.maximize(&[q(-1), q(-3)]).value, Some(q(-1)));
    }

    #[test]
    fn fractional_optimum() {
        use Relation::*;
        // 2x + 3y <= 6, 3x + 2y <= 6, x, y >= 0: max x + y = 12/5.
        let s = sys(
            2,
            &[(&[(0, 2), (1, 3)], Le, 6), (&[(0, 3), (1, 2)], Le, 6), (&[(0, -1)], Le, 0), (&[(1, -1)], Le, 0)],
        );
        let out = lp_max(&s, &[q(1), q(1)]);
        assert_eq!(out.value, Some(Rational::new(12, 5)));
    }

    /// Brute-force oracle for 2-variable LPs: the optimum of a bounded,
    /// feasible LP is attained at an intersection of two constraint lines.
    fn brute_force_2d(rows: &[(i64, i64, i64)], c: (i64, i64)) -> Option<Rational> {
        let mut best: Option<Rational> = None;
        for (i, &(a1, b1, r1)) in rows.iter().enumerate() {
            for &(a2, b2, r2) in &rows[i + 1..] {
                let det = a1 * b2 - a2 * b1;
                if det == 0 {
                    continue;
                }
                let x = Rational::new(r1 * b2 - r2 * b1, det);
                let y = Rational::new(a1 * r2 - a2 * r1, det);
                let ok = rows
                    .iter()
                    .all(|&(a, b, r)| &(&q(a) * &x) + &(&q(b) * &y) <= q(r));
                if ok {
                    let v = &(&q(c.0) * &x) + &(&q(c.1) * &y);
                    if best.as_ref().map_or(true, |b| v > *b) {
                        best = Some(v);
                    }
                }
            }
        }
        best
    }

    proptest! {
        #[test]
        fn agrees_with_vertex_enumeration(
            extra in proptest::collection::vec((-5i64..=5, -5i64..=5, -3i64..=12), 1..6),
            c in (-4i64..=4, -4i64..=4),
        ) {
            // Box [-10, 10]^2 keeps every instance bounded.
            let mut rows: Vec<(i64, i64, i64)> = vec![(1, 0, 10), (-1, 0, 10), (0, 1, 10), (0, -1, 10)];
            rows.extend(extra.into_iter().filter(|&(a, b, _)| a != 0 || b != 0));
            let mut s = LinearSystem::new(2);
            for &(a, b, r) in &rows {
                s.add_row([(0, q(a)), (1, q(b))], Relation::Le, q(r));
            }
            let out = lp_max(&s, &[q(c.0), q(c.1)]);
            match brute_force_2d(&rows, c) {
                Some(v) => {
                    prop_assert_eq!(out.status, LpStatus::Optimal);
                    prop_assert_eq!(out.value.clone(), Some(v));
                    prop_assert!(s.is_satisfied(out.witness.as_ref().unwrap()));
                }
                None => prop_assert_eq!(out.status, LpStatus::Infeasible),
            }
        }

        #[test]
        fn argmax_invariant_under_positive_scaling(scale in 1i64..50, den in 1i64..7) {
            let k = Rational::new(scale, den);
            let mut s = LinearSystem::new(2);
            for (a, b, r) in [(2, 3, 6), (3, 2, 6), (-1, 0, 0), (0, -1, 0)] {
                s.add_row([(0, &q(a) * &k), (1, &q(b) * &k)], Relation::Le, &q(r) * &k);
            }
            let out = lp_max(&s, &[q(1), q(2)]);
            prop_assert_eq!(out.witness, Some(vec![q(0), q(2)]));
        }
    }
}
