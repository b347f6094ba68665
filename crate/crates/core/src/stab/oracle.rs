//! Brute-force enumeration of bounded-size independent sets.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::polytope::VRep;

/// Which cardinality constraint the polytope imposes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StabMode {
    Exact(usize),
    AtMost(usize),
}

impl StabMode {
    pub fn k(self) -> usize {
        match self {
            StabMode::Exact(k) | StabMode::AtMost(k) => k,
        }
    }

    pub fn admits(self, size: usize) -> bool {
        match self {
            StabMode::Exact(k) => size == k,
            StabMode::AtMost(k) => size <= k,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            StabMode::Exact(_) => "exact",
            StabMode::AtMost(_) => "atmost",
        }
    }

    /// Parses `exact` / `atmost` together with a separately supplied `k`.
    pub fn parse(mode: &str, k: usize) -> Result<Self> {
        match mode {
            "exact" => Ok(StabMode::Exact(k)),
            "atmost" | "at-most" | "le" => Ok(StabMode::AtMost(k)),
            other => Err(Error::InvalidParameter(format!("unknown mode `{other}`"))),
        }
    }
}

impl fmt::Display for StabMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({})", self.name(), self.k())
    }
}

impl FromStr for StabMode {
    type Err = Error;

    /// Accepts `exact(3)` or `atmost(3)`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (name, rest) = s
            .split_once('(')
            .ok_or_else(|| Error::InvalidParameter(format!("bad mode `{s}`")))?;
        let k = rest
            .strip_suffix(')')
            .and_then(|x| x.trim().parse().ok())
            .ok_or_else(|| Error::InvalidParameter(format!("bad mode `{s}`")))?;
        StabMode::parse(name.trim(), k)
    }
}

pub const ORACLE_CAP: usize = 2_000_000;

/// All independent sets admitted by `mode`, each sorted, in lexicographic order.
pub fn independent_sets(g: &Graph, mode: StabMode) -> Result<Vec<Vec<usize>>> {
    fn rec(
        g: &Graph,
        start: usize,
        cur: &mut Vec<usize>,
        mode: StabMode,
        out: &mut Vec<Vec<usize>>,
    ) -> Result<()> {
        if mode.admits(cur.len()) {
            if out.len() == ORACLE_CAP {
                return Err(Error::CapExceeded(format!("more than {ORACLE_CAP} independent sets")));
            }
            out.push(cur.clone());
        }
        if cur.len() == mode.k() {
            return Ok(());
        }
        for v in start..g.n() {
            if cur.iter().all(|&u| !g.has_edge(u, v)) {
                cur.push(v);
                rec(g, v + 1, cur, mode, out)?;
                cur.pop();
            }
        }
        Ok(())
    }
    let mut out = Vec::new();
    rec(g, 0, &mut Vec::new(), mode, &mut out)?;
    Ok(out)
}

/// Indicator vectors of [`independent_sets`]; fails with
/// [`Error::EmptyPolytope`] when there are none.
pub fn stab_vrep(g: &Graph, mode: StabMode) -> Result<VRep> {
    VRep::from_indicators(g.n(), independent_sets(g, mode)?)
}

/// Largest independent set size, capped at `cap`.
pub fn independence_number_capped(g: &Graph, cap: usize) -> usize {
    fn rec(g: &Graph, start: usize, cur: &mut Vec<usize>, cap: usize, best: &mut usize) {
        *best = (*best).max(cur.len());
        if *best >= cap {
            return;
        }
        for v in start..g.n() {
            if cur.iter().all(|&u| !g.has_edge(u, v)) {
                cur.push(v);
                rec(g, v + 1, cur, cap, best);
                cur.pop();
            }
        }
    }
    let mut best = 0;
    rec(g, 0, &mut Vec::new(), cap, &mut best);
    best.min(cap)
}
