use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::Graph;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Path,
    Cycle,
    Complete,
    /// `star L`: hub 0 with `L` leaves.
    Star,
    /// `grid R C`: row-major numbering.
    Grid,
    /// Clique with every edge replaced by a path of length 3.
    SubdividedClique,
    Petersen,
    /// `random_planar N SEED`: stacked triangulation with edges thinned at
    /// random while keeping the graph connected.
    RandomPlanar,
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "path" => Family::Path,
            "cycle" => Family::Cycle,
            "complete" => Family::Complete,
            "star" => Family::Star,
            "grid" => Family::Grid,
            "subdivided_clique" => Family::SubdividedClique,
            "petersen" => Family::Petersen,
            "random_planar" => Family::RandomPlanar,
            other => return Err(Error::UnknownFamily(other.to_string())),
        })
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Family::Path => "path",
            Family::Cycle => "cycle",
            Family::Complete => "complete",
            Family::Star => "star",
            Family::Grid => "grid",
            Family::SubdividedClique => "subdivided_clique",
            Family::Petersen => "petersen",
            Family::RandomPlanar => "random_planar",
        };
        f.write_str(s)
    }
}

fn arity(family: Family, params: &[usize], want: usize) -> Result<()> {
    if params.len() != want {
        return Err(Error::InvalidParameter(format!(
            "{family} takes {want} parameter(s), got {}",
            params.len()
        )));
    }
    if params.iter().take(want.min(2)).any(|&p| p == 0) && family != Family::RandomPlanar {
        return Err(Error::InvalidParameter(format!("{family}: sizes must be positive")));
    }
    Ok(())
}

pub fn generate_family(family: Family, params: &[usize]) -> Result<Graph> {
    let edges: Vec<(usize, usize)>;
    let n;
    match family {
        Family::Path => {
            arity(family, params, 1)?;
            n = params[0];
            edges = (1..n).map(|v| (v - 1, v)).collect();
        }
        Family::Cycle => {
            arity(family, params, 1)?;
            n = params[0];
            if n < 3 {
                return Err(Error::InvalidParameter("cycle needs at least 3 vertices".into()));
            }
            edges = (0..n).map(|v| (v, (v + 1) % n)).collect();
        }
        Family::Complete => {
            arity(family, params, 1)?;
            n = params[0];
            edges = (0..n)
                .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
                .collect();
        }
        Family::Star => {
            arity(family, params, 1)?;
            n = params[0] + 1;
            edges = (1..n).map(|v| (0, v)).collect();
        }
        Family::Grid => {
            arity(family, params, 2)?;
            let (r, c) = (params[0], params[1]);
            n = r * c;
            let mut e = Vec::new();
            for i in 0..r {
                for j in 0..c {
                    let v = i * c + j;
                    if j + 1 < c {
                        e.push((v, v + 1));
                    }
                    if i + 1 < r {
                        e.push((v, v + c));
                    }
                }
            }
            edges = e;
        }
        Family::SubdividedClique => {
            arity(family, params, 1)?;
            let k = params[0];
            let pairs: Vec<(usize, usize)> = (0..k)
                .flat_map(|u| (u + 1..k).map(move |v| (u, v)))
                .collect();
            n = k + 2 * pairs.len();
            let mut e = Vec::new();
            for (idx, &(u, v)) in pairs.iter().enumerate() {
                let a = k + 2 * idx;
                let b = a + 1;
                e.extend([(u, a), (a, b), (b, v)]);
            }
            edges = e;
        }
        Family::Petersen => {
            arity(family, params, 0)?;
            n = 10;
            let mut e = Vec::new();
            for i in 0..5 {
                e.push((i, (i + 1) % 5));
                e.push((i, i + 5));
                e.push((5 + i, 5 + (i + 2) % 5));
            }
            edges = e;
        }
        Family::RandomPlanar => {
            arity(family, params, 2)?;
            n = params[0];
            if n < 3 {
                return Err(Error::InvalidParameter("random_planar needs n >= 3".into()));
            }
            return Ok(random_planar(n, params[1] as u64));
        }
    }
    Graph::from_edges(n, &edges)
}

fn random_planar(n: usize, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = vec![(0, 1), (1, 2), (0, 2)];
    let mut faces = vec![(0, 1, 2)];
    for v in 3..n {
        let f = rng.gen_range(0..faces.len());
        let (a, b, c) = faces.swap_remove(f);
        edges.extend([(a, v), (b, v), (c, v)]);
        faces.extend([(a, b, v), (b, c, v), (a, c, v)]);
    }
    edges.shuffle(&mut rng);
    let mut kept = edges.clone();
    for e in edges {
        if rng.gen_bool(1.0 / 3.0) {
            let trial: Vec<_> = kept.iter().copied().filter(|&x| x != e).collect();
            let g = Graph::from_edges(n, &trial).expect("subgraph of a simple graph");
            if g.is_connected() {
                kept = trial;
            }
        }
    }
    Graph::from_edges(n, &kept).expect("subgraph of a simple graph")
}
