//! Facet enumeration by the double-description method.
//!
//! The affine hull of the input is computed first and emitted as equality
//! rows; the points are then projected onto a set of coordinates on which the
//! hull is full-dimensional, and the cone of valid inequalities over those
//! coordinates is built incrementally, one point at a time. Ray arithmetic is
//! integral and runs in `i128` with overflow checks, restarting in `BigInt`
//! if any intermediate value overflows.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use super::linsys::{LinearSystem, Relation, Row};
use super::vrep::VRep;
use crate::error::{Error, Result};
use crate::rational::{common_denominator, Rational};

pub const MAX_HULL_DIM: usize = 20;
pub const MAX_HULL_POINTS: usize = 1000;

/// An H-description of `conv(points)` together with its point-facet incidences.
#[derive(Debug, Clone)]
pub struct Hull {
    pub dim: usize,
    /// Coordinates on which the hull is full-dimensional; every other
    /// coordinate is an affine function of these.
    pub free_coords: Vec<usize>,
    pub equalities: Vec<Row>,
    /// Rows `a·x <= b` with `a` supported on `free_coords` and integral.
    pub facets: Vec<Row>,
    /// `incidence[f]` lists the indices of the points tight at facet `f`.
    pub incidence: Vec<Vec<usize>>,
}

impl Hull {
    pub fn affine_dim(&self) -> usize {
        self.free_coords.len()
    }

    pub fn to_system(&self) -> LinearSystem {
        let mut sys = LinearSystem::new(self.dim);
        sys.rows.extend(self.equalities.iter().cloned());
        sys.rows.extend(self.facets.iter().cloned());
        sys
    }

    /// Indices of the points that are vertices of the hull: those whose tight
    /// facet normals have full rank on the free coordinates.
    pub fn vertex_indices(&self, num_points: usize) -> Vec<usize> {
        let mut tight: Vec<Vec<usize>> = vec![Vec::new(); num_points];
        for (f, pts) in self.incidence.iter().enumerate() {
            for &p in pts {
                tight[p].push(f);
            }
        }
        let r = self.affine_dim();
        (0..num_points)
            .filter(|&p| {
                let rows: Vec<Vec<Rational>> = tight[p]
                    .iter()
                    .map(|&f| {
                        self.free_coords
                            .iter()
                            .map(|c| self.facets[f].coeffs.get(c).cloned().unwrap_or_default())
                            .collect()
                    })
                    .collect();
                rank(rows) == r
            })
            .collect()
    }
}

/// `conv(points)` as a linear system (equalities first, then facets).
pub fn dd_hull(v: &VRep) -> Result<LinearSystem> {
    Ok(hull(v)?.to_system())
}

pub fn hull(v: &VRep) -> Result<Hull> {
    if v.is_empty() {
        return Err(Error::EmptyPolytope);
    }
    if v.dim() > MAX_HULL_DIM || v.len() > MAX_HULL_POINTS {
        return Err(Error::CapExceeded(format!(
            "hull of {} points in dimension {} (limits: {MAX_HULL_POINTS} points, dimension {MAX_HULL_DIM})",
            v.len(),
            v.dim()
        )));
    }
    let pts = v.points();
    let d = v.dim();
    let base = &pts[0];

    let mut diffs: Vec<Vec<Rational>> = pts[1..]
        .iter()
        .map(|p| p.iter().zip(base).map(|(a, b)| a - b).collect())
        .collect();
    let pivots = rref(&mut diffs);
    let mut equalities = Vec::new();
    let mut pivot_iter = pivots.iter().peekable();
    for f in 0..d {
        if pivot_iter.peek() == Some(&&f) {
            pivot_iter.next();
            continue;
        }
        let mut a: Vec<(usize, Rational)> = vec![(f, Rational::one())];
        for (k, &pc) in pivots.iter().enumerate() {
            if pc < f && !diffs[k][f].is_zero() {
                a.push((pc, -&diffs[k][f]));
            }
        }
        let scale = Rational::from(common_denominator(a.iter().map(|(_, c)| c)));
        let a: Vec<(usize, Rational)> = a.into_iter().map(|(j, c)| (j, &c * &scale)).collect();
        let rhs: Rational = a.iter().map(|(j, c)| c * &base[*j]).sum();
        equalities.push(Row::new(a, Relation::Eq, rhs));
    }

    let free = pivots;
    let r = free.len();
    let mut facets_inc: Vec<(Row, Vec<usize>)> = Vec::new();
    if r > 0 {
        let lifted: Vec<Vec<BigInt>> = pts
            .iter()
            .map(|p| {
                let coords: Vec<Rational> = std::iter::once(Rational::one())
                    .chain(free.iter().map(|&c| p[c].clone()))
                    .collect();
                integral(&coords)
            })
            .collect();
        let rays = match run_dd::<i128>(&lifted) {
            Some(rays) => rays.into_iter().map(|(v, z)| (v.into_iter().map(BigInt::from).collect(), z)).collect(),
            None => run_dd::<BigInt>(&lifted).expect("BigInt arithmetic cannot overflow"),
        };
        for (ray, zeros) in rays {
            // ray·(1, x_F) >= 0  <=>  -ray_F · x_F <= ray_0
            let coeffs = free.iter().zip(&ray[1..]).map(|(&c, h)| (c, Rational::from(-h)));
            let row = Row::new(coeffs, Relation::Le, Rational::from(ray[0].clone()));
            let inc = (0..pts.len()).filter(|&i| zeros[i / 64] >> (i % 64) & 1 == 1).collect();
            facets_inc.push((row, inc));
        }
    }
    facets_inc.sort_by(|a, b| row_key(&a.0).cmp(&row_key(&b.0)));
    equalities.sort_by_key(row_key);
    let (facets, incidence) = facets_inc.into_iter().unzip();
    Ok(Hull {
        dim: d,
        free_coords: free,
        equalities,
        facets,
        incidence,
    })
}

fn row_key(r: &Row) -> (Vec<(usize, Rational)>, Rational) {
    (r.coeffs.iter().map(|(&j, a)| (j, a.clone())).collect(), r.rhs.clone())
}

/// Reduced row echelon form in place; returns the pivot columns and
/// truncates `m` to its nonzero rows.
pub(crate) fn rref(m: &mut Vec<Vec<Rational>>) -> Vec<usize> {
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut row = 0;
    for c in 0..cols {
        let Some(p) = (row..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let inv = m[row][c].recip();
        for x in m[row].iter_mut() {
            *x *= &inv;
        }
        for i in 0..m.len() {
            if i != row && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in c..cols {
                    let d = &f * &m[row][j];
                    m[i][j] -= &d;
                }
            }
        }
        pivots.push(c);
        row += 1;
    }
    m.truncate(row);
    pivots
}

pub(crate) fn rank(mut rows: Vec<Vec<Rational>>) -> usize {
    rref(&mut rows).len()
}

fn integral(v: &[Rational]) -> Vec<BigInt> {
    let scale = Rational::from(common_denominator(v));
    let ints: Vec<BigInt> = v.iter().map(|x| (x * &scale).numer()).collect();
    let g = ints.iter().fold(BigInt::from(0), |g, x| Integer::gcd(&g, x));
    if g.is_zero() || g == BigInt::from(1) {
        ints
    } else {
        ints.into_iter().map(|x| x / &g).collect()
    }
}

trait DdInt: Clone + Sized {
    fn from_big(v: &BigInt) -> Option<Self>;
    fn zero() -> Self;
    fn signum(&self) -> i32;
    fn dot(a: &[Self], b: &[Self]) -> Option<Self>;
    /// `a*x - b*y`
    fn combine(a: &Self, x: &Self, b: &Self, y: &Self) -> Option<Self>;
    fn gcd_with(&self, other: &Self) -> Self;
    fn div_exact(&self, g: &Self) -> Self;
    fn is_one(&self) -> bool;
}

impl DdInt for i128 {
    fn from_big(v: &BigInt) -> Option<Self> {
        v.to_i128()
    }
    fn zero() -> Self {
        0
    }
    fn signum(&self) -> i32 {
        i128::signum(*self) as i32
    }
    fn dot(a: &[Self], b: &[Self]) -> Option<Self> {
        a.iter()
            .zip(b)
            .try_fold(0i128, |s, (x, y)| s.checked_add(x.checked_mul(*y)?))
    }
    fn combine(a: &Self, x: &Self, b: &Self, y: &Self) -> Option<Self> {
        a.checked_mul(*x)?.checked_sub(b.checked_mul(*y)?)
    }
    fn gcd_with(&self, other: &Self) -> Self {
        Integer::gcd(self, other)
    }
    fn div_exact(&self, g: &Self) -> Self {
        self / g
    }
    fn is_one(&self) -> bool {
        *self == 1
    }
}

impl DdInt for BigInt {
    fn from_big(v: &BigInt) -> Option<Self> {
        Some(v.clone())
    }
    fn zero() -> Self {
        Zero::zero()
    }
    fn signum(&self) -> i32 {
        if self.is_positive() {
            1
        } else if self.is_negative() {
            -1
        } else {
            0
        }
    }
    fn dot(a: &[Self], b: &[Self]) -> Option<Self> {
        Some(a.iter().zip(b).map(|(x, y)| x * y).sum())
    }
    fn combine(a: &Self, x: &Self, b: &Self, y: &Self) -> Option<Self> {
        Some(a * x - b * y)
    }
    fn gcd_with(&self, other: &Self) -> Self {
        Integer::gcd(self, other)
    }
    fn div_exact(&self, g: &Self) -> Self {
        self / g
    }
    fn is_one(&self) -> bool {
        *self == BigInt::from(1)
    }
}

fn normalize<T: DdInt>(v: Vec<T>) -> Vec<T> {
    let g = v.iter().fold(T::zero(), |g, x| g.gcd_with(x));
    if g.signum() == 0 || g.is_one() {
        v
    } else {
        v.iter().map(|x| x.div_exact(&g)).collect()
    }
}

type Bits = Vec<u64>;

fn subset(a: &Bits, b: &Bits) -> bool {
    a.iter().zip(b).all(|(x, y)| x & !y == 0)
}

/// Extreme rays of `{h : h·p >= 0 for all p in points}`, for integer vectors
/// spanning the whole space, with their zero sets. `None` on `T` overflow.
fn run_dd<T: DdInt>(points: &[Vec<BigInt>]) -> Option<Vec<(Vec<T>, Bits)>> {
    let dim = points[0].len();
    let words = points.len().div_ceil(64);
    let pts: Vec<Vec<T>> = points
        .iter()
        .map(|p| p.iter().map(T::from_big).collect::<Option<Vec<T>>>())
        .collect::<Option<_>>()?;

    // Greedily pick `dim` linearly independent points for the initial cone.
    let mut basis: Vec<usize> = Vec::new();
    let mut echelon: Vec<Vec<Rational>> = Vec::new();
    for (i, p) in points.iter().enumerate() {
        let mut cand = echelon.clone();
        cand.push(p.iter().map(|x| Rational::from(x.clone())).collect());
        if rank(cand.clone()) > echelon.len() {
            echelon = cand;
            basis.push(i);
            if basis.len() == dim {
                break;
            }
        }
    }
    debug_assert_eq!(basis.len(), dim, "lifted points must span");

    // Rays of {h : H h >= 0} are the columns of H^{-1}.
    let mut aug: Vec<Vec<Rational>> = basis
        .iter()
        .enumerate()
        .map(|(k, &i)| {
            let mut row: Vec<Rational> = points[i].iter().map(|x| Rational::from(x.clone())).collect();
            row.extend((0..dim).map(|j| if j == k { Rational::one() } else { Rational::zero() }));
            row
        })
        .collect();
    rref(&mut aug);
    let mut rays: Vec<(Vec<T>, Bits)> = Vec::with_capacity(dim);
    for k in 0..dim {
        let col: Vec<Rational> = (0..dim).map(|i| aug[i][dim + k].clone()).collect();
        let v: Vec<T> = integral(&col)
            .iter()
            .map(T::from_big)
            .collect::<Option<_>>()?;
        let mut z = vec![0u64; words];
        for (k2, &i) in basis.iter().enumerate() {
            if k2 != k {
                z[i / 64] |= 1 << (i % 64);
            }
        }
        rays.push((v, z));
    }

    let in_basis: Vec<bool> = (0..points.len()).map(|i| basis.contains(&i)).collect();
    for (i, p) in pts.iter().enumerate() {
        if in_basis[i] {
            continue;
        }
        let mut s = Vec::with_capacity(rays.len());
        for (r, _) in &rays {
            s.push(T::dot(r, p)?);
        }
        let pos: Vec<usize> = (0..rays.len()).filter(|&j| s[j].signum() > 0).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&j| s[j].signum() < 0).collect();
        if neg.is_empty() {
            for j in 0..rays.len() {
                if s[j].signum() == 0 {
                    rays[j].1[i / 64] |= 1 << (i % 64);
                }
            }
            continue;
        }
        let mut fresh: Vec<(Vec<T>, Bits)> = Vec::new();
        for &a in &pos {
            for &b in &neg {
                let common: Bits = rays[a].1.iter().zip(&rays[b].1).map(|(x, y)| x & y).collect();
                let cnt: u32 = common.iter().map(|w| w.count_ones()).sum();
                if (cnt as usize) + 2 < dim {
                    continue;
                }
                let adjacent = rays
                    .iter()
                    .enumerate()
                    .all(|(t, (_, zt))| t == a || t == b || !subset(&common, zt));
                if !adjacent {
                    continue;
                }
                let v: Vec<T> = rays[a]
                    .0
                    .iter()
                    .zip(&rays[b].0)
                    .map(|(ra, rb)| T::combine(&s[a], rb, &s[b], ra))
                    .collect::<Option<_>>()?;
                let mut z = common;
                z[i / 64] |= 1 << (i % 64);
                fresh.push((normalize(v), z));
            }
        }
        let mut next: Vec<(Vec<T>, Bits)> = Vec::with_capacity(rays.len() + fresh.len());
        for (j, (r, mut z)) in rays.into_iter().enumerate() {
            match s[j].signum() {
                1 => next.push((r, z)),
                0 => {
                    z[i / 64] |= 1 << (i % 64);
                    next.push((r, z));
                }
                _ => {}
            }
        }
        next.extend(fresh);
        rays = next;
    }
    Some(rays)
}

/// Checks a candidate description against its points: every point satisfies
/// every row, and each facet is tight at `affine_dim` affinely independent
/// points. Used by tests and by the CLI's self-check.
pub fn check_hull(v: &VRep, h: &Hull) -> bool {
    let sys = h.to_system();
    if !v.points().iter().all(|p| sys.is_satisfied(p)) {
        return false;
    }
    let r = h.affine_dim();
    h.incidence.iter().all(|pts| {
        let rows: Vec<Vec<Rational>> = pts
            .iter()
            .map(|&i| {
                std::iter::once(Rational::one())
                    .chain(h.free_coords.iter().map(|&c| v.points()[i][c].clone()))
                    .collect()
            })
            .collect();
        rank(rows) == r
    })
}
