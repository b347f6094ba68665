//! Extended formulations: a lifted linear system plus an affine projection.

use std::collections::BTreeMap;
use std::fmt::Write;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::linsys::{LinearSystem, Relation, Row};
use crate::error::{Error, Result};
use crate::rational::{common_denominator, Rational};

/// `x = matrix · y + offset`; `matrix[t]` is the sparse row of target coordinate `t`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineMap {
    pub matrix: Vec<BTreeMap<usize, Rational>>,
    pub offset: Vec<Rational>,
}

impl AffineMap {
    pub fn zero(target_dim: usize) -> Self {
        AffineMap {
            matrix: vec![BTreeMap::new(); target_dim],
            offset: vec![Rational::zero(); target_dim],
        }
    }

    pub fn target_dim(&self) -> usize {
        self.offset.len()
    }

    pub fn apply(&self, y: &[Rational]) -> Vec<Rational> {
        self.matrix
            .iter()
            .zip(&self.offset)
            .map(|(row, o)| row.iter().map(|(&j, a)| a * &y[j]).fold(o.clone(), |s, t| s + t))
            .collect()
    }

    /// Pulls a linear functional on the target space back to the lifted
    /// space: returns `(c, c0)` with `a·(My + o) = c·y + c0`.
    pub fn pullback(&self, a: &[Rational], num_vars: usize) -> (Vec<Rational>, Rational) {
        let mut c = vec![Rational::zero(); num_vars];
        let mut c0 = Rational::zero();
        for (t, at) in a.iter().enumerate() {
            if at.is_zero() {
                continue;
            }
            for (&j, m) in &self.matrix[t] {
                c[j] += &(at * m);
            }
            c0 += &(at * &self.offset[t]);
        }
        (c, c0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtendedFormulation {
    pub system: LinearSystem,
    pub target_dim: usize,
    pub projection: AffineMap,
}

impl ExtendedFormulation {
    /// The empty set in `R^target_dim`: no variables and the single row `0 <= -1`.
    pub fn infeasible(target_dim: usize) -> Self {
        let mut system = LinearSystem::new(0);
        system.add_row(std::iter::empty(), Relation::Le, Rational::from(-1));
        ExtendedFormulation {
            system,
            target_dim,
            projection: AffineMap::zero(target_dim),
        }
    }

    /// Number of inequality rows; equalities do not count toward size.
    pub fn size(&self) -> usize {
        self.system.num_inequalities()
    }

    pub fn num_vars(&self) -> usize {
        self.system.num_vars
    }

    pub fn validate(&self) -> Result<()> {
        self.system.validate()?;
        if self.projection.target_dim() != self.target_dim
            || self.projection.matrix.len() != self.target_dim
        {
            return Err(Error::DimensionMismatch(format!(
                "projection has {} rows for target dimension {}",
                self.projection.matrix.len(),
                self.target_dim
            )));
        }
        for row in &self.projection.matrix {
            if row.keys().any(|&j| j >= self.system.num_vars) {
                return Err(Error::DimensionMismatch(
                    "projection references a missing variable".into(),
                ));
            }
        }
        Ok(())
    }

    pub fn project(&self, y: &[Rational]) -> Vec<Rational> {
        self.projection.apply(y)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(&EfJson::from(self))?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: EfJson = serde_json::from_str(text)?;
        let ef = ExtendedFormulation::try_from(raw)?;
        ef.validate()?;
        Ok(ef)
    }

    /// CPLEX-style LP text with a zero objective placeholder. Rows are scaled
    /// to integer coefficients; variables are free (sign constraints appear
    /// as explicit rows).
    pub fn to_lp_format(&self) -> String {
        let sys = &self.system;
        let names: Vec<String> = (0..sys.num_vars).map(|j| lp_name(&sys.var_name(j))).collect();
        let mut out = String::new();
        writeln!(out, "\\ extended formulation: {} variables, target dimension {}", sys.num_vars, self.target_dim).unwrap();
        writeln!(out, "Maximize").unwrap();
        match names.first() {
            Some(n) => writeln!(out, " obj: 0 {n}").unwrap(),
            None => writeln!(out, " obj:").unwrap(),
        }
        writeln!(out, "Subject To").unwrap();
        for (i, row) in sys.rows.iter().enumerate() {
            let scale: BigInt =
                common_denominator(row.coeffs.values().chain(std::iter::once(&row.rhs)));
            let scale = Rational::from(scale);
            write!(out, " r{i}:").unwrap();
            if row.coeffs.is_empty() {
                write!(out, " 0 {}", names.first().map(String::as_str).unwrap_or("x0")).unwrap();
            }
            for (&j, a) in &row.coeffs {
                let v = a * &scale;
                let sign = if v.is_negative() { '-' } else { '+' };
                write!(out, " {sign} {} {}", v.abs(), names[j]).unwrap();
            }
            let rel = match row.rel {
                Relation::Le => "<=",
                Relation::Eq => "=",
            };
            writeln!(out, " {rel} {}", &row.rhs * &scale).unwrap();
        }
        writeln!(out, "Bounds").unwrap();
        for n in &names {
            writeln!(out, " {n} free").unwrap();
        }
        writeln!(out, "End").unwrap();
        out
    }
}

fn lp_name(s: &str) -> String {
    let cleaned: String = s
        .chars()
        .map(|c| if c.is_ascii_alphanumeric() || "_.".contains(c) { c } else { '_' })
        .collect();
    if cleaned.starts_with(|c: char| c.is_ascii_alphabetic()) {
        cleaned
    } else {
        format!("v{cleaned}")
    }
}

#[derive(Serialize, Deserialize)]
struct ProjectionJson {
    matrix: BTreeMap<usize, BTreeMap<usize, Rational>>,
    offset: Vec<Rational>,
}

#[derive(Serialize, Deserialize)]
struct EfJson {
    num_vars: usize,
    #[serde(default)]
    var_names: Option<Vec<String>>,
    rows: Vec<Row>,
    target_dim: usize,
    projection: ProjectionJson,
}

impl From<&ExtendedFormulation> for EfJson {
    fn from(ef: &ExtendedFormulation) -> Self {
        EfJson {
            num_vars: ef.system.num_vars,
            var_names: ef.system.var_names.clone(),
            rows: ef.system.rows.clone(),
            target_dim: ef.target_dim,
            projection: ProjectionJson {
                matrix: ef
                    .projection
                    .matrix
                    .iter()
                    .enumerate()
                    .filter(|(_, r)| !r.is_empty())
                    .map(|(t, r)| (t, r.clone()))
                    .collect(),
                offset: ef.projection.offset.clone(),
            },
        }
    }
}

impl TryFrom<EfJson> for ExtendedFormulation {
    type Error = Error;

    fn try_from(raw: EfJson) -> Result<Self> {
        if raw.projection.offset.len() != raw.target_dim {
            return Err(Error::DimensionMismatch(format!(
                "offset has length {}, target dimension is {}",
                raw.projection.offset.len(),
                raw.target_dim
            )));
        }
        let mut matrix = vec![BTreeMap::new(); raw.target_dim];
        for (t, row) in raw.projection.matrix {
            if t >= raw.target_dim {
                return Err(Error::DimensionMismatch(format!("projection row {t} out of range")));
            }
            matrix[t] = row.into_iter().filter(|(_, a)| !a.is_zero()).collect();
        }
        let rows = raw
            .rows
            .into_iter()
            .map(|r| Row::new(r.coeffs, r.rel, r.rhs))
            .collect();
        Ok(ExtendedFormulation {
            system: LinearSystem {
                num_vars: raw.num_vars,
                rows,
                var_names: raw.var_names,
            },
            target_dim: raw.target_dim,
            projection: AffineMap {
                matrix,
                offset: raw.projection.offset,
            },
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polytope::{vrep_to_ef, VRep};

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn json_roundtrip_and_schema() {
        let v = VRep::new(vec![vec![q(1, 2), q(0, 1)], vec![q(0, 1), q(3, 1)]]).unwrap();
        let ef = vrep_to_ef(&v).unwrap();
        let text = ef.to_json().unwrap();
        let value: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(value["rows"][0]["rel"], "<=");
        assert_eq!(value["rows"][0]["coeffs"]["0"], "-1");
        assert_eq!(value["projection"]["matrix"]["0"]["1"], "1/2");
        assert_eq!(ExtendedFormulation::from_json(&text).unwrap(), ef);
    }

    #[test]
    fn json_rejects_inconsistent_dimensions() {
        let bad = r#"{"num_vars":1,"rows":[{"coeffs":{"3":"1"},"rel":"<=","rhs":"0"}],
            "target_dim":1,"projection":{"matrix":{},"offset":["0"]}}"#;
        assert!(ExtendedFormulation::from_json(bad).is_err());
        let bad = r#"{"num_vars":1,"rows":[],"target_dim":2,"projection":{"matrix":{},"offset":["0"]}}"#;
        assert!(ExtendedFormulation::from_json(bad).is_err());
    }

    #[test]
    fn lp_export_scales_to_integers() {
        let mut sys = LinearSystem::new(0);
        let a = sys.add_var("lambda[0]");
        let b = sys.add_var("y");
        sys.add_row([(a, q(1, 2)), (b, q(-1, 3))], Relation::Le, q(1, 1));
        let ef = ExtendedFormulation {
            system: sys,
            target_dim: 0,
            projection: AffineMap::zero(0),
        };
        let lp = ef.to_lp_format();
        assert!(lp.contains(" r0: + 3 lambda_0_ - 2 y <= 6"), "{lp}");
        assert!(lp.contains("y free"));
    }

    #[test]
    fn pullback_matches_apply() {
        let map = AffineMap {
            matrix: vec![BTreeMap::from([(0, q(2, 1))]), BTreeMap::from([(0, q(1, 1)), (1, q(1, 1))])],
            offset: vec![q(1, 1), q(-1, 2)],
        };
        let y = vec![q(3, 1), q(1, 4)];
        let a = vec![q(5, 1), q(-2, 1)];
        let x = map.apply(&y);
        let lhs: Rational = a.iter().zip(&x).map(|(a, x)| a * x).sum();
        let (c, c0) = map.pullback(&a, 2);
        let rhs: Rational = c.iter().zip(&y).map(|(c, y)| c * y).sum::<Rational>() + c0;
        assert_eq!(lhs, rhs);
    }
}
