use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Relation {
    #[serde(rename = "<=")]
    Le,
    #[serde(rename = "=")]
    Eq,
}

/// `Σ coeffs[j]·x_j  rel  rhs`, with no explicit zeros in `coeffs`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Row {
    pub coeffs: BTreeMap<usize, Rational>,
    pub rel: Relation,
    pub rhs: Rational,
}

impl Row {
    pub fn new<I>(terms: I, rel: Relation, rhs: Rational) -> Row
    where
        I: IntoIterator<Item = (usize, Rational)>,
    {
        let mut coeffs: BTreeMap<usize, Rational> = BTreeMap::new();
        for (j, a) in terms {
            let e = coeffs.entry(j).or_default();
            *e += &a;
        }
        coeffs.retain(|_, a| !a.is_zero());
        Row { coeffs, rel, rhs }
    }

    pub fn lhs(&self, x: &[Rational]) -> Rational {
        self.coeffs.iter().map(|(&j, a)| a * &x[j]).sum()
    }

    pub fn is_satisfied(&self, x: &[Rational]) -> bool {
        let lhs = self.lhs(x);
        match self.rel {
            Relation::Le => lhs <= self.rhs,
            Relation::Eq => lhs == self.rhs,
        }
    }
}

/// A system of linear inequalities and equalities over free variables.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LinearSystem {
    pub num_vars: usize,
    pub rows: Vec<Row>,
    pub var_names: Option<Vec<String>>,
}

impl LinearSystem {
    pub fn new(num_vars: usize) -> Self {
        LinearSystem {
            num_vars,
            rows: Vec::new(),
            var_names: None,
        }
    }

    /// Appends a named variable and returns its index. Naming one variable
    /// names all of them (unnamed ones become `x<index>`).
    pub fn add_var(&mut self, name: impl Into<String>) -> usize {
        let idx = self.num_vars;
        let names = self
            .var_names
            .get_or_insert_with(|| (0..idx).map(|j| format!("x{j}")).collect());
        names.push(name.into());
        self.num_vars += 1;
        idx
    }

    pub fn add_row<I>(&mut self, terms: I, rel: Relation, rhs: Rational)
    where
        I: IntoIterator<Item = (usize, Rational)>,
    {
        self.rows.push(Row::new(terms, rel, rhs));
    }

    /// `-x_j <= 0`.
    pub fn add_nonneg(&mut self, j: usize) {
        self.add_row([(j, Rational::from(-1))], Relation::Le, Rational::zero());
    }

    pub fn num_inequalities(&self) -> usize {
        self.rows.iter().filter(|r| r.rel == Relation::Le).count()
    }

    pub fn num_equalities(&self) -> usize {
        self.rows.len() - self.num_inequalities()
    }

    pub fn var_name(&self, j: usize) -> String {
        match &self.var_names {
            Some(names) => names[j].clone(),
            None => format!("x{j}"),
        }
    }

    pub fn is_satisfied(&self, x: &[Rational]) -> bool {
        x.len() == self.num_vars && self.rows.iter().all(|r| r.is_satisfied(x))
    }

    pub fn validate(&self) -> Result<()> {
        if let Some(names) = &self.var_names {
            if names.len() != self.num_vars {
                return Err(Error::DimensionMismatch(format!(
                    "{} variable names for {} variables",
                    names.len(),
                    self.num_vars
                )));
            }
        }
        for (i, row) in self.rows.iter().enumerate() {
            if let Some((&j, _)) = row.coeffs.iter().next_back() {
                if j >= self.num_vars {
                    return Err(Error::DimensionMismatch(format!(
                        "row {i} uses variable {j} of {}",
                        self.num_vars
                    )));
                }
            }
            if row.coeffs.values().any(|a| a.is_zero()) {
                return Err(Error::Malformed(format!("row {i} has an explicit zero")));
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rows_merge_and_drop_zeros() {
        let r = Row::new(
            [(0, Rational::from(1)), (1, Rational::from(2)), (0, Rational::from(-1))],
            Relation::Le,
            Rational::from(3),
        );
        assert_eq!(r.coeffs.len(), 1);
        assert!(r.is_satisfied(&[Rational::from(9), Rational::from(1)]));
        assert!(!r.is_satisfied(&[Rational::zero(), Rational::from(2)]));
    }

    #[test]
    fn counts_and_validation() {
        let mut s = LinearSystem::new(2);
        s.add_nonneg(0);
        s.add_row([(1, Rational::one())], Relation::Eq, Rational::one());
        assert_eq!((s.num_inequalities(), s.num_equalities()), (1, 1));
        s.validate().unwrap();
        s.add_row([(5, Rational::one())], Relation::Le, Rational::one());
        assert!(s.validate().is_err());
        let j = s.add_var("y");
        assert_eq!(j, 2);
        assert_eq!(s.var_name(0), "x0");
        assert_eq!(s.var_name(2), "y");
    }
}
