use std::collections::{HashMap, HashSet};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::matroid::ColumnMatroid;
use crate::qspace::DimExp;
use crate::zlinalg::IntMatrix;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Variable {
    pub name: String,
    pub dim: DimExp,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum KappaPolicy {
    Auto,
    Fixed(i64),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Unbalanced,
    Balanced,
}

/// A composite variable `name = prod factor^exp`. Factor order is kept as
/// written.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Substitution {
    pub name: String,
    pub factors: Vec<(String, i64)>,
}

/// The analysis input.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Problem {
    pub base_dims: Vec<String>,
    pub vars: Vec<Variable>,
    pub dependent: Option<String>,
    pub kappa: KappaPolicy,
    pub symmetries: Vec<(String, String)>,
    pub substitutions: Vec<Substitution>,
    pub mode: Mode,
}

impl Problem {
    pub fn new<S: Into<String>>(base_dims: impl IntoIterator<Item = S>) -> Self {
        Problem {
            base_dims: base_dims.into_iter().map(Into::into).collect(),
            vars: Vec::new(),
            dependent: None,
            kappa: KappaPolicy::Auto,
            symmetries: Vec::new(),
            substitutions: Vec::new(),
            mode: Mode::Unbalanced,
        }
    }

    pub fn with_var(mut self, name: &str, exps: &[i64]) -> Self {
        self.vars.push(Variable { name: name.to_string(), dim: DimExp::new(exps.to_vec()) });
        self
    }

    pub fn with_dependent(mut self, name: &str) -> Self {
        self.dependent = Some(name.to_string());
        self
    }

    pub fn with_kappa(mut self, kappa: KappaPolicy) -> Self {
        self.kappa = kappa;
        self
    }

    pub fn with_symmetry(mut self, u: &str, v: &str) -> Self {
        self.symmetries.push((u.to_string(), v.to_string()));
        self
    }

    pub fn with_substitution(mut self, name: &str, factors: &[(&str, i64)]) -> Self {
        self.substitutions.push(Substitution {
            name: name.to_string(),
            factors: factors.iter().map(|&(n, e)| (n.to_string(), e)).collect(),
        });
        self
    }

    pub fn with_mode(mut self, mode: Mode) -> Self {
        self.mode = mode;
        self
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v.name == name)
    }

    pub fn require(&self, name: &str) -> Result<usize> {
        self.index_of(name).ok_or_else(|| Error::UnknownName(name.to_string()))
    }

    pub fn var_names(&self) -> Vec<String> {
        self.vars.iter().map(|v| v.name.clone()).collect()
    }

    pub fn var_dims(&self) -> Vec<DimExp> {
        self.vars.iter().map(|v| v.dim.clone()).collect()
    }

    /// Dimensional matrix: one row per base dimension, one column per
    /// variable in declaration order.
    pub fn matrix(&self) -> IntMatrix {
        let cols: Vec<Vec<i64>> = self.vars.iter().map(|v| v.dim.exponents().to_vec()).collect();
        IntMatrix::from_columns(self.base_dims.len(), &cols)
            .expect("variable dimensions match the base dimension count")
    }

    pub fn matroid(&self) -> Result<ColumnMatroid> {
        ColumnMatroid::new(self.matrix(), self.var_names())
    }

    pub fn dependent_index(&self) -> Result<usize> {
        let name = self.dependent.as_deref().ok_or(Error::NoDependent)?;
        self.require(name)
    }

    /// Checks every invariant, including those that only hold after the
    /// problem's own substitutions are applied.
    pub fn validate(&self) -> Result<()> {
        self.validate_vars()?;
        if let KappaPolicy::Fixed(k) = self.kappa {
            if k <= 0 {
                return Err(Error::InvalidKappa(k));
            }
        }
        if self.substitutions.is_empty() {
            self.validate_declarations()
        } else {
            self.effective().map(|_| ())
        }
    }

    /// The problem with its substitutions applied.
    pub fn effective(&self) -> Result<Problem> {
        if self.substitutions.is_empty() {
            self.validate_vars()?;
            self.validate_declarations()?;
            return Ok(self.clone());
        }
        super::substitute(self, &self.substitutions)
    }

    pub(crate) fn validate_vars(&self) -> Result<()> {
        let mut seen = HashSet::new();
        for v in &self.vars {
            if v.dim.len() != self.base_dims.len() {
                return Err(Error::LengthMismatch {
                    expected: self.base_dims.len(),
                    found: v.dim.len(),
                });
            }
            if !seen.insert(v.name.as_str()) {
                return Err(Error::DuplicateVariable(v.name.clone()));
            }
        }
        Ok(())
    }

    /// Dependent and symmetry names resolve; symmetric pairs share a
    /// dimension.
    pub(crate) fn validate_declarations(&self) -> Result<()> {
        if let Some(dep) = &self.dependent {
            self.require(dep)?;
        }
        let dims: HashMap<&str, &DimExp> =
            self.vars.iter().map(|v| (v.name.as_str(), &v.dim)).collect();
        for (u, v) in &self.symmetries {
            let du = dims.get(u.as_str()).ok_or_else(|| Error::UnknownName(u.clone()))?;
            let dv = dims.get(v.as_str()).ok_or_else(|| Error::UnknownName(v.clone()))?;
            if du != dv {
                return Err(Error::SymmetryDimensionMismatch(u.clone(), v.clone()));
            }
        }
        Ok(())
    }
}
