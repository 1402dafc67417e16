//! Closed forms from swap symmetries.
//!
//! Two single-argument equations `y^e = B1 Psi1(x)` and `y^e = B2 Psi2(1/x)`
//! that are images of each other under `u <-> v` force `Psi1 = Psi2 = Psi`
//! and `Psi(x) = x^s Psi(1/x)` with `x^s = B2 / B1`. For `s = 1` the
//! solutions are `k (1 + x)`, for `s = -1` they are `k (1 + x)^-1`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::monomial::{render_power, Monomial};
use crate::qspace::DimExp;
use crate::zlinalg::IntMatrix;

use super::problem::Substitution;
use super::{Equation, EquationSystem};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Template {
    /// `Psi(x) = k (1 + x)`, from `Psi(x) = x Psi(1/x)`.
    LinearSum,
    /// `Psi(x) = k (1 + x)^-1`, from `Psi(x) = x^-1 Psi(1/x)`.
    InverseSum,
}

impl Template {
    pub fn exponent(self) -> i64 {
        match self {
            Template::LinearSum => 1,
            Template::InverseSum => -1,
        }
    }
}

/// `target^e = k * factor * (terms.0 + terms.1)^s`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClosedForm {
    pub target: usize,
    pub target_exponent: i64,
    pub pair: (String, String),
    pub psi: (String, String),
    pub template: Template,
    pub factor: Monomial,
    pub terms: (Monomial, Monomial),
    pub statement: String,
}

impl ClosedForm {
    fn render_with(&self, names: &[String], term: impl Fn(&Monomial) -> String) -> String {
        let lhs = render_power(&names[self.target], self.target_exponent);
        let mut rhs = String::from("k");
        if !self.factor.is_unit() {
            rhs.push_str(" * ");
            rhs.push_str(&self.factor.render(names, None));
        }
        let sum = format!("({} + {})", term(&self.terms.0), term(&self.terms.1));
        match self.template {
            Template::LinearSum => format!("{lhs} = {rhs} {sum}"),
            Template::InverseSum => format!("{lhs} = {rhs} {sum}^-1"),
        }
    }

    pub fn render(&self, names: &[String]) -> String {
        self.render_with(names, |m| m.render(names, None))
    }

    /// Like [`render`](Self::render) but with composite variables in the
    /// sum replaced by their defining monomials.
    pub fn render_expanded(&self, names: &[String], defs: &[Substitution]) -> String {
        self.render_with(names, |m| {
            let parts: Vec<String> = m
                .support()
                .into_iter()
                .flat_map(|i| {
                    let e = m.get(i);
                    match defs.iter().find(|d| d.name == names[i]) {
                        Some(def) => def
                            .factors
                            .iter()
                            .map(|(n, k)| render_power(n, k * e))
                            .collect::<Vec<_>>(),
                        None => vec![render_power(&names[i], e)],
                    }
                })
                .collect();
            if parts.is_empty() {
                "1".to_string()
            } else {
                parts.join(" ")
            }
        })
    }

    /// Both sides carry the same dimension, and so do the two summands.
    pub fn is_homogeneous(&self, var_dims: &[DimExp]) -> Result<bool> {
        let Some(first) = var_dims.first() else {
            return Ok(true);
        };
        let cols: Vec<Vec<i64>> = var_dims.iter().map(|d| d.exponents().to_vec()).collect();
        let matrix = IntMatrix::from_columns(first.len(), &cols)?;
        let t0 = self.terms.0.dimension(&matrix)?;
        let t1 = self.terms.1.dimension(&matrix)?;
        let lhs = var_dims[self.target].pow(self.target_exponent)?;
        let rhs = self.factor.dimension(&matrix)?.mul(&t0.pow(self.template.exponent())?)?;
        Ok(t0 == t1 && lhs == rhs)
    }
}

fn single_arg(eq: &Equation) -> Option<&Monomial> {
    match eq.args.as_slice() {
        [a] if eq.solvable => Some(a.pi.monomial()),
        _ => None,
    }
}

/// The integer `s` with `diff = x^s`, if any.
fn power_of(diff: &Monomial, x: &Monomial) -> Option<i64> {
    let i = x.support().into_iter().next()?;
    if diff.get(i) % x.get(i) != 0 {
        return None;
    }
    let s = diff.get(i) / x.get(i);
    let matches = (0..x.len()).all(|j| Some(diff.get(j)) == x.get(j).checked_mul(s));
    matches.then_some(s)
}

/// Applies the swap symmetry `u <-> v` to a system and returns the
/// resulting closed form.
pub fn apply_symmetry(sys: &EquationSystem, pair: (&str, &str)) -> Result<ClosedForm> {
    let (un, vn) = pair;
    let idx = |name: &str| {
        sys.var_names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| Error::UnknownName(name.to_string()))
    };
    let (u, v) = (idx(un)?, idx(vn)?);
    if sys.var_dims[u] != sys.var_dims[v] {
        return Err(Error::SymmetryDimensionMismatch(un.into(), vn.into()));
    }
    let no_pair = || Error::NoSymmetricPair(un.into(), vn.into());
    if u == v || u == sys.dependent_index || v == sys.dependent_index {
        return Err(no_pair());
    }

    for (i, a) in sys.equations.iter().enumerate() {
        let Some(xa) = single_arg(a) else { continue };
        for b in &sys.equations[i + 1..] {
            let Some(xb) = single_arg(b) else { continue };
            let swapped = a.target_exponent() == b.target_exponent()
                && a.rhs_basis.swap(u, v) == b.rhs_basis
                && xa.swap(u, v) == *xb
                && *xb == xa.inverse();
            if !swapped {
                continue;
            }
            let diff = b.rhs_basis.div(&a.rhs_basis)?;
            let s = power_of(&diff, xa).ok_or_else(no_pair)?;
            let template = match s {
                1 => Template::LinearSum,
                -1 => Template::InverseSum,
                other => return Err(Error::UnsupportedExponent(other)),
            };
            let (b1, b2) = match template {
                // y^e = k (B1 + B2)
                Template::LinearSum => (a.rhs_basis.clone(), b.rhs_basis.clone()),
                // y^e = k (B1^-1 + B2^-1)^-1
                Template::InverseSum => (a.rhs_basis.inverse(), b.rhs_basis.inverse()),
            };
            let common = b1.common_factor(&b2);
            let factor = match template {
                Template::LinearSum => common.clone(),
                Template::InverseSum => common.inverse(),
            };
            let mut cf = ClosedForm {
                target: a.target,
                target_exponent: a.target_exponent(),
                pair: (un.to_string(), vn.to_string()),
                psi: (a.psi.clone(), b.psi.clone()),
                template,
                factor,
                terms: (b1.div(&common)?, b2.div(&common)?),
                statement: String::new(),
            };
            cf.statement = cf.render(&sys.var_names);
            return Ok(cf);
        }
    }
    Err(no_pair())
}
