//! Analysis pipelines.
//!
//! The unbalanced pipeline fixes a dependent variable `y0` and produces one
//! equation `y0^kappa = prod x_j^k0j * Psi(pi_1, ..., pi_{n-r})` per
//! prebasis. The balanced pipeline suspends that choice and produces one
//! such system per variable from the column matroid. Symmetry declarations
//! then turn pairs of equations into closed forms.

mod balanced;
mod problem;
mod substitute;
mod symmetry;
mod unbalanced;

use serde::Serialize;

pub use balanced::analyze_balanced;
pub(crate) use unbalanced::equations_at;
pub use problem::{KappaPolicy, Mode, Problem, Substitution, Variable};
pub use substitute::substitute;
pub use symmetry::{apply_symmetry, ClosedForm, Template};
pub use unbalanced::{
    analyze_unbalanced, canonical_kappa, prebases, resolve_kappa, Prebasis, VarExponents,
};

use crate::matroid::IndexSet;
use crate::monomial::{render_power, Monomial, PiMonomial};
use crate::qspace::DimExp;

/// A re-powering the equation relies on being a bijection (the argument
/// map `y -> y^k`, or the dependent's `y0 -> y0^kappa`). Such conditions
/// cannot be read off a dimensional matrix, so they are carried along.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Assumption {
    DependentPower { var: usize, power: i64 },
    ArgumentPower { var: usize, power: i64 },
}

impl Assumption {
    pub fn render<S: AsRef<str>>(&self, names: &[S]) -> String {
        let (var, power) = match *self {
            Assumption::DependentPower { var, power } | Assumption::ArgumentPower { var, power } => {
                (var, power)
            }
        };
        let name = names[var].as_ref();
        format!("{name} -> {} is a bijection", render_power(name, power))
    }
}

/// One π-argument together with the variable it is built around.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PiArg {
    pub var: usize,
    pub pi: PiMonomial,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Equation {
    /// The variable solved for.
    pub target: usize,
    pub basis: IndexSet,
    /// Dimensionless left side `target^e * prod x_j^-k0j`.
    pub lhs: Monomial,
    /// The `prod x_j^k0j` factor, nonzero only on basis members.
    pub rhs_basis: Monomial,
    pub psi: String,
    pub args: Vec<PiArg>,
    pub k0: i64,
    pub solvable: bool,
    pub assumptions: Vec<Assumption>,
}

impl Equation {
    pub fn target_exponent(&self) -> i64 {
        self.lhs.get(self.target)
    }

    /// E.g. `t^2 = M^-1 d^3 G^-1 * Psi_1(m M^-1)`. Unsolvable equations
    /// render only their dimension relation.
    pub fn render<S: AsRef<str>>(&self, names: &[S]) -> String {
        let lhs = render_power(names[self.target].as_ref(), self.target_exponent());
        if !self.solvable {
            return format!(
                "{}: unsolvable (k0 = {}): [{}] = [{}]",
                self.psi,
                self.k0,
                lhs,
                self.rhs_basis.render(names, None)
            );
        }
        let args: Vec<String> =
            self.args.iter().map(|a| a.pi.render(names, Some(a.var))).collect();
        let call = format!("{}({})", self.psi, args.join(", "));
        if self.rhs_basis.is_unit() {
            format!("{lhs} = {call}")
        } else {
            format!("{lhs} = {} * {call}", self.rhs_basis.render(names, None))
        }
    }

    /// Normalized form used for duplicate detection: the left side and
    /// the sorted argument exponent vectors.
    pub fn dedup_key(&self) -> (Monomial, Vec<Monomial>) {
        let mut args: Vec<Monomial> = self.args.iter().map(|a| a.pi.monomial().clone()).collect();
        args.sort();
        (self.lhs.clone(), args)
    }
}

/// A dropped duplicate equation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Merge {
    pub kept: String,
    pub dropped_basis: IndexSet,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EquationSystem {
    pub dependent: String,
    pub dependent_index: usize,
    /// The fixed power of the dependent; `None` in balanced mode where each
    /// equation carries its own.
    pub kappa: Option<i64>,
    pub var_names: Vec<String>,
    pub var_dims: Vec<DimExp>,
    pub equations: Vec<Equation>,
    pub raw_count: usize,
    pub merged: Vec<Merge>,
}

impl EquationSystem {
    pub fn render_lines(&self) -> Vec<String> {
        self.equations.iter().map(|e| e.render(&self.var_names)).collect()
    }
}
