use num_integer::Integer;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::matroid::{self, IndexSet};
use crate::monomial::{Monomial, PiMonomial};
use crate::zlinalg::{self, CanonicalExponents};

use super::problem::{KappaPolicy, Problem};
use super::{Assumption, Equation, EquationSystem, PiArg};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VarExponents {
    pub var: usize,
    pub exps: CanonicalExponents,
}

/// A maximal independent set of non-dependent variables, with the canonical
/// exponents of the dependent and of every other variable against it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Prebasis {
    pub members: IndexSet,
    pub kappa: i64,
    pub dependent: CanonicalExponents,
    pub others: Vec<VarExponents>,
}

/// Bases of the full matrix (dependent column included) that avoid the
/// dependent.
fn prebasis_sets(p: &Problem, dep: usize) -> Result<Vec<IndexSet>> {
    let m = p.matroid()?;
    Ok(matroid::bases(&m).into_iter().filter(|b| !b.contains(&dep)).collect())
}

fn columns(p: &Problem, idx: &[usize]) -> Vec<Vec<i64>> {
    idx.iter().map(|&i| p.vars[i].dim.exponents().to_vec()).collect()
}

fn kappa_for_sets(p: &Problem, dep: usize, sets: &[IndexSet]) -> Result<i64> {
    if sets.is_empty() {
        return Err(Error::NotPrecomplete);
    }
    let target = p.vars[dep].dim.exponents();
    sets.iter().try_fold(1i64, |acc, s| {
        let ce = zlinalg::canonical_solve(target, &columns(p, s), 1)?;
        Ok(acc.lcm(&ce.k))
    })
}

/// The least kappa for which every prebasis admits `k0 = 1`.
pub fn canonical_kappa(p: &Problem) -> Result<i64> {
    let eff = p.effective()?;
    let dep = eff.dependent_index()?;
    let sets = prebasis_sets(&eff, dep)?;
    kappa_for_sets(&eff, dep, &sets)
}

/// The fixed kappa, or the canonical one under `kappa auto`.
pub fn resolve_kappa(p: &Problem) -> Result<i64> {
    match p.kappa {
        KappaPolicy::Fixed(k) if k > 0 => Ok(k),
        KappaPolicy::Fixed(k) => Err(Error::InvalidKappa(k)),
        KappaPolicy::Auto => canonical_kappa(p),
    }
}

fn build_prebases(p: &Problem, dep: usize, sets: Vec<IndexSet>, kappa: i64) -> Result<Vec<Prebasis>> {
    let target = p.vars[dep].dim.exponents();
    sets.into_iter()
        .map(|members| {
            let cols = columns(p, &members);
            let dependent = zlinalg::canonical_solve(target, &cols, kappa)?;
            let others = (0..p.vars.len())
                .filter(|&i| i != dep && !members.contains(&i))
                .map(|i| {
                    let exps = zlinalg::canonical_solve(p.vars[i].dim.exponents(), &cols, 1)?;
                    Ok(VarExponents { var: i, exps })
                })
                .collect::<Result<_>>()?;
            Ok(Prebasis { members, kappa, dependent, others })
        })
        .collect()
}

/// All prebases, with canonical exponents at the resolved kappa. An empty
/// list means the quantity function is not precomplete.
pub fn prebases(p: &Problem) -> Result<Vec<Prebasis>> {
    let eff = p.effective()?;
    let dep = eff.dependent_index()?;
    let sets = prebasis_sets(&eff, dep)?;
    if sets.is_empty() {
        return Ok(Vec::new());
    }
    let kappa = match eff.kappa {
        KappaPolicy::Auto => kappa_for_sets(&eff, dep, &sets)?,
        _ => resolve_kappa(&eff)?,
    };
    build_prebases(&eff, dep, sets, kappa)
}

fn equation_for(p: &Problem, dep: usize, theta: usize, pb: &Prebasis) -> Result<Equation> {
    let n = p.vars.len();
    let k0 = pb.dependent.k;
    let mut lhs = Monomial::unit(n);
    let mut rhs_basis = Monomial::unit(n);
    lhs.set(dep, pb.kappa.checked_mul(k0).ok_or(Error::Overflow)?);
    for (&x, &e) in pb.members.iter().zip(&pb.dependent.kj) {
        lhs.set(x, -e);
        rhs_basis.set(x, e);
    }
    let args: Vec<PiArg> = pb
        .others
        .iter()
        .map(|o| {
            let mut m = Monomial::unit(n);
            m.set(o.var, o.exps.k);
            for (&x, &e) in pb.members.iter().zip(&o.exps.kj) {
                m.set(x, -e);
            }
            PiArg { var: o.var, pi: PiMonomial::new_unchecked(m) }
        })
        .collect();

    let solvable = k0 == 1;
    let mut assumptions = Vec::new();
    if solvable {
        if pb.kappa > 1 {
            assumptions.push(Assumption::DependentPower { var: dep, power: pb.kappa });
        }
        for a in &args {
            let k = a.pi.get(a.var);
            if k > 1 {
                assumptions.push(Assumption::ArgumentPower { var: a.var, power: k });
            }
        }
    }
    Ok(Equation {
        target: dep,
        basis: pb.members.clone(),
        lhs,
        rhs_basis,
        psi: format!("Psi_{}", theta + 1),
        args,
        k0,
        solvable,
        assumptions,
    })
}

/// One equation per prebasis. Prebases with `k0 > 1` at the chosen kappa
/// are kept and flagged unsolvable.
pub fn analyze_unbalanced(p: &Problem) -> Result<EquationSystem> {
    let eff = p.effective()?;
    let dep = eff.dependent_index()?;
    let sets = prebasis_sets(&eff, dep)?;
    let kappa = match eff.kappa {
        KappaPolicy::Auto => kappa_for_sets(&eff, dep, &sets)?,
        _ if sets.is_empty() => return Err(Error::NotPrecomplete),
        _ => resolve_kappa(&eff)?,
    };
    let pbs = build_prebases(&eff, dep, sets, kappa)?;
    let equations = pbs
        .iter()
        .enumerate()
        .map(|(theta, pb)| equation_for(&eff, dep, theta, pb))
        .collect::<Result<Vec<_>>>()?;
    if !equations.iter().any(|e| e.solvable) {
        return Err(Error::KappaInsufficient(kappa));
    }
    Ok(EquationSystem {
        dependent: eff.vars[dep].name.clone(),
        dependent_index: dep,
        kappa: Some(kappa),
        var_names: eff.var_names(),
        var_dims: eff.var_dims(),
        raw_count: equations.len(),
        equations,
        merged: Vec::new(),
    })
}

/// Equations for every prebasis at a fixed kappa, including when none is
/// solvable. Used for reporting.
pub(crate) fn equations_at(p: &Problem, kappa: i64) -> Result<Vec<Equation>> {
    let eff = p.effective()?;
    let dep = eff.dependent_index()?;
    let sets = prebasis_sets(&eff, dep)?;
    let pbs = build_prebases(&eff, dep, sets, kappa)?;
    pbs.iter().enumerate().map(|(theta, pb)| equation_for(&eff, dep, theta, pb)).collect()
}
