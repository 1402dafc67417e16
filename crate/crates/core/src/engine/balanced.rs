use std::collections::HashMap;

use crate::error::Result;
use crate::matroid::{self, ColumnMatroid, IndexSet};
use crate::monomial::Monomial;

use super::problem::Problem;
use super::{Assumption, Equation, EquationSystem, Merge, PiArg};

fn with(basis: &[usize], v: usize) -> IndexSet {
    let mut s = basis.to_vec();
    s.push(v);
    s.sort_unstable();
    s
}

fn raw_equation(m: &ColumnMatroid, basis: &[usize], v: usize) -> Result<Equation> {
    let n = m.len();
    let lhs = matroid::pi_monomial(m, &with(basis, v), v)?.into_monomial();
    let mut rhs_basis = Monomial::unit(n);
    for &b in basis {
        rhs_basis.set(b, -lhs.get(b));
    }
    let args = (0..n)
        .filter(|&w| w != v && !basis.contains(&w))
        .map(|w| Ok(PiArg { var: w, pi: matroid::pi_monomial(m, &with(basis, w), w)? }))
        .collect::<Result<Vec<_>>>()?;

    let mut assumptions = Vec::new();
    if lhs.get(v) > 1 {
        assumptions.push(Assumption::DependentPower { var: v, power: lhs.get(v) });
    }
    for a in &args {
        let k = a.pi.get(a.var);
        if k > 1 {
            assumptions.push(Assumption::ArgumentPower { var: a.var, power: k });
        }
    }
    Ok(Equation {
        target: v,
        basis: basis.to_vec(),
        lhs,
        rhs_basis,
        psi: String::new(),
        args,
        k0: 1,
        solvable: true,
        assumptions,
    })
}

/// One equation system per variable `V`: an equation for every matroid
/// basis not containing `V`, with literal duplicates merged (the first in
/// basis order is kept).
pub fn analyze_balanced(p: &Problem) -> Result<Vec<EquationSystem>> {
    let eff = p.effective()?;
    let m = eff.matroid()?;
    let bases = matroid::bases(&m);
    let names = eff.var_names();

    (0..m.len())
        .map(|v| {
            let mut equations: Vec<Equation> = Vec::new();
            let mut merged = Vec::new();
            let mut seen: HashMap<(Monomial, Vec<Monomial>), usize> = HashMap::new();
            let mut raw_count = 0;
            for b in bases.iter().filter(|b| !b.contains(&v)) {
                raw_count += 1;
                let mut eq = raw_equation(&m, b, v)?;
                let key = eq.dedup_key();
                if let Some(&kept) = seen.get(&key) {
                    merged.push(Merge {
                        kept: equations[kept].psi.clone(),
                        dropped_basis: b.clone(),
                    });
                    continue;
                }
                eq.psi = format!("Psi_{}_{}", v + 1, equations.len() + 1);
                seen.insert(key, equations.len());
                equations.push(eq);
            }
            Ok(EquationSystem {
                dependent: names[v].clone(),
                dependent_index: v,
                kappa: None,
                var_names: names.clone(),
                var_dims: eff.var_dims(),
                equations,
                raw_count,
                merged,
            })
        })
        .collect()
}
