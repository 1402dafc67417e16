use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::qspace::DimExp;

use super::problem::{Problem, Substitution, Variable};

/// Replaces the constituents of each definition by one composite variable.
///
/// The composite takes the position of its earliest constituent in
/// declaration order, and its dimension is that of the defining monomial.
pub fn substitute(p: &Problem, defs: &[Substitution]) -> Result<Problem> {
    p.validate_vars()?;
    let mut owner: HashMap<&str, usize> = HashMap::new();
    for (d, def) in defs.iter().enumerate() {
        if def.factors.is_empty() {
            return Err(Error::EmptySubstitution(def.name.clone()));
        }
        for (name, _) in &def.factors {
            p.require(name)?;
            if owner.insert(name.as_str(), d).is_some() {
                return Err(Error::OverlappingSubstitution(name.clone()));
            }
            if p.symmetries.iter().any(|(u, v)| u == name || v == name) {
                return Err(Error::OverlappingSubstitution(name.clone()));
            }
            if p.dependent.as_deref() == Some(name.as_str()) {
                return Err(Error::DanglingVariable(name.clone(), "dependent".into()));
            }
        }
    }

    let mut composite_dims = Vec::with_capacity(defs.len());
    for def in defs {
        let mut dim = DimExp::identity(p.base_dims.len());
        for (name, exp) in &def.factors {
            let v = &p.vars[p.require(name)?];
            dim = dim.mul(&v.dim.pow(*exp)?)?;
        }
        composite_dims.push(dim);
    }

    let mut vars = Vec::with_capacity(p.vars.len());
    let mut placed = vec![false; defs.len()];
    for v in &p.vars {
        match owner.get(v.name.as_str()) {
            Some(&d) if !placed[d] => {
                placed[d] = true;
                vars.push(Variable { name: defs[d].name.clone(), dim: composite_dims[d].clone() });
            }
            Some(_) => {}
            None => vars.push(v.clone()),
        }
    }

    let out = Problem { vars, substitutions: Vec::new(), ..p.clone() };
    out.validate_vars()?;
    out.validate_declarations()?;
    Ok(out)
}
