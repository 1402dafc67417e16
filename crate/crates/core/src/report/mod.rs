//! Problem files, analysis reports and their text and JSON renderings.

mod parse;

use std::fmt::Write;

use serde::Serialize;

pub use parse::{parse_problem, render_problem};

use crate::engine::{self, ClosedForm, Equation, EquationSystem, KappaPolicy, Mode, Problem};
use crate::error::{Error, Result};
use crate::matroid::{self, IncidenceTable};
use crate::zlinalg::CanonicalExponents;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Ok,
    NotPrecomplete,
    KappaInsufficient,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::NotPrecomplete => 3,
            Status::KappaInsufficient => 4,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Options {
    /// Include the basis/pseudocircuit incidence table.
    pub table: bool,
    /// Apply the declared symmetries.
    pub symmetry: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Structured,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Exponents {
    pub k: i64,
    pub kj: Vec<i64>,
}

impl From<&CanonicalExponents> for Exponents {
    fn from(c: &CanonicalExponents) -> Self {
        Exponents { k: c.k, kj: c.kj.clone() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OtherExponents {
    pub var: String,
    pub k: i64,
    pub kj: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PrebasisReport {
    pub members: Vec<String>,
    pub dependent: Exponents,
    pub others: Vec<OtherExponents>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ArgReport {
    pub var: String,
    pub exponents: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EquationReport {
    pub psi: String,
    pub target: String,
    pub basis: Vec<String>,
    pub lhs: Vec<i64>,
    pub rhs_basis: Vec<i64>,
    pub args: Vec<ArgReport>,
    pub k0: i64,
    pub solvable: bool,
    pub assumptions: Vec<String>,
    pub text: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MergeReport {
    pub kept: String,
    pub dropped_basis: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SystemReport {
    pub dependent: String,
    pub kappa: Option<i64>,
    pub raw_count: usize,
    pub equations: Vec<EquationReport>,
    pub merged: Vec<MergeReport>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LabeledSet {
    pub label: String,
    pub members: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MatroidReport {
    pub variables: Vec<String>,
    pub bases: Vec<LabeledSet>,
    pub pseudocircuits: Vec<LabeledSet>,
    pub circuits: Vec<Vec<String>>,
    pub table: Option<IncidenceTable>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClosedFormReport {
    pub pair: (String, String),
    pub system: String,
    pub psi: (String, String),
    pub template: engine::Template,
    pub factor: Vec<i64>,
    pub terms: (Vec<i64>, Vec<i64>),
    pub statement: String,
    pub expanded: Option<String>,
    pub homogeneous: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SymmetryFailure {
    pub pair: (String, String),
    pub error: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AnalysisReport {
    pub problem: Problem,
    pub problem_text: String,
    pub status: Status,
    pub mode: Mode,
    pub rank: usize,
    pub dependent: Option<String>,
    pub canonical_kappa: Option<i64>,
    pub kappa: Option<i64>,
    pub prebases: Vec<PrebasisReport>,
    pub systems: Vec<SystemReport>,
    pub matroid: MatroidReport,
    pub closed_forms: Vec<ClosedFormReport>,
    pub symmetry_failures: Vec<SymmetryFailure>,
    pub assumptions: Vec<String>,
}

fn names_of(names: &[String], set: &[usize]) -> Vec<String> {
    set.iter().map(|&i| names[i].clone()).collect()
}

fn equation_report(names: &[String], e: &Equation) -> EquationReport {
    EquationReport {
        psi: e.psi.clone(),
        target: names[e.target].clone(),
        basis: names_of(names, &e.basis),
        lhs: e.lhs.exponents().to_vec(),
        rhs_basis: e.rhs_basis.exponents().to_vec(),
        args: e
            .args
            .iter()
            .map(|a| ArgReport { var: names[a.var].clone(), exponents: a.pi.exponents().to_vec() })
            .collect(),
        k0: e.k0,
        solvable: e.solvable,
        assumptions: e.assumptions.iter().map(|a| a.render(names)).collect(),
        text: e.render(names),
    }
}

fn system_report(sys: &EquationSystem) -> SystemReport {
    let names = &sys.var_names;
    SystemReport {
        dependent: sys.dependent.clone(),
        kappa: sys.kappa,
        raw_count: sys.raw_count,
        equations: sys.equations.iter().map(|e| equation_report(names, e)).collect(),
        merged: sys
            .merged
            .iter()
            .map(|m| MergeReport { kept: m.kept.clone(), dropped_basis: names_of(names, &m.dropped_basis) })
            .collect(),
    }
}

fn closed_form_report(p: &Problem, sys: &EquationSystem, cf: &ClosedForm) -> Result<ClosedFormReport> {
    let expanded = (!p.substitutions.is_empty())
        .then(|| cf.render_expanded(&sys.var_names, &p.substitutions));
    Ok(ClosedFormReport {
        pair: cf.pair.clone(),
        system: sys.dependent.clone(),
        psi: cf.psi.clone(),
        template: cf.template,
        factor: cf.factor.exponents().to_vec(),
        terms: (cf.terms.0.exponents().to_vec(), cf.terms.1.exponents().to_vec()),
        statement: cf.statement.clone(),
        expanded,
        homogeneous: cf.is_homogeneous(&sys.var_dims)?,
    })
}

/// Runs the analysis selected by the problem's mode. Not-precomplete and
/// insufficient-kappa outcomes are reported through [`Status`]; other
/// failures are errors.
pub fn analyze(p: &Problem, opts: Options) -> Result<AnalysisReport> {
    p.validate()?;
    let eff = p.effective()?;
    let m = eff.matroid()?;
    let names = eff.var_names();

    let mut status = Status::Ok;
    let mut canonical_kappa = None;
    let mut kappa = None;
    let mut prebases = Vec::new();
    let mut systems: Vec<EquationSystem> = Vec::new();

    if eff.dependent.is_some() {
        let dep = eff.dependent_index()?;
        match engine::canonical_kappa(&eff) {
            Ok(k) => canonical_kappa = Some(k),
            Err(Error::NotPrecomplete) => {}
            Err(e) => return Err(e),
        }
        for pb in engine::prebases(&eff)? {
            kappa = Some(pb.kappa);
            prebases.push(PrebasisReport {
                members: names_of(&names, &pb.members),
                dependent: (&pb.dependent).into(),
                others: pb
                    .others
                    .iter()
                    .map(|o| OtherExponents { var: names[o.var].clone(), k: o.exps.k, kj: o.exps.kj.clone() })
                    .collect(),
            });
        }
        if eff.mode == Mode::Unbalanced {
            match engine::analyze_unbalanced(&eff) {
                Ok(sys) => systems.push(sys),
                Err(Error::NotPrecomplete) => {
                    status = Status::NotPrecomplete;
                    if let KappaPolicy::Fixed(k) = eff.kappa {
                        kappa = Some(k);
                    }
                }
                Err(Error::KappaInsufficient(k)) => {
                    status = Status::KappaInsufficient;
                    let equations = engine::equations_at(&eff, k)?;
                    systems.push(EquationSystem {
                        dependent: names[dep].clone(),
                        dependent_index: dep,
                        kappa: Some(k),
                        var_names: names.clone(),
                        var_dims: eff.var_dims(),
                        raw_count: equations.len(),
                        equations,
                        merged: Vec::new(),
                    });
                }
                Err(e) => return Err(e),
            }
        }
    } else if eff.mode == Mode::Unbalanced {
        return Err(Error::NoDependent);
    }
    if eff.mode == Mode::Balanced {
        systems = engine::analyze_balanced(&eff)?;
    }

    let mut closed_forms = Vec::new();
    let mut symmetry_failures = Vec::new();
    if opts.symmetry {
        for (u, v) in &eff.symmetries {
            let mut last_err = None;
            let mut found = false;
            for sys in &systems {
                match engine::apply_symmetry(sys, (u, v)) {
                    Ok(cf) => {
                        closed_forms.push(closed_form_report(p, sys, &cf)?);
                        found = true;
                    }
                    Err(e) => last_err = Some(e),
                }
            }
            if !found {
                let error = last_err.map_or_else(|| "no equation system".to_string(), |e| e.to_string());
                symmetry_failures.push(SymmetryFailure { pair: (u.clone(), v.clone()), error });
            }
        }
    }

    let mut assumptions = Vec::new();
    for sys in &systems {
        for e in &sys.equations {
            for a in &e.assumptions {
                let line = format!("{}: {}", e.psi, a.render(&names));
                if !assumptions.contains(&line) {
                    assumptions.push(line);
                }
            }
        }
    }

    let label_sets = |sets: Vec<Vec<usize>>, label: fn(usize) -> String| {
        sets.iter()
            .enumerate()
            .map(|(i, s)| LabeledSet { label: label(i), members: names_of(&names, s) })
            .collect()
    };
    let matroid = MatroidReport {
        variables: names.clone(),
        bases: label_sets(matroid::bases(&m), matroid::basis_label),
        pseudocircuits: label_sets(matroid::pseudocircuits(&m), matroid::pseudocircuit_label),
        circuits: matroid::circuits(&m).iter().map(|c| names_of(&names, c)).collect(),
        table: opts.table.then(|| matroid::incidence_table(&m)),
    };

    Ok(AnalysisReport {
        problem: p.clone(),
        problem_text: render_problem(p),
        status,
        mode: eff.mode,
        rank: m.rank(),
        dependent: eff.dependent.clone(),
        canonical_kappa,
        kappa,
        prebases,
        systems: systems.iter().map(system_report).collect(),
        matroid,
        closed_forms,
        symmetry_failures,
        assumptions,
    })
}

const PROBLEM_HEADER: &str = "== problem ==";

fn section(out: &mut String, title: &str) {
    let _ = writeln!(out, "\n== {title} ==");
}

fn set(members: &[String]) -> String {
    format!("{{{}}}", members.join(", "))
}

fn opt(v: Option<i64>) -> String {
    v.map_or_else(|| "none".to_string(), |k| k.to_string())
}

fn tuple(v: &[i64]) -> String {
    let parts: Vec<String> = v.iter().map(i64::to_string).collect();
    format!("({})", parts.join(", "))
}

fn render_text(r: &AnalysisReport) -> String {
    let mut out = String::new();
    out.push_str(PROBLEM_HEADER);
    out.push('\n');
    out.push_str(&r.problem_text);

    section(&mut out, "summary");
    let mode = match r.mode {
        Mode::Unbalanced => "unbalanced",
        Mode::Balanced => "balanced",
    };
    let status = match r.status {
        Status::Ok => "ok",
        Status::NotPrecomplete => "not precomplete",
        Status::KappaInsufficient => "kappa insufficient",
    };
    let _ = writeln!(out, "mode: {mode}");
    let _ = writeln!(out, "status: {status}");
    let _ = writeln!(out, "rank: {}", r.rank);
    let _ = writeln!(out, "dependent: {}", r.dependent.as_deref().unwrap_or("none"));
    let _ = writeln!(out, "canonical kappa: {}", opt(r.canonical_kappa));
    let _ = writeln!(out, "kappa: {}", opt(r.kappa));

    if r.dependent.is_some() {
        section(&mut out, "prebases");
        if r.prebases.is_empty() {
            out.push_str("none\n");
        }
        for (i, pb) in r.prebases.iter().enumerate() {
            let _ = writeln!(
                out,
                "{}. {}: k0 = {}, k0j = {}",
                i + 1,
                set(&pb.members),
                pb.dependent.k,
                tuple(&pb.dependent.kj)
            );
            for o in &pb.others {
                let _ = writeln!(out, "   {}: k = {}, kj = {}", o.var, o.k, tuple(&o.kj));
            }
        }
    }

    section(&mut out, "equations");
    if r.systems.is_empty() {
        out.push_str("none\n");
    }
    let balanced = r.mode == Mode::Balanced;
    for sys in &r.systems {
        if balanced {
            let _ = writeln!(
                out,
                "-- {} ({} raw, {} kept) --",
                sys.dependent,
                sys.raw_count,
                sys.equations.len()
            );
        }
        for e in &sys.equations {
            let _ = writeln!(out, "{}", e.text);
        }
        for m in &sys.merged {
            let _ = writeln!(out, "merged: basis {} into {}", set(&m.dropped_basis), m.kept);
        }
    }

    if !r.assumptions.is_empty() {
        section(&mut out, "assumptions");
        for a in &r.assumptions {
            let _ = writeln!(out, "{a}");
        }
    }

    section(&mut out, "matroid");
    for b in &r.matroid.bases {
        let _ = writeln!(out, "basis {} {}", b.label, set(&b.members));
    }
    for pc in &r.matroid.pseudocircuits {
        let _ = writeln!(out, "pseudocircuit {} {}", pc.label, set(&pc.members));
    }
    for c in &r.matroid.circuits {
        let _ = writeln!(out, "circuit {}", set(c));
    }
    if let Some(table) = &r.matroid.table {
        out.push('\n');
        out.push_str(&table.render_text());
    }

    if !r.closed_forms.is_empty() || !r.symmetry_failures.is_empty() {
        section(&mut out, "symmetry");
        for cf in &r.closed_forms {
            let _ = writeln!(out, "{} <-> {}: {}", cf.pair.0, cf.pair.1, cf.statement);
            if let Some(x) = &cf.expanded {
                let _ = writeln!(out, "  expanded: {x}");
            }
        }
        for f in &r.symmetry_failures {
            let _ = writeln!(out, "{} <-> {}: {}", f.pair.0, f.pair.1, f.error);
        }
    }
    out
}

pub fn render_report(r: &AnalysisReport, format: Format) -> String {
    match format {
        Format::Text => render_text(r),
        Format::Structured => {
            let mut s = serde_json::to_string_pretty(r).expect("report serializes");
            s.push('\n');
            s
        }
    }
}

/// The echoed problem file at the top of a text report.
pub fn problem_block(report_text: &str) -> Option<&str> {
    let start = report_text.find(PROBLEM_HEADER)? + PROBLEM_HEADER.len() + 1;
    let rest = report_text.get(start..)?;
    let end = rest.find("\n== ").map_or(rest.len(), |i| i + 1);
    Some(&rest[..end])
}
