//! The column matroid of a dimensional matrix.
//!
//! Bases are maximal independent variable sets ("repeating variables"),
//! pseudocircuits are `r + 1` sets containing a basis, and each
//! pseudocircuit carries a π-monomial: the primitive integer kernel vector of
//! its columns. Enumeration is exhaustive; problems have a dozen variables
//! at most.

use std::fmt::Write as _;

use itertools::Itertools;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::monomial::{Monomial, PiMonomial};
use crate::zlinalg::{self, IntMatrix};

/// Sorted variable indices.
pub type IndexSet = Vec<usize>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColumnMatroid {
    matrix: IntMatrix,
    var_names: Vec<String>,
    rank: usize,
}

impl ColumnMatroid {
    pub fn new(matrix: IntMatrix, var_names: Vec<String>) -> Result<Self> {
        if var_names.len() != matrix.cols() {
            return Err(Error::LengthMismatch { expected: matrix.cols(), found: var_names.len() });
        }
        let rank = zlinalg::rank(&matrix);
        Ok(ColumnMatroid { matrix, var_names, rank })
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn var_names(&self) -> &[String] {
        &self.var_names
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Number of variables (columns).
    pub fn len(&self) -> usize {
        self.matrix.cols()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn subset_rank(&self, subset: &[usize]) -> usize {
        zlinalg::rank(&self.matrix.select_columns(subset))
    }

    pub fn is_independent(&self, subset: &[usize]) -> bool {
        self.subset_rank(subset) == subset.len()
    }

    pub fn is_basis(&self, subset: &[usize]) -> bool {
        subset.len() == self.rank && self.is_independent(subset)
    }

    pub fn is_pseudocircuit(&self, subset: &[usize]) -> bool {
        subset.len() == self.rank + 1 && self.subset_rank(subset) == self.rank
    }

    /// Renders an index set as `{t, M, d}`.
    pub fn format_set(&self, set: &[usize]) -> String {
        format!("{{{}}}", set.iter().map(|&i| self.var_names[i].as_str()).join(", "))
    }
}

/// All bases, in lexicographic order of sorted index tuples.
pub fn bases(m: &ColumnMatroid) -> Vec<IndexSet> {
    (0..m.len())
        .combinations(m.rank())
        .filter(|s| m.is_independent(s))
        .collect()
}

/// All `(r + 1)`-subsets that contain a basis, lexicographically.
pub fn pseudocircuits(m: &ColumnMatroid) -> Vec<IndexSet> {
    (0..m.len())
        .combinations(m.rank() + 1)
        .filter(|s| m.subset_rank(s) == m.rank())
        .collect()
}

/// All minimal dependent subsets, lexicographically. Every circuit has at
/// most `r + 1` elements.
pub fn circuits(m: &ColumnMatroid) -> Vec<IndexSet> {
    let max = (m.rank() + 1).min(m.len());
    let mut out: Vec<IndexSet> = (1..=max)
        .flat_map(|size| (0..m.len()).combinations(size))
        .filter(|s| {
            m.subset_rank(s) == s.len() - 1
                && (0..s.len()).all(|skip| {
                    let rest: Vec<usize> =
                        s.iter().enumerate().filter(|&(k, _)| k != skip).map(|(_, &v)| v).collect();
                    m.is_independent(&rest)
                })
        })
        .collect();
    out.sort();
    out
}

/// The π-monomial of a pseudocircuit with `positive_var` given a positive
/// exponent. If that exponent is zero the first nonzero exponent is made
/// positive instead.
pub fn pi_monomial(m: &ColumnMatroid, pc: &[usize], positive_var: usize) -> Result<PiMonomial> {
    let mut sorted = pc.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != pc.len() || sorted.iter().any(|&i| i >= m.len()) || !m.is_pseudocircuit(&sorted)
    {
        return Err(Error::NotAPseudocircuit(pc.to_vec()));
    }
    let pos = sorted.iter().position(|&i| i == positive_var).ok_or(Error::NotAMember(positive_var))?;
    let kernel = zlinalg::primitive_kernel(&m.matrix().select_columns(&sorted), pos)?;
    let mut exps = Monomial::unit(m.len());
    for (&var, &k) in sorted.iter().zip(&kernel) {
        exps.set(var, k);
    }
    Ok(PiMonomial::new_unchecked(exps))
}

/// Membership grid of variables against bases and pseudocircuits.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IncidenceTable {
    pub basis_labels: Vec<String>,
    pub pseudocircuit_labels: Vec<String>,
    pub bases: Vec<IndexSet>,
    pub pseudocircuits: Vec<IndexSet>,
    pub rows: Vec<IncidenceRow>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IncidenceRow {
    pub var: String,
    pub in_basis: Vec<bool>,
    pub in_pseudocircuit: Vec<bool>,
}

const GREEK: [&str; 24] = [
    "α", "β", "γ", "δ", "ε", "ζ", "η", "θ", "ι", "κ", "λ", "μ", "ν", "ξ", "ο", "π", "ρ", "σ", "τ",
    "υ", "φ", "χ", "ψ", "ω",
];

pub fn basis_label(i: usize) -> String {
    let letter = char::from(b'A' + (i % 26) as u8);
    match i / 26 {
        0 => letter.to_string(),
        n => format!("{letter}{n}"),
    }
}

pub fn pseudocircuit_label(i: usize) -> String {
    match i / GREEK.len() {
        0 => GREEK[i].to_string(),
        n => format!("{}{n}", GREEK[i % GREEK.len()]),
    }
}

pub fn incidence_table(m: &ColumnMatroid) -> IncidenceTable {
    if m.is_empty() {
        return IncidenceTable {
            basis_labels: vec![],
            pseudocircuit_labels: vec![],
            bases: vec![],
            pseudocircuits: vec![],
            rows: vec![],
        };
    }
    let bases = bases(m);
    let pcs = pseudocircuits(m);
    let rows = m
        .var_names()
        .iter()
        .enumerate()
        .map(|(v, name)| IncidenceRow {
            var: name.clone(),
            in_basis: bases.iter().map(|b| b.contains(&v)).collect(),
            in_pseudocircuit: pcs.iter().map(|p| p.contains(&v)).collect(),
        })
        .collect();
    IncidenceTable {
        basis_labels: (0..bases.len()).map(basis_label).collect(),
        pseudocircuit_labels: (0..pcs.len()).map(pseudocircuit_label).collect(),
        bases,
        pseudocircuits: pcs,
        rows,
    }
}

impl IncidenceTable {
    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Fixed-width text grid: `+`/`-` for basis membership, `∗`/`∘` for
    /// pseudocircuit membership.
    pub fn render_text(&self) -> String {
        if self.is_empty() {
            return String::new();
        }
        let width = |s: &str| s.chars().count();
        let name_w = self.rows.iter().map(|r| width(&r.var)).max().unwrap_or(0);
        let labels: Vec<&String> =
            self.basis_labels.iter().chain(&self.pseudocircuit_labels).collect();
        let col_w = labels.iter().map(|l| width(l)).max().unwrap_or(1);
        let cell = |s: &str| format!(" {}{}", " ".repeat(col_w - width(s)), s);

        let mut out = String::new();
        out.push_str(&" ".repeat(name_w));
        for l in &labels {
            out.push_str(&cell(l));
        }
        out.push('\n');
        for row in &self.rows {
            let _ = write!(out, "{}{}", row.var, " ".repeat(name_w - width(&row.var)));
            for &b in &row.in_basis {
                out.push_str(&cell(if b { "+" } else { "-" }));
            }
            for &p in &row.in_pseudocircuit {
                out.push_str(&cell(if p { "∗" } else { "∘" }));
            }
            out.push('\n');
        }
        out
    }
}
