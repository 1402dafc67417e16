//! Power products over a fixed, ordered variable list.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::qspace::DimExp;
use crate::zlinalg::{gcd_all, IntMatrix};

/// Exponent vector over the full variable list; zero entries are absent
/// variables.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Monomial(Vec<i64>);

impl Monomial {
    pub fn new(exps: Vec<i64>) -> Self {
        Monomial(exps)
    }

    pub fn unit(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn exponents(&self) -> &[i64] {
        &self.0
    }

    pub fn get(&self, var: usize) -> i64 {
        self.0[var]
    }

    pub fn set(&mut self, var: usize, exp: i64) {
        self.0[var] = exp;
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.0.len()).filter(|&i| self.0[i] != 0).collect()
    }

    pub fn inverse(&self) -> Monomial {
        Monomial(self.0.iter().map(|e| -e).collect())
    }

    pub fn mul(&self, other: &Monomial) -> Result<Monomial> {
        if self.len() != other.len() {
            return Err(Error::LengthMismatch { expected: self.len(), found: other.len() });
        }
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_add(*b).ok_or(Error::Overflow))
            .collect::<Result<_>>()
            .map(Monomial)
    }

    pub fn div(&self, other: &Monomial) -> Result<Monomial> {
        self.mul(&other.inverse())
    }

    /// Exchanges the exponents of two variables.
    pub fn swap(&self, u: usize, v: usize) -> Monomial {
        let mut out = self.clone();
        out.0.swap(u, v);
        out
    }

    /// Componentwise minimum, the largest common factor in the exponent order.
    pub fn common_factor(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.min(b)).collect())
    }

    pub fn gcd(&self) -> i64 {
        gcd_all(&self.0)
    }

    /// Divides out the gcd of the exponents.
    pub fn primitive(&self) -> Monomial {
        match self.gcd() {
            0 | 1 => self.clone(),
            g => Monomial(self.0.iter().map(|e| e / g).collect()),
        }
    }

    /// The dimension of the monomial given the dimensional matrix whose
    /// columns are the variables.
    pub fn dimension(&self, matrix: &IntMatrix) -> Result<DimExp> {
        matrix.mul_vec(&self.0).map(DimExp::new)
    }

    pub fn is_dimensionless(&self, matrix: &IntMatrix) -> Result<bool> {
        Ok(self.dimension(matrix)?.is_identity())
    }

    /// Text form such as `t^2 M d^-3 G`. Variables follow declaration
    /// order, except that `lead` (if given and present) comes first. The
    /// unit monomial renders as `1`.
    pub fn render<S: AsRef<str>>(&self, names: &[S], lead: Option<usize>) -> String {
        let mut order: Vec<usize> = Vec::with_capacity(self.0.len());
        if let Some(l) = lead.filter(|&l| self.0[l] != 0) {
            order.push(l);
        }
        order.extend((0..self.0.len()).filter(|&i| Some(i) != lead && self.0[i] != 0));
        if order.is_empty() {
            return "1".to_string();
        }
        order
            .into_iter()
            .map(|i| render_power(names[i].as_ref(), self.0[i]))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

pub(crate) fn render_power(name: &str, exp: i64) -> String {
    if exp == 1 {
        name.to_string()
    } else {
        format!("{name}^{exp}")
    }
}

/// A dimensionless monomial with coprime exponents attached to a
/// pseudocircuit.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct PiMonomial(Monomial);

impl PiMonomial {
    pub(crate) fn new_unchecked(m: Monomial) -> Self {
        PiMonomial(m)
    }

    pub fn monomial(&self) -> &Monomial {
        &self.0
    }

    pub fn into_monomial(self) -> Monomial {
        self.0
    }

    pub fn exponents(&self) -> &[i64] {
        self.0.exponents()
    }

    pub fn get(&self, var: usize) -> i64 {
        self.0.get(var)
    }

    pub fn render<S: AsRef<str>>(&self, names: &[S], lead: Option<usize>) -> String {
        self.0.render(names, lead)
    }
}
