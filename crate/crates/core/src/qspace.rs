//! Quantities and dimensions in expanded form.
//!
//! A dimension is an integer exponent vector over the declared base
//! dimensions, i.e. an element of a free abelian group written additively.
//! A quantity is an exact rational coefficient times such a dimension; a
//! zero coefficient is the zero quantity of that dimension.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::zlinalg::{self, IntMatrix};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct DimExp(Vec<i64>);

impl DimExp {
    pub fn new(exponents: Vec<i64>) -> Self {
        DimExp(exponents)
    }

    pub fn identity(len: usize) -> Self {
        DimExp(vec![0; len])
    }

    pub fn exponents(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    fn check_len(&self, other: &DimExp) -> Result<()> {
        if self.len() != other.len() {
            return Err(Error::LengthMismatch { expected: self.len(), found: other.len() });
        }
        Ok(())
    }

    pub fn mul(&self, other: &DimExp) -> Result<DimExp> {
        self.check_len(other)?;
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_add(*b).ok_or(Error::Overflow))
            .collect::<Result<_>>()
            .map(DimExp)
    }

    pub fn pow(&self, n: i64) -> Result<DimExp> {
        self.0
            .iter()
            .map(|a| a.checked_mul(n).ok_or(Error::Overflow))
            .collect::<Result<_>>()
            .map(DimExp)
    }

    pub fn inv(&self) -> Result<DimExp> {
        self.pow(-1)
    }
}

impl fmt::Display for DimExp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(i64::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

pub fn dim_mul(a: &DimExp, b: &DimExp) -> Result<DimExp> {
    a.mul(b)
}

pub fn dim_pow(a: &DimExp, n: i64) -> Result<DimExp> {
    a.pow(n)
}

/// True iff no nontrivial integer combination of the dimensions vanishes.
pub fn independent(dims: &[DimExp]) -> Result<bool> {
    let Some(first) = dims.first() else {
        return Ok(true);
    };
    let cols: Vec<Vec<i64>> = dims.iter().map(|d| d.0.clone()).collect();
    let m = IntMatrix::from_columns(first.len(), &cols)?;
    Ok(zlinalg::rank(&m) == dims.len())
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Quantity {
    pub coeff: BigRational,
    pub dim: DimExp,
}

impl Quantity {
    pub fn new(coeff: BigRational, dim: DimExp) -> Self {
        Quantity { coeff, dim }
    }

    /// Convenience constructor for `num/den · dim`.
    pub fn ratio(num: i64, den: i64, dim: DimExp) -> Self {
        Quantity { coeff: BigRational::new(num.into(), den.into()), dim }
    }

    /// The unit quantity `1_Q` over `len` base dimensions.
    pub fn one(len: usize) -> Self {
        Quantity { coeff: BigRational::one(), dim: DimExp::identity(len) }
    }

    pub fn zero(dim: DimExp) -> Self {
        Quantity { coeff: BigRational::zero(), dim }
    }

    pub fn is_zero(&self) -> bool {
        self.coeff.is_zero()
    }

    pub fn mul(&self, other: &Quantity) -> Result<Quantity> {
        Ok(Quantity { coeff: &self.coeff * &other.coeff, dim: self.dim.mul(&other.dim)? })
    }

    pub fn invert(&self) -> Result<Quantity> {
        if self.is_zero() {
            return Err(Error::NotInvertible);
        }
        Ok(Quantity { coeff: self.coeff.recip(), dim: self.dim.inv()? })
    }

    pub fn pow(&self, n: i64) -> Result<Quantity> {
        if n < 0 && self.is_zero() {
            return Err(Error::NotInvertible);
        }
        let e = i32::try_from(n).map_err(|_| Error::Overflow)?;
        Ok(Quantity { coeff: num_traits::pow::Pow::pow(&self.coeff, e), dim: self.dim.pow(n)? })
    }
}

pub fn qty_mul(a: &Quantity, b: &Quantity) -> Result<Quantity> {
    a.mul(b)
}

pub fn qty_invert(a: &Quantity) -> Result<Quantity> {
    a.invert()
}

/// Nonzero quantities with independent dimensions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalBasis {
    members: Vec<Quantity>,
    base_len: usize,
}

impl LocalBasis {
    /// `base_len` is the number of base dimensions; it matters only for the
    /// empty basis.
    pub fn new(members: Vec<Quantity>, base_len: usize) -> Result<Self> {
        if members.iter().any(Quantity::is_zero) {
            return Err(Error::InvalidBasis("zero quantity in basis"));
        }
        if let Some(bad) = members.iter().find(|q| q.dim.len() != base_len) {
            return Err(Error::LengthMismatch { expected: base_len, found: bad.dim.len() });
        }
        let dims: Vec<DimExp> = members.iter().map(|q| q.dim.clone()).collect();
        if !independent(&dims)? {
            return Err(Error::InvalidBasis("dependent dimensions"));
        }
        Ok(LocalBasis { members, base_len })
    }

    pub fn members(&self) -> &[Quantity] {
        &self.members
    }

    /// `mu · prod e_j^exps_j`.
    pub fn reconstruct(&self, expansion: &Expansion) -> Result<Quantity> {
        if expansion.exps.len() != self.members.len() {
            return Err(Error::LengthMismatch {
                expected: self.members.len(),
                found: expansion.exps.len(),
            });
        }
        let mut q = Quantity::new(expansion.mu.clone(), DimExp::identity(self.base_len));
        for (e, &k) in self.members.iter().zip(&expansion.exps) {
            q = q.mul(&e.pow(k)?)?;
        }
        Ok(q)
    }
}

/// The measure `mu` of a quantity together with its integer exponents
/// relative to a local basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Expansion {
    pub mu: BigRational,
    pub exps: Vec<i64>,
}

/// Expands `q` as `mu · prod e_j^exps_j`; the result is unique.
pub fn expand(q: &Quantity, basis: &LocalBasis) -> Result<Expansion> {
    if q.dim.len() != basis.base_len {
        return Err(Error::LengthMismatch { expected: basis.base_len, found: q.dim.len() });
    }
    let cols: Vec<Vec<i64>> = basis.members.iter().map(|e| e.dim.0.clone()).collect();
    let ce = match zlinalg::canonical_solve(&q.dim.0, &cols, 1) {
        Ok(ce) => ce,
        Err(Error::NoSolution) => return Err(Error::NotExpandable),
        Err(e) => return Err(e),
    };
    if ce.k != 1 {
        // only a proper power of q lies in the integer span
        return Err(Error::NotExpandable);
    }
    let mut scale = BigRational::one();
    for (e, &k) in basis.members.iter().zip(&ce.kj) {
        let i = i32::try_from(k).map_err(|_| Error::Overflow)?;
        scale *= num_traits::pow::Pow::pow(&e.coeff, i);
    }
    Ok(Expansion { mu: &q.coeff / scale, exps: ce.kj })
}

/// Renders a rational as `p` or `p/q`.
pub fn format_rational(r: &BigRational) -> String {
    if r.denom() == &BigInt::one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}
