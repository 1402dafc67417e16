//! Exact integer/rational linear algebra for dimensional matrices.
//!
//! Matrices are tiny (a handful of base dimensions by a dozen variables), so
//! elimination runs on arbitrary-precision integers and only the final
//! results are narrowed back to `i64`. Narrowing failures surface as
//! [`Error::Overflow`].

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

/// Dense row-major integer matrix. Column `j` holds the dimensional
/// exponents of variable `j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<i64>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, entries: vec![0; rows * cols] }
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for row in rows {
            if row.len() != cols {
                return Err(Error::LengthMismatch { expected: cols, found: row.len() });
            }
            entries.extend_from_slice(row);
        }
        Ok(IntMatrix { rows: rows.len(), cols, entries })
    }

    /// Builds a matrix from column vectors of length `rows`.
    pub fn from_columns(rows: usize, columns: &[Vec<i64>]) -> Result<Self> {
        let mut m = IntMatrix::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            if col.len() != rows {
                return Err(Error::LengthMismatch { expected: rows, found: col.len() });
            }
            for (i, &v) in col.iter().enumerate() {
                m.entries[i * m.cols + j] = v;
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.entries[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<i64> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn columns(&self) -> Vec<Vec<i64>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.entries[j * self.rows + i] = self.get(i, j);
            }
        }
        t
    }

    /// The submatrix formed by the given columns, in the given order.
    pub fn select_columns(&self, idx: &[usize]) -> IntMatrix {
        let mut m = IntMatrix::zeros(self.rows, idx.len());
        for i in 0..self.rows {
            for (k, &j) in idx.iter().enumerate() {
                m.entries[i * idx.len() + k] = self.get(i, j);
            }
        }
        m
    }

    pub fn mul_vec(&self, v: &[i64]) -> Result<Vec<i64>> {
        if v.len() != self.cols {
            return Err(Error::LengthMismatch { expected: self.cols, found: v.len() });
        }
        (0..self.rows)
            .map(|i| {
                self.row(i).iter().zip(v).try_fold(0i64, |acc, (&a, &b)| {
                    a.checked_mul(b).and_then(|p| acc.checked_add(p)).ok_or(Error::Overflow)
                })
            })
            .collect()
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.rows {
            return Err(Error::LengthMismatch { expected: self.cols, found: other.rows });
        }
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for j in 0..other.cols {
            let col = self.mul_vec(&other.column(j))?;
            for (i, v) in col.into_iter().enumerate() {
                out.entries[i * other.cols + j] = v;
            }
        }
        Ok(out)
    }

    fn to_big_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(|&v| BigInt::from(v)).collect())
            .collect()
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|v| format!("{v:>3}")).collect();
            writeln!(f, "[{}]", row.join(" "))?;
        }
        Ok(())
    }
}

/// `(k, kj)` with `k > 0` and `gcd(k, kj...) = 1`, meaning
/// `target^k = prod basis_j^kj_j` at the dimension level.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct CanonicalExponents {
    pub k: i64,
    pub kj: Vec<i64>,
}

/// Row echelon form produced by fraction-free (Bareiss) elimination.
struct Echelon {
    rows: Vec<Vec<BigInt>>,
    pivots: Vec<usize>,
}

fn echelon(mut m: Vec<Vec<BigInt>>, ncols: usize) -> Echelon {
    let nrows = m.len();
    let mut pivots = Vec::new();
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        // first nonzero entry at or below the current row
        let Some(p) = (r..nrows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        for i in r + 1..nrows {
            for j in c + 1..ncols {
                let num = &m[r][c] * &m[i][j] - &m[i][c] * &m[r][j];
                debug_assert!((&num % &prev).is_zero());
                m[i][j] = num / &prev;
            }
            m[i][c] = BigInt::zero();
        }
        prev = m[r][c].clone();
        pivots.push(c);
        r += 1;
    }
    Echelon { rows: m, pivots }
}

/// Solves the echelon system for the pivot unknowns, given values for the
/// free unknowns. `rhs` is an optional augmented column index.
fn back_substitute(
    ech: &Echelon,
    nvars: usize,
    rhs: Option<usize>,
    free: impl Fn(usize) -> BigRational,
) -> Vec<BigRational> {
    let mut x: Vec<Option<BigRational>> = vec![None; nvars];
    for (j, xj) in x.iter_mut().enumerate() {
        if !ech.pivots.contains(&j) {
            *xj = Some(free(j));
        }
    }
    for (k, &pc) in ech.pivots.iter().enumerate().rev() {
        let row = &ech.rows[k];
        let mut acc = match rhs {
            Some(c) => BigRational::from_integer(row[c].clone()),
            None => BigRational::zero(),
        };
        for j in pc + 1..nvars {
            let xj = x[j].as_ref().expect("later unknowns are already solved");
            acc -= BigRational::from_integer(row[j].clone()) * xj;
        }
        x[pc] = Some(acc / BigRational::from_integer(row[pc].clone()));
    }
    x.into_iter().map(|v| v.expect("every unknown assigned")).collect()
}

/// Rank over the rationals.
pub fn rank(m: &IntMatrix) -> usize {
    echelon(m.to_big_rows(), m.cols()).pivots.len()
}

/// Unique rational solution of `a x = b` for a matrix with independent
/// columns.
pub fn solve_rational(a: &IntMatrix, b: &[i64]) -> Result<Vec<BigRational>> {
    if b.len() != a.rows() {
        return Err(Error::LengthMismatch { expected: a.rows(), found: b.len() });
    }
    let n = a.cols();
    let mut rows = a.to_big_rows();
    for (row, &bi) in rows.iter_mut().zip(b) {
        row.push(BigInt::from(bi));
    }
    let ech = echelon(rows, n + 1);
    if ech.pivots.iter().filter(|&&p| p < n).count() != n {
        return Err(Error::DependentColumns);
    }
    if ech.pivots.contains(&n) {
        return Err(Error::NoSolution);
    }
    Ok(back_substitute(&ech, n, Some(n), |_| unreachable!("no free unknowns")))
}

fn big_to_i64(v: &BigInt) -> Result<i64> {
    v.to_i64().ok_or(Error::Overflow)
}

/// Scales a rational vector by the lcm of its denominators, returning the
/// scale and the integer vector.
fn clear_denominators(x: &[BigRational]) -> (BigInt, Vec<BigInt>) {
    let scale = x.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
    let ints = x
        .iter()
        .map(|v| v.numer() * (&scale / v.denom()))
        .collect();
    (scale, ints)
}

fn gcd_big(values: &[BigInt]) -> BigInt {
    values.iter().fold(BigInt::zero(), |acc, v| acc.gcd(v))
}

/// Canonical exponents of `target` against independent `basis_cols`.
///
/// Finds the least positive `k` such that `kappa * k * target` is an integer
/// combination of the basis columns, then divides out any common factor.
pub fn canonical_solve(
    target: &[i64],
    basis_cols: &[Vec<i64>],
    kappa: i64,
) -> Result<CanonicalExponents> {
    if kappa <= 0 {
        return Err(Error::InvalidKappa(kappa));
    }
    let a = IntMatrix::from_columns(target.len(), basis_cols)?;
    let rhs: Vec<i64> = target
        .iter()
        .map(|&t| t.checked_mul(kappa).ok_or(Error::Overflow))
        .collect::<Result<_>>()?;
    let x = solve_rational(&a, &rhs)?;

    // solutions scale linearly, so the least k is the lcm of denominators
    let (k, kj) = clear_denominators(&x);
    let mut all = Vec::with_capacity(kj.len() + 1);
    all.push(k);
    all.extend(kj);
    let g = gcd_big(&all);
    if !g.is_one() {
        for v in &mut all {
            *v /= &g;
        }
    }
    let k = big_to_i64(&all[0])?;
    let kj = all[1..].iter().map(big_to_i64).collect::<Result<_>>()?;
    Ok(CanonicalExponents { k, kj })
}

/// Primitive integer generator of a rank-1 kernel.
///
/// The sign makes entry `designated` positive, or the first nonzero entry
/// positive when `designated` is zero.
pub fn primitive_kernel(m: &IntMatrix, designated: usize) -> Result<Vec<i64>> {
    let n = m.cols();
    if designated >= n {
        return Err(Error::NotAMember(designated));
    }
    let ech = echelon(m.to_big_rows(), n);
    let nullity = n - ech.pivots.len();
    if nullity != 1 {
        return Err(Error::NotPseudocircuit { nullity });
    }
    let x = back_substitute(&ech, n, None, |_| BigRational::one());
    let (_, mut v) = clear_denominators(&x);
    let g = gcd_big(&v);
    for e in &mut v {
        *e /= &g;
    }
    let lead = if !v[designated].is_zero() {
        &v[designated]
    } else {
        v.iter().find(|e| !e.is_zero()).expect("kernel vector is nonzero")
    };
    if lead.is_negative() {
        for e in &mut v {
            *e = -&*e;
        }
    }
    v.iter().map(big_to_i64).collect()
}

/// Greatest common divisor of a slice (0 for an all-zero slice).
pub fn gcd_all(values: &[i64]) -> i64 {
    values.iter().fold(0i64, |acc, &v| acc.gcd(&v))
}
