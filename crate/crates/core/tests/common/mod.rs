//! Brute-force reference implementations used to check the library.
//!
//! Nothing here calls into the library's linear algebra: ranks come from
//! minors, solutions and kernels from exhaustive search.

#![allow(dead_code)]

use itertools::Itertools;
use piforge::engine::Problem;
use rand::Rng;

/// Row-major small integer matrix.
pub type Rows = Vec<Vec<i64>>;

pub fn det(m: &[Vec<i64>]) -> i128 {
    match m.len() {
        0 => 1,
        1 => m[0][0] as i128,
        n => (0..n)
            .map(|j| {
                let minor: Rows = m[1..]
                    .iter()
                    .map(|row| row.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, &v)| v).collect())
                    .collect();
                let sign = if j % 2 == 0 { 1 } else { -1 };
                sign * m[0][j] as i128 * det(&minor)
            })
            .sum(),
    }
}

/// Rank of the columns `cols` of `rows`: the largest size of a nonzero
/// square minor.
pub fn rank_of(rows: &Rows, cols: &[usize]) -> usize {
    let nrows = rows.len();
    for size in (1..=cols.len().min(nrows)).rev() {
        for rs in (0..nrows).combinations(size) {
            for cs in cols.iter().combinations(size) {
                let minor: Rows = rs.iter().map(|&r| cs.iter().map(|&&c| rows[r][c]).collect()).collect();
                if det(&minor) != 0 {
                    return size;
                }
            }
        }
    }
    0
}

pub fn rank(rows: &Rows) -> usize {
    let n = rows.first().map_or(0, Vec::len);
    rank_of(rows, &(0..n).collect::<Vec<_>>())
}

pub fn columns(rows: &Rows) -> Rows {
    let n = rows.first().map_or(0, Vec::len);
    (0..n).map(|j| rows.iter().map(|r| r[j]).collect()).collect()
}

pub fn mat_vec(rows: &Rows, v: &[i64]) -> Vec<i64> {
    rows.iter().map(|r| r.iter().zip(v).map(|(a, b)| a * b).sum()).collect()
}

pub fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

fn odometer(v: &mut [i64], lo: i64, hi: i64) -> bool {
    for x in v.iter_mut() {
        if *x < hi {
            *x += 1;
            return true;
        }
        *x = lo;
    }
    false
}

/// Least `k` in `1..=max_k` and the coefficients `c` in `[-bound, bound]`
/// with `sum c_j basis_j = kappa * k * target`. The last coefficient is
/// solved from one row instead of searched.
pub fn brute_canonical(
    target: &[i64],
    basis: &[Vec<i64>],
    kappa: i64,
    max_k: i64,
    bound: i64,
) -> Option<(i64, Vec<i64>)> {
    let r = basis.len();
    let last = &basis[r - 1];
    let pivot = last.iter().position(|&v| v != 0)?;
    for k in 1..=max_k {
        let rhs: Vec<i64> = target.iter().map(|t| t * kappa * k).collect();
        let mut c = vec![-bound; r - 1];
        loop {
            let partial: i64 = (0..r - 1).map(|j| c[j] * basis[j][pivot]).sum();
            let rest = rhs[pivot] - partial;
            if rest % last[pivot] == 0 {
                let cl = rest / last[pivot];
                if cl.abs() <= bound {
                    let ok = (0..target.len()).all(|i| {
                        let s: i64 = (0..r - 1).map(|j| c[j] * basis[j][i]).sum::<i64>() + cl * last[i];
                        s == rhs[i]
                    });
                    if ok {
                        let mut out = c.clone();
                        out.push(cl);
                        return Some((k, out));
                    }
                }
            }
            if !odometer(&mut c, -bound, bound) {
                break;
            }
        }
    }
    None
}

/// Every primitive kernel vector in `[-bound, bound]^n`, sign-normalized
/// so that entry `designated` (or else the first nonzero entry) is
/// positive.
pub fn brute_kernels(rows: &Rows, n: usize, designated: usize, bound: i64) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    let mut v = vec![-bound; n];
    loop {
        let g = v.iter().fold(0, |a, &b| gcd(a, b));
        if g == 1 && mat_vec(rows, &v).iter().all(|&x| x == 0) {
            let lead = if v[designated] != 0 { v[designated] } else { *v.iter().find(|&&x| x != 0).unwrap() };
            if lead > 0 {
                out.push(v.clone());
            }
        }
        if !odometer(&mut v, -bound, bound) {
            break;
        }
    }
    out
}

pub fn random_rows(rng: &mut impl Rng, nrows: usize, ncols: usize) -> Rows {
    (0..nrows).map(|_| (0..ncols).map(|_| rng.gen_range(-3..=3)).collect()).collect()
}

/// A problem with one variable `v{j}` per column and `v0` dependent.
pub fn problem_from(rows: &Rows) -> Problem {
    let ncols = rows.first().map_or(0, Vec::len);
    let dims: Vec<String> = (0..rows.len()).map(|i| format!("D{i}")).collect();
    let mut p = Problem::new(dims);
    for (j, col) in columns(rows).iter().enumerate().take(ncols) {
        p = p.with_var(&format!("v{j}"), col);
    }
    p.with_dependent("v0")
}

/// A random product of elementary integer row operations.
pub fn unimodular(rng: &mut impl Rng, n: usize) -> Rows {
    let mut u: Rows = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
    for _ in 0..8 {
        let i = rng.gen_range(0..n);
        match rng.gen_range(0..3) {
            0 if n > 1 => {
                let j = (i + rng.gen_range(1..n)) % n;
                let c = if rng.gen_bool(0.5) { 1 } else { -1 };
                let src = u[j].clone();
                for (a, b) in u[i].iter_mut().zip(src) {
                    *a += c * b;
                }
            }
            1 if n > 1 => {
                let j = (i + rng.gen_range(1..n)) % n;
                u.swap(i, j);
            }
            _ => u[i].iter_mut().for_each(|a| *a = -*a),
        }
    }
    u
}

pub fn mat_mul(a: &Rows, b: &Rows) -> Rows {
    let n = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| (0..n).map(|j| row.iter().zip(b).map(|(x, brow)| x * brow[j]).sum()).collect())
        .collect()
}

/// All subsets of `0..n` in size-then-lexicographic order.
pub fn subsets(n: usize) -> impl Iterator<Item = Vec<usize>> {
    (0..=n).flat_map(move |k| (0..n).combinations(k))
}
