//! Exact integer linear algebra: Smith normal form and torsion of lattice
//! quotients.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum IntLinError {
    #[error("matrix dimensions do not match ({0} vs {1} rows)")]
    DimensionMismatch(usize, usize),
    #[error("ambient columns are not linearly independent")]
    NotABasis,
    #[error("generator {0} is not in the rational span of the ambient basis")]
    NotInSpan(usize),
    #[error("generator {0} has non-integral coordinates in the ambient basis")]
    NotIntegral(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IntegerMatrix {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<BigInt>>,
}

impl IntegerMatrix {
    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        IntegerMatrix {
            rows: rows.len(),
            cols,
            entries: rows
                .iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        }
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(cols: &[Vec<i64>], dim: usize) -> Self {
        let entries = (0..dim)
            .map(|i| cols.iter().map(|c| BigInt::from(c[i])).collect())
            .collect();
        IntegerMatrix {
            rows: dim,
            cols: cols.len(),
            entries,
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut e = vec![vec![BigInt::zero(); n]; n];
        for (i, row) in e.iter_mut().enumerate() {
            row[i] = BigInt::one();
        }
        IntegerMatrix {
            rows: n,
            cols: n,
            entries: e,
        }
    }

    pub fn mul(&self, other: &IntegerMatrix) -> IntegerMatrix {
        assert_eq!(self.cols, other.rows);
        let mut e = vec![vec![BigInt::zero(); other.cols]; self.rows];
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self.entries[i][k].is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    e[i][j] += &self.entries[i][k] * &other.entries[k][j];
                }
            }
        }
        IntegerMatrix {
            rows: self.rows,
            cols: other.cols,
            entries: e,
        }
    }
}

/// `D = U·M·V` with `U`, `V` unimodular and `D` diagonal with `d_1 | d_2 | …`.
#[derive(Debug, Clone, Serialize)]
pub struct SmithForm {
    /// The nonzero diagonal entries, in divisibility order.
    pub invariant_factors: Vec<BigInt>,
    pub rank: usize,
    pub d: IntegerMatrix,
    pub u: IntegerMatrix,
    pub v: IntegerMatrix,
}

impl SmithForm {
    /// Invariant factors larger than one.
    pub fn torsion(&self) -> Vec<BigInt> {
        self.invariant_factors
            .iter()
            .filter(|d| !d.is_one())
            .cloned()
            .collect()
    }
}

fn swap_rows(m: &mut [Vec<BigInt>], a: usize, b: usize) {
    m.swap(a, b);
}

fn swap_cols(m: &mut [Vec<BigInt>], a: usize, b: usize) {
    for r in m.iter_mut() {
        r.swap(a, b);
    }
}

/// row_a -= q * row_b
fn row_axpy(m: &mut [Vec<BigInt>], a: usize, b: usize, q: &BigInt) {
    let (src, dst) = if a < b {
        let (lo, hi) = m.split_at_mut(b);
        (&hi[0], &mut lo[a])
    } else {
        let (lo, hi) = m.split_at_mut(a);
        (&lo[b], &mut hi[0])
    };
    for (x, y) in dst.iter_mut().zip(src.iter()) {
        *x -= q * y;
    }
}

/// col_a -= q * col_b
fn col_axpy(m: &mut [Vec<BigInt>], a: usize, b: usize, q: &BigInt) {
    for r in m.iter_mut() {
        let t = q * &r[b];
        r[a] -= t;
    }
}

pub fn smith_normal_form(m: &IntegerMatrix) -> SmithForm {
    let (r, c) = (m.rows, m.cols);
    let mut a = m.entries.clone();
    let mut u = IntegerMatrix::identity(r).entries;
    // V is tracked transposed so column operations become row operations.
    let mut vt = IntegerMatrix::identity(c).entries;
    let mut t = 0;
    while t < r.min(c) {
        // pivot of minimal absolute value in the trailing block
        let mut best: Option<(usize, usize)> = None;
        for i in t..r {
            for j in t..c {
                if !a[i][j].is_zero()
                    && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs())
                {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        swap_rows(&mut a, t, pi);
        swap_rows(&mut u, t, pi);
        swap_cols(&mut a, t, pj);
        swap_rows(&mut vt, t, pj);
        loop {
            let mut dirty = false;
            for i in t + 1..r {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].div_floor(&a[t][t]);
                row_axpy(&mut a, i, t, &q);
                row_axpy(&mut u, i, t, &q);
                if !a[i][t].is_zero() {
                    dirty = true;
                }
            }
            for j in t + 1..c {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].div_floor(&a[t][t]);
                col_axpy(&mut a, j, t, &q);
                row_axpy(&mut vt, j, t, &q);
                if !a[t][j].is_zero() {
                    dirty = true;
                }
            }
            if !dirty {
                // divisibility of the remaining block by the pivot
                let bad = (t + 1..r)
                    .flat_map(|i| (t + 1..c).map(move |j| (i, j)))
                    .find(|&(i, j)| !(&a[i][j] % &a[t][t]).is_zero());
                match bad {
                    None => break,
                    Some((i, _)) => {
                        // row_t += row_i, then continue reducing
                        let minus_one = -BigInt::one();
                        row_axpy(&mut a, t, i, &minus_one);
                        row_axpy(&mut u, t, i, &minus_one);
                        continue;
                    }
                }
            }
            // move the smallest entry of row/column t to the pivot
            let mut best = (t, t);
            for i in t + 1..r {
                if !a[i][t].is_zero() && a[i][t].abs() < a[best.0][best.1].abs() {
                    best = (i, t);
                }
            }
            for j in t + 1..c {
                if !a[t][j].is_zero() && a[t][j].abs() < a[best.0][best.1].abs() {
                    best = (t, j);
                }
            }
            if best.0 != t {
                swap_rows(&mut a, t, best.0);
                swap_rows(&mut u, t, best.0);
            } else if best.1 != t {
                swap_cols(&mut a, t, best.1);
                swap_rows(&mut vt, t, best.1);
            }
        }
        if a[t][t].is_negative() {
            for x in a[t].iter_mut() {
                *x = -x.clone();
            }
            for x in u[t].iter_mut() {
                *x = -x.clone();
            }
        }
        t += 1;
    }
    let rank = t;
    let invariant_factors = (0..rank).map(|i| a[i][i].clone()).collect();
    let v = IntegerMatrix {
        rows: c,
        cols: c,
        entries: (0..c)
            .map(|i| (0..c).map(|j| vt[j][i].clone()).collect())
            .collect(),
    };
    SmithForm {
        invariant_factors,
        rank,
        d: IntegerMatrix {
            rows: r,
            cols: c,
            entries: a,
        },
        u: IntegerMatrix {
            rows: r,
            cols: r,
            entries: u,
        },
        v,
    }
}

/// Torsion invariant factors of `(L/M)_tors`, where `L` is spanned by the
/// ambient columns (a basis) and `M` by the generator columns.
pub fn quotient_torsion(
    ambient_basis: &IntegerMatrix,
    sub_generators: &IntegerMatrix,
) -> Result<Vec<BigInt>, IntLinError> {
    if ambient_basis.rows != sub_generators.rows {
        return Err(IntLinError::DimensionMismatch(
            ambient_basis.rows,
            sub_generators.rows,
        ));
    }
    let snf = smith_normal_form(ambient_basis);
    if snf.rank != ambient_basis.cols {
        return Err(IntLinError::NotABasis);
    }
    let k = snf.rank;
    let us = snf.u.mul(sub_generators);
    // coordinates y with D y = U s, one column per generator
    let mut coords = vec![vec![BigInt::zero(); sub_generators.cols]; k];
    for g in 0..sub_generators.cols {
        for i in k..us.rows {
            if !us.entries[i][g].is_zero() {
                return Err(IntLinError::NotInSpan(g));
            }
        }
        for i in 0..k {
            let (q, rem) = us.entries[i][g].div_rem(&snf.invariant_factors[i]);
            if !rem.is_zero() {
                return Err(IntLinError::NotIntegral(g));
            }
            coords[i][g] = q;
        }
    }
    let y = IntegerMatrix {
        rows: k,
        cols: sub_generators.cols,
        entries: coords,
    };
    // x = V y is the integral coordinate matrix; V is unimodular so the
    // quotient Z^k / span(x) is isomorphic to Z^k / span(y).
    Ok(smith_normal_form(&y).torsion())
}

/// A basis (as columns) of the lattice spanned by the columns of `gens`.
pub fn column_basis(gens: &IntegerMatrix) -> IntegerMatrix {
    let snf = smith_normal_form(gens);
    // G·V = U^{-1}·D, whose first `rank` columns form a basis of span(G).
    let gv = gens.mul(&snf.v);
    IntegerMatrix {
        rows: gens.rows,
        cols: snf.rank,
        entries: gv
            .entries
            .iter()
            .map(|r| r[..snf.rank].to_vec())
            .collect(),
    }
}

/// Determinant of a small integer matrix by fraction-free elimination.
pub fn determinant(m: &[Vec<i64>]) -> i64 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut a: Vec<Vec<i128>> = m
        .iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if a[k][k] == 0 {
            match (k + 1..n).find(|&i| a[i][k] != 0) {
                Some(i) => {
                    a.swap(k, i);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    (sign * a[n - 1][n - 1]) as i64
}

/// Prime divisors of a positive integer.
pub fn prime_divisors(n: &BigInt) -> BTreeSet<u64> {
    let mut out = BTreeSet::new();
    let mut n = n.abs().to_u64().expect("small integer");
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.insert(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.insert(n);
    }
    out
}

/// Prime divisors across a list of invariant factors.
pub fn primes_of_factors(factors: &[BigInt]) -> BTreeSet<u64> {
    factors.iter().flat_map(prime_divisors).collect()
}

pub fn product(factors: &[BigInt]) -> BigInt {
    factors.iter().fold(BigInt::one(), |a, b| a * b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn snf_identity() {
        let s = smith_normal_form(&IntegerMatrix::identity(3));
        assert_eq!(s.invariant_factors, ints(&[1, 1, 1]));
    }

    #[test]
    fn snf_reconstructs() {
        let m = IntegerMatrix::from_rows(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
        let s = smith_normal_form(&m);
        assert_eq!(s.invariant_factors, ints(&[2, 6, 12]));
        assert_eq!(s.u.mul(&m).mul(&s.v), s.d);
    }

    #[test]
    fn simple_quotient() {
        let l = IntegerMatrix::identity(2);
        let m = IntegerMatrix::from_columns(&[vec![2, 0], vec![0, 1]], 2);
        assert_eq!(quotient_torsion(&l, &m).unwrap(), ints(&[2]));
        assert!(quotient_torsion(&l, &l).unwrap().is_empty());
    }

    #[test]
    fn non_integral_rejected() {
        let l = IntegerMatrix::from_columns(&[vec![2, 0], vec![0, 2]], 2);
        let m = IntegerMatrix::from_columns(&[vec![1, 0]], 2);
        assert_eq!(quotient_torsion(&l, &m), Err(IntLinError::NotIntegral(0)));
    }

    #[test]
    fn determinants() {
        assert_eq!(determinant(&[vec![2, -1], vec![-1, 2]]), 3);
        assert_eq!(determinant(&[vec![0, 1], vec![1, 0]]), -1);
        assert_eq!(determinant(&[vec![1, 2], vec![2, 4]]), 0);
    }
}
