//! Dense linear algebra over any [`Arith`] context in which every nonzero
//! element is invertible.  Matrices are row-major `Vec<Vec<E>>`.

use crate::scalar::Arith;

pub type Mat<E> = Vec<Vec<E>>;

pub fn zeros<A: Arith>(ctx: &A, rows: usize, cols: usize) -> Mat<A::Elem> {
    vec![vec![ctx.zero(); cols]; rows]
}

pub fn identity<A: Arith>(ctx: &A, n: usize) -> Mat<A::Elem> {
    let mut m = zeros(ctx, n, n);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = ctx.one();
    }
    m
}

pub fn mat_mul<A: Arith>(ctx: &A, a: &Mat<A::Elem>, b: &Mat<A::Elem>) -> Mat<A::Elem> {
    let n = a.len();
    let k = b.len();
    let m = if k == 0 { 0 } else { b[0].len() };
    let mut out = zeros(ctx, n, m);
    for i in 0..n {
        for l in 0..k {
            if ctx.is_zero(&a[i][l]) {
                continue;
            }
            for j in 0..m {
                let t = ctx.mul(&a[i][l], &b[l][j]);
                out[i][j] = ctx.add(&out[i][j], &t);
            }
        }
    }
    out
}

pub fn mat_vec<A: Arith>(ctx: &A, a: &Mat<A::Elem>, v: &[A::Elem]) -> Vec<A::Elem> {
    a.iter()
        .map(|row| {
            row.iter().zip(v).fold(ctx.zero(), |acc, (x, y)| {
                let t = ctx.mul(x, y);
                ctx.add(&acc, &t)
            })
        })
        .collect()
}

pub fn mat_sub<A: Arith>(ctx: &A, a: &Mat<A::Elem>, b: &Mat<A::Elem>) -> Mat<A::Elem> {
    a.iter()
        .zip(b)
        .map(|(r, s)| r.iter().zip(s).map(|(x, y)| ctx.sub(x, y)).collect())
        .collect()
}

pub fn transpose<E: Clone>(a: &Mat<E>) -> Mat<E> {
    if a.is_empty() {
        return Vec::new();
    }
    (0..a[0].len())
        .map(|j| a.iter().map(|r| r[j].clone()).collect())
        .collect()
}

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref<A: Arith>(ctx: &A, m: &mut Mat<A::Elem>) -> Vec<usize> {
    let rows = m.len();
    if rows == 0 {
        return Vec::new();
    }
    let cols = m[0].len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !ctx.is_zero(&m[i][c])) else {
            continue;
        };
        m.swap(r, p);
        let inv = ctx
            .inv(&m[r][c])
            .expect("rref requires nonzero pivots to be invertible");
        for x in m[r].iter_mut() {
            *x = ctx.mul(x, &inv);
        }
        for i in 0..rows {
            if i != r && !ctx.is_zero(&m[i][c]) {
                let f = m[i][c].clone();
                for j in c..cols {
                    let t = ctx.mul(&f, &m[r][j]);
                    m[i][j] = ctx.sub(&m[i][j], &t);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank<A: Arith>(ctx: &A, m: &Mat<A::Elem>) -> usize {
    let mut w = m.clone();
    rref(ctx, &mut w).len()
}

/// Basis of the right kernel `{v : m v = 0}`.
pub fn kernel<A: Arith>(ctx: &A, m: &Mat<A::Elem>, cols: usize) -> Vec<Vec<A::Elem>> {
    let mut w = m.clone();
    let pivots = rref(ctx, &mut w);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![ctx.zero(); cols];
            v[f] = ctx.one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = ctx.neg(&w[r][f]);
            }
            v
        })
        .collect()
}

/// One solution of `m x = b`, if any.
pub fn solve<A: Arith>(ctx: &A, m: &Mat<A::Elem>, b: &[A::Elem]) -> Option<Vec<A::Elem>> {
    let cols = m.first().map_or(0, |r| r.len());
    let mut aug: Mat<A::Elem> = m
        .iter()
        .zip(b)
        .map(|(r, x)| {
            let mut r = r.clone();
            r.push(x.clone());
            r
        })
        .collect();
    let pivots = rref(ctx, &mut aug);
    if pivots.last() == Some(&cols) {
        return None;
    }
    let mut x = vec![ctx.zero(); cols];
    for (r, &pc) in pivots.iter().enumerate() {
        x[pc] = aug[r][cols].clone();
    }
    Some(x)
}

/// Whether `v` lies in the row span of `basis`.
pub fn in_span<A: Arith>(ctx: &A, basis: &[Vec<A::Elem>], v: &[A::Elem]) -> bool {
    let mut m: Mat<A::Elem> = basis.to_vec();
    let r0 = rank(ctx, &m);
    m.push(v.to_vec());
    rank(ctx, &m) == r0
}

/// Whether two families of vectors span the same subspace.
pub fn same_span<A: Arith>(ctx: &A, a: &[Vec<A::Elem>], b: &[Vec<A::Elem>]) -> bool {
    let ra = rank(ctx, &a.to_vec());
    let rb = rank(ctx, &b.to_vec());
    let mut both = a.to_vec();
    both.extend_from_slice(b);
    ra == rb && rank(ctx, &both) == ra
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{Fp, Std};
    use crate::Q;

    #[test]
    fn kernel_of_rank_one() {
        let ctx = Std::<Q>::new();
        let m = vec![
            vec![ctx.from_i64(1), ctx.from_i64(2), ctx.from_i64(3)],
            vec![ctx.from_i64(2), ctx.from_i64(4), ctx.from_i64(6)],
        ];
        let k = kernel(&ctx, &m, 3);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(mat_vec(&ctx, &m, v).iter().all(|x| ctx.is_zero(x)));
        }
    }

    #[test]
    fn solve_mod_p() {
        let ctx = Std::<Fp<5>>::new();
        let m = vec![
            vec![ctx.from_i64(1), ctx.from_i64(1)],
            vec![ctx.from_i64(1), ctx.from_i64(4)],
        ];
        let b = vec![ctx.from_i64(2), ctx.from_i64(0)];
        let x = solve(&ctx, &m, &b).unwrap();
        assert_eq!(mat_vec(&ctx, &m, &x), b);
        let sing = vec![vec![ctx.one(), ctx.one()], vec![ctx.one(), ctx.one()]];
        assert!(solve(&ctx, &sing, &[ctx.one(), ctx.zero()]).is_none());
    }
}
