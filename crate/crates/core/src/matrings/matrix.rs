//! Division-free matrix algorithms over commutative rings.

use crate::linalg::{identity, mat_mul, zeros, Mat};
use crate::scalar::Arith;

/// Coefficients `c_0, …, c_n` of `det(t·I − m)`, lowest degree first.
///
/// Berkowitz's algorithm: no divisions, so valid over any commutative ring.
pub fn char_poly<A: Arith>(ctx: &A, m: &Mat<A::Elem>) -> Vec<A::Elem> {
    let n = m.len();
    // p holds coefficients highest degree first while iterating.
    let mut p = vec![ctx.one()];
    for r in 0..n {
        let a = &m[r][r];
        // Column vector C = m[0..r][r], row vector R = m[r][0..r].
        let mut col: Vec<A::Elem> = (0..r).map(|i| m[i][r].clone()).collect();
        let mut toeplitz = Vec::with_capacity(r + 2);
        toeplitz.push(ctx.one());
        toeplitz.push(ctx.neg(a));
        for _ in 0..r {
            let rc = (0..r).fold(ctx.zero(), |acc, j| {
                ctx.add(&acc, &ctx.mul(&m[r][j], &col[j]))
            });
            toeplitz.push(ctx.neg(&rc));
            col = (0..r)
                .map(|i| {
                    (0..r).fold(ctx.zero(), |acc, j| {
                        ctx.add(&acc, &ctx.mul(&m[i][j], &col[j]))
                    })
                })
                .collect();
        }
        let mut next = vec![ctx.zero(); r + 2];
        for (i, slot) in next.iter_mut().enumerate() {
            for (j, pj) in p.iter().enumerate() {
                if i >= j && i - j < toeplitz.len() {
                    *slot = ctx.add(slot, &ctx.mul(&toeplitz[i - j], pj));
                }
            }
        }
        p = next;
    }
    p.reverse();
    p
}

pub fn determinant<A: Arith>(ctx: &A, m: &Mat<A::Elem>) -> A::Elem {
    let c = char_poly(ctx, m);
    if m.len() % 2 == 0 {
        c[0].clone()
    } else {
        ctx.neg(&c[0])
    }
}

pub fn trace<A: Arith>(ctx: &A, m: &Mat<A::Elem>) -> A::Elem {
    (0..m.len()).fold(ctx.zero(), |acc, i| ctx.add(&acc, &m[i][i]))
}

/// Adjugate via Cayley–Hamilton.
pub fn adjugate<A: Arith>(ctx: &A, m: &Mat<A::Elem>) -> Mat<A::Elem> {
    let n = m.len();
    if n == 1 {
        return vec![vec![ctx.one()]];
    }
    let c = char_poly(ctx, m);
    // Horner: B = m^{n-1} + c_{n-1} m^{n-2} + … + c_1 I.
    let mut b = identity(ctx, n);
    for k in (1..n).rev() {
        if k < n - 1 {
            b = mat_mul(ctx, &b, m);
        } else {
            b = m.clone();
        }
        for i in 0..n {
            b[i][i] = ctx.add(&b[i][i], &c[k]);
        }
    }
    if n % 2 == 1 {
        b
    } else {
        scalar_mul(ctx, &ctx.neg(&ctx.one()), &b)
    }
}

/// Inverse when the determinant is a unit.
pub fn inverse<A: Arith>(ctx: &A, m: &Mat<A::Elem>) -> Option<Mat<A::Elem>> {
    let d = determinant(ctx, m);
    let di = ctx.inv(&d)?;
    Some(scalar_mul(ctx, &di, &adjugate(ctx, m)))
}

pub fn scalar_mul<A: Arith>(ctx: &A, c: &A::Elem, m: &Mat<A::Elem>) -> Mat<A::Elem> {
    m.iter()
        .map(|row| row.iter().map(|x| ctx.mul(c, x)).collect())
        .collect()
}

pub fn mat_add<A: Arith>(ctx: &A, a: &Mat<A::Elem>, b: &Mat<A::Elem>) -> Mat<A::Elem> {
    a.iter()
        .zip(b)
        .map(|(r, s)| r.iter().zip(s).map(|(x, y)| ctx.add(x, y)).collect())
        .collect()
}

pub fn mat_pow<A: Arith>(ctx: &A, m: &Mat<A::Elem>, mut e: u64) -> Mat<A::Elem> {
    let mut acc = identity(ctx, m.len());
    let mut base = m.clone();
    while e > 0 {
        if e & 1 == 1 {
            acc = mat_mul(ctx, &acc, &base);
        }
        base = mat_mul(ctx, &base, &base);
        e >>= 1;
    }
    acc
}

pub fn is_zero_matrix<A: Arith>(ctx: &A, m: &Mat<A::Elem>) -> bool {
    m.iter().all(|r| r.iter().all(|x| ctx.is_zero(x)))
}

pub fn is_identity<A: Arith>(ctx: &A, m: &Mat<A::Elem>) -> bool {
    *m == identity(ctx, m.len())
}

/// `[a, b] = ab − ba`.
pub fn commutator<A: Arith>(ctx: &A, a: &Mat<A::Elem>, b: &Mat<A::Elem>) -> Mat<A::Elem> {
    crate::linalg::mat_sub(ctx, &mat_mul(ctx, a, b), &mat_mul(ctx, b, a))
}

/// The matrix unit `E_ij`.
pub fn unit_matrix<A: Arith>(ctx: &A, n: usize, i: usize, j: usize) -> Mat<A::Elem> {
    let mut m = zeros(ctx, n, n);
    m[i][j] = ctx.one();
    m
}

/// Flattens row-major.
pub fn flatten<E: Clone>(m: &Mat<E>) -> Vec<E> {
    m.iter().flat_map(|r| r.iter().cloned()).collect()
}

pub fn unflatten<E: Clone>(v: &[E], n: usize) -> Mat<E> {
    v.chunks(n).map(|c| c.to_vec()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Std;
    use crate::Q;
    use num_traits::{One, Zero};

    fn q(v: i64) -> Q {
        Q::from_integer(v.into())
    }

    fn qm(rows: &[&[i64]]) -> Mat<Q> {
        rows.iter().map(|r| r.iter().map(|&v| q(v)).collect()).collect()
    }

    #[test]
    fn char_poly_of_small_matrices() {
        let ctx = Std::<Q>::new();
        // [[1,2],[3,4]]: t^2 - 5t - 2
        let c = char_poly(&ctx, &qm(&[&[1, 2], &[3, 4]]));
        assert_eq!(c, vec![q(-2), q(-5), q(1)]);
        let m = qm(&[&[2, 0, 1], &[1, 3, 0], &[0, 1, 1]]);
        let c = char_poly(&ctx, &m);
        // det = 2*3*1 + 1*1*1 = 7, trace 6
        assert_eq!(c[3], Q::one());
        assert_eq!(c[2], q(-6));
        assert_eq!(determinant(&ctx, &m), q(7));
    }

    #[test]
    fn inverse_matches_identity() {
        let ctx = Std::<Q>::new();
        let m = qm(&[&[2, 0, 1, 0], &[1, 3, 0, 5], &[0, 1, 1, 2], &[1, 1, 1, 1]]);
        let inv = inverse(&ctx, &m).unwrap();
        assert!(is_identity(&ctx, &mat_mul(&ctx, &m, &inv)));
        let singular = qm(&[&[1, 2], &[2, 4]]);
        assert!(inverse(&ctx, &singular).is_none());
        assert!(determinant(&ctx, &singular).is_zero());
    }
}
