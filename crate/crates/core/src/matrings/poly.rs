//! Univariate polynomials over a finite field, coefficients lowest degree first.

use super::ring::{Elem, Ring};
use crate::scalar::Arith;

pub type Poly = Vec<Elem>;

pub fn trim(mut p: Poly) -> Poly {
    while p.len() > 1 && *p.last().unwrap() == 0 {
        p.pop();
    }
    if p.is_empty() {
        p.push(0);
    }
    p
}

pub fn degree(p: &Poly) -> Option<usize> {
    let p = trim(p.clone());
    if p.len() == 1 && p[0] == 0 {
        None
    } else {
        Some(p.len() - 1)
    }
}

pub fn sub(f: &Ring, a: &Poly, b: &Poly) -> Poly {
    let n = a.len().max(b.len());
    trim(
        (0..n)
            .map(|i| {
                f.sub(
                    a.get(i).unwrap_or(&0),
                    b.get(i).unwrap_or(&0),
                )
            })
            .collect(),
    )
}

pub fn mul(f: &Ring, a: &Poly, b: &Poly) -> Poly {
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if *x == 0 {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = f.add(&out[i + j], &f.mul(x, y));
        }
    }
    trim(out)
}

/// Quotient and remainder; `b` must be nonzero.
pub fn divrem(f: &Ring, a: &Poly, b: &Poly) -> (Poly, Poly) {
    let b = trim(b.clone());
    let db = degree(&b).expect("division by the zero polynomial");
    let lead_inv = f.inv(&b[db]).expect("field element");
    let mut r = trim(a.clone());
    let mut q = vec![0; r.len().max(1)];
    while let Some(dr) = degree(&r) {
        if dr < db {
            break;
        }
        let c = f.mul(&r[dr], &lead_inv);
        q[dr - db] = c;
        for i in 0..=db {
            let t = f.mul(&c, &b[i]);
            r[dr - db + i] = f.sub(&r[dr - db + i], &t);
        }
        r = trim(r);
    }
    (trim(q), r)
}

pub fn gcd(f: &Ring, a: &Poly, b: &Poly) -> Poly {
    let mut a = trim(a.clone());
    let mut b = trim(b.clone());
    while degree(&b).is_some() {
        let (_, r) = divrem(f, &a, &b);
        a = b;
        b = r;
    }
    match degree(&a) {
        Some(d) => {
            let li = f.inv(&a[d]).unwrap();
            a.iter().map(|c| f.mul(c, &li)).collect()
        }
        None => a,
    }
}

/// `base^e mod m`.
pub fn powmod(f: &Ring, base: &Poly, mut e: u128, m: &Poly) -> Poly {
    let mut acc = vec![f.one()];
    let mut b = divrem(f, base, m).1;
    while e > 0 {
        if e & 1 == 1 {
            acc = divrem(f, &mul(f, &acc, &b), m).1;
        }
        b = divrem(f, &mul(f, &b, &b), m).1;
        e >>= 1;
    }
    acc
}

pub fn eval(f: &Ring, p: &Poly, x: Elem) -> Elem {
    p.iter().rev().fold(0, |acc, c| f.add(&f.mul(&acc, &x), c))
}

/// Degrees of the irreducible factors (with multiplicity ignored) via
/// distinct-degree factorisation.
pub fn factor_degrees(f: &Ring, p: &Poly) -> Vec<usize> {
    let q = f.size() as u128;
    let x: Poly = vec![0, f.one()];
    // square-free part is not needed: distinct-degree splitting only
    // reports which degrees occur, repeated factors just stay in `rest`.
    let mut rest = trim(p.clone());
    let mut out = Vec::new();
    let mut d = 1;
    let mut xq = x.clone();
    while let Some(deg) = degree(&rest) {
        if deg == 0 {
            break;
        }
        if 2 * d > deg {
            out.push(deg);
            break;
        }
        xq = powmod(f, &xq, q, &rest);
        let g = gcd(f, &rest, &sub(f, &xq, &x));
        if degree(&g).unwrap_or(0) > 0 {
            out.push(d);
            // strip every power of g's factors
            loop {
                let g2 = gcd(f, &rest, &g);
                if degree(&g2).unwrap_or(0) == 0 {
                    break;
                }
                rest = divrem(f, &rest, &g2).0;
            }
            xq = divrem(f, &xq, &rest).1;
        }
        d += 1;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factor_degrees_over_f3() {
        let f = Ring::field(3, 1).unwrap();
        // (t^2+1)(t-1) over F3: degrees {1, 2}
        let p = mul(&f, &vec![1, 0, 1], &vec![2, 1]);
        let mut d = factor_degrees(&f, &p);
        d.sort();
        assert_eq!(d, vec![1, 2]);
        // (t-1)^3: degree 1 only
        let c = mul(&f, &mul(&f, &vec![2, 1], &vec![2, 1]), &vec![2, 1]);
        assert_eq!(factor_degrees(&f, &c), vec![1]);
        // irreducible cubic t^3 - t + 1
        assert_eq!(factor_degrees(&f, &vec![1, 2, 0, 1]), vec![3]);
    }
}
