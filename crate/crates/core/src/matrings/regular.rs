//! Regularity in type A and Chevalley regularity of Lie algebra elements.

use serde::Serialize;

use super::group::{check_square, LieFlavor};
use super::matrix::{char_poly, flatten};
use super::poly;
use super::ring::{Elem, Ring, MAX_FIELD};
use super::RingError;
use crate::linalg::{identity, mat_mul, mat_sub, rank, Mat};
use crate::scalar::Arith;

/// The splitting field of a polynomial over `F = F(p,k)` together with the
/// embedding `F → E`.
pub struct Splitting {
    pub field: Ring,
    embed: Vec<Elem>,
}

impl Splitting {
    pub fn embed(&self, a: Elem) -> Elem {
        self.embed[a as usize]
    }
}

fn lcm(a: usize, b: usize) -> usize {
    a / num_integer::gcd(a, b) * b
}

/// Smallest extension of `f` over which `p` splits into linear factors.
pub fn splitting_field(f: &Ring, p: &poly::Poly) -> Result<Splitting, RingError> {
    let data = f.field_data().ok_or(RingError::NeedsField("splitting field"))?;
    let degree = poly::factor_degrees(f, p).into_iter().fold(1, lcm);
    let k = data.k as usize * degree;
    let q = (data.p as u64).checked_pow(k as u32).unwrap_or(u64::MAX);
    if q > MAX_FIELD {
        return Err(RingError::TooLarge(q));
    }
    let big = Ring::field(data.p, k as u32)?;
    // Image of the generator of F: a root in E of F's defining polynomial.
    let gen_image = if data.k == 1 {
        None
    } else {
        let modulus: poly::Poly = data.modulus.iter().map(|&c| big.from_i64(c as i64)).collect();
        Some(
            big.elements()
                .find(|&r| poly::eval(&big, &modulus, r) == 0)
                .expect("finite fields of the same characteristic nest"),
        )
    };
    let embed = f
        .elements()
        .map(|a| match gen_image {
            None => big.from_i64(a as i64),
            Some(r) => f
                .coords(a)
                .iter()
                .rev()
                .fold(0, |acc, &c| big.add(&big.mul(&acc, &r), &big.from_i64(c as i64))),
        })
        .collect();
    Ok(Splitting { field: big, embed })
}

/// Distinct eigenvalues over the splitting field `E` with geometric
/// multiplicities.
pub fn eigen_multiplicities(
    f: &Ring,
    m: &Mat<Elem>,
) -> Result<(Splitting, Vec<(Elem, usize)>), RingError> {
    check_square(m)?;
    let cp = char_poly(f, m);
    let split = splitting_field(f, &cp)?;
    let e = &split.field;
    let cpe: poly::Poly = cp.iter().map(|&c| split.embed(c)).collect();
    let me: Mat<Elem> = m
        .iter()
        .map(|r| r.iter().map(|&x| split.embed(x)).collect())
        .collect();
    let n = m.len();
    let mut out = Vec::new();
    for lam in e.elements() {
        if poly::eval(e, &cpe, lam) != 0 {
            continue;
        }
        let shifted = mat_sub(
            e,
            &me,
            &super::matrix::scalar_mul(e, &lam, &identity(e, n)),
        );
        out.push((lam, n - rank(e, &shifted)));
    }
    Ok((split, out))
}

/// Regularity of an element of `GL_n`/`SL_n` or `gl_n`/`sl_n` over a field:
/// every eigenvalue has a single Jordan block.
pub fn is_regular_type_a(f: &Ring, m: &Mat<Elem>) -> Result<bool, RingError> {
    if !f.is_field() {
        return Err(RingError::NeedsField("regularity test"));
    }
    let (_, eig) = eigen_multiplicities(f, m)?;
    Ok(eig.iter().all(|&(_, mult)| mult == 1))
}

/// Oracle: `m` is regular iff `1, m, …, m^{n−1}` are linearly independent.
pub fn is_cyclic(f: &Ring, m: &Mat<Elem>) -> bool {
    let n = m.len();
    let mut powers = Vec::with_capacity(n);
    let mut acc = identity(f, n);
    for _ in 0..n {
        powers.push(flatten(&acc));
        acc = mat_mul(f, &acc, m);
    }
    rank(f, &powers) == n
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChevalleyVerdict {
    pub regular: bool,
    /// Rank of the algebra: the exponent whose coefficient decides.
    pub rank: usize,
    /// Lowest degree with a nonzero coefficient in the ad characteristic
    /// polynomial.
    pub trailing_degree: usize,
}

/// Matrix of `ad X` on the flavor algebra in a fixed basis.
pub fn ad_matrix(f: &Ring, x: &Mat<Elem>, flavor: LieFlavor) -> Result<Mat<Elem>, RingError> {
    check_square(x)?;
    let n = x.len();
    let basis = lie_basis(f, n, flavor);
    let coords = |y: &Mat<Elem>| -> Vec<Elem> { lie_coords(f, y, flavor) };
    let cols: Vec<Vec<Elem>> = basis
        .iter()
        .map(|b| coords(&super::matrix::commutator(f, x, b)))
        .collect();
    let d = basis.len();
    Ok((0..d).map(|r| cols.iter().map(|c| c[r]).collect()).collect())
}

/// Basis: all `E_ij` for gl; off-diagonal `E_ij` and `E_ii − E_nn` for sl;
/// all `E_ij` except `E_nn` for pgl (cosets modulo scalars).
pub fn lie_basis(f: &Ring, n: usize, flavor: LieFlavor) -> Vec<Mat<Elem>> {
    let unit = |i: usize, j: usize| super::matrix::unit_matrix(f, n, i, j);
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            match flavor {
                LieFlavor::Gl => out.push(unit(i, j)),
                LieFlavor::Sl if i != j => out.push(unit(i, j)),
                LieFlavor::Sl if i + 1 < n => {
                    out.push(mat_sub(f, &unit(i, i), &unit(n - 1, n - 1)))
                }
                LieFlavor::Pgl if !(i == n - 1 && j == n - 1) => out.push(unit(i, j)),
                _ => {}
            }
        }
    }
    out
}

fn lie_coords(f: &Ring, y: &Mat<Elem>, flavor: LieFlavor) -> Vec<Elem> {
    let n = y.len();
    let last = y[n - 1][n - 1];
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            match flavor {
                LieFlavor::Gl => out.push(y[i][j]),
                LieFlavor::Sl if i != j || i + 1 < n => out.push(y[i][j]),
                LieFlavor::Pgl if !(i == n - 1 && j == n - 1) => {
                    out.push(if i == j { f.sub(&y[i][j], &last) } else { y[i][j] })
                }
                _ => {}
            }
        }
    }
    out
}

/// `X` is Chevalley regular when the coefficient of `t^r` in the
/// characteristic polynomial of `ad X` is nonzero, `r` the rank.
pub fn chevalley_regular(
    f: &Ring,
    x: &Mat<Elem>,
    flavor: LieFlavor,
) -> Result<ChevalleyVerdict, RingError> {
    if !f.is_field() {
        return Err(RingError::NeedsField("Chevalley regularity"));
    }
    let n = x.len();
    let rank = match flavor {
        LieFlavor::Gl => n,
        LieFlavor::Sl | LieFlavor::Pgl => n - 1,
    };
    let ad = ad_matrix(f, x, flavor)?;
    let cp = char_poly(f, &ad);
    let trailing_degree = cp.iter().position(|&c| c != 0).unwrap_or(0);
    Ok(ChevalleyVerdict {
        regular: cp[rank] != 0,
        rank,
        trailing_degree,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrings::parse::{make_ring, parse_matrix};

    #[test]
    fn regularity_examples() {
        let f5 = make_ring("F(5)").unwrap();
        let block = parse_matrix(&f5, "0,1,0;0,0,1;0,0,0").unwrap();
        assert!(is_regular_type_a(&f5, &block).unwrap());
        assert!(is_cyclic(&f5, &block));
        let split = parse_matrix(&f5, "1,0,0;0,1,0;0,0,2").unwrap();
        assert!(!is_regular_type_a(&f5, &split).unwrap());
        assert!(!is_cyclic(&f5, &split));
        // companion matrix of t^3 - 2 over F7 (splits over F_{7^3})
        let f7 = make_ring("F(7)").unwrap();
        let comp = parse_matrix(&f7, "0,0,2;1,0,0;0,1,0").unwrap();
        assert!(is_regular_type_a(&f7, &comp).unwrap());
        assert!(is_cyclic(&f7, &comp));
    }

    #[test]
    fn splitting_field_embeds_extension_fields() {
        let f = make_ring("F(2,2)").unwrap();
        // t^2 + t + x over F4 needs a quadratic extension.
        let x = f.field_data().unwrap().generator();
        let p = vec![x, 1, 1];
        let s = splitting_field(&f, &p).unwrap();
        let e = &s.field;
        for a in f.elements() {
            for b in f.elements() {
                assert_eq!(s.embed(f.mul(&a, &b)), e.mul(&s.embed(a), &s.embed(b)));
                assert_eq!(s.embed(f.add(&a, &b)), e.add(&s.embed(a), &s.embed(b)));
            }
        }
        let pe: poly::Poly = p.iter().map(|&c| s.embed(c)).collect();
        assert_eq!(e.elements().filter(|&r| poly::eval(e, &pe, r) == 0).count(), 2);
    }

    #[test]
    fn chevalley_examples() {
        let f5 = make_ring("F(5)").unwrap();
        let h = parse_matrix(&f5, "1,0;0,4").unwrap();
        let v = chevalley_regular(&f5, &h, LieFlavor::Sl).unwrap();
        assert!(v.regular);
        let ad = ad_matrix(&f5, &h, LieFlavor::Sl).unwrap();
        // t^3 - 4t
        assert_eq!(char_poly(&f5, &ad), vec![0, 1, 0, 1]);
        let e = parse_matrix(&f5, "0,1;0,0").unwrap();
        assert!(!chevalley_regular(&f5, &e, LieFlavor::Sl).unwrap().regular);
        let z = parse_matrix(&f5, "0,0;0,0").unwrap();
        let v = chevalley_regular(&f5, &z, LieFlavor::Sl).unwrap();
        assert!(!v.regular);
        assert_eq!(v.trailing_degree, 3);
    }
}
