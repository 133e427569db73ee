//! Explicit type-A Springer maps `ρ(1 + e) = a₁e + a₂e² + ⋯ + a_n eⁿ` on
//! `SL_{n+1}`, the split and quasi-split coefficient solvers, and the outer
//! automorphism `ψ(g) = w(gᵀ)⁻¹w⁻¹` used for descent.

mod verify;

pub use verify::*;

use serde::Serialize;
use thiserror::Error;

use crate::linalg::{identity, mat_mul, mat_sub, transpose, Mat};
use crate::matrings::group::{is_unipotent_matrix, LieElement};
use crate::matrings::matrix::{inverse, mat_add, scalar_mul};
use crate::matrings::{Elem, Flavor, GroupElement, LieFlavor, Ring, RingAuto, RingError};
use crate::scalar::Arith;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SpringerError {
    #[error("at least one coefficient is required")]
    Empty,
    #[error("leading coefficient a1 = {0} is not a unit")]
    NonUnitLeading(String),
    #[error("a1 = {0} is not fixed by the involution")]
    NotFixed(String),
    #[error("input matrix is not unipotent")]
    NotUnipotent,
    #[error("expected an element of SL_{expected}, got size {got} in {flavor:?}")]
    Shape {
        expected: usize,
        got: usize,
        flavor: Flavor,
    },
    #[error(transparent)]
    Ring(#[from] RingError),
}

/// Galois data for a quasi-split form: the coefficients live in `ext`, and
/// `sigma` is the involution with fixed ring `base`.
#[derive(Debug, Clone, PartialEq)]
pub struct Descent {
    pub base: String,
    pub sigma: RingAuto,
}

/// Coefficients of a type-A Springer map for `SL_{n+1}`.
#[derive(Debug, Clone, PartialEq)]
pub struct SpringerCoefficients {
    pub n: usize,
    pub ring: Ring,
    pub a: Vec<Elem>,
    /// An isomorphism exactly when `a₁` is a unit.
    pub valid: bool,
    pub descent: Option<Descent>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoefficientSummary {
    pub n: usize,
    pub ring: String,
    pub coefficients: Vec<String>,
    pub valid: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub base: Option<String>,
}

impl SpringerCoefficients {
    pub fn new(ring: &Ring, a: Vec<Elem>) -> Result<Self, SpringerError> {
        if a.is_empty() {
            return Err(SpringerError::Empty);
        }
        Ok(SpringerCoefficients {
            n: a.len(),
            ring: ring.clone(),
            valid: ring.is_unit(a[0]),
            a,
            descent: None,
        })
    }

    /// Matrix size `n + 1`.
    pub fn size(&self) -> usize {
        self.n + 1
    }

    pub fn summary(&self) -> CoefficientSummary {
        CoefficientSummary {
            n: self.n,
            ring: self.ring.spec(),
            coefficients: self.a.iter().map(|&x| self.ring.format(x)).collect(),
            valid: self.valid,
            base: self.descent.as_ref().map(|d| d.base.clone()),
        }
    }

    /// `Σ aᵢ eⁱ` for a matrix `e`, without any checks.
    pub fn eval(&self, e: &Mat<Elem>) -> Mat<Elem> {
        power_series(&self.ring, &self.a, e)
    }

    /// Compositional inverse `b` with `Σ aᵢ (Σ bⱼ xʲ)ⁱ ≡ x mod x^{n+1}`.
    pub fn inverse_series(&self) -> Option<Vec<Elem>> {
        let r = &self.ring;
        let n = self.n;
        let a1_inv = r.inv(&self.a[0])?;
        let mut b = vec![0; n];
        b[0] = a1_inv;
        for k in 2..=n {
            let c = compose(r, &self.a, &b, n)[k];
            b[k - 1] = r.neg(&r.mul(&a1_inv, &c));
        }
        Some(b)
    }
}

/// `Σ cᵢ eⁱ` with `c[0]` the coefficient of `e`.
pub(crate) fn power_series(r: &Ring, c: &[Elem], e: &Mat<Elem>) -> Mat<Elem> {
    let size = e.len();
    let mut acc = vec![vec![0; size]; size];
    let mut pw = e.clone();
    for (i, ci) in c.iter().enumerate() {
        if i > 0 {
            pw = mat_mul(r, &pw, e);
        }
        if *ci != 0 {
            acc = mat_add(r, &acc, &scalar_mul(r, ci, &pw));
        }
    }
    acc
}

/// Coefficients (index = degree, up to `n`) of `a(b(x))`, both without
/// constant term.
fn compose(r: &Ring, a: &[Elem], b: &[Elem], n: usize) -> Vec<Elem> {
    let mut bpoly = vec![0; n + 1];
    bpoly[1..=b.len().min(n)].copy_from_slice(&b[..b.len().min(n)]);
    let mut out = vec![0; n + 1];
    let mut pw = bpoly.clone();
    for (i, ai) in a.iter().enumerate() {
        if i > 0 {
            pw = truncated_mul(r, &pw, &bpoly, n);
        }
        for k in 0..=n {
            out[k] = r.add(&out[k], &r.mul(ai, &pw[k]));
        }
    }
    out
}

fn truncated_mul(r: &Ring, x: &[Elem], y: &[Elem], n: usize) -> Vec<Elem> {
    let mut out = vec![0; n + 1];
    for (i, xi) in x.iter().enumerate() {
        for (j, yj) in y.iter().enumerate() {
            if i + j <= n {
                out[i + j] = r.add(&out[i + j], &r.mul(xi, yj));
            }
        }
    }
    out
}

fn check_group_input(c: &SpringerCoefficients, g: &GroupElement) -> Result<(), SpringerError> {
    if g.n() != c.size() || g.flavor != Flavor::SL {
        return Err(SpringerError::Shape {
            expected: c.size(),
            got: g.n(),
            flavor: g.flavor,
        });
    }
    Ok(())
}

/// `ρ(g) = Σ aᵢ (g − 1)ⁱ` for unipotent `g ∈ SL_{n+1}(R)`.
pub fn apply_springer(c: &SpringerCoefficients, g: &GroupElement) -> Result<LieElement, SpringerError> {
    check_group_input(c, g)?;
    let r = &c.ring;
    if !is_unipotent_matrix(r, &g.matrix) {
        return Err(SpringerError::NotUnipotent);
    }
    let e = mat_sub(r, &g.matrix, &identity(r, c.size()));
    Ok(LieElement::new(r, LieFlavor::Sl, c.eval(&e))?)
}

/// `ρ⁻¹(X) = 1 + Σ bᵢ Xⁱ` with `b` the inverse series.
pub fn apply_inverse(c: &SpringerCoefficients, x: &Mat<Elem>) -> Option<Mat<Elem>> {
    let b = c.inverse_series()?;
    let r = &c.ring;
    Some(mat_add(r, &identity(r, x.len()), &power_series(r, &b, x)))
}

/// Split case: any `a₂, …, a_n` work once `a₁` is a unit.
pub fn solve_split(
    n: usize,
    ring: &Ring,
    a1: Elem,
    rest: &[Elem],
) -> Result<SpringerCoefficients, SpringerError> {
    if n == 0 {
        return Err(SpringerError::Empty);
    }
    if !ring.is_unit(a1) {
        return Err(SpringerError::NonUnitLeading(ring.format(a1)));
    }
    let mut a = vec![0; n];
    a[0] = a1;
    for (slot, &x) in a[1..].iter_mut().zip(rest) {
        *slot = x;
    }
    SpringerCoefficients::new(ring, a)
}

/// The anti-diagonal matrix with entries `1, −1, 1, …` from the top right.
pub fn w_matrix(r: &Ring, size: usize) -> Mat<Elem> {
    let mut w = vec![vec![0; size]; size];
    for (i, row) in w.iter_mut().enumerate() {
        row[size - 1 - i] = if i % 2 == 0 { r.one() } else { r.neg(&r.one()) };
    }
    w
}

/// `ψ(g) = w(gᵀ)⁻¹w⁻¹`.
pub fn psi(r: &Ring, g: &Mat<Elem>) -> Option<Mat<Elem>> {
    let w = w_matrix(r, g.len());
    let wi = inverse(r, &w)?;
    let git = inverse(r, &transpose(g))?;
    Some(mat_mul(r, &mat_mul(r, &w, &git), &wi))
}

/// Differential of `ψ`: `X ↦ −w Xᵀ w⁻¹`.
pub fn psi_lie(r: &Ring, x: &Mat<Elem>) -> Mat<Elem> {
    let w = w_matrix(r, x.len());
    let wi = inverse(r, &w).expect("w is invertible");
    let y = mat_mul(r, &mat_mul(r, &w, &transpose(x)), &wi);
    scalar_mul(r, &r.neg(&r.one()), &y)
}

pub fn apply_auto_matrix(r: &Ring, auto: &RingAuto, m: &Mat<Elem>) -> Mat<Elem> {
    m.iter()
        .map(|row| row.iter().map(|&x| r.apply_auto(auto, x)).collect())
        .collect()
}

/// `C(n, k)` as an integer; sizes here are tiny.
fn binomial(n: usize, k: usize) -> i64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1i64, |acc, i| acc * (n - i) as i64 / (i + 1) as i64)
}

/// `(−1)ⁱ Σ_{j≤i} C(i−1, j−1) a_j + σ(aᵢ)` for each `i`; all zero exactly when
/// the coefficients descend along `σ`.
pub fn recurrence_residuals(r: &Ring, sigma: &RingAuto, a: &[Elem]) -> Vec<Elem> {
    (1..=a.len())
        .map(|i| {
            let sum = (1..=i).fold(0, |acc, j| {
                r.add(&acc, &r.mul(&r.from_i64(binomial(i - 1, j - 1)), &a[j - 1]))
            });
            let lhs = if i % 2 == 0 { sum } else { r.neg(&sum) };
            r.add(&lhs, &r.apply_auto(sigma, a[i - 1]))
        })
        .collect()
}

/// Why the quasi-split recurrence has no solution.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QuasiSplitObstruction {
    /// First index `i` whose equation cannot be met.
    pub index: usize,
    pub equation: String,
    pub right_hand_side: String,
    pub partial: Vec<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum QuasiSplitOutcome {
    Solved(SpringerCoefficients),
    Obstructed(QuasiSplitObstruction),
}

/// `F_q ⊂ F_{q²}` with `σ(x) = x^q`.
pub fn quadratic_extension(p: u32, k: u32) -> Result<(Ring, Ring, RingAuto), RingError> {
    Ok((Ring::field(p, k)?, Ring::field(p, 2 * k)?, RingAuto::Frobenius(k)))
}

/// Solves the descent recurrence for `a₂, …, a_n` over `ext` given `a₁`
/// fixed by `sigma`.
///
/// At step `m` the equation reads `aₘ + σ(aₘ) = gₘ` for even `m` and
/// `aₘ − σ(aₘ) = −gₘ` for odd `m`, with `gₘ` determined by earlier terms.
/// Even steps invert the trace: `aₘ = c·Tr(c)⁻¹·gₘ` for any `c` with unit
/// trace.  Odd steps use `θ` with `θ − σ(θ)` a unit.  When `σ` is trivial
/// in characteristic 2 the trace vanishes and the first even step fails.
pub fn solve_quasisplit(
    n: usize,
    base: &str,
    ext: &Ring,
    sigma: &RingAuto,
    a1: Elem,
) -> Result<QuasiSplitOutcome, SpringerError> {
    if n == 0 {
        return Err(SpringerError::Empty);
    }
    let r = ext;
    if !r.is_unit(a1) {
        return Err(SpringerError::NonUnitLeading(r.format(a1)));
    }
    if r.apply_auto(sigma, a1) != a1 {
        return Err(SpringerError::NotFixed(r.format(a1)));
    }
    let bar = |x: Elem| r.apply_auto(sigma, x);
    let trace_unit = r.elements().find(|&c| r.is_unit(r.add(&c, &bar(c))));
    let diff_unit = r.elements().find(|&t| r.is_unit(r.sub(&t, &bar(t))));
    let mut a = vec![a1];
    for m in 2..=n {
        // (−1)^m Σ_{j<m} C(m−1, j−1) a_j moved to the right-hand side.
        let sum = (1..m).fold(0, |acc, j| {
            r.add(&acc, &r.mul(&r.from_i64(binomial(m - 1, j - 1)), &a[j - 1]))
        });
        let g = if m % 2 == 0 { r.neg(&sum) } else { sum };
        let obstruction = |equation: &str| QuasiSplitObstruction {
            index: m,
            equation: equation.to_string(),
            right_hand_side: r.format(g),
            partial: a.iter().map(|&x| r.format(x)).collect(),
        };
        let next = if m % 2 == 0 {
            // a + σ(a) = g, g must be σ-fixed.
            match trace_unit {
                Some(c) if bar(g) == g => {
                    let tr = r.add(&c, &bar(c));
                    r.mul(&r.mul(&c, &r.inv(&tr).unwrap()), &g)
                }
                _ => return Ok(QuasiSplitOutcome::Obstructed(obstruction("a + σ(a) = g"))),
            }
        } else {
            // a − σ(a) = −g, −g must be σ-anti-fixed.
            let h = r.neg(&g);
            if h == 0 {
                0
            } else {
                match diff_unit {
                    Some(t) if bar(h) == r.neg(&h) => {
                        let d = r.sub(&t, &bar(t));
                        r.mul(&r.mul(&t, &r.inv(&d).unwrap()), &h)
                    }
                    _ => {
                        return Ok(QuasiSplitOutcome::Obstructed(obstruction("a − σ(a) = h")))
                    }
                }
            }
        };
        a.push(next);
    }
    let mut coeffs = SpringerCoefficients::new(r, a)?;
    coeffs.descent = Some(Descent {
        base: base.to_string(),
        sigma: sigma.clone(),
    });
    Ok(QuasiSplitOutcome::Solved(coeffs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrings::checks::regular_unipotent;
    use crate::matrings::group::is_nilpotent_matrix;
    use crate::matrings::make_ring;

    #[test]
    fn apply_examples() {
        let f5 = make_ring("F(5)").unwrap();
        let c = SpringerCoefficients::new(&f5, vec![1, 1]).unwrap();
        let u = regular_unipotent(&f5, Flavor::SL, 3);
        let x = apply_springer(&c, &u).unwrap();
        let e = mat_sub(&f5, &u.matrix, &identity(&f5, 3));
        let expect = mat_add(&f5, &e, &mat_mul(&f5, &e, &e));
        assert_eq!(x.matrix, expect);
        assert!(is_nilpotent_matrix(&f5, &x.matrix));
        let id = GroupElement::identity(&f5, Flavor::SL, 3);
        assert_eq!(apply_springer(&c, &id).unwrap().matrix, vec![vec![0; 3]; 3]);
        let log = SpringerCoefficients::new(&f5, vec![1, 0]).unwrap();
        assert_eq!(apply_springer(&log, &u).unwrap().matrix, e);
        let diag = GroupElement::new(&f5, Flavor::SL, vec![vec![2, 0, 0], vec![0, 3, 0], vec![0, 0, 1]]).unwrap();
        assert_eq!(apply_springer(&c, &diag), Err(SpringerError::NotUnipotent));
    }

    #[test]
    fn split_solver() {
        let f5 = make_ring("F(5)").unwrap();
        assert_eq!(solve_split(3, &f5, 1, &[]).unwrap().a, vec![1, 0, 0]);
        let f4 = make_ring("F(2,2)").unwrap();
        let x = f4.field_data().unwrap().generator();
        assert!(solve_split(3, &f4, x, &[]).unwrap().valid);
        let f2 = make_ring("F(2)").unwrap();
        assert!(matches!(solve_split(2, &f2, 0, &[]), Err(SpringerError::NonUnitLeading(_))));
    }

    #[test]
    fn inverse_series_inverts() {
        let f7 = make_ring("F(7)").unwrap();
        let c = SpringerCoefficients::new(&f7, vec![3, 5, 2, 6]).unwrap();
        let b = c.inverse_series().unwrap();
        let comp = compose(&f7, &c.a, &b, 4);
        assert_eq!(comp, vec![0, 1, 0, 0, 0]);
    }

    #[test]
    fn quasisplit_f9() {
        let (_, f9, sigma) = quadratic_extension(3, 1).unwrap();
        let QuasiSplitOutcome::Solved(c) = solve_quasisplit(2, "F(3)", &f9, &sigma, 1).unwrap() else {
            panic!("F9/F3 is solvable");
        };
        let a2 = c.a[1];
        // Tr(a2) = -1
        assert_eq!(f9.add(&a2, &f9.apply_auto(&sigma, a2)), f9.neg(&1));
        assert!(recurrence_residuals(&f9, &sigma, &c.a).iter().all(|&x| x == 0));
    }

    #[test]
    fn quasisplit_recurrence_over_several_fields() {
        for (p, k) in [(2, 1), (3, 1), (2, 2), (5, 1)] {
            let (base, ext, sigma) = quadratic_extension(p, k).unwrap();
            for n in 1..=5 {
                let out = solve_quasisplit(n, &base.spec(), &ext, &sigma, 1).unwrap();
                let QuasiSplitOutcome::Solved(c) = out else {
                    panic!("quadratic extensions are never obstructed");
                };
                assert!(recurrence_residuals(&ext, &sigma, &c.a).iter().all(|&x| x == 0));
            }
        }
    }

    #[test]
    fn trivial_involution_in_characteristic_two_is_obstructed() {
        let f2 = make_ring("F(2)").unwrap();
        let out = solve_quasisplit(2, "F(2)", &f2, &RingAuto::Identity, 1).unwrap();
        let QuasiSplitOutcome::Obstructed(o) = out else {
            panic!("2a2 = 0 cannot equal a1");
        };
        assert_eq!(o.index, 2);
        // n = 1 imposes only a1 = σ(a1).
        assert!(matches!(
            solve_quasisplit(1, "F(2)", &f2, &RingAuto::Identity, 1).unwrap(),
            QuasiSplitOutcome::Solved(_)
        ));
        // Odd characteristic with trivial σ is solvable.
        let f3 = make_ring("F(3)").unwrap();
        assert!(matches!(
            solve_quasisplit(4, "F(3)", &f3, &RingAuto::Identity, 1).unwrap(),
            QuasiSplitOutcome::Solved(_)
        ));
    }

    #[test]
    fn psi_is_an_involutive_automorphism() {
        let f5 = make_ring("F(5)").unwrap();
        let g = vec![vec![1, 2, 0], vec![0, 1, 3], vec![4, 0, 2]];
        let h = vec![vec![2, 0, 1], vec![1, 1, 0], vec![0, 3, 2]];
        let pg = psi(&f5, &g).unwrap();
        assert_eq!(psi(&f5, &pg).unwrap(), g);
        let gh = mat_mul(&f5, &g, &h);
        assert_eq!(psi(&f5, &gh).unwrap(), mat_mul(&f5, &pg, &psi(&f5, &h).unwrap()));
    }
}
