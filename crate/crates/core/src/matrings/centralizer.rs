//! Centralizers as point sets over finite rings and as Lie algebra kernels.
//!
//! Point sets are computed by linearizing `h·g = c·g·h` over `F_p` (the
//! condition is linear in `h` for a fixed unit scalar `c`), enumerating the
//! solution space and filtering invertible matrices.  A brute-force
//! enumeration of all matrices serves as an oracle.

use std::collections::BTreeSet;

use super::group::{canonical_pgl, check_square, Flavor, GroupElement, LieFlavor};
use super::matrix::{commutator, determinant, flatten, scalar_mul, unflatten};
use super::ring::{Elem, Ring};
use super::RingError;
use crate::linalg::{identity, kernel, mat_mul, mat_sub, Mat};
use crate::scalar::Arith;

pub const DEFAULT_BUDGET: u128 = 1 << 24;

fn scalars(ring: &Ring, flavor: Flavor) -> Vec<Elem> {
    match flavor {
        Flavor::PGL => ring.units(),
        _ => vec![ring.one()],
    }
}

fn in_group(ring: &Ring, flavor: Flavor, h: &Mat<Elem>) -> bool {
    let d = determinant(ring, h);
    match flavor {
        Flavor::SL => d == ring.one(),
        _ => ring.is_unit(d),
    }
}

fn finish(flavor: Flavor, found: BTreeSet<Mat<Elem>>) -> Vec<GroupElement> {
    found
        .into_iter()
        .map(|matrix| GroupElement { flavor, matrix })
        .collect()
}

/// `F_p`-matrix of the linear map `h ↦ h·g − c·g·h` on `M_n(R)`.
fn linear_map(ring: &Ring, g: &Mat<Elem>, c: Elem) -> Mat<Elem> {
    let n = g.len();
    let d = ring.dim() as usize;
    let size = n * n * d;
    let cg = scalar_mul(ring, &c, g);
    let mut cols = Vec::with_capacity(size);
    for pos in 0..n * n {
        for k in 0..d {
            let mut unit = vec![0u32; d];
            unit[k] = 1;
            let mut h = vec![vec![0; n]; n];
            h[pos / n][pos % n] = ring.from_coords(&unit);
            let img = mat_sub(ring, &mat_mul(ring, &h, g), &mat_mul(ring, &cg, &h));
            let col: Vec<u32> = flatten(&img).iter().flat_map(|&x| ring.coords(x)).collect();
            cols.push(col);
        }
    }
    // transpose columns into rows
    (0..size).map(|r| cols.iter().map(|c| c[r]).collect()).collect()
}

/// All `h` in the flavor group over `R` with `h·g·h⁻¹ = g` (PGL: up to a
/// unit scalar), sorted.
pub fn centralizer_points(
    ring: &Ring,
    g: &GroupElement,
    budget: u128,
) -> Result<Vec<GroupElement>, RingError> {
    matrix_centralizer_points(ring, g.flavor, &g.matrix, budget)
}

/// Group elements `h` with `h·m = c·m·h` for an arbitrary square matrix `m`
/// (`c = 1` outside PGL).  For a Lie algebra element this is the stabilizer
/// under conjugation.
pub fn matrix_centralizer_points(
    ring: &Ring,
    flavor: Flavor,
    m: &Mat<Elem>,
    budget: u128,
) -> Result<Vec<GroupElement>, RingError> {
    check_square(m)?;
    let n = m.len();
    let p = ring.characteristic();
    let fp = Ring::field(p, 1)?;
    let d = ring.dim() as usize;
    let mut spaces = Vec::new();
    let mut needed: u128 = 0;
    for c in scalars(ring, flavor) {
        let lin = linear_map(ring, m, c);
        let ker = kernel(&fp, &lin, n * n * d);
        needed = needed.saturating_add((p as u128).saturating_pow(ker.len() as u32));
        spaces.push(ker);
    }
    if needed > budget {
        return Err(RingError::BudgetExceeded { needed, budget });
    }
    let mut found = BTreeSet::new();
    for ker in &spaces {
        let dim = ker.len();
        let total = (p as u64).pow(dim as u32);
        for idx in 0..total {
            let mut v = vec![0u32; n * n * d];
            let mut rest = idx;
            for b in ker {
                let coef = (rest % p as u64) as u32;
                rest /= p as u64;
                if coef == 0 {
                    continue;
                }
                for (x, y) in v.iter_mut().zip(b) {
                    *x = (*x + coef * y) % p;
                }
            }
            let entries: Vec<Elem> = v.chunks(d).map(|c| ring.from_coords(c)).collect();
            let h = unflatten(&entries, n);
            if !in_group(ring, flavor, &h) {
                continue;
            }
            let h = if flavor == Flavor::PGL {
                canonical_pgl(ring, &h)?
            } else {
                h
            };
            found.insert(h);
        }
    }
    Ok(finish(flavor, found))
}

/// Every element of the flavor group over `R`, sorted.
pub fn group_elements(
    ring: &Ring,
    flavor: Flavor,
    n: usize,
    budget: u128,
) -> Result<Vec<GroupElement>, RingError> {
    let size = ring.size() as u128;
    let needed = size.saturating_pow((n * n) as u32);
    if needed > budget {
        return Err(RingError::BudgetExceeded { needed, budget });
    }
    let mut found = BTreeSet::new();
    let mut entries = vec![0u32; n * n];
    for idx in 0..needed {
        let mut rest = idx;
        for e in entries.iter_mut() {
            *e = (rest % size) as u32;
            rest /= size;
        }
        let h = unflatten(&entries, n);
        if !in_group(ring, flavor, &h) {
            continue;
        }
        let h = if flavor == Flavor::PGL {
            canonical_pgl(ring, &h)?
        } else {
            h
        };
        found.insert(h);
    }
    Ok(finish(flavor, found))
}

/// Oracle for [`centralizer_points`]: tests every group element directly.
pub fn centralizer_points_brute(
    ring: &Ring,
    g: &GroupElement,
    budget: u128,
) -> Result<Vec<GroupElement>, RingError> {
    let all = group_elements(ring, g.flavor, g.n(), budget)?;
    let units = scalars(ring, g.flavor);
    Ok(all
        .into_iter()
        .filter(|h| {
            let hg = mat_mul(ring, &h.matrix, &g.matrix);
            let gh = mat_mul(ring, &g.matrix, &h.matrix);
            units.iter().any(|c| hg == scalar_mul(ring, c, &gh))
        })
        .collect())
}

/// Whether every pair of elements commutes in the group.
pub fn is_commutative(ring: &Ring, elems: &[GroupElement]) -> bool {
    find_noncommuting_pair(ring, elems).is_none()
}

pub fn find_noncommuting_pair(
    ring: &Ring,
    elems: &[GroupElement],
) -> Option<(GroupElement, GroupElement)> {
    for (i, a) in elems.iter().enumerate() {
        for b in &elems[i + 1..] {
            if a.mul(ring, b) != b.mul(ring, a) {
                return Some((a.clone(), b.clone()));
            }
        }
    }
    None
}

/// A Lie centralizer: a basis of the kernel computed in `gl_n` and the
/// dimension inside the flavor algebra.  For `pgl` the basis is taken in
/// `gl_n` and contains the identity, which the reported dimension excludes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LieCentralizer {
    pub basis: Vec<Mat<Elem>>,
    pub dim: usize,
}

/// How the centralized object acts on `gl_n`.
pub enum Action<'a> {
    /// `X ↦ g·X·g⁻¹`.
    Adjoint(&'a Mat<Elem>),
    /// `X ↦ [Y, X]`.
    Bracket(&'a Mat<Elem>),
}

/// Kernel of `Ad(g) − 1` or `ad Y` inside the flavor's Lie algebra.
pub fn lie_centralizer(
    ring: &Ring,
    action: Action<'_>,
    flavor: LieFlavor,
) -> Result<LieCentralizer, RingError> {
    if !ring.is_field() {
        return Err(RingError::NeedsField("Lie centralizer"));
    }
    let (m, twist) = match action {
        Action::Adjoint(g) => (g, g.clone()),
        Action::Bracket(y) => (y, identity(ring, y.len())),
    };
    check_square(m)?;
    let n = m.len();
    let nn = n * n;
    // Unknowns: the n² entries of X, plus c for pgl.
    // Group case:  g·X − X·g − c·g = 0.  Lie case: Y·X − X·Y − c·I = 0.
    let extra = usize::from(flavor == LieFlavor::Pgl);
    let mut cols: Vec<Vec<Elem>> = Vec::new();
    for pos in 0..nn {
        let mut x = vec![vec![0; n]; n];
        x[pos / n][pos % n] = ring.one();
        let mut col = flatten(&commutator(ring, m, &x));
        if flavor == LieFlavor::Sl {
            col.push(if pos / n == pos % n { ring.one() } else { 0 });
        }
        cols.push(col);
    }
    if extra == 1 {
        cols.push(flatten(&scalar_mul(ring, &ring.neg(&ring.one()), &twist)));
    }
    let rows = cols[0].len();
    let mat: Mat<Elem> = (0..rows).map(|r| cols.iter().map(|c| c[r]).collect()).collect();
    let ker = kernel(ring, &mat, nn + extra);
    let basis: Vec<Mat<Elem>> = ker.iter().map(|v| unflatten(&v[..nn], n)).collect();
    let dim = ker.len() - extra;
    Ok(LieCentralizer { basis, dim })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrings::parse::{make_ring, parse_matrix};

    fn ge(ring: &Ring, f: Flavor, s: &str) -> GroupElement {
        GroupElement::new(ring, f, parse_matrix(ring, s).unwrap()).unwrap()
    }

    #[test]
    fn sl2_f3_unipotent_centralizer() {
        let f3 = make_ring("F(3)").unwrap();
        let u = ge(&f3, Flavor::SL, "1,1;0,1");
        let z = centralizer_points(&f3, &u, DEFAULT_BUDGET).unwrap();
        assert_eq!(z.len(), 6);
        assert_eq!(z, centralizer_points_brute(&f3, &u, DEFAULT_BUDGET).unwrap());
        for h in &z {
            let m = &h.matrix;
            assert_eq!(m[1][0], 0);
            assert_eq!(m[0][0], m[1][1]);
        }
    }

    #[test]
    fn trivial_element_gives_whole_group() {
        let f3 = make_ring("F(3)").unwrap();
        let one = GroupElement::identity(&f3, Flavor::SL, 2);
        let z = centralizer_points(&f3, &one, DEFAULT_BUDGET).unwrap();
        assert_eq!(z.len(), 24);
        let f2 = make_ring("F(2)").unwrap();
        let one = GroupElement::identity(&f2, Flavor::PGL, 2);
        assert_eq!(centralizer_points(&f2, &one, DEFAULT_BUDGET).unwrap().len(), 6);
    }

    #[test]
    fn pgl_over_dual_numbers_matches_brute_force() {
        let r = make_ring("F(2)[e]/e^2").unwrap();
        let u = ge(&r, Flavor::PGL, "1,1;0,1");
        let fast = centralizer_points(&r, &u, DEFAULT_BUDGET).unwrap();
        let slow = centralizer_points_brute(&r, &u, DEFAULT_BUDGET).unwrap();
        assert_eq!(fast, slow);
        assert_eq!(fast.len(), 8);
        // Over F2[e] the reduction {1, u} acts trivially on the tangent
        // directions, so this group is abelian.
        assert!(is_commutative(&r, &fast));
        for spec in ["F(2,2)[e]/e^2", "F(2)[e]/e^2[f]/f^2"] {
            let r = make_ring(spec).unwrap();
            let u = ge(&r, Flavor::PGL, "1,1;0,1");
            let z = centralizer_points(&r, &u, DEFAULT_BUDGET).unwrap();
            assert!(!is_commutative(&r, &z), "{spec}");
        }
    }

    #[test]
    fn budget_is_enforced() {
        let f3 = make_ring("F(3)").unwrap();
        let one = GroupElement::identity(&f3, Flavor::GL, 3);
        assert!(matches!(
            centralizer_points(&f3, &one, 1000),
            Err(RingError::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn lie_centralizer_examples() {
        let f5 = make_ring("F(5)").unwrap();
        let u = parse_matrix(&f5, "1,1,0;0,1,1;0,0,1").unwrap();
        let z = lie_centralizer(&f5, Action::Adjoint(&u), LieFlavor::Sl).unwrap();
        assert_eq!(z.dim, 2);
        let f2 = make_ring("F(2)").unwrap();
        let u = parse_matrix(&f2, "1,1;0,1").unwrap();
        let z = lie_centralizer(&f2, Action::Adjoint(&u), LieFlavor::Pgl).unwrap();
        assert_eq!(z.dim, 2);
        let h = parse_matrix(&f5, "1,0;0,4").unwrap();
        let z = lie_centralizer(&f5, Action::Bracket(&h), LieFlavor::Sl).unwrap();
        assert_eq!(z.dim, 1);
    }
}
