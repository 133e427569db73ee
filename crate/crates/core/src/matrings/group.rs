//! Matrix group and Lie algebra elements, unipotence and Jordan decomposition.

use serde::Serialize;

use super::matrix::{char_poly, determinant, is_identity, mat_pow, scalar_mul, trace};
use super::ring::{Elem, Node, Ring};
use super::RingError;
use crate::linalg::{identity, mat_mul, mat_sub, Mat};
use crate::scalar::Arith;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Flavor {
    GL,
    SL,
    PGL,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum LieFlavor {
    Gl,
    Sl,
    Pgl,
}

impl Flavor {
    pub fn lie(self) -> LieFlavor {
        match self {
            Flavor::GL => LieFlavor::Gl,
            Flavor::SL => LieFlavor::Sl,
            Flavor::PGL => LieFlavor::Pgl,
        }
    }
}

impl std::str::FromStr for Flavor {
    type Err = RingError;

    fn from_str(s: &str) -> Result<Self, RingError> {
        match s.to_ascii_uppercase().as_str() {
            "GL" => Ok(Flavor::GL),
            "SL" => Ok(Flavor::SL),
            "PGL" => Ok(Flavor::PGL),
            _ => Err(RingError::Malformed(format!("unknown group flavor {s:?}"))),
        }
    }
}

/// An element of `GL_n`, `SL_n` or `PGL_n` over a finite ring.
///
/// PGL elements hold the canonical representative of their coset, so
/// derived equality is equality in the group.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement {
    pub flavor: Flavor,
    pub matrix: Mat<Elem>,
}

impl GroupElement {
    pub fn new(ring: &Ring, flavor: Flavor, matrix: Mat<Elem>) -> Result<Self, RingError> {
        check_square(&matrix)?;
        let det = determinant(ring, &matrix);
        match flavor {
            Flavor::SL if det != ring.one() => return Err(RingError::NotSpecial),
            _ if !ring.is_unit(det) => return Err(RingError::NotInvertible),
            _ => {}
        }
        let matrix = if flavor == Flavor::PGL {
            canonical_pgl(ring, &matrix)?
        } else {
            matrix
        };
        Ok(GroupElement { flavor, matrix })
    }

    pub fn identity(ring: &Ring, flavor: Flavor, n: usize) -> Self {
        GroupElement {
            flavor,
            matrix: identity(ring, n),
        }
    }

    pub fn n(&self) -> usize {
        self.matrix.len()
    }

    pub fn mul(&self, ring: &Ring, other: &Self) -> Self {
        let m = mat_mul(ring, &self.matrix, &other.matrix);
        let matrix = if self.flavor == Flavor::PGL {
            canonical_pgl(ring, &m).expect("canonical form of a product")
        } else {
            m
        };
        GroupElement {
            flavor: self.flavor,
            matrix,
        }
    }
}

/// An element of `gl_n`, `sl_n` or `pgl_n`.  `pgl` cosets are stored as a
/// canonical representative: trace zero when `n` is a unit, else with the
/// `(0,0)` entry cleared.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LieElement {
    pub flavor: LieFlavor,
    pub matrix: Mat<Elem>,
}

impl LieElement {
    pub fn new(ring: &Ring, flavor: LieFlavor, matrix: Mat<Elem>) -> Result<Self, RingError> {
        check_square(&matrix)?;
        let matrix = match flavor {
            LieFlavor::Gl => matrix,
            LieFlavor::Sl => {
                if trace(ring, &matrix) != 0 {
                    return Err(RingError::Malformed("sl element must have trace 0".into()));
                }
                matrix
            }
            LieFlavor::Pgl => {
                let n = matrix.len();
                let ni = ring.inv(&ring.from_i64(n as i64));
                let shift = match ni {
                    Some(ni) => ring.mul(&trace(ring, &matrix), &ni),
                    None => matrix[0][0],
                };
                let s = scalar_mul(ring, &shift, &identity(ring, n));
                mat_sub(ring, &matrix, &s)
            }
        };
        Ok(LieElement { flavor, matrix })
    }
}

pub(crate) fn check_square<E>(m: &Mat<E>) -> Result<(), RingError> {
    let n = m.len();
    if n == 0 || m.iter().any(|r| r.len() != n) {
        return Err(RingError::Dimension("matrix must be square and nonempty".into()));
    }
    Ok(())
}

fn is_local(node: &Node) -> bool {
    match node {
        Node::Field(_) => true,
        Node::Trunc { base, .. } => is_local(base),
        Node::Product(..) => false,
    }
}

/// The two factors of a product ring.
pub fn factors(ring: &Ring) -> Option<(Ring, Ring)> {
    match ring.node() {
        Node::Product(a, b) => Some((
            Ring::from_node((**a).clone()).ok()?,
            Ring::from_node((**b).clone()).ok()?,
        )),
        _ => None,
    }
}

/// Canonical representative of a PGL coset: the first unit entry in
/// row-major order is scaled to 1, factor by factor on products.
pub fn canonical_pgl(ring: &Ring, m: &Mat<Elem>) -> Result<Mat<Elem>, RingError> {
    if let Some((r1, r2)) = factors(ring) {
        let s = r1.size();
        let m1: Mat<Elem> = m.iter().map(|r| r.iter().map(|x| x % s).collect()).collect();
        let m2: Mat<Elem> = m.iter().map(|r| r.iter().map(|x| x / s).collect()).collect();
        let c1 = canonical_pgl(&r1, &m1)?;
        let c2 = canonical_pgl(&r2, &m2)?;
        return Ok(c1
            .iter()
            .zip(&c2)
            .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x + s * y).collect())
            .collect());
    }
    if !is_local(ring.node()) {
        return Err(RingError::Unsupported(
            "PGL over a truncation of a product ring".into(),
        ));
    }
    let lead = m
        .iter()
        .flatten()
        .copied()
        .find(|&x| ring.is_unit(x))
        .ok_or(RingError::NotInvertible)?;
    let li = ring.inv(&lead).unwrap();
    Ok(scalar_mul(ring, &li, m))
}

/// `det(t·I − (g − 1)) = tⁿ`, cross-checked against `(g − 1)ⁿ = 0`.
pub fn is_unipotent(ring: &Ring, g: &GroupElement) -> Result<bool, RingError> {
    if g.flavor == Flavor::PGL {
        return Err(RingError::Unsupported(
            "unipotence of a PGL coset is decided on lifts".into(),
        ));
    }
    Ok(is_unipotent_matrix(ring, &g.matrix))
}

pub fn is_unipotent_matrix(ring: &Ring, g: &Mat<Elem>) -> bool {
    let n = g.len();
    let x = mat_sub(ring, g, &identity(ring, n));
    let by_poly = is_nilpotent_matrix(ring, &x);
    let by_power = super::matrix::is_zero_matrix(ring, &mat_pow(ring, &x, n as u64));
    // Cayley–Hamilton gives poly ⇒ power over any ring; over a field the
    // converse holds as well.
    debug_assert!(!by_poly || by_power);
    debug_assert!(!ring.is_field() || by_poly == by_power);
    by_poly
}

pub fn is_nilpotent(ring: &Ring, x: &LieElement) -> Result<bool, RingError> {
    if x.flavor == LieFlavor::Pgl {
        return Err(RingError::Unsupported(
            "nilpotence of a pgl coset is decided on lifts".into(),
        ));
    }
    Ok(is_nilpotent_matrix(ring, &x.matrix))
}

/// Characteristic polynomial equal to `tⁿ`.
pub fn is_nilpotent_matrix(ring: &Ring, x: &Mat<Elem>) -> bool {
    let c = char_poly(ring, x);
    c[..c.len() - 1].iter().all(|&v| v == 0)
}

/// Multiplicative order of an invertible matrix.
pub fn element_order(ring: &Ring, g: &Mat<Elem>) -> Result<u64, RingError> {
    const LIMIT: u64 = 1 << 22;
    let mut acc = g.clone();
    for k in 1..=LIMIT {
        if is_identity(ring, &acc) {
            return Ok(k);
        }
        acc = mat_mul(ring, &acc, g);
    }
    Err(RingError::BudgetExceeded {
        needed: LIMIT as u128 + 1,
        budget: LIMIT as u128,
    })
}

/// Multiplicative Jordan decomposition `g = t·u` inside the cyclic group `⟨g⟩`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JordanParts {
    pub semisimple: Mat<Elem>,
    pub unipotent: Mat<Elem>,
    pub order: u64,
    pub semisimple_order: u64,
    pub unipotent_order: u64,
}

pub fn jordan_decomposition(ring: &Ring, g: &GroupElement) -> Result<JordanParts, RingError> {
    if !ring.is_field() {
        return Err(RingError::NeedsField("Jordan decomposition"));
    }
    if g.flavor == Flavor::PGL {
        return Err(RingError::Unsupported("Jordan decomposition of a PGL coset".into()));
    }
    let order = element_order(ring, &g.matrix)?;
    let p = ring.characteristic() as u64;
    let mut pa = 1;
    while order % (pa * p) == 0 {
        pa *= p;
    }
    let mp = order / pa;
    // x ≡ 1 mod m', x ≡ 0 mod p^a.
    let x = if mp == 1 {
        0
    } else {
        let inv = mod_inverse(pa % mp, mp);
        (pa * inv) % order
    };
    let y = (order + 1 - x) % order;
    let semisimple = mat_pow(ring, &g.matrix, x);
    let unipotent = mat_pow(ring, &g.matrix, y);
    Ok(JordanParts {
        semisimple,
        unipotent,
        order,
        semisimple_order: mp,
        unipotent_order: pa,
    })
}

fn mod_inverse(a: u64, m: u64) -> u64 {
    let (mut r0, mut r1) = (m as i128, a as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    t0.rem_euclid(m as i128) as u64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrings::parse::{make_ring, parse_matrix};

    fn ge(ring: &Ring, f: Flavor, s: &str) -> GroupElement {
        GroupElement::new(ring, f, parse_matrix(ring, s).unwrap()).unwrap()
    }

    #[test]
    fn unipotence_examples() {
        let f5 = make_ring("F(5)").unwrap();
        assert!(is_unipotent(&f5, &GroupElement::identity(&f5, Flavor::SL, 3)).unwrap());
        assert!(!is_unipotent(&f5, &ge(&f5, Flavor::GL, "1,0;0,4")).unwrap());
        let f2 = make_ring("F(2)").unwrap();
        assert!(is_unipotent(&f2, &ge(&f2, Flavor::SL, "1,1,1;0,1,1;0,0,1")).unwrap());
        let pgl = ge(&f2, Flavor::PGL, "1,1;0,1");
        assert!(is_unipotent(&f2, &pgl).is_err());
    }

    #[test]
    fn nilpotence_examples() {
        let f3 = make_ring("F(3)").unwrap();
        let z = LieElement::new(&f3, LieFlavor::Sl, parse_matrix(&f3, "0,0;0,0").unwrap()).unwrap();
        assert!(is_nilpotent(&f3, &z).unwrap());
        let e12 = LieElement::new(&f3, LieFlavor::Gl, parse_matrix(&f3, "0,1;0,0").unwrap()).unwrap();
        assert!(is_nilpotent(&f3, &e12).unwrap());
        let h = LieElement::new(&f3, LieFlavor::Sl, parse_matrix(&f3, "1,0;0,2").unwrap()).unwrap();
        assert!(!is_nilpotent(&f3, &h).unwrap());
    }

    #[test]
    fn sl_rejects_wrong_determinant() {
        let f5 = make_ring("F(5)").unwrap();
        let m = parse_matrix(&f5, "2,0;0,1").unwrap();
        assert_eq!(
            GroupElement::new(&f5, Flavor::SL, m.clone()),
            Err(RingError::NotSpecial)
        );
        assert!(GroupElement::new(&f5, Flavor::GL, m).is_ok());
    }

    #[test]
    fn pgl_canonical_form_identifies_scalars() {
        let r = make_ring("F(3)[e]/e^2").unwrap();
        let a = ge(&r, Flavor::PGL, "1,e;0,1");
        let b = ge(&r, Flavor::PGL, "2,2e;0,2");
        let c = ge(&r, Flavor::PGL, "1+e,e;0,1+e");
        assert_eq!(a, b);
        assert_eq!(a, c);
        let prod = make_ring("F(3)xF(3)").unwrap();
        let x = ge(&prod, Flavor::PGL, "(1|2),0;0,(1|1)");
        let y = ge(&prod, Flavor::PGL, "(2|2),0;0,(2|1)");
        assert_eq!(x, y);
    }

    #[test]
    fn jordan_examples() {
        let f5 = make_ring("F(5)").unwrap();
        let u = ge(&f5, Flavor::SL, "1,1;0,1");
        let j = jordan_decomposition(&f5, &u).unwrap();
        assert!(is_identity(&f5, &j.semisimple));
        assert_eq!(j.unipotent, u.matrix);
        let t = ge(&f5, Flavor::SL, "2,0;0,3");
        let j = jordan_decomposition(&f5, &t).unwrap();
        assert_eq!(j.semisimple, t.matrix);
        assert!(is_identity(&f5, &j.unipotent));
        // mixed: -u has order 10
        let g = ge(&f5, Flavor::SL, "4,4;0,4");
        let j = jordan_decomposition(&f5, &g).unwrap();
        assert_eq!(j.order, 10);
        assert_eq!(mat_mul(&f5, &j.semisimple, &j.unipotent), g.matrix);
        assert_eq!(
            mat_mul(&f5, &j.semisimple, &j.unipotent),
            mat_mul(&f5, &j.unipotent, &j.semisimple)
        );
        assert!(is_unipotent_matrix(&f5, &j.unipotent));
        assert_eq!(j.semisimple, parse_matrix(&f5, "4,0;0,4").unwrap());
        let jr = make_ring("F(5)[e]/e^2").unwrap();
        let gj = ge(&jr, Flavor::SL, "1,1;0,1");
        assert!(jordan_decomposition(&jr, &gj).is_err());
    }
}
