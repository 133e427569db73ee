//! The positive nilpotent part of the `D4` Chevalley Lie algebra with an
//! explicit choice of structure constants, the adjoint action of a regular
//! unipotent element, its fixed space, the triality automorphisms and the
//! descent equations for Springer maps on outer forms.
//!
//! Simple roots are numbered with `α2` the central node.  Coordinates of
//! vectors follow [`POSITIVE_ROOTS`].

pub mod descent;

use std::fmt;

use thiserror::Error;

use crate::linalg::{identity, kernel, mat_mul, mat_sub, mat_vec, same_span, Mat};
use crate::scalar::Arith;

pub type Root = [i64; 4];

/// Positive roots in simple-root coordinates, ordered by height with the
/// simple roots listed as `α1, α3, α4, α2`.
pub const POSITIVE_ROOTS: [Root; 12] = [
    [1, 0, 0, 0],
    [0, 0, 1, 0],
    [0, 0, 0, 1],
    [0, 1, 0, 0],
    [1, 1, 0, 0],
    [0, 1, 1, 0],
    [0, 1, 0, 1],
    [1, 1, 1, 0],
    [1, 1, 0, 1],
    [0, 1, 1, 1],
    [1, 1, 1, 1],
    [1, 2, 1, 1],
];

/// Commutator relations `(x_α(u), x_β(v)) = x_{α+β}(uv)`; each pair has
/// structure constant `N_{α,β} = +1` in the listed orientation.
pub const RELATIONS: [(Root, Root); 16] = [
    ([1, 0, 0, 0], [0, 1, 0, 0]),
    ([0, 1, 0, 0], [0, 0, 1, 0]),
    ([1, 0, 0, 0], [0, 1, 1, 0]),
    ([1, 1, 0, 0], [0, 0, 1, 0]),
    ([0, 1, 0, 0], [0, 0, 0, 1]),
    ([1, 0, 0, 0], [0, 1, 0, 1]),
    ([1, 0, 0, 0], [0, 1, 1, 1]),
    ([1, 1, 0, 0], [0, 0, 0, 1]),
    ([0, 1, 0, 0], [1, 1, 1, 1]),
    ([0, 0, 1, 0], [1, 1, 0, 1]),
    ([0, 0, 1, 0], [0, 1, 0, 1]),
    ([0, 0, 0, 1], [0, 1, 1, 0]),
    ([0, 0, 0, 1], [1, 1, 1, 0]),
    ([0, 1, 1, 1], [1, 1, 0, 0]),
    ([0, 1, 1, 0], [1, 1, 0, 1]),
    ([0, 1, 0, 1], [1, 1, 1, 0]),
];

#[derive(Debug, Error, PartialEq, Eq)]
pub enum D4Error {
    #[error("2 is not invertible in the coefficient ring")]
    TwoNotInvertible,
    #[error("structure constants inconsistent: {0}")]
    Inconsistent(String),
    #[error("no solution: {0}")]
    NoSolution(String),
    #[error("invalid descent data: {0}")]
    InvalidData(String),
    #[error(transparent)]
    Ring(#[from] crate::matrings::RingError),
}

pub fn root_name(r: &Root) -> String {
    let mut parts = Vec::new();
    for (i, &c) in r.iter().enumerate() {
        match c {
            0 => {}
            1 => parts.push(format!("a{}", i + 1)),
            c => parts.push(format!("{c}a{}", i + 1)),
        }
    }
    parts.join("+")
}

pub fn parse_root(s: &str) -> Option<Root> {
    let mut r = [0; 4];
    for term in s.split('+') {
        let term = term.trim();
        let (coef, rest) = match term.find('a') {
            Some(0) => (1, &term[1..]),
            Some(k) => (term[..k].parse().ok()?, &term[k + 1..]),
            None => return None,
        };
        let i: usize = rest.parse().ok()?;
        if !(1..=4).contains(&i) {
            return None;
        }
        r[i - 1] += coef;
    }
    root_index(&r).map(|_| r)
}

pub fn root_index(r: &Root) -> Option<usize> {
    POSITIVE_ROOTS.iter().position(|x| x == r)
}

fn add(a: &Root, b: &Root) -> Root {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]]
}

/// Antisymmetrized structure constants on the positive roots.
#[derive(Debug, Clone)]
pub struct D4Table {
    /// `n[i][j] = N_{α_i, α_j}`, zero when the sum is not a root.
    pub n: [[i64; 12]; 12],
    /// `sum[i][j]` indexes `α_i + α_j` when that is a positive root.
    pub sum: [[Option<usize>; 12]; 12],
}

impl D4Table {
    pub fn constant(&self, a: &Root, b: &Root) -> i64 {
        match (root_index(a), root_index(b)) {
            (Some(i), Some(j)) => self.n[i][j],
            _ => 0,
        }
    }
}

/// Builds the table from [`RELATIONS`], checking that every pair of positive
/// roots with a root sum is covered exactly once.
pub fn d4_structure_constants() -> Result<D4Table, D4Error> {
    let mut n = [[0i64; 12]; 12];
    let mut sum = [[None; 12]; 12];
    for (i, a) in POSITIVE_ROOTS.iter().enumerate() {
        for (j, b) in POSITIVE_ROOTS.iter().enumerate() {
            sum[i][j] = root_index(&add(a, b));
        }
    }
    for (a, b) in RELATIONS {
        let (i, j) = (root_index(&a).unwrap(), root_index(&b).unwrap());
        if sum[i][j].is_none() {
            return Err(D4Error::Inconsistent(format!(
                "{} + {} is not a root",
                root_name(&a),
                root_name(&b)
            )));
        }
        if n[i][j] != 0 {
            return Err(D4Error::Inconsistent(format!(
                "pair ({}, {}) listed twice",
                root_name(&a),
                root_name(&b)
            )));
        }
        n[i][j] = 1;
        n[j][i] = -1;
    }
    for i in 0..12 {
        for j in 0..12 {
            if sum[i][j].is_some() && n[i][j] == 0 {
                return Err(D4Error::Inconsistent(format!(
                    "pair ({}, {}) missing",
                    root_name(&POSITIVE_ROOTS[i]),
                    root_name(&POSITIVE_ROOTS[j])
                )));
            }
        }
    }
    Ok(D4Table { n, sum })
}

/// Elements of `Lie U` as coefficient vectors over a scalar context.
pub struct LieU<'a, A: Arith> {
    pub ctx: &'a A,
    pub table: D4Table,
}

/// A vector in `Lie U`, coordinates indexed by [`POSITIVE_ROOTS`].
pub type Vector<E> = Vec<E>;

impl<'a, A: Arith> LieU<'a, A> {
    pub fn new(ctx: &'a A) -> Result<Self, D4Error> {
        Ok(LieU {
            ctx,
            table: d4_structure_constants()?,
        })
    }

    pub fn zero(&self) -> Vector<A::Elem> {
        vec![self.ctx.zero(); 12]
    }

    /// The root vector `X_α`.
    pub fn basis(&self, root: &Root) -> Vector<A::Elem> {
        let mut v = self.zero();
        v[root_index(root).expect("positive root")] = self.ctx.one();
        v
    }

    pub fn bracket(&self, x: &[A::Elem], y: &[A::Elem]) -> Vector<A::Elem> {
        let c = self.ctx;
        let mut out = self.zero();
        for i in 0..12 {
            if c.is_zero(&x[i]) {
                continue;
            }
            for j in 0..12 {
                if let Some(k) = self.table.sum[i][j] {
                    if c.is_zero(&y[j]) {
                        continue;
                    }
                    let t = c.mul(&c.mul(&x[i], &y[j]), &c.from_i64(self.table.n[i][j]));
                    out[k] = c.add(&out[k], &t);
                }
            }
        }
        out
    }

    /// Matrix of `ad X_α` (columns are images of basis vectors).
    /// Jacobi identity on every triple of basis vectors.
    pub fn jacobi_holds(&self) -> bool {
        let b: Vec<Vector<A::Elem>> = POSITIVE_ROOTS.iter().map(|r| self.basis(r)).collect();
        b.iter().all(|x| {
            b.iter().all(|y| {
                b.iter().all(|z| {
                    let t1 = self.bracket(x, &self.bracket(y, z));
                    let t2 = self.bracket(y, &self.bracket(z, x));
                    let t3 = self.bracket(z, &self.bracket(x, y));
                    (0..12).all(|k| {
                        self.ctx
                            .is_zero(&self.ctx.add(&self.ctx.add(&t1[k], &t2[k]), &t3[k]))
                    })
                })
            })
        })
    }

    pub fn ad_matrix(&self, root: &Root) -> Mat<A::Elem> {
        let x = self.basis(root);
        let cols: Vec<Vector<A::Elem>> = POSITIVE_ROOTS
            .iter()
            .map(|b| self.bracket(&x, &self.basis(b)))
            .collect();
        transpose_cols(&cols)
    }

    /// `Ad(x_α(t)) = 1 + t·ad X_α`; higher terms vanish on `Lie U`.
    pub fn ad_root_element(&self, root: &Root, t: &A::Elem) -> Mat<A::Elem> {
        let c = self.ctx;
        let ad = self.ad_matrix(root);
        let mut m = identity(c, 12);
        for (i, row) in m.iter_mut().enumerate() {
            for (j, e) in row.iter_mut().enumerate() {
                *e = c.add(e, &c.mul(t, &ad[i][j]));
            }
        }
        m
    }

    /// `Ad(u)` for `u = x_{β1}(t1) ⋯ x_{βk}(tk)`.
    pub fn ad_word(&self, word: &[(Root, A::Elem)]) -> Mat<A::Elem> {
        word.iter().fold(identity(self.ctx, 12), |acc, (r, t)| {
            mat_mul(self.ctx, &acc, &self.ad_root_element(r, t))
        })
    }

    pub fn apply(&self, m: &Mat<A::Elem>, v: &[A::Elem]) -> Vector<A::Elem> {
        mat_vec(self.ctx, m, v)
    }

    fn half(&self) -> Result<A::Elem, D4Error> {
        self.ctx
            .inv(&self.ctx.from_i64(2))
            .ok_or(D4Error::TwoNotInvertible)
    }

    /// The four vectors spanning the fixed space of `Ad(u)`.
    pub fn e_basis(&self) -> Result<[Vector<A::Elem>; 4], D4Error> {
        let c = self.ctx;
        let h = self.half()?;
        let mh = c.neg(&h);
        let r = |s: &str| parse_root(s).expect("root literal");
        let mut e1 = self.zero();
        for (s, v) in [
            ("a1", c.one()),
            ("a3", c.one()),
            ("a4", c.one()),
            ("a2", c.one()),
            ("a1+a2", h.clone()),
            ("a2+a3", mh.clone()),
            ("a2+a4", mh.clone()),
            ("a2+a3+a4", mh.clone()),
        ] {
            e1[root_index(&r(s)).unwrap()] = v;
        }
        let mut e2 = self.basis(&r("a1+a2+a3"));
        e2[root_index(&r("a2+a3+a4")).unwrap()] = c.neg(&c.one());
        let mut e3 = self.basis(&r("a1+a2+a4"));
        e3[root_index(&r("a2+a3+a4")).unwrap()] = c.neg(&c.one());
        let e4 = self.basis(&r("a1+2a2+a3+a4"));
        Ok([e1, e2, e3, e4])
    }

    /// Basis of `ker(Ad(u) − 1)` over a field.
    pub fn fixed_space(&self, ad_u: &Mat<A::Elem>) -> Vec<Vector<A::Elem>> {
        let m = mat_sub(self.ctx, ad_u, &identity(self.ctx, 12));
        kernel(self.ctx, &m, 12)
    }

    /// Whether the fixed space has dimension 4 and equals the span of the
    /// explicit basis.
    pub fn fixed_space_matches(&self) -> Result<(usize, bool), D4Error> {
        let ad_u = self.ad_word(&regular_u(self.ctx));
        let fixed = self.fixed_space(&ad_u);
        let e = self.e_basis()?;
        Ok((fixed.len(), same_span(self.ctx, &fixed, &e)))
    }

    /// Lie map induced by a pinned diagram automorphism: simple root
    /// vectors are permuted, the rest is forced by bracket compatibility.
    pub fn triality(&self, auto: Triality) -> Result<Mat<A::Elem>, D4Error> {
        let signs = extension_signs(&self.table, auto.perm())?;
        let c = self.ctx;
        let mut m = vec![vec![c.zero(); 12]; 12];
        for (i, a) in POSITIVE_ROOTS.iter().enumerate() {
            let j = root_index(&permute(auto.perm(), a)).unwrap();
            m[j][i] = c.from_i64(signs[i]);
        }
        Ok(m)
    }

    /// Whether `auto` acts on `E1..E4` as in [`expected_triality_action`].
    pub fn triality_action_matches(&self, auto: Triality) -> Result<bool, D4Error> {
        let c = self.ctx;
        let h = self.half()?;
        let m = self.triality(auto)?;
        let e = self.e_basis()?;
        let rows = expected_triality_action(auto);
        for (ei, row) in e.iter().zip(rows) {
            let image = self.apply(&m, ei);
            let mut expect = self.zero();
            for (ej, &k) in e.iter().zip(&row) {
                let coef = c.mul(&h, &c.from_i64(k));
                for (x, y) in expect.iter_mut().zip(ej) {
                    *x = c.add(x, &c.mul(&coef, y));
                }
            }
            if image != expect {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Coordinates of `v` in the basis `E1..E4`, if it lies in their span.
    pub fn e_coordinates(&self, v: &[A::Elem]) -> Result<Option<Vec<A::Elem>>, D4Error> {
        let e = self.e_basis()?;
        let m: Mat<A::Elem> = (0..12)
            .map(|r| e.iter().map(|col| col[r].clone()).collect())
            .collect();
        Ok(crate::linalg::solve(self.ctx, &m, v))
    }
}

fn transpose_cols<E: Clone>(cols: &[Vec<E>]) -> Mat<E> {
    let n = cols.first().map_or(0, |c| c.len());
    (0..n).map(|r| cols.iter().map(|c| c[r].clone()).collect()).collect()
}

/// `u = x_{α1}(1) x_{α3}(1) x_{α4}(1) x_{α2}(1)`.
pub fn regular_u<A: Arith>(ctx: &A) -> Vec<(Root, A::Elem)> {
    [[1, 0, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1], [0, 1, 0, 0]]
        .into_iter()
        .map(|r| (r, ctx.one()))
        .collect()
}

/// The two generators of the triality group used for descent.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize)]
pub enum Triality {
    /// Swaps `α3` and `α4`.
    Lambda,
    /// `α1 → α3 → α4 → α1`.
    Mu,
}

impl Triality {
    /// Image of each simple root index (0-based).
    pub fn perm(self) -> [usize; 4] {
        match self {
            Triality::Lambda => [0, 1, 3, 2],
            Triality::Mu => [2, 1, 3, 0],
        }
    }
}

impl fmt::Display for Triality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Triality::Lambda => "lambda",
            Triality::Mu => "mu",
        })
    }
}

pub fn permute(perm: [usize; 4], r: &Root) -> Root {
    let mut out = [0; 4];
    for i in 0..4 {
        out[perm[i]] += r[i];
    }
    out
}

/// Signs `c_α` with `φ(X_α) = c_α X_{π α}`, propagated from the simple
/// roots; every relation is re-checked afterwards.
fn extension_signs(table: &D4Table, perm: [usize; 4]) -> Result<[i64; 12], D4Error> {
    let mut c = [0i64; 12];
    for i in 0..4 {
        let mut r = [0; 4];
        r[i] = 1;
        c[root_index(&r).unwrap()] = 1;
    }
    let image = |i: usize| root_index(&permute(perm, &POSITIVE_ROOTS[i])).unwrap();
    // heights increase along the list, so one pass in order suffices
    for k in 0..12 {
        if c[k] != 0 {
            continue;
        }
        let (i, j) = (0..12)
            .flat_map(|i| (0..12).map(move |j| (i, j)))
            .find(|&(i, j)| table.sum[i][j] == Some(k) && c[i] != 0 && c[j] != 0)
            .ok_or_else(|| D4Error::Inconsistent("root not reachable by brackets".into()))?;
        // φ([X_i, X_j]) = N_ij c_k X_{πk} = c_i c_j N_{πi,πj} X_{πk}
        c[k] = c[i] * c[j] * table.n[image(i)][image(j)] * table.n[i][j];
    }
    for i in 0..12 {
        for j in 0..12 {
            if let Some(k) = table.sum[i][j] {
                if table.n[i][j] * c[k] != c[i] * c[j] * table.n[image(i)][image(j)] {
                    return Err(D4Error::Inconsistent(format!(
                        "triality extension fails on ({}, {})",
                        root_name(&POSITIVE_ROOTS[i]),
                        root_name(&POSITIVE_ROOTS[j])
                    )));
                }
            }
        }
    }
    Ok(c)
}

/// Expected action of `λ`, `μ` on `E1..E4`, as coefficient rows in
/// halves: `image(E_i) = Σ_j row[i][j]/2 · E_j`.
pub fn expected_triality_action(auto: Triality) -> [[i64; 4]; 4] {
    match auto {
        Triality::Lambda => [[2, 0, 0, 0], [0, 0, 2, 0], [0, 2, 0, 0], [0, 0, 0, 2]],
        Triality::Mu => [[2, 0, -1, 0], [0, 0, -2, 0], [0, 2, -2, 0], [0, 0, 0, 2]],
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Std;
    use crate::{F5, F7, Q};

    #[test]
    fn table_is_complete_and_matches_root_system() {
        let t = d4_structure_constants().unwrap();
        let rs = crate::rootdata::parse_root_system("D4").unwrap();
        assert_eq!(rs.num_positive(), 12);
        for r in POSITIVE_ROOTS {
            assert!(rs.is_root(&r));
        }
        let a1 = parse_root("a1").unwrap();
        let a2 = parse_root("a2").unwrap();
        let a3 = parse_root("a3").unwrap();
        assert_eq!(t.constant(&a1, &a2), 1);
        assert_eq!(t.constant(&a2, &a1), -1);
        assert_eq!(t.constant(&a1, &a3), 0);
        assert_eq!(
            t.constant(&parse_root("a2+a4").unwrap(), &parse_root("a1+a2+a3").unwrap()),
            1
        );
    }

    #[test]
    fn root_names_round_trip() {
        for r in POSITIVE_ROOTS {
            assert_eq!(parse_root(&root_name(&r)), Some(r));
        }
        assert_eq!(parse_root("a1+a3"), None);
    }

    fn jacobi<A: Arith>(ctx: &A) {
        let l = LieU::new(ctx).unwrap();
        for a in POSITIVE_ROOTS {
            for b in POSITIVE_ROOTS {
                for c in POSITIVE_ROOTS {
                    let (x, y, z) = (l.basis(&a), l.basis(&b), l.basis(&c));
                    let t1 = l.bracket(&x, &l.bracket(&y, &z));
                    let t2 = l.bracket(&y, &l.bracket(&z, &x));
                    let t3 = l.bracket(&z, &l.bracket(&x, &y));
                    for k in 0..12 {
                        let s = ctx.add(&ctx.add(&t1[k], &t2[k]), &t3[k]);
                        assert!(ctx.is_zero(&s));
                    }
                }
            }
        }
    }

    #[test]
    fn jacobi_identity() {
        jacobi(&Std::<Q>::new());
        jacobi(&Std::<F5>::new());
    }

    #[test]
    fn fixed_space_over_small_fields() {
        assert_eq!(LieU::new(&Std::<Q>::new()).unwrap().fixed_space_matches(), Ok((4, true)));
        assert_eq!(LieU::new(&Std::<F7>::new()).unwrap().fixed_space_matches(), Ok((4, true)));
    }

    #[test]
    fn single_root_action() {
        let ctx = Std::<Q>::new();
        let l = LieU::new(&ctx).unwrap();
        let a1 = parse_root("a1").unwrap();
        let a2 = parse_root("a2").unwrap();
        let m = l.ad_root_element(&a1, &ctx.one());
        let mut expect = l.basis(&a2);
        expect[root_index(&parse_root("a1+a2").unwrap()).unwrap()] = ctx.one();
        assert_eq!(l.apply(&m, &l.basis(&a2)), expect);
        assert_eq!(l.ad_root_element(&a1, &ctx.zero()), identity(&ctx, 12));
    }

    #[test]
    fn triality_signs_are_consistent() {
        let ctx = Std::<Q>::new();
        let l = LieU::new(&ctx).unwrap();
        let lam = l.triality(Triality::Lambda).unwrap();
        let mu = l.triality(Triality::Mu).unwrap();
        assert_eq!(mat_mul(&ctx, &lam, &lam), identity(&ctx, 12));
        let mu3 = mat_mul(&ctx, &mat_mul(&ctx, &mu, &mu), &mu);
        assert_eq!(mu3, identity(&ctx, 12));
        // (λμ)² = 1
        let lm = mat_mul(&ctx, &lam, &mu);
        assert_eq!(mat_mul(&ctx, &lm, &lm), identity(&ctx, 12));
        assert!(l.triality_action_matches(Triality::Lambda).unwrap());
        assert!(l.triality_action_matches(Triality::Mu).unwrap());
        let f7 = Std::<F7>::new();
        let l7 = LieU::new(&f7).unwrap();
        assert!(l7.triality_action_matches(Triality::Mu).unwrap());
    }
}
