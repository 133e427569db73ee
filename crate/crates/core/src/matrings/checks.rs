//! Exhaustive small-ring checks: `PGL_2` in characteristic 2, translation of
//! the nilpotent cone by infinitesimal scalars, and constancy of exterior
//! power characters on the infinitesimal center.

use serde::Serialize;
use serde_json::json;

use super::centralizer::{
    centralizer_points, find_noncommuting_pair, group_elements, DEFAULT_BUDGET,
};
use super::group::{is_nilpotent_matrix, is_unipotent_matrix, Flavor, GroupElement};
use super::matrix::{scalar_mul, trace};
use super::parse::{format_matrix, make_ring};
use super::ring::{Elem, Ring};
use super::RingError;
use crate::linalg::{identity, Mat};
use crate::report::CheckRecord;
use crate::scalar::Arith;

const ANCHOR_PGL2: &str = "pgl2-characteristic-2";

fn upper_unipotent(ring: &Ring, n: usize) -> Mat<Elem> {
    let mut m = identity(ring, n);
    for i in 0..n - 1 {
        m[i][i + 1] = ring.one();
    }
    m
}

/// Regular unipotent `1 + Σ E_{i,i+1}` in the given flavor.
pub fn regular_unipotent(ring: &Ring, flavor: Flavor, n: usize) -> GroupElement {
    GroupElement::new(ring, flavor, upper_unipotent(ring, n)).expect("unipotent is invertible")
}

/// Unipotents of `SL_2(F_q)` are exactly the trace-0 matrices of det 1.
fn sl2_unipotents_are_traceless(q_exp: u32) -> Result<CheckRecord, RingError> {
    let f = Ring::field(2, q_exp)?;
    let q = f.size() as u64;
    let all = group_elements(&f, Flavor::SL, 2, DEFAULT_BUDGET)?;
    let uni = all.iter().filter(|g| is_unipotent_matrix(&f, &g.matrix)).count() as u64;
    let traceless = all.iter().filter(|g| trace(&f, &g.matrix) == 0).count() as u64;
    let agree = all
        .iter()
        .all(|g| is_unipotent_matrix(&f, &g.matrix) == (trace(&f, &g.matrix) == 0));
    Ok(CheckRecord::new(
        format!("sl2-unipotent-locus-F{q}"),
        ANCHOR_PGL2,
        agree && uni == q * q,
        json!({ "q": q, "unipotent": uni, "trace_zero": traceless, "expected": q * q }),
    ))
}

/// `|U_{PGL_2}(F_q)| = q² = |P²(F_q)| − |{a² = bc}|`.
fn pgl2_unipotent_count(q_exp: u32) -> Result<CheckRecord, RingError> {
    let f = Ring::field(2, q_exp)?;
    let q = f.size() as u64;
    let units = f.units();
    let cosets = group_elements(&f, Flavor::PGL, 2, DEFAULT_BUDGET)?;
    // A coset is unipotent when some scalar multiple of it is.
    let uni = cosets
        .iter()
        .filter(|g| {
            units
                .iter()
                .any(|c| is_unipotent_matrix(&f, &scalar_mul(&f, c, &g.matrix)))
        })
        .count() as u64;
    // Points of P² as normalized triples, and those on the conic.
    let mut plane = 0u64;
    let mut conic = 0u64;
    for a in f.elements() {
        for b in f.elements() {
            for c in f.elements() {
                let first = [a, b, c].into_iter().find(|&x| x != 0);
                if first != Some(f.one()) {
                    continue;
                }
                plane += 1;
                if f.mul(&a, &a) == f.mul(&b, &c) {
                    conic += 1;
                }
            }
        }
    }
    Ok(CheckRecord::new(
        format!("pgl2-unipotent-count-F{q}"),
        ANCHOR_PGL2,
        uni == q * q && plane - conic == q * q,
        json!({
            "q": q,
            "unipotent_cosets": uni,
            "plane_points": plane,
            "conic_points": conic,
        }),
    ))
}

/// `Z_{PGL_2}(u)(F_2[ε])` against the equations `c² = 0, a² = ad + bc + ac`.
fn pgl2_dual_number_centralizer() -> Result<Vec<CheckRecord>, RingError> {
    let r = make_ring("F(2)[e]/e^2")?;
    let u = regular_unipotent(&r, Flavor::PGL, 2);
    let z = centralizer_points(&r, &u, DEFAULT_BUDGET)?;
    let all = group_elements(&r, Flavor::PGL, 2, DEFAULT_BUDGET)?;
    let solutions: Vec<GroupElement> = all
        .into_iter()
        .filter(|h| {
            let [a, b] = [h.matrix[0][0], h.matrix[0][1]];
            let [c, d] = [h.matrix[1][0], h.matrix[1][1]];
            let lhs = r.mul(&a, &a);
            let rhs = r.add(&r.add(&r.mul(&a, &d), &r.mul(&b, &c)), &r.mul(&a, &c));
            r.mul(&c, &c) == 0 && lhs == rhs
        })
        .collect();
    let pair = find_noncommuting_pair(&r, &z);
    let fmt = |g: &GroupElement| format_matrix(&r, &g.matrix);
    Ok(vec![
        CheckRecord::new(
            "pgl2-dual-centralizer-equations",
            ANCHOR_PGL2,
            z == solutions,
            json!({ "points": z.len(), "equation_solutions": solutions.len() }),
        ),
        CheckRecord::new(
            "pgl2-dual-centralizer-noncommutative",
            ANCHOR_PGL2,
            pair.is_some(),
            json!({ "pair": pair.as_ref().map(|(a, b)| [fmt(a), fmt(b)]) }),
        ),
    ])
}

fn centralizer_commutativity(
    spec: &str,
    flavor: Flavor,
    n: usize,
    expect_commutative: bool,
    id: String,
) -> Result<CheckRecord, RingError> {
    let r = make_ring(spec)?;
    let u = regular_unipotent(&r, flavor, n);
    let z = centralizer_points(&r, &u, DEFAULT_BUDGET)?;
    let pair = find_noncommuting_pair(&r, &z);
    let fmt = |g: &GroupElement| format_matrix(&r, &g.matrix);
    Ok(CheckRecord::new(
        id,
        ANCHOR_PGL2,
        pair.is_none() == expect_commutative,
        json!({
            "ring": spec,
            "points": z.len(),
            "commutative": pair.is_none(),
            "pair": pair.as_ref().map(|(a, b)| [fmt(a), fmt(b)]),
        }),
    ))
}

/// Commutativity of unipotent centralizers in `SL`, `PGL` over fields and
/// dual numbers.
pub fn commutativity_checks() -> Result<Vec<CheckRecord>, RingError> {
    let mut out = Vec::new();
    for spec in ["F(2)", "F(2,2)", "F(2)[e]/e^2", "F(2,2)[e]/e^2"] {
        out.push(centralizer_commutativity(
            spec,
            Flavor::SL,
            2,
            true,
            format!("sl2-centralizer-commutative-{spec}"),
        )?);
    }
    for spec in ["F(2)", "F(2,2)", "F(2,3)"] {
        out.push(centralizer_commutativity(
            spec,
            Flavor::PGL,
            2,
            true,
            format!("pgl2-field-centralizer-commutative-{spec}"),
        )?);
    }
    // Non-commutativity of the scheme shows up once the residue field acts
    // non-trivially on tangent directions, or with two infinitesimals.
    for spec in ["F(2,2)[e]/e^2", "F(2)[e]/e^2[f]/f^2"] {
        out.push(centralizer_commutativity(
            spec,
            Flavor::PGL,
            2,
            false,
            format!("pgl2-centralizer-noncommutative-{spec}"),
        )?);
    }
    out.push(centralizer_commutativity(
        "F(3)[e]/e^2",
        Flavor::PGL,
        3,
        false,
        "pgl3-dual-centralizer-noncommutative".into(),
    )?);
    Ok(out)
}

/// The full characteristic-2 `PGL_2` bundle.
pub fn pgl2_char2_suite() -> Vec<CheckRecord> {
    let mut out = Vec::new();
    let mut push = |r: Result<CheckRecord, RingError>, id: &str| match r {
        Ok(c) => out.push(c),
        Err(e) => out.push(CheckRecord::error(id, ANCHOR_PGL2, e)),
    };
    for k in 1..=3 {
        push(sl2_unipotents_are_traceless(k), "sl2-unipotent-locus");
    }
    for k in 1..=3 {
        push(pgl2_unipotent_count(k), "pgl2-unipotent-count");
    }
    match pgl2_dual_number_centralizer() {
        Ok(v) => out.extend(v),
        Err(e) => out.push(CheckRecord::error("pgl2-dual-centralizer", ANCHOR_PGL2, e)),
    }
    match commutativity_checks() {
        Ok(v) => out.extend(v),
        Err(e) => out.push(CheckRecord::error("centralizer-commutativity", ANCHOR_PGL2, e)),
    }
    out
}

#[derive(Debug, Clone, Serialize)]
pub struct TranslateVerdict {
    pub n: usize,
    pub p: u32,
    pub ring: String,
    /// `p^m`, the exact power of `p` dividing `n`.
    pub pm: u32,
    pub nilpotents_checked: usize,
    pub scalars_checked: usize,
    /// Every `(X, s)` with `X` nilpotent has `X + s·I` nilpotent iff `s^{p^m} = 0`.
    pub translation_ok: bool,
    /// `(t − s)ⁿ = tⁿ` in `R[t]` for every `s` in `α(R)`.
    pub binomials_vanish: bool,
    pub exhaustive_over_ring: bool,
    pub passed: bool,
}

fn nilpotents_over(ring: &Ring, n: usize) -> Vec<Mat<Elem>> {
    let size = ring.size() as u64;
    let free = n * n - 1;
    let total = size.pow(free as u32);
    let mut out = Vec::new();
    for idx in 0..total {
        let mut rest = idx;
        let mut m = vec![vec![0; n]; n];
        let mut diag_sum = 0;
        for k in 0..free {
            let v = (rest % size) as Elem;
            rest /= size;
            m[k / n][k % n] = v;
            if k / n == k % n {
                diag_sum = ring.add(&diag_sum, &v);
            }
        }
        m[n - 1][n - 1] = ring.neg(&diag_sum);
        if is_nilpotent_matrix(ring, &m) {
            out.push(m);
        }
    }
    out
}

/// Stability of the nilpotent cone of `sl_n` under translation by the
/// infinitesimal scalars `α(R) = {s : s^{p^m} = 0}` over `R = F_p[a]/(a^{p^m})`.
///
/// Exhaustive over all scalars of `R` and all `F_p`-rational nilpotents, and
/// over every nilpotent of `sl_n(R)` when that space is small.
pub fn nilpotent_translate_check(n: usize, p: u32) -> Result<TranslateVerdict, RingError> {
    if n < 2 || !n.is_multiple_of(p as usize) {
        return Err(RingError::Malformed(format!("{p} does not divide {n}")));
    }
    let mut pm = 1u32;
    while n.is_multiple_of(pm as usize * p as usize) {
        pm *= p;
    }
    let spec = format!("F({p})[a]/a^{pm}");
    let r = make_ring(&spec)?;
    let fp = Ring::field(p, 1)?;
    let ring_space = (r.size() as u128).pow((n * n - 1) as u32);
    let exhaustive_over_ring = ring_space <= 1 << 16;
    let nilpotents = if exhaustive_over_ring {
        nilpotents_over(&r, n)
    } else {
        // F_p-points embed as constant polynomials.
        nilpotents_over(&fp, n)
    };
    let alpha: Vec<Elem> = r
        .elements()
        .filter(|&s| r.pow(s, pm as u64) == 0)
        .collect();
    let mut translation_ok = true;
    for x in &nilpotents {
        for s in r.elements() {
            let mut y = x.clone();
            for (i, row) in y.iter_mut().enumerate() {
                row[i] = r.add(&row[i], &s);
            }
            let nil = is_nilpotent_matrix(&r, &y);
            if nil != alpha.contains(&s) {
                translation_ok = false;
            }
        }
    }
    // (t − s)^n expanded: coefficient of t^i is C(n,i)(−s)^{n−i}.
    let binomials_vanish = alpha.iter().all(|&s| {
        (0..n).all(|i| {
            let c = binomial_mod(n as u64, i as u64, p as u64);
            let term = r.scale(c as i64, r.pow(r.neg(&s), (n - i) as u64));
            term == 0
        })
    });
    let passed = translation_ok && binomials_vanish && !nilpotents.is_empty();
    Ok(TranslateVerdict {
        n,
        p,
        ring: spec,
        pm,
        nilpotents_checked: nilpotents.len(),
        scalars_checked: r.size() as usize,
        translation_ok,
        binomials_vanish,
        exhaustive_over_ring,
        passed,
    })
}

/// `C(n, k) mod p` by Lucas' theorem.
pub fn binomial_mod(mut n: u64, mut k: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    while n > 0 || k > 0 {
        let (a, b) = (n % p, k % p);
        if b > a {
            return 0;
        }
        acc = acc * small_binomial(a, b) % p;
        n /= p;
        k /= p;
    }
    acc
}

fn small_binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1u64, |acc, j| acc * (n - j) / (j + 1))
}

#[derive(Debug, Clone, Serialize)]
pub struct CenterCharacterVerdict {
    pub r: usize,
    pub p: u32,
    pub i: usize,
    /// `p^n`, the exact power of `p` dividing `r + 1`.
    pub pn: u32,
    /// Dimension of the `i`-th exterior power, counted from subsets.
    pub dimension: u64,
    /// The character `dim·ζ^i` equals `dim` on `μ_{p^n}`.
    pub constant: bool,
    /// `p^n | i` or `p | C(r+1, i)`.
    pub criterion: bool,
    /// The same test with `C(r, i)` in place of `C(r+1, i)`.
    pub shifted_criterion: bool,
    pub passed: bool,
}

/// Constancy of the `i`-th exterior power character of `SL_{r+1}` on the
/// infinitesimal center `μ_{p^n}`, evaluated at the generic point of
/// `F_p[δ]/(δ^{p^n})` with `ζ = 1 + δ`.
pub fn center_character_check(r: usize, p: u32, i: usize) -> Result<CenterCharacterVerdict, RingError> {
    let n1 = r + 1;
    if !n1.is_multiple_of(p as usize) || i == 0 || i > r || r > 20 {
        return Err(RingError::Malformed(format!(
            "need p | r+1 and 1 ≤ i ≤ r (r={r}, p={p}, i={i})"
        )));
    }
    let mut pn = 1u32;
    while n1.is_multiple_of(pn as usize * p as usize) {
        pn *= p;
    }
    let ring = make_ring(&format!("F({p})[d]/d^{pn}"))?;
    let dimension = (0u32..1 << n1).filter(|s| s.count_ones() as usize == i).count() as u64;
    let zeta = match ring.variable() {
        Some(d) => ring.add(&ring.one(), &d),
        // p^n = 1 cannot happen since p | r+1
        None => ring.one(),
    };
    let dim = ring.scale((dimension % p as u64) as i64, ring.one());
    let value = ring.mul(&dim, &ring.pow(zeta, i as u64));
    let constant = value == dim;
    let criterion = i.is_multiple_of(pn as usize) || binomial_mod(n1 as u64, i as u64, p as u64) == 0;
    let shifted_criterion = i.is_multiple_of(pn as usize) || binomial_mod(r as u64, i as u64, p as u64) == 0;
    Ok(CenterCharacterVerdict {
        r,
        p,
        i,
        pn,
        dimension,
        constant,
        criterion,
        shifted_criterion,
        passed: constant && criterion,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lucas_binomials() {
        assert_eq!(binomial_mod(4, 2, 2), 0);
        assert_eq!(binomial_mod(6, 3, 5), 0);
        assert_eq!(binomial_mod(7, 3, 5), 0);
        assert_eq!(binomial_mod(5, 2, 7), 3);
    }

    #[test]
    fn translation_small_cases() {
        let v = nilpotent_translate_check(2, 2).unwrap();
        assert!(v.passed && v.exhaustive_over_ring, "{v:?}");
        let v = nilpotent_translate_check(3, 3).unwrap();
        assert!(v.passed, "{v:?}");
        assert!(nilpotent_translate_check(3, 2).is_err());
    }

    #[test]
    fn center_character_examples() {
        let v = center_character_check(1, 2, 1).unwrap();
        assert!(v.constant && v.criterion);
        assert!(!v.shifted_criterion);
        let v = center_character_check(3, 2, 2).unwrap();
        assert!(v.passed);
        assert_eq!(v.dimension, 6);
        assert!(center_character_check(3, 2, 4).is_err());
    }

    #[test]
    fn pgl2_dual_number_set() {
        let v = pgl2_dual_number_centralizer().unwrap();
        assert!(v[0].passed, "{v:?}");
        // the group of F2[e]-points is abelian
        assert!(!v[1].passed, "{v:?}");
    }
}
