//! Verification harness for type-A Springer maps: equivariance (plain and
//! twisted), bijectivity, centralizer matching, filtration congruences and
//! commutativity of unipotent centralizers.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{
    apply_auto_matrix, apply_inverse, psi, psi_lie, recurrence_residuals, SpringerCoefficients,
    SpringerError,
};
use crate::linalg::{identity, mat_mul, mat_sub, same_span, Mat};
use crate::matrings::centralizer::{
    centralizer_points, find_noncommuting_pair, lie_centralizer, matrix_centralizer_points, Action,
};
use crate::matrings::checks::regular_unipotent;
use crate::matrings::group::{is_nilpotent_matrix, is_unipotent_matrix};
use crate::matrings::matrix::{determinant, flatten, inverse, scalar_mul, unflatten};
use crate::matrings::{format_matrix, Elem, Flavor, LieFlavor, Ring, RingAuto};
use crate::scalar::Arith;

fn random_matrix(r: &Ring, size: usize, rng: &mut ChaCha8Rng) -> Mat<Elem> {
    (0..size)
        .map(|_| (0..size).map(|_| rng.gen_range(0..r.size())).collect())
        .collect()
}

/// Uniform-ish element of `SL_n(R)`: a random invertible matrix with its
/// first row rescaled by the inverse determinant.
pub fn random_sl(r: &Ring, size: usize, rng: &mut ChaCha8Rng) -> Mat<Elem> {
    loop {
        let mut m = random_matrix(r, size, rng);
        let d = determinant(r, &m);
        if let Some(di) = r.inv(&d) {
            m[0] = m[0].iter().map(|x| r.mul(x, &di)).collect();
            return m;
        }
    }
}

fn random_strict_upper(r: &Ring, size: usize, rng: &mut ChaCha8Rng) -> Mat<Elem> {
    let mut m = vec![vec![0; size]; size];
    for (i, row) in m.iter_mut().enumerate() {
        for x in row.iter_mut().skip(i + 1) {
            *x = rng.gen_range(0..r.size());
        }
    }
    m
}

fn conjugate(r: &Ring, h: &Mat<Elem>, x: &Mat<Elem>) -> Mat<Elem> {
    let hi = inverse(r, h).expect("SL elements are invertible");
    mat_mul(r, &mat_mul(r, h, x), &hi)
}

/// A random conjugate of a random strictly upper-triangular matrix.
pub fn random_nilpotent(r: &Ring, size: usize, rng: &mut ChaCha8Rng) -> Mat<Elem> {
    let h = random_sl(r, size, rng);
    conjugate(r, &h, &random_strict_upper(r, size, rng))
}

pub fn random_unipotent(r: &Ring, size: usize, rng: &mut ChaCha8Rng) -> Mat<Elem> {
    let n = random_nilpotent(r, size, rng);
    crate::matrings::matrix::mat_add(r, &identity(r, size), &n)
}

fn nilpart(r: &Ring, g: &Mat<Elem>) -> Mat<Elem> {
    mat_sub(r, g, &identity(r, g.len()))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EquivarianceVerdict {
    pub samples: usize,
    pub seed: u64,
    pub conjugation_failures: usize,
    pub twisted_checked: bool,
    pub twisted_failures: usize,
    pub counterexample: Option<String>,
    pub passed: bool,
}

/// Samples `h ∈ SL_{n+1}(R)` and unipotent `g`, checking
/// `ρ(hgh⁻¹) = hρ(g)h⁻¹`; with descent data also `ρ(ψ(σg)) = ψ'(σρ(g))`.
///
/// The first sample is always the regular unipotent Jordan block.
pub fn verify_equivariance(
    c: &SpringerCoefficients,
    samples: usize,
    seed: u64,
) -> EquivarianceVerdict {
    let r = &c.ring;
    let size = c.size();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut conj_fail = 0;
    let mut twist_fail = 0;
    let mut counterexample = None;
    let jordan = regular_unipotent(r, Flavor::SL, size).matrix;
    for s in 0..samples {
        let g = if s == 0 {
            jordan.clone()
        } else {
            random_unipotent(r, size, &mut rng)
        };
        let h = random_sl(r, size, &mut rng);
        let lhs = c.eval(&nilpart(r, &conjugate(r, &h, &g)));
        let rhs = conjugate(r, &h, &c.eval(&nilpart(r, &g)));
        if lhs != rhs {
            conj_fail += 1;
            counterexample.get_or_insert_with(|| format_matrix(r, &g));
        }
        if let Some(d) = &c.descent {
            if !twisted_agrees(c, &d.sigma, &g) {
                twist_fail += 1;
                counterexample.get_or_insert_with(|| format_matrix(r, &g));
            }
        }
    }
    EquivarianceVerdict {
        samples,
        seed,
        conjugation_failures: conj_fail,
        twisted_checked: c.descent.is_some(),
        twisted_failures: twist_fail,
        counterexample,
        passed: conj_fail == 0 && twist_fail == 0,
    }
}

/// `ρ(ψ(σg)) = ψ'(σ(ρ(g)))` for one unipotent `g`.
pub fn twisted_agrees(c: &SpringerCoefficients, sigma: &RingAuto, g: &Mat<Elem>) -> bool {
    let r = &c.ring;
    let pg = psi(r, &apply_auto_matrix(r, sigma, g)).expect("unipotents are invertible");
    let lhs = c.eval(&nilpart(r, &pg));
    let rhs = psi_lie(r, &apply_auto_matrix(r, sigma, &c.eval(&nilpart(r, g))));
    lhs == rhs
}

/// Replaces `a_index` (1-based, `≥ 2`) by `a_index + t`, with `t` the first
/// element that is not `σ`-fixed and breaks the recurrence at that index.
pub fn corrupt_coefficients(c: &SpringerCoefficients, index: usize) -> Option<SpringerCoefficients> {
    let d = c.descent.as_ref()?;
    let r = &c.ring;
    if index < 2 || index > c.n {
        return None;
    }
    let t = r.elements().find(|&t| {
        if r.apply_auto(&d.sigma, t) == t {
            return false;
        }
        let mut a = c.a.clone();
        a[index - 1] = r.add(&a[index - 1], &t);
        recurrence_residuals(r, &d.sigma, &a)[index - 1] != 0
    })?;
    let mut out = c.clone();
    out.a[index - 1] = r.add(&out.a[index - 1], &t);
    Some(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BijectionVerdict {
    pub exhaustive: bool,
    /// Unipotent elements of `SL_{n+1}(F_q)` visited (exhaustive mode).
    pub unipotents: u64,
    pub nilpotents: u64,
    /// `q^{(n+1)n}`.
    pub expected: u64,
    pub injective: bool,
    pub onto: bool,
    pub inverse_failures: usize,
    pub passed: bool,
}

/// Whether `ρ` maps the unipotents of `SL_{n+1}(F_q)` bijectively onto the
/// nilpotents of `sl_{n+1}(F_q)`.  Exhaustive when `n ≤ 2`, `q ≤ 4`;
/// otherwise `samples` round trips through the inverse series each way.
pub fn bijection_check(c: &SpringerCoefficients, samples: usize, seed: u64) -> BijectionVerdict {
    let r = &c.ring;
    let size = c.size();
    let q = r.size() as u64;
    let expected = q.pow((size * (size - 1)) as u32);
    if !c.valid {
        return BijectionVerdict {
            exhaustive: false,
            unipotents: 0,
            nilpotents: 0,
            expected,
            injective: false,
            onto: false,
            inverse_failures: 0,
            passed: false,
        };
    }
    if c.n <= 2 && q <= 4 {
        let total = q.pow((size * size) as u32);
        let mut nil = BTreeSet::new();
        let mut image = BTreeSet::new();
        let mut uni = 0u64;
        let mut entries = vec![0u32; size * size];
        for idx in 0..total {
            let mut rest = idx;
            for e in entries.iter_mut() {
                *e = (rest % q) as u32;
                rest /= q;
            }
            let m = unflatten(&entries, size);
            if is_nilpotent_matrix(r, &m) {
                nil.insert(m.clone());
            }
            if determinant(r, &m) == r.one() && is_unipotent_matrix(r, &m) {
                uni += 1;
                image.insert(c.eval(&nilpart(r, &m)));
            }
        }
        let injective = image.len() as u64 == uni;
        let onto = image == nil;
        BijectionVerdict {
            exhaustive: true,
            unipotents: uni,
            nilpotents: nil.len() as u64,
            expected,
            injective,
            onto,
            inverse_failures: 0,
            passed: injective && onto && uni == expected && nil.len() as u64 == expected,
        }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut failures = 0;
        for _ in 0..samples {
            let g = random_unipotent(r, size, &mut rng);
            let x = c.eval(&nilpart(r, &g));
            if !is_nilpotent_matrix(r, &x) || apply_inverse(c, &x).as_ref() != Some(&g) {
                failures += 1;
            }
            let y = random_nilpotent(r, size, &mut rng);
            match apply_inverse(c, &y) {
                Some(h)
                    if is_unipotent_matrix(r, &h)
                        && determinant(r, &h) == r.one()
                        && c.eval(&nilpart(r, &h)) == y => {}
                _ => failures += 1,
            }
        }
        BijectionVerdict {
            exhaustive: false,
            unipotents: samples as u64,
            nilpotents: samples as u64,
            expected,
            injective: failures == 0,
            onto: failures == 0,
            inverse_failures: failures,
            passed: failures == 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CentralizerMatch {
    pub points: usize,
    pub points_match: bool,
    pub lie_dim: usize,
    pub lie_match: bool,
    /// Both equal `span{N, …, Nⁿ}` plus the scalars when `p | n+1`.
    pub expected_span_match: bool,
    pub passed: bool,
}

/// `Z(u) = Z(ρ(u))` for the regular Jordan block `u`, as subsets of
/// `SL_{n+1}(F_q)` and as Lie centralizers in `sl_{n+1}`.
pub fn verify_centralizer_match(
    c: &SpringerCoefficients,
    budget: u128,
) -> Result<CentralizerMatch, SpringerError> {
    let r = &c.ring;
    let size = c.size();
    let u = regular_unipotent(r, Flavor::SL, size);
    let x = c.eval(&nilpart(r, &u.matrix));
    let zu = centralizer_points(r, &u, budget)?;
    let zx = matrix_centralizer_points(r, Flavor::SL, &x, budget)?;
    let lu = lie_centralizer(r, Action::Adjoint(&u.matrix), LieFlavor::Sl)?;
    let lx = lie_centralizer(r, Action::Bracket(&x), LieFlavor::Sl)?;
    let flat = |v: &[Mat<Elem>]| v.iter().map(flatten).collect::<Vec<_>>();
    let nil = nilpart(r, &u.matrix);
    let mut expected = Vec::new();
    let mut pw = nil.clone();
    for _ in 0..c.n {
        expected.push(pw.clone());
        pw = mat_mul(r, &pw, &nil);
    }
    if r.from_i64(size as i64) == 0 {
        expected.push(identity(r, size));
    }
    let lie_match = same_span(r, &flat(&lu.basis), &flat(&lx.basis));
    let expected_span_match = same_span(r, &flat(&lu.basis), &flat(&expected));
    let points_match = zu == zx;
    Ok(CentralizerMatch {
        points: zu.len(),
        points_match,
        lie_dim: lu.dim,
        lie_match,
        expected_span_match,
        passed: points_match && lie_match && expected_span_match && lu.dim == lx.dim,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct UniquenessVerdict {
    pub vectors: usize,
    pub injective: bool,
    pub recovered: bool,
}

/// Distinct coefficient vectors give distinct values on the regular
/// Jordan block, and the value determines them: `aᵢ = X[0][i]`.
pub fn uniqueness_check(r: &Ring, n: usize) -> UniquenessVerdict {
    let size = n + 1;
    let u = regular_unipotent(r, Flavor::SL, size).matrix;
    let e = nilpart(r, &u);
    let q = r.size() as u64;
    let total = q.pow(n as u32);
    let mut values = BTreeSet::new();
    let mut recovered = true;
    for idx in 0..total {
        let mut rest = idx;
        let a: Vec<Elem> = (0..n)
            .map(|_| {
                let x = (rest % q) as Elem;
                rest /= q;
                x
            })
            .collect();
        let x = super::power_series(r, &a, &e);
        recovered &= (1..=n).all(|i| x[0][i] == a[i - 1]);
        values.insert(x);
    }
    UniquenessVerdict {
        vectors: total as usize,
        injective: values.len() as u64 == total,
        recovered,
    }
}

/// A cocharacter of the diagonal torus given by its weights.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KawanakaContext {
    pub lambda: Vec<i64>,
}

impl KawanakaContext {
    /// Weights must sum to zero and be non-increasing, so the filtration
    /// lies in the upper triangle.
    pub fn new(lambda: Vec<i64>) -> Option<Self> {
        let dominant = lambda.windows(2).all(|w| w[0] >= w[1]);
        (lambda.iter().sum::<i64>() == 0 && dominant && !lambda.is_empty())
            .then_some(KawanakaContext { lambda })
    }

    /// Matrix positions `(r, c)` with `λ_r − λ_c ≥ i`.
    pub fn positions(&self, i: i64) -> Vec<(usize, usize)> {
        let n = self.lambda.len();
        let mut out = Vec::new();
        for r in 0..n {
            for c in 0..n {
                if r != c && self.lambda[r] - self.lambda[c] >= i {
                    out.push((r, c));
                }
            }
        }
        out
    }

    /// Largest weight on the unipotent radical.
    pub fn top_level(&self) -> i64 {
        self.lambda.first().unwrap() - self.lambda.last().unwrap()
    }

    fn in_level(&self, x: &Mat<Elem>, i: i64) -> bool {
        let allowed = self.positions(i);
        x.iter().enumerate().all(|(r, row)| {
            row.iter()
                .enumerate()
                .all(|(c, &v)| v == 0 || allowed.contains(&(r, c)))
        })
    }

    /// Every matrix supported on the level-`i` positions.
    fn level_matrices(&self, ring: &Ring) -> impl Fn(i64) -> Vec<Mat<Elem>> + '_ {
        let ring = ring.clone();
        move |i| {
            let pos = self.positions(i);
            let n = self.lambda.len();
            let q = ring.size() as u64;
            let total = q.pow(pos.len() as u32);
            (0..total)
                .map(|idx| {
                    let mut m = vec![vec![0; n]; n];
                    let mut rest = idx;
                    for &(r, c) in &pos {
                        m[r][c] = (rest % q) as Elem;
                        rest /= q;
                    }
                    m
                })
                .collect()
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KawanakaVerdict {
    pub lambda: Vec<i64>,
    pub c: String,
    pub pairs: u64,
    pub preserves_levels: bool,
    pub additive_mod_higher: bool,
    pub commutator_mod_higher: bool,
    /// `ρ` restricts to a bijection `U(λ,i) → 𝔲(λ,i)` for each level.
    pub level_bijections: bool,
    /// `ρ(1 + εY) = ε·a₁·Y` over `F_q[ε]` for every strictly upper `Y`.
    pub differential_scalar: bool,
    pub passed: bool,
}

/// Exhaustive filtration congruences for all level pairs `(m, n)`.
pub fn kawanaka_check(
    c: &SpringerCoefficients,
    ctx: &KawanakaContext,
) -> Result<KawanakaVerdict, SpringerError> {
    let r = &c.ring;
    let size = c.size();
    if ctx.lambda.len() != size {
        return Err(SpringerError::Shape {
            expected: size,
            got: ctx.lambda.len(),
            flavor: Flavor::SL,
        });
    }
    let a1_inv = r
        .inv(&c.a[0])
        .ok_or_else(|| SpringerError::NonUnitLeading(r.format(c.a[0])))?;
    let one = identity(r, size);
    let lift = |x: &Mat<Elem>| crate::matrings::matrix::mat_add(r, &one, x);
    let levels = ctx.level_matrices(r);
    let top = ctx.top_level();
    let mut pairs = 0u64;
    let (mut p1, mut p2, mut p3, mut bij) = (true, true, true, true);
    let by_level: Vec<Vec<Mat<Elem>>> = (1..=top).map(&levels).collect();
    for (mi, us) in by_level.iter().enumerate() {
        let m = mi as i64 + 1;
        let images: BTreeSet<Mat<Elem>> = us.iter().map(|x| c.eval(x)).collect();
        bij &= images.len() == us.len() && images.iter().all(|y| ctx.in_level(y, m));
        for (ni, vs) in by_level.iter().enumerate() {
            let n = ni as i64 + 1;
            let low = m.min(n);
            for x in us {
                let u = lift(x);
                let ru = c.eval(x);
                p1 &= ctx.in_level(&ru, m);
                let ui = inverse(r, &u).expect("unipotent");
                for y in vs {
                    pairs += 1;
                    let v = lift(y);
                    let rv = c.eval(y);
                    let uv = mat_mul(r, &u, &v);
                    let sum_gap = mat_sub(r, &mat_sub(r, &c.eval(&nilpart(r, &uv)), &ru), &rv);
                    p2 &= ctx.in_level(&sum_gap, 2 * low);
                    let vi = inverse(r, &v).expect("unipotent");
                    let comm = mat_mul(r, &mat_mul(r, &uv, &ui), &vi);
                    let bracket = crate::matrings::matrix::commutator(r, &ru, &rv);
                    let gap = mat_sub(
                        r,
                        &c.eval(&nilpart(r, &comm)),
                        &scalar_mul(r, &a1_inv, &bracket),
                    );
                    p3 &= ctx.in_level(&gap, m + n + low);
                }
            }
        }
    }
    let differential = differential_is_scalar(c, &levels(1))?;
    Ok(KawanakaVerdict {
        lambda: ctx.lambda.clone(),
        c: r.format(a1_inv),
        pairs,
        preserves_levels: p1,
        additive_mod_higher: p2,
        commutator_mod_higher: p3,
        level_bijections: bij,
        differential_scalar: differential,
        passed: p1 && p2 && p3 && bij && differential,
    })
}

/// Evaluates `ρ` over the dual numbers on `1 + εY`.
fn differential_is_scalar(
    c: &SpringerCoefficients,
    ys: &[Mat<Elem>],
) -> Result<bool, SpringerError> {
    let d = Ring::dual_numbers(&c.ring)?;
    let eps = d.variable().expect("dual numbers have a variable");
    let a: Vec<Elem> = c.a.iter().map(|&x| d.embed_base(x)).collect();
    let cd = SpringerCoefficients::new(&d, a)?;
    let embed = |y: &Mat<Elem>| -> Mat<Elem> {
        y.iter()
            .map(|row| row.iter().map(|&v| d.embed_base(v)).collect())
            .collect()
    };
    let scale = d.mul(&eps, &d.embed_base(c.a[0]));
    Ok(ys.iter().all(|y| {
        let y = embed(y);
        cd.eval(&scalar_mul(&d, &eps, &y)) == scalar_mul(&d, &scale, &y)
    }))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CommutativityVerdict {
    pub group: String,
    pub field: String,
    /// Order of the fundamental group: 1 for SL, `n` for PGL_n.
    pub pi1_order: usize,
    pub p_divides_pi1: bool,
    pub field_points: usize,
    pub field_commutative: bool,
    pub dual_points: usize,
    pub dual_commutative: bool,
    pub witness: Option<[String; 2]>,
    pub passed: bool,
}

/// Commutativity of `Z(u)` over `F_q` and `F_q[ε]` for the regular unipotent
/// `u`, compared with `p ∤ |π₁|`.
pub fn commutativity_equivalence_check(
    flavor: Flavor,
    size: usize,
    field: &Ring,
    budget: u128,
) -> Result<CommutativityVerdict, SpringerError> {
    let pi1 = match flavor {
        Flavor::SL => 1,
        Flavor::PGL => size,
        Flavor::GL => {
            return Err(SpringerError::Ring(crate::matrings::RingError::Unsupported(
                "GL has no semisimple derived group of this form".into(),
            )))
        }
    };
    let p = field.characteristic() as usize;
    let divides = pi1 % p == 0;
    let dual = Ring::dual_numbers(field)?;
    let zf = centralizer_points(field, &regular_unipotent(field, flavor, size), budget)?;
    let zd = centralizer_points(&dual, &regular_unipotent(&dual, flavor, size), budget)?;
    let pf = find_noncommuting_pair(field, &zf);
    let pd = find_noncommuting_pair(&dual, &zd);
    let commutative = pf.is_none() && pd.is_none();
    let witness = pd
        .as_ref()
        .map(|(a, b)| [format_matrix(&dual, &a.matrix), format_matrix(&dual, &b.matrix)]);
    Ok(CommutativityVerdict {
        group: format!("{flavor:?}{size}"),
        field: field.spec(),
        pi1_order: pi1,
        p_divides_pi1: divides,
        field_points: zf.len(),
        field_commutative: pf.is_none(),
        dual_points: zd.len(),
        dual_commutative: pd.is_none(),
        witness,
        passed: commutative != divides,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PsiDemo {
    pub size: usize,
    pub field: String,
    pub unipotents: usize,
    pub commutes: bool,
    pub witness: Option<String>,
}

/// Whether `u ↦ u − 1` intertwines `ψ` and `ψ'` on every unipotent of
/// `SL_size(F)`.
pub fn psi_log_demo(field: &Ring, size: usize) -> Result<PsiDemo, SpringerError> {
    let mut a = vec![0; size - 1];
    a[0] = field.one();
    let c = SpringerCoefficients::new(field, a)?;
    let q = field.size() as u64;
    let total = q.pow((size * size) as u32);
    let mut entries = vec![0u32; size * size];
    let mut count = 0;
    let mut witness = None;
    for idx in 0..total {
        let mut rest = idx;
        for e in entries.iter_mut() {
            *e = (rest % q) as u32;
            rest /= q;
        }
        let g = unflatten(&entries, size);
        if determinant(field, &g) != field.one() || !is_unipotent_matrix(field, &g) {
            continue;
        }
        count += 1;
        if witness.is_none() && !twisted_agrees(&c, &RingAuto::Identity, &g) {
            witness = Some(format_matrix(field, &g));
        }
    }
    Ok(PsiDemo {
        size,
        field: field.spec(),
        unipotents: count,
        commutes: witness.is_none(),
        witness,
    })
}

#[cfg(test)]
mod tests {
    use super::super::{quadratic_extension, solve_quasisplit, QuasiSplitOutcome};
    use super::*;
    use crate::matrings::centralizer::DEFAULT_BUDGET;
    use crate::matrings::make_ring;

    fn solved(p: u32, k: u32, n: usize) -> SpringerCoefficients {
        let (base, ext, sigma) = quadratic_extension(p, k).unwrap();
        match solve_quasisplit(n, &base.spec(), &ext, &sigma, 1).unwrap() {
            QuasiSplitOutcome::Solved(c) => c,
            QuasiSplitOutcome::Obstructed(o) => panic!("{o:?}"),
        }
    }

    #[test]
    fn log_map_is_equivariant() {
        let f3 = make_ring("F(3)").unwrap();
        let c = SpringerCoefficients::new(&f3, vec![1, 0, 0]).unwrap();
        assert!(verify_equivariance(&c, 50, 7).passed);
    }

    #[test]
    fn quasisplit_twisted_equivariance_and_negative_control() {
        let c = solved(3, 1, 2);
        let v = verify_equivariance(&c, 100, 42);
        assert!(v.twisted_checked && v.passed, "{v:?}");
        let bad = corrupt_coefficients(&c, 2).unwrap();
        let v = verify_equivariance(&bad, 100, 42);
        assert_eq!(v.conjugation_failures, 0);
        assert!(v.twisted_failures > 0);
    }

    #[test]
    fn bijection_small() {
        let f3 = make_ring("F(3)").unwrap();
        let c = SpringerCoefficients::new(&f3, vec![2, 1]).unwrap();
        let v = bijection_check(&c, 50, 1);
        assert!(v.exhaustive && v.passed, "{v:?}");
        assert_eq!(v.expected, 729);
        let c = SpringerCoefficients::new(&f3, vec![1, 2, 1]).unwrap();
        let v = bijection_check(&c, 50, 1);
        assert!(!v.exhaustive && v.passed, "{v:?}");
    }

    #[test]
    fn centralizers_match() {
        let f3 = make_ring("F(3)").unwrap();
        let c = SpringerCoefficients::new(&f3, vec![1, 0]).unwrap();
        let v = verify_centralizer_match(&c, DEFAULT_BUDGET).unwrap();
        assert!(v.passed, "{v:?}");
        assert_eq!(v.lie_dim, 3);
        let f2 = make_ring("F(2)").unwrap();
        let c = SpringerCoefficients::new(&f2, vec![1, 1, 0]).unwrap();
        assert!(verify_centralizer_match(&c, DEFAULT_BUDGET).unwrap().passed);
    }

    #[test]
    fn uniqueness_on_jordan_block() {
        let f3 = make_ring("F(3)").unwrap();
        let v = uniqueness_check(&f3, 3);
        assert!(v.injective && v.recovered);
    }

    #[test]
    fn kawanaka_sl3() {
        let ctx = KawanakaContext::new(vec![1, 0, -1]).unwrap();
        assert_eq!(ctx.positions(2), vec![(0, 2)]);
        for spec in ["F(2)", "F(3)"] {
            let f = make_ring(spec).unwrap();
            for a in [vec![1, 0], vec![1, 1]] {
                let c = SpringerCoefficients::new(&f, a).unwrap();
                let v = kawanaka_check(&c, &ctx).unwrap();
                assert!(v.passed, "{spec} {v:?}");
            }
        }
    }

    #[test]
    fn psi_demo_distinguishes_rank_one() {
        let f3 = make_ring("F(3)").unwrap();
        assert!(psi_log_demo(&f3, 2).unwrap().commutes);
        assert!(!psi_log_demo(&f3, 3).unwrap().commutes);
    }

    #[test]
    fn commutativity_equivalences() {
        let f2 = make_ring("F(2)").unwrap();
        let v = commutativity_equivalence_check(Flavor::SL, 2, &f2, DEFAULT_BUDGET).unwrap();
        assert!(v.passed && v.dual_commutative);
        let f3 = make_ring("F(3)").unwrap();
        let v = commutativity_equivalence_check(Flavor::PGL, 3, &f3, DEFAULT_BUDGET).unwrap();
        assert!(v.passed && v.witness.is_some());
    }
}
