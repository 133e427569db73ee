//! Bad, torsion and singular primes; closed subsystems; root data and the
//! existence criterion for Springer isomorphisms.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};
use serde::Serialize;
use thiserror::Error;

use crate::intlinalg::{
    column_basis, determinant, prime_divisors, primes_of_factors, product, quotient_torsion,
    IntegerMatrix,
};
use crate::rootdata::{from_cartan, highest_root_coeffs, RootSystem};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PrimeError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("cannot parse characteristic {0:?}")]
    BadCharacteristic(String),
    #[error("weight {0:?} has the wrong length")]
    BadWeight(Vec<i64>),
    #[error("unknown isogeny {0:?} (expected sc, adj or a weight list)")]
    BadIsogeny(String),
}

/// Residue characteristic: zero or a prime.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Characteristic {
    Zero,
    Prime(u64),
}

impl Characteristic {
    pub fn prime(p: u64) -> Result<Self, PrimeError> {
        if is_prime(p) {
            Ok(Characteristic::Prime(p))
        } else {
            Err(PrimeError::NotPrime(p))
        }
    }
}

impl FromStr for Characteristic {
    type Err = PrimeError;
    fn from_str(s: &str) -> Result<Self, PrimeError> {
        let v: u64 = s
            .trim()
            .parse()
            .map_err(|_| PrimeError::BadCharacteristic(s.to_string()))?;
        if v == 0 {
            Ok(Characteristic::Zero)
        } else {
            Characteristic::prime(v)
        }
    }
}

impl fmt::Display for Characteristic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Characteristic::Zero => write!(f, "0"),
            Characteristic::Prime(p) => write!(f, "{p}"),
        }
    }
}

pub fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

/// Fixed-width root bitset (up to 256 roots).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
struct Bits([u64; 4]);

impl Bits {
    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }
    fn get(&self, i: usize) -> bool {
        self.0[i / 64] >> (i % 64) & 1 == 1
    }
    fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (0..256).filter(move |&i| self.get(i))
    }
}

/// Index tables over `rs.all_roots()`.
struct Tables {
    roots: Vec<Vec<i64>>,
    npos: usize,
    /// `sum[a][b]`: index of `a + b` if it is a root.
    sum: Vec<Vec<Option<usize>>>,
    /// `refl[b][g]`: index of `s_b(g)`.
    refl: Vec<Vec<usize>>,
}

impl Tables {
    fn new(rs: &RootSystem) -> Self {
        let roots = rs.all_roots();
        assert!(roots.len() <= 256);
        let npos = rs.num_positive();
        let sum = roots
            .iter()
            .map(|a| {
                roots
                    .iter()
                    .map(|b| {
                        let s: Vec<i64> = a.iter().zip(b).map(|(x, y)| x + y).collect();
                        rs.root_index(&s)
                    })
                    .collect()
            })
            .collect();
        let refl = roots
            .iter()
            .map(|b| {
                let bb = rs.inner(b, b);
                roots
                    .iter()
                    .map(|g| {
                        let c = 2 * rs.inner(b, g) / bb;
                        let r: Vec<i64> = g.iter().zip(b).map(|(x, y)| x - c * y).collect();
                        rs.root_index(&r).expect("reflection of a root is a root")
                    })
                    .collect()
            })
            .collect();
        Tables {
            roots,
            npos,
            sum,
            refl,
        }
    }

    fn neg(&self, i: usize) -> usize {
        if i < self.npos {
            i + self.npos
        } else {
            i - self.npos
        }
    }

    /// Smallest symmetric, addition-closed set containing `s`.
    fn closure(&self, mut s: Bits) -> Bits {
        for i in s.iter().collect::<Vec<_>>() {
            s.set(self.neg(i));
        }
        loop {
            let members: Vec<usize> = s.iter().collect();
            let mut grew = false;
            for &a in &members {
                for &b in &members {
                    if let Some(c) = self.sum[a][b] {
                        if !s.get(c) {
                            s.set(c);
                            grew = true;
                        }
                    }
                }
            }
            if !grew {
                return s;
            }
        }
    }

    /// The subsystem generated by reflections in `base`.
    fn reflection_closure(&self, base: &[usize]) -> Bits {
        let mut s = Bits::default();
        let mut queue = VecDeque::new();
        for &b in base {
            for r in [b, self.neg(b)] {
                if !s.get(r) {
                    s.set(r);
                    queue.push_back(r);
                }
            }
        }
        while let Some(g) = queue.pop_front() {
            for &b in base {
                let r = self.refl[b][g];
                if !s.get(r) {
                    s.set(r);
                    queue.push_back(r);
                }
            }
        }
        s
    }

    /// Indecomposable positive members: a base of the subsystem.
    fn base_of(&self, s: &Bits) -> Vec<usize> {
        let pos: Vec<usize> = s.iter().filter(|&i| i < self.npos).collect();
        let mut decomposable = HashSet::new();
        for &a in &pos {
            for &b in &pos {
                if let Some(c) = self.sum[a][b] {
                    decomposable.insert(c);
                }
            }
        }
        pos.into_iter()
            .filter(|i| !decomposable.contains(i))
            .collect()
    }
}

/// A closed symmetric subsystem of `Φ`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClosedSubsystem {
    /// Indices into `RootSystem::all_roots()`, sorted.
    pub roots: Vec<usize>,
    /// Indices of a base of the subsystem.
    pub base: Vec<usize>,
    /// How the subsystem was reached.
    pub provenance: Vec<String>,
}

impl ClosedSubsystem {
    pub fn num_positive(&self) -> usize {
        self.roots.len() / 2
    }
}

fn to_subsystem(t: &Tables, s: Bits, provenance: Vec<String>) -> ClosedSubsystem {
    ClosedSubsystem {
        roots: s.iter().collect(),
        base: t.base_of(&s),
        provenance,
    }
}

/// Every closed symmetric subsystem, by breadth-first growth from the empty
/// set (each step adds one root pair and closes).  Exponential; intended for
/// rank at most 4.
pub fn closed_subsystems_exhaustive(rs: &RootSystem) -> Vec<ClosedSubsystem> {
    let t = Tables::new(rs);
    let mut seen: HashMap<Bits, Vec<String>> = HashMap::new();
    let mut queue = VecDeque::new();
    seen.insert(Bits::default(), Vec::new());
    queue.push_back(Bits::default());
    while let Some(s) = queue.pop_front() {
        for b in 0..t.npos {
            if s.get(b) {
                continue;
            }
            let mut s2 = s;
            s2.set(b);
            let c = t.closure(s2);
            if !seen.contains_key(&c) {
                let mut prov = seen[&s].clone();
                prov.push(format!("add {:?}", t.roots[b]));
                seen.insert(c, prov);
                queue.push_back(c);
            }
        }
    }
    let mut out: Vec<(Bits, Vec<String>)> = seen.into_iter().collect();
    out.sort();
    out.into_iter()
        .map(|(s, p)| to_subsystem(&t, s, p))
        .collect()
}

fn components_of_base(rs: &RootSystem, t: &Tables, base: &[usize]) -> Vec<Vec<usize>> {
    let n = base.len();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for s in 0..n {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut comp = vec![s];
        let mut k = 0;
        while k < comp.len() {
            for j in 0..n {
                if !seen[j] && rs.inner(&t.roots[base[comp[k]]], &t.roots[base[j]]) != 0 {
                    seen[j] = true;
                    comp.push(j);
                }
            }
            k += 1;
        }
        out.push(comp.into_iter().map(|i| base[i]).collect());
    }
    out
}

/// Highest root of the irreducible subsystem with the given base: the unique
/// long root that is dominant for the base.
fn component_highest_root(rs: &RootSystem, t: &Tables, comp: &[usize]) -> usize {
    let s = t.reflection_closure(comp);
    s.iter()
        .filter(|&g| comp.iter().all(|&b| rs.inner(&t.roots[g], &t.roots[b]) >= 0))
        .max_by_key(|&g| (rs.inner(&t.roots[g], &t.roots[g]), g))
        .expect("dominant root exists")
}

/// Subsystems reached by iterated extended-diagram and ordinary node
/// deletions, starting from `Φ`.
pub fn closed_subsystems_bds(rs: &RootSystem) -> Vec<ClosedSubsystem> {
    let t = Tables::new(rs);
    let full_base: Vec<usize> = (0..rs.rank)
        .map(|i| {
            let mut e = vec![0; rs.rank];
            e[i] = 1;
            rs.root_index(&e).unwrap()
        })
        .collect();
    let mut seen: HashMap<Bits, (Vec<usize>, Vec<String>)> = HashMap::new();
    let mut queue = VecDeque::new();
    let start = t.reflection_closure(&full_base);
    seen.insert(start, (full_base.clone(), Vec::new()));
    queue.push_back(start);
    while let Some(s) = queue.pop_front() {
        let (base, prov) = seen[&s].clone();
        let comps = components_of_base(rs, &t, &base);
        let mut children: Vec<(Vec<usize>, String)> = Vec::new();
        for &b in &base {
            let nb: Vec<usize> = base.iter().copied().filter(|&x| x != b).collect();
            children.push((nb, format!("delete {:?}", t.roots[b])));
        }
        for (ci, comp) in comps.iter().enumerate() {
            let theta = component_highest_root(rs, &t, comp);
            let low = t.neg(theta);
            for &b in comp {
                let mut nb: Vec<usize> = comps
                    .iter()
                    .enumerate()
                    .filter(|&(cj, _)| cj != ci)
                    .flat_map(|(_, c)| c.iter().copied())
                    .collect();
                nb.extend(comp.iter().copied().filter(|&x| x != b));
                nb.push(low);
                children.push((
                    nb,
                    format!("extend {:?}, delete {:?}", t.roots[theta], t.roots[b]),
                ));
            }
        }
        for (nb, step) in children {
            let c = t.reflection_closure(&nb);
            if let std::collections::hash_map::Entry::Vacant(e) = seen.entry(c) {
                let mut p = prov.clone();
                p.push(step);
                e.insert((nb, p));
                queue.push_back(c);
            }
        }
    }
    let mut out: Vec<(Bits, Vec<String>)> =
        seen.into_iter().map(|(s, (_, p))| (s, p)).collect();
    out.sort();
    out.into_iter()
        .map(|(s, p)| to_subsystem(&t, s, p))
        .collect()
}

/// Closed subsystems: exhaustive up to rank 4, iterated deletions beyond.
pub fn closed_subsystems(rs: &RootSystem) -> Vec<ClosedSubsystem> {
    if rs.rank <= 4 {
        closed_subsystems_exhaustive(rs)
    } else {
        closed_subsystems_bds(rs)
    }
}

fn root_lattice_torsion(rs: &RootSystem, gens: &[Vec<i64>]) -> Vec<BigInt> {
    let amb = IntegerMatrix::identity(rs.rank);
    if gens.is_empty() {
        return Vec::new();
    }
    quotient_torsion(&amb, &IntegerMatrix::from_columns(gens, rs.rank))
        .expect("roots are integral in the simple-root basis")
}

/// Torsion factors of `ZΦ/ZΣ`.
pub fn subsystem_root_torsion(rs: &RootSystem, sub: &ClosedSubsystem) -> Vec<BigInt> {
    let all = rs.all_roots();
    let gens: Vec<Vec<i64>> = sub.base.iter().map(|&i| all[i].clone()).collect();
    root_lattice_torsion(rs, &gens)
}

/// Torsion factors of `ZΦ^∨/ZΣ^∨`.
pub fn subsystem_coroot_torsion(rs: &RootSystem, sub: &ClosedSubsystem) -> Vec<BigInt> {
    let all = rs.all_roots();
    let gens: Vec<Vec<i64>> = sub
        .base
        .iter()
        .map(|&i| rs.coroot_coeffs(&all[i]))
        .collect();
    root_lattice_torsion(rs, &gens)
}

pub fn bad_primes_from(rs: &RootSystem, subs: &[ClosedSubsystem]) -> BTreeSet<u64> {
    subs.iter()
        .flat_map(|s| primes_of_factors(&subsystem_root_torsion(rs, s)))
        .collect()
}

pub fn torsion_primes_from(rs: &RootSystem, subs: &[ClosedSubsystem]) -> BTreeSet<u64> {
    subs.iter()
        .flat_map(|s| primes_of_factors(&subsystem_coroot_torsion(rs, s)))
        .collect()
}

pub fn bad_primes(rs: &RootSystem) -> BTreeSet<u64> {
    bad_primes_from(rs, &closed_subsystems(rs))
}

pub fn torsion_primes(rs: &RootSystem) -> BTreeSet<u64> {
    torsion_primes_from(rs, &closed_subsystems(rs))
}

/// Primes dividing some highest-root coefficient.
pub fn bad_primes_by_coefficients(rs: &RootSystem) -> BTreeSet<u64> {
    highest_root_coeffs(rs)
        .iter()
        .flat_map(|&n| prime_divisors(&BigInt::from(n)))
        .collect()
}

/// Coefficients of the highest coroot `θ^∨` in the simple coroots.
pub fn dual_highest_root_coeffs(rs: &RootSystem) -> Vec<i64> {
    rs.coroot_coeffs(rs.highest_root())
}

/// Primes dividing some coefficient of `θ^∨`.
pub fn torsion_primes_by_coefficients(rs: &RootSystem) -> BTreeSet<u64> {
    dual_highest_root_coeffs(rs)
        .iter()
        .flat_map(|&n| prime_divisors(&BigInt::from(n)))
        .collect()
}

pub fn singular_primes(rs: &RootSystem) -> BTreeSet<u64> {
    prime_divisors(&BigInt::from(determinant(&rs.cartan)))
}

/// `X` with `ZΦ ⊆ X ⊆ P`, plus the rank of a central torus.
#[derive(Debug, Clone, Serialize)]
pub enum Isogeny {
    SimplyConnected,
    Adjoint,
    /// Extra generators of `X`, in fundamental-weight coordinates.
    Weights(Vec<Vec<i64>>),
}

impl FromStr for Isogeny {
    type Err = PrimeError;
    /// `sc`, `adj`, or weights such as `1,0,0;0,0,1`.
    fn from_str(s: &str) -> Result<Self, PrimeError> {
        match s.trim() {
            "sc" | "simply-connected" => Ok(Isogeny::SimplyConnected),
            "adj" | "adjoint" => Ok(Isogeny::Adjoint),
            other => other
                .split(';')
                .map(|w| {
                    w.split(',')
                        .map(|x| x.trim().parse::<i64>())
                        .collect::<Result<Vec<_>, _>>()
                })
                .collect::<Result<Vec<_>, _>>()
                .map(Isogeny::Weights)
                .map_err(|_| PrimeError::BadIsogeny(other.to_string())),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct RootDatum {
    pub root_system: RootSystem,
    pub isogeny: Isogeny,
    pub central_torus_rank: usize,
}

impl RootDatum {
    pub fn new(rs: RootSystem, isogeny: Isogeny) -> Result<Self, PrimeError> {
        if let Isogeny::Weights(ws) = &isogeny {
            if let Some(w) = ws.iter().find(|w| w.len() != rs.rank) {
                return Err(PrimeError::BadWeight(w.clone()));
            }
        }
        Ok(RootDatum {
            root_system: rs,
            isogeny,
            central_torus_rank: 0,
        })
    }

    pub fn simply_connected(rs: RootSystem) -> Self {
        RootDatum::new(rs, Isogeny::SimplyConnected).unwrap()
    }

    pub fn adjoint(rs: RootSystem) -> Self {
        RootDatum::new(rs, Isogeny::Adjoint).unwrap()
    }

    pub fn with_central_torus(mut self, rank: usize) -> Self {
        self.central_torus_rank = rank;
        self
    }

    /// Generators of `X` in fundamental-weight coordinates.
    fn lattice_generators(&self) -> Vec<Vec<i64>> {
        let rs = &self.root_system;
        let r = rs.rank;
        let mut gens: Vec<Vec<i64>> = (0..r)
            .map(|i| (0..r).map(|j| rs.cartan[j][i]).collect())
            .collect();
        match &self.isogeny {
            Isogeny::SimplyConnected => {
                gens.extend((0..r).map(|i| {
                    let mut e = vec![0; r];
                    e[i] = 1;
                    e
                }));
            }
            Isogeny::Adjoint => {}
            Isogeny::Weights(ws) => gens.extend(ws.iter().cloned()),
        }
        gens
    }
}

/// Invariant factors of `π_1 = (X_*/ZΦ^∨)_tors`, computed as those of the
/// Pontryagin-dual group `P/X`.
pub fn fundamental_group_invariants(rd: &RootDatum) -> Vec<BigInt> {
    let r = rd.root_system.rank;
    quotient_torsion(
        &IntegerMatrix::identity(r),
        &IntegerMatrix::from_columns(&rd.lattice_generators(), r),
    )
    .expect("weights are integral")
}

/// Invariant factors of `X/ZΦ`, the character group of the center.
pub fn center_invariants(rd: &RootDatum) -> Vec<BigInt> {
    let rs = &rd.root_system;
    let r = rs.rank;
    let x = column_basis(&IntegerMatrix::from_columns(&rd.lattice_generators(), r));
    let roots: Vec<Vec<i64>> = (0..r)
        .map(|i| (0..r).map(|j| rs.cartan[j][i]).collect())
        .collect();
    quotient_torsion(&x, &IntegerMatrix::from_columns(&roots, r))
        .expect("roots lie in X")
}

pub fn is_good(rs: &RootSystem, p: Characteristic) -> bool {
    match p {
        Characteristic::Zero => true,
        Characteristic::Prime(p) => !bad_primes_by_coefficients(rs).contains(&p),
    }
}

pub fn is_very_good(rs: &RootSystem, p: Characteristic) -> bool {
    match p {
        Characteristic::Zero => true,
        Characteristic::Prime(q) => is_good(rs, p) && !singular_primes(rs).contains(&q),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct PrimeReport {
    pub root_system: String,
    pub bad: BTreeSet<u64>,
    pub torsion: BTreeSet<u64>,
    pub singular: BTreeSet<u64>,
    /// Primes that are good but not very good (good and singular).
    pub good_not_very_good: BTreeSet<u64>,
    /// Primes that fail to be very good; every other prime is very good.
    pub not_very_good: BTreeSet<u64>,
    pub highest_root: Vec<i64>,
    pub highest_coroot: Vec<i64>,
    pub closed_subsystems_examined: usize,
    /// Of the adjoint datum.
    pub fundamental_group_invariants: Vec<BigInt>,
    /// Character group of the center of the simply connected datum.
    pub center_invariants: Vec<BigInt>,
}

pub fn classification_table(rs: &RootSystem) -> PrimeReport {
    let subs = closed_subsystems(rs);
    let bad = bad_primes_from(rs, &subs);
    let torsion = torsion_primes_from(rs, &subs);
    let singular = singular_primes(rs);
    let not_very_good: BTreeSet<u64> = bad.union(&singular).copied().collect();
    let good_not_very_good = singular.difference(&bad).copied().collect();
    PrimeReport {
        root_system: rs.name(),
        bad,
        torsion,
        singular,
        good_not_very_good,
        not_very_good,
        highest_root: highest_root_coeffs(rs),
        highest_coroot: dual_highest_root_coeffs(rs),
        closed_subsystems_examined: subs.len(),
        fundamental_group_invariants: fundamental_group_invariants(&RootDatum::adjoint(
            rs.clone(),
        )),
        center_invariants: center_invariants(&RootDatum::simply_connected(rs.clone())),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SpringerDecision {
    pub exists: bool,
    pub characteristic: Characteristic,
    pub pi1_order: BigInt,
    pub reasons: Vec<String>,
}

/// Existence of a Springer isomorphism over a field of characteristic `p`:
/// `p ∤ |π_1|` and `p` good.
pub fn springer_exists(rd: &RootDatum, p: Characteristic) -> SpringerDecision {
    let pi1 = product(&fundamental_group_invariants(rd));
    let mut reasons = Vec::new();
    if let Characteristic::Prime(q) = p {
        if (&pi1 % BigInt::from(q)).to_u64() == Some(0) {
            reasons.push(format!("{q} divides |pi_1| = {pi1}"));
        }
        if !is_good(&rd.root_system, p) {
            reasons.push(format!(
                "{q} is a bad prime for {}",
                rd.root_system.name()
            ));
        }
    }
    SpringerDecision {
        exists: reasons.is_empty(),
        characteristic: p,
        pi1_order: pi1,
        reasons,
    }
}

/// Data attached to one vertex of the fundamental alcove.
#[derive(Debug, Clone, Serialize)]
pub struct AlcoveVertex {
    /// 0-based simple-root index.
    pub index: usize,
    pub coefficient: i64,
    pub dual_coefficient: i64,
    /// Roots integral at the vertex.
    pub subsystem: ClosedSubsystem,
    pub subsystem_type: String,
    pub root_torsion: Vec<BigInt>,
    pub coroot_torsion: Vec<BigInt>,
}

impl AlcoveVertex {
    pub fn root_torsion_order(&self) -> BigInt {
        product(&self.root_torsion)
    }
    pub fn coroot_torsion_order(&self) -> BigInt {
        product(&self.coroot_torsion)
    }
    pub fn root_torsion_cyclic(&self) -> bool {
        self.root_torsion.len() <= 1
    }
}

/// Type label such as `A2×A1` for a subsystem given by a base.
pub fn subsystem_type(rs: &RootSystem, base: &[Vec<i64>]) -> String {
    if base.is_empty() {
        return "trivial".to_string();
    }
    let n = base.len();
    let cartan: Vec<Vec<i64>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| 2 * rs.inner(&base[i], &base[j]) / rs.inner(&base[i], &base[i]))
                .collect()
        })
        .collect();
    let mut labels: Vec<String> = crate::rootdata::components(&cartan)
        .iter()
        .map(|c| {
            let sub: Vec<Vec<i64>> = c
                .iter()
                .map(|&i| c.iter().map(|&j| cartan[i][j]).collect())
                .collect();
            from_cartan(&sub)
                .ok()
                .and_then(|r| r.cartan_type)
                .map_or_else(|| "?".to_string(), |t| t.to_string())
        })
        .collect();
    labels.sort_by(|a, b| b.cmp(a));
    labels.join("×")
}

pub fn alcove_vertex_subsystems(rs: &RootSystem) -> Vec<AlcoveVertex> {
    let t = Tables::new(rs);
    let n = highest_root_coeffs(rs);
    let nd = dual_highest_root_coeffs(rs);
    (0..rs.rank)
        .map(|i| {
            let mut s = Bits::default();
            for (k, r) in t.roots.iter().enumerate() {
                if r[i] % n[i] == 0 {
                    s.set(k);
                }
            }
            let sub = to_subsystem(&t, s, vec![format!("roots integral at vertex {}", i + 1)]);
            let base: Vec<Vec<i64>> = sub.base.iter().map(|&k| t.roots[k].clone()).collect();
            AlcoveVertex {
                index: i,
                coefficient: n[i],
                dual_coefficient: nd[i],
                subsystem_type: subsystem_type(rs, &base),
                root_torsion: subsystem_root_torsion(rs, &sub),
                coroot_torsion: subsystem_coroot_torsion(rs, &sub),
                subsystem: sub,
            }
        })
        .collect()
}

/// Whether a set of root indices is symmetric and closed under addition.
pub fn is_closed_symmetric(rs: &RootSystem, roots: &[usize]) -> bool {
    let all = rs.all_roots();
    let set: HashSet<usize> = roots.iter().copied().collect();
    let np = rs.num_positive();
    roots.iter().all(|&i| {
        let ni = if i < np { i + np } else { i - np };
        set.contains(&ni)
    }) && roots.iter().all(|&a| {
        roots.iter().all(|&b| {
            let s: Vec<i64> = all[a].iter().zip(&all[b]).map(|(x, y)| x + y).collect();
            rs.root_index(&s).is_none_or(|c| set.contains(&c))
        })
    })
}

/// Convenience: `|π_1|` for a datum.
pub fn pi1_order(rd: &RootDatum) -> BigInt {
    let f = fundamental_group_invariants(rd);
    if f.is_empty() {
        BigInt::one()
    } else {
        product(&f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::parse_root_system;

    fn set(v: &[u64]) -> BTreeSet<u64> {
        v.iter().copied().collect()
    }

    #[test]
    fn g2_subsystems() {
        let g2 = parse_root_system("G2").unwrap();
        let subs = closed_subsystems_exhaustive(&g2);
        let types: BTreeSet<String> = subs
            .iter()
            .map(|s| {
                let b: Vec<Vec<i64>> = s.base.iter().map(|&i| g2.all_roots()[i].clone()).collect();
                subsystem_type(&g2, &b)
            })
            .collect();
        assert!(types.contains("A2"));
        assert!(types.contains("A1×A1"));
        assert_eq!(bad_primes_from(&g2, &subs), set(&[2, 3]));
        assert_eq!(torsion_primes_from(&g2, &subs), set(&[2]));
    }

    #[test]
    fn small_tables() {
        let a3 = parse_root_system("A3").unwrap();
        let r = classification_table(&a3);
        assert!(r.bad.is_empty() && r.torsion.is_empty());
        assert_eq!(r.singular, set(&[2]));
        let a1 = parse_root_system("A1").unwrap();
        assert_eq!(closed_subsystems(&a1).len(), 2);
    }

    #[test]
    fn fundamental_groups() {
        let a4 = parse_root_system("A4").unwrap();
        assert!(fundamental_group_invariants(&RootDatum::simply_connected(a4.clone())).is_empty());
        assert_eq!(
            fundamental_group_invariants(&RootDatum::adjoint(a4.clone())),
            vec![BigInt::from(5)]
        );
        assert_eq!(
            center_invariants(&RootDatum::simply_connected(a4)),
            vec![BigInt::from(5)]
        );
        let d4 = parse_root_system("D4").unwrap();
        assert_eq!(
            fundamental_group_invariants(&RootDatum::adjoint(d4)),
            vec![BigInt::from(2), BigInt::from(2)]
        );
    }

    #[test]
    fn existence() {
        let a1 = parse_root_system("A1").unwrap();
        let pgl2 = RootDatum::adjoint(a1.clone());
        let d = springer_exists(&pgl2, Characteristic::Prime(2));
        assert!(!d.exists);
        assert_eq!(d.reasons.len(), 1);
        assert!(springer_exists(&RootDatum::simply_connected(a1), Characteristic::Prime(2)).exists);
        let g2 = RootDatum::simply_connected(parse_root_system("G2").unwrap());
        assert!(springer_exists(&g2, Characteristic::Prime(5)).exists);
        assert!(!springer_exists(&g2, Characteristic::Prime(3)).exists);
        assert!(springer_exists(&g2, Characteristic::Zero).exists);
    }

    #[test]
    fn characteristic_parsing() {
        assert_eq!("0".parse::<Characteristic>().unwrap(), Characteristic::Zero);
        assert!("4".parse::<Characteristic>().is_err());
    }
}
