//! Irreducible root systems, Weyl orbits and diagram folding.
//!
//! Roots are integer coefficient vectors in the basis of simple roots, with
//! Bourbaki numbering.  All pairings come from an integral symmetric Gram
//! matrix `g` with Cartan entries `a_ij = <α_i^∨, α_j> = 2 g_ij / g_ii`.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::intlinalg::determinant;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RootError {
    #[error("no irreducible root system of type {family}{rank}")]
    InvalidType { family: char, rank: usize },
    #[error("cannot parse root system name {0:?}")]
    BadName(String),
    #[error("permutation {0:?} does not preserve the Cartan matrix")]
    NotAnAutomorphism(Vec<usize>),
    #[error("unknown automorphism {name:?} for {ty}")]
    UnknownAutomorphism { name: String, ty: String },
    #[error("matrix is not a Cartan matrix of finite type")]
    NotCartan,
    #[error("index {0} out of range")]
    BadIndex(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Family {
    pub fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
            Family::E => 'E',
            Family::F => 'F',
            Family::G => 'G',
        }
    }

    pub fn from_letter(c: char) -> Option<Family> {
        Some(match c.to_ascii_uppercase() {
            'A' => Family::A,
            'B' => Family::B,
            'C' => Family::C,
            'D' => Family::D,
            'E' => Family::E,
            'F' => Family::F,
            'G' => Family::G,
            _ => return None,
        })
    }
}

/// A valid irreducible type such as `D4`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct CartanType {
    pub family: Family,
    pub rank: usize,
}

impl CartanType {
    pub fn new(family: Family, rank: usize) -> Result<Self, RootError> {
        let ok = match family {
            Family::A => rank >= 1,
            Family::B => rank >= 2,
            Family::C => rank >= 3,
            Family::D => rank >= 4,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        };
        if ok {
            Ok(CartanType { family, rank })
        } else {
            Err(RootError::InvalidType {
                family: family.letter(),
                rank,
            })
        }
    }

    /// Number of positive roots by the classical formulas.
    pub fn positive_root_count(self) -> usize {
        let n = self.rank;
        match self.family {
            Family::A => n * (n + 1) / 2,
            Family::B | Family::C => n * n,
            Family::D => n * (n - 1),
            Family::E => [36, 63, 120][n - 6],
            Family::F => 24,
            Family::G => 6,
        }
    }

    /// All valid types of the given rank, `C2` excluded since it equals `B2`.
    pub fn all_of_rank(rank: usize) -> Vec<CartanType> {
        [
            Family::A,
            Family::B,
            Family::C,
            Family::D,
            Family::E,
            Family::F,
            Family::G,
        ]
        .into_iter()
        .filter_map(|f| CartanType::new(f, rank).ok())
        .collect()
    }

    /// Integral symmetric Gram matrix of the simple roots.
    pub fn gram(self) -> Vec<Vec<i64>> {
        let n = self.rank;
        let mut g = vec![vec![0i64; n]; n];
        let edge = |g: &mut Vec<Vec<i64>>, i: usize, j: usize, v: i64| {
            g[i][j] = v;
            g[j][i] = v;
        };
        match self.family {
            Family::A => {
                for i in 0..n {
                    g[i][i] = 2;
                }
                for i in 0..n.saturating_sub(1) {
                    edge(&mut g, i, i + 1, -1);
                }
            }
            Family::B => {
                for i in 0..n {
                    g[i][i] = if i + 1 == n { 2 } else { 4 };
                }
                for i in 0..n - 1 {
                    edge(&mut g, i, i + 1, -2);
                }
            }
            Family::C => {
                for i in 0..n {
                    g[i][i] = if i + 1 == n { 4 } else { 2 };
                }
                for i in 0..n - 1 {
                    edge(&mut g, i, i + 1, if i + 2 == n { -2 } else { -1 });
                }
            }
            Family::D => {
                for i in 0..n {
                    g[i][i] = 2;
                }
                for i in 0..n - 2 {
                    edge(&mut g, i, i + 1, -1);
                }
                edge(&mut g, n - 3, n - 1, -1);
            }
            Family::E => {
                for i in 0..n {
                    g[i][i] = 2;
                }
                edge(&mut g, 0, 2, -1);
                edge(&mut g, 1, 3, -1);
                for i in 2..n - 1 {
                    edge(&mut g, i, i + 1, -1);
                }
            }
            Family::F => {
                g[0][0] = 4;
                g[1][1] = 4;
                g[2][2] = 2;
                g[3][3] = 2;
                edge(&mut g, 0, 1, -2);
                edge(&mut g, 1, 2, -2);
                edge(&mut g, 2, 3, -1);
            }
            Family::G => {
                g[0][0] = 2;
                g[1][1] = 6;
                edge(&mut g, 0, 1, -3);
            }
        }
        g
    }

    pub fn cartan(self) -> Vec<Vec<i64>> {
        cartan_from_gram(&self.gram())
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family.letter(), self.rank)
    }
}

impl FromStr for CartanType {
    type Err = RootError;

    fn from_str(s: &str) -> Result<Self, RootError> {
        let s = s.trim();
        let mut chars = s.chars();
        let fam = chars
            .next()
            .and_then(Family::from_letter)
            .ok_or_else(|| RootError::BadName(s.to_string()))?;
        let rest = chars.as_str().trim_start_matches('_');
        let rank: usize = rest.parse().map_err(|_| RootError::BadName(s.to_string()))?;
        CartanType::new(fam, rank)
    }
}

fn cartan_from_gram(g: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = g.len();
    (0..n)
        .map(|i| (0..n).map(|j| 2 * g[i][j] / g[i][i]).collect())
        .collect()
}

/// A root system (possibly reducible when built from a sub-diagram).
#[derive(Debug, Clone, Serialize)]
pub struct RootSystem {
    /// `None` for systems built directly from a Cartan matrix.
    pub cartan_type: Option<CartanType>,
    pub rank: usize,
    pub cartan: Vec<Vec<i64>>,
    #[serde(skip)]
    pub gram: Vec<Vec<i64>>,
    /// Sorted by height, then lexicographically.
    pub positive_roots: Vec<Vec<i64>>,
    #[serde(skip)]
    index: HashMap<Vec<i64>, usize>,
}

impl RootSystem {
    pub fn name(&self) -> String {
        match self.cartan_type {
            Some(t) => t.to_string(),
            None => format!("rank-{} system", self.rank),
        }
    }

    pub fn num_positive(&self) -> usize {
        self.positive_roots.len()
    }

    /// All roots: positives at `0..N`, their negatives at `N..2N`.
    pub fn all_roots(&self) -> Vec<Vec<i64>> {
        let mut out = self.positive_roots.clone();
        out.extend(self.positive_roots.iter().map(|r| neg(r)));
        out
    }

    /// Index of a root in [`Self::all_roots`].
    pub fn root_index(&self, beta: &[i64]) -> Option<usize> {
        self.index.get(beta).copied()
    }

    pub fn is_root(&self, beta: &[i64]) -> bool {
        self.index.contains_key(beta)
    }

    /// `<α_i^∨, β>` for a root (or any element of the root lattice) `β`.
    pub fn coroot_pairing(&self, i: usize, beta: &[i64]) -> i64 {
        (0..self.rank).map(|j| self.cartan[i][j] * beta[j]).sum()
    }

    /// `<α_i^∨, λ>` for a weight in fundamental-weight coordinates.
    pub fn pairing(&self, i: usize, weight: &[i64]) -> i64 {
        weight[i]
    }

    pub fn inner(&self, a: &[i64], b: &[i64]) -> i64 {
        let mut s = 0;
        for i in 0..self.rank {
            if a[i] == 0 {
                continue;
            }
            for j in 0..self.rank {
                s += a[i] * self.gram[i][j] * b[j];
            }
        }
        s
    }

    /// Coefficients of `β^∨` in the basis of simple coroots.
    pub fn coroot_coeffs(&self, beta: &[i64]) -> Vec<i64> {
        let len = self.inner(beta, beta);
        (0..self.rank)
            .map(|i| {
                let v = beta[i] * self.gram[i][i];
                debug_assert_eq!(v % len, 0);
                v / len
            })
            .collect()
    }

    pub fn reflect_root(&self, i: usize, beta: &[i64]) -> Vec<i64> {
        let c = self.coroot_pairing(i, beta);
        let mut out = beta.to_vec();
        out[i] -= c;
        out
    }

    pub fn reflect_weight(&self, i: usize, weight: &[i64]) -> Vec<i64> {
        let li = weight[i];
        (0..self.rank)
            .map(|j| weight[j] - li * self.cartan[j][i])
            .collect()
    }

    /// A root expressed in fundamental-weight coordinates.
    pub fn root_as_weight(&self, beta: &[i64]) -> Vec<i64> {
        (0..self.rank).map(|j| self.coroot_pairing(j, beta)).collect()
    }

    pub fn is_simply_laced(&self) -> bool {
        (0..self.rank).all(|i| (0..self.rank).all(|j| self.cartan[i][j] == self.cartan[j][i]))
    }

    pub fn highest_root(&self) -> &[i64] {
        self.positive_roots.last().expect("nonempty root system")
    }
}

fn neg(v: &[i64]) -> Vec<i64> {
    v.iter().map(|x| -x).collect()
}

fn unit(n: usize, i: usize) -> Vec<i64> {
    let mut v = vec![0; n];
    v[i] = 1;
    v
}

fn build_from(cartan: Vec<Vec<i64>>, gram: Vec<Vec<i64>>, ty: Option<CartanType>) -> RootSystem {
    let n = cartan.len();
    let mut seen: HashSet<Vec<i64>> = HashSet::new();
    let mut queue: VecDeque<Vec<i64>> = VecDeque::new();
    for i in 0..n {
        let e = unit(n, i);
        seen.insert(e.clone());
        queue.push_back(e);
    }
    let mut rs = RootSystem {
        cartan_type: ty,
        rank: n,
        cartan,
        gram,
        positive_roots: Vec::new(),
        index: HashMap::new(),
    };
    while let Some(b) = queue.pop_front() {
        for i in 0..n {
            let r = rs.reflect_root(i, &b);
            if seen.insert(r.clone()) {
                queue.push_back(r);
            }
        }
    }
    let mut pos: Vec<Vec<i64>> = seen
        .into_iter()
        .filter(|r| r.iter().all(|&x| x >= 0))
        .collect();
    pos.sort_by(|a, b| {
        let ha: i64 = a.iter().sum();
        let hb: i64 = b.iter().sum();
        ha.cmp(&hb).then_with(|| a.cmp(b))
    });
    let np = pos.len();
    for (k, r) in pos.iter().enumerate() {
        rs.index.insert(r.clone(), k);
        rs.index.insert(neg(r), k + np);
    }
    rs.positive_roots = pos;
    rs
}

/// Builds the root system of an irreducible type.
pub fn build_root_system(family: Family, rank: usize) -> Result<RootSystem, RootError> {
    let ty = CartanType::new(family, rank)?;
    Ok(root_system_of(ty))
}

pub fn root_system_of(ty: CartanType) -> RootSystem {
    let gram = ty.gram();
    build_from(cartan_from_gram(&gram), gram, Some(ty))
}

/// Parses names such as `"E7"`.
pub fn parse_root_system(name: &str) -> Result<RootSystem, RootError> {
    Ok(root_system_of(name.parse()?))
}

/// Connected components of the Dynkin diagram of a Cartan matrix.
pub fn components(cartan: &[Vec<i64>]) -> Vec<Vec<usize>> {
    let n = cartan.len();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for s in 0..n {
        if seen[s] {
            continue;
        }
        let mut comp = vec![s];
        seen[s] = true;
        let mut k = 0;
        while k < comp.len() {
            let i = comp[k];
            for j in 0..n {
                if !seen[j] && cartan[i][j] != 0 {
                    seen[j] = true;
                    comp.push(j);
                }
            }
            k += 1;
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

/// Root system of an arbitrary finite-type Cartan matrix (reducible allowed).
pub fn from_cartan(cartan: &[Vec<i64>]) -> Result<RootSystem, RootError> {
    let n = cartan.len();
    if cartan.iter().any(|r| r.len() != n) {
        return Err(RootError::NotCartan);
    }
    for i in 0..n {
        if cartan[i][i] != 2 {
            return Err(RootError::NotCartan);
        }
        for j in 0..n {
            if i != j && (cartan[i][j] > 0 || (cartan[i][j] == 0) != (cartan[j][i] == 0)) {
                return Err(RootError::NotCartan);
            }
        }
    }
    // Symmetrize: find d_i > 0 with d_i a_ij = d_j a_ji, as rationals num/den.
    let mut d: Vec<Option<(i64, i64)>> = vec![None; n];
    for comp in components(cartan) {
        d[comp[0]] = Some((1, 1));
        let mut stack = vec![comp[0]];
        while let Some(i) = stack.pop() {
            let (ni, di) = d[i].unwrap();
            for j in 0..n {
                if i == j || cartan[i][j] == 0 {
                    continue;
                }
                // d_j = d_i a_ij / a_ji
                let num = ni * cartan[i][j];
                let den = di * cartan[j][i];
                let g = gcd(num.abs(), den.abs());
                let cand = (num / g * den.signum(), den.abs() / g);
                match d[j] {
                    None => {
                        d[j] = Some(cand);
                        stack.push(j);
                    }
                    Some(prev) if prev != cand => return Err(RootError::NotCartan),
                    _ => {}
                }
            }
        }
    }
    let l = d.iter().fold(1i64, |acc, x| lcm(acc, x.unwrap().1));
    let dint: Vec<i64> = d.iter().map(|x| x.unwrap().0 * (l / x.unwrap().1)).collect();
    let gram: Vec<Vec<i64>> = (0..n)
        .map(|i| (0..n).map(|j| dint[i] * cartan[i][j]).collect())
        .collect();
    let rs = build_from(cartan.to_vec(), gram, None);
    // positive definiteness shows up as a finite closure; guard against
    // affine/hyperbolic input by bounding the root count.
    if rs.positive_roots.len() > 120 * n.max(1) {
        return Err(RootError::NotCartan);
    }
    let identified = identify_type(&rs);
    Ok(RootSystem {
        cartan_type: identified,
        ..rs
    })
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.max(1)
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: i64, b: i64) -> i64 {
    a / gcd(a, b) * b
}

/// Coefficients of the highest root.
pub fn highest_root_coeffs(rs: &RootSystem) -> Vec<i64> {
    rs.highest_root().to_vec()
}

/// The `W`-orbit of a weight given in fundamental-weight coordinates.
pub fn weyl_orbit(rs: &RootSystem, weight: &[i64]) -> BTreeSet<Vec<i64>> {
    let mut seen: HashSet<Vec<i64>> = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(weight.to_vec());
    queue.push_back(weight.to_vec());
    while let Some(w) = queue.pop_front() {
        for i in 0..rs.rank {
            if w[i] == 0 {
                continue;
            }
            let r = rs.reflect_weight(i, &w);
            if seen.insert(r.clone()) {
                queue.push_back(r);
            }
        }
    }
    seen.into_iter().collect()
}

/// Size of a Weyl orbit without materializing a sorted set.
pub fn weyl_orbit_size(rs: &RootSystem, weight: &[i64]) -> usize {
    let mut seen: HashSet<Vec<i64>> = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(weight.to_vec());
    queue.push_back(weight.to_vec());
    while let Some(w) = queue.pop_front() {
        for i in 0..rs.rank {
            if w[i] == 0 {
                continue;
            }
            let r = rs.reflect_weight(i, &w);
            if seen.insert(r.clone()) {
                queue.push_back(r);
            }
        }
    }
    seen.len()
}

fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

fn sub_cartan(cartan: &[Vec<i64>], idx: &[usize]) -> Vec<Vec<i64>> {
    idx.iter()
        .map(|&i| idx.iter().map(|&j| cartan[i][j]).collect())
        .collect()
}

/// `|W|` of an irreducible Cartan matrix via connection index, `r!` and the
/// highest-root coefficients.
fn irreducible_weyl_order(cartan: &[Vec<i64>]) -> u64 {
    let r = cartan.len();
    let det = determinant(cartan);
    let rs = from_cartan(cartan).expect("valid Cartan matrix");
    let prod: u64 = rs.highest_root().iter().map(|&x| x as u64).product();
    let det: u64 = det.try_into().expect("positive determinant");
    det * factorial(r) * prod
}

/// `|W|` by the product formula, multiplied over diagram components.
pub fn weyl_group_order(rs: &RootSystem) -> u64 {
    weyl_order_of_cartan(&rs.cartan)
}

pub fn weyl_order_of_cartan(cartan: &[Vec<i64>]) -> u64 {
    components(cartan)
        .iter()
        .map(|c| irreducible_weyl_order(&sub_cartan(cartan, c)))
        .product()
}

/// `|W|` as the orbit size of the regular weight `ρ`.
pub fn weyl_group_order_enumerated(rs: &RootSystem) -> u64 {
    weyl_orbit_size(rs, &vec![1; rs.rank]) as u64
}

/// `|W / W_J|` with `J` all nodes except `i` (0-based).
pub fn parabolic_index(rs: &RootSystem, i: usize) -> Result<u64, RootError> {
    if i >= rs.rank {
        return Err(RootError::BadIndex(i));
    }
    let rest: Vec<usize> = (0..rs.rank).filter(|&j| j != i).collect();
    let sub = weyl_order_of_cartan(&sub_cartan(&rs.cartan, &rest));
    Ok(weyl_group_order(rs) / sub)
}

/// Identifies an irreducible system by invariants and a Cartan-matrix
/// permutation search.
pub fn identify_type(rs: &RootSystem) -> Option<CartanType> {
    if components(&rs.cartan).len() != 1 {
        return None;
    }
    CartanType::all_of_rank(rs.rank)
        .into_iter()
        .filter(|t| t.positive_root_count() == rs.num_positive())
        .find(|t| cartan_equivalent(&t.cartan(), &rs.cartan).is_some())
}

/// A permutation `p` with `b[p(i)][p(j)] = a[i][j]`, if one exists.
pub fn cartan_equivalent(a: &[Vec<i64>], b: &[Vec<i64>]) -> Option<Vec<usize>> {
    let n = a.len();
    if b.len() != n {
        return None;
    }
    fn rec(a: &[Vec<i64>], b: &[Vec<i64>], p: &mut Vec<usize>, used: &mut [bool]) -> bool {
        let i = p.len();
        let n = a.len();
        if i == n {
            return true;
        }
        for c in 0..n {
            if used[c] {
                continue;
            }
            if (0..i).all(|k| a[i][k] == b[c][p[k]] && a[k][i] == b[p[k]][c]) {
                used[c] = true;
                p.push(c);
                if rec(a, b, p, used) {
                    return true;
                }
                p.pop();
                used[c] = false;
            }
        }
        false
    }
    let mut p = Vec::new();
    let mut used = vec![false; n];
    rec(a, b, &mut p, &mut used).then_some(p)
}

/// A permutation of simple-root indices preserving the Cartan matrix.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DiagramAutomorphism {
    /// 0-based: node `i` is sent to `perm[i]`.
    pub perm: Vec<usize>,
    pub order: usize,
}

impl DiagramAutomorphism {
    pub fn new(rs: &RootSystem, perm: Vec<usize>) -> Result<Self, RootError> {
        let n = rs.rank;
        let mut sorted = perm.clone();
        sorted.sort_unstable();
        if perm.len() != n || sorted != (0..n).collect::<Vec<_>>() {
            return Err(RootError::NotAnAutomorphism(perm));
        }
        for i in 0..n {
            for j in 0..n {
                if rs.cartan[perm[i]][perm[j]] != rs.cartan[i][j] {
                    return Err(RootError::NotAnAutomorphism(perm));
                }
            }
        }
        let mut order = 1;
        let mut cur = perm.clone();
        while cur.iter().enumerate().any(|(i, &x)| i != x) {
            cur = cur.iter().map(|&x| perm[x]).collect();
            order += 1;
        }
        Ok(DiagramAutomorphism { perm, order })
    }

    pub fn identity(rs: &RootSystem) -> Self {
        DiagramAutomorphism {
            perm: (0..rs.rank).collect(),
            order: 1,
        }
    }

    /// Named automorphisms: `id`, `ord2` (the nontrivial involution of
    /// `A_n`, `D_n`, `E6`), `rot3` (`α1→α3→α4→α1` on `D4`) and `lambda`
    /// (`α1` fixed, `α3↔α4` on `D4`).
    pub fn named(rs: &RootSystem, name: &str) -> Result<Self, RootError> {
        let unknown = || RootError::UnknownAutomorphism {
            name: name.to_string(),
            ty: rs.name(),
        };
        let ty = rs.cartan_type.ok_or_else(unknown)?;
        let n = rs.rank;
        let perm: Vec<usize> = match (name, ty.family) {
            ("id", _) => (0..n).collect(),
            ("ord2", Family::A) => (0..n).map(|i| n - 1 - i).collect(),
            ("ord2", Family::D) => {
                let mut p: Vec<usize> = (0..n).collect();
                p.swap(n - 2, n - 1);
                p
            }
            ("ord2", Family::E) if n == 6 => vec![5, 1, 4, 3, 2, 0],
            ("rot3" | "mu", Family::D) if n == 4 => vec![2, 1, 3, 0],
            ("lambda", Family::D) if n == 4 => vec![0, 1, 3, 2],
            _ => return Err(unknown()),
        };
        Self::new(rs, perm)
    }

    pub fn apply_root(&self, beta: &[i64]) -> Vec<i64> {
        let mut out = vec![0; beta.len()];
        for (i, &c) in beta.iter().enumerate() {
            out[self.perm[i]] = c;
        }
        out
    }
}

/// Result of folding a root system along a group of diagram automorphisms.
#[derive(Debug, Clone, Serialize)]
pub struct FoldedSystem {
    /// Orbits of simple-root indices (0-based), in order of first element.
    pub orbits: Vec<Vec<usize>>,
    /// Distinct images of all roots, in orbit coordinates.
    pub images: Vec<Vec<i64>>,
    pub folded_cartan: Vec<Vec<i64>>,
    /// The reduced root system with the folded Cartan matrix.
    pub root_system: RootSystem,
    pub identified: Option<CartanType>,
    /// True when some image is twice another image.
    pub non_reduced: bool,
    /// Product of the coroot doubling factors; 2 exactly for `A_{2m}`.
    pub kernel_order: u64,
    /// Images are precisely the folded roots, or for non-reduced images the
    /// folded roots together with doubles of short folded roots.
    pub images_consistent: bool,
}

/// Folds along a single automorphism.
pub fn fold(rs: &RootSystem, auto: &DiagramAutomorphism) -> Result<FoldedSystem, RootError> {
    fold_by_group(rs, std::slice::from_ref(auto))
}

/// Folds along the group generated by the given automorphisms.
pub fn fold_by_group(
    rs: &RootSystem,
    gens: &[DiagramAutomorphism],
) -> Result<FoldedSystem, RootError> {
    for g in gens {
        DiagramAutomorphism::new(rs, g.perm.clone())?;
    }
    let n = rs.rank;
    let mut orbit_of = vec![usize::MAX; n];
    let mut orbits: Vec<Vec<usize>> = Vec::new();
    for s in 0..n {
        if orbit_of[s] != usize::MAX {
            continue;
        }
        let id = orbits.len();
        let mut orb = vec![s];
        orbit_of[s] = id;
        let mut k = 0;
        while k < orb.len() {
            let i = orb[k];
            for g in gens {
                let j = g.perm[i];
                if orbit_of[j] == usize::MAX {
                    orbit_of[j] = id;
                    orb.push(j);
                }
            }
            k += 1;
        }
        orb.sort_unstable();
        orbits.push(orb);
    }
    let m = orbits.len();
    let project = |beta: &[i64]| -> Vec<i64> {
        let mut v = vec![0; m];
        for i in 0..n {
            v[orbit_of[i]] += beta[i];
        }
        v
    };
    let image_set: BTreeSet<Vec<i64>> = rs.all_roots().iter().map(|b| project(b)).collect();
    let images: Vec<Vec<i64>> = image_set.iter().cloned().collect();

    let mut scales = Vec::with_capacity(m);
    for orb in &orbits {
        let j0 = orb[0];
        let s: i64 = orb.iter().map(|&i| rs.cartan[i][j0]).sum();
        if s <= 0 || 2 % s != 0 {
            return Err(RootError::NotCartan);
        }
        scales.push(2 / s);
    }
    let folded_cartan: Vec<Vec<i64>> = (0..m)
        .map(|o| {
            (0..m)
                .map(|o2| {
                    let j = orbits[o2][0];
                    scales[o] * orbits[o].iter().map(|&i| rs.cartan[i][j]).sum::<i64>()
                })
                .collect()
        })
        .collect();
    let folded = from_cartan(&folded_cartan)?;
    let non_reduced = images
        .iter()
        .any(|v| image_set.contains(&v.iter().map(|x| 2 * x).collect::<Vec<_>>()));

    let min_len = folded
        .positive_roots
        .iter()
        .map(|r| folded.inner(r, r))
        .min()
        .unwrap_or(0);
    let mut expected: BTreeSet<Vec<i64>> = folded.all_roots().into_iter().collect();
    if non_reduced {
        for r in folded.all_roots() {
            if folded.inner(&r, &r) == min_len {
                expected.insert(r.iter().map(|x| 2 * x).collect());
            }
        }
    }
    let images_consistent = expected == image_set;
    Ok(FoldedSystem {
        orbits,
        images,
        identified: folded.cartan_type,
        folded_cartan,
        root_system: folded,
        non_reduced,
        kernel_order: scales.iter().map(|&s| s as u64).product(),
        images_consistent,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rs(name: &str) -> RootSystem {
        parse_root_system(name).unwrap()
    }

    #[test]
    fn counts_match_formulas() {
        for name in ["A1", "A4", "B3", "C4", "D4", "D6", "E6", "E7", "E8", "F4", "G2"] {
            let r = rs(name);
            assert_eq!(
                r.num_positive(),
                r.cartan_type.unwrap().positive_root_count(),
                "{name}"
            );
        }
    }

    #[test]
    fn closure_under_reflections() {
        for name in ["B3", "G2", "F4", "E6"] {
            let r = rs(name);
            for b in r.all_roots() {
                for i in 0..r.rank {
                    assert!(r.is_root(&r.reflect_root(i, &b)));
                }
            }
        }
    }

    #[test]
    fn g2_has_six_positive_roots() {
        let r = rs("G2");
        assert_eq!(r.num_positive(), 6);
        assert_eq!(r.cartan, vec![vec![2, -3], vec![-1, 2]]);
        assert_eq!(highest_root_coeffs(&r), vec![3, 2]);
    }

    #[test]
    fn d4_highest_root() {
        assert_eq!(highest_root_coeffs(&rs("D4")), vec![1, 2, 1, 1]);
        assert_eq!(*highest_root_coeffs(&rs("E6")).iter().max().unwrap(), 3);
    }

    #[test]
    fn rejects_invalid_types() {
        assert!(build_root_system(Family::D, 3).is_err());
        assert!(build_root_system(Family::E, 9).is_err());
        assert!(build_root_system(Family::C, 2).is_err());
        assert!("X3".parse::<CartanType>().is_err());
    }

    #[test]
    fn weyl_orders() {
        assert_eq!(weyl_group_order(&rs("A2")), 6);
        assert_eq!(weyl_group_order(&rs("E6")), 51840);
        assert_eq!(weyl_group_order(&rs("E7")), 2903040);
        assert_eq!(weyl_group_order(&rs("E8")), 696729600);
        assert_eq!(weyl_group_order(&rs("G2")), 12);
        assert_eq!(weyl_group_order(&rs("F4")), 1152);
        for name in ["A3", "B4", "C3", "D5", "F4", "G2"] {
            let r = rs(name);
            assert_eq!(weyl_group_order(&r), weyl_group_order_enumerated(&r));
        }
    }

    #[test]
    fn orbits_and_parabolics() {
        let a1 = rs("A1");
        assert_eq!(weyl_orbit(&a1, &[1]).len(), 2);
        assert_eq!(parabolic_index(&a1, 0).unwrap(), 2);
        let e6 = rs("E6");
        assert_eq!(weyl_orbit_size(&e6, &[0, 0, 0, 1, 0, 0]), 720);
        let d4 = rs("D4");
        let w2 = weyl_orbit(&d4, &[0, 1, 0, 0]).len() as u64;
        assert_eq!(w2, weyl_group_order(&d4) / 8);
        assert_eq!(w2, parabolic_index(&d4, 1).unwrap());
    }

    #[test]
    fn named_automorphisms() {
        let d4 = rs("D4");
        let mu = DiagramAutomorphism::named(&d4, "rot3").unwrap();
        assert_eq!(mu.order, 3);
        assert_eq!(mu.apply_root(&[1, 0, 0, 0]), vec![0, 0, 1, 0]);
        assert!(DiagramAutomorphism::new(&d4, vec![1, 0, 2, 3]).is_err());
    }

    #[test]
    fn folding_d4_and_identity() {
        let d4 = rs("D4");
        let f = fold(&d4, &DiagramAutomorphism::named(&d4, "rot3").unwrap()).unwrap();
        assert_eq!(f.identified.unwrap().to_string(), "G2");
        assert!(f.images_consistent);
        let b3 = rs("B3");
        let f = fold(&b3, &DiagramAutomorphism::identity(&b3)).unwrap();
        assert_eq!(f.identified.unwrap().to_string(), "B3");
        assert_eq!(f.images.len(), 18);
    }

    #[test]
    fn folding_a_even_is_non_reduced() {
        let a4 = rs("A4");
        let f = fold(&a4, &DiagramAutomorphism::named(&a4, "ord2").unwrap()).unwrap();
        assert!(f.non_reduced);
        assert_eq!(f.kernel_order, 2);
        assert_eq!(f.identified.unwrap().to_string(), "B2");
        assert!(f.images_consistent);
    }

    #[test]
    fn reducible_from_cartan() {
        let c = vec![vec![2, 0, 0], vec![0, 2, 0], vec![0, 0, 2]];
        let r = from_cartan(&c).unwrap();
        assert_eq!(r.num_positive(), 3);
        assert_eq!(weyl_group_order(&r), 8);
        assert!(r.cartan_type.is_none());
    }
}
