//! Finite commutative rings of prime characteristic.
//!
//! Every ring here is a finite-dimensional `F_p`-algebra and elements are
//! `u32` indices whose base-`p` digits are the `F_p`-coordinates:
//!
//! * `F(p,k)`: coefficients of a polynomial in the generator `x` modulo a
//!   primitive irreducible polynomial;
//! * `R[a]/a^m`: `Σ b_j a^j` stored as `Σ b_j·|R|^j`;
//! * `R1 x R2`: `(r1, r2)` stored as `r1 + |R1|·r2`.
//!
//! Addition is therefore digitwise, independent of the ring shape.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use crate::scalar::Arith;

use super::RingError;

pub type Elem = u32;

/// Largest field order with log tables.
pub const MAX_FIELD: u64 = 1 << 20;
/// Rings up to this size get full multiplication tables.
const TABLE_LIMIT: u32 = 1024;

#[derive(Debug)]
pub struct FieldData {
    pub p: u32,
    pub k: u32,
    pub q: u32,
    /// Monic modulus, low degree first (length `k + 1`).
    pub modulus: Vec<u32>,
    exp: Vec<u32>,
    log: Vec<u32>,
}

fn poly_mul_mod(a: &[u32], b: &[u32], modulus: &[u32], p: u32) -> Vec<u32> {
    let k = modulus.len() - 1;
    let mut prod = vec![0u64; a.len() + b.len()];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] += x as u64 * y as u64;
        }
    }
    let mut prod: Vec<u32> = prod.iter().map(|&v| (v % p as u64) as u32).collect();
    for d in (k..prod.len()).rev() {
        let c = prod[d];
        if c == 0 {
            continue;
        }
        for (j, &m) in modulus.iter().enumerate() {
            let idx = d - k + j;
            prod[idx] = ((prod[idx] as u64 + (p - c) as u64 * m as u64) % p as u64) as u32;
        }
    }
    prod.truncate(k);
    prod.resize(k, 0);
    prod
}

fn digits(mut v: u32, p: u32, n: usize) -> Vec<u32> {
    let mut out = Vec::with_capacity(n);
    for _ in 0..n {
        out.push(v % p);
        v /= p;
    }
    out
}

fn undigits(d: &[u32], p: u32) -> u32 {
    d.iter().rev().fold(0, |acc, &x| acc * p + x)
}

/// Whether the monic polynomial (low degree first) has no monic factor of
/// degree `1..=k/2`, by trial division over all such factors.
fn is_irreducible_brute(f: &[u32], p: u32) -> bool {
    let k = f.len() - 1;
    for d in 1..=k / 2 {
        for idx in 0..(p as u64).pow(d as u32) {
            let mut g = digits(idx as u32, p, d);
            g.push(1);
            if poly_rem(f, &g, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

fn poly_rem(f: &[u32], g: &[u32], p: u32) -> Vec<u32> {
    let mut r = f.to_vec();
    let dg = g.len() - 1;
    let lead_inv = mod_inv(g[dg], p);
    while r.len() > dg {
        let c = (*r.last().unwrap() as u64 * lead_inv as u64 % p as u64) as u32;
        let shift = r.len() - 1 - dg;
        for (j, &gj) in g.iter().enumerate() {
            let idx = shift + j;
            r[idx] = ((r[idx] as u64 + (p - c) as u64 * gj as u64) % p as u64) as u32;
        }
        r.pop();
    }
    r
}

pub(crate) fn mod_inv(a: u32, p: u32) -> u32 {
    let mut r = 1u64;
    let mut b = a as u64 % p as u64;
    let mut e = p as u64 - 2;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p as u64;
        }
        b = b * b % p as u64;
        e >>= 1;
    }
    r as u32
}

impl FieldData {
    fn build(p: u32, k: u32) -> Result<FieldData, RingError> {
        let q64 = (p as u64).pow(k);
        if q64 > MAX_FIELD {
            return Err(RingError::TooLarge(q64));
        }
        let q = q64 as u32;
        if k == 1 {
            // F_p with a primitive root for the log tables.
            let g = (1..p.max(2))
                .find(|&g| {
                    let mut x = 1u64;
                    (1..p - 1).all(|_| {
                        x = x * g as u64 % p as u64;
                        x != 1
                    })
                })
                .unwrap_or(1);
            let modulus = vec![(p - g % p) % p, 1];
            return Ok(Self::with_modulus(p, 1, modulus));
        }
        for idx in 0..q {
            let mut f = digits(idx, p, k as usize);
            f.push(1);
            if f[0] == 0 || !is_irreducible_brute(&f, p) {
                continue;
            }
            let fd = Self::with_modulus(p, k, f);
            if fd.exp.len() as u32 == q - 1 {
                return Ok(fd);
            }
        }
        unreachable!("primitive polynomials exist in every degree")
    }

    /// Tables from powers of `x`; `exp` is shorter than `q - 1` when `x` is
    /// not primitive.
    fn with_modulus(p: u32, k: u32, modulus: Vec<u32>) -> FieldData {
        let q = p.pow(k);
        let mut gen = vec![0u32; k as usize];
        if k == 1 {
            gen[0] = (p - modulus[0]) % p;
        } else {
            gen[1] = 1;
        }
        let mut exp = Vec::new();
        let mut log = vec![u32::MAX; q as usize];
        let mut cur = vec![0u32; k as usize];
        cur[0] = 1 % p;
        for e in 0..q - 1 {
            let idx = undigits(&cur, p);
            if log[idx as usize] != u32::MAX {
                break;
            }
            log[idx as usize] = e;
            exp.push(idx);
            cur = poly_mul_mod(&cur, &gen, &modulus, p);
        }
        FieldData {
            p,
            k,
            q,
            modulus,
            exp,
            log,
        }
    }

    fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        let n = self.q - 1;
        let e = (self.log[a as usize] + self.log[b as usize]) % n;
        self.exp[e as usize]
    }

    fn inv(&self, a: u32) -> Option<u32> {
        if a == 0 {
            return None;
        }
        let n = self.q - 1;
        Some(self.exp[((n - self.log[a as usize]) % n) as usize])
    }

    fn pow(&self, a: u32, e: u64) -> u32 {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let n = (self.q - 1) as u64;
        self.exp[((self.log[a as usize] as u64 * (e % n)) % n) as usize]
    }

    /// Index of the generator `x` (the class of the polynomial variable).
    pub fn generator(&self) -> u32 {
        if self.k == 1 {
            (self.p - self.modulus[0]) % self.p
        } else {
            self.p
        }
    }
}

fn field_cache() -> &'static Mutex<HashMap<(u32, u32), Arc<FieldData>>> {
    type Cache = Mutex<HashMap<(u32, u32), Arc<FieldData>>>;
    static CACHE: OnceLock<Cache> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

pub fn field_data(p: u32, k: u32) -> Result<Arc<FieldData>, RingError> {
    if !crate::primes::is_prime(p as u64) {
        return Err(RingError::NotPrime(p));
    }
    if k == 0 {
        return Err(RingError::Malformed("field degree must be positive".into()));
    }
    let mut cache = field_cache().lock().unwrap();
    if let Some(f) = cache.get(&(p, k)) {
        return Ok(f.clone());
    }
    let f = Arc::new(FieldData::build(p, k)?);
    cache.insert((p, k), f.clone());
    Ok(f)
}

#[derive(Debug, Clone)]
pub enum Node {
    Field(Arc<FieldData>),
    Trunc {
        base: Box<Node>,
        var: String,
        m: u32,
    },
    Product(Box<Node>, Box<Node>),
}

impl Node {
    pub fn size(&self) -> u32 {
        match self {
            Node::Field(f) => f.q,
            Node::Trunc { base, m, .. } => base.size().pow(*m),
            Node::Product(a, b) => a.size() * b.size(),
        }
    }

    pub fn char_p(&self) -> u32 {
        match self {
            Node::Field(f) => f.p,
            Node::Trunc { base, .. } => base.char_p(),
            Node::Product(a, _) => a.char_p(),
        }
    }

    fn split(&self, a: u32) -> Vec<u32> {
        match self {
            Node::Trunc { base, m, .. } => {
                let bs = base.size();
                digits(a, bs, *m as usize)
            }
            _ => unreachable!(),
        }
    }

    fn int_elem(&self, c: u32, p: u32) -> u32 {
        let c = c % p;
        match self {
            Node::Field(_) => c,
            Node::Trunc { base, .. } => base.int_elem(c, p),
            Node::Product(a, b) => {
                let x = a.int_elem(c, p);
                x + a.size() * b.int_elem(c, p)
            }
        }
    }

    fn mul(&self, a: u32, b: u32, p: u32) -> u32 {
        match self {
            Node::Field(f) => f.mul(a, b),
            Node::Trunc { base, m, .. } => {
                let bs = base.size();
                let da = self.split(a);
                let db = self.split(b);
                let m = *m as usize;
                let mut out = vec![0u32; m];
                for i in 0..m {
                    if da[i] == 0 {
                        continue;
                    }
                    for j in 0..m - i {
                        if db[j] == 0 {
                            continue;
                        }
                        let t = base.mul(da[i], db[j], p);
                        out[i + j] = digit_add(out[i + j], t, p);
                    }
                }
                out.iter().rev().fold(0, |acc, &x| acc * bs + x)
            }
            Node::Product(x, y) => {
                let s = x.size();
                x.mul(a % s, b % s, p) + s * y.mul(a / s, b / s, p)
            }
        }
    }

    fn is_unit(&self, a: u32) -> bool {
        match self {
            Node::Field(_) => a != 0,
            Node::Trunc { base, .. } => base.is_unit(a % base.size()),
            Node::Product(x, y) => {
                let s = x.size();
                x.is_unit(a % s) && y.is_unit(a / s)
            }
        }
    }

    fn inv(&self, a: u32, p: u32) -> Option<u32> {
        match self {
            Node::Field(f) => f.inv(a),
            Node::Trunc { base, m, .. } => {
                let b0 = base.inv(a % base.size(), p)?;
                // Newton iteration y <- y(2 - a y) doubles the precision.
                let mut y = b0;
                let two = self.int_elem(2, p);
                let mut prec = 1;
                while prec < *m {
                    let ay = self.mul(a, y, p);
                    y = self.mul(y, digit_sub(two, ay, p), p);
                    prec *= 2;
                }
                Some(y)
            }
            Node::Product(x, y) => {
                let s = x.size();
                Some(x.inv(a % s, p)? + s * y.inv(a / s, p)?)
            }
        }
    }

    fn fmt_elem(&self, a: u32, p: u32, out: &mut String) {
        match self {
            Node::Field(f) => {
                if f.k == 1 {
                    out.push_str(&a.to_string());
                    return;
                }
                let d = digits(a, p, f.k as usize);
                let mut terms = Vec::new();
                for (j, &c) in d.iter().enumerate().rev() {
                    if c == 0 {
                        continue;
                    }
                    terms.push(monomial(c, "x", j));
                }
                if terms.is_empty() {
                    out.push('0');
                } else {
                    out.push_str(&terms.join("+"));
                }
            }
            Node::Trunc { base, var, .. } => {
                let d = self.split(a);
                let mut terms = Vec::new();
                for (j, &c) in d.iter().enumerate().rev() {
                    if c == 0 {
                        continue;
                    }
                    let mut s = String::new();
                    base.fmt_elem(c, p, &mut s);
                    let pow = match j {
                        0 => String::new(),
                        1 => var.clone(),
                        _ => format!("{var}^{j}"),
                    };
                    terms.push(if j == 0 {
                        s
                    } else if s == "1" {
                        pow
                    } else if s.contains('+') {
                        format!("({s})*{pow}")
                    } else {
                        format!("{s}*{pow}")
                    });
                }
                if terms.is_empty() {
                    out.push('0');
                } else {
                    out.push_str(&terms.join("+"));
                }
            }
            Node::Product(x, y) => {
                let s = x.size();
                out.push('(');
                x.fmt_elem(a % s, p, out);
                out.push('|');
                y.fmt_elem(a / s, p, out);
                out.push(')');
            }
        }
    }

    fn spec_string(&self) -> String {
        match self {
            Node::Field(f) => {
                if f.k == 1 {
                    format!("F({})", f.p)
                } else {
                    format!("F({},{})", f.p, f.k)
                }
            }
            Node::Trunc { base, var, m } => {
                let b = base.spec_string();
                let b = if matches!(**base, Node::Product(..)) {
                    format!("({b})")
                } else {
                    b
                };
                format!("{b}[{var}]/{var}^{m}")
            }
            Node::Product(x, y) => format!("({})x({})", x.spec_string(), y.spec_string()),
        }
    }
}

fn monomial(c: u32, var: &str, j: usize) -> String {
    let coeff = if c == 1 && j > 0 {
        String::new()
    } else if j > 0 {
        format!("{c}*")
    } else {
        c.to_string()
    };
    match j {
        0 => coeff,
        1 => format!("{coeff}{var}"),
        _ => format!("{coeff}{var}^{j}"),
    }
}

fn digit_add(a: u32, b: u32, p: u32) -> u32 {
    if p == 2 {
        return a ^ b;
    }
    let (mut a, mut b) = (a, b);
    let mut out = 0u32;
    let mut place = 1u32;
    while a > 0 || b > 0 {
        let d = (a % p + b % p) % p;
        out += d * place;
        a /= p;
        b /= p;
        place = place.wrapping_mul(p);
    }
    out
}

fn digit_neg(a: u32, p: u32) -> u32 {
    if p == 2 {
        return a;
    }
    let mut a = a;
    let mut out = 0u32;
    let mut place = 1u32;
    while a > 0 {
        let d = (p - a % p) % p;
        out += d * place;
        a /= p;
        place = place.wrapping_mul(p);
    }
    out
}

fn digit_sub(a: u32, b: u32, p: u32) -> u32 {
    digit_add(a, digit_neg(b, p), p)
}

#[derive(Debug)]
struct Tables {
    mul: Vec<u32>,
    add: Vec<u32>,
    inv: Vec<u32>,
}

/// Ring automorphisms used as Galois actions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RingAuto {
    Identity,
    /// `x ↦ x^{p^e}` on every field coefficient.
    Frobenius(u32),
    /// Componentwise on a product.
    OnFactors(Box<RingAuto>, Box<RingAuto>),
    /// `(x, y) ↦ (y, x)` on a product of two equal factors.
    Swap,
    /// `Compose(v)` applies `v[last]` first.
    Compose(Vec<RingAuto>),
}

/// A finite commutative ring with cheap cloning.
#[derive(Clone)]
pub struct Ring {
    node: Arc<Node>,
    p: u32,
    dim: u32,
    size: u32,
    tables: Option<Arc<Tables>>,
}

impl fmt::Debug for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ring({})", self.spec())
    }
}

impl PartialEq for Ring {
    fn eq(&self, other: &Self) -> bool {
        self.spec() == other.spec()
    }
}

impl Ring {
    pub fn from_node(node: Node) -> Result<Ring, RingError> {
        let p = node.char_p();
        check_char(&node, p)?;
        let size64 = node_size64(&node);
        if size64 > u32::MAX as u64 / 2 {
            return Err(RingError::TooLarge(size64));
        }
        let size = node.size();
        let mut dim = 0;
        let mut s = 1u64;
        while s < size as u64 {
            s *= p as u64;
            dim += 1;
        }
        let mut ring = Ring {
            node: Arc::new(node),
            p,
            dim,
            size,
            tables: None,
        };
        if size <= TABLE_LIMIT {
            let n = size as usize;
            let mut mul = vec![0u32; n * n];
            let mut add = vec![0u32; n * n];
            for a in 0..size {
                for b in 0..size {
                    mul[a as usize * n + b as usize] = ring.node.mul(a, b, p);
                    add[a as usize * n + b as usize] = digit_add(a, b, p);
                }
            }
            let inv = (0..size)
                .map(|a| ring.node.inv(a, p).unwrap_or(u32::MAX))
                .collect();
            ring.tables = Some(Arc::new(Tables { mul, add, inv }));
        }
        Ok(ring)
    }

    pub fn field(p: u32, k: u32) -> Result<Ring, RingError> {
        Ring::from_node(Node::Field(field_data(p, k)?))
    }

    pub fn truncated(base: &Ring, var: &str, m: u32) -> Result<Ring, RingError> {
        if m == 0 {
            return Err(RingError::Malformed("truncation degree must be positive".into()));
        }
        Ring::from_node(Node::Trunc {
            base: Box::new((*base.node).clone()),
            var: var.to_string(),
            m,
        })
    }

    pub fn dual_numbers(base: &Ring) -> Result<Ring, RingError> {
        Ring::truncated(base, "e", 2)
    }

    pub fn product(a: &Ring, b: &Ring) -> Result<Ring, RingError> {
        Ring::from_node(Node::Product(
            Box::new((*a.node).clone()),
            Box::new((*b.node).clone()),
        ))
    }

    pub fn node(&self) -> &Node {
        &self.node
    }

    pub fn size(&self) -> u32 {
        self.size
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    /// Dimension over `F_p`.
    pub fn dim(&self) -> u32 {
        self.dim
    }

    pub fn is_field(&self) -> bool {
        matches!(*self.node, Node::Field(_))
    }

    /// Field data when the ring is a field.
    pub fn field_data(&self) -> Option<&Arc<FieldData>> {
        match &*self.node {
            Node::Field(f) => Some(f),
            _ => None,
        }
    }

    pub fn spec(&self) -> String {
        self.node.spec_string()
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        0..self.size
    }

    pub fn units(&self) -> Vec<Elem> {
        self.elements().filter(|&a| self.is_unit(a)).collect()
    }

    pub fn is_unit(&self, a: Elem) -> bool {
        match &self.tables {
            Some(t) => t.inv[a as usize] != u32::MAX,
            None => self.node.is_unit(a),
        }
    }

    pub fn pow(&self, a: Elem, mut e: u64) -> Elem {
        if let Node::Field(f) = &*self.node {
            return f.pow(a, e);
        }
        let mut base = a;
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    pub fn format(&self, a: Elem) -> String {
        let mut s = String::new();
        self.node.fmt_elem(a, self.p, &mut s);
        s
    }

    /// `F_p`-coordinates (base-`p` digits) of an element.
    pub fn coords(&self, a: Elem) -> Vec<u32> {
        digits(a, self.p, self.dim as usize)
    }

    pub fn from_coords(&self, c: &[u32]) -> Elem {
        undigits(c, self.p)
    }

    /// `c·a` for an integer `c`.
    pub fn scale(&self, c: i64, a: Elem) -> Elem {
        let c = c.rem_euclid(self.p as i64) as u32;
        if c == 0 {
            return 0;
        }
        let d: Vec<u32> = self.coords(a).iter().map(|&x| x * c % self.p).collect();
        self.from_coords(&d)
    }

    pub fn apply_auto(&self, auto: &RingAuto, a: Elem) -> Elem {
        apply_node(&self.node, auto, a, self.p)
    }

    /// The element `var` (`a^1`) of a truncated ring.
    pub fn variable(&self) -> Option<Elem> {
        match &*self.node {
            Node::Trunc { base, m, .. } if *m > 1 => Some(base.size()),
            _ => None,
        }
    }

    /// Embeds an element of the base ring of a truncated ring.
    pub fn embed_base(&self, b: Elem) -> Elem {
        b
    }

    /// Order of the multiplicative group of a field.
    pub fn unit_group_order(&self) -> u64 {
        self.units().len() as u64
    }
}

fn node_size64(n: &Node) -> u64 {
    match n {
        Node::Field(f) => f.q as u64,
        Node::Trunc { base, m, .. } => node_size64(base).saturating_pow(*m),
        Node::Product(a, b) => node_size64(a).saturating_mul(node_size64(b)),
    }
}

fn check_char(n: &Node, p: u32) -> Result<(), RingError> {
    match n {
        Node::Field(f) if f.p != p => Err(RingError::MixedCharacteristic),
        Node::Field(_) => Ok(()),
        Node::Trunc { base, .. } => check_char(base, p),
        Node::Product(a, b) => {
            check_char(a, p)?;
            check_char(b, p)
        }
    }
}

fn apply_node(n: &Node, auto: &RingAuto, a: u32, p: u32) -> u32 {
    match auto {
        RingAuto::Identity => a,
        RingAuto::Compose(v) => v
            .iter()
            .rev()
            .fold(a, |acc, f| apply_node(n, f, acc, p)),
        RingAuto::Frobenius(e) => match n {
            Node::Field(f) => f.pow(a, (p as u64).pow(*e % f.k.max(1))),
            Node::Trunc { base, m, .. } => {
                let bs = base.size();
                let d = digits(a, bs, *m as usize);
                d.iter()
                    .rev()
                    .fold(0, |acc, &x| acc * bs + apply_node(base, auto, x, p))
            }
            Node::Product(x, y) => {
                let s = x.size();
                apply_node(x, auto, a % s, p) + s * apply_node(y, auto, a / s, p)
            }
        },
        RingAuto::OnFactors(f, g) => match n {
            Node::Product(x, y) => {
                let s = x.size();
                apply_node(x, f, a % s, p) + s * apply_node(y, g, a / s, p)
            }
            _ => panic!("componentwise automorphism on a non-product ring"),
        },
        RingAuto::Swap => match n {
            Node::Product(x, _) => {
                let s = x.size();
                a / s + s * (a % s)
            }
            _ => panic!("swap on a non-product ring"),
        },
    }
}

impl Arith for Ring {
    type Elem = Elem;

    fn zero(&self) -> Elem {
        0
    }

    fn one(&self) -> Elem {
        self.node.int_elem(1, self.p)
    }

    fn add(&self, a: &Elem, b: &Elem) -> Elem {
        match &self.tables {
            Some(t) => t.add[(*a * self.size + *b) as usize],
            None => digit_add(*a, *b, self.p),
        }
    }

    fn sub(&self, a: &Elem, b: &Elem) -> Elem {
        digit_sub(*a, *b, self.p)
    }

    fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        match &self.tables {
            Some(t) => t.mul[(*a * self.size + *b) as usize],
            None => self.node.mul(*a, *b, self.p),
        }
    }

    fn neg(&self, a: &Elem) -> Elem {
        digit_neg(*a, self.p)
    }

    fn inv(&self, a: &Elem) -> Option<Elem> {
        match &self.tables {
            Some(t) => {
                let v = t.inv[*a as usize];
                (v != u32::MAX).then_some(v)
            }
            None => self.node.inv(*a, self.p),
        }
    }

    fn from_i64(&self, v: i64) -> Elem {
        self.node
            .int_elem(v.rem_euclid(self.p as i64) as u32, self.p)
    }

    fn is_zero(&self, a: &Elem) -> bool {
        *a == 0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_sizes_and_inverses() {
        for (p, k) in [(2, 1), (2, 3), (3, 2), (5, 1), (3, 3), (7, 2)] {
            let f = Ring::field(p, k).unwrap();
            assert_eq!(f.size(), p.pow(k));
            for a in 1..f.size() {
                assert_eq!(f.mul(&a, &f.inv(&a).unwrap()), f.one());
            }
        }
    }

    #[test]
    fn dual_numbers_over_f2() {
        let r = Ring::dual_numbers(&Ring::field(2, 1).unwrap()).unwrap();
        assert_eq!(r.size(), 4);
        let units: Vec<String> = r.units().iter().map(|&u| r.format(u)).collect();
        assert_eq!(units, vec!["1", "e+1"]);
        let e = r.variable().unwrap();
        assert_eq!(r.mul(&e, &e), 0);
    }

    #[test]
    fn frobenius_fixes_prime_field() {
        let f = Ring::field(3, 2).unwrap();
        let fixed: Vec<u32> = f
            .elements()
            .filter(|&a| f.apply_auto(&RingAuto::Frobenius(1), a) == a)
            .collect();
        assert_eq!(fixed, vec![0, 1, 2]);
    }

    #[test]
    fn truncated_inverse_by_newton() {
        let base = Ring::field(3, 1).unwrap();
        let r = Ring::truncated(&base, "a", 5).unwrap();
        for u in r.units() {
            assert_eq!(r.mul(&u, &r.inv(&u).unwrap()), r.one());
        }
        assert_eq!(r.units().len(), 2 * 81);
    }

    #[test]
    fn product_is_componentwise() {
        let f = Ring::field(3, 1).unwrap();
        let r = Ring::product(&f, &f).unwrap();
        assert_eq!(r.size(), 9);
        assert_eq!(r.units().len(), 4);
        let swapped = r.apply_auto(&RingAuto::Swap, 1);
        assert_eq!(swapped, 3);
    }
}
