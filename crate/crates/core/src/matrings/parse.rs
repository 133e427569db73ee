//! Parsers for ring specifications, element literals and matrix literals.
//!
//! Ring grammar:
//!
//! ```text
//! ring   := term ('x' term)*
//! term   := atom ('[' var ']' '/' var '^' int)*
//! atom   := 'F(' int [',' int] ')' | '(' ring ')'
//! ```
//!
//! Element literals are polynomial expressions in the field generator `x`
//! and the truncation variables, with `+ - * ^`, parentheses, integers and
//! `(l1|l2)` for elements of products.

use super::ring::{Elem, Node, Ring};
use super::RingError;
use crate::scalar::Arith;

struct Lexer<'a> {
    s: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn new(s: &'a str) -> Self {
        Lexer {
            s: s.as_bytes(),
            pos: 0,
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<(), RingError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(&format!("expected '{}'", c as char)))
        }
    }

    fn int(&mut self) -> Result<u64, RingError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected an integer"));
        }
        std::str::from_utf8(&self.s[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| self.error("integer out of range"))
    }

    fn ident(&mut self) -> Result<String, RingError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_alphabetic() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a name"));
        }
        Ok(String::from_utf8_lossy(&self.s[start..self.pos]).into_owned())
    }

    fn done(&mut self) -> bool {
        self.peek().is_none()
    }

    fn error(&self, msg: &str) -> RingError {
        RingError::Malformed(format!(
            "{msg} at position {} in {:?}",
            self.pos,
            String::from_utf8_lossy(self.s)
        ))
    }
}

/// Parses a ring specification such as `F(3,2)[e]/e^2`.
pub fn make_ring(spec: &str) -> Result<Ring, RingError> {
    let mut lx = Lexer::new(spec);
    let node = ring_expr(&mut lx)?;
    if !lx.done() {
        return Err(lx.error("trailing input"));
    }
    Ring::from_node(node)
}

fn ring_expr(lx: &mut Lexer) -> Result<Node, RingError> {
    let mut acc = ring_term(lx)?;
    while lx.eat(b'x') {
        let rhs = ring_term(lx)?;
        acc = Node::Product(Box::new(acc), Box::new(rhs));
    }
    Ok(acc)
}

fn ring_term(lx: &mut Lexer) -> Result<Node, RingError> {
    let mut node = ring_atom(lx)?;
    while lx.eat(b'[') {
        let var = lx.ident()?;
        if var == "x" {
            return Err(lx.error("'x' is reserved for the field generator"));
        }
        lx.expect(b']')?;
        lx.expect(b'/')?;
        let v2 = lx.ident()?;
        if v2 != var {
            return Err(lx.error("truncation must use the adjoined variable"));
        }
        lx.expect(b'^')?;
        let m = lx.int()?;
        if m == 0 || m > 64 {
            return Err(lx.error("truncation degree out of range"));
        }
        node = Node::Trunc {
            base: Box::new(node),
            var,
            m: m as u32,
        };
    }
    Ok(node)
}

fn ring_atom(lx: &mut Lexer) -> Result<Node, RingError> {
    if lx.eat(b'(') {
        let n = ring_expr(lx)?;
        lx.expect(b')')?;
        return Ok(n);
    }
    lx.expect(b'F')?;
    lx.expect(b'(')?;
    let p = lx.int()?;
    let k = if lx.eat(b',') { lx.int()? } else { 1 };
    lx.expect(b')')?;
    if !crate::primes::is_prime(p) || p > u32::MAX as u64 {
        return Err(RingError::NotPrime(p as u32));
    }
    if k == 0 || k > 31 {
        return Err(lx.error("field degree out of range"));
    }
    Ok(Node::Field(super::ring::field_data(p as u32, k as u32)?))
}

#[derive(Debug, Clone)]
enum Ast {
    Int(u64),
    Var(String),
    Pair(Box<Ast>, Box<Ast>),
    Add(Box<Ast>, Box<Ast>),
    Sub(Box<Ast>, Box<Ast>),
    Mul(Box<Ast>, Box<Ast>),
    Neg(Box<Ast>),
    Pow(Box<Ast>, u64),
}

fn expr(lx: &mut Lexer) -> Result<Ast, RingError> {
    let mut acc = if lx.eat(b'-') {
        Ast::Neg(Box::new(product(lx)?))
    } else {
        product(lx)?
    };
    loop {
        if lx.eat(b'+') {
            acc = Ast::Add(Box::new(acc), Box::new(product(lx)?));
        } else if lx.eat(b'-') {
            acc = Ast::Sub(Box::new(acc), Box::new(product(lx)?));
        } else {
            return Ok(acc);
        }
    }
}

fn product(lx: &mut Lexer) -> Result<Ast, RingError> {
    let mut acc = power(lx)?;
    loop {
        if lx.eat(b'*') {
            acc = Ast::Mul(Box::new(acc), Box::new(power(lx)?));
        } else if matches!(lx.peek(), Some(c) if c.is_ascii_alphabetic() || c == b'(') {
            // implicit multiplication such as `2x`
            acc = Ast::Mul(Box::new(acc), Box::new(power(lx)?));
        } else {
            return Ok(acc);
        }
    }
}

fn power(lx: &mut Lexer) -> Result<Ast, RingError> {
    let base = atom(lx)?;
    if lx.eat(b'^') {
        let e = lx.int()?;
        Ok(Ast::Pow(Box::new(base), e))
    } else {
        Ok(base)
    }
}

fn atom(lx: &mut Lexer) -> Result<Ast, RingError> {
    match lx.peek() {
        Some(b'(') => {
            lx.pos += 1;
            let a = expr(lx)?;
            if lx.eat(b'|') {
                let b = expr(lx)?;
                lx.expect(b')')?;
                Ok(Ast::Pair(Box::new(a), Box::new(b)))
            } else {
                lx.expect(b')')?;
                Ok(a)
            }
        }
        Some(c) if c.is_ascii_digit() => Ok(Ast::Int(lx.int()?)),
        Some(c) if c.is_ascii_alphabetic() => Ok(Ast::Var(lx.ident()?)),
        _ => Err(lx.error("expected an element")),
    }
}

/// Evaluates in the ring described by `node`; results are node-local indices.
fn eval(node: &Node, ast: &Ast) -> Result<Elem, RingError> {
    let sub = Ring::from_node(node.clone())?;
    eval_in(&sub, node, ast)
}

fn eval_in(r: &Ring, node: &Node, ast: &Ast) -> Result<Elem, RingError> {
    Ok(match ast {
        Ast::Int(v) => r.from_i64((*v % r.characteristic() as u64) as i64),
        Ast::Add(a, b) => r.add(&eval_in(r, node, a)?, &eval_in(r, node, b)?),
        Ast::Sub(a, b) => r.sub(&eval_in(r, node, a)?, &eval_in(r, node, b)?),
        Ast::Mul(a, b) => r.mul(&eval_in(r, node, a)?, &eval_in(r, node, b)?),
        Ast::Neg(a) => r.neg(&eval_in(r, node, a)?),
        Ast::Pow(a, e) => r.pow(eval_in(r, node, a)?, *e),
        Ast::Var(name) => match node {
            Node::Field(f) => {
                if name == "x" && f.k > 1 {
                    f.generator()
                } else {
                    return Err(RingError::Malformed(format!("unknown name {name:?}")));
                }
            }
            Node::Trunc { base, var, .. } => {
                if name == var {
                    base.size()
                } else {
                    // lower-level names live in the base ring, embedded as
                    // constant coefficients
                    eval(base, ast)?
                }
            }
            Node::Product(..) => {
                return Err(RingError::Malformed(format!(
                    "name {name:?} needs a (l1|l2) literal in a product ring"
                )))
            }
        },
        Ast::Pair(a, b) => match node {
            Node::Product(x, y) => {
                let ea = eval(x, a)?;
                let eb = eval(y, b)?;
                ea + x.size() * eb
            }
            Node::Trunc { base, .. } => eval(base, ast)?,
            Node::Field(_) => {
                return Err(RingError::Malformed(
                    "(l1|l2) literal outside a product ring".into(),
                ))
            }
        },
    })
}

pub fn parse_elem(ring: &Ring, s: &str) -> Result<Elem, RingError> {
    let mut lx = Lexer::new(s);
    let ast = expr(&mut lx)?;
    if !lx.done() {
        return Err(lx.error("trailing input"));
    }
    eval_in(ring, ring.node(), &ast)
}

/// Matrix literal: rows separated by `;`, entries by `,`.
pub fn parse_matrix(ring: &Ring, s: &str) -> Result<Vec<Vec<Elem>>, RingError> {
    let rows: Vec<Vec<Elem>> = split_top(s, ';')
        .iter()
        .map(|row| {
            split_top(row, ',')
                .iter()
                .map(|e| parse_elem(ring, e))
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<_, _>>()?;
    let n = rows.len();
    if n == 0 || rows.iter().any(|r| r.len() != n) {
        return Err(RingError::Malformed(format!(
            "matrix literal {s:?} is not square"
        )));
    }
    Ok(rows)
}

/// Splits at `sep` outside parentheses.
fn split_top(s: &str, sep: char) -> Vec<String> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    for c in s.chars() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            _ => {}
        }
        if c == sep && depth == 0 {
            out.push(std::mem::take(&mut cur));
        } else {
            cur.push(c);
        }
    }
    out.push(cur);
    out.into_iter().map(|s| s.trim().to_string()).collect()
}

pub fn format_matrix(ring: &Ring, m: &[Vec<Elem>]) -> String {
    m.iter()
        .map(|r| {
            r.iter()
                .map(|&e| ring.format(e))
                .collect::<Vec<_>>()
                .join(",")
        })
        .collect::<Vec<_>>()
        .join(";")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ring_specs() {
        assert_eq!(make_ring("F(2)").unwrap().size(), 2);
        assert_eq!(make_ring("F(3,2)").unwrap().size(), 9);
        assert_eq!(make_ring("F(2)[e]/e^2").unwrap().size(), 4);
        assert_eq!(make_ring("(F(3,3))x(F(3,3))").unwrap().size(), 729);
        assert_eq!(make_ring("F(2,2)[e]/e^2").unwrap().size(), 16);
        assert!(matches!(make_ring("F(4)"), Err(RingError::NotPrime(4))));
        assert!(make_ring("F(2)[e]/f^2").is_err());
        assert!(make_ring("F(2)xF(3)").is_err());
    }

    #[test]
    fn literals_round_trip() {
        for spec in ["F(5)", "F(3,2)", "F(2,2)[e]/e^2", "F(3)[a]/a^3", "F(3)xF(3,2)"] {
            let r = make_ring(spec).unwrap();
            for a in r.elements() {
                let s = r.format(a);
                assert_eq!(parse_elem(&r, &s).unwrap(), a, "{spec}: {s}");
            }
        }
    }

    #[test]
    fn matrices() {
        let r = make_ring("F(2)[e]/e^2").unwrap();
        let m = parse_matrix(&r, "1,1;0,1+e").unwrap();
        assert_eq!(format_matrix(&r, &m), "1,1;0,e+1");
        assert!(parse_matrix(&r, "1,1;0").is_err());
    }
}
