//! Descent of the coefficients `a1..a4` of `a1E1 + a2E2 + a3E3 + a4E4` to
//! outer forms of `D4` split by a Galois algebra.
//!
//! A descent datum is a finite group of pairs (ring automorphism `g`, Lie
//! map `f(g)`); a vector `v` over the algebra descends when
//! `f(g)(g(v)) = v` for every pair.

use std::collections::BTreeSet;

use serde::Serialize;

use super::{D4Error, LieU, Triality, Vector};
use crate::linalg::{mat_mul, mat_vec, Mat};
use crate::matrings::{make_ring, Elem, Ring, RingAuto};
use crate::scalar::Arith;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum DescentKind {
    /// `Z/2`, generator acting through `λ`.
    Cyclic2,
    /// `Z/3`, generator acting through `μ`.
    Cyclic3,
    /// `S3` generated by `σ ↦ μ` and `τ ↦ λ`.
    S3,
}

#[derive(Debug, Clone)]
pub struct Generator {
    pub name: &'static str,
    pub auto: RingAuto,
    pub lie: Triality,
}

/// A ring automorphism as its table of images, paired with its 12x12 action on `Lie U`.
pub type GroupPair = (Vec<Elem>, Mat<Elem>);

/// A Galois algebra with the images of its generators in the triality group.
#[derive(Debug, Clone)]
pub struct DescentData {
    pub kind: DescentKind,
    pub ring: Ring,
    pub generators: Vec<Generator>,
}

impl DescentData {
    /// `F(p,2)` over `F_p` with Frobenius acting through `λ`.
    pub fn cyclic2(p: u32) -> Result<Self, D4Error> {
        Ok(DescentData {
            kind: DescentKind::Cyclic2,
            ring: make_ring(&format!("F({p},2)"))?,
            generators: vec![Generator {
                name: "tau",
                auto: RingAuto::Frobenius(1),
                lie: Triality::Lambda,
            }],
        })
    }

    /// `F(p,3)` over `F_p` with Frobenius acting through `μ`.
    pub fn cyclic3(p: u32) -> Result<Self, D4Error> {
        Ok(DescentData {
            kind: DescentKind::Cyclic3,
            ring: make_ring(&format!("F({p},3)"))?,
            generators: vec![Generator {
                name: "sigma",
                auto: RingAuto::Frobenius(1),
                lie: Triality::Mu,
            }],
        })
    }

    /// The `S3`-Galois algebra `F(p,3) × F(p,3)` over `F_p`:
    /// `σ(x, y) = (Fx, F⁻¹y)` and `τ(x, y) = (y, x)`.
    pub fn s3(p: u32) -> Result<Self, D4Error> {
        Ok(DescentData {
            kind: DescentKind::S3,
            ring: make_ring(&format!("F({p},3)xF({p},3)"))?,
            generators: vec![
                Generator {
                    name: "sigma",
                    auto: RingAuto::OnFactors(
                        Box::new(RingAuto::Frobenius(1)),
                        Box::new(RingAuto::Frobenius(2)),
                    ),
                    lie: Triality::Mu,
                },
                Generator {
                    name: "tau",
                    auto: RingAuto::Swap,
                    lie: Triality::Lambda,
                },
            ],
        })
    }

    /// `F(p,6)` with `σ = F²` and `τ = F³`.  Its Galois group is cyclic, so
    /// these assignments do not define an `S3` action.
    pub fn s3_on_cyclic_field(p: u32) -> Result<Self, D4Error> {
        Ok(DescentData {
            kind: DescentKind::S3,
            ring: make_ring(&format!("F({p},6)"))?,
            generators: vec![
                Generator {
                    name: "sigma",
                    auto: RingAuto::Frobenius(2),
                    lie: Triality::Mu,
                },
                Generator {
                    name: "tau",
                    auto: RingAuto::Frobenius(3),
                    lie: Triality::Lambda,
                },
            ],
        })
    }

    fn generator(&self, name: &str) -> Result<&Generator, D4Error> {
        self.generators
            .iter()
            .find(|g| g.name == name)
            .ok_or_else(|| D4Error::InvalidData(format!("no generator {name}")))
    }

    fn act(&self, auto: &RingAuto, a: Elem) -> Elem {
        self.ring.apply_auto(auto, a)
    }

    /// Elements fixed by every generator.
    pub fn base_ring(&self) -> Vec<Elem> {
        self.ring
            .elements()
            .filter(|&a| self.generators.iter().all(|g| self.act(&g.auto, a) == a))
            .collect()
    }

    /// The group generated by the pairs, closed under composition.
    pub fn pair_group(&self) -> Result<Vec<GroupPair>, D4Error> {
        let lie = LieU::new(&self.ring)?;
        let gens: Vec<GroupPair> = self
            .generators
            .iter()
            .map(|g| {
                let perm = self.ring.elements().map(|a| self.act(&g.auto, a)).collect();
                Ok((perm, lie.triality(g.lie)?))
            })
            .collect::<Result<_, D4Error>>()?;
        let id = (
            self.ring.elements().collect::<Vec<_>>(),
            crate::linalg::identity(&self.ring, 12),
        );
        let mut seen = BTreeSet::new();
        seen.insert(id.clone());
        let mut frontier = vec![id];
        while let Some(x) = frontier.pop() {
            for g in &gens {
                let perm: Vec<Elem> = x.0.iter().map(|&a| g.0[a as usize]).collect();
                let m = mat_mul(&self.ring, &g.1, &x.1);
                let y = (perm, m);
                if seen.len() > 1000 {
                    return Err(D4Error::InvalidData("pair group too large".into()));
                }
                if seen.insert(y.clone()) {
                    frontier.push(y);
                }
            }
        }
        Ok(seen.into_iter().collect())
    }
}

/// Solved descent coefficients with their verification.
#[derive(Debug, Clone, Serialize)]
pub struct DescentCase {
    pub kind: DescentKind,
    pub ring: String,
    pub coefficients: [String; 4],
    #[serde(skip)]
    pub raw: [Elem; 4],
    pub group_order: usize,
    pub a1_unit_in_base: bool,
    pub relations_hold: bool,
    pub descent_equation_holds: bool,
}

impl DescentCase {
    pub fn passed(&self) -> bool {
        self.a1_unit_in_base && self.relations_hold && self.descent_equation_holds
    }
}

/// Why a descent system has no solution.
#[derive(Debug, Clone, Serialize)]
pub struct Obstruction {
    pub ring: String,
    /// Order of the group generated by the pairs; 6 for a genuine `S3` datum.
    pub group_order: usize,
    /// Size of the subring fixed by `τσ`.
    pub fixed_ring_size: usize,
    /// Distinct values of `x + σx + σ²x` on that subring.
    pub trace_values: Vec<String>,
    pub solvable: bool,
}

fn half(ring: &Ring) -> Result<Elem, D4Error> {
    ring.inv(&ring.from_i64(2)).ok_or(D4Error::TwoNotInvertible)
}

fn orbit_trace(data: &DescentData, sigma: &RingAuto, x: Elem) -> Elem {
    let r = &data.ring;
    let s1 = data.act(sigma, x);
    let s2 = data.act(sigma, s1);
    r.add(&r.add(&x, &s1), &s2)
}

fn tau_sigma(data: &DescentData) -> Result<RingAuto, D4Error> {
    let sigma = data.generator("sigma")?.auto.clone();
    let tau = data.generator("tau")?.auto.clone();
    Ok(RingAuto::Compose(vec![tau, sigma]))
}

/// Solves for `(a1, a2, a3, a4)` given `a1` (a unit of the base) and `a4`
/// (in the base).  `free` is the arbitrary choice of `a2` in the cyclic-2
/// case and is ignored otherwise.
pub fn solve(
    data: &DescentData,
    a1: Elem,
    a4: Elem,
    free: Elem,
) -> Result<DescentCase, D4Error> {
    let r = &data.ring;
    let base = data.base_ring();
    if !base.contains(&a1) || !r.is_unit(a1) {
        return Err(D4Error::InvalidData("a1 must be a unit of the base".into()));
    }
    if !base.contains(&a4) {
        return Err(D4Error::InvalidData("a4 must lie in the base".into()));
    }
    let target = r.neg(&r.mul(&half(r)?, &a1));
    let (a2, a3) = match data.kind {
        DescentKind::Cyclic2 => {
            let tau = &data.generator("tau")?.auto;
            (free, data.act(tau, free))
        }
        DescentKind::Cyclic3 | DescentKind::S3 => {
            let sigma = data.generator("sigma")?.auto.clone();
            let domain: Vec<Elem> = match data.kind {
                DescentKind::S3 => {
                    let ts = tau_sigma(data)?;
                    r.elements().filter(|&x| data.act(&ts, x) == x).collect()
                }
                _ => r.elements().collect(),
            };
            // trace surjectivity: scale any element of unit trace
            let c = domain
                .iter()
                .copied()
                .find(|&x| {
                    let t = orbit_trace(data, &sigma, x);
                    base.contains(&t) && r.is_unit(t)
                })
                .ok_or_else(|| {
                    D4Error::NoSolution("the trace map to the base is zero".into())
                })?;
            let t = orbit_trace(data, &sigma, c);
            let a3 = r.mul(&c, &r.mul(&r.inv(&t).unwrap(), &target));
            (data.act(&sigma, a3), a3)
        }
    };
    let raw = [a1, a2, a3, a4];
    verify(data, raw)
}

/// Default solve: `a1 = 1`, `a4 = 0`, and the field generator as the free
/// choice.
pub fn solve_default(data: &DescentData) -> Result<DescentCase, D4Error> {
    let r = &data.ring;
    let free = r.field_data().map_or(r.one(), |f| f.generator());
    solve(data, r.one(), r.zero(), free)
}

/// Re-checks the displayed relations and the descent equation itself.
pub fn verify(data: &DescentData, a: [Elem; 4]) -> Result<DescentCase, D4Error> {
    let r = &data.ring;
    let base = data.base_ring();
    let h = half(r)?;
    let mut relations_hold = true;
    for g in &data.generators {
        let s = |x: Elem| data.act(&g.auto, x);
        let ok = match g.lie {
            Triality::Lambda => {
                a[0] == s(a[0]) && a[1] == s(a[2]) && a[2] == s(a[1]) && a[3] == s(a[3])
            }
            Triality::Mu => {
                let rhs3 = r.sub(
                    &r.sub(&r.neg(&r.mul(&h, &s(a[0]))), &s(a[1])),
                    &s(a[2]),
                );
                a[0] == s(a[0]) && a[1] == s(a[2]) && a[2] == rhs3 && a[3] == s(a[3])
            }
        };
        relations_hold &= ok;
    }
    let lie = LieU::new(r)?;
    let e = lie.e_basis()?;
    let mut v: Vector<Elem> = lie.zero();
    for (ai, ei) in a.iter().zip(&e) {
        for (x, y) in v.iter_mut().zip(ei) {
            *x = r.add(x, &r.mul(ai, y));
        }
    }
    let group = data.pair_group()?;
    let descent_equation_holds = group.iter().all(|(perm, m)| {
        let moved: Vec<Elem> = v.iter().map(|&x| perm[x as usize]).collect();
        mat_vec(r, m, &moved) == v
    });
    Ok(DescentCase {
        kind: data.kind,
        ring: r.spec(),
        coefficients: a.map(|x| r.format(x)),
        raw: a,
        group_order: group.len(),
        a1_unit_in_base: base.contains(&a[0]) && r.is_unit(a[0]),
        relations_hold,
        descent_equation_holds,
    })
}

/// Inspects the `S3` system on `data`: the generated group and the trace
/// values available on `(R')^{τσ}`.
pub fn s3_obstruction(data: &DescentData) -> Result<Obstruction, D4Error> {
    let r = &data.ring;
    let sigma = data.generator("sigma")?.auto.clone();
    let ts = tau_sigma(data)?;
    let fixed: Vec<Elem> = r.elements().filter(|&x| data.act(&ts, x) == x).collect();
    let traces: BTreeSet<Elem> = fixed.iter().map(|&x| orbit_trace(data, &sigma, x)).collect();
    let group_order = data.pair_group()?.len();
    let solvable = traces.iter().any(|&t| r.is_unit(t));
    Ok(Obstruction {
        ring: r.spec(),
        group_order,
        fixed_ring_size: fixed.len(),
        trace_values: traces.iter().map(|&t| r.format(t)).collect(),
        solvable,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic2_zero_choice() {
        let d = DescentData::cyclic2(3).unwrap();
        let c = solve(&d, 1, 1, 0).unwrap();
        assert_eq!(c.raw[2], 0);
        assert!(c.passed(), "{c:?}");
        assert_eq!(c.group_order, 2);
        let c = solve_default(&d).unwrap();
        assert!(c.passed(), "{c:?}");
    }

    #[test]
    fn cyclic3_trace_equation() {
        let d = DescentData::cyclic3(3).unwrap();
        let c = solve_default(&d).unwrap();
        assert!(c.passed(), "{c:?}");
        assert_eq!(c.group_order, 3);
    }

    #[test]
    fn s3_over_product_algebra() {
        let d = DescentData::s3(3).unwrap();
        assert_eq!(d.base_ring().len(), 3);
        let c = solve_default(&d).unwrap();
        assert!(c.passed(), "{c:?}");
        assert_eq!(c.group_order, 6);
    }

    #[test]
    fn s3_over_cyclic_sextic_field_is_obstructed() {
        let d = DescentData::s3_on_cyclic_field(3).unwrap();
        let o = s3_obstruction(&d).unwrap();
        assert!(!o.solvable);
        assert_eq!(o.fixed_ring_size, 3);
        assert_ne!(o.group_order, 6);
        assert!(matches!(solve_default(&d), Err(D4Error::NoSolution(_))));
    }

    #[test]
    fn wrong_coefficient_fails_verification() {
        let d = DescentData::cyclic3(3).unwrap();
        let mut c = solve_default(&d).unwrap().raw;
        c[2] = d.ring.add(&c[2], &1);
        let v = verify(&d, c).unwrap();
        assert!(!v.relations_hold && !v.descent_equation_holds);
    }
}
