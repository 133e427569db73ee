//! The verification suites behind `verify-all`, one per acceptance area.
//!
//! Every suite is deterministic given the seed.  Reference values that come
//! from published tables are stored here as data and compared against the
//! computed values; the computations never read them.

use std::collections::BTreeSet;
use std::time::Instant;

use serde_json::json;

use crate::d4cheval::descent::{self, DescentData};
use crate::d4cheval::{LieU, Triality};
use crate::linalg::{identity, mat_mul};
use crate::matrings::centralizer::DEFAULT_BUDGET;
use crate::matrings::checks::{center_character_check, nilpotent_translate_check, pgl2_char2_suite};
use crate::matrings::{Flavor, Ring, RingAuto};
use crate::primes::{
    alcove_vertex_subsystems, bad_primes, bad_primes_by_coefficients, classification_table,
};
use crate::report::{CheckRecord, SuiteReport};
use crate::rootdata::{
    fold, parabolic_index, parse_root_system, weyl_group_order, weyl_group_order_enumerated,
    weyl_orbit_size, DiagramAutomorphism,
};
use crate::scalar::{Arith, Std};
use crate::springer::{
    bijection_check, commutativity_equivalence_check, corrupt_coefficients, kawanaka_check,
    psi_log_demo, quadratic_extension, recurrence_residuals, solve_quasisplit, solve_split,
    uniqueness_check, verify_centralizer_match, verify_equivariance, KawanakaContext,
    QuasiSplitOutcome, SpringerCoefficients,
};
use crate::{F7, Q};

/// Samples per seeded equivariance run.
pub const SAMPLES: usize = 100;

/// Types covered by the prime tables.
pub const TABLE_TYPES: [&str; 22] = [
    "A1", "A2", "A3", "A4", "A5", "A6", "A7", "B2", "B3", "B4", "B5", "C3", "C4", "C5", "D4",
    "D5", "D6", "E6", "E7", "E8", "F4", "G2",
];

fn table_types() -> impl Iterator<Item = &'static str> {
    TABLE_TYPES.into_iter()
}

fn set(v: &[u64]) -> BTreeSet<u64> {
    v.iter().copied().collect()
}

/// Published bad, torsion and singular primes by type.
pub fn table1_reference(name: &str) -> Option<[BTreeSet<u64>; 3]> {
    let (family, rank) = name.split_at(1);
    let n: u64 = rank.parse().ok()?;
    Some(match family {
        "A" => {
            let m = n + 1;
            let singular: Vec<u64> = (2..=m)
                .filter(|&p| m.is_multiple_of(p) && (2..p).all(|d| p % d != 0))
                .collect();
            [set(&[]), set(&[]), set(&singular)]
        }
        "B" => [set(&[2]), if n >= 3 { set(&[2]) } else { set(&[]) }, set(&[2])],
        "C" => [set(&[2]), set(&[]), set(&[2])],
        "D" => [set(&[2]), set(&[2]), set(&[2])],
        "E" => match n {
            6 => [set(&[2, 3]), set(&[2, 3]), set(&[3])],
            7 => [set(&[2, 3]), set(&[2, 3]), set(&[2])],
            8 => [set(&[2, 3, 5]), set(&[2, 3, 5]), set(&[])],
            _ => return None,
        },
        "F" => [set(&[2, 3]), set(&[2, 3]), set(&[])],
        "G" => [set(&[2, 3]), set(&[2]), set(&[])],
        _ => return None,
    })
}

fn guard<T>(
    id: &str,
    anchor: &str,
    r: Result<T, impl std::fmt::Display>,
    f: impl FnOnce(T) -> CheckRecord,
) -> CheckRecord {
    match r {
        Ok(v) => f(v),
        Err(e) => CheckRecord::error(id, anchor, e),
    }
}

pub fn table1() -> SuiteReport {
    let anchor = "prime-classification";
    let checks = table_types()
        .map(|name| {
            let id = format!("table1-{name}");
            guard(&id, anchor, parse_root_system(name), |rs| {
                let rep = classification_table(&rs);
                let expected = table1_reference(name).expect("listed type");
                let ok = rep.bad == expected[0]
                    && rep.torsion == expected[1]
                    && rep.singular == expected[2]
                    && rep.torsion.is_subset(&rep.bad);
                CheckRecord::new(
                    id.clone(),
                    anchor,
                    ok,
                    json!({
                        "bad": rep.bad, "torsion": rep.torsion, "singular": rep.singular,
                        "expected": { "bad": expected[0], "torsion": expected[1], "singular": expected[2] },
                    }),
                )
            })
        })
        .collect();
    SuiteReport::new("table1", checks)
}

pub fn dual_algorithm() -> SuiteReport {
    let anchor = "bad-primes";
    let checks = table_types()
        .map(|name| {
            let id = format!("bad-primes-agree-{name}");
            guard(&id, anchor, parse_root_system(name), |rs| {
                let by_snf = bad_primes(&rs);
                let by_coeff = bad_primes_by_coefficients(&rs);
                CheckRecord::new(
                    id.clone(),
                    anchor,
                    by_snf == by_coeff,
                    json!({ "subsystem_torsion": by_snf, "highest_root": by_coeff }),
                )
            })
        })
        .collect();
    SuiteReport::new("dual-algorithm", checks)
}

pub fn steinberg_subsystems() -> SuiteReport {
    let anchor = "alcove-vertices";
    let mut checks = Vec::new();
    for name in table_types() {
        let rs = match parse_root_system(name) {
            Ok(rs) => rs,
            Err(e) => {
                checks.push(CheckRecord::error(format!("alcove-{name}"), anchor, e));
                continue;
            }
        };
        for v in alcove_vertex_subsystems(&rs) {
            let n = v.root_torsion_order();
            let nd = v.coroot_torsion_order();
            let ok = v.root_torsion_cyclic()
                && n == v.coefficient.into()
                && nd == v.dual_coefficient.into()
                && v.coefficient % v.dual_coefficient == 0;
            checks.push(CheckRecord::new(
                format!("alcove-{name}-{}", v.index + 1),
                anchor,
                ok,
                json!({
                    "subsystem": v.subsystem_type,
                    "coefficient": v.coefficient,
                    "dual_coefficient": v.dual_coefficient,
                    "root_torsion": v.root_torsion.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
                    "coroot_torsion": v.coroot_torsion.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
                }),
            ));
        }
    }
    SuiteReport::new("steinberg-subsystems", checks)
}

/// Published `|W(E7)/W_{ω_i}|`, 1-based `i`.
pub const E7_PARABOLIC_REFERENCE: [u64; 7] = [
    2 * 9 * 7,
    64 * 9,
    32 * 9 * 7,
    32 * 9 * 5 * 7,
    64 * 9 * 7,
    8 * 27 * 7,
    8 * 7,
];

pub fn weyl_indices() -> SuiteReport {
    let anchor = "weyl-indices";
    let mut checks = Vec::new();
    for (name, expected) in [("E6", 51840u64), ("E7", 2903040)] {
        let id = format!("weyl-order-{name}");
        checks.push(guard(&id, anchor, parse_root_system(name), |rs| {
            let formula = weyl_group_order(&rs);
            // The regular orbit is enumerated only where it fits comfortably
            // in memory; E7 is cross-checked through its fundamental orbits.
            let orbit = (expected <= 100_000).then(|| weyl_group_order_enumerated(&rs));
            CheckRecord::new(
                id.clone(),
                anchor,
                formula == expected && orbit.is_none_or(|o| o == expected),
                json!({ "formula": formula, "regular_orbit": orbit, "expected": expected }),
            )
        }));
    }
    let e7 = parse_root_system("E7").expect("E7 is valid");
    let mut all_even = true;
    for i in 0..7 {
        let id = format!("e7-parabolic-{}", i + 1);
        checks.push(guard(&id, anchor, parabolic_index(&e7, i), |idx| {
            let mut w = vec![0; 7];
            w[i] = 1;
            let orbit = weyl_orbit_size(&e7, &w) as u64;
            all_even &= idx % 2 == 0;
            let reference = E7_PARABOLIC_REFERENCE[i];
            CheckRecord::new(
                id.clone(),
                anchor,
                idx == reference && orbit == idx,
                json!({ "index": idx, "fundamental_orbit": orbit, "reference": reference }),
            )
        }));
    }
    checks.push(CheckRecord::new(
        "e7-parabolic-indices-even",
        anchor,
        all_even,
        json!({ "all_even": all_even }),
    ));
    SuiteReport::new("weyl-indices", checks)
}

pub fn folding() -> SuiteReport {
    let anchor = "folding";
    let mut cases: Vec<(String, &str, String, bool)> = Vec::new();
    for m in 1..=4 {
        cases.push((format!("A{}", 2 * m + 1), "ord2", c_or_b(m + 1), false));
    }
    for m in 1..=3 {
        let target = if m == 1 { "A1".to_string() } else { format!("B{m}") };
        cases.push((format!("A{}", 2 * m), "ord2", target, true));
    }
    for n in 4..=6 {
        cases.push((format!("D{n}"), "ord2", format!("B{}", n - 1), false));
    }
    cases.push(("D4".into(), "rot3", "G2".into(), false));
    cases.push(("E6".into(), "ord2", "F4".into(), false));
    let checks = cases
        .into_iter()
        .map(|(src, auto, target, doubled)| {
            let id = format!("fold-{src}-{auto}");
            let res = parse_root_system(&src)
                .and_then(|rs| DiagramAutomorphism::named(&rs, auto).and_then(|a| fold(&rs, &a)));
            guard(&id, anchor, res, |f| {
                let got = f.identified.map(|t| t.to_string());
                let kernel_ok = if doubled {
                    f.non_reduced && f.kernel_order == 2
                } else {
                    !f.non_reduced && f.kernel_order == 1
                };
                CheckRecord::new(
                    id.clone(),
                    anchor,
                    got.as_deref() == Some(target.as_str()) && kernel_ok && f.images_consistent,
                    json!({
                        "image": got, "expected": target, "non_reduced": f.non_reduced,
                        "kernel_order": f.kernel_order, "images_consistent": f.images_consistent,
                    }),
                )
            })
        })
        .collect();
    SuiteReport::new("folding", checks)
}

/// `C_r`, written `B2` for `r = 2`.
fn c_or_b(r: usize) -> String {
    if r == 2 {
        "B2".into()
    } else {
        format!("C{r}")
    }
}

fn d4_lie_checks<A: Arith>(ctx: &A, label: &str, out: &mut Vec<CheckRecord>) {
    let anchor = "d4-commutator-algebra";
    let l = match LieU::new(ctx) {
        Ok(l) => l,
        Err(e) => {
            out.push(CheckRecord::error(format!("d4-algebra-{label}"), anchor, e));
            return;
        }
    };
    out.push(CheckRecord::new(
        format!("d4-jacobi-{label}"),
        anchor,
        l.jacobi_holds(),
        json!({ "field": label }),
    ));
    let id = format!("d4-fixed-space-{label}");
    out.push(guard(&id, anchor, l.fixed_space_matches(), |(dim, same)| {
        CheckRecord::new(id.clone(), anchor, dim == 4 && same, json!({ "dimension": dim, "equals_e_span": same }))
    }));
    for t in [Triality::Lambda, Triality::Mu] {
        let id = format!("d4-triality-{t}-{label}");
        out.push(guard(&id, anchor, l.triality_action_matches(t), |ok| {
            CheckRecord::new(id.clone(), anchor, ok, json!({ "automorphism": t.to_string() }))
        }));
    }
    let id = format!("d4-triality-relations-{label}");
    let mats = l.triality(Triality::Lambda).and_then(|a| Ok((a, l.triality(Triality::Mu)?)));
    out.push(guard(&id, anchor, mats, |(lam, mu)| {
        let one = identity(ctx, 12);
        let sq = |m: &_| mat_mul(ctx, m, m);
        let lam2 = sq(&lam) == one;
        let mu3 = mat_mul(ctx, &sq(&mu), &mu) == one;
        let lm = mat_mul(ctx, &lam, &mu);
        let dihedral = sq(&lm) == one;
        CheckRecord::new(
            id.clone(),
            anchor,
            lam2 && mu3 && dihedral,
            json!({ "lambda_squared": lam2, "mu_cubed": mu3, "lambda_mu_squared": dihedral }),
        )
    }));
}

pub fn d4() -> SuiteReport {
    let mut checks = Vec::new();
    d4_lie_checks(&Std::<Q>::new(), "Q", &mut checks);
    d4_lie_checks(&Std::<F7>::new(), "F7", &mut checks);
    let anchor = "d4-descent";
    type Ctor = fn(u32) -> Result<DescentData, crate::d4cheval::D4Error>;
    let cases: [(&str, Ctor); 4] = [
        ("cyclic2-F(3,2)", DescentData::cyclic2),
        ("cyclic3-F(3,3)", DescentData::cyclic3),
        ("s3-F(3,3)xF(3,3)", DescentData::s3),
        ("s3-F(3,6)", DescentData::s3_on_cyclic_field),
    ];
    for (label, make) in cases {
        let id = format!("d4-descent-{label}");
        let res = make(3).and_then(|d| descent::solve_default(&d));
        checks.push(guard(&id, anchor, res, |c| {
            CheckRecord::new(id.clone(), anchor, c.passed(), serde_json::to_value(&c).unwrap())
        }));
    }
    let id = "d4-descent-s3-F(3,6)-obstruction";
    let res = DescentData::s3_on_cyclic_field(3).and_then(|d| descent::s3_obstruction(&d));
    checks.push(guard(id, anchor, res, |o| {
        // Diagnostic: the sextic field carries no S3 action and no unit trace.
        let ok = !o.solvable && o.group_order != 6;
        CheckRecord::new(id, anchor, ok, serde_json::to_value(&o).unwrap())
    }));
    SuiteReport::new("d4", checks)
}

/// `(n, p, k)`: `SL_{n+1}` over `F(p,k)`.
pub const SPRINGER_CASES: [(usize, u32, u32); 6] =
    [(1, 2, 1), (1, 3, 1), (2, 2, 1), (2, 3, 1), (2, 2, 2), (3, 3, 1)];

fn coefficient_choice(f: &Ring, n: usize) -> Vec<u32> {
    // Largest unit as a1 and 1 elsewhere, so higher terms are exercised.
    let a1 = *f.units().last().expect("fields have units");
    let mut a = vec![f.one(); n];
    a[0] = a1;
    a
}

fn springer_case(n: usize, p: u32, k: u32, seed: u64, out: &mut Vec<CheckRecord>) {
    let anchor = "type-a-springer";
    let f = match Ring::field(p, k) {
        Ok(f) => f,
        Err(e) => {
            out.push(CheckRecord::error(format!("springer-field-{p}-{k}"), anchor, e));
            return;
        }
    };
    let q = f.size();
    let tag = format!("n{n}-q{q}");
    let a = coefficient_choice(&f, n);
    let c = match solve_split(n, &f, a[0], &a[1..]) {
        Ok(c) => c,
        Err(e) => {
            out.push(CheckRecord::error(format!("springer-split-{tag}"), anchor, e));
            return;
        }
    };
    let summary = serde_json::to_value(c.summary()).unwrap();
    let b = bijection_check(&c, SAMPLES, seed);
    out.push(CheckRecord::new(
        format!("springer-bijection-{tag}"),
        anchor,
        b.passed,
        json!({ "coefficients": summary, "verdict": b }),
    ));
    let e = verify_equivariance(&c, SAMPLES, seed);
    out.push(CheckRecord::new(format!("springer-equivariance-{tag}"), anchor, e.passed, json!(e)));
    let id = format!("springer-centralizer-match-{tag}");
    out.push(guard(&id, anchor, verify_centralizer_match(&c, DEFAULT_BUDGET), |m| {
        CheckRecord::new(id.clone(), anchor, m.passed, json!(m))
    }));
    let u = uniqueness_check(&f, n);
    out.push(CheckRecord::new(
        format!("springer-uniqueness-{tag}"),
        anchor,
        u.injective && u.recovered,
        json!(u),
    ));
    quasisplit_case(n, p, k, seed, &tag, out);
}

fn quasisplit_case(n: usize, p: u32, k: u32, seed: u64, tag: &str, out: &mut Vec<CheckRecord>) {
    let anchor = "type-a-quasi-split";
    let id = format!("quasisplit-solve-{tag}");
    let solved = quadratic_extension(p, k)
        .map_err(crate::springer::SpringerError::from)
        .and_then(|(base, ext, sigma)| {
            solve_quasisplit(n, &base.spec(), &ext, &sigma, ext.one()).map(|o| (ext, sigma, o))
        });
    let (ext, sigma, c) = match solved {
        Ok((ext, sigma, QuasiSplitOutcome::Solved(c))) => (ext, sigma, c),
        Ok((_, _, QuasiSplitOutcome::Obstructed(o))) => {
            out.push(CheckRecord::new(id, anchor, false, json!(o)));
            return;
        }
        Err(e) => {
            out.push(CheckRecord::error(id, anchor, e));
            return;
        }
    };
    let residuals = recurrence_residuals(&ext, &sigma, &c.a);
    out.push(CheckRecord::new(
        id,
        anchor,
        c.valid && residuals.iter().all(|&x| x == 0),
        json!({ "coefficients": c.summary(), "residuals": residuals.iter().map(|&x| ext.format(x)).collect::<Vec<_>>() }),
    ));
    let e = verify_equivariance(&c, SAMPLES, seed);
    out.push(CheckRecord::new(
        format!("quasisplit-twisted-equivariance-{tag}"),
        anchor,
        e.passed && e.twisted_checked,
        json!(e),
    ));
    for i in 2..=n {
        let id = format!("quasisplit-negative-control-{tag}-a{i}");
        let Some(bad) = corrupt_coefficients(&c, i) else {
            out.push(CheckRecord::new(id, anchor, false, json!({ "error": "no corrupting element" })));
            continue;
        };
        let v = verify_equivariance(&bad, SAMPLES, seed);
        out.push(CheckRecord::new(
            id,
            anchor,
            v.conjugation_failures == 0 && v.twisted_failures > 0,
            json!({ "coefficients": bad.summary(), "twisted_failures": v.twisted_failures }),
        ));
    }
}

pub fn springer_type_a(seed: u64) -> SuiteReport {
    let mut checks = Vec::new();
    for (idx, &(n, p, k)) in SPRINGER_CASES.iter().enumerate() {
        springer_case(n, p, k, seed.wrapping_add(idx as u64), &mut checks);
    }
    let anchor = "type-a-quasi-split";
    for n in [2usize, 3] {
        let id = format!("quasisplit-degenerate-char2-n{n}");
        let f2 = Ring::field(2, 1).expect("F2");
        let res = solve_quasisplit(n, "F(2)", &f2, &RingAuto::Identity, 1);
        checks.push(guard(&id, anchor, res, |o| match o {
            QuasiSplitOutcome::Obstructed(ob) => CheckRecord::new(id.clone(), anchor, ob.index == 2, json!(ob)),
            QuasiSplitOutcome::Solved(c) => {
                CheckRecord::new(id.clone(), anchor, false, json!({ "unexpected_solution": c.summary() }))
            }
        }));
    }
    let f3 = Ring::field(3, 1).expect("F3");
    for (size, expect) in [(2usize, true), (3, false)] {
        let id = format!("psi-log-demo-SL{size}-F3");
        checks.push(guard(&id, "type-a-springer", psi_log_demo(&f3, size), |d| {
            CheckRecord::new(id.clone(), "type-a-springer", d.commutes == expect, json!(d))
        }));
    }
    SuiteReport::new("springer-type-a", checks)
}

pub fn kawanaka() -> SuiteReport {
    let anchor = "kawanaka-filtration";
    let ctx = KawanakaContext::new(vec![1, 0, -1]).expect("dominant cocharacter");
    let mut checks = Vec::new();
    for p in [2u32, 3] {
        let f = Ring::field(p, 1).expect("prime field");
        for a1 in f.units() {
            for a2 in f.elements() {
                let id = format!("kawanaka-F{p}-a1={a1}-a2={a2}");
                let res = SpringerCoefficients::new(&f, vec![a1, a2])
                    .and_then(|c| kawanaka_check(&c, &ctx));
                checks.push(guard(&id, anchor, res, |v| {
                    CheckRecord::new(id.clone(), anchor, v.passed, json!(v))
                }));
            }
        }
    }
    SuiteReport::new("kawanaka", checks)
}

pub fn centralizer_commutativity() -> SuiteReport {
    let mut checks = pgl2_char2_suite();
    let anchor = "centralizer-commutativity";
    let cases: [(Flavor, usize, u32, u32); 9] = [
        (Flavor::SL, 2, 2, 1),
        (Flavor::SL, 2, 3, 1),
        (Flavor::SL, 2, 2, 2),
        (Flavor::SL, 3, 2, 1),
        (Flavor::PGL, 2, 2, 1),
        (Flavor::PGL, 2, 3, 1),
        (Flavor::PGL, 2, 2, 2),
        (Flavor::PGL, 3, 2, 1),
        (Flavor::PGL, 3, 3, 1),
    ];
    for (flavor, size, p, k) in cases {
        let f = Ring::field(p, k).expect("small field");
        let id = format!("commutativity-equivalence-{flavor:?}{size}-{}", f.spec());
        let res = commutativity_equivalence_check(flavor, size, &f, DEFAULT_BUDGET);
        checks.push(guard(&id, anchor, res, |v| {
            CheckRecord::new(id.clone(), anchor, v.passed, json!(v))
        }));
    }
    SuiteReport::new("centralizer-commutativity", checks)
}

pub fn nilpotent_translation() -> SuiteReport {
    let anchor = "nilpotent-translation";
    let checks = [(2usize, 2u32), (3, 3), (4, 2)]
        .into_iter()
        .map(|(n, p)| {
            let id = format!("nilpotent-translation-n{n}-p{p}");
            guard(&id, anchor, nilpotent_translate_check(n, p), |v| {
                CheckRecord::new(id.clone(), anchor, v.passed, json!(v))
            })
        })
        .collect();
    SuiteReport::new("nilpotent-translation", checks)
}

pub fn center_character() -> SuiteReport {
    let anchor = "center-character";
    let mut checks = Vec::new();
    for r in 1..=7usize {
        for p in [2u32, 3, 5, 7] {
            if (r + 1) % p as usize != 0 {
                continue;
            }
            for i in 1..=r {
                let id = format!("center-character-r{r}-p{p}-i{i}");
                checks.push(guard(&id, anchor, center_character_check(r, p, i), |v| {
                    CheckRecord::new(id.clone(), anchor, v.passed, json!(v))
                }));
            }
        }
    }
    SuiteReport::new("center-character", checks)
}

/// Re-runs the seeded computations and compares their serializations.
pub fn determinism(seed: u64) -> SuiteReport {
    let anchor = "determinism";
    let render = || serde_json::to_string(&springer_type_a(seed)).expect("serializable");
    let first = render();
    let second = render();
    let other = serde_json::to_string(&springer_type_a(seed.wrapping_add(1))).unwrap();
    let checks = vec![
        CheckRecord::new(
            "seeded-suite-repeatable",
            anchor,
            first == second,
            json!({ "bytes": first.len() }),
        ),
        CheckRecord::new(
            "seed-is-used",
            anchor,
            first != other,
            json!({ "differs_for_next_seed": first != other }),
        ),
    ];
    SuiteReport::new("determinism", checks)
}

/// Suite names in report order.
pub const SUITE_NAMES: [&str; 12] = [
    "table1",
    "dual-algorithm",
    "steinberg-subsystems",
    "weyl-indices",
    "folding",
    "d4",
    "springer-type-a",
    "kawanaka",
    "centralizer-commutativity",
    "nilpotent-translation",
    "center-character",
    "determinism",
];

pub fn run_suite(name: &str, seed: u64) -> Option<SuiteReport> {
    Some(match name {
        "table1" => table1(),
        "dual-algorithm" => dual_algorithm(),
        "steinberg-subsystems" => steinberg_subsystems(),
        "weyl-indices" => weyl_indices(),
        "folding" => folding(),
        "d4" => d4(),
        "springer-type-a" => springer_type_a(seed),
        "kawanaka" => kawanaka(),
        "centralizer-commutativity" => centralizer_commutativity(),
        "nilpotent-translation" => nilpotent_translation(),
        "center-character" => center_character(),
        "determinism" => determinism(seed),
        _ => return None,
    })
}

/// All suites in order; wall-clock times are attached only on request so
/// that the default report is reproducible byte for byte.
pub fn run_all(seed: u64, timings: bool) -> Vec<SuiteReport> {
    SUITE_NAMES
        .iter()
        .map(|name| {
            let start = Instant::now();
            let mut s = run_suite(name, seed).expect("listed suite");
            if timings {
                s.runtime_ms = Some(start.elapsed().as_millis() as u64);
            }
            s
        })
        .collect()
}
