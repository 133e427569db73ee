//! `springer`: command-line front end for the verification suites and the
//! individual computations.

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use springer_core::d4cheval::descent::{self, DescentData};
use springer_core::matrings::centralizer::{
    centralizer_points, find_noncommuting_pair, lie_centralizer, Action, DEFAULT_BUDGET,
};
use springer_core::matrings::{
    format_matrix, make_ring, parse_elem, parse_matrix, Flavor, GroupElement, Ring, RingAuto,
};
use springer_core::primes::{classification_table, springer_exists, Characteristic, Isogeny, RootDatum};
use springer_core::report::{CheckRecord, SuiteReport, VerdictReport};
use springer_core::rootdata::{fold, parse_root_system, DiagramAutomorphism};
use springer_core::springer::{
    bijection_check, kawanaka_check, recurrence_residuals, solve_quasisplit, verify_centralizer_match,
    verify_equivariance, Descent, KawanakaContext, QuasiSplitOutcome, SpringerCoefficients,
};
use springer_core::scalar::Arith;
use springer_core::suites;

#[derive(Parser)]
#[command(name = "springer", version, about = "Exact checks for Springer isomorphisms")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Emit JSON (the default).
    #[arg(long, global = true, conflicts_with = "text")]
    json: bool,
    /// Emit plain text.
    #[arg(long, global = true)]
    text: bool,
    /// Seed for sampled checks.
    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,
    /// Cap on the number of candidates an enumeration may visit.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    budget: u128,
    /// Attach wall-clock times to suite reports (breaks byte-reproducibility).
    #[arg(long, global = true)]
    timings: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Bad, torsion and singular primes of a root system.
    Classify { root_system: String },
    /// The prime table for every supported type.
    Table1,
    /// Fold a root system along a diagram automorphism.
    Fold {
        root_system: String,
        /// id, ord2, rot3 or lambda.
        #[arg(long)]
        auto: String,
    },
    /// Whether a Springer isomorphism exists in characteristic p.
    Exists {
        root_system: String,
        /// sc, adj or extra weights such as "1,0,0".
        isogeny: String,
        /// 0 or a prime.
        p: u64,
    },
    /// Centralizer of a group element over a finite ring.
    Centralizer {
        /// e.g. SL2, PGL3, GL2.
        #[arg(long)]
        group: String,
        #[arg(long)]
        ring: String,
        /// Rows separated by ';', entries by ','.
        #[arg(long)]
        elem: String,
    },
    /// The D4 commutator-algebra suite.
    VerifyD4,
    /// Verify a type-A Springer map for SL_{n+1}.
    VerifySpringer {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        ring: String,
        #[arg(long, requires = "ext")]
        quasisplit: bool,
        #[arg(long)]
        ext: Option<String>,
        /// Comma-separated a1,...,an.
        #[arg(long)]
        coeffs: Option<String>,
    },
    /// Solve descent coefficient equations.
    SolveDescent {
        #[arg(long = "type", value_enum)]
        kind: DescentType,
        #[arg(long = "case", value_enum)]
        case: DescentCaseArg,
        /// Type A: rank n of SL_{n+1}.
        #[arg(long, default_value_t = 2)]
        n: usize,
        /// Type A: base field.
        #[arg(long, default_value = "F(3)")]
        ring: String,
        /// D4: residue characteristic.
        #[arg(long, default_value_t = 3)]
        p: u32,
    },
    /// Every verification suite.
    VerifyAll,
}

#[derive(Clone, Copy, ValueEnum)]
enum DescentType {
    A,
    D4,
}

#[derive(Clone, Copy, ValueEnum)]
enum DescentCaseArg {
    Split,
    C2,
    C3,
    S3,
    /// S3 data on the cyclic field of degree 6.
    S3Sextic,
}

/// Invalid input; reported with exit code 2.
struct Failure(String);

type Outcome = Result<Output, Failure>;

struct Output {
    json: Value,
    text: String,
    passed: bool,
}

impl Output {
    fn data(json: Value, text: String) -> Self {
        Output { json, text, passed: true }
    }

    fn verdict(report: VerdictReport) -> Self {
        Output {
            text: report.to_text(),
            passed: report.passed,
            json: serde_json::to_value(&report).expect("reports serialize"),
        }
    }
}

fn usage(e: impl std::fmt::Display) -> Failure {
    Failure(e.to_string())
}

fn set_text(s: &std::collections::BTreeSet<u64>) -> String {
    if s.is_empty() {
        "none".into()
    } else {
        s.iter().map(u64::to_string).collect::<Vec<_>>().join(",")
    }
}

fn classify(name: &str) -> Outcome {
    let rs = parse_root_system(name).map_err(usage)?;
    let rep = classification_table(&rs);
    let text = format!(
        "{}: bad {}; torsion {}; singular {}\n",
        rep.root_system,
        set_text(&rep.bad),
        set_text(&rep.torsion),
        set_text(&rep.singular)
    );
    Ok(Output::data(serde_json::to_value(&rep).unwrap(), text))
}

fn table1() -> Outcome {
    let mut rows = Vec::new();
    let mut text = format!("{:<6}{:<10}{:<10}{}\n", "type", "bad", "torsion", "singular");
    for name in suites::TABLE_TYPES {
        let rs = parse_root_system(name).map_err(usage)?;
        let rep = classification_table(&rs);
        text.push_str(&format!(
            "{:<6}{:<10}{:<10}{}\n",
            name,
            set_text(&rep.bad),
            set_text(&rep.torsion),
            set_text(&rep.singular)
        ));
        rows.push(json!({
            "type": name,
            "bad": rep.bad,
            "torsion": rep.torsion,
            "singular": rep.singular,
        }));
    }
    Ok(Output::data(Value::Array(rows), text))
}

fn fold_cmd(name: &str, auto: &str) -> Outcome {
    let rs = parse_root_system(name).map_err(usage)?;
    let a = DiagramAutomorphism::named(&rs, auto).map_err(usage)?;
    let f = fold(&rs, &a).map_err(usage)?;
    let label = f
        .identified
        .map_or_else(|| "unidentified".to_string(), |t| t.to_string());
    let text = format!(
        "{label}\norbits {:?}; non-reduced {}; kernel order {}\n",
        f.orbits, f.non_reduced, f.kernel_order
    );
    let mut json = serde_json::to_value(&f).unwrap();
    json["image_type"] = json!(label);
    Ok(Output::data(json, text))
}

fn exists(name: &str, isogeny: &str, p: u64) -> Outcome {
    let rs = parse_root_system(name).map_err(usage)?;
    let iso: Isogeny = isogeny.parse().map_err(usage)?;
    let rd = RootDatum::new(rs, iso).map_err(usage)?;
    let ch = if p == 0 {
        Characteristic::Zero
    } else {
        Characteristic::prime(p).map_err(usage)?
    };
    let d = springer_exists(&rd, ch);
    let text = format!(
        "{}\n{}",
        if d.exists { "exists" } else { "does not exist" },
        d.reasons.iter().map(|r| format!("  {r}\n")).collect::<String>()
    );
    Ok(Output::data(serde_json::to_value(&d).unwrap(), text))
}

fn parse_group(s: &str) -> Result<(Flavor, usize), Failure> {
    let split = s
        .find(|c: char| c.is_ascii_digit())
        .ok_or_else(|| usage(format!("group {s:?} needs a size, e.g. SL2")))?;
    let flavor: Flavor = s[..split].to_ascii_uppercase().parse().map_err(usage)?;
    let n: usize = s[split..].parse().map_err(usage)?;
    Ok((flavor, n))
}

fn centralizer(group: &str, ring: &str, elem: &str, budget: u128) -> Outcome {
    let (flavor, n) = parse_group(group)?;
    let r = make_ring(ring).map_err(usage)?;
    let m = parse_matrix(&r, elem).map_err(usage)?;
    if m.len() != n {
        return Err(usage(format!("{group} needs a {n}x{n} matrix")));
    }
    let g = GroupElement::new(&r, flavor, m).map_err(usage)?;
    let z = centralizer_points(&r, &g, budget).map_err(usage)?;
    let pair = find_noncommuting_pair(&r, &z);
    let fmt = |x: &GroupElement| format_matrix(&r, &x.matrix);
    let lie = if r.is_field() {
        lie_centralizer(&r, Action::Adjoint(&g.matrix), flavor.lie())
            .ok()
            .map(|l| l.dim)
    } else {
        None
    };
    let listed: Option<Vec<String>> = (z.len() <= 64).then(|| z.iter().map(fmt).collect());
    let text = format!(
        "{group} over {}: {} points, {}\n",
        r.spec(),
        z.len(),
        if pair.is_none() { "commutative" } else { "non-commutative" }
    );
    Ok(Output::data(
        json!({
            "group": group,
            "ring": r.spec(),
            "element": fmt(&g),
            "points": z.len(),
            "commutative": pair.is_none(),
            "witness": pair.as_ref().map(|(a, b)| [fmt(a), fmt(b)]),
            "lie_dimension": lie,
            "elements": listed,
        }),
        text,
    ))
}

fn verify_d4(seed: u64) -> Outcome {
    Ok(Output::verdict(VerdictReport::new("verify-d4", seed, vec![suites::d4()])))
}

fn parse_coeffs(r: &Ring, list: &str) -> Result<Vec<u32>, Failure> {
    list.split(',').map(|t| parse_elem(r, t.trim()).map_err(usage)).collect()
}

fn verify_springer(
    n: usize,
    ring: &str,
    ext: Option<&str>,
    coeffs: Option<&str>,
    g: &Global,
) -> Outcome {
    if n == 0 {
        return Err(usage("--n must be at least 1"));
    }
    let base = make_ring(ring).map_err(usage)?;
    let anchor = "type-a-springer";
    let mut checks = Vec::new();
    let c = match ext {
        None => {
            let a = match coeffs {
                Some(list) => parse_coeffs(&base, list)?,
                None => {
                    let mut a = vec![0; n];
                    a[0] = base.one();
                    a
                }
            };
            if a.len() != n {
                return Err(usage(format!("expected {n} coefficients")));
            }
            SpringerCoefficients::new(&base, a).map_err(usage)?
        }
        Some(spec) => {
            let e = make_ring(spec).map_err(usage)?;
            let (bd, ed) = match (base.field_data(), e.field_data()) {
                (Some(b), Some(x)) if b.p == x.p && x.k == 2 * b.k => (b.clone(), x.clone()),
                _ => return Err(usage("--ext must be the quadratic extension of --ring")),
            };
            let _ = ed;
            let sigma = RingAuto::Frobenius(bd.k);
            match coeffs {
                Some(list) => {
                    let a = parse_coeffs(&e, list)?;
                    if a.len() != n {
                        return Err(usage(format!("expected {n} coefficients")));
                    }
                    let mut c = SpringerCoefficients::new(&e, a).map_err(usage)?;
                    c.descent = Some(Descent { base: base.spec(), sigma });
                    c
                }
                None => match solve_quasisplit(n, &base.spec(), &e, &sigma, e.one()).map_err(usage)? {
                    QuasiSplitOutcome::Solved(c) => c,
                    QuasiSplitOutcome::Obstructed(o) => {
                        checks.push(CheckRecord::new("quasisplit-solve", anchor, false, json!(o)));
                        let suite = SuiteReport::new("verify-springer", checks);
                        return Ok(Output::verdict(VerdictReport::new("verify-springer", g.seed, vec![suite])));
                    }
                },
            }
        }
    };
    checks.push(CheckRecord::new(
        "coefficients",
        anchor,
        c.valid,
        serde_json::to_value(c.summary()).unwrap(),
    ));
    if let Some(d) = &c.descent {
        let res = recurrence_residuals(&c.ring, &d.sigma, &c.a);
        checks.push(CheckRecord::new(
            "recurrence",
            anchor,
            res.iter().all(|&x| x == 0),
            json!({ "residuals": res.iter().map(|&x| c.ring.format(x)).collect::<Vec<_>>() }),
        ));
    }
    let eq = verify_equivariance(&c, suites::SAMPLES, g.seed);
    checks.push(CheckRecord::new("equivariance", anchor, eq.passed, json!(eq)));
    if c.ring.is_field() {
        let b = bijection_check(&c, suites::SAMPLES, g.seed);
        checks.push(CheckRecord::new("bijection", anchor, b.passed, json!(b)));
        match verify_centralizer_match(&c, g.budget) {
            Ok(m) => checks.push(CheckRecord::new("centralizer-match", anchor, m.passed, json!(m))),
            Err(e) => checks.push(CheckRecord::error("centralizer-match", anchor, e)),
        }
        if c.size() <= 3 {
            let lambda: Vec<i64> = (0..c.size()).map(|i| c.n as i64 - 2 * i as i64).collect();
            let ctx = KawanakaContext::new(lambda).expect("weights n, n-2, ... are dominant");
            match kawanaka_check(&c, &ctx) {
                Ok(v) => checks.push(CheckRecord::new("kawanaka", anchor, v.passed, json!(v))),
                Err(e) => checks.push(CheckRecord::error("kawanaka", anchor, e)),
            }
        }
    }
    let suite = SuiteReport::new("verify-springer", checks);
    Ok(Output::verdict(VerdictReport::new("verify-springer", g.seed, vec![suite])))
}

fn solve_descent(kind: DescentType, case: DescentCaseArg, n: usize, ring: &str, p: u32) -> Outcome {
    match kind {
        DescentType::D4 => {
            let data = match case {
                DescentCaseArg::C2 => DescentData::cyclic2(p),
                DescentCaseArg::C3 => DescentData::cyclic3(p),
                DescentCaseArg::S3 => DescentData::s3(p),
                DescentCaseArg::S3Sextic => DescentData::s3_on_cyclic_field(p),
                DescentCaseArg::Split => return Err(usage("D4 descent cases are c2, c3, s3, s3-sextic")),
            }
            .map_err(usage)?;
            match descent::solve_default(&data) {
                Ok(c) => {
                    let text = format!("{:?} over {}: {}\n", c.kind, c.ring, c.coefficients.join(", "));
                    Ok(Output {
                        passed: c.passed(),
                        json: serde_json::to_value(&c).unwrap(),
                        text,
                    })
                }
                Err(e) => {
                    let obstruction = descent::s3_obstruction(&data).ok();
                    Ok(Output {
                        passed: false,
                        text: format!("{e}\n"),
                        json: json!({ "error": e.to_string(), "obstruction": obstruction }),
                    })
                }
            }
        }
        DescentType::A => {
            let base = make_ring(ring).map_err(usage)?;
            let fd = base
                .field_data()
                .ok_or_else(|| usage("type A descent needs a finite field"))?
                .clone();
            match case {
                DescentCaseArg::Split => {
                    let c = springer_core::springer::solve_split(n, &base, base.one(), &[]).map_err(usage)?;
                    let s = c.summary();
                    let text = format!("{}\n", s.coefficients.join(", "));
                    Ok(Output::data(serde_json::to_value(s).unwrap(), text))
                }
                DescentCaseArg::C2 => {
                    let ext = Ring::field(fd.p, 2 * fd.k).map_err(usage)?;
                    let sigma = RingAuto::Frobenius(fd.k);
                    match solve_quasisplit(n, &base.spec(), &ext, &sigma, ext.one()).map_err(usage)? {
                        QuasiSplitOutcome::Solved(c) => {
                            let s = c.summary();
                            let text = format!("{} over {}\n", s.coefficients.join(", "), s.ring);
                            Ok(Output::data(serde_json::to_value(s).unwrap(), text))
                        }
                        QuasiSplitOutcome::Obstructed(o) => Ok(Output {
                            passed: false,
                            text: format!("obstructed at a{}\n", o.index),
                            json: json!({ "obstruction": o }),
                        }),
                    }
                }
                _ => Err(usage("type A descent cases are split and c2")),
            }
        }
    }
}

fn verify_all(g: &Global) -> Outcome {
    Ok(Output::verdict(VerdictReport::new(
        "verify-all",
        g.seed,
        suites::run_all(g.seed, g.timings),
    )))
}

fn run(cli: &Cli) -> Outcome {
    let g = &cli.global;
    match &cli.command {
        Command::Classify { root_system } => classify(root_system),
        Command::Table1 => table1(),
        Command::Fold { root_system, auto } => fold_cmd(root_system, auto),
        Command::Exists { root_system, isogeny, p } => exists(root_system, isogeny, *p),
        Command::Centralizer { group, ring, elem } => centralizer(group, ring, elem, g.budget),
        Command::VerifyD4 => verify_d4(g.seed),
        Command::VerifySpringer { n, ring, quasisplit, ext, coeffs } => {
            let ext = if *quasisplit { ext.as_deref() } else { None };
            verify_springer(*n, ring, ext, coeffs.as_deref(), g)
        }
        Command::SolveDescent { kind, case, n, ring, p } => solve_descent(*kind, *case, *n, ring, *p),
        Command::VerifyAll => verify_all(g),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            if cli.global.text {
                print!("{}", out.text);
            } else {
                println!("{}", serde_json::to_string_pretty(&out.json).expect("serializable"));
            }
            if out.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
