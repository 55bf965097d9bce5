//! Subcommand implementations. Each returns a JSON result and an exit code.

use gapprin::algnum::{hensel_root, liouville_c7, power_rep, AlgNum, PadicAbs};
use gapprin::autgroup::{
    aut_prime, aut_rational_class, d12_family, determinant_law_holds, normalize_primitive, verify_729, AutElement,
    EnhancedAut, IdentityCheck,
};
use gapprin::exact::parse::{parse_form, parse_poly, parse_rational};
use gapprin::exact::{BinForm, IntMat2, IntPoly};
use gapprin::gap::{self, GapConstants, GapInstance, MobiusRelation, Verdict, C16};
use gapprin::minpair::{self, find_pair, verify_pair, MinimalPair, Minimality};
use gapprin::sweep::run_sweep;
use gapprin::thue::{assign_root_with, census, enumerate_primitive, solution_orbits, RootAssignment, ThueProblem};
use gapprin::Error;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};
use serde_json::{json, Value};

use crate::output::{down, enclosure, envelope, exact, int, pos_up, render, up, Table};
use crate::{Cli, Command, ConstantsCmd, GapCmd, PadicCmd, ThueCmd};

pub const EXIT_OK: u8 = 0;
pub const EXIT_HYPOTHESIS: u8 = 2;
pub const EXIT_PRECISION: u8 = 3;
pub const EXIT_INVARIANT: u8 = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Mode {
    Exact,
    Siegel,
}

pub struct Outcome {
    pub text: String,
    pub code: u8,
    pub message: Option<String>,
}

struct Done {
    result: Value,
    table: Option<Table>,
    code: u8,
}

impl Done {
    fn ok(result: Value) -> Done {
        Done { result, table: None, code: EXIT_OK }
    }
}

type Res<T> = Result<T, Error>;

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Precision(_) => EXIT_PRECISION,
        Error::Invariant(_) => EXIT_INVARIANT,
        _ => EXIT_HYPOTHESIS,
    }
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::Precision(_) => "precision",
        Error::Invariant(_) => "invariant",
        Error::Parse(_) => "parse",
        Error::Hypothesis(_) => "hypothesis",
        _ => "invalid-input",
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Minpair { .. } => "minpair",
        Command::Constants(ConstantsCmd::Arch { .. }) => "constants arch",
        Command::Constants(ConstantsCmd::Padic { .. }) => "constants padic",
        Command::Aut { .. } => "aut",
        Command::Thue(ThueCmd::Enum { .. }) => "thue enum",
        Command::Thue(ThueCmd::Census { .. }) => "thue census",
        Command::Gap(GapCmd::Check { .. }) => "gap check",
        Command::Padic(PadicCmd::Root { .. }) => "padic root",
        Command::D12 { .. } => "d12",
        Command::Sweep => "sweep",
    }
}

pub fn run(cli: &Cli) -> Outcome {
    let name = command_name(&cli.command);
    let config = json!({
        "arguments": std::env::args().skip(1).collect::<Vec<_>>(),
        "format": format!("{:?}", cli.format).to_lowercase(),
        "precisionBits": cli.precision_bits,
        "seed": cli.seed.to_string(),
    });
    let (result, table, code, message) = match dispatch(cli) {
        Ok(d) => (d.result, d.table, d.code, None),
        Err(e) => {
            let r = json!({ "error": { "kind": error_kind(&e), "message": e.to_string() } });
            (r, None, exit_code(&e), Some(e.to_string()))
        }
    };
    let report = envelope(name, config, result);
    Outcome { text: render(cli.format, &report, table), code, message }
}

fn dispatch(cli: &Cli) -> Res<Done> {
    let bits = cli.precision_bits.max(64);
    match &cli.command {
        Command::Minpair { alpha, beta, mode } => cmd_minpair(alpha, beta, *mode),
        Command::Constants(ConstantsCmd::Arch { alpha, beta, mu, c0 }) => cmd_constants_arch(alpha, beta, mu, c0),
        Command::Constants(ConstantsCmd::Padic { form, beta, prime, residue, mu, c0 }) => {
            cmd_constants_padic(form, beta, prime, residue, mu, c0)
        }
        Command::Aut { form } => cmd_aut(form, bits),
        Command::Thue(ThueCmd::Enum { form, m, bound }) => cmd_thue_enum(form, m, bound, bits),
        Command::Thue(ThueCmd::Census { form, m, mu, bound }) => cmd_census(form, m, mu, bound),
        Command::Gap(GapCmd::Check { alpha, beta, pairs, mu, c0, prime, residue }) => {
            cmd_gap_check(alpha, beta, pairs, mu, c0, prime.as_deref(), residue.as_deref())
        }
        Command::Padic(PadicCmd::Root { form, p, r0, digits }) => cmd_padic_root(form, p, r0, *digits),
        Command::D12 { a, b } => cmd_d12(a, b),
        Command::Sweep => cmd_sweep(),
    }
}

fn parse_int(s: &str) -> Res<BigInt> {
    s.trim().parse().map_err(|_| Error::Parse(format!("not an integer: '{s}'")))
}

/// An algebraic number, or `alpha:POLY` for `POLY(α)`.
fn parse_beta(alpha: &AlgNum, s: &str) -> Res<AlgNum> {
    match s.trim().strip_prefix("alpha:") {
        Some(p) => alpha.from_element(&parse_poly(p)?.to_rat()),
        None => AlgNum::parse(s),
    }
}

fn parse_mu(mu: &Option<String>, d: usize) -> Res<BigRational> {
    match mu {
        Some(s) => parse_rational(s),
        None => Ok(gap::default_mu(&BigInt::from(d))),
    }
}

fn parse_fraction(s: &str) -> Res<(BigInt, BigInt)> {
    let (x, y) = s.split_once('/').ok_or_else(|| Error::Parse(format!("expected x/y, got '{s}'")))?;
    Ok((parse_int(x)?, parse_int(y)?))
}

fn parse_pair(s: &str) -> Res<((BigInt, BigInt), (BigInt, BigInt))> {
    let (a, b) = s.split_once(':').ok_or_else(|| Error::Parse(format!("expected x1/y1:x2/y2, got '{s}'")))?;
    Ok((parse_fraction(a)?, parse_fraction(b)?))
}

fn matrix_json(m: &IntMat2) -> Value {
    json!([[m.s.to_string(), m.u.to_string()], [m.t.to_string(), m.v.to_string()]])
}

fn pair_json(pair: &MinimalPair) -> Value {
    json!({
        "P": pair.p.to_string(),
        "Q": pair.q.to_string(),
        "r": pair.r,
        "heights": { "P": int(&pair.p.height()), "Q": int(&pair.q.height()), "max": int(&pair.height) },
        "minimality-mode": pair.minimality,
        "siegelBound": int(&pair.siegel_bound),
        "withinSiegelBound": pair.within_siegel_bound,
        "normalization": "leading coefficient of Q nonnegative, ties broken by lexicographic coefficient order",
    })
}

fn mobius_json(m: &Option<MobiusRelation>) -> Value {
    match m {
        Some(m) => json!({
            "s": int(&m.s), "t": int(&m.t), "u": int(&m.u), "v": int(&m.v), "det": int(&m.det()),
        }),
        None => Value::Null,
    }
}

fn constants_json(c: &GapConstants) -> Value {
    let (small, big) = c.labels();
    let branches: Vec<Value> =
        c.branches.iter().map(|b| json!({ "name": b.name, "value": pos_up(&b.value) })).collect();
    json!({
        "metric": c.metric,
        small: pos_up(&c.small),
        big: pos_up(&c.big),
        "branches": branches,
        "argmax": c.branches[c.argmax].name,
    })
}

fn c16_json(c: &Option<C16>) -> Value {
    match c {
        Some(c) => {
            let branches: Vec<Value> =
                c.branches.iter().map(|b| json!({ "name": b.name, "value": pos_up(&b.value) })).collect();
            json!({
                "C16": pos_up(&c.value),
                "branches": branches,
                "argmax": c.branches[c.argmax].name,
                "iterationC": pos_up(&c.big_c),
                "iterationA": enclosure(&c.big_a),
            })
        }
        None => Value::Null,
    }
}

fn padic_abs_json(a: &PadicAbs) -> Value {
    match a {
        PadicAbs::Exact { valuation, .. } => json!({
            "valuation": valuation,
            "value": exact(&a.value().expect("exact")),
        }),
        PadicAbs::AtLeast { valuation, .. } => json!({
            "valuationAtLeast": valuation,
            "value": up(&a.upper()),
        }),
    }
}

fn cmd_minpair(alpha: &str, beta: &str, mode: Mode) -> Res<Done> {
    let alpha = AlgNum::parse(alpha)?;
    let beta = parse_beta(&alpha, beta)?;
    let mode = match mode {
        Mode::Exact => Minimality::Exact,
        Mode::Siegel => Minimality::SiegelBounded,
    };
    let pair = find_pair(&alpha, &beta, mode)?;
    let checks = verify_pair(&alpha, &beta, &pair.p, &pair.q)?;
    let rep = power_rep(&alpha, &beta)?;
    let c12 = minpair::c12(&alpha, &rep, &pair)?;
    let mut result = pair_json(&pair);
    result["checks"] = json!({
        "vanishing": checks.vanishing,
        "coprime": checks.coprime,
        "degree": checks.degree,
        "part3": Value::Null,
    });
    result["C12"] = json!({
        "closedForm": up(&c12.closed_form),
        "tautological": int(&c12.tautological),
        "value": up(&c12.value),
    });
    result["wronskianHeightBound"] = json!(minpair::wronskian_height_ok(&pair));
    let code = if checks.all_pass() { EXIT_OK } else { EXIT_INVARIANT };
    Ok(Done { result, table: None, code })
}

fn instance_json(inst: &GapInstance) -> Value {
    let (liouville_label, wronskian_label) = match inst.metric {
        gap::Metric::Archimedean => ("C6", "C13"),
        gap::Metric::PAdic => ("C7", "C14"),
    };
    json!({
        "d": inst.degree(),
        "mu": exact(&inst.mu),
        "C0": exact(&inst.c0),
        "pair": pair_json(&inst.pair),
        "mobius": mobius_json(&inst.mobius),
        liouville_label: down(&inst.liouville),
        "C12": up(&inst.c12.value),
        wronskian_label: {
            "direct": down(&inst.wronskian.direct),
            "formula": down(&inst.wronskian.formula),
            "value": down(&inst.wronskian.value),
        },
        "constants": constants_json(&inst.constants),
    })
}

fn cmd_constants_arch(alpha: &str, beta: &str, mu: &Option<String>, c0: &str) -> Res<Done> {
    let alpha = AlgNum::parse(alpha)?;
    let beta = parse_beta(&alpha, beta)?;
    let mu = parse_mu(mu, alpha.degree())?;
    let inst = GapInstance::archimedean(&alpha, &beta, &mu, &parse_rational(c0)?)?;
    let mut result = instance_json(&inst);
    result["C9"] = up(&gapprin::algnum::c9(&alpha, &beta, 64)?);
    Ok(Done::ok(result))
}

fn padic_instance(form: &str, beta: &str, prime: &str, residue: &str, mu: &Option<String>, c0: &str) -> Res<GapInstance> {
    let f = parse_poly(form)?;
    let xi = hensel_root(&f, &parse_int(prime)?, &parse_int(residue)?)?;
    let beta = parse_poly(beta)?.to_rat();
    let mu = parse_mu(mu, xi.degree())?;
    GapInstance::padic(&xi, &beta, &mu, &parse_rational(c0)?)
}

fn cmd_constants_padic(form: &str, beta: &str, prime: &str, residue: &str, mu: &Option<String>, c0: &str) -> Res<Done> {
    let inst = padic_instance(form, beta, prime, residue, mu, c0)?;
    Ok(Done::ok(instance_json(&inst)))
}

fn element_json(e: &AutElement) -> Value {
    json!({
        "matrix": matrix_json(&e.matrix),
        "det": int(&e.det),
        "sign": e.sign,
        "order": e.order,
    })
}

/// A small generating set, chosen greedily from elements of largest order.
fn generators(aut: &EnhancedAut) -> Vec<AutElement> {
    let mut sorted = aut.elements.clone();
    sorted.sort_by(|a, b| b.order.cmp(&a.order).then_with(|| a.cmp(b)));
    let mut span: Vec<IntMat2> = vec![IntMat2::identity()];
    let mut gens = Vec::new();
    for e in sorted {
        if span.contains(&e.matrix) {
            continue;
        }
        gens.push(e.clone());
        let mut frontier = span.clone();
        frontier.push(e.matrix.clone());
        while let Some(m) = frontier.pop() {
            if !span.contains(&m) {
                span.push(m.clone());
            }
            for g in &gens {
                let p = normalize_primitive(&m.mul(&g.matrix));
                if !span.contains(&p) && !frontier.contains(&p) {
                    frontier.push(p);
                }
            }
        }
    }
    gens
}

fn cmd_aut(form: &str, bits: u32) -> Res<Done> {
    let f = parse_form(form)?;
    let aut = aut_prime(&f, bits)?;
    let elements: Vec<Value> = aut.elements.iter().map(element_json).collect();
    let gens: Vec<Value> = generators(&aut).iter().map(element_json).collect();
    let result = json!({
        "form": f.to_string(),
        "elements": elements,
        "generators": gens,
        "order": aut.order(),
        "structure": aut.structure.to_string(),
        "table1Class": aut_rational_class(&aut),
        "isGroup": aut.is_group(),
        "determinantLaw": determinant_law_holds(&f, &aut),
        "unresolvedCandidates": aut.unresolved,
        "bits": aut.bits,
    });
    let rows: Vec<Value> = aut
        .elements
        .iter()
        .map(|e| {
            json!({
                "s": e.matrix.s.to_string(), "u": e.matrix.u.to_string(),
                "t": e.matrix.t.to_string(), "v": e.matrix.v.to_string(),
                "det": e.det.to_string(), "sign": e.sign, "order": e.order,
            })
        })
        .collect();
    let table = Table::new(&["s", "u", "t", "v", "det", "sign", "order"], &rows);
    let code = if aut.is_group() && determinant_law_holds(&f, &aut) { EXIT_OK } else { EXIT_INVARIANT };
    Ok(Done { result, table: Some(table), code })
}

fn assignment_json(a: &RootAssignment) -> Value {
    let tied: Vec<Value> = a.tied.iter().map(|(i, s)| json!({ "rootIndex": i, "side": s })).collect();
    json!({
        "rootIndex": a.root,
        "side": a.side,
        "distance": enclosure(&a.distance),
        "tied": tied,
    })
}

fn solution_row(f: &BinForm, x: &BigInt, y: &BigInt, a: &RootAssignment, orbit: usize) -> Value {
    json!({
        "x": x.to_string(),
        "y": y.to_string(),
        "|F(x,y)|": f.eval(x, y).abs().to_string(),
        "H": gap::height(x, y).to_string(),
        "rootIndex": a.root,
        "side": a.side,
        "orbitId": orbit,
    })
}

const SOLUTION_COLUMNS: [&str; 7] = ["x", "y", "|F(x,y)|", "H", "rootIndex", "side", "orbitId"];

fn roots_json(f: &BinForm) -> Res<(Vec<AlgNum>, Value)> {
    let roots = AlgNum::all_roots(&f.dehomogenize())?;
    let listed: Vec<Value> = roots
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let (re, im) = r.approx();
            json!({ "index": i, "approx": format!("{re:.12}{im:+.12}i") })
        })
        .collect();
    Ok((roots, Value::Array(listed)))
}

fn cmd_thue_enum(form: &str, m: &str, bound: &str, bits: u32) -> Res<Done> {
    let f = parse_form(form)?;
    let problem = ThueProblem::new(f.clone(), parse_int(m)?, parse_int(bound)?)?;
    let sols = enumerate_primitive(&problem)?;
    let (roots, roots_v) = roots_json(&f)?;
    let aut = aut_prime(&f, bits)?;
    let grouping = solution_orbits(&sols, &aut, &problem.bound);
    let mut rows = Vec::with_capacity(sols.len());
    let mut detailed = Vec::with_capacity(sols.len());
    for (i, s) in sols.iter().enumerate() {
        let a = assign_root_with(&roots, &s.x, &s.y, bits.max(1024))?;
        rows.push(solution_row(&f, &s.x, &s.y, &a, grouping.orbit_of[i]));
        let mut d = json!({ "x": int(&s.x), "y": int(&s.y), "value": int(&s.value), "orbitId": grouping.orbit_of[i] });
        d["assignment"] = assignment_json(&a);
        detailed.push(d);
    }
    let result = json!({
        "form": f.to_string(),
        "m": int(&problem.m),
        "box": int(&problem.bound),
        "roots": roots_v,
        "solutions": detailed,
        "count": sols.len(),
        "orbits": grouping.orbits,
        "orbitClosed": grouping.closed,
        "convention": "one representative per ±(x, y), normalized with y > 0 or (x, y) = (1, 0)",
    });
    let table = Table::new(&SOLUTION_COLUMNS, &rows);
    Ok(Done { result, table: Some(table), code: EXIT_OK })
}

fn cmd_census(form: &str, m: &str, mu: &Option<String>, bound: &str) -> Res<Done> {
    let f = parse_form(form)?;
    let problem = ThueProblem::new(f.clone(), parse_int(m)?, parse_int(bound)?)?;
    let mu = parse_mu(mu, f.degree())?;
    let c = census(&problem, &mu)?;
    let (_, roots_v) = roots_json(&f)?;
    let rows: Vec<Value> =
        c.entries.iter().map(|e| solution_row(&f, &e.solution.x, &e.solution.y, &e.assignment, e.orbit)).collect();
    let entries: Vec<Value> = c
        .entries
        .iter()
        .map(|e| {
            json!({
                "x": int(&e.solution.x),
                "y": int(&e.solution.y),
                "value": int(&e.solution.value),
                "assignment": assignment_json(&e.assignment),
                "orbitId": e.orbit,
                "large": e.large,
            })
        })
        .collect();
    let orbit_sizes: Vec<usize> = c.orbits.iter().map(Vec::len).collect();
    let result = json!({
        "form": f.to_string(),
        "d": c.d,
        "m": int(&c.m),
        "box": int(&c.bound_box),
        "mu": exact(&c.mu),
        "roots": roots_v,
        "solutions": entries,
        "orbits": c.orbits,
        "orbitSizes": orbit_sizes,
        "orbitClosed": c.orbit_closed,
        "aut": {
            "order": c.aut.order(),
            "structure": c.aut.structure.to_string(),
            "table1Class": aut_rational_class(&c.aut),
        },
        "gamma": c.gamma,
        "C5": pos_up(&c.c5.value),
        "C5log10Upper": format!("{:.6}", c.c5.value.log10_upper()),
        "liouvilleBranch": pos_up(&c.c5.liouville_branch),
        "C10": up(&c.c5.c10),
        "C16roots": c16_json(&c.c5.c16_roots),
        "C16inverses": c16_json(&c.c5.c16_inverses),
        "galois": c.c5.galois,
        "countFloor": int(&c.count_floor),
        "theoremBound": int(&c.theorem_bound),
        "largeCount": c.large_count,
        "boundApplicable": c.bound_applicable,
        "boundRespected": c.bound_respected,
        "lewisMahlerHolds": c.lewis_mahler_ok,
        "gyoryBound": c.gyory_bound,
    });
    let sound = c.bound_respected && c.orbit_closed && c.lewis_mahler_ok;
    let code = if sound { EXIT_OK } else { EXIT_INVARIANT };
    Ok(Done { result, table: Some(Table::new(&SOLUTION_COLUMNS, &rows)), code })
}

fn verdict_str(v: Verdict) -> String {
    serde_json::to_value(v).ok().and_then(|s| s.as_str().map(String::from)).unwrap_or_default()
}

fn cmd_gap_check(
    alpha: &str,
    beta: &str,
    pairs: &[String],
    mu: &Option<String>,
    c0: &str,
    prime: Option<&str>,
    residue: Option<&str>,
) -> Res<Done> {
    let inst = match prime {
        Some(p) => {
            let r0 = residue.ok_or_else(|| Error::Parse("--prime needs --residue".into()))?;
            padic_instance(alpha, beta, p, r0, mu, c0)?
        }
        None => {
            let a = AlgNum::parse(alpha)?;
            let b = parse_beta(&a, beta)?;
            let mu = parse_mu(mu, a.degree())?;
            GapInstance::archimedean(&a, &b, &mu, &parse_rational(c0)?)?
        }
    };
    let mut code = EXIT_OK;
    let mut rows = Vec::new();
    for s in pairs {
        let ((x1, y1), (x2, y2)) = parse_pair(s)?;
        let r = inst.check((&x1, &y1), (&x2, &y2))?;
        match r.verdict {
            Verdict::Violation => code = EXIT_INVARIANT,
            Verdict::Abstain if code == EXIT_OK => code = EXIT_PRECISION,
            _ => {}
        }
        rows.push(json!({
            "pair": s,
            "H1": gap::height(&x1, &y1).to_string(),
            "H2": gap::height(&x2, &y2).to_string(),
            "verdict": verdict_str(r.verdict),
            "approx1": r.hypotheses.approx1,
            "approx2": r.hypotheses.approx2,
            "heights": r.hypotheses.heights,
            "gap": r.gap,
            "mobius": r.mobius,
            "gapBound": pos_up(&r.gap_bound),
        }));
    }
    let table = Table::new(
        &["pair", "H1", "H2", "verdict", "approx1", "approx2", "heights", "gap", "mobius", "gapBound"],
        &rows,
    );
    let result = json!({ "instance": instance_json(&inst), "checks": rows });
    Ok(Done { result, table: Some(table), code })
}

fn cmd_padic_root(form: &str, p: &str, r0: &str, digits: u32) -> Res<Done> {
    let f = parse_poly(form)?;
    let p = parse_int(p)?;
    let r0 = parse_int(r0)?;
    if digits == 0 {
        return Err(Error::Invalid("--digits must be positive".into()));
    }
    let xi = hensel_root(&f, &p, &r0)?;
    let lifts: Vec<Value> = (1..=digits)
        .map(|k| json!({ "k": k, "modulus": int(&xi.modulus(k)), "residue": int(&xi.lift(k)) }))
        .collect();
    let mut rest = xi.lift(digits);
    let mut expansion = Vec::new();
    for _ in 0..digits {
        expansion.push((&rest % &p).to_string());
        rest /= &p;
    }
    let shift = IntPoly::new(vec![-xi.residue().clone(), BigInt::one()]);
    let result = json!({
        "polynomial": xi.minpoly().to_string(),
        "prime": int(&p),
        "residue": int(xi.residue()),
        "lifts": lifts,
        "digits": expansion,
        "distanceToResidue": padic_abs_json(&xi.abs_of_poly(&shift, digits)),
        "C7": down(&liouville_c7(&xi)),
    });
    Ok(Done::ok(result))
}

fn identity_json(c: &IdentityCheck) -> Value {
    json!({ "matrix": matrix_json(&c.matrix), "factor": int(&c.factor), "holds": c.holds })
}

fn cmd_d12(a: &str, b: &str) -> Res<Done> {
    let f = d12_family(&parse_int(a)?, &parse_int(b)?)?;
    let report = verify_729(&f);
    let result = json!({
        "form": f.to_string(),
        "coefficients": f.coeffs().iter().rev().map(|c| c.to_string()).collect::<Vec<_>>(),
        "unimodular": report.unimodular.iter().map(identity_json).collect::<Vec<_>>(),
        "scaling": report.scaling.iter().map(identity_json).collect::<Vec<_>>(),
        "allHold": report.all_hold(),
    });
    let code = if report.all_hold() { EXIT_OK } else { EXIT_INVARIANT };
    Ok(Done { result, table: None, code })
}

fn cmd_sweep() -> Res<Done> {
    let report = run_sweep()?;
    let mut instances = Vec::new();
    let mut rows = Vec::new();
    for i in &report.instances {
        let (small, big) = match i.metric {
            gap::Metric::Archimedean => ("C1", "C2"),
            gap::Metric::PAdic => ("C3", "C4"),
        };
        instances.push(json!({
            "name": i.name,
            "metric": i.metric,
            "degree": i.degree,
            "mu": { "value": i.mu, "rounding": "exact" },
            "mobius": i.mobius,
            "r": i.pair_r,
            "pairs": i.pairs,
            "verdicts": i.verdicts,
            small: { "value": i.small, "rounding": "up" },
            big: { "value": i.big, "rounding": "up" },
            "argmax": i.argmax,
        }));
        rows.push(json!({
            "name": i.name,
            "metric": i.metric,
            "pairs": i.pairs,
            "mobius": i.mobius,
            "verdicts": serde_json::to_string(&i.verdicts).unwrap_or_default(),
            "small": i.small,
            "big": i.big,
        }));
    }
    let rate = BigRational::new(BigInt::from(report.abstentions), BigInt::from(report.total.max(1)));
    let result = json!({
        "instances": instances,
        "total": report.total,
        "violations": report.violations,
        "abstentions": report.abstentions,
        "abstentionRate": exact(&rate),
        "passed": report.passed(),
    });
    let code = if report.violations > 0 {
        EXIT_INVARIANT
    } else if !report.passed() {
        EXIT_PRECISION
    } else {
        EXIT_OK
    };
    let table = Table::new(&["name", "metric", "pairs", "mobius", "verdicts", "small", "big"], &rows);
    Ok(Done { result, table: Some(table), code })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn error_exit_codes() {
        assert_eq!(exit_code(&Error::Hypothesis("mu".into())), EXIT_HYPOTHESIS);
        assert_eq!(exit_code(&Error::Parse("x".into())), EXIT_HYPOTHESIS);
        assert_eq!(exit_code(&Error::Precision("bits".into())), EXIT_PRECISION);
        assert_eq!(exit_code(&Error::Invariant("gamma".into())), EXIT_INVARIANT);
    }

    #[test]
    fn pair_syntax() {
        let ((a, b), (c, d)) = parse_pair("-5/3:16/3").unwrap();
        assert_eq!((a, b, c, d), ((-5).into(), 3.into(), 16.into(), 3.into()));
        assert!(parse_pair("5/3").is_err());
        assert!(parse_pair("5:3").is_err());
    }
}
