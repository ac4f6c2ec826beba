//! Checkers for the resolution criteria: the syntactic witness-variable
//! test, and brute-force verification of the Newton-face hypotheses and of
//! the resolved chart at F_p points.

use std::collections::BTreeSet;

use num_traits::Zero;

use super::order::{support_at_least_where, FpIdeal};
use super::points::{monomial_vanishes, scan, singular_points_where, Budget, FpPoint};
use super::report::{CheckReport, Condition, Verdict, Witness, PROXY_NOTE};
use crate::cobord::{full_cobordization, transform, weak_transform_ideal, CobordPresentation};
use crate::error::{Error, Result};
use crate::newton::{all_faces, face_initial_ideal, minimalize, newton_polytope, supporting_faces, Monomial, MonomialIdeal, PolytopeFace};
use crate::poly::{is_prime, Field, Polynomial};

const GENERATORWISE_NOTE: &str = "initial forms of the ideal are taken generator by generator";

fn render_term(vars: &[String], e: &[u32]) -> String {
    Monomial(e.to_vec()).render(vars)
}

/// Bring f into characteristic `ch`, noting terms whose coefficient dies.
fn prepare_res(f: &Polynomial, ch: u64) -> Result<(Polynomial, Vec<String>)> {
    if ch > 0 && !is_prime(ch) {
        return Err(Error::InvalidInput(format!("characteristic {ch} is not prime")));
    }
    if f.is_zero() {
        return Err(Error::InvalidInput("the zero polynomial has no presentation".into()));
    }
    match f.field() {
        Field::Prime(q) if q != ch => {
            Err(Error::InvalidInput(format!("polynomial is over F_{q} but the characteristic is {ch}")))
        }
        Field::Rational if ch > 0 => {
            let r = f.reduce_mod(ch)?;
            let notes = f
                .terms()
                .filter(|(e, _)| r.coefficient(e).is_zero())
                .map(|(e, _)| format!("coefficient of {} vanishes modulo {ch}; the term is dropped", render_term(f.vars(), e)))
                .collect();
            if r.is_zero() {
                return Err(Error::InvalidInput(format!("f vanishes identically modulo {ch}")));
            }
            Ok((r, notes))
        }
        _ => Ok((f.clone(), Vec::new())),
    }
}

/// The certifying variable of term i: its exponent a there is positive (and
/// prime to p in characteristic p), and every other term carries x_j only
/// to a power divisible by p (to the power 0 in characteristic 0).
fn witness_variable(exps: &[Vec<u32>], i: usize, ch: u64) -> Option<usize> {
    let n = exps[i].len();
    (0..n).find(|&j| {
        let a = exps[i][j];
        if a == 0 || (ch > 0 && a as u64 % ch == 0) {
            return false;
        }
        exps.iter().enumerate().filter(|(l, _)| *l != i).all(|(_, e)| {
            if ch == 0 {
                e[j] == 0
            } else {
                e[j] as u64 % ch == 0
            }
        })
    })
}

fn res_clause(ch: u64) -> &'static str {
    if ch == 0 {
        "exists x_j: x_j^a in x^alpha, x_j absent from the other terms"
    } else {
        "exists x_j: x_j^a in x^alpha, p does not divide a, x_j in the other terms only as (kp)-th powers"
    }
}

fn res_conditions(f: &Polynomial, ch: u64, prefix: &str) -> (Vec<Condition>, Vec<String>) {
    let vars = f.vars();
    // Display order: descending lex, matching the printed polynomial.
    let exps: Vec<Vec<u32>> = f.terms().rev().map(|(e, _)| e.clone()).collect();
    let witnesses: Vec<Option<usize>> = (0..exps.len()).map(|i| witness_variable(&exps, i, ch)).collect();
    let missing = witnesses.iter().filter(|w| w.is_none()).count();
    let mut notes = Vec::new();
    if exps.len() == 1 {
        notes.push(format!("{prefix}degenerate input: a single term, so the criterion holds vacuously"));
    }
    let conditions = exps
        .iter()
        .zip(&witnesses)
        .map(|(e, w)| {
            let term = render_term(vars, e);
            let c = Condition::new(format!("{prefix}term {term}"), res_clause(ch), Verdict::Pass);
            match w {
                Some(j) => c.with_witness(Witness::Variable { term, variable: vars[*j].clone(), exponent: e[*j] }),
                None if missing <= 1 => c.with_note("the one term allowed without a certifying variable"),
                None => Condition { status: Verdict::Fail, ..c }.with_witness(Witness::Term { term }),
            }
        })
        .collect();
    (conditions, notes)
}

/// The syntactic criterion for resolving V(f) by the cobordant blow-up of
/// its monomial ideal. Exact: no enumeration is involved.
pub fn check_res(f: &Polynomial, characteristic: u64) -> Result<CheckReport> {
    let (f, mut notes) = prepare_res(f, characteristic)?;
    let (conditions, more) = res_conditions(&f, characteristic, "");
    notes.extend(more);
    let mut report = CheckReport::new("res");
    report.characteristic = Some(characteristic);
    for c in conditions {
        report.push(c);
    }
    report.notes = notes;
    if let Ok(j) = f.support_ideal() {
        report.notes.push(format!("center: {}", j.render(f.vars())));
    }
    Ok(report.finish())
}

/// The criterion applied to each equation of a system in disjoint blocks of
/// variables; the center is the product of the blocks' monomial ideals.
pub fn check_res2(system: &[(Polynomial, Vec<String>)], characteristic: u64) -> Result<CheckReport> {
    if system.is_empty() {
        return Err(Error::EmptyIdeal);
    }
    let mut seen = BTreeSet::new();
    for (_, block) in system {
        for v in block {
            if !seen.insert(v.clone()) {
                return Err(Error::InvalidInput(format!("variable {v} occurs in more than one block")));
            }
        }
    }
    let mut report = CheckReport::new("res2");
    report.characteristic = Some(characteristic);
    let all_vars: Vec<String> = system.iter().flat_map(|(_, b)| b.iter().cloned()).collect();
    let mut center = MonomialIdeal::unit(all_vars.len());
    let mut offset = 0;
    for (idx, (f, block)) in system.iter().enumerate() {
        let f = f.with_vars(block).map_err(|e| Error::InvalidInput(format!("equation {}: {e}", idx + 1)))?;
        let (f, notes) = prepare_res(&f, characteristic)?;
        let prefix = format!("block {}: ", idx + 1);
        let (conditions, more) = res_conditions(&f, characteristic, &prefix);
        for c in conditions {
            report.push(c);
        }
        report.notes.extend(notes.into_iter().map(|n| format!("{prefix}{n}")));
        report.notes.extend(more);
        let gens: Vec<Monomial> = f
            .support()
            .iter()
            .map(|m| {
                let mut e = vec![0; all_vars.len()];
                e[offset..offset + block.len()].copy_from_slice(&m.0);
                Monomial(e)
            })
            .collect();
        center = center.product(&minimalize(&gens)?);
        offset += block.len();
    }
    report.notes.push(format!("center: {}", center.render(&all_vars)));
    Ok(report.finish())
}

fn validate_primes(fields: &[Field], primes: &[u64]) -> Result<Vec<u64>> {
    let mut ps: Vec<u64> = primes.to_vec();
    ps.sort();
    ps.dedup();
    let fixed: BTreeSet<u64> = fields
        .iter()
        .filter_map(|f| match f {
            Field::Prime(p) => Some(*p),
            _ => None,
        })
        .collect();
    if fields.contains(&Field::Units) {
        return Err(Error::InvalidInput("brute-force checks need concrete coefficients, not abstract units".into()));
    }
    if fixed.len() > 1 {
        return Err(Error::InvalidInput("polynomials over different prime fields".into()));
    }
    if let Some(&q) = fixed.iter().next() {
        if ps.is_empty() {
            ps.push(q);
        }
        if ps != [q] {
            return Err(Error::InvalidInput(format!("polynomial is over F_{q}; only that prime can be used")));
        }
    }
    if ps.is_empty() {
        return Err(Error::InvalidInput("at least one prime is required".into()));
    }
    if let Some(p) = ps.iter().find(|&&p| !is_prime(p)) {
        return Err(Error::InvalidInput(format!("{p} is not prime")));
    }
    Ok(ps)
}

/// Whether the point lies on V(J) for a monomial ideal J.
fn on_zero_set(j: &MonomialIdeal, pt: &[u64]) -> bool {
    j.generators().iter().all(|g| monomial_vanishes(&g.0, pt))
}

fn off_divisor(pt: &[u64]) -> bool {
    pt.iter().all(|&x| x != 0)
}

/// Record an enumeration outcome as a condition: empty means pass, a point
/// is a counterexample, an exhausted budget is inconclusive.
fn record(
    report: &mut CheckReport,
    id: String,
    clause: &str,
    vars: &[String],
    p: u64,
    outcome: Result<(Vec<FpPoint>, u64)>,
) -> Result<()> {
    let c = Condition::new(id, clause, Verdict::Pass);
    let c = match outcome {
        Ok((pts, tested)) => {
            report.points_tested += tested;
            match pts.into_iter().next() {
                None => c,
                Some(pt) => Condition { status: Verdict::Fail, ..c }.with_witness(Witness::Point {
                    prime: p,
                    variables: vars.to_vec(),
                    coordinates: pt,
                }),
            }
        }
        Err(e @ (Error::BudgetExceeded { .. } | Error::TooLarge(_))) => {
            Condition { status: Verdict::Inconclusive, ..c }.with_note(e.to_string())
        }
        Err(e) => return Err(e),
    };
    report.push(c);
    Ok(())
}

/// codim V(J) >= 2. A principal center is accepted as well: its blow-up is
/// trivial and B_+ is X minus V(J), where the other hypotheses already give
/// the conclusion.
fn codim_condition(j: &MonomialIdeal, vars: &[String]) -> Condition {
    let c = Condition::new("codim", "codim V(J) >= 2", Verdict::Pass);
    match j.codimension() {
        None => c.with_note("J is the unit ideal, V(J) is empty"),
        Some(d) if d >= 2 => c.with_note(format!("codim V(J) = {d}")),
        Some(_) if j.is_principal() => c.with_note("principal center: trivial blow-up, B_+ = X \\ V(J)"),
        Some(_) => {
            let n = j.nvars();
            let v = (0..n).find(|&i| j.generators().iter().all(|g| g.0[i] > 0)).expect("codimension one");
            Condition { status: Verdict::Fail, ..c }.with_witness(Witness::Divisor { variable: vars[v].clone() })
        }
    }
}

/// Reduce the polynomials mod p; None (with an inconclusive condition
/// recorded) when a coefficient vanishes, since the support then changes.
fn reduce_all(report: &mut CheckReport, fs: &[Polynomial], p: u64) -> Result<Option<Vec<Polynomial>>> {
    let mut out = Vec::with_capacity(fs.len());
    for f in fs {
        let r = f.reduce_mod(p)?;
        if r.num_terms() < f.num_terms() {
            let lost: Vec<String> = f
                .terms()
                .filter(|(e, _)| !r.terms().any(|(e2, _)| e2 == *e))
                .map(|(e, _)| render_term(f.vars(), e))
                .collect();
            report.push(
                Condition::new(format!("p={p}"), "every coefficient is a unit mod p", Verdict::Inconclusive)
                    .with_note(format!("coefficients of {} vanish modulo {p}; the prime is skipped", lost.join(", "))),
            );
            return Ok(None);
        }
        out.push(r);
    }
    Ok(Some(out))
}

fn face_label(face: &PolytopeFace, vars: &[String]) -> String {
    let verts: Vec<String> = face.vertices.iter().map(|m| m.render(vars)).collect();
    if face.is_whole() {
        "P".to_string()
    } else if face.recession.is_empty() {
        format!("conv({})", verts.join(","))
    } else {
        let dirs: Vec<&str> = face.recession.iter().map(|&i| vars[i].as_str()).collect();
        format!("conv({})+cone({})", verts.join(","), dirs.join(","))
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum FaceSet {
    Supporting,
    All,
}

fn face_check(f: &Polynomial, primes: &[u64], budget: &Budget, faces: FaceSet) -> Result<CheckReport> {
    if f.is_zero() {
        return Err(Error::InvalidInput("the zero polynomial does not define a hypersurface".into()));
    }
    let primes = validate_primes(&[f.field()], primes)?;
    let vars = f.vars().to_vec();
    let j = f.support_ideal()?;
    let p_j = newton_polytope(&j);
    let face_list = match faces {
        FaceSet::Supporting => supporting_faces(&p_j),
        FaceSet::All => all_faces(&p_j),
    };
    let mut report = CheckReport::new(if faces == FaceSet::Supporting { "A" } else { "AQ" });
    report.primes = primes.clone();
    report.push(codim_condition(&j, &vars));
    for &p in &primes {
        let Some(reduced) = reduce_all(&mut report, std::slice::from_ref(f), p)? else {
            continue;
        };
        let fp = &reduced[0];
        if faces == FaceSet::Supporting {
            let out = singular_points_where(fp, p, budget, |pt| !on_zero_set(&j, pt));
            record(&mut report, format!("sing p={p}"), "Sing V(f) in V(J)", &vars, p, out)?;
        }
        for face in &face_list {
            let inf = fp.filter_terms(|e| face.contains(e));
            let label = face_label(face, &vars);
            let id = format!("face {label} p={p}");
            let out = match faces {
                FaceSet::Supporting => {
                    let inj = face_initial_ideal(&j, face)?;
                    singular_points_where(&inf, p, budget, move |pt| !on_zero_set(&inj, pt))
                }
                FaceSet::All => singular_points_where(&inf, p, budget, off_divisor),
            };
            let clause = match faces {
                FaceSet::Supporting => "Sing V(in_P f) in V(in_P J)",
                FaceSet::All => "Sing V(in_P f) in V(x_1...x_n)",
            };
            let before = report.conditions.len();
            record(&mut report, id, clause, &vars, p, out)?;
            let c = &mut report.conditions[before];
            let note = format!("in_P f = {}", inf.with_field(Field::Rational).map(|g| g.to_string()).unwrap_or_default());
            c.note = Some(match c.note.take() {
                Some(n) => format!("{note}; {n}"),
                None => note,
            });
        }
    }
    report.notes.push(format!("J = {}", j.render(&vars)));
    report.notes.push(PROXY_NOTE.to_string());
    Ok(report.finish())
}

/// The hypotheses of the Newton-polytope resolution theorem at F_p points:
/// codim V(J) >= 2, Sing V(f) in V(J), and for every supporting face P,
/// Sing V(in_P f) in V(in_P J).
pub fn check_theorem_a(f: &Polynomial, primes: &[u64], budget: &Budget) -> Result<CheckReport> {
    face_check(f, primes, budget, FaceSet::Supporting)
}

/// For every face P of P_f, V(in_P f) is smooth off the coordinate divisor,
/// at F_p points.
pub fn check_aq(f: &Polynomial, primes: &[u64], budget: &Budget) -> Result<CheckReport> {
    face_check(f, primes, budget, FaceSet::All)
}

/// Which order-drop criterion to test.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OrderMode {
    /// supp(I,d) in V(J) and supp(in_P I, d) in V(in_P J) on supporting faces.
    Res3,
    /// supp(in_P I, d) in the coordinate divisor on every face.
    Res4,
}

impl OrderMode {
    pub fn as_str(&self) -> &'static str {
        match self {
            OrderMode::Res3 => "res3",
            OrderMode::Res4 => "res4",
        }
    }
}

/// Express the generators over one variable list, in order of first use.
fn common_vars(gens: &[Polynomial]) -> Result<(Vec<String>, Vec<Polynomial>)> {
    let mut vars: Vec<String> = Vec::new();
    for g in gens {
        for v in g.vars() {
            if !vars.contains(v) {
                vars.push(v.clone());
            }
        }
    }
    let gens = gens.iter().map(|g| g.with_vars(&vars)).collect::<Result<_>>()?;
    Ok((vars, gens))
}

/// Hypotheses of the order-drop theorems at F_p points and, optionally, the
/// conclusion: the weak transform under the full cobordant blow-up of J has
/// order < d at every B_+ point of the chart.
pub fn check_order_drop(
    gens: &[Polynomial],
    d: u64,
    primes: &[u64],
    mode: OrderMode,
    conclusion: bool,
    budget: &Budget,
) -> Result<CheckReport> {
    let gens: Vec<Polynomial> = gens.iter().filter(|g| !g.is_zero()).cloned().collect();
    if gens.is_empty() {
        return Err(Error::EmptyIdeal);
    }
    let (vars, gens) = common_vars(&gens)?;
    let fields: Vec<Field> = gens.iter().map(|g| g.field()).collect();
    let primes = validate_primes(&fields, primes)?;
    let support: Vec<Monomial> = gens.iter().flat_map(|g| g.support()).collect();
    let j = minimalize(&support)?;
    let p_j = newton_polytope(&j);
    let mut report = CheckReport::new("order");
    report.primes = primes.clone();
    report.push(codim_condition(&j, &vars));
    let face_list = match mode {
        OrderMode::Res3 => supporting_faces(&p_j),
        OrderMode::Res4 => all_faces(&p_j),
    };
    let presentation = if conclusion { Some(full_cobordization(&vars, &j)?) } else { None };
    for &p in &primes {
        let Some(reduced) = reduce_all(&mut report, &gens, p)? else {
            continue;
        };
        if mode == OrderMode::Res3 {
            let out = support_at_least_where(&reduced, d, p, budget, |pt| !on_zero_set(&j, pt));
            record(&mut report, format!("supp p={p}"), "supp(I,d) in V(J)", &vars, p, out)?;
        }
        for face in &face_list {
            let initial: Vec<Polynomial> =
                reduced.iter().map(|g| g.filter_terms(|e| face.contains(e))).filter(|g| !g.is_zero()).collect();
            let label = face_label(face, &vars);
            let id = format!("face {label} p={p}");
            let (clause, out) = match mode {
                OrderMode::Res3 => {
                    let inj = face_initial_ideal(&j, face)?;
                    (
                        "supp(in_P I,d) in V(in_P J)",
                        support_at_least_where(&initial, d, p, budget, move |pt| !on_zero_set(&inj, pt)),
                    )
                }
                OrderMode::Res4 => {
                    ("supp(in_P I,d) in V(x_1...x_n)", support_at_least_where(&initial, d, p, budget, off_divisor))
                }
            };
            record(&mut report, id, clause, &vars, p, out)?;
        }
        if let Some(pres) = &presentation {
            conclusion_condition(&mut report, &reduced, pres, d, p, budget)?;
        }
    }
    report.notes.push(format!("mode {}, d = {d}, J = {}", mode.as_str(), j.render(&vars)));
    report.notes.push(GENERATORWISE_NOTE.to_string());
    report.notes.push(PROXY_NOTE.to_string());
    Ok(report.finish())
}

/// Chart points outside V(weak center transform), i.e. points of B_+.
fn bplus_filter(pres: &CobordPresentation) -> impl Fn(&[u64]) -> bool + Sync {
    let center = pres.weak_center_chart_exponents();
    move |pt: &[u64]| center.iter().any(|e| !monomial_vanishes(e, pt))
}

fn conclusion_condition(
    report: &mut CheckReport,
    gens: &[Polynomial],
    pres: &CobordPresentation,
    d: u64,
    p: u64,
    budget: &Budget,
) -> Result<()> {
    let w = weak_transform_ideal(gens, pres)?;
    let chart = pres.chart_variables();
    let ideal = FpIdeal::new(&w.gs, p)?;
    let in_bplus = bplus_filter(pres);
    let outcome = scan(chart.len(), p, budget, |pt| {
        if !in_bplus(pt) {
            return None;
        }
        Some((ideal.capped_order(pt, d), pt.to_vec()))
    });
    let c = Condition::new(format!("conclusion p={p}"), "ord(weak transform) < d on B_+", Verdict::Pass);
    let c = match outcome {
        Ok((orders, tested)) => {
            report.points_tested += tested;
            let max = orders.iter().map(|(o, _)| *o).max().unwrap_or(0);
            let in_b = orders.len();
            let bad = orders.into_iter().find(|(o, _)| *o >= d);
            let c = c.with_note(format!("max order on {in_b} B_+ points: {}", if bad.is_some() { format!(">= {d}") } else { max.to_string() }));
            match bad {
                None => c,
                Some((_, pt)) => Condition { status: Verdict::Fail, ..c }.with_witness(Witness::Point {
                    prime: p,
                    variables: chart.clone(),
                    coordinates: pt,
                }),
            }
        }
        Err(e @ (Error::BudgetExceeded { .. } | Error::TooLarge(_))) => {
            Condition { status: Verdict::Inconclusive, ..c }.with_note(e.to_string())
        }
        Err(e) => return Err(e),
    };
    report.push(c);
    Ok(())
}

/// End-to-end check of a resolution: g = transform(f, P) has no singular
/// F_p point on B_+ in the chart (s, u').
pub fn verify_resolution(f: &Polynomial, pres: &CobordPresentation, primes: &[u64], budget: &Budget) -> Result<CheckReport> {
    let primes = validate_primes(&[f.field()], primes)?;
    let t = transform(f, pres)?;
    let chart = pres.chart_variables();
    let mut report = CheckReport::new("verify");
    report.primes = primes.clone();
    let in_bplus = bplus_filter(pres);
    for &p in &primes {
        let Some(reduced) = reduce_all(&mut report, std::slice::from_ref(&t.g), p)? else {
            continue;
        };
        let out = singular_points_where(&reduced[0], p, budget, &in_bplus);
        record(&mut report, format!("regular p={p}"), "V(g) regular on B_+", &chart, p, out)?;
    }
    let shift: Vec<String> = t.shift.iter().map(|a| a.to_string()).collect();
    report.notes.push(format!("g = {}, shift a = ({})", t.g, shift.join(",")));
    report.notes.push(PROXY_NOTE.to_string());
    Ok(report.finish())
}
