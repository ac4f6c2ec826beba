//! Command-line front end: parse an expression, run one operation and print
//! canonical JSON (or text with `--pretty`).

use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::{json, Value};

use coxcob::cobord::{
    dual_valuation_complex, full_cobordization, multi_weighted, quotient_type, simple_cobordant, stable_locus,
    transform, weighted_cobordant, weighted_normal_bundle, CobordPresentation, WeightedCenter,
};
use coxcob::newton::{all_faces, exceptional_rays_of, newton_polytope, normal_fan, MonomialIdeal};
use coxcob::parse::{parse_ideal, parse_ideal_with_vars, parse_int_list, parse_poly, parse_poly_with_vars, NamedIdeal};
use coxcob::poly::{sort_vars, Field, Polynomial};
use coxcob::singular::{
    check_aq, check_order_drop, check_res, check_res2, check_theorem_a, verify_resolution, Budget, CheckReport,
    OrderMode, Verdict,
};
use coxcob::{json as cj, Error};

const DEFAULT_PRIMES: &[u64] = &[5, 7];

#[derive(Parser)]
#[command(name = "coxcob", version, about = "Cobordant blow-ups of monomial centers")]
struct Cli {
    /// Print human-readable text instead of JSON.
    #[arg(long, global = true)]
    pretty: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Clone, Default)]
struct Input {
    /// Read the input from this file instead of stdin.
    #[arg(long = "in", value_name = "FILE")]
    input: Option<PathBuf>,
    /// A monomial ideal such as "[x^3, x*y, y^4]".
    #[arg(long)]
    ideal: Option<String>,
    /// A polynomial such as "x^3 + x*y + y^4"; repeatable where a list of
    /// generators is expected.
    #[arg(long)]
    poly: Vec<String>,
}

#[derive(Args, Clone, Default)]
struct CenterOpts {
    /// Center ideal for a full (or, with --b, multi-weighted) cobordization.
    #[arg(long)]
    center: Option<String>,
    /// Weights of a weighted center, one per variable (0 = not in the center).
    #[arg(long)]
    weights: Option<String>,
    /// Scale factors b_i of a multi-weighted presentation.
    #[arg(long)]
    b: Option<String>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Newton polytope, facets and faces of a monomial ideal.
    Newton(Input),
    /// Normal fan of the Newton polytope.
    Normalfan(Input),
    /// Full cobordant blow-up presentation.
    Cobord(Input),
    /// Weighted cobordant blow-up.
    Weighted {
        #[arg(long)]
        weights: Option<String>,
        /// Variable names for --weights.
        #[arg(long)]
        vars: Option<String>,
        #[command(flatten)]
        input: Input,
    },
    /// Multi-weighted cobordant blow-up with scales b.
    Multiweighted {
        #[arg(long)]
        b: String,
        #[command(flatten)]
        input: Input,
    },
    /// Simple cobordant blow-up of the Q-ideal J^e.
    Simple {
        #[arg(long, default_value = "1")]
        exponent: String,
        /// Highest degree of the Rees pieces computed.
        #[arg(long, default_value_t = 3)]
        degree: u64,
        #[command(flatten)]
        input: Input,
    },
    /// Weak transform of a polynomial.
    Transform {
        #[command(flatten)]
        center: CenterOpts,
        #[command(flatten)]
        input: Input,
    },
    /// Dual valuation complexes.
    Dualcomplex(Input),
    /// Weighted normal bundle at a face of valuations.
    Bundle {
        /// Comma-separated 0-based valuation indices.
        #[arg(long)]
        omega: String,
        #[command(flatten)]
        input: Input,
    },
    /// Stable locus presentation B^s.
    Stable(Input),
    /// Good and geometric quotient criteria.
    Quotient {
        /// Examine the stable locus instead of B_+.
        #[arg(long)]
        stable: bool,
        #[command(flatten)]
        input: Input,
    },
    /// Hypothesis checkers.
    #[command(subcommand)]
    Check(CheckCmd),
    /// Check that a cobordant blow-up resolves V(f) at F_p points of B_+.
    Verify {
        #[arg(long)]
        primes: Option<String>,
        #[command(flatten)]
        center: CenterOpts,
        #[command(flatten)]
        input: Input,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Res3,
    Res4,
}

#[derive(Subcommand)]
enum CheckCmd {
    /// Term-wise certifying variables.
    Res {
        #[arg(long = "char")]
        characteristic: Option<u64>,
        #[command(flatten)]
        input: Input,
    },
    /// Systems of equations in disjoint variable blocks, one
    /// "poly | v1,v2,..." per line.
    Res2 {
        #[arg(long = "char")]
        characteristic: Option<u64>,
        #[command(flatten)]
        input: Input,
    },
    /// Newton non-degeneracy along supporting faces.
    #[command(name = "A")]
    A {
        #[arg(long)]
        primes: Option<String>,
        #[command(flatten)]
        input: Input,
    },
    /// Non-degeneracy along all faces of the Newton polytope.
    #[command(name = "AQ")]
    Aq {
        #[arg(long)]
        primes: Option<String>,
        #[command(flatten)]
        input: Input,
    },
    /// Order drop of an ideal, generators one per line.
    Order {
        #[arg(long)]
        d: u64,
        #[arg(long)]
        primes: Option<String>,
        #[arg(long, value_enum, default_value = "res3")]
        mode: ModeArg,
        /// Also test the conclusion on B_+ points after the blow-up.
        #[arg(long)]
        conclusion: bool,
        #[command(flatten)]
        input: Input,
    },
}

/// Failures, mapped to exit codes 2 (usage or parse) and 3 (budget).
enum Failure {
    Usage(String),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

type Out = std::result::Result<Output, Failure>;

enum Output {
    Data(Value),
    Report(CheckReport),
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

impl Input {
    fn text(&self) -> std::result::Result<String, Failure> {
        match &self.input {
            Some(path) => {
                std::fs::read_to_string(path).map_err(|e| usage(format!("cannot read {}: {e}", path.display())))
            }
            None => {
                let mut s = String::new();
                std::io::stdin().read_to_string(&mut s).map_err(|e| usage(format!("cannot read stdin: {e}")))?;
                Ok(s)
            }
        }
    }

    /// One polynomial from --poly, the file or stdin.
    fn poly(&self) -> std::result::Result<Polynomial, Failure> {
        match self.poly.as_slice() {
            [p] => Ok(parse_poly(p)?),
            [] => Ok(parse_poly(strip_comments(&self.text()?).trim())?),
            _ => Err(usage("expected a single --poly")),
        }
    }

    /// Generators, one per --poly or one per input line.
    fn polys(&self) -> std::result::Result<Vec<Polynomial>, Failure> {
        let srcs: Vec<String> = if self.poly.is_empty() {
            strip_comments(&self.text()?).lines().map(|l| l.trim().to_string()).filter(|l| !l.is_empty()).collect()
        } else {
            self.poly.clone()
        };
        if srcs.is_empty() {
            return Err(usage("no generators given"));
        }
        let parsed = srcs.iter().map(|s| parse_poly(s)).collect::<coxcob::Result<Vec<_>>>()?;
        let mut vars: Vec<String> = Vec::new();
        for f in &parsed {
            for v in f.vars() {
                if !vars.contains(v) {
                    vars.push(v.clone());
                }
            }
        }
        sort_vars(&mut vars);
        Ok(srcs.iter().map(|s| parse_poly_with_vars(s, &vars)).collect::<coxcob::Result<Vec<_>>>()?)
    }

    /// A monomial ideal from --ideal, the support of --poly, or the input
    /// text (either form).
    fn ideal(&self) -> std::result::Result<NamedIdeal, Failure> {
        if let Some(src) = &self.ideal {
            return Ok(parse_ideal(src)?);
        }
        let src = match self.poly.as_slice() {
            [p] => return named_support(&parse_poly(p)?),
            [] => strip_comments(&self.text()?).trim().to_string(),
            _ => return Err(usage("expected a single --poly")),
        };
        if src.starts_with('[') {
            return Ok(parse_ideal(&src)?);
        }
        match parse_ideal(&src) {
            Ok(i) => Ok(i),
            Err(_) => named_support(&parse_poly(&src)?),
        }
    }
}

fn strip_comments(s: &str) -> String {
    s.lines().map(|l| l.split('#').next().unwrap_or("")).collect::<Vec<_>>().join("\n")
}

fn named_support(f: &Polynomial) -> std::result::Result<NamedIdeal, Failure> {
    Ok(NamedIdeal { vars: f.vars().to_vec(), ideal: f.support_ideal()? })
}

fn primes_arg(arg: &Option<String>, fields: &[Field]) -> std::result::Result<Vec<u64>, Failure> {
    match arg {
        Some(s) => s
            .split(',')
            .map(|t| t.trim())
            .filter(|t| !t.is_empty())
            .map(|t| t.parse::<u64>().map_err(|_| usage(format!("'{t}' is not a prime"))))
            .collect(),
        // A polynomial over F_p fixes the prime itself.
        None if fields.iter().any(|f| matches!(f, Field::Prime(_))) => Ok(Vec::new()),
        None => Ok(DEFAULT_PRIMES.to_vec()),
    }
}

fn characteristic(arg: Option<u64>, fields: &[Field]) -> u64 {
    arg.or_else(|| fields.iter().find_map(|f| if let Field::Prime(p) = f { Some(*p) } else { None })).unwrap_or(0)
}

fn default_names(n: usize) -> Vec<String> {
    if n <= 3 {
        ["x", "y", "z"][..n].iter().map(|s| s.to_string()).collect()
    } else {
        (1..=n).map(|i| format!("x{i}")).collect()
    }
}

/// A center given by positive weights; zero weights leave a variable out.
fn weighted_center(n: usize, weights: &[BigInt]) -> std::result::Result<WeightedCenter, Failure> {
    if weights.len() != n {
        return Err(usage(format!("{} weights given for {n} variables", weights.len())));
    }
    let zero = BigInt::from(0);
    let (indices, ws): (Vec<usize>, Vec<BigInt>) =
        weights.iter().enumerate().filter(|(_, w)| **w != zero).map(|(i, w)| (i, w.clone())).unzip();
    Ok(WeightedCenter::new(n, indices, ws)?)
}

/// The presentation selected by the center options, for the polynomial f.
/// Returns f re-expressed over the presentation's variables.
fn presentation_for(
    f: &Polynomial,
    opts: &CenterOpts,
) -> std::result::Result<(Polynomial, CobordPresentation), Failure> {
    if let Some(w) = &opts.weights {
        if opts.center.is_some() || opts.b.is_some() {
            return Err(usage("--weights cannot be combined with --center or --b"));
        }
        let c = weighted_center(f.nvars(), &parse_int_list(w)?)?;
        return Ok((f.clone(), weighted_cobordant(f.vars(), &c)?));
    }
    let (vars, j) = match &opts.center {
        Some(src) => {
            let c = parse_ideal_with_vars(src, f.vars())?;
            (c.vars, c.ideal)
        }
        None => (f.vars().to_vec(), f.support_ideal()?),
    };
    let f = f.with_vars(&vars)?;
    let p = match &opts.b {
        Some(b) => multi_weighted(&vars, &j, &parse_int_list(b)?)?,
        None => full_cobordization(&vars, &j)?,
    };
    Ok((f, p))
}

fn run(cmd: Cmd) -> Out {
    let budget = Budget::from_env();
    let data = match cmd {
        Cmd::Newton(input) => {
            let NamedIdeal { vars, ideal } = input.ideal()?;
            let p = newton_polytope(&ideal);
            let rays = exceptional_rays_of(&p);
            let supporting = coxcob::newton::supporting_faces(&p);
            let faces = all_faces(&p);
            cj::newton(&vars, &ideal, &p, &rays, &supporting, &faces)
        }
        Cmd::Normalfan(input) => {
            let NamedIdeal { vars, ideal } = input.ideal()?;
            cj::normal_fan(&vars, &normal_fan(&newton_polytope(&ideal)))
        }
        Cmd::Cobord(input) => {
            let NamedIdeal { vars, ideal } = input.ideal()?;
            cj::presentation(&full_cobordization(&vars, &ideal)?)
        }
        Cmd::Weighted { weights, vars, input } => {
            let p = match weights {
                Some(w) => {
                    let w = parse_int_list(&w)?;
                    let names = match vars {
                        Some(v) => v.split(',').map(|s| s.trim().to_string()).collect(),
                        None => default_names(w.len()),
                    };
                    weighted_cobordant(&names, &weighted_center(names.len(), &w)?)?
                }
                None => {
                    let NamedIdeal { vars, ideal } = input.ideal()?;
                    weighted_cobordant(&vars, &WeightedCenter::from_ideal(&ideal)?)?
                }
            };
            cj::presentation(&p)
        }
        Cmd::Multiweighted { b, input } => {
            let NamedIdeal { vars, ideal } = input.ideal()?;
            cj::presentation(&multi_weighted(&vars, &ideal, &parse_int_list(&b)?)?)
        }
        Cmd::Simple { exponent, degree, input } => {
            let NamedIdeal { vars, ideal } = input.ideal()?;
            let e: BigRational =
                exponent.trim().parse().map_err(|_| usage(format!("'{exponent}' is not a rational number")))?;
            cj::rees(&simple_cobordant(&vars, &ideal, &e, degree)?)
        }
        Cmd::Transform { center, input } => {
            let f = input.poly()?;
            let (f, p) = presentation_for(&f, &center)?;
            let t = transform(&f, &p)?;
            let mut v = cj::transform(&t, &p);
            let obj = v.as_object_mut().expect("object");
            obj.insert("f".into(), json!(f.to_string()));
            obj.insert("presentation".into(), cj::presentation(&p));
            v
        }
        Cmd::Dualcomplex(input) => cj::complex(&dual_valuation_complex(&input.ideal()?.ideal)?),
        Cmd::Bundle { omega, input } => {
            let NamedIdeal { vars, ideal } = input.ideal()?;
            let omega: Vec<usize> = omega
                .split(',')
                .map(|t| t.trim())
                .filter(|t| !t.is_empty())
                .map(|t| t.parse().map_err(|_| usage(format!("'{t}' is not an index"))))
                .collect::<std::result::Result<_, _>>()?;
            cj::bundle(&weighted_normal_bundle(&ideal, &omega)?, &vars)
        }
        Cmd::Stable(input) => {
            let NamedIdeal { vars, ideal } = input.ideal()?;
            cj::presentation(&stable_locus(&full_cobordization(&vars, &ideal)?, &ideal)?)
        }
        Cmd::Quotient { stable, input } => {
            let NamedIdeal { vars, ideal } = input.ideal()?;
            let mut p = full_cobordization(&vars, &ideal)?;
            if stable {
                p = stable_locus(&p, &ideal)?;
            }
            quotient_json(&p, &ideal)?
        }
        Cmd::Check(c) => return run_check(c, &budget),
        Cmd::Verify { primes, center, input } => {
            let f = input.poly()?;
            let primes = primes_arg(&primes, &[f.field()])?;
            let (f, p) = presentation_for(&f, &center)?;
            return Ok(Output::Report(verify_resolution(&f, &p, &primes, &budget)?));
        }
    };
    Ok(Output::Data(data))
}

fn quotient_json(p: &CobordPresentation, j: &MonomialIdeal) -> std::result::Result<Value, Failure> {
    let mut v = cj::quotient(&quotient_type(p, j)?);
    v.as_object_mut().expect("object").insert("kind".into(), json!(p.kind.as_str()));
    Ok(v)
}

fn run_check(c: CheckCmd, budget: &Budget) -> Out {
    let report = match c {
        CheckCmd::Res { characteristic: ch, input } => {
            let f = input.poly()?;
            check_res(&f, characteristic(ch, &[f.field()]))?
        }
        CheckCmd::Res2 { characteristic: ch, input } => {
            let system = res2_system(&input)?;
            let fields: Vec<Field> = system.iter().map(|(f, _)| f.field()).collect();
            check_res2(&system, characteristic(ch, &fields))?
        }
        CheckCmd::A { primes, input } => {
            let f = input.poly()?;
            check_theorem_a(&f, &primes_arg(&primes, &[f.field()])?, budget)?
        }
        CheckCmd::Aq { primes, input } => {
            let f = input.poly()?;
            check_aq(&f, &primes_arg(&primes, &[f.field()])?, budget)?
        }
        CheckCmd::Order { d, primes, mode, conclusion, input } => {
            let gens = input.polys()?;
            let fields: Vec<Field> = gens.iter().map(|g| g.field()).collect();
            let mode = match mode {
                ModeArg::Res3 => OrderMode::Res3,
                ModeArg::Res4 => OrderMode::Res4,
            };
            check_order_drop(&gens, d, &primes_arg(&primes, &fields)?, mode, conclusion, budget)?
        }
    };
    Ok(Output::Report(report))
}

/// Lines "poly | v1,v2,..."; without a bar the block is the polynomial's
/// own variables.
fn res2_system(input: &Input) -> std::result::Result<Vec<(Polynomial, Vec<String>)>, Failure> {
    let lines: Vec<String> = if input.poly.is_empty() {
        strip_comments(&input.text()?).lines().map(|l| l.trim().to_string()).filter(|l| !l.is_empty()).collect()
    } else {
        input.poly.clone()
    };
    if lines.is_empty() {
        return Err(usage("no equations given"));
    }
    lines
        .iter()
        .map(|line| match line.split_once('|') {
            Some((f, vs)) => {
                let vars: Vec<String> =
                    vs.split(',').map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect();
                let f = parse_poly_with_vars(f.trim(), &vars)?;
                if f.nvars() != vars.len() {
                    return Err(usage(format!("{f} uses variables outside its block {}", vars.join(","))));
                }
                Ok((f, vars))
            }
            None => {
                let f = parse_poly(line)?;
                let vars = f.vars().to_vec();
                Ok((f, vars))
            }
        })
        .collect()
}

/// Plain indented rendering of a JSON value.
fn render_value(v: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                if is_inline(x) {
                    out.push_str(&format!("{pad}{k}: {}\n", inline(x)));
                } else {
                    out.push_str(&format!("{pad}{k}:\n"));
                    render_value(x, indent + 1, out);
                }
            }
        }
        Value::Array(xs) => {
            for x in xs {
                if is_inline(x) {
                    out.push_str(&format!("{pad}- {}\n", inline(x)));
                } else {
                    out.push_str(&format!("{pad}-\n"));
                    render_value(x, indent + 1, out);
                }
            }
        }
        _ => out.push_str(&format!("{pad}{}\n", inline(v))),
    }
}

fn is_inline(v: &Value) -> bool {
    match v {
        Value::Object(_) => false,
        Value::Array(xs) => xs.iter().all(|x| match x {
            Value::Array(ys) => ys.iter().all(|y| !y.is_array() && !y.is_object()),
            Value::Object(_) => false,
            _ => true,
        }),
        _ => true,
    }
}

fn inline(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(xs) => format!("[{}]", xs.iter().map(inline).collect::<Vec<_>>().join(", ")),
        _ => v.to_string(),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.cmd) {
        Ok(Output::Data(v)) => {
            if cli.pretty {
                let mut s = String::new();
                render_value(&v, 0, &mut s);
                print!("{s}");
            } else {
                print!("{}", cj::to_pretty(&v));
            }
            ExitCode::SUCCESS
        }
        Ok(Output::Report(r)) => {
            if cli.pretty {
                print!("{}", r.render_text());
            } else {
                print!("{}", cj::to_pretty(&cj::report(&r)));
            }
            ExitCode::from(match r.verdict {
                Verdict::Pass => 0,
                Verdict::Fail => 1,
                Verdict::Inconclusive => 3,
            })
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::BudgetExceeded { .. } | Error::TooLarge(_) => 3,
                _ => 2,
            })
        }
    }
}
