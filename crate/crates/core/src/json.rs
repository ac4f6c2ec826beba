//! Canonical JSON forms of the library's results. Objects are backed by
//! sorted maps, so keys always come out in order; integers are exact.

use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde_json::{json, Map, Number, Value};

use crate::cobord::{
    CobordPresentation, GradedPresentation, IdealTransform, QuotientReport, ReesPresentation, TransformResult,
    ValuationFaceComplex,
};
use crate::newton::{Facet, Monomial, MonomialIdeal, MonomialValuation, NewtonPolytope, NormalFan, PolytopeFace};
use crate::polyhedra::{Cone, Fan, LatticeVector};
use crate::singular::{CheckReport, Condition, Witness};

pub fn int(x: &BigInt) -> Value {
    Value::Number(Number::from_str(&x.to_string()).expect("integer literal"))
}

pub fn ints(xs: &[BigInt]) -> Value {
    Value::Array(xs.iter().map(int).collect())
}

pub fn vector(v: &LatticeVector) -> Value {
    ints(v.coords())
}

pub fn vectors(vs: &[LatticeVector]) -> Value {
    Value::Array(vs.iter().map(vector).collect())
}

/// Rationals as strings such as "3", "-1/2".
pub fn rational(q: &BigRational) -> Value {
    Value::String(q.to_string())
}

fn exponents(m: &Monomial) -> Value {
    json!(m.0)
}

fn strings(xs: &[String]) -> Value {
    json!(xs)
}

pub fn ideal(i: &MonomialIdeal, vars: &[String]) -> Value {
    json!({
        "generators": i.generators().iter().map(|g| g.render(vars)).collect::<Vec<_>>(),
        "exponents": i.generators().iter().map(exponents).collect::<Vec<_>>(),
    })
}

fn valuations(vs: &[MonomialValuation]) -> Value {
    Value::Array(vs.iter().map(|v| vector(v.vector())).collect())
}

pub fn cone(c: &Cone) -> Value {
    json!({
        "ambient_dim": c.ambient_dim(),
        "dimension": c.dimension(),
        "rays": vectors(c.rays()),
        "lineality": vectors(c.lineality()),
        "facets": vectors(c.facets()),
        "equations": vectors(c.equations()),
        "simplicial": c.is_simplicial(),
        "regular": c.is_regular(),
    })
}

/// Maximal cones as sorted index lists into `rays`, in lexicographic order.
fn cone_indices(fan: &Fan, rays: &[LatticeVector]) -> Value {
    let mut cones: Vec<Vec<usize>> = fan
        .max_cones()
        .iter()
        .map(|c| {
            let mut ix: Vec<usize> = c
                .rays()
                .iter()
                .map(|r| rays.iter().position(|s| s == r).expect("ray of the fan"))
                .collect();
            ix.sort();
            ix
        })
        .collect();
    cones.sort();
    json!(cones)
}

/// A fan: its rays in lexicographic order and the maximal cones as sorted
/// index lists into them.
pub fn fan(f: &Fan) -> Value {
    let rays = f.rays();
    json!({
        "ambient_dim": f.ambient_dim(),
        "rays": vectors(&rays),
        "max_cones": cone_indices(f, &rays),
        "simplicial": f.is_simplicial(),
        "regular": f.is_regular(),
    })
}

/// A fan on the coordinate rays of Z^d, indexed by coordinate.
fn coordinate_fan(f: &Fan) -> Value {
    let d = f.ambient_dim();
    let rays: Vec<LatticeVector> = (0..d).map(|i| LatticeVector::unit(d, i)).collect();
    json!({
        "rays": vectors(&rays),
        "max_cones": cone_indices(f, &rays),
    })
}

fn facet(f: &Facet) -> Value {
    json!({
        "normal": vector(&f.normal),
        "offset": int(&f.offset),
        "exceptional": f.is_exceptional(),
    })
}

pub fn face(p: &NewtonPolytope, f: &PolytopeFace, vars: &[String]) -> Value {
    let tight: Vec<usize> =
        f.tight.iter().map(|t| p.facets().iter().position(|g| g == t).expect("facet of P")).collect();
    json!({
        "dim": f.dim,
        "vertices": f.vertices.iter().map(exponents).collect::<Vec<_>>(),
        "monomials": f.vertices.iter().map(|m| m.render(vars)).collect::<Vec<_>>(),
        "recession": f.recession,
        "tight_facets": tight,
        "exceptional": f.exceptional,
    })
}

pub fn newton(
    vars: &[String],
    i: &MonomialIdeal,
    p: &NewtonPolytope,
    rays: &[MonomialValuation],
    supporting: &[PolytopeFace],
    faces: &[PolytopeFace],
) -> Value {
    json!({
        "variables": strings(vars),
        "ideal": ideal(i, vars),
        "vertices": p.vertices().iter().map(exponents).collect::<Vec<_>>(),
        "facets": p.facets().iter().map(facet).collect::<Vec<_>>(),
        "exceptional_rays": valuations(rays),
        "supporting_faces": supporting.iter().map(|f| face(p, f, vars)).collect::<Vec<_>>(),
        "faces": faces.iter().map(|f| face(p, f, vars)).collect::<Vec<_>>(),
    })
}

pub fn normal_fan(vars: &[String], nf: &NormalFan) -> Value {
    let mut v = fan(&nf.fan);
    let obj = v.as_object_mut().expect("object");
    obj.insert("variables".into(), strings(vars));
    obj.insert("vertex_of".into(), Value::Array(nf.vertex_of.iter().map(exponents).collect()));
    v
}

fn scale(b: &BigInt) -> Value {
    rational(&BigRational::new(BigInt::one(), b.clone()))
}

pub fn presentation(p: &CobordPresentation) -> Value {
    let chart = p.chart_variables();
    let fan_coordinates: Vec<String> = p.variables.iter().map(|v| format!("{v}'")).chain(p.torus_names().iter().map(|t| format!("s{}", &t[1..]))).collect();
    let transform_gens: Vec<String> =
        p.weak_center_chart_exponents().iter().map(|e| Monomial(e.clone()).render(&chart)).collect();
    json!({
        "kind": p.kind.as_str(),
        "variables": strings(&p.variables),
        "torus": strings(&p.torus_names()),
        "chart_variables": strings(&chart),
        "valuations": valuations(&p.valuations),
        "alphas": Value::Array(p.alphas.iter().map(|r| ints(r)).collect()),
        "scales": Value::Array(p.scales.iter().map(scale).collect()),
        "generators": strings(&p.generator_strings()),
        "weak_center": {
            "generators": p.weak_center.ideal.generators().iter().map(|g| g.render(&p.variables)).collect::<Vec<_>>(),
            "shift": ints(&p.weak_center.shift),
            "transform": transform_gens,
        },
        "decomposition": fan(&p.decomposition),
        "fan_coordinates": fan_coordinates,
        "fan_B": coordinate_fan(&p.fan_b),
        "fan_Bplus": coordinate_fan(&p.fan_bplus),
        "warnings": strings(&p.warnings),
    })
}

pub fn transform(t: &TransformResult, p: &CobordPresentation) -> Value {
    json!({
        "chart_variables": strings(&p.chart_variables()),
        "shift": ints(&t.shift),
        "g": t.g.to_string(),
        "terms": t.g.num_terms(),
    })
}

pub fn ideal_transform(t: &IdealTransform, p: &CobordPresentation) -> Value {
    json!({
        "chart_variables": strings(&p.chart_variables()),
        "shift": ints(&t.shift),
        "generators": t.gs.iter().map(|g| g.to_string()).collect::<Vec<_>>(),
    })
}

pub fn complex(c: &ValuationFaceComplex) -> Value {
    json!({
        "valuations": valuations(&c.valuations),
        "delta_E": c.e_faces,
        "delta_D": c.d_faces,
    })
}

pub fn bundle(g: &GradedPresentation, vars: &[String]) -> Value {
    let names = |ix: &[usize]| ix.iter().map(|&i| vars[i].clone()).collect::<Vec<_>>();
    let gradings: Map<String, Value> =
        vars.iter().zip(&g.gradings).map(|(v, row)| (v.clone(), ints(row))).collect();
    json!({
        "omega": g.omega,
        "vanishing": names(&g.vanishing),
        "surviving": names(&g.surviving),
        "gradings": gradings,
    })
}

pub fn rees(r: &ReesPresentation) -> Value {
    let vars = &r.variables;
    json!({
        "variables": strings(vars),
        "center": ideal(&r.center, vars),
        "exponent": rational(&r.exponent),
        "valuations": valuations(&r.valuations),
        "offsets": ints(&r.offsets),
        "pieces": r.pieces.iter().map(|(m, a)| json!({"degree": m, "ideal": ideal(a, vars)})).collect::<Vec<_>>(),
        "generators": strings(&r.generator_strings()),
    })
}

pub fn quotient(q: &QuotientReport) -> Value {
    json!({
        "good": q.good,
        "geometric": q.geometric,
        "preimages": q.preimages.iter().map(|(rays, pre)| json!({"rays": vectors(rays), "coordinates": pre})).collect::<Vec<_>>(),
        "notes": q.notes,
    })
}

fn witness(w: &Witness) -> Value {
    match w {
        Witness::Point { prime, variables, coordinates } => json!({
            "kind": "point",
            "prime": prime,
            "variables": variables,
            "coordinates": coordinates,
        }),
        Witness::Variable { term, variable, exponent } => json!({
            "kind": "variable",
            "term": term,
            "variable": variable,
            "exponent": exponent,
        }),
        Witness::Term { term } => json!({"kind": "term", "term": term}),
        Witness::Divisor { variable } => json!({"kind": "divisor", "variable": variable}),
    }
}

fn condition(c: &Condition) -> Value {
    let mut m = Map::new();
    m.insert("id".into(), json!(c.id));
    m.insert("clause".into(), json!(c.clause));
    m.insert("status".into(), json!(c.status.as_str()));
    if let Some(w) = &c.witness {
        m.insert("witness".into(), witness(w));
    }
    if let Some(n) = &c.note {
        m.insert("note".into(), json!(n));
    }
    Value::Object(m)
}

pub fn report(r: &CheckReport) -> Value {
    json!({
        "check": r.check,
        "verdict": r.verdict.as_str(),
        "characteristic": r.characteristic,
        "conditions": r.conditions.iter().map(condition).collect::<Vec<_>>(),
        "budget": {"primes": r.primes, "points_tested": r.points_tested},
        "notes": r.notes,
    })
}

/// Pretty-printed JSON with a trailing newline.
pub fn to_pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}
