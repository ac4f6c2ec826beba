use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use super::presentation::CobordPresentation;
use crate::error::{Error, Result};
use crate::newton::{minimalize, Monomial, MonomialIdeal};
use crate::poly::Polynomial;

/// g = s^{-a} f(u_j' s^{alpha_j}) in the chart variables (s_1..s_k, u').
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransformResult {
    pub shift: Vec<BigInt>,
    pub g: Polynomial,
}

fn embed(f: &Polynomial, p: &CobordPresentation) -> Result<Polynomial> {
    if f.is_zero() {
        return Err(Error::InvalidInput("cannot transform the zero polynomial".into()));
    }
    f.with_vars(&p.variables)
}

/// a_i = min over terms of <alphas_i, alpha>.
fn shift_of(f: &Polynomial, p: &CobordPresentation) -> Vec<BigInt> {
    (0..p.k())
        .map(|i| {
            f.terms()
                .map(|(e, _)| grade(&p.alphas[i], e))
                .min()
                .expect("nonzero polynomial")
        })
        .collect()
}

fn grade(row: &[BigInt], e: &[u32]) -> BigInt {
    row.iter().zip(e).map(|(a, &x)| a * BigInt::from(x)).sum()
}

fn substitute(f: &Polynomial, p: &CobordPresentation, shift: &[BigInt]) -> Result<Polynomial> {
    let k = p.k();
    let mut terms = Vec::new();
    for (e, c) in f.terms() {
        let mut ex: Vec<u32> = Vec::with_capacity(k + e.len());
        for i in 0..k {
            let d = grade(&p.alphas[i], e) - &shift[i];
            if d.is_negative() {
                return Err(Error::InvalidInput("shift exceeds the valuation of a term".into()));
            }
            ex.push(d.to_u32().ok_or_else(|| Error::TooLarge("exponent".into()))?);
        }
        ex.extend_from_slice(e);
        terms.push((ex, c.clone()));
    }
    Polynomial::new(p.chart_variables(), f.field(), terms)
}

/// Weak (equal to strict, for a single polynomial) transform of f.
pub fn transform(f: &Polynomial, p: &CobordPresentation) -> Result<TransformResult> {
    let f = embed(f, p)?;
    let shift = shift_of(&f, p);
    let g = substitute(&f, p, &shift)?;
    Ok(TransformResult { shift, g })
}

/// Weak transform of an ideal given by generators: one common shift, the
/// minimum of the generators' shifts.
pub fn weak_transform_ideal(fs: &[Polynomial], p: &CobordPresentation) -> Result<IdealTransform> {
    if fs.is_empty() {
        return Err(Error::EmptyIdeal);
    }
    let embedded: Vec<Polynomial> = fs.iter().map(|f| embed(f, p)).collect::<Result<_>>()?;
    let shifts: Vec<Vec<BigInt>> = embedded.iter().map(|f| shift_of(f, p)).collect();
    let shift: Vec<BigInt> =
        (0..p.k()).map(|i| shifts.iter().map(|s| s[i].clone()).min().expect("nonempty")).collect();
    let gs = embedded.iter().map(|f| substitute(f, p, &shift)).collect::<Result<_>>()?;
    Ok(IdealTransform { shift, gs })
}

/// Weak transform of a list of generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealTransform {
    pub shift: Vec<BigInt>,
    pub gs: Vec<Polynomial>,
}

/// Strict transform of a monomial ideal in the chart: the s-parts of the
/// weak-transform generators are units off the exceptional divisors, and
/// saturating removes them.
pub fn strict_transform_monomial(j: &MonomialIdeal, p: &CobordPresentation) -> Result<MonomialIdeal> {
    if j.nvars() != p.nvars() {
        return Err(Error::DimensionMismatch { expected: p.nvars(), got: j.nvars() });
    }
    let k = p.k();
    let gens: Vec<Monomial> = j
        .generators()
        .iter()
        .map(|g| {
            let mut e = vec![0u32; k];
            e.extend_from_slice(&g.0);
            Monomial(e)
        })
        .collect();
    minimalize(&gens)
}

/// Undo the substitution: map s_i -> t_i^{-1}, u_j' -> u_j t^{alpha_j},
/// multiply by t^{-a}, and require every torus exponent to cancel.
pub fn substitute_back(g: &Polynomial, p: &CobordPresentation, shift: &[BigInt]) -> Result<Polynomial> {
    let g = g.with_vars(&p.chart_variables())?;
    let k = p.k();
    let mut terms: Vec<(Vec<u32>, BigRational)> = Vec::new();
    for (e, c) in g.terms() {
        let (s, u) = e.split_at(k);
        for i in 0..k {
            // t_i exponent: sum_j alpha_ij u_j - s_i - a_i
            let t = grade(&p.alphas[i], u) - BigInt::from(s[i]) - &shift[i];
            if !t.is_zero() {
                return Err(Error::InvalidInput(format!("term leaves a factor t{}^{t}", i + 1)));
            }
        }
        terms.push((u.to_vec(), c.clone()));
    }
    Polynomial::new(p.variables.clone(), g.field(), terms)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cobord::{full_cobordization, weighted_cobordant, WeightedCenter};
    use crate::parse::{parse_ideal, parse_poly, parse_poly_with_vars};

    #[test]
    fn example_transform() {
        let j = parse_ideal("[x^3, x*y, y^4]").unwrap();
        let p = full_cobordization(&j.vars, &j.ideal).unwrap();
        let f = parse_poly("x^3 + x*y + y^4").unwrap();
        let t = transform(&f, &p).unwrap();
        assert_eq!(t.shift, vec![BigInt::from(3), BigInt::from(4)]);
        let expect = parse_poly_with_vars("x'^3*s2^5 + x'*y' + y'^4*s1^5", &p.chart_variables()).unwrap();
        assert_eq!(t.g, expect);
        assert_eq!(t.g.to_string(), "s1^5*y'^4 + s2^5*x'^3 + x'*y'");
        assert_eq!(substitute_back(&t.g, &p, &t.shift).unwrap(), f);
    }

    #[test]
    fn weighted_transform() {
        let vars = vec!["x".to_string(), "y".to_string()];
        let c = WeightedCenter::new(2, vec![0, 1], vec![1.into(), 1.into()]).unwrap();
        let p = weighted_cobordant(&vars, &c).unwrap();
        let t = transform(&parse_poly("x").unwrap(), &p).unwrap();
        assert_eq!(t.shift, vec![BigInt::from(1)]);
        assert_eq!(t.g.to_string(), "x'");

        let c = WeightedCenter::new(2, vec![0, 1], vec![3.into(), 2.into()]).unwrap();
        let p = weighted_cobordant(&vars, &c).unwrap();
        let t = transform(&parse_poly("x^2 + y^3").unwrap(), &p).unwrap();
        assert_eq!(t.shift, vec![BigInt::from(6)]);
        assert_eq!(t.g.to_string(), "x'^2 + y'^3");
    }

    #[test]
    fn ideal_weak_transform() {
        let j = parse_ideal("[x^3, x*y, y^4]").unwrap();
        let p = full_cobordization(&j.vars, &j.ideal).unwrap();
        let gens: Vec<Polynomial> = ["x^3", "x*y", "y^4"].iter().map(|s| parse_poly_with_vars(s, &j.vars).unwrap()).collect();
        let w = weak_transform_ideal(&gens, &p).unwrap();
        assert_eq!(w.shift, p.weak_center.shift);
        let printed: Vec<String> = w.gs.iter().map(|g| g.to_string()).collect();
        assert_eq!(printed, vec!["s2^5*x'^3", "x'*y'", "s1^5*y'^4"]);
        assert!(transform(&Polynomial::zero(j.vars.clone(), crate::poly::Field::Rational), &p).is_err());
    }
}
