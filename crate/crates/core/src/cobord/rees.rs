use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Signed;

use crate::error::{Error, Result};
use crate::newton::{newton_polytope, valuation_ideal, Monomial, MonomialIdeal, MonomialValuation};

/// The simple cobordant blow-up B = Spec O[t^-1, A_1 t, A_2 t^2, ...] of a
/// (Q-)ideal J^{p/q}, where A_m is the integral closure of J^{mp/q}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReesPresentation {
    pub variables: Vec<String>,
    pub center: MonomialIdeal,
    pub exponent: BigRational,
    /// Facet normals of P_J with positive offset, and those offsets.
    pub valuations: Vec<MonomialValuation>,
    pub offsets: Vec<BigInt>,
    /// (m, A_m) for m = 1..=cutoff.
    pub pieces: Vec<(u64, MonomialIdeal)>,
    /// Algebra generators x^beta t^m (m <= cutoff) not obtained from lower
    /// degrees or from degree m + 1 through t^-1.
    pub algebra_generators: Vec<(u64, Monomial)>,
}

impl ReesPresentation {
    pub fn generator_strings(&self) -> Vec<String> {
        let mut out = vec!["t^-1".to_string()];
        for (m, g) in &self.algebra_generators {
            let t = if *m == 1 { "t".to_string() } else { format!("t^{m}") };
            if g.is_one() {
                out.push(t);
            } else {
                out.push(format!("{}*{t}", g.render(&self.variables)));
            }
        }
        out
    }
}

fn piece(vals: &[MonomialValuation], offsets: &[BigInt], exponent: &BigRational, m: u64) -> Result<MonomialIdeal> {
    let bounds: Vec<BigInt> = offsets
        .iter()
        .map(|a| (BigRational::from_integer(a * BigInt::from(m)) * exponent).ceil().to_integer())
        .collect();
    valuation_ideal(vals, &bounds)
}

/// Whether x^beta lies in A_i * A_j.
fn in_product(beta: &Monomial, a: &MonomialIdeal, b: &MonomialIdeal) -> bool {
    a.generators().iter().any(|g| {
        g.divides(beta) && b.contains(&Monomial(beta.0.iter().zip(&g.0).map(|(x, y)| x - y).collect()))
    })
}

pub fn simple_cobordant(
    variables: &[String],
    j: &MonomialIdeal,
    exponent: &BigRational,
    cutoff: u64,
) -> Result<ReesPresentation> {
    if variables.len() != j.nvars() {
        return Err(Error::DimensionMismatch { expected: j.nvars(), got: variables.len() });
    }
    if !exponent.is_positive() {
        return Err(Error::InvalidInput("the exponent of a Q-ideal must be positive".into()));
    }
    if cutoff == 0 {
        return Err(Error::InvalidInput("degree cutoff must be at least 1".into()));
    }
    let p = newton_polytope(j);
    let mut valuations = Vec::new();
    let mut offsets = Vec::new();
    for f in p.facets() {
        if f.offset.is_positive() {
            valuations.push(MonomialValuation::new(f.normal.clone())?);
            offsets.push(f.offset.clone());
        }
    }
    let n = j.nvars();
    let mut all: Vec<MonomialIdeal> = vec![MonomialIdeal::unit(n)];
    for m in 1..=cutoff + 1 {
        if valuations.is_empty() {
            all.push(MonomialIdeal::unit(n));
        } else {
            all.push(piece(&valuations, &offsets, exponent, m)?);
        }
    }
    let mut algebra_generators = Vec::new();
    for m in 1..=cutoff as usize {
        for g in all[m].generators() {
            if all[m + 1].contains(g) {
                continue;
            }
            if (1..m).any(|i| in_product(g, &all[i], &all[m - i])) {
                continue;
            }
            algebra_generators.push((m as u64, g.clone()));
        }
    }
    let pieces = (1..=cutoff).map(|m| (m, all[m as usize].clone())).collect();
    Ok(ReesPresentation {
        variables: variables.to_vec(),
        center: j.clone(),
        exponent: exponent.clone(),
        valuations,
        offsets,
        pieces,
        algebra_generators,
    })
}

/// An exponent p/q in lowest terms from integers.
pub fn ratio(p: i64, q: i64) -> BigRational {
    let g = p.gcd(&q).max(1);
    BigRational::new((p / g).into(), (q / g).into())
}
