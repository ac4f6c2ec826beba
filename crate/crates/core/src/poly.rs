//! Sparse multivariate polynomials over Q, F_p, or with abstract unit
//! coefficients.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::newton::{minimalize, Monomial, MonomialIdeal, MonomialValuation};

pub type Exponents = Vec<u32>;

/// Coefficient domain of a polynomial.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Field {
    Rational,
    /// F_p; coefficients are stored as integers in [0, p).
    Prime(u64),
    /// Every stored coefficient stands for an unspecified unit; only the
    /// support matters.
    Units,
}

impl Field {
    pub fn characteristic(&self) -> u64 {
        match self {
            Field::Prime(p) => *p,
            _ => 0,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial {
    vars: Vec<String>,
    field: Field,
    terms: BTreeMap<Exponents, BigRational>,
}

/// Natural order on variable names: digit runs compare numerically.
pub fn natural_cmp(a: &str, b: &str) -> Ordering {
    fn chunks(s: &str) -> Vec<(bool, String)> {
        let mut out: Vec<(bool, String)> = Vec::new();
        for c in s.chars() {
            let d = c.is_ascii_digit();
            match out.last_mut() {
                Some((kind, buf)) if *kind == d => buf.push(c),
                _ => out.push((d, c.to_string())),
            }
        }
        out
    }
    let (ca, cb) = (chunks(a), chunks(b));
    for ((da, sa), (db, sb)) in ca.iter().zip(&cb) {
        let ord = match (da, db) {
            (true, true) => {
                let (na, nb) = (sa.trim_start_matches('0'), sb.trim_start_matches('0'));
                na.len().cmp(&nb.len()).then_with(|| na.cmp(nb)).then_with(|| sa.len().cmp(&sb.len()))
            }
            _ => sa.cmp(sb),
        };
        if ord != Ordering::Equal {
            return ord;
        }
    }
    ca.len().cmp(&cb.len())
}

pub fn sort_vars(vars: &mut Vec<String>) {
    vars.sort_by(|a, b| natural_cmp(a, b));
    vars.dedup();
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn reduce_coeff(c: &BigRational, field: Field) -> Result<BigRational> {
    match field {
        Field::Rational => Ok(c.clone()),
        Field::Units => Ok(if c.is_zero() { BigRational::zero() } else { BigRational::one() }),
        Field::Prime(p) => {
            let p = BigInt::from(p);
            let den = c.denom().mod_floor(&p);
            if den.is_zero() {
                return Err(Error::InvalidInput(format!("coefficient {c} has a denominator divisible by {p}")));
            }
            let inv = den.modpow(&(&p - 2u32), &p);
            Ok(BigRational::from_integer((c.numer() * inv).mod_floor(&p)))
        }
    }
}

impl Polynomial {
    /// Build from terms; coefficients are reduced into the field and zero
    /// terms are dropped. Like exponents are summed.
    pub fn new(vars: Vec<String>, field: Field, terms: Vec<(Exponents, BigRational)>) -> Result<Polynomial> {
        if let Field::Prime(p) = field {
            if !is_prime(p) {
                return Err(Error::InvalidInput(format!("{p} is not prime")));
            }
        }
        let n = vars.len();
        let mut map: BTreeMap<Exponents, BigRational> = BTreeMap::new();
        for (e, c) in terms {
            if e.len() != n {
                return Err(Error::DimensionMismatch { expected: n, got: e.len() });
            }
            if field == Field::Units {
                if !c.is_zero() {
                    map.insert(e, BigRational::one());
                }
                continue;
            }
            *map.entry(e).or_insert_with(BigRational::zero) += c;
        }
        let mut terms = BTreeMap::new();
        for (e, c) in map {
            let c = reduce_coeff(&c, field)?;
            if !c.is_zero() {
                terms.insert(e, c);
            }
        }
        Ok(Polynomial { vars, field, terms })
    }

    pub fn zero(vars: Vec<String>, field: Field) -> Polynomial {
        Polynomial { vars, field, terms: BTreeMap::new() }
    }

    pub fn constant(vars: Vec<String>, field: Field, c: BigRational) -> Result<Polynomial> {
        let n = vars.len();
        Self::new(vars, field, vec![(vec![0; n], c)])
    }

    pub fn variable(vars: Vec<String>, field: Field, index: usize) -> Polynomial {
        let mut e = vec![0; vars.len()];
        e[index] = 1;
        Self::new(vars, field, vec![(e, BigRational::one())]).expect("variable")
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending lexicographic order of exponents.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Exponents, &BigRational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, e: &[u32]) -> BigRational {
        self.terms.get(e).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn support(&self) -> Vec<Monomial> {
        self.terms.keys().cloned().map(Monomial).collect()
    }

    /// The monomial ideal generated by the support.
    pub fn support_ideal(&self) -> Result<MonomialIdeal> {
        minimalize(&self.support())
    }

    pub fn total_degree(&self) -> u64 {
        self.terms.keys().map(|e| e.iter().map(|&x| x as u64).sum()).max().unwrap_or(0)
    }

    /// min over terms of <v, alpha>.
    pub fn valuation(&self, v: &MonomialValuation) -> Result<BigInt> {
        self.terms
            .keys()
            .map(|e| v.of_exponents(e))
            .min()
            .ok_or_else(|| Error::InvalidInput("valuation of zero undefined".into()))
    }

    /// Keep only the terms whose exponent satisfies the predicate.
    pub fn filter_terms(&self, keep: impl Fn(&[u32]) -> bool) -> Polynomial {
        Polynomial {
            vars: self.vars.clone(),
            field: self.field,
            terms: self.terms.iter().filter(|(e, _)| keep(e)).map(|(e, c)| (e.clone(), c.clone())).collect(),
        }
    }

    /// Re-express over another variable list, matched by name. Variables of
    /// self that no term uses may be absent from the target.
    pub fn with_vars(&self, vars: &[String]) -> Result<Polynomial> {
        let map: Vec<Option<usize>> = self.vars.iter().map(|v| vars.iter().position(|w| w == v)).collect();
        for (i, m) in map.iter().enumerate() {
            if m.is_none() && self.terms.keys().any(|e| e[i] > 0) {
                return Err(Error::InvalidInput(format!(
                    "variable {} is not among {}",
                    self.vars[i],
                    vars.join(",")
                )));
            }
        }
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mut f = vec![0; vars.len()];
                for (i, &x) in e.iter().enumerate() {
                    if let Some(j) = map[i] {
                        f[j] = x;
                    }
                }
                (f, c.clone())
            })
            .collect();
        Self::new(vars.to_vec(), self.field, terms)
    }

    /// Change field, reducing coefficients (e.g. Q to F_p).
    pub fn with_field(&self, field: Field) -> Result<Polynomial> {
        Self::new(self.vars.clone(), field, self.terms.iter().map(|(e, c)| (e.clone(), c.clone())).collect())
    }

    /// Reduction to F_p of a polynomial over Q (or a check over F_p).
    pub fn reduce_mod(&self, p: u64) -> Result<Polynomial> {
        match self.field {
            Field::Prime(q) if q == p => Ok(self.clone()),
            Field::Prime(q) => Err(Error::InvalidInput(format!("polynomial is over F_{q}, not F_{p}"))),
            Field::Units => Err(Error::InvalidInput("abstract-unit coefficients cannot be reduced".into())),
            Field::Rational => self.with_field(Field::Prime(p)),
        }
    }

    fn unify(&self, other: &Polynomial) -> (Polynomial, Polynomial) {
        assert_eq!(self.field, other.field, "field mismatch");
        if self.vars == other.vars {
            return (self.clone(), other.clone());
        }
        let mut vars: Vec<String> = self.vars.iter().chain(&other.vars).cloned().collect();
        sort_vars(&mut vars);
        (self.with_vars(&vars).expect("superset"), other.with_vars(&vars).expect("superset"))
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let (a, b) = self.unify(other);
        let terms = a.terms.into_iter().chain(b.terms).collect();
        Self::new(a.vars, a.field, terms).expect("sum")
    }

    pub fn neg(&self) -> Polynomial {
        let terms = self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect();
        Self::new(self.vars.clone(), self.field, terms).expect("negation")
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        let (a, b) = self.unify(other);
        let mut terms = Vec::with_capacity(a.terms.len() * b.terms.len());
        for (ea, ca) in &a.terms {
            for (eb, cb) in &b.terms {
                terms.push((ea.iter().zip(eb).map(|(x, y)| x + y).collect(), ca * cb));
            }
        }
        Self::new(a.vars, a.field, terms).expect("product")
    }

    pub fn pow(&self, k: u32) -> Polynomial {
        let n = self.vars.len();
        let mut acc = Self::new(self.vars.clone(), self.field, vec![(vec![0; n], BigRational::one())]).expect("one");
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn scale(&self, c: &BigRational) -> Polynomial {
        let terms = self.terms.iter().map(|(e, d)| (e.clone(), d * c)).collect();
        Self::new(self.vars.clone(), self.field, terms).expect("scale")
    }

    /// The constant value if the polynomial has no non-constant terms.
    pub fn as_constant(&self) -> Option<BigRational> {
        match self.terms.len() {
            0 => Some(BigRational::zero()),
            1 => {
                let (e, c) = self.terms.iter().next().unwrap();
                e.iter().all(|&x| x == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    /// Coefficients as residues when the field is F_p.
    pub(crate) fn residue_terms(&self, p: u64) -> Vec<(Exponents, u64)> {
        self.terms
            .iter()
            .map(|(e, c)| (e.clone(), c.to_integer().mod_floor(&BigInt::from(p)).to_u64().unwrap()))
            .collect()
    }
}

fn render_monomial(vars: &[String], e: &[u32]) -> String {
    Monomial(e.to_vec()).render(vars)
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            write!(f, "0")?;
        }
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let is_const = e.iter().all(|&x| x == 0);
            let neg = c.is_negative();
            let mag = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            let body = render_monomial(&self.vars, e);
            if is_const {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{body}")?;
            } else {
                write!(f, "{mag}*{body}")?;
            }
        }
        match self.field {
            Field::Rational => Ok(()),
            Field::Prime(p) => write!(f, " @{p}"),
            Field::Units => write!(f, " @units"),
        }
    }
}
