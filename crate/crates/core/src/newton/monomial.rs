use std::fmt;

use num_bigint::BigInt;
use num_traits::Signed;

use crate::error::{Error, Result};
use crate::polyhedra::LatticeVector;

/// A monomial x^alpha, stored by its exponent vector.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    pub fn one(n: usize) -> Self {
        Monomial(vec![0; n])
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    /// Whether self divides other.
    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    pub fn to_lattice(&self) -> LatticeVector {
        LatticeVector::new(self.0.iter().map(|&e| BigInt::from(e)).collect())
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.0.len()).filter(|&j| self.0[j] > 0).collect()
    }

    /// Render with the given variable names, e.g. "x^3*y".
    pub fn render(&self, vars: &[String]) -> String {
        let parts: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(j, &e)| if e == 1 { vars[j].clone() } else { format!("{}^{}", vars[j], e) })
            .collect();
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }
}

/// A monomial ideal stored by its minimal generators in descending
/// lexicographic order of exponent vectors.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonomialIdeal {
    nvars: usize,
    gens: Vec<Monomial>,
}

/// Remove every monomial divisible by another one of the set.
pub fn minimalize(gens: &[Monomial]) -> Result<MonomialIdeal> {
    let Some(first) = gens.first() else {
        return Err(Error::EmptyIdeal);
    };
    let n = first.nvars();
    if let Some(bad) = gens.iter().find(|g| g.nvars() != n) {
        return Err(Error::DimensionMismatch { expected: n, got: bad.nvars() });
    }
    let mut sorted = gens.to_vec();
    sorted.sort();
    sorted.dedup();
    let minimal: Vec<Monomial> = sorted
        .iter()
        .filter(|g| !sorted.iter().any(|h| h != *g && h.divides(g)))
        .cloned()
        .collect();
    Ok(MonomialIdeal::from_minimal(n, minimal))
}

impl MonomialIdeal {
    fn from_minimal(nvars: usize, mut gens: Vec<Monomial>) -> Self {
        gens.sort_by(|a, b| b.cmp(a));
        MonomialIdeal { nvars, gens }
    }

    /// Convenience constructor from exponent rows.
    pub fn from_exponents(rows: &[Vec<u32>]) -> Result<Self> {
        minimalize(&rows.iter().cloned().map(Monomial).collect::<Vec<_>>())
    }

    pub fn unit(n: usize) -> Self {
        MonomialIdeal { nvars: n, gens: vec![Monomial::one(n)] }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn generators(&self) -> &[Monomial] {
        &self.gens
    }

    pub fn is_principal(&self) -> bool {
        self.gens.len() == 1
    }

    pub fn is_unit(&self) -> bool {
        self.gens.len() == 1 && self.gens[0].is_one()
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.gens.iter().any(|g| g.divides(m))
    }

    /// Inclusion of ideals.
    pub fn is_subset(&self, other: &MonomialIdeal) -> bool {
        self.gens.iter().all(|g| other.contains(g))
    }

    pub fn product(&self, other: &MonomialIdeal) -> MonomialIdeal {
        let prods: Vec<Monomial> =
            self.gens.iter().flat_map(|a| other.gens.iter().map(move |b| a.mul(b))).collect();
        minimalize(&prods).expect("nonempty product")
    }

    /// Size of a smallest set of variables meeting the support of every
    /// generator; this is the codimension of V(I). The unit ideal has none,
    /// reported as `None`.
    pub fn codimension(&self) -> Option<usize> {
        if self.is_unit() {
            return None;
        }
        let n = self.nvars;
        let masks: Vec<u64> = self
            .gens
            .iter()
            .map(|g| g.support().iter().fold(0u64, |m, &j| m | (1 << j)))
            .collect();
        (0..(1u64 << n))
            .filter(|s| masks.iter().all(|m| m & s != 0))
            .map(|s| s.count_ones() as usize)
            .min()
    }

    pub fn render(&self, vars: &[String]) -> String {
        let parts: Vec<String> = self.gens.iter().map(|g| g.render(vars)).collect();
        format!("[{}]", parts.join(", "))
    }
}

/// A monomial valuation: a nonzero lattice vector with nonnegative entries.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MonomialValuation(LatticeVector);

impl MonomialValuation {
    pub fn new(v: LatticeVector) -> Result<Self> {
        if v.coords().iter().any(|c| c.is_negative()) {
            return Err(Error::InvalidValuation(format!("{v} has a negative entry")));
        }
        if v.is_zero() {
            return Err(Error::InvalidValuation("zero vector".into()));
        }
        Ok(MonomialValuation(v))
    }

    pub fn from_i64(v: &[i64]) -> Result<Self> {
        Self::new(LatticeVector::from_i64(v))
    }

    pub fn vector(&self) -> &LatticeVector {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.dim()
    }

    pub fn of_exponents(&self, alpha: &[u32]) -> BigInt {
        self.0.coords().iter().zip(alpha).map(|(v, &a)| v * BigInt::from(a)).sum()
    }

    pub fn of_monomial(&self, m: &Monomial) -> BigInt {
        self.of_exponents(&m.0)
    }

    /// Minimum over the generators.
    pub fn of_ideal(&self, i: &MonomialIdeal) -> BigInt {
        i.gens.iter().map(|g| self.of_monomial(g)).min().expect("nonempty ideal")
    }

    /// Value on x_j.
    pub fn coordinate(&self, j: usize) -> &BigInt {
        &self.0.coords()[j]
    }
}

impl fmt::Display for MonomialValuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}
