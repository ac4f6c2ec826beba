//! F_p evaluation and parallel enumeration of rational points.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::poly::{Exponents, Field, Polynomial};

/// Largest number of variables enumerated by brute force.
pub const MAX_ENUMERATION_VARS: usize = 8;

/// Cap on the number of points visited by one enumeration.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    pub max_points: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { max_points: 10_000_000 }
    }
}

impl Budget {
    pub const ENV_VAR: &'static str = "COXCOB_BUDGET";

    /// The default budget, overridden by `COXCOB_BUDGET` when it parses.
    pub fn from_env() -> Self {
        std::env::var(Self::ENV_VAR)
            .ok()
            .and_then(|s| s.trim().parse().ok())
            .map(|max_points| Budget { max_points })
            .unwrap_or_default()
    }

    /// Number of points of F_p^n, or an error if it exceeds the budget.
    pub fn points(&self, n: usize, p: u64) -> Result<u64> {
        if n > MAX_ENUMERATION_VARS {
            return Err(Error::TooLarge(format!("{n} variables (at most {MAX_ENUMERATION_VARS} are enumerated)")));
        }
        let needed = (p as u128).pow(n as u32);
        if needed > self.max_points as u128 {
            return Err(Error::BudgetExceeded { needed, cap: self.max_points });
        }
        Ok(needed as u64)
    }
}

pub(crate) fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub(crate) fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    r
}

/// A polynomial over F_p with residue coefficients, for fast evaluation.
#[derive(Clone, Debug)]
pub(crate) struct FpPoly {
    pub p: u64,
    pub terms: Vec<(Exponents, u64)>,
}

impl FpPoly {
    /// Reduce f to F_p. Rational coefficients with denominators divisible
    /// by p are rejected by the reduction.
    pub fn new(f: &Polynomial, p: u64) -> Result<FpPoly> {
        if f.field() == Field::Units {
            return Err(Error::InvalidInput("point enumeration needs concrete coefficients".into()));
        }
        let r = f.reduce_mod(p)?;
        Ok(FpPoly { p, terms: r.residue_terms(p) })
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn eval(&self, pt: &[u64]) -> u64 {
        let p = self.p;
        let mut acc = 0u64;
        for (e, c) in &self.terms {
            let mut v = *c;
            for (&x, &k) in pt.iter().zip(e) {
                if k > 0 {
                    v = mul_mod(v, pow_mod(x, k as u64, p), p);
                    if v == 0 {
                        break;
                    }
                }
            }
            acc = (acc + v) % p;
        }
        acc
    }

    pub fn derivative(&self, j: usize) -> FpPoly {
        let p = self.p;
        let terms = self
            .terms
            .iter()
            .filter(|(e, _)| e[j] > 0)
            .filter_map(|(e, c)| {
                let c = mul_mod(*c, e[j] as u64 % p, p);
                (c != 0).then(|| {
                    let mut e = e.clone();
                    e[j] -= 1;
                    (e, c)
                })
            })
            .collect();
        FpPoly { p, terms }
    }

    pub fn gradient(&self, n: usize) -> Vec<FpPoly> {
        (0..n).map(|j| self.derivative(j)).collect()
    }

    /// f(a) = 0 and every first partial vanishes at a.
    pub fn is_singular_at(&self, grad: &[FpPoly], pt: &[u64]) -> bool {
        self.eval(pt) == 0 && grad.iter().all(|g| g.eval(pt) == 0)
    }
}

/// Whether the monomial x^e vanishes at the point.
pub(crate) fn monomial_vanishes(e: &[u32], pt: &[u64]) -> bool {
    e.iter().zip(pt).any(|(&k, &x)| k > 0 && x == 0)
}

/// Visit every point of F_p^n in parallel and keep the values `keep`
/// returns, in lexicographic order of the points. Also returns the number
/// of points visited.
pub(crate) fn scan<T, F>(n: usize, p: u64, budget: &Budget, keep: F) -> Result<(Vec<T>, u64)>
where
    T: Send,
    F: Fn(&[u64]) -> Option<T> + Sync,
{
    let total = budget.points(n, p)?;
    let out: Vec<T> = (0..total)
        .into_par_iter()
        .map_init(
            || vec![0u64; n],
            |pt, mut idx| {
                for slot in pt.iter_mut().rev() {
                    *slot = idx % p;
                    idx /= p;
                }
                keep(pt)
            },
        )
        .flatten_iter()
        .collect();
    Ok((out, total))
}

/// A point as residues in [0, p).
pub type FpPoint = Vec<u64>;

/// All a in F_p^n with f(a) = 0 and all partial derivatives zero at a,
/// sorted lexicographically.
pub fn jacobian_singular_points(f: &Polynomial, p: u64, budget: &Budget) -> Result<Vec<FpPoint>> {
    Ok(singular_points_where(f, p, budget, |_| true)?.0)
}

/// Singular points of V(f) over F_p among those accepted by `filter`, with
/// the number of points visited.
pub(crate) fn singular_points_where<F>(f: &Polynomial, p: u64, budget: &Budget, filter: F) -> Result<(Vec<FpPoint>, u64)>
where
    F: Fn(&[u64]) -> bool + Sync,
{
    if f.is_zero() {
        return Err(Error::InvalidInput("the zero polynomial does not define a hypersurface".into()));
    }
    let fp = FpPoly::new(f, p)?;
    if fp.is_zero() {
        return Err(Error::InvalidInput(format!("f vanishes identically modulo {p}")));
    }
    let n = f.nvars();
    let grad = fp.gradient(n);
    scan(n, p, budget, |pt| (filter(pt) && fp.is_singular_at(&grad, pt)).then(|| pt.to_vec()))
}
