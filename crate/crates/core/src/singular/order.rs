//! Order of a polynomial at a point by exact coordinate shifting, truncated
//! below a degree cap.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use super::points::{mul_mod, pow_mod, scan, Budget, FpPoint, FpPoly};
use crate::error::{Error, Result};
use crate::poly::{Exponents, Field, Polynomial};

/// Coefficient arithmetic used by the shifting routine.
trait Ring {
    type E: Clone;
    fn zero(&self) -> Self::E;
    fn is_zero(&self, a: &Self::E) -> bool;
    fn add(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn mul(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn from_int(&self, c: &BigInt) -> Self::E;

    fn pow(&self, a: &Self::E, e: u32) -> Self::E {
        let mut r = self.from_int(&BigInt::one());
        for _ in 0..e {
            r = self.mul(&r, a);
        }
        r
    }
}

struct Rationals;

impl Ring for Rationals {
    type E = BigRational;
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn from_int(&self, c: &BigInt) -> BigRational {
        BigRational::from_integer(c.clone())
    }
    fn pow(&self, a: &BigRational, e: u32) -> BigRational {
        num_traits::pow(a.clone(), e as usize)
    }
}

struct ModP(u64);

impl Ring for ModP {
    type E = u64;
    fn zero(&self) -> u64 {
        0
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.0
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        mul_mod(*a, *b, self.0)
    }
    fn from_int(&self, c: &BigInt) -> u64 {
        c.mod_floor(&BigInt::from(self.0)).to_u64().expect("residue")
    }
    fn pow(&self, a: &u64, e: u32) -> u64 {
        pow_mod(*a, e as u64, self.0)
    }
}

/// Binomial coefficients C(e, i) for i < cap.
fn binomials(e: u32, cap: u64) -> Vec<BigInt> {
    let top = (e as u64).min(cap.saturating_sub(1));
    let mut out = vec![BigInt::one()];
    for i in 1..=top {
        let prev = out.last().unwrap().clone();
        out.push(prev * BigInt::from(e as u64 - i + 1) / BigInt::from(i));
    }
    out
}

/// min(ord_a(f), cap), where f is given by its terms over the ring.
fn capped_order<R: Ring>(ring: &R, terms: &[(Exponents, R::E)], a: &[R::E], cap: u64) -> u64 {
    if cap == 0 {
        return 0;
    }
    let n = a.len();
    let mut acc: HashMap<Exponents, R::E> = HashMap::new();
    for (e, c) in terms {
        // Expand c * prod (x_j + a_j)^{e_j}, keeping total degree < cap.
        let mut series: Vec<(Exponents, u64, R::E)> = vec![(vec![0; n], 0, c.clone())];
        for j in 0..n {
            if e[j] == 0 {
                continue;
            }
            let factor: Vec<(u32, R::E)> = binomials(e[j], cap)
                .iter()
                .enumerate()
                .map(|(i, b)| (i as u32, ring.mul(&ring.from_int(b), &ring.pow(&a[j], e[j] - i as u32))))
                .filter(|(_, v)| !ring.is_zero(v))
                .collect();
            let mut next = Vec::new();
            for (m, deg, v) in &series {
                for (i, w) in &factor {
                    let d = deg + *i as u64;
                    if d >= cap {
                        break;
                    }
                    let mut m2 = m.clone();
                    m2[j] += i;
                    next.push((m2, d, ring.mul(v, w)));
                }
            }
            series = next;
            if series.is_empty() {
                break;
            }
        }
        for (m, _, v) in series {
            let slot = acc.entry(m).or_insert_with(|| ring.zero());
            *slot = ring.add(slot, &v);
        }
    }
    acc.iter()
        .filter(|(_, v)| !ring.is_zero(v))
        .map(|(m, _)| m.iter().map(|&x| x as u64).sum::<u64>())
        .min()
        .unwrap_or(cap)
        .min(cap)
}

fn check_point(f: &Polynomial, a: &[BigRational]) -> Result<()> {
    if f.is_zero() {
        return Err(Error::InvalidInput("the order of the zero polynomial is infinite".into()));
    }
    if a.len() != f.nvars() {
        return Err(Error::DimensionMismatch { expected: f.nvars(), got: a.len() });
    }
    Ok(())
}

/// ord_a(f): the lowest total degree of f(x + a). Over F_p the point is
/// reduced modulo p.
pub fn order_at_point(f: &Polynomial, a: &[BigRational]) -> Result<u64> {
    check_point(f, a)?;
    let cap = f.total_degree() + 1;
    match f.field() {
        Field::Rational => {
            let terms: Vec<(Exponents, BigRational)> = f.terms().map(|(e, c)| (e.clone(), c.clone())).collect();
            Ok(capped_order(&Rationals, &terms, a, cap))
        }
        Field::Prime(p) => {
            let ring = ModP(p);
            let mut pt = Vec::with_capacity(a.len());
            for x in a {
                if (x.denom() % BigInt::from(p)).is_zero() {
                    return Err(Error::InvalidInput(format!("coordinate {x} is not defined modulo {p}")));
                }
                let inv = pow_mod(ring.from_int(x.denom()), p - 2, p);
                pt.push(ring.mul(&ring.from_int(x.numer()), &inv));
            }
            let fp = FpPoly::new(f, p)?;
            Ok(capped_order(&ring, &fp.terms, &pt, cap))
        }
        Field::Units => Err(Error::InvalidInput("orders need concrete coefficients".into())),
    }
}

/// Order of the ideal generated by `gens` at a: the minimum over generators.
pub fn ideal_order_at_point(gens: &[Polynomial], a: &[BigRational]) -> Result<u64> {
    let mut best: Option<u64> = None;
    for g in gens.iter().filter(|g| !g.is_zero()) {
        let o = order_at_point(g, a)?;
        best = Some(best.map_or(o, |b| b.min(o)));
    }
    best.ok_or(Error::EmptyIdeal)
}

/// Generators reduced to F_p, ready for repeated capped order queries.
pub(crate) struct FpIdeal {
    p: u64,
    gens: Vec<FpPoly>,
}

impl FpIdeal {
    /// Generators vanishing identically mod p are dropped; at least one must
    /// remain.
    pub fn new(gens: &[Polynomial], p: u64) -> Result<FpIdeal> {
        let gens: Vec<FpPoly> = gens
            .iter()
            .map(|g| FpPoly::new(g, p))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .filter(|g| !g.is_zero())
            .collect();
        if gens.is_empty() {
            return Err(Error::EmptyIdeal);
        }
        Ok(FpIdeal { p, gens })
    }

    /// min(ord_a(I), cap).
    pub fn capped_order(&self, pt: &[u64], cap: u64) -> u64 {
        let ring = ModP(self.p);
        if cap == 0 {
            return 0;
        }
        // Order 0 is decided by evaluation alone.
        if self.gens.iter().any(|g| g.eval(pt) != 0) {
            return 0;
        }
        let mut best = cap;
        for g in &self.gens {
            if best <= 1 {
                break;
            }
            best = best.min(capped_order(&ring, &g.terms, pt, best));
        }
        best
    }
}

/// supp(I, d) over F_p: the points where every generator has order >= d.
pub fn support_at_least(gens: &[Polynomial], d: u64, p: u64, budget: &Budget) -> Result<Vec<FpPoint>> {
    Ok(support_at_least_where(gens, d, p, budget, |_| true)?.0)
}

pub(crate) fn support_at_least_where<F>(
    gens: &[Polynomial],
    d: u64,
    p: u64,
    budget: &Budget,
    filter: F,
) -> Result<(Vec<FpPoint>, u64)>
where
    F: Fn(&[u64]) -> bool + Sync,
{
    let n = gens.first().ok_or(Error::EmptyIdeal)?.nvars();
    if let Some(g) = gens.iter().find(|g| g.nvars() != n) {
        return Err(Error::DimensionMismatch { expected: n, got: g.nvars() });
    }
    let ideal = FpIdeal::new(gens, p)?;
    scan(n, p, budget, |pt| (filter(pt) && ideal.capped_order(pt, d) >= d).then(|| pt.to_vec()))
}
