use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// An integer vector in Z^n. Ordering is lexicographic on coordinates.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LatticeVector(Vec<BigInt>);

impl LatticeVector {
    pub fn new(coords: Vec<BigInt>) -> Self {
        LatticeVector(coords)
    }

    pub fn from_i64(coords: &[i64]) -> Self {
        LatticeVector(coords.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero(n: usize) -> Self {
        LatticeVector(vec![BigInt::zero(); n])
    }

    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = Self::zero(n);
        v.0[i] = BigInt::one();
        v
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<BigInt> {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|c| c.is_zero())
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|c| !c.is_negative())
    }

    /// Index of the single nonzero coordinate if this is a standard basis vector.
    pub fn unit_index(&self) -> Option<usize> {
        let mut found = None;
        for (i, c) in self.0.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !c.is_one() || found.is_some() {
                return None;
            }
            found = Some(i);
        }
        found
    }

    pub fn dot(&self, other: &LatticeVector) -> BigInt {
        dot(&self.0, &other.0)
    }

    /// gcd of the coordinates (0 for the zero vector).
    pub fn content(&self) -> BigInt {
        content(&self.0)
    }

    pub fn is_primitive(&self) -> bool {
        self.content().is_one()
    }

    /// Divide by the content. Fails on the zero vector.
    pub fn primitive(&self) -> Result<LatticeVector> {
        let g = self.content();
        if g.is_zero() {
            return Err(Error::ZeroVector);
        }
        Ok(LatticeVector(self.0.iter().map(|c| c / &g).collect()))
    }

    pub fn neg(&self) -> LatticeVector {
        LatticeVector(self.0.iter().map(|c| -c).collect())
    }

    pub fn add(&self, other: &LatticeVector) -> LatticeVector {
        LatticeVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn scale(&self, k: &BigInt) -> LatticeVector {
        LatticeVector(self.0.iter().map(|c| c * k).collect())
    }

    /// Append coordinates (used for block vectors in Z^{n+k}).
    pub fn concat(&self, tail: &[BigInt]) -> LatticeVector {
        let mut c = self.0.clone();
        c.extend_from_slice(tail);
        LatticeVector(c)
    }

    pub fn to_i64_vec(&self) -> Option<Vec<i64>> {
        self.0.iter().map(|c| c.to_i64()).collect()
    }
}

impl fmt::Display for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl From<Vec<i64>> for LatticeVector {
    fn from(v: Vec<i64>) -> Self {
        LatticeVector::from_i64(&v)
    }
}

pub(crate) fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub(crate) fn content(v: &[BigInt]) -> BigInt {
    v.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
}

/// Divide an integer vector by its content, keeping the sign.
pub(crate) fn make_primitive(v: Vec<BigInt>) -> Vec<BigInt> {
    let g = content(&v);
    if g.is_zero() || g.is_one() {
        return v;
    }
    v.into_iter().map(|c| c / &g).collect()
}
