//! Exact linear algebra over Q for integer matrices.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::polyhedra::lattice::make_primitive;

pub type Q = BigRational;

pub(crate) fn to_q(row: &[BigInt]) -> Vec<Q> {
    row.iter().map(|c| Q::from_integer(c.clone())).collect()
}

/// Scale a rational vector by a positive number to a primitive integer vector.
pub(crate) fn clear_denominators(row: &[Q]) -> Vec<BigInt> {
    let l = row
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = row.iter().map(|c| (c * Q::from_integer(l.clone())).to_integer()).collect();
    make_primitive(ints)
}

/// Reduced row echelon form in place. Returns the pivot columns; rows past
/// the rank are zero and are truncated.
pub(crate) fn rref(m: &mut Vec<Vec<Q>>, ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == m.len() {
            break;
        }
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..ncols {
                    let sub = &f * &m[r][j];
                    m[i][j] -= sub;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    m.truncate(r);
    pivots
}

pub fn rank(rows: &[Vec<BigInt>], ncols: usize) -> usize {
    let mut m: Vec<Vec<Q>> = rows.iter().map(|r| to_q(r)).collect();
    rref(&mut m, ncols).len()
}

/// Canonical integer basis of the row space: RREF rows made primitive.
pub fn row_basis(rows: &[Vec<BigInt>], ncols: usize) -> Vec<Vec<BigInt>> {
    let mut m: Vec<Vec<Q>> = rows.iter().map(|r| to_q(r)).collect();
    rref(&mut m, ncols);
    m.iter().map(|r| clear_denominators(r)).collect()
}

/// Canonical integer basis of {x : rows * x = 0}, one vector per free column.
pub fn nullspace(rows: &[Vec<BigInt>], ncols: usize) -> Vec<Vec<BigInt>> {
    let mut m: Vec<Vec<Q>> = rows.iter().map(|r| to_q(r)).collect();
    let pivots = rref(&mut m, ncols);
    let mut out = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![Q::zero(); ncols];
        v[free] = Q::one();
        for (r, &pc) in pivots.iter().enumerate() {
            v[pc] = -m[r][free].clone();
        }
        out.push(clear_denominators(&v));
    }
    out
}

/// Indices of a maximal linearly independent subset of rows, chosen greedily.
pub(crate) fn independent_rows(rows: &[Vec<BigInt>], ncols: usize) -> Vec<usize> {
    let mut basis: Vec<Vec<Q>> = Vec::new();
    let mut chosen = Vec::new();
    for (i, r) in rows.iter().enumerate() {
        let mut trial = basis.clone();
        trial.push(to_q(r));
        if rref(&mut trial, ncols).len() > basis.len() {
            basis = trial;
            chosen.push(i);
            if chosen.len() == ncols {
                break;
            }
        }
    }
    chosen
}

/// Columns of the inverse of a square invertible integer matrix, each scaled
/// positively to a primitive integer vector.
pub(crate) fn inverse_columns(m: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let d = m.len();
    let mut aug: Vec<Vec<Q>> = m
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row = to_q(r);
            row.extend((0..d).map(|j| if i == j { Q::one() } else { Q::zero() }));
            row
        })
        .collect();
    let piv = rref(&mut aug, 2 * d);
    assert!(piv.len() == d && piv[d - 1] == d - 1, "matrix is singular");
    (0..d)
        .map(|j| {
            let col: Vec<Q> = (0..d).map(|i| aug[i][d + j].clone()).collect();
            clear_denominators(&col)
        })
        .collect()
}

/// Determinant by fraction-free Bareiss elimination.
pub fn det(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a: Vec<Vec<BigInt>> = m.to_vec();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                return BigInt::zero();
            };
            a.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// gcd of all maximal minors of an r x n integer matrix of rank r.
/// Equals 1 iff the rows extend to a basis of Z^n.
pub fn maximal_minor_gcd(rows: &[Vec<BigInt>], ncols: usize) -> BigInt {
    let r = rows.len();
    let mut g = BigInt::zero();
    let mut cols: Vec<usize> = (0..r).collect();
    if r > ncols {
        return g;
    }
    if r == 0 {
        return BigInt::one();
    }
    loop {
        let sub: Vec<Vec<BigInt>> = rows
            .iter()
            .map(|row| cols.iter().map(|&c| row[c].clone()).collect())
            .collect();
        g = g.gcd(&det(&sub));
        if g.is_one() {
            return g;
        }
        // advance to the next column combination
        let Some(i) = (0..r).rev().find(|&i| cols[i] != i + ncols - r) else {
            return g.abs();
        };
        cols[i] += 1;
        for j in i + 1..r {
            cols[j] = cols[j - 1] + 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    #[test]
    fn nullspace_is_orthogonal() {
        let a = m(&[&[1, 2, 3], &[2, 4, 7]]);
        let ns = nullspace(&a, 3);
        assert_eq!(ns.len(), 1);
        for r in &a {
            let d: BigInt = r.iter().zip(&ns[0]).map(|(x, y)| x * y).sum();
            assert!(d.is_zero());
        }
        assert_eq!(rank(&a, 3), 2);
    }

    #[test]
    fn determinants() {
        assert_eq!(det(&m(&[&[2, 1], &[1, 3]])), BigInt::from(5));
        assert_eq!(det(&m(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, 1]])), BigInt::from(-1));
        assert_eq!(det(&m(&[&[1, 2], &[2, 4]])), BigInt::zero());
        assert_eq!(maximal_minor_gcd(&m(&[&[1, 2, 0], &[0, 0, 1]]), 3), BigInt::one());
        assert_eq!(maximal_minor_gcd(&m(&[&[2, 0], &[0, 1]]), 2), BigInt::from(2));
    }

    #[test]
    fn inverse_columns_are_dual() {
        let a = m(&[&[1, 2], &[3, 1]]);
        let cols = inverse_columns(&a);
        for (j, c) in cols.iter().enumerate() {
            for (i, r) in a.iter().enumerate() {
                let d: BigInt = r.iter().zip(c).map(|(x, y)| x * y).sum();
                if i == j {
                    assert!(d.is_positive());
                } else {
                    assert!(d.is_zero());
                }
            }
        }
    }
}
