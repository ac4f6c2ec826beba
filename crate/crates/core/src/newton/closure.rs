use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use super::monomial::{minimalize, Monomial, MonomialIdeal, MonomialValuation};
use super::polytope::newton_polytope;
use crate::error::{Error, Result};

/// Minimal lattice points of an upward-closed set inside the box
/// [0, bounds]. A point is minimal iff no unit decrement stays in the set.
fn minimal_points(bounds: &[u32], member: impl Fn(&[u32]) -> bool) -> Vec<Monomial> {
    let n = bounds.len();
    let mut out = Vec::new();
    let mut m = vec![0u32; n];
    loop {
        if member(&m) {
            let minimal = (0..n).all(|j| {
                if m[j] == 0 {
                    return true;
                }
                m[j] -= 1;
                let inside = member(&m);
                m[j] += 1;
                !inside
            });
            if minimal {
                out.push(Monomial(m.clone()));
            }
        }
        let mut j = 0;
        while j < n && m[j] == bounds[j] {
            m[j] = 0;
            j += 1;
        }
        if j == n {
            break;
        }
        m[j] += 1;
    }
    out
}

/// Integral closure: the monomials whose exponents lie in the Newton polytope.
///
/// Enumeration is confined to the box bounded by the componentwise maximum
/// M of the vertices. This is complete: if m lies in P and m_j > M_j, write
/// m = p + r with p in conv(vertices) and r >= 0. Then r_j = m_j - p_j >= 1,
/// so m - e_j = p + (r - e_j) is still in P and m is not minimal.
pub fn integral_closure(ideal: &MonomialIdeal) -> MonomialIdeal {
    let p = newton_polytope(ideal);
    let n = p.nvars();
    let bounds: Vec<u32> = (0..n).map(|j| p.vertices().iter().map(|v| v.0[j]).max().unwrap_or(0)).collect();
    let pts = minimal_points(&bounds, |m| p.contains(m));
    minimalize(&pts).expect("closure contains the generators")
}

/// {x^m : <v_i, m> >= a_i for all i}. Non-positive bounds impose nothing.
///
/// The box bound for coordinate j is max over i with v_ij > 0 of
/// ceil(a_i / v_ij): past it, decrementing m_j keeps every constraint.
pub fn valuation_ideal(vals: &[MonomialValuation], bounds: &[BigInt]) -> Result<MonomialIdeal> {
    if vals.len() != bounds.len() {
        return Err(Error::DimensionMismatch { expected: vals.len(), got: bounds.len() });
    }
    let Some(first) = vals.first() else {
        return Err(Error::InvalidInput("no valuations given".into()));
    };
    let n = first.nvars();
    if let Some(v) = vals.iter().find(|v| v.nvars() != n) {
        return Err(Error::DimensionMismatch { expected: n, got: v.nvars() });
    }
    let bounds: Vec<BigInt> =
        bounds.iter().map(|a| if a.is_negative() { BigInt::zero() } else { a.clone() }).collect();
    let mut boxb = vec![0u32; n];
    for (j, b) in boxb.iter_mut().enumerate() {
        for (v, a) in vals.iter().zip(&bounds) {
            let c = v.coordinate(j);
            if c.is_positive() {
                let need = a.div_ceil(c).to_u32().ok_or_else(|| Error::TooLarge("valuation bound".into()))?;
                *b = (*b).max(need);
            }
        }
    }
    let cells: f64 = boxb.iter().map(|&b| b as f64 + 1.0).product();
    if cells > 5e7 {
        return Err(Error::TooLarge(format!("enumeration box has {cells:.0} points")));
    }
    let pts = minimal_points(&boxb, |m| vals.iter().zip(&bounds).all(|(v, a)| v.of_exponents(m) >= *a));
    minimalize(&pts)
}
