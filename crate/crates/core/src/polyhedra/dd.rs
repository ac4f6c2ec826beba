//! Incremental double description for pointed cones {c : A c >= 0}.

use fixedbitset::FixedBitSet;
use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::lattice::{dot, make_primitive};
use crate::linalg;

struct Ray {
    v: Vec<BigInt>,
    zero: FixedBitSet,
}

/// Extreme rays of the pointed cone {c in Q^d : row . c >= 0 for all rows}.
///
/// The rows must have rank d (that is what makes the cone pointed). Rays are
/// returned as primitive integer vectors in no particular order.
pub(crate) fn extreme_rays(rows: &[Vec<BigInt>], d: usize) -> Vec<Vec<BigInt>> {
    if d == 0 {
        return Vec::new();
    }
    let m = rows.len();
    let basis = linalg::independent_rows(rows, d);
    assert_eq!(basis.len(), d, "constraint system does not define a pointed cone");
    let square: Vec<Vec<BigInt>> = basis.iter().map(|&i| rows[i].clone()).collect();
    let cols = linalg::inverse_columns(&square);

    let mut rays: Vec<Ray> = cols
        .into_iter()
        .enumerate()
        .map(|(j, v)| {
            let mut zero = FixedBitSet::with_capacity(m);
            for (k, &bi) in basis.iter().enumerate() {
                if k != j {
                    zero.insert(bi);
                }
            }
            Ray { v, zero }
        })
        .collect();

    let mut in_basis = FixedBitSet::with_capacity(m);
    for &b in &basis {
        in_basis.insert(b);
    }

    for idx in 0..m {
        if in_basis.contains(idx) {
            continue;
        }
        let a = &rows[idx];
        let vals: Vec<BigInt> = rays.iter().map(|r| dot(a, &r.v)).collect();
        let pos: Vec<usize> = (0..rays.len()).filter(|&i| vals[i].is_positive()).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&i| vals[i].is_negative()).collect();
        if neg.is_empty() {
            for (i, r) in rays.iter_mut().enumerate() {
                if vals[i].is_zero() {
                    r.zero.insert(idx);
                }
            }
            continue;
        }

        let mut fresh: Vec<Ray> = Vec::new();
        for &p in &pos {
            for &n in &neg {
                let mut common = rays[p].zero.clone();
                common.intersect_with(&rays[n].zero);
                if common.count_ones(..) + 2 < d {
                    continue;
                }
                let adjacent = (0..rays.len())
                    .all(|r| r == p || r == n || !common.is_subset(&rays[r].zero));
                if !adjacent {
                    continue;
                }
                let v: Vec<BigInt> = rays[n]
                    .v
                    .iter()
                    .zip(&rays[p].v)
                    .map(|(x, y)| &vals[p] * x - &vals[n] * y)
                    .collect();
                let mut zero = common;
                zero.insert(idx);
                fresh.push(Ray { v: make_primitive(v), zero });
            }
        }

        let mut next: Vec<Ray> = Vec::with_capacity(pos.len() + fresh.len());
        for (i, mut r) in rays.into_iter().enumerate() {
            if vals[i].is_negative() {
                continue;
            }
            if vals[i].is_zero() {
                r.zero.insert(idx);
            }
            next.push(r);
        }
        next.extend(fresh);
        rays = next;
    }
    rays.into_iter().map(|r| r.v).collect()
}

/// H-representation of L + cone(gens), where L is spanned by `lineality`.
///
/// Returns (equations, facets): a canonical basis of span^perp and the
/// primitive inward facet normals lying in the span, sorted.
pub(crate) fn hrep(
    dim: usize,
    lineality: &[Vec<BigInt>],
    gens: &[Vec<BigInt>],
) -> (Vec<Vec<BigInt>>, Vec<Vec<BigInt>>) {
    let all: Vec<Vec<BigInt>> = lineality.iter().chain(gens).cloned().collect();
    let basis = linalg::row_basis(&all, dim);
    let equations = linalg::nullspace(&basis, dim);
    let d = basis.len();
    if d == 0 {
        return (equations, Vec::new());
    }
    // Parametrize a = B^T c and describe {a in span : g.a >= 0, l.a = 0}.
    let project = |x: &Vec<BigInt>| -> Vec<BigInt> { basis.iter().map(|b| dot(b, x)).collect() };
    let mut rows: Vec<Vec<BigInt>> = Vec::new();
    for l in lineality {
        let r = project(l);
        rows.push(r.iter().map(|c| -c).collect());
        rows.push(r);
    }
    for g in gens {
        rows.push(project(g));
    }
    // The dual inside the span is pointed exactly when the generators span it,
    // which holds by construction.
    let cs = extreme_rays(&rows, d);
    let mut facets: Vec<Vec<BigInt>> = cs
        .into_iter()
        .map(|c| {
            let mut a = vec![BigInt::zero(); dim];
            for (ci, b) in c.iter().zip(&basis) {
                for (aj, bj) in a.iter_mut().zip(b) {
                    *aj += ci * bj;
                }
            }
            make_primitive(a)
        })
        .collect();
    facets.sort();
    facets.dedup();
    (equations, facets)
}
