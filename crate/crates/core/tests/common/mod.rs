//! Test-side oracles and instance generators shared by the acceptance
//! harness and the property tests. Nothing here calls the polyhedral code
//! under test: extreme rays come from signed minors and membership from
//! conic Caratheodory with exact elimination.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use coxcob::cobord::{
    dual_valuation_complex, full_cobordization, initial_by_valuations, multi_weighted, substitute_back, transform,
};
use coxcob::newton::{newton_polytope, normal_fan, Monomial, MonomialIdeal};
use coxcob::poly::{Field, Polynomial};
use coxcob::polyhedra::{is_subdivision, simplicialize, star_subdivision, Cone, Fan, LatticeVector};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn names(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("x{i}")).collect()
}

/// Distinct nonzero exponent rows: n in 1..=max_n, up to max_gens rows,
/// entries in 0..=max_exp.
pub fn random_rows(rng: &mut ChaCha8Rng, max_n: usize, max_exp: u32, max_gens: usize) -> Vec<Vec<u32>> {
    let n = rng.gen_range(1..=max_n);
    let count = rng.gen_range(1..=max_gens);
    let mut rows: BTreeSet<Vec<u32>> = BTreeSet::new();
    while rows.len() < count {
        let r: Vec<u32> = (0..n).map(|_| rng.gen_range(0..=max_exp)).collect();
        if r.iter().any(|&e| e > 0) {
            rows.insert(r);
        }
    }
    rows.into_iter().collect()
}

pub fn ideal_of(rows: &[Vec<u32>]) -> MonomialIdeal {
    MonomialIdeal::from_exponents(rows).expect("nonempty rows")
}

/// A non-principal random ideal.
pub fn random_nonprincipal(rng: &mut ChaCha8Rng, max_n: usize, max_exp: u32, max_gens: usize) -> MonomialIdeal {
    loop {
        let j = ideal_of(&random_rows(rng, max_n, max_exp, max_gens));
        if !j.is_principal() {
            return j;
        }
    }
}

fn det(m: &[Vec<i128>]) -> i128 {
    match m.len() {
        0 => 1,
        1 => m[0][0],
        n => (0..n)
            .map(|c| {
                let minor: Vec<Vec<i128>> =
                    m[1..].iter().map(|row| row.iter().enumerate().filter(|(j, _)| *j != c).map(|(_, x)| *x).collect()).collect();
                let s = if c % 2 == 0 { 1 } else { -1 };
                s * m[0][c] * det(&minor)
            })
            .sum(),
    }
}

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// Generalized cross product of n-1 rows in Z^n: spans their kernel when
/// they have rank n-1, and is zero otherwise.
fn cross(rows: &[Vec<i128>], n: usize) -> Vec<i128> {
    (0..n)
        .map(|c| {
            let minor: Vec<Vec<i128>> =
                rows.iter().map(|r| r.iter().enumerate().filter(|(j, _)| *j != c).map(|(_, x)| *x).collect()).collect();
            if c % 2 == 0 {
                det(&minor)
            } else {
                -det(&minor)
            }
        })
        .collect()
}

fn primitive(v: Vec<i128>) -> Vec<i128> {
    let g = v.iter().fold(0, |acc, &x| gcd(acc, x));
    v.into_iter().map(|x| x / g).collect()
}

fn subsets(m: usize, r: usize) -> Vec<Vec<usize>> {
    if r == 0 {
        return vec![vec![]];
    }
    if m < r {
        return vec![];
    }
    let mut out = subsets(m - 1, r);
    for mut s in subsets(m - 1, r - 1) {
        s.push(m - 1);
        out.push(s);
    }
    out
}

/// Extreme rays of the pointed cone {w : row . w >= 0 for every row}.
fn extreme_rays(rows: &[Vec<i128>], n: usize) -> BTreeSet<Vec<i128>> {
    let mut out = BTreeSet::new();
    for s in subsets(rows.len(), n - 1) {
        let sel: Vec<Vec<i128>> = s.iter().map(|&i| rows[i].clone()).collect();
        let d = cross(&sel, n);
        if d.iter().all(|&x| x == 0) {
            continue;
        }
        for cand in [d.clone(), d.iter().map(|x| -x).collect()] {
            if rows.iter().all(|r| r.iter().zip(&cand).map(|(a, b)| a * b).sum::<i128>() >= 0) {
                out.insert(primitive(cand));
            }
        }
    }
    out
}

fn full_rank(rays: &BTreeSet<Vec<i128>>, n: usize) -> bool {
    let rs: Vec<Vec<i128>> = rays.iter().cloned().collect();
    subsets(rs.len(), n).iter().any(|s| det(&s.iter().map(|&i| rs[i].clone()).collect::<Vec<_>>()) != 0)
}

/// Normal fan by argmin grouping: the maximal cone of a generator g is the
/// set of weights w >= 0 for which g minimizes <w, .>. Keeps the
/// full-dimensional ones, keyed by g.
pub fn oracle_normal_fan(rows: &[Vec<u32>]) -> BTreeMap<Vec<u32>, BTreeSet<Vec<i128>>> {
    let n = rows[0].len();
    let mut out = BTreeMap::new();
    for g in rows {
        let mut ineqs: Vec<Vec<i128>> = (0..n).map(|i| (0..n).map(|j| (i == j) as i128).collect()).collect();
        for h in rows.iter().filter(|h| *h != g) {
            ineqs.push(h.iter().zip(g).map(|(&a, &b)| a as i128 - b as i128).collect());
        }
        let rays = extreme_rays(&ineqs, n);
        if full_rank(&rays, n) {
            out.insert(g.clone(), rays);
        }
    }
    out
}

/// The library's normal fan in the oracle's format.
pub fn library_normal_fan(j: &MonomialIdeal) -> BTreeMap<Vec<u32>, BTreeSet<Vec<i128>>> {
    let nf = normal_fan(&newton_polytope(j));
    nf.fan
        .max_cones()
        .iter()
        .zip(&nf.vertex_of)
        .map(|(c, v)| {
            let rays = c.rays().iter().map(|r| r.to_i64_vec().unwrap().into_iter().map(i128::from).collect()).collect();
            (v.0.clone(), rays)
        })
        .collect()
}

fn q(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

/// Unique solution of A x = b for a full-column-rank subset of columns, if
/// the system is consistent.
fn solve(cols: &[Vec<i64>], b: &[i64]) -> Option<Vec<BigRational>> {
    let m = b.len();
    let r = cols.len();
    let mut a: Vec<Vec<BigRational>> =
        (0..m).map(|i| cols.iter().map(|c| q(c[i])).chain(std::iter::once(q(b[i]))).collect()).collect();
    let mut row = 0;
    for col in 0..r {
        let piv = (row..m).find(|&i| !a[i][col].is_zero())?;
        a.swap(row, piv);
        let p = a[row][col].clone();
        for x in a[row].iter_mut() {
            *x = &*x / &p;
        }
        for i in 0..m {
            if i != row && !a[i][col].is_zero() {
                let f = a[i][col].clone();
                for c in 0..=r {
                    let v = &a[row][c] * &f;
                    a[i][c] = &a[i][c] - v;
                }
            }
        }
        row += 1;
    }
    if a[r..].iter().any(|rw| !rw[r].is_zero()) {
        return None;
    }
    Some((0..r).map(|i| a[i][r].clone()).collect())
}

/// beta in conv(gens) + orthant, via (1, beta) in the cone over (1, g) and
/// (0, e_i): some nonnegative combination of at most n + 1 of them works.
pub fn in_newton_polyhedron(rows: &[Vec<u32>], beta: &[u32]) -> bool {
    let n = beta.len();
    let mut cols: Vec<Vec<i64>> =
        rows.iter().map(|g| std::iter::once(1).chain(g.iter().map(|&e| e as i64)).collect()).collect();
    for i in 0..n {
        cols.push((0..=n).map(|j| (j == i + 1) as i64).collect());
    }
    let b: Vec<i64> = std::iter::once(1).chain(beta.iter().map(|&e| e as i64)).collect();
    (1..=n + 1).any(|r| {
        subsets(cols.len(), r).into_iter().any(|s| {
            let sel: Vec<Vec<i64>> = s.iter().map(|&i| cols[i].clone()).collect();
            solve(&sel, &b).is_some_and(|x| x.iter().all(|v| !v.is_negative()))
        })
    })
}

/// Integral closure by enumerating the box [0, max_j]^n.
pub fn oracle_closure(rows: &[Vec<u32>]) -> BTreeSet<Vec<u32>> {
    let n = rows[0].len();
    let bounds: Vec<u32> = (0..n).map(|j| rows.iter().map(|r| r[j]).max().unwrap()).collect();
    let mut members = Vec::new();
    let mut pt = vec![0u32; n];
    loop {
        if in_newton_polyhedron(rows, &pt) {
            members.push(pt.clone());
        }
        let mut j = 0;
        while j < n && pt[j] == bounds[j] {
            pt[j] = 0;
            j += 1;
        }
        if j == n {
            break;
        }
        pt[j] += 1;
    }
    members
        .iter()
        .filter(|a| !members.iter().any(|b| b != *a && b.iter().zip(a.iter()).all(|(x, y)| x <= y)))
        .cloned()
        .collect()
}

// Property checks: each returns a description of the first violation.

pub type Check = std::result::Result<(), String>;

fn lv(v: &[i64]) -> LatticeVector {
    LatticeVector::from_i64(v)
}

/// A strictly convex full-dimensional cone with rays in {0..3}^n.
pub fn random_cone(rng: &mut ChaCha8Rng) -> Cone {
    loop {
        let n = rng.gen_range(2..=3);
        let k = rng.gen_range(n..=n + 2);
        let gens: Vec<LatticeVector> =
            (0..k).map(|_| lv(&(0..n).map(|_| rng.gen_range(0..=3)).collect::<Vec<_>>())).filter(|v| !v.is_zero()).collect();
        if let Ok(c) = Cone::new(n, &gens) {
            if c.is_full_dimensional() && c.is_strictly_convex() {
                return c;
            }
        }
    }
}

pub fn duality_involution(c: &Cone) -> Check {
    let dd = c.dual().dual();
    if dd.rays() != c.rays() {
        return Err(format!("dual of dual of {:?} has rays {:?}", c.rays(), dd.rays()));
    }
    Ok(())
}

fn ray_sets(f: &Fan) -> BTreeSet<Vec<LatticeVector>> {
    f.max_cones().iter().map(|c| c.rays().to_vec()).collect()
}

/// Star subdivision of a simplicial fan at one of its own rays is the
/// identity.
pub fn star_identity(j: &MonomialIdeal, pick: usize) -> Check {
    let fan = simplicialize(&normal_fan(&newton_polytope(j)).fan).map_err(|e| e.to_string())?;
    let rays = fan.rays();
    let v = &rays[pick % rays.len()];
    let s = star_subdivision(&fan, v).map_err(|e| e.to_string())?;
    if ray_sets(&s) != ray_sets(&fan) {
        return Err(format!("star subdivision at existing ray {v} changed the fan"));
    }
    Ok(())
}

/// Star subdivisions and simplicializations refine their input; the
/// orthant is refined by every normal fan and not conversely.
pub fn subdivision_checks(j: &MonomialIdeal, v: &[i64]) -> Check {
    let fan = normal_fan(&newton_polytope(j)).fan;
    let n = fan.ambient_dim();
    let orthant = Fan::orthant(n);
    if !is_subdivision(&fan, &orthant) {
        return Err("normal fan does not subdivide the orthant".into());
    }
    if fan.max_cones().len() > 1 && is_subdivision(&orthant, &fan) {
        return Err("the orthant was accepted as a subdivision of a finer fan".into());
    }
    let v = lv(v);
    if !v.is_zero() {
        let s = star_subdivision(&fan, &v).map_err(|e| e.to_string())?;
        if !is_subdivision(&s, &fan) {
            return Err(format!("star subdivision at {v} is not a subdivision"));
        }
    }
    let s = simplicialize(&fan).map_err(|e| e.to_string())?;
    if !s.is_simplicial() || !is_subdivision(&s, &fan) || s.rays() != fan.rays() {
        return Err("simplicialization broke simplicity, refinement or the ray set".into());
    }
    Ok(())
}

/// A random polynomial with nonzero integer coefficients on the given
/// exponent rows.
pub fn random_poly(rng: &mut ChaCha8Rng, rows: &[Vec<u32>]) -> Polynomial {
    let n = rows[0].len();
    let terms = rows
        .iter()
        .map(|r| {
            let mut c = 0;
            while c == 0 {
                c = rng.gen_range(-5..=5);
            }
            (r.clone(), q(c))
        })
        .collect();
    Polynomial::new(names(n), Field::Rational, terms).unwrap()
}

/// Substituting u_j = u_j' s^{-alpha_j}, t_i = s_i^{-1} back into the
/// transform and multiplying by t^a reproduces f.
pub fn transform_round_trip(f: &Polynomial, j: &MonomialIdeal, b: Option<&[BigInt]>) -> Check {
    let p = match b {
        Some(b) => multi_weighted(f.vars(), j, b),
        None => full_cobordization(f.vars(), j),
    }
    .map_err(|e| e.to_string())?;
    let t = transform(f, &p).map_err(|e| e.to_string())?;
    let back = substitute_back(&t.g, &p, &t.shift).map_err(|e| e.to_string())?;
    if back != *f {
        return Err(format!("round trip of {f} gave {back}"));
    }
    Ok(())
}

pub fn multi_weighted_unit_scales(j: &MonomialIdeal) -> Check {
    let vars = names(j.nvars());
    let full = full_cobordization(&vars, j).map_err(|e| e.to_string())?;
    let k = full.k();
    let mw = multi_weighted(&vars, j, &vec![BigInt::one(); k]).map_err(|e| e.to_string())?;
    let same = mw.variables == full.variables
        && mw.valuations == full.valuations
        && mw.scales == full.scales
        && mw.alphas == full.alphas
        && mw.weak_center == full.weak_center
        && mw.decomposition == full.decomposition
        && mw.fan_b == full.fan_b
        && mw.fan_bplus == full.fan_bplus
        && mw.warnings == full.warnings;
    if !same {
        return Err(format!("multi_weighted with b = 1 differs from full_cobordization for {}", j.render(&vars)));
    }
    Ok(())
}

/// in_omega(I) equals in_{omega_2}(in_{omega_1}(I)) for every split of a
/// face omega of the dual complex of J, whenever the one-stage initial
/// ideal is nonempty. `mask` selects omega_1 inside omega.
pub fn composition_of_gradations(j: &MonomialIdeal, i: &MonomialIdeal, face_pick: usize, mask: u32) -> Check {
    let c = match dual_valuation_complex(j) {
        Ok(c) => c,
        Err(_) => return Ok(()),
    };
    let faces: Vec<&Vec<usize>> = c.e_faces.iter().filter(|f| !f.is_empty()).collect();
    if faces.is_empty() {
        return Ok(());
    }
    let omega = faces[face_pick % faces.len()];
    let (mut v1, mut v2) = (Vec::new(), Vec::new());
    for (r, &v) in omega.iter().enumerate() {
        if mask >> r & 1 == 1 {
            v1.push(c.valuations[v].clone());
        } else {
            v2.push(c.valuations[v].clone());
        }
    }
    let all: Vec<_> = omega.iter().map(|&v| c.valuations[v].clone()).collect();
    let one = initial_by_valuations(i, &all);
    let two = initial_by_valuations(i, &v1).and_then(|a| initial_by_valuations(&a, &v2));
    if let Some(one) = one {
        if two.as_ref() != Some(&one) {
            return Err(format!("two-stage initial ideal {:?} differs from {:?}", two.map(|t| t.generators().to_vec()), one.generators()));
        }
    }
    Ok(())
}

pub fn monomial(e: &[u32]) -> Monomial {
    Monomial(e.to_vec())
}

/// v in cone(rays), by conic Caratheodory over subsets of at most n rays.
pub fn in_cone_hull(rays: &[Vec<i64>], v: &[i64]) -> bool {
    if v.iter().all(|&x| x == 0) {
        return true;
    }
    (1..=v.len()).any(|r| {
        subsets(rays.len(), r).into_iter().any(|s| {
            let sel: Vec<Vec<i64>> = s.iter().map(|&i| rays[i].clone()).collect();
            solve(&sel, v).is_some_and(|x| x.iter().all(|c| !c.is_negative()))
        })
    })
}
