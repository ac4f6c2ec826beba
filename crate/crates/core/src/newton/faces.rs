use std::collections::{BTreeSet, HashSet};

use num_bigint::BigInt;

use super::monomial::{Monomial, MonomialIdeal};
use super::polytope::{newton_polytope, Facet, NewtonPolytope};
use crate::error::{Error, Result};
use crate::linalg;

/// A nonempty face of a Newton polytope.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PolytopeFace {
    /// All facets of P containing the face (empty for P itself).
    pub tight: Vec<Facet>,
    /// Vertices of P lying on the face.
    pub vertices: Vec<Monomial>,
    /// Coordinates j such that e_j lies in the recession cone of the face.
    pub recession: Vec<usize>,
    pub dim: usize,
    /// Indices (into the exceptional rays) of the supporting facets
    /// containing the face.
    pub exceptional: Vec<usize>,
}

impl PolytopeFace {
    pub fn contains(&self, alpha: &[u32]) -> bool {
        self.tight.iter().all(|f| f.is_tight(alpha))
    }

    pub fn is_whole(&self) -> bool {
        self.tight.is_empty()
    }
}

/// The face cut out by a set of facets of P, or None if it is empty.
fn face_of(p: &NewtonPolytope, set: &BTreeSet<usize>) -> Option<(BTreeSet<usize>, PolytopeFace)> {
    let facets = p.facets();
    let vertices: Vec<Monomial> = p
        .vertices()
        .iter()
        .filter(|v| set.iter().all(|&i| facets[i].is_tight(&v.0)))
        .cloned()
        .collect();
    if vertices.is_empty() {
        return None;
    }
    let n = p.nvars();
    let recession: Vec<usize> = (0..n)
        .filter(|&j| set.iter().all(|&i| facets[i].normal.coords()[j] == BigInt::from(0)))
        .collect();
    let closure: BTreeSet<usize> = (0..facets.len())
        .filter(|&i| {
            vertices.iter().all(|v| facets[i].is_tight(&v.0))
                && recession.iter().all(|&j| facets[i].normal.coords()[j] == BigInt::from(0))
        })
        .collect();
    let base = &vertices[0];
    let mut rows: Vec<Vec<BigInt>> = vertices[1..]
        .iter()
        .map(|v| v.0.iter().zip(&base.0).map(|(&a, &b)| BigInt::from(a) - BigInt::from(b)).collect())
        .collect();
    for &j in &recession {
        rows.push((0..n).map(|i| BigInt::from((i == j) as u32)).collect());
    }
    let dim = linalg::rank(&rows, n);
    let exc_index: Vec<usize> = (0..facets.len()).filter(|&i| facets[i].is_exceptional()).collect();
    let exceptional: Vec<usize> = exc_index
        .iter()
        .enumerate()
        .filter(|(_, fi)| closure.contains(fi))
        .map(|(k, _)| k)
        .collect();
    let tight = closure.iter().map(|&i| facets[i].clone()).collect();
    Some((closure, PolytopeFace { tight, vertices, recession, dim, exceptional }))
}

/// Close `seeds` under intersection with facets from `allowed`.
fn close_faces(p: &NewtonPolytope, seeds: Vec<BTreeSet<usize>>, allowed: &[usize]) -> Vec<PolytopeFace> {
    let mut seen: HashSet<BTreeSet<usize>> = HashSet::new();
    let mut out = Vec::new();
    let mut queue: Vec<BTreeSet<usize>> = Vec::new();
    for s in seeds {
        if let Some((key, face)) = face_of(p, &s) {
            if seen.insert(key.clone()) {
                out.push(face);
                queue.push(key);
            }
        }
    }
    while let Some(key) = queue.pop() {
        for &f in allowed {
            if key.contains(&f) {
                continue;
            }
            let mut s = key.clone();
            s.insert(f);
            if let Some((k2, face)) = face_of(p, &s) {
                if seen.insert(k2.clone()) {
                    out.push(face);
                    queue.push(k2);
                }
            }
        }
    }
    out
}

fn sort_faces(faces: &mut [PolytopeFace]) {
    faces.sort_by(|a, b| {
        (a.exceptional.len(), &a.exceptional, a.tight.len(), &a.tight, &a.vertices)
            .cmp(&(b.exceptional.len(), &b.exceptional, b.tight.len(), &b.tight, &b.vertices))
    });
}

/// All nonempty intersections of supporting facets, ordered by the set of
/// exceptional rays tight on them.
pub fn supporting_faces(p: &NewtonPolytope) -> Vec<PolytopeFace> {
    let exc: Vec<usize> = (0..p.facets().len()).filter(|&i| p.facets()[i].is_exceptional()).collect();
    let seeds = exc.iter().map(|&i| BTreeSet::from([i])).collect();
    let mut faces = close_faces(p, seeds, &exc);
    sort_faces(&mut faces);
    faces
}

/// Every nonempty face of P, including P itself.
pub fn all_faces(p: &NewtonPolytope) -> Vec<PolytopeFace> {
    let all: Vec<usize> = (0..p.facets().len()).collect();
    let mut faces = close_faces(p, vec![BTreeSet::new()], &all);
    sort_faces(&mut faces);
    faces
}

/// The ideal generated by the generators of I lying on the face.
pub fn face_initial_ideal(ideal: &MonomialIdeal, face: &PolytopeFace) -> Result<MonomialIdeal> {
    let p = newton_polytope(ideal);
    let mut set = BTreeSet::new();
    for f in &face.tight {
        let i = p.facets().iter().position(|g| g == f).ok_or(Error::ForeignFace)?;
        set.insert(i);
    }
    let (_, recomputed) = face_of(&p, &set).ok_or(Error::ForeignFace)?;
    if recomputed.vertices != face.vertices || recomputed.tight != face.tight {
        return Err(Error::ForeignFace);
    }
    let gens: Vec<Monomial> = ideal.generators().iter().filter(|g| face.contains(&g.0)).cloned().collect();
    super::monomial::minimalize(&gens)
}
