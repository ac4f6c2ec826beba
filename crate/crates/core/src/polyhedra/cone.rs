use std::collections::{BTreeSet, HashMap};

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::dd;
use super::lattice::LatticeVector;
use crate::error::{Error, Result};
use crate::linalg;

/// A rational polyhedral cone L + cone(rays) in Q^n.
///
/// Both representations are kept in canonical form: `lineality` is the RREF
/// integer basis of L, `rays` are the primitive extremal rays taken in L^perp,
/// `equations` is a canonical basis of span^perp and `facets` are the
/// primitive inward normals taken inside the span. Two cones are equal as
/// sets iff these fields coincide.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cone {
    dim: usize,
    rays: Vec<LatticeVector>,
    lineality: Vec<LatticeVector>,
    equations: Vec<LatticeVector>,
    facets: Vec<LatticeVector>,
}

fn raw(v: &[LatticeVector]) -> Vec<Vec<BigInt>> {
    v.iter().map(|x| x.coords().to_vec()).collect()
}

fn wrap(v: Vec<Vec<BigInt>>) -> Vec<LatticeVector> {
    v.into_iter().map(LatticeVector::new).collect()
}

fn check_dims(dim: usize, vs: &[LatticeVector]) -> Result<()> {
    for v in vs {
        if v.dim() != dim {
            return Err(Error::DimensionMismatch { expected: dim, got: v.dim() });
        }
    }
    Ok(())
}

impl Cone {
    /// cone(gens), possibly with lineality.
    pub fn new(dim: usize, gens: &[LatticeVector]) -> Result<Cone> {
        Self::from_parts(dim, &[], gens)
    }

    /// L + cone(gens) where L is the span of `lineality`.
    pub fn from_parts(dim: usize, lineality: &[LatticeVector], gens: &[LatticeVector]) -> Result<Cone> {
        check_dims(dim, lineality)?;
        check_dims(dim, gens)?;
        let (eq, facets) = dd::hrep(dim, &raw(lineality), &raw(gens));
        let (lin, rays) = dd::hrep(dim, &eq, &facets);
        Ok(Cone {
            dim,
            rays: wrap(rays),
            lineality: wrap(lin),
            equations: wrap(eq),
            facets: wrap(facets),
        })
    }

    /// {x : a.x >= 0 for a in ineqs, e.x = 0 for e in eqs}.
    pub fn from_inequalities(dim: usize, ineqs: &[LatticeVector], eqs: &[LatticeVector]) -> Result<Cone> {
        check_dims(dim, ineqs)?;
        check_dims(dim, eqs)?;
        let dual = Self::from_parts(dim, eqs, ineqs)?;
        Ok(dual.dual())
    }

    /// A strictly convex cone generated by `gens`; errors if it contains a line.
    pub fn strictly_convex(dim: usize, gens: &[LatticeVector]) -> Result<Cone> {
        let c = Self::new(dim, gens)?;
        if !c.is_strictly_convex() {
            return Err(Error::NotStrictlyConvex);
        }
        Ok(c)
    }

    /// The full orthant cone(e_1, ..., e_n).
    pub fn orthant(n: usize) -> Cone {
        let units: Vec<LatticeVector> = (0..n).map(|i| LatticeVector::unit(n, i)).collect();
        Self::new(n, &units).expect("orthant")
    }

    pub fn zero(n: usize) -> Cone {
        Self::new(n, &[]).expect("zero cone")
    }

    /// The dual cone, recomputed by a fresh double-description pass.
    pub fn dual(&self) -> Cone {
        Self::from_parts(self.dim, &self.equations, &self.facets).expect("dual")
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    /// Dimension of the linear span.
    pub fn dimension(&self) -> usize {
        self.dim - self.equations.len()
    }

    pub fn rays(&self) -> &[LatticeVector] {
        &self.rays
    }

    pub fn lineality(&self) -> &[LatticeVector] {
        &self.lineality
    }

    pub fn facets(&self) -> &[LatticeVector] {
        &self.facets
    }

    pub fn equations(&self) -> &[LatticeVector] {
        &self.equations
    }

    pub fn is_strictly_convex(&self) -> bool {
        self.lineality.is_empty()
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.equations.is_empty()
    }

    pub fn contains(&self, v: &LatticeVector) -> bool {
        v.dim() == self.dim
            && self.equations.iter().all(|e| e.dot(v).is_zero())
            && self.facets.iter().all(|f| !f.dot(v).is_negative())
    }

    /// Relative interior membership.
    pub fn contains_relint(&self, v: &LatticeVector) -> bool {
        self.equations.iter().all(|e| e.dot(v).is_zero())
            && self.facets.iter().all(|f| f.dot(v).is_positive())
    }

    pub fn contains_cone(&self, other: &Cone) -> bool {
        other.rays.iter().all(|r| self.contains(r))
            && other.lineality.iter().all(|l| self.contains(l) && self.contains(&l.neg()))
    }

    /// Whether `self` is a face of `other`.
    pub fn is_face_of(&self, other: &Cone) -> bool {
        if !other.contains_cone(self) {
            return false;
        }
        // A subcone is a face iff it equals the intersection of `other` with
        // the facets of `other` that contain it.
        let tight: Vec<&LatticeVector> = other
            .facets
            .iter()
            .filter(|f| self.rays.iter().all(|r| f.dot(r).is_zero()))
            .collect();
        let face_rays: Vec<LatticeVector> = other
            .rays
            .iter()
            .filter(|r| tight.iter().all(|f| f.dot(r).is_zero()))
            .cloned()
            .collect();
        let face = Cone::from_parts(self.dim, &other.lineality, &face_rays).expect("face");
        face == *self
    }

    pub fn is_simplicial(&self) -> bool {
        self.is_strictly_convex() && linalg::rank(&raw(&self.rays), self.dim) == self.rays.len()
    }

    /// Simplicial with rays forming part of a lattice basis.
    pub fn is_regular(&self) -> bool {
        self.is_simplicial()
            && linalg::maximal_minor_gcd(&raw(&self.rays), self.dim) == BigInt::from(1)
    }

    pub fn intersect(&self, other: &Cone) -> Cone {
        let ineqs: Vec<LatticeVector> = self.facets.iter().chain(&other.facets).cloned().collect();
        let eqs: Vec<LatticeVector> = self.equations.iter().chain(&other.equations).cloned().collect();
        Cone::from_inequalities(self.dim, &ineqs, &eqs).expect("intersection")
    }

    /// Face lattice by closure under intersection with facets.
    pub fn face_lattice(&self) -> FaceLattice {
        let n = self.rays.len();
        let mut seen: HashMap<BTreeSet<usize>, usize> = HashMap::new();
        let mut faces: Vec<Cone> = Vec::new();
        let mut sets: Vec<BTreeSet<usize>> = Vec::new();
        let top: BTreeSet<usize> = (0..n).collect();
        let mut queue = vec![top.clone()];
        seen.insert(top.clone(), 0);
        faces.push(self.clone());
        sets.push(top);
        while let Some(s) = queue.pop() {
            for f in &self.facets {
                let sub: BTreeSet<usize> = s.iter().copied().filter(|&i| f.dot(&self.rays[i]).is_zero()).collect();
                if sub.len() == s.len() || seen.contains_key(&sub) {
                    continue;
                }
                let rays: Vec<LatticeVector> = sub.iter().map(|&i| self.rays[i].clone()).collect();
                let c = Cone::from_parts(self.dim, &self.lineality, &rays).expect("face");
                seen.insert(sub.clone(), faces.len());
                faces.push(c);
                sets.push(sub.clone());
                queue.push(sub);
            }
        }
        // order by dimension, then canonically
        let mut order: Vec<usize> = (0..faces.len()).collect();
        order.sort_by(|&a, &b| faces[a].dimension().cmp(&faces[b].dimension()).then(faces[a].cmp(&faces[b])));
        let faces: Vec<Cone> = order.iter().map(|&i| faces[i].clone()).collect();
        let sets: Vec<BTreeSet<usize>> = order.iter().map(|&i| sets[i].clone()).collect();
        let mut covers = Vec::new();
        for (i, fi) in faces.iter().enumerate() {
            for (j, fj) in faces.iter().enumerate() {
                if fj.dimension() == fi.dimension() + 1 && sets[i].is_subset(&sets[j]) {
                    covers.push((i, j));
                }
            }
        }
        FaceLattice { faces, covers }
    }

    /// Faces of codimension one (relative to the cone's span).
    pub fn facet_faces(&self) -> Vec<Cone> {
        let d = self.dimension();
        if d == self.lineality.len() {
            return Vec::new();
        }
        self.face_lattice().faces.into_iter().filter(|f| f.dimension() + 1 == d).collect()
    }
}

/// All faces of a cone, sorted by dimension, with the covering relation
/// (i, j) meaning face i is a facet of face j.
#[derive(Clone, Debug)]
pub struct FaceLattice {
    pub faces: Vec<Cone>,
    pub covers: Vec<(usize, usize)>,
}
