use std::collections::BTreeSet;

use super::cone::Cone;
use super::lattice::LatticeVector;
use crate::error::{Error, Result};

/// A fan, stored by its maximal cones in canonical order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Fan {
    dim: usize,
    max_cones: Vec<Cone>,
}

impl Fan {
    /// Build a fan from cones, keeping only the maximal ones. Checks that
    /// every cone is strictly convex and that any two maximal cones meet in
    /// a common face.
    pub fn new(dim: usize, cones: Vec<Cone>) -> Result<Fan> {
        let fan = Self::from_cones_unchecked(dim, cones)?;
        fan.validate()?;
        Ok(fan)
    }

    /// Like `new` without the pairwise intersection check.
    pub fn from_cones_unchecked(dim: usize, cones: Vec<Cone>) -> Result<Fan> {
        for c in &cones {
            if c.ambient_dim() != dim {
                return Err(Error::DimensionMismatch { expected: dim, got: c.ambient_dim() });
            }
            if !c.is_strictly_convex() {
                return Err(Error::NotStrictlyConvex);
            }
        }
        let mut cones = cones;
        cones.sort();
        cones.dedup();
        let maximal: Vec<Cone> = cones
            .iter()
            .filter(|c| !cones.iter().any(|d| d != *c && d.contains_cone(c)))
            .cloned()
            .collect();
        Ok(Fan { dim, max_cones: maximal })
    }

    /// The fan of all faces of cone(e_1, ..., e_n).
    pub fn orthant(n: usize) -> Fan {
        Fan { dim: n, max_cones: vec![Cone::orthant(n)] }
    }

    fn validate(&self) -> Result<()> {
        for (i, a) in self.max_cones.iter().enumerate() {
            for b in &self.max_cones[i + 1..] {
                let m = a.intersect(b);
                if !m.is_face_of(a) || !m.is_face_of(b) {
                    return Err(Error::InvalidFan(format!(
                        "cones with rays {:?} and {:?} do not meet along a common face",
                        a.rays().iter().map(|r| r.to_string()).collect::<Vec<_>>(),
                        b.rays().iter().map(|r| r.to_string()).collect::<Vec<_>>()
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn max_cones(&self) -> &[Cone] {
        &self.max_cones
    }

    /// Every cone of the fan, sorted by dimension then canonically.
    pub fn cones(&self) -> Vec<Cone> {
        let mut all: BTreeSet<(usize, Cone)> = BTreeSet::new();
        for c in &self.max_cones {
            for f in c.face_lattice().faces {
                all.insert((f.dimension(), f));
            }
        }
        if all.is_empty() {
            all.insert((0, Cone::zero(self.dim)));
        }
        all.into_iter().map(|(_, c)| c).collect()
    }

    /// The one-dimensional cones' primitive generators, sorted.
    pub fn rays(&self) -> Vec<LatticeVector> {
        let mut rays: BTreeSet<LatticeVector> = BTreeSet::new();
        for c in &self.max_cones {
            rays.extend(c.rays().iter().cloned());
        }
        rays.into_iter().collect()
    }

    pub fn is_simplicial(&self) -> bool {
        self.max_cones.iter().all(|c| c.is_simplicial())
    }

    pub fn is_regular(&self) -> bool {
        self.max_cones.iter().all(|c| c.is_regular())
    }

    /// Whether v lies in the support.
    pub fn contains(&self, v: &LatticeVector) -> bool {
        self.max_cones.iter().any(|c| c.contains(v))
    }

    /// The smallest cone of the fan containing v.
    pub fn minimal_cone_containing(&self, v: &LatticeVector) -> Option<Cone> {
        self.cones()
            .into_iter()
            .filter(|c| c.contains(v))
            .min_by_key(|c| c.dimension())
    }
}

/// Star subdivision of `fan` at the primitive vector `v`.
///
/// Cones not containing the minimal cone tau through v are kept; every
/// maximal cone delta containing tau is replaced by the joins of v with the
/// facets of delta that do not contain tau.
pub fn star_subdivision(fan: &Fan, v: &LatticeVector) -> Result<Fan> {
    if v.dim() != fan.dim {
        return Err(Error::DimensionMismatch { expected: fan.dim, got: v.dim() });
    }
    let v = v.primitive()?;
    let tau = fan
        .minimal_cone_containing(&v)
        .ok_or_else(|| Error::OutsideSupport(v.to_string()))?;
    let mut cones: Vec<Cone> = Vec::new();
    for delta in &fan.max_cones {
        if !delta.contains_cone(&tau) {
            cones.push(delta.clone());
            continue;
        }
        let facets = delta.facet_faces();
        if facets.is_empty() {
            cones.push(Cone::new(fan.dim, &[v.clone()])?);
        }
        for g in facets {
            if g.contains_cone(&tau) {
                continue;
            }
            let mut gens = g.rays().to_vec();
            gens.push(v.clone());
            cones.push(Cone::new(fan.dim, &gens)?);
        }
    }
    Fan::from_cones_unchecked(fan.dim, cones)
}

/// Star-subdivide at every ray of the fan in lexicographic order. The
/// result is simplicial and has the same rays.
pub fn simplicialize(fan: &Fan) -> Result<Fan> {
    let mut out = fan.clone();
    for v in fan.rays() {
        if out.is_simplicial() {
            break;
        }
        out = star_subdivision(&out, &v)?;
    }
    Ok(out)
}

/// Whether `delta` is a subdivision of `sigma`: every cone of delta lies in
/// a cone of sigma and the supports coincide.
///
/// Support equality is checked cone by cone: for each maximal cone s of
/// sigma, the cones of delta of the same dimension lying in s must cover it,
/// which holds iff each of their facets either lies on the boundary of s or
/// is shared with another such cone.
pub fn is_subdivision(delta: &Fan, sigma: &Fan) -> bool {
    if delta.dim != sigma.dim {
        return false;
    }
    if !delta
        .max_cones
        .iter()
        .all(|d| sigma.max_cones.iter().any(|s| s.contains_cone(d)))
    {
        return false;
    }
    let delta_cones = delta.cones();
    for s in &sigma.max_cones {
        let d = s.dimension();
        let pieces: Vec<&Cone> = delta_cones
            .iter()
            .filter(|c| c.dimension() == d && s.contains_cone(c))
            .collect();
        if pieces.is_empty() {
            return false;
        }
        for (i, p) in pieces.iter().enumerate() {
            for g in p.facet_faces() {
                let on_boundary = s
                    .facets()
                    .iter()
                    .any(|f| g.rays().iter().all(|r| f.dot(r) == 0.into()));
                if on_boundary {
                    continue;
                }
                let shared = pieces
                    .iter()
                    .enumerate()
                    .any(|(j, q)| j != i && q.contains_cone(&g));
                if !shared {
                    return false;
                }
            }
        }
    }
    true
}
