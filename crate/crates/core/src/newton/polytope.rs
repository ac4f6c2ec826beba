use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::monomial::{Monomial, MonomialIdeal, MonomialValuation};
use crate::linalg::Q;
use crate::lp;
use crate::polyhedra::{Cone, Fan, LatticeVector};

/// A facet inequality <normal, x> >= offset of a Newton polytope.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Facet {
    pub normal: LatticeVector,
    pub offset: BigInt,
}

impl Facet {
    pub fn value(&self, alpha: &[u32]) -> BigInt {
        self.normal.coords().iter().zip(alpha).map(|(a, &e)| a * BigInt::from(e)).sum()
    }

    pub fn is_tight(&self, alpha: &[u32]) -> bool {
        self.value(alpha) == self.offset
    }

    pub fn satisfied(&self, alpha: &[u32]) -> bool {
        self.value(alpha) >= self.offset
    }

    /// Facets whose normal is not a standard basis vector are the
    /// supporting ones.
    pub fn is_exceptional(&self) -> bool {
        self.normal.unit_index().is_none()
    }
}

/// P = conv(generators) + orthant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NewtonPolytope {
    nvars: usize,
    generators: Vec<Monomial>,
    vertices: Vec<Monomial>,
    facets: Vec<Facet>,
}

/// Whether alpha lies in conv(others) + orthant.
fn dominated(alpha: &Monomial, others: &[&Monomial]) -> bool {
    if others.is_empty() {
        return false;
    }
    let n = alpha.nvars();
    let k = others.len();
    // variables: lambda_1..lambda_k, slack_1..slack_n
    let mut a: Vec<Vec<Q>> = Vec::with_capacity(n + 1);
    let mut b: Vec<Q> = Vec::with_capacity(n + 1);
    for j in 0..n {
        let mut row: Vec<Q> = others.iter().map(|g| Q::from_integer(g.0[j].into())).collect();
        row.extend((0..n).map(|s| if s == j { Q::one() } else { Q::zero() }));
        a.push(row);
        b.push(Q::from_integer(alpha.0[j].into()));
    }
    let mut row: Vec<Q> = vec![Q::one(); k];
    row.extend(vec![Q::zero(); n]);
    a.push(row);
    b.push(Q::one());
    lp::feasible(&a, &b)
}

impl NewtonPolytope {
    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn generators(&self) -> &[Monomial] {
        &self.generators
    }

    /// Vertices in descending lexicographic order.
    pub fn vertices(&self) -> &[Monomial] {
        &self.vertices
    }

    /// Facets sorted by normal.
    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    /// The supporting (non-coordinate) facets, in ray order.
    pub fn exceptional_facets(&self) -> Vec<&Facet> {
        self.facets.iter().filter(|f| f.is_exceptional()).collect()
    }

    pub fn contains(&self, alpha: &[u32]) -> bool {
        self.facets.iter().all(|f| f.satisfied(alpha))
    }

    /// The support function F_P(v) = min over vertices of <alpha, v>.
    pub fn support_function(&self, v: &LatticeVector) -> BigInt {
        self.vertices
            .iter()
            .map(|a| a.to_lattice().dot(v))
            .min()
            .expect("nonempty polytope")
    }
}

pub fn newton_polytope(ideal: &MonomialIdeal) -> NewtonPolytope {
    let n = ideal.nvars();
    let gens = ideal.generators();
    let vertices: Vec<Monomial> = gens
        .iter()
        .filter(|g| {
            let others: Vec<&Monomial> = gens.iter().filter(|h| h != g).collect();
            !dominated(g, &others)
        })
        .cloned()
        .collect();
    // homogenize: facets of cone{(1, alpha)} + cone{(0, e_i)}
    let mut cone_gens: Vec<LatticeVector> = vertices
        .iter()
        .map(|v| LatticeVector::new(std::iter::once(BigInt::one()).chain(v.0.iter().map(|&e| BigInt::from(e))).collect()))
        .collect();
    for i in 0..n {
        cone_gens.push(LatticeVector::unit(n + 1, i + 1));
    }
    let cone = Cone::new(n + 1, &cone_gens).expect("homogenized cone");
    let mut facets: Vec<Facet> = cone
        .facets()
        .iter()
        .filter(|f| f.coords()[1..].iter().any(|c| !c.is_zero()))
        .map(|f| Facet {
            normal: LatticeVector::new(f.coords()[1..].to_vec()),
            offset: -f.coords()[0].clone(),
        })
        .collect();
    facets.sort();
    NewtonPolytope { nvars: n, generators: gens.to_vec(), vertices, facets }
}

/// The normal fan of P together with the vertex attached to each maximal cone.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalFan {
    pub fan: Fan,
    /// `vertex_of[i]` is the vertex minimizing <., v> on `fan.max_cones()[i]`.
    pub vertex_of: Vec<Monomial>,
}

pub fn normal_fan(p: &NewtonPolytope) -> NormalFan {
    let n = p.nvars;
    let per_vertex: Vec<(Monomial, Cone)> = p
        .vertices
        .iter()
        .map(|v| {
            let normals: Vec<LatticeVector> =
                p.facets.iter().filter(|f| f.is_tight(&v.0)).map(|f| f.normal.clone()).collect();
            (v.clone(), Cone::new(n, &normals).expect("vertex cone"))
        })
        .collect();
    let fan = Fan::from_cones_unchecked(n, per_vertex.iter().map(|(_, c)| c.clone()).collect())
        .expect("normal fan");
    let vertex_of = fan
        .max_cones()
        .iter()
        .map(|c| per_vertex.iter().find(|(_, d)| d == c).expect("cone of a vertex").0.clone())
        .collect();
    NormalFan { fan, vertex_of }
}

/// Rays of the normal fan that are not standard basis vectors. Empty for
/// principal ideals.
///
/// The order walks P away from the x_1 axis: a ray comes first when the
/// vertices of its facet, listed in decreasing lexicographic order, are
/// lexicographically larger. Ties fall back to the ray itself.
pub fn exceptional_rays(ideal: &MonomialIdeal) -> Vec<MonomialValuation> {
    exceptional_rays_of(&newton_polytope(ideal))
}

pub fn exceptional_rays_of(p: &NewtonPolytope) -> Vec<MonomialValuation> {
    let mut keyed: Vec<(Vec<&Monomial>, &LatticeVector)> = p
        .facets
        .iter()
        .filter(|f| f.is_exceptional())
        .map(|f| {
            let mut vs: Vec<&Monomial> = p.vertices.iter().filter(|v| f.is_tight(&v.0)).collect();
            vs.sort_by(|a, b| b.cmp(a));
            (vs, &f.normal)
        })
        .collect();
    keyed.sort_by(|(va, ra), (vb, rb)| vb.cmp(va).then_with(|| ra.cmp(rb)));
    keyed.into_iter().map(|(_, r)| MonomialValuation::new(r.clone()).expect("nonnegative normal")).collect()
}
