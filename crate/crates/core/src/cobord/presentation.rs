use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::newton::{exceptional_rays, minimalize, newton_polytope, normal_fan, Monomial, MonomialIdeal, MonomialValuation};
use crate::polyhedra::{simplicialize, star_subdivision, Cone, Fan, LatticeVector};

/// Upper bound on n + k for the fans of a presentation.
pub const MAX_PRESENTATION_DIM: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PresentationKind {
    Full,
    Weighted,
    MultiWeighted,
    Stable,
}

impl PresentationKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            PresentationKind::Full => "full",
            PresentationKind::Weighted => "weighted",
            PresentationKind::MultiWeighted => "multi-weighted",
            PresentationKind::Stable => "stable",
        }
    }
}

/// J together with the torus exponent a; the weak transform is J t^a.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeakCenter {
    pub ideal: MonomialIdeal,
    pub shift: Vec<BigInt>,
}

/// The chart B = Spec k[t_1^-1, ..., t_k^-1, u_1 t^{alpha_1}, ..., u_n t^{alpha_n}]
/// with its fan and the open subset B_+.
///
/// Lattice coordinates of the fans are ordered base first: index j < n is
/// the ray of u_j' = u_j t^{alpha_j}, index n + i the ray of s_i = t_i^-1,
/// which projects to the valuation v_i.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CobordPresentation {
    pub kind: PresentationKind,
    pub variables: Vec<String>,
    pub valuations: Vec<MonomialValuation>,
    /// b_i; the grading group of t_i is (1/b_i) Z.
    pub scales: Vec<BigInt>,
    /// alphas[i][j] = b_i * v_i[j].
    pub alphas: Vec<Vec<BigInt>>,
    pub weak_center: WeakCenter,
    /// The decomposition of the orthant whose cones define B_+.
    pub decomposition: Fan,
    pub fan_b: Fan,
    pub fan_bplus: Fan,
    pub warnings: Vec<String>,
}

impl CobordPresentation {
    pub fn nvars(&self) -> usize {
        self.variables.len()
    }

    pub fn k(&self) -> usize {
        self.valuations.len()
    }

    pub fn torus_names(&self) -> Vec<String> {
        (1..=self.k()).map(|i| format!("t{i}")).collect()
    }

    /// Variables of the chart: s_1..s_k, then u_1'..u_n'.
    pub fn chart_variables(&self) -> Vec<String> {
        (1..=self.k())
            .map(|i| format!("s{i}"))
            .chain(self.variables.iter().map(|v| format!("{v}'")))
            .collect()
    }

    /// Ray of the fan coordinate `idx` under the projection to Z^n.
    pub fn image_of(&self, idx: usize) -> LatticeVector {
        let n = self.nvars();
        if idx < n {
            LatticeVector::unit(n, idx)
        } else {
            self.valuations[idx - n].vector().clone()
        }
    }

    /// Coordinate index sets of the maximal cones of fan_Bplus.
    pub fn bplus_index_sets(&self) -> Vec<Vec<usize>> {
        index_sets(&self.fan_bplus)
    }

    /// Generators of the algebra, e.g. "t1^-1" and "x*t1*t2^3".
    pub fn generator_strings(&self) -> Vec<String> {
        let t = self.torus_names();
        let mut out: Vec<String> = t.iter().map(|ti| format!("{ti}^-1")).collect();
        for (j, v) in self.variables.iter().enumerate() {
            let mut s = v.clone();
            for (i, ti) in t.iter().enumerate() {
                let a = &self.alphas[i][j];
                if a.is_one() {
                    s.push_str(&format!("*{ti}"));
                } else if !a.is_zero() {
                    s.push_str(&format!("*{ti}^{a}"));
                }
            }
            out.push(s);
        }
        out
    }

    /// Weak-center generators as monomials in the chart variables.
    pub fn weak_center_chart_exponents(&self) -> Vec<Vec<u32>> {
        self.weak_center
            .ideal
            .generators()
            .iter()
            .map(|g| {
                let mut e: Vec<u32> = (0..self.k())
                    .map(|i| {
                        let v: BigInt = self.alphas[i]
                            .iter()
                            .zip(&g.0)
                            .map(|(a, &x)| a * BigInt::from(x))
                            .sum::<BigInt>()
                            - &self.weak_center.shift[i];
                        v.to_u32().expect("nonnegative exponent")
                    })
                    .collect();
                e.extend_from_slice(&g.0);
                e
            })
            .collect()
    }
}

pub(crate) fn index_sets(fan: &Fan) -> Vec<Vec<usize>> {
    let mut sets: Vec<Vec<usize>> = fan
        .max_cones()
        .iter()
        .map(|c| {
            let mut s: Vec<usize> = c.rays().iter().map(|r| r.unit_index().expect("coordinate ray")).collect();
            s.sort();
            s
        })
        .collect();
    sets.sort();
    sets
}

fn coordinate_cone(dim: usize, set: &[usize]) -> Cone {
    let gens: Vec<LatticeVector> = set.iter().map(|&i| LatticeVector::unit(dim, i)).collect();
    Cone::new(dim, &gens).expect("coordinate cone")
}

/// Maximal coordinate subsets of {0..n+k} whose images lie in a common cone
/// of `decomposition`.
fn bplus_fan(n: usize, valuations: &[MonomialValuation], decomposition: &Fan) -> Fan {
    let k = valuations.len();
    let images: Vec<LatticeVector> = (0..n)
        .map(|j| LatticeVector::unit(n, j))
        .chain(valuations.iter().map(|v| v.vector().clone()))
        .collect();
    let mut sets: BTreeSet<Vec<usize>> = BTreeSet::new();
    for delta in decomposition.max_cones() {
        let s: Vec<usize> = (0..n + k).filter(|&i| delta.contains(&images[i])).collect();
        sets.insert(s);
    }
    let maximal: Vec<Vec<usize>> = sets
        .iter()
        .filter(|s| !sets.iter().any(|t| t != *s && s.iter().all(|x| t.contains(x))))
        .cloned()
        .collect();
    let cones = maximal.iter().map(|s| coordinate_cone(n + k, s)).collect();
    Fan::from_cones_unchecked(n + k, cones).expect("coordinate fan")
}

/// Assemble a presentation from its data.
pub(crate) fn assemble(
    kind: PresentationKind,
    variables: Vec<String>,
    valuations: Vec<MonomialValuation>,
    scales: Vec<BigInt>,
    center: MonomialIdeal,
    decomposition: Fan,
    warnings: Vec<String>,
) -> Result<CobordPresentation> {
    let n = variables.len();
    let k = valuations.len();
    if center.nvars() != n {
        return Err(Error::DimensionMismatch { expected: n, got: center.nvars() });
    }
    if n + k > MAX_PRESENTATION_DIM {
        return Err(Error::TooLarge(format!(
            "n + k = {} exceeds the limit of {MAX_PRESENTATION_DIM}",
            n + k
        )));
    }
    let alphas: Vec<Vec<BigInt>> = valuations
        .iter()
        .zip(&scales)
        .map(|(v, b)| v.vector().coords().iter().map(|c| c * b).collect())
        .collect();
    let shift: Vec<BigInt> = valuations.iter().zip(&scales).map(|(v, b)| v.of_ideal(&center) * b).collect();
    // Every face of the product cone projects into the orthant, so B is the
    // whole affine chart.
    let fan_b = Fan::orthant(n + k);
    let fan_bplus = bplus_fan(n, &valuations, &decomposition);
    Ok(CobordPresentation {
        kind,
        variables,
        valuations,
        scales,
        alphas,
        weak_center: WeakCenter { ideal: center, shift },
        decomposition,
        fan_b,
        fan_bplus,
        warnings,
    })
}

fn check_vars(variables: &[String], ideal: &MonomialIdeal) -> Result<()> {
    if variables.len() != ideal.nvars() {
        return Err(Error::DimensionMismatch { expected: ideal.nvars(), got: variables.len() });
    }
    Ok(())
}

const PRINCIPAL_WARNING: &str = "principal ideal: no exceptional divisors, the presentation is trivial";

/// The full cobordant blow-up of J: one torus variable per exceptional ray.
pub fn full_cobordization(variables: &[String], j: &MonomialIdeal) -> Result<CobordPresentation> {
    multi_weighted_inner(PresentationKind::Full, variables, j, None)
}

/// Scale the gradings of the full cobordization row-wise by b.
pub fn multi_weighted(variables: &[String], j: &MonomialIdeal, b: &[BigInt]) -> Result<CobordPresentation> {
    multi_weighted_inner(PresentationKind::MultiWeighted, variables, j, Some(b))
}

fn multi_weighted_inner(
    kind: PresentationKind,
    variables: &[String],
    j: &MonomialIdeal,
    b: Option<&[BigInt]>,
) -> Result<CobordPresentation> {
    check_vars(variables, j)?;
    let valuations = exceptional_rays(j);
    let k = valuations.len();
    let scales: Vec<BigInt> = match b {
        None => vec![BigInt::one(); k],
        Some(b) => {
            if b.len() != k {
                return Err(Error::DimensionMismatch { expected: k, got: b.len() });
            }
            if b.iter().any(|x| !x.is_positive()) {
                return Err(Error::InvalidInput("scales must be positive".into()));
            }
            b.to_vec()
        }
    };
    let mut warnings = Vec::new();
    if k == 0 {
        warnings.push(PRINCIPAL_WARNING.to_string());
    }
    let decomposition = normal_fan(&newton_polytope(j)).fan;
    assemble(kind, variables.to_vec(), valuations, scales, j.clone(), decomposition, warnings)
}

/// A weighted center x_{i_1}^{1/w_1}, ..., given by variable indices and
/// positive weights.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedCenter {
    pub nvars: usize,
    pub indices: Vec<usize>,
    pub weights: Vec<BigInt>,
}

impl WeightedCenter {
    pub fn new(nvars: usize, indices: Vec<usize>, weights: Vec<BigInt>) -> Result<Self> {
        if indices.is_empty() {
            return Err(Error::InvalidInput("a weighted center needs at least one variable".into()));
        }
        if indices.len() != weights.len() {
            return Err(Error::DimensionMismatch { expected: indices.len(), got: weights.len() });
        }
        if weights.iter().any(|w| !w.is_positive()) {
            return Err(Error::InvalidInput("weights must be positive".into()));
        }
        let distinct: BTreeSet<usize> = indices.iter().copied().collect();
        if distinct.len() != indices.len() || indices.iter().any(|&i| i >= nvars) {
            return Err(Error::InvalidInput("weighted variables must be distinct and in range".into()));
        }
        Ok(WeightedCenter { nvars, indices, weights })
    }

    /// Solve w_1 a_1 = ... = w_k a_k with w primitive for a center
    /// (x_1^{a_1}, ..., x_k^{a_k}).
    pub fn from_ideal(ideal: &MonomialIdeal) -> Result<Self> {
        let mut indices = Vec::new();
        let mut powers: Vec<BigInt> = Vec::new();
        for g in ideal.generators() {
            let s = g.support();
            if s.len() != 1 {
                return Err(Error::InvalidInput(format!(
                    "weighted centers are generated by pure powers; got exponent {:?}",
                    g.0
                )));
            }
            indices.push(s[0]);
            powers.push(BigInt::from(g.0[s[0]]));
        }
        let l = powers.iter().fold(BigInt::one(), |acc, a| acc.lcm(a));
        let w: Vec<BigInt> = powers.iter().map(|a| &l / a).collect();
        let g = w.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
        let mut pairs: Vec<(usize, BigInt)> = indices.into_iter().zip(w.into_iter().map(|x| x / &g)).collect();
        pairs.sort();
        let (indices, weights) = pairs.into_iter().unzip();
        Self::new(ideal.nvars(), indices, weights)
    }

    /// The primitive weight vector in Z^n.
    pub fn vector(&self) -> LatticeVector {
        let mut v = vec![BigInt::zero(); self.nvars];
        for (&i, w) in self.indices.iter().zip(&self.weights) {
            v[i] = w.clone();
        }
        LatticeVector::new(v).primitive().expect("nonzero weights")
    }

    /// The ideal (x_i^{a_i}) with w_i a_i = lcm(w).
    pub fn ideal(&self) -> MonomialIdeal {
        let w = self.vector();
        let l = self.indices.iter().fold(BigInt::one(), |acc, &i| acc.lcm(&w.coords()[i]));
        let gens: Vec<Monomial> = self
            .indices
            .iter()
            .map(|&i| {
                let mut e = vec![0u32; self.nvars];
                e[i] = (&l / &w.coords()[i]).to_u32().expect("small exponent");
                Monomial(e)
            })
            .collect();
        minimalize(&gens).expect("nonempty")
    }
}

/// The weighted cobordant blow-up: one torus variable graded by w.
pub fn weighted_cobordant(variables: &[String], center: &WeightedCenter) -> Result<CobordPresentation> {
    if variables.len() != center.nvars {
        return Err(Error::DimensionMismatch { expected: center.nvars, got: variables.len() });
    }
    let n = center.nvars;
    let w = center.vector();
    let decomposition = star_subdivision(&Fan::orthant(n), &w)?;
    let val = MonomialValuation::new(w)?;
    assemble(
        PresentationKind::Weighted,
        variables.to_vec(),
        vec![val],
        vec![BigInt::one()],
        center.ideal(),
        decomposition,
        Vec::new(),
    )
}

/// B^s: replace the decomposition by its simplicialization and shrink
/// fan_Bplus accordingly.
pub fn stable_locus(p: &CobordPresentation, j: &MonomialIdeal) -> Result<CobordPresentation> {
    if exceptional_rays(j) != p.valuations || p.weak_center.ideal != *j {
        return Err(Error::InvalidInput("presentation was not built from this ideal".into()));
    }
    let decomposition = simplicialize(&p.decomposition)?;
    let fan_bplus = bplus_fan(p.nvars(), &p.valuations, &decomposition);
    Ok(CobordPresentation {
        kind: PresentationKind::Stable,
        decomposition,
        fan_bplus,
        ..p.clone()
    })
}

/// Outcome of the quotient criteria for B_+ -> X'.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientReport {
    pub good: bool,
    pub geometric: bool,
    /// For each cone of the decomposition (by rays), its minimal preimage
    /// as a set of fan coordinates.
    pub preimages: Vec<(Vec<LatticeVector>, Vec<usize>)>,
    pub notes: Vec<String>,
}

/// Check the good-quotient criterion (each cone of the decomposition has a
/// unique minimal preimage cone mapping onto it) and the geometric one
/// (the decomposition is simplicial).
pub fn quotient_type(p: &CobordPresentation, j: &MonomialIdeal) -> Result<QuotientReport> {
    if exceptional_rays(j) != p.valuations && p.kind != PresentationKind::Weighted {
        return Err(Error::InvalidInput("presentation was not built from this ideal".into()));
    }
    let n = p.nvars();
    let k = p.k();
    let images: Vec<LatticeVector> = (0..n + k).map(|i| p.image_of(i)).collect();
    let mut notes = Vec::new();
    // Distinct primitive images make the minimal preimage unique: it must
    // contain exactly the coordinates mapping to the rays of the cone.
    let distinct: BTreeSet<&LatticeVector> = images.iter().collect();
    let mut good = distinct.len() == images.len();
    if !good {
        notes.push("two fan coordinates project to the same ray".into());
    }
    let sets = p.bplus_index_sets();
    let mut preimages = Vec::new();
    for delta in p.decomposition.cones() {
        let pre: Vec<usize> = (0..n + k)
            .filter(|&i| delta.rays().contains(&images[i]))
            .collect();
        let in_bplus = sets.iter().any(|s| pre.iter().all(|x| s.contains(x)));
        let gens: Vec<LatticeVector> = pre.iter().map(|&i| images[i].clone()).collect();
        let onto = Cone::new(n, &gens)? == delta;
        if !in_bplus || !onto {
            good = false;
            notes.push(format!(
                "cone with rays [{}] has no preimage cone in B_+ mapping onto it",
                delta.rays().iter().map(|r| r.to_string()).collect::<Vec<_>>().join(", ")
            ));
        }
        preimages.push((delta.rays().to_vec(), pre));
    }
    let geometric = p.decomposition.is_simplicial();
    if !geometric {
        notes.push("decomposition has a non-simplicial cone: the quotient is good but not geometric".into());
    }
    Ok(QuotientReport { good, geometric, preimages, notes })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ideal(rows: &[&[u32]]) -> MonomialIdeal {
        MonomialIdeal::from_exponents(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    fn names(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn example_presentation() {
        let j = ideal(&[&[3, 0], &[1, 1], &[0, 4]]);
        let p = full_cobordization(&names(&["x", "y"]), &j).unwrap();
        assert_eq!(p.generator_strings(), vec!["t1^-1", "t2^-1", "x*t1*t2^3", "y*t1^2*t2"]);
        assert_eq!(p.weak_center.shift, ints(&[3, 4]));
        assert_eq!(p.bplus_index_sets(), vec![vec![0, 3], vec![1, 2], vec![2, 3]]);
        assert_eq!(
            p.weak_center_chart_exponents(),
            vec![vec![0, 5, 3, 0], vec![0, 0, 1, 1], vec![5, 0, 0, 4]]
        );
        let q = quotient_type(&p, &j).unwrap();
        assert!(q.good && q.geometric);
    }

    #[test]
    fn multi_weighted_scaling() {
        let j = ideal(&[&[3, 0], &[1, 1], &[0, 4]]);
        let v = names(&["x", "y"]);
        let p = multi_weighted(&v, &j, &ints(&[2, 3])).unwrap();
        assert_eq!(p.alphas, vec![ints(&[2, 4]), ints(&[9, 3])]);
        assert_eq!(p.weak_center.shift, ints(&[6, 12]));
        let one = multi_weighted(&v, &j, &ints(&[1, 1])).unwrap();
        let full = full_cobordization(&v, &j).unwrap();
        assert_eq!(CobordPresentation { kind: PresentationKind::Full, ..one }, full);
        assert!(multi_weighted(&v, &j, &ints(&[1])).is_err());
    }

    #[test]
    fn weighted_presentations() {
        let v = names(&["x", "y"]);
        let c = WeightedCenter::new(2, vec![0, 1], ints(&[3, 2])).unwrap();
        let p = weighted_cobordant(&v, &c).unwrap();
        assert_eq!(p.generator_strings(), vec!["t1^-1", "x*t1^3", "y*t1^2"]);
        assert_eq!(p.weak_center.ideal, ideal(&[&[2, 0], &[0, 3]]));
        let from = WeightedCenter::from_ideal(&ideal(&[&[4, 0], &[0, 6]])).unwrap();
        assert_eq!(from.weights, ints(&[3, 2]));
        assert!(WeightedCenter::from_ideal(&ideal(&[&[1, 1]])).is_err());
    }

    #[test]
    fn principal_is_trivial() {
        let p = full_cobordization(&names(&["x", "y"]), &ideal(&[&[2, 1]])).unwrap();
        assert_eq!(p.k(), 0);
        assert_eq!(p.warnings.len(), 1);
        assert_eq!(p.fan_bplus, Fan::orthant(2));
    }

    #[test]
    fn stable_locus_of_square_cone() {
        let j = ideal(&[&[1, 1, 0], &[0, 0, 1]]);
        let p = full_cobordization(&names(&["x1", "x2", "x3"]), &j).unwrap();
        assert!(!quotient_type(&p, &j).unwrap().geometric);
        let s = stable_locus(&p, &j).unwrap();
        let q = quotient_type(&s, &j).unwrap();
        assert!(q.good && q.geometric);
        assert_eq!(s.decomposition.rays(), p.decomposition.rays());
        for c in s.fan_bplus.max_cones() {
            assert!(p.fan_bplus.max_cones().iter().any(|d| d.contains_cone(c)));
        }
    }
}
