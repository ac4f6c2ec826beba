use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::newton::{exceptional_rays, minimalize, newton_polytope, normal_fan, Monomial, MonomialIdeal, MonomialValuation};

/// Largest number of exceptional valuations for which all subsets are listed.
const MAX_COMPLEX_VERTICES: usize = 16;

/// Faces of the dual valuation complexes, as sorted index sets into
/// `valuations`. `e_faces` are the sets of rays lying in a common cone of the
/// normal fan; `d_faces` is the full simplex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValuationFaceComplex {
    pub valuations: Vec<MonomialValuation>,
    pub e_faces: Vec<Vec<usize>>,
    pub d_faces: Vec<Vec<usize>>,
}

fn subsets(k: usize) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = (0u32..(1 << k))
        .map(|m| (0..k).filter(|&i| m & (1 << i) != 0).collect())
        .collect();
    out.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
    out
}

pub fn dual_valuation_complex(j: &MonomialIdeal) -> Result<ValuationFaceComplex> {
    let valuations = exceptional_rays(j);
    let k = valuations.len();
    if k == 0 {
        return Err(Error::InvalidInput("principal ideal: no exceptional valuations".into()));
    }
    if k > MAX_COMPLEX_VERTICES {
        return Err(Error::TooLarge(format!("{k} exceptional valuations")));
    }
    let fan = normal_fan(&newton_polytope(j)).fan;
    let d_faces = subsets(k);
    let e_faces = d_faces
        .iter()
        .filter(|s| {
            fan.max_cones()
                .iter()
                .any(|c| s.iter().all(|&i| c.rays().contains(valuations[i].vector())))
        })
        .cloned()
        .collect();
    Ok(ValuationFaceComplex { valuations, e_faces, d_faces })
}

/// gr_omega: the variables vanishing on the center V(J_omega) and the
/// gradings of u_j t^{alpha_j} restricted to omega.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedPresentation {
    pub omega: Vec<usize>,
    pub vanishing: Vec<usize>,
    pub surviving: Vec<usize>,
    /// gradings[j][r] = nu_{omega[r]}(u_j).
    pub gradings: Vec<Vec<BigInt>>,
}

pub fn weighted_normal_bundle(j: &MonomialIdeal, omega: &[usize]) -> Result<GradedPresentation> {
    let vals = exceptional_rays(j);
    let mut omega = omega.to_vec();
    omega.sort();
    omega.dedup();
    if let Some(&bad) = omega.iter().find(|&&i| i >= vals.len()) {
        return Err(Error::InvalidInput(format!("valuation index {bad} out of range ({} valuations)", vals.len())));
    }
    let n = j.nvars();
    let gradings: Vec<Vec<BigInt>> =
        (0..n).map(|u| omega.iter().map(|&i| vals[i].coordinate(u).clone()).collect()).collect();
    let (vanishing, surviving) = (0..n).partition(|&u| gradings[u].iter().any(|g| g.is_positive()));
    Ok(GradedPresentation { omega, vanishing, surviving, gradings })
}

/// in_omega: the generators of I attaining nu(I) for every nu in `vals`.
/// None when no generator attains all minima at once.
pub fn initial_by_valuations(i: &MonomialIdeal, vals: &[MonomialValuation]) -> Option<MonomialIdeal> {
    let mins: Vec<BigInt> = vals.iter().map(|v| v.of_ideal(i)).collect();
    let keep: Vec<Monomial> = i
        .generators()
        .iter()
        .filter(|g| vals.iter().zip(&mins).all(|(v, m)| v.of_monomial(g) == *m))
        .cloned()
        .collect();
    if keep.is_empty() {
        None
    } else {
        Some(minimalize(&keep).expect("nonempty"))
    }
}

/// Whether every grading is zero, as for the empty face.
pub fn is_trivial_grading(g: &GradedPresentation) -> bool {
    g.gradings.iter().all(|row| row.iter().all(|x| x.is_zero()))
}
