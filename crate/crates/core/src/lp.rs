//! Exact LP feasibility by phase-one simplex with Bland's rule.

use num_traits::{Signed, Zero};

use crate::linalg::Q;

/// Whether {x >= 0 : A x = b} is nonempty. `a` has one row per equation.
pub fn feasible(a: &[Vec<Q>], b: &[Q]) -> bool {
    let m = a.len();
    if m == 0 {
        return true;
    }
    let n = a[0].len();
    let width = n + m;
    // tableau rows: [A | I | b] with b made nonnegative
    let mut t: Vec<Vec<Q>> = Vec::with_capacity(m);
    for i in 0..m {
        let flip = b[i].is_negative();
        let mut row: Vec<Q> = a[i].iter().map(|x| if flip { -x } else { x.clone() }).collect();
        row.extend((0..m).map(|j| if i == j { Q::from_integer(1.into()) } else { Q::zero() }));
        row.push(if flip { -b[i].clone() } else { b[i].clone() });
        t.push(row);
    }
    // objective: minimize the sum of artificials, kept as the negated row sum
    let mut obj: Vec<Q> = vec![Q::zero(); width + 1];
    for row in &t {
        for j in 0..n {
            obj[j] -= &row[j];
        }
        obj[width] -= &row[width];
    }
    let mut basis: Vec<usize> = (n..n + m).collect();
    loop {
        let Some(enter) = (0..width).find(|&j| obj[j].is_negative()) else {
            break;
        };
        let mut leave: Option<(usize, Q)> = None;
        for i in 0..m {
            if t[i][enter].is_positive() {
                let ratio = &t[i][width] / &t[i][enter];
                let better = match &leave {
                    None => true,
                    Some((l, r)) => ratio < *r || (ratio == *r && basis[i] < basis[*l]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
        }
        // Phase one is bounded below by zero, so a leaving row always exists.
        let (r, _) = leave.expect("phase one is bounded");
        let piv = t[r][enter].clone();
        for x in t[r].iter_mut() {
            *x = &*x / &piv;
        }
        for i in 0..m {
            if i != r && !t[i][enter].is_zero() {
                let f = t[i][enter].clone();
                for j in 0..=width {
                    let sub = &f * &t[r][j];
                    t[i][j] -= sub;
                }
            }
        }
        if !obj[enter].is_zero() {
            let f = obj[enter].clone();
            for j in 0..=width {
                let sub = &f * &t[r][j];
                obj[j] -= sub;
            }
        }
        basis[r] = enter;
    }
    obj[width].is_zero()
}
