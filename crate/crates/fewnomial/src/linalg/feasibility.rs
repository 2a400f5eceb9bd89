use num_traits::{One, Signed, Zero};

use super::matrix::{dot, Rat, RationalMatrix};

/// Decides strict feasibility of the open cone `{ y : <row_i, y> > 0 }`
/// exactly, returning a rational witness when the cone is non-empty.
///
/// A zero row forces infeasibility (the strict inequality `0 > 0` cannot
/// hold). The homogeneous strict system is feasible iff the inhomogeneous
/// non-strict system `<row_i, y> >= 1` is, which is what both backends
/// decide: Fourier-Motzkin elimination for up to 4 variables, exact simplex
/// with Bland's rule above that.
pub fn strict_cone_feasible(rows: &RationalMatrix) -> Option<Vec<Rat>> {
    let k = rows.cols();
    let m = rows.rows();
    if m == 0 {
        return Some(vec![Rat::zero(); k]);
    }
    if k == 0 {
        return None;
    }
    for r in 0..m {
        if rows.row(r).iter().all(|x| x.is_zero()) {
            return None;
        }
    }
    let witness = if k <= 4 {
        fourier_motzkin(rows)
    } else {
        simplex_slack(rows)
    };
    if let Some(y) = &witness {
        for r in 0..m {
            debug_assert!(dot(rows.row(r), y).is_positive(), "witness not strict");
        }
    }
    witness
}

/// One inequality `<coeffs, y> >= rhs`.
#[derive(Clone, Debug)]
struct Ineq {
    coeffs: Vec<Rat>,
    rhs: Rat,
}

impl Ineq {
    fn normalized(mut self) -> Ineq {
        let scale = self
            .coeffs
            .iter()
            .chain(std::iter::once(&self.rhs))
            .find(|x| !x.is_zero())
            .map(|x| x.abs());
        if let Some(s) = scale {
            for c in &mut self.coeffs {
                *c /= &s;
            }
            self.rhs /= &s;
        }
        self
    }

    fn key(&self) -> String {
        let mut s = String::new();
        for c in &self.coeffs {
            s.push_str(&c.to_string());
            s.push(',');
        }
        s.push('|');
        s.push_str(&self.rhs.to_string());
        s
    }
}

fn fourier_motzkin(rows: &RationalMatrix) -> Option<Vec<Rat>> {
    let k = rows.cols();
    let system: Vec<Ineq> = (0..rows.rows())
        .map(|r| Ineq {
            coeffs: rows.row_vec(r),
            rhs: Rat::one(),
        })
        .collect();

    // Eliminate variables from the last down to the first, keeping each
    // level's bounding constraints for back-substitution.
    let mut levels: Vec<Vec<Ineq>> = Vec::new();
    let mut current = system;
    for var in (1..k).rev() {
        levels.push(current.clone());
        let mut next: Vec<Ineq> = Vec::new();
        let mut seen = std::collections::BTreeSet::new();
        let mut lowers: Vec<&Ineq> = Vec::new();
        let mut uppers: Vec<&Ineq> = Vec::new();
        let mut keep: Vec<Ineq> = Vec::new();
        for ineq in &current {
            let c = &ineq.coeffs[var];
            if c.is_zero() {
                let mut reduced = ineq.clone();
                reduced.coeffs.truncate(var);
                keep.push(reduced);
            } else if c.is_positive() {
                lowers.push(ineq);
            } else {
                uppers.push(ineq);
            }
        }
        for low in &lowers {
            for up in &uppers {
                let cl = &low.coeffs[var];
                let cu = &up.coeffs[var];
                // (b_l - <a_l,y'>)/c_l <= (b_u - <a_u,y'>)/c_u with c_l>0, c_u<0
                // becomes <c_l a_u - c_u a_l, y'> >= c_l b_u - c_u b_l.
                let coeffs: Vec<Rat> = (0..var)
                    .map(|j| cl * &up.coeffs[j] - cu * &low.coeffs[j])
                    .collect();
                let rhs = cl * &up.rhs - cu * &low.rhs;
                if coeffs.iter().all(|x| x.is_zero()) {
                    if rhs.is_positive() {
                        return None; // 0 >= positive: contradiction
                    }
                    continue;
                }
                let ineq = Ineq { coeffs, rhs }.normalized();
                if seen.insert(ineq.key()) {
                    next.push(ineq);
                }
            }
        }
        for ineq in keep {
            if ineq.coeffs.iter().all(|x| x.is_zero()) {
                if ineq.rhs.is_positive() {
                    return None;
                }
                continue;
            }
            let ineq = ineq.normalized();
            if seen.insert(ineq.key()) {
                next.push(ineq);
            }
        }
        current = next;
    }

    // Single-variable base case.
    let mut lower: Option<Rat> = None;
    let mut upper: Option<Rat> = None;
    for ineq in &current {
        let c = &ineq.coeffs[0];
        let bound = &ineq.rhs / c;
        if c.is_zero() {
            if ineq.rhs.is_positive() {
                return None;
            }
        } else if c.is_positive() {
            lower = Some(lower.map_or(bound.clone(), |l| l.max(bound.clone())));
        } else {
            upper = Some(upper.map_or(bound.clone(), |u| u.min(bound.clone())));
        }
    }
    let y0 = match (&lower, &upper) {
        (Some(l), Some(u)) => {
            if l > u {
                return None;
            }
            (l + u) / Rat::from_integer(2.into())
        }
        (Some(l), None) => l.clone(),
        (None, Some(u)) => u.clone(),
        (None, None) => Rat::zero(),
    };

    // Back-substitute through the saved levels.
    let mut y = vec![y0];
    for level in levels.iter().rev() {
        let idx = y.len(); // variable being restored
        let mut lo: Option<Rat> = None;
        let mut hi: Option<Rat> = None;
        for ineq in level {
            let c = &ineq.coeffs[idx];
            if c.is_zero() {
                continue;
            }
            let rest = dot(&ineq.coeffs[..idx], &y);
            let bound = (&ineq.rhs - rest) / c;
            if c.is_positive() {
                lo = Some(lo.map_or(bound.clone(), |l| l.max(bound.clone())));
            } else {
                hi = Some(hi.map_or(bound.clone(), |u| u.min(bound.clone())));
            }
        }
        let value = match (&lo, &hi) {
            (Some(l), Some(u)) => {
                debug_assert!(l <= u, "Fourier-Motzkin back-substitution emptied");
                (l + u) / Rat::from_integer(2.into())
            }
            (Some(l), None) => l.clone(),
            (None, Some(u)) => u.clone(),
            (None, None) => Rat::zero(),
        };
        y.push(value);
    }
    Some(y)
}

/// Exact simplex with Bland's rule on: maximize delta subject to
/// `<r_i, y> - delta >= 0` and `delta <= 1`. The cone is non-empty iff the
/// optimum is positive.
fn simplex_slack(rows: &RationalMatrix) -> Option<Vec<Rat>> {
    let k = rows.cols();
    let m = rows.rows();
    // Variables: y+ (k), y- (k), d+, d-, slacks s_1..s_m, s_0.
    let nv = 2 * k + 2 + m + 1;
    let d_plus = 2 * k;
    let d_minus = 2 * k + 1;
    let slack0 = nv - 1;

    // Constraint rows (equalities, rhs >= 0):
    //   -<r_i,y+> + <r_i,y-> + d+ - d- + s_i = 0
    //   d+ - d- + s_0 = 1
    let mut tab: Vec<Vec<Rat>> = Vec::with_capacity(m + 1);
    for i in 0..m {
        let mut row = vec![Rat::zero(); nv + 1];
        for j in 0..k {
            row[j] = -rows.at(i, j).clone();
            row[k + j] = rows.at(i, j).clone();
        }
        row[d_plus] = Rat::one();
        row[d_minus] = -Rat::one();
        row[2 * k + 2 + i] = Rat::one();
        tab.push(row);
    }
    let mut last = vec![Rat::zero(); nv + 1];
    last[d_plus] = Rat::one();
    last[d_minus] = -Rat::one();
    last[slack0] = Rat::one();
    last[nv] = Rat::one();
    tab.push(last);

    let mut basis: Vec<usize> = (0..m).map(|i| 2 * k + 2 + i).collect();
    basis.push(slack0);

    let obj = |j: usize| -> Rat {
        if j == d_plus {
            Rat::one()
        } else if j == d_minus {
            -Rat::one()
        } else {
            Rat::zero()
        }
    };

    loop {
        // Reduced costs: c_j - c_B . column_j (tableau kept in basis form).
        let mut entering = None;
        for j in 0..nv {
            if basis.contains(&j) {
                continue;
            }
            let mut zj = Rat::zero();
            for (r, &b) in basis.iter().enumerate() {
                if !obj(b).is_zero() {
                    zj += obj(b) * &tab[r][j];
                }
            }
            let reduced = obj(j) - zj;
            if reduced.is_positive() {
                entering = Some(j);
                break; // Bland: smallest index
            }
        }
        let Some(e) = entering else { break };

        let mut leaving: Option<usize> = None;
        let mut best: Option<Rat> = None;
        for r in 0..tab.len() {
            if tab[r][e].is_positive() {
                let ratio = &tab[r][nv] / &tab[r][e];
                let better = match &best {
                    None => true,
                    Some(b) => ratio < *b || (ratio == *b && basis[r] < basis[leaving.unwrap()]),
                };
                if better {
                    best = Some(ratio);
                    leaving = Some(r);
                }
            }
        }
        let Some(l) = leaving else {
            // Objective is capped by delta <= 1; an unbounded ray here would
            // mean the tableau is corrupt.
            unreachable!("simplex objective cannot be unbounded");
        };

        // Pivot on (l, e).
        let pivot = tab[l][e].clone();
        for v in tab[l].iter_mut() {
            *v /= &pivot;
        }
        for r in 0..tab.len() {
            if r != l && !tab[r][e].is_zero() {
                let f = tab[r][e].clone();
                for j in 0..=nv {
                    let delta = &f * &tab[l][j];
                    tab[r][j] -= delta;
                }
            }
        }
        basis[l] = e;
    }

    let mut values = vec![Rat::zero(); nv];
    for (r, &b) in basis.iter().enumerate() {
        values[b] = tab[r][nv].clone();
    }
    let delta = &values[d_plus] - &values[d_minus];
    if !delta.is_positive() {
        return None;
    }
    let y: Vec<Rat> = (0..k).map(|j| &values[j] - &values[k + j]).collect();
    Some(y)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::matrix::rat;

    fn m(rows: &[&[i64]]) -> RationalMatrix {
        RationalMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| rat(x)).collect())
                .collect(),
        )
    }

    fn check_witness(rows: &RationalMatrix, y: &[Rat]) {
        for r in 0..rows.rows() {
            assert!(dot(rows.row(r), y).is_positive());
        }
    }

    #[test]
    fn quadrant_feasible() {
        let rows = m(&[&[1, 0], &[0, 1]]);
        let y = strict_cone_feasible(&rows).expect("feasible");
        check_witness(&rows, &y);
    }

    #[test]
    fn opposite_rows_infeasible() {
        let rows = m(&[&[1, 0], &[-1, 0]]);
        assert!(strict_cone_feasible(&rows).is_none());
    }

    #[test]
    fn fnr_gale_rows_infeasible() {
        // Gale rows of the FNR configuration positively span the plane.
        let rows = m(&[&[1, 1], &[-2, 0], &[1, 0], &[0, -2], &[0, 1]]);
        assert!(strict_cone_feasible(&rows).is_none());
    }

    #[test]
    fn zero_row_forces_infeasible() {
        let rows = m(&[&[1, 1], &[0, 0]]);
        assert!(strict_cone_feasible(&rows).is_none());
    }

    #[test]
    fn simplex_branch_feasible() {
        // 6 variables forces the simplex path.
        let rows = m(&[
            &[1, 0, 0, 0, 0, 0],
            &[0, 1, 0, 0, 0, 0],
            &[0, 0, 1, 0, 0, 0],
            &[0, 0, 0, 1, 0, 0],
            &[0, 0, 0, 0, 1, 0],
            &[1, 1, 1, 1, 1, 1],
            &[-1, 0, 0, 0, 0, 2],
        ]);
        let y = strict_cone_feasible(&rows).expect("feasible");
        check_witness(&rows, &y);
    }

    #[test]
    fn simplex_branch_infeasible() {
        let rows = m(&[
            &[1, 0, 0, 0, 0, 0],
            &[-1, 0, 0, 0, 0, 0],
            &[0, 1, 0, 0, 0, 1],
            &[0, 0, 1, 0, 0, 0],
            &[0, 0, 0, 1, 0, 0],
            &[0, 0, 0, 0, 1, 0],
        ]);
        assert!(strict_cone_feasible(&rows).is_none());
    }

    #[test]
    fn fm_and_simplex_agree_on_random_cones() {
        use rand::rngs::StdRng;
        use rand::{Rng, SeedableRng};
        let mut rng = StdRng::seed_from_u64(7);
        for _ in 0..300 {
            let rows_n = rng.gen_range(1..=6);
            let rows: Vec<Vec<Rat>> = (0..rows_n)
                .map(|_| (0..3).map(|_| rat(rng.gen_range(-4..=4))).collect())
                .collect();
            let mat = RationalMatrix::from_rows(rows);
            if (0..mat.rows()).any(|r| mat.row(r).iter().all(|x| x.is_zero())) {
                continue;
            }
            let fm = fourier_motzkin(&mat);
            let sx = simplex_slack(&mat);
            assert_eq!(fm.is_some(), sx.is_some(), "backends disagree on {mat:?}");
            if let Some(y) = fm {
                check_witness(&mat, &y);
            }
            if let Some(y) = sx {
                check_witness(&mat, &y);
            }
        }
    }
}
