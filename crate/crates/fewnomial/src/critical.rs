//! Viro critical systems through Gale duality: height compatibility, sign
//! filters, exact codimension-1 critical values, certified codimension-2
//! critical-value counting, and the determinant-identity verifier.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::config::{cofaces, gale_dual, reduce_to_affine_span, PointConfig, SignedPolynomial};
use crate::faces::{cuspidal_form, enumerate_faces, FaceRecord};
use crate::linalg::{
    dot, isolate_real_roots, primitive_integer_vector, rat, rat_pow, ratio, strict_cone_feasible,
    Rat, RationalMatrix, UnivariatePoly,
};
use crate::{Error, Result};

/// Whether the heights raise the rank of every non-pyramidal face's
/// exponent matrix by one; returns the first offending face otherwise.
pub fn h_compatible(cfg: &PointConfig, heights: &[Rat]) -> Result<(bool, Option<Vec<usize>>)> {
    let faces = enumerate_faces(cfg)?;
    h_compatible_on_faces(cfg, heights, &faces)
}

/// Variant over a precomputed face list, for callers probing many height
/// functions.
pub fn h_compatible_on_faces(
    cfg: &PointConfig,
    heights: &[Rat],
    faces: &[FaceRecord],
) -> Result<(bool, Option<Vec<usize>>)> {
    if heights.len() != cfg.len() {
        return Err(Error::DimensionMismatch(format!(
            "{} heights for {} points",
            heights.len(),
            cfg.len()
        )));
    }
    for face in faces {
        if face.is_pyramid {
            continue;
        }
        let sub = cfg.exponent_matrix().select_columns(&face.indices);
        let face_h: Vec<Rat> = face.indices.iter().map(|&i| heights[i].clone()).collect();
        if !raises_rank(&sub, &face_h) {
            return Ok((false, Some(face.indices.clone())));
        }
    }
    Ok((true, None))
}

fn raises_rank(exponent_matrix: &RationalMatrix, heights: &[Rat]) -> bool {
    let mut rows: Vec<Vec<Rat>> = (0..exponent_matrix.rows())
        .map(|r| exponent_matrix.row_vec(r))
        .collect();
    rows.push(heights.to_vec());
    RationalMatrix::from_rows(rows).rank() == exponent_matrix.rank() + 1
}

/// The coefficient matrix `C` (columns of `A` scaled by the coefficients)
/// and its Gale dual `D` (rows of `B` divided by the coefficients), with
/// `C . D = 0` exactly.
pub fn coefficient_matrix(poly: &SignedPolynomial) -> (RationalMatrix, RationalMatrix) {
    let a = poly.cfg.exponent_matrix();
    let mut c = a.clone();
    for col in 0..c.cols() {
        for row in 0..c.rows() {
            let v = c.at(row, col) * &poly.coeffs[col];
            *c.at_mut(row, col) = v;
        }
    }
    let gale = gale_dual(&poly.cfg);
    let mut d = gale.matrix().clone();
    for row in 0..d.rows() {
        for col in 0..d.cols() {
            let v = d.at(row, col) / &poly.coeffs[row];
            *d.at_mut(row, col) = v;
        }
    }
    debug_assert!(c.mul(&d).is_zero());
    (c, d)
}

/// Outcome of the sign filter on one face.
#[derive(Debug, Clone)]
pub struct HalfSpaceReport {
    /// A point of the open dual cone, when non-empty.
    pub witness: Option<Vec<Rat>>,
    /// A coface of the face's support on which every coefficient has the
    /// same strict sign (forces emptiness).
    pub monochromatic_coface: Option<Vec<usize>>,
}

impl HalfSpaceReport {
    pub fn feasible(&self) -> bool {
        self.witness.is_some()
    }
}

/// Exact feasibility of the dual cone of the face's critical system, plus
/// the same-sign-coface shortcut.
pub fn half_space_filter(poly: &SignedPolynomial, face: &FaceRecord) -> Result<HalfSpaceReport> {
    let sub = poly.restrict(&face.indices)?;
    let gale = gale_dual(&sub.cfg);
    let mut d_rows: Vec<Vec<Rat>> = Vec::with_capacity(sub.cfg.len());
    for i in 0..sub.cfg.len() {
        d_rows.push(gale.row(i).iter().map(|b| b / &sub.coeffs[i]).collect());
    }
    let witness = if gale.k() == 0 {
        None
    } else {
        strict_cone_feasible(&RationalMatrix::from_rows(d_rows))
    };
    let monochromatic_coface = cofaces(&sub.cfg).into_iter().find(|j| {
        let all_pos = j.iter().all(|&i| sub.coeffs[i].is_positive());
        let all_neg = j.iter().all(|&i| sub.coeffs[i].is_negative());
        all_pos || all_neg
    });
    Ok(HalfSpaceReport {
        witness,
        monochromatic_coface,
    })
}

/// Resolution status of one face's critical system.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CriticalStatus {
    /// Zero Gale row: the system can never have a positive solution.
    PyramidExcluded,
    /// A same-sign coface empties the dual cone.
    SignExcluded,
    /// The dual cone (or the feasible arc) is empty.
    NoPositiveSolution,
    /// Critical values were computed.
    CriticalValues,
}

impl std::fmt::Display for CriticalStatus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            CriticalStatus::PyramidExcluded => "pyramid-excluded",
            CriticalStatus::SignExcluded => "sign-excluded",
            CriticalStatus::NoPositiveSolution => "no-positive-solution",
            CriticalStatus::CriticalValues => "critical-values",
        };
        f.write_str(s)
    }
}

/// One critical parameter value with its certificates.
#[derive(Debug, Clone)]
pub struct CriticalValue {
    /// Exact value when the defining power resolves over the rationals.
    pub t_exact: Option<Rat>,
    /// Exact enclosure in power scale: `t^power_exponent` lies in
    /// `[power_low, power_high]`.
    pub power_low: Rat,
    pub power_high: Rat,
    pub power_exponent: Rat,
    pub t_float: f64,
    /// Witness point in span coordinates of the face.
    pub witness: Vec<f64>,
    /// Largest normalized residual of the critical system at the witness
    /// (exactly zero when the witness verified in rational arithmetic).
    pub residual: f64,
    pub verified_exact: bool,
    /// The underlying root is a simple root of the solving polynomial.
    pub simple: bool,
}

impl CriticalValue {
    /// Whether the enclosure contains a given positive rational value.
    pub fn brackets(&self, t: &Rat) -> bool {
        match rat_pow(t, &self.power_exponent) {
            Some(p) => self.power_low <= p && p <= self.power_high,
            None => {
                let tf = t.to_f64().unwrap_or(f64::NAN);
                let e = self.power_exponent.to_f64().unwrap_or(f64::NAN);
                let p = tf.powf(e);
                self.power_low.to_f64().unwrap_or(f64::NAN) <= p
                    && p <= self.power_high.to_f64().unwrap_or(f64::NAN)
            }
        }
    }
}

/// Full analysis of one face's critical system.
#[derive(Debug, Clone)]
pub struct CriticalFaceResult {
    pub face_indices: Vec<usize>,
    pub status: CriticalStatus,
    pub t_values: Vec<CriticalValue>,
    /// Why the reported list is complete, or which bound certifies it.
    pub certificate: String,
}

const REFINE_WIDTH_NUM: i64 = 1;
const REFINE_WIDTH_DEN: i64 = 1_000_000_000_000; // 1e-12 target brackets

/// Cap on the degree of the codimension-2 Gale polynomial.
pub const GALE_DEGREE_CAP: u32 = 128;

/// Exact critical value of a codimension-1 face: either no positive
/// solution (sign filter) or exactly one `t`, rational when the fractional
/// power resolves, otherwise isolated to width `1e-12`, with the unique
/// positive witness recovered from the log-linear monomial system.
pub fn codim1_critical(poly: &SignedPolynomial, face: &FaceRecord) -> Result<CriticalFaceResult> {
    let sub = poly.restrict(&face.indices)?;
    if sub.cfg.codim() != 1 {
        return Err(Error::WrongCodimension {
            expected: 1,
            actual: sub.cfg.codim(),
        });
    }
    if face.is_pyramid {
        return Ok(CriticalFaceResult {
            face_indices: face.indices.clone(),
            status: CriticalStatus::PyramidExcluded,
            t_values: Vec::new(),
            certificate: "zero Gale row".into(),
        });
    }
    if !crate::config::sign_compatible(&sub.cfg, &sub.coeffs)? {
        return Ok(CriticalFaceResult {
            face_indices: face.indices.clone(),
            status: CriticalStatus::NoPositiveSolution,
            t_values: Vec::new(),
            certificate: "coefficients not sign compatible with the affine relation".into(),
        });
    }
    let heights = sub.heights.clone().ok_or(Error::MissingHeights)?;
    let (reduced, _) = reduce_to_affine_span(&sub.cfg);
    let m = reduced.dim();
    if !raises_rank(reduced.exponent_matrix(), &heights) {
        return Err(Error::NotHCompatible(format!("{:?}", face.indices)));
    }

    let gale = gale_dual(&reduced);
    let lambda = primitive_integer_vector(&gale.matrix().col_vec(0));
    let exponent_sum: Rat = heights
        .iter()
        .zip(&lambda)
        .map(|(h, l)| h * Rat::from_integer(l.clone()))
        .sum();
    assert!(
        !exponent_sum.is_zero(),
        "rank condition forces a nonzero height pairing"
    );

    // t^E = prod (lambda_a / c_a)^{lambda_a} with E the height pairing.
    let mut base = Rat::one();
    for (l, c) in lambda.iter().zip(&sub.coeffs) {
        let factor = Rat::from_integer(l.clone()) / c;
        base *= int_pow(&factor, l);
    }
    assert!(
        base.is_positive(),
        "sign compatibility forces a positive base"
    );
    let inv_e = exponent_sum.clone().recip();
    let t_exact = rat_pow(&base, &inv_e);

    // Exact value, or a rational bracket of width at most 1e-12: t is the
    // unique positive root of x^p - base^q where 1/E = q/p in lowest terms.
    let (power_low, power_high, t_float) = match &t_exact {
        Some(t) => (t.clone(), t.clone(), t.to_f64().unwrap_or(f64::NAN)),
        None => {
            let p_exp = inv_e.denom().to_u32().ok_or_else(|| {
                Error::Precondition("critical exponent too large to isolate".into())
            })?;
            let q_exp = inv_e.numer();
            let target = int_pow(&base, q_exp);
            let mut defining = vec![Rat::zero(); p_exp as usize + 1];
            defining[0] = -target.clone();
            defining[p_exp as usize] = Rat::one();
            let defining = UnivariatePoly::new(defining);
            let upper = target.clone().max(Rat::one()) + Rat::one();
            let roots = isolate_real_roots(&defining, (Rat::zero(), upper))?;
            let roots: Vec<_> = roots
                .into_iter()
                .filter(|(a, _)| a.is_positive() || !defining.eval(a).is_zero())
                .collect();
            if roots.len() != 1 {
                return Err(Error::Internal(format!(
                    "expected one positive critical root, found {}",
                    roots.len()
                )));
            }
            let width = ratio(REFINE_WIDTH_NUM, REFINE_WIDTH_DEN);
            let (a, b) = crate::linalg::refine_root_interval(&defining, roots[0].clone(), &width);
            let mid = (a.to_f64().unwrap_or(f64::NAN) + b.to_f64().unwrap_or(f64::NAN)) / 2.0;
            (a, b, mid)
        }
    };

    // Witness: x^{a_i - a_0} = (lambda_i c_0 t^{h_0}) / (lambda_0 c_i t^{h_i}).
    let (witness, residual, verified_exact) =
        recover_witness(&reduced, &sub.coeffs, &heights, &t_exact, t_float)?;

    Ok(CriticalFaceResult {
        face_indices: face.indices.clone(),
        status: CriticalStatus::CriticalValues,
        t_values: vec![CriticalValue {
            t_exact,
            power_low,
            power_high,
            power_exponent: Rat::one(),
            t_float,
            witness,
            residual,
            verified_exact,
            simple: true,
        }],
        certificate: format!(
            "codimension-1 face: sign compatible, unique critical value (m = {m})"
        ),
    })
}

fn int_pow(base: &Rat, e: &BigInt) -> Rat {
    let mag = e.abs().to_u64().expect("small exponent");
    let mut acc = Rat::one();
    for _ in 0..mag {
        acc *= base;
    }
    if e.is_negative() {
        acc.recip()
    } else {
        acc
    }
}

/// Solves the monomial system for the witness in span coordinates; exact
/// when every power resolves over the rationals, float otherwise.
fn recover_witness(
    reduced: &PointConfig,
    coeffs: &[Rat],
    heights: &[Rat],
    t_exact: &Option<Rat>,
    t_float: f64,
) -> Result<(Vec<f64>, f64, bool)> {
    let m = reduced.dim();
    let gale = gale_dual(reduced);
    let lambda = primitive_integer_vector(&gale.matrix().col_vec(0));

    // Pick m exponent differences forming an invertible system.
    let mut chosen: Vec<usize> = Vec::new();
    let mut rows: Vec<Vec<Rat>> = Vec::new();
    for i in 1..reduced.len() {
        if chosen.len() == m {
            break;
        }
        let diff: Vec<Rat> = (0..m)
            .map(|j| &reduced.point(i)[j] - &reduced.point(0)[j])
            .collect();
        let mut attempt = rows.clone();
        attempt.push(diff.clone());
        if RationalMatrix::from_rows(attempt.clone()).rank() == attempt.len() {
            rows.push(diff);
            chosen.push(i);
        }
    }
    let mat = RationalMatrix::from_rows(rows);
    let inv = crate::config::invert(&mat)
        .ok_or_else(|| Error::Internal("independent exponent differences are invertible".into()))?;

    // Exact path requires an exact t.
    if let Some(t) = t_exact {
        let mut rhos: Vec<Option<Rat>> = Vec::new();
        for &i in &chosen {
            // rho_i = (lambda_i c_0 / lambda_0 c_i) * t^{h_0 - h_i}
            let tpow = rat_pow(t, &(&heights[0] - &heights[i]));
            rhos.push(tpow.map(|tp| {
                Rat::from_integer(lambda[i].clone()) * &coeffs[0]
                    / (Rat::from_integer(lambda[0].clone()) * &coeffs[i])
                    * tp
            }));
        }
        if rhos.iter().all(|r| r.is_some()) {
            let rhos: Vec<Rat> = rhos.into_iter().map(|r| r.unwrap()).collect();
            let mut exact_x: Vec<Option<Rat>> = Vec::new();
            for j in 0..m {
                let mut acc = Some(Rat::one());
                for (idx, rho) in rhos.iter().enumerate() {
                    acc = acc.and_then(|a| rat_pow(rho, inv.at(j, idx)).map(|p| a * p));
                }
                exact_x.push(acc);
            }
            if exact_x.iter().all(|x| x.is_some()) {
                let exact_x: Vec<Rat> = exact_x.into_iter().map(|x| x.unwrap()).collect();
                if let Some(true) = exact_residual_zero(reduced, coeffs, heights, t, &exact_x) {
                    let witness = exact_x
                        .iter()
                        .map(|x| x.to_f64().unwrap_or(f64::NAN))
                        .collect();
                    return Ok((witness, 0.0, true));
                }
            }
        }
    }

    // Float fallback.
    let log_t = t_float.ln();
    let mut log_rhos = Vec::new();
    for &i in &chosen {
        let l0 = lambda[0].to_f64().unwrap_or(f64::NAN);
        let li = lambda[i].to_f64().unwrap_or(f64::NAN);
        let c0 = coeffs[0].to_f64().unwrap_or(f64::NAN);
        let ci = coeffs[i].to_f64().unwrap_or(f64::NAN);
        let h0 = heights[0].to_f64().unwrap_or(f64::NAN);
        let hi = heights[i].to_f64().unwrap_or(f64::NAN);
        log_rhos.push(((li * c0) / (l0 * ci)).ln() + (h0 - hi) * log_t);
    }
    let mut witness = Vec::with_capacity(m);
    for j in 0..m {
        let mut acc = 0.0;
        for (idx, lr) in log_rhos.iter().enumerate() {
            acc += inv.at(j, idx).to_f64().unwrap_or(f64::NAN) * lr;
        }
        witness.push(acc.exp());
    }
    let (t_polished, witness) = newton_polish(reduced, coeffs, heights, t_float, &witness);
    let residual = float_residual(reduced, coeffs, heights, t_polished, &witness);
    Ok((witness, residual, false))
}

/// Exact residual of the critical system: `A . (c_i t^{h_i} x^{a_i}) = 0`.
/// Returns `None` when some power does not resolve over the rationals.
fn exact_residual_zero(
    reduced: &PointConfig,
    coeffs: &[Rat],
    heights: &[Rat],
    t: &Rat,
    x: &[Rat],
) -> Option<bool> {
    let mut terms = Vec::with_capacity(reduced.len());
    for i in 0..reduced.len() {
        let mut w = coeffs[i].clone() * rat_pow(t, &heights[i])?;
        for (xj, aj) in x.iter().zip(reduced.point(i)) {
            w *= rat_pow(xj, aj)?;
        }
        terms.push(w);
    }
    let image = reduced.exponent_matrix().mul_vec(&terms);
    Some(image.iter().all(|v| v.is_zero()))
}

/// Newton iterations on the square critical system `A . w(t, x) = 0` in
/// the variables `(t, x)`, keeping the iterates positive. Polishes a
/// log-linear starting point to machine precision.
fn newton_polish(
    reduced: &PointConfig,
    coeffs: &[Rat],
    heights: &[Rat],
    t0: f64,
    x0: &[f64],
) -> (f64, Vec<f64>) {
    let m = reduced.dim();
    let size = reduced.len();
    let a: Vec<Vec<f64>> = (0..=m)
        .map(|r| {
            (0..size)
                .map(|i| {
                    reduced
                        .exponent_matrix()
                        .at(r, i)
                        .to_f64()
                        .unwrap_or(f64::NAN)
                })
                .collect()
        })
        .collect();
    let cf: Vec<f64> = coeffs
        .iter()
        .map(|c| c.to_f64().unwrap_or(f64::NAN))
        .collect();
    let hf: Vec<f64> = heights
        .iter()
        .map(|h| h.to_f64().unwrap_or(f64::NAN))
        .collect();
    let exps: Vec<Vec<f64>> = (0..size)
        .map(|i| {
            reduced
                .point(i)
                .iter()
                .map(|e| e.to_f64().unwrap_or(f64::NAN))
                .collect()
        })
        .collect();

    let mut t = t0;
    let mut x = x0.to_vec();
    for _ in 0..40 {
        let w: Vec<f64> = (0..size)
            .map(|i| {
                let mut v = cf[i] * t.powf(hf[i]);
                for (xj, aj) in x.iter().zip(&exps[i]) {
                    v *= xj.powf(*aj);
                }
                v
            })
            .collect();
        let scale: f64 = w.iter().map(|v| v.abs()).sum::<f64>().max(1e-300);
        let residual: Vec<f64> = a
            .iter()
            .map(|row| row.iter().zip(&w).map(|(c, v)| c * v).sum::<f64>())
            .collect();
        if residual.iter().map(|r| r.abs()).fold(0.0, f64::max) / scale < 1e-15 {
            break;
        }
        // Jacobian in log variables (u0 = ln t, u_j = ln x_j):
        // d w_i = w_i (h_i du0 + sum_j a_ij du_j).
        let mut jac = vec![vec![0.0f64; m + 1]; m + 1];
        for (r, row) in a.iter().enumerate() {
            for i in 0..size {
                let base = row[i] * w[i];
                jac[r][0] += base * hf[i];
                for j in 0..m {
                    jac[r][j + 1] += base * exps[i][j];
                }
            }
        }
        let Some(step) = solve_dense(&mut jac, &residual) else {
            break;
        };
        let mut damping = 1.0;
        // Keep the multiplicative update bounded.
        let max_step = step.iter().map(|s| s.abs()).fold(0.0, f64::max);
        if max_step > 0.5 {
            damping = 0.5 / max_step;
        }
        t *= (-damping * step[0]).exp();
        for j in 0..m {
            x[j] *= (-damping * step[j + 1]).exp();
        }
        if !t.is_finite() || x.iter().any(|v| !v.is_finite()) {
            return (t0, x0.to_vec());
        }
    }
    (t, x)
}

fn solve_dense(a: &mut [Vec<f64>], b: &[f64]) -> Option<Vec<f64>> {
    let n = b.len();
    let mut rhs = b.to_vec();
    for c in 0..n {
        let pivot = (c..n).max_by(|&i, &j| a[i][c].abs().total_cmp(&a[j][c].abs()))?;
        if a[pivot][c].abs() < 1e-300 {
            return None;
        }
        a.swap(c, pivot);
        rhs.swap(c, pivot);
        for r in c + 1..n {
            let f = a[r][c] / a[c][c];
            for k in c..n {
                a[r][k] -= f * a[c][k];
            }
            rhs[r] -= f * rhs[c];
        }
    }
    let mut out = vec![0.0; n];
    for c in (0..n).rev() {
        let mut acc = rhs[c];
        for k in c + 1..n {
            acc -= a[c][k] * out[k];
        }
        out[c] = acc / a[c][c];
    }
    Some(out)
}

/// Largest row residual of `A . (c_i t^{h_i} x^{a_i})`, normalized by the
/// term magnitudes.
fn float_residual(
    reduced: &PointConfig,
    coeffs: &[Rat],
    heights: &[Rat],
    t: f64,
    x: &[f64],
) -> f64 {
    let m = reduced.dim();
    let mut terms = Vec::with_capacity(reduced.len());
    for i in 0..reduced.len() {
        let mut w = coeffs[i].to_f64().unwrap_or(f64::NAN)
            * t.powf(heights[i].to_f64().unwrap_or(f64::NAN));
        for (xj, aj) in x.iter().zip(reduced.point(i)) {
            w *= xj.powf(aj.to_f64().unwrap_or(f64::NAN));
        }
        terms.push(w);
    }
    let scale: f64 = terms.iter().map(|w| w.abs()).sum::<f64>().max(1e-300);
    let mut worst: f64 = 0.0;
    for row in 0..=m {
        let mut acc = 0.0;
        for (i, w) in terms.iter().enumerate() {
            acc += reduced
                .exponent_matrix()
                .at(row, i)
                .to_f64()
                .unwrap_or(f64::NAN)
                * w;
        }
        worst = worst.max(acc.abs() / scale);
    }
    worst
}

/// Certified critical values of a codimension-2 face: the dual cone's
/// projective arc is charted by a rational segment, the Gale equation
/// becomes the polynomial identity `P(s) = N(s)`, and exact root isolation
/// counts and brackets every critical value.
pub fn codim2_critical(poly: &SignedPolynomial, face: &FaceRecord) -> Result<CriticalFaceResult> {
    let sub = poly.restrict(&face.indices)?;
    if sub.cfg.codim() != 2 {
        return Err(Error::WrongCodimension {
            expected: 2,
            actual: sub.cfg.codim(),
        });
    }
    if face.is_pyramid {
        return Ok(CriticalFaceResult {
            face_indices: face.indices.clone(),
            status: CriticalStatus::PyramidExcluded,
            t_values: Vec::new(),
            certificate: "zero Gale row".into(),
        });
    }
    let filter = half_space_filter(poly, face)?;
    if let Some(coface) = &filter.monochromatic_coface {
        return Ok(CriticalFaceResult {
            face_indices: face.indices.clone(),
            status: CriticalStatus::SignExcluded,
            t_values: Vec::new(),
            certificate: format!("same-sign coface {coface:?} empties the dual cone"),
        });
    }
    let Some(cone_witness) = filter.witness else {
        return Ok(CriticalFaceResult {
            face_indices: face.indices.clone(),
            status: CriticalStatus::NoPositiveSolution,
            t_values: Vec::new(),
            certificate: "dual rows not contained in an open half plane".into(),
        });
    };

    let heights = sub.heights.clone().ok_or(Error::MissingHeights)?;
    let (reduced, _) = reduce_to_affine_span(&sub.cfg);
    if !raises_rank(reduced.exponent_matrix(), &heights) {
        return Err(Error::NotHCompatible(format!("{:?}", face.indices)));
    }

    let gale = gale_dual(&reduced);
    let size = reduced.len();
    let d_rows: Vec<Vec<Rat>> = (0..size)
        .map(|i| gale.row(i).iter().map(|b| b / &sub.coeffs[i]).collect())
        .collect();

    // lambda spans the kernel of the h-extended exponent matrix.
    let mut hrows: Vec<Vec<Rat>> = (0..reduced.exponent_matrix().rows())
        .map(|r| reduced.exponent_matrix().row_vec(r))
        .collect();
    hrows.push(heights.clone());
    let h_matrix = RationalMatrix::from_rows(hrows);
    let h_kernel = h_matrix.kernel_basis();
    if h_kernel.cols() != 1 {
        return Err(Error::Internal(format!(
            "codim-2 face h-kernel has {} columns",
            h_kernel.cols()
        )));
    }
    let lambda = primitive_integer_vector(&h_kernel.col_vec(0));

    // Chart: rotate the lexicographically extremal dual direction to (0,1)
    // and parametrize the arc by y(s) = s u + v.
    let alpha = chart_row(&d_rows);
    let da = &d_rows[alpha];
    let norm = &da[0] * &da[0] + &da[1] * &da[1];
    let u = [-da[1].clone(), da[0].clone()];
    let v = [&da[0] / &norm, &da[1] / &norm];
    // Linear forms l_i(s) = <D_i, u> s + <D_i, v>.
    let lines: Vec<(Rat, Rat)> = d_rows
        .iter()
        .map(|row| (dot(row, &u), dot(row, &v)))
        .collect();

    // Feasible open interval of s.
    let mut lo: Option<Rat> = None;
    let mut hi: Option<Rat> = None;
    for (slope, intercept) in &lines {
        if slope.is_zero() {
            if !intercept.is_positive() {
                return Ok(CriticalFaceResult {
                    face_indices: face.indices.clone(),
                    status: CriticalStatus::NoPositiveSolution,
                    t_values: Vec::new(),
                    certificate: "feasible arc is empty".into(),
                });
            }
        } else {
            let bound = -intercept / slope;
            if slope.is_positive() {
                lo = Some(lo.map_or(bound.clone(), |l: Rat| l.max(bound.clone())));
            } else {
                hi = Some(hi.map_or(bound.clone(), |h: Rat| h.min(bound.clone())));
            }
        }
    }
    if let (Some(l), Some(h)) = (&lo, &hi) {
        if l >= h {
            return Ok(CriticalFaceResult {
                face_indices: face.indices.clone(),
                status: CriticalStatus::NoPositiveSolution,
                t_values: Vec::new(),
                certificate: "feasible arc is empty".into(),
            });
        }
    }

    // P(s) = prod_{lambda_i > 0} l_i^{lambda_i}, N(s) for the negatives.
    // The degree is the positive part of lambda; wild heights make it
    // explode, so refuse early rather than grind forever.
    let total_degree: BigInt = lambda.iter().map(|l| l.abs()).sum();
    if total_degree > BigInt::from(GALE_DEGREE_CAP) {
        return Err(Error::Precondition(format!(
            "height-induced Gale exponents sum to {total_degree}, over the solver cap {GALE_DEGREE_CAP}; use smaller heights"
        )));
    }
    let mut p = UnivariatePoly::one();
    let mut n_poly = UnivariatePoly::one();
    for (i, l) in lambda.iter().enumerate() {
        if l.is_zero() {
            continue;
        }
        let factor = UnivariatePoly::linear(lines[i].0.clone(), lines[i].1.clone());
        let e = l.abs().to_u32().expect("small multiplicity");
        if l.is_positive() {
            p = p.mul(&factor.pow(e));
        } else {
            n_poly = n_poly.mul(&factor.pow(e));
        }
    }
    let diff = p.sub(&n_poly);
    if diff.is_zero() {
        return Err(Error::Precondition(
            "critical equation vanishes identically on the arc; coefficients are non-generic"
                .into(),
        ));
    }

    // Clamp unbounded ends with the Cauchy root bound and isolate.
    let cauchy = diff.cauchy_root_bound();
    let lo_c = lo.clone().unwrap_or(-cauchy.clone()).max(-cauchy.clone());
    let hi_c = hi.clone().unwrap_or(cauchy.clone()).min(cauchy.clone());
    let mut roots = Vec::new();
    if lo_c < hi_c {
        roots = isolate_real_roots(&diff, (lo_c.clone(), hi_c.clone()))?;
        // Roots exactly on the arc boundary lie outside the open cone.
        roots.retain(|(a, b)| !(a == b && (Some(a) == lo.as_ref() || Some(a) == hi.as_ref())));
    }

    // Vector u in ker(A) off ker(A^h) determines t: t^E = prod l_i(s)^{u_i}.
    let a_kernel = gale.matrix();
    let mut t_vec: Option<Vec<BigInt>> = None;
    let mut t_exp = Rat::zero();
    for col in 0..a_kernel.cols() {
        let cand = primitive_integer_vector(&a_kernel.col_vec(col));
        let e: Rat = heights
            .iter()
            .zip(&cand)
            .map(|(h, u)| h * Rat::from_integer(u.clone()))
            .sum();
        if !e.is_zero() {
            t_vec = Some(cand);
            t_exp = e;
            break;
        }
    }
    let t_vec = t_vec.ok_or_else(|| {
        Error::Internal("heights vanish on the whole kernel despite the rank condition".into())
    })?;

    // Refine each root, enclose t^E exactly, and certify simplicity.
    let width = ratio(REFINE_WIDTH_NUM, REFINE_WIDTH_DEN * 1000);
    let multiple_locus = diff.gcd(&diff.derivative());
    let diff_sf = diff.square_free_part();
    let mut values = Vec::new();
    let mut enclosures: Vec<(Rat, Rat)> = Vec::new();
    for root in &roots {
        let mut interval = crate::linalg::refine_on_square_free(&diff_sf, root.clone(), &width);
        // Keep the bracket strictly inside the arc so the linear forms stay
        // positive on it.
        for _ in 0..256 {
            let inside_lo = lo.as_ref().is_none_or(|l| &interval.0 > l);
            let inside_hi = hi.as_ref().is_none_or(|h| &interval.1 < h);
            if inside_lo && inside_hi {
                break;
            }
            let tighter = (&interval.1 - &interval.0) * ratio(1, 2);
            if tighter.is_zero() {
                break;
            }
            interval = crate::linalg::refine_on_square_free(&diff_sf, interval, &tighter);
        }
        let simple = if multiple_locus.degree().unwrap_or(0) >= 1 && interval.0 != interval.1 {
            isolate_real_roots(&multiple_locus, interval.clone())?.is_empty()
        } else if interval.0 == interval.1 {
            !multiple_locus.eval(&interval.0).is_zero() || multiple_locus.degree().unwrap_or(0) == 0
        } else {
            true
        };

        let (plow, phigh) = power_enclosure(&lines, &t_vec, &interval);
        let t_float = {
            let mid =
                (plow.to_f64().unwrap_or(f64::NAN) + phigh.to_f64().unwrap_or(f64::NAN)) / 2.0;
            let e = t_exp.to_f64().unwrap_or(f64::NAN);
            mid.powf(1.0 / e)
        };
        // Exact t when the root is rational and the power resolves.
        let t_exact = if interval.0 == interval.1 {
            let r = exact_power_at(&lines, &t_vec, &interval.0);
            r.and_then(|p| rat_pow(&p, &t_exp.clone().recip()))
        } else {
            None
        };

        let witness = codim2_witness(&reduced, &lines, &interval, t_float, &sub, &heights);
        let (witness, residual) = witness;

        enclosures.push((plow.clone(), phigh.clone()));
        values.push(CriticalValue {
            t_exact,
            power_low: plow,
            power_high: phigh,
            power_exponent: t_exp.clone(),
            t_float,
            witness,
            residual,
            verified_exact: false,
            simple,
        });
    }

    // Distinct roots must give distinct t: separate the power enclosures.
    let mut distinct = true;
    'outer: for i in 0..enclosures.len() {
        for j in i + 1..enclosures.len() {
            let disjoint = enclosures[i].1 < enclosures[j].0 || enclosures[j].1 < enclosures[i].0;
            if !disjoint {
                distinct = false;
                break 'outer;
            }
        }
    }

    // Descartes certificate: order the colinearity classes inside the half
    // plane and count sign changes of the class sums of lambda.
    let classes = ordered_classes(&d_rows, &cone_witness);
    let class_sums: Vec<Rat> = classes
        .iter()
        .map(|class| {
            class
                .iter()
                .map(|&i| Rat::from_integer(lambda[i].clone()))
                .sum()
        })
        .collect();
    let signvar = sign_variations(&class_sums);
    let s = classes.len() - 1;
    if values.len() > signvar {
        return Err(Error::Internal(format!(
            "{} roots exceed the sign-variation certificate {signvar}",
            values.len()
        )));
    }

    let certificate = format!(
        "exact root isolation complete: {} root(s) <= signvar {} <= s = {}{}{}",
        values.len(),
        signvar,
        s,
        if distinct {
            "; t values pairwise distinct"
        } else {
            "; WARNING: t enclosures overlap"
        },
        if values.iter().all(|v| v.simple) {
            ""
        } else {
            "; WARNING: non-simple root"
        },
    );

    Ok(CriticalFaceResult {
        face_indices: face.indices.clone(),
        status: if values.is_empty() {
            CriticalStatus::NoPositiveSolution
        } else {
            CriticalStatus::CriticalValues
        },
        t_values: values,
        certificate,
    })
}

/// Descartes-type bound on the critical values of a codimension-2 face
/// without solving: the sign-variation certificate over the ordered
/// colinearity classes. Zero when the dual cone is empty.
pub fn codim2_signvar_bound(poly: &SignedPolynomial, face: &FaceRecord) -> Result<usize> {
    let sub = poly.restrict(&face.indices)?;
    if sub.cfg.codim() != 2 {
        return Err(Error::WrongCodimension {
            expected: 2,
            actual: sub.cfg.codim(),
        });
    }
    if face.is_pyramid {
        return Ok(0);
    }
    let filter = half_space_filter(poly, face)?;
    let Some(witness) = filter.witness else {
        return Ok(0);
    };
    let heights = sub.heights.clone().ok_or(Error::MissingHeights)?;
    let (reduced, _) = reduce_to_affine_span(&sub.cfg);
    let mut hrows: Vec<Vec<Rat>> = (0..reduced.exponent_matrix().rows())
        .map(|r| reduced.exponent_matrix().row_vec(r))
        .collect();
    hrows.push(heights);
    let h_kernel = RationalMatrix::from_rows(hrows).kernel_basis();
    if h_kernel.cols() != 1 {
        return Err(Error::NotHCompatible(format!("{:?}", face.indices)));
    }
    let lambda = h_kernel.col_vec(0);
    let gale = gale_dual(&reduced);
    let d_rows: Vec<Vec<Rat>> = (0..reduced.len())
        .map(|i| gale.row(i).iter().map(|b| b / &sub.coeffs[i]).collect())
        .collect();
    let classes = ordered_classes(&d_rows, &witness);
    let sums: Vec<Rat> = classes
        .iter()
        .map(|class| class.iter().map(|&i| lambda[i].clone()).sum())
        .collect();
    Ok(sign_variations(&sums))
}

/// Lexicographically extremal normalized dual direction, for a
/// deterministic chart.
fn chart_row(d_rows: &[Vec<Rat>]) -> usize {
    let mut best = 0;
    let mut best_key: Option<Vec<BigInt>> = None;
    for (i, row) in d_rows.iter().enumerate() {
        let key = primitive_integer_vector(row);
        if best_key.as_ref().is_none_or(|b| &key > b) {
            best_key = Some(key);
            best = i;
        }
    }
    best
}

/// Exact enclosure of `prod l_i(s)^{u_i}` over an s-interval on which every
/// `l_i` is positive, via per-factor linear ranges.
fn power_enclosure(
    lines: &[(Rat, Rat)],
    exponents: &[BigInt],
    interval: &(Rat, Rat),
) -> (Rat, Rat) {
    let (a, b) = interval;
    let mut low = Rat::one();
    let mut high = Rat::one();
    for ((slope, intercept), e) in lines.iter().zip(exponents) {
        if e.is_zero() {
            continue;
        }
        let va = slope * a + intercept;
        let vb = slope * b + intercept;
        let (fmin, fmax) = if va <= vb { (va, vb) } else { (vb, va) };
        debug_assert!(fmin.is_positive(), "factor not positive on the bracket");
        let mag = e.abs();
        let (lo_f, hi_f) = (int_pow(&fmin, &mag), int_pow(&fmax, &mag));
        if e.is_positive() {
            low *= lo_f;
            high *= hi_f;
        } else {
            low *= hi_f.recip();
            high *= lo_f.recip();
        }
    }
    (low, high)
}

fn exact_power_at(lines: &[(Rat, Rat)], exponents: &[BigInt], s: &Rat) -> Option<Rat> {
    let mut acc = Rat::one();
    for ((slope, intercept), e) in lines.iter().zip(exponents) {
        if e.is_zero() {
            continue;
        }
        let v = slope * s + intercept;
        if !v.is_positive() {
            return None;
        }
        acc *= int_pow(&v, e);
    }
    Some(acc)
}

fn codim2_witness(
    reduced: &PointConfig,
    lines: &[(Rat, Rat)],
    interval: &(Rat, Rat),
    t_float: f64,
    sub: &SignedPolynomial,
    heights: &[Rat],
) -> (Vec<f64>, f64) {
    let m = reduced.dim();
    let mid = (&interval.0 + &interval.1) * ratio(1, 2);
    // Term values v_i = l_i(mid) approximate t^{h_i} x^{a_i}.
    let vals: Vec<f64> = lines
        .iter()
        .map(|(sl, ic)| (sl * &mid + ic).to_f64().unwrap_or(f64::NAN))
        .collect();
    // Solve the log-linear system for x given t.
    let log_t = t_float.ln();
    let mut rows: Vec<Vec<Rat>> = Vec::new();
    let mut rhs: Vec<f64> = Vec::new();
    for i in 1..reduced.len() {
        if rows.len() == m {
            break;
        }
        let diff: Vec<Rat> = (0..m)
            .map(|j| &reduced.point(i)[j] - &reduced.point(0)[j])
            .collect();
        let mut attempt = rows.clone();
        attempt.push(diff.clone());
        if RationalMatrix::from_rows(attempt.clone()).rank() == attempt.len() {
            let h_diff = (&heights[i] - &heights[0]).to_f64().unwrap_or(f64::NAN);
            rhs.push((vals[i] / vals[0]).ln() - h_diff * log_t);
            rows.push(diff);
        }
    }
    let mat = RationalMatrix::from_rows(rows);
    let witness: Vec<f64> = match crate::config::invert(&mat) {
        Some(inv) => (0..m)
            .map(|j| {
                let mut acc = 0.0;
                for (idx, r) in rhs.iter().enumerate() {
                    acc += inv.at(j, idx).to_f64().unwrap_or(f64::NAN) * r;
                }
                acc.exp()
            })
            .collect(),
        None => vec![f64::NAN; m],
    };
    let (t_polished, witness) = newton_polish(reduced, &sub.coeffs, heights, t_float, &witness);
    let residual = float_residual(reduced, &sub.coeffs, heights, t_polished, &witness);
    (witness, residual)
}

/// Colinearity classes of the dual rows ordered by angle inside the open
/// half plane (cross-product comparator).
fn ordered_classes(d_rows: &[Vec<Rat>], _witness: &[Rat]) -> Vec<Vec<usize>> {
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for (i, row) in d_rows.iter().enumerate() {
        let found = classes.iter_mut().find(|class| {
            let rep = &d_rows[class[0]];
            (&rep[0] * &row[1] - &rep[1] * &row[0]).is_zero()
        });
        match found {
            Some(class) => class.push(i),
            None => classes.push(vec![i]),
        }
    }
    classes.sort_by(|a, b| {
        let ra = &d_rows[a[0]];
        let rb = &d_rows[b[0]];
        let det = &ra[0] * &rb[1] - &ra[1] * &rb[0];
        if det.is_positive() {
            std::cmp::Ordering::Less
        } else if det.is_negative() {
            std::cmp::Ordering::Greater
        } else {
            std::cmp::Ordering::Equal
        }
    });
    classes
}

/// Strict sign changes between consecutive nonzero terms.
pub fn sign_variations(seq: &[Rat]) -> usize {
    let mut count = 0;
    let mut last: Option<bool> = None;
    for v in seq {
        if v.is_zero() {
            continue;
        }
        let s = v.is_positive();
        if let Some(prev) = last {
            if prev != s {
                count += 1;
            }
        }
        last = Some(s);
    }
    count
}

/// Verifies the determinant identity behind solution simplicity: the
/// Jacobian determinant of the Gale maps, divided by the factored form
/// `(prod <B_a,y>^{-1}) P_A(y) (sum y_j^2) (sum h_a <B_a,y>)`, is one and
/// the same rational constant at every sample inside the dual cone.
///
/// (The irrational power `prod <B_a,y>^{sum lambda}` common to both sides
/// cancels, so the check is exact over the rationals.)
pub fn jacobian_identity_check(poly: &SignedPolynomial, samples: &[Vec<Rat>]) -> Result<bool> {
    let k = poly.cfg.codim();
    if k < 2 {
        return Err(Error::WrongCodimension {
            expected: 2,
            actual: k,
        });
    }
    let heights = poly.heights.clone().ok_or(Error::MissingHeights)?;
    let (reduced, _) = reduce_to_affine_span(&poly.cfg);
    if !raises_rank(reduced.exponent_matrix(), &heights) {
        return Err(Error::NotHCompatible("full configuration".into()));
    }
    let gale = gale_dual(&reduced);
    let size = reduced.len();

    // lambda: Gale dual of the h-extended matrix, k-1 columns.
    let mut hrows: Vec<Vec<Rat>> = (0..reduced.exponent_matrix().rows())
        .map(|r| reduced.exponent_matrix().row_vec(r))
        .collect();
    hrows.push(heights.clone());
    let lambda = RationalMatrix::from_rows(hrows).kernel_basis();
    debug_assert_eq!(lambda.cols(), k - 1);

    let form = cuspidal_form(&reduced)?;

    let mut ratio_seen: Option<Rat> = None;
    let mut any_nonzero = false;
    for sample in samples {
        if sample.len() != k {
            return Err(Error::DimensionMismatch(format!(
                "sample has {} coordinates, expected {k}",
                sample.len()
            )));
        }
        // Strictly inside the dual cone: <B_a, y> / c_a > 0.
        let pairings: Vec<Rat> = (0..size).map(|i| dot(gale.row(i), sample)).collect();
        for (i, pairing) in pairings.iter().enumerate() {
            if !(pairing / &poly.coeffs[i]).is_positive() {
                return Err(Error::Precondition(format!(
                    "sample outside the open dual cone at row {i}"
                )));
            }
        }

        // det(M): rows i < k-1 are lambda^T Diag(1/<B_a,y>) B, last row y.
        let mut m_rows: Vec<Vec<Rat>> = Vec::with_capacity(k);
        for col in 0..k - 1 {
            let mut row = vec![Rat::zero(); k];
            for a in 0..size {
                let weight = lambda.at(a, col) / &pairings[a];
                for (j, slot) in row.iter_mut().enumerate() {
                    *slot += &weight * &gale.matrix().at(a, j).clone();
                }
            }
            m_rows.push(row);
        }
        m_rows.push(sample.clone());
        let det_m = RationalMatrix::from_rows(m_rows).det();

        // Factored side, with the product of pairings cleared.
        let y_sq: Rat = sample.iter().map(|y| y * y).sum();
        let h_pairing: Rat = (0..size).map(|a| &heights[a] * &pairings[a]).sum();
        let pa = form.eval(sample);
        let mut pairing_product = Rat::one();
        for p in &pairings {
            pairing_product *= p;
        }
        let rhs = pa * y_sq * h_pairing;
        let lhs = det_m * pairing_product;

        if rhs.is_zero() {
            if !lhs.is_zero() {
                return Ok(false);
            }
            continue;
        }
        any_nonzero = true;
        let ratio = lhs / rhs;
        match &ratio_seen {
            None => ratio_seen = Some(ratio),
            Some(seen) if *seen != ratio => return Ok(false),
            _ => {}
        }
    }
    if !any_nonzero {
        return Err(Error::Precondition(
            "factored side vanished at every sample".into(),
        ));
    }
    Ok(true)
}

/// Positive-solution bound for a critical system on a support of dimension
/// `n` and codimension `k`: `(e^2+3)/4 * 2^C(k-1,2) * (n+1)^{k-1}`, with
/// the exact rational prefactor of `e^2 + 3` recorded.
pub fn bound_bs_gale(n: usize, k: usize) -> crate::bounds::EBound {
    assert!(k >= 1, "codimension must be at least 1");
    let choose2 = |x: usize| if x >= 2 { x * (x - 1) / 2 } else { 0 };
    let mut coefficient = ratio(1, 4);
    for _ in 0..choose2(k - 1) {
        coefficient *= rat(2);
    }
    for _ in 0..k - 1 {
        coefficient *= rat(n as i64 + 1);
    }
    crate::bounds::EBound::e2_plus_3(coefficient)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::faces::enumerate_faces;

    fn fnr() -> PointConfig {
        PointConfig::from_ints(&[&[0, 0], &[1, 0], &[2, 0], &[0, 1], &[0, 2]]).unwrap()
    }

    fn full_face(cfg: &PointConfig) -> FaceRecord {
        enumerate_faces(cfg)
            .unwrap()
            .into_iter()
            .find(|f| f.indices.len() == cfg.len())
            .unwrap()
    }

    fn face_by_indices(cfg: &PointConfig, indices: &[usize]) -> FaceRecord {
        enumerate_faces(cfg)
            .unwrap()
            .into_iter()
            .find(|f| f.indices == indices)
            .unwrap()
    }

    #[test]
    fn h_compatibility_on_fnr() {
        let cfg = fnr();
        let bad = vec![rat(0), rat(0), rat(0), rat(0), rat(1)];
        let (ok, offender) = h_compatible(&cfg, &bad).unwrap();
        assert!(!ok);
        assert_eq!(offender, Some(vec![0, 1, 2]));

        let good = vec![rat(0), rat(1), rat(0), rat(0), rat(1)];
        let (ok, offender) = h_compatible(&cfg, &good).unwrap();
        assert!(ok);
        assert!(offender.is_none());

        let constant = vec![rat(7); 5];
        let (ok, _) = h_compatible(&cfg, &constant).unwrap();
        assert!(!ok);
    }

    #[test]
    fn coefficient_matrix_duality() {
        let cfg = fnr();
        let poly = SignedPolynomial::new(cfg, vec![rat(3), rat(-1), rat(2), rat(5), rat(-7)], None)
            .unwrap();
        let (c, d) = coefficient_matrix(&poly);
        assert!(c.mul(&d).is_zero());
        // all ones: D = B
        let ones = SignedPolynomial::new(fnr(), vec![rat(1); 5], None).unwrap();
        let (_, d1) = coefficient_matrix(&ones);
        assert_eq!(&d1, gale_dual(&fnr()).matrix());
    }

    #[test]
    fn scaled_circuit_dual_rows() {
        let cfg = PointConfig::from_ints(&[&[0], &[1], &[2]]).unwrap();
        let poly = SignedPolynomial::new(cfg, vec![rat(1), rat(-1), rat(1)], None).unwrap();
        let (_, d) = coefficient_matrix(&poly);
        // B = (1,-2,1); dividing by c gives (1,2,1).
        assert_eq!(d.col_vec(0), vec![rat(1), rat(2), rat(1)]);
    }

    #[test]
    fn codim1_exact_example() {
        let cfg = PointConfig::from_ints(&[&[0], &[1], &[2]]).unwrap();
        let poly = SignedPolynomial::new(
            cfg.clone(),
            vec![rat(1), rat(-1), rat(1)],
            Some(vec![rat(0), rat(1), rat(0)]),
        )
        .unwrap();
        let face = full_face(&cfg);
        let result = codim1_critical(&poly, &face).unwrap();
        assert_eq!(result.status, CriticalStatus::CriticalValues);
        let value = &result.t_values[0];
        assert_eq!(value.t_exact, Some(rat(2)));
        assert!(value.verified_exact);
        assert_eq!(value.residual, 0.0);
        assert!((value.witness[0] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn codim1_sign_filtered() {
        let cfg = PointConfig::from_ints(&[&[0], &[1], &[2]]).unwrap();
        let poly = SignedPolynomial::new(
            cfg.clone(),
            vec![rat(1), rat(1), rat(1)],
            Some(vec![rat(0), rat(1), rat(0)]),
        )
        .unwrap();
        let result = codim1_critical(&poly, &full_face(&cfg)).unwrap();
        assert_eq!(result.status, CriticalStatus::NoPositiveSolution);
    }

    #[test]
    fn codim1_irrational_value_bracketed() {
        // t = 4^(1/3): no exact rational, so a width-1e-12 bracket.
        let cfg = PointConfig::from_ints(&[&[0], &[1], &[2]]).unwrap();
        let poly = SignedPolynomial::new(
            cfg.clone(),
            vec![rat(1), rat(-1), rat(1)],
            Some(vec![rat(0), rat(2), rat(1)]),
        )
        .unwrap();
        let result = codim1_critical(&poly, &full_face(&cfg)).unwrap();
        let value = &result.t_values[0];
        assert!(value.t_exact.is_none());
        assert!(&value.power_high - &value.power_low <= ratio(1, 1_000_000_000_000));
        // 4^(1/3) lies inside the bracket: low^3 <= 4 <= high^3.
        let cube = |x: &Rat| x * x * x;
        assert!(cube(&value.power_low) <= rat(4) && rat(4) <= cube(&value.power_high));
        assert!((value.t_float - 4f64.powf(1.0 / 3.0)).abs() < 1e-9);
        assert!(value.residual < 1e-10);
    }

    #[test]
    fn codim1_double_root_at_one() {
        let cfg = PointConfig::from_ints(&[&[0], &[1], &[2]]).unwrap();
        let poly = SignedPolynomial::new(
            cfg.clone(),
            vec![rat(1), rat(-2), rat(1)],
            Some(vec![rat(0), rat(1), rat(0)]),
        )
        .unwrap();
        let result = codim1_critical(&poly, &full_face(&cfg)).unwrap();
        assert_eq!(result.t_values[0].t_exact, Some(rat(1)));
    }

    #[test]
    fn codim2_sign_excluded_on_fnr_all_positive() {
        let cfg = fnr();
        let poly = SignedPolynomial::new(
            cfg.clone(),
            vec![rat(1); 5],
            Some(vec![rat(0), rat(1), rat(0), rat(0), rat(1)]),
        )
        .unwrap();
        let result = codim2_critical(&poly, &full_face(&cfg)).unwrap();
        assert_eq!(result.status, CriticalStatus::SignExcluded);
    }

    #[test]
    fn codim2_recovers_horn_kapranov_point() {
        // Coefficients from the parametrization at x = (1,1): the critical
        // system has the solution (x, t) = (1, 1) for any valid heights.
        let cfg = fnr();
        let y = vec![ratio(2, 3), rat(-5)];
        let coeffs = crate::faces::horn_kapranov_sample(&cfg, &[rat(1), rat(1)], &y).unwrap();
        let heights = vec![rat(0), rat(1), rat(0), rat(0), rat(1)];
        let poly = SignedPolynomial::new(cfg.clone(), coeffs, Some(heights)).unwrap();
        let result = codim2_critical(&poly, &full_face(&cfg)).unwrap();
        assert_eq!(result.status, CriticalStatus::CriticalValues);
        assert!(
            result.t_values.iter().any(|v| v.brackets(&rat(1))),
            "no recovered value brackets t = 1: {result:?}"
        );
        for v in &result.t_values {
            assert!(v.residual < 1e-10, "residual too large: {}", v.residual);
        }
    }

    #[test]
    fn pyramid_face_excluded() {
        let cfg = PointConfig::from_ints(&[&[0, 0], &[1, 0], &[2, 0], &[0, 1], &[1, 1]]).unwrap();
        // Pick a pyramidal codim-1 face if present; otherwise full face of
        // a pyramid config.
        let pyr = PointConfig::from_ints(&[&[0, 0], &[1, 0], &[2, 0], &[0, 1]]).unwrap();
        assert_eq!(pyr.codim(), 1);
        let poly = SignedPolynomial::new(
            pyr.clone(),
            vec![rat(1), rat(-1), rat(1), rat(1)],
            Some(vec![rat(0), rat(1), rat(0), rat(0)]),
        )
        .unwrap();
        let result = codim1_critical(&poly, &full_face(&pyr)).unwrap();
        assert_eq!(result.status, CriticalStatus::PyramidExcluded);
        let _ = cfg;
    }

    #[test]
    fn half_space_filter_cases() {
        // codim-1 sign-compatible face is feasible
        let cfg = PointConfig::from_ints(&[&[0], &[1], &[2]]).unwrap();
        let poly = SignedPolynomial::new(cfg.clone(), vec![rat(1), rat(-1), rat(1)], None).unwrap();
        let report = half_space_filter(&poly, &full_face(&cfg)).unwrap();
        assert!(report.feasible());

        // all-positive coefficients on FNR: infeasible with a same-sign coface
        let fnr_poly = SignedPolynomial::new(fnr(), vec![rat(1); 5], None).unwrap();
        let report = half_space_filter(&fnr_poly, &full_face(&fnr())).unwrap();
        assert!(!report.feasible());
        assert!(report.monochromatic_coface.is_some());

        // a simplex face: no dual directions, infeasible
        let face = face_by_indices(&fnr(), &[2, 4]);
        let report = half_space_filter(&fnr_poly, &face).unwrap();
        assert!(!report.feasible());
    }

    #[test]
    fn signvar_definition() {
        assert_eq!(sign_variations(&[rat(1), rat(-2), rat(0), rat(3)]), 2);
        assert_eq!(sign_variations(&[rat(0), rat(0)]), 0);
        assert_eq!(sign_variations(&[rat(1), rat(1), rat(-1)]), 1);
    }

    #[test]
    fn jacobian_identity_on_fnr() {
        let cfg = fnr();
        let heights = vec![rat(0), rat(1), rat(0), rat(0), rat(1)];
        // Sign-compatible coefficients whose dual cone is open: from the
        // parametrization.
        let y0 = vec![ratio(2, 3), rat(-5)];
        let coeffs = crate::faces::horn_kapranov_sample(&cfg, &[rat(1), rat(1)], &y0).unwrap();
        let poly = SignedPolynomial::new(cfg, coeffs, Some(heights)).unwrap();
        // Samples near y0 stay inside the cone.
        let samples = vec![
            y0.clone(),
            vec![ratio(2, 3) + ratio(1, 100), rat(-5)],
            vec![ratio(2, 3), rat(-5) + ratio(1, 50)],
            vec![ratio(2, 3) - ratio(1, 200), rat(-5) - ratio(1, 30)],
        ];
        assert!(jacobian_identity_check(&poly, &samples).unwrap());
    }

    #[test]
    fn jacobian_vanishing_height_factor_forces_zero_determinant() {
        // Coefficients c_a = <B_a, y*> put y* = (1, 2) strictly inside the
        // dual cone, and the height pairing sum h . B . y* vanishes there,
        // so the determinant side must vanish too.
        let cfg = fnr();
        let heights = vec![rat(0), rat(1), rat(0), rat(0), rat(1)];
        let y_star = vec![rat(1), rat(2)];
        let gale = gale_dual(&cfg);
        let coeffs: Vec<Rat> = (0..cfg.len())
            .map(|i| crate::linalg::dot(gale.row(i), &y_star))
            .collect();
        let pairing_sum: Rat = (0..cfg.len())
            .map(|i| &heights[i] * crate::linalg::dot(gale.row(i), &y_star))
            .sum();
        assert!(pairing_sum.is_zero());
        let poly = SignedPolynomial::new(cfg, coeffs, Some(heights)).unwrap();
        let samples = vec![
            y_star,
            vec![rat(1), ratio(21, 10)],
            vec![ratio(11, 10), rat(2)],
        ];
        assert!(jacobian_identity_check(&poly, &samples).unwrap());
    }

    #[test]
    fn jacobian_rejects_outside_samples() {
        let cfg = fnr();
        let heights = vec![rat(0), rat(1), rat(0), rat(0), rat(1)];
        let y0 = vec![ratio(2, 3), rat(-5)];
        let coeffs = crate::faces::horn_kapranov_sample(&cfg, &[rat(1), rat(1)], &y0).unwrap();
        let poly = SignedPolynomial::new(cfg, coeffs, Some(heights)).unwrap();
        let err = jacobian_identity_check(&poly, &[vec![rat(0), rat(1)]]).unwrap_err();
        assert!(matches!(err, Error::Precondition(_)));
    }

    #[test]
    fn codim1_trichotomy_on_random_circuits() {
        // Sign compatibility, non-empty dual cone, and exactly one
        // critical value are one and the same condition.
        use rand::rngs::StdRng;
        use rand::{Rng, SeedableRng};
        let mut rng = StdRng::seed_from_u64(77);
        let mut tested = 0;
        while tested < 60 {
            let n = rng.gen_range(1..=2usize);
            let size = n + 2;
            let points: Vec<Vec<Rat>> = (0..size)
                .map(|_| (0..n).map(|_| rat(rng.gen_range(0..=4))).collect())
                .collect();
            let Ok(cfg) = PointConfig::new(points) else {
                continue;
            };
            if cfg.codim() != 1 {
                continue;
            }
            let report = crate::config::matroid_report(&cfg);
            if report.is_pyramid {
                continue;
            }
            let coeffs: Vec<Rat> = (0..size)
                .map(|_| {
                    let c = rng.gen_range(1..=5i64);
                    if rng.gen() {
                        rat(c)
                    } else {
                        rat(-c)
                    }
                })
                .collect();
            let heights: Vec<Rat> = (0..size).map(|_| rat(rng.gen_range(0..=6))).collect();
            let Ok(poly) =
                SignedPolynomial::new(cfg.clone(), coeffs.clone(), Some(heights.clone()))
            else {
                continue;
            };
            let face = enumerate_faces(&cfg)
                .unwrap()
                .into_iter()
                .find(|f| f.indices.len() == size)
                .unwrap();
            let compatible = crate::config::sign_compatible(&cfg, &coeffs).unwrap();
            let filter = half_space_filter(&poly, &face).unwrap();
            assert_eq!(compatible, filter.feasible());
            let result = match codim1_critical(&poly, &face) {
                Ok(r) => r,
                Err(Error::NotHCompatible(_)) => continue,
                Err(e) => panic!("{e}"),
            };
            if compatible {
                assert_eq!(result.status, CriticalStatus::CriticalValues);
                assert_eq!(result.t_values.len(), 1);
            } else {
                assert_eq!(result.status, CriticalStatus::NoPositiveSolution);
            }
            tested += 1;
        }
    }

    #[test]
    fn bs_gale_bound_values() {
        // n=2, k=2: 3 (e^2+3)/4 ~ 7.79
        let b = bound_bs_gale(2, 2);
        assert_eq!(b.coefficient, ratio(3, 4));
        assert!((b.to_f64() - 7.792).abs() < 0.01);
        // k=1 collapses to (e^2+3)/4
        let b1 = bound_bs_gale(17, 1);
        assert_eq!(b1.coefficient, ratio(1, 4));
        // n=1, k=3: 2 (e^2+3)
        let b3 = bound_bs_gale(1, 3);
        assert_eq!(b3.coefficient, rat(2));
        assert!((b3.to_f64() - 20.778).abs() < 0.01);
    }
}
