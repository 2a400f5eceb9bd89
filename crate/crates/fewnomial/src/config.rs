//! Point configurations, Gale duality, and the matroid layer: circuits,
//! pyramids, basis extraction, colinearity classes, cofaces, and monomial
//! (affine) coordinate changes.

use num_traits::{One, Signed, Zero};

use crate::linalg::{dot, rat, strict_cone_feasible, Rat, RationalMatrix};
use crate::{Error, Result};

/// An ordered configuration of distinct rational exponent vectors in
/// `R^n`, together with its exponent matrix (all-ones row prepended),
/// dimension `d` and codimension `k = |A| - d - 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointConfig {
    exponents: Vec<Vec<Rat>>,
    n: usize,
    d: usize,
    k: usize,
    matrix: RationalMatrix,
}

impl PointConfig {
    pub fn new(exponents: Vec<Vec<Rat>>) -> Result<Self> {
        if exponents.is_empty() {
            return Err(Error::EmptyConfiguration);
        }
        let n = exponents[0].len();
        for (i, e) in exponents.iter().enumerate() {
            if e.len() != n {
                return Err(Error::DimensionMismatch(format!(
                    "exponent {i} has {} coordinates, expected {n}",
                    e.len()
                )));
            }
        }
        for i in 0..exponents.len() {
            for j in i + 1..exponents.len() {
                if exponents[i] == exponents[j] {
                    return Err(Error::DuplicatePoints(i, j));
                }
            }
        }
        let matrix = exponent_matrix(&exponents, n);
        let d = matrix.rank() - 1;
        let k = exponents.len() - d - 1;
        Ok(PointConfig {
            exponents,
            n,
            d,
            k,
            matrix,
        })
    }

    /// Convenience constructor from integer coordinates.
    pub fn from_ints(points: &[&[i64]]) -> Result<Self> {
        PointConfig::new(
            points
                .iter()
                .map(|p| p.iter().map(|&x| rat(x)).collect())
                .collect(),
        )
    }

    pub fn len(&self) -> usize {
        self.exponents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exponents.is_empty()
    }

    /// Ambient variable count.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Dimension of the affine span.
    pub fn dim(&self) -> usize {
        self.d
    }

    /// Codimension `|A| - d - 1`.
    pub fn codim(&self) -> usize {
        self.k
    }

    pub fn exponents(&self) -> &[Vec<Rat>] {
        &self.exponents
    }

    pub fn point(&self, i: usize) -> &[Rat] {
        &self.exponents[i]
    }

    /// The `(n+1) x |A|` exponent matrix with the all-ones top row.
    pub fn exponent_matrix(&self) -> &RationalMatrix {
        &self.matrix
    }

    /// The exponent matrix without its all-ones row (the raw points as
    /// columns).
    pub fn hat_matrix(&self) -> RationalMatrix {
        let rows: Vec<Vec<Rat>> = (1..=self.n).map(|r| self.matrix.row_vec(r)).collect();
        if rows.is_empty() {
            RationalMatrix::zero(0, self.len())
        } else {
            RationalMatrix::from_rows(rows)
        }
    }

    /// The sub-configuration on the given indices (order preserved).
    pub fn restrict(&self, indices: &[usize]) -> Result<PointConfig> {
        PointConfig::new(indices.iter().map(|&i| self.exponents[i].clone()).collect())
    }
}

fn exponent_matrix(exponents: &[Vec<Rat>], n: usize) -> RationalMatrix {
    let mut rows = Vec::with_capacity(n + 1);
    rows.push(vec![Rat::one(); exponents.len()]);
    for coord in 0..n {
        rows.push(exponents.iter().map(|e| e[coord].clone()).collect());
    }
    RationalMatrix::from_rows(rows)
}

/// A canonical Gale dual: `|A| x k` matrix `B` with `A . B = 0` and
/// `rank(B) = k`, normalized as in [`RationalMatrix::kernel_basis`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GaleDual {
    b: RationalMatrix,
}

impl GaleDual {
    pub fn matrix(&self) -> &RationalMatrix {
        &self.b
    }

    pub fn row(&self, i: usize) -> &[Rat] {
        self.b.row(i)
    }

    pub fn row_vec(&self, i: usize) -> Vec<Rat> {
        self.b.row_vec(i)
    }

    pub fn rows(&self) -> usize {
        self.b.rows()
    }

    /// Number of Gale coordinates (the codimension).
    pub fn k(&self) -> usize {
        self.b.cols()
    }

    pub fn row_is_zero(&self, i: usize) -> bool {
        self.b.row(i).iter().all(|x| x.is_zero())
    }
}

/// Computes the canonical Gale dual of a configuration. A codimension-0
/// configuration yields the empty dual (zero columns), not an error.
pub fn gale_dual(cfg: &PointConfig) -> GaleDual {
    GaleDual {
        b: cfg.exponent_matrix().kernel_basis(),
    }
}

/// Matroid-level summary of a configuration.
#[derive(Debug, Clone)]
pub struct MatroidReport {
    /// All circuits (minimal affinely dependent subsets), sorted.
    pub circuits: Vec<Vec<usize>>,
    /// Whether some point's removal drops the affine dimension (codim-0
    /// configurations count as pyramids).
    pub is_pyramid: bool,
    /// Indices with nonzero Gale row: the basis A' over which A is a pyramid.
    pub basis_indices: Vec<usize>,
    /// Colinearity classes of the basis Gale rows, populated when the
    /// codimension is 2.
    pub sim_classes: Option<Vec<Vec<usize>>>,
    /// Smallest affine dimension over all circuits.
    pub min_circuit_dim: Option<usize>,
}

/// Brute-force matroid analysis with rank pruning: circuits are grown from
/// affinely independent subsets by one dependent point.
pub fn matroid_report(cfg: &PointConfig) -> MatroidReport {
    let gale = gale_dual(cfg);
    let circuits = enumerate_circuits(cfg);
    let basis_indices: Vec<usize> = if cfg.codim() == 0 {
        Vec::new()
    } else {
        (0..cfg.len()).filter(|&i| !gale.row_is_zero(i)).collect()
    };
    let is_pyramid = basis_indices.len() < cfg.len();
    let sim_classes = if cfg.codim() == 2 {
        Some(colinearity_classes(&gale, &basis_indices))
    } else {
        None
    };
    let min_circuit_dim = circuits.iter().map(|c| c.len() - 2).min();
    MatroidReport {
        circuits,
        is_pyramid,
        basis_indices,
        sim_classes,
        min_circuit_dim,
    }
}

/// A subset is a circuit iff its exponent matrix has a one-dimensional
/// kernel whose vector has full support.
pub fn is_circuit(cfg: &PointConfig, indices: &[usize]) -> bool {
    if indices.len() < 2 {
        return false;
    }
    let sub = cfg.exponent_matrix().select_columns(indices);
    let kernel = sub.kernel_basis();
    kernel.cols() == 1 && (0..kernel.rows()).all(|r| !kernel.at(r, 0).is_zero())
}

fn enumerate_circuits(cfg: &PointConfig) -> Vec<Vec<usize>> {
    let mut circuits = Vec::new();
    let mut stack = vec![(Vec::new(), 0usize)];
    while let Some((subset, next)) = stack.pop() {
        for i in next..cfg.len() {
            let mut cand = subset.clone();
            cand.push(i);
            let sub = cfg.exponent_matrix().select_columns(&cand);
            let rank = sub.rank();
            if rank == cand.len() {
                // Still affinely independent: keep growing.
                stack.push((cand, i + 1));
            } else if rank == cand.len() - 1 && is_circuit(cfg, &cand) {
                circuits.push(cand);
            }
        }
    }
    circuits.sort();
    circuits.dedup();
    circuits
}

fn colinearity_classes(gale: &GaleDual, basis: &[usize]) -> Vec<Vec<usize>> {
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for &i in basis {
        let row_i = gale.row(i);
        let found = classes.iter_mut().find(|class| {
            let rep = gale.row(class[0]);
            colinear2(rep, row_i)
        });
        match found {
            Some(class) => class.push(i),
            None => classes.push(vec![i]),
        }
    }
    classes
}

fn colinear2(a: &[Rat], b: &[Rat]) -> bool {
    debug_assert_eq!(a.len(), 2);
    (&a[0] * &b[1] - &a[1] * &b[0]).is_zero()
}

/// All nonempty cofaces: subsets `J` with `0` in the open positive cone of
/// the Gale rows `{B_a : a in J}`, decided by exact LP per candidate.
///
/// These are exactly the complements `A \ A_F` over the faces `F` of
/// `conv(A)` (the empty face included), which the face module cross-checks.
pub fn cofaces(cfg: &PointConfig) -> Vec<Vec<usize>> {
    let gale = gale_dual(cfg);
    if gale.k() == 0 {
        return Vec::new();
    }
    let m = cfg.len();
    let mut out = Vec::new();
    for mask in 1u64..(1u64 << m) {
        let subset: Vec<usize> = (0..m).filter(|&i| mask & (1 << i) != 0).collect();
        if coface_feasible(&gale, &subset) {
            out.push(subset);
        }
    }
    out.sort();
    out
}

/// Is `0` in `sum_{a in J} R_{>0} B_a`? Positive combinations of the rows
/// form the kernel constraint `B_J^T mu = 0, mu > 0`; substituting a kernel
/// basis of `B_J^T` turns this into strict cone feasibility.
fn coface_feasible(gale: &GaleDual, subset: &[usize]) -> bool {
    let rows: Vec<Vec<Rat>> = subset.iter().map(|&i| gale.row_vec(i)).collect();
    let bt = RationalMatrix::from_rows(rows).transpose();
    let kernel = bt.kernel_basis();
    if kernel.cols() == 0 {
        return false;
    }
    strict_cone_feasible(&kernel).is_some()
}

/// Sign compatibility at codimension 1: all `c_a lambda_a` share a strict
/// sign, for the unique affine relation `lambda`. A zero `lambda_a` (pyramid)
/// can never be sign compatible.
pub fn sign_compatible(cfg: &PointConfig, coeffs: &[Rat]) -> Result<bool> {
    if cfg.codim() != 1 {
        return Err(Error::WrongCodimension {
            expected: 1,
            actual: cfg.codim(),
        });
    }
    if coeffs.len() != cfg.len() {
        return Err(Error::DimensionMismatch(format!(
            "{} coefficients for {} points",
            coeffs.len(),
            cfg.len()
        )));
    }
    if let Some(i) = coeffs.iter().position(|c| c.is_zero()) {
        return Err(Error::ZeroCoefficient(i));
    }
    let gale = gale_dual(cfg);
    let lambda = gale.matrix().col_vec(0);
    let products: Vec<Rat> = (0..cfg.len()).map(|i| &lambda[i] * &coeffs[i]).collect();
    let all_pos = products.iter().all(|p| p.is_positive());
    let all_neg = products.iter().all(|p| p.is_negative());
    Ok(all_pos || all_neg)
}

/// Applies an invertible affine transformation, given as the
/// `(n+1) x (n+1)` matrix with first row `(1, 0, ..., 0)` acting on the
/// homogenized points `(1, a)`.
pub fn apply_affine_transform(cfg: &PointConfig, t: &RationalMatrix) -> Result<PointConfig> {
    let n = cfg.n();
    if t.rows() != n + 1 || t.cols() != n + 1 {
        return Err(Error::DimensionMismatch(format!(
            "transform is {}x{}, expected {}x{}",
            t.rows(),
            t.cols(),
            n + 1,
            n + 1
        )));
    }
    if t.det().is_zero() {
        return Err(Error::SingularTransform);
    }
    if t.row(0)[0] != Rat::one() || t.row(0)[1..].iter().any(|x| !x.is_zero()) {
        return Err(Error::Precondition(
            "affine transform must have first row (1, 0, ..., 0)".into(),
        ));
    }
    let transformed = t.mul(cfg.exponent_matrix());
    let points: Vec<Vec<Rat>> = (0..cfg.len())
        .map(|i| (1..=n).map(|r| transformed.at(r, i).clone()).collect())
        .collect();
    PointConfig::new(points)
}

/// Projects a configuration onto exact coordinates of its affine span: the
/// result lives in `R^d`, has the same affine dependencies (hence the same
/// Gale dual after canonicalization), and the map extends to an affine map
/// on all of `R^n`.
pub fn reduce_to_affine_span(cfg: &PointConfig) -> (PointConfig, AffineChart) {
    let d = cfg.dim();
    let n = cfg.n();
    // Greedy affine basis: base point plus d points with independent offsets.
    let base = cfg.point(0).to_vec();
    let mut basis_offsets: Vec<Vec<Rat>> = Vec::new();
    for i in 1..cfg.len() {
        if basis_offsets.len() == d {
            break;
        }
        let offset: Vec<Rat> = (0..n).map(|j| &cfg.point(i)[j] - &base[j]).collect();
        let mut rows = basis_offsets.clone();
        rows.push(offset.clone());
        if RationalMatrix::from_rows(rows.clone()).rank() == rows.len() {
            basis_offsets.push(offset);
        }
    }
    debug_assert_eq!(basis_offsets.len(), d);

    if d == 0 {
        let reduced = PointConfig::new(vec![Vec::new()]).expect("single point");
        return (
            reduced,
            AffineChart {
                base,
                s: RationalMatrix::zero(0, n),
            },
        );
    }

    // s = (W^T W)^{-1} W^T with W the offsets as columns; s w_j = e_j, so
    // points of the span get their affine coordinates, and the formula is an
    // affine map on all of R^n.
    let w = RationalMatrix::from_rows(basis_offsets).transpose(); // n x d
    let wt = w.transpose();
    let gram = wt.mul(&w); // d x d, invertible
    let gram_inv = invert(&gram).expect("Gram matrix of independent columns");
    let s = gram_inv.mul(&wt); // d x n

    let points: Vec<Vec<Rat>> = cfg
        .exponents()
        .iter()
        .map(|p| {
            let offset: Vec<Rat> = (0..n).map(|j| &p[j] - &base[j]).collect();
            s.mul_vec(&offset)
        })
        .collect();
    let reduced = PointConfig::new(points).expect("span reduction preserves distinctness");
    debug_assert_eq!(reduced.dim(), d);
    (reduced, AffineChart { base, s })
}

/// The affine chart `t(x) = s (x - base)` realizing a span reduction.
#[derive(Debug, Clone)]
pub struct AffineChart {
    pub base: Vec<Rat>,
    pub s: RationalMatrix,
}

impl AffineChart {
    /// Pulls back an affine functional `l'(t) = c0 + <c, t>` on span
    /// coordinates to the ambient space.
    pub fn pull_back_functional(&self, c0: &Rat, c: &[Rat]) -> (Rat, Vec<Rat>) {
        let n = self.s.cols();
        let coeffs: Vec<Rat> = (0..n)
            .map(|j| {
                let mut acc = Rat::zero();
                for (i, ci) in c.iter().enumerate() {
                    acc += ci * self.s.at(i, j);
                }
                acc
            })
            .collect();
        let constant = c0 - dot(&coeffs, &self.base);
        (constant, coeffs)
    }
}

/// Exact inverse of a square matrix, or `None` if singular.
pub fn invert(m: &RationalMatrix) -> Option<RationalMatrix> {
    let n = m.rows();
    assert_eq!(n, m.cols());
    let mut aug = RationalMatrix::zero(n, 2 * n);
    for r in 0..n {
        for c in 0..n {
            *aug.at_mut(r, c) = m.at(r, c).clone();
        }
        *aug.at_mut(r, n + r) = Rat::one();
    }
    let (rref, pivots) = aug.rref();
    if pivots.len() < n || pivots[n - 1] >= n {
        return None;
    }
    let mut inv = RationalMatrix::zero(n, n);
    for r in 0..n {
        for c in 0..n {
            *inv.at_mut(r, c) = rref.at(r, n + c).clone();
        }
    }
    Some(inv)
}

/// A polynomial with signed rational coefficients on a configuration, and
/// optionally a lifting height per point (the one-parameter Viro family).
#[derive(Debug, Clone)]
pub struct SignedPolynomial {
    pub cfg: PointConfig,
    pub coeffs: Vec<Rat>,
    pub heights: Option<Vec<Rat>>,
}

impl SignedPolynomial {
    pub fn new(cfg: PointConfig, coeffs: Vec<Rat>, heights: Option<Vec<Rat>>) -> Result<Self> {
        if coeffs.len() != cfg.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} coefficients for {} points",
                coeffs.len(),
                cfg.len()
            )));
        }
        if let Some(i) = coeffs.iter().position(|c| c.is_zero()) {
            return Err(Error::ZeroCoefficient(i));
        }
        if let Some(h) = &heights {
            if h.len() != cfg.len() {
                return Err(Error::DimensionMismatch(format!(
                    "{} heights for {} points",
                    h.len(),
                    cfg.len()
                )));
            }
        }
        Ok(SignedPolynomial {
            cfg,
            coeffs,
            heights,
        })
    }

    /// Signs of the coefficients, `true` for positive.
    pub fn signs(&self) -> Vec<bool> {
        self.coeffs.iter().map(|c| c.is_positive()).collect()
    }

    /// The sub-polynomial supported on a face.
    pub fn restrict(&self, indices: &[usize]) -> Result<SignedPolynomial> {
        let cfg = self.cfg.restrict(indices)?;
        let coeffs = indices.iter().map(|&i| self.coeffs[i].clone()).collect();
        let heights = self
            .heights
            .as_ref()
            .map(|h| indices.iter().map(|&i| h[i].clone()).collect());
        SignedPolynomial::new(cfg, coeffs, heights)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::ratio;

    pub fn fnr_config() -> PointConfig {
        PointConfig::from_ints(&[&[0, 0], &[1, 0], &[2, 0], &[0, 1], &[0, 2]]).unwrap()
    }

    #[test]
    fn simplex_codim_zero() {
        let cfg = PointConfig::from_ints(&[&[0, 0], &[1, 0], &[0, 1]]).unwrap();
        assert_eq!(cfg.dim(), 2);
        assert_eq!(cfg.codim(), 0);
    }

    #[test]
    fn fnr_dims() {
        let cfg = fnr_config();
        assert_eq!(cfg.dim(), 2);
        assert_eq!(cfg.codim(), 2);
    }

    #[test]
    fn sharpness_support_dims() {
        let cfg = PointConfig::from_ints(&[&[0, 0], &[4, 0], &[1, 2], &[3, 2], &[2, 3]]).unwrap();
        assert_eq!(cfg.dim(), 2);
        assert_eq!(cfg.codim(), 2);
    }

    #[test]
    fn duplicates_rejected_with_pair() {
        let err = PointConfig::from_ints(&[&[0, 0], &[1, 1], &[0, 0]]).unwrap_err();
        assert!(matches!(err, Error::DuplicatePoints(0, 2)));
    }

    #[test]
    fn univariate_circuit_dual() {
        let cfg = PointConfig::from_ints(&[&[0], &[1], &[2]]).unwrap();
        let gale = gale_dual(&cfg);
        assert_eq!(gale.k(), 1);
        let col = gale.matrix().col_vec(0);
        let s = col[0].clone();
        assert_eq!(&col[1] / &s, rat(-2));
        assert_eq!(&col[2] / &s, rat(1));
    }

    #[test]
    fn fnr_gale_rows() {
        let gale = gale_dual(&fnr_config());
        let expected: Vec<Vec<Rat>> = vec![
            vec![rat(1), rat(1)],
            vec![rat(-2), rat(0)],
            vec![rat(1), rat(0)],
            vec![rat(0), rat(-2)],
            vec![rat(0), rat(1)],
        ];
        for (i, row) in expected.iter().enumerate() {
            assert_eq!(gale.row_vec(i), *row);
        }
        assert!(fnr_config().exponent_matrix().mul(gale.matrix()).is_zero());
    }

    #[test]
    fn simplex_has_empty_dual() {
        let cfg = PointConfig::from_ints(&[&[0, 0], &[1, 0], &[0, 1]]).unwrap();
        assert_eq!(gale_dual(&cfg).k(), 0);
    }

    #[test]
    fn fnr_circuits() {
        let report = matroid_report(&fnr_config());
        assert_eq!(
            report.circuits,
            vec![vec![0, 1, 2], vec![0, 3, 4], vec![1, 2, 3, 4]]
        );
        assert!(!report.is_pyramid);
        assert_eq!(report.basis_indices, vec![0, 1, 2, 3, 4]);
        assert_eq!(report.min_circuit_dim, Some(1));
    }

    #[test]
    fn pyramid_detected_by_zero_gale_row() {
        let cfg = PointConfig::from_ints(&[&[0, 0], &[1, 0], &[2, 0], &[0, 1]]).unwrap();
        let report = matroid_report(&cfg);
        assert_eq!(report.circuits, vec![vec![0, 1, 2]]);
        assert!(report.is_pyramid);
        assert_eq!(report.basis_indices, vec![0, 1, 2]);
    }

    #[test]
    fn sharpness_support_matroid() {
        let cfg = PointConfig::from_ints(&[&[0, 0], &[4, 0], &[1, 2], &[3, 2], &[2, 3]]).unwrap();
        let report = matroid_report(&cfg);
        assert!(!report.is_pyramid);
        assert_eq!(report.min_circuit_dim, Some(2));
    }

    #[test]
    fn circuit_cofaces() {
        let cfg = PointConfig::from_ints(&[&[0], &[1], &[2]]).unwrap();
        assert_eq!(cofaces(&cfg), vec![vec![0, 1], vec![0, 1, 2], vec![1, 2]]);
    }

    #[test]
    fn simplex_has_no_cofaces() {
        let cfg = PointConfig::from_ints(&[&[0, 0], &[1, 0], &[0, 1]]).unwrap();
        assert!(cofaces(&cfg).is_empty());
    }

    #[test]
    fn sign_compatibility_cases() {
        let cfg = PointConfig::from_ints(&[&[0], &[1], &[2]]).unwrap();
        assert!(sign_compatible(&cfg, &[rat(1), rat(-1), rat(1)]).unwrap());
        assert!(!sign_compatible(&cfg, &[rat(1), rat(1), rat(1)]).unwrap());
        // codim-1 pyramid: zero entry in the relation breaks strict signs
        let pyr = PointConfig::from_ints(&[&[0, 0], &[1, 0], &[2, 0], &[0, 1]]).unwrap();
        assert_eq!(pyr.codim(), 1);
        assert!(!sign_compatible(&pyr, &[rat(1), rat(-1), rat(1), rat(5)]).unwrap());
    }

    #[test]
    fn sign_compatible_rejects_codim2() {
        let err =
            sign_compatible(&fnr_config(), &[rat(1), rat(1), rat(1), rat(1), rat(1)]).unwrap_err();
        assert!(matches!(
            err,
            Error::WrongCodimension {
                expected: 1,
                actual: 2
            }
        ));
    }

    #[test]
    fn identity_transform_is_noop() {
        let cfg = fnr_config();
        let id = RationalMatrix::identity(3);
        assert_eq!(apply_affine_transform(&cfg, &id).unwrap(), cfg);
    }

    #[test]
    fn shear_preserves_matroid() {
        let cfg = fnr_config();
        // Shear (x, y) -> (x + 3y, y).
        let t = RationalMatrix::from_rows(vec![
            vec![rat(1), rat(0), rat(0)],
            vec![rat(0), rat(1), rat(3)],
            vec![rat(0), rat(0), rat(1)],
        ]);
        let sheared = apply_affine_transform(&cfg, &t).unwrap();
        assert_eq!(sheared.dim(), cfg.dim());
        assert_eq!(sheared.codim(), cfg.codim());
        let a = matroid_report(&cfg);
        let b = matroid_report(&sheared);
        assert_eq!(a.circuits, b.circuits);
        assert_eq!(a.is_pyramid, b.is_pyramid);
    }

    #[test]
    fn singular_transform_rejected() {
        let cfg = fnr_config();
        let t = RationalMatrix::from_rows(vec![
            vec![rat(1), rat(0), rat(0)],
            vec![rat(0), rat(1), rat(1)],
            vec![rat(0), rat(1), rat(1)],
        ]);
        assert!(matches!(
            apply_affine_transform(&cfg, &t),
            Err(Error::SingularTransform)
        ));
    }

    #[test]
    fn span_reduction_preserves_gale_dual() {
        // A 1-dimensional configuration embedded in R^3.
        let cfg = PointConfig::new(vec![
            vec![rat(1), rat(1), rat(0)],
            vec![rat(2), rat(3), rat(1)],
            vec![rat(3), rat(5), rat(2)],
            vec![ratio(5, 2), rat(4), ratio(3, 2)],
        ])
        .unwrap();
        assert_eq!(cfg.dim(), 1);
        let (reduced, _) = reduce_to_affine_span(&cfg);
        assert_eq!(reduced.n(), 1);
        assert_eq!(reduced.dim(), 1);
        assert_eq!(gale_dual(&cfg).matrix(), gale_dual(&reduced).matrix());
    }

    #[test]
    fn circuits_are_class_complements_at_codim2() {
        // At codimension 2 a subset is a circuit exactly when its
        // complement is a colinearity class of the Gale rows.
        use rand::rngs::StdRng;
        use rand::{Rng, SeedableRng};
        let mut rng = StdRng::seed_from_u64(31);
        let mut tested = 0;
        while tested < 40 {
            let n = rng.gen_range(1..=3);
            let size = n + 3;
            let points: Vec<Vec<Rat>> = (0..size)
                .map(|_| (0..n).map(|_| rat(rng.gen_range(0..=5))).collect())
                .collect();
            let Ok(cfg) = PointConfig::new(points) else {
                continue;
            };
            if cfg.codim() != 2 {
                continue;
            }
            let report = matroid_report(&cfg);
            if report.is_pyramid {
                continue;
            }
            let classes = report.sim_classes.as_ref().unwrap();
            let mut complements: Vec<Vec<usize>> = classes
                .iter()
                .map(|class| (0..cfg.len()).filter(|i| !class.contains(i)).collect())
                .collect();
            complements.sort();
            assert_eq!(report.circuits, complements);

            // Number-of-circuits bound: N + |A/~| <= d + 3 with N the
            // count of classes of size at least 2.
            let n_big = classes.iter().filter(|c| c.len() >= 2).count();
            assert!(n_big + classes.len() <= cfg.dim() + 3);
            tested += 1;
        }
    }

    #[test]
    fn affine_transform_preserves_cofaces() {
        let cfg = fnr_config();
        let t = RationalMatrix::from_rows(vec![
            vec![rat(1), rat(0), rat(0)],
            vec![rat(3), rat(2), rat(1)],
            vec![rat(-1), rat(0), rat(1)],
        ]);
        let moved = apply_affine_transform(&cfg, &t).unwrap();
        assert_eq!(cofaces(&cfg), cofaces(&moved));
    }

    #[test]
    fn codim_monotone_under_subsets_with_pyramid_equality() {
        // codim(S) <= codim(A) for S subset of A, equality iff A is a
        // pyramid over S (zero Gale rows off S).
        let configs = [
            fnr_config(),
            PointConfig::from_ints(&[&[0, 0], &[1, 0], &[2, 0], &[0, 1]]).unwrap(),
            PointConfig::from_ints(&[&[0], &[1], &[2], &[5]]).unwrap(),
        ];
        for cfg in &configs {
            let gale = gale_dual(cfg);
            let m = cfg.len();
            for mask in 1u64..(1u64 << m) - 1 {
                let subset: Vec<usize> = (0..m).filter(|&i| mask & (1 << i) != 0).collect();
                let sub = cfg.exponent_matrix().select_columns(&subset);
                let sub_codim = subset.len() - sub.rank();
                assert!(sub_codim <= cfg.codim());
                if cfg.codim() > 0 {
                    let pyramid_over = (0..m)
                        .filter(|i| !subset.contains(i))
                        .all(|i| gale.row_is_zero(i));
                    assert_eq!(sub_codim == cfg.codim(), pyramid_over, "subset {subset:?}");
                }
            }
        }
    }
}
