//! Face lattice of `conv(A)`, defectiveness via the cuspidal form,
//! non-defective face counting against the closed-form bound, and the
//! generators for Lawrence configurations and on-discriminant samples.

use std::collections::BTreeSet;

use num_traits::{One, Signed, Zero};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::config::{gale_dual, reduce_to_affine_span, PointConfig};
use crate::linalg::{binomial, combinations, dot, rat, rat_pow, Rat, RationalMatrix};
use crate::{Error, Result};

/// Default cap on configuration size for face enumeration.
pub const FACE_SCALE_BOUND: usize = 16;

/// A face of `conv(A)` as an index subset with a certifying functional.
#[derive(Debug, Clone)]
pub struct FaceRecord {
    /// Indices of `A` on the face, sorted.
    pub indices: Vec<usize>,
    /// Dimension of the face.
    pub dim: usize,
    /// Codimension of the sub-configuration `A_F`.
    pub codim: usize,
    /// Affine functional `(c0, c)` on the ambient space with
    /// `c0 + <c, a> = 0` exactly on the face and `> 0` off it
    /// (identically zero for the full face).
    pub support_functional: (Rat, Vec<Rat>),
    pub is_simplex: bool,
    pub is_pyramid: bool,
    pub is_circuit: bool,
    pub is_defective: bool,
}

impl FaceRecord {
    /// Is this the whole configuration?
    pub fn is_full(&self, cfg: &PointConfig) -> bool {
        self.indices.len() == cfg.len()
    }
}

/// Enumerates every face of `conv(A)` (the full face included, the empty
/// face excluded) by spanned-hyperplane search followed by closure under
/// intersection. Each face carries an exact supporting functional.
pub fn enumerate_faces(cfg: &PointConfig) -> Result<Vec<FaceRecord>> {
    if cfg.len() > FACE_SCALE_BOUND {
        return Err(Error::ScaleBound {
            size: cfg.len(),
            bound: FACE_SCALE_BOUND,
        });
    }
    let (reduced, chart) = reduce_to_affine_span(cfg);
    let d = reduced.dim();
    let m = cfg.len();

    // Facets: affine hyperplanes of the span spanned by point subsets and
    // supporting the configuration on one side.
    let mut facet_sets: Vec<BTreeSet<usize>> = Vec::new();
    let mut facet_functionals: Vec<(Rat, Vec<Rat>)> = Vec::new();
    if d >= 1 {
        for subset in combinations(m, d) {
            // Functional vanishing on the subset: kernel of rows (1, t_i).
            let rows: Vec<Vec<Rat>> = subset
                .iter()
                .map(|&i| {
                    let mut row = vec![Rat::one()];
                    row.extend(reduced.point(i).iter().cloned());
                    row
                })
                .collect();
            let kernel = RationalMatrix::from_rows(rows).kernel_basis();
            if kernel.cols() != 1 {
                continue; // subset does not span a hyperplane
            }
            let func = kernel.col_vec(0);
            let eval = |i: usize| -> Rat {
                let mut acc = func[0].clone();
                for (j, t) in reduced.point(i).iter().enumerate() {
                    acc += &func[j + 1] * t;
                }
                acc
            };
            let values: Vec<Rat> = (0..m).map(eval).collect();
            let has_pos = values.iter().any(|v| v.is_positive());
            let has_neg = values.iter().any(|v| v.is_negative());
            let sign = match (has_pos, has_neg) {
                (true, false) => Rat::one(),
                (false, true) => -Rat::one(),
                _ => continue, // not supporting (or the whole span)
            };
            let facet: BTreeSet<usize> = (0..m).filter(|&i| values[i].is_zero()).collect();
            if facet_sets.contains(&facet) {
                continue;
            }
            let signed: Vec<Rat> = func.iter().map(|v| v * &sign).collect();
            facet_sets.push(facet);
            facet_functionals.push((signed[0].clone(), signed[1..].to_vec()));
        }
    }

    // Close the facet sets under intersection; every proper face is an
    // intersection of the facets containing it.
    let mut all_sets: BTreeSet<BTreeSet<usize>> = facet_sets.iter().cloned().collect();
    loop {
        let mut added = false;
        let current: Vec<BTreeSet<usize>> = all_sets.iter().cloned().collect();
        for i in 0..current.len() {
            for j in i + 1..current.len() {
                let inter: BTreeSet<usize> =
                    current[i].intersection(&current[j]).cloned().collect();
                if !inter.is_empty() && all_sets.insert(inter) {
                    added = true;
                }
            }
        }
        if !added {
            break;
        }
    }
    all_sets.insert((0..m).collect()); // the full face

    let mut records = Vec::new();
    for set in &all_sets {
        let indices: Vec<usize> = set.iter().cloned().collect();
        // Sum of the functionals of all facets containing the face vanishes
        // exactly on it and is positive off it.
        let mut c0 = Rat::zero();
        let mut c = vec![Rat::zero(); d];
        if indices.len() < m {
            for (fi, fset) in facet_sets.iter().enumerate() {
                if set.is_subset(fset) {
                    let (f0, fc) = &facet_functionals[fi];
                    c0 += f0;
                    for (a, b) in c.iter_mut().zip(fc) {
                        *a += b;
                    }
                }
            }
        }
        let (amb0, amb) = chart.pull_back_functional(&c0, &c);
        records.push(build_record(cfg, indices, (amb0, amb))?);
    }
    records.sort_by(|a, b| (a.dim, &a.indices).cmp(&(b.dim, &b.indices)));
    Ok(records)
}

fn build_record(
    cfg: &PointConfig,
    indices: Vec<usize>,
    support_functional: (Rat, Vec<Rat>),
) -> Result<FaceRecord> {
    let sub = cfg.restrict(&indices)?;
    let dim = sub.dim();
    let codim = sub.codim();
    let gale = gale_dual(&sub);
    let is_pyramid = codim == 0 || (0..sub.len()).any(|i| gale.row_is_zero(i));
    let is_circuit = crate::config::is_circuit(&sub, &(0..sub.len()).collect::<Vec<_>>());
    let is_defective = is_defective(&sub);
    Ok(FaceRecord {
        indices,
        dim,
        codim,
        support_functional,
        is_simplex: codim == 0,
        is_pyramid,
        is_circuit,
        is_defective,
    })
}

/// The cuspidal form as an expanded polynomial in `k` Gale coordinates.
#[derive(Debug, Clone)]
pub struct CuspidalForm {
    /// Number of variables (the codimension).
    pub variables: usize,
    /// Exponent multi-index to coefficient, zero coefficients omitted.
    pub terms: std::collections::BTreeMap<Vec<u32>, Rat>,
}

impl CuspidalForm {
    pub fn is_identically_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn eval(&self, y: &[Rat]) -> Rat {
        let mut acc = Rat::zero();
        for (expo, coef) in &self.terms {
            let mut term = coef.clone();
            for (e, v) in expo.iter().zip(y) {
                for _ in 0..*e {
                    term *= v;
                }
            }
            acc += term;
        }
        acc
    }
}

/// Expands `sum_{|sigma|=d} det(Ahat^sigma)^2 prod_{l in sigma} <B_l, y>`
/// for a configuration already reduced to its affine span.
pub fn cuspidal_form(cfg: &PointConfig) -> Result<CuspidalForm> {
    if cfg.dim() != cfg.n() {
        return Err(Error::Precondition(
            "cuspidal form needs a configuration reduced to its affine span".into(),
        ));
    }
    let d = cfg.dim();
    let k = cfg.codim();
    let gale = gale_dual(cfg);
    let hat = cfg.hat_matrix();
    let mut terms: std::collections::BTreeMap<Vec<u32>, Rat> = Default::default();
    for sigma in combinations(cfg.len(), d) {
        let det = hat.select_columns(&sigma).det();
        if det.is_zero() {
            continue;
        }
        // Multiply out det^2 * prod of the linear Gale forms.
        let mut partial: std::collections::BTreeMap<Vec<u32>, Rat> = Default::default();
        partial.insert(vec![0; k], &det * &det);
        for &l in &sigma {
            let row = gale.row(l);
            let mut next: std::collections::BTreeMap<Vec<u32>, Rat> = Default::default();
            for (expo, coef) in &partial {
                for (var, b) in row.iter().enumerate() {
                    if b.is_zero() {
                        continue;
                    }
                    let mut e = expo.clone();
                    e[var] += 1;
                    let entry = next.entry(e).or_insert_with(Rat::zero);
                    *entry += coef * b;
                }
            }
            partial = next;
        }
        for (expo, coef) in partial {
            let entry = terms.entry(expo).or_insert_with(Rat::zero);
            *entry += coef;
        }
    }
    terms.retain(|_, c| !c.is_zero());
    Ok(CuspidalForm {
        variables: k,
        terms,
    })
}

/// Defectiveness test: the cuspidal form vanishes identically.
///
/// Decided deterministically by evaluating the (degree at most `d`) form on
/// the grid `{0,...,d}^k`; works on any configuration by reducing to the
/// affine span first. Pyramids are defective outright.
pub fn is_defective(cfg: &PointConfig) -> bool {
    let k = cfg.codim();
    if k == 0 {
        // Simplices (and the single point) are defective: the discriminant
        // locus is empty.
        return true;
    }
    let gale = gale_dual(cfg);
    if (0..cfg.len()).any(|i| gale.row_is_zero(i)) {
        return true;
    }
    let (reduced, _) = reduce_to_affine_span(cfg);
    let d = reduced.dim();
    let hat = reduced.hat_matrix();
    let rgale = gale_dual(&reduced);
    // Precompute the nonzero squared minors once.
    let mut minors: Vec<(Vec<usize>, Rat)> = Vec::new();
    for sigma in combinations(reduced.len(), d) {
        let det = hat.select_columns(&sigma).det();
        if !det.is_zero() {
            minors.push((sigma, &det * &det));
        }
    }
    if minors.is_empty() {
        return true;
    }
    // Evaluate on the grid; a polynomial of degree <= d vanishing on
    // {0..d}^k is identically zero.
    let mut grid_point = vec![0usize; k];
    loop {
        let y: Vec<Rat> = grid_point.iter().map(|&g| rat(g as i64)).collect();
        let mut acc = Rat::zero();
        for (sigma, det2) in &minors {
            let mut prod = det2.clone();
            for &l in sigma {
                prod *= dot(rgale.row(l), &y);
            }
            acc += prod;
        }
        if !acc.is_zero() {
            return false;
        }
        // next grid point
        let mut carry = true;
        for slot in grid_point.iter_mut() {
            if *slot < d {
                *slot += 1;
                carry = false;
                break;
            }
            *slot = 0;
        }
        if carry {
            return true;
        }
    }
}

/// Per-codimension counts of non-defective faces with the closed-form
/// comparison bounds.
#[derive(Debug, Clone)]
pub struct NonDefectiveCount {
    /// `(codim, count, bound, within_bound)` for codimensions `1..=k`.
    pub by_codim: Vec<(usize, usize, Rat, bool)>,
    pub total: usize,
    pub total_bound: Rat,
    pub total_within_bound: bool,
}

/// Counts non-defective faces per codimension and compares each count with
/// `C(d+k+1, k-l) / (k-l+1)`, and the total with the summed bound.
pub fn count_non_defective_faces(cfg: &PointConfig) -> Result<NonDefectiveCount> {
    let faces = enumerate_faces(cfg)?;
    let d = cfg.dim();
    let k = cfg.codim();
    let size = rat((d + k + 1) as i64);
    let _ = size;
    let mut by_codim = Vec::new();
    let mut total = 0usize;
    for ell in 1..=k {
        let count = faces
            .iter()
            .filter(|f| f.codim == ell && !f.is_defective)
            .count();
        let bound = binomial(d + k + 1, k - ell) / rat((k - ell + 1) as i64);
        let ok = rat(count as i64) <= bound;
        by_codim.push((ell, count, bound, ok));
        total += count;
    }
    let mut total_bound = Rat::zero();
    for j in 0..k {
        total_bound += binomial(d + k + 1, j) / rat((j + 1) as i64);
    }
    let total_within_bound = rat(total as i64) <= total_bound;
    Ok(NonDefectiveCount {
        by_codim,
        total,
        total_bound,
        total_within_bound,
    })
}

/// A generated Lawrence configuration together with its base and the
/// circuit-faces it certifies.
#[derive(Debug, Clone)]
pub struct LawrenceInstance {
    /// The Lawrence configuration: `2(m+k+1)` points in `R^{2m+k+1}`.
    pub config: PointConfig,
    /// The base: `m+k+1` random points of `R^m` in general position.
    pub base: PointConfig,
    /// For each circuit `I` of the base, the face `{v_i, u_i : i in I}` of
    /// the Lawrence configuration, as sorted index sets.
    pub circuit_faces: Vec<Vec<usize>>,
}

const LAWRENCE_ATTEMPTS: usize = 32;

/// Builds a Lawrence configuration over a seeded random base in general
/// position (every `m+1` base points affinely independent, verified).
/// Column order: the lifted base points first, then their twins.
pub fn lawrence_config(m: usize, k: usize, seed: u64) -> Result<LawrenceInstance> {
    lawrence_config_with_range(m, k, seed, 1 << 16)
}

/// Range-parametrized variant; small ranges exercise the retry/error path.
pub fn lawrence_config_with_range(
    m: usize,
    k: usize,
    seed: u64,
    coord_range: i64,
) -> Result<LawrenceInstance> {
    if m < 1 || k < 1 {
        return Err(Error::Precondition(
            "lawrence_config needs m, k >= 1".into(),
        ));
    }
    let mut rng = StdRng::seed_from_u64(seed);
    let count = m + k + 1;
    for _ in 0..LAWRENCE_ATTEMPTS {
        let points: Vec<Vec<Rat>> = (0..count)
            .map(|_| (0..m).map(|_| rat(rng.gen_range(0..coord_range))).collect())
            .collect();
        let Ok(base) = PointConfig::new(points) else {
            continue;
        };
        if !general_position(&base, m) {
            continue;
        }
        return assemble_lawrence(base, m, k);
    }
    Err(Error::DegenerateDraw(LAWRENCE_ATTEMPTS))
}

/// Every subset of `m+1` points must be affinely independent, which makes
/// the base circuits exactly the `(m+2)`-subsets.
fn general_position(base: &PointConfig, m: usize) -> bool {
    if base.dim() != m {
        return false;
    }
    for subset in combinations(base.len(), (m + 1).min(base.len())) {
        let sub = base.exponent_matrix().select_columns(&subset);
        if sub.rank() != subset.len() {
            return false;
        }
    }
    true
}

fn assemble_lawrence(base: PointConfig, m: usize, k: usize) -> Result<LawrenceInstance> {
    let count = m + k + 1;
    // Coordinate rows of the block matrix [A 0; I I] with A the base
    // exponent matrix (ones row included): the raw base points, the
    // first-block indicator row, and the identity blocks with their last
    // row dropped. The dropped row and the global ones row span the same
    // space, so the configuration keeps the block matrix's dependencies.
    let n = 2 * m + k + 1;
    let mut points: Vec<Vec<Rat>> = Vec::with_capacity(2 * count);
    for i in 0..count {
        let mut p = vec![Rat::zero(); n];
        p[..m].clone_from_slice(base.point(i));
        p[m] = Rat::one(); // indicator of the first block
        if i < count - 1 {
            p[m + 1 + i] = Rat::one();
        }
        points.push(p);
    }
    for i in 0..count {
        let mut p = vec![Rat::zero(); n];
        if i < count - 1 {
            p[m + 1 + i] = Rat::one();
        }
        points.push(p);
    }
    let config = PointConfig::new(points)?;
    if config.dim() != n || config.codim() != k {
        return Err(Error::Internal(format!(
            "Lawrence configuration has dim {} codim {}, expected {} and {}",
            config.dim(),
            config.codim(),
            n,
            k
        )));
    }
    // Base circuits are all (m+2)-subsets in general position.
    let mut circuit_faces = Vec::new();
    for circuit in combinations(count, m + 2) {
        let mut face: Vec<usize> = circuit.to_vec();
        face.extend(circuit.iter().map(|&i| count + i));
        face.sort_unstable();
        circuit_faces.push(face);
    }
    Ok(LawrenceInstance {
        config,
        base,
        circuit_faces,
    })
}

/// One point of the discriminant parametrization: coefficients
/// `c_a = x^{-a} <B_a, y>` for a positive rational `x` and a `y` off the
/// Gale hyperplane arrangement. The produced polynomial is singular at `x`.
pub fn horn_kapranov_sample(cfg: &PointConfig, x: &[Rat], y: &[Rat]) -> Result<Vec<Rat>> {
    if cfg.dim() != cfg.n() {
        return Err(Error::Precondition(
            "sample needs a configuration reduced to its affine span".into(),
        ));
    }
    if x.len() != cfg.n() {
        return Err(Error::DimensionMismatch(format!(
            "x has {} coordinates, expected {}",
            x.len(),
            cfg.n()
        )));
    }
    if x.iter().any(|xi| !xi.is_positive()) {
        return Err(Error::Precondition("x must be strictly positive".into()));
    }
    let gale = gale_dual(cfg);
    if y.len() != gale.k() {
        return Err(Error::DimensionMismatch(format!(
            "y has {} coordinates, expected {}",
            y.len(),
            gale.k()
        )));
    }
    let mut coeffs = Vec::with_capacity(cfg.len());
    for i in 0..cfg.len() {
        let pairing = dot(gale.row(i), y);
        if pairing.is_zero() {
            return Err(Error::OnArrangement(i));
        }
        let mut c = pairing;
        for (xi, ai) in x.iter().zip(cfg.point(i)) {
            let factor = rat_pow(xi, &-ai.clone())
                .ok_or_else(|| Error::IrrationalPower(format!("{xi}^-({ai}) is not rational")))?;
            c *= factor;
        }
        coeffs.push(c);
    }
    Ok(coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::matroid_report;
    use crate::linalg::ratio;

    fn fnr() -> PointConfig {
        PointConfig::from_ints(&[&[0, 0], &[1, 0], &[2, 0], &[0, 1], &[0, 2]]).unwrap()
    }

    fn face_sets(cfg: &PointConfig) -> Vec<Vec<usize>> {
        enumerate_faces(cfg)
            .unwrap()
            .into_iter()
            .map(|f| f.indices)
            .collect()
    }

    #[test]
    fn triangle_faces() {
        let cfg = PointConfig::from_ints(&[&[0, 0], &[1, 0], &[0, 1]]).unwrap();
        let faces = enumerate_faces(&cfg).unwrap();
        let by_dim = |d: usize| faces.iter().filter(|f| f.dim == d).count();
        assert_eq!(by_dim(0), 3);
        assert_eq!(by_dim(1), 3);
        assert_eq!(by_dim(2), 1);
        assert_eq!(faces.len(), 7);
    }

    #[test]
    fn segment_faces() {
        let cfg = PointConfig::from_ints(&[&[0], &[1], &[2], &[3]]).unwrap();
        let sets = face_sets(&cfg);
        assert!(sets.contains(&vec![0]));
        assert!(sets.contains(&vec![3]));
        assert!(sets.contains(&vec![0, 1, 2, 3]));
        assert_eq!(sets.len(), 3);
    }

    #[test]
    fn fnr_faces_include_y_axis_circuit() {
        let sets = face_sets(&fnr());
        assert!(sets.contains(&vec![0, 3, 4]));
        assert!(sets.contains(&vec![0, 1, 2]));
        // 3 vertices + 3 edges + full face
        assert_eq!(sets.len(), 7);
    }

    #[test]
    fn support_functionals_certify_faces() {
        for cfg in [
            fnr(),
            PointConfig::from_ints(&[&[0, 0], &[4, 0], &[1, 2], &[3, 2], &[2, 3]]).unwrap(),
        ] {
            for face in enumerate_faces(&cfg).unwrap() {
                let (c0, c) = &face.support_functional;
                for i in 0..cfg.len() {
                    let v = c0.clone() + dot(c, cfg.point(i));
                    if face.indices.contains(&i) {
                        assert!(v.is_zero(), "functional nonzero on face point");
                    } else {
                        assert!(v.is_positive(), "functional not positive off face");
                    }
                }
            }
        }
    }

    #[test]
    fn face_set_closed_under_intersection() {
        let faces = enumerate_faces(&fnr()).unwrap();
        let sets: Vec<BTreeSet<usize>> = faces
            .iter()
            .map(|f| f.indices.iter().cloned().collect())
            .collect();
        for a in &sets {
            for b in &sets {
                let inter: BTreeSet<usize> = a.intersection(b).cloned().collect();
                if !inter.is_empty() {
                    assert!(sets.contains(&inter));
                }
            }
        }
    }

    #[test]
    fn cuspidal_form_of_univariate_circuit() {
        let cfg = PointConfig::from_ints(&[&[0], &[1], &[2]]).unwrap();
        let form = cuspidal_form(&cfg).unwrap();
        // 0^2 y + 1^2 (-2y) + 2^2 y = 2y
        assert_eq!(form.variables, 1);
        assert_eq!(form.terms.len(), 1);
        assert_eq!(form.terms.get(&vec![1]), Some(&rat(2)));
    }

    #[test]
    fn cuspidal_form_of_pyramid_vanishes() {
        let cfg = PointConfig::from_ints(&[&[0, 0], &[1, 0], &[2, 0], &[0, 1]]).unwrap();
        let form = cuspidal_form(&cfg).unwrap();
        assert!(form.is_identically_zero());
    }

    #[test]
    fn cuspidal_form_of_simplex_is_zero_variable() {
        let cfg = PointConfig::from_ints(&[&[0, 0], &[1, 0], &[0, 1]]).unwrap();
        let form = cuspidal_form(&cfg).unwrap();
        assert_eq!(form.variables, 0);
    }

    #[test]
    fn defectiveness_basics() {
        // pyramids are defective
        let pyr = PointConfig::from_ints(&[&[0, 0], &[1, 0], &[2, 0], &[0, 1]]).unwrap();
        assert!(is_defective(&pyr));
        // circuits are not
        let circ = PointConfig::from_ints(&[&[0], &[1], &[2]]).unwrap();
        assert!(!is_defective(&circ));
        // the full FNR face is not
        assert!(!is_defective(&fnr()));
        // simplices are
        let simplex = PointConfig::from_ints(&[&[0, 0], &[1, 0], &[0, 1]]).unwrap();
        assert!(is_defective(&simplex));
    }

    #[test]
    fn fnr_non_defective_faces() {
        let report = count_non_defective_faces(&fnr()).unwrap();
        // full face plus the two circuit edges
        assert_eq!(report.total, 3);
        assert!(report.total_within_bound);
        assert!(report.by_codim.iter().all(|(_, _, _, ok)| *ok));
        let faces = enumerate_faces(&fnr()).unwrap();
        let nondef: Vec<Vec<usize>> = faces
            .iter()
            .filter(|f| !f.is_defective)
            .map(|f| f.indices.clone())
            .collect();
        assert_eq!(
            nondef,
            vec![vec![0, 1, 2], vec![0, 3, 4], vec![0, 1, 2, 3, 4]]
        );
    }

    #[test]
    fn simplex_has_no_non_defective_faces() {
        let cfg = PointConfig::from_ints(&[&[0, 0], &[1, 0], &[0, 1]]).unwrap();
        let report = count_non_defective_faces(&cfg).unwrap();
        assert_eq!(report.total, 0);
        assert!(report.total_within_bound);
    }

    #[test]
    fn cofaces_match_face_complements() {
        for cfg in [
            fnr(),
            PointConfig::from_ints(&[&[0], &[1], &[2]]).unwrap(),
            PointConfig::from_ints(&[&[0, 0], &[1, 0], &[2, 0], &[0, 1]]).unwrap(),
        ] {
            let mut expected: Vec<Vec<usize>> = enumerate_faces(&cfg)
                .unwrap()
                .iter()
                .filter(|f| f.indices.len() < cfg.len())
                .map(|f| {
                    (0..cfg.len())
                        .filter(|i| !f.indices.contains(i))
                        .collect::<Vec<_>>()
                })
                .collect();
            expected.push((0..cfg.len()).collect()); // complement of the empty face
            expected.sort();
            assert_eq!(crate::config::cofaces(&cfg), expected);
        }
    }

    #[test]
    fn lawrence_small_shapes() {
        let inst = lawrence_config(1, 1, 42).unwrap();
        assert_eq!(inst.config.len(), 6);
        assert_eq!(inst.config.n(), 4);
        assert_eq!(inst.config.codim(), 1);
        assert_eq!(inst.circuit_faces.len(), 1);

        let inst = lawrence_config(1, 2, 42).unwrap();
        assert_eq!(inst.config.len(), 8);
        assert_eq!(inst.config.n(), 5);
        assert_eq!(inst.config.codim(), 2);
        assert_eq!(inst.circuit_faces.len(), 4); // C(4,3)
    }

    #[test]
    fn lawrence_degenerate_range_errors() {
        // All coordinates drawn from {0}: never in general position.
        assert!(matches!(
            lawrence_config_with_range(1, 1, 5, 1),
            Err(Error::DegenerateDraw(_))
        ));
    }

    #[test]
    fn lawrence_circuit_faces_are_non_defective_faces() {
        let inst = lawrence_config(1, 1, 7).unwrap();
        let faces = enumerate_faces(&inst.config).unwrap();
        for cf in &inst.circuit_faces {
            let found = faces.iter().find(|f| &f.indices == cf);
            let face = found.expect("circuit subset is a face");
            assert!(face.is_circuit);
            assert!(!face.is_defective);
        }
    }

    #[test]
    fn horn_kapranov_circuit_sample() {
        let cfg = PointConfig::from_ints(&[&[0], &[1], &[2]]).unwrap();
        let c = horn_kapranov_sample(&cfg, &[rat(1)], &[rat(1)]).unwrap();
        assert_eq!(c, vec![rat(1), rat(-2), rat(1)]);
        // 1 - 2t + t^2 = (t-1)^2: singular at t = 1.
    }

    #[test]
    fn horn_kapranov_critical_membership() {
        // c_a x^a must lie in the kernel of A: A (c_a x^a) = A B y = 0.
        let cfg = fnr();
        let x = vec![rat(1), rat(1)];
        let y = vec![ratio(2, 3), rat(-5)];
        let c = horn_kapranov_sample(&cfg, &x, &y).unwrap();
        let v: Vec<Rat> = c; // x = 1 so c_a x^a = c_a
        let image = cfg.exponent_matrix().mul_vec(&v);
        assert!(image.iter().all(|z| z.is_zero()));
    }

    #[test]
    fn horn_kapranov_rejects_arrangement_points() {
        let cfg = fnr();
        // y = (0, 1) pairs to zero against the Gale row (-2, 0).
        let err = horn_kapranov_sample(&cfg, &[rat(1), rat(1)], &[rat(0), rat(1)]).unwrap_err();
        assert!(matches!(err, Error::OnArrangement(_)));
    }

    #[test]
    fn scale_bound_refused() {
        let points: Vec<Vec<Rat>> = (0..17).map(|i| vec![rat(i), rat(i * i)]).collect();
        let cfg = PointConfig::new(points).unwrap();
        assert!(matches!(
            enumerate_faces(&cfg),
            Err(Error::ScaleBound {
                size: 17,
                bound: 16
            })
        ));
    }

    #[test]
    fn defective_pyramids_and_circuits_randomized() {
        use rand::rngs::StdRng;
        use rand::{Rng, SeedableRng};
        let mut rng = StdRng::seed_from_u64(23);
        let mut pyramids = 0;
        let mut circuits = 0;
        for _ in 0..120 {
            let n = rng.gen_range(1..=3);
            let count = rng.gen_range(2..=6);
            let points: Vec<Vec<Rat>> = (0..count)
                .map(|_| (0..n).map(|_| rat(rng.gen_range(-3..=3))).collect())
                .collect();
            let Ok(cfg) = PointConfig::new(points) else {
                continue;
            };
            let report = matroid_report(&cfg);
            if report.is_pyramid {
                pyramids += 1;
                assert!(is_defective(&cfg), "pyramid reported non-defective");
            }
            if crate::config::is_circuit(&cfg, &(0..cfg.len()).collect::<Vec<_>>()) {
                circuits += 1;
                assert!(!is_defective(&cfg), "circuit reported defective");
            }
        }
        assert!(pyramids > 5 && circuits > 5, "test draw too thin");
    }
}
