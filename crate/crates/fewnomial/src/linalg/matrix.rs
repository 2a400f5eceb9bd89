use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};

/// Arbitrary-precision rational scalar used throughout the crate.
pub type Rat = BigRational;

/// Shorthand for an integer rational.
pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Shorthand for a rational fraction `n/d`.
pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Binomial coefficient as an exact integer rational; zero when `k > n`.
pub fn binomial(n: usize, k: usize) -> Rat {
    if k > n {
        return Rat::zero();
    }
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..k {
        num *= BigInt::from(n - i);
        den *= BigInt::from(i + 1);
    }
    Rat::new(num, den)
}

/// Exact power `base^exp` for a rational exponent, when the result is rational.
///
/// Writes `exp = p/q` in lowest terms with `q > 0` and extracts exact q-th
/// roots of the numerator and denominator of `base`. Returns `None` when the
/// root does not exist over the rationals (or for a negative base with even
/// root index).
pub fn rat_pow(base: &Rat, exp: &Rat) -> Option<Rat> {
    if exp.is_zero() {
        return Some(Rat::one());
    }
    if base.is_zero() {
        return if exp.is_positive() {
            Some(Rat::zero())
        } else {
            None
        };
    }
    let p = exp.numer().clone();
    let q = exp.denom().clone(); // reduced, q > 0
    let negative = base.is_negative();
    let q_u32: u32 = match u32::try_from(&q) {
        Ok(v) => v,
        Err(_) => return None,
    };
    if negative && q_u32.is_multiple_of(2) {
        return None;
    }
    let abs = base.abs();
    let num_root = exact_nth_root(abs.numer(), q_u32)?;
    let den_root = exact_nth_root(abs.denom(), q_u32)?;
    let mut root = Rat::new(num_root, den_root);
    if negative {
        root = -root;
    }
    // root^p, with negative p inverting.
    let p_mag: u64 = match u64::try_from(p.abs().clone()) {
        Ok(v) => v,
        Err(_) => return None,
    };
    let mut acc = Rat::one();
    for _ in 0..p_mag {
        acc *= &root;
    }
    if p.is_negative() {
        if acc.is_zero() {
            return None;
        }
        acc = acc.recip();
    }
    Some(acc)
}

fn exact_nth_root(v: &BigInt, n: u32) -> Option<BigInt> {
    if n == 1 || v.is_one() {
        return Some(v.clone());
    }
    let r = v.nth_root(n);
    if r.pow(n) == *v {
        Some(r)
    } else {
        None
    }
}

/// Scales a rational vector to a primitive integer vector (cleared
/// denominators, content divided out, sign of the first nonzero entry kept).
pub fn primitive_integer_vector(v: &[Rat]) -> Vec<BigInt> {
    let mut lcm = BigInt::one();
    for x in v {
        lcm = num_integer::lcm(lcm, x.denom().clone());
    }
    let ints: Vec<BigInt> = v.iter().map(|x| x.numer() * (&lcm / x.denom())).collect();
    let mut gcd = BigInt::zero();
    for x in &ints {
        gcd = num_integer::gcd(gcd, x.clone());
    }
    if gcd.is_zero() || gcd.is_one() {
        return ints;
    }
    ints.into_iter().map(|x| x / &gcd).collect()
}

/// Dense matrix of exact rationals, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rat>,
}

impl RationalMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Rat>) -> Self {
        assert_eq!(rows * cols, data.len(), "matrix data length mismatch");
        RationalMatrix { rows, cols, data }
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        RationalMatrix::new(rows, cols, vec![Rat::zero(); rows * cols])
    }

    pub fn identity(n: usize) -> Self {
        let mut m = RationalMatrix::zero(n, n);
        for i in 0..n {
            *m.at_mut(i, i) = Rat::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |v| v.len());
        for row in &rows {
            assert_eq!(row.len(), c, "ragged rows");
        }
        RationalMatrix::new(r, c, rows.into_iter().flatten().collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, r: usize, c: usize) -> &Rat {
        &self.data[r * self.cols + c]
    }

    pub fn at_mut(&mut self, r: usize, c: usize) -> &mut Rat {
        &mut self.data[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[Rat] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vec(&self, r: usize) -> Vec<Rat> {
        self.row(r).to_vec()
    }

    pub fn col_vec(&self, c: usize) -> Vec<Rat> {
        (0..self.rows).map(|r| self.at(r, c).clone()).collect()
    }

    pub fn transpose(&self) -> RationalMatrix {
        let mut out = RationalMatrix::zero(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                *out.at_mut(c, r) = self.at(r, c).clone();
            }
        }
        out
    }

    pub fn mul(&self, other: &RationalMatrix) -> RationalMatrix {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let mut out = RationalMatrix::zero(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let term = a * other.at(k, c);
                    *out.at_mut(r, c) += term;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(self.cols, v.len(), "matrix-vector shape mismatch");
        (0..self.rows)
            .map(|r| {
                let mut acc = Rat::zero();
                for c in 0..self.cols {
                    acc += self.at(r, c) * &v[c];
                }
                acc
            })
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    /// Submatrix keeping the given columns, in the given order.
    pub fn select_columns(&self, cols: &[usize]) -> RationalMatrix {
        let mut out = RationalMatrix::zero(self.rows, cols.len());
        for r in 0..self.rows {
            for (j, &c) in cols.iter().enumerate() {
                *out.at_mut(r, j) = self.at(r, c).clone();
            }
        }
        out
    }

    /// Submatrix keeping the given rows, in the given order.
    pub fn select_rows(&self, rows: &[usize]) -> RationalMatrix {
        let mut out = RationalMatrix::zero(rows.len(), self.cols);
        for (i, &r) in rows.iter().enumerate() {
            for c in 0..self.cols {
                *out.at_mut(i, c) = self.at(r, c).clone();
            }
        }
        out
    }

    /// Exact rank by fraction-free (Bareiss) elimination on the
    /// denominator-cleared integer matrix.
    pub fn rank(&self) -> usize {
        if self.rows == 0 || self.cols == 0 {
            return 0;
        }
        // Clear denominators row by row; rank is unchanged.
        let mut m: Vec<Vec<BigInt>> = (0..self.rows)
            .map(|r| {
                let mut lcm = BigInt::one();
                for c in 0..self.cols {
                    lcm = num_integer::lcm(lcm, self.at(r, c).denom().clone());
                }
                (0..self.cols)
                    .map(|c| {
                        let x = self.at(r, c);
                        x.numer() * (&lcm / x.denom())
                    })
                    .collect()
            })
            .collect();

        let mut rank = 0;
        let mut prev = BigInt::one();
        let mut col = 0;
        while rank < self.rows && col < self.cols {
            let pivot = (rank..self.rows).find(|&r| !m[r][col].is_zero());
            let Some(p) = pivot else {
                col += 1;
                continue;
            };
            m.swap(rank, p);
            for r in rank + 1..self.rows {
                for c in col + 1..self.cols {
                    let num = &m[rank][col] * &m[r][c] - &m[r][col] * &m[rank][c];
                    m[r][c] = num / &prev; // exact by Bareiss
                }
                m[r][col] = BigInt::zero();
            }
            prev = m[rank][col].clone();
            rank += 1;
            col += 1;
        }
        rank
    }

    /// Reduced row echelon form; returns the RREF and pivot column indices.
    pub fn rref(&self) -> (RationalMatrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.at(i, c).is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..m.cols {
                    let tmp = m.at(p, j).clone();
                    *m.at_mut(p, j) = m.at(r, j).clone();
                    *m.at_mut(r, j) = tmp;
                }
            }
            let inv = m.at(r, c).clone().recip();
            for j in c..m.cols {
                let v = m.at(r, j) * &inv;
                *m.at_mut(r, j) = v;
            }
            for i in 0..m.rows {
                if i != r && !m.at(i, c).is_zero() {
                    let f = m.at(i, c).clone();
                    for j in c..m.cols {
                        let v = m.at(i, j) - &f * m.at(r, j);
                        *m.at_mut(i, j) = v;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    /// Canonical kernel basis: a `cols x (cols - rank)` matrix `V` with
    /// `self * V = 0`.
    ///
    /// Columns come from the reduced row echelon form, one per free column
    /// in increasing order, with a unit pivot at the free coordinate. The
    /// result is deterministic, so every module sees the same Gale dual.
    pub fn kernel_basis(&self) -> RationalMatrix {
        let (rref, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut out = RationalMatrix::zero(self.cols, free.len());
        for (j, &fc) in free.iter().enumerate() {
            *out.at_mut(fc, j) = Rat::one();
            for (pi, &pc) in pivots.iter().enumerate() {
                *out.at_mut(pc, j) = -rref.at(pi, fc).clone();
            }
        }
        out
    }

    /// Exact determinant (square matrices).
    pub fn det(&self) -> Rat {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        let mut m = self.clone();
        let mut det = Rat::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&r| !m.at(r, c).is_zero()) else {
                return Rat::zero();
            };
            if p != c {
                for j in 0..n {
                    let tmp = m.at(p, j).clone();
                    *m.at_mut(p, j) = m.at(c, j).clone();
                    *m.at_mut(c, j) = tmp;
                }
                det = -det;
            }
            det *= m.at(c, c).clone();
            let inv = m.at(c, c).clone().recip();
            for r in c + 1..n {
                if m.at(r, c).is_zero() {
                    continue;
                }
                let f = m.at(r, c) * &inv;
                for j in c..n {
                    let v = m.at(r, j) - &f * m.at(c, j);
                    *m.at_mut(r, j) = v;
                }
            }
        }
        det
    }
}

/// Inner product of two rational slices.
pub fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    assert_eq!(a.len(), b.len(), "dot product length mismatch");
    let mut acc = Rat::zero();
    for (x, y) in a.iter().zip(b) {
        acc += x * y;
    }
    acc
}

/// Checks the Cauchy-Binet style vanishing identity
/// `sum_{|sigma|=a} det(A^sigma) det(C^sigma) prod_{u in sigma} v_u = 0`
/// by direct expansion over all column subsets.
///
/// Preconditions are verified and reported distinctly: `A` and `C` share a
/// shape with `a <= b`, `C v = 0` exactly, and the all-ones row lies in the
/// row span of `A`.
pub fn cauchy_binet_identity_check(
    a: &RationalMatrix,
    c: &RationalMatrix,
    v: &[Rat],
) -> Result<bool> {
    if a.rows() != c.rows() || a.cols() != c.cols() {
        return Err(Error::Precondition(format!(
            "shape mismatch: A is {}x{}, C is {}x{}",
            a.rows(),
            a.cols(),
            c.rows(),
            c.cols()
        )));
    }
    if a.rows() > a.cols() {
        return Err(Error::Precondition(format!(
            "need rows <= cols, got {}x{}",
            a.rows(),
            a.cols()
        )));
    }
    if v.len() != a.cols() {
        return Err(Error::Precondition(format!(
            "v has length {}, expected {}",
            v.len(),
            a.cols()
        )));
    }
    if c.mul_vec(v).iter().any(|x| !x.is_zero()) {
        return Err(Error::Precondition("C v != 0".into()));
    }
    // Ones in the row span of A: stacking the ones row must not raise the rank.
    let mut stacked_rows: Vec<Vec<Rat>> = (0..a.rows()).map(|r| a.row_vec(r)).collect();
    stacked_rows.push(vec![Rat::one(); a.cols()]);
    let stacked = RationalMatrix::from_rows(stacked_rows);
    if stacked.rank() != a.rank() {
        return Err(Error::Precondition(
            "all-ones row is not in the row span of A".into(),
        ));
    }

    let mut sum = Rat::zero();
    let size = a.rows();
    for sigma in combinations(a.cols(), size) {
        let da = a.select_columns(&sigma).det();
        if da.is_zero() {
            continue;
        }
        let dc = c.select_columns(&sigma).det();
        if dc.is_zero() {
            continue;
        }
        let mut prod = da * dc;
        for &u in &sigma {
            prod *= &v[u];
        }
        sum += prod;
    }
    Ok(sum.is_zero())
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.clone());
        // advance
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if idx[i] != i + n - k {
                break;
            }
            if i == 0 {
                return out;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> RationalMatrix {
        RationalMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| rat(x)).collect())
                .collect(),
        )
    }

    #[test]
    fn rank_identity() {
        assert_eq!(RationalMatrix::identity(3).rank(), 3);
    }

    #[test]
    fn rank_zero_matrix() {
        assert_eq!(RationalMatrix::zero(2, 4).rank(), 0);
    }

    #[test]
    fn rank_fnr_exponent_matrix() {
        // A for {(0,0),(1,0),(2,0),(0,1),(0,2)}
        let a = m(&[&[1, 1, 1, 1, 1], &[0, 1, 2, 0, 0], &[0, 0, 0, 1, 2]]);
        assert_eq!(a.rank(), 3);
    }

    #[test]
    fn kernel_of_ones_row() {
        let a = m(&[&[1, 1, 1]]);
        let k = a.kernel_basis();
        assert_eq!(k.cols(), 2);
        assert!(a.mul(&k).is_zero());
        assert_eq!(k.rank(), 2);
    }

    #[test]
    fn kernel_of_univariate_circuit() {
        // A of {0,1,2} in R^1
        let a = m(&[&[1, 1, 1], &[0, 1, 2]]);
        let k = a.kernel_basis();
        assert_eq!(k.cols(), 1);
        assert!(a.mul(&k).is_zero());
        // proportional to (1,-2,1)
        let v = k.col_vec(0);
        let scale = v[0].clone();
        assert!(!scale.is_zero());
        assert_eq!(&v[1] / &scale, rat(-2));
        assert_eq!(&v[2] / &scale, rat(1));
    }

    #[test]
    fn kernel_of_fnr_matches_hand_solve() {
        let a = m(&[&[1, 1, 1, 1, 1], &[0, 1, 2, 0, 0], &[0, 0, 0, 1, 2]]);
        let k = a.kernel_basis();
        assert!(a.mul(&k).is_zero());
        assert_eq!(k.cols(), 2);
        let expect0 = [rat(1), rat(-2), rat(1), rat(0), rat(0)];
        let expect1 = [rat(1), rat(0), rat(0), rat(-2), rat(1)];
        assert_eq!(k.col_vec(0), expect0);
        assert_eq!(k.col_vec(1), expect1);
    }

    #[test]
    fn full_rank_square_has_empty_kernel() {
        let a = RationalMatrix::identity(4);
        assert_eq!(a.kernel_basis().cols(), 0);
    }

    #[test]
    fn det_small() {
        assert_eq!(m(&[&[1, 2], &[3, 4]]).det(), rat(-2));
        assert_eq!(m(&[&[1, 2], &[2, 4]]).det(), rat(0));
    }

    #[test]
    fn cauchy_binet_trivial() {
        let a = m(&[&[1, 1]]);
        let v = vec![rat(1), rat(-1)];
        assert!(cauchy_binet_identity_check(&a, &a, &v).unwrap());
    }

    #[test]
    fn cauchy_binet_scaled_circuit() {
        // A of {0,1,2}; C = A with columns scaled by (1,-1,1); v = kernel of C.
        let a = m(&[&[1, 1, 1], &[0, 1, 2]]);
        let c = m(&[&[1, -1, 1], &[0, -1, 2]]);
        let v = c.kernel_basis().col_vec(0);
        assert!(cauchy_binet_identity_check(&a, &c, &v).unwrap());
    }

    #[test]
    fn cauchy_binet_rejects_bad_kernel() {
        let a = m(&[&[1, 1]]);
        let v = vec![rat(1), rat(1)];
        assert!(matches!(
            cauchy_binet_identity_check(&a, &a, &v),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn rat_pow_exact_cases() {
        assert_eq!(rat_pow(&rat(4), &ratio(1, 2)), Some(rat(2)));
        assert_eq!(rat_pow(&ratio(1, 4), &ratio(-1, 2)), Some(rat(2)));
        assert_eq!(rat_pow(&rat(2), &ratio(1, 2)), None);
        assert_eq!(rat_pow(&rat(-8), &ratio(1, 3)), Some(rat(-2)));
        assert_eq!(rat_pow(&rat(-4), &ratio(1, 2)), None);
        assert_eq!(rat_pow(&rat(9), &rat(0)), Some(rat(1)));
    }

    #[test]
    fn combinations_count() {
        assert_eq!(combinations(5, 2).len(), 10);
        assert_eq!(combinations(4, 4).len(), 1);
        assert_eq!(combinations(3, 0).len(), 1);
    }
}
