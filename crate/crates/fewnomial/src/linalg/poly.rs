use num_traits::{One, Signed, Zero};

use super::matrix::Rat;
use crate::{Error, Result};

/// Dense univariate polynomial over the rationals, `coeffs[i]` the
/// coefficient of degree `i`. The leading coefficient is nonzero unless the
/// polynomial is zero (empty coefficient vector).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnivariatePoly {
    coeffs: Vec<Rat>,
}

impl UnivariatePoly {
    pub fn new(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UnivariatePoly { coeffs }
    }

    pub fn zero() -> Self {
        UnivariatePoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        UnivariatePoly::new(vec![Rat::one()])
    }

    pub fn constant(c: Rat) -> Self {
        UnivariatePoly::new(vec![c])
    }

    /// The linear polynomial `a x + b`.
    pub fn linear(a: Rat, b: Rat) -> Self {
        UnivariatePoly::new(vec![b, a])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn derivative(&self) -> UnivariatePoly {
        if self.coeffs.len() <= 1 {
            return UnivariatePoly::zero();
        }
        UnivariatePoly::new(
            self.coeffs[1..]
                .iter()
                .enumerate()
                .map(|(i, c)| c * Rat::from_integer((i + 1).into()))
                .collect(),
        )
    }

    pub fn add(&self, other: &UnivariatePoly) -> UnivariatePoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![Rat::zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i] += c;
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            out[i] += c;
        }
        UnivariatePoly::new(out)
    }

    pub fn sub(&self, other: &UnivariatePoly) -> UnivariatePoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![Rat::zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i] += c;
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            out[i] -= c;
        }
        UnivariatePoly::new(out)
    }

    pub fn mul(&self, other: &UnivariatePoly) -> UnivariatePoly {
        if self.is_zero() || other.is_zero() {
            return UnivariatePoly::zero();
        }
        let mut out = vec![Rat::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UnivariatePoly::new(out)
    }

    pub fn pow(&self, e: u32) -> UnivariatePoly {
        let mut acc = UnivariatePoly::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn neg(&self) -> UnivariatePoly {
        UnivariatePoly::new(self.coeffs.iter().map(|c| -c).collect())
    }

    /// Euclidean division, returning `(quotient, remainder)`.
    pub fn div_rem(&self, divisor: &UnivariatePoly) -> (UnivariatePoly, UnivariatePoly) {
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        let mut rem = self.coeffs.clone();
        let dd = divisor.coeffs.len();
        if rem.len() < dd {
            return (UnivariatePoly::zero(), self.clone());
        }
        let mut quot = vec![Rat::zero(); rem.len() - dd + 1];
        let lead = divisor.coeffs.last().unwrap();
        for i in (dd - 1..rem.len()).rev() {
            if rem[i].is_zero() {
                continue;
            }
            let q = &rem[i] / lead;
            let shift = i - (dd - 1);
            quot[shift] = q.clone();
            for (j, c) in divisor.coeffs.iter().enumerate() {
                let delta = &q * c;
                rem[shift + j] -= delta;
            }
        }
        (UnivariatePoly::new(quot), UnivariatePoly::new(rem))
    }

    /// Monic gcd via the primitive remainder sequence (content stripped at
    /// every step to keep coefficients small).
    pub fn gcd(&self, other: &UnivariatePoly) -> UnivariatePoly {
        let mut a = primitive_scale(self);
        let mut b = primitive_scale(other);
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = primitive_scale(&r);
        }
        a.monic()
    }

    fn monic(self) -> UnivariatePoly {
        match self.coeffs.last() {
            None => self,
            Some(lead) if lead.is_one() => self,
            Some(lead) => {
                let inv = lead.clone().recip();
                UnivariatePoly::new(self.coeffs.iter().map(|c| c * &inv).collect())
            }
        }
    }

    /// Square-free part `p / gcd(p, p')`, monic.
    pub fn square_free_part(&self) -> UnivariatePoly {
        if self.is_zero() {
            return UnivariatePoly::zero();
        }
        let g = self.gcd(&self.derivative());
        if g.degree() == Some(0) {
            return self.clone().monic();
        }
        let (q, r) = self.div_rem(&g);
        debug_assert!(r.is_zero());
        q.monic()
    }

    /// Cauchy bound: every real root has absolute value below the result.
    pub fn cauchy_root_bound(&self) -> Rat {
        let lead = match self.coeffs.last() {
            Some(l) => l.abs(),
            None => return Rat::one(),
        };
        let mut max = Rat::zero();
        for c in &self.coeffs[..self.coeffs.len() - 1] {
            let ratio = c.abs() / &lead;
            if ratio > max {
                max = ratio;
            }
        }
        max + Rat::one()
    }
}

/// Multiplies by the positive rational that clears denominators and
/// divides out the integer content.
fn primitive_scale(p: &UnivariatePoly) -> UnivariatePoly {
    if p.is_zero() {
        return p.clone();
    }
    let ints = super::matrix::primitive_integer_vector(p.coeffs());
    // primitive_integer_vector keeps the sign pattern, so the scale is
    // positive.
    let scaled = UnivariatePoly::new(ints.into_iter().map(Rat::from_integer).collect());
    debug_assert_eq!(
        scaled.coeffs().last().map(|c| c.is_positive()),
        p.coeffs().last().map(|c| c.is_positive())
    );
    scaled
}

/// Integer-coefficient view of a polynomial for fast exact sign queries:
/// `sign p(n/d) = sign sum a_i n^i d^{deg-i}`, all in BigInt Horner with no
/// fraction reduction.
struct IntPoly {
    coeffs: Vec<num_bigint::BigInt>,
}

impl IntPoly {
    fn from_poly(p: &UnivariatePoly) -> Self {
        IntPoly {
            coeffs: super::matrix::primitive_integer_vector(p.coeffs()),
        }
    }

    fn sign_at(&self, x: &Rat) -> i8 {
        use num_bigint::BigInt;
        if self.coeffs.is_empty() {
            return 0;
        }
        let num = x.numer();
        let den = x.denom();
        // Horner in the numerator scale: acc <- acc * num + a_i * den^k.
        let mut acc: BigInt = self.coeffs.last().unwrap().clone();
        let mut den_pow = BigInt::from(1);
        for c in self.coeffs.iter().rev().skip(1) {
            den_pow *= den;
            acc = acc * num + c * &den_pow;
        }
        match acc.sign() {
            num_bigint::Sign::Plus => 1,
            num_bigint::Sign::Minus => -1,
            num_bigint::Sign::NoSign => 0,
        }
    }
}

/// Sturm chain of a square-free polynomial, held in integer form for fast
/// sign evaluation.
struct SturmChain {
    int_chain: Vec<IntPoly>,
}

impl SturmChain {
    fn new(square_free: &UnivariatePoly) -> Self {
        let mut chain = vec![
            primitive_scale(square_free),
            primitive_scale(&square_free.derivative()),
        ];
        loop {
            let n = chain.len();
            if chain[n - 1].is_zero() {
                chain.pop();
                break;
            }
            let (_, r) = chain[n - 2].div_rem(&chain[n - 1]);
            if r.is_zero() {
                break;
            }
            // Scale to primitive integer coefficients; positive scaling
            // keeps all sign variations.
            chain.push(primitive_scale(&r.neg()));
        }
        let int_chain = chain.iter().map(IntPoly::from_poly).collect();
        SturmChain { int_chain }
    }

    fn variations_at(&self, x: &Rat) -> usize {
        let mut count = 0;
        let mut last: Option<bool> = None; // sign as is_positive
        for p in &self.int_chain {
            let s = match p.sign_at(x) {
                0 => continue,
                v => v > 0,
            };
            if let Some(prev) = last {
                if prev != s {
                    count += 1;
                }
            }
            last = Some(s);
        }
        count
    }

    /// Number of distinct roots in the half-open interval `(a, b]`.
    /// Requires `p(a) != 0`.
    fn count_half_open(&self, a: &Rat, b: &Rat) -> usize {
        debug_assert!(a < b);
        self.variations_at(a) - self.variations_at(b)
    }
}

/// Isolates the distinct real roots of `p` inside `[lo, hi]`.
///
/// Returns disjoint closed rational intervals in increasing order, one per
/// root; an exact rational root appears as a degenerate interval `[r, r]`.
pub fn isolate_real_roots(p: &UnivariatePoly, interval: (Rat, Rat)) -> Result<Vec<(Rat, Rat)>> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let (lo, hi) = interval;
    if lo > hi {
        return Ok(Vec::new());
    }
    let mut sf = p.square_free_part();
    let mut out = Vec::new();
    if lo == hi {
        if sf.eval(&lo).is_zero() {
            out.push((lo.clone(), lo));
        }
        return Ok(out);
    }

    // Deflate exact roots at the interval endpoints so that Sturm counting
    // always anchors at non-roots.
    for endpoint in [&lo, &hi] {
        if sf.eval(endpoint).is_zero() {
            out.push((endpoint.clone(), endpoint.clone()));
            let factor = UnivariatePoly::linear(Rat::one(), -endpoint.clone());
            let (q, r) = sf.div_rem(&factor);
            debug_assert!(r.is_zero());
            sf = q;
        }
    }
    if sf.degree().unwrap_or(0) == 0 {
        out.sort();
        return Ok(out);
    }

    isolate_open(&sf, &lo, &hi, &mut out);
    out.sort();

    // Shared endpoints (an open bracket meeting an exact-root neighbor)
    // are pulled apart by refinement; the touching endpoint is never the
    // bracket's own root. Refinement works on the polynomial with every
    // exact root divided out, so endpoints evaluate nonzero.
    for (a, b) in &out {
        if a == b && sf.eval(a).is_zero() {
            let factor = UnivariatePoly::linear(Rat::one(), -a.clone());
            let (q, r) = sf.div_rem(&factor);
            debug_assert!(r.is_zero());
            sf = q;
        }
    }
    for idx in 0..out.len() {
        let left_touch = idx > 0 && out[idx - 1].1 == out[idx].0;
        let right_touch = idx + 1 < out.len() && out[idx].1 == out[idx + 1].0;
        if out[idx].0 == out[idx].1 || !(left_touch || right_touch) {
            continue;
        }
        let (mut a, mut b) = out[idx].clone();
        let (orig_a, orig_b) = (a.clone(), b.clone());
        let mut width = &b - &a;
        for _ in 0..128 {
            let touching = (left_touch && a == orig_a) || (right_touch && b == orig_b);
            if !touching {
                break;
            }
            width /= Rat::from_integer(2.into());
            let refined = refine_root_interval(&sf, (a, b), &width);
            a = refined.0;
            b = refined.1;
        }
        out[idx] = (a, b);
    }
    Ok(out)
}

/// Isolates roots of square-free `sf` in the open interval `(lo, hi)`;
/// `sf(lo) != 0` and `sf(hi) != 0`.
fn isolate_open(sf: &UnivariatePoly, lo: &Rat, hi: &Rat, out: &mut Vec<(Rat, Rat)>) {
    let chain = SturmChain::new(sf);
    isolate_open_with_chain(sf, &chain, lo, hi, out);
}

fn isolate_open_with_chain(
    sf: &UnivariatePoly,
    chain: &SturmChain,
    lo: &Rat,
    hi: &Rat,
    out: &mut Vec<(Rat, Rat)>,
) {
    let count = chain.count_half_open(lo, hi); // hi is not a root
    match count {
        0 => {}
        1 => out.push((lo.clone(), hi.clone())),
        _ => {
            let mid = (lo + hi) / Rat::from_integer(2.into());
            if sf.eval(&mid).is_zero() {
                out.push((mid.clone(), mid.clone()));
                let factor = UnivariatePoly::linear(Rat::one(), -mid.clone());
                let (q, r) = sf.div_rem(&factor);
                debug_assert!(r.is_zero());
                if q.degree().unwrap_or(0) >= 1 {
                    isolate_open(&q, lo, &mid, out);
                    isolate_open(&q, &mid, hi, out);
                }
            } else {
                isolate_open_with_chain(sf, chain, lo, &mid, out);
                isolate_open_with_chain(sf, chain, &mid, hi, out);
            }
        }
    }
}

/// Shrinks an isolating interval by sign bisection until its width is at
/// most `width`. Degenerate intervals are exact roots and pass through.
pub fn refine_root_interval(p: &UnivariatePoly, interval: (Rat, Rat), width: &Rat) -> (Rat, Rat) {
    if interval.0 == interval.1 {
        return interval;
    }
    refine_on_square_free(&p.square_free_part(), interval, width)
}

/// Refinement core on an already square-free polynomial, so repeated
/// callers can pay for the square-free part once.
pub fn refine_on_square_free(sf: &UnivariatePoly, interval: (Rat, Rat), width: &Rat) -> (Rat, Rat) {
    let (mut a, mut b) = interval;
    if a == b {
        return (a, b);
    }
    let ip = IntPoly::from_poly(sf);
    let sign_a = ip.sign_at(&a);
    debug_assert!(
        sign_a != 0 && ip.sign_at(&b) != 0,
        "refine expects open isolating interval"
    );
    while &(&b - &a) > width {
        let mid = (&a + &b) / Rat::from_integer(2.into());
        match ip.sign_at(&mid) {
            0 => return (mid.clone(), mid),
            s if s == sign_a => a = mid,
            _ => b = mid,
        }
    }
    (a, b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::matrix::{rat, ratio};

    fn poly(coeffs: &[i64]) -> UnivariatePoly {
        UnivariatePoly::new(coeffs.iter().map(|&c| rat(c)).collect())
    }

    #[test]
    fn sqrt2_isolated_on_0_2() {
        // x^2 - 2 on [0, 2]
        let p = poly(&[-2, 0, 1]);
        let roots = isolate_real_roots(&p, (rat(0), rat(2))).unwrap();
        assert_eq!(roots.len(), 1);
        let (a, b) = &roots[0];
        assert!(p.eval(a).is_negative() || a == b);
        // sqrt(2) in (a, b)
        assert!(a * a <= rat(2) && rat(2) <= b * b);
    }

    #[test]
    fn window_excludes_outside_roots() {
        // (x-1)(x-3) on [0,2] -> only the root at 1
        let p = poly(&[3, -4, 1]);
        let roots = isolate_real_roots(&p, (rat(0), rat(2))).unwrap();
        assert_eq!(roots.len(), 1);
        let (a, b) = &roots[0];
        assert!(a <= &rat(1) && &rat(1) <= b);
    }

    #[test]
    fn cubic_three_roots() {
        // x^3 - x on [-2, 2]
        let p = poly(&[0, -1, 0, 1]);
        let roots = isolate_real_roots(&p, (rat(-2), rat(2))).unwrap();
        assert_eq!(roots.len(), 3);
    }

    #[test]
    fn multiple_roots_counted_once() {
        // (x-1)^2 (x+2)
        let p = poly(&[2, -3, 0, 1]);
        let roots = isolate_real_roots(&p, (rat(-5), rat(5))).unwrap();
        assert_eq!(roots.len(), 2);
    }

    #[test]
    fn endpoint_roots_are_degenerate_intervals() {
        let p = poly(&[0, -1, 0, 1]); // roots -1, 0, 1
        let roots = isolate_real_roots(&p, (rat(-1), rat(1))).unwrap();
        assert_eq!(roots.len(), 3);
        assert_eq!(roots[0], (rat(-1), rat(-1)));
        assert_eq!(roots[2], (rat(1), rat(1)));
    }

    #[test]
    fn intervals_are_pairwise_disjoint() {
        let p = poly(&[0, -1, 0, 1]); // roots -1, 0, 1
        let roots = isolate_real_roots(&p, (rat(-2), rat(2))).unwrap();
        assert_eq!(roots.len(), 3);
        for w in roots.windows(2) {
            assert!(w[0].1 < w[1].0, "intervals touch: {w:?}");
        }
    }

    #[test]
    fn zero_polynomial_rejected() {
        assert!(matches!(
            isolate_real_roots(&UnivariatePoly::zero(), (rat(0), rat(1))),
            Err(Error::ZeroPolynomial)
        ));
    }

    #[test]
    fn refine_narrows_to_width() {
        let p = poly(&[-2, 0, 1]);
        let roots = isolate_real_roots(&p, (rat(0), rat(2))).unwrap();
        let w = ratio(1, 1_000_000);
        let (a, b) = refine_root_interval(&p, roots[0].clone(), &w);
        assert!(&b - &a <= w);
        assert!(a.clone() * &a <= rat(2) && rat(2) <= b.clone() * &b);
    }

    #[test]
    fn factored_randomized_counts() {
        use rand::rngs::StdRng;
        use rand::{Rng, SeedableRng};
        let mut rng = StdRng::seed_from_u64(11);
        for _ in 0..60 {
            let n_roots = rng.gen_range(1..=5);
            let mut roots: Vec<i64> = (0..n_roots).map(|_| rng.gen_range(-8..=8)).collect();
            roots.sort_unstable();
            roots.dedup();
            let mut p = UnivariatePoly::one();
            for &r in &roots {
                let mult = rng.gen_range(1..=2);
                p = p.mul(&UnivariatePoly::linear(rat(1), rat(-r)).pow(mult));
            }
            let found = isolate_real_roots(&p, (rat(-10), rat(10))).unwrap();
            assert_eq!(found.len(), roots.len(), "roots {roots:?}");
        }
    }
}
