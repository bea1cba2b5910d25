//! Truncated complex power series: the arithmetic base of every construction here.
//!
//! A [`PowerSeries`] stores the first `N` Taylor coefficients of a function
//! analytic on the unit disk; `coeffs[k]` multiplies `z^k`. Arithmetic keeps
//! the truncation order fixed, so products, quotients and reciprocals silently
//! drop terms of degree `>= N`. Values are therefore trustworthy only strictly
//! inside the disk; [`PowerSeries::tail_bound`] estimates what the dropped
//! terms can contribute at a given radius, and [`PowerSeries::evaluate`]
//! refuses points beyond [`MAX_EVAL_RADIUS`].
//!
//! All operations are immutable: they return new series and never mutate the
//! receiver.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::parallel;

/// Truncation order used by constructions that are not told otherwise.
///
/// 256 terms keep kernel poles on |z| = 1 accurate to ~1e-12 for radii up to
/// about 0.9; callers that push evaluation toward 0.99 request higher orders.
pub const DEFAULT_ORDER: usize = 256;

/// Hard cap on |z| for evaluation. The kernels handled here have their
/// singularities on the unit circle, so beyond this radius no practical
/// truncation order keeps the tail negligible.
pub const MAX_EVAL_RADIUS: f64 = 0.995;

/// Number of trailing coefficients inspected by [`PowerSeries::tail_bound`].
const TAIL_WINDOW: usize = 32;

/// A power series truncated at a fixed order.
#[derive(Clone, Debug, PartialEq)]
pub struct PowerSeries {
    coeffs: Box<[Complex64]>,
}

impl PowerSeries {
    /// Wraps a coefficient vector; `coeffs[k]` multiplies `z^k`.
    pub fn new(coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::EmptySeries);
        }
        for (index, c) in coeffs.iter().enumerate() {
            if !c.re.is_finite() || !c.im.is_finite() {
                return Err(Error::NonFiniteCoefficient { index });
            }
        }
        Ok(Self {
            coeffs: coeffs.into_boxed_slice(),
        })
    }

    /// The zero series at the given order.
    pub fn zero(order: usize) -> Self {
        Self {
            coeffs: vec![Complex64::ZERO; order.max(1)].into_boxed_slice(),
        }
    }

    /// The constant series `c`.
    pub fn constant(order: usize, c: Complex64) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    /// The constant series `1`.
    pub fn one(order: usize) -> Self {
        Self::constant(order, Complex64::ONE)
    }

    /// The identity map `z`. Requires `order >= 2` to be representable;
    /// at order 1 the term is truncated away like any other high term.
    pub fn identity(order: usize) -> Self {
        Self::monomial(order, 1, Complex64::ONE)
    }

    /// The monomial `c z^degree`; degrees at or beyond `order` truncate to zero.
    pub fn monomial(order: usize, degree: usize, c: Complex64) -> Self {
        let mut s = Self::zero(order);
        if degree < s.coeffs.len() {
            s.coeffs[degree] = c;
        }
        s
    }

    /// A polynomial padded (or truncated) to the requested order.
    pub fn from_polynomial(order: usize, poly: &[Complex64]) -> Result<Self> {
        let n = order.max(1);
        let mut coeffs = vec![Complex64::ZERO; n];
        for (k, c) in poly.iter().take(n).enumerate() {
            coeffs[k] = *c;
        }
        Self::new(coeffs)
    }

    /// Builds coefficients from a function of the index.
    pub fn from_fn(order: usize, f: impl FnMut(usize) -> Complex64) -> Result<Self> {
        Self::new((0..order.max(1)).map(f).collect())
    }

    /// Truncation order (number of stored coefficients).
    #[inline]
    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    /// Coefficient of `z^k`; zero beyond the stored order.
    #[inline]
    pub fn coeff(&self, k: usize) -> Complex64 {
        self.coeffs.get(k).copied().unwrap_or(Complex64::ZERO)
    }

    /// All stored coefficients.
    #[inline]
    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// Largest coefficient magnitude.
    pub fn max_coefficient_magnitude(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Same coefficients at a different order: padded with zeros or truncated.
    pub fn resized(&self, order: usize) -> Self {
        let n = order.max(1);
        let mut coeffs = vec![Complex64::ZERO; n];
        for (k, c) in self.coeffs.iter().take(n).enumerate() {
            coeffs[k] = *c;
        }
        Self {
            coeffs: coeffs.into_boxed_slice(),
        }
    }

    fn same_order(&self, other: &Self) -> Result<usize> {
        if self.order() == other.order() {
            Ok(self.order())
        } else {
            Err(Error::OrderMismatch {
                left: self.order(),
                right: other.order(),
            })
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        let n = self.same_order(other)?;
        let coeffs = (0..n).map(|k| self.coeffs[k] + other.coeffs[k]).collect();
        Ok(Self { coeffs })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        let n = self.same_order(other)?;
        let coeffs = (0..n).map(|k| self.coeffs[k] - other.coeffs[k]).collect();
        Ok(Self { coeffs })
    }

    pub fn neg(&self) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    /// Multiplies every coefficient by `c`.
    pub fn scale(&self, c: Complex64) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Multiplies by `z` (shifts coefficients up one degree, dropping the top).
    pub fn shifted_up(&self) -> Self {
        let n = self.order();
        let mut coeffs = vec![Complex64::ZERO; n];
        for k in 1..n {
            coeffs[k] = self.coeffs[k - 1];
        }
        Self {
            coeffs: coeffs.into_boxed_slice(),
        }
    }

    /// Cauchy product truncated at the common order.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        let n = self.same_order(other)?;
        let a = &self.coeffs;
        let b = &other.coeffs;
        let coeffs = (0..n)
            .map(|k| (0..=k).map(|j| a[j] * b[k - j]).sum())
            .collect();
        Ok(Self { coeffs })
    }

    /// Reciprocal by the standard recursion
    /// `c_0 = 1/a_0`, `c_k = -(sum_{j=1..=k} a_j c_{k-j}) / a_0`.
    pub fn recip(&self) -> Result<Self> {
        if self.coeffs[0] == Complex64::ZERO {
            return Err(Error::ZeroConstantTerm);
        }
        let n = self.order();
        let a0_inv = self.coeffs[0].finv();
        let mut c = vec![Complex64::ZERO; n];
        c[0] = a0_inv;
        for k in 1..n {
            let s: Complex64 = (1..=k).map(|j| self.coeffs[j] * c[k - j]).sum();
            c[k] = -s * a0_inv;
        }
        Ok(Self {
            coeffs: c.into_boxed_slice(),
        })
    }

    /// Quotient `self / other` by long division
    /// `c_k = (a_k - sum_{j=1..=k} b_j c_{k-j}) / b_0`.
    ///
    /// One recursion instead of `mul(recip())`: half the work and no
    /// intermediate rounding through the reciprocal's coefficients.
    pub fn div(&self, other: &Self) -> Result<Self> {
        let n = self.same_order(other)?;
        if other.coeffs[0] == Complex64::ZERO {
            return Err(Error::ZeroConstantTerm);
        }
        let b0_inv = other.coeffs[0].finv();
        let mut c = vec![Complex64::ZERO; n];
        for k in 0..n {
            let s: Complex64 = (1..=k).map(|j| other.coeffs[j] * c[k - j]).sum();
            c[k] = (self.coeffs[k] - s) * b0_inv;
        }
        Ok(Self {
            coeffs: c.into_boxed_slice(),
        })
    }

    /// Termwise derivative. The result keeps the same order; its top
    /// coefficient is zero because the degree-`N` information was never stored.
    pub fn derivative(&self) -> Self {
        let n = self.order();
        let mut coeffs = vec![Complex64::ZERO; n];
        for k in 1..n {
            coeffs[k - 1] = self.coeffs[k] * k as f64;
        }
        Self {
            coeffs: coeffs.into_boxed_slice(),
        }
    }

    /// Termwise antiderivative with value 0 at the origin. The top input
    /// coefficient is dropped to keep the order fixed.
    pub fn integral(&self) -> Self {
        let n = self.order();
        let mut coeffs = vec![Complex64::ZERO; n];
        for k in 1..n {
            coeffs[k] = self.coeffs[k - 1] / k as f64;
        }
        Self {
            coeffs: coeffs.into_boxed_slice(),
        }
    }

    #[inline]
    fn horner(&self, z: Complex64) -> Complex64 {
        let mut acc = Complex64::ZERO;
        for c in self.coeffs.iter().rev() {
            acc = acc * z + c;
        }
        acc
    }

    /// Horner evaluation at `z`; refuses `|z| >` [`MAX_EVAL_RADIUS`] because
    /// the truncation tail is unbounded there.
    pub fn evaluate(&self, z: Complex64) -> Result<Complex64> {
        let radius = z.norm();
        if radius > MAX_EVAL_RADIUS {
            return Err(Error::RadiusTooLarge {
                radius,
                max: MAX_EVAL_RADIUS,
            });
        }
        Ok(self.horner(z))
    }

    /// Evaluates at every point, fanning out across threads when the
    /// `parallel` feature is on. Output order matches input order and is
    /// bit-identical to the sequential path.
    pub fn evaluate_many(&self, points: &[Complex64]) -> Result<Vec<Complex64>> {
        self.check_radii(points)?;
        Ok(parallel::map_collect(points, |z| self.horner(*z)))
    }

    /// Sequential twin of [`PowerSeries::evaluate_many`], available regardless
    /// of features; the benchmark suite compares the two.
    pub fn evaluate_many_sequential(&self, points: &[Complex64]) -> Result<Vec<Complex64>> {
        self.check_radii(points)?;
        Ok(parallel::map_collect_sequential(points, |z| self.horner(*z)))
    }

    fn check_radii(&self, points: &[Complex64]) -> Result<()> {
        for z in points {
            let radius = z.norm();
            if radius > MAX_EVAL_RADIUS {
                return Err(Error::RadiusTooLarge {
                    radius,
                    max: MAX_EVAL_RADIUS,
                });
            }
        }
        Ok(())
    }

    /// Crude bound on the dropped tail at radius `r < 1`:
    /// `M r^N / (1 - r)` where `M` is the largest magnitude among the last
    /// `min(32, N)` stored coefficients.
    ///
    /// For the series built here (geometric-type kernels and their
    /// integrals/products) coefficient magnitudes are non-increasing or grow
    /// slower than the window captures, so the recent window is a faithful
    /// proxy for the dropped terms. Exact polynomials report 0.
    pub fn tail_bound(&self, r: f64) -> f64 {
        if r >= 1.0 {
            return f64::INFINITY;
        }
        if r <= 0.0 {
            return 0.0;
        }
        let n = self.order();
        let window = TAIL_WINDOW.min(n);
        let m = self.coeffs[n - window..]
            .iter()
            .map(|c| c.norm())
            .fold(0.0, f64::max);
        m * r.powi(n as i32) / (1.0 - r)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn re(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    fn assert_coeffs_close(s: &PowerSeries, expected: &[Complex64], tol: f64) {
        assert_eq!(s.order(), expected.len());
        for (k, e) in expected.iter().enumerate() {
            let d = (s.coeff(k) - e).norm();
            assert!(
                d <= tol,
                "coefficient {k}: got {}, expected {e}, |diff| = {d:e}",
                s.coeff(k)
            );
        }
    }

    #[test]
    fn product_of_linear_factors() {
        // (1 + z)(1 - z) = 1 - z^2
        let a = PowerSeries::from_polynomial(8, &[re(1.0), re(1.0)]).unwrap();
        let b = PowerSeries::from_polynomial(8, &[re(1.0), re(-1.0)]).unwrap();
        let p = a.mul(&b).unwrap();
        let mut expected = vec![Complex64::ZERO; 8];
        expected[0] = re(1.0);
        expected[2] = re(-1.0);
        assert_coeffs_close(&p, &expected, 0.0);
    }

    #[test]
    fn geometric_series_times_one_minus_z_is_one() {
        let ones = PowerSeries::from_fn(8, |_| re(1.0)).unwrap();
        let b = PowerSeries::from_polynomial(8, &[re(1.0), re(-1.0)]).unwrap();
        let p = ones.mul(&b).unwrap();
        // truncation drops the -z^8 term exactly
        let mut expected = vec![Complex64::ZERO; 8];
        expected[0] = re(1.0);
        assert_coeffs_close(&p, &expected, 0.0);
    }

    #[test]
    fn reciprocal_of_one_minus_z() {
        let b = PowerSeries::from_polynomial(16, &[re(1.0), re(-1.0)]).unwrap();
        let r = b.recip().unwrap();
        let expected: Vec<_> = (0..16).map(|_| re(1.0)).collect();
        assert_coeffs_close(&r, &expected, 1e-15);
    }

    #[test]
    fn reciprocal_of_one_plus_z_squared_alternates() {
        let b = PowerSeries::from_polynomial(9, &[re(1.0), re(0.0), re(1.0)]).unwrap();
        let r = b.recip().unwrap();
        // 1/(1+z^2) = 1 - z^2 + z^4 - z^6 + z^8
        let expected: Vec<_> = (0..9)
            .map(|k| {
                if k % 2 == 1 {
                    Complex64::ZERO
                } else if k % 4 == 0 {
                    re(1.0)
                } else {
                    re(-1.0)
                }
            })
            .collect();
        assert_coeffs_close(&r, &expected, 1e-15);
    }

    #[test]
    fn division_matches_koebe_coefficients() {
        // z / (1 - z)^2 = sum k z^k
        let num = PowerSeries::identity(12);
        let den = PowerSeries::from_polynomial(12, &[re(1.0), re(-2.0), re(1.0)]).unwrap();
        let q = num.div(&den).unwrap();
        let expected: Vec<_> = (0..12).map(|k| re(k as f64)).collect();
        assert_coeffs_close(&q, &expected, 1e-12);
    }

    #[test]
    fn division_agrees_with_mul_recip() {
        let a = PowerSeries::from_fn(32, |k| Complex64::new(1.0 / (k + 1) as f64, 0.3)).unwrap();
        let b = PowerSeries::from_polynomial(32, &[re(2.0), re(-1.0), re(0.25)]).unwrap();
        let direct = a.div(&b).unwrap();
        let indirect = a.mul(&b.recip().unwrap()).unwrap();
        for k in 0..32 {
            assert!((direct.coeff(k) - indirect.coeff(k)).norm() < 1e-12);
        }
    }

    #[test]
    fn derivative_and_integral_roundtrip() {
        let s = PowerSeries::from_polynomial(6, &[re(0.0), re(1.0), re(2.0), re(3.0)]).unwrap();
        let d = s.derivative();
        // d/dz (z + 2z^2 + 3z^3) = 1 + 4z + 9z^2
        assert_coeffs_close(
            &d,
            &[
                re(1.0),
                re(4.0),
                re(9.0),
                Complex64::ZERO,
                Complex64::ZERO,
                Complex64::ZERO,
            ],
            0.0,
        );
        let back = d.integral();
        assert_coeffs_close(&back, s.coeffs(), 1e-15);
    }

    #[test]
    fn evaluate_geometric_series_at_half() {
        let s = PowerSeries::from_fn(DEFAULT_ORDER, |_| re(1.0)).unwrap();
        let v = s.evaluate(re(0.5)).unwrap();
        assert!((v - re(2.0)).norm() < 1e-12);
    }

    #[test]
    fn evaluate_matches_closed_form_off_axis() {
        let n = 2048;
        let s = PowerSeries::from_polynomial(n, &[re(1.0), re(-1.0)])
            .unwrap()
            .recip()
            .unwrap();
        let z = Complex64::new(0.9, 0.3); // |z| ~ 0.9487
        let v = s.evaluate(z).unwrap();
        let exact = (Complex64::ONE - z).finv();
        assert!((v - exact).norm() < 1e-12);
    }

    #[test]
    fn evaluate_rejects_large_radius() {
        let s = PowerSeries::one(4);
        let err = s.evaluate(re(0.9999)).unwrap_err();
        assert!(matches!(err, Error::RadiusTooLarge { .. }));
    }

    #[test]
    fn recip_rejects_zero_constant_term() {
        let s = PowerSeries::identity(4);
        assert!(matches!(s.recip(), Err(Error::ZeroConstantTerm)));
    }

    #[test]
    fn order_mismatch_is_reported() {
        let a = PowerSeries::one(4);
        let b = PowerSeries::one(8);
        assert!(matches!(
            a.add(&b),
            Err(Error::OrderMismatch { left: 4, right: 8 })
        ));
    }

    #[test]
    fn non_finite_coefficients_are_rejected() {
        let err = PowerSeries::new(vec![re(1.0), Complex64::new(f64::NAN, 0.0)]).unwrap_err();
        assert!(matches!(err, Error::NonFiniteCoefficient { index: 1 }));
    }

    #[test]
    fn tail_bound_is_zero_for_exact_polynomials() {
        let s = PowerSeries::identity(DEFAULT_ORDER);
        assert_eq!(s.tail_bound(0.99), 0.0);
    }

    #[test]
    fn tail_bound_of_geometric_series() {
        let s = PowerSeries::from_fn(256, |_| re(1.0)).unwrap();
        let expected = 0.99f64.powi(256) / (1.0 - 0.99);
        assert!((s.tail_bound(0.99) - expected).abs() < 1e-13 * expected);
        assert_eq!(s.tail_bound(0.0), 0.0);
        assert!(s.tail_bound(1.0).is_infinite());
    }

    #[test]
    fn shifted_up_multiplies_by_z() {
        let s = PowerSeries::from_polynomial(4, &[re(1.0), re(2.0), re(3.0), re(4.0)]).unwrap();
        let t = s.shifted_up();
        assert_coeffs_close(&t, &[Complex64::ZERO, re(1.0), re(2.0), re(3.0)], 0.0);
    }

    #[test]
    fn resized_pads_and_truncates() {
        let s = PowerSeries::from_polynomial(3, &[re(1.0), re(2.0), re(3.0)]).unwrap();
        assert_eq!(s.resized(5).coeffs().len(), 5);
        assert_eq!(s.resized(5).coeff(4), Complex64::ZERO);
        assert_eq!(s.resized(2).coeffs(), &[re(1.0), re(2.0)]);
    }

    #[test]
    fn parallel_and_sequential_evaluation_agree_bitwise() {
        let s = PowerSeries::from_fn(128, |k| {
            Complex64::new(1.0 / (k * k + 1) as f64, (k as f64 * 0.7).sin())
        })
        .unwrap();
        let points: Vec<_> = (0..1000)
            .map(|i| Complex64::from_polar(0.92, i as f64 * 0.013))
            .collect();
        let a = s.evaluate_many(&points).unwrap();
        let b = s.evaluate_many_sequential(&points).unwrap();
        assert_eq!(a, b);
    }
}
