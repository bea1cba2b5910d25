//! The two-parameter quadratic kernel family and blended convex targets.
//!
//! The kernel is
//!
//! ```text
//! psi_{mu,nu}(z) = 1 / (1 - 2 z e^{i mu} cos(nu) + z^2 e^{2 i mu})
//!               = 1 / ((1 - z e^{i(mu+nu)}) (1 - z e^{i(mu-nu)}))
//! ```
//!
//! with both roots of the quadratic on the unit circle, so psi is analytic on
//! the open disk. Its antiderivative vanishing at 0 has the closed form
//!
//! ```text
//! Phi_{mu,nu}(z) = -(e^{-i mu} / (2 i sin nu)) Log((1 - z e^{i(mu+nu)}) / (1 - z e^{i(mu-nu)}))
//! ```
//!
//! away from sin(nu) = 0; both log factors stay in the right half-plane for
//! |z| < 1, so the principal branch never jumps. When sin(nu) ~ 0 the two
//! roots collide and the limit is rational: `z / (1 - z e^{i mu})` for
//! cos(nu) > 0 and `z / (1 + z e^{i mu})` for cos(nu) < 0.
//!
//! Special cases anchor the catalogue: Phi_{0,0} = z/(1-z) (half-plane),
//! Phi_{pi/2,pi/2} = atanh(z) (horizontal strip), Phi_{0,pi/2} = arctan(z)
//! (vertical strip of half-width pi/4).

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::grid::Grid;
use crate::parallel;
use crate::report::CheckReport;
use crate::series::PowerSeries;

/// Below this |sin(nu)| the antiderivative switches to its rational
/// double-root limit; the closed form would divide by ~0 and lose all digits.
pub const DEGENERATE_SIN_TOLERANCE: f64 = 1e-8;

/// Positivity margin demanded of a "positive real part" certificate.
pub const POSITIVE_REAL_TOL: f64 = 1e-12;

/// Kernel parameters (mu, nu). mu rotates the configuration; nu separates the
/// two unimodular roots `e^{i(mu +- nu)}`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct KernelParams {
    pub mu: f64,
    pub nu: f64,
}

impl KernelParams {
    pub fn new(mu: f64, nu: f64) -> Self {
        Self { mu, nu }
    }

    /// Coefficients `[1, -2 e^{i mu} cos nu, e^{2 i mu}]` of the kernel's
    /// denominator quadratic.
    pub fn quadratic(&self) -> [Complex64; 3] {
        let e = Complex64::from_polar(1.0, self.mu);
        [
            Complex64::ONE,
            -e * (2.0 * self.nu.cos()),
            e * e,
        ]
    }

    /// Kernel value; meaningful for |z| < 1 (the poles sit on the circle).
    pub fn psi(&self, z: Complex64) -> Complex64 {
        let [c0, c1, c2] = self.quadratic();
        ((c2 * z + c1) * z + c0).finv()
    }

    /// Taylor coefficients of the kernel: `e^{i k mu} sin((k+1) nu) / sin(nu)`
    /// (with the obvious `k+1` limit at sin(nu) = 0), obtained by inverting
    /// the quadratic.
    pub fn psi_series(&self, order: usize) -> PowerSeries {
        PowerSeries::from_polynomial(order, &self.quadratic())
            .expect("quadratic coefficients are finite")
            .recip()
            .expect("constant term is 1")
    }

    /// Antiderivative of the kernel vanishing at 0, in closed form.
    pub fn antiderivative(&self, z: Complex64) -> Complex64 {
        let e = Complex64::from_polar(1.0, self.mu);
        let sin_nu = self.nu.sin();
        if sin_nu.abs() < DEGENERATE_SIN_TOLERANCE {
            // double root: psi = (1 -+ z e^{i mu})^{-2}
            return if self.nu.cos() > 0.0 {
                z / (Complex64::ONE - z * e)
            } else {
                z / (Complex64::ONE + z * e)
            };
        }
        let a = Complex64::from_polar(1.0, self.mu + self.nu);
        let b = Complex64::from_polar(1.0, self.mu - self.nu);
        let ratio = (Complex64::ONE - z * a) / (Complex64::ONE - z * b);
        -e.conj() / (Complex64::new(0.0, 2.0 * sin_nu)) * ratio.ln()
    }

    /// Antiderivative as a series: termwise integral of [`Self::psi_series`].
    /// An independent route to the same function as [`Self::antiderivative`];
    /// the two cross-validate each other in tests.
    pub fn antiderivative_series(&self, order: usize) -> PowerSeries {
        self.psi_series(order).integral()
    }
}

/// Which convex image the blended target draws.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BlendFamily {
    /// Weighted blend of a half-plane-type rational map with a kernel
    /// antiderivative; sheared with constant `+e^{-2 i mu}` and convex in
    /// the direction `-(mu + pi/2)`.
    HalfPlane,
    /// Weighted blend of the two-slit logarithm with `z * psi_{mu,nu}`;
    /// sheared with constant `-e^{-2 i mu}` and convex in the direction `-mu`.
    Log,
}

/// A two-term convex target `a * T_1 + b * T_2` from one of the two families.
///
/// For `HalfPlane`, `nu1` shapes the rational term and `nu2` the kernel
/// antiderivative. For `Log` only `nu2` is used (`nu1` is ignored): both
/// certificate factors share that parameter.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BlendParams {
    pub family: BlendFamily,
    pub a: f64,
    pub b: f64,
    pub mu: f64,
    pub nu1: f64,
    pub nu2: f64,
}

impl BlendParams {
    /// Weights must be non-negative and not both zero.
    pub fn validate(&self) -> Result<()> {
        if self.a >= 0.0 && self.b >= 0.0 && self.a + self.b > 0.0 {
            Ok(())
        } else {
            Err(Error::InvalidBlend)
        }
    }

    fn quad_poly(&self, nu: f64, order: usize) -> PowerSeries {
        PowerSeries::from_polynomial(order, &KernelParams::new(self.mu, nu).quadratic())
            .expect("quadratic coefficients are finite")
    }

    /// The factor `1 - z^2 e^{2 i mu}` both families share.
    fn one_minus_square(&self, order: usize) -> PowerSeries {
        let e = Complex64::from_polar(1.0, self.mu);
        PowerSeries::from_polynomial(order, &[Complex64::ONE, Complex64::ZERO, -e * e])
            .expect("coefficients are finite")
    }

    /// The blended analytic target. Unnormalized: its derivative at 0 is
    /// `a + b` (see [`Self::derivative_normalization`]).
    pub fn target_series(&self, order: usize) -> Result<PowerSeries> {
        self.validate()?;
        let e = Complex64::from_polar(1.0, self.mu);
        let omsq = self.one_minus_square(order);
        match self.family {
            BlendFamily::HalfPlane => {
                // a * z(1 - z e^{i mu} cos nu1)/(1 - z^2 e^{2 i mu}) + b * Phi_{mu,nu2}
                let numer = PowerSeries::from_polynomial(
                    order,
                    &[Complex64::ZERO, Complex64::ONE, -e * self.nu1.cos()],
                )?;
                let t_a = numer.div(&omsq)?;
                let t_b = KernelParams::new(self.mu, self.nu2).antiderivative_series(order);
                t_a.scale(self.a.into()).add(&t_b.scale(self.b.into()))
            }
            BlendFamily::Log => {
                // a * (1/2) e^{-i mu} log((1 + z e^{i mu})/(1 - z e^{i mu})) + b * z psi_{mu,nu2}
                let t_a = omsq.recip()?.integral();
                let t_b = KernelParams::new(self.mu, self.nu2)
                    .psi_series(order)
                    .shifted_up();
                t_a.scale(self.a.into()).add(&t_b.scale(self.b.into()))
            }
        }
    }

    /// `target'(0)`; divide the target by this to get a normalized shear input.
    pub fn derivative_normalization(&self) -> f64 {
        self.a + self.b
    }

    /// The positive-real-part certificate: the target's derivative factors as
    /// `p(z) * psi(z)` for the kernel named by [`Self::certificate_kernel`],
    /// and convexity in [`Self::convexity_direction`] follows when
    /// `Re p > 0` on the disk.
    ///
    /// `HalfPlane`: `p = a * quad(nu1)/(1 - z^2 e^{2imu}) + b * (1 - z^2 e^{2imu})/quad(nu2)`.
    /// `Log`: the same shape with both quadratics at `nu2`.
    pub fn p_series(&self, order: usize) -> Result<PowerSeries> {
        self.validate()?;
        let omsq = self.one_minus_square(order);
        let (nu_first, nu_second) = match self.family {
            BlendFamily::HalfPlane => (self.nu1, self.nu2),
            BlendFamily::Log => (self.nu2, self.nu2),
        };
        let first = self.quad_poly(nu_first, order).div(&omsq)?;
        let second = omsq.div(&self.quad_poly(nu_second, order))?;
        first
            .scale(self.a.into())
            .add(&second.scale(self.b.into()))
    }

    /// Kernel whose psi divides the target derivative in the `p * psi`
    /// factorization.
    pub fn certificate_kernel(&self) -> KernelParams {
        match self.family {
            BlendFamily::HalfPlane => {
                // 1 - z^2 e^{2 i mu} is the quadratic of (mu + pi/2, pi/2)
                KernelParams::new(self.mu + std::f64::consts::FRAC_PI_2, std::f64::consts::FRAC_PI_2)
            }
            BlendFamily::Log => KernelParams::new(self.mu, self.nu2),
        }
    }

    /// Shear constant pairing with this target: `+e^{-2 i mu}` for the
    /// half-plane family, `-e^{-2 i mu}` for the log family.
    pub fn shear_constant(&self) -> Complex64 {
        let c = Complex64::from_polar(1.0, -2.0 * self.mu);
        match self.family {
            BlendFamily::HalfPlane => c,
            BlendFamily::Log => -c,
        }
    }

    /// Direction of convexity the construction guarantees for the sheared
    /// mapping: `-(mu + pi/2)` for the half-plane family, `-mu` for the log
    /// family (the log target's image is a plane minus two horizontal slits
    /// after rotation by `e^{-i mu}`, convex exactly along that line).
    pub fn convexity_direction(&self) -> f64 {
        match self.family {
            BlendFamily::HalfPlane => -(self.mu + std::f64::consts::FRAC_PI_2),
            BlendFamily::Log => -self.mu,
        }
    }
}

/// Checks `Re p > 0` on the grid. Pass demands a margin above
/// [`POSITIVE_REAL_TOL`]; the witness is the grid point with minimal real part.
pub fn positive_real_part(p: &PowerSeries, grid: &Grid) -> Result<CheckReport> {
    let values = p.evaluate_many(grid.points())?;
    let (min_re, idx) = parallel::min_indexed(values.len(), |i| values[i].re);
    let tail = p.tail_bound(grid.max_radius());
    let witness = grid.point(idx);
    if min_re > POSITIVE_REAL_TOL {
        Ok(CheckReport::pass(min_re, POSITIVE_REAL_TOL, tail).with_witness(witness))
    } else {
        Ok(CheckReport::fail(min_re, witness, POSITIVE_REAL_TOL, tail))
    }
}
