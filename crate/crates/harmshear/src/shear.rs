//! Harmonic mappings and the shear construction.
//!
//! A planar harmonic mapping is `f = h + conj(g)` with `h`, `g` analytic on
//! the disk; it is sense-preserving exactly where the dilatation
//! `omega = g'/h'` satisfies |omega| < 1. The shear construction runs the
//! classical argument backwards: prescribe an analytic target `t = h + c g`
//! (with a unimodular constant `c` chosen by convention) together with a
//! dilatation, then solve
//!
//! ```text
//! h' = t' / (1 + c omega),      g' = omega h'
//! ```
//!
//! and integrate. When `t` is univalent and convex in an appropriate
//! direction, the resulting `f` inherits univalence; the verification layers
//! check exactly that.
//!
//! Two conventions for `c` appear downstream: `-e^{2 i phi}` when the target
//! is convex in the direction `phi` ([`direction_constant`]), and
//! `+e^{-2 i mu}` when combining conjugate-weight shears of a common kernel
//! antiderivative ([`conjugate_constant`]).

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::series::PowerSeries;

/// Slack allowed when testing `h(0) = 0`, `h'(0) = 1`, `g(0) = 0`.
pub const NORMALIZATION_TOL: f64 = 1e-9;

/// A harmonic mapping `f = h + conj(g)` stored as two series of equal order.
#[derive(Clone, Debug)]
pub struct HarmonicMapping {
    h: PowerSeries,
    g: PowerSeries,
}

impl HarmonicMapping {
    pub fn new(h: PowerSeries, g: PowerSeries) -> Result<Self> {
        if h.order() != g.order() {
            return Err(Error::OrderMismatch {
                left: h.order(),
                right: g.order(),
            });
        }
        Ok(Self { h, g })
    }

    /// Analytic part.
    pub fn h(&self) -> &PowerSeries {
        &self.h
    }

    /// Co-analytic part (stored unconjugated).
    pub fn g(&self) -> &PowerSeries {
        &self.g
    }

    pub fn order(&self) -> usize {
        self.h.order()
    }

    /// `f(z) = h(z) + conj(g(z))`.
    pub fn evaluate(&self, z: Complex64) -> Result<Complex64> {
        Ok(self.h.evaluate(z)? + self.g.evaluate(z)?.conj())
    }

    /// Pointwise images of many points; parallel when the feature is on.
    pub fn evaluate_many(&self, points: &[Complex64]) -> Result<Vec<Complex64>> {
        let hv = self.h.evaluate_many(points)?;
        let gv = self.g.evaluate_many(points)?;
        Ok(hv
            .into_iter()
            .zip(gv)
            .map(|(a, b)| a + b.conj())
            .collect())
    }

    /// The analytic function `h + c g` (for shear round-trips and
    /// direction-convexity checks).
    pub fn analytic_combination(&self, c: Complex64) -> PowerSeries {
        self.h
            .add(&self.g.scale(c))
            .expect("h and g share an order by construction")
    }

    /// Scales the whole mapping: `c f = c h + conj(conj(c) g)`.
    pub fn scale(&self, c: Complex64) -> Self {
        Self {
            h: self.h.scale(c),
            g: self.g.scale(c.conj()),
        }
    }

    /// `h(0) = 0`, `h'(0) = 1`, `g(0) = 0` within [`NORMALIZATION_TOL`].
    /// (`g'(0)` is deliberately unconstrained: dilatations need not vanish
    /// at the origin.)
    pub fn is_normalized(&self) -> bool {
        self.h.coeff(0).norm() <= NORMALIZATION_TOL
            && (self.h.coeff(1) - Complex64::ONE).norm() <= NORMALIZATION_TOL
            && self.g.coeff(0).norm() <= NORMALIZATION_TOL
    }

    /// Truncation tail carried by |f| at radius `r` (tails of both parts).
    pub fn tail_bound(&self, r: f64) -> f64 {
        self.h.tail_bound(r) + self.g.tail_bound(r)
    }
}

/// Dilatations the shear accepts, all with sup |omega| <= 1 on the disk.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum DilatationSpec {
    /// `omega(z) = coefficient * z^degree`.
    Monomial { coefficient: Complex64, degree: u32 },
    /// `omega(z) = value`, |value| < 1.
    Constant { value: Complex64 },
    /// `omega(z) = scale * (z + zero) / (1 + conj(zero) z)`, a disk
    /// automorphism times a scale.
    Blaschke { zero: Complex64, scale: Complex64 },
}

impl DilatationSpec {
    pub fn validate(&self) -> Result<()> {
        let bad = |reason: &str| Error::InvalidDilatation {
            reason: reason.to_string(),
        };
        match self {
            DilatationSpec::Monomial {
                coefficient,
                degree,
            } => {
                if !coefficient.is_finite() {
                    return Err(bad("coefficient is not finite"));
                }
                if *degree == 0 {
                    if coefficient.norm() >= 1.0 {
                        return Err(bad("constant dilatation needs |value| < 1"));
                    }
                } else if coefficient.norm() > 1.0 {
                    return Err(bad("monomial dilatation needs |coefficient| <= 1"));
                }
                Ok(())
            }
            DilatationSpec::Constant { value } => {
                if !value.is_finite() || value.norm() >= 1.0 {
                    return Err(bad("constant dilatation needs |value| < 1"));
                }
                Ok(())
            }
            DilatationSpec::Blaschke { zero, scale } => {
                if !zero.is_finite() || !scale.is_finite() {
                    return Err(bad("Blaschke parameters must be finite"));
                }
                if zero.norm() >= 1.0 {
                    return Err(bad("Blaschke zero must lie inside the disk"));
                }
                if scale.norm() > 1.0 {
                    return Err(bad("Blaschke scale needs |scale| <= 1"));
                }
                Ok(())
            }
        }
    }

    /// Supremum of |omega| over the open disk.
    pub fn sup_modulus(&self) -> f64 {
        match self {
            DilatationSpec::Monomial { coefficient, .. } => coefficient.norm(),
            DilatationSpec::Constant { value } => value.norm(),
            DilatationSpec::Blaschke { scale, .. } => scale.norm(),
        }
    }

    pub fn evaluate(&self, z: Complex64) -> Complex64 {
        match self {
            DilatationSpec::Monomial {
                coefficient,
                degree,
            } => coefficient * z.powu(*degree),
            DilatationSpec::Constant { value } => *value,
            DilatationSpec::Blaschke { zero, scale } => {
                scale * (z + zero) / (Complex64::ONE + zero.conj() * z)
            }
        }
    }

    /// Taylor coefficients at the given order. Monomial degrees at or beyond
    /// the order truncate to the zero series, like every other high term.
    pub fn series(&self, order: usize) -> PowerSeries {
        match self {
            DilatationSpec::Monomial {
                coefficient,
                degree,
            } => PowerSeries::monomial(order, *degree as usize, *coefficient),
            DilatationSpec::Constant { value } => PowerSeries::constant(order, *value),
            DilatationSpec::Blaschke { zero, scale } => {
                let numer = PowerSeries::from_polynomial(order, &[*zero, Complex64::ONE])
                    .expect("finite coefficients");
                let denom = PowerSeries::from_polynomial(order, &[Complex64::ONE, zero.conj()])
                    .expect("finite coefficients");
                numer.div(&denom).expect("denominator is 1 at 0").scale(*scale)
            }
        }
    }
}

/// Shear constant for a target convex in the direction `phi`: `-e^{2 i phi}`.
pub fn direction_constant(phi: f64) -> Complex64 {
    -Complex64::from_polar(1.0, 2.0 * phi)
}

/// Shear constant for conjugate-weight combinations sharing a kernel
/// antiderivative: `+e^{-2 i mu}`.
pub fn conjugate_constant(mu: f64) -> Complex64 {
    Complex64::from_polar(1.0, -2.0 * mu)
}

/// Everything the shear construction needs: a normalized analytic target,
/// the convention constant `c`, and the dilatation.
#[derive(Clone, Debug)]
pub struct ShearSpec {
    pub target: PowerSeries,
    pub constant: Complex64,
    pub dilatation: DilatationSpec,
}

impl ShearSpec {
    pub fn new(target: PowerSeries, constant: Complex64, dilatation: DilatationSpec) -> Self {
        Self {
            target,
            constant,
            dilatation,
        }
    }
}

/// Solves `h + c g = target`, `g' = omega h'` for the mapping `h + conj(g)`.
///
/// The target must be normalized (`t(0) = 0`, `t'(0) = 1`). The returned
/// mapping satisfies the same normalization, and reconstructing
/// `h + c g` recovers the target to floating-point accuracy at every stored
/// coefficient.
pub fn shear_construct(spec: &ShearSpec) -> Result<HarmonicMapping> {
    let t = &spec.target;
    if t.coeff(0).norm() > NORMALIZATION_TOL
        || (t.coeff(1) - Complex64::ONE).norm() > NORMALIZATION_TOL
    {
        return Err(Error::TargetNotNormalized);
    }
    spec.dilatation.validate()?;

    let order = t.order();
    let omega = spec.dilatation.series(order);
    let denom = PowerSeries::one(order).add(&omega.scale(spec.constant))?;
    if denom.coeff(0).norm() < 1e-9 {
        return Err(Error::InvalidDilatation {
            reason: format!(
                "1 + c omega(0) = {} is too close to zero for the shear to be solvable",
                denom.coeff(0)
            ),
        });
    }
    let h_prime = t.derivative().div(&denom)?;
    let g_prime = omega.mul(&h_prime)?;
    HarmonicMapping::new(h_prime.integral(), g_prime.integral())
}

/// The dilatation `g'/h'` of a mapping, as a quotient series. Errors when
/// `h'(0)` vanishes (the quotient has no Taylor expansion there).
///
/// Quotient series inherit poles from `h'`'s zeros anywhere in the plane, so
/// prefer evaluating `g'` and `h'` separately and dividing *values* when only
/// pointwise moduli are needed.
pub fn dilatation_of(f: &HarmonicMapping) -> Result<PowerSeries> {
    let hp = f.h().derivative();
    if hp.coeff(0).norm() < 1e-12 {
        return Err(Error::DegenerateAtOrigin);
    }
    f.g().derivative().div(&hp)
}
