//! Weighted combinations of harmonic mappings.
//!
//! Two normalized mappings `f_k = h_k + conj(g_k)` combine with a complex
//! weight `eta` as
//!
//! ```text
//! h = eta h_1 + (1 - eta) h_2
//! g = eta g_1 + (1 - eta) g_2          (same-parameter mode)
//! g = conj(eta) g_1 + (1 - conj(eta)) g_2   (conjugate-parameter mode)
//! ```
//!
//! Same-parameter combinations of shears sharing one target are again shears
//! of that target, with a dilatation given in closed form by
//! [`combined_dilatation`]. The scale `lambda` enters when the second map is
//! a `lambda`-multiple of a normalized shear (so `h_2'(0) = lambda`).
//!
//! The module also provides:
//! - [`eta_bound`]: the sharp |eta| radius inside which every same-parameter
//!   combination of shears with dilatation bounds `alpha_1`, `alpha_2` stays
//!   locally univalent;
//! - [`sharpness_witness`]: the boundary expression showing that radius
//!   cannot be enlarged;
//! - [`herglotz_decomposition_check`]: the positive-kernel decomposition of
//!   the combined dilatation's Cayley transform;
//! - [`LemmaIdentityScan`]: the pointwise identity certifying convexity of
//!   conjugate-parameter combinations of kernel shears.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::grid::Grid;
use crate::kernels::KernelParams;
use crate::parallel;
use crate::report::CheckReport;
use crate::series::PowerSeries;
use crate::shear::{conjugate_constant, HarmonicMapping, NORMALIZATION_TOL};

/// Residual allowed when checking algebraic identities pointwise.
pub const IDENTITY_TOL: f64 = 1e-9;

/// Weights handed to [`combine_multi`] must sum to 1 within this.
pub const WEIGHT_SUM_TOL: f64 = 1e-12;

/// Coefficient residual above which two mappings are rejected as *not* being
/// shears of the expected kernel target (honest shears sit at roundoff).
pub const CONVENTION_TOL: f64 = 1e-8;

/// How the co-analytic parts are weighted.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CombinationMode {
    /// `g = eta g_1 + (1 - eta) g_2`; preserves "shear of a common target".
    SameParameter,
    /// `g = conj(eta) g_1 + (1 - conj(eta)) g_2`; preserves convexity of
    /// conjugate-constant kernel shears.
    ConjugateParameter,
}

/// A combination request. `lambda` defaults to 1; set it when `f2` is the
/// `lambda`-scaled member (its normalization is then `h_2'(0) = lambda`).
#[derive(Clone, Copy, Debug)]
pub struct CombinationSpec<'a> {
    pub f1: &'a HarmonicMapping,
    pub f2: &'a HarmonicMapping,
    pub eta: Complex64,
    pub mode: CombinationMode,
    pub lambda: f64,
}

impl<'a> CombinationSpec<'a> {
    pub fn new(
        f1: &'a HarmonicMapping,
        f2: &'a HarmonicMapping,
        eta: Complex64,
        mode: CombinationMode,
    ) -> Self {
        Self {
            f1,
            f2,
            eta,
            mode,
            lambda: 1.0,
        }
    }

    pub fn with_lambda(mut self, lambda: f64) -> Self {
        self.lambda = lambda;
        self
    }
}

fn check_first_normalized(f: &HarmonicMapping) -> Result<()> {
    if f.is_normalized() {
        Ok(())
    } else {
        Err(Error::NotNormalized)
    }
}

fn check_second_normalized(f: &HarmonicMapping, lambda: f64) -> Result<()> {
    let h1 = f.h().coeff(1);
    let scaled_ok = (h1 - Complex64::from(lambda)).norm() <= NORMALIZATION_TOL;
    if f.h().coeff(0).norm() <= NORMALIZATION_TOL
        && f.g().coeff(0).norm() <= NORMALIZATION_TOL
        && (f.is_normalized() || scaled_ok)
    {
        Ok(())
    } else {
        Err(Error::NotNormalized)
    }
}

/// Forms the weighted combination.
pub fn combine(spec: &CombinationSpec) -> Result<HarmonicMapping> {
    check_first_normalized(spec.f1)?;
    check_second_normalized(spec.f2, spec.lambda)?;
    let eta = spec.eta;
    let one_minus = Complex64::ONE - eta;
    let h = spec
        .f1
        .h()
        .scale(eta)
        .add(&spec.f2.h().scale(one_minus))?;
    let (w1, w2) = match spec.mode {
        CombinationMode::SameParameter => (eta, one_minus),
        CombinationMode::ConjugateParameter => (eta.conj(), Complex64::ONE - eta.conj()),
    };
    let g = spec.f1.g().scale(w1).add(&spec.f2.g().scale(w2))?;
    HarmonicMapping::new(h, g)
}

/// Real-weight combination of any number of normalized mappings
/// (same-parameter mode); weights must sum to 1.
pub fn combine_multi(maps: &[HarmonicMapping], weights: &[f64]) -> Result<HarmonicMapping> {
    if maps.is_empty() || maps.len() != weights.len() {
        return Err(Error::LengthMismatch {
            expected: maps.len(),
            got: weights.len(),
        });
    }
    let sum: f64 = weights.iter().sum();
    if (sum - 1.0).abs() > WEIGHT_SUM_TOL {
        return Err(Error::WeightSum {
            sum,
            tol: WEIGHT_SUM_TOL,
        });
    }
    let mut h = PowerSeries::zero(maps[0].order());
    let mut g = h.clone();
    for (f, &t) in maps.iter().zip(weights) {
        check_first_normalized(f)?;
        h = h.add(&f.h().scale(t.into()))?;
        g = g.add(&f.g().scale(t.into()))?;
    }
    HarmonicMapping::new(h, g)
}

/// Dilatation of a same-parameter combination of two shears of one target
/// (convex in the direction `phi`, shear constant `-e^{2 i phi}`):
///
/// ```text
/// omega = [eta w1 (1 - e^{2 i phi} w2) + lambda (1 - eta) w2 (1 - e^{2 i phi} w1)]
///       / [eta      (1 - e^{2 i phi} w2) + lambda (1 - eta)      (1 - e^{2 i phi} w1)]
/// ```
///
/// Returned as a quotient *series*: good for coefficient identities near the
/// origin, but remember quotients may hide poles just outside the disk —
/// univalence verdicts should evaluate numerator and denominator values
/// instead.
pub fn combined_dilatation(
    omega1: &PowerSeries,
    omega2: &PowerSeries,
    eta: Complex64,
    lambda: f64,
    phi: f64,
) -> Result<PowerSeries> {
    let order = omega1.order();
    let e2 = Complex64::from_polar(1.0, 2.0 * phi);
    let one = PowerSeries::one(order);
    let u1 = one.sub(&omega1.scale(e2))?;
    let u2 = one.sub(&omega2.scale(e2))?;
    let c1 = eta;
    let c2 = Complex64::from(lambda) * (Complex64::ONE - eta);
    let num = omega1.mul(&u2)?.scale(c1).add(&omega2.mul(&u1)?.scale(c2))?;
    let den = u2.scale(c1).add(&u1.scale(c2))?;
    if den.coeff(0).norm() < 1e-12 {
        return Err(Error::SingularCombination);
    }
    num.div(&den)
}

/// Dilatation of a conjugate-parameter combination, directly from the parts:
/// `(conj(eta) g_1' + (1 - conj(eta)) g_2') / (eta h_1' + (1 - eta) h_2')`.
pub fn conjugate_combined_dilatation(
    f1: &HarmonicMapping,
    f2: &HarmonicMapping,
    eta: Complex64,
) -> Result<PowerSeries> {
    let ec = eta.conj();
    let num = f1
        .g()
        .derivative()
        .scale(ec)
        .add(&f2.g().derivative().scale(Complex64::ONE - ec))?;
    let den = f1
        .h()
        .derivative()
        .scale(eta)
        .add(&f2.h().derivative().scale(Complex64::ONE - eta))?;
    if den.coeff(0).norm() < 1e-12 {
        return Err(Error::SingularCombination);
    }
    num.div(&den)
}

/// Outcome of [`herglotz_decomposition_check`].
#[derive(Clone, Debug)]
pub struct HerglotzReport {
    /// Pointwise residual of the decomposition identity.
    pub report: CheckReport,
    /// The two decomposition weights `[w_1, w_2]`.
    pub weights: [f64; 2],
    /// Both weights non-negative — exactly then does positivity of the
    /// parts transfer to the combination.
    pub weights_nonnegative: bool,
}

/// Verifies the decomposition (real `eta`, `phi = 0`)
///
/// ```text
/// Re (1 + W)/(1 - W) = w_1 Re (1 + w1)/(1 - w1) + w_2 Re (1 + w2)/(1 - w2)
/// ```
///
/// where `W` is the combined dilatation and
/// `w_1 = eta / (eta + lambda(1 - eta))`,
/// `w_2 = lambda(1 - eta) / (eta + lambda(1 - eta))`.
/// The identity itself holds for *any* admissible weights; the sign flag
/// records whether it transports positivity.
pub fn herglotz_decomposition_check(
    omega1: &PowerSeries,
    omega2: &PowerSeries,
    eta: f64,
    lambda: f64,
    grid: &Grid,
) -> Result<HerglotzReport> {
    let denom = eta + lambda * (1.0 - eta);
    if denom.abs() < 1e-12 {
        return Err(Error::SingularCombination);
    }
    let weights = [eta / denom, lambda * (1.0 - eta) / denom];

    let o1 = omega1.evaluate_many(grid.points())?;
    let o2 = omega2.evaluate_many(grid.points())?;
    let cayley = |w: Complex64| ((Complex64::ONE + w) / (Complex64::ONE - w)).re;

    let residual_at = |i: usize| -> f64 {
        let (a, b) = (o1[i], o2[i]);
        let num = a * (Complex64::ONE - b) * eta + b * (Complex64::ONE - a) * (lambda * (1.0 - eta));
        let den = (Complex64::ONE - b) * eta + (Complex64::ONE - a) * (lambda * (1.0 - eta));
        if den.norm() < 1e-14 {
            return f64::INFINITY;
        }
        let w = num / den;
        if (Complex64::ONE - w).norm() < 1e-14 {
            return f64::INFINITY;
        }
        (cayley(w) - weights[0] * cayley(a) - weights[1] * cayley(b)).abs()
    };

    let (max_res, idx) = parallel::max_indexed(o1.len(), residual_at);
    let tail = omega1.tail_bound(grid.max_radius()) + omega2.tail_bound(grid.max_radius());
    let witness = grid.point(idx);
    let report = if max_res <= IDENTITY_TOL {
        CheckReport::pass(max_res, IDENTITY_TOL, tail).with_witness(witness)
    } else {
        CheckReport::fail(max_res, witness, IDENTITY_TOL, tail)
    };
    Ok(HerglotzReport {
        report,
        weights,
        weights_nonnegative: weights[0] >= 0.0 && weights[1] >= 0.0,
    })
}

/// The sharp univalence radius for `eta`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EtaBound {
    pub alpha1: f64,
    pub alpha2: f64,
    pub bound: f64,
}

/// Largest |eta| for which *every* same-parameter combination of shears with
/// dilatation bounds `|omega_1| <= alpha_1 z`-type and `alpha_2` stays
/// sense-preserving:
///
/// ```text
/// (1 - alpha_1)(1 - alpha_2) / (2 (alpha_1 + alpha_2))
/// ```
///
/// Computed via the expanded numerator `1 - (a1 + a2) + a1 a2`, which keeps
/// benchmark pairs like (1/5, 1/7) exactly on their rational value in f64.
pub fn eta_bound(alpha1: f64, alpha2: f64) -> Result<EtaBound> {
    for value in [alpha1, alpha2] {
        if !(value > 0.0 && value < 1.0) || !value.is_finite() {
            return Err(Error::AlphaOutOfRange { value });
        }
    }
    let s = alpha1 + alpha2;
    let bound = (1.0 - s + alpha1 * alpha2) / (2.0 * s);
    Ok(EtaBound {
        alpha1,
        alpha2,
        bound,
    })
}

/// Jacobian-sign expression at the extreme configuration
/// `omega_1 = alpha z`, `omega_2 = -alpha z`, real weight `eta`, evaluated on
/// the real axis:
///
/// ```text
/// |1 - w1|^2 (1 - |w2|^2) + 2 Re( eta (w1 - w2)(1 - conj w1)(1 - conj w2) )
/// ```
///
/// Non-negative on `(0, 1)` exactly while `eta` respects [`eta_bound`];
/// at `eta = -(1 - alpha)^2 / (4 alpha)` it factors as
/// `alpha^2 (1 - z^2 a^{-2})(...)` touching zero at `z -> 1`, and any more
/// negative `eta` drives it negative — the bound is sharp.
pub fn sharpness_witness(alpha: f64, eta: f64, z: f64) -> f64 {
    let w1 = Complex64::from(alpha * z);
    let w2 = -w1;
    let quad = (Complex64::ONE - w1).norm_sqr() * (1.0 - w2.norm_sqr());
    let cross = Complex64::from(eta)
        * (w1 - w2)
        * (Complex64::ONE - w1.conj())
        * (Complex64::ONE - w2.conj());
    quad + 2.0 * cross.re
}

/// Deterministic sample set covering the closed eta-disk of the given radius:
/// ten rings of ten angles plus the four cardinal boundary points (skipping
/// bit-exact duplicates).
pub fn eta_disk_samples(radius: f64) -> Vec<Complex64> {
    let mut out = Vec::with_capacity(104);
    for i in 1..=10u32 {
        let r = radius * i as f64 / 10.0;
        for j in 0..10u32 {
            let theta = 2.0 * std::f64::consts::PI * j as f64 / 10.0;
            out.push(Complex64::from_polar(r, theta));
        }
    }
    for cardinal in [
        Complex64::new(radius, 0.0),
        Complex64::new(-radius, 0.0),
        Complex64::new(0.0, radius),
        Complex64::new(0.0, -radius),
    ] {
        if !out.contains(&cardinal) {
            out.push(cardinal);
        }
    }
    out
}

/// Pointwise data for the conjugate-combination identity, precomputed once so
/// that many `eta` values can be checked cheaply.
///
/// Both inputs must be conjugate-constant shears of the *same* kernel
/// antiderivative: `h_k + e^{-2 i mu} g_k = Phi_{mu,nu}`. Construction
/// verifies this coefficientwise and rejects anything else.
pub struct LemmaIdentityScan {
    constant: Complex64,
    points: Vec<Complex64>,
    h1: Vec<Complex64>,
    h2: Vec<Complex64>,
    g1: Vec<Complex64>,
    g2: Vec<Complex64>,
    psi: Vec<Complex64>,
    ratio1: Vec<Complex64>,
    ratio2: Vec<Complex64>,
    /// Max dilatation modulus of each input on the grid.
    pub omega_sup: [f64; 2],
    tail: f64,
}

/// Outcome of one `eta` check against a [`LemmaIdentityScan`].
#[derive(Clone, Debug)]
pub struct LemmaIdentityReport {
    /// Pointwise residual of the identity
    /// `(h' - e^{-2 i mu} g') / psi = Re(eta) r_1 + (1 - Re(eta)) r_2`.
    pub identity: CheckReport,
    /// Minimum over the grid of `Re` of the right-hand side — positivity here
    /// is what makes the combination convex in the `mu`-direction.
    pub min_re_rhs: f64,
    pub min_re_rhs_witness: Complex64,
    /// Worst-case lower bound from the dilatation moduli, when they are small
    /// enough for the bound to apply (`sup|omega_1| < 1/5`,
    /// `sup|omega_2| < 1/7`, `|Re eta| <= 1`). For `Re eta <= 0` this is the
    /// `(3/4)(1 + Re eta)` expression.
    pub herglotz_lower_bound: Option<f64>,
}

impl LemmaIdentityScan {
    pub fn new(
        f1: &HarmonicMapping,
        f2: &HarmonicMapping,
        kernel: KernelParams,
        grid: &Grid,
    ) -> Result<Self> {
        let order = f1.order().max(f2.order());
        let constant = conjugate_constant(kernel.mu);
        let psi_series = kernel.psi_series(order);

        // Reject inputs that are not shears of this kernel's antiderivative.
        let mut residual = 0.0f64;
        for f in [f1, f2] {
            let slice = f.analytic_combination(constant).derivative();
            for k in 0..order.saturating_sub(1) {
                residual = residual.max((slice.coeff(k) - psi_series.coeff(k)).norm());
            }
        }
        if residual > CONVENTION_TOL {
            return Err(Error::WrongShearConvention { residual });
        }

        let points = grid.points().to_vec();
        let h1p = f1.h().derivative();
        let g1p = f1.g().derivative();
        let h2p = f2.h().derivative();
        let g2p = f2.g().derivative();
        let h1 = h1p.evaluate_many(&points)?;
        let g1 = g1p.evaluate_many(&points)?;
        let h2 = h2p.evaluate_many(&points)?;
        let g2 = g2p.evaluate_many(&points)?;
        // psi evaluated through the same truncated route as the parts, so the
        // truncation error cancels in the ratios below instead of dominating
        // the identity residual near the boundary. Derivatives leave their top
        // slot empty, so drop psi's top coefficient to match: at high order
        // and radius that one term alone would swamp the identity tolerance.
        let psi = psi_series
            .resized(order.saturating_sub(1))
            .evaluate_many(&points)?;

        let n = points.len();
        let ratio = |h: &[Complex64], g: &[Complex64], i: usize| {
            (h[i] - constant * g[i]) / (h[i] + constant * g[i])
        };
        let ratio1: Vec<_> = (0..n).map(|i| ratio(&h1, &g1, i)).collect();
        let ratio2: Vec<_> = (0..n).map(|i| ratio(&h2, &g2, i)).collect();

        let sup = |h: &[Complex64], g: &[Complex64]| {
            parallel::max_indexed(n, |i| g[i].norm() / h[i].norm()).0
        };
        let omega_sup = [sup(&h1, &g1), sup(&h2, &g2)];

        let r = grid.max_radius();
        let tail = h1p
            .tail_bound(r)
            .max(g1p.tail_bound(r))
            .max(h2p.tail_bound(r))
            .max(g2p.tail_bound(r))
            .max(psi_series.tail_bound(r));

        Ok(Self {
            constant,
            points,
            h1,
            h2,
            g1,
            g2,
            psi,
            ratio1,
            ratio2,
            omega_sup,
            tail,
        })
    }

    /// Checks the identity and the positivity margin for one weight.
    pub fn check(&self, eta: Complex64) -> LemmaIdentityReport {
        let sigma = eta.re;
        let ec = eta.conj();
        let n = self.points.len();
        let c = self.constant;

        let rhs_at = |i: usize| {
            self.ratio1[i] * sigma + self.ratio2[i] * (1.0 - sigma)
        };
        let (max_res, res_idx) = parallel::max_indexed(n, |i| {
            let hp = self.h1[i] * eta + self.h2[i] * (Complex64::ONE - eta);
            let gp = self.g1[i] * ec + self.g2[i] * (Complex64::ONE - ec);
            let lhs = (hp - c * gp) / self.psi[i];
            (lhs - rhs_at(i)).norm()
        });
        let (min_re, re_idx) = parallel::min_indexed(n, |i| rhs_at(i).re);

        let identity = if max_res <= IDENTITY_TOL {
            CheckReport::pass(max_res, IDENTITY_TOL, self.tail).with_witness(self.points[res_idx])
        } else {
            CheckReport::fail(max_res, self.points[res_idx], IDENTITY_TOL, self.tail)
        };

        let herglotz_lower_bound = if self.omega_sup[0] < 0.2
            && self.omega_sup[1] < 1.0 / 7.0
            && sigma.abs() <= 1.0
        {
            // worst Re of each Cayley factor over its modulus range
            let r1 = if sigma >= 0.0 { 2.0 / 3.0 } else { 1.5 };
            Some(sigma * r1 + (1.0 - sigma) * 0.75)
        } else {
            None
        };

        LemmaIdentityReport {
            identity,
            min_re_rhs: min_re,
            min_re_rhs_witness: self.points[re_idx],
            herglotz_lower_bound,
        }
    }
}

/// One-shot wrapper around [`LemmaIdentityScan`] for a single weight.
pub fn lemma_identity_check(
    f1: &HarmonicMapping,
    f2: &HarmonicMapping,
    eta: Complex64,
    kernel: KernelParams,
    grid: &Grid,
) -> Result<LemmaIdentityReport> {
    Ok(LemmaIdentityScan::new(f1, f2, kernel, grid)?.check(eta))
}
