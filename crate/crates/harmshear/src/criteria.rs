//! Analytic verification: local univalence, directional convexity, and the
//! coefficient-scaling operators that upgrade starlikeness to convexity.
//!
//! Directional convexity of an analytic `phi` is certified by a
//! positive-real-part criterion: `phi` maps the disk onto a domain convex in
//! the direction `gamma` if for *some* parameter pair `(mu, nu)`
//!
//! ```text
//! E(z) = Re{ e^{i(mu-gamma)} (1 - 2 z e^{-i mu} cos nu + z^2 e^{-2 i mu}) phi'(z) } >= 0
//! ```
//!
//! on the disk. The check scans a fixed candidate grid; because the criterion
//! is existential, exhausting the grid without a certificate yields
//! `Inconclusive`, never `Fail`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::grid::Grid;
use crate::parallel;
use crate::report::{CheckReport, Verdict};
use crate::series::PowerSeries;
use crate::shear::{direction_constant, HarmonicMapping};

/// The dilatation must stay below `1 -` this margin for a univalence pass.
pub const UNIVALENCE_TOL: f64 = 1e-9;

/// How far below zero the convexity expression may dip before a candidate is
/// rejected (absorbs roundoff on certificates that are exactly zero somewhere).
pub const ROYSTER_ZEIGLER_TOL: f64 = 1e-9;

/// Candidate mus in the default grid.
pub const CANDIDATE_MUS: usize = 24;
/// Candidate nus in the default grid (endpoints 0 and pi both included:
/// the two give genuinely different quadratics).
pub const CANDIDATE_NUS: usize = 13;

/// Jacobian / dilatation bookkeeping behind a sense-preserving univalence
/// verdict. `report.extremal_value` is the max dilatation modulus.
#[derive(Clone, Debug)]
pub struct UnivalenceReport {
    pub report: CheckReport,
    pub min_jacobian: f64,
    pub max_dilatation: f64,
    pub jacobian_witness: Complex64,
    pub dilatation_witness: Complex64,
}

/// Local univalence via the Jacobian `|h'|^2 - |g'|^2`.
///
/// The dilatation modulus is evaluated as a pointwise *ratio of values*
/// `|g'(z)| / |h'(z)|`, never as a quotient series: quotients inherit poles
/// from zeros of `h'` anywhere in the plane, which can sit near the closed
/// disk and wreck the truncation.
pub fn check_local_univalence(f: &HarmonicMapping, grid: &Grid) -> Result<UnivalenceReport> {
    let hp = f.h().derivative();
    let gp = f.g().derivative();
    let hv = hp.evaluate_many(grid.points())?;
    let gv = gp.evaluate_many(grid.points())?;

    let (min_j, j_idx) = parallel::min_indexed(hv.len(), |i| hv[i].norm_sqr() - gv[i].norm_sqr());
    let (max_d, d_idx) = parallel::max_indexed(hv.len(), |i| {
        let h = hv[i].norm();
        if h == 0.0 {
            f64::INFINITY
        } else {
            gv[i].norm() / h
        }
    });

    let tail = hp.tail_bound(grid.max_radius()) + gp.tail_bound(grid.max_radius());
    let jacobian_witness = grid.point(j_idx);
    let dilatation_witness = grid.point(d_idx);

    let report = if min_j <= 0.0 {
        CheckReport::fail(max_d, jacobian_witness, UNIVALENCE_TOL, tail)
    } else if max_d >= 1.0 - UNIVALENCE_TOL {
        CheckReport::fail(max_d, dilatation_witness, UNIVALENCE_TOL, tail)
    } else {
        CheckReport::pass(max_d, UNIVALENCE_TOL, tail).with_witness(dilatation_witness)
    };

    Ok(UnivalenceReport {
        report,
        min_jacobian: min_j,
        max_dilatation: max_d,
        jacobian_witness,
        dilatation_witness,
    })
}

/// The default `(mu, nu)` candidate grid: 24 equispaced mus in `[0, 2 pi)`
/// crossed with 13 equispaced nus in `[0, pi]` inclusive.
pub fn default_candidates() -> Vec<(f64, f64)> {
    let mut out = Vec::with_capacity(CANDIDATE_MUS * CANDIDATE_NUS);
    for i in 0..CANDIDATE_MUS {
        let mu = 2.0 * std::f64::consts::PI * i as f64 / CANDIDATE_MUS as f64;
        for j in 0..CANDIDATE_NUS {
            let nu = std::f64::consts::PI * j as f64 / (CANDIDATE_NUS - 1) as f64;
            out.push((mu, nu));
        }
    }
    out
}

/// Result of the directional-convexity search. `certificate` is the first
/// candidate (in grid order) whose expression stayed nonnegative; on
/// `Inconclusive`, `report` records the best candidate's worst point.
#[derive(Clone, Debug)]
pub struct RoysterZeiglerReport {
    pub report: CheckReport,
    pub certificate: Option<(f64, f64)>,
    pub gamma: f64,
}

/// Scans `candidates` for one certifying that `phi` is convex in the
/// direction `gamma`. Short-circuits on the first success.
pub fn royster_zeigler_check(
    phi: &PowerSeries,
    gamma: f64,
    candidates: &[(f64, f64)],
    grid: &Grid,
) -> Result<RoysterZeiglerReport> {
    let dphi = phi.derivative();
    let dv = dphi.evaluate_many(grid.points())?;
    let points = grid.points();
    let tail = dphi.tail_bound(grid.max_radius());

    let mut best = f64::NEG_INFINITY;
    let mut best_idx = 0usize;
    for &(mu, nu) in candidates {
        let rot = Complex64::from_polar(1.0, -mu);
        let two_cos = 2.0 * nu.cos();
        let prefactor = Complex64::from_polar(1.0, mu - gamma);
        let (min_e, idx) = parallel::min_indexed(points.len(), |i| {
            let w = points[i] * rot;
            let quad = Complex64::ONE - w * two_cos + w * w;
            (prefactor * quad * dv[i]).re
        });
        if min_e >= -ROYSTER_ZEIGLER_TOL {
            return Ok(RoysterZeiglerReport {
                report: CheckReport::pass(min_e, ROYSTER_ZEIGLER_TOL, tail)
                    .with_witness(grid.point(idx)),
                certificate: Some((mu, nu)),
                gamma,
            });
        }
        if min_e > best {
            best = min_e;
            best_idx = idx;
        }
    }

    Ok(RoysterZeiglerReport {
        report: CheckReport::inconclusive(best, ROYSTER_ZEIGLER_TOL, tail)
            .with_witness(grid.point(best_idx)),
        certificate: None,
        gamma,
    })
}

/// Everything behind a convexity-in-one-direction verdict for a harmonic
/// mapping: sense-preserving univalence of `f` plus directional convexity of
/// its analytic slice `h - e^{2 i phi} g`.
#[derive(Clone, Debug)]
pub struct DirectionConvexityReport {
    pub direction: f64,
    pub univalence: UnivalenceReport,
    pub royster_zeigler: RoysterZeiglerReport,
    pub report: CheckReport,
}

/// Shear-theorem verification that `f` is univalent and convex in the
/// direction `phi`, searching the given candidates.
///
/// Verdicts: `Fail` only when univalence fails (that part is decisive);
/// `Inconclusive` when univalence holds but no candidate certifies the
/// directional convexity.
pub fn css_direction_check_with(
    f: &HarmonicMapping,
    phi: f64,
    candidates: &[(f64, f64)],
    grid: &Grid,
) -> Result<DirectionConvexityReport> {
    let univalence = check_local_univalence(f, grid)?;
    let slice = f.analytic_combination(direction_constant(phi));
    let royster_zeigler = royster_zeigler_check(&slice, phi, candidates, grid)?;

    let tail = univalence
        .report
        .tail_bound
        .max(royster_zeigler.report.tail_bound);
    let report = if univalence.report.failed() {
        CheckReport::fail(
            univalence.report.extremal_value,
            univalence
                .report
                .witness
                .expect("univalence failures carry a witness"),
            univalence.report.tolerance,
            tail,
        )
    } else {
        match royster_zeigler.report.verdict {
            Verdict::Pass => CheckReport {
                tail_bound: tail,
                ..royster_zeigler.report.clone()
            },
            _ => CheckReport {
                verdict: Verdict::Inconclusive,
                tail_bound: tail,
                ..royster_zeigler.report.clone()
            },
        }
    };

    Ok(DirectionConvexityReport {
        direction: phi,
        univalence,
        royster_zeigler,
        report,
    })
}

/// [`css_direction_check_with`] over the default candidate grid.
pub fn css_direction_check(
    f: &HarmonicMapping,
    phi: f64,
    grid: &Grid,
) -> Result<DirectionConvexityReport> {
    css_direction_check_with(f, phi, &default_candidates(), grid)
}

/// The coefficient-scaling operator `D^n`: `a_k -> k^n a_k`
/// (equivalently, applying `z d/dz` n times).
pub fn d_operator(s: &PowerSeries, n: u32) -> PowerSeries {
    PowerSeries::from_fn(s.order(), |k| s.coeff(k) * (k as f64).powi(n as i32))
        .expect("scaling finite coefficients stays finite")
}

/// Inverse of [`d_operator`]: `a_k -> a_k / k^n`. For `n >= 1` the constant
/// term must vanish (nothing maps onto it).
pub fn d_inverse(s: &PowerSeries, n: u32) -> Result<PowerSeries> {
    if n == 0 {
        return Ok(s.clone());
    }
    if s.coeff(0).norm() > 1e-12 {
        return Err(Error::ConstantTermNotZero);
    }
    PowerSeries::from_fn(s.order(), |k| {
        if k == 0 {
            Complex64::ZERO
        } else {
            s.coeff(k) / (k as f64).powi(n as i32)
        }
    })
}

/// Lifts a normalized mapping through the inverse coefficient operator:
/// `H = D^{-n} h`, `G = (-1)^n D^{-n} g`. When the source is starlike (of the
/// appropriate order), the lift is convex; this is the constructive side of
/// that theorem.
pub fn convexity_upgrade(f: &HarmonicMapping, n: u32) -> Result<HarmonicMapping> {
    if !f.is_normalized() {
        return Err(Error::NotNormalized);
    }
    let h = d_inverse(f.h(), n)?;
    let g = d_inverse(f.g(), n)?;
    let sign = if n % 2 == 1 {
        -Complex64::ONE
    } else {
        Complex64::ONE
    };
    HarmonicMapping::new(h, g.scale(sign))
}
