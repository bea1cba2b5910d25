//! Brute-force geometric verification on boundary polygons.
//!
//! Every analytic verdict in this crate has an independent cross-check here:
//! sample the image of a circle `|z| = r` densely, then interrogate the
//! resulting polygon directly — no series identities, no kernel theory.
//!
//! - [`injectivity_winding_check`]: no proper self-crossings, and winding
//!   number exactly 1 around interior probes (univalence);
//! - [`direction_convexity_oracle`]: after rotating the direction to
//!   horizontal, the vertex imaginary parts rise once and fall once
//!   (convexity in one direction);
//! - [`full_convexity_oracle`]: consecutive edge turns all share one sign;
//! - [`starlike_oracle`]: the argument seen from the origin is monotone and
//!   wraps exactly once.
//!
//! Verdicts are scale-free: tolerances are expressed relative to the polygon
//! diameter (for lengths) or its square (for cross products), so the same
//! polygon passes or fails regardless of global scaling, rotation, or the
//! vertex index origin. A polygon too degenerate to trust (zero diameter,
//! collapsed edges, origin on the boundary) yields `Inconclusive`, never a
//! silent pass.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::parallel;
use crate::report::CheckReport;
use crate::series::MAX_EVAL_RADIUS;
use crate::shear::HarmonicMapping;

/// Fewer vertices than this cannot meaningfully witness convexity.
pub const MIN_VERTICES: usize = 16;

/// Max truncation tail accepted when sampling a boundary circle; beyond this
/// the polygon would reflect series error, not geometry.
pub const BOUNDARY_TAIL_BUDGET: f64 = 1e-4;

/// Plateau tolerance for monotonicity runs, relative to the diameter.
pub const PLATEAU_TOL_SCALE: f64 = 1e-9;

/// Sign tolerance for cross products, relative to the squared diameter.
pub const CROSS_TOL_SCALE: f64 = 1e-12;

/// Tolerance on argument steps (radians) in the starlike check.
pub const ANGLE_TOL: f64 = 1e-9;

/// A closed polygon: vertex `k` connects to `k + 1` and the last wraps to the
/// first. Usually the image of a circle under a mapping, in which case
/// `sample_radius` records which one.
#[derive(Clone, Debug)]
pub struct BoundaryPolygon {
    vertices: Vec<Complex64>,
    pub sample_radius: Option<f64>,
}

impl BoundaryPolygon {
    pub fn from_vertices(vertices: Vec<Complex64>) -> Result<Self> {
        if vertices.len() < MIN_VERTICES {
            return Err(Error::TooFewVertices {
                got: vertices.len(),
                min: MIN_VERTICES,
            });
        }
        for (index, v) in vertices.iter().enumerate() {
            if !v.re.is_finite() || !v.im.is_finite() {
                return Err(Error::NonFiniteCoefficient { index });
            }
        }
        Ok(Self {
            vertices,
            sample_radius: None,
        })
    }

    pub fn vertices(&self) -> &[Complex64] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Bounding-box diagonal; the length scale for all tolerances.
    pub fn diameter(&self) -> f64 {
        let mut min = Complex64::new(f64::INFINITY, f64::INFINITY);
        let mut max = Complex64::new(f64::NEG_INFINITY, f64::NEG_INFINITY);
        for v in &self.vertices {
            min.re = min.re.min(v.re);
            min.im = min.im.min(v.im);
            max.re = max.re.max(v.re);
            max.im = max.im.max(v.im);
        }
        (max - min).norm()
    }

    /// The polygon rotated rigidly about the origin (for invariance tests).
    pub fn rotated(&self, angle: f64) -> Self {
        let rot = Complex64::from_polar(1.0, angle);
        Self {
            vertices: self.vertices.iter().map(|v| v * rot).collect(),
            sample_radius: self.sample_radius,
        }
    }

    /// The same cycle starting from a different vertex (for invariance tests).
    pub fn cycled(&self, shift: usize) -> Self {
        let n = self.vertices.len();
        let shift = shift % n;
        let mut vertices = Vec::with_capacity(n);
        vertices.extend_from_slice(&self.vertices[shift..]);
        vertices.extend_from_slice(&self.vertices[..shift]);
        Self {
            vertices,
            sample_radius: self.sample_radius,
        }
    }

    /// CSV dump (`re,im` header), one vertex per row, shortest round-trip
    /// float formatting.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("re,im\n");
        for v in &self.vertices {
            out.push_str(&format!("{},{}\n", v.re, v.im));
        }
        out
    }
}

/// Samples `f(radius e^{2 pi i k / samples})` into a polygon. Refuses radii
/// whose truncation tail exceeds [`BOUNDARY_TAIL_BUDGET`] — a verdict based
/// on such samples would test the truncation, not the mapping.
pub fn boundary_polyline(
    f: &HarmonicMapping,
    radius: f64,
    samples: usize,
) -> Result<BoundaryPolygon> {
    if samples < MIN_VERTICES {
        return Err(Error::TooFewVertices {
            got: samples,
            min: MIN_VERTICES,
        });
    }
    if !(radius > 0.0 && radius <= MAX_EVAL_RADIUS) {
        return Err(Error::RadiusTooLarge {
            radius,
            max: MAX_EVAL_RADIUS,
        });
    }
    let tail = f.tail_bound(radius);
    if tail > BOUNDARY_TAIL_BUDGET {
        return Err(Error::AccuracyLoss {
            tail,
            radius,
            budget: BOUNDARY_TAIL_BUDGET,
        });
    }
    let points: Vec<Complex64> = (0..samples)
        .map(|k| Complex64::from_polar(radius, 2.0 * std::f64::consts::PI * k as f64 / samples as f64))
        .collect();
    let vertices = f.evaluate_many(&points)?;
    let mut polygon = BoundaryPolygon::from_vertices(vertices)?;
    polygon.sample_radius = Some(radius);
    Ok(polygon)
}

/// Deterministic interior probe images: `f(0)` plus two rings of `angles`
/// points at `radius/2` and `radius`.
pub fn interior_probes(
    f: &HarmonicMapping,
    radius: f64,
    angles: usize,
) -> Result<Vec<Complex64>> {
    let mut points = vec![Complex64::ZERO];
    for r in [0.5 * radius, radius] {
        for j in 0..angles {
            let theta = 2.0 * std::f64::consts::PI * j as f64 / angles as f64;
            points.push(Complex64::from_polar(r, theta));
        }
    }
    f.evaluate_many(&points)
}

fn cross(a: Complex64, b: Complex64) -> f64 {
    a.re * b.im - a.im * b.re
}

fn orient(p: Complex64, q: Complex64, r: Complex64) -> f64 {
    cross(q - p, r - p)
}

/// Injectivity of the closed curve plus winding number 1 around each probe.
///
/// Crossing detection demands *proper* crossings with margin
/// `CROSS_TOL_SCALE * diameter^2` on all four orientation tests, so grazing
/// contacts below resolution do not fail the check. On a crossing failure,
/// `extremal_value` is the number of crossing pairs and the witness is the
/// first intersection point (lowest segment index pair); on a winding
/// failure it is the offending winding number and the witness is the probe.
/// Probes closer to a vertex than `1e-9 * diameter` are skipped as
/// unresolvable.
pub fn injectivity_winding_check(
    polygon: &BoundaryPolygon,
    probes: &[Complex64],
) -> CheckReport {
    let v = polygon.vertices();
    let n = v.len();
    let diam = polygon.diameter();
    if diam == 0.0 {
        return CheckReport::inconclusive(0.0, 0.0, 0.0);
    }
    let eps = CROSS_TOL_SCALE * diam * diam;
    let min_edge = (0..n)
        .map(|i| (v[(i + 1) % n] - v[i]).norm())
        .fold(f64::INFINITY, f64::min);
    if min_edge <= 1e-12 * diam {
        return CheckReport::inconclusive(min_edge / diam, eps, 0.0);
    }

    // first proper crossing per starting segment, then total count
    let per_segment: Vec<Option<(usize, Complex64)>> = parallel::map_collect(
        &(0..n).collect::<Vec<_>>(),
        |&i| {
            let (a, b) = (v[i], v[(i + 1) % n]);
            for j in i + 2..n {
                if i == 0 && j == n - 1 {
                    continue; // wrap-adjacent
                }
                let (c, d) = (v[j], v[(j + 1) % n]);
                let o1 = orient(a, b, c);
                let o2 = orient(a, b, d);
                let o3 = orient(c, d, a);
                let o4 = orient(c, d, b);
                let straddle =
                    |x: f64, y: f64| (x > eps && y < -eps) || (x < -eps && y > eps);
                if straddle(o1, o2) && straddle(o3, o4) {
                    let t = o3 / (o3 - o4);
                    return Some((j, a + (b - a) * t));
                }
            }
            None
        },
    );
    let crossings = per_segment.iter().filter(|c| c.is_some()).count();
    if let Some((_, witness)) = per_segment.iter().flatten().next() {
        return CheckReport::fail(crossings as f64, *witness, eps, 0.0);
    }

    // winding number around each probe by summing argument increments
    let mut max_deviation = 0.0f64;
    for &p in probes {
        let too_close = v.iter().any(|&w| (w - p).norm() <= 1e-9 * diam);
        if too_close {
            continue;
        }
        let total: f64 = (0..n)
            .map(|k| ((v[(k + 1) % n] - p) * (v[k] - p).conj()).arg())
            .sum();
        let winding = (total / (2.0 * std::f64::consts::PI)).round();
        if winding != 1.0 {
            return CheckReport::fail(winding, p, eps, 0.0);
        }
        max_deviation = max_deviation.max((total / (2.0 * std::f64::consts::PI) - 1.0).abs());
    }

    CheckReport::pass(max_deviation, eps, 0.0)
}

/// Convexity in the direction `gamma`: after rotating by `e^{-i gamma}` the
/// vertex imaginary parts must form one rising and one falling run
/// (cyclically), with plateaus up to `1e-9 * diameter` merged into their
/// neighbors. `extremal_value` is the number of cyclic sign changes (2 for a
/// pass); the witness on failure is the vertex opening the third run.
pub fn direction_convexity_oracle(polygon: &BoundaryPolygon, gamma: f64) -> CheckReport {
    let v = polygon.vertices();
    let n = v.len();
    let diam = polygon.diameter();
    if diam == 0.0 {
        return CheckReport::inconclusive(0.0, 0.0, 0.0);
    }
    let tol = PLATEAU_TOL_SCALE * diam;
    let rot = Complex64::from_polar(1.0, -gamma);
    let y: Vec<f64> = v.iter().map(|w| (w * rot).im).collect();

    // runs of decisive slope, with the vertex index starting each run
    let mut runs: Vec<(i8, usize)> = Vec::new();
    for k in 0..n {
        let delta = y[(k + 1) % n] - y[k];
        let sign = if delta > tol {
            1
        } else if delta < -tol {
            -1
        } else {
            continue;
        };
        match runs.last() {
            Some(&(s, _)) if s == sign => {}
            _ => runs.push((sign, k)),
        }
    }
    // the first and last run may be one run cyclically
    if runs.len() > 1 && runs.first().map(|r| r.0) == runs.last().map(|r| r.0) {
        runs.pop();
    }

    match runs.len() {
        0 | 1 => CheckReport::inconclusive(runs.len() as f64, tol, 0.0),
        2 => CheckReport::pass(2.0, tol, 0.0),
        changes => {
            let witness = v[runs[2].1];
            CheckReport::fail(changes as f64, witness, tol, 0.0)
        }
    }
}

/// Full convexity: every consecutive-edge cross product shares the sign of
/// the total turning. `extremal_value` is the worst signed cross product
/// (non-negative up to tolerance on a pass); the witness is the vertex where
/// the polygon turns the wrong way.
pub fn full_convexity_oracle(polygon: &BoundaryPolygon) -> CheckReport {
    let v = polygon.vertices();
    let n = v.len();
    let diam = polygon.diameter();
    if diam == 0.0 {
        return CheckReport::inconclusive(0.0, 0.0, 0.0);
    }
    let tol = CROSS_TOL_SCALE * diam * diam;

    let turn = |k: usize| {
        let a = v[k];
        let b = v[(k + 1) % n];
        let c = v[(k + 2) % n];
        cross(b - a, c - b)
    };
    let total: f64 = (0..n).map(turn).sum();
    if total.abs() <= tol * n as f64 {
        return CheckReport::inconclusive(total, tol, 0.0);
    }
    let sigma = total.signum();
    let (violation, idx) = parallel::min_indexed(n, |k| sigma * turn(k));
    let witness = v[(idx + 1) % n];
    if violation < -tol {
        CheckReport::fail(violation, witness, tol, 0.0)
    } else {
        CheckReport::pass(violation, tol, 0.0).with_witness(witness)
    }
}

/// Starlikeness with respect to the origin: the winding of the vertex
/// arguments is exactly +-2 pi and every argument step moves the same way
/// (within [`ANGLE_TOL`] radians). `extremal_value` is the worst signed
/// argument step on a monotonicity verdict, or the fractional winding when
/// the curve does not enclose the origin once.
pub fn starlike_oracle(polygon: &BoundaryPolygon) -> CheckReport {
    let v = polygon.vertices();
    let n = v.len();
    let diam = polygon.diameter();
    if diam == 0.0 {
        return CheckReport::inconclusive(0.0, 0.0, 0.0);
    }
    let (min_dist, min_idx) = parallel::min_indexed(n, |k| v[k].norm());
    if min_dist <= 1e-9 * diam {
        return CheckReport::inconclusive(min_dist / diam, ANGLE_TOL, 0.0);
    }

    let step = |k: usize| (v[(k + 1) % n] * v[k].conj()).arg();
    let total: f64 = (0..n).map(step).sum();
    let tau = 2.0 * std::f64::consts::PI;
    let sigma = if (total - tau).abs() < 0.5 {
        1.0
    } else if (total + tau).abs() < 0.5 {
        -1.0
    } else {
        return CheckReport::fail(total / tau, v[min_idx], ANGLE_TOL, 0.0);
    };

    let (violation, idx) = parallel::min_indexed(n, |k| sigma * step(k));
    if violation < -ANGLE_TOL {
        CheckReport::fail(violation, v[idx], ANGLE_TOL, 0.0)
    } else {
        CheckReport::pass(violation, ANGLE_TOL, 0.0).with_witness(v[idx])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::Verdict;

    fn polygon_from(f: impl Fn(f64) -> Complex64, n: usize) -> BoundaryPolygon {
        let vertices = (0..n)
            .map(|k| f(2.0 * std::f64::consts::PI * k as f64 / n as f64))
            .collect();
        BoundaryPolygon::from_vertices(vertices).unwrap()
    }

    fn ellipse(n: usize) -> BoundaryPolygon {
        polygon_from(|t| Complex64::new(3.0 * t.cos(), t.sin()), n)
    }

    /// Three-petal flower r = 1 + 0.5 cos(3t): star-shaped but not convex.
    fn flower(n: usize) -> BoundaryPolygon {
        polygon_from(
            |t| Complex64::from_polar(1.0 + 0.5 * (3.0 * t).cos(), t),
            n,
        )
    }

    /// Figure-eight r(t) = (cos t, sin t cos t): crosses itself at the origin.
    fn figure_eight(n: usize) -> BoundaryPolygon {
        polygon_from(|t| Complex64::new(t.cos(), t.sin() * t.cos()), n)
    }

    #[test]
    fn polygon_requires_enough_finite_vertices() {
        assert!(matches!(
            BoundaryPolygon::from_vertices(vec![Complex64::ZERO; 15]),
            Err(Error::TooFewVertices { got: 15, min: 16 })
        ));
        let mut v = vec![Complex64::ONE; 16];
        v[7] = Complex64::new(f64::NAN, 0.0);
        assert!(matches!(
            BoundaryPolygon::from_vertices(v),
            Err(Error::NonFiniteCoefficient { index: 7 })
        ));
    }

    #[test]
    fn ellipse_passes_every_oracle() {
        let p = ellipse(256);
        assert!(injectivity_winding_check(&p, &[Complex64::ZERO]).passed());
        assert!(full_convexity_oracle(&p).passed());
        assert!(starlike_oracle(&p).passed());
        for gamma in [0.0, 0.5, 1.2, -0.9] {
            assert!(direction_convexity_oracle(&p, gamma).passed());
        }
    }

    #[test]
    fn verdicts_are_invariant_under_rotation_and_reindexing() {
        // 0.1 is interior to every rotated variant of both shapes, so the
        // winding verdict must not move either.
        let probe = Complex64::new(0.1, 0.0);
        for p in [ellipse(128), flower(128)] {
            let base = (
                full_convexity_oracle(&p).verdict,
                starlike_oracle(&p).verdict,
                injectivity_winding_check(&p, &[probe]).verdict,
            );
            for q in [p.rotated(0.7), p.rotated(-2.1), p.cycled(17), p.cycled(101)] {
                let got = (
                    full_convexity_oracle(&q).verdict,
                    starlike_oracle(&q).verdict,
                    injectivity_winding_check(&q, &[probe]).verdict,
                );
                assert_eq!(got, base);
            }
        }
    }

    #[test]
    fn flower_is_starlike_but_not_convex() {
        let p = flower(512);
        assert!(injectivity_winding_check(&p, &[Complex64::ZERO]).passed());
        let star = starlike_oracle(&p);
        assert!(star.passed(), "{star}");
        let conv = full_convexity_oracle(&p);
        assert!(conv.failed(), "{conv}");
        assert!(conv.witness.is_some());
        // and it is not convex in the real direction either: the three petals
        // give more than two vertical turning runs
        let dir = direction_convexity_oracle(&p, 0.0);
        assert!(dir.failed());
        assert!(dir.extremal_value > 2.0);
    }

    #[test]
    fn figure_eight_fails_injectivity_with_a_crossing_witness() {
        // 62 samples keep the self-intersection in segment interiors (64
        // would place vertices exactly on the crossing, a graze rather than
        // a proper crossing)
        let p = figure_eight(62);
        let r = injectivity_winding_check(&p, &[]);
        assert!(r.failed());
        // the crossing sits at the origin
        assert!(r.witness.unwrap().norm() < 0.1);
        assert!(r.extremal_value >= 1.0);
    }

    #[test]
    fn winding_failure_reports_the_probe() {
        let p = ellipse(64);
        let outside = Complex64::new(10.0, 0.0);
        let r = injectivity_winding_check(&p, &[outside]);
        assert!(r.failed());
        assert_eq!(r.extremal_value, 0.0); // winding number of an exterior point
        assert_eq!(r.witness.unwrap(), outside);
    }

    #[test]
    fn rectangle_plateaus_merge_into_two_runs() {
        // axis-aligned rectangle boundary sampled along its sides: long flat
        // plateaus in Im, still exactly one rise and one fall
        let mut vertices = Vec::new();
        let m = 8;
        for k in 0..m {
            vertices.push(Complex64::new(-2.0 + 4.0 * k as f64 / m as f64, -1.0));
        }
        for k in 0..m {
            vertices.push(Complex64::new(2.0, -1.0 + 2.0 * k as f64 / m as f64));
        }
        for k in 0..m {
            vertices.push(Complex64::new(2.0 - 4.0 * k as f64 / m as f64, 1.0));
        }
        for k in 0..m {
            vertices.push(Complex64::new(-2.0, 1.0 - 2.0 * k as f64 / m as f64));
        }
        let p = BoundaryPolygon::from_vertices(vertices).unwrap();
        let r = direction_convexity_oracle(&p, 0.0);
        assert!(r.passed(), "{r}");
        assert_eq!(r.extremal_value, 2.0);
        // the same polygon rotated so the flats go vertical still passes for
        // the rotated direction
        let q = p.rotated(std::f64::consts::FRAC_PI_3);
        assert!(direction_convexity_oracle(&q, std::f64::consts::FRAC_PI_3).passed());
    }

    #[test]
    fn degenerate_polygons_are_inconclusive_not_passing() {
        let point = BoundaryPolygon::from_vertices(vec![Complex64::ONE; 16]).unwrap();
        assert_eq!(
            injectivity_winding_check(&point, &[]).verdict,
            Verdict::Inconclusive
        );
        assert_eq!(full_convexity_oracle(&point).verdict, Verdict::Inconclusive);
        assert_eq!(starlike_oracle(&point).verdict, Verdict::Inconclusive);
        assert_eq!(
            direction_convexity_oracle(&point, 0.0).verdict,
            Verdict::Inconclusive
        );

        // origin on the boundary: starlikeness is unresolvable
        let touching = polygon_from(|t| Complex64::new(1.0 + t.cos(), t.sin()), 64);
        assert_eq!(starlike_oracle(&touching).verdict, Verdict::Inconclusive);
    }

    #[test]
    fn clockwise_convex_curves_still_pass() {
        let p = polygon_from(|t| Complex64::new(2.0 * t.cos(), -t.sin()), 128);
        assert!(full_convexity_oracle(&p).passed());
        assert!(starlike_oracle(&p).passed());
        // but the winding about interior probes is -1, which injectivity
        // (sense-preserving by convention) rejects
        let r = injectivity_winding_check(&p, &[Complex64::ZERO]);
        assert!(r.failed());
        assert_eq!(r.extremal_value, -1.0);
    }

    #[test]
    fn csv_round_trips_vertices_exactly() {
        let p = ellipse(16);
        let csv = p.to_csv();
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some("re,im"));
        for (line, v) in lines.zip(p.vertices()) {
            let (re, im) = line.split_once(',').unwrap();
            assert_eq!(re.parse::<f64>().unwrap(), v.re);
            assert_eq!(im.parse::<f64>().unwrap(), v.im);
        }
    }

    #[test]
    fn boundary_polyline_gates_on_tail_accuracy() {
        use crate::kernels::KernelParams;
        use crate::shear::{direction_constant, shear_construct, DilatationSpec, ShearSpec};
        let f = shear_construct(&ShearSpec::new(
            KernelParams::new(0.0, 0.0).antiderivative_series(64),
            direction_constant(0.0),
            DilatationSpec::Monomial {
                coefficient: Complex64::ONE,
                degree: 1,
            },
        ))
        .unwrap();
        // order 64 at r = 0.99: tail far above budget
        assert!(matches!(
            boundary_polyline(&f, 0.99, 256),
            Err(Error::AccuracyLoss { .. })
        ));
        // same order close to the origin: fine
        let p = boundary_polyline(&f, 0.5, 256).unwrap();
        assert_eq!(p.len(), 256);
        assert_eq!(p.sample_radius, Some(0.5));
        assert!(matches!(
            boundary_polyline(&f, 0.5, 8),
            Err(Error::TooFewVertices { .. })
        ));
        assert!(matches!(
            boundary_polyline(&f, 0.999, 256),
            Err(Error::RadiusTooLarge { .. })
        ));
    }

    #[test]
    fn interior_probes_start_at_the_image_of_zero() {
        use crate::series::PowerSeries;
        let f = HarmonicMapping::new(PowerSeries::identity(8), PowerSeries::zero(8)).unwrap();
        let probes = interior_probes(&f, 0.3, 4).unwrap();
        assert_eq!(probes.len(), 9);
        assert_eq!(probes[0], Complex64::ZERO);
        assert!((probes[1] - Complex64::new(0.15, 0.0)).norm() < 1e-15);
    }
}
