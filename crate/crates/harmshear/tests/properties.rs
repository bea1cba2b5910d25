//! Randomized algebraic laws: series arithmetic, shear reconstruction,
//! operator round-trips, and oracle invariances.

use harmshear::combine::{eta_bound, sharpness_witness};
use harmshear::criteria::{d_inverse, d_operator};
use harmshear::geometry::{full_convexity_oracle, injectivity_winding_check, starlike_oracle};
use harmshear::geometry::BoundaryPolygon;
use harmshear::kernels::KernelParams;
use harmshear::report::Verdict;
use harmshear::shear::{
    conjugate_constant, direction_constant, dilatation_of, shear_construct, DilatationSpec,
    ShearSpec,
};
use harmshear::PowerSeries;
use num_complex::Complex64;
use proptest::prelude::*;

fn series_scale(s: &PowerSeries) -> f64 {
    s.max_coefficient_magnitude().max(1.0)
}

fn max_coeff_diff(a: &PowerSeries, b: &PowerSeries) -> f64 {
    let order = a.order().max(b.order());
    (0..order)
        .map(|k| (a.coeff(k) - b.coeff(k)).norm())
        .fold(0.0, f64::max)
}

prop_compose! {
    fn unit_complex()(re in -1.0f64..1.0, im in -1.0f64..1.0) -> Complex64 {
        Complex64::new(re, im)
    }
}

prop_compose! {
    fn small_series(order: usize)(coeffs in prop::collection::vec(unit_complex(), order)) -> PowerSeries {
        PowerSeries::new(coeffs).unwrap()
    }
}

proptest! {
    #[test]
    fn multiplication_commutes(a in small_series(24), b in small_series(24)) {
        let ab = a.mul(&b).unwrap();
        let ba = b.mul(&a).unwrap();
        let tol = 1e-12 * series_scale(&a) * series_scale(&b);
        prop_assert!(max_coeff_diff(&ab, &ba) <= tol);
    }

    #[test]
    fn multiplication_associates(
        a in small_series(16),
        b in small_series(16),
        c in small_series(16),
    ) {
        let left = a.mul(&b).unwrap().mul(&c).unwrap();
        let right = a.mul(&b.mul(&c).unwrap()).unwrap();
        let tol = 1e-11 * series_scale(&a) * series_scale(&b) * series_scale(&c);
        prop_assert!(max_coeff_diff(&left, &right) <= tol);
    }

    #[test]
    fn reciprocal_inverts(mut coeffs in prop::collection::vec(unit_complex(), 32)) {
        // keep the constant term away from zero so recip is well-conditioned
        coeffs[0] = Complex64::new(1.0, 0.0) + coeffs[0] * 0.4;
        let a = PowerSeries::new(coeffs).unwrap();
        let inv = a.recip().unwrap();
        let product = a.mul(&inv).unwrap();
        // reciprocal coefficients can grow geometrically, so judge the
        // residual relative to what was actually convolved
        let tol = 1e-12 * series_scale(&a) * series_scale(&inv);
        prop_assert!((product.coeff(0) - Complex64::ONE).norm() < tol);
        for k in 1..product.order() {
            prop_assert!(product.coeff(k).norm() < tol, "index {k}");
        }
    }

    #[test]
    fn evaluation_is_multiplicative(
        a in small_series(48),
        b in small_series(48),
        r in 0.0f64..0.5,
        theta in 0.0f64..std::f64::consts::TAU,
    ) {
        // truncation: |sum_{k >= 48}| <= sum_k (k+1) 0.5^k from index 48 on,
        // far below the tolerance here
        let z = Complex64::from_polar(r, theta);
        let direct = a.mul(&b).unwrap().evaluate(z).unwrap();
        let split = a.evaluate(z).unwrap() * b.evaluate(z).unwrap();
        prop_assert!((direct - split).norm() < 1e-7);
    }

    #[test]
    fn derivative_undoes_integral(a in small_series(24)) {
        let back = a.integral().derivative();
        for k in 0..a.order() - 1 {
            prop_assert!((back.coeff(k) - a.coeff(k)).norm() < 1e-13, "index {k}");
        }
    }

    #[test]
    fn parallel_and_sequential_evaluation_agree_bitwise(
        a in small_series(64),
        points in prop::collection::vec(unit_complex(), 1..40),
    ) {
        let points: Vec<Complex64> = points.into_iter().map(|z| z * 0.7).collect();
        let par = a.evaluate_many(&points).unwrap();
        let seq = a.evaluate_many_sequential(&points).unwrap();
        for (x, y) in par.iter().zip(&seq) {
            prop_assert_eq!(x, y);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn shear_reconstructs_its_target(
        mu in 0.0f64..std::f64::consts::TAU,
        nu in 0.0f64..std::f64::consts::PI,
        coefficient in unit_complex(),
        degree in 1u32..4,
        phi in 0.0f64..std::f64::consts::TAU,
        use_conjugate in any::<bool>(),
    ) {
        let order = 64;
        let target = KernelParams::new(mu, nu).antiderivative_series(order);
        let constant = if use_conjugate {
            conjugate_constant(phi)
        } else {
            direction_constant(phi)
        };
        let dilatation = DilatationSpec::Monomial {
            // rectangle sample has modulus up to sqrt(2); keep it inside the disk
            coefficient: coefficient * 0.6,
            degree,
        };
        let spec = ShearSpec::new(target.clone(), constant, dilatation);
        let f = shear_construct(&spec).unwrap();

        // h + c g must be the target again, and g' = omega h'
        let slice = f.analytic_combination(constant);
        prop_assert!(max_coeff_diff(&slice, &target) <= 1e-10 * series_scale(&target));

        let omega = dilatation_of(&f).unwrap();
        let expected = spec.dilatation.series(order);
        // quotient series: compare low coefficients only, they are exact data
        for k in 0..16 {
            prop_assert!((omega.coeff(k) - expected.coeff(k)).norm() < 1e-9, "index {k}");
        }
    }

    #[test]
    fn coefficient_operator_round_trips(
        coeffs in prop::collection::vec(unit_complex(), 24),
        n in 0u32..4,
    ) {
        let mut coeffs = coeffs;
        coeffs[0] = Complex64::ZERO; // d_inverse needs no constant term
        let s = PowerSeries::new(coeffs).unwrap();
        let back = d_inverse(&d_operator(&s, n), n).unwrap();
        prop_assert!(max_coeff_diff(&back, &s) < 1e-12);
    }

    #[test]
    fn weight_radius_is_symmetric_and_positive(
        alpha1 in 0.01f64..0.99,
        alpha2 in 0.01f64..0.99,
    ) {
        let b12 = eta_bound(alpha1, alpha2).unwrap();
        let b21 = eta_bound(alpha2, alpha1).unwrap();
        prop_assert_eq!(b12.bound, b21.bound);
        prop_assert!(b12.bound > 0.0);
    }

    #[test]
    fn witness_stays_nonnegative_inside_the_radius(
        alpha in 0.05f64..0.95,
        eta_frac in -1.0f64..1.0,
        z in 0.001f64..0.999,
    ) {
        let bound = eta_bound(alpha, alpha).unwrap().bound;
        let w = sharpness_witness(alpha, eta_frac * bound, z);
        prop_assert!(w >= -1e-12, "witness {w}");
    }

    #[test]
    fn oracle_verdicts_survive_rotation_and_reindexing(
        a in 0.5f64..2.0,
        b in 0.5f64..2.0,
        angle in 0.0f64..std::f64::consts::TAU,
        shift in 0usize..256,
    ) {
        let vertices: Vec<Complex64> = (0..256)
            .map(|k| {
                let t = std::f64::consts::TAU * k as f64 / 256.0;
                Complex64::new(a * t.cos(), b * t.sin())
            })
            .collect();
        let base = BoundaryPolygon::from_vertices(vertices).unwrap();
        let moved = base.rotated(angle).cycled(shift);

        for polygon in [&base, &moved] {
            prop_assert_eq!(full_convexity_oracle(polygon).verdict, Verdict::Pass);
            prop_assert_eq!(starlike_oracle(polygon).verdict, Verdict::Pass);
        }

        // the center is interior regardless of rotation
        let probes = [Complex64::ZERO];
        prop_assert_eq!(
            injectivity_winding_check(&moved, &probes).verdict,
            Verdict::Pass
        );
    }
}
