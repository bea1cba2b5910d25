//! Builds the mappings declared by a scenario and drives its checks.

use std::collections::HashMap;
use std::fmt;

use harmshear::combine::{
    combine, combine_multi, eta_bound, herglotz_decomposition_check, lemma_identity_check,
    sharpness_witness, CombinationMode, CombinationSpec,
};
use harmshear::criteria::{check_local_univalence, convexity_upgrade, css_direction_check};
use harmshear::geometry::{
    boundary_polyline, direction_convexity_oracle, full_convexity_oracle, injectivity_winding_check,
    interior_probes, starlike_oracle, BoundaryPolygon,
};
use harmshear::kernels::{positive_real_part, BlendParams, KernelParams};
use harmshear::report::Verdict;
use harmshear::shear::{conjugate_constant, direction_constant, shear_construct, ShearSpec};
use harmshear::{Grid, HarmonicMapping};
use num_complex::Complex64;

use crate::scenario::{CheckKind, ConstantDef, DeriveOp, MapDef, Scenario, TargetDef};

const WEIGHT_MATCH_TOL: f64 = 1e-12;
const ETA_BOUND_TOL: f64 = 1e-12;
const SHARPNESS_FLOOR: f64 = -1e-12;
const LEMMA_BOUND_SLACK: f64 = 1e-6;

#[derive(Debug)]
pub enum RunError {
    Setup(String),
    Lib(harmshear::Error),
}

impl fmt::Display for RunError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RunError::Setup(m) => write!(f, "{m}"),
            RunError::Lib(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for RunError {}

impl From<harmshear::Error> for RunError {
    fn from(e: harmshear::Error) -> Self {
        RunError::Lib(e)
    }
}

fn setup<T>(message: impl Into<String>) -> Result<T, RunError> {
    Err(RunError::Setup(message.into()))
}

/// A constructed mapping plus the blend recipe it came from, when it was
/// sheared from a blend target (needed by positive-real checks).
pub struct BuiltMap {
    pub mapping: HarmonicMapping,
    pub blend: Option<BlendParams>,
}

pub struct BuiltMaps {
    pub names: Vec<String>,
    maps: HashMap<String, BuiltMap>,
}

impl BuiltMaps {
    pub fn get(&self, name: &str) -> Result<&BuiltMap, RunError> {
        match self.maps.get(name) {
            Some(m) => Ok(m),
            None => setup(format!("unknown map '{name}'")),
        }
    }
}

fn target_series(def: &TargetDef, order: usize) -> Result<(harmshear::PowerSeries, Option<BlendParams>), RunError> {
    match def {
        TargetDef::Kernel { mu, nu } => {
            let series = KernelParams { mu: *mu, nu: *nu }.antiderivative_series(order);
            Ok((series, None))
        }
        TargetDef::Blend(params) => {
            params.validate()?;
            // Blend targets carry derivative a + b at the origin; rescale so
            // the sheared mapping is normalized.
            let series = params
                .target_series(order)?
                .scale(Complex64::new(1.0 / params.derivative_normalization(), 0.0));
            Ok((series, Some(params.clone())))
        }
    }
}

pub fn build_maps(sc: &Scenario) -> Result<BuiltMaps, RunError> {
    let mut names = Vec::new();
    let mut maps: HashMap<String, BuiltMap> = HashMap::new();
    for (name, def) in &sc.maps {
        let built = match def {
            MapDef::Shear {
                target,
                constant,
                dilatation,
                scale,
            } => {
                let (series, blend) = target_series(target, sc.order)?;
                let c = match constant {
                    ConstantDef::Direction { phi } => direction_constant(*phi),
                    ConstantDef::Conjugate { mu } => conjugate_constant(*mu),
                };
                let spec = ShearSpec {
                    target: series,
                    constant: c,
                    dilatation: dilatation.clone(),
                };
                let mut mapping = shear_construct(&spec)?;
                if let Some(s) = scale {
                    mapping = mapping.scale(*s);
                }
                BuiltMap { mapping, blend }
            }
            MapDef::Combine {
                first,
                second,
                eta,
                conjugate,
                lambda,
            } => {
                let f1 = &maps
                    .get(first)
                    .ok_or(())
                    .or_else(|_| setup(format!("unknown map '{first}'")))?
                    .mapping;
                let f2 = &maps
                    .get(second)
                    .ok_or(())
                    .or_else(|_| setup(format!("unknown map '{second}'")))?
                    .mapping;
                let mode = if *conjugate {
                    CombinationMode::ConjugateParameter
                } else {
                    CombinationMode::SameParameter
                };
                let spec = CombinationSpec::new(f1, f2, *eta, mode).with_lambda(*lambda);
                BuiltMap {
                    mapping: combine(&spec)?,
                    blend: None,
                }
            }
            MapDef::Multi { maps: ids, weights } => {
                let mut parts = Vec::with_capacity(ids.len());
                for id in ids {
                    parts.push(
                        maps.get(id)
                            .ok_or(())
                            .or_else(|_| setup(format!("unknown map '{id}'")))?
                            .mapping
                            .clone(),
                    );
                }
                BuiltMap {
                    mapping: combine_multi(&parts, weights)?,
                    blend: None,
                }
            }
            MapDef::Derive { from, op } => {
                let source = maps
                    .get(from)
                    .ok_or(())
                    .or_else(|_| setup(format!("unknown map '{from}'")))?;
                let mapping = match op {
                    DeriveOp::Upgrade { n } => convexity_upgrade(&source.mapping, *n)?,
                    DeriveOp::Scale { c } => source.mapping.scale(*c),
                };
                BuiltMap {
                    mapping,
                    blend: None,
                }
            }
        };
        names.push(name.clone());
        maps.insert(name.clone(), built);
    }
    Ok(BuiltMaps { names, maps })
}

/// Everything one check produced, ready for rendering.
pub struct CheckRecord {
    pub kind: &'static str,
    pub subject: String,
    pub expected: Verdict,
    pub verdict: Verdict,
    pub extremal: f64,
    pub tolerance: f64,
    pub tail: f64,
    pub witness: Option<Complex64>,
    pub extras: Vec<(String, String)>,
}

impl CheckRecord {
    pub fn matched(&self) -> bool {
        self.verdict == self.expected
    }
}

pub struct ScenarioOutcome {
    pub name: String,
    pub order: usize,
    pub grid: String,
    pub map_names: Vec<String>,
    pub records: Vec<CheckRecord>,
}

impl ScenarioOutcome {
    pub fn all_matched(&self) -> bool {
        self.records.iter().all(CheckRecord::matched)
    }

    pub fn matched_count(&self) -> usize {
        self.records.iter().filter(|r| r.matched()).count()
    }
}

fn fmt_f64(x: f64) -> String {
    format!("{x}")
}

fn polygon_for(
    built: &BuiltMap,
    sc: &Scenario,
    radius: Option<f64>,
    samples: Option<usize>,
) -> Result<BoundaryPolygon, RunError> {
    Ok(boundary_polyline(
        &built.mapping,
        radius.unwrap_or(sc.boundary_radius),
        samples.unwrap_or(sc.boundary_samples),
    )?)
}

fn run_check(
    kind: &CheckKind,
    expect: Verdict,
    sc: &Scenario,
    built: &BuiltMaps,
    grid: &Grid,
) -> Result<CheckRecord, RunError> {
    let record = |subject: String,
                  verdict: Verdict,
                  extremal: f64,
                  tolerance: f64,
                  tail: f64,
                  witness: Option<Complex64>,
                  extras: Vec<(String, String)>| CheckRecord {
        kind: kind.name(),
        subject,
        expected: expect,
        verdict,
        extremal,
        tolerance,
        tail,
        witness,
        extras,
    };

    Ok(match kind {
        CheckKind::Univalence { map } => {
            let m = built.get(map)?;
            let r = check_local_univalence(&m.mapping, grid)?;
            record(
                map.clone(),
                r.report.verdict,
                r.report.extremal_value,
                r.report.tolerance,
                r.report.tail_bound,
                r.report.witness,
                vec![
                    ("min-jacobian".into(), fmt_f64(r.min_jacobian)),
                    ("max-dilatation".into(), fmt_f64(r.max_dilatation)),
                ],
            )
        }
        CheckKind::DirectionConvexity { map, direction } => {
            let m = built.get(map)?;
            let r = css_direction_check(&m.mapping, *direction, grid)?;
            let mut extras = vec![(
                "max-dilatation".into(),
                fmt_f64(r.univalence.max_dilatation),
            )];
            match r.royster_zeigler.certificate {
                Some((mu, nu)) => {
                    extras.push(("certificate-mu".into(), fmt_f64(mu)));
                    extras.push(("certificate-nu".into(), fmt_f64(nu)));
                }
                None => extras.push(("certificate".into(), "none".into())),
            }
            record(
                map.clone(),
                r.report.verdict,
                r.report.extremal_value,
                r.report.tolerance,
                r.report.tail_bound,
                r.report.witness,
                extras,
            )
        }
        CheckKind::BoundaryInjectivity {
            map,
            radius,
            samples,
        } => {
            let m = built.get(map)?;
            let polygon = polygon_for(m, sc, *radius, *samples)?;
            let probes = interior_probes(&m.mapping, 0.5 * sc.boundary_radius, 8)?;
            let r = injectivity_winding_check(&polygon, &probes);
            record(
                map.clone(),
                r.verdict,
                r.extremal_value,
                r.tolerance,
                m.mapping.tail_bound(radius.unwrap_or(sc.boundary_radius)),
                r.witness,
                vec![("vertices".into(), polygon.len().to_string())],
            )
        }
        CheckKind::BoundaryDirectionConvexity {
            map,
            direction,
            radius,
            samples,
        } => {
            let m = built.get(map)?;
            let polygon = polygon_for(m, sc, *radius, *samples)?;
            let r = direction_convexity_oracle(&polygon, *direction);
            record(
                map.clone(),
                r.verdict,
                r.extremal_value,
                r.tolerance,
                m.mapping.tail_bound(radius.unwrap_or(sc.boundary_radius)),
                r.witness,
                vec![("direction".into(), fmt_f64(*direction))],
            )
        }
        CheckKind::BoundaryFullConvexity {
            map,
            radius,
            samples,
        } => {
            let m = built.get(map)?;
            let polygon = polygon_for(m, sc, *radius, *samples)?;
            let r = full_convexity_oracle(&polygon);
            record(
                map.clone(),
                r.verdict,
                r.extremal_value,
                r.tolerance,
                m.mapping.tail_bound(radius.unwrap_or(sc.boundary_radius)),
                r.witness,
                Vec::new(),
            )
        }
        CheckKind::BoundaryStarlike {
            map,
            radius,
            samples,
        } => {
            let m = built.get(map)?;
            let polygon = polygon_for(m, sc, *radius, *samples)?;
            let r = starlike_oracle(&polygon);
            record(
                map.clone(),
                r.verdict,
                r.extremal_value,
                r.tolerance,
                m.mapping.tail_bound(radius.unwrap_or(sc.boundary_radius)),
                r.witness,
                Vec::new(),
            )
        }
        CheckKind::PositiveReal { map } => {
            let m = built.get(map)?;
            let params = match &m.blend {
                Some(p) => p,
                None => return setup(format!("map '{map}' was not sheared from a blend target")),
            };
            let p = params.p_series(sc.order)?;
            let r = positive_real_part(&p, grid)?;
            record(
                map.clone(),
                r.verdict,
                r.extremal_value,
                r.tolerance,
                r.tail_bound,
                r.witness,
                Vec::new(),
            )
        }
        CheckKind::Herglotz {
            omega1,
            omega2,
            eta,
            lambda,
            weights,
            positive,
        } => {
            omega1.validate()?;
            omega2.validate()?;
            let o1 = omega1.series(sc.order);
            let o2 = omega2.series(sc.order);
            let r = herglotz_decomposition_check(&o1, &o2, *eta, *lambda, grid)?;
            let mut verdict = r.report.verdict;
            let mut extras = vec![
                ("weight1".into(), fmt_f64(r.weights[0])),
                ("weight2".into(), fmt_f64(r.weights[1])),
                ("weights-nonnegative".into(), r.weights_nonnegative.to_string()),
            ];
            if let Some(expected_weights) = weights {
                let dw = (r.weights[0] - expected_weights[0])
                    .abs()
                    .max((r.weights[1] - expected_weights[1]).abs());
                if dw > WEIGHT_MATCH_TOL {
                    verdict = Verdict::Fail;
                    extras.push(("weight-mismatch".into(), format!("{dw:e}")));
                }
            }
            if let Some(expected_positive) = positive {
                if r.weights_nonnegative != *expected_positive {
                    verdict = Verdict::Fail;
                    extras.push(("positivity-mismatch".into(), "true".into()));
                }
            }
            record(
                format!("eta={eta} lambda={lambda}"),
                verdict,
                r.report.extremal_value,
                r.report.tolerance,
                r.report.tail_bound,
                r.report.witness,
                extras,
            )
        }
        CheckKind::LemmaIdentity {
            first,
            second,
            mu,
            nu,
            eta,
        } => {
            let f1 = built.get(first)?;
            let f2 = built.get(second)?;
            let kernel = KernelParams { mu: *mu, nu: *nu };
            let r = lemma_identity_check(&f1.mapping, &f2.mapping, *eta, kernel, grid)?;
            let mut verdict = r.identity.verdict;
            let mut extras = vec![("min-re-slice".into(), fmt_f64(r.min_re_rhs))];
            match r.herglotz_lower_bound {
                Some(bound) => {
                    extras.push(("lower-bound".into(), fmt_f64(bound)));
                    if r.min_re_rhs < bound - LEMMA_BOUND_SLACK {
                        verdict = Verdict::Fail;
                    }
                }
                None => extras.push(("lower-bound".into(), "none".into())),
            }
            if r.min_re_rhs <= 0.0 {
                verdict = Verdict::Fail;
            }
            record(
                format!("{first},{second} eta={}", crate::reports::fmt_complex(*eta)),
                verdict,
                r.identity.extremal_value,
                r.identity.tolerance,
                r.identity.tail_bound,
                Some(r.min_re_rhs_witness),
                extras,
            )
        }
        CheckKind::EtaBound {
            alpha1,
            alpha2,
            value,
        } => {
            let b = eta_bound(*alpha1, *alpha2)?;
            let error = (b.bound - value).abs();
            let verdict = if error <= ETA_BOUND_TOL {
                Verdict::Pass
            } else {
                Verdict::Fail
            };
            record(
                format!("alpha1={alpha1} alpha2={alpha2}"),
                verdict,
                b.bound,
                ETA_BOUND_TOL,
                0.0,
                None,
                vec![("error".into(), format!("{error:e}"))],
            )
        }
        CheckKind::Sharpness { alpha, margin } => {
            let critical = -(1.0 - alpha).powi(2) / (4.0 * alpha);
            let mut min_witness = f64::INFINITY;
            let mut min_at = 0.0;
            for k in 1..=999 {
                let z = k as f64 / 1000.0;
                let w = sharpness_witness(*alpha, critical, z);
                if w < min_witness {
                    min_witness = w;
                    min_at = z;
                }
            }
            let beyond = sharpness_witness(*alpha, critical - margin, 0.999);
            let verdict = if min_witness >= SHARPNESS_FLOOR && beyond < 0.0 {
                Verdict::Pass
            } else {
                Verdict::Fail
            };
            record(
                format!("alpha={alpha}"),
                verdict,
                min_witness,
                -SHARPNESS_FLOOR,
                0.0,
                Some(Complex64::new(min_at, 0.0)),
                vec![
                    ("critical-eta".into(), fmt_f64(critical)),
                    ("beyond-witness".into(), fmt_f64(beyond)),
                ],
            )
        }
    })
}

pub fn run_scenario(sc: &Scenario) -> Result<ScenarioOutcome, RunError> {
    let built = build_maps(sc)?;
    let grid = Grid::equispaced(sc.grid.radii, sc.grid.max_radius, sc.grid.angles)?;
    let mut records = Vec::with_capacity(sc.checks.len());
    for check in &sc.checks {
        records.push(run_check(&check.kind, check.expect, sc, &built, &grid)?);
    }
    Ok(ScenarioOutcome {
        name: sc.name.clone(),
        order: sc.order,
        grid: sc.grid.to_string(),
        map_names: built.names,
        records,
    })
}
