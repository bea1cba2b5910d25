//! The scenario file format: a line-based text DSL describing mappings to
//! construct and checks to run against them.
//!
//! ```text
//! # comments run to end of line
//! schema = 1
//! name = my-scenario
//! order = 2048                 # series truncation order
//! grid = 24x180@0.99           # radii x angles @ max radius
//! boundary-radius = 0.98       # default circle for polygon checks
//! boundary-samples = 1024      # default polygon resolution
//!
//! [map f1]
//! target = kernel mu=pi/6 nu=pi/3
//! constant = direction phi=-pi/6
//! dilatation = monomial coefficient=1/5 degree=1
//!
//! [combine c]
//! first = f1
//! second = f2
//! eta = 0.6-0.35i
//! mode = same
//!
//! [check univalence]
//! map = c
//! expect = pass
//! ```
//!
//! Numbers accept plain decimals, fractions `a/b`, and pi-forms (`pi`,
//! `-pi/6`, `2pi/3`); complex values look like `0.5`, `-0.5+0.6i`, `1i`,
//! `-i`. No scientific notation.

use std::fmt;

use harmshear::kernels::{BlendFamily, BlendParams};
use harmshear::report::Verdict;
use harmshear::shear::DilatationSpec;
use num_complex::Complex64;

#[derive(Debug)]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

impl std::error::Error for ParseError {}

type PResult<T> = Result<T, ParseError>;

fn err<T>(line: usize, message: impl Into<String>) -> PResult<T> {
    Err(ParseError {
        line,
        message: message.into(),
    })
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GridSpec {
    pub radii: usize,
    pub angles: usize,
    pub max_radius: f64,
}

impl fmt::Display for GridSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}x{}@{}", self.radii, self.angles, self.max_radius)
    }
}

#[derive(Clone, Debug)]
pub enum TargetDef {
    Kernel { mu: f64, nu: f64 },
    Blend(BlendParams),
}

#[derive(Clone, Copy, Debug)]
pub enum ConstantDef {
    Direction { phi: f64 },
    Conjugate { mu: f64 },
}

#[derive(Clone, Debug)]
pub enum MapDef {
    Shear {
        target: TargetDef,
        constant: ConstantDef,
        dilatation: DilatationSpec,
        scale: Option<Complex64>,
    },
    Combine {
        first: String,
        second: String,
        eta: Complex64,
        conjugate: bool,
        lambda: f64,
    },
    Multi {
        maps: Vec<String>,
        weights: Vec<f64>,
    },
    Derive {
        from: String,
        op: DeriveOp,
    },
}

#[derive(Clone, Copy, Debug)]
pub enum DeriveOp {
    Upgrade { n: u32 },
    Scale { c: Complex64 },
}

#[derive(Clone, Debug)]
pub enum CheckKind {
    Univalence {
        map: String,
    },
    DirectionConvexity {
        map: String,
        direction: f64,
    },
    BoundaryInjectivity {
        map: String,
        radius: Option<f64>,
        samples: Option<usize>,
    },
    BoundaryDirectionConvexity {
        map: String,
        direction: f64,
        radius: Option<f64>,
        samples: Option<usize>,
    },
    BoundaryFullConvexity {
        map: String,
        radius: Option<f64>,
        samples: Option<usize>,
    },
    BoundaryStarlike {
        map: String,
        radius: Option<f64>,
        samples: Option<usize>,
    },
    PositiveReal {
        map: String,
    },
    Herglotz {
        omega1: DilatationSpec,
        omega2: DilatationSpec,
        eta: f64,
        lambda: f64,
        weights: Option<[f64; 2]>,
        positive: Option<bool>,
    },
    LemmaIdentity {
        first: String,
        second: String,
        mu: f64,
        nu: f64,
        eta: Complex64,
    },
    EtaBound {
        alpha1: f64,
        alpha2: f64,
        value: f64,
    },
    Sharpness {
        alpha: f64,
        margin: f64,
    },
}

impl CheckKind {
    pub fn name(&self) -> &'static str {
        match self {
            CheckKind::Univalence { .. } => "univalence",
            CheckKind::DirectionConvexity { .. } => "direction-convexity",
            CheckKind::BoundaryInjectivity { .. } => "boundary-injectivity",
            CheckKind::BoundaryDirectionConvexity { .. } => "boundary-direction-convexity",
            CheckKind::BoundaryFullConvexity { .. } => "boundary-full-convexity",
            CheckKind::BoundaryStarlike { .. } => "boundary-starlike",
            CheckKind::PositiveReal { .. } => "positive-real",
            CheckKind::Herglotz { .. } => "herglotz",
            CheckKind::LemmaIdentity { .. } => "lemma-identity",
            CheckKind::EtaBound { .. } => "eta-bound",
            CheckKind::Sharpness { .. } => "sharpness",
        }
    }
}

#[derive(Clone, Debug)]
pub struct CheckDef {
    pub kind: CheckKind,
    pub expect: Verdict,
}

#[derive(Clone, Debug)]
pub struct Scenario {
    pub name: String,
    pub order: usize,
    pub grid: GridSpec,
    pub boundary_radius: f64,
    pub boundary_samples: usize,
    pub maps: Vec<(String, MapDef)>,
    pub checks: Vec<CheckDef>,
}

pub const DEFAULT_ORDER: usize = 2048;
pub const DEFAULT_GRID: GridSpec = GridSpec {
    radii: 24,
    angles: 180,
    max_radius: 0.99,
};
pub const DEFAULT_BOUNDARY_RADIUS: f64 = 0.98;
pub const DEFAULT_BOUNDARY_SAMPLES: usize = 1024;

/// `a/b` fractions or plain decimals (no exponents).
fn parse_plain(s: &str, line: usize) -> PResult<f64> {
    let s = s.trim();
    if let Some((a, b)) = s.split_once('/') {
        let num: f64 = a
            .trim()
            .parse()
            .or_else(|_| err(line, format!("bad number '{a}'")))?;
        let den: f64 = b
            .trim()
            .parse()
            .or_else(|_| err(line, format!("bad number '{b}'")))?;
        if den == 0.0 {
            return err(line, format!("division by zero in '{s}'"));
        }
        Ok(num / den)
    } else {
        s.parse()
            .or_else(|_| err(line, format!("bad number '{s}'")))
    }
}

/// Decimals, fractions, and pi-forms (`pi`, `-pi`, `pi/6`, `2pi/3`, `0.5pi`).
pub fn parse_number(s: &str, line: usize) -> PResult<f64> {
    let s = s.trim();
    if let Some(idx) = s.find("pi") {
        let (pre, rest) = s.split_at(idx);
        let rest = &rest[2..];
        let coefficient = match pre.trim() {
            "" | "+" => 1.0,
            "-" => -1.0,
            p => parse_plain(p, line)?,
        };
        let denominator = match rest.trim() {
            "" => 1.0,
            r => match r.strip_prefix('/') {
                Some(d) => {
                    let d = parse_plain(d, line)?;
                    if d == 0.0 {
                        return err(line, format!("division by zero in '{s}'"));
                    }
                    d
                }
                None => return err(line, format!("malformed pi expression '{s}'")),
            },
        };
        Ok(coefficient * std::f64::consts::PI / denominator)
    } else {
        parse_plain(s, line)
    }
}

/// `a`, `a+bi`, `a-bi`, `bi`, `i`, `-i`, with both parts in number grammar.
pub fn parse_complex(s: &str, line: usize) -> PResult<Complex64> {
    let s = s.trim();
    match s.strip_suffix('i') {
        None => Ok(Complex64::new(parse_number(s, line)?, 0.0)),
        Some(body) => {
            let mut split = None;
            for (k, c) in body.char_indices().skip(1) {
                if c == '+' || c == '-' {
                    split = Some(k);
                }
            }
            let unit_imag = |t: &str| -> Option<f64> {
                match t {
                    "" | "+" => Some(1.0),
                    "-" => Some(-1.0),
                    _ => None,
                }
            };
            match split {
                Some(k) => {
                    let re = parse_number(&body[..k], line)?;
                    let imag_part = &body[k..];
                    let im = match unit_imag(imag_part) {
                        Some(v) => v,
                        None => parse_number(imag_part, line)?,
                    };
                    Ok(Complex64::new(re, im))
                }
                None => {
                    let im = match unit_imag(body) {
                        Some(v) => v,
                        None => parse_number(body, line)?,
                    };
                    Ok(Complex64::new(0.0, im))
                }
            }
        }
    }
}

/// One `key = value` entry with its source line.
struct Entry {
    line: usize,
    key: String,
    value: String,
}

struct Section {
    line: usize,
    kind: String,
    label: String,
    entries: Vec<Entry>,
}

impl Section {
    fn get(&self, key: &str) -> Option<&Entry> {
        self.entries.iter().find(|e| e.key == key)
    }

    fn require(&self, key: &str) -> PResult<&Entry> {
        self.get(key)
            .ok_or(())
            .or_else(|_| err(self.line, format!("[{} {}] is missing '{key}'", self.kind, self.label)))
    }
}

/// Splits a structured value like `kernel mu=0 nu=pi/2` into its tag and
/// `key=value` fields.
fn structured<'a>(value: &'a str, line: usize) -> PResult<(&'a str, Vec<(&'a str, &'a str)>)> {
    let mut parts = value.split_whitespace();
    let tag = match parts.next() {
        Some(t) => t,
        None => return err(line, "empty structured value"),
    };
    let mut fields = Vec::new();
    for p in parts {
        match p.split_once('=') {
            Some((k, v)) => fields.push((k, v)),
            None => return err(line, format!("expected key=value, got '{p}'")),
        }
    }
    Ok((tag, fields))
}

fn field<'a>(
    fields: &[(&'a str, &'a str)],
    key: &str,
    line: usize,
    context: &str,
) -> PResult<&'a str> {
    fields
        .iter()
        .find(|(k, _)| *k == key)
        .map(|(_, v)| *v)
        .ok_or(())
        .or_else(|_| err(line, format!("{context} is missing '{key}='")))
}

fn parse_dilatation(value: &str, line: usize) -> PResult<DilatationSpec> {
    let (tag, fields) = structured(value, line)?;
    match tag {
        "monomial" => Ok(DilatationSpec::Monomial {
            coefficient: parse_complex(field(&fields, "coefficient", line, "monomial")?, line)?,
            degree: parse_number(field(&fields, "degree", line, "monomial")?, line)? as u32,
        }),
        "constant" => Ok(DilatationSpec::Constant {
            value: parse_complex(field(&fields, "value", line, "constant")?, line)?,
        }),
        "blaschke" => Ok(DilatationSpec::Blaschke {
            zero: parse_complex(field(&fields, "zero", line, "blaschke")?, line)?,
            scale: parse_complex(field(&fields, "scale", line, "blaschke")?, line)?,
        }),
        other => err(line, format!("unknown dilatation kind '{other}'")),
    }
}

fn parse_target(value: &str, line: usize) -> PResult<TargetDef> {
    let (tag, fields) = structured(value, line)?;
    match tag {
        "kernel" => Ok(TargetDef::Kernel {
            mu: parse_number(field(&fields, "mu", line, "kernel")?, line)?,
            nu: parse_number(field(&fields, "nu", line, "kernel")?, line)?,
        }),
        "halfplane-blend" => Ok(TargetDef::Blend(BlendParams {
            family: BlendFamily::HalfPlane,
            a: parse_number(field(&fields, "a", line, "halfplane-blend")?, line)?,
            b: parse_number(field(&fields, "b", line, "halfplane-blend")?, line)?,
            mu: parse_number(field(&fields, "mu", line, "halfplane-blend")?, line)?,
            nu1: parse_number(field(&fields, "nu1", line, "halfplane-blend")?, line)?,
            nu2: parse_number(field(&fields, "nu2", line, "halfplane-blend")?, line)?,
        })),
        "log-blend" => {
            let nu = parse_number(field(&fields, "nu", line, "log-blend")?, line)?;
            Ok(TargetDef::Blend(BlendParams {
                family: BlendFamily::Log,
                a: parse_number(field(&fields, "a", line, "log-blend")?, line)?,
                b: parse_number(field(&fields, "b", line, "log-blend")?, line)?,
                mu: parse_number(field(&fields, "mu", line, "log-blend")?, line)?,
                nu1: nu,
                nu2: nu,
            }))
        }
        other => err(line, format!("unknown target kind '{other}'")),
    }
}

fn parse_constant(value: &str, line: usize) -> PResult<ConstantDef> {
    let (tag, fields) = structured(value, line)?;
    match tag {
        "direction" => Ok(ConstantDef::Direction {
            phi: parse_number(field(&fields, "phi", line, "direction constant")?, line)?,
        }),
        "conjugate" => Ok(ConstantDef::Conjugate {
            mu: parse_number(field(&fields, "mu", line, "conjugate constant")?, line)?,
        }),
        other => err(line, format!("unknown constant kind '{other}'")),
    }
}

fn parse_verdict(value: &str, line: usize) -> PResult<Verdict> {
    match value {
        "pass" => Ok(Verdict::Pass),
        "fail" => Ok(Verdict::Fail),
        "inconclusive" => Ok(Verdict::Inconclusive),
        other => err(line, format!("unknown verdict '{other}'")),
    }
}

fn parse_list<T>(
    value: &str,
    line: usize,
    mut item: impl FnMut(&str, usize) -> PResult<T>,
) -> PResult<Vec<T>> {
    value.split(',').map(|p| item(p.trim(), line)).collect()
}

fn parse_grid(value: &str, line: usize) -> PResult<GridSpec> {
    let bad = || format!("grid must look like 24x180@0.99, got '{value}'");
    let (radii, rest) = match value.split_once('x') {
        Some(p) => p,
        None => return err(line, bad()),
    };
    let (angles, max) = match rest.split_once('@') {
        Some(p) => p,
        None => return err(line, bad()),
    };
    Ok(GridSpec {
        radii: radii.trim().parse().or_else(|_| err(line, bad()))?,
        angles: angles.trim().parse().or_else(|_| err(line, bad()))?,
        max_radius: parse_plain(max, line)?,
    })
}

fn split_sections(source: &str) -> PResult<(Vec<Entry>, Vec<Section>)> {
    let mut preamble = Vec::new();
    let mut sections: Vec<Section> = Vec::new();
    for (idx, raw) in source.lines().enumerate() {
        let line = idx + 1;
        let text = match raw.split_once('#') {
            Some((before, _)) => before,
            None => raw,
        }
        .trim();
        if text.is_empty() {
            continue;
        }
        if let Some(header) = text.strip_prefix('[') {
            let header = match header.strip_suffix(']') {
                Some(h) => h.trim(),
                None => return err(line, "unterminated section header"),
            };
            let (kind, label) = match header.split_once(char::is_whitespace) {
                Some((k, l)) => (k.to_string(), l.trim().to_string()),
                None => (header.to_string(), String::new()),
            };
            sections.push(Section {
                line,
                kind,
                label,
                entries: Vec::new(),
            });
            continue;
        }
        let (key, value) = match text.split_once('=') {
            Some((k, v)) => (k.trim().to_string(), v.trim().to_string()),
            None => return err(line, format!("expected 'key = value', got '{text}'")),
        };
        let entry = Entry { line, key, value };
        match sections.last_mut() {
            Some(s) => s.entries.push(entry),
            None => preamble.push(entry),
        }
    }
    Ok((preamble, sections))
}

fn parse_map_section(s: &Section) -> PResult<MapDef> {
    let target = s.require("target")?;
    let constant = s.require("constant")?;
    let dilatation = s.require("dilatation")?;
    let scale = match s.get("scale") {
        Some(e) => Some(parse_complex(&e.value, e.line)?),
        None => None,
    };
    Ok(MapDef::Shear {
        target: parse_target(&target.value, target.line)?,
        constant: parse_constant(&constant.value, constant.line)?,
        dilatation: parse_dilatation(&dilatation.value, dilatation.line)?,
        scale,
    })
}

fn parse_combine_section(s: &Section) -> PResult<MapDef> {
    let eta = s.require("eta")?;
    let mode = s.require("mode")?;
    let conjugate = match mode.value.as_str() {
        "same" => false,
        "conjugate" => true,
        other => return err(mode.line, format!("mode must be same|conjugate, got '{other}'")),
    };
    let lambda = match s.get("lambda") {
        Some(e) => parse_number(&e.value, e.line)?,
        None => 1.0,
    };
    Ok(MapDef::Combine {
        first: s.require("first")?.value.clone(),
        second: s.require("second")?.value.clone(),
        eta: parse_complex(&eta.value, eta.line)?,
        conjugate,
        lambda,
    })
}

fn parse_multi_section(s: &Section) -> PResult<MapDef> {
    let maps = s.require("maps")?;
    let weights = s.require("weights")?;
    Ok(MapDef::Multi {
        maps: parse_list(&maps.value, maps.line, |p, _| Ok(p.to_string()))?,
        weights: parse_list(&weights.value, weights.line, parse_number)?,
    })
}

fn parse_derive_section(s: &Section) -> PResult<MapDef> {
    let op = s.require("op")?;
    let (tag, fields) = structured(&op.value, op.line)?;
    let parsed = match tag {
        "upgrade" => DeriveOp::Upgrade {
            n: parse_number(field(&fields, "n", op.line, "upgrade")?, op.line)? as u32,
        },
        "scale" => DeriveOp::Scale {
            c: parse_complex(field(&fields, "c", op.line, "scale")?, op.line)?,
        },
        other => return err(op.line, format!("unknown derive op '{other}'")),
    };
    Ok(MapDef::Derive {
        from: s.require("from")?.value.clone(),
        op: parsed,
    })
}

fn opt_number(s: &Section, key: &str) -> PResult<Option<f64>> {
    match s.get(key) {
        Some(e) => Ok(Some(parse_number(&e.value, e.line)?)),
        None => Ok(None),
    }
}

fn opt_usize(s: &Section, key: &str) -> PResult<Option<usize>> {
    match s.get(key) {
        Some(e) => Ok(Some(parse_number(&e.value, e.line)? as usize)),
        None => Ok(None),
    }
}

fn parse_check_section(s: &Section) -> PResult<CheckDef> {
    let map = |key: &str| -> PResult<String> { Ok(s.require(key)?.value.clone()) };
    let kind = match s.label.as_str() {
        "univalence" => CheckKind::Univalence { map: map("map")? },
        "direction-convexity" => {
            let d = s.require("direction")?;
            CheckKind::DirectionConvexity {
                map: map("map")?,
                direction: parse_number(&d.value, d.line)?,
            }
        }
        "boundary-injectivity" => CheckKind::BoundaryInjectivity {
            map: map("map")?,
            radius: opt_number(s, "radius")?,
            samples: opt_usize(s, "samples")?,
        },
        "boundary-direction-convexity" => {
            let d = s.require("direction")?;
            CheckKind::BoundaryDirectionConvexity {
                map: map("map")?,
                direction: parse_number(&d.value, d.line)?,
                radius: opt_number(s, "radius")?,
                samples: opt_usize(s, "samples")?,
            }
        }
        "boundary-full-convexity" => CheckKind::BoundaryFullConvexity {
            map: map("map")?,
            radius: opt_number(s, "radius")?,
            samples: opt_usize(s, "samples")?,
        },
        "boundary-starlike" => CheckKind::BoundaryStarlike {
            map: map("map")?,
            radius: opt_number(s, "radius")?,
            samples: opt_usize(s, "samples")?,
        },
        "positive-real" => CheckKind::PositiveReal { map: map("map")? },
        "herglotz" => {
            let o1 = s.require("omega1")?;
            let o2 = s.require("omega2")?;
            let eta = s.require("eta")?;
            let weights = match s.get("weights") {
                Some(e) => {
                    let list = parse_list(&e.value, e.line, parse_number)?;
                    if list.len() != 2 {
                        return err(e.line, "weights needs exactly two values");
                    }
                    Some([list[0], list[1]])
                }
                None => None,
            };
            let positive = match s.get("positive") {
                Some(e) => match e.value.as_str() {
                    "true" => Some(true),
                    "false" => Some(false),
                    other => return err(e.line, format!("positive must be true|false, got '{other}'")),
                },
                None => None,
            };
            CheckKind::Herglotz {
                omega1: parse_dilatation(&o1.value, o1.line)?,
                omega2: parse_dilatation(&o2.value, o2.line)?,
                eta: parse_number(&eta.value, eta.line)?,
                lambda: match s.get("lambda") {
                    Some(e) => parse_number(&e.value, e.line)?,
                    None => 1.0,
                },
                weights,
                positive,
            }
        }
        "lemma-identity" => {
            let mu = s.require("mu")?;
            let nu = s.require("nu")?;
            let eta = s.require("eta")?;
            CheckKind::LemmaIdentity {
                first: map("first")?,
                second: map("second")?,
                mu: parse_number(&mu.value, mu.line)?,
                nu: parse_number(&nu.value, nu.line)?,
                eta: parse_complex(&eta.value, eta.line)?,
            }
        }
        "eta-bound" => {
            let a1 = s.require("alpha1")?;
            let a2 = s.require("alpha2")?;
            let v = s.require("value")?;
            CheckKind::EtaBound {
                alpha1: parse_number(&a1.value, a1.line)?,
                alpha2: parse_number(&a2.value, a2.line)?,
                value: parse_number(&v.value, v.line)?,
            }
        }
        "sharpness" => {
            let a = s.require("alpha")?;
            CheckKind::Sharpness {
                alpha: parse_number(&a.value, a.line)?,
                margin: match s.get("margin") {
                    Some(e) => parse_number(&e.value, e.line)?,
                    None => 0.05,
                },
            }
        }
        other => return err(s.line, format!("unknown check kind '{other}'")),
    };
    let expect = match s.get("expect") {
        Some(e) => parse_verdict(&e.value, e.line)?,
        None => Verdict::Pass,
    };
    Ok(CheckDef { kind, expect })
}

/// Parses a whole scenario file.
pub fn parse_scenario(source: &str) -> PResult<Scenario> {
    let (preamble, sections) = split_sections(source)?;

    let mut name = None;
    let mut order = DEFAULT_ORDER;
    let mut grid = DEFAULT_GRID;
    let mut boundary_radius = DEFAULT_BOUNDARY_RADIUS;
    let mut boundary_samples = DEFAULT_BOUNDARY_SAMPLES;
    let mut schema_seen = false;

    for e in &preamble {
        match e.key.as_str() {
            "schema" => {
                if e.value != "1" {
                    return err(e.line, format!("unsupported schema '{}'", e.value));
                }
                schema_seen = true;
            }
            "name" => name = Some(e.value.clone()),
            "order" => order = parse_number(&e.value, e.line)? as usize,
            "grid" => grid = parse_grid(&e.value, e.line)?,
            "boundary-radius" => boundary_radius = parse_number(&e.value, e.line)?,
            "boundary-samples" => boundary_samples = parse_number(&e.value, e.line)? as usize,
            other => return err(e.line, format!("unknown top-level key '{other}'")),
        }
    }
    if !schema_seen {
        return err(1, "missing 'schema = 1'");
    }
    let name = match name {
        Some(n) => n,
        None => return err(1, "missing 'name'"),
    };

    let mut maps = Vec::new();
    let mut checks = Vec::new();
    for s in &sections {
        match s.kind.as_str() {
            "map" | "combine" | "multi" | "derive" => {
                if s.label.is_empty() {
                    return err(s.line, format!("[{}] needs a name", s.kind));
                }
                if maps.iter().any(|(n, _)| *n == s.label) {
                    return err(s.line, format!("duplicate map name '{}'", s.label));
                }
                let def = match s.kind.as_str() {
                    "map" => parse_map_section(s)?,
                    "combine" => parse_combine_section(s)?,
                    "multi" => parse_multi_section(s)?,
                    _ => parse_derive_section(s)?,
                };
                maps.push((s.label.clone(), def));
            }
            "check" => checks.push(parse_check_section(s)?),
            other => return err(s.line, format!("unknown section kind '{other}'")),
        }
    }

    Ok(Scenario {
        name,
        order,
        grid,
        boundary_radius,
        boundary_samples,
        maps,
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn numbers_cover_pi_fraction_and_decimal_forms() {
        let pi = std::f64::consts::PI;
        for (text, expected) in [
            ("0.99", 0.99),
            ("-1/3", -1.0 / 3.0),
            ("pi", pi),
            ("-pi", -pi),
            ("pi/6", pi / 6.0),
            ("-pi/6", -pi / 6.0),
            ("2pi/3", 2.0 * pi / 3.0),
            ("0.5pi", 0.5 * pi),
            ("-3pi/2", -3.0 * pi / 2.0),
        ] {
            assert_eq!(parse_number(text, 1).unwrap(), expected, "{text}");
        }
        assert!(parse_number("pie", 1).is_err());
        assert!(parse_number("1/0", 1).is_err());
        assert!(parse_number("", 1).is_err());
    }

    #[test]
    fn complex_grammar() {
        for (text, re, im) in [
            ("0.5", 0.5, 0.0),
            ("-1/7", -1.0 / 7.0, 0.0),
            ("0.6-0.35i", 0.6, -0.35),
            ("-0.5+0.6i", -0.5, 0.6),
            ("1i", 0.0, 1.0),
            ("-i", 0.0, -1.0),
            ("i", 0.0, 1.0),
            ("pi/4-1/3i", std::f64::consts::FRAC_PI_4, -1.0 / 3.0),
            ("0.1+0.1i", 0.1, 0.1),
        ] {
            let z = parse_complex(text, 1).unwrap();
            assert_eq!((z.re, z.im), (re, im), "{text}");
        }
    }

    #[test]
    fn minimal_scenario_parses_with_defaults() {
        let src = "\
schema = 1
name = demo

[map f]
target = kernel mu=0 nu=0
constant = direction phi=0
dilatation = monomial coefficient=0.5 degree=1

[check univalence]
map = f
";
        let sc = parse_scenario(src).unwrap();
        assert_eq!(sc.name, "demo");
        assert_eq!(sc.order, DEFAULT_ORDER);
        assert_eq!(sc.grid, DEFAULT_GRID);
        assert_eq!(sc.maps.len(), 1);
        assert_eq!(sc.checks.len(), 1);
        assert_eq!(sc.checks[0].expect, Verdict::Pass);
    }

    #[test]
    fn comments_and_overrides() {
        let src = "\
# leading comment
schema = 1
name = demo  # trailing comment
order = 512
grid = 8x64@0.9
boundary-radius = 0.95
boundary-samples = 256

[check eta-bound]
alpha1 = 1/5
alpha2 = 1/7
value = 1
expect = pass
";
        let sc = parse_scenario(src).unwrap();
        assert_eq!(sc.order, 512);
        assert_eq!(
            sc.grid,
            GridSpec {
                radii: 8,
                angles: 64,
                max_radius: 0.9
            }
        );
        assert_eq!(sc.boundary_radius, 0.95);
        assert_eq!(sc.boundary_samples, 256);
    }

    #[test]
    fn errors_carry_line_numbers() {
        let src = "schema = 1\nname = x\nbogus-key = 3\n";
        let e = parse_scenario(src).unwrap_err();
        assert_eq!(e.line, 3);

        let e = parse_scenario("name = x\n").unwrap_err();
        assert!(e.message.contains("schema"));

        let src = "schema = 1\nname = x\n\n[check univalence]\nexpect = pass\n";
        let e = parse_scenario(src).unwrap_err();
        assert!(e.message.contains("missing 'map'"), "{}", e.message);
    }

    #[test]
    fn duplicate_map_names_are_rejected() {
        let src = "\
schema = 1
name = demo

[combine c]
first = a
second = b
eta = 1
mode = same

[combine c]
first = a
second = b
eta = 0
mode = same
";
        let e = parse_scenario(src).unwrap_err();
        assert!(e.message.contains("duplicate"));
    }
}
