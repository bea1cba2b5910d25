//! Command-line front end: runs scenario files, emits boundary polygons, and
//! sweeps combination weights.
//!
//! Exit codes: 0 when every check matched its expected verdict, 2 when some
//! check did not, 3 for usage, parse, or construction errors.

mod reports;
mod runner;
mod scenario;

use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};
use harmshear::geometry::boundary_polyline;
use harmshear::{criteria, Grid};

use runner::RunError;
use scenario::{MapDef, Scenario};

/// Scenarios shipped inside the binary; `run` also accepts filesystem paths.
const BUNDLED: &[(&str, &str)] = &[
    (
        "halfplane-real-eta",
        include_str!("../../../scenarios/halfplane-real-eta.scn"),
    ),
    (
        "strip-same-target",
        include_str!("../../../scenarios/strip-same-target.scn"),
    ),
    (
        "negative-lambda",
        include_str!("../../../scenarios/negative-lambda.scn"),
    ),
    (
        "eta-disk-sharp",
        include_str!("../../../scenarios/eta-disk-sharp.scn"),
    ),
    (
        "sharpness-margin",
        include_str!("../../../scenarios/sharpness-margin.scn"),
    ),
    (
        "conjugate-lemma",
        include_str!("../../../scenarios/conjugate-lemma.scn"),
    ),
    (
        "convexity-upgrade-n1",
        include_str!("../../../scenarios/convexity-upgrade-n1.scn"),
    ),
    (
        "convexity-upgrade-n2",
        include_str!("../../../scenarios/convexity-upgrade-n2.scn"),
    ),
    (
        "multi-combination",
        include_str!("../../../scenarios/multi-combination.scn"),
    ),
    (
        "halfplane-blend",
        include_str!("../../../scenarios/halfplane-blend.scn"),
    ),
    (
        "log-blend",
        include_str!("../../../scenarios/log-blend.scn"),
    ),
    (
        "eta-bound-pairs",
        include_str!("../../../scenarios/eta-bound-pairs.scn"),
    ),
    (
        "herglotz-weights",
        include_str!("../../../scenarios/herglotz-weights.scn"),
    ),
];

#[derive(Parser)]
#[command(
    name = "harmshear",
    version,
    about = "Planar harmonic mappings by shearing, their weighted combinations, and convexity verification"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a scenario (bundled name or path to a .scn file) and write reports.
    Run {
        scenario: String,
        /// Directory for the .txt / .rpt report pair.
        #[arg(long, default_value = "reports")]
        out: PathBuf,
    },
    /// List the bundled scenarios.
    ListScenarios,
    /// Sample a mapping's boundary circle image as CSV.
    EmitBoundary {
        scenario: String,
        /// Which mapping in the scenario to sample.
        map: String,
        /// Circle radius (defaults to the scenario's boundary radius).
        #[arg(long)]
        radius: Option<f64>,
        /// Number of samples (defaults to the scenario's boundary samples).
        #[arg(long)]
        samples: Option<usize>,
        /// Output file (stdout when omitted).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Scale the first combination's weight from 0 to eta and report the
    /// univalence margin at each step, as CSV on stdout.
    SweepEta {
        scenario: String,
        /// Number of steps between 0 and the endpoint.
        #[arg(long, default_value_t = 10)]
        steps: usize,
        /// Endpoint magnitude; defaults to the scenario weight's own.
        #[arg(long)]
        radius: Option<f64>,
    },
}

fn init_threads() {
    #[cfg(feature = "parallel")]
    if let Ok(v) = std::env::var("HARMSHEAR_THREADS") {
        match v.parse::<usize>() {
            Ok(n) if n > 0 => {
                let _ = rayon::ThreadPoolBuilder::new()
                    .num_threads(n)
                    .build_global();
            }
            _ => eprintln!("warning: ignoring HARMSHEAR_THREADS={v} (want a positive integer)"),
        }
    }
}

fn load_scenario(name_or_path: &str) -> Result<Scenario, RunError> {
    let path = Path::new(name_or_path);
    let source = if path.exists() {
        std::fs::read_to_string(path)
            .map_err(|e| RunError::Setup(format!("cannot read {}: {e}", path.display())))?
    } else if let Some((_, content)) = BUNDLED.iter().find(|(n, _)| *n == name_or_path) {
        (*content).to_string()
    } else {
        return Err(RunError::Setup(format!(
            "'{name_or_path}' is neither a file nor a bundled scenario (try list-scenarios)"
        )));
    };
    scenario::parse_scenario(&source).map_err(|e| RunError::Setup(format!("{name_or_path}: {e}")))
}

fn cmd_run(name: &str, out_dir: &Path) -> Result<i32, RunError> {
    let sc = load_scenario(name)?;
    let started = std::time::Instant::now();
    let outcome = runner::run_scenario(&sc)?;
    let text = reports::render_text(&outcome);
    let rpt = reports::render_rpt(&outcome);

    std::fs::create_dir_all(out_dir)
        .map_err(|e| RunError::Setup(format!("cannot create {}: {e}", out_dir.display())))?;
    let txt_path = out_dir.join(format!("{}.txt", outcome.name));
    let rpt_path = out_dir.join(format!("{}.rpt", outcome.name));
    std::fs::write(&txt_path, &text)
        .map_err(|e| RunError::Setup(format!("cannot write {}: {e}", txt_path.display())))?;
    std::fs::write(&rpt_path, &rpt)
        .map_err(|e| RunError::Setup(format!("cannot write {}: {e}", rpt_path.display())))?;

    print!("{text}");
    println!(
        "reports: {} and {} ({:.2}s)",
        txt_path.display(),
        rpt_path.display(),
        started.elapsed().as_secs_f64()
    );
    Ok(if outcome.all_matched() { 0 } else { 2 })
}

fn cmd_list() -> i32 {
    for (name, content) in BUNDLED {
        let description = content
            .lines()
            .find_map(|l| l.trim().strip_prefix('#').map(str::trim))
            .unwrap_or("");
        println!("{name}: {description}");
    }
    0
}

fn cmd_emit_boundary(
    name: &str,
    map: &str,
    radius: Option<f64>,
    samples: Option<usize>,
    out: Option<&Path>,
) -> Result<i32, RunError> {
    let sc = load_scenario(name)?;
    let built = runner::build_maps(&sc)?;
    let m = built.get(map)?;
    let polygon = boundary_polyline(
        &m.mapping,
        radius.unwrap_or(sc.boundary_radius),
        samples.unwrap_or(sc.boundary_samples),
    )?;
    let csv = polygon.to_csv();
    match out {
        Some(path) => std::fs::write(path, csv)
            .map_err(|e| RunError::Setup(format!("cannot write {}: {e}", path.display())))?,
        None => print!("{csv}"),
    }
    Ok(0)
}

fn cmd_sweep_eta(name: &str, steps: usize, radius: Option<f64>) -> Result<i32, RunError> {
    let sc = load_scenario(name)?;
    if steps == 0 {
        return Err(RunError::Setup("steps must be positive".into()));
    }
    let combine_def = sc.maps.iter().find_map(|(id, def)| match def {
        MapDef::Combine {
            first,
            second,
            eta,
            conjugate,
            lambda,
        } => Some((id.clone(), first.clone(), second.clone(), *eta, *conjugate, *lambda)),
        _ => None,
    });
    let (id, first, second, eta0, conjugate, lambda) = match combine_def {
        Some(t) => t,
        None => return Err(RunError::Setup(format!("scenario '{}' has no [combine] section", sc.name))),
    };
    let endpoint = match radius {
        Some(r) => {
            if eta0.norm() == 0.0 {
                return Err(RunError::Setup("cannot rescale a zero weight".into()));
            }
            eta0 * (r / eta0.norm())
        }
        None => eta0,
    };

    let built = runner::build_maps(&sc)?;
    let f1 = &built.get(&first)?.mapping;
    let f2 = &built.get(&second)?.mapping;
    let grid = Grid::equispaced(sc.grid.radii, sc.grid.max_radius, sc.grid.angles)?;

    eprintln!("sweeping {id}: eta from 0 to {}", reports::fmt_complex(endpoint));
    println!("eta_re,eta_im,max_dilatation,min_jacobian,verdict");
    let mode = if conjugate {
        harmshear::combine::CombinationMode::ConjugateParameter
    } else {
        harmshear::combine::CombinationMode::SameParameter
    };
    for k in 0..=steps {
        let eta = endpoint * (k as f64 / steps as f64);
        let spec = harmshear::combine::CombinationSpec::new(f1, f2, eta, mode).with_lambda(lambda);
        let f = harmshear::combine::combine(&spec)?;
        let r = criteria::check_local_univalence(&f, &grid)?;
        println!(
            "{},{},{},{},{}",
            eta.re, eta.im, r.max_dilatation, r.min_jacobian, r.report.verdict
        );
    }
    Ok(0)
}

fn dispatch(cli: Cli) -> Result<i32, RunError> {
    match cli.command {
        Command::Run { scenario, out } => cmd_run(&scenario, &out),
        Command::ListScenarios => Ok(cmd_list()),
        Command::EmitBoundary {
            scenario,
            map,
            radius,
            samples,
            out,
        } => cmd_emit_boundary(&scenario, &map, radius, samples, out.as_deref()),
        Command::SweepEta {
            scenario,
            steps,
            radius,
        } => cmd_sweep_eta(&scenario, steps, radius),
    }
}

fn main() {
    // Die quietly when a pager or `head` closes our pipe instead of
    // panicking on the failed write.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            // --help / --version are not usage errors.
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 3,
            };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    init_threads();
    let code = match dispatch(cli) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            3
        }
    };
    std::process::exit(code);
}
