//! Batch command-line front end.
//!
//! Subcommands load a map (inline `catalog:params` string or JSON file),
//! run one analysis, and emit a self-describing artifact: JSON reports,
//! CSV tables, or a PGM basin raster with a JSON sidecar. All randomness
//! flows from the single `--seed` flag and every output embeds the full
//! parameter set, so identical invocations produce byte-identical files.
//!
//! Exit codes: 0 ok, 2 malformed spec or arguments, 3 precondition
//! violation (invalid parameter ranges, origin not fixed, not a saddle,
//! rational tau, ...), 4 internal failure.

use crate::basin::basin_raster;
use crate::catalog::{self, RadialProfile};
use crate::certify::{
    global_attractor_certifier, global_saddle_probe, CertifierConfig, SaddleConfig, SaddleError,
};
use crate::circle::{
    denjoy_construct, equivariance_check_circle, periodic_point_probe, rigid_rotation,
    rotation_number, suspend, CircleError, CircleLift, GapLengthLaw,
};
use crate::dynamics::{
    find_periodic, iterate, symmetric_periodic_search, DynError, OmegaConfig, PeriodicOrbit,
};
use crate::maps::{check_equivariance, classify_origin, dmy_spectral_check, MapError, PlanarMap};
use crate::plane::{Point, Rect};
use crate::polynomial::PolynomialMap;
use crate::symmetry::{commutes_with_group, SymmetryGroup};
use clap::{Args, Parser, Subcommand};
use serde::Deserialize;
use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

#[derive(Debug)]
pub enum CliError {
    /// Malformed map spec, group literal, or argument syntax.
    Spec(String),
    /// Structurally valid request whose mathematical precondition fails.
    Precondition(String),
    /// IO or numeric failure while assembling the artifact.
    Internal(String),
}

impl CliError {
    pub fn code(&self) -> i32 {
        match self {
            CliError::Spec(_) => 2,
            CliError::Precondition(_) => 3,
            CliError::Internal(_) => 4,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Spec(m) => write!(f, "spec error: {m}"),
            CliError::Precondition(m) => write!(f, "precondition violation: {m}"),
            CliError::Internal(m) => write!(f, "internal failure: {m}"),
        }
    }
}

impl From<MapError> for CliError {
    fn from(e: MapError) -> Self {
        CliError::Precondition(e.to_string())
    }
}

impl From<CircleError> for CliError {
    fn from(e: CircleError) -> Self {
        CliError::Precondition(e.to_string())
    }
}

impl From<DynError> for CliError {
    fn from(e: DynError) -> Self {
        CliError::Precondition(e.to_string())
    }
}

impl From<SaddleError> for CliError {
    fn from(e: SaddleError) -> Self {
        CliError::Precondition(e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Internal(e.to_string())
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "equidyn",
    about = "Symmetry-aware analysis of discrete planar dynamics",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct MapArg {
    /// Map spec: `catalog_id[:name=value,...]` or a path to a JSON file
    /// (`{"catalog": id, "params": {...}}` or
    /// `{"polynomial": {"x": [[i,j,c],...], "y": [...]}, "group": "..."}`).
    #[arg(long)]
    map: String,
}

#[derive(Args, Debug, Clone)]
struct OutArg {
    /// Output directory; artifacts print to stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Classify the origin: local type, eigenvalues, admissible Jacobian
    /// form, equivariance against the claimed group.
    Classify {
        #[command(flatten)]
        map: MapArg,
        /// Hyperbolicity margin around the unit circle.
        #[arg(long, default_value_t = crate::maps::DEFAULT_TOL_HYP)]
        tol_hyp: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        out: OutArg,
    },
    /// Sampled equivariance check of a map against a group.
    Equivariance {
        #[command(flatten)]
        map: MapArg,
        /// Group literal: O2, SO2, D<n>, Z<n>, Z2k, Z2, triv.
        #[arg(long)]
        group: String,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 10.0)]
        radius: f64,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        out: OutArg,
    },
    /// Dump a forward orbit as CSV (columns k, x, y).
    Orbit {
        #[command(flatten)]
        map: MapArg,
        /// Initial point `x,y`.
        #[arg(long, allow_hyphen_values = true)]
        start: String,
        #[arg(long, default_value_t = 100)]
        steps: usize,
        #[command(flatten)]
        out: OutArg,
    },
    /// Rasterize basins over a rectangle: PGM plus JSON sidecar.
    Basin {
        #[command(flatten)]
        map: MapArg,
        /// Rectangle `x0,x1,y0,y1`.
        #[arg(long, default_value = "-2,2,-2,2", allow_hyphen_values = true)]
        bounds: String,
        /// Grid resolution `NXxNY`.
        #[arg(long, default_value = "200x200")]
        res: String,
        #[arg(long, default_value_t = 10_000)]
        budget: usize,
        #[arg(long, default_value_t = 1e-9)]
        eps_zero: f64,
        #[arg(long, default_value_t = 1e6)]
        r_escape: f64,
        #[command(flatten)]
        out: OutArg,
    },
    /// Search for periodic orbits from a seed grid; CSV of orbits.
    Periodic {
        #[command(flatten)]
        map: MapArg,
        #[arg(long)]
        period: usize,
        /// Use the equivariance-reduced search `zeta^{-1} f(p) = p` for the
        /// group's rotation order instead of the direct period search.
        #[arg(long, default_value_t = false)]
        symmetric: bool,
        /// Group for the symmetric search (defaults to the map's claim).
        #[arg(long)]
        group: Option<String>,
        #[arg(long, default_value = "-2,2,-2,2", allow_hyphen_values = true)]
        bounds: String,
        /// Seed grid resolution (grid x grid).
        #[arg(long, default_value_t = 41)]
        grid: usize,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        #[arg(long, default_value_t = 50)]
        max_newton: usize,
        #[command(flatten)]
        out: OutArg,
    },
    /// Run the global-attractor certifier; JSON report.
    CertifyGlobal {
        #[command(flatten)]
        map: MapArg,
        /// Group whose hypotheses are probed (defaults to the map's claim).
        #[arg(long)]
        group: Option<String>,
        #[arg(long, default_value = "-10,10,-10,10", allow_hyphen_values = true)]
        bounds: String,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 10_000)]
        budget: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        out: OutArg,
    },
    /// Probe the D_2 global-saddle picture; JSON report.
    SaddleProbe {
        #[command(flatten)]
        map: MapArg,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        out: OutArg,
    },
    /// Rotation-number table (CSV: n_iter, estimate, bound).
    Rotnum {
        /// Lift spec: `rigid:w=0.25` or
        /// `denjoy:tau=0.618,m=2,k=40,lambda=0.5,mass=0.5`.
        #[arg(long)]
        lift: String,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        x0: f64,
        /// Largest iterate count; the table steps through powers of 10.
        #[arg(long, default_value_t = 100_000)]
        iters: usize,
        #[command(flatten)]
        out: OutArg,
    },
    /// Construct an equivariant Denjoy lift; JSON gap table plus probe
    /// summary.
    Denjoy {
        #[arg(long, allow_negative_numbers = true)]
        tau: f64,
        #[arg(long)]
        m: u32,
        #[arg(long, default_value_t = 40)]
        k: i32,
        #[arg(long, default_value_t = 0.5)]
        lambda: f64,
        #[arg(long, default_value_t = 0.5)]
        mass: f64,
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        #[command(flatten)]
        out: OutArg,
    },
    /// Suspend a circle lift into the plane and verify the bridge; JSON
    /// report.
    Suspend {
        #[arg(long)]
        lift: String,
        /// Radial contraction strength in (0, 1).
        #[arg(long, default_value_t = 0.5)]
        contraction: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        out: OutArg,
    },
    /// List catalog map constructors and their parameters.
    Catalog,
}

/// Entry point used by the binary; returns the process exit code.
pub fn run_from<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            // --help/--version arrive here as "errors" with success status
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(cli.command) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("{e}");
            e.code()
        }
    }
}

fn dispatch(cmd: Command) -> Result<(), CliError> {
    match cmd {
        Command::Classify {
            map,
            tol_hyp,
            seed,
            out,
        } => cmd_classify(&load_map(&map.map)?, tol_hyp, seed, &out),
        Command::Equivariance {
            map,
            group,
            samples,
            radius,
            tol,
            seed,
            out,
        } => {
            let group = parse_group(&group)?;
            let map = load_map(&map.map)?;
            let report = check_equivariance(&map, &group, samples, radius, tol, seed);
            emit_json(&out, "equivariance.json", &serde_json::json!(report))
        }
        Command::Orbit {
            map,
            start,
            steps,
            out,
        } => cmd_orbit(&load_map(&map.map)?, parse_point(&start)?, steps, &out),
        Command::Basin {
            map,
            bounds,
            res,
            budget,
            eps_zero,
            r_escape,
            out,
        } => {
            let bounds = parse_bounds(&bounds)?;
            let (nx, ny) = parse_resolution(&res)?;
            let cfg = OmegaConfig {
                budget,
                eps_zero,
                r_escape,
                ..OmegaConfig::default()
            };
            let grid = basin_raster(&load_map(&map.map)?, bounds, nx, ny, &cfg);
            emit_bytes(&out, "basin.pgm", &grid.to_pgm())?;
            emit_json(&out, "basin.json", &grid.metadata())
        }
        Command::Periodic {
            map,
            period,
            symmetric,
            group,
            bounds,
            grid,
            tol,
            max_newton,
            out,
        } => {
            let map = load_map(&map.map)?;
            let bounds = parse_bounds(&bounds)?;
            let seeds = bounds.grid(grid, grid);
            let orbits = if symmetric {
                let group = match group {
                    Some(g) => parse_group(&g)?,
                    None => map.claimed_group(),
                };
                symmetric_periodic_search(&map, &group, &seeds, tol, max_newton)?
            } else {
                find_periodic(&map, period, &seeds, tol, max_newton)
            };
            let params = serde_json::json!({
                "map": map.catalog_id(), "map_params": map.params(),
                "period": period, "symmetric": symmetric,
                "bounds": bounds, "grid": grid, "tol": tol, "max_newton": max_newton,
            });
            emit_text(&out, "periodic.csv", &orbits_csv(&orbits, &params))
        }
        Command::CertifyGlobal {
            map,
            group,
            bounds,
            samples,
            budget,
            seed,
            out,
        } => {
            let map = load_map(&map.map)?;
            let group = match group {
                Some(g) => parse_group(&g)?,
                None => map.claimed_group(),
            };
            let cfg = CertifierConfig {
                bounds: parse_bounds(&bounds)?,
                conclusion_samples: samples,
                omega: OmegaConfig {
                    budget,
                    ..OmegaConfig::default()
                },
                seed,
                ..CertifierConfig::default()
            };
            let report = global_attractor_certifier(&map, &group, &cfg);
            emit_json(&out, "certify.json", &serde_json::json!(report))
        }
        Command::SaddleProbe {
            map,
            samples,
            seed,
            out,
        } => {
            let map = load_map(&map.map)?;
            let cfg = SaddleConfig {
                samples_per_quadrant: samples,
                seed,
                ..SaddleConfig::default()
            };
            let report = global_saddle_probe(&map, &cfg)?;
            emit_json(&out, "saddle.json", &serde_json::json!(report))
        }
        Command::Rotnum {
            lift,
            x0,
            iters,
            out,
        } => {
            let lift = parse_lift(&lift)?;
            let params = serde_json::json!({ "lift": lift, "x0": x0, "iters": iters });
            let mut rows = String::new();
            let mut n = 10usize;
            while n <= iters.max(10) {
                let est = rotation_number(&lift, x0, n);
                rows.push_str(&format!("{},{},{}\n", est.n_iter, est.estimate, est.bound));
                n = n.saturating_mul(10);
            }
            let csv = format!("# {params}\nn_iter,estimate,bound\n{rows}");
            emit_text(&out, "rotnum.csv", &csv)
        }
        Command::Denjoy {
            tau,
            m,
            k,
            lambda,
            mass,
            samples,
            out,
        } => {
            let lift = denjoy_construct(
                tau,
                m,
                k,
                GapLengthLaw {
                    lambda,
                    total_mass: mass,
                },
            )?;
            let equi = equivariance_check_circle(&lift, m, samples, 1e-12);
            let probe = periodic_point_probe(&lift, 20, samples);
            let rot = rotation_number(&lift, 0.0, 100_000);
            let gaps = lift.gap_structure().expect("denjoy lift has a gap table");
            let report = serde_json::json!({
                "gap_table": gaps,
                "equivariance": equi,
                "periodic_probe": probe,
                "rotation_number": rot,
            });
            emit_json(&out, "denjoy.json", &report)
        }
        Command::Suspend {
            lift,
            contraction,
            seed,
            out,
        } => cmd_suspend(&lift, contraction, seed, &out),
        Command::Catalog => {
            let listing = serde_json::json!({
                "catalog": [
                    { "id": "d2_cubic", "params": ["a (0 < a < 1)"], "group": "D2",
                      "formula": "(x, y) -> (-a x^3 + (a-1) x, -y/2)" },
                    { "id": "twist_zn", "params": ["n (>= 2)", "c (0 < c < 1)"], "group": "Z<n>",
                      "formula": "(rho, theta) -> (rho((1-c) + c rho^2), theta + 2 pi / n)" },
                    { "id": "so2_radial", "params": ["w", "one of: k | c | c_exp"], "group": "SO2",
                      "formula": "(rho, theta) -> (r(rho), theta + w)" },
                    { "id": "linear_saddle", "params": ["alpha", "beta"], "group": "D2",
                      "formula": "(x, y) -> (alpha x, beta y)" },
                ],
                "lifts": [
                    { "id": "rigid", "params": ["w"] },
                    { "id": "denjoy", "params": ["tau", "m", "k", "lambda", "mass"] },
                ],
            });
            println!("{}", serde_json::to_string_pretty(&listing).unwrap());
            Ok(())
        }
    }
}

fn cmd_classify(map: &PlanarMap, tol_hyp: f64, seed: u64, out: &OutArg) -> Result<(), CliError> {
    let classification = classify_origin(map, tol_hyp)?;
    let group = map.claimed_group();
    let j0 = map.jacobian(Point::new(0.0, 0.0), crate::maps::DEFAULT_FD_STEP);
    let form = group.admissible_jacobian_form();
    let equivariance = check_equivariance(map, &group, 400, 5.0, 1e-9, seed);
    let dmy = dmy_spectral_check(map, Rect::centered(2.0), 41, crate::maps::DEFAULT_FD_STEP);
    let report = serde_json::json!({
        "map": { "catalog": map.catalog_id(), "params": map.params() },
        "group": group.literal(),
        "class": classification.class.to_string(),
        "eigenvalues": classification.eigenvalues,
        "tol_hyp": tol_hyp,
        "jacobian_at_origin": [[j0[(0,0)], j0[(0,1)]], [j0[(1,0)], j0[(1,1)]]],
        "admissible_form": form.to_string(),
        "jacobian_matches_form": form.matches(&j0, 1e-9),
        "jacobian_commutes_with_group": commutes_with_group(&j0, &group, 1e-9),
        "equivariance": equivariance,
        "spectral_scan": {
            "region": dmy.region,
            "all_inside_unit_disk": dmy.all_inside_unit_disk,
            "worst_radius": dmy.worst_radius,
            "intersects_nonneg_real_axis": dmy.intersects_nonneg_real_axis,
        },
    });
    emit_json(out, "classify.json", &report)
}

fn cmd_orbit(map: &PlanarMap, start: Point, steps: usize, out: &OutArg) -> Result<(), CliError> {
    let orbit = iterate(map, start, steps);
    let params = serde_json::json!({
        "map": map.catalog_id(), "map_params": map.params(),
        "start": [start.x, start.y], "steps": steps, "escaped": orbit.escaped,
    });
    let mut csv = format!("# {params}\nk,x,y\n");
    for (k, p) in orbit.points.iter().enumerate() {
        csv.push_str(&format!("{},{},{}\n", k, csv_num(p.x), csv_num(p.y)));
    }
    emit_text(out, "orbit.csv", &csv)
}

fn cmd_suspend(lift_spec: &str, contraction: f64, seed: u64, out: &OutArg) -> Result<(), CliError> {
    let lift = parse_lift(lift_spec)?;
    let map = suspend(&lift, contraction)?;
    let group = map.claimed_group();
    let equivariance = check_equivariance(&map, &group, 1000, 2.0, 1e-9, seed);
    let cfg = OmegaConfig::default();
    let inner = crate::dynamics::classify_omega(&map, Point::new(0.5, 0.0), &cfg);
    let outer = crate::dynamics::classify_omega(&map, Point::new(1.5, 0.0), &cfg);
    // per-step angular comparison along the lift orbit on the unit circle
    let mut x = 0.12345_f64;
    let mut worst = 0.0_f64;
    for _ in 0..1000 {
        let p = Point::new(
            (std::f64::consts::TAU * x).cos(),
            (std::f64::consts::TAU * x).sin(),
        );
        let q = map.eval_raw(p);
        let y = lift.evaluate(x);
        let angle = q.y.atan2(q.x) / std::f64::consts::TAU;
        let d = angle - y;
        worst = worst.max((d - d.round()).abs());
        x = y;
    }
    let report = serde_json::json!({
        "lift": lift,
        "contraction": contraction,
        "claimed_group": group.literal(),
        "planar_equivariance": equivariance,
        "interior_sample": inner,
        "exterior_sample": outer,
        "boundary_angular_defect_per_step": worst,
    });
    emit_json(out, "suspend.json", &report)
}

/// Canonicalize `-0` so CSV artifacts are stable to look at.
fn csv_num(v: f64) -> f64 {
    if v == 0.0 {
        0.0
    } else {
        v
    }
}

fn orbits_csv(orbits: &[PeriodicOrbit], params: &serde_json::Value) -> String {
    let mut csv = format!(
        "# {params}\norbit,period,index,x,y,mult1_re,mult1_im,mult2_re,mult2_im\n"
    );
    for (oi, orbit) in orbits.iter().enumerate() {
        for (pi, p) in orbit.points.iter().enumerate() {
            csv.push_str(&format!(
                "{},{},{},{},{},{},{},{},{}\n",
                oi,
                orbit.period,
                pi,
                csv_num(p.x),
                csv_num(p.y),
                csv_num(orbit.multipliers[0].re),
                csv_num(orbit.multipliers[0].im),
                csv_num(orbit.multipliers[1].re),
                csv_num(orbit.multipliers[1].im),
            ));
        }
    }
    csv
}

// ---- spec parsing -------------------------------------------------------

#[derive(Debug, Deserialize)]
struct MapSpecJson {
    catalog: Option<String>,
    #[serde(default)]
    params: BTreeMap<String, f64>,
    polynomial: Option<PolySpecJson>,
    group: Option<String>,
}

#[derive(Debug, Deserialize)]
struct PolySpecJson {
    #[serde(default)]
    x: Vec<(u32, u32, f64)>,
    #[serde(default)]
    y: Vec<(u32, u32, f64)>,
}

pub fn parse_group(s: &str) -> Result<SymmetryGroup, CliError> {
    SymmetryGroup::parse(s).map_err(|e| CliError::Spec(e.to_string()))
}

/// Load a map from an inline `id[:k=v,...]` string or a JSON file path.
pub fn load_map(spec: &str) -> Result<PlanarMap, CliError> {
    let known_inline = ["d2_cubic", "twist_zn", "so2_radial", "linear_saddle"];
    let inline_id = spec.split(':').next().unwrap_or("");
    if known_inline.contains(&inline_id) {
        let params = match spec.split_once(':') {
            Some((_, rest)) => parse_inline_params(rest)?,
            None => BTreeMap::new(),
        };
        return build_catalog_map(inline_id, &params);
    }
    if Path::new(spec).exists() {
        let text = std::fs::read_to_string(spec)
            .map_err(|e| CliError::Spec(format!("cannot read map file `{spec}`: {e}")))?;
        return load_map_json(&text);
    }
    Err(CliError::Spec(format!(
        "`{spec}` is neither a known catalog id ({}) nor an existing file",
        known_inline.join(", ")
    )))
}

/// Parse the JSON map-spec format.
pub fn load_map_json(text: &str) -> Result<PlanarMap, CliError> {
    let spec: MapSpecJson =
        serde_json::from_str(text).map_err(|e| CliError::Spec(format!("bad map JSON: {e}")))?;
    match (spec.catalog, spec.polynomial) {
        (Some(id), None) => build_catalog_map(&id, &spec.params),
        (None, Some(poly)) => {
            let group = match spec.group {
                Some(g) => parse_group(&g)?,
                None => SymmetryGroup::Trivial,
            };
            let pmap = PolynomialMap::from_terms(&poly.x, &poly.y)?;
            Ok(pmap.to_planar_map(group))
        }
        _ => Err(CliError::Spec(
            "map JSON must contain exactly one of `catalog` or `polynomial`".into(),
        )),
    }
}

fn require(params: &BTreeMap<String, f64>, key: &str, id: &str) -> Result<f64, CliError> {
    params
        .get(key)
        .copied()
        .ok_or_else(|| CliError::Spec(format!("catalog map `{id}` requires parameter `{key}`")))
}

pub fn build_catalog_map(id: &str, params: &BTreeMap<String, f64>) -> Result<PlanarMap, CliError> {
    match id {
        "d2_cubic" => Ok(catalog::d2_cubic(require(params, "a", id)?)?),
        "twist_zn" => {
            let n = require(params, "n", id)?;
            if n.fract() != 0.0 || n < 0.0 {
                return Err(CliError::Spec(format!(
                    "twist_zn parameter n must be a nonnegative integer, got {n}"
                )));
            }
            Ok(catalog::twist_zn(n as u32, require(params, "c", id)?)?)
        }
        "so2_radial" => {
            let w = require(params, "w", id)?;
            let profile = if let Some(&k) = params.get("k") {
                RadialProfile::Linear { k }
            } else if let Some(&c) = params.get("c") {
                RadialProfile::CubicTwist { c }
            } else if let Some(&c) = params.get("c_exp") {
                RadialProfile::ExpUnit { c }
            } else {
                return Err(CliError::Spec(
                    "so2_radial requires one of the profile parameters `k`, `c`, `c_exp`".into(),
                ));
            };
            Ok(catalog::so2_radial(profile, w)?)
        }
        "linear_saddle" => Ok(catalog::linear_saddle(
            require(params, "alpha", id)?,
            require(params, "beta", id)?,
        )?),
        other => Err(CliError::Spec(format!("unknown catalog id `{other}`"))),
    }
}

fn parse_inline_params(s: &str) -> Result<BTreeMap<String, f64>, CliError> {
    let mut out = BTreeMap::new();
    for item in s.split(',').filter(|t| !t.is_empty()) {
        let (k, v) = item
            .split_once('=')
            .ok_or_else(|| CliError::Spec(format!("bad parameter `{item}` (expected k=v)")))?;
        let value: f64 = v
            .parse()
            .map_err(|_| CliError::Spec(format!("bad numeric value in `{item}`")))?;
        out.insert(k.trim().to_string(), value);
    }
    Ok(out)
}

pub fn parse_bounds(s: &str) -> Result<Rect, CliError> {
    let parts: Vec<f64> = s
        .split(',')
        .map(|t| t.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .map_err(|_| CliError::Spec(format!("bad bounds `{s}` (expected x0,x1,y0,y1)")))?;
    if parts.len() != 4 || parts[0] >= parts[1] || parts[2] >= parts[3] {
        return Err(CliError::Spec(format!(
            "bad bounds `{s}` (expected x0 < x1 and y0 < y1)"
        )));
    }
    Ok(Rect::new(parts[0], parts[1], parts[2], parts[3]))
}

pub fn parse_resolution(s: &str) -> Result<(usize, usize), CliError> {
    let (a, b) = s
        .split_once(['x', 'X'])
        .ok_or_else(|| CliError::Spec(format!("bad resolution `{s}` (expected NXxNY)")))?;
    let nx: usize = a
        .parse()
        .map_err(|_| CliError::Spec(format!("bad resolution `{s}`")))?;
    let ny: usize = b
        .parse()
        .map_err(|_| CliError::Spec(format!("bad resolution `{s}`")))?;
    if nx == 0 || ny == 0 {
        return Err(CliError::Spec("resolution must be at least 1x1".into()));
    }
    Ok((nx, ny))
}

fn parse_point(s: &str) -> Result<Point, CliError> {
    let parts: Vec<f64> = s
        .split(',')
        .map(|t| t.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .map_err(|_| CliError::Spec(format!("bad point `{s}` (expected x,y)")))?;
    if parts.len() != 2 {
        return Err(CliError::Spec(format!("bad point `{s}` (expected x,y)")));
    }
    Ok(Point::new(parts[0], parts[1]))
}

/// Parse a lift spec: `rigid:w=0.25` or
/// `denjoy:tau=..,m=..[,k=..][,lambda=..][,mass=..]`.
pub fn parse_lift(s: &str) -> Result<CircleLift, CliError> {
    let (id, rest) = s.split_once(':').unwrap_or((s, ""));
    let params = parse_inline_params(rest)?;
    match id {
        "rigid" => {
            let w = params
                .get("w")
                .copied()
                .ok_or_else(|| CliError::Spec("rigid lift requires `w`".into()))?;
            Ok(rigid_rotation(w))
        }
        "denjoy" => {
            let tau = params
                .get("tau")
                .copied()
                .ok_or_else(|| CliError::Spec("denjoy lift requires `tau`".into()))?;
            let m = params
                .get("m")
                .copied()
                .ok_or_else(|| CliError::Spec("denjoy lift requires `m`".into()))?;
            if m.fract() != 0.0 || m < 1.0 {
                return Err(CliError::Spec(
                    "denjoy parameter m must be a positive integer".into(),
                ));
            }
            let k = params.get("k").copied().unwrap_or(40.0);
            if k.fract() != 0.0 || k < 0.0 {
                return Err(CliError::Spec(
                    "denjoy parameter k must be a nonnegative integer".into(),
                ));
            }
            let law = GapLengthLaw {
                lambda: params.get("lambda").copied().unwrap_or(0.5),
                total_mass: params.get("mass").copied().unwrap_or(0.5),
            };
            Ok(denjoy_construct(tau, m as u32, k as i32, law)?)
        }
        other => Err(CliError::Spec(format!(
            "unknown lift `{other}` (expected rigid or denjoy)"
        ))),
    }
}

// ---- output helpers -----------------------------------------------------

fn emit_json(out: &OutArg, name: &str, value: &serde_json::Value) -> Result<(), CliError> {
    let text = serde_json::to_string_pretty(value)
        .map_err(|e| CliError::Internal(format!("serialization failed: {e}")))?;
    match &out.out {
        Some(dir) => {
            std::fs::create_dir_all(dir)?;
            let path = dir.join(name);
            std::fs::write(&path, text.as_bytes())?;
            println!("wrote {}", path.display());
            Ok(())
        }
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn emit_text(out: &OutArg, name: &str, text: &str) -> Result<(), CliError> {
    match &out.out {
        Some(dir) => {
            std::fs::create_dir_all(dir)?;
            let path = dir.join(name);
            std::fs::write(&path, text.as_bytes())?;
            println!("wrote {}", path.display());
            Ok(())
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn emit_bytes(out: &OutArg, name: &str, bytes: &[u8]) -> Result<(), CliError> {
    match &out.out {
        Some(dir) => {
            std::fs::create_dir_all(dir)?;
            let path = dir.join(name);
            std::fs::write(&path, bytes)?;
            println!("wrote {}", path.display());
            Ok(())
        }
        None => Err(CliError::Spec(
            "binary output requires --out DIR".to_string(),
        )),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inline_map_specs() {
        let map = load_map("d2_cubic:a=0.5").unwrap();
        assert_eq!(map.catalog_id(), "d2_cubic");
        let map = load_map("linear_saddle:alpha=0.5,beta=2").unwrap();
        assert_eq!(map.params()["beta"], 2.0);
        let map = load_map("twist_zn:n=4,c=0.5").unwrap();
        assert_eq!(map.claimed_group(), SymmetryGroup::Cyclic(4));

        // structural errors are spec errors (exit 2)
        assert_eq!(load_map("nonsense:a=1").unwrap_err().code(), 2);
        assert_eq!(load_map("d2_cubic:oops").unwrap_err().code(), 2);
        assert_eq!(load_map("d2_cubic").unwrap_err().code(), 2);
        // range violations are precondition errors (exit 3)
        assert_eq!(load_map("d2_cubic:a=2").unwrap_err().code(), 3);
        assert_eq!(load_map("twist_zn:n=1,c=0.5").unwrap_err().code(), 3);
    }

    #[test]
    fn json_map_specs() {
        let map = load_map_json(r#"{"catalog": "d2_cubic", "params": {"a": 0.3}}"#).unwrap();
        assert_eq!(map.params()["a"], 0.3);

        let poly = load_map_json(
            r#"{"polynomial": {"x": [[1,0,0.5],[0,2,1.0]], "y": [[0,1,-0.5]]}, "group": "Z2k"}"#,
        )
        .unwrap();
        assert_eq!(poly.claimed_group(), SymmetryGroup::Z2Kappa);
        let q = poly.eval_raw(Point::new(1.0, 2.0));
        assert_eq!(q, Point::new(0.5 + 4.0, -1.0));

        assert_eq!(load_map_json("{not json").unwrap_err().code(), 2);
        assert_eq!(load_map_json(r#"{"params": {}}"#).unwrap_err().code(), 2);
    }

    #[test]
    fn bounds_resolution_points() {
        let r = parse_bounds("-2,2,-1,1").unwrap();
        assert_eq!((r.x0, r.x1, r.y0, r.y1), (-2.0, 2.0, -1.0, 1.0));
        assert!(parse_bounds("3,-3,0,1").is_err());
        assert!(parse_bounds("1,2,3").is_err());

        assert_eq!(parse_resolution("200x100").unwrap(), (200, 100));
        assert!(parse_resolution("0x10").is_err());
        assert!(parse_resolution("axb").is_err());

        let p = parse_point("0.5,-1.5").unwrap();
        assert_eq!(p, Point::new(0.5, -1.5));
    }

    #[test]
    fn lift_specs() {
        let rigid = parse_lift("rigid:w=0.25").unwrap();
        assert!((rigid.evaluate(0.0) - 0.25).abs() <= 1e-15);
        let denjoy = parse_lift("denjoy:tau=0.6180339887,m=2,k=10").unwrap();
        assert_eq!(denjoy.symmetry_order(), 2);
        assert_eq!(parse_lift("rigid").unwrap_err().code(), 2);
        // rational tau is a precondition violation
        assert_eq!(parse_lift("denjoy:tau=0.5,m=2").unwrap_err().code(), 3);
    }

    #[test]
    fn run_reports_exit_codes() {
        // malformed spec -> 2
        let code = run_from(["equidyn", "classify", "--map", "bogus"]);
        assert_eq!(code, 2);
        // precondition (bad range) -> 3
        let code = run_from(["equidyn", "classify", "--map", "d2_cubic:a=7"]);
        assert_eq!(code, 3);
        // fine -> 0
        let code = run_from(["equidyn", "classify", "--map", "d2_cubic:a=0.5"]);
        assert_eq!(code, 0);
    }
}
