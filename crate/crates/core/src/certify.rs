//! Empirical certifiers for the local-to-global statements.
//!
//! [`global_attractor_certifier`] probes, by finite computation, every
//! hypothesis of the symmetric global-attractor theorem (dissipativity,
//! kappa membership, unique fixed point, orientation/component behaviour,
//! absence of 2-periodic orbits) and samples the conclusion. Verdicts are
//! three-valued on purpose: a passing probe is evidence, not a proof, and
//! only a concrete witness orbit can establish `CounterexampleFound`.
//!
//! [`global_saddle_probe`] runs the D_2 saddle picture: invariant axes,
//! stable/unstable axis identification, and bidirectional escape from the
//! four open quadrants.

use crate::dynamics::{
    classify_omega, find_periodic, invariant_ray_check, Axis, DynError, OmegaConfig, OmegaKind,
    PeriodicOrbit,
};
use crate::maps::{classify_origin, LocalClass, MapError, PlanarMap, DEFAULT_FD_STEP};
use crate::plane::{Point, Rect};
use crate::symmetry::{GroupElement, SymmetryGroup};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

/// Budgets and tolerances of the global-attractor certifier.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CertifierConfig {
    /// Region scanned for fixed points (Newton seed grid `seed_grid^2`).
    pub bounds: Rect,
    pub seed_grid: usize,
    pub newton_tol: f64,
    pub max_newton: usize,
    /// Samples and radius for the kappa-equivariance check.
    pub equi_samples: usize,
    pub equi_radius: f64,
    pub equi_tol: f64,
    /// Sampled orientation (determinant sign) check.
    pub orientation_samples: usize,
    /// Determinants within this of zero make orientation indeterminate.
    pub zero_det_tol: f64,
    /// Samples for the half-plane preservation probe, taken at `(x, ±eps)`.
    pub component_samples: usize,
    pub component_eps: f64,
    /// Circle radii for the dissipativity probe: `max |f|` on each circle
    /// must stay below the radius.
    pub dissipativity_radii: Vec<f64>,
    pub dissipativity_samples: usize,
    /// Random initial points, uniform over `bounds`, classified for the
    /// conclusion.
    pub conclusion_samples: usize,
    pub omega: OmegaConfig,
    pub seed: u64,
}

impl Default for CertifierConfig {
    fn default() -> Self {
        CertifierConfig {
            bounds: Rect::centered(10.0),
            seed_grid: 41,
            newton_tol: 1e-10,
            max_newton: 50,
            equi_samples: 400,
            equi_radius: 10.0,
            equi_tol: 1e-9,
            orientation_samples: 200,
            zero_det_tol: 1e-12,
            component_samples: 200,
            component_eps: 1e-3,
            dissipativity_radii: vec![1e2, 1e3, 1e4],
            dissipativity_samples: 128,
            conclusion_samples: 1000,
            omega: OmegaConfig::default(),
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum InconclusiveReason {
    KappaAbsent,
    KappaEquivarianceFails,
    FixedPointScanFailed,
    OrientationIndeterminate,
    OrientationReversed,
    ComponentsInterchanged,
    NotDissipative,
    UndecidedSamples,
    EscapingSamples,
}

/// Verdict of the certifier. `CounterexampleFound` always carries the
/// witness orbit (a non-origin fixed point counts as period 1).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub enum Verdict {
    ConsistentWithTheorem,
    CounterexampleFound { witness: PeriodicOrbit },
    Inconclusive { reasons: Vec<InconclusiveReason> },
}

/// Hypothesis-by-hypothesis record of the certifier run.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CertifierReport {
    pub map_id: String,
    pub group: SymmetryGroup,
    pub unique_fixed_point: bool,
    pub extra_fixed_points: Vec<Point>,
    pub kappa_in_group: bool,
    pub kappa_defect: f64,
    pub orientation_preserving_sampled: bool,
    pub min_abs_det: f64,
    pub components_preserved: bool,
    pub no_two_periodic_found: bool,
    pub two_periodic_orbits: Vec<PeriodicOrbit>,
    pub dissipativity_probe: bool,
    /// `(radius, max |f| on the circle)` per probed radius.
    pub dissipativity_detail: Vec<(f64, f64)>,
    /// Fraction of sampled initial points classified as converging to 0.
    pub conclusion_converged_fraction: f64,
    pub conclusion_samples: usize,
    pub verdict: Verdict,
    pub config: CertifierConfig,
}

/// Scan for fixed points with Newton iteration from a uniform seed grid;
/// returns deduplicated roots.
pub fn fixed_point_scan(map: &PlanarMap, cfg: &CertifierConfig) -> Vec<Point> {
    let seeds = cfg.bounds.grid(cfg.seed_grid, cfg.seed_grid);
    let orbits = find_periodic(map, 1, &seeds, cfg.newton_tol, cfg.max_newton);
    orbits.into_iter().map(|o| o.points[0]).collect()
}

/// Probe the hypotheses and conclusion of the symmetric global-attractor
/// statement for `map` with claimed symmetry group `group`.
pub fn global_attractor_certifier(
    map: &PlanarMap,
    group: &SymmetryGroup,
    cfg: &CertifierConfig,
) -> CertifierReport {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut reasons: Vec<InconclusiveReason> = Vec::new();

    // hypothesis: kappa in the symmetry group, and the map actually
    // commutes with it
    let kappa_in_class = group.contains_reflection();
    let kappa = GroupElement::kappa();
    let mut kappa_defect = f64::NAN;
    let kappa_ok = if kappa_in_class {
        let mut worst = 0.0_f64;
        for _ in 0..cfg.equi_samples {
            let x = crate::plane::sample_disk(&mut rng, cfg.equi_radius);
            let d = (map.eval_raw(kappa.apply(x)) - kappa.apply(map.eval_raw(x))).norm();
            worst = worst.max(d);
        }
        kappa_defect = worst;
        if worst > cfg.equi_tol {
            reasons.push(InconclusiveReason::KappaEquivarianceFails);
            false
        } else {
            true
        }
    } else {
        reasons.push(InconclusiveReason::KappaAbsent);
        false
    };

    // hypothesis: Fix(f) = {0}
    let roots = fixed_point_scan(map, cfg);
    let origin_found = roots.iter().any(|p| p.norm() <= 1e-6);
    let extra_fixed_points: Vec<Point> =
        roots.iter().copied().filter(|p| p.norm() > 1e-6).collect();
    let unique_fixed_point = origin_found && extra_fixed_points.is_empty();
    if !origin_found {
        reasons.push(InconclusiveReason::FixedPointScanFailed);
    }

    // hypothesis (route a): orientation preserving, sampled determinant
    let mut min_abs_det = f64::INFINITY;
    let mut orientation_ok = true;
    let mut orientation_indeterminate = false;
    for _ in 0..cfg.orientation_samples {
        let x = crate::plane::sample_disk(&mut rng, cfg.equi_radius);
        let j = map.jacobian(x, DEFAULT_FD_STEP);
        let det = j[(0, 0)] * j[(1, 1)] - j[(0, 1)] * j[(1, 0)];
        min_abs_det = min_abs_det.min(det.abs());
        if det.abs() <= cfg.zero_det_tol {
            orientation_indeterminate = true;
        } else if det < 0.0 {
            orientation_ok = false;
        }
    }
    if orientation_indeterminate {
        reasons.push(InconclusiveReason::OrientationIndeterminate);
        orientation_ok = false;
    } else if !orientation_ok {
        reasons.push(InconclusiveReason::OrientationReversed);
    }

    // hypothesis (route a): f does not interchange the half-planes bounded
    // by Fix<kappa>, probed just off the axis
    let mut components_preserved = true;
    for i in 0..cfg.component_samples {
        let t = i as f64 / cfg.component_samples.max(1) as f64;
        let x = cfg.bounds.x0 + t * cfg.bounds.width();
        for s in [cfg.component_eps, -cfg.component_eps] {
            let q = map.eval_raw(Point::new(x, s));
            if q.y * s < 0.0 {
                components_preserved = false;
            }
        }
    }
    if !components_preserved {
        reasons.push(InconclusiveReason::ComponentsInterchanged);
    }

    // hypothesis (route b): no 2-periodic orbits
    let seeds = cfg.bounds.grid(cfg.seed_grid, cfg.seed_grid);
    let two_periodic_orbits: Vec<PeriodicOrbit> =
        find_periodic(map, 2, &seeds, cfg.newton_tol, cfg.max_newton)
            .into_iter()
            .filter(|o| o.period == 2)
            .collect();
    let no_two_periodic_found = two_periodic_orbits.is_empty();

    // hypothesis: dissipativity probe on large circles
    let mut dissipativity_detail = Vec::new();
    let mut dissipative = true;
    for &radius in &cfg.dissipativity_radii {
        let mut max_image = 0.0_f64;
        for k in 0..cfg.dissipativity_samples {
            let a = std::f64::consts::TAU * k as f64 / cfg.dissipativity_samples as f64;
            let p = Point::new(radius * a.cos(), radius * a.sin());
            let image = match map.evaluate(p) {
                Ok(q) => q.norm(),
                Err(_) => f64::INFINITY,
            };
            max_image = max_image.max(image);
        }
        dissipativity_detail.push((radius, max_image));
        if max_image >= radius {
            dissipative = false;
        }
    }
    if !dissipative {
        reasons.push(InconclusiveReason::NotDissipative);
    }

    // conclusion probe: fraction of sampled points converging to 0
    let mut converged = 0usize;
    let mut undecided = 0usize;
    let mut escaped = 0usize;
    let mut sampled_witness: Option<PeriodicOrbit> = None;
    for _ in 0..cfg.conclusion_samples {
        let p = Point::new(
            cfg.bounds.x0 + rng.gen::<f64>() * cfg.bounds.width(),
            cfg.bounds.y0 + rng.gen::<f64>() * cfg.bounds.height(),
        );
        match classify_omega(map, p, &cfg.omega).kind {
            OmegaKind::ConvergesToFixed(q) if q.norm() <= 1e-6 => converged += 1,
            OmegaKind::ConvergesToFixed(q) => {
                // converged somewhere else: a non-origin fixed point
                if sampled_witness.is_none() {
                    sampled_witness = Some(PeriodicOrbit {
                        points: vec![q],
                        period: 1,
                        multipliers: crate::plane::eigenvalues_2x2(
                            &map.jacobian(q, DEFAULT_FD_STEP),
                        ),
                    });
                }
            }
            OmegaKind::Escapes => escaped += 1,
            OmegaKind::PeriodicDetected { period, points } => {
                if sampled_witness.is_none() {
                    let multipliers = {
                        let mut j = crate::plane::Mat2::identity();
                        for q in &points {
                            j = map.jacobian(*q, DEFAULT_FD_STEP) * j;
                        }
                        crate::plane::eigenvalues_2x2(&j)
                    };
                    sampled_witness = Some(PeriodicOrbit {
                        points,
                        period,
                        multipliers,
                    });
                }
            }
            OmegaKind::Undecided => undecided += 1,
        }
    }
    let conclusion_converged_fraction = converged as f64 / cfg.conclusion_samples.max(1) as f64;
    if undecided > 0 {
        reasons.push(InconclusiveReason::UndecidedSamples);
    }
    if escaped > 0 {
        reasons.push(InconclusiveReason::EscapingSamples);
    }

    // verdict: concrete witnesses first, then the theorem's hypothesis
    // structure (kappa, Fix = {0}, dissipative, and route a or route b)
    let witness = two_periodic_orbits
        .first()
        .cloned()
        .or_else(|| {
            extra_fixed_points.first().map(|p| PeriodicOrbit {
                points: vec![*p],
                period: 1,
                multipliers: crate::plane::eigenvalues_2x2(&map.jacobian(*p, DEFAULT_FD_STEP)),
            })
        })
        .or(sampled_witness);
    let hypotheses_pass = kappa_ok
        && unique_fixed_point
        && dissipative
        && ((orientation_ok && components_preserved) || no_two_periodic_found);
    let verdict = if let Some(witness) = witness {
        Verdict::CounterexampleFound { witness }
    } else if hypotheses_pass && conclusion_converged_fraction == 1.0 {
        Verdict::ConsistentWithTheorem
    } else {
        Verdict::Inconclusive { reasons }
    };

    CertifierReport {
        map_id: map.catalog_id().to_string(),
        group: *group,
        unique_fixed_point,
        extra_fixed_points,
        kappa_in_group: kappa_in_class && kappa_ok,
        kappa_defect,
        orientation_preserving_sampled: orientation_ok,
        min_abs_det,
        components_preserved,
        no_two_periodic_found,
        two_periodic_orbits,
        dissipativity_probe: dissipative,
        dissipativity_detail,
        conclusion_converged_fraction,
        conclusion_samples: cfg.conclusion_samples,
        verdict,
        config: cfg.clone(),
    }
}

/// Configuration of the global-saddle probe.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SaddleConfig {
    pub samples_per_quadrant: usize,
    /// Quadrant samples are drawn with coordinates in `(0, box_radius]`.
    pub box_radius: f64,
    pub axis_samples: usize,
    pub axis_tol: f64,
    pub axis_r_max: f64,
    pub omega: OmegaConfig,
    pub tol_hyp: f64,
    pub seed: u64,
}

impl Default for SaddleConfig {
    fn default() -> Self {
        SaddleConfig {
            samples_per_quadrant: 100,
            box_radius: 3.0,
            axis_samples: 64,
            axis_tol: 1e-9,
            axis_r_max: 10.0,
            omega: OmegaConfig::default(),
            tol_hyp: crate::maps::DEFAULT_TOL_HYP,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum AxisName {
    X,
    Y,
}

/// Result of probing the global-saddle picture for a D_2-symmetric map.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SaddleReport {
    pub map_id: String,
    pub class: LocalClass,
    pub eigenvalues: [num_complex::Complex64; 2],
    pub stable_axis: AxisName,
    pub unstable_axis: AxisName,
    pub x_axis_invariant: bool,
    pub y_axis_invariant: bool,
    /// Per quadrant (+ +, - +, - -, + -): samples escaping forward.
    pub forward_escapes: [usize; 4],
    /// Samples escaping backward under the exact inverse, when present.
    pub backward_escapes: Option<[usize; 4]>,
    pub samples_per_quadrant: usize,
    /// All probes consistent with a global topological saddle.
    pub consistent_with_global_saddle: bool,
    pub config: SaddleConfig,
}

#[derive(Debug, thiserror::Error)]
pub enum SaddleError {
    #[error(transparent)]
    Map(#[from] MapError),
    #[error(transparent)]
    Dyn(#[from] DynError),
}

/// Probe the global-saddle structure: require a (direct) saddle at the
/// origin, test axis invariance, identify the stable and unstable axes
/// from the Jacobian, and sample all four open quadrants for forward (and,
/// via the exact inverse when available, backward) escape.
pub fn global_saddle_probe(
    map: &PlanarMap,
    cfg: &SaddleConfig,
) -> Result<SaddleReport, SaddleError> {
    let classification = classify_origin(map, cfg.tol_hyp)?;
    match classification.class {
        LocalClass::Saddle | LocalClass::DirectSaddle => {}
        other => return Err(SaddleError::Dyn(DynError::NotASaddle(other))),
    }

    // for the D_2 forms the Jacobian is diagonal: the axis carrying the
    // small eigenvalue is stable
    let j = map.jacobian(Point::new(0.0, 0.0), DEFAULT_FD_STEP);
    let (stable_axis, unstable_axis) = if j[(0, 0)].abs() < j[(1, 1)].abs() {
        (AxisName::X, AxisName::Y)
    } else {
        (AxisName::Y, AxisName::X)
    };

    let x_ok =
        invariant_ray_check(map, Axis::XPlus, cfg.axis_samples, cfg.axis_tol, cfg.axis_r_max)
            .axis_invariant
            && invariant_ray_check(
                map,
                Axis::XMinus,
                cfg.axis_samples,
                cfg.axis_tol,
                cfg.axis_r_max,
            )
            .axis_invariant;
    let y_ok =
        invariant_ray_check(map, Axis::YPlus, cfg.axis_samples, cfg.axis_tol, cfg.axis_r_max)
            .axis_invariant
            && invariant_ray_check(
                map,
                Axis::YMinus,
                cfg.axis_samples,
                cfg.axis_tol,
                cfg.axis_r_max,
            )
            .axis_invariant;

    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let quadrant_signs = [(1.0, 1.0), (-1.0, 1.0), (-1.0, -1.0), (1.0, -1.0)];
    let mut forward_escapes = [0usize; 4];
    let mut backward_escapes = map.has_inverse().then_some([0usize; 4]);
    for (qi, (sx, sy)) in quadrant_signs.iter().enumerate() {
        for _ in 0..cfg.samples_per_quadrant {
            let p = Point::new(
                sx * rng.gen_range(1e-3..cfg.box_radius),
                sy * rng.gen_range(1e-3..cfg.box_radius),
            );
            if classify_omega(map, p, &cfg.omega).kind == OmegaKind::Escapes {
                forward_escapes[qi] += 1;
            }
            if let Some(counts) = backward_escapes.as_mut() {
                let mut q = p;
                let mut escaped = false;
                for _ in 0..cfg.omega.budget {
                    if q.norm() >= cfg.omega.r_escape {
                        escaped = true;
                        break;
                    }
                    match map.inverse(q) {
                        Some(prev) if prev.x.is_finite() && prev.y.is_finite() => q = prev,
                        _ => break,
                    }
                }
                if escaped {
                    counts[qi] += 1;
                }
            }
        }
    }

    let all_forward = forward_escapes
        .iter()
        .all(|&c| c == cfg.samples_per_quadrant);
    let all_backward = backward_escapes
        .map(|counts| counts.iter().all(|&c| c == cfg.samples_per_quadrant))
        .unwrap_or(false);
    let consistent = x_ok && y_ok && all_forward && all_backward;

    Ok(SaddleReport {
        map_id: map.catalog_id().to_string(),
        class: classification.class,
        eigenvalues: classification.eigenvalues,
        stable_axis,
        unstable_axis,
        x_axis_invariant: x_ok,
        y_axis_invariant: y_ok,
        forward_escapes,
        backward_escapes,
        samples_per_quadrant: cfg.samples_per_quadrant,
        consistent_with_global_saddle: consistent,
        config: cfg.clone(),
    })
}
