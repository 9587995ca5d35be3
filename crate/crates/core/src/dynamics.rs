//! Orbit iteration and asymptotic classification.
//!
//! The budgeted four-way classification of [`classify_omega`] (converges /
//! escapes / periodic / undecided) underlies basin rasterization and the
//! certifiers. Periodic orbits are located by damped Newton iteration on
//! `f^k(p) - p`, with a reduced search `zeta^{-1} f(p) = p` for maps whose
//! symmetry group carries a finite rotation: any nonzero solution of the
//! reduced equation generates an orbit of minimal period exactly the
//! rotation order.

use crate::maps::PlanarMap;
use crate::plane::{eigenvalues_2x2, Mat2, Point};
use crate::symmetry::SymmetryGroup;
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::collections::VecDeque;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum DynError {
    #[error("origin classifies as {0}, not a saddle")]
    NotASaddle(crate::maps::LocalClass),
    #[error("group {0} has no finite rotation generator of order >= 2")]
    NoFiniteRotation(SymmetryGroup),
}

/// Budgets and tolerances for orbit classification.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct OmegaConfig {
    /// Maximum number of map applications.
    pub budget: usize,
    /// Step displacement below which the orbit counts as converged.
    pub eps_zero: f64,
    /// Norm beyond which the orbit counts as escaped.
    pub r_escape: f64,
    /// Recurrence tolerance for cycle detection.
    pub eps_periodic: f64,
    /// Longest period the trailing-window detector looks for.
    pub max_period: usize,
    /// Number of trailing states retained.
    pub window: usize,
    /// Minimum pairwise separation of detected cycle points; recurrences
    /// tighter than this are treated as slow convergence, not periodicity.
    pub min_cycle_separation: f64,
}

impl Default for OmegaConfig {
    fn default() -> Self {
        OmegaConfig {
            budget: 10_000,
            eps_zero: 1e-9,
            r_escape: 1e6,
            eps_periodic: 1e-8,
            max_period: 64,
            window: 128,
            min_cycle_separation: 1e-6,
        }
    }
}

/// Four-way asymptotic classification of a forward orbit.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum OmegaKind {
    ConvergesToFixed(Point),
    Escapes,
    PeriodicDetected { period: usize, points: Vec<Point> },
    Undecided,
}

impl OmegaKind {
    /// Stable cell code: 0 fixed, 1 escape, 2 periodic, 3 undecided.
    pub fn code(&self) -> u8 {
        match self {
            OmegaKind::ConvergesToFixed(_) => 0,
            OmegaKind::Escapes => 1,
            OmegaKind::PeriodicDetected { .. } => 2,
            OmegaKind::Undecided => 3,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct OmegaClass {
    pub kind: OmegaKind,
    pub iterations_used: usize,
}

/// Forward orbit `[p, f(p), ..., f^n(p)]`, truncated at overflow.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Orbit {
    pub points: Vec<Point>,
    pub escaped: bool,
}

pub fn iterate(map: &PlanarMap, p: Point, n: usize) -> Orbit {
    let mut points = Vec::with_capacity(n + 1);
    points.push(p);
    let mut current = p;
    for _ in 0..n {
        match map.evaluate(current) {
            Ok(q) => {
                points.push(q);
                current = q;
            }
            Err(_) => {
                return Orbit {
                    points,
                    escaped: true,
                };
            }
        }
    }
    Orbit {
        points,
        escaped: false,
    }
}

/// Classify the forward orbit of `p`: first criterion to fire among escape,
/// fixed-point convergence and cycle recurrence wins; budget exhaustion
/// yields `Undecided`.
pub fn classify_omega(map: &PlanarMap, p: Point, cfg: &OmegaConfig) -> OmegaClass {
    let mut window: VecDeque<Point> = VecDeque::with_capacity(cfg.window);
    let mut current = p;
    for iter in 0..cfg.budget {
        if current.norm() >= cfg.r_escape {
            return OmegaClass {
                kind: OmegaKind::Escapes,
                iterations_used: iter,
            };
        }
        let next = match map.evaluate(current) {
            Ok(q) => q,
            Err(_) => {
                return OmegaClass {
                    kind: OmegaKind::Escapes,
                    iterations_used: iter + 1,
                };
            }
        };
        if (next - current).norm() <= cfg.eps_zero {
            return OmegaClass {
                kind: OmegaKind::ConvergesToFixed(next),
                iterations_used: iter + 1,
            };
        }
        window.push_back(current);
        if window.len() > cfg.window {
            window.pop_front();
        }
        if let Some(kind) = detect_cycle(&window, next, cfg) {
            return OmegaClass {
                kind,
                iterations_used: iter + 1,
            };
        }
        current = next;
    }
    OmegaClass {
        kind: OmegaKind::Undecided,
        iterations_used: cfg.budget,
    }
}

/// Scan periods in ascending order so the first recurrence found is the
/// minimal one; require a second consecutive match when the window is deep
/// enough, and genuinely separated cycle points.
fn detect_cycle(window: &VecDeque<Point>, next: Point, cfg: &OmegaConfig) -> Option<OmegaKind> {
    let len = window.len();
    for period in 2..=cfg.max_period.min(len) {
        let prev = window[len - period];
        if (next - prev).norm() > cfg.eps_periodic {
            continue;
        }
        if len > period {
            let before = window[len - period - 1];
            if (window[len - 1] - before).norm() > cfg.eps_periodic {
                continue;
            }
        }
        let cycle: Vec<Point> = (len - period..len).map(|i| window[i]).collect();
        let mut separated = true;
        'outer: for i in 0..cycle.len() {
            for j in i + 1..cycle.len() {
                if (cycle[i] - cycle[j]).norm() < cfg.min_cycle_separation {
                    separated = false;
                    break 'outer;
                }
            }
        }
        if separated {
            return Some(OmegaKind::PeriodicDetected {
                period,
                points: cycle,
            });
        }
    }
    None
}

/// A periodic orbit with its minimal period and the eigenvalues of the
/// period-map Jacobian.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PeriodicOrbit {
    pub points: Vec<Point>,
    pub period: usize,
    pub multipliers: [Complex64; 2],
}

impl PeriodicOrbit {
    /// Worst closure defect `|f(p_i) - p_{i+1 mod period}|` along the orbit.
    pub fn closure_defect(&self, map: &PlanarMap) -> f64 {
        let n = self.points.len();
        (0..n)
            .map(|i| {
                let q = map.eval_raw(self.points[i]);
                (q - self.points[(i + 1) % n]).norm()
            })
            .fold(0.0, f64::max)
    }
}

/// Closure threshold for the minimal-period divisor test. Newton roots land
/// near machine precision while genuinely distinct orbit points sit far
/// above this.
const DIVISOR_CLOSURE_TOL: f64 = 1e-7;

/// Orbits whose point sets match within this distance are duplicates.
const ORBIT_DEDUP_TOL: f64 = 1e-6;

/// Roots closer to the origin than this are the trivial fixed point in the
/// reduced symmetric search.
const SYMMETRIC_ZERO_TOL: f64 = 1e-3;

fn solve_step(j: &Mat2, rhs: Point) -> Option<Point> {
    let det = j[(0, 0)] * j[(1, 1)] - j[(0, 1)] * j[(1, 0)];
    let scale = j.abs().max().max(1e-300);
    if det.abs() > 1e-12 * scale * scale {
        return Some(Point::new(
            (rhs.x * j[(1, 1)] - rhs.y * j[(0, 1)]) / det,
            (rhs.y * j[(0, 0)] - rhs.x * j[(1, 0)]) / det,
        ));
    }
    // singular Jacobian (e.g. a circle of solutions): least-squares step
    let svd = j.svd(true, true);
    svd.solve(&rhs, 1e-12 * scale)
        .ok()
        .map(|v| Point::new(v[0], v[1]))
}

/// Damped Newton iteration with halving line search (floor 2^-20) and a
/// pseudo-inverse fallback for singular Jacobians.
fn newton_solve<F, J>(f: F, jac: J, seed: Point, tol: f64, max_iter: usize) -> Option<Point>
where
    F: Fn(Point) -> Option<Point>,
    J: Fn(Point) -> Mat2,
{
    let min_damping = 2.0_f64.powi(-20);
    let mut p = seed;
    let mut fp = f(p)?;
    for _ in 0..max_iter {
        if fp.norm() <= tol {
            return Some(p);
        }
        let delta = solve_step(&jac(p), -fp)?;
        if !delta.x.is_finite() || !delta.y.is_finite() {
            return None;
        }
        let mut damping = 1.0;
        loop {
            let cand = p + delta * damping;
            if let Some(fc) = f(cand) {
                if fc.norm() < fp.norm() {
                    p = cand;
                    fp = fc;
                    break;
                }
            }
            damping *= 0.5;
            if damping < min_damping {
                return if fp.norm() <= tol { Some(p) } else { None };
            }
        }
    }
    if fp.norm() <= tol {
        Some(p)
    } else {
        None
    }
}

fn iterate_k(map: &PlanarMap, p: Point, k: usize) -> Option<Point> {
    let mut q = p;
    for _ in 0..k {
        q = map.evaluate(q).ok()?;
    }
    Some(q)
}

fn chain_jacobian(map: &PlanarMap, p: Point, k: usize, h: f64) -> Mat2 {
    let mut j = Mat2::identity();
    let mut q = p;
    for _ in 0..k {
        j = map.jacobian(q, h) * j;
        q = map.eval_raw(q);
    }
    j
}

fn orbit_multipliers(map: &PlanarMap, points: &[Point]) -> [Complex64; 2] {
    let mut j = Mat2::identity();
    for p in points {
        j = map.jacobian(*p, crate::maps::DEFAULT_FD_STEP) * j;
    }
    eigenvalues_2x2(&j)
}

fn orbits_match(a: &[Point], b: &[Point], tol: f64) -> bool {
    a.len() == b.len() && a.iter().all(|p| b.iter().any(|q| (p - q).norm() <= tol))
}

/// Deduplicate against both the recorded orbits and their images under the
/// claimed symmetry group (fixed points and periodic orbits come in group
/// orbits, which count once).
fn is_duplicate_orbit(map: &PlanarMap, existing: &[PeriodicOrbit], candidate: &[Point]) -> bool {
    let elements = map.claimed_group().enumerate_elements(64);
    existing.iter().any(|orbit| {
        elements.iter().any(|g| {
            let image: Vec<Point> = candidate.iter().map(|p| g.apply(*p)).collect();
            orbits_match(&image, &orbit.points, ORBIT_DEDUP_TOL)
        })
    })
}

fn sort_orbits(orbits: &mut [PeriodicOrbit]) {
    orbits.sort_by(|a, b| {
        let ka = orbit_sort_key(a);
        let kb = orbit_sort_key(b);
        ka.partial_cmp(&kb).unwrap_or(std::cmp::Ordering::Equal)
    });
}

fn orbit_sort_key(o: &PeriodicOrbit) -> (usize, f64, f64) {
    let first = o
        .points
        .iter()
        .cloned()
        .reduce(|a, b| if (a.x, a.y) <= (b.x, b.y) { a } else { b })
        .unwrap_or_else(|| Point::new(0.0, 0.0));
    (o.period, first.x, first.y)
}

/// Newton search for orbits of period dividing `period` from the given
/// seeds. Results carry their minimal period (so a fixed point found by a
/// period-2 search is reported with period 1), are deduplicated as point
/// sets and across symmetry copies, and come with multipliers attached.
///
/// An empty result means nothing was found from these seeds, not a proof of
/// absence.
pub fn find_periodic(
    map: &PlanarMap,
    period: usize,
    seeds: &[Point],
    tol: f64,
    max_newton: usize,
) -> Vec<PeriodicOrbit> {
    let h = crate::maps::DEFAULT_FD_STEP;
    let mut orbits: Vec<PeriodicOrbit> = Vec::new();
    for &seed in seeds {
        let root = newton_solve(
            |p| iterate_k(map, p, period).map(|q| q - p),
            |p| chain_jacobian(map, p, period, h) - Mat2::identity(),
            seed,
            tol,
            max_newton,
        );
        let Some(root) = root else { continue };
        // minimal period via the divisor test
        let mut minimal = period;
        for d in 1..period {
            if period % d == 0 {
                if let Some(q) = iterate_k(map, root, d) {
                    if (q - root).norm() <= DIVISOR_CLOSURE_TOL {
                        minimal = d;
                        break;
                    }
                }
            }
        }
        let mut points = Vec::with_capacity(minimal);
        let mut q = root;
        let mut ok = true;
        for _ in 0..minimal {
            points.push(q);
            match map.evaluate(q) {
                Ok(next) => q = next,
                Err(_) => {
                    ok = false;
                    break;
                }
            }
        }
        if !ok || is_duplicate_orbit(map, &orbits, &points) {
            continue;
        }
        let multipliers = orbit_multipliers(map, &points);
        orbits.push(PeriodicOrbit {
            points,
            period: minimal,
            multipliers,
        });
    }
    sort_orbits(&mut orbits);
    orbits
}

/// Equivariance-reduced periodic search: solve `zeta^{-1} f(p) = p` where
/// `zeta` is the group's finite rotation generator of order `n`. For an
/// equivariant map, `f^k(p) = zeta^k p`, so every nonzero solution yields
/// the orbit `{zeta^k p}` of minimal period exactly `n`.
pub fn symmetric_periodic_search(
    map: &PlanarMap,
    group: &SymmetryGroup,
    seeds: &[Point],
    tol: f64,
    max_newton: usize,
) -> Result<Vec<PeriodicOrbit>, DynError> {
    let n = group
        .rotation_order()
        .ok_or(DynError::NoFiniteRotation(*group))?;
    let h = crate::maps::DEFAULT_FD_STEP;
    let zeta = crate::symmetry::GroupElement::rotation(std::f64::consts::TAU / f64::from(n));
    let zeta_inv = zeta.inverse().matrix();
    let mut orbits: Vec<PeriodicOrbit> = Vec::new();
    for &seed in seeds {
        let root = newton_solve(
            |p| map.evaluate(p).ok().map(|q| zeta_inv * q - p),
            |p| zeta_inv * map.jacobian(p, h) - Mat2::identity(),
            seed,
            tol,
            max_newton,
        );
        let Some(root) = root else { continue };
        if root.norm() <= SYMMETRIC_ZERO_TOL {
            continue; // trivial fixed point at the origin
        }
        let mut points = Vec::with_capacity(n as usize);
        let mut q = root;
        for _ in 0..n {
            points.push(q);
            q = zeta.apply(q);
        }
        // orbits found through the reduction must genuinely close under f
        let candidate = PeriodicOrbit {
            points: points.clone(),
            period: n as usize,
            multipliers: [Complex64::new(0.0, 0.0); 2],
        };
        if candidate.closure_defect(map) > 1e-9 {
            continue;
        }
        if is_duplicate_orbit(map, &orbits, &points) {
            continue;
        }
        let multipliers = orbit_multipliers(map, &points);
        orbits.push(PeriodicOrbit {
            points,
            period: n as usize,
            multipliers,
        });
    }
    sort_orbits(&mut orbits);
    Ok(orbits)
}

/// A closed half-axis of the plane.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Axis {
    XPlus,
    XMinus,
    YPlus,
    YMinus,
}

impl Axis {
    pub fn direction(&self) -> Point {
        match self {
            Axis::XPlus => Point::new(1.0, 0.0),
            Axis::XMinus => Point::new(-1.0, 0.0),
            Axis::YPlus => Point::new(0.0, 1.0),
            Axis::YMinus => Point::new(0.0, -1.0),
        }
    }
}

impl std::str::FromStr for Axis {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "x+" => Ok(Axis::XPlus),
            "x-" => Ok(Axis::XMinus),
            "y+" => Ok(Axis::YPlus),
            "y-" => Ok(Axis::YMinus),
            other => Err(format!("unknown axis `{other}` (expected x+, x-, y+, y-)")),
        }
    }
}

/// Outcome of sampling a half-axis: `ray_invariant` means images stay on
/// the same ray; `axis_invariant` allows crossing to the opposite ray.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RayCheck {
    pub ray_invariant: bool,
    pub axis_invariant: bool,
    pub max_off_axis: f64,
    pub n_samples: usize,
    pub tol: f64,
}

/// Sample `n_samples` points on the given half-axis at radii up to `r_max`
/// and test whether images stay on the ray (and on the full axis).
pub fn invariant_ray_check(
    map: &PlanarMap,
    axis: Axis,
    n_samples: usize,
    tol: f64,
    r_max: f64,
) -> RayCheck {
    let u = axis.direction();
    let mut ray = true;
    let mut on_axis = true;
    let mut max_off = 0.0_f64;
    for i in 1..=n_samples.max(1) {
        let r = r_max * i as f64 / n_samples.max(1) as f64;
        let q = map.eval_raw(u * r);
        let t = q.dot(&u);
        let off = (q - u * t).norm();
        max_off = max_off.max(off);
        if off > tol {
            ray = false;
            on_axis = false;
        } else if t < -tol {
            ray = false;
        }
    }
    RayCheck {
        ray_invariant: ray,
        axis_invariant: on_axis,
        max_off_axis: max_off,
        n_samples,
        tol,
    }
}

/// A periodic recurrence observed while probing, kept as evidence.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PeriodicWitness {
    pub start: Point,
    pub period: usize,
    pub points: Vec<Point>,
}

/// Outcome of classifying a batch of random initial points.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TrivialDynamicsReport {
    pub n_samples: usize,
    pub sample_radius: f64,
    pub seed: u64,
    pub converged: usize,
    pub escaped: usize,
    pub periodic: usize,
    pub undecided: usize,
    /// Detected cycles of period >= 2: each one refutes trivial dynamics.
    pub witnesses: Vec<PeriodicWitness>,
}

impl TrivialDynamicsReport {
    pub fn fractions(&self) -> [f64; 4] {
        let n = self.n_samples.max(1) as f64;
        [
            self.converged as f64 / n,
            self.escaped as f64 / n,
            self.periodic as f64 / n,
            self.undecided as f64 / n,
        ]
    }

    /// Trivial dynamics means every probed omega-limit lies in the fixed
    /// set: no cycles and nothing undecided.
    pub fn consistent_with_trivial_dynamics(&self) -> bool {
        self.periodic == 0 && self.undecided == 0
    }
}

/// Classify `extra_seeds` and then `n_samples` random points in the disk of
/// `sample_radius`; any detected cycle of period >= 2 is returned as a
/// witness against trivial dynamics.
///
/// Deterministic extra seeds matter: cycles whose stable set has measure
/// zero (the 2-cycle of the cubic example lives on the invariant x-axis and
/// attracts nothing off it) are invisible to area sampling, so callers
/// chasing such witnesses should seed the invariant axes explicitly.
pub fn trivial_dynamics_probe(
    map: &PlanarMap,
    n_samples: usize,
    cfg: &OmegaConfig,
    sample_radius: f64,
    seed: u64,
    extra_seeds: &[Point],
) -> TrivialDynamicsReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = TrivialDynamicsReport {
        n_samples: n_samples + extra_seeds.len(),
        sample_radius,
        seed,
        converged: 0,
        escaped: 0,
        periodic: 0,
        undecided: 0,
        witnesses: Vec::new(),
    };
    let random: Vec<Point> = (0..n_samples)
        .map(|_| crate::plane::sample_disk(&mut rng, sample_radius))
        .collect();
    for p in extra_seeds.iter().copied().chain(random) {
        let class = classify_omega(map, p, cfg);
        match class.kind {
            OmegaKind::ConvergesToFixed(_) => report.converged += 1,
            OmegaKind::Escapes => report.escaped += 1,
            OmegaKind::PeriodicDetected { period, points } => {
                report.periodic += 1;
                let already = report.witnesses.iter().any(|w| {
                    w.period == period && orbits_match(&w.points, &points, ORBIT_DEDUP_TOL)
                });
                if !already && report.witnesses.len() < 16 {
                    report.witnesses.push(PeriodicWitness {
                        start: p,
                        period,
                        points,
                    });
                }
            }
            OmegaKind::Undecided => report.undecided += 1,
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{d2_cubic, linear_saddle, twist_zn, RadialProfile};
    use crate::plane::Rect;

    #[test]
    fn iterate_halves_the_second_coordinate() {
        let f = d2_cubic(0.5).unwrap();
        let orbit = iterate(&f, Point::new(0.0, 8.0), 3);
        let ys: Vec<f64> = orbit.points.iter().map(|p| p.y).collect();
        assert_eq!(ys, vec![8.0, -4.0, 2.0, -1.0]);
        assert!(!orbit.escaped);
    }

    #[test]
    fn iterate_identity_is_constant() {
        let id = crate::catalog::so2_radial(RadialProfile::Linear { k: 1.0 }, 0.0).unwrap();
        let orbit = iterate(&id, Point::new(0.4, -0.2), 5);
        for p in &orbit.points {
            assert_eq!(*p, Point::new(0.4, -0.2));
        }
    }

    #[test]
    fn iterate_twist_closes_on_the_unit_circle() {
        let f = twist_zn(4, 0.5).unwrap();
        let orbit = iterate(&f, Point::new(1.0, 0.0), 4);
        assert!((orbit.points[4] - Point::new(1.0, 0.0)).norm() <= 1e-12);
    }

    #[test]
    fn iterate_flags_escape_via_overflow() {
        let f = d2_cubic(0.5).unwrap();
        let orbit = iterate(&f, Point::new(50.0, 0.0), 100);
        assert!(orbit.escaped);
        assert!(orbit.points.len() < 101);
    }

    #[test]
    fn classify_converging_escaping_periodic() {
        let cfg = OmegaConfig::default();
        let cubic = d2_cubic(0.5).unwrap();

        let c = classify_omega(&cubic, Point::new(0.2, 3.0), &cfg);
        match c.kind {
            OmegaKind::ConvergesToFixed(p) => assert!(p.norm() <= 1e-8),
            other => panic!("expected convergence, got {other:?}"),
        }

        let c = classify_omega(&cubic, Point::new(1.0, 0.0), &cfg);
        match c.kind {
            OmegaKind::PeriodicDetected { period, points } => {
                assert_eq!(period, 2);
                assert!(points
                    .iter()
                    .any(|p| (p - Point::new(1.0, 0.0)).norm() <= 1e-9));
                assert!(points
                    .iter()
                    .any(|p| (p - Point::new(-1.0, 0.0)).norm() <= 1e-9));
            }
            other => panic!("expected a 2-cycle, got {other:?}"),
        }

        let doubling = linear_saddle(2.0, 2.0).unwrap();
        let c = classify_omega(&doubling, Point::new(1.0, 0.0), &cfg);
        assert_eq!(c.kind, OmegaKind::Escapes);
    }

    #[test]
    fn slow_contraction_is_not_misread_as_periodic() {
        // multiplier 0.999: steps shrink below eps_periodic long before the
        // fixed-point criterion fires; the separation guard must hold the
        // periodic detector back
        let slow = linear_saddle(0.999, 0.999).unwrap();
        let cfg = OmegaConfig {
            budget: 100_000,
            ..OmegaConfig::default()
        };
        let c = classify_omega(&slow, Point::new(1.0, 0.5), &cfg);
        assert!(
            matches!(c.kind, OmegaKind::ConvergesToFixed(_)),
            "{:?}",
            c.kind
        );
    }

    /// 1-D oracle for the cubic: all period-2 points of f lie on the x-axis
    /// (the y-component strictly contracts), where they are the roots of
    /// g(g(x)) = x. Locate those roots by sign scanning plus bisection.
    fn cubic_period2_roots_oracle(a: f64) -> Vec<f64> {
        let g = |x: f64| -a * x * x * x + (a - 1.0) * x;
        let h = |x: f64| g(g(x)) - x;
        let (lo, hi, n) = (-3.0, 3.0, 60_000);
        let mut roots: Vec<f64> = Vec::new();
        let mut prev_x = lo;
        let mut prev = h(lo);
        for i in 1..=n {
            let x = lo + (hi - lo) * i as f64 / n as f64;
            let val = h(x);
            if prev == 0.0 {
                roots.push(prev_x);
            } else if prev * val < 0.0 {
                let (mut a0, mut b0) = (prev_x, x);
                for _ in 0..80 {
                    let m = 0.5 * (a0 + b0);
                    if h(a0) * h(m) <= 0.0 {
                        b0 = m;
                    } else {
                        a0 = m;
                    }
                }
                roots.push(0.5 * (a0 + b0));
            }
            prev_x = x;
            prev = val;
        }
        roots.dedup_by(|x, y| (*x - *y).abs() < 1e-6);
        roots
    }

    #[test]
    fn find_periodic_matches_the_1d_oracle() {
        for a in [0.5, 0.7] {
            let roots = cubic_period2_roots_oracle(a);
            // derived: exactly {-1, 0, 1} for every a in (0, 1)
            assert_eq!(roots.len(), 3, "a = {a}: oracle roots {roots:?}");
            for (r, expect) in roots.iter().zip([-1.0, 0.0, 1.0]) {
                assert!((r - expect).abs() <= 1e-9);
            }

            let map = d2_cubic(a).unwrap();
            let seeds = Rect::centered(2.0).grid(41, 41);
            let orbits = find_periodic(&map, 2, &seeds, 1e-10, 50);
            let two: Vec<&PeriodicOrbit> = orbits.iter().filter(|o| o.period == 2).collect();
            assert_eq!(two.len(), 1, "a = {a}: {orbits:?}");
            let orbit = two[0];
            assert!(orbit
                .points
                .iter()
                .any(|p| (p - Point::new(1.0, 0.0)).norm() <= 1e-9));
            assert!(orbit
                .points
                .iter()
                .any(|p| (p - Point::new(-1.0, 0.0)).norm() <= 1e-9));
            // multipliers of the 2-cycle: diag((2a+1)^2, 1/4)
            let expect = (2.0 * a + 1.0).powi(2);
            assert!((orbit.multipliers[1].re - expect).abs() <= 1e-6);
            assert!((orbit.multipliers[0].re - 0.25).abs() <= 1e-6);

            // the origin shows up as a period-1 orbit, not a 2-cycle
            let one: Vec<&PeriodicOrbit> = orbits.iter().filter(|o| o.period == 1).collect();
            assert_eq!(one.len(), 1);
            assert!(one[0].points[0].norm() <= 1e-9);
        }
    }

    #[test]
    fn find_periodic_on_a_contraction_reports_only_the_origin() {
        let map = linear_saddle(0.5, 0.5).unwrap();
        let seeds = Rect::centered(2.0).grid(21, 21);
        let orbits = find_periodic(&map, 2, &seeds, 1e-10, 50);
        assert!(orbits.iter().all(|o| o.period == 1));
        assert_eq!(orbits.len(), 1);
        assert!(orbits[0].points[0].norm() <= 1e-9);
    }

    #[test]
    fn find_periodic_twist_unit_circle() {
        let map = twist_zn(4, 0.5).unwrap();
        let seeds = Rect::centered(2.0).grid(21, 21);
        let orbits = find_periodic(&map, 4, &seeds, 1e-10, 50);
        let four: Vec<&PeriodicOrbit> = orbits.iter().filter(|o| o.period == 4).collect();
        assert!(!four.is_empty());
        for orbit in four {
            for p in &orbit.points {
                assert!(
                    (p.norm() - 1.0).abs() <= 1e-8,
                    "orbit point off the unit circle"
                );
            }
            assert!(orbit.closure_defect(&map) <= 1e-9);
        }
    }

    #[test]
    fn symmetric_search_examples() {
        // twist: zeta^{-1} f fixes the whole unit circle; any root gives a
        // period-6 orbit of 6 distinct points
        let map = twist_zn(6, 0.5).unwrap();
        let seeds = Rect::centered(2.0).grid(9, 9);
        let orbits =
            symmetric_periodic_search(&map, &SymmetryGroup::Cyclic(6), &seeds, 1e-10, 50).unwrap();
        assert!(!orbits.is_empty());
        for o in &orbits {
            assert_eq!(o.period, 6);
            assert_eq!(o.points.len(), 6);
            assert!((o.points[0].norm() - 1.0).abs() <= 1e-8);
            for i in 0..6 {
                for j in i + 1..6 {
                    assert!((o.points[i] - o.points[j]).norm() >= 1e-6);
                }
            }
        }

        // cubic with zeta = -Id: -f(x, 0) = x forces x in {0, +/-1}
        let cubic = d2_cubic(0.5).unwrap();
        let orbits =
            symmetric_periodic_search(&cubic, &SymmetryGroup::Z2MinusId, &seeds, 1e-10, 50)
                .unwrap();
        assert_eq!(orbits.len(), 1);
        assert!(orbits[0]
            .points
            .iter()
            .any(|p| (p - Point::new(1.0, 0.0)).norm() <= 1e-9));

        // a linear contraction has no nonzero symmetric orbit
        let contraction = linear_saddle(0.5, 0.5).unwrap();
        let orbits =
            symmetric_periodic_search(&contraction, &SymmetryGroup::Z2MinusId, &seeds, 1e-10, 50)
                .unwrap();
        assert!(orbits.is_empty());

        // groups without a finite rotation are rejected
        assert!(
            symmetric_periodic_search(&cubic, &SymmetryGroup::Z2Kappa, &seeds, 1e-10, 50).is_err()
        );
    }

    #[test]
    fn ray_checks() {
        // the positive x-ray flips sign under the cubic, but the axis is
        // invariant
        let cubic = d2_cubic(0.5).unwrap();
        let check = invariant_ray_check(&cubic, Axis::XPlus, 64, 1e-9, 1.0);
        assert!(!check.ray_invariant);
        assert!(check.axis_invariant);

        let saddle = linear_saddle(0.5, 2.0).unwrap();
        let check = invariant_ray_check(&saddle, Axis::XPlus, 64, 1e-9, 10.0);
        assert!(check.ray_invariant);
        assert!(check.axis_invariant);

        let twist = twist_zn(3, 0.5).unwrap();
        let check = invariant_ray_check(&twist, Axis::XPlus, 64, 1e-9, 10.0);
        assert!(!check.ray_invariant);
        assert!(!check.axis_invariant);
    }

    #[test]
    fn trivial_dynamics_probe_examples() {
        let cfg = OmegaConfig::default();

        let contraction = linear_saddle(0.5, 0.5).unwrap();
        let rep = trivial_dynamics_probe(&contraction, 300, &cfg, 5.0, 41, &[]);
        assert_eq!(rep.converged, 300);
        assert!(rep.consistent_with_trivial_dynamics());

        // the 2-cycle of the cubic attracts nothing off the x-axis, so the
        // witness needs a seed on the invariant axis; a unit-spaced axis
        // grid hits it
        let cubic = d2_cubic(0.5).unwrap();
        let axis_seeds: Vec<Point> = (-3..=3).map(|i| Point::new(f64::from(i), 0.0)).collect();
        let rep = trivial_dynamics_probe(&cubic, 500, &cfg, 3.0, 41, &axis_seeds);
        assert!(rep.periodic > 0, "no cycle witnesses found");
        assert!(!rep.consistent_with_trivial_dynamics());
        assert!(rep.witnesses.iter().any(|w| w.period == 2));

        // twist: converging and escaping points, nothing undecided
        let twist = twist_zn(4, 0.5).unwrap();
        let rep = trivial_dynamics_probe(&twist, 400, &cfg, 2.0, 41, &[]);
        assert!(rep.converged > 0);
        assert!(rep.escaped > 0);
        assert_eq!(rep.undecided, 0);
    }

    #[test]
    fn omega_classification_is_equivariant() {
        // classify_omega(p) and classify_omega(gamma p) agree in kind for
        // every generator of the claimed group
        use rand::SeedableRng;
        let cfg = OmegaConfig::default();
        let maps: Vec<PlanarMap> = vec![
            d2_cubic(0.5).unwrap(),
            twist_zn(4, 0.5).unwrap(),
            linear_saddle(0.5, 2.0).unwrap(),
        ];
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for map in &maps {
            for _ in 0..200 {
                let p = crate::plane::sample_disk(&mut rng, 3.0);
                let base = classify_omega(map, p, &cfg).kind.code();
                for g in map.claimed_group().generators() {
                    let rotated = classify_omega(map, g.apply(p), &cfg).kind.code();
                    assert_eq!(base, rotated, "map {} at {p:?}", map.catalog_id());
                }
            }
        }
    }
}
