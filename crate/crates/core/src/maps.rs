//! Planar map abstraction and Jacobian-based local analysis.
//!
//! A [`PlanarMap`] bundles an evaluation closure with an optional exact
//! Jacobian, an optional exact inverse, the symmetry group the map claims,
//! and its catalog identity. Everything downstream (orbit classification,
//! periodic-orbit search, certifiers) works through this type.

use crate::plane::{eigenvalues_2x2, Mat2, Point, Rect};
use crate::symmetry::SymmetryGroup;
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::sync::Arc;
use thiserror::Error;

/// Components above this threshold are treated as numerical escape.
pub const OVERFLOW_LIMIT: f64 = 1e300;

/// Default step for central finite differences.
pub const DEFAULT_FD_STEP: f64 = 1e-5;

/// Default hyperbolicity margin: eigenvalues within this distance of the
/// unit circle are not classified.
pub const DEFAULT_TOL_HYP: f64 = 1e-6;

#[derive(Debug, Error)]
pub enum MapError {
    #[error("invalid parameter: {0}")]
    InvalidParam(String),
    #[error("component magnitude exceeded {OVERFLOW_LIMIT:e} (escape)")]
    Overflow,
    #[error("origin is not a fixed point: |f(0)| = {0:e}")]
    NotAFixedPoint(f64),
    #[error("sector boundary mismatch: defect {defect:e} at radius {radius}, ray {ray}")]
    BoundaryMismatch { defect: f64, radius: f64, ray: usize },
    #[error("operation unsupported for continuous group {0}")]
    UnsupportedGroup(SymmetryGroup),
}

type EvalFn = Arc<dyn Fn(Point) -> Point + Send + Sync>;
type JacFn = Arc<dyn Fn(Point) -> Mat2 + Send + Sync>;

/// An evaluatable planar map with optional exact Jacobian and inverse.
#[derive(Clone)]
pub struct PlanarMap {
    eval: EvalFn,
    jacobian_exact: Option<JacFn>,
    inverse: Option<EvalFn>,
    claimed_group: SymmetryGroup,
    catalog_id: String,
    params: BTreeMap<String, f64>,
}

impl PlanarMap {
    pub fn new<F>(catalog_id: impl Into<String>, claimed_group: SymmetryGroup, eval: F) -> Self
    where
        F: Fn(Point) -> Point + Send + Sync + 'static,
    {
        PlanarMap {
            eval: Arc::new(eval),
            jacobian_exact: None,
            inverse: None,
            claimed_group,
            catalog_id: catalog_id.into(),
            params: BTreeMap::new(),
        }
    }

    pub fn with_jacobian<F>(mut self, jac: F) -> Self
    where
        F: Fn(Point) -> Mat2 + Send + Sync + 'static,
    {
        self.jacobian_exact = Some(Arc::new(jac));
        self
    }

    pub fn with_inverse<F>(mut self, inv: F) -> Self
    where
        F: Fn(Point) -> Point + Send + Sync + 'static,
    {
        self.inverse = Some(Arc::new(inv));
        self
    }

    pub fn with_param(mut self, name: &str, value: f64) -> Self {
        self.params.insert(name.to_string(), value);
        self
    }

    /// Raw evaluation without the overflow guard.
    pub fn eval_raw(&self, p: Point) -> Point {
        (self.eval)(p)
    }

    /// Evaluate with overflow detection: huge or non-finite components are
    /// reported as [`MapError::Overflow`], which iteration treats as escape.
    pub fn evaluate(&self, p: Point) -> Result<Point, MapError> {
        let q = (self.eval)(p);
        if !q.x.is_finite()
            || !q.y.is_finite()
            || q.x.abs() > OVERFLOW_LIMIT
            || q.y.abs() > OVERFLOW_LIMIT
        {
            return Err(MapError::Overflow);
        }
        Ok(q)
    }

    /// Jacobian at `p`: the exact one when the map carries it, otherwise
    /// central finite differences with step `h`.
    pub fn jacobian(&self, p: Point, h: f64) -> Mat2 {
        if let Some(j) = &self.jacobian_exact {
            return j(p);
        }
        let fxp = self.eval_raw(Point::new(p.x + h, p.y));
        let fxm = self.eval_raw(Point::new(p.x - h, p.y));
        let fyp = self.eval_raw(Point::new(p.x, p.y + h));
        let fym = self.eval_raw(Point::new(p.x, p.y - h));
        let inv2h = 1.0 / (2.0 * h);
        Mat2::new(
            (fxp.x - fxm.x) * inv2h,
            (fyp.x - fym.x) * inv2h,
            (fxp.y - fxm.y) * inv2h,
            (fyp.y - fym.y) * inv2h,
        )
    }

    pub fn has_exact_jacobian(&self) -> bool {
        self.jacobian_exact.is_some()
    }

    pub fn has_inverse(&self) -> bool {
        self.inverse.is_some()
    }

    pub fn inverse(&self, p: Point) -> Option<Point> {
        self.inverse.as_ref().map(|inv| inv(p))
    }

    pub fn claimed_group(&self) -> SymmetryGroup {
        self.claimed_group
    }

    pub fn catalog_id(&self) -> &str {
        &self.catalog_id
    }

    pub fn params(&self) -> &BTreeMap<String, f64> {
        &self.params
    }
}

impl std::fmt::Debug for PlanarMap {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("PlanarMap")
            .field("catalog_id", &self.catalog_id)
            .field("claimed_group", &self.claimed_group)
            .field("params", &self.params)
            .finish()
    }
}

/// Hypothesis-style report of a sampled equivariance check.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EquivarianceReport {
    pub group: SymmetryGroup,
    pub max_defect: f64,
    pub pass: bool,
    pub worst_point: [f64; 2],
    pub n_samples: usize,
    pub radius: f64,
    pub tol: f64,
    pub seed: u64,
}

/// Max over random sample points and generators of `|f(g x) - g f(x)|`.
pub fn check_equivariance(
    map: &PlanarMap,
    group: &SymmetryGroup,
    n_samples: usize,
    radius: f64,
    tol: f64,
    seed: u64,
) -> EquivarianceReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let gens = group.generators();
    let mut max_defect = 0.0_f64;
    let mut worst = Point::new(0.0, 0.0);
    for _ in 0..n_samples.max(1) {
        let x = crate::plane::sample_disk(&mut rng, radius);
        let fx = map.eval_raw(x);
        for g in &gens {
            let d = (map.eval_raw(g.apply(x)) - g.apply(fx)).norm();
            if d > max_defect {
                max_defect = d;
                worst = x;
            }
        }
    }
    EquivarianceReport {
        group: *group,
        max_defect,
        pass: max_defect <= tol,
        worst_point: [worst.x, worst.y],
        n_samples,
        radius,
        tol,
        seed,
    }
}

/// Largest candidate group (by containment rank) whose sampled equivariance
/// check passes. Reports membership among the tested candidates only; it
/// does not certify maximality of the symmetry group.
pub fn symmetry_group_estimate(
    map: &PlanarMap,
    candidates: &[SymmetryGroup],
    n_samples: usize,
    radius: f64,
    tol: f64,
    seed: u64,
) -> SymmetryGroup {
    let mut sorted: Vec<SymmetryGroup> = candidates.to_vec();
    sorted.sort_by(|a, b| b.containment_rank().cmp(&a.containment_rank()));
    for g in sorted {
        if check_equivariance(map, &g, n_samples, radius, tol, seed).pass {
            return g;
        }
    }
    SymmetryGroup::Trivial
}

/// Default candidate list for symmetry estimation: O(2), SO(2), and the
/// dihedral/cyclic towers up to `n_max`, plus the three small groups.
pub fn default_candidates(n_max: u32) -> Vec<SymmetryGroup> {
    let mut v = vec![SymmetryGroup::O2, SymmetryGroup::SO2];
    for n in (2..=n_max).rev() {
        v.push(SymmetryGroup::Dihedral(n));
    }
    for n in (3..=n_max).rev() {
        v.push(SymmetryGroup::Cyclic(n));
    }
    v.push(SymmetryGroup::Z2Kappa);
    v.push(SymmetryGroup::Z2MinusId);
    v.push(SymmetryGroup::Trivial);
    v
}

/// Local type of the origin from the eigenvalues of the Jacobian.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum LocalClass {
    Attractor,
    Repellor,
    Saddle,
    /// Saddle with both eigenvalues strictly positive.
    DirectSaddle,
    NonHyperbolic,
}

impl std::fmt::Display for LocalClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            LocalClass::Attractor => "Attractor",
            LocalClass::Repellor => "Repellor",
            LocalClass::Saddle => "Saddle",
            LocalClass::DirectSaddle => "DirectSaddle",
            LocalClass::NonHyperbolic => "NonHyperbolic",
        };
        f.write_str(s)
    }
}

/// Classification of the fixed point at the origin.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct OriginClassification {
    pub class: LocalClass,
    /// Eigenvalues of `Df(0)`, ordered by modulus.
    pub eigenvalues: [Complex64; 2],
    pub tol_hyp: f64,
}

/// Classify the origin of a map fixing it. Eigenvalues within `tol_hyp` of
/// the unit circle yield `NonHyperbolic` rather than a guess.
pub fn classify_origin(map: &PlanarMap, tol_hyp: f64) -> Result<OriginClassification, MapError> {
    let f0 = map.eval_raw(Point::new(0.0, 0.0));
    if f0.norm() > 1e-10 {
        return Err(MapError::NotAFixedPoint(f0.norm()));
    }
    let j = map.jacobian(Point::new(0.0, 0.0), DEFAULT_FD_STEP);
    let eigs = eigenvalues_2x2(&j);
    Ok(OriginClassification {
        class: classify_eigenvalues(&eigs, tol_hyp),
        eigenvalues: eigs,
        tol_hyp,
    })
}

/// The classification rule shared by fixed points and periodic orbits
/// (applied there to the multipliers of the period map).
pub fn classify_eigenvalues(eigs: &[Complex64; 2], tol_hyp: f64) -> LocalClass {
    let (m0, m1) = (eigs[0].norm(), eigs[1].norm());
    if m0 < 1.0 - tol_hyp && m1 < 1.0 - tol_hyp {
        return LocalClass::Attractor;
    }
    if m0 > 1.0 + tol_hyp && m1 > 1.0 + tol_hyp {
        return LocalClass::Repellor;
    }
    let real = eigs[0].im == 0.0 && eigs[1].im == 0.0;
    if real && m0 > 0.0 && m0 < 1.0 - tol_hyp && m1 > 1.0 + tol_hyp {
        if eigs[0].re > 0.0 && eigs[1].re > 0.0 {
            return LocalClass::DirectSaddle;
        }
        return LocalClass::Saddle;
    }
    LocalClass::NonHyperbolic
}

/// Result of sampling the Jacobian spectrum over a rectangle.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DmyReport {
    /// All sampled eigenvalues strictly inside the unit disk.
    pub all_inside_unit_disk: bool,
    /// Largest sampled spectral radius.
    pub worst_radius: f64,
    pub worst_point: [f64; 2],
    /// Whether the sampled spectrum meets the nonnegative real axis.
    pub intersects_nonneg_real_axis: bool,
    pub nonneg_witness: Option<NonnegWitness>,
    /// Subsample of (point, eigenvalue pair) entries for inspection.
    pub spectrum_sample: Vec<SpectrumSample>,
    pub region: Rect,
    pub grid_res: usize,
    pub fd_step: f64,
    /// Imaginary-part slack used when deciding whether an eigenvalue is a
    /// nonnegative real.
    pub real_axis_tol: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct NonnegWitness {
    pub point: [f64; 2],
    pub eigenvalue: Complex64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SpectrumSample {
    pub point: [f64; 2],
    pub eigenvalues: [Complex64; 2],
}

/// Sample Jacobian eigenvalues on a `grid_res x grid_res` grid over the
/// region: the empirical side of the discrete Markus-Yamabe question, plus
/// the `Spec(f)` vs `[0, inf)` test used by the local-attractor examples.
pub fn dmy_spectral_check(map: &PlanarMap, region: Rect, grid_res: usize, h: f64) -> DmyReport {
    let res = grid_res.max(1);
    let real_axis_tol = 1e-9;
    let mut worst_radius = 0.0_f64;
    let mut worst_point = Point::new(0.0, 0.0);
    let mut nonneg: Option<NonnegWitness> = None;
    let mut sample = Vec::new();
    let keep_every = (res * res / 16).max(1);
    for j in 0..res {
        for i in 0..res {
            let p = region.cell_center(i, j, res, res);
            let m = map.jacobian(p, h);
            let eigs = eigenvalues_2x2(&m);
            let r = eigs[1].norm();
            if r > worst_radius {
                worst_radius = r;
                worst_point = p;
            }
            if nonneg.is_none() {
                for e in &eigs {
                    if e.im.abs() <= real_axis_tol && e.re >= -real_axis_tol {
                        nonneg = Some(NonnegWitness {
                            point: [p.x, p.y],
                            eigenvalue: *e,
                        });
                        break;
                    }
                }
            }
            if (j * res + i) % keep_every == 0 {
                sample.push(SpectrumSample {
                    point: [p.x, p.y],
                    eigenvalues: eigs,
                });
            }
        }
    }
    DmyReport {
        all_inside_unit_disk: worst_radius < 1.0,
        worst_radius,
        worst_point: [worst_point.x, worst_point.y],
        intersects_nonneg_real_axis: nonneg.is_some(),
        nonneg_witness: nonneg,
        spectrum_sample: sample,
        region,
        grid_res: res,
        fd_step: h,
        real_axis_tol,
    }
}
