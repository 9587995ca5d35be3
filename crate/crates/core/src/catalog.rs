//! The map catalog: concrete equivariant maps with exact Jacobians and,
//! where the formula allows, exact inverses.
//!
//! Each constructor records its parameters and claimed symmetry group on
//! the returned [`PlanarMap`] so reports and output files can identify the
//! map they were produced from.

use crate::maps::{MapError, PlanarMap};
use crate::plane::{monotone_solve, Mat2, Point};
use crate::symmetry::SymmetryGroup;
use serde::{Deserialize, Serialize};
use std::f64::consts::TAU;
use std::sync::Arc;

/// `f(x, y) = (-a x^3 + (a - 1) x, -y/2)` with `0 < a < 1`.
///
/// An orientation-preserving diffeomorphism with symmetry group D_2, a
/// hyperbolic local attractor at the origin, spectrum avoiding the
/// nonnegative reals, and the 2-periodic orbit `{(1,0), (-1,0)}` that keeps
/// the attractor strictly local.
pub fn d2_cubic(a: f64) -> Result<PlanarMap, MapError> {
    if !(0.0 < a && a < 1.0) {
        return Err(MapError::InvalidParam(format!(
            "d2_cubic requires 0 < a < 1, got {a}"
        )));
    }
    let g = move |x: f64| -a * x * x * x + (a - 1.0) * x;
    let map = PlanarMap::new("d2_cubic", SymmetryGroup::Dihedral(2), move |p: Point| {
        Point::new(g(p.x), -0.5 * p.y)
    })
    .with_jacobian(move |p: Point| {
        Mat2::new(-3.0 * a * p.x * p.x + (a - 1.0), 0.0, 0.0, -0.5)
    })
    .with_inverse(move |p: Point| {
        // g is strictly decreasing, so the cubic has a unique real solution
        let x = monotone_solve(g, p.x, false);
        Point::new(x, -2.0 * p.y)
    })
    .with_param("a", a);
    Ok(map)
}

/// Diagonal linear map `(x, y) -> (alpha x, beta y)`, claimed group D_2.
///
/// With `0 < alpha < 1 < beta` this is the model direct saddle; other
/// parameter choices give the diagonal contractions and expansions used as
/// baseline cases.
pub fn linear_saddle(alpha: f64, beta: f64) -> Result<PlanarMap, MapError> {
    if !alpha.is_finite() || !beta.is_finite() {
        return Err(MapError::InvalidParam(
            "linear_saddle parameters must be finite".to_string(),
        ));
    }
    let mut map = PlanarMap::new("linear_saddle", SymmetryGroup::Dihedral(2), move |p: Point| {
        Point::new(alpha * p.x, beta * p.y)
    })
    .with_jacobian(move |_| Mat2::new(alpha, 0.0, 0.0, beta))
    .with_param("alpha", alpha)
    .with_param("beta", beta);
    if alpha != 0.0 && beta != 0.0 {
        map = map.with_inverse(move |p: Point| Point::new(p.x / alpha, p.y / beta));
    }
    Ok(map)
}

/// Radial profiles available to [`so2_radial`] and the suspension.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum RadialProfile {
    /// `r(rho) = k rho` — a homothety profile.
    Linear { k: f64 },
    /// `r(rho) = rho ((1 - c) + c rho^2)`, `0 < c < 1`: fixed radii 0 and 1,
    /// derivative `1 - c` at the origin.
    CubicTwist { c: f64 },
    /// `r(rho) = rho e^{c (rho - 1)}`, `0 < c < 1`: unit circle invariant,
    /// contracting inside, expanding outside.
    ExpUnit { c: f64 },
}

impl RadialProfile {
    pub fn validate(&self) -> Result<(), MapError> {
        match self {
            RadialProfile::Linear { k } if k.is_finite() => Ok(()),
            RadialProfile::CubicTwist { c } | RadialProfile::ExpUnit { c }
                if 0.0 < *c && *c < 1.0 =>
            {
                Ok(())
            }
            _ => Err(MapError::InvalidParam(format!(
                "invalid radial profile {self:?}"
            ))),
        }
    }

    pub fn r(&self, rho: f64) -> f64 {
        match self {
            RadialProfile::Linear { k } => k * rho,
            RadialProfile::CubicTwist { c } => rho * ((1.0 - c) + c * rho * rho),
            RadialProfile::ExpUnit { c } => rho * (c * (rho - 1.0)).exp(),
        }
    }

    pub fn r_prime(&self, rho: f64) -> f64 {
        match self {
            RadialProfile::Linear { k } => *k,
            RadialProfile::CubicTwist { c } => (1.0 - c) + 3.0 * c * rho * rho,
            RadialProfile::ExpUnit { c } => (c * (rho - 1.0)).exp() * (1.0 + c * rho),
        }
    }

    /// `r(rho)/rho`, continued through `rho = 0` by its limit.
    fn scale(&self, rho: f64) -> f64 {
        match self {
            RadialProfile::Linear { k } => *k,
            RadialProfile::CubicTwist { c } => (1.0 - c) + c * rho * rho,
            RadialProfile::ExpUnit { c } => (c * (rho - 1.0)).exp(),
        }
    }

    /// Same as [`Self::scale`] but from the squared radius, avoiding the
    /// square root where the profile allows it.
    fn scale_from_rho2(&self, rho2: f64) -> f64 {
        match self {
            RadialProfile::Linear { k } => *k,
            RadialProfile::CubicTwist { c } => c.mul_add(rho2, 1.0 - c),
            RadialProfile::ExpUnit { c } => (c * (rho2.sqrt() - 1.0)).exp(),
        }
    }

    /// Gradient of `scale` as `grad = g(rho) * v` with the returned factor
    /// multiplying `v`; used for the exact Jacobian.
    fn scale_grad_factor(&self, rho: f64) -> f64 {
        match self {
            RadialProfile::Linear { .. } => 0.0,
            RadialProfile::CubicTwist { c } => 2.0 * c,
            RadialProfile::ExpUnit { c } => {
                if rho == 0.0 {
                    0.0
                } else {
                    c * (c * (rho - 1.0)).exp() / rho
                }
            }
        }
    }

    fn invert(&self, target: f64) -> f64 {
        match self {
            RadialProfile::Linear { k } => target / k,
            _ => monotone_solve(|rho| self.r(rho.max(0.0)), target, true).max(0.0),
        }
    }

    fn is_increasing(&self) -> bool {
        match self {
            RadialProfile::Linear { k } => *k > 0.0,
            // validated profiles have r' > 0 everywhere on [0, inf)
            RadialProfile::CubicTwist { .. } | RadialProfile::ExpUnit { .. } => true,
        }
    }

    fn param_entries(&self) -> Vec<(&'static str, f64)> {
        match self {
            RadialProfile::Linear { k } => vec![("k", *k)],
            RadialProfile::CubicTwist { c } => vec![("c", *c)],
            RadialProfile::ExpUnit { c } => vec![("c_exp", *c)],
        }
    }
}

fn rotation_matrix(w: f64) -> Mat2 {
    let (s, c) = w.sin_cos();
    Mat2::new(c, -s, s, c)
}

/// SO(2)-equivariant map `(rho, theta) -> (r(rho), theta + w)` in Cartesian
/// form `f(v) = (r(|v|)/|v|) R(w) v`. Fixed radii of the profile are
/// invariant circles of the map.
pub fn so2_radial(profile: RadialProfile, w: f64) -> Result<PlanarMap, MapError> {
    profile.validate()?;
    build_radial(profile, w, "so2_radial", SymmetryGroup::SO2)
}

/// The Z_n local-but-not-global attractor witness: polar form
/// `(rho, theta) -> (rho ((1 - c) + c rho^2), theta + 2 pi / n)` with
/// `n >= 2`, `0 < c < 1`.
///
/// A differentiable homeomorphism with `Fix = {0}`, a hyperbolic local
/// attractor at the origin (`r'(0) = 1 - c`), and the invariant unit circle
/// on which every point has minimal period exactly `n`.
pub fn twist_zn(n: u32, c: f64) -> Result<PlanarMap, MapError> {
    if n < 2 {
        return Err(MapError::InvalidParam(format!(
            "twist_zn requires n >= 2, got {n}"
        )));
    }
    if !(0.0 < c && c < 1.0) {
        return Err(MapError::InvalidParam(format!(
            "twist_zn requires 0 < c < 1, got {c}"
        )));
    }
    let w = TAU / f64::from(n);
    let map = build_radial(
        RadialProfile::CubicTwist { c },
        w,
        "twist_zn",
        SymmetryGroup::Cyclic(n),
    )?
    .with_param("n", f64::from(n));
    Ok(map)
}

fn build_radial(
    profile: RadialProfile,
    w: f64,
    id: &str,
    group: SymmetryGroup,
) -> Result<PlanarMap, MapError> {
    let rot = rotation_matrix(w);
    let rot_inv = rotation_matrix(-w);
    let (sin_w, cos_w) = w.sin_cos();
    let increasing = profile.is_increasing();
    let p_eval = profile;
    let p_jac = profile;
    let p_inv = profile;
    let mut map = PlanarMap::new(id, group, move |v: Point| {
        let rho2 = v.x.mul_add(v.x, v.y * v.y);
        let s = p_eval.scale_from_rho2(rho2);
        let rx = cos_w.mul_add(v.x, -sin_w * v.y);
        let ry = sin_w.mul_add(v.x, cos_w * v.y);
        Point::new(s * rx, s * ry)
    })
    .with_jacobian(move |v: Point| {
        let rho = v.norm();
        let s = p_jac.scale(rho);
        let g = p_jac.scale_grad_factor(rho);
        // D(scale(rho) v) = scale I + (grad scale) v^T
        rot * (Mat2::identity() * s + v * v.transpose() * g)
    })
    .with_param("w", w);
    if increasing {
        map = map.with_inverse(move |q: Point| {
            let back = rot_inv * q;
            let rho_target = back.norm();
            if rho_target == 0.0 {
                return Point::new(0.0, 0.0);
            }
            let rho = p_inv.invert(rho_target);
            back * (rho / rho_target)
        });
    }
    for (name, value) in profile.param_entries() {
        map = map.with_param(name, value);
    }
    Ok(map)
}

/// How a sector base map is supposed to treat the boundary rays of the
/// fundamental sector `S0 = {0 <= theta <= 2 pi / n}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SectorMode {
    /// Both boundary rays map into themselves.
    Keep,
    /// The sector is carried onto the next one: the ray `theta = 0` maps
    /// into the ray `theta = 2 pi / n` with boundary values matching under
    /// the rotation `zeta`.
    RotateNext,
}

/// Tolerance for the sampled boundary-consistency check of
/// [`sector_extend`].
pub const SECTOR_BOUNDARY_TOL: f64 = 1e-9;

/// Extend a map of the closed sector `S0` to the unique Z_n-equivariant map
/// of the plane, `F(zeta^k x) = zeta^k F(x)`.
///
/// Consistency of `base` along the shared boundary rays is verified by
/// sampling before the extension is returned; an inconsistent base fails
/// with [`MapError::BoundaryMismatch`] carrying the worst offending sample.
pub fn sector_extend<F>(base: F, n: u32, mode: SectorMode) -> Result<PlanarMap, MapError>
where
    F: Fn(Point) -> Point + Send + Sync + 'static,
{
    if n < 2 {
        return Err(MapError::InvalidParam(format!(
            "sector_extend requires n >= 2, got {n}"
        )));
    }
    let base: Arc<dyn Fn(Point) -> Point + Send + Sync> = Arc::new(base);
    let sector = TAU / f64::from(n);
    let zeta = rotation_matrix(sector);
    let zeta_inv = rotation_matrix(-sector);

    // Distance from q to the closed ray at angle `phi`.
    let ray_distance = |q: Point, phi: f64| -> f64 {
        let u = Point::new(phi.cos(), phi.sin());
        let t = q.dot(&u);
        if t >= 0.0 {
            (q - u * t).norm()
        } else {
            q.norm()
        }
    };
    let target_ray = match mode {
        SectorMode::Keep => 0.0,
        SectorMode::RotateNext => sector,
    };

    // The base must send the ray theta = 0 into the mode's target ray, and
    // continuity across each shared ray reduces, by equivariance, to
    // base(zeta u) = zeta base(u) for u on the ray theta = 0.
    let mut worst = (0.0_f64, 0.0_f64); // (defect, radius)
    for i in 0..64 {
        // radii spread over [1e-3, 10] geometrically
        let radius = 1e-3 * (10.0_f64 / 1e-3).powf(i as f64 / 63.0);
        let u = Point::new(radius, 0.0);
        let containment = ray_distance(base(u), target_ray);
        let matching = (base(zeta * u) - zeta * base(u)).norm();
        let defect = containment.max(matching);
        if defect > worst.0 {
            worst = (defect, radius);
        }
    }
    if worst.0 > SECTOR_BOUNDARY_TOL {
        return Err(MapError::BoundaryMismatch {
            defect: worst.0,
            radius: worst.1,
            ray: 0,
        });
    }

    let eval_base = Arc::clone(&base);
    let map = PlanarMap::new(
        format!("sector_extend_{}", match mode {
            SectorMode::Keep => "keep",
            SectorMode::RotateNext => "rotate_next",
        }),
        SymmetryGroup::Cyclic(n),
        move |p: Point| {
            if p.x == 0.0 && p.y == 0.0 {
                return eval_base(p);
            }
            let theta = p.y.atan2(p.x).rem_euclid(TAU);
            let k = ((theta / sector).floor() as i64).clamp(0, i64::from(n) - 1);
            // rotate into the fundamental sector, apply, rotate back
            let mut back = p;
            for _ in 0..k {
                back = zeta_inv * back;
            }
            let mut out = eval_base(back);
            for _ in 0..k {
                out = zeta * out;
            }
            out
        },
    )
    .with_param("n", f64::from(n));
    Ok(map)
}
