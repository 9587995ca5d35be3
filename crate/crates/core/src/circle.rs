//! Circle homeomorphisms through monotone degree-one lifts: rigid
//! rotations, rotation-number estimation, equivariant Denjoy constructions
//! with an explicit gap table, and the radial suspension that turns a lift
//! into a planar map whose unit circle carries the circle dynamics.
//!
//! The Denjoy lift blows the `m` rigid-rotation orbits `{j/m + k tau}`
//! (orbit indices `|k| <= K`) up into gaps with geometrically decaying
//! lengths, maps gap `(k, j)` onto gap `(k+1, j)` by an affine bridge, and
//! acts off the gaps as the conjugated rotation induced by cumulative gap
//! mass. Truncating the orbit at `K` leaves a defect of one gap length
//! `~lambda^K` (around 1e-13 at the defaults) at the extreme gaps; the
//! audits in this module run well above that scale, and the gap table
//! itself is symmetric under rotation by `1/m` exactly, which is what the
//! equivariance checks measure.

use crate::maps::{MapError, PlanarMap};
use crate::plane::Point;
use crate::symmetry::SymmetryGroup;
use serde::Serialize;
use std::collections::HashMap;
use std::f64::consts::TAU;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CircleError {
    #[error("tau is a machine rational: |tau - {p}/{q}| <= {tol:e}")]
    NotIrrational { p: i64, q: i64, tol: f64 },
    #[error("total gap mass {mass} must lie strictly between 0 and 1")]
    LengthBudgetExceeded { mass: f64 },
    #[error("gap anchors collide: old-circle separation {separation:e}")]
    GapCollision { separation: f64 },
    #[error("invalid parameter: {0}")]
    InvalidParam(String),
}

/// Rational-approximation guard: reject `tau` when a continued-fraction
/// convergent `p/q` with `q` below this bound matches it to
/// [`RATIONAL_MATCH_TOL`].
pub const RATIONAL_DENOMINATOR_BOUND: i64 = 1_000_000;

/// Match tolerance of the rationality guard. Genuine machine rationals
/// `p/q` sit within half an ulp (~1e-17) of their double; generic
/// irrationals keep all convergent errors above `1/(2 q^2) ~ 5e-13` for
/// `q <= 1e6`, so this threshold separates the two cleanly.
pub const RATIONAL_MATCH_TOL: f64 = 1e-14;

/// Report `Some((p, q))` if a convergent with denominator `< bound` matches
/// `x` within `tol`.
pub fn rational_approximation(x: f64, bound: i64, tol: f64) -> Option<(i64, i64)> {
    let mut a = x.floor();
    let mut frac = x - a;
    let (mut p0, mut q0, mut p1, mut q1) = (1i64, 0i64, a as i64, 1i64);
    for _ in 0..64 {
        if (x - p1 as f64 / q1 as f64).abs() <= tol {
            return Some((p1, q1));
        }
        if frac == 0.0 {
            return None;
        }
        let inv = 1.0 / frac;
        a = inv.floor();
        frac = inv - a;
        let p2 = (a as i64).saturating_mul(p1).saturating_add(p0);
        let q2 = (a as i64).saturating_mul(q1).saturating_add(q0);
        if q2 >= bound {
            return None;
        }
        (p0, q0, p1, q1) = (p1, q1, p2, q2);
    }
    None
}

/// One inserted gap of the Denjoy construction.
#[derive(Debug, Clone, Serialize)]
pub struct Gap {
    /// Anchor on the original circle (an orbit point of the rotation).
    pub old_anchor: f64,
    /// Left endpoint of the gap on the new circle.
    pub new_left: f64,
    pub length: f64,
    /// Orbit index `k` in `-K..=K`.
    pub orbit_index: i32,
    /// Symmetry copy index `j` in `0..m`.
    pub copy_index: u32,
}

/// The full gap table of a Denjoy lift, sorted by anchor.
#[derive(Debug, Clone, Serialize)]
pub struct GapStructure {
    pub tau: f64,
    pub m: u32,
    pub k_range: i32,
    pub lambda: f64,
    pub total_gap_mass: f64,
    /// Lebesgue density of the off-gap part, `1 - total_gap_mass`.
    pub lebesgue_scale: f64,
    pub gaps: Vec<Gap>,
    #[serde(skip)]
    prefix: Vec<f64>,
    #[serde(skip)]
    lookup: HashMap<(i32, u32), usize>,
}

impl GapStructure {
    /// Assemble a table from raw gaps (sorted by `old_anchor`), recomputing
    /// the prefix sums and the `(k, j)` index.
    pub fn from_parts(
        tau: f64,
        m: u32,
        k_range: i32,
        lambda: f64,
        total_gap_mass: f64,
        gaps: Vec<Gap>,
    ) -> Self {
        let mut prefix = Vec::with_capacity(gaps.len() + 1);
        let mut acc = 0.0;
        prefix.push(0.0);
        for g in &gaps {
            acc += g.length;
            prefix.push(acc);
        }
        let lookup = gaps
            .iter()
            .enumerate()
            .map(|(i, g)| ((g.orbit_index, g.copy_index), i))
            .collect();
        GapStructure {
            tau,
            m,
            k_range,
            lambda,
            total_gap_mass,
            lebesgue_scale: 1.0 - total_gap_mass,
            gaps,
            prefix,
            lookup,
        }
    }

    fn gap_at(&self, y: f64) -> Option<usize> {
        let idx = self.gaps.partition_point(|g| g.new_left <= y);
        if idx == 0 {
            return None;
        }
        let g = &self.gaps[idx - 1];
        (y < g.new_left + g.length).then_some(idx - 1)
    }

    /// Total gap length strictly left of an off-gap point `y`.
    fn mass_left_of_new(&self, y: f64) -> f64 {
        self.prefix[self.gaps.partition_point(|g| g.new_left < y)]
    }

    /// Image on the new circle of an old-circle point `z` (not an anchor).
    fn point_image(&self, z: f64) -> f64 {
        let idx = self.gaps.partition_point(|g| g.old_anchor < z);
        self.lebesgue_scale * z + self.prefix[idx]
    }

    /// The lift value for `y` in `[0, 1)`, taking values in `[0, 2)`.
    fn eval_frac(&self, y: f64) -> f64 {
        if let Some(idx) = self.gap_at(y) {
            let g = &self.gaps[idx];
            let z = g.old_anchor + self.tau;
            let wrap = if z >= 1.0 { 1.0 } else { 0.0 };
            if g.orbit_index < self.k_range {
                // affine bridge onto the next gap of the same copy
                let target = &self.gaps[self.lookup[&(g.orbit_index + 1, g.copy_index)]];
                let t = (y - g.new_left) / g.length;
                target.new_left + t * target.length + wrap
            } else {
                // last gap of the truncated orbit: collapse onto the image
                // point of its anchor
                self.point_image(z - wrap) + wrap
            }
        } else {
            let x_old = (y - self.mass_left_of_new(y)) / self.lebesgue_scale;
            let z = x_old + self.tau;
            let wrap = z.floor();
            self.point_image(z - wrap) + wrap
        }
    }
}

/// Internal representation of a lift.
#[derive(Debug, Clone, Serialize)]
pub enum LiftRepr {
    /// `F(x) = x + w`.
    Rigid { w: f64 },
    Denjoy(GapStructure),
    /// `F(x) = inner(x + shift) - shift`: conjugation by a rigid rotation.
    Conjugated {
        inner: Box<CircleLift>,
        shift: f64,
    },
}

/// A monotone degree-one lift `F` of a circle homeomorphism,
/// `F(x + 1) = F(x) + 1`.
#[derive(Debug, Clone, Serialize)]
pub struct CircleLift {
    pub repr: LiftRepr,
}

/// `F(x) = x + w`.
pub fn rigid_rotation(w: f64) -> CircleLift {
    CircleLift {
        repr: LiftRepr::Rigid { w },
    }
}

impl CircleLift {
    /// Conjugate by the rigid rotation `H(x) = x + shift`: returns
    /// `H^{-1} o F o H`, which has the same rotation number.
    pub fn conjugate_by_rotation(self, shift: f64) -> CircleLift {
        CircleLift {
            repr: LiftRepr::Conjugated {
                inner: Box::new(self),
                shift,
            },
        }
    }

    pub fn evaluate(&self, x: f64) -> f64 {
        match &self.repr {
            LiftRepr::Rigid { w } => x + w,
            LiftRepr::Denjoy(gaps) => {
                let mut n = x.floor();
                let mut t = x - n;
                if t >= 1.0 {
                    t = 0.0;
                    n += 1.0;
                }
                n + gaps.eval_frac(t)
            }
            LiftRepr::Conjugated { inner, shift } => inner.evaluate(x + shift) - shift,
        }
    }

    /// `F^n(x0)`. Rigid lifts use the exact composite `x0 + n w`; the rest
    /// iterate.
    pub fn iterate_n(&self, x0: f64, n: usize) -> f64 {
        match &self.repr {
            LiftRepr::Rigid { w } => x0 + n as f64 * w,
            LiftRepr::Conjugated { inner, shift } => inner.iterate_n(x0 + shift, n) - shift,
            LiftRepr::Denjoy(_) => {
                let mut x = x0;
                for _ in 0..n {
                    x = self.evaluate(x);
                }
                x
            }
        }
    }

    pub fn gap_structure(&self) -> Option<&GapStructure> {
        match &self.repr {
            LiftRepr::Denjoy(g) => Some(g),
            _ => None,
        }
    }

    /// Symmetry order the lift was built with (1 when untracked).
    pub fn symmetry_order(&self) -> u32 {
        match &self.repr {
            LiftRepr::Denjoy(g) => g.m,
            LiftRepr::Conjugated { inner, .. } => inner.symmetry_order(),
            LiftRepr::Rigid { .. } => 1,
        }
    }
}

/// Rotation-number estimate `(F^n(x0) - x0) / n` with the standard bound
/// `1/n` for monotone degree-one lifts.
#[derive(Debug, Clone, Serialize)]
pub struct RotationEstimate {
    pub estimate: f64,
    pub bound: f64,
    pub n_iter: usize,
    pub x0: f64,
}

impl RotationEstimate {
    /// The estimate reduced mod 1 into `[0, 1)`.
    pub fn reduced(&self) -> f64 {
        crate::plane::frac(self.estimate)
    }
}

pub fn rotation_number(lift: &CircleLift, x0: f64, n_iter: usize) -> RotationEstimate {
    let n = n_iter.max(1);
    let xn = lift.iterate_n(x0, n);
    RotationEstimate {
        estimate: (xn - x0) / n as f64,
        bound: 1.0 / n as f64,
        n_iter: n,
        x0,
    }
}

/// Geometric gap length law `l_k = c lambda^{|k|}` with `c` scaled so the
/// total inserted mass over all `m (2K+1)` gaps equals `total_mass`.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct GapLengthLaw {
    pub lambda: f64,
    pub total_mass: f64,
}

impl Default for GapLengthLaw {
    fn default() -> Self {
        GapLengthLaw {
            lambda: 0.5,
            total_mass: 0.5,
        }
    }
}

/// Build the Z_m-equivariant Denjoy lift with target rotation number `tau`.
///
/// `k_range = 0` inserts no gaps at all and reduces to the rigid rotation.
pub fn denjoy_construct(
    tau: f64,
    m: u32,
    k_range: i32,
    law: GapLengthLaw,
) -> Result<CircleLift, CircleError> {
    if !(0.0 < tau && tau < 1.0) {
        return Err(CircleError::InvalidParam(format!(
            "tau must lie in (0, 1), got {tau}"
        )));
    }
    if m < 1 {
        return Err(CircleError::InvalidParam("m must be at least 1".into()));
    }
    if k_range < 0 {
        return Err(CircleError::InvalidParam(format!(
            "k_range must be nonnegative, got {k_range}"
        )));
    }
    if !(0.0 < law.lambda && law.lambda < 1.0) {
        return Err(CircleError::InvalidParam(format!(
            "lambda must lie in (0, 1), got {}",
            law.lambda
        )));
    }
    if let Some((p, q)) = rational_approximation(tau, RATIONAL_DENOMINATOR_BOUND, RATIONAL_MATCH_TOL)
    {
        return Err(CircleError::NotIrrational {
            p,
            q,
            tol: RATIONAL_MATCH_TOL,
        });
    }
    if k_range == 0 {
        // no gaps: the conjugacy is the identity
        return Ok(CircleLift {
            repr: LiftRepr::Denjoy(GapStructure::from_parts(tau, m, 0, law.lambda, 0.0, vec![])),
        });
    }
    if !(0.0 < law.total_mass && law.total_mass < 1.0) {
        return Err(CircleError::LengthBudgetExceeded {
            mass: law.total_mass,
        });
    }

    let k = k_range;
    let per_copy: f64 = (-k..=k).map(|i| law.lambda.powi(i.abs())).sum();
    let c = law.total_mass / (f64::from(m) * per_copy);

    let mut raw: Vec<Gap> = Vec::with_capacity(m as usize * (2 * k + 1) as usize);
    for j in 0..m {
        for ki in -k..=k {
            let anchor =
                crate::plane::frac(f64::from(j) / f64::from(m) + f64::from(ki) * tau);
            raw.push(Gap {
                old_anchor: anchor,
                new_left: 0.0,
                length: c * law.lambda.powi(ki.abs()),
                orbit_index: ki,
                copy_index: j,
            });
        }
    }
    raw.sort_by(|a, b| a.old_anchor.total_cmp(&b.old_anchor));
    for pair in raw.windows(2) {
        let sep = pair[1].old_anchor - pair[0].old_anchor;
        if sep <= 1e-15 {
            return Err(CircleError::GapCollision { separation: sep });
        }
    }
    let scale = 1.0 - law.total_mass;
    let mut acc = 0.0;
    for g in raw.iter_mut() {
        g.new_left = scale * g.old_anchor + acc;
        acc += g.length;
    }
    Ok(CircleLift {
        repr: LiftRepr::Denjoy(GapStructure::from_parts(
            tau,
            m,
            k,
            law.lambda,
            law.total_mass,
            raw,
        )),
    })
}

/// Max over a uniform sample grid of `|F(x + 1/m) - F(x) - 1/m|`.
#[derive(Debug, Clone, Serialize)]
pub struct CircleEquivarianceReport {
    pub m: u32,
    pub max_defect: f64,
    pub pass: bool,
    pub n_samples: usize,
    pub tol: f64,
}

pub fn equivariance_check_circle(
    lift: &CircleLift,
    m: u32,
    n_samples: usize,
    tol: f64,
) -> CircleEquivarianceReport {
    let shift = 1.0 / f64::from(m.max(1));
    let n = n_samples.max(1);
    let mut max_defect = 0.0_f64;
    for i in 0..n {
        let x = i as f64 / n as f64;
        let d = (lift.evaluate(x + shift) - lift.evaluate(x) - shift).abs();
        max_defect = max_defect.max(d);
    }
    CircleEquivarianceReport {
        m,
        max_defect,
        pass: max_defect <= tol,
        n_samples: n,
        tol,
    }
}

/// Minimized displacement `|F^q(x) - x - p|` over a sample grid, all
/// periods `q <= q_max` and integers `p`. A positive floor is the sampled
/// signature of a map without periodic points.
#[derive(Debug, Clone, Serialize)]
pub struct PeriodicProbeResult {
    pub min_displacement: f64,
    pub arg_x: f64,
    pub arg_q: usize,
    pub q_max: usize,
    pub grid_size: usize,
}

pub fn periodic_point_probe(lift: &CircleLift, q_max: usize, grid_size: usize) -> PeriodicProbeResult {
    let n = grid_size.max(1);
    let mut best = (f64::INFINITY, 0.0, 1usize);
    for i in 0..n {
        let x = i as f64 / n as f64;
        let mut y = x;
        for q in 1..=q_max.max(1) {
            y = lift.evaluate(y);
            let d = y - x;
            let dist = (d - d.round()).abs();
            if dist < best.0 {
                best = (dist, x, q);
            }
        }
    }
    PeriodicProbeResult {
        min_displacement: best.0,
        arg_x: best.1,
        arg_q: best.2,
        q_max,
        grid_size: n,
    }
}

/// Exact disjointness check of the gap family with orbit indices in
/// `range` together with their images (`k+1`), on the sorted table, with
/// no tolerance.
pub fn wandering_interval_check(gaps: &GapStructure, range: (i32, i32)) -> bool {
    let selected: Vec<&Gap> = gaps
        .gaps
        .iter()
        .filter(|g| g.orbit_index >= range.0 && g.orbit_index <= range.1 + 1)
        .collect();
    // table order is anchor order, which equals new-circle order
    for pair in selected.windows(2) {
        if pair[0].new_left + pair[0].length > pair[1].new_left {
            return false;
        }
    }
    true
}

/// Suspend a circle lift into the plane: polar map
/// `(rho, theta) -> (s(rho), 2 pi F(theta / 2 pi))` with radial profile
/// `s(rho) = rho e^{c (rho - 1)}`, `0 < c < 1`.
///
/// The unit circle is invariant and carries the circle dynamics; the origin
/// is asymptotically stable with basin the open unit disk, and everything
/// outside escapes. When the lift commutes with translation by `1/m`, the
/// suspension is Z_m-equivariant.
pub fn suspend(lift: &CircleLift, c: f64) -> Result<PlanarMap, MapError> {
    if !(0.0 < c && c < 1.0) {
        return Err(MapError::InvalidParam(format!(
            "suspension contraction must satisfy 0 < c < 1, got {c}"
        )));
    }
    let group = match &lift.repr {
        LiftRepr::Rigid { .. } => SymmetryGroup::SO2,
        _ => {
            let m = lift.symmetry_order();
            if m >= 2 {
                SymmetryGroup::Cyclic(m)
            } else {
                SymmetryGroup::Trivial
            }
        }
    };
    let lift_eval = lift.clone();
    let map = PlanarMap::new("suspend", group, move |v: Point| {
        let rho = v.norm();
        if rho == 0.0 {
            return Point::new(0.0, 0.0);
        }
        let theta = v.y.atan2(v.x) / TAU;
        let image = lift_eval.evaluate(theta);
        let angle = TAU * image;
        let s = rho * (c * (rho - 1.0)).exp();
        Point::new(s * angle.cos(), s * angle.sin())
    })
    .with_param("c", c);
    Ok(map)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{so2_radial, RadialProfile};
    use crate::dynamics::{classify_omega, OmegaConfig, OmegaKind};

    const GOLDEN_TRUNC: f64 = 0.6180339887;

    fn golden_denjoy(m: u32) -> CircleLift {
        denjoy_construct(GOLDEN_TRUNC, m, 40, GapLengthLaw::default()).unwrap()
    }

    #[test]
    fn rigid_basics() {
        let f = rigid_rotation(1.0 / 3.0);
        assert!((f.evaluate(0.5) - (0.5 + 1.0 / 3.0)).abs() <= 1e-15);
        let est = rotation_number(&f, 0.0, 10_000);
        assert!((est.estimate - 1.0 / 3.0).abs() <= 1e-15);
        assert_eq!(est.bound, 1e-4);

        // exact translation equivariance for every m
        for m in [2, 3, 4, 7] {
            let rep = equivariance_check_circle(&f, m, 1000, 1e-12);
            assert!(rep.pass, "m = {m}: defect {}", rep.max_defect);
        }

        // m-fold composite of the 1/m rotation has rotation number 1 == 0
        let full = rigid_rotation(3.0 * (1.0 / 3.0));
        let est = rotation_number(&full, 0.2, 1000);
        assert!((est.estimate - 1.0).abs() <= 1e-15);
        assert!(est.reduced().abs() <= 1e-15);
    }

    #[test]
    fn rational_guard() {
        assert!(rational_approximation(1.0 / 3.0, 1_000_000, RATIONAL_MATCH_TOL).is_some());
        assert!(rational_approximation(0.4, 1_000_000, RATIONAL_MATCH_TOL).is_some());
        assert!(
            rational_approximation(GOLDEN_TRUNC, 1_000_000, RATIONAL_MATCH_TOL).is_none(),
            "the truncated golden conjugate must pass the guard"
        );
        let exact_golden = (5.0_f64.sqrt() - 1.0) / 2.0;
        assert!(rational_approximation(exact_golden, 1_000_000, RATIONAL_MATCH_TOL).is_none());

        assert!(matches!(
            denjoy_construct(1.0 / 3.0, 2, 10, GapLengthLaw::default()),
            Err(CircleError::NotIrrational { q: 3, .. })
        ));
    }

    #[test]
    fn budget_guard() {
        let law = GapLengthLaw {
            lambda: 0.5,
            total_mass: 1.0,
        };
        assert!(matches!(
            denjoy_construct(GOLDEN_TRUNC, 2, 10, law),
            Err(CircleError::LengthBudgetExceeded { .. })
        ));
    }

    #[test]
    fn k_zero_reduces_to_rigid_rotation() {
        let f = denjoy_construct(GOLDEN_TRUNC, 1, 0, GapLengthLaw::default()).unwrap();
        assert!(f.gap_structure().unwrap().gaps.is_empty());
        for i in 0..1000 {
            let x = -2.0 + 4.0 * i as f64 / 1000.0;
            assert!(
                (f.evaluate(x) - (x + GOLDEN_TRUNC)).abs() <= 1e-12,
                "mismatch at {x}"
            );
        }
    }

    #[test]
    fn denjoy_lift_is_monotone_degree_one() {
        use rand::Rng;
        use rand::SeedableRng;
        let f = golden_denjoy(2);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..10_000 {
            let x: f64 = rng.gen_range(-1.0..2.0);
            let d = f.evaluate(x + 1.0) - f.evaluate(x) - 1.0;
            assert!(d.abs() <= 1e-12, "degree-one defect {d:e} at {x}");
            let y = x + rng.gen_range(1e-12..0.3);
            assert!(
                f.evaluate(y) - f.evaluate(x) >= -1e-14,
                "monotonicity violated between {x} and {y}"
            );
        }
    }

    #[test]
    fn denjoy_gap_images_and_masses() {
        let f = golden_denjoy(2);
        let g = f.gap_structure().unwrap();
        assert_eq!(g.gaps.len(), 2 * (2 * 40 + 1));
        let total: f64 = g.gaps.iter().map(|gap| gap.length).sum();
        assert!((total - 0.5).abs() <= 1e-12);
        // gap (k, j) maps affinely onto gap (k+1, j): check the left
        // endpoint and an interior point
        for gap in &g.gaps {
            if gap.orbit_index < g.k_range {
                let target_idx = g.lookup[&(gap.orbit_index + 1, gap.copy_index)];
                let target = &g.gaps[target_idx];
                let left = f.evaluate(gap.new_left);
                let wrap = left.floor();
                assert!((left - wrap - target.new_left).abs() <= 1e-9);
                let interior = f.evaluate(gap.new_left + 0.75 * gap.length);
                assert!(
                    (interior - wrap - (target.new_left + 0.75 * target.length)).abs()
                        <= 1e-9 + 1e-6 * target.length,
                    "gap ({},{}) interior image",
                    gap.orbit_index,
                    gap.copy_index
                );
            }
        }
    }

    #[test]
    fn denjoy_equivariance_and_rotation_number() {
        for m in [2u32, 3, 4] {
            let f = golden_denjoy(m);
            let rep = equivariance_check_circle(&f, m, 10_000, 1e-12);
            assert!(rep.pass, "m = {m}: defect {:e}", rep.max_defect);

            let est = rotation_number(&f, 0.1, 100_000);
            assert!(
                (est.estimate - GOLDEN_TRUNC).abs() <= 1e-3,
                "m = {m}: estimate {}",
                est.estimate
            );
        }
    }

    #[test]
    fn denjoy_rotation_number_against_long_run_oracle() {
        // oracle: an independent, 20x longer run pins the rotation number
        let f = golden_denjoy(2);
        let long = rotation_number(&f, 0.37, 2_000_000);
        assert!((long.estimate - GOLDEN_TRUNC).abs() <= 1e-5);
        let short = rotation_number(&f, 0.1, 100_000);
        assert!((short.estimate - long.estimate).abs() <= short.bound + long.bound);
    }

    #[test]
    fn periodic_point_probes() {
        // rigid 1/3 closes exactly at q = 3
        let f = rigid_rotation(1.0 / 3.0);
        let probe = periodic_point_probe(&f, 3, 1000);
        assert!(probe.min_displacement <= 1e-12);
        assert_eq!(probe.arg_q, 3);

        // the Denjoy lift keeps a positive displacement floor
        let f = golden_denjoy(2);
        let probe = periodic_point_probe(&f, 20, 2000);
        assert!(
            probe.min_displacement > 1e-4,
            "floor {:e}",
            probe.min_displacement
        );

        // rigid irrational rotation: positive floor as well
        let f = rigid_rotation(GOLDEN_TRUNC);
        let probe = periodic_point_probe(&f, 20, 500);
        assert!(probe.min_displacement > 1e-3);
    }

    #[test]
    fn wandering_intervals() {
        let f = golden_denjoy(1);
        let g = f.gap_structure().unwrap();
        assert!(wandering_interval_check(g, (-40, 39)));
        assert!(wandering_interval_check(g, (-5, 5)));

        // artificially overlapped copy
        let mut gaps = g.gaps.clone();
        gaps[1].new_left = gaps[0].new_left + gaps[0].length * 0.5;
        let broken = GapStructure::from_parts(g.tau, g.m, g.k_range, g.lambda, g.total_gap_mass, gaps);
        assert!(!wandering_interval_check(&broken, (-40, 39)));

        // no gaps: vacuously true
        let empty = denjoy_construct(GOLDEN_TRUNC, 1, 0, GapLengthLaw::default()).unwrap();
        assert!(wandering_interval_check(empty.gap_structure().unwrap(), (0, 0)));
    }

    #[test]
    fn perturbed_copy_breaks_equivariance() {
        let f = golden_denjoy(2);
        let g = f.gap_structure().unwrap();
        let mut gaps = g.gaps.clone();
        // lengthen one gap of copy j = 1 only
        let idx = gaps
            .iter()
            .position(|gap| gap.copy_index == 1 && gap.orbit_index == 0)
            .unwrap();
        gaps[idx].length *= 1.5;
        let broken = CircleLift {
            repr: LiftRepr::Denjoy(GapStructure::from_parts(
                g.tau,
                g.m,
                g.k_range,
                g.lambda,
                g.total_gap_mass,
                gaps,
            )),
        };
        let rep = equivariance_check_circle(&broken, 2, 4000, 1e-9);
        assert!(!rep.pass);
    }

    #[test]
    fn conjugation_preserves_rotation_number() {
        let n = 50_000;
        for shift in [0.1, 0.37, 0.81] {
            let f = golden_denjoy(3);
            let base = rotation_number(&f, 0.0, n).estimate;
            let conj = f.conjugate_by_rotation(shift);
            let est = rotation_number(&conj, 0.0, n).estimate;
            assert!(
                (est - base).abs() <= 2.0 / n as f64,
                "shift {shift}: {est} vs {base}"
            );
        }
    }

    #[test]
    fn suspension_of_rigid_quarter_matches_radial_map() {
        let lift = rigid_rotation(0.25);
        let sus = suspend(&lift, 0.5).unwrap();
        let reference = so2_radial(RadialProfile::ExpUnit { c: 0.5 }, TAU * 0.25).unwrap();
        let mut p = Point::new(0.7, 0.2);
        let mut q = p;
        for _ in 0..50 {
            p = sus.eval_raw(p);
            q = reference.eval_raw(q);
            assert!((p - q).norm() <= 1e-9);
        }
        // boundary circle is 4-periodic
        let start = Point::new(1.0, 0.0);
        let mut b = start;
        for _ in 0..4 {
            b = sus.eval_raw(b);
        }
        assert!((b - start).norm() <= 1e-12);
    }

    #[test]
    fn suspension_dynamics_and_equivariance() {
        let lift = golden_denjoy(2);
        let sus = suspend(&lift, 0.5).unwrap();
        assert_eq!(sus.claimed_group(), SymmetryGroup::Cyclic(2));

        let rep = crate::maps::check_equivariance(&sus, &SymmetryGroup::Cyclic(2), 1000, 2.0, 1e-9, 5);
        assert!(rep.pass, "defect {:e}", rep.max_defect);

        let cfg = OmegaConfig::default();
        let inner = classify_omega(&sus, Point::new(0.5, 0.0), &cfg);
        assert!(matches!(inner.kind, OmegaKind::ConvergesToFixed(p) if p.norm() <= 1e-6));
        let outer = classify_omega(&sus, Point::new(1.5, 0.0), &cfg);
        assert_eq!(outer.kind, OmegaKind::Escapes);
    }

    #[test]
    fn suspension_boundary_tracks_the_lift() {
        let lift = golden_denjoy(2);
        let sus = suspend(&lift, 0.5).unwrap();
        let mut x = 0.12345;
        for step in 0..1000 {
            let p = Point::new((TAU * x).cos(), (TAU * x).sin());
            let q = sus.eval_raw(p);
            assert!((q.norm() - 1.0).abs() <= 1e-12, "step {step}: radius drift");
            let y = lift.evaluate(x);
            let angle = q.y.atan2(q.x) / TAU;
            let d = angle - y;
            let dist = (d - d.round()).abs();
            assert!(dist <= 1e-9, "step {step}: angular defect {dist:e}");
            x = y;
        }
    }
}
