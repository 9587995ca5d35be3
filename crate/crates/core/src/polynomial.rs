//! Polynomial planar maps with exact coefficient-level operations.
//!
//! Coefficients are indexed by monomial exponents `(i, j)` for `x^i y^j`
//! with total degree at most [`MAX_DEGREE`]; within that bound, composing
//! with an orthogonal matrix and comparing coefficients stays reliable in
//! double precision, so equivariance can be decided exactly instead of by
//! sampling.

use crate::maps::{MapError, PlanarMap};
use crate::plane::{Mat2, Point};
use crate::symmetry::SymmetryGroup;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// Total degree bound for exact coefficient arithmetic.
pub const MAX_DEGREE: u32 = 12;

/// Coefficient magnitudes below this count as zero after expansion.
pub const COEFF_TOL: f64 = 1e-12;

/// A real polynomial in two variables, sparse representation.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct Poly2 {
    /// Monomial coefficients keyed by `(i, j)`; zeros are not stored.
    coeffs: BTreeMap<(u32, u32), f64>,
}

impl Poly2 {
    pub fn zero() -> Self {
        Poly2::default()
    }

    pub fn from_terms(terms: &[(u32, u32, f64)]) -> Self {
        let mut p = Poly2::zero();
        for &(i, j, c) in terms {
            p.add_term(i, j, c);
        }
        p
    }

    pub fn add_term(&mut self, i: u32, j: u32, c: f64) {
        if c == 0.0 {
            return;
        }
        let e = self.coeffs.entry((i, j)).or_insert(0.0);
        *e += c;
        if *e == 0.0 {
            self.coeffs.remove(&(i, j));
        }
    }

    pub fn coeff(&self, i: u32, j: u32) -> f64 {
        self.coeffs.get(&(i, j)).copied().unwrap_or(0.0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, u32, f64)> + '_ {
        self.coeffs.iter().map(|(&(i, j), &c)| (i, j, c))
    }

    pub fn total_degree(&self) -> u32 {
        self.coeffs.keys().map(|&(i, j)| i + j).max().unwrap_or(0)
    }

    pub fn max_abs_coeff(&self) -> f64 {
        self.coeffs.values().fold(0.0, |m, c| m.max(c.abs()))
    }

    /// Evaluate by Horner's scheme in `x`, with the `x^i` coefficient
    /// polynomials themselves evaluated by Horner in `y`.
    pub fn eval(&self, x: f64, y: f64) -> f64 {
        let deg_x = self.coeffs.keys().map(|&(i, _)| i).max().unwrap_or(0);
        let mut acc = 0.0;
        for i in (0..=deg_x).rev() {
            let deg_y = self
                .coeffs
                .keys()
                .filter(|&&(ii, _)| ii == i)
                .map(|&(_, j)| j)
                .max()
                .unwrap_or(0);
            let mut row = 0.0;
            for j in (0..=deg_y).rev() {
                row = row * y + self.coeff(i, j);
            }
            acc = acc * x + row;
        }
        acc
    }

    /// Partial derivative with respect to `x`.
    pub fn dx(&self) -> Poly2 {
        let mut p = Poly2::zero();
        for (i, j, c) in self.terms() {
            if i > 0 {
                p.add_term(i - 1, j, c * f64::from(i));
            }
        }
        p
    }

    /// Partial derivative with respect to `y`.
    pub fn dy(&self) -> Poly2 {
        let mut p = Poly2::zero();
        for (i, j, c) in self.terms() {
            if j > 0 {
                p.add_term(i, j - 1, c * f64::from(j));
            }
        }
        p
    }

    pub fn scale(&self, s: f64) -> Poly2 {
        let mut p = Poly2::zero();
        for (i, j, c) in self.terms() {
            p.add_term(i, j, s * c);
        }
        p
    }

    pub fn add(&self, other: &Poly2) -> Poly2 {
        let mut p = self.clone();
        for (i, j, c) in other.terms() {
            p.add_term(i, j, c);
        }
        p
    }

    /// Coefficients of `p(a x + b y, c x + d y)` by binomial expansion.
    pub fn compose_linear(&self, m: &Mat2) -> Poly2 {
        let (a, b, c, d) = (m[(0, 0)], m[(0, 1)], m[(1, 0)], m[(1, 1)]);
        let mut out = Poly2::zero();
        for (i, j, coef) in self.terms() {
            // (a x + b y)^i
            let u = binomial_expand(a, b, i);
            // (c x + d y)^j
            let v = binomial_expand(c, d, j);
            for (pu, cu) in u.iter().enumerate() {
                for (pv, cv) in v.iter().enumerate() {
                    // x^(pu+pv) y^((i-pu)+(j-pv))
                    let xi = pu as u32 + pv as u32;
                    let yj = (i - pu as u32) + (j - pv as u32);
                    out.add_term(xi, yj, coef * cu * cv);
                }
            }
        }
        out
    }
}

/// Coefficients of `(a x + b y)^n` in `x^k y^(n-k)` order, index `k`.
fn binomial_expand(a: f64, b: f64, n: u32) -> Vec<f64> {
    let n = n as usize;
    let mut out = vec![0.0; n + 1];
    let mut binom = 1.0_f64;
    for (k, slot) in out.iter_mut().enumerate() {
        *slot = binom * a.powi(k as i32) * b.powi((n - k) as i32);
        binom = binom * (n - k) as f64 / (k + 1) as f64;
    }
    out
}

/// A planar map whose both components are polynomials.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PolynomialMap {
    pub px: Poly2,
    pub py: Poly2,
}

impl PolynomialMap {
    pub fn new(px: Poly2, py: Poly2) -> Result<Self, MapError> {
        let d = px.total_degree().max(py.total_degree());
        if d > MAX_DEGREE {
            return Err(MapError::InvalidParam(format!(
                "polynomial degree {d} exceeds the exact-arithmetic bound {MAX_DEGREE}"
            )));
        }
        Ok(PolynomialMap { px, py })
    }

    pub fn from_terms(x: &[(u32, u32, f64)], y: &[(u32, u32, f64)]) -> Result<Self, MapError> {
        PolynomialMap::new(Poly2::from_terms(x), Poly2::from_terms(y))
    }

    pub fn eval(&self, p: Point) -> Point {
        Point::new(self.px.eval(p.x, p.y), self.py.eval(p.x, p.y))
    }

    pub fn jacobian(&self, p: Point) -> Mat2 {
        Mat2::new(
            self.px.dx().eval(p.x, p.y),
            self.px.dy().eval(p.x, p.y),
            self.py.dx().eval(p.x, p.y),
            self.py.dy().eval(p.x, p.y),
        )
    }

    /// Wrap as a [`PlanarMap`] with the exact polynomial Jacobian.
    pub fn to_planar_map(&self, claimed_group: SymmetryGroup) -> PlanarMap {
        let me = self.clone();
        let mj = self.clone();
        PlanarMap::new("polynomial", claimed_group, move |p| me.eval(p))
            .with_jacobian(move |p| mj.jacobian(p))
    }
}

/// Exact equivariance test for finite groups: all coefficients of
/// `f(gamma x) - gamma f(x)` vanish (to [`COEFF_TOL`]) for each generator.
/// Continuous groups are rejected; use the sampled check for those.
pub fn polynomial_equivariance_exact(
    pmap: &PolynomialMap,
    group: &SymmetryGroup,
) -> Result<bool, MapError> {
    if group.order().is_none() {
        return Err(MapError::UnsupportedGroup(*group));
    }
    for gen in group.generators() {
        let m = gen.matrix();
        // components of f(gamma x)
        let fx_g = pmap.px.compose_linear(&m);
        let fy_g = pmap.py.compose_linear(&m);
        // components of gamma f(x)
        let gx = pmap.px.scale(m[(0, 0)]).add(&pmap.py.scale(m[(0, 1)]));
        let gy = pmap.px.scale(m[(1, 0)]).add(&pmap.py.scale(m[(1, 1)]));
        let dx = fx_g.add(&gx.scale(-1.0));
        let dy = fy_g.add(&gy.scale(-1.0));
        if dx.max_abs_coeff() > COEFF_TOL || dy.max_abs_coeff() > COEFF_TOL {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Does the map have the kappa normal form `(d1 x + y^2 p(y^2), d2 y)`:
/// diagonal linear part, first component's nonlinearity a polynomial in
/// `y^2` times `y^2`, second component linear in `y` alone?
pub fn normal_form_check_kappa(pmap: &PolynomialMap) -> bool {
    for (i, j, c) in pmap.px.terms() {
        if c.abs() <= COEFF_TOL {
            continue;
        }
        let linear_diag = i == 1 && j == 0;
        let even_pure_y = i == 0 && j >= 2 && j % 2 == 0;
        if !(linear_diag || even_pure_y) {
            return false;
        }
    }
    for (i, j, c) in pmap.py.terms() {
        if c.abs() <= COEFF_TOL {
            continue;
        }
        if !(i == 0 && j == 1) {
            return false;
        }
    }
    true
}
