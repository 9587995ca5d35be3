//! Shared planar primitives: points, rectangles, 2x2 spectra and a few
//! numeric helpers used across the crate.

use nalgebra::{Matrix2, Vector2};
use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};

/// A point (or vector) of the plane.
pub type Point = Vector2<f64>;

/// A real 2x2 matrix.
pub type Mat2 = Matrix2<f64>;

/// Axis-aligned rectangle `[x0, x1] x [y0, y1]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Rect {
    pub x0: f64,
    pub x1: f64,
    pub y0: f64,
    pub y1: f64,
}

impl Rect {
    pub fn new(x0: f64, x1: f64, y0: f64, y1: f64) -> Self {
        Rect { x0, x1, y0, y1 }
    }

    /// Square `[-h, h] x [-h, h]`.
    pub fn centered(h: f64) -> Self {
        Rect::new(-h, h, -h, h)
    }

    pub fn width(&self) -> f64 {
        self.x1 - self.x0
    }

    pub fn height(&self) -> f64 {
        self.y1 - self.y0
    }

    /// Center of cell `(i, j)` of an `nx x ny` grid over the rectangle.
    ///
    /// Written around the rectangle midpoint so that on symmetric bounds
    /// the centers of cells `(i, j)` and `(nx-1-i, ny-1-j)` are exact
    /// floating-point negatives of each other.
    pub fn cell_center(&self, i: usize, j: usize, nx: usize, ny: usize) -> Point {
        let hx = self.width() / (2.0 * nx as f64);
        let hy = self.height() / (2.0 * ny as f64);
        let mx = 0.5 * (self.x0 + self.x1);
        let my = 0.5 * (self.y0 + self.y1);
        Point::new(
            mx + (2 * i as i64 + 1 - nx as i64) as f64 * hx,
            my + (2 * j as i64 + 1 - ny as i64) as f64 * hy,
        )
    }

    /// Uniform grid of size `nx x ny` over the rectangle (cell corners,
    /// endpoints included). Used for Newton seeding.
    pub fn grid(&self, nx: usize, ny: usize) -> Vec<Point> {
        let mut pts = Vec::with_capacity(nx * ny);
        for j in 0..ny {
            for i in 0..nx {
                let tx = if nx > 1 { i as f64 / (nx - 1) as f64 } else { 0.5 };
                let ty = if ny > 1 { j as f64 / (ny - 1) as f64 } else { 0.5 };
                pts.push(Point::new(
                    self.x0 + tx * self.width(),
                    self.y0 + ty * self.height(),
                ));
            }
        }
        pts
    }
}

/// Eigenvalues of a real 2x2 matrix, closed form, ordered by modulus
/// (smallest first).
pub fn eigenvalues_2x2(m: &Mat2) -> [Complex64; 2] {
    let tr = m[(0, 0)] + m[(1, 1)];
    let det = m[(0, 0)] * m[(1, 1)] - m[(0, 1)] * m[(1, 0)];
    let half = tr / 2.0;
    let disc = half * half - det;
    let mut eigs = if disc >= 0.0 {
        let s = disc.sqrt();
        [
            Complex64::new(half - s, 0.0),
            Complex64::new(half + s, 0.0),
        ]
    } else {
        let s = (-disc).sqrt();
        [Complex64::new(half, -s), Complex64::new(half, s)]
    };
    if eigs[0].norm() > eigs[1].norm() {
        eigs.swap(0, 1);
    }
    eigs
}

/// Uniform sample from the closed disk of the given radius.
pub fn sample_disk<R: Rng + ?Sized>(rng: &mut R, radius: f64) -> Point {
    let u: f64 = rng.gen();
    let v: f64 = rng.gen();
    let r = radius * u.sqrt();
    let a = std::f64::consts::TAU * v;
    Point::new(r * a.cos(), r * a.sin())
}

/// Solve `f(x) = target` for a strictly monotone `f` by bracketed bisection
/// refined with Newton steps. The bracket is grown geometrically from
/// `[-1, 1]` until it straddles the target. Used for the closed-form-free
/// radial inverses of the map catalog.
pub fn monotone_solve<F: Fn(f64) -> f64>(f: F, target: f64, increasing: bool) -> f64 {
    let g = |x: f64| if increasing { f(x) - target } else { target - f(x) };
    let (mut lo, mut hi) = (-1.0_f64, 1.0_f64);
    let mut guard = 0;
    while g(lo) > 0.0 {
        lo *= 2.0;
        guard += 1;
        if guard > 2100 {
            return f64::NAN;
        }
    }
    while g(hi) < 0.0 {
        hi *= 2.0;
        guard += 1;
        if guard > 2100 {
            return f64::NAN;
        }
    }
    let mut mid = 0.5 * (lo + hi);
    for _ in 0..200 {
        let gm = g(mid);
        if gm == 0.0 {
            return mid;
        }
        if gm > 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
        let next = 0.5 * (lo + hi);
        if (hi - lo).abs() <= f64::EPSILON * (1.0 + mid.abs()) {
            return next;
        }
        mid = next;
    }
    mid
}

/// `x mod 1` in `[0, 1)`.
pub fn frac(x: f64) -> f64 {
    let f = x - x.floor();
    if f >= 1.0 {
        0.0
    } else {
        f
    }
}
