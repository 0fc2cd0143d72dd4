//! Domain-shape metrics on planar convex bodies.
//!
//! A body Ω sits in the chart {h = 1} of ℝ³ and carries a positive lift
//! u ↦ (u·h(u), h(u)). For an interior point x and tangent vector v,
//! F^DS(x, v) = β(ṽ)/β(x̃) where β is a supporting functional at the point
//! where the ray from x in direction −v leaves Ω. Points of the plane are
//! stored as complex numbers.

use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Point = Complex64;

fn dot(a: Point, b: Point) -> f64 {
    a.re * b.re + a.im * b.im
}

fn cross(a: Point, b: Point) -> f64 {
    a.re * b.im - a.im * b.re
}

/// Smooth strictly convex boundary given by a level function.
pub trait BoundaryOracle: fmt::Debug + Send + Sync {
    /// Negative inside, zero on the boundary, positive outside.
    fn level(&self, p: Point) -> f64;
    /// Outward normal at a boundary point (any positive length).
    fn outward_normal(&self, p: Point) -> Point;
    /// Boundary parametrization over θ ∈ [0, 2π).
    fn boundary_point(&self, theta: f64) -> Point;
}

/// Axis-aligned ellipse.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Ellipse {
    pub center: Point,
    pub semi_x: f64,
    pub semi_y: f64,
}

impl BoundaryOracle for Ellipse {
    fn level(&self, p: Point) -> f64 {
        let d = p - self.center;
        (d.re / self.semi_x).powi(2) + (d.im / self.semi_y).powi(2) - 1.0
    }

    fn outward_normal(&self, p: Point) -> Point {
        let d = p - self.center;
        Point::new(d.re / self.semi_x.powi(2), d.im / self.semi_y.powi(2))
    }

    fn boundary_point(&self, theta: f64) -> Point {
        self.center + Point::new(self.semi_x * theta.cos(), self.semi_y * theta.sin())
    }
}

/// A planar convex body with a designated interior base point.
#[derive(Clone, Debug)]
pub enum ConvexBody {
    /// Counterclockwise, strictly convex vertex list.
    Polygon { vertices: Vec<Point>, base: Point },
    Smooth {
        oracle: Arc<dyn BoundaryOracle>,
        base: Point,
    },
}

/// JSON form `{"vertices": [[x, y], ...], "base": [x, y]}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PolygonJson {
    pub vertices: Vec<[f64; 2]>,
    pub base: [f64; 2],
}

const BOUNDARY_TOL: f64 = 1e-9;

impl ConvexBody {
    pub fn polygon(vertices: Vec<Point>, base: Point) -> Result<Self> {
        let n = vertices.len();
        if n < 3 {
            return Err(Error::InvalidBody("a polygon needs at least 3 vertices".into()));
        }
        if vertices.iter().any(|v| !(v.re.is_finite() && v.im.is_finite())) {
            return Err(Error::InvalidBody("non-finite vertex".into()));
        }
        for i in 0..n {
            let (a, b, c) = (vertices[i], vertices[(i + 1) % n], vertices[(i + 2) % n]);
            if cross(b - a, c - b) <= 0.0 {
                return Err(Error::InvalidBody(format!(
                    "vertices must be strictly convex and counterclockwise (at vertex {})",
                    (i + 1) % n
                )));
            }
        }
        // Winding once: exterior angles sum to 2π.
        let turning: f64 = (0..n)
            .map(|i| {
                let (a, b, c) = (vertices[i], vertices[(i + 1) % n], vertices[(i + 2) % n]);
                ((c - b) / (b - a)).arg()
            })
            .sum();
        if (turning - 2.0 * std::f64::consts::PI).abs() > 1e-6 {
            return Err(Error::InvalidBody("polygon winds more than once".into()));
        }
        let body = ConvexBody::Polygon { vertices, base };
        if !body.is_interior(base) {
            return Err(Error::NotInterior(base.re, base.im));
        }
        Ok(body)
    }

    pub fn smooth(oracle: Arc<dyn BoundaryOracle>, base: Point) -> Result<Self> {
        if oracle.level(base) >= 0.0 {
            return Err(Error::NotInterior(base.re, base.im));
        }
        Ok(ConvexBody::Smooth { oracle, base })
    }

    pub fn ellipse(center: Point, semi_x: f64, semi_y: f64) -> Result<Self> {
        if !(semi_x > 0.0 && semi_y > 0.0) {
            return Err(Error::InvalidBody("ellipse semi-axes must be positive".into()));
        }
        Self::smooth(
            Arc::new(Ellipse {
                center,
                semi_x,
                semi_y,
            }),
            center,
        )
    }

    pub fn unit_disk() -> Self {
        Self::ellipse(Point::new(0.0, 0.0), 1.0, 1.0).expect("valid disk")
    }

    pub fn from_json(json: &PolygonJson) -> Result<Self> {
        let vertices = json.vertices.iter().map(|v| Point::new(v[0], v[1])).collect();
        Self::polygon(vertices, Point::new(json.base[0], json.base[1]))
    }

    pub fn to_json(&self) -> Option<PolygonJson> {
        match self {
            ConvexBody::Polygon { vertices, base } => Some(PolygonJson {
                vertices: vertices.iter().map(|v| [v.re, v.im]).collect(),
                base: [base.re, base.im],
            }),
            ConvexBody::Smooth { .. } => None,
        }
    }

    pub fn base(&self) -> Point {
        match self {
            ConvexBody::Polygon { base, .. } | ConvexBody::Smooth { base, .. } => *base,
        }
    }

    pub fn is_interior(&self, x: Point) -> bool {
        match self {
            ConvexBody::Polygon { vertices, .. } => {
                let n = vertices.len();
                (0..n).all(|i| {
                    let (a, b) = (vertices[i], vertices[(i + 1) % n]);
                    cross(b - a, x - a) > 1e-12 * (b - a).norm()
                })
            }
            ConvexBody::Smooth { oracle, .. } => oracle.level(x) < 0.0,
        }
    }

    fn require_interior(&self, x: Point) -> Result<()> {
        if self.is_interior(x) {
            Ok(())
        } else {
            Err(Error::NotInterior(x.re, x.im))
        }
    }
}

/// Where the ray from interior `x` in direction `dir` leaves the body.
pub fn boundary_hit(body: &ConvexBody, x: Point, dir: Point) -> Result<Point> {
    if dir.norm() == 0.0 || !dir.norm().is_finite() {
        return Err(Error::ZeroDirection);
    }
    body.require_interior(x)?;
    match body {
        ConvexBody::Polygon { vertices, .. } => {
            let n = vertices.len();
            let mut best = f64::INFINITY;
            for i in 0..n {
                let (a, b) = (vertices[i], vertices[(i + 1) % n]);
                let e = b - a;
                let normal = Point::new(e.im, -e.re);
                let along = dot(normal, dir);
                if along > 0.0 {
                    best = best.min(dot(normal, a - x) / along);
                }
            }
            Ok(x + dir * best)
        }
        ConvexBody::Smooth { oracle, .. } => {
            let mut lo = 0.0;
            let mut hi = 1.0;
            while oracle.level(x + dir * hi) <= 0.0 {
                lo = hi;
                hi *= 2.0;
                if hi > 1e12 {
                    return Err(Error::InvalidBody("ray does not leave the body".into()));
                }
            }
            for _ in 0..200 {
                let mid = 0.5 * (lo + hi);
                if mid <= lo || mid >= hi {
                    break;
                }
                if oracle.level(x + dir * mid) <= 0.0 {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            Ok(x + dir * (0.5 * (lo + hi)))
        }
    }
}

/// β(u₁, u₂, h) = n₁u₁ + n₂u₂ + c·h on ℝ³.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AffineFunctional {
    pub n1: f64,
    pub n2: f64,
    pub c: f64,
}

impl AffineFunctional {
    /// The functional vanishing on the cone over the line through `p` with
    /// outward normal `normal`.
    fn supporting(p: Point, normal: Point) -> Self {
        let n = normal / normal.norm();
        AffineFunctional {
            n1: -n.re,
            n2: -n.im,
            c: dot(n, p),
        }
    }

    pub fn eval(&self, v: [f64; 3]) -> f64 {
        self.n1 * v[0] + self.n2 * v[1] + self.c * v[2]
    }
}

fn polygon_boundary_edges(vertices: &[Point], p: Point) -> Vec<usize> {
    let n = vertices.len();
    let scale = vertices.iter().map(|v| v.norm()).fold(1.0, f64::max);
    (0..n)
        .filter(|&i| {
            let (a, b) = (vertices[i], vertices[(i + 1) % n]);
            let e = b - a;
            let s = dot(p - a, e) / e.norm_sqr();
            let off = cross(e, p - a).abs() / e.norm();
            off <= BOUNDARY_TOL * scale && s >= -1e-12 && s <= 1.0 + 1e-12
        })
        .collect()
}

fn edge_functional(vertices: &[Point], i: usize, p: Point) -> AffineFunctional {
    let e = vertices[(i + 1) % vertices.len()] - vertices[i];
    AffineFunctional::supporting(p, Point::new(e.im, -e.re))
}

/// Supporting functional at boundary point `p`, positive on the interior.
/// At a polygon vertex the functional of the incoming edge is used.
pub fn support_functional(body: &ConvexBody, p: Point) -> Result<AffineFunctional> {
    support_functionals(body, p)?
        .into_iter()
        .next()
        .ok_or(Error::NotOnBoundary(p.re, p.im))
}

/// Every supporting functional at `p` coming from an edge or tangent line
/// (two at a polygon vertex: incoming edge first).
pub fn support_functionals(body: &ConvexBody, p: Point) -> Result<Vec<AffineFunctional>> {
    match body {
        ConvexBody::Polygon { vertices, .. } => {
            let edges = polygon_boundary_edges(vertices, p);
            if edges.is_empty() {
                return Err(Error::NotOnBoundary(p.re, p.im));
            }
            let n = vertices.len();
            // Order: incoming edge (ending at the vertex) before outgoing.
            let mut ordered = edges.clone();
            if edges.len() == 2 && (edges[1] + 1) % n == edges[0] {
                ordered = vec![edges[1], edges[0]];
            }
            Ok(ordered.into_iter().map(|i| edge_functional(vertices, i, p)).collect())
        }
        ConvexBody::Smooth { oracle, .. } => {
            if oracle.level(p).abs() > BOUNDARY_TOL {
                return Err(Error::NotOnBoundary(p.re, p.im));
            }
            Ok(vec![AffineFunctional::supporting(p, oracle.outward_normal(p))])
        }
    }
}

/// The triangle conv(1, ω, ω²) carrying the Ţiţeica affine sphere.
pub fn titeica_triangle() -> ConvexBody {
    ConvexBody::polygon(cube_roots(Point::new(1.0, 0.0)).to_vec(), Point::new(0.0, 0.0))
        .expect("valid triangle")
}

fn cube_roots_of_unity() -> [Point; 3] {
    [0.0, 1.0, 2.0].map(|k| Point::from_polar(1.0, 2.0 * std::f64::consts::PI * k / 3.0))
}

/// The three cube roots of `z`, principal root first, counterclockwise.
pub fn cube_roots(z: Point) -> [Point; 3] {
    let base = if z.norm() == 0.0 { z } else { z.powf(1.0 / 3.0) };
    cube_roots_of_unity().map(|zeta| base * zeta)
}

/// Positive lift u ↦ (u·h(u), h(u)) of a body into ℝ³.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Lift {
    /// h ≡ 1; recovers the Funk metric.
    Flat,
    /// The Ţiţeica affine sphere over conv(1, ω, ω²): h = 1 / (3(b₁b₂b₃)^{1/3})
    /// with b the barycentric coordinates.
    Titeica,
}

fn barycentric(u: Point) -> [f64; 3] {
    cube_roots_of_unity().map(|zeta| (1.0 + 2.0 * dot(zeta, u)) / 3.0)
}

impl Lift {
    pub fn height(&self, u: Point) -> Result<f64> {
        match self {
            Lift::Flat => Ok(1.0),
            Lift::Titeica => {
                let b = barycentric(u);
                if b.iter().any(|&x| x <= 0.0) {
                    return Err(Error::NotInterior(u.re, u.im));
                }
                Ok(1.0 / (3.0 * (b[0] * b[1] * b[2]).cbrt()))
            }
        }
    }

    pub fn gradient(&self, u: Point) -> Result<Point> {
        match self {
            Lift::Flat => Ok(Point::new(0.0, 0.0)),
            Lift::Titeica => {
                let h = self.height(u)?;
                let b = barycentric(u);
                let sum: Point = cube_roots_of_unity()
                    .iter()
                    .zip(b)
                    .map(|(zeta, bi)| zeta * (2.0 / 3.0) / bi)
                    .sum();
                Ok(-sum * (h / 3.0))
            }
        }
    }

    /// x̃ = (x·h(x), h(x)).
    pub fn point(&self, x: Point) -> Result<[f64; 3]> {
        let h = self.height(x)?;
        Ok([x.re * h, x.im * h, h])
    }

    /// ṽ = d/ds (x + s·v)~ at s = 0.
    pub fn tangent(&self, x: Point, v: Point) -> Result<[f64; 3]> {
        let h = self.height(x)?;
        let dh = dot(self.gradient(x)?, v);
        Ok([v.re * h + x.re * dh, v.im * h + x.im * dh, dh])
    }

    /// Samples chords between the given points and checks that the lifted
    /// chord midpoints lie on or above the lifted surface. Returns the minimum
    /// gap M_h − h(m) (≥ 0 for a convex lift).
    pub fn convexity_gap(&self, points: &[Point]) -> Result<f64> {
        let mut min_gap = f64::INFINITY;
        for (i, &x) in points.iter().enumerate() {
            for &y in &points[i + 1..] {
                let (px, py) = (self.point(x)?, self.point(y)?);
                let mid = [0.0, 1.0, 2.0].map(|k| 0.5 * (px[k as usize] + py[k as usize]));
                let m = Point::new(mid[0] / mid[2], mid[1] / mid[2]);
                min_gap = min_gap.min(mid[2] - self.height(m)?);
            }
        }
        Ok(min_gap)
    }
}

/// F^DS(x, v) = β(ṽ)/β(x̃), β supporting where the ray from x along −v exits.
pub fn fds_eval(body: &ConvexBody, lift: Lift, x: Point, v: Point) -> Result<f64> {
    let p = boundary_hit(body, x, -v)?;
    let beta = support_functional(body, p)?;
    Ok(beta.eval(lift.tangent(x, v)?) / beta.eval(lift.point(x)?))
}

/// d^DS(x, y) = log(β(ỹ)/β(x̃)), β supporting where the ray from y through x exits.
pub fn dds_eval(body: &ConvexBody, lift: Lift, x: Point, y: Point) -> Result<f64> {
    dds_with(body, lift, x, y, |body, p| support_functional(body, p))
}

/// d^DS evaluated with every available supporting functional at the exit point.
pub fn dds_all_supports(body: &ConvexBody, lift: Lift, x: Point, y: Point) -> Result<Vec<f64>> {
    body.require_interior(x)?;
    body.require_interior(y)?;
    if x == y {
        return Ok(vec![0.0]);
    }
    let p = boundary_hit(body, x, x - y)?;
    let (px, py) = (lift.point(x)?, lift.point(y)?);
    Ok(support_functionals(body, p)?
        .into_iter()
        .map(|beta| (beta.eval(py) / beta.eval(px)).ln())
        .collect())
}

fn dds_with(
    body: &ConvexBody,
    lift: Lift,
    x: Point,
    y: Point,
    support: impl Fn(&ConvexBody, Point) -> Result<AffineFunctional>,
) -> Result<f64> {
    body.require_interior(x)?;
    body.require_interior(y)?;
    if x == y {
        return Ok(0.0);
    }
    let p = boundary_hit(body, x, x - y)?;
    let beta = support(body, p)?;
    Ok((beta.eval(lift.point(y)?) / beta.eval(lift.point(x)?)).ln())
}

/// Hilbert distance: log of the cross ratio with both exits of the line xy.
pub fn hilbert_distance(body: &ConvexBody, x: Point, y: Point) -> Result<f64> {
    body.require_interior(x)?;
    body.require_interior(y)?;
    if x == y {
        return Ok(0.0);
    }
    let a = boundary_hit(body, x, x - y)?;
    let b = boundary_hit(body, y, y - x)?;
    Ok(((a - y).norm() * (b - x).norm() / ((a - x).norm() * (b - y).norm())).ln())
}

/// A point of the Ţiţeica affine sphere and its chart projection.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TiteicaPoint {
    /// (Re, Im, last) coordinates in ℂ ⊕ ℝ.
    pub point: [f64; 3],
    pub chart: Point,
}

/// Σ_ζ (1/3)·e^{2Re(ζz)}·(ζ, 1) over the cube roots of unity ζ.
pub fn titeica_point(z: Point) -> TiteicaPoint {
    let coeffs = cube_roots_of_unity().map(|zeta| ((2.0 * (zeta * z).re).exp() / 3.0, zeta));
    let horizontal: Point = coeffs.iter().map(|(c, zeta)| zeta * *c).sum();
    let height: f64 = coeffs.iter().map(|(c, _)| c).sum();
    TiteicaPoint {
        point: [horizontal.re, horizontal.im, height],
        chart: horizontal / height,
    }
}

/// Convex polygon containing the origin, used as a unit ball.
#[derive(Clone, Debug, PartialEq)]
pub struct GaugeBall {
    vertices: Vec<Point>,
}

impl GaugeBall {
    /// Convex hull of `points`; the origin must end up strictly inside.
    pub fn hull(points: &[Point]) -> Result<Self> {
        let vertices = convex_hull(points);
        Self::new(vertices)
    }

    /// Counterclockwise strictly convex vertices around the origin.
    pub fn new(vertices: Vec<Point>) -> Result<Self> {
        let body = ConvexBody::polygon(vertices, Point::new(0.0, 0.0))?;
        match body {
            ConvexBody::Polygon { vertices, .. } => Ok(GaugeBall { vertices }),
            ConvexBody::Smooth { .. } => unreachable!("constructed as polygon"),
        }
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    /// Edges as (outward unit normal, support value h > 0).
    fn half_planes(&self) -> Vec<(Point, f64)> {
        let n = self.vertices.len();
        (0..n)
            .map(|i| {
                let (a, b) = (self.vertices[i], self.vertices[(i + 1) % n]);
                let e = b - a;
                let normal = Point::new(e.im, -e.re) / e.norm();
                (normal, dot(normal, a))
            })
            .collect()
    }

    /// Minkowski functional inf{λ > 0 : v ∈ λ·ball}.
    pub fn gauge(&self, v: Point) -> f64 {
        self.half_planes()
            .into_iter()
            .map(|(n, h)| dot(n, v) / h)
            .fold(0.0, f64::max)
    }

    pub fn to_json(&self) -> PolygonJson {
        PolygonJson {
            vertices: self.vertices.iter().map(|v| [v.re, v.im]).collect(),
            base: [0.0, 0.0],
        }
    }

    /// Largest distance from a vertex of either ball to the nearest vertex of the other.
    pub fn vertex_distance(&self, other: &GaugeBall) -> f64 {
        let one_way = |a: &[Point], b: &[Point]| {
            a.iter()
                .map(|p| b.iter().map(|q| (p - q).norm()).fold(f64::INFINITY, f64::min))
                .fold(0.0, f64::max)
        };
        one_way(&self.vertices, &other.vertices).max(one_way(&other.vertices, &self.vertices))
    }
}

/// Andrew's monotone chain; counterclockwise, collinear points dropped.
pub fn convex_hull(points: &[Point]) -> Vec<Point> {
    let mut pts: Vec<Point> = points.to_vec();
    pts.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    pts.dedup();
    if pts.len() < 3 {
        return pts;
    }
    let mut hull: Vec<Point> = Vec::with_capacity(2 * pts.len());
    for pass in 0..2 {
        let start = hull.len();
        let iter: Box<dyn Iterator<Item = &Point>> = if pass == 0 {
            Box::new(pts.iter())
        } else {
            Box::new(pts.iter().rev())
        };
        for &p in iter {
            while hull.len() >= start + 2 {
                let (a, b) = (hull[hull.len() - 2], hull[hull.len() - 1]);
                if cross(b - a, p - b) <= 0.0 {
                    hull.pop();
                } else {
                    break;
                }
            }
            hull.push(p);
        }
        hull.pop();
    }
    hull
}

/// Unit ball of the truncated metric F^{DS,d} at the base point of the
/// Ţiţeica surface: −Conv of chart images of the disk |z| ≤ d.
pub fn truncated_ball(d: f64, samples: usize) -> Result<GaugeBall> {
    if !(d > 0.0 && d.is_finite()) {
        return Err(Error::InvalidParameter(format!("radius must be positive, got {d}")));
    }
    if samples < 16 {
        return Err(Error::InvalidParameter(format!(
            "at least 16 samples are required, got {samples}"
        )));
    }
    const RINGS: usize = 8;
    let mut pts = Vec::with_capacity(RINGS * samples);
    for ring in 1..=RINGS {
        let r = d * ring as f64 / RINGS as f64;
        for k in 0..samples {
            let theta = 2.0 * std::f64::consts::PI * k as f64 / samples as f64;
            pts.push(-titeica_point(Point::from_polar(r, theta)).chart);
        }
    }
    GaugeBall::hull(&pts)
}

/// Symmetric positive-definite form g(u, v) = uᵀ G v on ℝ².
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BilinearForm {
    m: [[f64; 2]; 2],
}

impl BilinearForm {
    pub fn new(m: [[f64; 2]; 2]) -> Result<Self> {
        if m[0][1] != m[1][0] {
            return Err(Error::InvalidForm("matrix is not symmetric".into()));
        }
        let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
        if !(m[0][0] > 0.0 && det > 0.0) {
            return Err(Error::InvalidForm("matrix is not positive definite".into()));
        }
        Ok(BilinearForm { m })
    }

    /// g(u, v) = 2Re(u·v̄), the form of the flat metric 2|dz|².
    pub fn flat() -> Self {
        Self::new([[2.0, 0.0], [0.0, 2.0]]).expect("positive definite")
    }

    pub fn eval(&self, u: Point, v: Point) -> f64 {
        let gv = Point::new(
            self.m[0][0] * v.re + self.m[0][1] * v.im,
            self.m[1][0] * v.re + self.m[1][1] * v.im,
        );
        dot(u, gv)
    }

    fn solve(&self, rhs: Point) -> Point {
        let m = &self.m;
        let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
        Point::new(
            (m[1][1] * rhs.re - m[0][1] * rhs.im) / det,
            (m[0][0] * rhs.im - m[1][0] * rhs.re) / det,
        )
    }
}

/// {u : g(u, v) ≤ 1 for all v in the ball}; each primal edge {n·v = h}
/// yields the dual vertex G⁻¹n/h.
pub fn polar_dual(ball: &GaugeBall, form: &BilinearForm) -> Result<GaugeBall> {
    let vertices = ball
        .half_planes()
        .into_iter()
        .map(|(n, h)| form.solve(n / h))
        .collect();
    GaugeBall::new(vertices)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(x: f64, y: f64) -> Point {
        Point::new(x, y)
    }

    fn square() -> ConvexBody {
        ConvexBody::polygon(vec![p(-1.0, -1.0), p(1.0, -1.0), p(1.0, 1.0), p(-1.0, 1.0)], p(0.0, 0.0))
            .unwrap()
    }

    fn close(a: Point, b: Point, tol: f64) -> bool {
        (a - b).norm() < tol
    }

    #[test]
    fn body_validation() {
        assert!(ConvexBody::polygon(vec![p(0.0, 0.0), p(1.0, 0.0)], p(0.5, 0.0)).is_err());
        // clockwise
        assert!(ConvexBody::polygon(vec![p(0.0, 0.0), p(0.0, 1.0), p(1.0, 0.0)], p(0.2, 0.2)).is_err());
        assert!(ConvexBody::polygon(vec![p(0.0, 0.0), p(1.0, 0.0), p(0.0, 1.0)], p(2.0, 2.0)).is_err());
        assert!(ConvexBody::ellipse(p(0.0, 0.0), -1.0, 1.0).is_err());
    }

    #[test]
    fn boundary_hit_examples() {
        let disk = ConvexBody::unit_disk();
        assert!(close(boundary_hit(&disk, p(0.0, 0.0), p(1.0, 0.0)).unwrap(), p(1.0, 0.0), 1e-12));
        assert!(close(boundary_hit(&square(), p(0.0, 0.0), p(1.0, 1.0)).unwrap(), p(1.0, 1.0), 1e-12));
        assert!(close(boundary_hit(&disk, p(0.5, 0.0), p(-1.0, 0.0)).unwrap(), p(-1.0, 0.0), 1e-12));
        assert!(matches!(boundary_hit(&disk, p(0.0, 0.0), p(0.0, 0.0)), Err(Error::ZeroDirection)));
        assert!(matches!(boundary_hit(&disk, p(2.0, 0.0), p(1.0, 0.0)), Err(Error::NotInterior(..))));
    }

    #[test]
    fn support_functional_examples() {
        let beta = support_functional(&ConvexBody::unit_disk(), p(-1.0, 0.0)).unwrap();
        assert!((beta.n1 - 1.0).abs() < 1e-12 && beta.n2.abs() < 1e-12 && (beta.c - 1.0).abs() < 1e-12);
        let beta = support_functional(&square(), p(1.0, 0.0)).unwrap();
        assert_eq!((beta.n1, beta.n2, beta.c), (-1.0, -0.0, 1.0));
        assert!(support_functional(&square(), p(0.5, 0.0)).is_err());
        assert_eq!(support_functionals(&square(), p(1.0, 1.0)).unwrap().len(), 2);
    }

    #[test]
    fn fds_examples() {
        let disk = ConvexBody::unit_disk();
        for theta in [0.0, 1.0, 2.5] {
            let v = Point::from_polar(1.0, theta);
            assert!((fds_eval(&disk, Lift::Flat, p(0.0, 0.0), v).unwrap() - 1.0).abs() < 1e-12);
        }
        assert!((fds_eval(&square(), Lift::Flat, p(0.0, 0.0), p(1.0, 0.0)).unwrap() - 1.0).abs() < 1e-12);
        let x = p(0.3, -0.2);
        let v = p(0.4, 0.7);
        let a = fds_eval(&square(), Lift::Flat, x, v).unwrap();
        let b = fds_eval(&square(), Lift::Flat, x, v * 2.0).unwrap();
        assert!((b - 2.0 * a).abs() < 1e-12);
    }

    #[test]
    fn dds_and_hilbert_examples() {
        let disk = ConvexBody::unit_disk();
        let o = p(0.0, 0.0);
        let y = p(0.5, 0.0);
        assert_eq!(dds_eval(&disk, Lift::Flat, y, y).unwrap(), 0.0);
        assert!((dds_eval(&disk, Lift::Flat, o, y).unwrap() - 1.5f64.ln()).abs() < 1e-12);
        assert!((hilbert_distance(&disk, o, y).unwrap() - 3f64.ln()).abs() < 1e-12);
        let (a, b) = (hilbert_distance(&disk, o, y).unwrap(), hilbert_distance(&disk, y, o).unwrap());
        assert!((a - b).abs() < 1e-12);
        let z = p(-0.6, 0.0);
        let sum = dds_eval(&disk, Lift::Flat, z, o).unwrap() + dds_eval(&disk, Lift::Flat, o, y).unwrap();
        assert!((sum - dds_eval(&disk, Lift::Flat, z, y).unwrap()).abs() < 1e-12);
    }

    #[test]
    fn titeica_examples() {
        let t0 = titeica_point(p(0.0, 0.0));
        assert!(t0.point[0].abs() < 1e-15 && t0.point[1].abs() < 1e-15 && (t0.point[2] - 1.0).abs() < 1e-15);
        assert!(t0.chart.norm() < 1e-15);
        assert!(close(titeica_point(p(20.0, 0.0)).chart, p(1.0, 0.0), 1e-12));
        let omega = Point::from_polar(1.0, 2.0 * std::f64::consts::PI / 3.0);
        for z in [p(0.3, 0.1), p(-1.0, 2.0), p(2.0, 0.5)] {
            let a = titeica_point(z).chart;
            let b = titeica_point(omega * z).chart;
            assert!(close(b, omega.conj() * a, 1e-12));
        }
    }

    #[test]
    fn titeica_lift_matches_sphere() {
        for z in [p(0.3, 0.1), p(-1.0, 0.7)] {
            let tp = titeica_point(z);
            let h = Lift::Titeica.height(tp.chart).unwrap();
            assert!((h - tp.point[2]).abs() < 1e-12 * tp.point[2]);
        }
        let pts: Vec<Point> = (0..12).map(|k| Point::from_polar(0.4, k as f64 * 0.5)).collect();
        assert!(Lift::Titeica.convexity_gap(&pts).unwrap() > 0.0);
        assert_eq!(Lift::Flat.convexity_gap(&pts).unwrap(), 0.0);
    }

    #[test]
    fn titeica_gradient_matches_finite_difference() {
        let u = p(0.2, -0.1);
        let g = Lift::Titeica.gradient(u).unwrap();
        let eps = 1e-6;
        let fx = (Lift::Titeica.height(u + p(eps, 0.0)).unwrap() - Lift::Titeica.height(u - p(eps, 0.0)).unwrap())
            / (2.0 * eps);
        let fy = (Lift::Titeica.height(u + p(0.0, eps)).unwrap() - Lift::Titeica.height(u - p(0.0, eps)).unwrap())
            / (2.0 * eps);
        assert!((g.re - fx).abs() < 1e-8 && (g.im - fy).abs() < 1e-8);
    }

    #[test]
    fn gauge_of_square() {
        let ball = GaugeBall::new(vec![p(-1.0, -1.0), p(1.0, -1.0), p(1.0, 1.0), p(-1.0, 1.0)]).unwrap();
        assert!((ball.gauge(p(2.0, 0.5)) - 2.0).abs() < 1e-15);
        assert_eq!(ball.gauge(p(0.0, 0.0)), 0.0);
    }

    #[test]
    fn hull_drops_interior_and_collinear() {
        let pts = [p(0.0, 0.0), p(1.0, 0.0), p(2.0, 0.0), p(2.0, 2.0), p(0.0, 2.0), p(1.0, 1.0)];
        assert_eq!(convex_hull(&pts), vec![p(0.0, 0.0), p(2.0, 0.0), p(2.0, 2.0), p(0.0, 2.0)]);
    }

    #[test]
    fn forms() {
        assert!(BilinearForm::new([[1.0, 0.5], [0.4, 1.0]]).is_err());
        assert!(BilinearForm::new([[1.0, 2.0], [2.0, 1.0]]).is_err());
        let g = BilinearForm::flat();
        assert_eq!(g.eval(p(1.0, 2.0), p(3.0, -1.0)), 2.0);
    }

    #[test]
    fn dual_of_square_is_diamond() {
        let ball = GaugeBall::new(vec![p(-1.0, -1.0), p(1.0, -1.0), p(1.0, 1.0), p(-1.0, 1.0)]).unwrap();
        let id = BilinearForm::new([[1.0, 0.0], [0.0, 1.0]]).unwrap();
        let dual = polar_dual(&ball, &id).unwrap();
        let want = GaugeBall::new(vec![p(0.0, -1.0), p(1.0, 0.0), p(0.0, 1.0), p(-1.0, 0.0)]).unwrap();
        assert!(dual.vertex_distance(&want) < 1e-15);
    }
}
