//! Metric realization on the unit sphere: edge lengths from angles, the
//! quadrilateral closure solver, coexistence identities, and residual checks.
//!
//! All lengths are geodesic arcs in radians on the unit sphere.  The m-gon
//! with corner angle α decomposes into m isoceles triangles around its
//! center, giving a closed form for its edge x.  The quadrilateral with
//! boundary x,y,x,y and angles γ,β,γ,β is rotation-symmetric; cutting along
//! the γ–γ diagonal yields two rotation-congruent triangles with sides x, y
//! and included angle β, and y is pinned by requiring the two partial angles
//! at the γ corners to reassemble to γ.

use std::f64::consts::PI;

use serde::Serialize;
use thiserror::Error;

use crate::angles::{Angle, AngleAssignment};
use crate::tiling::{CompleteTiling, TileKind};

#[derive(Clone, Debug, Error, PartialEq)]
pub enum GeometryError {
    #[error("polygon not realizable at alpha = {0} rad")]
    PolygonNotRealizable(f64),
    #[error("quadrilateral not realizable")]
    QuadNotRealizable,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("assignment leaves free parameters unpinned")]
    Unpinned,
}

/// Edge length of the regular spherical m-gon with corner angle `alpha`.
///
/// Decomposing into m isoceles triangles around the center gives
/// `cos x = (cos(2π/m) + cos²(α/2)) / sin²(α/2)`; for m = 3 this reduces to
/// `cos x = cos α / (1 − cos α)`.
pub fn regular_polygon_edge(m: u32, alpha: f64) -> Result<f64, GeometryError> {
    let lower = (1.0 - 2.0 / m as f64) * PI;
    if !(alpha > lower && alpha < PI) {
        return Err(GeometryError::PolygonNotRealizable(alpha));
    }
    let half = alpha / 2.0;
    let c = ((2.0 * PI / m as f64).cos() + half.cos().powi(2)) / half.sin().powi(2);
    if !(-1.0 < c && c < 1.0) {
        return Err(GeometryError::PolygonNotRealizable(alpha));
    }
    Ok(c.acos())
}

/// The two partial angles q + r at a γ corner of the quadrilateral, as a
/// function of the trial edge y: the triangle with sides x, y and included
/// angle β has its remaining angles q (facing y) and r (facing x), and the
/// rotated copy re-assembles q + r at each γ corner.
fn reassembled_gamma(beta: f64, x: f64, y: f64) -> f64 {
    let cd = x.cos() * y.cos() + x.sin() * y.sin() * beta.cos();
    let d = cd.clamp(-1.0, 1.0).acos();
    let (sd, sx, sy) = (d.sin(), x.sin(), y.sin());
    let cq = ((y.cos() - x.cos() * cd) / (sx * sd)).clamp(-1.0, 1.0);
    let cr = ((x.cos() - y.cos() * cd) / (sy * sd)).clamp(-1.0, 1.0);
    cq.acos() + cr.acos()
}

/// Analytic derivative of [`reassembled_gamma`] in y, used by the Newton
/// polish (and cross-checked against a finite difference in tests).
fn reassembled_gamma_dy(beta: f64, x: f64, y: f64) -> f64 {
    let (cx, sx) = (x.cos(), x.sin());
    let (cy, sy) = (y.cos(), y.sin());
    let cb = beta.cos();
    let cd = cx * cy + sx * sy * cb;
    let d = cd.clamp(-1.0, 1.0).acos();
    let sd = d.sin();
    // d'(y) from differentiating cos d = cos x cos y + sin x sin y cos β.
    let dp = (cx * sy - sx * cy * cb) / sd;
    let n = cy - cx * cd;
    let dq_den = sx * sd;
    let np = -sy + cx * sd * dp;
    let dq_denp = sx * cd * dp;
    let cq = (n / dq_den).clamp(-1.0, 1.0);
    let sq = (1.0 - cq * cq).max(f64::EPSILON).sqrt();
    let dq = -(np * dq_den - n * dq_denp) / (dq_den * dq_den * sq);
    let m_ = cx - cy * cd;
    let dr_den = sy * sd;
    let mp = sy * cd + cy * sd * dp;
    let dr_denp = cy * sd + sy * cd * dp;
    let cr = (m_ / dr_den).clamp(-1.0, 1.0);
    let sr = (1.0 - cr * cr).max(f64::EPSILON).sqrt();
    let dr = -(mp * dr_den - m_ * dr_denp) / (dr_den * dr_den * sr);
    dq + dr
}

const QUAD_TOL: f64 = 1e-12;

/// Solve for the edge y of the quadrilateral with boundary x,y,x,y and
/// angles γ,β,γ,β.  Bisection on bracketed sign changes of the closure
/// defect, then Newton polish to 1e−12.
pub fn quad_solve_y(beta: f64, gamma: f64, x: f64) -> Result<f64, GeometryError> {
    if beta <= gamma {
        return Err(GeometryError::Precondition(format!(
            "beta = {beta} must exceed gamma = {gamma}"
        )));
    }
    if beta + gamma <= PI {
        return Err(GeometryError::Precondition(format!(
            "beta + gamma = {} must exceed pi",
            beta + gamma
        )));
    }
    if !(0.0 < x && x < PI) {
        return Err(GeometryError::Precondition(format!("x = {x} outside (0, pi)")));
    }
    let f = |y: f64| reassembled_gamma(beta, x, y) - gamma;
    let eps = 1e-9;
    let lo = (x - PI / 2.0).max(0.0) + eps;
    let hi = PI - eps;
    let step = 1e-3;
    let mut prev_y = lo;
    let mut prev_f = f(lo);
    let mut y = lo + step;
    while y < hi {
        let fy = f(y);
        if prev_f == 0.0 {
            return Ok(polish(prev_y, beta, gamma, x));
        }
        if prev_f * fy < 0.0 {
            // Bisect, then polish with Newton.
            let (mut a, mut b) = (prev_y, y);
            let mut fa = prev_f;
            for _ in 0..200 {
                let mid = 0.5 * (a + b);
                let fm = f(mid);
                if fm == 0.0 || (b - a) < QUAD_TOL {
                    return Ok(polish(mid, beta, gamma, x));
                }
                if fa * fm < 0.0 {
                    b = mid;
                } else {
                    a = mid;
                    fa = fm;
                }
            }
            return Ok(polish(0.5 * (a + b), beta, gamma, x));
        }
        prev_y = y;
        prev_f = fy;
        y += step;
    }
    Err(GeometryError::QuadNotRealizable)
}

fn polish(mut y: f64, beta: f64, gamma: f64, x: f64) -> f64 {
    for _ in 0..50 {
        let fy = reassembled_gamma(beta, x, y) - gamma;
        if fy.abs() < QUAD_TOL {
            break;
        }
        let dy = reassembled_gamma_dy(beta, x, y);
        if dy.abs() < 1e-14 {
            break;
        }
        let next = y - fy / dy;
        if next.is_finite() && next > 0.0 && next < PI {
            y = next;
        } else {
            break;
        }
    }
    y
}

/// Left-hand side minus right-hand side of the x = y coexistence identity
/// `cot²(α/2) + cos(2π/3)/sin²(α/2) = cot(β/2)·cot(γ/2)`.
pub fn triangle_quad_identity(alpha: f64, beta: f64, gamma: f64) -> f64 {
    let h = alpha / 2.0;
    let lhs = (h.cos() / h.sin()).powi(2) + (2.0 * PI / 3.0).cos() / h.sin().powi(2);
    let cot = |t: f64| (t / 2.0).cos() / (t / 2.0).sin();
    lhs - cot(beta) * cot(gamma)
}

/// The quartic case `5t⁴ − 10t² + 1 = 0` with `t = tan(α/4)`.
#[derive(Clone, Debug, Serialize)]
pub struct QuarticCase {
    /// All four real roots, ascending.
    pub roots: [f64; 4],
    /// Max |5t⁴ − 10t² + 1| over the returned roots.
    pub residual: f64,
    /// The admissible α (with β = π − α/2, γ = π − 3α/2 and β > α > 0,
    /// γ > 0).
    pub alpha: f64,
}

pub fn solve_quartic_case() -> QuarticCase {
    // t² = 1 ± 2/√5 by the quadratic formula.
    let s5 = 5.0f64.sqrt();
    let t_small = (1.0 - 2.0 / s5).sqrt();
    let t_large = (1.0 + 2.0 / s5).sqrt();
    let roots = [-t_large, -t_small, t_small, t_large];
    let poly = |t: f64| 5.0 * t.powi(4) - 10.0 * t * t + 1.0;
    let residual = roots.iter().map(|&t| poly(t).abs()).fold(0.0, f64::max);
    let alpha = roots
        .into_iter()
        .filter(|&t| t > 0.0)
        .map(|t| 4.0 * t.atan())
        .find(|&a| {
            let beta = PI - a / 2.0;
            let gamma = PI - 1.5 * a;
            beta > a && a > 0.0 && gamma > 0.0
        })
        .expect("one positive root is admissible");
    QuarticCase { roots, residual, alpha }
}

/// The rhombus case: `tan²(α/4) = √17 − 4` with β = π − α/2, γ = π − α, and
/// the triangle edge x at that α.  Returns (α, β, γ, x).
pub fn rhombus_case() -> (f64, f64, f64, f64) {
    let s = 17.0f64.sqrt() - 4.0;
    let alpha = 4.0 * s.sqrt().atan();
    let beta = PI - alpha / 2.0;
    let gamma = PI - alpha;
    let x = regular_polygon_edge(3, alpha).expect("alpha is feasible");
    (alpha, beta, gamma, x)
}

/// Exact residual of `s³ + 9s² + 7s − 1` at `s = √17 − 4`, computed in
/// ℤ[√17] as the pair `(rational part, coefficient of √17)`.
pub fn rhombus_closure_residual_exact() -> (i64, i64) {
    // Elements a + b√17 as (a, b).
    let mul = |p: (i64, i64), q: (i64, i64)| (p.0 * q.0 + 17 * p.1 * q.1, p.0 * q.1 + p.1 * q.0);
    let s = (-4, 1);
    let s2 = mul(s, s);
    let s3 = mul(s2, s);
    (
        s3.0 + 9 * s2.0 + 7 * s.0 - 1,
        s3.1 + 9 * s2.1 + 7 * s.1,
    )
}

/// Per-vertex and global residuals of a metric realization.
#[derive(Clone, Debug, Serialize)]
pub struct Realization {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
    pub x: f64,
    /// Quadrilateral edge y; 0 exactly when the quadrilateral is flat.
    pub y: f64,
    /// Per-vertex angle-sum residuals (Σ corner angles − 2π).
    pub vertex_residuals: Vec<f64>,
    /// f_P·(mα − (m−2)π) + f_Q·(2β + 2γ − 2π) − 4π.
    pub gauss_bonnet_residual: f64,
    /// |x − y| below threshold: the prototile pair requires x ≠ y.
    pub degenerate_xy: bool,
    /// β + γ = π: the quadrilateral has zero spherical excess and y
    /// degenerates to 0.
    pub flat_quad: bool,
}

pub const DEGENERATE_XY_TOL: f64 = 1e-9;
pub const FLAT_QUAD_TOL: f64 = 1e-9;

/// Realize a tiling metrically: pin any free angles, compute x and y, and
/// evaluate all residuals.
pub fn realize(
    tiling: &CompleteTiling,
    solution: &AngleAssignment,
    free_params: &[f64],
) -> Result<Realization, GeometryError> {
    let pinned = if solution.num_params == 0 {
        solution.clone()
    } else {
        solution.instantiate(free_params)
    };
    let (alpha, beta, gamma) = pinned.radians().ok_or(GeometryError::Unpinned)?;
    let m = tiling.m();
    let x = regular_polygon_edge(m, alpha)?;
    let flat_quad = (beta + gamma - PI).abs() < FLAT_QUAD_TOL;
    let y = if flat_quad { 0.0 } else { quad_solve_y(beta, gamma, x)? };
    let value = |a: Angle| match a {
        Angle::Alpha => alpha,
        Angle::Beta => beta,
        Angle::Gamma => gamma,
    };
    let map = tiling.map();
    let vertex_residuals: Vec<f64> = map
        .vertices()
        .iter()
        .map(|fan| {
            fan.corners
                .iter()
                .map(|&c| value(map.corner_token(c).angle))
                .sum::<f64>()
                - 2.0 * PI
        })
        .collect();
    let census = tiling.census();
    let gon_area = m as f64 * alpha - (m as f64 - 2.0) * PI;
    let quad_area = 2.0 * beta + 2.0 * gamma - 2.0 * PI;
    let gauss_bonnet_residual =
        census.f_p as f64 * gon_area + census.f_q as f64 * quad_area - 4.0 * PI;
    Ok(Realization {
        alpha,
        beta,
        gamma,
        x,
        y,
        vertex_residuals,
        gauss_bonnet_residual,
        degenerate_xy: (x - y).abs() < DEGENERATE_XY_TOL,
        flat_quad,
    })
}

impl Realization {
    pub fn max_vertex_residual(&self) -> f64 {
        self.vertex_residuals.iter().fold(0.0, |m, r| m.max(r.abs()))
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "alpha": format!("{:.17}", self.alpha),
            "beta": format!("{:.17}", self.beta),
            "gamma": format!("{:.17}", self.gamma),
            "x": format!("{:.17}", self.x),
            "y": format!("{:.17}", self.y),
            "max_vertex_residual": self.max_vertex_residual(),
            "gauss_bonnet_residual": self.gauss_bonnet_residual,
            "degenerate_xy": self.degenerate_xy,
            "flat_quad": self.flat_quad,
        })
    }
}

/// Quick structural accessor used by exports: number of quads of each
/// chirality.
pub fn chirality_counts(tiling: &CompleteTiling) -> (u32, u32) {
    let map = tiling.map();
    let mut plain = 0;
    let mut mirrored = 0;
    for f in 0..tiling.face_count() {
        match map.face_kind(f) {
            TileKind::Quad { mirrored: false } => plain += 1,
            TileKind::Quad { mirrored: true } => mirrored += 1,
            TileKind::RegularGon(_) => {}
        }
    }
    (plain, mirrored)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tiling::prism;

    const TAU: f64 = 2.0 * PI;

    #[test]
    fn polygon_edge_anchors() {
        // Triangle at α = 2π/5: the icosahedral edge arccos(1/√5).
        let x = regular_polygon_edge(3, TAU / 5.0).unwrap();
        assert!((x - (1.0 / 5.0f64.sqrt()).acos()).abs() < 1e-12);
        // Octant triangle.
        let x = regular_polygon_edge(3, PI / 2.0).unwrap();
        assert!((x - PI / 2.0).abs() < 1e-12);
        // Cube face.
        let x = regular_polygon_edge(4, 2.0 * PI / 3.0).unwrap();
        assert!((x - (1.0f64 / 3.0).acos()).abs() < 1e-12);
        // m = 3 reduction: cos x = cos α / (1 − cos α).
        for k in 1..20 {
            let alpha = PI / 3.0 + k as f64 * 0.03;
            if alpha >= PI {
                break;
            }
            let x = regular_polygon_edge(3, alpha).unwrap();
            assert!((x.cos() - alpha.cos() / (1.0 - alpha.cos())).abs() < 1e-12);
            // Closed triangle relation: cos x = cos²x + sin²x cos α.
            assert!((x.cos() - (x.cos().powi(2) + x.sin().powi(2) * alpha.cos())).abs() < 1e-12);
        }
    }

    #[test]
    fn polygon_edge_rejects_infeasible() {
        assert!(regular_polygon_edge(4, PI / 2.0).is_err());
        assert!(regular_polygon_edge(3, PI / 3.0).is_err());
    }

    #[test]
    fn quad_solver_x_equals_y_anchor() {
        // β = 4π/5, γ = 2π/5 at the icosahedral x has the x = y solution.
        let x = (1.0 / 5.0f64.sqrt()).acos();
        let y = quad_solve_y(4.0 * PI / 5.0, TAU / 5.0, x).unwrap();
        assert!((y - x).abs() < 1e-9, "y = {y}, x = {x}");
    }

    #[test]
    fn quad_solver_rhombus_case_nearly_square() {
        // Approximate rhombus data: y within 1e−3·π of x.
        let (beta, gamma, x) = (0.78518 * PI, 0.57035 * PI, 0.40941 * PI);
        let y = quad_solve_y(beta, gamma, x).unwrap();
        assert!((y - x).abs() < 1e-3 * PI, "y = {y}, x = {x}");
    }

    #[test]
    fn quad_solver_preconditions() {
        assert!(matches!(
            quad_solve_y(2.0 * PI / 3.0, 2.0 * PI / 3.0, 1.0),
            Err(GeometryError::Precondition(_))
        ));
        assert!(quad_solve_y(0.6 * PI, 0.3 * PI, 1.0).is_err());
    }

    #[test]
    fn quad_solver_left_inverse_of_forward_construction() {
        // Build a quadrilateral from (β, x, y), measure γ, solve back.
        for &(beta, x, y) in &[
            (0.8 * PI, 0.9, 0.7),
            (0.7 * PI, 1.1, 0.5),
            (0.85 * PI, 0.6, 0.9),
        ] {
            let gamma = reassembled_gamma(beta, x, y);
            if gamma >= beta || beta + gamma <= PI {
                continue;
            }
            let back = quad_solve_y(beta, gamma, x).unwrap();
            assert!((back - y).abs() < 1e-10, "β={beta} x={x} y={y} back={back}");
        }
    }

    #[test]
    fn gamma_derivative_matches_finite_difference() {
        let (beta, x) = (0.8 * PI, 0.9);
        for &y in &[0.4, 0.7, 1.1] {
            let h = 1e-6;
            let fd = (reassembled_gamma(beta, x, y + h) - reassembled_gamma(beta, x, y - h))
                / (2.0 * h);
            let an = reassembled_gamma_dy(beta, x, y);
            assert!((fd - an).abs() < 1e-6, "y={y}: fd={fd} analytic={an}");
        }
    }

    #[test]
    fn quartic_case_anchors() {
        let q = solve_quartic_case();
        assert!(q.residual < 1e-14);
        assert!((q.alpha - TAU / 5.0).abs() < 1e-12);
        let expect = [0.3249196962329063f64, 1.3763819204711736];
        assert!((q.roots[2] - expect[0]).abs() < 1e-12);
        assert!((q.roots[3] - expect[1]).abs() < 1e-12);
        assert!((triangle_quad_identity(TAU / 5.0, 4.0 * PI / 5.0, TAU / 5.0)).abs() < 1e-12);
        assert!(triangle_quad_identity(PI / 2.0, PI / 2.0, PI / 2.0).abs() > 1e-3);
    }

    #[test]
    fn rhombus_case_anchors() {
        // Exact closure in ℤ[√17].
        assert_eq!(rhombus_closure_residual_exact(), (0, 0));
        let (alpha, beta, gamma, x) = rhombus_case();
        let tol = 1.5e-3 * PI;
        assert!((alpha - 0.42965 * PI).abs() < tol);
        assert!((beta - 0.78518 * PI).abs() < tol);
        assert!((gamma - 0.57035 * PI).abs() < tol);
        assert!((x - 0.40941 * PI).abs() < tol);
        assert!(triangle_quad_identity(alpha, PI - alpha / 2.0, PI - alpha).abs() < 1e-9);
    }

    #[test]
    fn realize_prism3_finds_degenerate_xy_point() {
        // The prism(3) family has α + β + γ = 2π; the identity reduces to
        // cos x = cot(β/2)·cot(γ/2), whose right side spans (0, tan²(α/4))
        // as β sweeps, so a crossing exists whenever tan²(α/4) > cos x.
        // α = 0.48π satisfies that with room to spare.
        let t = prism(3);
        let alpha = 0.48 * PI;
        let gap = |beta: f64| {
            let sol = AngleAssignment::numeric(alpha, beta, TAU - alpha - beta);
            let r = realize(&t, &sol, &[]).unwrap();
            assert!(r.max_vertex_residual() < 1e-9);
            assert!(r.gauss_bonnet_residual.abs() < 1e-9);
            r.x - r.y
        };
        let (mut lo, mut hi) = (0.77 * PI, 0.98 * PI);
        let (glo, ghi) = (gap(lo), gap(hi));
        assert!(glo * ghi < 0.0, "no sign change: {glo} vs {ghi}");
        for _ in 0..60 {
            let mid = 0.5 * (lo + hi);
            if glo * gap(mid) <= 0.0 {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        let beta = 0.5 * (lo + hi);
        let sol = AngleAssignment::numeric(alpha, beta, TAU - alpha - beta);
        let r = realize(&t, &sol, &[]).unwrap();
        assert!(r.degenerate_xy, "x = {}, y = {}", r.x, r.y);
        // The coexistence identity vanishes exactly at the x = y point.
        assert!(triangle_quad_identity(alpha, beta, TAU - alpha - beta).abs() < 1e-6);
        // A nearby β gives x ≠ y.
        let sol = AngleAssignment::numeric(alpha, beta + 0.05, TAU - alpha - beta - 0.05);
        let r = realize(&t, &sol, &[]).unwrap();
        assert!(!r.degenerate_xy);
        assert!(r.gauss_bonnet_residual.abs() < 1e-9);
    }

    #[test]
    fn realize_prism5_family_point() {
        let t = prism(5);
        // α + β + γ = 2π with α = 0.7π and β − γ = π/5.
        let (beta, gamma) = (0.75 * PI, 0.55 * PI);
        let sol = AngleAssignment::numeric(0.7 * PI, beta, gamma);
        let r = realize(&t, &sol, &[]).unwrap();
        assert!(r.max_vertex_residual() < 1e-12);
        assert!(r.gauss_bonnet_residual.abs() < 1e-9);
        assert!(r.x > 0.0 && r.y > 0.0 && !r.degenerate_xy);
    }
}
