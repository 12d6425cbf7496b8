//! Self-intersections, full censuses and their feature strings.

use crate::curve::PolyCurve;
use crate::detect::{find_special_points, Census, DetectConfig, DetectError};
use crate::mink::Vec2;
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Box2 {
    pub x0: f64,
    pub x1: f64,
    pub y0: f64,
    pub y1: f64,
}

impl Box2 {
    pub fn new(x0: f64, x1: f64, y0: f64, y1: f64) -> Self {
        Box2 { x0, x1, y0, y1 }
    }

    fn contains(&self, x: f64, y: f64, slack: f64) -> bool {
        x >= self.x0 - slack && x <= self.x1 + slack && y >= self.y0 - slack && y <= self.y1 + slack
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct Solve2dConfig {
    pub grid: usize,
    /// Bisection levels applied to bracketing cells before Newton.
    pub levels: usize,
    /// Give up refining once this many cells survive.
    pub max_cells: usize,
    /// Residual accepted after Newton, relative to the function scale.
    pub tol: f64,
    /// Solutions closer than this (relative to the box) are one.
    pub cluster: f64,
}

impl Default for Solve2dConfig {
    fn default() -> Self {
        Solve2dConfig {
            grid: 256,
            levels: 12,
            max_cells: 4096,
            tol: 1e-12,
            cluster: 1e-9,
        }
    }
}

fn brackets(v: [f64; 4]) -> bool {
    let lo = v.iter().fold(f64::INFINITY, |m, x| m.min(*x));
    let hi = v.iter().fold(f64::NEG_INFINITY, |m, x| m.max(*x));
    lo <= 0.0 && hi >= 0.0
}

/// Newton iteration with a central-difference Jacobian.
pub fn newton_2d(f: &impl Fn(f64, f64) -> (f64, f64), mut x: f64, mut y: f64, h: f64, iters: usize) -> (f64, f64, f64) {
    let norm = |v: (f64, f64)| v.0.abs().max(v.1.abs());
    let mut fx = f(x, y);
    for _ in 0..iters {
        if norm(fx) == 0.0 {
            break;
        }
        let (fxp, fxm) = (f(x + h, y), f(x - h, y));
        let (fyp, fym) = (f(x, y + h), f(x, y - h));
        let j11 = (fxp.0 - fxm.0) / (2.0 * h);
        let j21 = (fxp.1 - fxm.1) / (2.0 * h);
        let j12 = (fyp.0 - fym.0) / (2.0 * h);
        let j22 = (fyp.1 - fym.1) / (2.0 * h);
        let det = j11 * j22 - j12 * j21;
        if det == 0.0 || !det.is_finite() {
            break;
        }
        let dx = (j22 * fx.0 - j12 * fx.1) / det;
        let dy = (j11 * fx.1 - j21 * fx.0) / det;
        // damp until the residual does not grow
        let mut lambda = 1.0;
        let mut accepted = false;
        for _ in 0..30 {
            let (nx, ny) = (x - lambda * dx, y - lambda * dy);
            let nf = f(nx, ny);
            if norm(nf) <= norm(fx) {
                x = nx;
                y = ny;
                fx = nf;
                accepted = true;
                break;
            }
            lambda *= 0.5;
        }
        if !accepted || (dx.abs().max(dy.abs()) * lambda) < 1e-17 * (1.0 + x.abs().max(y.abs())) {
            break;
        }
    }
    (x, y, norm(fx))
}

/// Common zeros of (f, g) in a box.
///
/// Cells of a uniform grid whose corner values bracket zero in both
/// components are bisected a fixed number of times, then each survivor seeds
/// Newton.  `scale` sets the residual tolerance.
pub fn solve_2d(
    f: impl Fn(f64, f64) -> (f64, f64),
    bx: Box2,
    scale: f64,
    cfg: &Solve2dConfig,
) -> Vec<(f64, f64)> {
    let n = cfg.grid.max(2);
    let (hx, hy) = ((bx.x1 - bx.x0) / n as f64, (bx.y1 - bx.y0) / n as f64);
    let xs: Vec<f64> = (0..=n).map(|i| bx.x0 + hx * i as f64).collect();
    let ys: Vec<f64> = (0..=n).map(|j| bx.y0 + hy * j as f64).collect();
    let vals: Vec<Vec<(f64, f64)>> = xs.iter().map(|&x| ys.iter().map(|&y| f(x, y)).collect()).collect();
    let mut cells: Vec<Box2> = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let c = [vals[i][j], vals[i + 1][j], vals[i][j + 1], vals[i + 1][j + 1]];
            if brackets(c.map(|v| v.0)) && brackets(c.map(|v| v.1)) {
                cells.push(Box2::new(xs[i], xs[i + 1], ys[j], ys[j + 1]));
            }
        }
    }
    for _ in 0..cfg.levels {
        if cells.len() > cfg.max_cells {
            break;
        }
        let mut next = Vec::new();
        for c in &cells {
            let (mx, my) = (0.5 * (c.x0 + c.x1), 0.5 * (c.y0 + c.y1));
            let gx = [c.x0, mx, c.x1];
            let gy = [c.y0, my, c.y1];
            let v: Vec<Vec<(f64, f64)>> = gx.iter().map(|&x| gy.iter().map(|&y| f(x, y)).collect()).collect();
            for a in 0..2 {
                for b in 0..2 {
                    let q = [v[a][b], v[a + 1][b], v[a][b + 1], v[a + 1][b + 1]];
                    if brackets(q.map(|w| w.0)) && brackets(q.map(|w| w.1)) {
                        next.push(Box2::new(gx[a], gx[a + 1], gy[b], gy[b + 1]));
                    }
                }
            }
        }
        cells = next;
    }
    let width = (bx.x1 - bx.x0).max(bx.y1 - bx.y0);
    let h = 1e-7 * width;
    let mut sols: Vec<(f64, f64)> = Vec::new();
    for c in &cells {
        let (x, y, r) = newton_2d(&f, 0.5 * (c.x0 + c.x1), 0.5 * (c.y0 + c.y1), h, 60);
        if r <= cfg.tol * scale && bx.contains(x, y, 1e-12 * width) {
            if !sols.iter().any(|s| (s.0 - x).abs().max((s.1 - y).abs()) <= cfg.cluster * width) {
                sols.push((x, y));
            }
        }
    }
    sols.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.total_cmp(&b.1)));
    sols
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SelfIntersection {
    pub t1: f64,
    pub t2: f64,
    pub point: Vec2,
    pub tangential: bool,
    pub residual: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SelfIntersectionConfig {
    pub solver: Solve2dConfig,
    /// Smallest accepted |t1 − t2|.
    pub min_separation: f64,
    /// Tangential when |γ′(t1) × γ′(t2)| ≤ this · ‖γ′(t1)‖‖γ′(t2)‖.
    pub tangential_tol: f64,
}

impl Default for SelfIntersectionConfig {
    fn default() -> Self {
        SelfIntersectionConfig {
            solver: Solve2dConfig::default(),
            min_separation: 1e-4,
            tangential_tol: 1e-6,
        }
    }
}

/// Pairs t1 < t2 in [a, b] with γ(t1) = γ(t2).
///
/// Works with the divided differences (γ(t1) − γ(t2))/(t1 − t2), which do
/// not vanish identically on the diagonal.
pub fn find_self_intersections(curve: &PolyCurve, a: f64, b: f64, cfg: &SelfIntersectionConfig) -> Vec<SelfIntersection> {
    let f = |t1: f64, t2: f64| (curve.x.divided_difference(&t1, &t2), curve.y.divided_difference(&t1, &t2));
    let scale = curve.scale();
    solve_2d(f, Box2::new(a, b, a, b), scale, &cfg.solver)
        .into_iter()
        .filter(|&(t1, t2)| t2 - t1 >= cfg.min_separation)
        .map(|(t1, t2)| {
            let (v1, v2) = (curve.velocity(t1), curve.velocity(t2));
            let tangential = v1.cross(v2).abs() <= cfg.tangential_tol * v1.norm() * v2.norm();
            let (p1, p2) = (curve.point(t1), curve.point(t2));
            SelfIntersection {
                t1,
                t2,
                point: 0.5 * (p1 + p2),
                tangential,
                residual: (p1 - p2).norm(),
            }
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Default, Serialize, Deserialize)]
#[serde(default)]
pub struct CensusConfig {
    pub detect: DetectConfig,
    pub self_intersections: SelfIntersectionConfig,
}

/// Special points and self-intersections on [a, b].
pub fn census(curve: &PolyCurve, a: f64, b: f64, cfg: &CensusConfig) -> Result<Census, DetectError> {
    let mut c = find_special_points(curve, a, b, &cfg.detect)?;
    c.self_intersections = find_self_intersections(curve, a, b, &cfg.self_intersections);
    Ok(c)
}

/// Symbols of all features ordered by parameter; a self-intersection
/// contributes X (XT if tangential) at both of its parameters.
pub fn order_features(c: &Census) -> Vec<(f64, String)> {
    let mut items: Vec<(f64, String)> = c.points.iter().map(|p| (p.t, p.kind.symbol())).collect();
    for s in &c.self_intersections {
        let sym = if s.tangential { "XT" } else { "X" };
        items.push((s.t1, sym.into()));
        items.push((s.t2, sym.into()));
    }
    items.sort_by(|a, b| a.0.total_cmp(&b.0));
    items
}

pub fn feature_string(c: &Census) -> String {
    order_features(c).into_iter().map(|(_, s)| s).collect::<Vec<_>>().join(" ")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_circle_and_line() {
        // x² + y² = 1, x = y
        let f = |x: f64, y: f64| (x * x + y * y - 1.0, x - y);
        let s = solve_2d(f, Box2::new(-2.0, 2.0, -2.0, 2.0), 1.0, &Solve2dConfig::default());
        assert_eq!(s.len(), 2);
        let r = 0.5f64.sqrt();
        assert!((s[0].0 + r).abs() < 1e-14 && (s[1].1 - r).abs() < 1e-14);
    }

    #[test]
    fn nodal_cubic_loop() {
        // (t² − 1, t(t² − 1)) crosses itself at t = ±1
        let c = PolyCurve::from_coeffs(&[-1.0, 0.0, 1.0], &[0.0, -1.0, 0.0, 1.0]);
        let x = find_self_intersections(&c, -2.0, 2.0, &SelfIntersectionConfig::default());
        assert_eq!(x.len(), 1);
        assert!((x[0].t1 + 1.0).abs() < 1e-12 && (x[0].t2 - 1.0).abs() < 1e-12);
        assert!(!x[0].tangential);
        assert!(x[0].residual < 1e-12);
    }

    #[test]
    fn tangential_self_contact() {
        // (t² , t⁴ ... ) style tacnode: (t³ − t, (t² − 1)²) touches itself at t = ±1 with parallel tangents
        let c = PolyCurve::from_coeffs(&[0.0, -1.0, 0.0, 1.0], &[1.0, 0.0, -2.0, 0.0, 1.0]);
        let v1 = c.velocity(-1.0);
        let v2 = c.velocity(1.0);
        assert!(v1.cross(v2).abs() < 1e-15);
        let x = find_self_intersections(&c, -1.5, 1.5, &SelfIntersectionConfig::default());
        assert!(x.iter().any(|s| (s.t1 + 1.0).abs() < 1e-6 && (s.t2 - 1.0).abs() < 1e-6 && s.tangential), "{:?}", x);
    }

    #[test]
    fn feature_string_orders_by_parameter() {
        let c = PolyCurve::from_coeffs(&[-1.0, 0.0, 1.0], &[0.0, -1.0, 0.0, 1.0]);
        let cen = census(&c, -2.0, 2.0, &CensusConfig::default()).unwrap();
        let s = feature_string(&cen);
        assert!(s.starts_with('X') || s.contains(" X"), "{s}");
        assert_eq!(s.matches('X').count(), 2);
    }
}
