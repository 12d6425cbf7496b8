//! Evolutes and caustics.
//!
//! The caustic is the bifurcation set of the distance-squared family
//! d(t, u) = ⟨γ(t) − u, γ(t) − u⟩.  Solving d′ = d″ = 0 for u gives
//! u = γ + q·γ′^⊥ with q = D/P, which is the evolute wherever that is
//! defined and continues through lightlike points (q = 0) and cusps (D and P
//! vanish together).  At each cusp the caustic also contains a straight line.

use crate::curve::PolyCurve;
use crate::detect::{singular_points, DetectConfig};
use crate::jet::Jet;
use crate::mink::{causal_character, minkowski_dot, normal, perp, CausalKind, MinkError, Vec2, LIGHTLIKE_TOL};
use crate::roots::poly_real_roots;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CausticError {
    #[error("t = {t} is lightlike; the evolute is undefined there, use the caustic")]
    Lightlike { t: f64 },
    #[error("κ vanishes at t = {t}; the evolute escapes to infinity, use the caustic")]
    Inflection { t: f64 },
    #[error("γ′ vanishes at t = {t}; use the caustic")]
    Singular { t: f64 },
    #[error("asymptote model mismatch: {0}")]
    ModelMismatch(String),
    #[error(transparent)]
    Mink(#[from] MinkError),
}

/// e(t) = γ(t) − N(t)/κ(t).
pub fn evolute(curve: &PolyCurve, t: f64) -> Result<Vec2, CausticError> {
    let v = curve.velocity(t);
    if v.norm2() == 0.0 {
        return Err(CausticError::Singular { t });
    }
    if causal_character(v, LIGHTLIKE_TOL)?.kind == CausalKind::Lightlike {
        return Err(CausticError::Lightlike { t });
    }
    let p = curve.curvature_numerator_poly().evalf(t);
    if p == 0.0 {
        return Err(CausticError::Inflection { t });
    }
    let kappa = p / minkowski_dot(v, v).abs().powf(1.5);
    Ok(curve.point(t) - (1.0 / kappa) * normal(curve, t)?)
}

fn leading_index(j: &Jet, rel: f64) -> Option<usize> {
    let m = j.coeffs().iter().fold(0.0f64, |m, c| m.max(c.abs()));
    if m == 0.0 {
        return None;
    }
    j.coeffs().iter().position(|c| c.abs() > rel * m)
}

/// Jet of t ↦ u(t) = γ + (D/P)·γ′^⊥ at t0, cancelling common zeros of D and P.
pub fn caustic_jet(curve: &PolyCurve, t0: f64, k: usize) -> Result<(Jet, Jet), CausticError> {
    let extra = 8;
    let d = curve.lightlike_poly().jet(&t0, k + extra);
    let p = curve.curvature_numerator_poly().jet(&t0, k + extra);
    let v = leading_index(&p, 1e-12).ok_or(CausticError::Inflection { t: t0 })?;
    if v > extra {
        return Err(CausticError::Inflection { t: t0 });
    }
    let dv = leading_index(&d, 1e-12).unwrap_or(usize::MAX);
    if dv < v {
        return Err(CausticError::Inflection { t: t0 });
    }
    let q = d.shift_down(v).map_err(MinkError::from)?.div(&p.shift_down(v).map_err(MinkError::from)?).map_err(MinkError::from)?;
    let q = q.truncate(k);
    let (x, y) = curve.jets(&t0, k + 1);
    let (xp, yp) = (x.derivative().truncate(k), y.derivative().truncate(k));
    // γ′^⊥ = (y′, x′)
    let ux = &x.truncate(k) + &(&q * &yp);
    let uy = &y.truncate(k) + &(&q * &xp);
    Ok((ux, uy))
}

/// A caustic point for parameter t, through the removable singularities.
pub fn caustic_point(curve: &PolyCurve, t: f64) -> Result<Vec2, CausticError> {
    let pp = curve.curvature_numerator_poly();
    let p = pp.evalf(t);
    if p.abs() > 1e-12 * pp.magnitude_at(t) {
        let d = curve.lightlike_poly().evalf(t);
        return Ok(curve.point(t) + (d / p) * perp(curve.velocity(t)));
    }
    let (x, y) = caustic_jet(curve, t, 0)?;
    Ok(Vec2::new(x.coeff(0), y.coeff(0)))
}

/// Scaled Bif(d) residuals (d′, d″) of the point u for the parameter t.
pub fn bif_residuals(curve: &PolyCurve, t: f64, u: Vec2) -> (f64, f64) {
    let w = curve.point(t) - u;
    let (v, a) = (curve.velocity(t), curve.acceleration(t));
    let d1 = 2.0 * minkowski_dot(v, w);
    let d2 = 2.0 * minkowski_dot(a, w) + 2.0 * minkowski_dot(v, v);
    let s1 = 2.0 * v.norm() * w.norm();
    let s2 = 2.0 * (a.norm() * w.norm() + v.norm2());
    (
        if s1 > 0.0 { d1 / s1 } else { d1 },
        if s2 > 0.0 { d2 / s2 } else { d2 },
    )
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CausticSample {
    pub t: f64,
    pub point: Vec2,
    /// Outside the bounding box; kept for continuity, not for drawing.
    pub asymptotic: bool,
}

/// Taylor coefficients of a branch at a distinguished parameter.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BranchSeries {
    pub t0: f64,
    pub x: Vec<f64>,
    pub y: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum CausticBranch {
    Parametrized {
        samples: Vec<CausticSample>,
        series: Vec<BranchSeries>,
    },
    Line {
        t0: f64,
        point: Vec2,
        direction: Vec2,
    },
}

#[derive(Clone, Debug, PartialEq, Default, Serialize, Deserialize)]
pub struct Caustic {
    pub branches: Vec<CausticBranch>,
    /// Parameters where P = 0 with D ≠ 0: the caustic leaves to infinity.
    pub gaps: Vec<f64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct CausticConfig {
    pub initial_samples: usize,
    /// Largest Euclidean distance between consecutive drawn samples.
    pub max_step: f64,
    pub min_dt: f64,
    pub max_samples: usize,
    /// Half-size of the square, centred on the curve, beyond which samples are asymptotic.
    pub bbox_half: f64,
    /// Distance kept from a gap parameter.
    pub gap_margin: f64,
    pub series_order: usize,
}

impl Default for CausticConfig {
    fn default() -> Self {
        CausticConfig {
            initial_samples: 257,
            max_step: 0.02,
            min_dt: 1e-9,
            max_samples: 100_000,
            bbox_half: 10.0,
            gap_margin: 1e-6,
            series_order: 5,
        }
    }
}

fn sample_piece(curve: &PolyCurve, a: f64, b: f64, centre: Vec2, cfg: &CausticConfig) -> Vec<CausticSample> {
    let inside = |p: Vec2| (p.x - centre.x).abs() <= cfg.bbox_half && (p.y - centre.y).abs() <= cfg.bbox_half;
    let make = |t: f64| {
        caustic_point(curve, t).ok().map(|point| CausticSample {
            t,
            point,
            asymptotic: !inside(point) || !point.x.is_finite() || !point.y.is_finite(),
        })
    };
    let n = cfg.initial_samples.max(2);
    let mut out: Vec<CausticSample> = (0..n)
        .filter_map(|i| make(a + (b - a) * i as f64 / (n - 1) as f64))
        .collect();
    loop {
        let mut next = Vec::with_capacity(out.len() * 2);
        let mut changed = false;
        for w in out.windows(2) {
            next.push(w[0]);
            let (s, e) = (w[0], w[1]);
            let both_far = s.asymptotic && e.asymptotic;
            if !both_far && (s.point - e.point).norm() > cfg.max_step && e.t - s.t > cfg.min_dt && out.len() + next.len() < cfg.max_samples {
                if let Some(m) = make(0.5 * (s.t + e.t)) {
                    next.push(m);
                    changed = true;
                }
            }
        }
        if let Some(l) = out.last() {
            next.push(*l);
        }
        out = next;
        if !changed || out.len() >= cfg.max_samples {
            break;
        }
    }
    out
}

/// Caustic of the curve on [a, b].
pub fn caustic(curve: &PolyCurve, a: f64, b: f64, cfg: &CausticConfig) -> Result<Caustic, CausticError> {
    let d = curve.lightlike_poly();
    let p = curve.curvature_numerator_poly();
    let dcfg = DetectConfig::default();
    let sing = singular_points(curve, a, b, &dcfg);
    let near = |t: f64, list: &[f64]| list.iter().any(|s| (s - t).abs() <= dcfg.merge_radius);
    let d_roots: Vec<f64> = poly_real_roots(&d, a, b).into_iter().map(|r| r.t).collect();
    let gaps: Vec<f64> = poly_real_roots(&p, a, b)
        .into_iter()
        .map(|r| r.t)
        .filter(|&t| !near(t, &sing) && !near(t, &d_roots))
        .collect();

    let (mut lo, mut hi) = (Vec2::new(f64::INFINITY, f64::INFINITY), Vec2::new(f64::NEG_INFINITY, f64::NEG_INFINITY));
    for i in 0..=64 {
        let q = curve.point(a + (b - a) * i as f64 / 64.0);
        lo = Vec2::new(lo.x.min(q.x), lo.y.min(q.y));
        hi = Vec2::new(hi.x.max(q.x), hi.y.max(q.y));
    }
    let centre = 0.5 * (lo + hi);

    let mut cuts = vec![a];
    cuts.extend(gaps.iter().copied());
    cuts.push(b);
    let distinguished: Vec<f64> = sing.iter().chain(d_roots.iter().filter(|t| !near(**t, &sing))).copied().collect();
    let mut branches = Vec::new();
    for (i, w) in cuts.windows(2).enumerate() {
        let l = if i == 0 { w[0] } else { w[0] + cfg.gap_margin };
        let r = if i + 2 == cuts.len() { w[1] } else { w[1] - cfg.gap_margin };
        if !(l < r) {
            continue;
        }
        let samples = sample_piece(curve, l, r, centre, cfg);
        let series = distinguished
            .iter()
            .filter(|&&t| t >= l && t <= r)
            .filter_map(|&t0| {
                caustic_jet(curve, t0, cfg.series_order).ok().map(|(x, y)| BranchSeries {
                    t0,
                    x: x.coeffs().to_vec(),
                    y: y.coeffs().to_vec(),
                })
            })
            .collect();
        branches.push(CausticBranch::Parametrized { samples, series });
    }
    for &t0 in &sing {
        let acc = curve.acceleration(t0);
        let dir = perp(acc);
        let n = dir.norm();
        if n > 0.0 {
            branches.push(CausticBranch::Line {
                t0,
                point: curve.point(t0),
                direction: (1.0 / n) * dir,
            });
        }
    }
    Ok(Caustic { branches, gaps })
}

/// Least-squares polynomial fit of the given degree.
pub fn fit_polynomial(ts: &[f64], vals: &[f64], degree: usize) -> Vec<f64> {
    let n = ts.len();
    let m = nalgebra::DMatrix::from_fn(n, degree + 1, |i, j| ts[i].powi(j as i32));
    let rhs = nalgebra::DVector::from_column_slice(vals);
    let svd = m.svd(true, true);
    svd.solve(&rhs, 1e-14).map(|c| c.iter().copied().collect()).unwrap_or_default()
}

/// lim x^n·y along the evolute, in the tangent–normal frame of an inflection
/// of order n at t0, by first-order Richardson extrapolation over
/// t_j = t0 + h·2^{−j}, j = 0..=12.
pub fn asymptote_model_check(curve: &PolyCurve, t0: f64, n: u32, h: f64) -> Result<f64, CausticError> {
    let v = curve.velocity(t0);
    let c = causal_character(v, LIGHTLIKE_TOL).map_err(|_| CausticError::Singular { t: t0 })?;
    if c.kind == CausalKind::Lightlike {
        return Err(CausticError::Lightlike { t: t0 });
    }
    let tan = (1.0 / c.residual.abs().sqrt()) * v;
    let nor = normal(curve, t0)?;
    let origin = curve.point(t0);
    let coords = |u: Vec2| {
        let w = u - origin;
        (
            minkowski_dot(w, tan) / minkowski_dot(tan, tan),
            minkowski_dot(w, nor) / minkowski_dot(nor, nor),
        )
    };
    let mut vals = Vec::with_capacity(13);
    for j in 0..=12 {
        let t = t0 + h * 0.5f64.powi(j);
        let (x, y) = coords(evolute(curve, t)?);
        vals.push(x.powi(n as i32) * y);
    }
    let rich: Vec<f64> = vals.windows(2).map(|w| 2.0 * w[1] - w[0]).collect();
    let (l, prev) = (rich[rich.len() - 1], rich[rich.len() - 2]);
    if !l.is_finite() {
        return Err(CausticError::ModelMismatch(format!("x^{n}·y diverges")));
    }
    if l.abs() < 1e-10 {
        return Err(CausticError::ModelMismatch(format!("x^{n}·y tends to zero")));
    }
    if (l - prev).abs() > 1e-3 * l.abs() {
        return Err(CausticError::ModelMismatch(format!("x^{n}·y does not settle ({prev} then {l})")));
    }
    Ok(l)
}

/// Signed Minkowski heights ⟨p − γ(t0), γ′(t0)^⊥⟩ of curve and caustic
/// samples near t0.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SideReport {
    pub t0: f64,
    pub curve_heights: Vec<f64>,
    pub caustic_heights: Vec<f64>,
    /// Every curve height has the opposite sign to every caustic height.
    pub opposite: bool,
}

/// Side relation between the curve and its caustic relative to the tangent
/// line at t0.  At a regular non-lightlike point the evolute point e(t0) is
/// compared; at a lightlike point the caustic passes through γ(t0), so
/// caustic samples at t0 ± δ are compared.
pub fn side_checks(curve: &PolyCurve, t0: f64, delta: f64) -> Result<SideReport, CausticError> {
    let v = curve.velocity(t0);
    if v.norm2() == 0.0 {
        return Err(CausticError::Singular { t: t0 });
    }
    let origin = curve.point(t0);
    let np = perp(v);
    let height = |p: Vec2| minkowski_dot(p - origin, np);
    let offsets = [-delta, -0.5 * delta, 0.5 * delta, delta];
    let curve_heights: Vec<f64> = offsets.iter().map(|h| height(curve.point(t0 + h))).collect();
    let lightlike = causal_character(v, LIGHTLIKE_TOL)?.kind == CausalKind::Lightlike;
    let caustic_heights: Vec<f64> = if lightlike {
        offsets
            .iter()
            .map(|h| caustic_point(curve, t0 + h).map(height))
            .collect::<Result<_, _>>()?
    } else {
        vec![height(evolute(curve, t0)?)]
    };
    let opposite = curve_heights
        .iter()
        .all(|c| caustic_heights.iter().all(|e| c * e < 0.0));
    Ok(SideReport {
        t0,
        curve_heights,
        caustic_heights,
        opposite,
    })
}

/// Tangency of the caustic with the curve at a lightlike point.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TangencyReport {
    /// ‖u′(t0)‖ of the caustic.
    pub caustic_speed: f64,
    /// u′(t0) × γ′(t0), zero for a common tangent.
    pub tangent_defect: f64,
    /// Second-order coefficient of each height over the common tangent,
    /// per unit tangent coordinate squared.
    pub curve_quadratic: f64,
    pub caustic_quadratic: f64,
}

impl TangencyReport {
    /// Regular caustic, common tangent, different second-order terms.
    pub fn is_ordinary(&self, tol: f64) -> bool {
        let q = self.curve_quadratic.abs().max(self.caustic_quadratic.abs());
        self.caustic_speed > tol
            && self.tangent_defect.abs() <= tol * self.caustic_speed
            && (self.curve_quadratic - self.caustic_quadratic).abs() > tol * q
            && self.curve_quadratic.abs() > tol
            && self.caustic_quadratic.abs() > tol
    }
}

pub fn lightlike_tangency(curve: &PolyCurve, t0: f64) -> Result<TangencyReport, CausticError> {
    let (ux, uy) = caustic_jet(curve, t0, 3)?;
    let (x, y) = curve.jets(&t0, 3);
    let v = Vec2::new(x.coeff(1), y.coeff(1));
    let du = Vec2::new(ux.coeff(1), uy.coeff(1));
    let np = perp(v);
    // heights h(τ) = ⟨p(τ) − γ(t0), γ′^⊥⟩ and tangent coordinates X(τ) = (p(τ) − γ(t0))·v/|v|²
    let quad = |a: &Jet, b: &Jet| {
        let h2 = minkowski_dot(Vec2::new(a.coeff(2), b.coeff(2)), np);
        let x1 = Vec2::new(a.coeff(1), b.coeff(1)).dot(v) / v.norm2();
        h2 / (x1 * x1)
    };
    Ok(TangencyReport {
        caustic_speed: du.norm(),
        tangent_defect: du.cross(v) / v.norm(),
        curve_quadratic: quad(&x, &y),
        caustic_quadratic: quad(&ux, &uy),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Poly;
    use proptest::prelude::*;

    fn graph(f: &[f64]) -> PolyCurve {
        PolyCurve::graph(Poly::from_f64(f))
    }

    #[test]
    fn evolute_examples() {
        let e = evolute(&graph(&[0.0, 0.0, 1.0]), 0.0).unwrap();
        assert!(e.x.abs() < 1e-15 && (e.y + 0.5).abs() < 1e-15);
        // the d′ = d″ = 0 oracle agrees
        let (r1, r2) = bif_residuals(&graph(&[0.0, 0.0, 1.0]), 0.0, e);
        assert!(r1.abs() < 1e-15 && r2.abs() < 1e-15);
        let e = evolute(&graph(&[0.0, 0.0, 0.0, 1.0]), 0.1).unwrap();
        assert!((e.x - 0.05).abs() < 0.02 && (e.y * 0.1 * 6.0 + 1.0).abs() < 0.1, "{:?}", e);
        // pseudo-circle series (sinh t, cosh t) truncated at degree 9: centre (0, 0)
        let sinh = [0.0, 1.0, 0.0, 1.0 / 6.0, 0.0, 1.0 / 120.0, 0.0, 1.0 / 5040.0, 0.0, 1.0 / 362880.0];
        let cosh = [1.0, 0.0, 0.5, 0.0, 1.0 / 24.0, 0.0, 1.0 / 720.0, 0.0, 1.0 / 40320.0];
        let e = evolute(&PolyCurve::from_coeffs(&sinh, &cosh), 0.0).unwrap();
        assert!(e.norm() < 1e-12, "{:?}", e);
        assert!(matches!(evolute(&graph(&[0.0, 0.0, 0.0, 1.0]), 0.0), Err(CausticError::Inflection { .. })));
        assert!(matches!(evolute(&graph(&[0.0, 1.0, 1.0]), 0.0), Err(CausticError::Lightlike { .. })));
    }

    #[test]
    fn cusp_caustics() {
        let c = PolyCurve::from_coeffs(&[0.0, 0.0, 1.0], &[0.0, 0.0, 0.0, 1.0]);
        let (x, y) = caustic_jet(&c, 0.0, 3).unwrap();
        assert!((x.coeff(2) + 1.0).abs() < 1e-12 && (y.coeff(1) + 4.0 / 3.0).abs() < 1e-12);
        let cau = caustic(&c, -0.05, 0.05, &CausticConfig::default()).unwrap();
        let line = cau.branches.iter().find_map(|b| match b {
            CausticBranch::Line { direction, .. } => Some(*direction),
            _ => None,
        });
        let d = line.unwrap();
        assert!(d.x.abs() < 1e-15 && (d.y.abs() - 1.0).abs() < 1e-15);

        let c = PolyCurve::from_coeffs(&[0.0, 0.0, 1.0], &[0.0, 0.0, 1.0, 1.0]);
        let (x, y) = caustic_jet(&c, 0.0, 3).unwrap();
        for (got, want) in [(x.coeff(2), 5.0), (x.coeff(3), 9.0), (y.coeff(2), 5.0), (y.coeff(3), 4.0)] {
            assert!((got - want).abs() < 1e-10, "{got} vs {want}");
        }
    }

    #[test]
    fn lightlike_caustic_passes_through_curve() {
        let c = graph(&[0.0, 1.0, 1.0]);
        let (x, y) = caustic_jet(&c, 0.0, 3).unwrap();
        assert_eq!(x.coeff(0), 0.0);
        assert!((x.coeff(1) - 3.0).abs() < 1e-12 && (x.coeff(2) - 6.0).abs() < 1e-12);
        assert!((y.coeff(1) - 3.0).abs() < 1e-12 && (y.coeff(2) - 3.0).abs() < 1e-12);
        let r = lightlike_tangency(&c, 0.0).unwrap();
        assert!(r.is_ordinary(1e-9), "{:?}", r);
        let s = side_checks(&c, 0.0, 1e-3).unwrap();
        assert!(s.opposite, "{:?}", s);
    }

    #[test]
    fn evolute_lies_across_the_tangent_line() {
        let s = side_checks(&graph(&[0.0, 0.0, 1.0]), 0.0, 1e-2).unwrap();
        assert!(s.opposite);
        assert!(s.caustic_heights[0] < 0.0 && s.curve_heights[0] > 0.0);
        let s = side_checks(&PolyCurve::from_coeffs(&[0.0, 0.0, 1.0], &[0.0, 1.0]), 0.0, 1e-2).unwrap();
        assert!(s.opposite, "{:?}", s);
    }

    #[test]
    fn asymptote_models() {
        for (n, f, want) in [
            (1u32, vec![0.0, 0.0, 0.0, 1.0], -1.0 / 12.0),
            (2, vec![0.0, 0.0, 0.0, 0.0, 1.0], -1.0 / 27.0),
            (3, vec![0.0, 0.0, 0.0, 0.0, 0.0, 1.0], -27.0 / 1280.0),
        ] {
            let l = asymptote_model_check(&graph(&f), 0.0, n, 0.1).unwrap();
            assert!((l - want).abs() < 1e-3 * want.abs(), "n={n}: {l} vs {want}");
        }
        // wrong exponent: x²y → 0 at an ordinary inflection
        assert!(asymptote_model_check(&graph(&[0.0, 0.0, 0.0, 1.0]), 0.0, 2, 0.1).is_err());
    }

    #[test]
    fn inflection_splits_branches() {
        let c = graph(&[0.0, 0.0, 0.0, 1.0]);
        let cau = caustic(&c, -0.5, 0.5, &CausticConfig::default()).unwrap();
        assert_eq!(cau.gaps.len(), 1);
        assert_eq!(cau.branches.len(), 2);
        for b in &cau.branches {
            if let CausticBranch::Parametrized { samples, .. } = b {
                assert!(samples.iter().any(|s| s.asymptotic));
                let drawn: Vec<_> = samples.windows(2).filter(|w| !w[0].asymptotic && !w[1].asymptotic).collect();
                assert!(drawn.iter().all(|w| (w[0].point - w[1].point).norm() <= 0.02 + 1e-12 || w[1].t - w[0].t <= 1e-9));
            }
        }
    }

    fn random_curve() -> impl Strategy<Value = PolyCurve> {
        (prop::collection::vec(-1.0f64..1.0, 5), prop::collection::vec(-1.0f64..1.0, 5)).prop_map(|(mut x, y)| {
            x[1] = 1.0 + x[1].abs();
            PolyCurve::from_coeffs(&x, &y)
        })
    }

    proptest! {
        #[test]
        fn samples_satisfy_bif_conditions(c in random_curve()) {
            let cau = caustic(&c, -0.3, 0.3, &CausticConfig { initial_samples: 65, ..Default::default() }).unwrap();
            for b in &cau.branches {
                if let CausticBranch::Parametrized { samples, .. } = b {
                    for s in samples.iter().filter(|s| !s.asymptotic) {
                        let (r1, r2) = bif_residuals(&c, s.t, s.point);
                        prop_assert!(r1.abs() <= 1e-8 && r2.abs() <= 1e-8, "t={} {} {}", s.t, r1, r2);
                    }
                }
            }
        }

        #[test]
        fn caustic_equals_evolute_off_special_points(c in random_curve(), t in -0.3f64..0.3) {
            let v = c.velocity(t);
            let q = minkowski_dot(v, v);
            let p = c.curvature_numerator_poly().evalf(t);
            prop_assume!(q.abs() > 1e-3 * v.norm2() && p.abs() > 1e-3);
            let e = evolute(&c, t).unwrap();
            let u = caustic_point(&c, t).unwrap();
            prop_assert!((e - u).norm() <= 1e-9 * (1.0 + e.norm()));
        }
    }
}
