//! Special points of a curve on an interval.
//!
//! Lightlike points are zeros of D = ⟨γ′,γ′⟩, inflections zeros of the
//! κ-numerator P, vertices zeros of the κ′-numerator W.  All three are
//! polynomials, so the search never touches κ itself, which blows up at
//! lightlike points.  Phenomena that land on the same parameter (within the
//! merge radius) are reported once, with the swallowed zeros recorded as
//! concentrated at that point.

use crate::curve::PolyCurve;
use crate::jet::Jet;
use crate::mink::{causal_character, curvature_jet, monge_taylor, CausalKind, MinkError};
use crate::multilocal::SelfIntersection;
use crate::poly::Poly;
use crate::roots::{poly_real_roots, RootConfig};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum DetectError {
    #[error("γ″ vanishes at the singular point t = {t}; only cusps are supported")]
    UnsupportedSingularity { t: f64 },
    #[error("empty or reversed interval [{0}, {1}]")]
    BadInterval(f64, f64),
    #[error(transparent)]
    Mink(#[from] MinkError),
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct DetectConfig {
    pub jet_order: usize,
    /// Zeros closer than this in t are one phenomenon.
    pub merge_radius: f64,
    /// Jet coefficient c_i counts as zero when |c_i|ρ^i ≤ this · max_{j>i}|c_j|ρ^j.
    pub order_threshold: f64,
    pub lightlike_tol: f64,
    /// γ′ counts as zero when ‖γ′‖ ≤ this · (coefficient scale).
    pub singular_tol: f64,
    pub roots: RootConfig,
}

impl Default for DetectConfig {
    fn default() -> Self {
        DetectConfig {
            jet_order: 12,
            merge_radius: 1e-7,
            order_threshold: 1e-6,
            lightlike_tol: 1e-9,
            singular_tol: 1e-10,
            roots: RootConfig::default(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum VertexDirection {
    Inward,
    Outward,
    Undefined,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum CuspKind {
    Ordinary,
    LightlikeOrdinary,
    Ramphoid,
    Other,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type")]
pub enum PointKind {
    Lightlike,
    Inflection { order: u32 },
    Vertex { order: u32, direction: VertexDirection },
    LightlikeInflection { order: u32 },
    Cusp { kind: CuspKind },
}

impl PointKind {
    /// Symbol used in feature strings.
    pub fn symbol(&self) -> String {
        match *self {
            PointKind::Lightlike => "L".into(),
            PointKind::Inflection { order: 1 } => "I".into(),
            PointKind::Inflection { order } => format!("I{order}"),
            PointKind::LightlikeInflection { order: 1 } => "LI".into(),
            PointKind::LightlikeInflection { order } => format!("LI{order}"),
            PointKind::Vertex { order, direction } => {
                let base = if order == 1 { "V".to_string() } else { format!("V{order}") };
                match direction {
                    VertexDirection::Inward => format!("{base}+"),
                    VertexDirection::Outward => format!("{base}-"),
                    VertexDirection::Undefined => base,
                }
            }
            PointKind::Cusp { kind } => match kind {
                CuspKind::Ordinary => "C".into(),
                CuspKind::LightlikeOrdinary => "LC".into(),
                CuspKind::Ramphoid => "RC".into(),
                CuspKind::Other => "S".into(),
            },
        }
    }
}

/// Zeros of the κ-, κ′- and D-numerators absorbed into a point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Concentrated {
    pub inflections: u32,
    pub vertices: u32,
    pub lightlike: u32,
}

/// D, P, W at the point.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Residuals {
    pub lightlike: f64,
    pub inflection: f64,
    pub vertex: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpecialPoint {
    pub t: f64,
    pub kind: PointKind,
    pub residuals: Residuals,
    /// The order classification ran out of jet: the true order is at least the reported one.
    #[serde(default)]
    pub order_capped: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub concentrated: Option<Concentrated>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Counts {
    pub lightlike: usize,
    pub inflections: usize,
    pub vertices: usize,
    pub lightlike_inflections: usize,
    pub cusps: usize,
    pub self_intersections: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Census {
    pub interval: (f64, f64),
    pub points: Vec<SpecialPoint>,
    pub self_intersections: Vec<SelfIntersection>,
}

impl Census {
    pub fn counts(&self) -> Counts {
        let mut c = Counts {
            self_intersections: self.self_intersections.len(),
            ..Counts::default()
        };
        for p in &self.points {
            match p.kind {
                PointKind::Lightlike => c.lightlike += 1,
                PointKind::Inflection { .. } => c.inflections += 1,
                PointKind::Vertex { .. } => c.vertices += 1,
                PointKind::LightlikeInflection { .. } => c.lightlike_inflections += 1,
                PointKind::Cusp { .. } => c.cusps += 1,
            }
        }
        c
    }

    pub fn of_kind(&self, pred: impl Fn(&PointKind) -> bool) -> Vec<&SpecialPoint> {
        self.points.iter().filter(|p| pred(&p.kind)).collect()
    }
}

/// Order of the zero of a jet at its base point: the first i ≥ 1 whose
/// coefficient is not negligible against the later ones at radius ρ.
/// Returns (order, capped).
pub fn zero_order(j: &Jet, from: usize, threshold: f64, rho: f64) -> (usize, bool) {
    let k = j.order();
    let scaled: Vec<f64> = (0..=k).map(|i| j.coeff(i).abs() * rho.powi(i as i32)).collect();
    for i in from..=k {
        let later = scaled[i + 1..].iter().fold(0.0f64, |m, v| m.max(*v));
        if scaled[i] > threshold * later && scaled[i] > 0.0 {
            return (i, false);
        }
    }
    (k, true)
}

/// A_k type of the contact of γ with its tangent line at t0: the height
/// h(τ) = ⟨γ(t0+τ) − γ(t0), γ′(t0)^⊥⟩ vanishes to order k+1.
pub fn contact_order_with_tangent(curve: &PolyCurve, t0: f64, cfg: &DetectConfig) -> Result<(u32, bool), DetectError> {
    let jc = monge_taylor(curve, &t0, cfg.jet_order);
    let (a1, b1) = (jc.ai(1), jc.bi(1));
    if (a1 * a1 + b1 * b1).sqrt() <= cfg.singular_tol * curve.scale() {
        return Err(MinkError::Singular { t: t0 }.into());
    }
    let mut h = vec![0.0; cfg.jet_order + 1];
    for (i, hi) in h.iter_mut().enumerate().skip(2) {
        *hi = a1 * jc.bi(i) - jc.ai(i) * b1;
    }
    let (order, capped) = zero_order(&Jet::new(h), 2, cfg.order_threshold, 1.0);
    Ok(((order - 1) as u32, capped))
}

/// Classify a singular point γ′(t0) = 0 with γ″(t0) ≠ 0.
///
/// In coordinates X along γ″(t0) and Y across it, X = X2 h² + ..., and after
/// reparametrizing so that X = X2 σ² exactly, the first odd power of σ in Y
/// decides: σ³ for an ordinary cusp, σ⁵ with a σ⁴ term for a ramphoid cusp.
pub fn classify_cusp(curve: &PolyCurve, t0: f64, cfg: &DetectConfig) -> Result<CuspKind, DetectError> {
    let k = cfg.jet_order.max(8);
    let jc = monge_taylor(curve, &t0, k);
    let (a2, b2) = (jc.ai(2), jc.bi(2));
    let n2 = a2 * a2 + b2 * b2;
    if n2.sqrt() <= cfg.singular_tol * curve.scale() {
        return Err(DetectError::UnsupportedSingularity { t: t0 });
    }
    let xs: Vec<f64> = (0..=k).map(|i| if i < 2 { 0.0 } else { (a2 * jc.ai(i) + b2 * jc.bi(i)) / n2 }).collect();
    let ys: Vec<f64> = (0..=k).map(|i| if i < 2 { 0.0 } else { (a2 * jc.bi(i) - b2 * jc.ai(i)) / n2 }).collect();
    // X/h² = 1 + (X3/X2) h + ...  ⇒  σ = h·sqrt(X/h²)
    let ratio = Jet::new((0..=k).map(|i| xs.get(i + 2).copied().unwrap_or(0.0)).collect());
    let sqrt = ratio.sqrt().map_err(MinkError::from)?;
    let mut sigma = vec![0.0; k + 1];
    for i in 1..=k {
        sigma[i] = sqrt.coeff(i - 1);
    }
    let h_of_sigma = Jet::new(sigma).revert().map_err(MinkError::from)?;
    let y = Jet::new(ys).compose(&h_of_sigma).map_err(MinkError::from)?;
    let lightlike = causal_character(crate::mink::Vec2::new(a2, b2), cfg.lightlike_tol)
        .map(|c| c.kind == CausalKind::Lightlike)
        .unwrap_or(false);
    let odd = (3..=k).step_by(2).find(|&i| {
        let later = (i + 1..=k).fold(0.0f64, |m, j| m.max(y.coeff(j).abs()));
        y.coeff(i).abs() > cfg.order_threshold * later.max(1.0)
    });
    let y4 = y.coeff(4).abs() > cfg.order_threshold * (5..=k).fold(1.0f64, |m, j| m.max(y.coeff(j).abs()));
    Ok(match (odd, lightlike) {
        (Some(3), false) => CuspKind::Ordinary,
        (Some(3), true) => CuspKind::LightlikeOrdinary,
        (Some(5), false) if y4 => CuspKind::Ramphoid,
        _ => CuspKind::Other,
    })
}

fn vertex_direction(curve: &PolyCurve, t0: f64, order: usize, cfg: &DetectConfig) -> VertexDirection {
    if order % 2 == 0 {
        return VertexDirection::Undefined;
    }
    let Ok(kappa) = curvature_jet(curve, t0, (order + 1).max(2).min(cfg.jet_order.max(order + 1))) else {
        return VertexDirection::Undefined;
    };
    let (k0, kn) = (kappa.coeff(0), kappa.coeff(order + 1));
    if k0 == 0.0 || kn == 0.0 || !k0.is_finite() || !kn.is_finite() {
        return VertexDirection::Undefined;
    }
    if k0 * kn > 0.0 {
        VertexDirection::Inward
    } else {
        VertexDirection::Outward
    }
}

struct Candidate {
    t: f64,
    touching: bool,
}

fn candidates(p: &Poly, a: f64, b: f64) -> Vec<Candidate> {
    poly_real_roots(p, a, b)
        .into_iter()
        .map(|r| Candidate { t: r.t, touching: r.touching })
        .collect()
}

/// Parameters in [a, b] where γ′ vanishes.
pub fn singular_points(curve: &PolyCurve, a: f64, b: f64, cfg: &DetectConfig) -> Vec<f64> {
    let (xp, yp) = (curve.x.derivative(), curve.y.derivative());
    let tol = cfg.singular_tol * curve.scale();
    // roots of whichever derivative has lower degree, checked against the other
    let (first, other) = match (xp.degree(), yp.degree()) {
        (None, _) => (&yp, &xp),
        (_, None) => (&xp, &yp),
        (Some(dx), Some(dy)) if dx <= dy => (&xp, &yp),
        _ => (&yp, &xp),
    };
    let mut out: Vec<f64> = poly_real_roots(first, a, b)
        .into_iter()
        .map(|r| r.t)
        .filter(|&t| other.evalf(t).abs() <= tol && first.evalf(t).abs() <= tol)
        .collect();
    out.dedup_by(|x, y| (*x - *y).abs() <= cfg.merge_radius);
    out
}

/// Locate and classify every special point of the curve on [a, b].
pub fn find_special_points(curve: &PolyCurve, a: f64, b: f64, cfg: &DetectConfig) -> Result<Census, DetectError> {
    if !(a < b) {
        return Err(DetectError::BadInterval(a, b));
    }
    let d = curve.lightlike_poly();
    let p = curve.curvature_numerator_poly();
    let w = curve.vertex_numerator_poly();
    let rho = 0.5 * (b - a);
    let r = cfg.merge_radius;
    let near = |t: f64, list: &[f64]| list.iter().any(|s| (s - t).abs() <= r);

    let sing = singular_points(curve, a, b, cfg);
    let light: Vec<Candidate> = candidates(&d, a, b).into_iter().filter(|c| !near(c.t, &sing)).collect();
    let light_t: Vec<f64> = light.iter().map(|c| c.t).collect();
    let infl: Vec<Candidate> = candidates(&p, a, b).into_iter().filter(|c| !near(c.t, &sing)).collect();
    let infl_t: Vec<f64> = infl.iter().map(|c| c.t).collect();
    let vert: Vec<Candidate> = candidates(&w, a, b)
        .into_iter()
        .filter(|c| !near(c.t, &sing) && !near(c.t, &light_t) && !near(c.t, &infl_t))
        .collect();

    let residuals = |t: f64| Residuals {
        lightlike: d.evalf(t),
        inflection: p.evalf(t),
        vertex: w.evalf(t),
    };
    let order_at = |poly: &Poly, t: f64| zero_order(&poly.jet(&t, cfg.jet_order), 1, cfg.order_threshold, rho);
    let mut points = Vec::new();

    for &t in &sing {
        let kind = classify_cusp(curve, t, cfg)?;
        let conc = Concentrated {
            inflections: order_at(&p, t).0 as u32 * (p.evalf(t).abs() <= 1e-9 * p.magnitude_at(t).max(1e-300)) as u32,
            vertices: order_at(&w, t).0 as u32 * (w.evalf(t).abs() <= 1e-9 * w.magnitude_at(t).max(1e-300)) as u32,
            lightlike: order_at(&d, t).0 as u32,
        };
        points.push(SpecialPoint {
            t,
            kind: PointKind::Cusp { kind },
            residuals: residuals(t),
            order_capped: false,
            concentrated: Some(conc),
        });
    }

    for c in &light {
        if let Some(ic) = infl.iter().find(|i| (i.t - c.t).abs() <= r) {
            let t = 0.5 * (c.t + ic.t);
            let (a_k, capped) = contact_order_with_tangent(curve, t, cfg)?;
            let k = a_k.saturating_sub(1).max(1);
            let swallowed = candidates(&w, a, b).iter().filter(|v| (v.t - t).abs() <= r).count() as u32;
            let vorder = if swallowed > 0 { order_at(&w, t).0 as u32 } else { 0 };
            points.push(SpecialPoint {
                t,
                kind: PointKind::LightlikeInflection { order: k },
                residuals: residuals(t),
                order_capped: capped,
                concentrated: Some(Concentrated { inflections: 0, vertices: vorder, lightlike: 0 }),
            });
        } else {
            points.push(SpecialPoint {
                t: c.t,
                kind: PointKind::Lightlike,
                residuals: residuals(c.t),
                order_capped: false,
                concentrated: None,
            });
        }
    }

    for c in infl.iter().filter(|c| !near(c.t, &light_t)) {
        let (jo, capped) = order_at(&p, c.t);
        let order = if c.touching { jo.max(2) } else { 1 };
        let swallowed = candidates(&w, a, b).iter().any(|v| (v.t - c.t).abs() <= r);
        points.push(SpecialPoint {
            t: c.t,
            kind: PointKind::Inflection { order: order as u32 },
            residuals: residuals(c.t),
            order_capped: capped && c.touching,
            concentrated: swallowed.then(|| Concentrated {
                inflections: 0,
                vertices: order_at(&w, c.t).0 as u32,
                lightlike: 0,
            }),
        });
    }

    for c in &vert {
        let (jo, capped) = order_at(&w, c.t);
        let order = if c.touching { jo.max(2) } else { 1 };
        points.push(SpecialPoint {
            t: c.t,
            kind: PointKind::Vertex {
                order: order as u32,
                direction: vertex_direction(curve, c.t, order, cfg),
            },
            residuals: residuals(c.t),
            order_capped: capped && c.touching,
            concentrated: None,
        });
    }

    points.sort_by(|x, y| x.t.total_cmp(&y.t));
    Ok(Census {
        interval: (a, b),
        points,
        self_intersections: Vec::new(),
    })
}
