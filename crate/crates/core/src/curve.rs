//! Polynomial plane curves γ(t) = (x(t), y(t)).

use crate::jet::Jet;
use crate::mink::Vec2;
use crate::poly::Poly;
use crate::scalar::Scalar;
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PolyCurve<T = f64> {
    pub x: Poly<T>,
    pub y: Poly<T>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

impl<T: Scalar> PolyCurve<T> {
    pub fn new(x: Poly<T>, y: Poly<T>) -> Self {
        PolyCurve { x, y, label: None }
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    /// The graph t ↦ (t, f(t)).
    pub fn graph(f: Poly<T>) -> Self {
        PolyCurve::new(Poly::new(vec![T::zero(), T::one()]), f)
    }

    /// False when both components are constant.
    pub fn is_valid(&self) -> bool {
        self.x.degree().unwrap_or(0) > 0 || self.y.degree().unwrap_or(0) > 0
    }

    pub fn jets(&self, t0: &T, k: usize) -> (Jet<T>, Jet<T>) {
        (self.x.jet(t0, k), self.y.jet(t0, k))
    }

    /// ⟨γ′,γ′⟩ = −x′² + y′², zero exactly at lightlike points.
    pub fn lightlike_poly(&self) -> Poly<T> {
        let (xp, yp) = (self.x.derivative(), self.y.derivative());
        yp.mul(&yp).sub(&xp.mul(&xp))
    }

    /// ⟨γ″,γ′^⊥⟩ = x′y″ − y′x″, the numerator of κ.
    pub fn curvature_numerator_poly(&self) -> Poly<T> {
        let (xp, yp) = (self.x.derivative(), self.y.derivative());
        let (xpp, ypp) = (xp.derivative(), yp.derivative());
        xp.mul(&ypp).sub(&yp.mul(&xpp))
    }

    /// W = (3/2)·P·D′ − P′·D with P the κ-numerator and D = ⟨γ′,γ′⟩.
    ///
    /// κ′ = −sign(D)·W/|D|^{5/2}, so W is a polynomial whose zeros are the
    /// vertices, well defined through lightlike and singular points.
    pub fn vertex_numerator_poly(&self) -> Poly<T> {
        let d = self.lightlike_poly();
        let p = self.curvature_numerator_poly();
        let three_halves = T::from_ratio(3, 2);
        p.mul(&d.derivative())
            .scale(&three_halves)
            .sub(&p.derivative().mul(&d))
    }

    /// The isometry (x, y) ↦ (y, x), which swaps timelike and spacelike.
    pub fn swap_xy(&self) -> Self {
        PolyCurve {
            x: self.y.clone(),
            y: self.x.clone(),
            label: self.label.clone(),
        }
    }

    /// The isometry (x, y) ↦ (−x, y).
    pub fn reflect_x(&self) -> Self {
        PolyCurve {
            x: self.x.scale(&-T::one()),
            y: self.y.clone(),
            label: self.label.clone(),
        }
    }

    /// t ↦ −t.
    pub fn reverse(&self) -> Self {
        PolyCurve {
            x: self.x.reflect(),
            y: self.y.reflect(),
            label: self.label.clone(),
        }
    }
}

impl PolyCurve<f64> {
    pub fn from_coeffs(x: &[f64], y: &[f64]) -> Self {
        PolyCurve::new(Poly::from_f64(x), Poly::from_f64(y))
    }

    pub fn point(&self, t: f64) -> Vec2 {
        Vec2::new(self.x.evalf(t), self.y.evalf(t))
    }

    pub fn velocity(&self, t: f64) -> Vec2 {
        Vec2::new(self.x.derivative().evalf(t), self.y.derivative().evalf(t))
    }

    pub fn acceleration(&self, t: f64) -> Vec2 {
        let (x2, y2) = (self.x.derivative().derivative(), self.y.derivative().derivative());
        Vec2::new(x2.evalf(t), y2.evalf(t))
    }

    /// Size of the coefficients, used to scale tolerances.
    pub fn scale(&self) -> f64 {
        self.x.max_abs_coeff().max(self.y.max_abs_coeff()).max(1e-300)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn derived_polynomials() {
        // (t², t³): D = −4t² + 9t⁴, P = 6t², W = 1.5·6t²(−8t + 36t³) − 12t(−4t² + 9t⁴)
        let c = PolyCurve::from_coeffs(&[0.0, 0.0, 1.0], &[0.0, 0.0, 0.0, 1.0]);
        assert_eq!(c.lightlike_poly().coeffs(), &[0.0, 0.0, -4.0, 0.0, 9.0]);
        assert_eq!(c.curvature_numerator_poly().coeffs(), &[0.0, 0.0, 6.0]);
        let w = c.vertex_numerator_poly();
        assert_eq!(w.coeffs(), &[0.0, 0.0, 0.0, -24.0, 0.0, 216.0]);
    }

    #[test]
    fn graph_vertex_numerator_is_six_times_g() {
        // for graphs W = f‴(1 − f′²) + 3f′f″² up to the factor 1 (x′ = 1)
        let f = Poly::from_f64(&[0.0, 0.3, 0.5, 0.2, -0.7]);
        let c = PolyCurve::graph(f.clone());
        let w = c.vertex_numerator_poly();
        let (f1, f2, f3) = (f.derivative(), f.derivative().derivative(), f.derivative().derivative().derivative());
        for &t in &[-0.4, 0.0, 0.3, 0.9] {
            let g = f3.evalf(t) * (1.0 - f1.evalf(t).powi(2)) + 3.0 * f1.evalf(t) * f2.evalf(t).powi(2);
            assert!((w.evalf(t) - g).abs() < 1e-12 * (1.0 + g.abs()));
        }
    }

    #[test]
    fn isometries() {
        let c = PolyCurve::from_coeffs(&[0.0, 1.0], &[0.0, 0.0, 1.0]);
        assert_eq!(c.swap_xy().x.coeffs(), &[0.0, 0.0, 1.0]);
        assert_eq!(c.reflect_x().x.coeffs(), &[0.0, -1.0]);
        assert_eq!(c.reverse().x.coeffs(), &[0.0, -1.0]);
        assert_eq!(c.reverse().y.coeffs(), &[0.0, 0.0, 1.0]);
    }
}
