//! The Minkowski plane: pseudo scalar product, causal character, frames,
//! curvature and its numerators, Monge–Taylor coordinates.

use crate::curve::PolyCurve;
use crate::jet::{Jet, JetError};
use crate::scalar::Scalar;
use serde::{Deserialize, Serialize};
use std::ops::{Add, Mul, Neg, Sub};
use thiserror::Error;

/// Default band for calling a vector lightlike, relative to ‖u‖².
pub const LIGHTLIKE_TOL: f64 = 1e-9;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MinkError {
    #[error("zero vector has no causal character")]
    ZeroVector,
    #[error("curve is lightlike at t = {t}")]
    Lightlike { t: f64 },
    #[error("curve is singular at t = {t}")]
    Singular { t: f64 },
    #[error("curvature vanishes at t = {t}")]
    ZeroCurvature { t: f64 },
    #[error("bi-jet needs two distinct parameters")]
    CoincidentParameters,
    #[error(transparent)]
    Jet(#[from] JetError),
}

#[derive(Clone, Copy, Debug, PartialEq, Default, Serialize, Deserialize)]
pub struct Vec2 {
    pub x: f64,
    pub y: f64,
}

impl Vec2 {
    pub const fn new(x: f64, y: f64) -> Self {
        Vec2 { x, y }
    }

    pub fn norm2(self) -> f64 {
        self.x * self.x + self.y * self.y
    }

    pub fn norm(self) -> f64 {
        self.norm2().sqrt()
    }

    pub fn cross(self, o: Vec2) -> f64 {
        self.x * o.y - self.y * o.x
    }

    pub fn dot(self, o: Vec2) -> f64 {
        self.x * o.x + self.y * o.y
    }
}

impl Add for Vec2 {
    type Output = Vec2;
    fn add(self, o: Vec2) -> Vec2 {
        Vec2::new(self.x + o.x, self.y + o.y)
    }
}

impl Sub for Vec2 {
    type Output = Vec2;
    fn sub(self, o: Vec2) -> Vec2 {
        Vec2::new(self.x - o.x, self.y - o.y)
    }
}

impl Mul<Vec2> for f64 {
    type Output = Vec2;
    fn mul(self, v: Vec2) -> Vec2 {
        Vec2::new(self * v.x, self * v.y)
    }
}

impl Neg for Vec2 {
    type Output = Vec2;
    fn neg(self) -> Vec2 {
        Vec2::new(-self.x, -self.y)
    }
}

/// ⟨u,v⟩ = −u1v1 + u2v2.
pub fn minkowski_dot(u: Vec2, v: Vec2) -> f64 {
    -u.x * v.x + u.y * v.y
}

/// (u1,u2) ↦ (u2,u1); always pseudo-orthogonal to u.
pub fn perp(u: Vec2) -> Vec2 {
    Vec2::new(u.y, u.x)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum CausalKind {
    Spacelike,
    Timelike,
    Lightlike,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CausalCharacter {
    pub kind: CausalKind,
    /// ⟨u,u⟩
    pub residual: f64,
}

pub fn causal_character(u: Vec2, tol: f64) -> Result<CausalCharacter, MinkError> {
    let n2 = u.norm2();
    if n2 == 0.0 {
        return Err(MinkError::ZeroVector);
    }
    let q = minkowski_dot(u, u);
    let kind = if q.abs() <= tol * n2 {
        CausalKind::Lightlike
    } else if q > 0.0 {
        CausalKind::Spacelike
    } else {
        CausalKind::Timelike
    };
    Ok(CausalCharacter { kind, residual: q })
}

/// Unit normal N = ±γ′^⊥/‖γ′‖, + on timelike and − on spacelike stretches.
pub fn normal(curve: &PolyCurve, t: f64) -> Result<Vec2, MinkError> {
    let v = curve.velocity(t);
    if v.norm2() == 0.0 {
        return Err(MinkError::Singular { t });
    }
    let c = causal_character(v, LIGHTLIKE_TOL)?;
    let len = c.residual.abs().sqrt();
    match c.kind {
        CausalKind::Lightlike => Err(MinkError::Lightlike { t }),
        CausalKind::Timelike => Ok((1.0 / len) * perp(v)),
        CausalKind::Spacelike => Ok((-1.0 / len) * perp(v)),
    }
}

/// Jet of ⟨γ″,γ′^⊥⟩; defined everywhere.
pub fn curvature_numerator_jet<T: Scalar>(curve: &PolyCurve<T>, t0: &T, k: usize) -> Jet<T> {
    curve.curvature_numerator_poly().jet(t0, k)
}

/// Jet of W, the κ′ numerator: κ′ = −sign⟨γ′,γ′⟩·W/|⟨γ′,γ′⟩|^{5/2}.
pub fn vertex_numerator_jet<T: Scalar>(curve: &PolyCurve<T>, t0: &T, k: usize) -> Jet<T> {
    curve.vertex_numerator_poly().jet(t0, k)
}

/// Jet of κ = ⟨γ″,γ′^⊥⟩/|⟨γ′,γ′⟩|^{3/2}; fails at lightlike or singular t0.
pub fn curvature_jet(curve: &PolyCurve, t0: f64, k: usize) -> Result<Jet, MinkError> {
    let v = curve.velocity(t0);
    if v.norm2() == 0.0 {
        return Err(MinkError::Singular { t: t0 });
    }
    if causal_character(v, LIGHTLIKE_TOL)?.kind == CausalKind::Lightlike {
        return Err(MinkError::Lightlike { t: t0 });
    }
    let num = curvature_numerator_jet(curve, &t0, k);
    let den = curve.lightlike_poly().jet(&t0, k).abs_pow(1.5)?;
    Ok(num.div(&den)?)
}

/// Jet of g = f‴(1 − f′²) + 3f′f″² from the jet of f (order ≥ 3 + wanted order).
///
/// This is the numerator of κ′ for the graph (t, f(t)).
pub fn g_numerator_jet<T: Scalar>(f: &Jet<T>) -> Jet<T> {
    let f1 = f.derivative();
    let f2 = f1.derivative();
    let f3 = f2.derivative();
    let one = Jet::constant(T::one(), f1.order());
    let three = T::from_i64(3);
    let a = &f3 * &(&one - &(&f1 * &f1));
    let b = (&f1 * &(&f2 * &f2)).scale(&three);
    &a + &b
}

/// Monge–Taylor coordinates at a point: a_i = x^(i)/i!, b_i = y^(i)/i!.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct JetCoords<T = f64> {
    pub a0: T,
    pub b0: T,
    /// a_1..a_k
    pub a: Vec<T>,
    /// b_1..b_k
    pub b: Vec<T>,
}

impl<T: Scalar> JetCoords<T> {
    pub fn new(a: Vec<T>, b: Vec<T>) -> Self {
        assert_eq!(a.len(), b.len());
        JetCoords {
            a0: T::zero(),
            b0: T::zero(),
            a,
            b,
        }
    }

    pub fn order(&self) -> usize {
        self.a.len()
    }

    /// a_i for i ≥ 0.
    pub fn ai(&self, i: usize) -> T {
        if i == 0 {
            self.a0.clone()
        } else {
            self.a[i - 1].clone()
        }
    }

    pub fn bi(&self, i: usize) -> T {
        if i == 0 {
            self.b0.clone()
        } else {
            self.b[i - 1].clone()
        }
    }

    /// The component jets (x, y) these coordinates describe.
    pub fn to_jets(&self) -> (Jet<T>, Jet<T>) {
        let k = self.order();
        (
            Jet::new((0..=k).map(|i| self.ai(i)).collect()),
            Jet::new((0..=k).map(|i| self.bi(i)).collect()),
        )
    }
}

pub fn monge_taylor<T: Scalar>(curve: &PolyCurve<T>, t: &T, k: usize) -> JetCoords<T> {
    let (xj, yj) = curve.jets(t, k);
    JetCoords {
        a0: xj.coeff(0),
        b0: yj.coeff(0),
        a: (1..=k).map(|i| xj.coeff(i)).collect(),
        b: (1..=k).map(|i| yj.coeff(i)).collect(),
    }
}

pub fn bi_monge_taylor<T: Scalar>(
    curve: &PolyCurve<T>,
    t1: &T,
    t2: &T,
    k: usize,
) -> Result<(JetCoords<T>, JetCoords<T>), MinkError> {
    if t1 == t2 {
        return Err(MinkError::CoincidentParameters);
    }
    Ok((monge_taylor(curve, t1, k), monge_taylor(curve, t2, k)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Poly;
    use crate::scalar::rational;
    use num_rational::BigRational;
    use proptest::prelude::*;

    #[test]
    fn pseudo_scalar_product() {
        assert_eq!(minkowski_dot(Vec2::new(1.0, 0.0), Vec2::new(1.0, 0.0)), -1.0);
        assert_eq!(minkowski_dot(Vec2::new(1.0, 1.0), Vec2::new(1.0, 1.0)), 0.0);
        assert_eq!(minkowski_dot(Vec2::new(0.0, 2.0), Vec2::new(0.0, 3.0)), 6.0);
        assert_eq!(perp(Vec2::new(1.0, 0.0)), Vec2::new(0.0, 1.0));
        assert_eq!(perp(Vec2::new(1.0, 1.0)), Vec2::new(1.0, 1.0));
        assert_eq!(perp(Vec2::new(3.0, -2.0)), Vec2::new(-2.0, 3.0));
    }

    #[test]
    fn causal_characters() {
        let k = |x, y| causal_character(Vec2::new(x, y), LIGHTLIKE_TOL).unwrap().kind;
        assert_eq!(k(1.0, 0.0), CausalKind::Timelike);
        assert_eq!(k(0.0, 1.0), CausalKind::Spacelike);
        assert_eq!(k(2.0, 2.0), CausalKind::Lightlike);
        assert_eq!(
            causal_character(Vec2::new(0.0, 0.0), LIGHTLIKE_TOL),
            Err(MinkError::ZeroVector)
        );
    }

    #[test]
    fn curvature_examples() {
        let parabola = PolyCurve::from_coeffs(&[0.0, 1.0], &[0.0, 0.0, 1.0]);
        let k = curvature_jet(&parabola, 0.0, 4).unwrap();
        assert!((k.value() - 2.0).abs() < 1e-15);

        // unit pseudo-circle (sinh t, cosh t) truncated at degree 9
        let mut sh = vec![0.0; 10];
        let mut ch = vec![0.0; 10];
        let mut fact = 1.0;
        for i in 0..10 {
            if i > 0 {
                fact *= i as f64;
            }
            if i % 2 == 1 {
                sh[i] = 1.0 / fact;
            } else {
                ch[i] = 1.0 / fact;
            }
        }
        let circle = PolyCurve::from_coeffs(&sh, &ch);
        let k = curvature_jet(&circle, 0.0, 6).unwrap();
        assert!((k.coeff(0) - 1.0).abs() < 1e-15);
        for i in 1..=6 {
            assert!(k.coeff(i).abs() < 1e-6, "coefficient {} = {}", i, k.coeff(i));
        }

        // κ of (t, t³) is 6t(1 − 9t⁴)^{−3/2}
        let cubic = PolyCurve::from_coeffs(&[0.0, 1.0], &[0.0, 0.0, 0.0, 1.0]);
        let k = curvature_jet(&cubic, 0.0, 5).unwrap();
        assert_eq!(k.coeffs(), &[0.0, 6.0, 0.0, 0.0, 0.0, 81.0]);
        assert!(matches!(
            curvature_jet(&PolyCurve::from_coeffs(&[0.0, 1.0], &[0.0, 1.0, 0.0, 1.0]), 0.0, 3),
            Err(MinkError::Lightlike { .. })
        ));
    }

    #[test]
    fn g_numerator_examples() {
        let k = 8;
        let g = |coeffs: &[f64]| g_numerator_jet(&Poly::from_f64(coeffs).jet(&0.0, k));
        assert_eq!(g(&[0.0, 0.0, 0.0, 1.0]).value(), 6.0);
        let li = g(&[0.0, 1.0, 0.0, 1.0]);
        assert_eq!(li.value(), 0.0);
        assert_eq!(li.derivative_value(1), 0.0);
        assert_eq!(li.derivative_value(2), 144.0);
        // exact variant
        let f: Poly<BigRational> = Poly::new(vec![rational(0, 1), rational(1, 1), rational(0, 1), rational(1, 1)]);
        let gj = g_numerator_jet(&f.jet(&rational(0, 1), k));
        assert_eq!(gj.derivative_value(2), rational(144, 1));
    }

    #[test]
    fn monge_taylor_examples() {
        let cusp = PolyCurve::from_coeffs(&[0.0, 0.0, 1.0], &[0.0, 0.0, 0.0, 1.0]);
        let jc = monge_taylor(&cusp, &0.0, 3);
        assert_eq!((jc.a.clone(), jc.b.clone()), (vec![0.0, 1.0, 0.0], vec![0.0, 0.0, 1.0]));
        let li = PolyCurve::from_coeffs(&[0.0, 1.0], &[0.0, 1.0, 0.0, 1.0]);
        let jc = monge_taylor(&li, &0.0, 3);
        assert_eq!((jc.a.clone(), jc.b.clone()), (vec![1.0, 0.0, 0.0], vec![1.0, 0.0, 1.0]));
        let c = PolyCurve::from_coeffs(&[0.0, 0.0, 1.0], &[0.0, 1.0, 0.0, 1.0]);
        let jc = monge_taylor(&c, &1.0, 1);
        assert_eq!((jc.a.clone(), jc.b.clone()), (vec![2.0], vec![4.0]));
        assert_eq!(bi_monge_taylor(&c, &0.5, &0.5, 2), Err(MinkError::CoincidentParameters));
    }

    #[test]
    fn normal_sign_convention() {
        let parabola = PolyCurve::from_coeffs(&[0.0, 1.0], &[0.0, 0.0, 1.0]);
        assert_eq!(normal(&parabola, 0.0).unwrap(), Vec2::new(0.0, 1.0));
        let spacelike = parabola.swap_xy();
        assert_eq!(normal(&spacelike, 0.0).unwrap(), Vec2::new(-1.0, 0.0));
    }

    fn random_curve() -> impl Strategy<Value = PolyCurve> {
        (
            prop::collection::vec(-1.0f64..1.0, 2..6),
            prop::collection::vec(-1.0f64..1.0, 2..6),
        )
            .prop_map(|(x, y)| PolyCurve::from_coeffs(&x, &y))
    }

    proptest! {
        #[test]
        fn perp_is_pseudo_orthogonal(x in -1e6f64..1e6, y in -1e6f64..1e6) {
            let u = Vec2::new(x, y);
            prop_assert_eq!(minkowski_dot(u, perp(u)), 0.0);
        }

        #[test]
        fn curvature_value_matches_numerator(c in random_curve(), t in -1.0f64..1.0) {
            let v = c.velocity(t);
            let q = minkowski_dot(v, v);
            prop_assume!(v.norm2() > 1e-6 && q.abs() > 1e-3 * v.norm2());
            let k = curvature_jet(&c, t, 3).unwrap();
            let num = curvature_numerator_jet(&c, &t, 3).value();
            let expect = num / q.abs().powf(1.5);
            prop_assert!((k.value() - expect).abs() <= 1e-10 * expect.abs().max(1e-300));
        }

        #[test]
        fn curvature_sign_survives_translation_of_parameter(c in random_curve(), t in -1.0f64..1.0, shift in -2.0f64..2.0) {
            let v = c.velocity(t);
            prop_assume!(v.norm2() > 1e-6 && minkowski_dot(v, v).abs() > 1e-3 * v.norm2());
            let k = curvature_jet(&c, t, 1).unwrap().value();
            prop_assume!(k.abs() > 1e-9);
            let shifted = PolyCurve::new(c.x.taylor_shift(&-shift), c.y.taylor_shift(&-shift));
            let ks = curvature_jet(&shifted, t + shift, 1).unwrap().value();
            prop_assert_eq!(k.signum(), ks.signum());
        }

        #[test]
        fn g_and_curvature_derivative_agree_in_sign(f in prop::collection::vec(-0.3f64..0.3, 2..7), t in -0.5f64..0.5) {
            let f = Poly::new(f);
            let c = PolyCurve::graph(f.clone());
            let fp = f.derivative().evalf(t);
            prop_assume!(fp.abs() < 0.9);
            let g = g_numerator_jet(&f.jet(&t, 6)).value();
            let dk = curvature_jet(&c, t, 3).unwrap().derivative_value(1);
            prop_assume!(g.abs() > 1e-9);
            prop_assert_eq!(g.signum(), dk.signum());
        }
    }
}
