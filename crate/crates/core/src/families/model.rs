//! Deformation families γ_s(t) with coefficients polynomial in (s1, s2).

use crate::curve::PolyCurve;
use crate::poly::Poly;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FamilyError {
    #[error("unknown model family {0:?}; expected one of I2, I3, LI, LI2, C, LC, RC, V2")]
    UnknownModel(String),
    #[error("family has arity {arity} but {given} parameters were given")]
    Arity { arity: usize, given: usize },
    #[error("family arity must be 1 or 2, got {0}")]
    BadArity(usize),
}

/// One monomial c·t^i·s1^j·s2^k.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Term {
    pub t: u32,
    #[serde(default)]
    pub s1: u32,
    #[serde(default)]
    pub s2: u32,
    pub c: f64,
}

/// Polynomial in (t, s1, s2).
#[derive(Clone, Debug, PartialEq, Default, Serialize, Deserialize)]
#[serde(from = "Vec<Term>", into = "Vec<Term>")]
pub struct MultiPoly {
    terms: BTreeMap<(u32, u32, u32), f64>,
}

impl From<Vec<Term>> for MultiPoly {
    fn from(v: Vec<Term>) -> Self {
        let mut p = MultiPoly::zero();
        for t in v {
            p.add_term((t.t, t.s1, t.s2), t.c);
        }
        p
    }
}

impl From<MultiPoly> for Vec<Term> {
    fn from(p: MultiPoly) -> Self {
        p.terms
            .into_iter()
            .map(|((t, s1, s2), c)| Term { t, s1, s2, c })
            .collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Var {
    T,
    S1,
    S2,
}

impl MultiPoly {
    pub fn zero() -> Self {
        MultiPoly::default()
    }

    pub fn constant(c: f64) -> Self {
        let mut p = MultiPoly::zero();
        p.add_term((0, 0, 0), c);
        p
    }

    pub fn var(v: Var) -> Self {
        let mut p = MultiPoly::zero();
        let key = match v {
            Var::T => (1, 0, 0),
            Var::S1 => (0, 1, 0),
            Var::S2 => (0, 0, 1),
        };
        p.add_term(key, 1.0);
        p
    }

    /// Polynomial in t alone from ascending coefficients.
    pub fn from_t(coeffs: &[f64]) -> Self {
        let mut p = MultiPoly::zero();
        for (i, &c) in coeffs.iter().enumerate() {
            p.add_term((i as u32, 0, 0), c);
        }
        p
    }

    fn add_term(&mut self, key: (u32, u32, u32), c: f64) {
        if c == 0.0 {
            return;
        }
        let e = self.terms.entry(key).or_insert(0.0);
        *e += c;
        if *e == 0.0 {
            self.terms.remove(&key);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = ((u32, u32, u32), f64)> + '_ {
        self.terms.iter().map(|(k, v)| (*k, *v))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut p = self.clone();
        for (k, c) in o.terms() {
            p.add_term(k, c);
        }
        p
    }

    pub fn scale(&self, k: f64) -> Self {
        let mut p = MultiPoly::zero();
        for (key, c) in self.terms() {
            p.add_term(key, c * k);
        }
        p
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(-1.0))
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut p = MultiPoly::zero();
        for ((a, b, c), x) in self.terms() {
            for ((d, e, f), y) in o.terms() {
                p.add_term((a + d, b + e, c + f), x * y);
            }
        }
        p
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(MultiPoly::constant(1.0), |acc, _| acc.mul(self))
    }

    /// Highest power of s1 and of s2 present.
    pub fn uses_params(&self) -> (bool, bool) {
        let s1 = self.terms.keys().any(|k| k.1 > 0);
        let s2 = self.terms.keys().any(|k| k.2 > 0);
        (s1, s2)
    }

    pub fn specialize(&self, s1: f64, s2: f64) -> Poly {
        let deg = self.terms.keys().map(|k| k.0).max().unwrap_or(0) as usize;
        let mut c = vec![0.0; deg + 1];
        for ((i, j, k), v) in self.terms() {
            c[i as usize] += v * s1.powi(j as i32) * s2.powi(k as i32);
        }
        Poly::new(c)
    }

    /// ∂/∂s_i of the coefficient of t^n at s = 0.
    pub fn coeff_param_derivative(&self, n: u32, param: Var) -> f64 {
        let key = match param {
            Var::S1 => (n, 1, 0),
            Var::S2 => (n, 0, 1),
            Var::T => (n + 1, 0, 0),
        };
        self.terms.get(&key).copied().unwrap_or(0.0)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ParamFamily {
    pub name: String,
    /// Number of deformation parameters, 1 or 2.
    pub arity: usize,
    pub x: MultiPoly,
    pub y: MultiPoly,
    /// Parameter window the special points are looked for in.
    pub window: (f64, f64),
}

impl ParamFamily {
    pub fn new(name: impl Into<String>, x: MultiPoly, y: MultiPoly, window: (f64, f64)) -> Result<Self, FamilyError> {
        let (a1, a2) = x.uses_params();
        let (b1, b2) = y.uses_params();
        let arity = if a2 || b2 { 2 } else if a1 || b1 { 1 } else { 0 };
        if arity == 0 {
            return Err(FamilyError::BadArity(0));
        }
        Ok(ParamFamily {
            name: name.into(),
            arity,
            x,
            y,
            window,
        })
    }

    /// The member at s; a 1-parameter family ignores s2.
    pub fn curve(&self, s1: f64, s2: f64) -> PolyCurve {
        let s2 = if self.arity == 1 { 0.0 } else { s2 };
        PolyCurve::new(self.x.specialize(s1, s2), self.y.specialize(s1, s2)).with_label(self.name.clone())
    }

    pub fn curve_at(&self, s: &[f64]) -> Result<PolyCurve, FamilyError> {
        if s.len() != self.arity {
            return Err(FamilyError::Arity {
                arity: self.arity,
                given: s.len(),
            });
        }
        Ok(self.curve(s[0], s.get(1).copied().unwrap_or(0.0)))
    }
}

pub const MODEL_NAMES: [&str; 8] = ["I2", "I3", "LI", "LI2", "C", "LC", "RC", "V2"];

/// The seven models that come with a parameter-plane picture.
pub const SWEEP_MODELS: [&str; 7] = ["I2", "I3", "LI", "LI2", "C", "LC", "RC"];

/// Built-in model families.
///
/// Each window is wide enough to hold every special point that stays near
/// the degenerate one for |s| ≤ 0.05, and no wider, so that far-away points
/// do not cross the window edge inside the sweep region.
pub fn model_family(name: &str) -> Result<ParamFamily, FamilyError> {
    let t = || MultiPoly::var(Var::T);
    let s1 = || MultiPoly::var(Var::S1);
    let s2 = || MultiPoly::var(Var::S2);
    let c = MultiPoly::constant;
    let graph = |y: MultiPoly, w: f64| ParamFamily::new(name, t(), y, (-w, w));
    let cusp = |y: MultiPoly, w: f64| ParamFamily::new(name, t().pow(2), y, (-w, w));
    match name {
        // (t, t⁴ + s1 t²)
        "I2" => graph(t().pow(4).add(&s1().mul(&t().pow(2))), 0.5),
        // (t, t⁵ + s1 t² + s2 t³)
        "I3" => graph(t().pow(5).add(&s1().mul(&t().pow(2))).add(&s2().mul(&t().pow(3))), 0.5),
        // (t, (1 + s1) t + t³)
        "LI" => graph(c(1.0).add(&s1()).mul(&t()).add(&t().pow(3)), 0.3),
        // (t, (1 + s1) t + s2 t² + t⁴)
        "LI2" => graph(c(1.0).add(&s1()).mul(&t()).add(&s2().mul(&t().pow(2))).add(&t().pow(4)), 0.4),
        // (t², s1 t + t³)
        "C" => cusp(s1().mul(&t()).add(&t().pow(3)), 0.45),
        // (t², s1 t + (1 + s2) t² + t³)
        "LC" => cusp(s1().mul(&t()).add(&c(1.0).add(&s2()).mul(&t().pow(2))).add(&t().pow(3)), 0.5),
        // (t², s2 t + s1 t³ + t⁴ + t⁵ + t⁶)
        "RC" => cusp(
            s2().mul(&t()).add(&s1().mul(&t().pow(3))).add(&t().pow(4)).add(&t().pow(5)).add(&t().pow(6)),
            0.6,
        ),
        // (t, t²/2 + s1 t³ − t⁴/8 + t⁵): a vertex of order two at t = 0, s = 0
        "V2" => graph(
            t().pow(2).scale(0.5).add(&s1().mul(&t().pow(3))).sub(&t().pow(4).scale(0.125)).add(&t().pow(5)),
            0.25,
        ),
        _ => Err(FamilyError::UnknownModel(name.to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn models_specialize() {
        let f = model_family("LC").unwrap();
        assert_eq!(f.arity, 2);
        let c = f.curve(0.1, 0.2);
        assert_eq!(c.x.coeffs(), &[0.0, 0.0, 1.0]);
        assert_eq!(c.y.coeffs(), &[0.0, 0.1, 1.2, 1.0]);
        let f = model_family("I2").unwrap();
        assert_eq!(f.arity, 1);
        assert_eq!(f.curve(-0.01, 0.0).y.coeffs(), &[0.0, 0.0, -0.01, 0.0, 1.0]);
        assert!(matches!(f.curve_at(&[0.0, 0.0]), Err(FamilyError::Arity { .. })));
        assert!(model_family("Q").is_err());
        for n in MODEL_NAMES {
            model_family(n).unwrap();
        }
    }

    #[test]
    fn vertex_of_order_two_model() {
        let c = model_family("V2").unwrap().curve(0.0, 0.0);
        let w = c.vertex_numerator_poly();
        assert_eq!(w.evalf(0.0), 0.0);
        assert_eq!(w.derivative().evalf(0.0), 0.0);
        assert!(w.derivative().derivative().evalf(0.0).abs() > 1.0);
        assert!(c.curvature_numerator_poly().evalf(0.0) != 0.0);
    }

    #[test]
    fn json_round_trip() {
        let f = model_family("RC").unwrap();
        let s = serde_json::to_string(&f).unwrap();
        let g: ParamFamily = serde_json::from_str(&s).unwrap();
        assert_eq!(f, g);
    }
}
