//! JSON input documents: single curves and deformation families.

use crate::expr::{parse_expr, ParseError};
use minkowski_curves::curve::PolyCurve;
use minkowski_curves::families::model::{model_family, FamilyError, ParamFamily};
use minkowski_curves::multilocal::CensusConfig;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum SpecError {
    #[error("in {field}")]
    Parse {
        field: &'static str,
        #[source]
        source: ParseError,
    },
    #[error(transparent)]
    Family(#[from] FamilyError),
    #[error("give either x and y expressions or a model name")]
    Shape,
    #[error("window must satisfy tmin < tmax, got [{0}, {1}]")]
    Window(f64, f64),
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Params {
    pub s1: f64,
    pub s2: f64,
}

/// Overrides for the detection tolerances.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Tolerances {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lightlike: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub singular: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub merge_radius: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub order_threshold: Option<f64>,
}

impl Tolerances {
    pub fn apply(&self, cfg: &mut CensusConfig) {
        if let Some(v) = self.lightlike {
            cfg.detect.lightlike_tol = v;
        }
        if let Some(v) = self.singular {
            cfg.detect.singular_tol = v;
        }
        if let Some(v) = self.merge_radius {
            cfg.detect.merge_radius = v;
        }
        if let Some(v) = self.order_threshold {
            cfg.detect.order_threshold = v;
        }
    }
}

/// A curve given by expressions, or a member of a built-in model.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurveSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub x: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub y: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub model: Option<String>,
    #[serde(default)]
    pub params: Params,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub window: Option<[f64; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub jet_order: Option<usize>,
    #[serde(default)]
    pub tolerances: Tolerances,
}

/// A curve ready for analysis.
pub struct Resolved {
    pub curve: PolyCurve,
    pub window: (f64, f64),
}

/// Window used for expression curves when none is given.
pub const DEFAULT_WINDOW: (f64, f64) = (-1.0, 1.0);

impl CurveSpec {
    pub fn resolve(&self) -> Result<Resolved, SpecError> {
        let (curve, default_window) = match (&self.x, &self.y, &self.model) {
            (Some(x), Some(y), None) => {
                let fx = parse_expr(x).map_err(|source| SpecError::Parse { field: "x", source })?;
                let fy = parse_expr(y).map_err(|source| SpecError::Parse { field: "y", source })?;
                let (s1, s2) = (self.params.s1, self.params.s2);
                let c = PolyCurve::new(fx.specialize(s1, s2), fy.specialize(s1, s2));
                (c, DEFAULT_WINDOW)
            }
            (None, None, Some(m)) => {
                let f = model_family(m)?;
                (f.curve(self.params.s1, self.params.s2), f.window)
            }
            _ => return Err(SpecError::Shape),
        };
        let window = match self.window {
            Some([a, b]) if a < b => (a, b),
            Some([a, b]) => return Err(SpecError::Window(a, b)),
            None => default_window,
        };
        Ok(Resolved { curve, window })
    }

    pub fn census_config(&self, base: &CensusConfig) -> CensusConfig {
        let mut cfg = *base;
        if let Some(k) = self.jet_order {
            cfg.detect.jet_order = k;
        }
        self.tolerances.apply(&mut cfg);
        cfg
    }
}

/// A deformation family: a built-in name or expressions in t, s1, s2.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilySpec {
    #[serde(default)]
    pub name: Option<String>,
    #[serde(default)]
    pub model: Option<String>,
    #[serde(default)]
    pub x: Option<String>,
    #[serde(default)]
    pub y: Option<String>,
    #[serde(default)]
    pub window: Option<[f64; 2]>,
}

impl FamilySpec {
    pub fn resolve(&self) -> Result<ParamFamily, SpecError> {
        let mut fam = match (&self.x, &self.y, &self.model) {
            (Some(x), Some(y), None) => {
                let fx = parse_expr(x).map_err(|source| SpecError::Parse { field: "x", source })?;
                let fy = parse_expr(y).map_err(|source| SpecError::Parse { field: "y", source })?;
                let w = self.window.map_or(DEFAULT_WINDOW, |[a, b]| (a, b));
                ParamFamily::new(self.name.clone().unwrap_or_else(|| "custom".into()), fx, fy, w)?
            }
            (None, None, Some(m)) => model_family(m)?,
            _ => return Err(SpecError::Shape),
        };
        if let Some([a, b]) = self.window {
            if a >= b {
                return Err(SpecError::Window(a, b));
            }
            fam.window = (a, b);
        }
        Ok(fam)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn expression_and_model_specs_agree() {
        let a: CurveSpec = serde_json::from_str(r#"{"x": "t", "y": "t^4 + s1*t^2", "params": {"s1": -0.01}}"#).unwrap();
        let b: CurveSpec = serde_json::from_str(r#"{"model": "I2", "params": {"s1": -0.01}}"#).unwrap();
        let (ra, rb) = (a.resolve().unwrap(), b.resolve().unwrap());
        for t in [-0.3, 0.1, 0.7] {
            assert_eq!(ra.curve.point(t), rb.curve.point(t));
        }
        assert_eq!(ra.window, DEFAULT_WINDOW);
    }

    #[test]
    fn rejects_mixed_and_bad_specs() {
        let mixed: CurveSpec = serde_json::from_str(r#"{"x": "t", "y": "t^2", "model": "I2"}"#).unwrap();
        assert!(matches!(mixed.resolve(), Err(SpecError::Shape)));
        let bad: CurveSpec = serde_json::from_str(r#"{"x": "t", "y": "t^^2"}"#).unwrap();
        match bad.resolve() {
            Err(SpecError::Parse { field: "y", source }) => assert_eq!(source.offset, 2),
            _ => panic!("expected a parse error"),
        }
        assert!(serde_json::from_str::<CurveSpec>(r#"{"x": "t", "z": "t"}"#).is_err());
        let w: CurveSpec = serde_json::from_str(r#"{"model": "LI", "window": [1, 0]}"#).unwrap();
        assert!(matches!(w.resolve(), Err(SpecError::Window(..))));
    }

    #[test]
    fn custom_family_from_expressions() {
        let f: FamilySpec = serde_json::from_str(r#"{"name": "mine", "x": "t", "y": "t^4 + s1*t^2", "window": [-0.5, 0.5]}"#).unwrap();
        let fam = f.resolve().unwrap();
        assert_eq!(fam.arity, 1);
        assert_eq!(fam.x, model_family("I2").unwrap().x);
    }
}
