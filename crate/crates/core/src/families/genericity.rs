//! Genericity conditions for deformations of cusps.
//!
//! With γ_s = (t², β_s(t)) and β_s(t) = Σ c̄_i(s) t^i, the conditions are read
//! off the coefficients of β directly.

use super::model::{MultiPoly, ParamFamily, Var};
use crate::detect::{classify_cusp, CuspKind, DetectConfig};
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Condition {
    pub name: String,
    /// None when the condition cannot be evaluated (e.g. too few parameters).
    pub value: Option<f64>,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GenericityReport {
    /// What the member at s = 0 has at t = 0.
    pub degenerate_point: String,
    pub conditions: Vec<Condition>,
    pub generic: bool,
}

fn cond(name: &str, value: Option<f64>) -> Condition {
    Condition {
        name: name.into(),
        pass: value.is_some_and(|v| v.abs() > 1e-12),
        value,
    }
}

fn in_cusp_normal_form(x: &MultiPoly) -> bool {
    let terms: Vec<_> = x.terms().collect();
    terms.len() == 1 && terms[0].0 == (2, 0, 0) && terms[0].1 == 1.0
}

fn d(y: &MultiPoly, n: u32, v: Var, arity: usize) -> Option<f64> {
    match v {
        Var::S2 if arity < 2 => None,
        _ => Some(y.coeff_param_derivative(n, v)),
    }
}

fn det(a: Option<f64>, b: Option<f64>, c: Option<f64>, e: Option<f64>) -> Option<f64> {
    Some(a? * e? - b? * c?)
}

/// Evaluate the conditions that apply to the family's degenerate member.
pub fn check_genericity(f: &ParamFamily) -> GenericityReport {
    let base = f.curve(0.0, 0.0);
    let cfg = DetectConfig::default();
    let kind = if base.velocity(0.0).norm() <= cfg.singular_tol * base.scale() {
        classify_cusp(&base, 0.0, &cfg).ok()
    } else {
        None
    };
    let y = &f.y;
    let mut conditions = Vec::new();
    let label = match kind {
        None => "regular".to_string(),
        Some(k) => format!("{k:?}"),
    };
    if let Some(k) = kind {
        if !in_cusp_normal_form(&f.x) {
            conditions.push(Condition {
                name: "first component is t²".into(),
                value: None,
                pass: false,
            });
        } else {
            let c0 = |n: u32| y.specialize(0.0, 0.0).coeff(n as usize);
            match k {
                CuspKind::Ordinary => {
                    conditions.push(cond("∂²β/∂s1∂t", d(y, 1, Var::S1, f.arity)));
                }
                CuspKind::LightlikeOrdinary => {
                    let (a, b) = (d(y, 1, Var::S1, f.arity), d(y, 1, Var::S2, f.arity));
                    let (c, e) = (d(y, 2, Var::S1, f.arity), d(y, 2, Var::S2, f.arity));
                    conditions.push(cond("c3", Some(c0(3))));
                    conditions.push(cond("∂c̄1/∂s1", a));
                    conditions.push(cond("∂(c̄1, c̄2)/∂(s1, s2)", det(a, b, c, e)));
                }
                CuspKind::Ramphoid => {
                    let (a, b) = (d(y, 1, Var::S1, f.arity), d(y, 1, Var::S2, f.arity));
                    let (c, e) = (d(y, 3, Var::S1, f.arity), d(y, 3, Var::S2, f.arity));
                    conditions.push(cond("c4", Some(c0(4))));
                    conditions.push(cond("c5", Some(c0(5))));
                    conditions.push(cond("c6", Some(c0(6))));
                    conditions.push(cond("∂(c̄1, c̄3)/∂(s1, s2)", det(a, b, c, e)));
                }
                CuspKind::Other => conditions.push(Condition {
                    name: "cusp of a catalogued kind".into(),
                    value: None,
                    pass: false,
                }),
            }
        }
    }
    let generic = conditions.iter().all(|c| c.pass);
    GenericityReport {
        degenerate_point: label,
        conditions,
        generic,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::model::model_family;

    #[test]
    fn model_cusps_are_generic() {
        let r = check_genericity(&model_family("LC").unwrap());
        assert!(r.generic, "{:?}", r);
        assert_eq!(r.conditions[1].value, Some(1.0));
        assert_eq!(r.conditions[2].value, Some(1.0));
        let r = check_genericity(&model_family("RC").unwrap());
        assert!(r.generic);
        assert_eq!(r.conditions[3].value.map(f64::abs), Some(1.0));
        let r = check_genericity(&model_family("C").unwrap());
        assert!(r.generic);
        assert_eq!(r.conditions[0].value, Some(1.0));
    }

    #[test]
    fn one_parameter_lightlike_cusp_is_not_generic() {
        let t = MultiPoly::var(Var::T);
        let y = MultiPoly::var(Var::S1).mul(&t).add(&t.pow(2)).add(&t.pow(3));
        let f = ParamFamily::new("deg", t.pow(2), y, (-0.5, 0.5)).unwrap();
        let r = check_genericity(&f);
        assert!(!r.generic);
        assert_eq!(r.conditions[2].value, None);
    }
}
