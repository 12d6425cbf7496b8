//! Canonical JSON for a census.
//!
//! Floats are written at 12 significant digits and fields in declaration
//! order, so parsing a record and writing it again gives the same bytes.

use crate::spec::CurveSpec;
use minkowski_curves::detect::{Census, CuspKind, PointKind, VertexDirection};
use minkowski_curves::multilocal::feature_string;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Round to 12 significant digits.
pub fn sig12(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{x:.11e}").parse().expect("formatted float")
}

/// A float that serializes at 12 significant digits.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct F12(pub f64);

impl Serialize for F12 {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_f64(sig12(self.0))
    }
}

impl<'de> Deserialize<'de> for F12 {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        f64::deserialize(d).map(F12)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ResidualRecord {
    pub lightlike: F12,
    pub inflection: F12,
    pub vertex: F12,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PointRecord {
    pub t: F12,
    /// lightlike, inflection, vertex, lightlike_inflection or cusp.
    pub kind: String,
    pub order: Option<u32>,
    /// inward or outward for vertices.
    pub direction: Option<String>,
    /// ordinary, lightlike_ordinary, ramphoid or other for cusps.
    pub cusp: Option<String>,
    pub order_capped: bool,
    pub symbol: String,
    pub residuals: ResidualRecord,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CrossingRecord {
    pub t1: F12,
    pub t2: F12,
    pub x: F12,
    pub y: F12,
    pub tangential: bool,
    pub residual: F12,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CensusRecord {
    pub input: CurveSpec,
    pub window: [F12; 2],
    pub points: Vec<PointRecord>,
    pub self_intersections: Vec<CrossingRecord>,
    pub features: String,
}

fn point_record(p: &minkowski_curves::detect::SpecialPoint) -> PointRecord {
    let (kind, order, direction, cusp) = match p.kind {
        PointKind::Lightlike => ("lightlike", None, None, None),
        PointKind::Inflection { order } => ("inflection", Some(order), None, None),
        PointKind::LightlikeInflection { order } => ("lightlike_inflection", Some(order), None, None),
        PointKind::Vertex { order, direction } => {
            let d = match direction {
                VertexDirection::Inward => "inward",
                VertexDirection::Outward => "outward",
                VertexDirection::Undefined => "undefined",
            };
            ("vertex", Some(order), Some(d.to_string()), None)
        }
        PointKind::Cusp { kind } => {
            let k = match kind {
                CuspKind::Ordinary => "ordinary",
                CuspKind::LightlikeOrdinary => "lightlike_ordinary",
                CuspKind::Ramphoid => "ramphoid",
                CuspKind::Other => "other",
            };
            ("cusp", None, None, Some(k.to_string()))
        }
    };
    PointRecord {
        t: F12(p.t),
        kind: kind.into(),
        order,
        direction,
        cusp,
        order_capped: p.order_capped,
        symbol: p.kind.symbol(),
        residuals: ResidualRecord {
            lightlike: F12(p.residuals.lightlike),
            inflection: F12(p.residuals.inflection),
            vertex: F12(p.residuals.vertex),
        },
    }
}

fn normalized(spec: &CurveSpec) -> CurveSpec {
    let mut s = spec.clone();
    s.params.s1 = sig12(s.params.s1);
    s.params.s2 = sig12(s.params.s2);
    s.window = s.window.map(|w| w.map(sig12));
    let t = &mut s.tolerances;
    for v in [&mut t.lightlike, &mut t.singular, &mut t.merge_radius, &mut t.order_threshold] {
        *v = v.map(sig12);
    }
    s
}

impl CensusRecord {
    pub fn new(input: &CurveSpec, window: (f64, f64), census: &Census) -> Self {
        let r = CensusRecord {
            input: normalized(input),
            window: [F12(window.0), F12(window.1)],
            points: census.points.iter().map(point_record).collect(),
            self_intersections: census
                .self_intersections
                .iter()
                .map(|s| CrossingRecord {
                    t1: F12(s.t1),
                    t2: F12(s.t2),
                    x: F12(s.point.x),
                    y: F12(s.point.y),
                    tangential: s.tangential,
                    residual: F12(s.residual),
                })
                .collect(),
            features: feature_string(census),
        };
        debug_assert_eq!(r.rebuilt_features(), r.features);
        r
    }

    /// The feature string rebuilt from the point and crossing lists.
    pub fn rebuilt_features(&self) -> String {
        let mut items: Vec<(f64, &str)> = self.points.iter().map(|p| (p.t.0, p.symbol.as_str())).collect();
        for s in &self.self_intersections {
            let sym = if s.tangential { "XT" } else { "X" };
            items.push((s.t1.0, sym));
            items.push((s.t2.0, sym));
        }
        items.sort_by(|a, b| a.0.total_cmp(&b.0));
        items.into_iter().map(|(_, s)| s).collect::<Vec<_>>().join(" ")
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("records serialize");
        s.push('\n');
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use minkowski_curves::multilocal::{census, CensusConfig};

    fn record(spec: &str) -> CensusRecord {
        let spec: CurveSpec = serde_json::from_str(spec).unwrap();
        let r = spec.resolve().unwrap();
        let c = census(&r.curve, r.window.0, r.window.1, &CensusConfig::default()).unwrap();
        CensusRecord::new(&spec, r.window, &c)
    }

    #[test]
    fn sig12_is_idempotent() {
        for x in [1.0 / 3.0, -2.0f64.sqrt() * 1e-30, 123456.789012345678, 0.1 + 0.2] {
            let r = sig12(x);
            assert_eq!(sig12(r), r);
            assert!((r - x).abs() <= 1e-11 * x.abs());
        }
    }

    #[test]
    fn round_trip_is_byte_identical() {
        for spec in [
            r#"{"model": "C", "params": {"s1": -0.04}, "window": [-0.3, 0.3]}"#,
            r#"{"x": "t^2", "y": "t^3 + 1/3*t^5", "window": [-0.123456789012345, 0.7]}"#,
        ] {
            let a = record(spec).to_json();
            let b: CensusRecord = serde_json::from_str(&a).unwrap();
            assert_eq!(b.to_json(), a);
        }
    }

    #[test]
    fn features_rebuild_from_points() {
        let r = record(r#"{"model": "C", "params": {"s1": -0.04}, "window": [-0.3, 0.3]}"#);
        assert_eq!(r.rebuilt_features(), r.features);
        assert!(r.features.contains('X'));
        let r = record(r#"{"model": "I2", "params": {"s1": -0.01}, "window": [-0.5, 0.5]}"#);
        assert_eq!(r.features, "I V- I");
        assert_eq!(r.rebuilt_features(), r.features);
    }
}
