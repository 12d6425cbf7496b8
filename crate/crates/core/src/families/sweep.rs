//! Census sweeps over the parameter plane and their agreement with traces.

use super::model::ParamFamily;
use super::trace::{branch_distance, StratumTrace};
use crate::detect::{PointKind, SpecialPoint, VertexDirection};
use crate::multilocal::{census, feature_string, CensusConfig};
use serde::{Deserialize, Serialize};
use std::collections::VecDeque;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SweepConfig {
    /// Grid covers [−half, half]^m.
    pub half: f64,
    /// Grid points per axis.
    pub n: usize,
    /// A grid point this close to a traced stratum lies on it.
    pub on_stratum: f64,
    /// Grid points this close to the origin are the degenerate member.
    pub origin_radius: f64,
    pub census: CensusConfig,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            half: 0.05,
            n: 41,
            on_stratum: 1e-8,
            origin_radius: 1e-3,
            census: CensusConfig::default(),
        }
    }
}

impl SweepConfig {
    pub fn axis(&self) -> Vec<f64> {
        let n = self.n.max(2);
        (0..n).map(|i| -self.half + 2.0 * self.half * i as f64 / (n - 1) as f64).collect()
    }

    /// Grid points in row-major order (s1 fastest).
    pub fn grid(&self, arity: usize) -> Vec<Vec<f64>> {
        let ax = self.axis();
        if arity == 1 {
            return ax.iter().map(|&s| vec![s]).collect();
        }
        ax.iter().flat_map(|&s2| ax.iter().map(move |&s1| vec![s1, s2])).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepCell {
    pub s: Vec<f64>,
    pub features: String,
}

/// Feature string of the member at each parameter value.
pub fn census_sweep(fam: &ParamFamily, grid: &[Vec<f64>], cfg: &CensusConfig) -> Vec<SweepCell> {
    grid.iter()
        .map(|s| {
            let c = fam.curve(s[0], s.get(1).copied().unwrap_or(0.0));
            let features = match census(&c, fam.window.0, fam.window.1, cfg) {
                Ok(k) => feature_string(&k),
                Err(e) => format!("error: {e}"),
            };
            SweepCell { s: s.clone(), features }
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Violation {
    pub a: Vec<f64>,
    pub b: Vec<f64>,
    pub from: String,
    pub to: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RegionReport {
    pub family: String,
    pub cells: usize,
    /// Grid-adjacent pairs with different strings.
    pub changes: usize,
    /// Connected groups of equal strings.
    pub regions: usize,
    pub violations: Vec<Violation>,
}

impl RegionReport {
    pub fn pass(&self) -> bool {
        self.violations.is_empty()
    }
}

fn orient(a: [f64; 2], b: [f64; 2], c: [f64; 2]) -> f64 {
    (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
}

/// Closed segments [p, q] and [a, b] meet.
fn segments_meet(p: [f64; 2], q: [f64; 2], a: [f64; 2], b: [f64; 2]) -> bool {
    let (d1, d2) = (orient(a, b, p), orient(a, b, q));
    let (d3, d4) = (orient(p, q, a), orient(p, q, b));
    if d1 * d2 < 0.0 && d3 * d4 < 0.0 {
        return true;
    }
    let on = |u: [f64; 2], v: [f64; 2], w: [f64; 2], d: f64| {
        d == 0.0 && w[0] >= u[0].min(v[0]) && w[0] <= u[0].max(v[0]) && w[1] >= u[1].min(v[1]) && w[1] <= u[1].max(v[1])
    };
    on(a, b, p, d1) || on(a, b, q, d2) || on(p, q, a, d3) || on(p, q, b, d4)
}

fn point_polyline_distance(p: [f64; 2], line: &[[f64; 2]]) -> f64 {
    let seg = |a: [f64; 2], b: [f64; 2]| {
        let ab = [b[0] - a[0], b[1] - a[1]];
        let l2 = ab[0] * ab[0] + ab[1] * ab[1];
        let t = if l2 > 0.0 {
            (((p[0] - a[0]) * ab[0] + (p[1] - a[1]) * ab[1]) / l2).clamp(0.0, 1.0)
        } else {
            0.0
        };
        (p[0] - a[0] - t * ab[0]).hypot(p[1] - a[1] - t * ab[1])
    };
    match line.len() {
        0 => f64::INFINITY,
        1 => seg(line[0], line[0]),
        _ => line.windows(2).map(|w| seg(w[0], w[1])).fold(f64::INFINITY, f64::min),
    }
}

fn count_regions(cells: &[SweepCell], neighbours: &[(usize, usize)]) -> usize {
    let n = cells.len();
    let mut adj = vec![Vec::new(); n];
    for &(i, j) in neighbours {
        if cells[i].features == cells[j].features {
            adj[i].push(j);
            adj[j].push(i);
        }
    }
    let mut seen = vec![false; n];
    let mut regions = 0;
    for start in 0..n {
        if seen[start] {
            continue;
        }
        regions += 1;
        seen[start] = true;
        let mut q = VecDeque::from([start]);
        while let Some(i) = q.pop_front() {
            for &j in &adj[i] {
                if !seen[j] {
                    seen[j] = true;
                    q.push_back(j);
                }
            }
        }
    }
    regions
}

/// Check that every change of feature string between neighbouring grid
/// points is accounted for by a traced stratum.
pub fn region_consistency(fam: &ParamFamily, cells: &[SweepCell], traces: &[StratumTrace], cfg: &SweepConfig) -> RegionReport {
    let n = cfg.n.max(2);
    let neighbours: Vec<(usize, usize)> = if fam.arity == 1 {
        (1..cells.len()).map(|i| (i - 1, i)).collect()
    } else {
        let mut v = Vec::new();
        for r in 0..n {
            for c in 0..n {
                let i = r * n + c;
                if c + 1 < n {
                    v.push((i, i + 1));
                }
                if r + 1 < n {
                    v.push((i, i + n));
                }
            }
        }
        v
    };
    let lines: Vec<(&StratumTrace, usize, Vec<[f64; 2]>)> = traces
        .iter()
        .flat_map(|t| t.branches.iter().enumerate().map(move |(i, b)| (t, i, b.polyline())))
        .collect();
    let events: Vec<f64> = traces.iter().flat_map(|t| t.points.iter().map(|p| p.s[0])).collect();
    let pt = |s: &[f64]| [s[0], s.get(1).copied().unwrap_or(0.0)];
    let explained = |a: &SweepCell, b: &SweepCell| {
        let (p, q) = (pt(&a.s), pt(&b.s));
        if fam.arity == 1 {
            let (lo, hi) = (p[0].min(q[0]), p[0].max(q[0]));
            return events.iter().any(|&e| e >= lo - cfg.on_stratum && e <= hi + cfg.on_stratum);
        }
        let near_origin = |x: [f64; 2]| x[0].hypot(x[1]) <= cfg.origin_radius;
        if near_origin(p) || near_origin(q) {
            return true;
        }
        let on = |x: [f64; 2], t: &StratumTrace, i: usize, l: &[[f64; 2]]| {
            point_polyline_distance(x, l) <= 1e-4 && branch_distance(fam, t.stratum, &t.branches[i], x) <= cfg.on_stratum
        };
        lines.iter().any(|(t, i, l)| {
            l.windows(2).any(|w| segments_meet(p, q, w[0], w[1])) || on(p, t, *i, l) || on(q, t, *i, l)
        })
    };
    let mut report = RegionReport {
        family: fam.name.clone(),
        cells: cells.len(),
        changes: 0,
        regions: count_regions(cells, &neighbours),
        violations: Vec::new(),
    };
    for &(i, j) in &neighbours {
        let (a, b) = (&cells[i], &cells[j]);
        if a.features == b.features {
            continue;
        }
        report.changes += 1;
        if !explained(a, b) {
            report.violations.push(Violation {
                a: a.s.clone(),
                b: b.s.clone(),
                from: a.features.clone(),
                to: b.features.clone(),
            });
        }
    }
    report
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SwallowtailEntry {
    pub s: f64,
    pub vertices: Vec<SpecialPoint>,
    pub features: String,
}

impl SwallowtailEntry {
    pub fn directions(&self) -> Vec<VertexDirection> {
        self.vertices
            .iter()
            .filter_map(|p| match p.kind {
                PointKind::Vertex { direction, .. } => Some(direction),
                _ => None,
            })
            .collect()
    }
}

/// Vertices of the vertex-of-order-two model at each s1.
pub fn swallowtail_census(fam: &ParamFamily, s_values: &[f64], cfg: &CensusConfig) -> Vec<SwallowtailEntry> {
    s_values
        .iter()
        .map(|&s| {
            let c = fam.curve(s, 0.0);
            let (vertices, features) = match census(&c, fam.window.0, fam.window.1, cfg) {
                Ok(k) => (
                    k.points.iter().filter(|p| matches!(p.kind, PointKind::Vertex { .. })).cloned().collect(),
                    feature_string(&k),
                ),
                Err(e) => (Vec::new(), format!("error: {e}")),
            };
            SwallowtailEntry { s, vertices, features }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::model::model_family;

    fn features(name: &str, s: &[f64]) -> String {
        let f = model_family(name).unwrap();
        census_sweep(&f, &[s.to_vec()], &CensusConfig::default())[0].features.clone()
    }

    #[test]
    fn inflection_of_order_two_sides() {
        assert_eq!(features("I2", &[-0.01]), "I V- I");
        assert_eq!(features("I2", &[0.01]), "V+");
    }

    #[test]
    fn lightlike_inflection_sides() {
        assert_eq!(features("LI", &[-0.03]), "L I L");
        assert_eq!(features("LI", &[0.03]), "V- I V-");
    }

    #[test]
    fn lightlike_cusp_on_the_cusp_line() {
        assert_eq!(features("LC", &[0.0, 0.01]), "L V+ C");
    }

    #[test]
    fn swallowtail_of_the_vertex_model() {
        let f = model_family("V2").unwrap();
        let e = swallowtail_census(&f, &[-0.01, 0.0, 0.01], &CensusConfig::default());
        let mut d = e[0].directions();
        d.sort_by_key(|x| format!("{x:?}"));
        assert_eq!(d, vec![VertexDirection::Inward, VertexDirection::Outward]);
        assert_eq!(e[1].vertices.len(), 1);
        assert!(matches!(e[1].vertices[0].kind, PointKind::Vertex { order: 2, .. }));
        assert!(e[2].vertices.is_empty());
    }

    #[test]
    fn segment_geometry() {
        assert!(segments_meet([0.0, 0.0], [1.0, 1.0], [0.0, 1.0], [1.0, 0.0]));
        assert!(!segments_meet([0.0, 0.0], [1.0, 0.0], [0.0, 1.0], [1.0, 1.0]));
        assert!(segments_meet([0.0, 0.0], [1.0, 0.0], [1.0, 0.0], [1.0, 1.0]));
        assert_eq!(point_polyline_distance([0.5, 1.0], &[[0.0, 0.0], [1.0, 0.0]]), 1.0);
    }
}
