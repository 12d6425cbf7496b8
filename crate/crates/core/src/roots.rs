//! Real root isolation on an interval.
//!
//! Two entry points: a grid scanner for any function that can produce a
//! first-order jet, and an exact-structure finder for polynomials that
//! splits the interval at critical points (recursively) so every piece is
//! monotone.  The polynomial path cannot miss a root closer to its neighbour
//! than the grid spacing, which matters near the degenerate parameter values
//! where roots collide.

use crate::jet::Jet;
use crate::poly::Poly;
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct RootConfig {
    /// Uniform scan points per interval.
    pub grid: usize,
    /// Bracket width at which bisection stops.
    pub tol_t: f64,
    /// A local minimum of |f| below dip·max|f| counts as a touching root.
    pub dip: f64,
}

impl Default for RootConfig {
    fn default() -> Self {
        RootConfig {
            grid: 4096,
            tol_t: 1e-12,
            dip: 1e-10,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Root {
    pub t: f64,
    /// 1 for a sign change with nonzero slope, otherwise a lower bound.
    pub multiplicity: usize,
}

fn bisect(f: &impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, tol: f64) -> f64 {
    let mut flo = f(lo);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if hi - lo <= tol || mid <= lo || mid >= hi {
            break;
        }
        let fm = f(mid);
        if fm == 0.0 {
            return mid;
        }
        if (fm < 0.0) == (flo < 0.0) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Roots of f on [a, b] by grid scan, bisection, and a scan of f′ for
/// roots that touch zero without crossing.
pub fn isolate_roots(f: impl Fn(f64) -> Jet, a: f64, b: f64, cfg: &RootConfig) -> Vec<Root> {
    let n = cfg.grid.max(2);
    let ts: Vec<f64> = (0..=n).map(|i| a + (b - a) * i as f64 / n as f64).collect();
    let jets: Vec<Jet> = ts.iter().map(|&t| f(t)).collect();
    let v: Vec<f64> = jets.iter().map(|j| j.coeff(0)).collect();
    let d: Vec<f64> = jets.iter().map(|j| j.coeff(1)).collect();
    let fmax = v.iter().fold(0.0f64, |m, x| m.max(x.abs())).max(f64::MIN_POSITIVE);
    let value = |t: f64| f(t).coeff(0);
    let slope = |t: f64| f(t).coeff(1);
    let mut out: Vec<Root> = Vec::new();
    for i in 0..n {
        let (l, r) = (ts[i], ts[i + 1]);
        if v[i] == 0.0 {
            out.push(Root { t: l, multiplicity: 1 });
        } else if v[i + 1] != 0.0 && (v[i] < 0.0) != (v[i + 1] < 0.0) {
            out.push(Root { t: bisect(&value, l, r, cfg.tol_t), multiplicity: 1 });
        } else if (d[i] < 0.0) != (d[i + 1] < 0.0) && d[i] != 0.0 {
            let c = bisect(&slope, l, r, cfg.tol_t);
            if value(c).abs() <= cfg.dip * fmax {
                out.push(Root { t: c, multiplicity: 2 });
            }
        }
    }
    if v[n] == 0.0 {
        out.push(Root { t: b, multiplicity: 1 });
    }
    // a root found from the sign scan and again from the slope scan
    out.sort_by(|x, y| x.t.total_cmp(&y.t));
    let mut merged: Vec<Root> = Vec::new();
    for r in out {
        match merged.last_mut() {
            Some(last) if (r.t - last.t).abs() <= 2.0 * (b - a) / n as f64 && last.multiplicity != r.multiplicity => {
                last.multiplicity = last.multiplicity.max(r.multiplicity);
            }
            _ => merged.push(r),
        }
    }
    // refine the multiplicity of touching roots from the local jet
    for r in merged.iter_mut() {
        let j = f(r.t);
        let scale = j.scaled_max((b - a) * 0.5);
        let mut m = 0;
        while m < j.order() && j.coeff(m).abs() <= 1e-8 * scale {
            m += 1;
        }
        r.multiplicity = r.multiplicity.max(m.max(1));
    }
    merged
}

/// A real root of a polynomial.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PolyRoot {
    pub t: f64,
    /// Found as a critical point where the polynomial is zero to rounding,
    /// rather than from a sign change.
    pub touching: bool,
}

const EPS: f64 = f64::EPSILON;

fn rounding_bound(p: &Poly, t: f64) -> f64 {
    let deg = p.degree().unwrap_or(0).max(1) as f64;
    16.0 * EPS * deg * p.magnitude_at(t)
}

/// All real roots of p in [a, b], sorted.
///
/// The zero polynomial reports no roots.
pub fn poly_real_roots(p: &Poly, a: f64, b: f64) -> Vec<PolyRoot> {
    let mut out = Vec::new();
    roots_rec(p, a, b, &mut out);
    out.sort_by(|x, y| x.t.total_cmp(&y.t));
    let mut merged: Vec<PolyRoot> = Vec::new();
    for r in out {
        match merged.last_mut() {
            Some(last) if r.t - last.t <= 1e-13 * (1.0 + r.t.abs()) => {
                last.touching |= r.touching;
            }
            _ => merged.push(r),
        }
    }
    merged
}

fn roots_rec(p: &Poly, a: f64, b: f64, out: &mut Vec<PolyRoot>) {
    match p.degree() {
        None | Some(0) => return,
        Some(1) => {
            let t = -p.coeff(0) / p.coeff(1);
            if t >= a && t <= b {
                out.push(PolyRoot { t, touching: false });
            }
            return;
        }
        _ => {}
    }
    let mut crit: Vec<PolyRoot> = Vec::new();
    roots_rec(&p.derivative(), a, b, &mut crit);
    let mut breaks: Vec<f64> = Vec::with_capacity(crit.len() + 2);
    breaks.push(a);
    breaks.extend(crit.iter().map(|c| c.t).filter(|&t| t > a && t < b));
    breaks.push(b);
    breaks.sort_by(f64::total_cmp);
    breaks.dedup();
    let f = |t: f64| p.evalf(t);
    for w in breaks.windows(2) {
        let (l, r) = (w[0], w[1]);
        let (fl, fr) = (f(l), f(r));
        if fl != 0.0 && fr != 0.0 && (fl < 0.0) != (fr < 0.0) {
            out.push(PolyRoot { t: bisect(&f, l, r, 0.0), touching: false });
        }
    }
    for &t in &breaks {
        if f(t).abs() <= rounding_bound(p, t) {
            let interior = t > a && t < b;
            out.push(PolyRoot { t, touching: interior && crit.iter().any(|c| c.t == t) });
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn jet_of(p: Poly) -> impl Fn(f64) -> Jet {
        move |t| p.jet(&t, 4)
    }

    #[test]
    fn grid_scan_examples() {
        let cfg = RootConfig::default();
        let r = isolate_roots(jet_of(Poly::from_f64(&[-0.01, 0.0, 1.0])), -1.0, 1.0, &cfg);
        assert_eq!(r.len(), 2);
        assert!((r[0].t + 0.1).abs() < 1e-12 && (r[1].t - 0.1).abs() < 1e-12);
        let r = isolate_roots(jet_of(Poly::from_f64(&[0.0, 0.0, 1.0])), -1.0, 1.0, &cfg);
        assert_eq!(r.len(), 1);
        assert!(r[0].t.abs() < 1e-12 && r[0].multiplicity >= 2);
        let r = isolate_roots(jet_of(Poly::from_f64(&[-0.2, 0.0, 12.0])), -0.5, 0.5, &cfg);
        let exact = (1.0f64 / 60.0).sqrt();
        assert_eq!(r.len(), 2);
        assert!((r[0].t + exact).abs() < 1e-12 && (r[1].t - exact).abs() < 1e-12);
        assert!((exact - 0.12910).abs() < 1e-5);
    }

    #[test]
    fn grid_scan_catches_touching_root_off_grid() {
        // (t − 0.3001)² has no sign change anywhere
        let p = Poly::from_f64(&[0.3001 * 0.3001, -2.0 * 0.3001, 1.0]);
        let r = isolate_roots(jet_of(p), -1.0, 1.0, &RootConfig::default());
        assert_eq!(r.len(), 1);
        assert!((r[0].t - 0.3001).abs() < 1e-9);
    }

    #[test]
    fn polynomial_roots_with_clusters() {
        // (t − 0.1)(t − 0.1 − 1e-6)(t + 0.5)
        let p = Poly::from_f64(&[-0.1, 1.0])
            .mul(&Poly::from_f64(&[-0.1 - 1e-6, 1.0]))
            .mul(&Poly::from_f64(&[0.5, 1.0]));
        let ts: Vec<f64> = poly_real_roots(&p, -1.0, 1.0).iter().map(|x| x.t).collect();
        assert_eq!(ts.len(), 3, "{:?}", ts);
        for (t, e) in ts.iter().zip([-0.5, 0.1, 0.1 + 1e-6]) {
            assert!((t - e).abs() < 1e-12, "{} vs {}", t, e);
        }
    }

    #[test]
    fn polynomial_double_and_triple_roots() {
        let sq = Poly::from_f64(&[0.0, 0.0, 1.0]);
        let r = poly_real_roots(&sq, -1.0, 1.0);
        assert_eq!(r.len(), 1);
        assert!(r[0].touching);
        let cube = Poly::from_f64(&[0.0, 0.0, 0.0, 1.0]);
        let r = poly_real_roots(&cube, -1.0, 1.0);
        assert_eq!(r.len(), 1);
        assert_eq!(r[0].t, 0.0);
        let close = Poly::from_f64(&[-1e-12, 0.0, 1.0]);
        let r = poly_real_roots(&close, -1.0, 1.0);
        assert_eq!(r.len(), 2);
        assert!((r[1].t - 1e-6).abs() < 1e-15);
        assert!(poly_real_roots(&Poly::zero(), -1.0, 1.0).is_empty());
    }
}
