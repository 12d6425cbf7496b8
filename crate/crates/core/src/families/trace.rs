//! Tracing strata in the parameter plane.
//!
//! Each stratum is split into subproblems: a "primary" system whose roots in
//! the curve parameter(s) persist through the transition, and a scalar
//! "detection" equation that changes sign on the stratum.  For an
//! inflection of order two, say, the primary is P′ (its root survives when
//! two inflections merge) and the detection is P.  Seeds are found by
//! following primary roots along paths in parameter space (a small ring
//! around the origin and the border of the parameter box) and watching the
//! detection value change sign.  From each seed the full system is followed
//! by pseudo-arclength continuation in (t…, s1, s2).

use super::fit::{fit_power_law, FitConfig, PowerFit};
use super::model::ParamFamily;
use crate::curve::PolyCurve;
use crate::multilocal::{newton_2d, solve_2d, Box2, Solve2dConfig};
use crate::poly::Poly;
use crate::roots::poly_real_roots;
use crate::strata::StratumId;
use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Primary {
    /// x′(t)
    CuspX,
    /// P′(t)
    InflectionSlope,
    /// P(t)
    Inflection,
    /// x′(t) + σ y′(t)
    Light(i8),
    /// W′(t)
    VertexSlope,
    /// γ(t1) = γ(t2)
    SelfIntersection,
    /// x(t1) = x(t2) and γ′(t1) ∥ γ′(t2)
    ParallelPair,
}

impl Primary {
    pub fn bilocal(self) -> bool {
        matches!(self, Primary::SelfIntersection | Primary::ParallelPair)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Detect {
    /// y′(t)
    CuspY,
    /// P at the given end
    Inflection(usize),
    /// x′ + σ y′ at the given end
    Light(i8, usize),
    /// W at the given end
    Vertex(usize),
    /// y(t1) − y(t2), divided
    SecondCoordinate,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Subproblem {
    pub stratum: StratumId,
    pub primary: Primary,
    pub detect: Detect,
}

impl Subproblem {
    fn new(stratum: StratumId, primary: Primary, detect: Detect) -> Self {
        Subproblem { stratum, primary, detect }
    }

    pub fn tvars(&self) -> usize {
        if self.primary.bilocal() {
            2
        } else {
            1
        }
    }
}

/// The subproblems whose solutions make up a stratum.
pub fn subproblems(id: StratumId) -> Vec<Subproblem> {
    use Detect as D;
    use Primary as P;
    let s = Subproblem::new;
    match id {
        StratumId::C => vec![s(id, P::CuspX, D::CuspY)],
        StratumId::I(2) => vec![s(id, P::InflectionSlope, D::Inflection(0))],
        StratumId::LI(1) => [1i8, -1]
            .iter()
            .flat_map(|&g| [s(id, P::Inflection, D::Light(g, 0)), s(id, P::Light(g), D::Inflection(0))])
            .collect(),
        StratumId::V(2) => vec![s(id, P::VertexSlope, D::Vertex(0))],
        StratumId::IT => (0..2).map(|e| s(id, P::SelfIntersection, D::Inflection(e))).collect(),
        StratumId::VT => (0..2).map(|e| s(id, P::SelfIntersection, D::Vertex(e))).collect(),
        StratumId::LT => [1i8, -1]
            .iter()
            .flat_map(|&g| (0..2).map(move |e| s(id, P::SelfIntersection, D::Light(g, e))))
            .collect(),
        StratumId::Tc => vec![s(id, P::ParallelPair, D::SecondCoordinate)],
        _ => Vec::new(),
    }
}

/// Polynomials of one member that the equations are built from.
pub struct Member {
    pub curve: PolyCurve,
    xp: Poly,
    yp: Poly,
    d: Poly,
    p: Poly,
    pp: Poly,
    w: Poly,
    wp: Poly,
}

impl Member {
    pub fn new(curve: PolyCurve) -> Self {
        let xp = curve.x.derivative();
        let yp = curve.y.derivative();
        let d = curve.lightlike_poly();
        let p = curve.curvature_numerator_poly();
        let w = curve.vertex_numerator_poly();
        Member {
            pp: p.derivative(),
            wp: w.derivative(),
            curve,
            xp,
            yp,
            d,
            p,
            w,
        }
    }

    fn local_poly(&self, pr: Primary) -> Poly {
        match pr {
            Primary::CuspX => self.xp.clone(),
            Primary::InflectionSlope => self.pp.clone(),
            Primary::Inflection => self.p.clone(),
            Primary::Light(g) => self.xp.add(&self.yp.scale(&(g as f64))),
            Primary::VertexSlope => self.wp.clone(),
            _ => unreachable!("bilocal primary"),
        }
    }

    fn dx(&self, t1: f64, t2: f64) -> f64 {
        self.curve.x.divided_difference(&t1, &t2)
    }

    fn dy(&self, t1: f64, t2: f64) -> f64 {
        self.curve.y.divided_difference(&t1, &t2)
    }

    fn cross(&self, t1: f64, t2: f64) -> f64 {
        self.xp.evalf(t1) * self.yp.evalf(t2) - self.xp.evalf(t2) * self.yp.evalf(t1)
    }

    pub fn primary(&self, pr: Primary, tv: &[f64]) -> Vec<f64> {
        match pr {
            Primary::SelfIntersection => vec![self.dx(tv[0], tv[1]), self.dy(tv[0], tv[1])],
            Primary::ParallelPair => vec![self.dx(tv[0], tv[1]), self.cross(tv[0], tv[1])],
            _ => vec![self.local_poly(pr).evalf(tv[0])],
        }
    }

    pub fn detect(&self, d: Detect, tv: &[f64]) -> f64 {
        match d {
            Detect::CuspY => self.yp.evalf(tv[0]),
            Detect::Inflection(e) => self.p.evalf(tv[e]),
            Detect::Light(g, e) => self.xp.evalf(tv[e]) + g as f64 * self.yp.evalf(tv[e]),
            Detect::Vertex(e) => self.w.evalf(tv[e]),
            Detect::SecondCoordinate => self.dy(tv[0], tv[1]),
        }
    }

    pub fn system(&self, sp: &Subproblem, tv: &[f64]) -> Vec<f64> {
        let mut v = self.primary(sp.primary, tv);
        v.push(self.detect(sp.detect, tv));
        v
    }

    fn speed(&self, t: f64) -> f64 {
        self.xp.evalf(t).hypot(self.yp.evalf(t))
    }

    /// The point is a genuine solution of the subproblem and not a
    /// degenerate one that the equations also admit.
    pub fn valid(&self, sp: &Subproblem, tv: &[f64], window: (f64, f64), cfg: &TraceConfig) -> bool {
        if tv.iter().any(|&t| !(t >= window.0 && t <= window.1)) {
            return false;
        }
        if sp.stratum != StratumId::C && tv.iter().any(|&t| self.speed(t) < cfg.min_speed) {
            return false;
        }
        if tv.len() == 2 && tv[1] - tv[0] < cfg.min_separation {
            return false;
        }
        if sp.stratum == StratumId::V(2) {
            // lightlike inflections solve the vertex system too
            let t = tv[0];
            if self.d.evalf(t).abs() <= cfg.lightlike_exclusion * self.speed(t).powi(2) {
                return false;
            }
        }
        true
    }

    /// Roots of a primary system in the window; pairs come ordered t1 < t2.
    pub fn primary_roots(&self, pr: Primary, window: (f64, f64), cfg: &TraceConfig) -> Vec<Vec<f64>> {
        if !pr.bilocal() {
            return poly_real_roots(&self.local_poly(pr), window.0, window.1)
                .into_iter()
                .map(|r| vec![r.t])
                .collect();
        }
        // an injective coordinate rules out double points
        let injective = |q: &Poly| poly_real_roots(q, window.0, window.1).is_empty() && !q.is_zero();
        if injective(&self.xp) || (pr == Primary::SelfIntersection && injective(&self.yp)) {
            return Vec::new();
        }
        let scfg = Solve2dConfig {
            grid: cfg.bilocal_grid,
            levels: 10,
            ..Solve2dConfig::default()
        };
        let scale = self.curve.scale();
        solve_2d(
            |a, b| {
                let v = self.primary(pr, &[a, b]);
                (v[0], v[1])
            },
            Box2::new(window.0, window.1, window.0, window.1),
            scale,
            &scfg,
        )
        .into_iter()
        .filter(|&(a, b)| b - a >= cfg.min_separation)
        .map(|(a, b)| vec![a, b])
        .collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct TraceConfig {
    /// Half-width of the square parameter box.
    pub box_half: f64,
    pub ring_radius: f64,
    pub ring_samples: usize,
    pub edge_samples: usize,
    /// Samples along the parameter line of a one-parameter family.
    pub line_samples: usize,
    pub bilocal_grid: usize,
    pub min_speed: f64,
    pub min_separation: f64,
    /// V(2) points with |D| ≤ this·‖γ′‖² are lightlike inflections.
    pub lightlike_exclusion: f64,
    /// Largest continuation step in (t…, s).
    pub max_step: f64,
    /// Largest step in s relative to ‖s‖.
    pub rel_step: f64,
    pub max_points: usize,
    /// Seeds this close (in (t…, s)) to an existing trace are not traced again.
    pub dedupe: f64,
    pub fit: FitConfig,
}

impl Default for TraceConfig {
    fn default() -> Self {
        TraceConfig {
            box_half: 0.05,
            ring_radius: 1e-3,
            ring_samples: 1024,
            edge_samples: 2048,
            line_samples: 4096,
            bilocal_grid: 64,
            min_speed: 1e-9,
            min_separation: 1e-4,
            lightlike_exclusion: 1e-8,
            max_step: 1e-3,
            rel_step: 0.05,
            max_points: 20_000,
            dedupe: 1e-6,
            fit: FitConfig::default(),
        }
    }
}

/// Central-difference Jacobian of f at x (rows: outputs).
fn jacobian(f: &impl Fn(&[f64]) -> Vec<f64>, x: &[f64], m: usize) -> DMatrix<f64> {
    let n = x.len();
    let mut j = DMatrix::zeros(m, n);
    let mut xp = x.to_vec();
    for c in 0..n {
        let h = 1e-7 * (1e-3 + x[c].abs());
        xp[c] = x[c] + h;
        let fp = f(&xp);
        xp[c] = x[c] - h;
        let fm = f(&xp);
        xp[c] = x[c];
        for r in 0..m {
            j[(r, c)] = (fp[r] - fm[r]) / (2.0 * h);
        }
    }
    j
}

/// Newton's method for a square system; returns the root and the number of
/// iterations, or None without convergence.
pub fn newton_square(f: impl Fn(&[f64]) -> Vec<f64>, x0: &[f64], iters: usize) -> Option<Vec<f64>> {
    let n = x0.len();
    let mut x = x0.to_vec();
    for _ in 0..iters {
        let fx = f(&x);
        if fx.iter().any(|v| !v.is_finite()) {
            return None;
        }
        let j = jacobian(&f, &x, n);
        let dx = j.lu().solve(&DVector::from_vec(fx))?;
        let step = dx.amax();
        for i in 0..n {
            x[i] -= dx[i];
        }
        let size = x.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        if step <= 1e-14 * (1e-3 + size) {
            return Some(x);
        }
    }
    // accept a residual that stopped improving at rounding level
    let fx = f(&x);
    let j = jacobian(&f, &x, n);
    let dx = j.lu().solve(&DVector::from_vec(fx))?;
    let size = x.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    (dx.amax() <= 1e-11 * (1e-3 + size)).then_some(x)
}

/// Distance-like size of a residual: max_i |F_i| / ‖∇F_i‖.
pub fn scaled_residual(f: impl Fn(&[f64]) -> Vec<f64>, x: &[f64]) -> f64 {
    let fx = f(x);
    let j = jacobian(&f, x, fx.len());
    fx.iter()
        .enumerate()
        .map(|(r, v)| {
            let g = j.row(r).norm();
            if g > 0.0 {
                v.abs() / g
            } else {
                v.abs()
            }
        })
        .fold(0.0, f64::max)
}

/// One point of a trace: curve parameter(s) and family parameters.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TracePoint {
    pub t: Vec<f64>,
    pub s: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TracedBranch {
    /// Index into `subproblems(stratum)` of the system this branch solves.
    #[serde(default)]
    pub subproblem: usize,
    pub points: Vec<TracePoint>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fit: Option<PowerFit>,
    /// Which half-plane the branch leaves the origin into, when it does.
    #[serde(default)]
    pub side: String,
}

impl TracedBranch {
    pub fn polyline(&self) -> Vec<[f64; 2]> {
        self.points.iter().map(|p| [p.s[0], p.s.get(1).copied().unwrap_or(0.0)]).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StratumTrace {
    pub family: String,
    pub stratum: StratumId,
    /// Curves in the parameter plane of a two-parameter family.
    pub branches: Vec<TracedBranch>,
    /// Isolated parameter values of a one-parameter family.
    pub points: Vec<TracePoint>,
}

impl StratumTrace {
    pub fn is_empty(&self) -> bool {
        self.branches.is_empty() && self.points.is_empty()
    }
}

#[derive(Clone, Debug)]
struct Seed {
    sub: usize,
    tv: Vec<f64>,
    s: [f64; 2],
}

fn match_roots(a: &[Vec<f64>], b: &[Vec<f64>], tol: f64) -> Vec<(usize, usize)> {
    let dist = |x: &[f64], y: &[f64]| x.iter().zip(y).fold(0.0f64, |m, (p, q)| m.max((p - q).abs()));
    let mut out = Vec::new();
    for (i, x) in a.iter().enumerate() {
        let Some((j, dj)) = b.iter().enumerate().map(|(j, y)| (j, dist(x, y))).min_by(|p, q| p.1.total_cmp(&q.1)) else {
            continue;
        };
        let back = a.iter().enumerate().map(|(k, z)| (k, dist(z, &b[j]))).min_by(|p, q| p.1.total_cmp(&q.1));
        if dj <= tol && back.map(|(k, _)| k) == Some(i) {
            out.push((i, j));
        }
    }
    out
}

struct Scanner<'a> {
    fam: &'a ParamFamily,
    subs: &'a [Subproblem],
    cfg: &'a TraceConfig,
}

impl Scanner<'_> {
    fn member(&self, s: [f64; 2]) -> Member {
        Member::new(self.fam.curve(s[0], s[1]))
    }

    /// Root of the primary near a guess at parameter s.
    fn primary_near(&self, m: &Member, pr: Primary, guess: &[f64]) -> Option<Vec<f64>> {
        if pr.bilocal() {
            let f = |a: f64, b: f64| {
                let v = m.primary(pr, &[a, b]);
                (v[0], v[1])
            };
            let (a, b, _) = newton_2d(&f, guess[0], guess[1], 1e-9, 50);
            let x = vec![a, b];
            let ok = newton_square(|z: &[f64]| m.primary(pr, z), &x, 3).is_some();
            ok.then_some(x)
        } else {
            let w = self.fam.window;
            let roots = poly_real_roots(&m.local_poly(pr), w.0, w.1);
            roots
                .into_iter()
                .min_by(|p, q| (p.t - guess[0]).abs().total_cmp(&(q.t - guess[0]).abs()))
                .map(|r| vec![r.t])
        }
    }

    /// Sign changes of each subproblem's detection along the path.
    fn scan(&self, path: &dyn Fn(f64) -> [f64; 2], n: usize) -> Vec<(Seed, f64)> {
        let w = self.fam.window;
        let mut prims: Vec<Primary> = self.subs.iter().map(|s| s.primary).collect();
        prims.sort();
        prims.dedup();
        let us: Vec<f64> = (0..n).map(|i| i as f64 / (n - 1) as f64).collect();
        let roots_at = |u: f64| {
            let m = self.member(path(u));
            let r: Vec<Vec<Vec<f64>>> = prims.iter().map(|&p| m.primary_roots(p, w, self.cfg)).collect();
            (m, r)
        };
        let mut seeds = Vec::new();
        let (mut m0, mut r0) = roots_at(us[0]);
        let match_tol = 0.05 * (w.1 - w.0);
        for k in 1..n {
            let (m1, r1) = roots_at(us[k]);
            for (si, sp) in self.subs.iter().enumerate() {
                let pi = prims.iter().position(|p| *p == sp.primary).unwrap();
                for (i, j) in match_roots(&r0[pi], &r1[pi], match_tol) {
                    let (ta, tb) = (&r0[pi][i], &r1[pi][j]);
                    let (da, db) = (m0.detect(sp.detect, ta), m1.detect(sp.detect, tb));
                    if !(da * db < 0.0) {
                        continue;
                    }
                    if let Some(seed) = self.refine(path, sp, si, (us[k - 1], ta, da), (us[k], tb)) {
                        seeds.push(seed);
                    }
                }
            }
            m0 = m1;
            r0 = r1;
        }
        seeds
    }

    fn refine(
        &self,
        path: &dyn Fn(f64) -> [f64; 2],
        sp: &Subproblem,
        si: usize,
        (mut ua, ta, da): (f64, &Vec<f64>, f64),
        (mut ub, tb): (f64, &Vec<f64>),
    ) -> Option<(Seed, f64)> {
        let (mut ta, mut tb) = (ta.clone(), tb.clone());
        let sign_a = da.signum();
        for _ in 0..60 {
            if ub - ua <= 1e-15 {
                break;
            }
            let um = 0.5 * (ua + ub);
            let guess: Vec<f64> = ta.iter().zip(&tb).map(|(a, b)| 0.5 * (a + b)).collect();
            let m = self.member(path(um));
            let Some(tm) = self.primary_near(&m, sp.primary, &guess) else { break };
            let dm = m.detect(sp.detect, &tm);
            if dm == 0.0 {
                ua = um;
                ub = um;
                ta = tm.clone();
                tb = tm;
                break;
            }
            if dm.signum() == sign_a {
                ua = um;
                ta = tm;
            } else {
                ub = um;
                tb = tm;
            }
        }
        let mut x: Vec<f64> = ta.iter().zip(&tb).map(|(a, b)| 0.5 * (a + b)).collect();
        x.push(0.5 * (ua + ub));
        let nt = x.len() - 1;
        let sys = |z: &[f64]| self.member(path(z[nt])).system(sp, &z[..nt]);
        let z = newton_square(sys, &x, 30).unwrap_or(x);
        let s = path(z[nt]);
        let m = self.member(s);
        if !m.valid(sp, &z[..nt], self.fam.window, self.cfg) {
            return None;
        }
        if scaled_residual(|q: &[f64]| self.member(path(q[nt])).system(sp, &q[..nt]), &z) > 1e-9 {
            return None;
        }
        Some((
            Seed {
                sub: si,
                tv: z[..nt].to_vec(),
                s,
            },
            z[nt],
        ))
    }
}

fn z_of(tv: &[f64], s: [f64; 2]) -> Vec<f64> {
    let mut z = tv.to_vec();
    z.extend_from_slice(&s);
    z
}

fn point_segment_distance(p: &[f64], a: &[f64], b: &[f64]) -> f64 {
    let ab: Vec<f64> = a.iter().zip(b).map(|(x, y)| y - x).collect();
    let ap: Vec<f64> = a.iter().zip(p).map(|(x, y)| y - x).collect();
    let l2: f64 = ab.iter().map(|v| v * v).sum();
    let t = if l2 > 0.0 {
        (ab.iter().zip(&ap).map(|(x, y)| x * y).sum::<f64>() / l2).clamp(0.0, 1.0)
    } else {
        0.0
    };
    ap.iter().zip(&ab).map(|(x, y)| (x - t * y).powi(2)).sum::<f64>().sqrt()
}

/// Distance from p to a polyline.
pub fn polyline_distance(p: &[f64], line: &[Vec<f64>]) -> f64 {
    match line.len() {
        0 => f64::INFINITY,
        1 => point_segment_distance(p, &line[0], &line[0]),
        _ => line
            .windows(2)
            .map(|w| point_segment_distance(p, &w[0], &w[1]))
            .fold(f64::INFINITY, f64::min),
    }
}

struct Continuation<'a> {
    fam: &'a ParamFamily,
    sp: &'a Subproblem,
    cfg: &'a TraceConfig,
}

impl Continuation<'_> {
    fn f(&self, z: &[f64]) -> Vec<f64> {
        let nt = z.len() - 2;
        Member::new(self.fam.curve(z[nt], z[nt + 1])).system(self.sp, &z[..nt])
    }

    fn tangent(&self, z: &[f64], prev: &DVector<f64>) -> Option<DVector<f64>> {
        let n = z.len();
        let j = jacobian(&|q: &[f64]| self.f(q), z, n - 1);
        let mut a = DMatrix::zeros(n, n);
        a.view_mut((0, 0), (n - 1, n)).copy_from(&j);
        for c in 0..n {
            a[(n - 1, c)] = prev[c];
        }
        let mut rhs = DVector::zeros(n);
        rhs[n - 1] = 1.0;
        let tau = a.lu().solve(&rhs)?;
        let norm = tau.norm();
        (norm.is_finite() && norm > 0.0).then(|| tau / norm)
    }

    fn valid(&self, z: &[f64]) -> bool {
        let nt = z.len() - 2;
        let m = Member::new(self.fam.curve(z[nt], z[nt + 1]));
        m.valid(self.sp, &z[..nt], self.fam.window, self.cfg)
    }

    fn correct(&self, pred: &[f64], tau: &DVector<f64>) -> Option<Vec<f64>> {
        let sys = |q: &[f64]| {
            let mut v = self.f(q);
            v.push(q.iter().zip(pred).zip(tau.iter()).map(|((a, b), t)| (a - b) * t).sum());
            v
        };
        newton_square(sys, pred, 12)
    }

    /// Follow the stratum from z0 in direction ±tau0 until it leaves the
    /// box, nears the origin, or stops being valid.
    fn run(&self, z0: &[f64], tau0: &DVector<f64>) -> Vec<Vec<f64>> {
        let cfg = self.cfg;
        let n = z0.len();
        let nt = n - 2;
        let l = cfg.box_half;
        let mut pts = vec![z0.to_vec()];
        let mut z = z0.to_vec();
        let mut tau = tau0.clone();
        let mut h = cfg.max_step * 0.1;
        while pts.len() < cfg.max_points {
            let Some(t_new) = self.tangent(&z, &tau) else { break };
            tau = if t_new.dot(&tau) < 0.0 { -t_new } else { t_new };
            let snorm = z[nt].hypot(z[nt + 1]);
            let ts = tau[nt].hypot(tau[nt + 1]).max(1e-300);
            let cap = cfg.max_step.min(cfg.rel_step * snorm.max(cfg.ring_radius) / ts);
            h = h.min(cap);
            let mut next = None;
            while h >= 1e-14 {
                let pred: Vec<f64> = z.iter().zip(tau.iter()).map(|(a, b)| a + h * b).collect();
                if let Some(c) = self.correct(&pred, &tau) {
                    let dist = c.iter().zip(&pred).map(|(a, b)| (a - b).powi(2)).sum::<f64>().sqrt();
                    if dist <= 0.5 * h {
                        next = Some(c);
                        break;
                    }
                }
                h *= 0.5;
            }
            let Some(c) = next else { break };
            let (s1, s2) = (c[nt], c[nt + 1]);
            if s1.abs() > l || s2.abs() > l {
                // close the trace on the border of the box
                let (p1, p2) = (z[nt], z[nt + 1]);
                let mut frac: f64 = 1.0;
                for (a, b) in [(p1, s1), (p2, s2)] {
                    if b.abs() > l {
                        let edge = l * b.signum();
                        frac = frac.min((edge - a) / (b - a));
                    }
                }
                let e: Vec<f64> = z.iter().zip(&c).map(|(a, b)| a + frac * (b - a)).collect();
                pts.push(e);
                break;
            }
            if !self.valid(&c) {
                break;
            }
            if s1.hypot(s2) < 0.5 * cfg.ring_radius {
                pts.push(c);
                break;
            }
            pts.push(c.clone());
            z = c;
            h = (h * 1.5).min(cfg.max_step);
        }
        pts
    }

    fn initial_tangent(&self, z: &[f64]) -> Option<DVector<f64>> {
        let n = z.len();
        let j = jacobian(&|q: &[f64]| self.f(q), z, n - 1);
        // null vector of J: the right singular vector of the smallest singular value
        let mut sq = DMatrix::zeros(n, n);
        sq.view_mut((0, 0), (n - 1, n)).copy_from(&j);
        let svd = sq.svd(false, true);
        let vt = svd.v_t?;
        let (k, _) = svd
            .singular_values
            .iter()
            .enumerate()
            .min_by(|a, b| a.1.total_cmp(b.1))?;
        let v: DVector<f64> = vt.row(k).transpose();
        Some(v.normalize())
    }
}

/// Trace one stratum of a family.
pub fn trace_stratum(fam: &ParamFamily, id: StratumId, cfg: &TraceConfig) -> StratumTrace {
    trace_strata(fam, &[id], cfg).pop().expect("one trace per stratum")
}

/// Trace several strata, sharing the primary-root scans between them.
pub fn trace_strata(fam: &ParamFamily, ids: &[StratumId], cfg: &TraceConfig) -> Vec<StratumTrace> {
    // (which stratum, index within its own subproblems)
    let mut owner = Vec::new();
    let mut subs = Vec::new();
    for (k, &id) in ids.iter().enumerate() {
        for (j, sp) in subproblems(id).into_iter().enumerate() {
            owner.push((k, j));
            subs.push(sp);
        }
    }
    let scanner = Scanner { fam, subs: &subs, cfg };
    let l = cfg.box_half;
    let mut out: Vec<StratumTrace> = ids
        .iter()
        .map(|&id| StratumTrace {
            family: fam.name.clone(),
            stratum: id,
            branches: Vec::new(),
            points: Vec::new(),
        })
        .collect();
    if subs.is_empty() {
        return out;
    }
    if fam.arity == 1 {
        // even sample count keeps s = 0 off the grid
        let n = cfg.line_samples + cfg.line_samples % 2;
        let path = |u: f64| [-l + 2.0 * l * u, 0.0];
        for (seed, _) in scanner.scan(&path, n) {
            let tr = &mut out[owner[seed.sub].0];
            let dup = tr.points.iter().any(|p| {
                (p.s[0] - seed.s[0]).abs() <= cfg.dedupe && p.t.iter().zip(&seed.tv).all(|(a, b)| (a - b).abs() <= 1e-6)
            });
            if !dup {
                tr.points.push(TracePoint { t: seed.tv, s: vec![seed.s[0]] });
            }
        }
        for tr in &mut out {
            tr.points.sort_by(|a, b| a.s[0].total_cmp(&b.s[0]).then(a.t[0].total_cmp(&b.t[0])));
        }
        return out;
    }

    let r = cfg.ring_radius;
    let ring = move |u: f64| {
        let th = 2.0 * std::f64::consts::PI * u + 0.1234;
        [r * th.cos(), r * th.sin()]
    };
    let mut seeds: Vec<Seed> = scanner.scan(&ring, cfg.ring_samples).into_iter().map(|x| x.0).collect();
    let edges: [Box<dyn Fn(f64) -> [f64; 2]>; 4] = [
        Box::new(move |u: f64| [-l + 2.0 * l * u, -l]),
        Box::new(move |u: f64| [l, -l + 2.0 * l * u]),
        Box::new(move |u: f64| [l - 2.0 * l * u, l]),
        Box::new(move |u: f64| [-l, l - 2.0 * l * u]),
    ];
    for e in edges.iter() {
        seeds.extend(scanner.scan(e.as_ref(), cfg.edge_samples).into_iter().map(|x| x.0));
    }

    let mut lines: Vec<(usize, Vec<Vec<f64>>)> = Vec::new();
    for seed in seeds {
        let z0 = z_of(&seed.tv, seed.s);
        if lines.iter().any(|(si, line)| *si == seed.sub && polyline_distance(&z0, line) <= cfg.dedupe) {
            continue;
        }
        let sp = &subs[seed.sub];
        let cont = Continuation { fam, sp, cfg };
        let Some(tau) = cont.initial_tangent(&z0) else { continue };
        let fwd = cont.run(&z0, &tau);
        let bwd = cont.run(&z0, &(-tau));
        let mut line: Vec<Vec<f64>> = bwd.into_iter().rev().collect();
        line.extend(fwd.into_iter().skip(1));
        if line.len() >= 2 {
            lines.push((seed.sub, line));
        }
    }

    for (sub, line) in lines {
        let nt = line[0].len() - 2;
        let mut points: Vec<TracePoint> = line
            .iter()
            .map(|z| TracePoint {
                t: z[..nt].to_vec(),
                s: z[nt..].to_vec(),
            })
            .collect();
        // start at the end nearer the origin
        let norm = |p: &TracePoint| p.s[0].hypot(p.s[1]);
        if norm(&points[0]) > norm(points.last().unwrap()) {
            points.reverse();
        }
        let (k, j) = owner[sub];
        let mut branch = TracedBranch {
            subproblem: j,
            points,
            fit: None,
            side: String::new(),
        };
        let poly = branch.polyline();
        branch.fit = fit_power_law(&poly, &cfg.fit);
        branch.side = side_label(&poly, cfg.ring_radius);
        out[k].branches.push(branch);
    }
    for tr in &mut out {
        tr.branches.sort_by(|a, b| {
            let ka = a.polyline().last().copied().unwrap_or([0.0; 2]);
            let kb = b.polyline().last().copied().unwrap_or([0.0; 2]);
            ka[0].total_cmp(&kb[0]).then(ka[1].total_cmp(&kb[1]))
        });
    }
    out
}

/// Distance in the parameter plane from p to a traced branch.
///
/// Near the branch the polyline's chord error is removed by solving the
/// stratum's system along the normal through p.
pub fn branch_distance(fam: &ParamFamily, stratum: StratumId, branch: &TracedBranch, p: [f64; 2]) -> f64 {
    let poly = branch.polyline();
    let seg = |a: [f64; 2], b: [f64; 2]| {
        let ab = [b[0] - a[0], b[1] - a[1]];
        let l2 = ab[0] * ab[0] + ab[1] * ab[1];
        let u = if l2 > 0.0 {
            (((p[0] - a[0]) * ab[0] + (p[1] - a[1]) * ab[1]) / l2).clamp(0.0, 1.0)
        } else {
            0.0
        };
        ((p[0] - a[0] - u * ab[0]).hypot(p[1] - a[1] - u * ab[1]), u)
    };
    let Some((k, (d, u))) = (0..poly.len().saturating_sub(1))
        .map(|k| (k, seg(poly[k], poly[k + 1])))
        .min_by(|a, b| a.1 .0.total_cmp(&b.1 .0))
    else {
        return poly.first().map_or(f64::INFINITY, |q| (p[0] - q[0]).hypot(p[1] - q[1]));
    };
    let (a, b) = (poly[k], poly[k + 1]);
    let len = (b[0] - a[0]).hypot(b[1] - a[1]);
    if d > 1e-4 || len == 0.0 {
        return d;
    }
    let Some(sp) = subproblems(stratum).get(branch.subproblem).copied() else { return d };
    let n = [-(b[1] - a[1]) / len, (b[0] - a[0]) / len];
    let (ta, tb) = (&branch.points[k].t, &branch.points[k + 1].t);
    let mut z: Vec<f64> = ta.iter().zip(tb).map(|(x, y)| x + u * (y - x)).collect();
    let nt = z.len();
    let foot = [a[0] + u * (b[0] - a[0]), a[1] + u * (b[1] - a[1])];
    z.push((foot[0] - p[0]) * n[0] + (foot[1] - p[1]) * n[1]);
    let sys = |z: &[f64]| {
        let s = [p[0] + z[nt] * n[0], p[1] + z[nt] * n[1]];
        Member::new(fam.curve(s[0], s[1])).system(&sp, &z[..nt])
    };
    match newton_square(sys, &z, 30) {
        Some(r) if r[nt].abs() <= 2.0 * d + 1e-12 => r[nt].abs(),
        _ => d,
    }
}

fn side_label(poly: &[[f64; 2]], r0: f64) -> String {
    let Some(first) = poly.first() else { return String::new() };
    if first[0].hypot(first[1]) > 2.0 * r0 {
        return "detached".into();
    }
    let far = poly.last().unwrap();
    let (i, v) = if far[0].abs() >= far[1].abs() { (1, far[0]) } else { (2, far[1]) };
    format!("s{} {} 0", i, if v < 0.0 { "<" } else { ">" })
}

/// All traced strata of a family.
pub fn trace_all(fam: &ParamFamily, cfg: &TraceConfig) -> Vec<StratumTrace> {
    trace_strata(fam, &StratumId::traced(), cfg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::model::model_family;

    #[test]
    fn one_parameter_events() {
        let cfg = TraceConfig::default();
        let i2 = model_family("I2").unwrap();
        let t = trace_stratum(&i2, StratumId::I(2), &cfg);
        assert_eq!(t.points.len(), 1, "{:?}", t.points);
        assert!(t.points[0].s[0].abs() < 1e-12 && t.points[0].t[0].abs() < 1e-12);
        let c = model_family("C").unwrap();
        let t = trace_stratum(&c, StratumId::C, &cfg);
        assert_eq!(t.points.len(), 1);
        assert!(t.points[0].s[0].abs() < 1e-12);
        let li = model_family("LI").unwrap();
        let t = trace_stratum(&li, StratumId::LI(1), &cfg);
        assert_eq!(t.points.len(), 1, "{:?}", t.points);
        assert!(t.points[0].s[0].abs() < 1e-12);
        assert!(trace_stratum(&i2, StratumId::V(2), &cfg).is_empty());
    }

    #[test]
    fn cusp_self_intersection_strata_of_the_ramphoid_model() {
        let cfg = TraceConfig::default();
        let rc = model_family("RC").unwrap();
        let tc = trace_stratum(&rc, StratumId::Tc, &cfg);
        assert!(!tc.branches.is_empty());
        for b in &tc.branches {
            for p in &b.points {
                let (s1, s2) = (p.s[0], p.s[1]);
                if s1.hypot(s2) < 1e-2 {
                    assert!(s1 < 0.0);
                    assert!((s2 - s1 * s1 / 4.0).abs() <= 0.3 * s1 * s1, "{s1} {s2}");
                }
            }
        }
    }
}
