//! Checks that reproduce the expected behaviour end to end.
//!
//! Each check returns an [`Outcome`]; `run_suite` bundles them for the
//! acceptance test and the command line.

use crate::caustic::{
    asymptote_model_check, bif_residuals, caustic, caustic_point, evolute, fit_polynomial, lightlike_tangency, CausticBranch,
    CausticConfig,
};
use crate::curve::PolyCurve;
use crate::detect::{PointKind, VertexDirection};
use crate::families::model::model_family;
use crate::families::resultant::{compare_v2_routes, ResultantConfig};
use crate::families::sweep::{census_sweep, region_consistency, SweepConfig};
use crate::families::trace::{trace_all, trace_strata, StratumTrace, TraceConfig};
use crate::families::{check_li_order, SWEEP_MODELS};
use crate::mink::minkowski_dot;
use crate::multilocal::{census, feature_string, CensusConfig};
use crate::poly::Poly;
use crate::scalar::Scalar;
use crate::strata::StratumId;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

/// f, f′, f″, f‴ at t0 by central differences of step h, with every
/// evaluation done exactly so only the O(h²) truncation error remains.
pub fn central_differences(f: impl Fn(&BigRational) -> BigRational, t0: f64, h: f64) -> [f64; 4] {
    let t = BigRational::from_float(t0).expect("finite t0");
    let h = BigRational::from_float(h).expect("finite h");
    let two = BigRational::from_i64(2);
    let at = |k: i64| f(&(t.clone() + h.clone() * BigRational::from_i64(k)));
    let (m2, m1, z, p1, p2) = (at(-2), at(-1), at(0), at(1), at(2));
    let d1 = (p1.clone() - m1.clone()) / (two.clone() * h.clone());
    let d2 = (p1.clone() - two.clone() * z.clone() + m1.clone()) / (h.clone() * h.clone());
    let d3 = (p2 - two.clone() * p1 + two.clone() * m1 - m2) / (two * h.clone() * h.clone() * h);
    [z.to_f64(), d1.to_f64(), d2.to_f64(), d3.to_f64()]
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Outcome {
    pub id: u32,
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}] criterion {:>2} {}: {}",
            if self.pass { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.detail
        )
    }
}

/// Collects named sub-checks into one outcome.
struct Checks {
    parts: Vec<(bool, String)>,
}

impl Checks {
    fn new() -> Self {
        Checks { parts: Vec::new() }
    }

    fn check(&mut self, ok: bool, what: impl Into<String>) {
        self.parts.push((ok, what.into()));
    }

    fn finish(self, id: u32, name: &str) -> Outcome {
        let pass = !self.parts.is_empty() && self.parts.iter().all(|p| p.0);
        let failed: Vec<&str> = self.parts.iter().filter(|p| !p.0).map(|p| p.1.as_str()).collect();
        let detail = if pass {
            self.parts.iter().map(|p| p.1.as_str()).collect::<Vec<_>>().join("; ")
        } else {
            format!("failed: {}", failed.join("; "))
        };
        Outcome {
            id,
            name: name.into(),
            pass,
            detail,
        }
    }
}

fn rel_close(got: f64, want: f64, tol: f64) -> bool {
    (got - want).abs() <= tol * want.abs()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct VerifyConfig {
    pub seed: u64,
    /// Random curves per property check.
    pub random_curves: usize,
    /// Largest order k for the lightlike-inflection identity.
    pub kmax: u32,
    pub trace: TraceConfig,
    pub sweep: SweepConfig,
    pub resultant: ResultantConfig,
    pub census: CensusConfig,
    pub caustic: CausticConfig,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            seed: 20_240_611,
            random_curves: 20,
            kmax: 5,
            trace: TraceConfig::default(),
            sweep: SweepConfig::default(),
            resultant: ResultantConfig::default(),
            census: CensusConfig::default(),
            caustic: CausticConfig::default(),
        }
    }
}

/// Lightlike inflections of order k are vertices of order 2k.
pub fn li_identity(cfg: &VerifyConfig) -> Outcome {
    let mut c = Checks::new();
    for k in 1..=cfg.kmax {
        let r = check_li_order(k);
        c.check(
            r.pass(),
            format!("k={k}: g^({}) = {} (expected {}), lower vanish {}, Leibniz {}", 2 * k, r.derivatives[2 * k as usize], r.expected_top, r.lower_vanish, r.leibniz_agrees),
        );
    }
    c.finish(1, "lightlike inflection orders")
}

fn family_features(name: &str, s: f64, window: Option<(f64, f64)>, cfg: &CensusConfig) -> Result<(String, crate::detect::Census), String> {
    let f = model_family(name).map_err(|e| e.to_string())?;
    let (a, b) = window.unwrap_or(f.window);
    let k = census(&f.curve(s, 0.0), a, b, cfg).map_err(|e| e.to_string())?;
    Ok((feature_string(&k), k))
}

/// Census on both sides of an inflection of order two.
pub fn i2_census(cfg: &VerifyConfig) -> Outcome {
    let mut c = Checks::new();
    for (s, want) in [(-0.01, "I V- I"), (-0.001, "I V- I"), (0.01, "V+"), (0.001, "V+")] {
        match family_features("I2", s, Some((-0.5, 0.5)), &cfg.census) {
            Ok((got, _)) => c.check(got == want, format!("s1={s}: \"{got}\" (want \"{want}\")")),
            Err(e) => c.check(false, format!("s1={s}: {e}")),
        }
    }
    c.finish(2, "I(2) censuses")
}

/// Census on both sides of a lightlike inflection.
pub fn li_census(cfg: &VerifyConfig) -> Outcome {
    let mut c = Checks::new();
    match family_features("LI", -0.03, None, &cfg.census) {
        Ok((got, k)) => {
            c.check(got == "L I L", format!("u=-0.03: \"{got}\" (want \"L I L\")"));
            let want = (0.03f64 / 3.0).sqrt();
            let ls: Vec<f64> = k.of_kind(|p| matches!(p, PointKind::Lightlike)).iter().map(|p| p.t).collect();
            let err = if ls.len() == 2 {
                (ls[0] + want).abs().max((ls[1] - want).abs())
            } else {
                f64::INFINITY
            };
            c.check(err <= 1e-8, format!("lightlike at ±√(−u/3): error {err:.1e}"));
        }
        Err(e) => c.check(false, format!("u=-0.03: {e}")),
    }
    match family_features("LI", 0.03, None, &cfg.census) {
        Ok((got, _)) => c.check(got == "V- I V-", format!("u=+0.03: \"{got}\" (want \"V- I V-\")")),
        Err(e) => c.check(false, format!("u=+0.03: {e}")),
    }
    c.finish(3, "LI censuses")
}

/// Window used for the cusp family: holds the local features only.
pub const CUSP_WINDOW: (f64, f64) = (-0.3, 0.3);

fn vertex_directions(k: &crate::detect::Census) -> Vec<VertexDirection> {
    k.points
        .iter()
        .filter_map(|p| match p.kind {
            PointKind::Vertex { direction, .. } => Some(direction),
            _ => None,
        })
        .collect()
}

/// The cusp family on either side of the cusp.
pub fn cusp_family(cfg: &VerifyConfig) -> Outcome {
    let mut c = Checks::new();
    match family_features("C", -0.04, Some(CUSP_WINDOW), &cfg.census) {
        Ok((got, k)) => {
            let si = &k.self_intersections;
            let ok_x = si.len() == 1 && (si[0].t1 + 0.2).abs() <= 1e-6 && (si[0].t2 - 0.2).abs() <= 1e-6;
            c.check(ok_x, format!("s=-0.04: self-intersections {:?}", si.iter().map(|x| (x.t1, x.t2)).collect::<Vec<_>>()));
            let ls: Vec<f64> = k.of_kind(|p| matches!(p, PointKind::Lightlike)).iter().map(|p| p.t).collect();
            let near = ls.len() == 2 && ls.iter().all(|t| rel_close(t.abs(), 0.02, 0.1)) && ls[0] < 0.0 && ls[1] > 0.0;
            c.check(near, format!("lightlike at {ls:?} (≈ ∓0.02)"));
            let between = !si.is_empty() && ls.iter().all(|&t| t > si[0].t1 && t < si[0].t2);
            c.check(between, "lightlike strictly between the self-intersection parameters");
            let d = vertex_directions(&k);
            c.check(d == vec![VertexDirection::Inward], format!("vertices {d:?}"));
            let ni = k.counts().inflections;
            c.check(ni == 0, format!("{ni} inflections; string \"{got}\""));
        }
        Err(e) => c.check(false, format!("s=-0.04: {e}")),
    }
    match family_features("C", 0.04, Some(CUSP_WINDOW), &cfg.census) {
        Ok((got, k)) => {
            let n = k.counts();
            c.check(n.inflections == 2, format!("s=+0.04: {} inflections", n.inflections));
            let d = vertex_directions(&k);
            use VertexDirection::{Inward, Outward};
            c.check(d == vec![Outward, Inward, Outward], format!("s=+0.04: vertices {d:?} (want outward, inward, outward)"));
            c.check(n.lightlike == 2, format!("s=+0.04: {} lightlike points", n.lightlike));
            c.check(k.self_intersections.is_empty(), format!("s=+0.04: {} self-intersections; string \"{got}\"", k.self_intersections.len()));
        }
        Err(e) => c.check(false, format!("s=+0.04: {e}")),
    }
    c.finish(4, "cusp family censuses")
}

/// Point and direction of a caustic line.
type Line = (f64, f64, f64, f64);

/// Degree-5 fits of the branch's x and y in t, plus its lines.
fn branch_fit(curve: &PolyCurve, half: f64, cfg: &CausticConfig) -> Result<(Vec<f64>, Vec<f64>, Vec<Line>), String> {
    let cau = caustic(curve, -half, half, cfg).map_err(|e| e.to_string())?;
    let mut ts = Vec::new();
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    let mut lines = Vec::new();
    for b in &cau.branches {
        match b {
            CausticBranch::Parametrized { samples, .. } => {
                for s in samples.iter().filter(|s| !s.asymptotic && s.t.abs() <= half) {
                    ts.push(s.t);
                    xs.push(s.point.x);
                    ys.push(s.point.y);
                }
            }
            CausticBranch::Line { point, direction, .. } => lines.push((point.x, point.y, direction.x, direction.y)),
        }
    }
    if ts.len() < 10 {
        return Err("too few branch samples".into());
    }
    Ok((fit_polynomial(&ts, &xs, 5), fit_polynomial(&ts, &ys, 5), lines))
}

/// Caustics of cusps: a straight line plus a branch with known leading terms.
pub fn caustic_expansions(cfg: &VerifyConfig) -> Outcome {
    let mut c = Checks::new();
    let ordinary = PolyCurve::from_coeffs(&[0.0, 0.0, 1.0], &[0.0, 0.0, 0.0, 1.0]);
    match branch_fit(&ordinary, 0.05, &cfg.caustic) {
        Ok((x, y, lines)) => {
            let line_ok = lines.len() == 1 && lines[0].0.abs() < 1e-12 && lines[0].2.abs() < 1e-12;
            c.check(line_ok, "(t²,t³): line x = 0");
            c.check(rel_close(x[2], -1.0, 0.02), format!("(t²,t³): x ≈ {:.4}·t²", x[2]));
            c.check(rel_close(y[1], -4.0 / 3.0, 0.02), format!("y ≈ {:.4}·t", y[1]));
        }
        Err(e) => c.check(false, format!("(t²,t³): {e}")),
    }
    let tilted = PolyCurve::from_coeffs(&[0.0, 0.0, 1.0], &[0.0, 0.0, 1.0, 1.0]);
    match branch_fit(&tilted, 0.05, &cfg.caustic) {
        Ok((x, y, lines)) => {
            let line_ok = lines.len() == 1 && (lines[0].2 - lines[0].3).abs() < 1e-12 && (lines[0].0 - lines[0].1).abs() < 1e-12;
            c.check(line_ok, "(t²,t²+t³): line y = x");
            for (name, got, want) in [("x2", x[2], 5.0), ("y2", y[2], 5.0), ("x3", x[3], 9.0), ("y3", y[3], 4.0)] {
                c.check(rel_close(got, want, 0.05), format!("{name} = {got:.4} (want {want})"));
            }
        }
        Err(e) => c.check(false, format!("(t²,t²+t³): {e}")),
    }
    c.finish(5, "caustic expansions at cusps")
}

/// Asymptotic models x^n·y → L of evolutes at inflections of order n.
pub fn evolute_asymptotes(_cfg: &VerifyConfig) -> Outcome {
    let mut c = Checks::new();
    for (n, want) in [(1u32, -1.0 / 12.0), (2, -1.0 / 27.0), (3, -27.0 / 1280.0)] {
        let mut g = vec![0.0; n as usize + 3];
        g[n as usize + 2] = 1.0;
        let curve = PolyCurve::graph(Poly::from_f64(&g));
        match asymptote_model_check(&curve, 0.0, n, 0.1) {
            Ok(l) => c.check(rel_close(l, want, 0.01), format!("(t,t^{}): {l:.6} (want {want:.6})", n + 2)),
            Err(e) => c.check(false, format!("(t,t^{}): {e}", n + 2)),
        }
    }
    c.finish(6, "evolute asymptotes")
}

fn fits_near(tr: &StratumTrace, want: f64, exponent: f64) -> (bool, String) {
    let local: Vec<_> = tr.branches.iter().filter(|b| b.side != "detached").collect();
    if local.is_empty() {
        return (false, format!("{}: no branch at the origin", tr.stratum));
    }
    let mut ok = true;
    let mut got = Vec::new();
    for b in local {
        match b.fit {
            Some(f) => {
                ok &= (f.exponent - exponent).abs() <= 0.05 && rel_close(f.coefficient, want, 0.05);
                got.push(format!("e={:.3} c={:.5}", f.exponent, f.coefficient));
            }
            None => {
                ok = false;
                got.push("no fit".into());
            }
        }
    }
    (ok, format!("{} [{}] (want e={exponent} c={want:.5})", tr.stratum, got.join(", ")))
}

fn find(traces: &[StratumTrace], id: StratumId) -> &StratumTrace {
    traces.iter().find(|t| t.stratum == id).expect("traced")
}

/// Strata of the lightlike-cusp family.
pub fn lc_stratification(cfg: &VerifyConfig) -> Outcome {
    let mut c = Checks::new();
    let fam = model_family("LC").expect("built-in");
    let ids = [StratumId::LI(1), StratumId::V(2), StratumId::LT, StratumId::VT];
    let traces = trace_strata(&fam, &ids, &cfg.trace);
    let (ok, d) = fits_near(find(&traces, StratumId::LI(1)), 1.0 / 3.0, 2.0);
    c.check(ok, d);
    let (ok, d) = fits_near(find(&traces, StratumId::LT), -1.0, 2.0);
    c.check(ok, d);
    let vt = find(&traces, StratumId::VT);
    let vt_ok = !vt.branches.is_empty() && vt.branches.iter().all(|b| b.fit.is_some_and(|f| (f.exponent - 2.0).abs() <= 0.05));
    let vt_fits: Vec<String> = vt
        .branches
        .iter()
        .map(|b| b.fit.map_or("no fit".into(), |f| format!("e={:.3} c={:.5}", f.exponent, f.coefficient)))
        .collect();
    c.check(vt_ok, format!("VT [{}] (want e=2)", vt_fits.join(", ")));
    let v2 = find(&traces, StratumId::V(2));
    let targets = [(20f64.sqrt() - 5.0).abs() / 25.0, (20f64.sqrt() + 5.0) / 25.0];
    let mut hit = [false; 2];
    let mut all_ok = !v2.branches.is_empty();
    let mut got = Vec::new();
    for b in &v2.branches {
        let Some(f) = b.fit else {
            all_ok = false;
            continue;
        };
        got.push(format!("e={:.3} c={:.5}", f.exponent, f.coefficient));
        let which = targets.iter().position(|&w| rel_close(f.coefficient, w, 0.05));
        all_ok &= which.is_some() && (f.exponent - 2.0).abs() <= 0.05;
        if let Some(i) = which {
            hit[i] = true;
        }
    }
    c.check(all_ok && hit[0] && hit[1], format!("V(2) [{}] (want 0.02111, 0.37889)", got.join(", ")));
    let cmp = compare_v2_routes(&fam, &v2.branches, &cfg.resultant);
    c.check(
        cmp.hausdorff() <= 1e-6 && cmp.resultant_points > 0 && cmp.resultant_points == cmp.system_points,
        format!(
            "resultant vs system Hausdorff {:.1e} over {} values of s2 ({} / {} points)",
            cmp.hausdorff(),
            cmp.s2_values,
            cmp.resultant_points,
            cmp.system_points
        ),
    );
    c.finish(7, "lightlike cusp stratification")
}

/// Strata of the ramphoid-cusp family.
pub fn rc_stratification(cfg: &VerifyConfig) -> Outcome {
    let mut c = Checks::new();
    let fam = model_family("RC").expect("built-in");
    let ids = [
        StratumId::I(2),
        StratumId::IT,
        StratumId::V(2),
        StratumId::VT,
        StratumId::Tc,
        StratumId::LI(1),
        StratumId::LT,
    ];
    let traces = trace_strata(&fam, &ids, &cfg.trace);
    for (id, want, e) in [
        (StratumId::I(2), 1.0 / 16.0, 3.0),
        (StratumId::IT, -0.25, 3.0),
        (StratumId::V(2), 0.05, 2.0),
        (StratumId::VT, -0.75, 2.0),
        (StratumId::Tc, 0.25, 2.0),
    ] {
        let (ok, d) = fits_near(find(&traces, id), want, e);
        c.check(ok, d);
    }
    for id in [StratumId::LI(1), StratumId::LT] {
        let t = find(&traces, id);
        c.check(t.is_empty(), format!("{id} empty ({} branches)", t.branches.len()));
    }
    c.finish(8, "ramphoid cusp stratification")
}

/// Census strings change only across traced strata.
pub fn region_check(cfg: &VerifyConfig) -> Outcome {
    let mut c = Checks::new();
    for name in SWEEP_MODELS {
        let fam = model_family(name).expect("built-in");
        let traces = trace_all(&fam, &cfg.trace);
        let cells = census_sweep(&fam, &cfg.sweep.grid(fam.arity), &cfg.sweep.census);
        let r = region_consistency(&fam, &cells, &traces, &cfg.sweep);
        let first = r
            .violations
            .first()
            .map(|v| format!(" e.g. {:?}→{:?} \"{}\"→\"{}\"", v.a, v.b, v.from, v.to))
            .unwrap_or_default();
        c.check(
            r.pass(),
            format!("{name}: {} regions, {} changes, {} violations{first}", r.regions, r.changes, r.violations.len()),
        );
    }
    c.finish(9, "region consistency")
}

fn random_curve(rng: &mut ChaCha8Rng) -> PolyCurve {
    let mut x: Vec<f64> = (0..5).map(|_| rng.gen_range(-1.0..1.0)).collect();
    let y: Vec<f64> = (0..5).map(|_| rng.gen_range(-1.0..1.0)).collect();
    x[1] = 1.0 + x[1].abs();
    PolyCurve::from_coeffs(&x, &y)
}

/// A curve lightlike at t = 0 whose vertex numerator does not vanish there.
fn random_omega_curve(rng: &mut ChaCha8Rng) -> PolyCurve {
    loop {
        let mut x: Vec<f64> = (0..5).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let mut y: Vec<f64> = (0..5).map(|_| rng.gen_range(-1.0..1.0)).collect();
        x[1] = 1.0;
        y[1] = if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
        x[0] = 0.0;
        y[0] = 0.0;
        let c = PolyCurve::from_coeffs(&x, &y);
        let p = c.curvature_numerator_poly().evalf(0.0);
        let w = c.vertex_numerator_poly().evalf(0.0);
        if p.abs() > 0.05 && w.abs() > 0.05 {
            return c;
        }
    }
}

/// Property checks on random inputs.
pub fn property_suites(cfg: &VerifyConfig) -> Outcome {
    let mut c = Checks::new();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);

    // jet coefficients against exact central differences
    let mut worst = 0.0f64;
    for _ in 0..cfg.random_curves {
        let coeffs: Vec<f64> = (0..7).map(|_| rng.gen_range(-2.0..2.0)).collect();
        let t0: f64 = rng.gen_range(-1.0..1.0);
        let p = Poly::new(coeffs.clone());
        let pr: Poly<BigRational> = Poly::new(coeffs.iter().map(|c| BigRational::from_float(*c).expect("finite")).collect());
        let j = p.jet(&t0, 3);
        let fd = central_differences(|t| pr.eval(t), t0, 1e-4);
        for (i, d) in fd.iter().enumerate() {
            let exact = j.derivative_value(i);
            let floor = p.derivative_scale(i, t0);
            worst = worst.max((exact - d).abs() / exact.abs().max(floor));
        }
    }
    c.check(worst <= 1e-5, format!("jets vs finite differences: worst relative error {worst:.1e}"));

    // bifurcation conditions on caustic samples, caustic against evolute
    let (mut bif, mut gap, mut nsamples, mut npoints) = (0.0f64, 0.0f64, 0usize, 0usize);
    let ccfg = CausticConfig {
        initial_samples: 65,
        ..cfg.caustic
    };
    for _ in 0..cfg.random_curves {
        let curve = random_curve(&mut rng);
        if let Ok(cau) = caustic(&curve, -0.3, 0.3, &ccfg) {
            for b in &cau.branches {
                if let CausticBranch::Parametrized { samples, .. } = b {
                    for s in samples.iter().filter(|s| !s.asymptotic) {
                        let (r1, r2) = bif_residuals(&curve, s.t, s.point);
                        bif = bif.max(r1.abs()).max(r2.abs());
                        nsamples += 1;
                    }
                }
            }
        }
        for _ in 0..16 {
            let t: f64 = rng.gen_range(-0.3..0.3);
            let v = curve.velocity(t);
            let q = minkowski_dot(v, v);
            let p = curve.curvature_numerator_poly().evalf(t);
            if q.abs() <= 1e-3 * v.norm2() || p.abs() <= 1e-3 {
                continue;
            }
            if let (Ok(e), Ok(u)) = (evolute(&curve, t), caustic_point(&curve, t)) {
                gap = gap.max((e - u).norm() / (1.0 + e.norm()));
                npoints += 1;
            }
        }
    }
    c.check(nsamples > 0 && bif <= 1e-8, format!("d′ = d″ = 0 on {nsamples} caustic samples: worst {bif:.1e}"));
    c.check(npoints > 0 && gap <= 1e-9, format!("caustic = evolute at {npoints} points: worst {gap:.1e}"));

    // ordinary tangency at lightlike points
    let mut curves = vec![PolyCurve::graph(Poly::from_f64(&[0.0, 1.0, 1.0]))];
    for _ in 0..cfg.random_curves {
        curves.push(random_omega_curve(&mut rng));
    }
    let ordinary = curves
        .iter()
        .filter(|cv| lightlike_tangency(cv, 0.0).is_ok_and(|r| r.is_ordinary(1e-9)))
        .count();
    c.check(
        ordinary == curves.len(),
        format!("second-order contact at lightlike points: {ordinary}/{} curves", curves.len()),
    );
    c.finish(10, "property suites")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    All,
    Criterion(u32),
}

pub const SUITE_NAMES: [(&str, u32); 10] = [
    ("li-subset-v", 1),
    ("i2-census", 2),
    ("li-census", 3),
    ("cusp", 4),
    ("caustic-expansions", 5),
    ("asymptotes", 6),
    ("lc-strata", 7),
    ("rc-strata", 8),
    ("regions", 9),
    ("properties", 10),
];

#[derive(Debug, thiserror::Error, Clone, PartialEq)]
#[error("unknown suite {0:?}; expected all, 1..10 or one of li-subset-v, i2-census, li-census, cusp, caustic-expansions, asymptotes, lc-strata, rc-strata, regions, properties")]
pub struct UnknownSuite(pub String);

impl FromStr for Suite {
    type Err = UnknownSuite;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "all" {
            return Ok(Suite::All);
        }
        if let Ok(n) = s.parse::<u32>() {
            if (1..=10).contains(&n) {
                return Ok(Suite::Criterion(n));
            }
        }
        SUITE_NAMES
            .iter()
            .find(|(name, _)| *name == s)
            .map(|(_, n)| Suite::Criterion(*n))
            .ok_or_else(|| UnknownSuite(s.to_string()))
    }
}

pub fn run_criterion(n: u32, cfg: &VerifyConfig) -> Option<Outcome> {
    Some(match n {
        1 => li_identity(cfg),
        2 => i2_census(cfg),
        3 => li_census(cfg),
        4 => cusp_family(cfg),
        5 => caustic_expansions(cfg),
        6 => evolute_asymptotes(cfg),
        7 => lc_stratification(cfg),
        8 => rc_stratification(cfg),
        9 => region_check(cfg),
        10 => property_suites(cfg),
        _ => return None,
    })
}

pub fn run_suite(suite: Suite, cfg: &VerifyConfig) -> Vec<Outcome> {
    match suite {
        Suite::All => (1..=10).filter_map(|n| run_criterion(n, cfg)).collect(),
        Suite::Criterion(n) => run_criterion(n, cfg).into_iter().collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_parse() {
        assert_eq!("all".parse::<Suite>().unwrap(), Suite::All);
        assert_eq!("li-subset-v".parse::<Suite>().unwrap(), Suite::Criterion(1));
        assert_eq!("7".parse::<Suite>().unwrap(), Suite::Criterion(7));
        assert!("11".parse::<Suite>().is_err());
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn cheap_criteria_pass() {
        let cfg = VerifyConfig::default();
        for n in [1, 2, 3, 5, 6] {
            let o = run_criterion(n, &cfg).unwrap();
            assert!(o.pass, "{o}");
        }
    }

    #[test]
    fn cusp_family_on_the_positive_side_before_the_far_vertices_meet() {
        // for 0 < s < 1/27 the three local vertices are outward, inward, outward
        let cfg = VerifyConfig::default();
        let (_, k) = family_features("C", 0.01, Some(CUSP_WINDOW), &cfg.census).unwrap();
        use VertexDirection::{Inward, Outward};
        assert_eq!(vertex_directions(&k), vec![Outward, Inward, Outward]);
        let n = k.counts();
        assert_eq!((n.inflections, n.lightlike, k.self_intersections.len()), (2, 2, 0));
    }
}
