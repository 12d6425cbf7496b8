//! V(2) of the lightlike-cusp family through a quartic discriminant.
//!
//! Near the degenerate member, four roots of the vertex polynomial W stay
//! small while the rest run off.  A vertex of order two is a double root
//! among those four, so V(2) is the zero set of the discriminant of the
//! monic quartic with exactly these roots.  After depressing it to
//! t⁴ + a2t² + a1t + a0 the discriminant reads
//! R = 16a0a2⁴ − 4a1²a2³ − 128a0²a2² + 144a0a1²a2 − 27a1⁴ + 256a0³.
//! Lightlike inflections and the cusp line also make R vanish and are
//! filtered out afterwards.

use super::model::ParamFamily;
use super::trace::{newton_square, subproblems, Member, TracedBranch};
use crate::curve::PolyCurve;
use crate::poly::Poly;
use crate::strata::StratumId;
use nalgebra::{Complex, DMatrix};
use serde::{Deserialize, Serialize};

fn discriminant_terms(a2: f64, a1: f64, a0: f64) -> [f64; 6] {
    [
        16.0 * a0 * a2.powi(4),
        -4.0 * a1 * a1 * a2.powi(3),
        -128.0 * a0 * a0 * a2 * a2,
        144.0 * a0 * a1 * a1 * a2,
        -27.0 * a1.powi(4),
        256.0 * a0.powi(3),
    ]
}

/// Discriminant of the depressed quartic t⁴ + a2t² + a1t + a0.
pub fn depressed_quartic_discriminant(a2: f64, a1: f64, a0: f64) -> f64 {
    discriminant_terms(a2, a1, a0).iter().sum()
}

/// Complex roots of p via the companion matrix.
pub fn complex_roots(p: &Poly) -> Vec<Complex<f64>> {
    let Some(n) = p.degree() else { return Vec::new() };
    if n == 0 {
        return Vec::new();
    }
    let lead = p.coeff(n);
    let mut m = DMatrix::zeros(n, n);
    for i in 1..n {
        m[(i, i - 1)] = 1.0;
    }
    for i in 0..n {
        m[(i, n - 1)] = -p.coeff(i) / lead;
    }
    m.complex_eigenvalues().iter().copied().collect()
}

#[derive(Clone, Debug, PartialEq)]
pub struct SmallQuartic {
    pub roots: [Complex<f64>; 4],
    /// (a2, a1, a0) after the shift t ↦ t − shift.
    pub depressed: (f64, f64, f64),
    pub shift: f64,
    pub discriminant: f64,
    /// Largest term of the discriminant; its size sets the rounding floor.
    pub term_scale: f64,
}

impl SmallQuartic {
    /// Midpoint of the closest pair of roots: where a double root forms.
    pub fn double_root_guess(&self) -> f64 {
        let mut best = (f64::INFINITY, 0.0);
        for i in 0..4 {
            for j in i + 1..4 {
                let d = (self.roots[i] - self.roots[j]).norm();
                if d < best.0 {
                    best = (d, 0.5 * (self.roots[i].re + self.roots[j].re));
                }
            }
        }
        best.1
    }
}

fn horner(c: &[f64], z: Complex<f64>) -> Complex<f64> {
    c.iter().rev().fold(Complex::new(0.0, 0.0), |acc, &a| acc * z + a)
}

/// Power sums Σ (r − c)^k, k = 0..=4, over the roots r of w inside |t| = rho.
///
/// Trapezoid rule for ∮ (t − c)^k w′/w dt on the circle.  Unlike the roots
/// themselves these stay accurate when several roots crowd together.
fn power_sums(w: &Poly, rho: f64, c: f64, n: usize) -> [f64; 5] {
    let dw = w.derivative();
    let mut out = [0.0; 5];
    for j in 0..n {
        let th = std::f64::consts::TAU * j as f64 / n as f64;
        let z = Complex::from_polar(rho, th);
        // dt = i z dθ, and the 1/(2πi) cancels the i
        let f = horner(dw.coeffs(), z) / horner(w.coeffs(), z) * z / n as f64;
        let mut zk = Complex::new(1.0, 0.0);
        for o in out.iter_mut() {
            *o += (f * zk).re;
            zk *= z - c;
        }
    }
    out
}

/// The quartic formed by the four smallest roots of W.
///
/// The roots only pick a circle that separates those four from the rest;
/// the quartic itself comes from contour power sums about their centroid.
pub fn small_quartic(curve: &PolyCurve) -> Option<SmallQuartic> {
    let w = curve.vertex_numerator_poly();
    let mut r = complex_roots(&w);
    if r.len() < 4 {
        return None;
    }
    r.sort_by(|a, b| a.norm().total_cmp(&b.norm()));
    let inner = r[3].norm();
    let rho = match r.get(4) {
        Some(z) if z.norm() > inner => (inner * z.norm()).sqrt(),
        Some(_) => return None,
        None => 2.0 * inner.max(1e-300),
    };
    let ratio = r.get(4).map_or(0.5, |z| rho / z.norm()).max(inner / rho);
    // enough nodes for ratio^n to fall below rounding
    let n = ((-40.0 / ratio.ln()).ceil() as usize).clamp(64, 4096);
    let shift = power_sums(&w, rho, 0.0, n)[1] / 4.0;
    let p = power_sums(&w, rho, shift, n);
    if (p[0] - 4.0).abs() > 1e-6 {
        return None;
    }
    // Newton's identities with e1 = 0
    let e2 = -p[2] / 2.0;
    let e3 = p[3] / 3.0;
    let e4 = (-e2 * p[2] - p[4]) / 4.0;
    let (a2, a1, a0) = (e2, -e3, e4);
    let shifted = complex_roots(&Poly::new(vec![a0, a1, a2, 0.0, 1.0]));
    let mut roots = [Complex::new(0.0, 0.0); 4];
    for (k, z) in shifted.iter().take(4).enumerate() {
        roots[k] = z + shift;
    }
    Some(SmallQuartic {
        roots,
        depressed: (a2, a1, a0),
        shift,
        discriminant: depressed_quartic_discriminant(a2, a1, a0),
        term_scale: discriminant_terms(a2, a1, a0).iter().fold(0.0, |m, v| m.max(v.abs())),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct ResultantConfig {
    pub s1_min: f64,
    pub s1_max: f64,
    pub per_decade: usize,
    /// Range of |s2| compared against the traced branches.
    pub s2_min: f64,
    pub s2_max: f64,
    pub s2_samples: usize,
    /// Double roots with |D| ≤ this·‖γ′‖² are lightlike inflections.
    pub lightlike_exclusion: f64,
    /// Signs of R smaller than this times its largest term are not trusted.
    /// Near the cusp line three roots of W crowd together and R is noise.
    pub noise_floor: f64,
}

impl Default for ResultantConfig {
    fn default() -> Self {
        ResultantConfig {
            s1_min: 1e-12,
            s1_max: 0.05,
            per_decade: 60,
            s2_min: 1e-3,
            s2_max: 0.05,
            s2_samples: 48,
            lightlike_exclusion: 1e-6,
            noise_floor: 1e-7,
        }
    }
}

impl ResultantConfig {
    fn s1_grid(&self) -> Vec<f64> {
        let decades = (self.s1_max / self.s1_min).log10();
        let n = (decades * self.per_decade as f64).ceil() as usize;
        let pos: Vec<f64> = (0..=n).map(|i| self.s1_min * 10f64.powf(decades * i as f64 / n as f64)).collect();
        pos.iter().rev().map(|v| -v).chain(pos.iter().copied()).collect()
    }

    pub fn s2_values(&self) -> Vec<f64> {
        let n = self.s2_samples.max(2);
        let r = self.s2_max / self.s2_min;
        let pos: Vec<f64> = (0..n).map(|i| self.s2_min * r.powf(i as f64 / (n - 1) as f64)).collect();
        pos.iter().rev().map(|v| -v).chain(pos.iter().copied()).collect()
    }
}

fn discriminant_at(fam: &ParamFamily, s1: f64, s2: f64) -> Option<(f64, SmallQuartic)> {
    let q = small_quartic(&fam.curve(s1, s2))?;
    Some((q.discriminant, q))
}

/// Zeros of the discriminant along s1 at fixed s2, with the lightlike
/// inflection and cusp zeros removed.
pub fn resultant_zeros(fam: &ParamFamily, s2: f64, cfg: &ResultantConfig) -> Vec<f64> {
    let grid = cfg.s1_grid();
    let vals: Vec<Option<f64>> = grid
        .iter()
        .map(|&s1| discriminant_at(fam, s1, s2).and_then(|(r, q)| (r.abs() > cfg.noise_floor * q.term_scale).then_some(r)))
        .collect();
    let mut out = Vec::new();
    for k in 1..grid.len() {
        let (Some(fa), Some(fb)) = (vals[k - 1], vals[k]) else { continue };
        if !(fa * fb < 0.0) {
            continue;
        }
        let (mut a, mut b) = (grid[k - 1], grid[k]);
        for _ in 0..200 {
            let m = 0.5 * (a + b);
            if m <= a || m >= b {
                break;
            }
            let Some((fm, _)) = discriminant_at(fam, m, s2) else { break };
            if (fm < 0.0) == (fa < 0.0) {
                a = m;
            } else {
                b = m;
            }
        }
        let s1 = 0.5 * (a + b);
        let Some((_, q)) = discriminant_at(fam, s1, s2) else { continue };
        let c = fam.curve(s1, s2);
        let t = q.double_root_guess();
        let v = c.velocity(t);
        let speed2 = v.norm2();
        if speed2 <= 1e-18 * c.scale().powi(2) {
            continue;
        }
        if c.lightlike_poly().evalf(t).abs() <= cfg.lightlike_exclusion * speed2 {
            continue;
        }
        out.push(s1);
    }
    out
}

/// s1 on the system-route V(2) set at fixed s2, refined from a branch.
fn system_s1_at(fam: &ParamFamily, branch: &TracedBranch, s2: f64) -> Option<f64> {
    let pts = &branch.points;
    let k = pts.windows(2).position(|w| (w[0].s[1] - s2) * (w[1].s[1] - s2) <= 0.0)?;
    let (p, q) = (&pts[k], &pts[k + 1]);
    let ds = q.s[1] - p.s[1];
    let f = if ds != 0.0 { (s2 - p.s[1]) / ds } else { 0.0 };
    let t0 = p.t[0] + f * (q.t[0] - p.t[0]);
    let s10 = p.s[0] + f * (q.s[0] - p.s[0]);
    let sp = subproblems(StratumId::V(2))[0];
    let z = newton_square(|z: &[f64]| Member::new(fam.curve(z[1], s2)).system(&sp, &z[..1]), &[t0, s10], 30)?;
    Some(z[1])
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RouteComparison {
    pub s2_values: usize,
    pub resultant_points: usize,
    pub system_points: usize,
    /// Largest vertical (s1) distance from a resultant zero to the traced set.
    pub resultant_to_system: f64,
    /// Largest vertical distance from a traced point to the resultant zeros.
    pub system_to_resultant: f64,
}

impl RouteComparison {
    pub fn hausdorff(&self) -> f64 {
        self.resultant_to_system.max(self.system_to_resultant)
    }
}

/// Compare the resultant zeros with the system-route branches of V(2).
pub fn compare_v2_routes(fam: &ParamFamily, branches: &[TracedBranch], cfg: &ResultantConfig) -> RouteComparison {
    let mut out = RouteComparison {
        s2_values: 0,
        resultant_points: 0,
        system_points: 0,
        resultant_to_system: 0.0,
        system_to_resultant: 0.0,
    };
    for s2 in cfg.s2_values() {
        out.s2_values += 1;
        let res = resultant_zeros(fam, s2, cfg);
        let sys: Vec<f64> = branches.iter().filter_map(|b| system_s1_at(fam, b, s2)).collect();
        out.resultant_points += res.len();
        out.system_points += sys.len();
        let far = |a: &[f64], b: &[f64]| {
            a.iter()
                .map(|x| b.iter().map(|y| (x - y).abs()).fold(f64::INFINITY, f64::min))
                .fold(0.0, f64::max)
        };
        out.resultant_to_system = out.resultant_to_system.max(far(&res, &sys));
        out.system_to_resultant = out.system_to_resultant.max(far(&sys, &res));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::model::model_family;

    #[test]
    fn discriminant_of_known_quartics() {
        // (t² − 1)² has a double root
        assert_eq!(depressed_quartic_discriminant(-2.0, 0.0, 1.0), 0.0);
        // t⁴ − 5t² + 4 = (t²−1)(t²−4): roots ±1, ±2
        let d = depressed_quartic_discriminant(-5.0, 0.0, 4.0);
        let expect: f64 = [(1.0, -1.0), (1.0, 2.0), (1.0, -2.0), (-1.0, 2.0), (-1.0, -2.0), (2.0, -2.0)]
            .iter()
            .map(|(a, b): &(f64, f64)| (a - b).powi(2))
            .product();
        assert!((d - expect).abs() < 1e-9 * expect);
    }

    #[test]
    fn small_quartic_of_a_lc_member() {
        let f = model_family("LC").unwrap();
        let q = small_quartic(&f.curve(0.01, 0.02)).unwrap();
        for r in q.roots {
            assert!(r.norm() < 0.3);
        }
    }

    #[test]
    fn lc_resultant_zeros_follow_the_two_parabolas() {
        let f = model_family("LC").unwrap();
        let s2 = 0.01;
        let z = resultant_zeros(&f, s2, &ResultantConfig::default());
        assert_eq!(z.len(), 2, "{z:?}");
        let c: Vec<f64> = z.iter().map(|s1| s1 / (s2 * s2)).collect();
        assert!((c[0] - 0.0211).abs() < 0.003, "{c:?}");
        assert!((c[1] - 0.3789).abs() < 0.02, "{c:?}");
    }
}
