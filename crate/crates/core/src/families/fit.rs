//! Power-law models s_dep = c·s_indep^e for traced branches.
//!
//! The exponent comes from a least-squares fit of
//! ln|y| = a + e·ln x + b·√x + d·x + f·x^{3/2} (x = |s_indep|), whose extra terms absorb
//! the Puiseux corrections that bias a plain log–log slope.  The coefficient
//! is then fitted with the exponent rounded to the nearest half:
//! y / x^e = c + b·√x + d·x + f·x^{3/2}.

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct FitConfig {
    pub min_abs: f64,
    pub max_abs: f64,
    pub min_points: usize,
}

impl Default for FitConfig {
    fn default() -> Self {
        FitConfig {
            min_abs: 1e-3,
            max_abs: 2e-2,
            min_points: 8,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PowerFit {
    /// Index (1 or 2) of the independent parameter.
    pub indep: usize,
    /// The dependent parameter vanishes along the whole branch.
    pub axis: bool,
    /// Fitted exponent before rounding.
    pub exponent: f64,
    /// Exponent rounded to the nearest half, used for the coefficient.
    pub exponent_rounded: f64,
    pub coefficient: f64,
    /// Relative RMS misfit of the corrected model.
    pub residual: f64,
    pub points: usize,
}

fn lstsq(rows: &[Vec<f64>], rhs: &[f64]) -> Option<Vec<f64>> {
    let m = DMatrix::from_fn(rows.len(), rows[0].len(), |i, j| rows[i][j]);
    let b = DVector::from_column_slice(rhs);
    m.svd(true, true).solve(&b, 1e-14).ok().map(|v| v.iter().copied().collect())
}

/// Fit the branch's points whose independent coordinate lies in the window.
///
/// The polyline is taken to start at the origin; only its leading stretch
/// along which |s_indep| keeps growing is used, so a branch that turns back
/// does not mix two sheets into one fit.
pub fn fit_power_law(poly: &[[f64; 2]], cfg: &FitConfig) -> Option<PowerFit> {
    if poly.is_empty() {
        return None;
    }
    let ext = |i: usize| poly.iter().fold(0.0f64, |m, p| m.max(p[i].abs()));
    let indep = if ext(0) >= ext(1) { 0 } else { 1 };
    let dep = 1 - indep;
    let turn = poly.windows(2).position(|w| w[1][indep].abs() < w[0][indep].abs());
    // stay clear of the fold, where s_dep is not a function of s_indep
    let (germ, max_abs) = match turn {
        Some(i) => (i + 1, cfg.max_abs.min(0.25 * poly[i][indep].abs())),
        None => (poly.len(), cfg.max_abs),
    };
    let pts: Vec<(f64, f64)> = poly[..germ]
        .iter()
        .filter(|p| p[indep].abs() >= cfg.min_abs && p[indep].abs() <= max_abs)
        .map(|p| (p[indep], p[dep]))
        .collect();
    if pts.len() < cfg.min_points {
        return None;
    }
    let ymax = pts.iter().fold(0.0f64, |m, p| m.max(p.1.abs()));
    let xmax = pts.iter().fold(0.0f64, |m, p| m.max(p.0.abs()));
    if ymax <= 1e-12 * xmax {
        return Some(PowerFit {
            indep: indep + 1,
            axis: true,
            exponent: 0.0,
            exponent_rounded: 0.0,
            coefficient: 0.0,
            residual: 0.0,
            points: pts.len(),
        });
    }
    let used: Vec<(f64, f64)> = pts.iter().copied().filter(|p| p.1 != 0.0).collect();
    if used.len() < cfg.min_points {
        return None;
    }
    let rows: Vec<Vec<f64>> = used
        .iter()
        .map(|&(x, _)| {
            let a = x.abs();
            vec![1.0, a.ln(), a.sqrt(), a, a * a.sqrt()]
        })
        .collect();
    let rhs: Vec<f64> = used.iter().map(|p| p.1.abs().ln()).collect();
    let sol = lstsq(&rows, &rhs)?;
    let e = sol[1];
    let er = (2.0 * e).round() / 2.0;
    let integer = er.fract() == 0.0;
    let base = |x: f64| {
        if integer {
            x.powi(er as i32)
        } else {
            x.abs().powf(er)
        }
    };
    let rows: Vec<Vec<f64>> = used
        .iter()
        .map(|&(x, _)| {
            let a = x.abs();
            vec![1.0, a.sqrt(), a, a * a.sqrt()]
        })
        .collect();
    let rhs: Vec<f64> = used.iter().map(|&(x, y)| y / base(x)).collect();
    let c = lstsq(&rows, &rhs)?;
    let ss: f64 = used
        .iter()
        .map(|&(x, y)| {
            let a = x.abs();
            let model = base(x) * (c[0] + c[1] * a.sqrt() + c[2] * a + c[3] * a * a.sqrt());
            ((y - model) / y).powi(2)
        })
        .sum();
    Some(PowerFit {
        indep: indep + 1,
        axis: false,
        exponent: e,
        exponent_rounded: er,
        coefficient: c[0],
        residual: (ss / used.len() as f64).sqrt(),
        points: used.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample(f: impl Fn(f64) -> f64, sign: f64) -> Vec<[f64; 2]> {
        (0..200)
            .map(|i| {
                let x = sign * 5e-4 * (1.02f64).powi(i);
                [x, f(x)]
            })
            .collect()
    }

    #[test]
    fn recovers_models_with_corrections() {
        // s2 = s1²/20 (1 + 3√|s1|)
        let f = fit_power_law(&sample(|x| x * x / 20.0 * (1.0 + 3.0 * x.abs().sqrt()), -1.0), &FitConfig::default()).unwrap();
        assert_eq!(f.indep, 1);
        assert!((f.exponent - 2.0).abs() < 0.05, "{:?}", f);
        assert!((f.coefficient - 0.05).abs() < 1e-3 * 0.05);
        // s2 = s1³/16 − s1⁴
        let f = fit_power_law(&sample(|x| x.powi(3) / 16.0 - x.powi(4), -1.0), &FitConfig::default()).unwrap();
        assert!((f.coefficient - 1.0 / 16.0).abs() < 1e-3);
        assert!(f.residual < 1e-6);
    }

    #[test]
    fn picks_the_longer_coordinate_and_flags_axes() {
        let pts: Vec<[f64; 2]> = sample(|x| x * x / 3.0, 1.0).iter().map(|p| [p[1], p[0]]).collect();
        let f = fit_power_law(&pts, &FitConfig::default()).unwrap();
        assert_eq!(f.indep, 2);
        assert!((f.coefficient - 1.0 / 3.0).abs() < 1e-6);
        let axis: Vec<[f64; 2]> = (1..100).map(|i| [0.0, i as f64 * 5e-4]).collect();
        assert!(fit_power_law(&axis, &FitConfig::default()).unwrap().axis);
    }

    #[test]
    fn ignores_the_part_after_a_turn() {
        let mut pts = sample(|x| -0.75 * x * x, 1.0);
        let back: Vec<[f64; 2]> = pts.iter().rev().map(|p| [p[0], -2.0 * p[1]]).collect();
        pts.extend(back);
        let f = fit_power_law(&pts, &FitConfig::default()).unwrap();
        assert!((f.coefficient + 0.75).abs() < 1e-9, "{f:?}");
        assert!(f.points < 100);
    }
}
