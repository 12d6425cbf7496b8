use minkowski_curves::families::resultant::{compare_v2_routes, small_quartic, ResultantConfig};
use minkowski_curves::families::{model_family, trace_stratum, TraceConfig};
use minkowski_curves::multilocal::{census, feature_string, CensusConfig};
use minkowski_curves::strata::StratumId;
use nalgebra::Complex;
use proptest::prelude::*;

#[test]
fn cusp_family_before_the_cusp() {
    // lightlike points sit inside the loop, the only vertex is inward
    let f = model_family("C").unwrap();
    let k = census(&f.curve(-0.04, 0.0), -0.3, 0.3, &CensusConfig::default()).unwrap();
    assert_eq!(feature_string(&k), "X L V+ L X");
    // a wider window also picks up the far vertex pair
    let k = census(&f.curve(-0.04, 0.0), -0.4, 0.4, &CensusConfig::default()).unwrap();
    assert_eq!(feature_string(&k), "V+ X L V+ L X V+");
}

#[test]
fn cusp_family_vertices_meet_at_one_over_27() {
    let f = model_family("C").unwrap();
    let tr = trace_stratum(&f, StratumId::V(2), &TraceConfig::default());
    assert!(tr.points.iter().any(|p| (p.s[0] - 1.0 / 27.0).abs() < 1e-9 && (p.t[0].abs() - 0.2485).abs() < 1e-3), "{:?}", tr.points);
}

#[test]
fn lc_resultant_matches_the_traced_vertex_stratum_on_a_coarse_grid() {
    let f = model_family("LC").unwrap();
    let tr = trace_stratum(&f, StratumId::V(2), &TraceConfig::default());
    let cfg = ResultantConfig {
        s2_samples: 6,
        ..ResultantConfig::default()
    };
    let cmp = compare_v2_routes(&f, &tr.branches, &cfg);
    assert_eq!(cmp.resultant_points, cmp.system_points);
    assert!(cmp.hausdorff() < 1e-9, "{cmp:?}");
}

fn eval(c: &[f64], z: Complex<f64>) -> Complex<f64> {
    c.iter().rev().fold(Complex::new(0.0, 0.0), |acc, &a| acc * z + a)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn small_quartic_roots_are_roots_of_w(s1 in -0.05f64..0.05, s2 in -0.05f64..0.05) {
        let f = model_family("LC").unwrap();
        let w = f.curve(s1, s2).vertex_numerator_poly();
        let q = small_quartic(&f.curve(s1, s2)).unwrap();
        let c = w.coeffs();
        for r in q.roots {
            let scale: f64 = c.iter().enumerate().map(|(i, a)| a.abs() * r.norm().powi(i as i32)).sum();
            prop_assert!(eval(c, r).norm() <= 1e-8 * scale.max(1e-300), "root {r} of {c:?}");
        }
        let centroid: f64 = q.roots.iter().map(|r| r.re).sum::<f64>() / 4.0;
        prop_assert!((centroid - q.shift).abs() <= 1e-6 * (1.0 + q.shift.abs()));
    }
}
