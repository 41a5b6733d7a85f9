mod common;

use std::f64::consts::PI;

use rayon::prelude::*;
use swkb_core::swkb::{swkb_check, swkb_integral, swkb_solve_energy, turning_points};

#[test]
fn conventional_integrals_equal_n_pi() {
    let failures: Vec<String> = common::sweep_models()
        .par_iter()
        .flat_map_iter(|m| (0..=common::top_level(m)).map(move |n| (m, n)))
        .filter_map(|(m, n)| {
            let r = swkb_check(m, n, 1e-10).unwrap();
            let bound = 1e-8 * (1.0 + n as f64 * PI);
            (r.deviation.abs() > bound)
                .then(|| format!("{} {} n={n}: deviation {:e}", m.family(), m.params(), r.deviation))
        })
        .collect();
    assert!(failures.is_empty(), "{failures:#?}");
}

#[test]
fn inversion_recovers_spectrum() {
    let failures: Vec<String> = common::sweep_models()
        .par_iter()
        .flat_map_iter(|m| (1..=common::top_level(m)).map(move |n| (m, n)))
        .filter_map(|(m, n)| {
            let exact = m.exact_energy(n).unwrap();
            let solved = swkb_solve_energy(m, n, 1e-10).unwrap();
            let rel = ((solved - exact) / exact).abs();
            (rel > 1e-8).then(|| format!("{} {} n={n}: {solved} vs {exact}", m.family(), m.params()))
        })
        .collect();
    assert!(failures.is_empty(), "{failures:#?}");
}

#[test]
fn integral_increases_with_energy() {
    for m in common::sweep_models() {
        let top = m.exact_energy(common::top_level(&m)).unwrap().max(m.energy_shift());
        let cap = m.plateau().map_or(top, |p| top.min(0.999 * p));
        let values: Vec<f64> = (1..=10)
            .map(|k| swkb_integral(&m, cap * k as f64 / 10.0, 1e-10).unwrap())
            .collect();
        assert!(values.windows(2).all(|w| w[1] > w[0]), "{} {}", m.family(), m.params());
    }
}

#[test]
fn turning_points_solve_e_equals_w_squared() {
    for m in common::sweep_models() {
        for n in 1..=common::top_level(&m) {
            let e = m.exact_energy(n).unwrap();
            let tp = turning_points(&m, e).unwrap();
            for x in [tp.a, tp.b] {
                let w = m.w(x);
                assert!((w * w - e).abs() <= 1e-9 * (1.0 + e), "{} n={n}", m.family());
            }
            let mid = m.w(0.5 * (tp.a + tp.b));
            assert!(e - mid * mid > 0.0);
        }
    }
}
