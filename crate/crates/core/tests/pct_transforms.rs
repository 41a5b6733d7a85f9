mod common;

use std::f64::consts::PI;

use swkb_core::catalog::FamilyId;
use swkb_core::pct::{list_transforms, se_residual_at, transform_for, verify_energy_map, verify_se_transform, verify_swkb_transform, Realness};

fn grid(lo: f64, hi: f64, k: usize) -> Vec<f64> {
    (0..k).map(|i| lo + (hi - lo) * i as f64 / (k - 1) as f64).collect()
}

#[test]
fn coulomb_ground_state_residual() {
    let spec = transform_for(FamilyId::Coulomb).unwrap();
    let m = common::model(FamilyId::Coulomb, &[("e2", 2.0), ("g_tilde", 1.0)]);
    let g = grid(0.2, 8.0, 50);
    let r = verify_se_transform(&spec, &m, 0, &g).unwrap();
    assert!(r.max_residual < 1e-5, "{r:?}");
    let bad = se_residual_at(&spec, &m, 0, &g, 0.1).unwrap();
    assert!(bad.max_residual >= 1e-2, "{bad:?}");
}

#[test]
fn mapped_wavefunctions_solve_target_equations() {
    for m in common::pct_real_row_models() {
        let spec = transform_for(m.family()).unwrap();
        let g = match m.family() {
            FamilyId::Coulomb => grid(0.2, 10.0, 60),
            _ => grid(-3.0, 3.0, 60),
        };
        for n in 0..=m.n_max().unwrap_or(5).min(3) {
            let r = verify_se_transform(&spec, &m, n, &g).unwrap();
            assert!(r.max_residual < 1e-5, "{} n={n}: {r:?}", m.family());
        }
    }
}

#[test]
fn swkb_integrals_agree_across_the_map() {
    for m in common::pct_real_row_models() {
        let spec = transform_for(m.family()).unwrap();
        for n in 0..=m.n_max().unwrap_or(5).min(5) {
            let r = verify_swkb_transform(&spec, &m, n, 1e-8 * (1.0 + n as f64 * PI)).unwrap();
            assert!(r.within_tol, "{r:?}");
        }
    }
}

#[test]
fn examples_from_the_tables() {
    let cases = [
        (FamilyId::Coulomb, vec![("e2", 2.0), ("g_tilde", 1.0)], 2),
        (FamilyId::Morse, vec![("mu", 0.5), ("h", 4.5)], 3),
        (FamilyId::RosenMorse, vec![("mu", 1.0), ("h_tilde", 3.0)], 1),
    ];
    for (family, kv, n) in cases {
        let m = common::model(family, &kv);
        let r = verify_swkb_transform(&transform_for(family).unwrap(), &m, n, 1e-8).unwrap();
        assert!((r.target_integral - n as f64 * PI).abs() < 1e-8);
        assert!((r.source_integral - n as f64 * PI).abs() < 1e-8);
    }
}

#[test]
fn energy_maps_hold_on_every_row() {
    for m in common::sweep_models() {
        let Ok(spec) = transform_for(m.family()) else { continue };
        for n in 0..=common::top_level(&m).min(5) {
            let r = verify_energy_map(&spec, &m, n).unwrap();
            assert!(r.matches, "{r:?}");
            if spec.realness == Realness::ComplexMap {
                assert!(r.imag_residue <= 1e-12, "{r:?}");
            }
        }
    }
}

#[test]
fn jacobian_matches_finite_difference() {
    for spec in list_transforms() {
        let xs = if spec.target == FamilyId::Coulomb || spec.target == FamilyId::Eckart || spec.target == FamilyId::HyperbolicPt {
            grid(0.3, 3.0, 20)
        } else {
            grid(-2.0, 2.0, 20)
        };
        for x in xs {
            let h = 1e-5;
            let fd = (spec.z_of_x(x + h) - spec.z_of_x(x - h)) / (2.0 * h);
            let d = spec.dz_dx(x);
            assert!((fd - d).norm() <= 1e-7 * d.norm().max(1e-3), "{:?} x={x}: {fd} vs {d}", spec.target);
        }
    }
}

#[test]
fn real_maps_are_monotone() {
    for spec in list_transforms().into_iter().filter(|s| s.realness == Realness::RealMap) {
        let xs = if spec.target == FamilyId::Coulomb { grid(0.01, 20.0, 200) } else { grid(-6.0, 6.0, 200) };
        let z: Vec<f64> = xs.iter().map(|&x| spec.z_of_x(x).re).collect();
        let up = z.windows(2).all(|w| w[1] > w[0]);
        let down = z.windows(2).all(|w| w[1] < w[0]);
        assert!(up || down, "{:?}", spec.target);
    }
}
