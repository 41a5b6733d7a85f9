mod common;

use swkb_core::catalog::{catalog_listing, make_model, FamilyId, Params};
use swkb_core::swkb::turning_points;
use swkb_core::Error;

#[test]
fn ground_level_is_zero_and_spectrum_rises() {
    for m in common::sweep_models() {
        assert_eq!(m.exact_energy(0).unwrap(), 0.0);
        let top = common::top_level(&m);
        let levels: Vec<f64> = (0..=top).map(|n| m.exact_energy(n).unwrap()).collect();
        assert!(levels.windows(2).all(|w| w[1] > w[0]), "{} {}", m.family(), m.params());
        if let Some(n_max) = m.n_max() {
            assert!(matches!(m.exact_energy(n_max + 1), Err(Error::NoBoundState { .. })));
        }
    }
}

#[test]
fn shape_invariance_spread_is_negligible() {
    for m in common::sweep_models() {
        let r = m.shape_invariance_residual(&common::interior_grid(&m, 200)).unwrap();
        assert!(r.spread < 1e-10, "{} {}: spread {:e}", m.family(), m.params(), r.spread);
        assert!(r.offset.abs() < 1e-10 * (1.0 + r.expected.abs()));
    }
}

#[test]
fn superpotential_changes_sign_once() {
    for m in common::sweep_models() {
        let d = m.domain();
        let samples: Vec<f64> = (1..4000)
            .map(|i| {
                let t = i as f64 / 4000.0;
                match (d.lo.is_finite(), d.hi.is_finite()) {
                    (true, true) => d.lo + (d.hi - d.lo) * t,
                    (true, false) => d.lo + t / (1.0 - t),
                    _ => (std::f64::consts::PI * (t - 0.5)).tan(),
                }
            })
            .map(|x| m.w(x))
            .filter(|w| w.is_finite() && *w != 0.0)
            .collect();
        let changes = samples.windows(2).filter(|w| w[0].signum() != w[1].signum()).count();
        assert_eq!(changes, 1, "{} {}", m.family(), m.params());
        assert!(samples[0] < 0.0);
    }
}

#[test]
fn canonical_wavefunctions_solve_the_schrodinger_equation() {
    for m in common::sweep_models() {
        if m.wavefunction(0, m.reference_point()).is_err() {
            continue;
        }
        for n in 0..=common::top_level(&m).min(5) {
            let r = common::schrodinger_residual(&m, n);
            assert!(r < 1e-5, "{} {} n={n}: residual {r:e}", m.family(), m.params());
        }
    }
}

#[test]
fn wrong_energy_is_detected() {
    let m = common::model(FamilyId::Ho1d, &[("omega", 1.0)]);
    let h = 1e-4;
    let x = 0.7;
    let psi = |x: f64| m.wavefunction(2, x).unwrap();
    let d2 = (psi(x + h) - 2.0 * psi(x) + psi(x - h)) / (h * h);
    let r = (-d2 + m.potential(x) * psi(x) - (m.exact_energy(2).unwrap() + 0.1) * psi(x)).abs();
    assert!(r > 1e-2 * psi(x).abs());
}

#[test]
fn closed_form_turning_points() {
    for m in common::sweep_models() {
        for n in 1..=common::top_level(&m) {
            let Some((a, b)) = common::canonical_turning_points(&m, n) else { continue };
            let tp = turning_points(&m, m.exact_energy(n).unwrap()).unwrap();
            assert!((tp.a - a).abs() < 1e-9 && (tp.b - b).abs() < 1e-9, "{} n={n}", m.family());
        }
    }
}

#[test]
fn unsupported_wavefunction_is_a_capability_error() {
    let m = common::model(FamilyId::RosenMorse, &[("mu", 1.0), ("h_tilde", 3.0)]);
    assert!(matches!(m.wavefunction(0, 0.0), Err(Error::Capability(_))));
}

#[test]
fn listing_covers_every_family() {
    let listing = catalog_listing();
    assert_eq!(listing.len(), FamilyId::ALL.len());
    for info in &listing {
        assert_eq!(info.params, info.family.param_names());
    }
    let err = make_model(FamilyId::Morse, &Params::new().with("mu", 1.0).with("g", 2.0)).unwrap_err();
    assert!(matches!(err, Error::UnknownParameter { .. }));
}

#[test]
fn canonical_wavefunctions_are_orthogonal() {
    for m in common::sweep_models() {
        for i in 0..=5 {
            for j in 0..i {
                let Some(v) = common::normalized_overlap(&m, i, j) else { continue };
                assert!(v.abs() < 1e-7, "{} {} <{i}|{j}> = {v:e}", m.family(), m.params());
            }
        }
    }
}
