#![allow(dead_code)]

use swkb_core::catalog::{make_model, FamilyId, Params, PotentialModel};

pub fn params(kv: &[(&str, f64)]) -> Params {
    kv.iter().fold(Params::new(), |p, (k, v)| p.with(k, *v))
}

pub fn model(family: FamilyId, kv: &[(&str, f64)]) -> PotentialModel {
    make_model(family, &params(kv)).unwrap()
}

/// Three parameter points per catalog family.
pub fn sweep_models() -> Vec<PotentialModel> {
    use FamilyId::*;
    let table: &[(FamilyId, &[(&str, f64)])] = &[
        (Ho1d, &[("omega", 0.5)]),
        (Ho1d, &[("omega", 1.0)]),
        (Ho1d, &[("omega", 2.3)]),
        (RadialOsc, &[("omega", 1.0), ("g", 2.0)]),
        (RadialOsc, &[("omega", 0.5), ("g", 0.8)]),
        (RadialOsc, &[("omega", 2.5), ("g", 3.7)]),
        (PoschlTeller, &[("g", 1.0), ("h", 1.0)]),
        (PoschlTeller, &[("g", 2.0), ("h", 3.0)]),
        (PoschlTeller, &[("g", 0.7), ("h", 4.2)]),
        (Coulomb, &[("e2", 2.0), ("g_tilde", 1.0)]),
        (Coulomb, &[("e2", 1.0), ("g_tilde", 0.75)]),
        (Coulomb, &[("e2", 5.0), ("g_tilde", 2.5)]),
        (Morse, &[("mu", 1.0), ("h", 4.5)]),
        (Morse, &[("mu", 0.5), ("h", 10.3)]),
        (Morse, &[("mu", 2.0), ("h", 6.0)]),
        (RosenMorse, &[("mu", 1.0), ("h_tilde", 3.0)]),
        (RosenMorse, &[("mu", -2.0), ("h_tilde", 5.5)]),
        (RosenMorse, &[("mu", 0.5), ("h_tilde", 12.0)]),
        (Eckart, &[("mu", 6.0), ("g_tilde", 1.2)]),
        (Eckart, &[("mu", 30.0), ("g_tilde", 1.5)]),
        (Eckart, &[("mu", 100.0), ("g_tilde", 2.0)]),
        (HyperbolicPt, &[("g", 1.0), ("h_tilde", 6.0)]),
        (HyperbolicPt, &[("g", 0.5), ("h_tilde", 15.0)]),
        (HyperbolicPt, &[("g", 2.0), ("h_tilde", 25.0)]),
        (HyperbolicTop2, &[("mu", 1.5), ("h_tilde", 4.0)]),
        (HyperbolicTop2, &[("mu", -2.0), ("h_tilde", 8.5)]),
        (HyperbolicTop2, &[("mu", 0.3), ("h_tilde", 12.0)]),
    ];
    table.iter().map(|(f, kv)| model(*f, kv)).collect()
}

pub fn top_level(m: &PotentialModel) -> usize {
    m.n_max().map_or(10, |k| k.min(10))
}

/// Evenly spaced interior points of the model's domain, trimmed to a window
/// where every catalog family is well conditioned.
pub fn interior_grid(m: &PotentialModel, count: usize) -> Vec<f64> {
    let d = m.domain();
    let (lo, hi) = match (d.lo.is_finite(), d.hi.is_finite()) {
        (true, true) => (d.lo + 0.02 * (d.hi - d.lo), d.hi - 0.02 * (d.hi - d.lo)),
        (true, false) => (d.lo + 0.05, d.lo + 8.0),
        _ => (-4.0, 4.0),
    };
    (0..count).map(|i| lo + (hi - lo) * i as f64 / (count - 1) as f64).collect()
}

/// `max |−ψ'' + (W² − W')ψ − E_n ψ| / max |ψ|` over the classically allowed
/// region of level `max(n, 1)`. `ψ''` is the five-point central difference
/// with step 1e-4.
pub fn schrodinger_residual(m: &PotentialModel, n: usize) -> f64 {
    use swkb_core::swkb::turning_points;
    let e = m.exact_energy(n).unwrap();
    let tp = turning_points(m, m.exact_energy(n.max(1)).unwrap()).unwrap();
    let h = 1e-4;
    let psi = |x: f64| m.wavefunction(n, x).unwrap();
    let grid: Vec<f64> = (1..60).map(|i| tp.a + (tp.b - tp.a) * i as f64 / 60.0).collect();
    let scale = grid.iter().map(|&x| psi(x).abs()).fold(0.0, f64::max);
    grid.iter()
        .map(|&x| {
            let d2 = (-psi(x + 2.0 * h) + 16.0 * psi(x + h) - 30.0 * psi(x) + 16.0 * psi(x - h)
                - psi(x - 2.0 * h))
                / (12.0 * h * h);
            (-d2 + m.potential(x) * psi(x) - e * psi(x)).abs() / scale
        })
        .fold(0.0, f64::max)
}

/// Closed-form turning points of the three canonical families at level `n`.
pub fn canonical_turning_points(m: &PotentialModel, n: usize) -> Option<(f64, f64)> {
    let p = |k: &str| m.params().get(k).unwrap();
    let nf = n as f64;
    match m.family() {
        FamilyId::Ho1d => {
            let r = (2.0 * nf / p("omega")).sqrt();
            Some((-r, r))
        }
        FamilyId::RadialOsc => {
            let (w, g) = (p("omega"), p("g"));
            Some((((nf + g).sqrt() - nf.sqrt()) / w.sqrt(), ((nf + g).sqrt() + nf.sqrt()) / w.sqrt()))
        }
        FamilyId::PoschlTeller => {
            let (g, h) = (p("g"), p("h"));
            let a = ((nf + g) * (nf + h)).sqrt();
            let b = (nf * (nf + g + h)).sqrt();
            Some((((a - b) / h).atan(), ((a + b) / h).atan()))
        }
        _ => None,
    }
}

/// Three parameter points for each real-map row of the transformation table.
pub fn pct_real_row_models() -> Vec<PotentialModel> {
    use FamilyId::*;
    vec![
        model(Coulomb, &[("e2", 2.0), ("g_tilde", 1.0)]),
        model(Coulomb, &[("e2", 1.0), ("g_tilde", 0.75)]),
        model(Coulomb, &[("e2", 5.0), ("g_tilde", 2.5)]),
        model(Morse, &[("mu", 1.0), ("h", 3.0)]),
        model(Morse, &[("mu", 0.5), ("h", 4.5)]),
        model(Morse, &[("mu", 2.0), ("h", 6.5)]),
        model(RosenMorse, &[("mu", 1.0), ("h_tilde", 3.0)]),
        model(RosenMorse, &[("mu", -2.0), ("h_tilde", 5.5)]),
        model(RosenMorse, &[("mu", 0.5), ("h_tilde", 8.0)]),
    ]
}

/// `<m|n> / sqrt(<m|m><n|n>)` for the canonical families (ho_1d, radial_osc,
/// poschl_teller); `None` for the others.
pub fn normalized_overlap(m: &PotentialModel, i: usize, j: usize) -> Option<f64> {
    use swkb_core::numerics::integrate_smooth;
    let omega = m.params().get("omega");
    let (lo, hi) = match m.family() {
        FamilyId::Ho1d => {
            let l = (60.0 / omega?).sqrt();
            (-l, l)
        }
        FamilyId::RadialOsc => (0.0, (80.0 / omega?).sqrt()),
        FamilyId::PoschlTeller => (0.0, std::f64::consts::FRAC_PI_2),
        _ => return None,
    };
    let psi = |k: usize, x: f64| {
        if x <= lo || x >= hi {
            0.0
        } else {
            m.wavefunction(k, x).unwrap()
        }
    };
    let inner = |a: usize, b: usize| integrate_smooth(|x| psi(a, x) * psi(b, x), lo, hi, 1e-13).unwrap().value;
    Some(inner(i, j) / (inner(i, i) * inner(j, j)).sqrt())
}
