use approx::assert_relative_eq;
use flatmass_core::closed_forms::{
    barrier_transmission, step_reflection, step_transmission, BarrierParams, StepParams,
};
use flatmass_core::matching::{scatter, ScatteringSolution};
use flatmass_core::{Layer, Lead, OrderingScheme, PhysicalConstants, Structure};
use num_complex::Complex64;
use proptest::prelude::*;

fn layer() -> impl Strategy<Value = Layer> {
    (0.1f64..1.5, 0.2f64..5.0, -2.0f64..2.0).prop_map(|(w, m, v)| Layer::new(w, m, v).unwrap())
}

fn lead() -> impl Strategy<Value = Lead> {
    (0.2f64..5.0, -1.0f64..1.0).prop_map(|(m, v)| Lead::new(m, v).unwrap())
}

/// Structure plus an energy above both lead potentials.
fn scenario() -> impl Strategy<Value = (Structure, f64)> {
    (lead(), prop::collection::vec(layer(), 0..=6), lead(), 1e-3f64..4.0).prop_map(|(l, layers, r, de)| {
        let e = l.potential().max(r.potential()) + de;
        (Structure::new(l, layers, r), e)
    })
}

/// `(m^α ψ, m^{α+β} ψ')` at local coordinate `s` of region `j`.
fn boundary_values(
    structure: &Structure,
    sol: &ScatteringSolution,
    scheme: &OrderingScheme,
    j: usize,
    s: f64,
) -> (Complex64, Complex64) {
    let (mass, _) = structure.regions()[j];
    let amp = sol.amplitudes[j].expect("non-threshold energy");
    let k = sol.wavenumbers[j];
    let i = Complex64::i();
    let fwd = amp.forward * (i * k * s).exp();
    let bwd = amp.backward * (-i * k * s).exp();
    let psi = fwd + bwd;
    let dpsi = i * k * (fwd - bwd);
    (
        psi * mass.powf(scheme.alpha()),
        dpsi * mass.powf(scheme.alpha() + scheme.beta()),
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn unitarity((structure, e) in scenario(), beta in -1.5f64..0.5) {
        let scheme = OrderingScheme::new(beta).unwrap();
        let sol = scatter(&structure, e, &scheme, &PhysicalConstants::default()).unwrap();
        prop_assert!((sol.transmission + sol.reflection - 1.0).abs() <= 1e-10);
        prop_assert!((0.0..=1.0 + 1e-12).contains(&sol.transmission));
    }

    #[test]
    fn connection_rules_and_flux((structure, e) in scenario(), beta in -1.5f64..0.5) {
        let scheme = OrderingScheme::new(beta).unwrap();
        let sol = scatter(&structure, e, &scheme, &PhysicalConstants::default()).unwrap();
        let left = structure.left_lead();
        let incident_flux = sol.wavenumbers[0].re / left.mass();
        let widths: Vec<f64> = structure.layers().iter().map(|l| l.width()).collect();
        for j in 0..structure.regions().len() - 1 {
            let s_right_edge = if j == 0 { 0.0 } else { widths[j - 1] };
            let (u_l, v_l) = boundary_values(&structure, &sol, &scheme, j, s_right_edge);
            let (u_r, v_r) = boundary_values(&structure, &sol, &scheme, j + 1, 0.0);
            let scale_u = u_l.norm().max(u_r.norm()).max(1.0);
            let scale_v = v_l.norm().max(v_r.norm()).max(1.0);
            prop_assert!((u_l - u_r).norm() <= 1e-10 * scale_u, "m^α ψ jumps at interface {}", j);
            prop_assert!((v_l - v_r).norm() <= 1e-10 * scale_v, "m^(α+β) ψ' jumps at interface {}", j);
            let flux_l = (u_l.conj() * v_l).im;
            let flux_r = (u_r.conj() * v_r).im;
            prop_assert!((flux_l - flux_r).abs() <= 1e-10 * incident_flux);
            prop_assert!((flux_l - incident_flux * sol.transmission).abs() <= 1e-10 * incident_flux);
        }
    }

    #[test]
    fn reciprocity((structure, e) in scenario(), beta in -1.5f64..0.5) {
        let scheme = OrderingScheme::new(beta).unwrap();
        let c = PhysicalConstants::default();
        let forward = scatter(&structure, e, &scheme, &c).unwrap().transmission;
        let backward = scatter(&structure.mirrored(), e, &scheme, &c).unwrap().transmission;
        prop_assert!((forward - backward).abs() <= 1e-10);
    }

    #[test]
    fn step_matches_closed_form(m1 in 0.1f64..10.0, m2 in 0.1f64..10.0, v0 in -2.0f64..2.0,
                                e in 0.01f64..10.0, beta in -1.5f64..0.5) {
        let scheme = OrderingScheme::new(beta).unwrap();
        let c = PhysicalConstants::default();
        let p = StepParams::new(m1, m2, v0, scheme, c).unwrap();
        let sol = scatter(&Structure::step(m1, m2, v0).unwrap(), e, &scheme, &c).unwrap();
        let t = step_transmission(&p, e).unwrap();
        let r = step_reflection(&p, e).unwrap();
        prop_assert!((sol.transmission - t).abs() <= 1e-12 * t.max(1e-300) || (t == 0.0 && sol.transmission == 0.0));
        prop_assert!((sol.reflection - r).abs() <= 1e-12);
    }

    #[test]
    fn barrier_matches_closed_form(m1 in 0.1f64..10.0, m2 in 0.1f64..10.0, v0 in -2.0f64..2.0,
                                   a in 0.1f64..3.0, e in 0.01f64..6.0, beta in -1.5f64..0.5) {
        let scheme = OrderingScheme::new(beta).unwrap();
        let c = PhysicalConstants::default();
        let p = BarrierParams::new(m1, m2, v0, a, scheme, c).unwrap();
        let sol = scatter(&Structure::barrier(m1, m2, v0, a).unwrap(), e, &scheme, &c).unwrap();
        let t = barrier_transmission(&p, e).unwrap();
        prop_assert!(((sol.transmission - t) / t).abs() <= 1e-10, "{} vs {}", sol.transmission, t);
    }
}

#[test]
fn thick_barrier_is_stable() {
    // κ = √(2·2·0.5) = √2, width chosen so κ w = 50
    let width = 50.0 / 2f64.sqrt();
    let c = PhysicalConstants::default();
    for beta in [-1.0, -0.5, 0.0] {
        let scheme = OrderingScheme::new(beta).unwrap();
        let sol = scatter(&Structure::barrier(1.0, 2.0, 1.0, width).unwrap(), 0.5, &scheme, &c).unwrap();
        assert!(sol.transmission > 0.0 && sol.transmission.is_finite());
        let p = BarrierParams::new(1.0, 2.0, 1.0, width, scheme, c).unwrap();
        assert_relative_eq!(
            sol.transmission,
            barrier_transmission(&p, 0.5).unwrap(),
            max_relative = 1e-10
        );
        assert!((sol.reflection - 1.0).abs() < 1e-12);
    }
}

#[test]
fn very_thick_barrier_degrades_gracefully() {
    let c = PhysicalConstants::default();
    let scheme = OrderingScheme::BEN_DANIEL_DUKE;
    for kw in [300.0, 700.0, 2000.0] {
        let width = kw / 2f64.sqrt();
        let sol = scatter(&Structure::barrier(1.0, 2.0, 1.0, width).unwrap(), 0.5, &scheme, &c).unwrap();
        assert!(sol.transmission.is_finite() && sol.transmission >= 0.0);
        assert!((sol.reflection - 1.0).abs() < 1e-12);
    }
}

#[test]
fn resonant_double_barrier_reaches_unity() {
    // Symmetric double barrier: the transmission peak below the barrier top
    // must reach 1 even though each barrier alone transmits ~e^{-2κa}.
    let c = PhysicalConstants::default();
    let scheme = OrderingScheme::FLAT;
    let lead = Lead::new(1.0, 0.0).unwrap();
    let barrier = Layer::new(3.0, 1.0, 1.0).unwrap();
    let well = Layer::new(2.0, 1.0, 0.0).unwrap();
    let s = Structure::new(lead, vec![barrier, well, barrier], lead);
    let t = |e: f64| scatter(&s, e, &scheme, &c).unwrap().transmission;
    let grid: Vec<f64> = (1..4000).map(|i| 0.05 + 0.9 * i as f64 / 4000.0).collect();
    let best = grid.iter().copied().max_by(|x, y| t(*x).total_cmp(&t(*y))).unwrap();
    let (_, top) = flatmass_core::roots::golden_max(t, best - 0.9 / 4000.0, best + 0.9 / 4000.0, 200);
    assert!(top > 1.0 - 1e-6, "resonance peak {top}");
    assert!(t(0.05) < 1e-3);
}
