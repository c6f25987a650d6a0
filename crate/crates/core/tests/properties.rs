mod common;

use proptest::prelude::*;
use threephase_dg::assembly::{harmonic_penalty, upwind_value, CsrMatrix, RtField};
use threephase_dg::dg::{l2_project, weighted_average, weights, DgField, Unknown};
use threephase_dg::par::Execution;
use threephase_dg::physics::{clamp, mobilities, FluidProperties, SaturationPair};

fn positive() -> impl Strategy<Value = f64> {
    1e-6..1e3f64
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn clamped_saturations_stay_in_band(sa in -2.0..3.0f64, sv in -2.0..3.0f64, eps in 1e-6..0.1f64) {
        let s = clamp(sa, sv, eps);
        for v in [s.aqueous, s.vapor] {
            prop_assert!(v >= eps && v <= 1.0 - eps);
        }
        if (eps..=1.0 - eps).contains(&sa) {
            prop_assert_eq!(s.aqueous, sa);
        }
    }

    #[test]
    fn mobilities_are_nonnegative_and_sum(sa in 0.0..1.0f64, sv in 0.0..1.0f64) {
        let fluids = FluidProperties::verification();
        let m = mobilities(SaturationPair::new(sa, sv), &fluids);
        let p = m.phase;
        prop_assert!(p.liquid >= 0.0 && p.vapor >= 0.0 && p.aqueous >= 0.0);
        prop_assert!((m.total - (p.liquid + p.vapor + p.aqueous)).abs() <= 1e-14 * m.total.max(1.0));
        let rho = fluids.density;
        let rt = rho.liquid * p.liquid + rho.vapor * p.vapor + rho.aqueous * p.aqueous;
        prop_assert!((m.rho_total - rt).abs() <= 1e-13 * rt.max(1.0));
    }

    #[test]
    fn weighted_average_is_convex(v1 in -10.0..10.0f64, v2 in -10.0..10.0f64, a1 in positive(), a2 in positive()) {
        let (w1, w2) = weights(a1, a2).unwrap();
        prop_assert!((w1 + w2 - 1.0).abs() <= 1e-15);
        let m = weighted_average(v1, v2, a1, a2).unwrap();
        prop_assert!(m >= v1.min(v2) - 1e-12 && m <= v1.max(v2) + 1e-12);
    }

    #[test]
    fn harmonic_penalty_is_bracketed(a1 in positive(), a2 in positive()) {
        let eta = harmonic_penalty(a1, a2).unwrap();
        prop_assert!(eta >= a1.min(a2) * (1.0 - 1e-14));
        prop_assert!(eta <= 2.0 * a1.min(a2) * (1.0 + 1e-14));
        prop_assert_eq!(eta, harmonic_penalty(a2, a1).unwrap());
    }

    #[test]
    fn upwind_picks_a_trace(d1 in 0.0..5.0f64, d2 in 0.0..5.0f64, un in -3.0..3.0f64, g1 in 0.0..5.0f64, g2 in 0.0..5.0f64, gn in -1.0..1.0f64) {
        let v = upwind_value([d1, d2], un, [g1, g2], gn);
        prop_assert!(v == d1 || v == d2);
        let flipped = upwind_value([d2, d1], -un, [g2, g1], -gn);
        let sel = 0.5 * (d1 + d2) * un + 0.5 * (g1 + g2) * gn;
        if sel != 0.0 {
            prop_assert_eq!(v, flipped);
        }
    }

    #[test]
    fn projection_reproduces_discrete_fields(seed in 0u64..1000, n in 1usize..5) {
        let mesh = common::unit_mesh(n);
        let (sa, _) = common::rough_saturations(&mesh, seed);
        let locate = |x: f64, y: f64| {
            let i = ((x * n as f64).floor() as usize).min(n - 1);
            let j = ((y * n as f64).floor() as usize).min(n - 1);
            let k = j * n + i;
            let r = common::reference(&mesh, k, [x, y]);
            (k, r)
        };
        // A field continuous only inside elements is reproduced when the
        // projection is evaluated element by element.
        let p = l2_project(&mesh, Unknown::Aqueous, |x, y| {
            let (k, r) = locate(x, y);
            sa.value(k, r[0], r[1])
        }, Execution::Sequential).unwrap();
        for (a, b) in p.coeffs().iter().zip(sa.coeffs()) {
            prop_assert!((a - b).abs() <= 1e-12);
        }
    }

    #[test]
    fn rt0_divergence_telescopes(fluxes in prop::collection::vec(-1.0..1.0f64, 40)) {
        let mesh = common::unit_mesh(4);
        let u = RtField::from_fluxes(mesh.clone(), fluxes);
        let total: f64 = (0..mesh.n_elements()).map(|k| u.divergence_integral(k)).sum();
        let boundary: f64 = mesh.boundary_faces().map(|f| u.normal_velocity(f.id) * f.length).sum();
        prop_assert!((total - boundary).abs() <= 1e-12);
        prop_assert!(common::normal_trace_mismatch(&u) <= 1e-12);
    }

    #[test]
    fn sparse_products_match_dense(entries in prop::collection::vec((0usize..6, 0usize..6, -1.0..1.0f64), 1..30), x in prop::collection::vec(-1.0..1.0f64, 6)) {
        let a = CsrMatrix::from_triplets(6, 6, &entries);
        let dense = a.to_dense();
        let y = a.mul_vec(&x);
        for i in 0..6 {
            let expected: f64 = (0..6).map(|j| dense[i][j] * x[j]).sum();
            prop_assert!((y[i] - expected).abs() <= 1e-12);
        }
        let xax: f64 = x.iter().zip(&y).map(|(a, b)| a * b).sum();
        prop_assert!((a.bilinear(&x, &x) - xax).abs() <= 1e-12);
    }
}

#[test]
fn field_from_coefficients_round_trips() {
    let mesh = common::unit_mesh(3);
    let c: Vec<f64> = (0..mesh.n_dofs()).map(|i| i as f64 * 0.25).collect();
    let f = DgField::from_coeffs(mesh.clone(), Unknown::Vapor, c.clone());
    assert_eq!(f.coeffs(), &c[..]);
    assert_eq!(f.value(0, 1.0, 1.0), c[3]);
}
