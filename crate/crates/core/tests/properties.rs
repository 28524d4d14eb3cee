use proptest::prelude::*;
use sphere_casimir::asymptotics::{epsilon_delta, epsilon_delta_signed};
use sphere_casimir::geometry::sphere_geometry_from_mu;
use sphere_casimir::monopole::{
    capacitance_matrix, free_energy_total, free_energy_z_form, monopole_delta,
};
use sphere_casimir::oracle::{
    cyclic_matrix_determinant, delta_r_enumeration, delta_r_recursion, generating_function_check,
};
use sphere_casimir::scalar::{
    dirichlet_cyclic_determinant, dirichlet_free_energy_multipole, dirichlet_free_energy_roundtrip,
    CyclicSign,
};
use sphere_casimir::{derive_parameters, geometry_from_mu, SeriesOptions, SphereGeometry};

fn opts() -> SeriesOptions {
    SeriesOptions::with_tol(1e-15)
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

prop_compose! {
    fn spheres()(r1 in -1.0f64..1.0, r2 in -1.0f64..1.0, gap in -2.0f64..1.0) -> SphereGeometry {
        let (r1, r2) = (10f64.powf(r1), 10f64.powf(r2));
        SphereGeometry::new(r1, r2, r1.min(r2) * 10f64.powf(gap)).unwrap()
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn relabelling_leaves_energies_unchanged(g in spheres()) {
        let a = derive_parameters(&g).unwrap();
        let b = derive_parameters(&g.swapped()).unwrap();
        prop_assert_eq!(monopole_delta(&a, &opts()).unwrap().value, monopole_delta(&b, &opts()).unwrap().value);
        let da = dirichlet_free_energy_roundtrip(&a, &opts()).unwrap().value;
        let db = dirichlet_free_energy_roundtrip(&b, &opts()).unwrap().value;
        prop_assert!(rel(da, db) <= 1e-14);
        let ca = capacitance_matrix(&g, &opts()).unwrap();
        let cb = capacitance_matrix(&g.swapped(), &opts()).unwrap();
        prop_assert_eq!(ca.swapped(), cb);
    }

    #[test]
    fn capacitance_determinant_fixes_monopole_term(g in spheres()) {
        let c = capacitance_matrix(&g, &opts()).unwrap();
        prop_assert!(c.is_positive_definite());
        prop_assert!(c.c12 < 0.0 && c.c11 > g.r1 && c.c22 > g.r2);
        let delta = monopole_delta(&derive_parameters(&g).unwrap(), &opts()).unwrap().value;
        prop_assert!(delta > 0.0);
        prop_assert!(rel(c.determinant(), g.r1 * g.r2 * delta.exp()) <= 1e-12);
    }

    #[test]
    fn dirichlet_representations_agree(mu in 0.05f64..5.0, u in 0.0f64..=0.25) {
        let g = geometry_from_mu(mu, u).unwrap();
        let a = dirichlet_free_energy_roundtrip(&g, &opts()).unwrap().value;
        let b = dirichlet_free_energy_multipole(&g, &opts()).unwrap().value;
        prop_assert!(a < 0.0);
        prop_assert!(rel(a, b) <= 1e-11);
    }

    #[test]
    fn closed_z_form_matches_composition(mu in 0.1f64..4.0, u in 0.0f64..=0.25) {
        let g = geometry_from_mu(mu, u).unwrap();
        let z = free_energy_z_form(&g, &opts()).unwrap().value;
        let composed = free_energy_total(&g, &opts()).unwrap().value;
        prop_assert!((z - composed).abs() <= 1e-11 * composed.abs().max(1.0));
    }

    #[test]
    fn free_energy_rises_with_separation(u in 0.01f64..=0.25, mu in 0.05f64..3.0) {
        let near = free_energy_total(&geometry_from_mu(mu, u).unwrap(), &opts()).unwrap().value;
        let far = free_energy_total(&geometry_from_mu(1.1 * mu, u).unwrap(), &opts()).unwrap().value;
        prop_assert!(near < far && far < 0.0);
    }

    #[test]
    fn cyclic_determinants_close(g in spheres(), r in 1u32..=8) {
        let d = derive_parameters(&g).unwrap();
        for sign in [CyclicSign::Plus, CyclicSign::Minus] {
            let dense = cyclic_matrix_determinant(r, sign, &d).unwrap();
            prop_assert!(rel(dense, dirichlet_cyclic_determinant(r, sign, &d)) <= 1e-10);
        }
    }

    #[test]
    fn enumeration_equals_recursion(mu in 0.3f64..3.0, u in 0.01f64..=0.25, r in 1usize..=4) {
        let g = geometry_from_mu(mu, u).unwrap();
        let e = delta_r_enumeration(r, &g).unwrap();
        prop_assert!(rel(e, delta_r_recursion(r, &g)) <= 1e-12);
    }

    #[test]
    fn generating_identity_holds(mu in 0.2f64..3.0, u in 0.0f64..=0.25) {
        prop_assert!(generating_function_check(&geometry_from_mu(mu, u).unwrap(), 1e-10).unwrap());
    }

    #[test]
    fn expansion_even_in_v0(u in 0.0f64..=0.25) {
        let plus = epsilon_delta(u).unwrap();
        let minus = epsilon_delta_signed(u, -1.0).unwrap();
        prop_assert!(plus.max_abs_difference(&minus) <= 1e-13);
    }

    #[test]
    fn natural_parametrization_round_trips(mu in 0.01f64..10.0, u in 1e-4f64..=0.25) {
        let g = sphere_geometry_from_mu(mu, u).unwrap();
        let d = derive_parameters(&g).unwrap();
        prop_assert!(rel(d.mu, mu) <= 1e-12);
        prop_assert!(rel(d.u, u) <= 1e-12);
    }
}
