use gencube::gates::{csign, NoiseFamily};
use gencube::pauli::product;
use gencube::separability::*;
use gencube::state_spaces::vertex_from_index;

#[test]
fn certificates_survive_text_round_trip() {
    let ones = vertex_from_index(0);
    let a = gencube::gates::apply_noise(&csign(&product(&ones, &ones)), &NoiseFamily::JointDepol.with(0.7)).unwrap();
    let Separability::Feasible(c) = cube_separable(&a, 1.0).unwrap() else { panic!("0.7 is above threshold") };
    let back = LhvCertificate::from_text(&c.to_text()).unwrap();
    assert!(verify_certificate(&back, &a, 1.0, 1e-9));
}

#[test]
fn infeasible_verdicts_ship_valid_functionals() {
    for k in 0..NUM_PAIRS {
        let a = csign(&vertex_product(k, 1.0));
        match cube_separable(&a, 1.0).unwrap() {
            Separability::Infeasible(b) => {
                assert!(b.min_over_vertices(1.0) >= -FEAS_TOL);
                assert!(b.value(&a) < 0.0);
            }
            Separability::Feasible(_) => panic!("noiseless CSIGN output {k} is separable"),
        }
    }
}

#[test]
fn exact_mode_agrees_at_the_threshold_boundary() {
    let ones = vertex_from_index(0);
    for l in [2.0 / 3.0 - 1e-4, 2.0 / 3.0 + 1e-4] {
        let a = gencube::gates::apply_noise(&csign(&product(&ones, &ones)), &NoiseFamily::JointDepol.with(l)).unwrap();
        let f = cube_separable(&a, 1.0).unwrap().is_feasible();
        let e = cube_separable_with(&a, 1.0, LpMode::ExactOnly).unwrap().is_feasible();
        assert_eq!(f, e);
        assert_eq!(f, l > 2.0 / 3.0);
    }
}

#[test]
fn rescaled_vertices_are_separable_in_their_own_cube() {
    for r in [0.5, 1.0, 1.7] {
        for k in [0, 9, 63] {
            assert!(cube_separable(&vertex_product(k, r), r).unwrap().is_feasible());
        }
    }
}
