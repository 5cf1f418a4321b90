use gencube::constructions::*;
use gencube::dense::min_eigenvalue;
use gencube::gates::footnote_orbit;
use gencube::pauli::{product, BlochOp};
use gencube::separability::{vertex_product, verify_certificate};
use gencube::Error;

#[test]
fn lemma8_near_product_parameters() {
    let r = lemma8_report(0.99, 0.001).unwrap();
    println!("{r}");
    assert!(r.trace_preserving());
    assert!(r.entangles_product_input());
    assert!(r.cj_pt_in_out < -1e-8);
    assert!(r.a2_distance_to_t < 0.3);
}

#[test]
fn lemma8_witness_for_several_b_states() {
    let cj = build_cj(0.998, 0.0005).unwrap();
    let a = t_plus_t_bar();
    for b in [[0.0, 0.0, 1.0], [1.0, 0.0, 0.0], [0.0, -0.6, 0.8], [0.0, 0.0, 0.0]] {
        let out = cj_apply(&cj, &product(&a, &BlochOp::new(b)));
        let pt = gencube::pauli::partial_transpose(&out).to_dense();
        assert!(min_eigenvalue(&pt).unwrap() < -1e-8, "{b:?}");
    }
}

#[test]
fn cj_channel_is_trace_preserving_on_vertex_inputs() {
    let cj = build_cj(0.995, 0.001).unwrap();
    for k in 0..64 {
        let out = cj_apply(&cj, &vertex_product(k, 1.0));
        assert!((out.get(0, 0) - 1.0).abs() < 1e-12);
    }
}

#[test]
fn lemma8_search_runs_every_candidate() {
    let s = lemma8_search().unwrap();
    assert!(!s.tried.is_empty());
    let best = s.best().unwrap();
    println!("best: alpha={} epsilon={} feasible={}/64", best.alpha, best.epsilon, best.feasible_count());
}

#[test]
fn error_per_gate_bounds_hold() {
    let b = error_per_gate_bounds().unwrap();
    assert_eq!(b.lower, 0.2);
    assert!(b.w_identity_residual < 1e-12);
    assert_eq!(b.noiseless_min_probability, -0.5);
    assert_eq!(b.upper_feasible, 64);
    for (k, c) in b.upper_certificates.iter().enumerate() {
        let target = error_per_gate(&vertex_product(k, 1.0), &gencube::gates::NoiseModel::ErrorPerGate(0.5, gencube::gates::AdversaryMap::ZFirst)).unwrap();
        assert!(verify_certificate(c, &target, 1.0, 1e-9));
    }
}

#[test]
fn appendix2_full_run() {
    let r = appendix2_checks(1000, 2024);
    assert_eq!(r.stated_probability, -0.5);
    assert_eq!(r.over_unit_witnessed, 1000);
    assert_eq!(r.in_ball_witnessed, 0);
}

#[test]
fn half_turn_symmetry() {
    assert!(appendix3_symmetry_deviation(50, 7).unwrap() < 1e-10);
}

#[test]
fn ball_radius_shrinks_toward_vertex() {
    let mut last = f64::INFINITY;
    for s in [0.3, 0.8, 1.3, 1.6] {
        let r = separable_ball_radius(&t_direction(s), &t_direction(s), 24, 5).unwrap();
        assert!(r > 0.0 && r <= last + 1e-9, "s={s}: {r} vs {last}");
        last = r;
    }
    assert_eq!(
        separable_ball_radius(&BlochOp::new([0.0, 0.0, -1.0]), &t_direction(0.5), 4, 0),
        Err(Error::OnCubeFace)
    );
}

#[test]
fn footnote_orbit_visits_every_vertex() {
    let orbit = footnote_orbit();
    let mut seen: Vec<usize> = orbit
        .iter()
        .map(|v| gencube::state_spaces::vertex_index(&BlochOp::new(*v)).unwrap())
        .collect();
    seen.sort();
    seen.dedup();
    assert_eq!(seen.len(), 8);
}
