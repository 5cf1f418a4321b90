use gencube::state_spaces::*;

#[test]
fn pauli_axes_give_vertex_corners() {
    let set = PovmSet::parse("dim 2\naxis 1 0 0\naxis 0 1 0\naxis 0 0 1\n").unwrap();
    let Compatibility::Compatible(corners) = operator_compatible(&set) else {
        panic!("X, Y, Z must be compatible");
    };
    assert_eq!(corners.len(), 8);
    for (k, c) in corners.iter().enumerate() {
        assert!(c.operator.max_abs_diff(&vertex_from_index(k).to_dense()) < 1e-10);
    }
}

#[test]
fn four_generic_axes_incompatible() {
    let text = "dim 2\naxis 1 0 0\naxis 0 1 0\naxis 0 0 1\naxis 0.3 0.5 0.81\n";
    assert!(!operator_compatible(&PovmSet::parse(text).unwrap()).is_compatible());
}

#[test]
fn explicit_elements_match_axis_shorthand() {
    let text = "dim 2\npovm\nelem 1 0 0 0 0 0 0 0\nelem 0 0 0 0 0 0 1 0\nend\n";
    let set = PovmSet::parse(text).unwrap();
    let z = PovmSet::parse("dim 2\naxis 0 0 1\n").unwrap();
    for (a, b) in set.povms()[0].iter().zip(&z.povms()[0]) {
        assert!(a.max_abs_diff(b) < 1e-15);
    }
}

#[test]
fn counting_bound_for_qutrits() {
    // d = 3: d² + N − 1 with N = 5 qutrit measurements of 3 outcomes → 15 > 13
    assert!(!counting_bound_ok(3, &[3; 5]));
    assert!(counting_bound_ok(3, &[3; 4]));
    assert!(!counting_bound_ok(2, &[2; 4]));
    assert!(counting_bound_ok(2, &[2; 3]));
}

#[test]
fn malformed_files_rejected() {
    assert!(PovmSet::parse("axis 0 0 1").is_err());
    assert!(PovmSet::parse("dim 2\npovm\nelem 1 0\nend\n").is_err());
    assert!(PovmSet::parse("dim 2\npovm\nelem 1 0 0 0 0 0 0 0\n").is_err());
    // elements do not sum to identity
    assert!(PovmSet::parse("dim 2\npovm\nelem 1 0 0 0 0 0 0 0\nend\n").is_err());
}
