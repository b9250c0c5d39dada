mod common;

use sinc_kdv::stepper::{self, Operators, SolverState};
use sinc_kdv::{diagnostics, Error};

use common::{kdv_setup, observed_order};

#[test]
fn crank_nicolson_weighting_is_second_order() {
    let order = observed_order(0.5);
    assert!((order - 2.0).abs() <= 0.4, "observed order {order}");
}

#[test]
fn backward_weighting_is_first_order() {
    let order = observed_order(1.0);
    assert!((order - 1.0).abs() <= 0.4, "observed order {order}");
}

#[test]
fn boundary_values_match_reference() {
    let setup = kdv_setup(0.5, 0.1, 0.5);
    let ops = Operators::new(&setup.grid);
    let mut s = SolverState::initial(&setup);
    let n = setup.grid.len();
    for k in 1..=5 {
        s = stepper::step(&s, &setup, &ops).unwrap();
        let t = k as f64 * 0.1;
        assert!((s.u[0] - setup.exact(setup.grid.a(), t)).abs() <= 1e-12);
        assert!((s.u[n - 1] - setup.exact(setup.grid.b(), t)).abs() <= 1e-12);
    }
}

#[test]
fn runs_are_bitwise_reproducible() {
    let setup = kdv_setup(0.5, 0.1, 0.5);
    let a = stepper::run(&setup, &[0.2, 0.5]).unwrap();
    let b = stepper::run(&setup, &[0.5, 0.2]).unwrap();
    assert_eq!(a, b);
}

#[test]
fn zero_state_is_fixed() {
    let setup = kdv_setup(0.5, 0.1, 0.1);
    let ops = Operators::new(&setup.grid);
    let s = SolverState {
        t: 0.0,
        u: vec![0.0; setup.grid.len()],
        step_index: 0,
    };
    let next = stepper::step_with_boundary(&s, &setup, &ops, (0.0, 0.0)).unwrap();
    assert!(next.u.iter().all(|&v| v == 0.0));
}

#[test]
fn one_step_keeps_mass() {
    let setup = kdv_setup(0.5, 0.01, 0.01);
    let ops = Operators::new(&setup.grid);
    let h = setup.grid.spacing();
    let s0 = SolverState::initial(&setup);
    let s1 = stepper::step(&s0, &setup, &ops).unwrap();
    let m0 = diagnostics::invariants(&s0.u, h).i1;
    let m1 = diagnostics::invariants(&s1.u, h).i1;
    assert!((m1 - m0).abs() <= 1e-6, "{m0} -> {m1}");
}

#[test]
fn observers_beyond_final_time_rejected() {
    let setup = kdv_setup(0.5, 0.1, 0.5);
    assert!(matches!(
        stepper::run(&setup, &[0.6]),
        Err(Error::MisalignedObserver { .. })
    ));
    assert!(matches!(
        stepper::run(&setup, &[0.25]),
        Err(Error::MisalignedObserver { .. })
    ));
}

#[test]
fn records_follow_observer_order() {
    let setup = kdv_setup(0.5, 0.1, 0.9);
    let obs: Vec<f64> = (1..=9).map(|k| k as f64 / 10.0).collect();
    let traj = stepper::run(&setup, &obs).unwrap();
    assert_eq!(traj.records.len(), 9);
    for (r, t) in traj.records.iter().zip(&obs) {
        assert_eq!(r.t, *t);
    }
}
