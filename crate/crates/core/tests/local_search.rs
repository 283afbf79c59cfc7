mod common;

#[test]
fn quadratics_up_to_ten_dimensions() {
    let (_, iters) = common::quadratic_suite(77).unwrap();
    assert!(iters <= 100);
}

#[test]
fn stops_on_an_active_bound() {
    assert_eq!(common::active_bound().unwrap(), 1.0);
}

#[test]
fn rosenbrock_from_the_classic_start() {
    assert!(common::rosenbrock_descent().unwrap() <= 1e-8);
}
