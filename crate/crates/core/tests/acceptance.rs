//! Verification suite: one test per criterion, each printing its result line
//! and enforcing both the outcome and the runtime budget.

use metjet::acceptance::run_criterion;

fn check(id: usize) {
    let res = run_criterion(id);
    println!("{}", res.line());
    assert!(res.pass, "criterion {} failed: {}", res.id, res.details);
    assert!(
        res.elapsed <= res.budget,
        "criterion {} exceeded its budget: {:?} > {:?}",
        res.id,
        res.elapsed,
        res.budget
    );
}

#[test]
fn criterion_01_low_order_surjectivity() {
    check(1);
}

#[test]
fn criterion_02_line_triviality() {
    check(2);
}

#[test]
fn criterion_03_surface_order_two_kernel() {
    check(3);
}

#[test]
fn criterion_04_injectivity_order_two() {
    check(4);
}

#[test]
fn criterion_05_injectivity_order_three() {
    check(5);
}

#[test]
fn criterion_06_full_count_table() {
    check(6);
}

#[test]
fn criterion_07_surface_residual_degeneracy() {
    check(7);
}

#[test]
fn criterion_08_residual_orbit_symmetry() {
    check(8);
}

#[test]
fn criterion_09_bracket_homomorphism() {
    check(9);
}

#[test]
fn criterion_10_first_integral_oracle() {
    check(10);
}

#[test]
fn criterion_11_determinant_transport() {
    check(11);
}

#[test]
fn criterion_12_weyl_accounting() {
    check(12);
}

#[test]
fn criterion_13_curvature_seeding_roundtrip() {
    check(13);
}
