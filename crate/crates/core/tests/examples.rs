//! Runs every cargo example as a test.

mod numerical_range {
    include!("../examples/numerical_range.rs");
}
mod clark_decomposition {
    include!("../examples/clark_decomposition.rs");
}
mod functional_calculus {
    include!("../examples/functional_calculus.rs");
}
mod teardrop {
    include!("../examples/teardrop.rs");
}
mod region_s {
    include!("../examples/region_s.rs");
}
mod verify_suites {
    include!("../examples/verify_suites.rs");
}
mod extremal_search {
    include!("../examples/extremal_search.rs");
}

#[test]
fn numerical_range_example() {
    numerical_range::run_example().unwrap();
}

#[test]
fn clark_decomposition_example() {
    clark_decomposition::run_example().unwrap();
}

#[test]
fn functional_calculus_example() {
    functional_calculus::run_example().unwrap();
}

#[test]
fn teardrop_example() {
    let svg = teardrop::run_example().unwrap();
    assert!(svg.starts_with("<svg"));
}

#[test]
fn region_s_example() {
    region_s::run_example().unwrap();
}

#[test]
fn verify_suites_example() {
    verify_suites::run_example(5, 42).unwrap();
}

#[test]
fn extremal_search_example() {
    extremal_search::run_example(200).unwrap();
}
