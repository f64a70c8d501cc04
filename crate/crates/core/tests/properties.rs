mod support;

use support::{runner, PROPERTIES};

fn run(name: &str) {
    let (_, prop) = PROPERTIES.iter().find(|(n, _)| *n == name).unwrap();
    if let Err(e) = prop(&mut runner()) {
        panic!("{name}: {e}");
    }
}

#[test]
fn relabelling_invariance() {
    run(PROPERTIES[0].0);
}

#[test]
fn canonical_form_orbits() {
    run(PROPERTIES[1].0);
}

#[test]
fn division_duality() {
    run(PROPERTIES[2].0);
}

#[test]
fn complex_products() {
    run(PROPERTIES[3].0);
}

#[test]
fn round_trip() {
    run(PROPERTIES[4].0);
}

#[test]
fn witness_soundness() {
    run(PROPERTIES[5].0);
}

#[test]
fn runner_executes_every_case() {
    let seen = std::cell::Cell::new(0);
    runner()
        .run(&(0u8..), |_| {
            seen.set(seen.get() + 1);
            Ok(())
        })
        .unwrap();
    assert_eq!(seen.get(), support::CASES);
}
