//! Every example under examples/ runs to completion.

mod lattice_basics {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/lattice_basics.rs"));
}

#[test]
fn lattice_basics_example_runs() {
    lattice_basics::run_example().expect("lattice_basics example should run");
}

mod discriminant_forms {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/discriminant_forms.rs"));
}

#[test]
fn discriminant_forms_example_runs() {
    discriminant_forms::run_example().expect("discriminant_forms example should run");
}

mod fm_count {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/fm_count.rs"));
}

#[test]
fn fm_count_example_runs() {
    fm_count::run_example().expect("fm_count example should run");
}

mod mukai_vectors {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/mukai_vectors.rs"));
}

#[test]
fn mukai_vectors_example_runs() {
    mukai_vectors::run_example().expect("mukai_vectors example should run");
}

mod moduli_shadow {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/moduli_shadow.rs"));
}

#[test]
fn moduli_shadow_example_runs() {
    moduli_shadow::run_example().expect("moduli_shadow example should run");
}

mod rank2_family {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/rank2_family.rs"));
}

#[test]
fn rank2_family_example_runs() {
    rank2_family::run_example().expect("rank2_family example should run");
}

mod isometry_search {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/isometry_search.rs"));
}

#[test]
fn isometry_search_example_runs() {
    isometry_search::run_example().expect("isometry_search example should run");
}

mod polarization_orbits {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/polarization_orbits.rs"));
}

#[test]
fn polarization_orbits_example_runs() {
    polarization_orbits::run_example().expect("polarization_orbits example should run");
}
