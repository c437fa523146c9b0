//! Every example under `examples/` runs as a test.

#[allow(dead_code)]
mod symphonies {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/symphonies.rs"));
}

#[allow(dead_code)]
mod play_collection {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/play_collection.rs"));
}

#[allow(dead_code)]
mod hyperbox_compression {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/hyperbox_compression.rs"));
}

#[allow(dead_code)]
mod grid_complexes {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/grid_complexes.rs"));
}

#[allow(dead_code)]
mod unknot_surgery {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/unknot_surgery.rs"));
}

#[allow(dead_code)]
mod hopf_surgery {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/hopf_surgery.rs"));
}

#[allow(dead_code)]
mod spectral_sequence {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/spectral_sequence.rs"));
}

#[allow(dead_code)]
mod cli_tour {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/cli_tour.rs"));
}

#[test]
fn symphonies_example_counts() {
    assert_eq!(symphonies::run_example().unwrap(), vec![1, 1, 7, 97, 2051]);
}

#[test]
fn play_collection_example_runs() {
    assert!(play_collection::run_example().unwrap() > 0);
}

#[test]
fn hyperbox_compression_example_runs() {
    let c = hyperbox_compression::run_example().unwrap();
    assert_eq!(c.size, vec![1, 1]);
}

#[test]
fn grid_complexes_example_ranks() {
    assert_eq!(grid_complexes::run_example().unwrap(), vec![4, 8, 12]);
}

#[test]
fn unknot_surgery_example_ranks() {
    assert_eq!(unknot_surgery::run_example().unwrap(), vec![1, 2, 3, 1, 2, 3]);
}

#[test]
fn hopf_surgery_example_classes() {
    assert_eq!(hopf_surgery::run_example().unwrap(), vec![(3, 6), (5, 10)]);
}

#[test]
fn spectral_sequence_example_converges() {
    let totals = spectral_sequence::run_example().unwrap();
    assert_eq!(totals.last(), Some(&4));
}

#[test]
fn cli_tour_example_outputs() {
    let out = cli_tour::run_example().unwrap();
    assert_eq!(out[0], "97\n");
    assert_eq!(out[1].lines().count(), 4);
}
