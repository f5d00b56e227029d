//! Benchmark instances shared by the kernel benches.

use crossfam_core::bipartite::BipartiteDisjointness;
use crossfam_core::{GroundSpec, ProductKneserGraph};

/// Kneser products small enough for the exact solver, labelled by spec.
pub fn kneser_instances() -> Vec<(String, ProductKneserGraph)> {
    [
        (&[5u32][..], &[2u32][..]),
        (&[7], &[3]),
        (&[6, 4], &[2, 1]),
        (&[2, 2, 2, 2], &[1, 1, 1, 1]),
    ]
    .into_iter()
    .map(|(n, k)| {
        let spec = GroundSpec::from_lists(n, k).expect("valid spec");
        (spec.to_string(), ProductKneserGraph::new(&spec).expect("enumerable"))
    })
    .collect()
}

/// Specs and family counts for the cross-intersecting search.
pub fn search_instances() -> Vec<(GroundSpec, usize)> {
    vec![
        (GroundSpec::from_lists(&[4], &[2]).expect("valid spec"), 3),
        (GroundSpec::from_lists(&[5], &[2]).expect("valid spec"), 2),
        (GroundSpec::from_lists(&[2, 3], &[1, 1]).expect("valid spec"), 2),
    ]
}

/// Bipartite instances whose smaller side fits the closed-pair sweep.
pub fn fragment_instances() -> Vec<BipartiteDisjointness> {
    [
        (&[5u32][..], &[2u32][..], &[2u32][..]),
        (&[6], &[2], &[3]),
        (&[7], &[2], &[2]),
    ]
    .into_iter()
    .map(|(n, t, s)| BipartiteDisjointness::new(n, t, s).expect("valid instance"))
    .collect()
}
