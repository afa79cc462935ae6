//! Sanity checks for the isomorphism-class enumerator used by the
//! exhaustive suites.

mod common;

use common::{iso_classes, subset_masks};

#[test]
fn simple_graph_counts_match_known_values() {
    for (n, expected) in [(1, 1), (2, 2), (3, 4), (4, 11), (5, 34)] {
        let pairs = subset_masks(n, &[2]);
        let simple = iso_classes(n, &pairs, pairs.len())
            .into_iter()
            .filter(|c| c.windows(2).all(|w| w[0] != w[1]))
            .count();
        assert_eq!(simple, expected, "n = {n}");
    }
}

#[test]
fn multigraph_counts_match_known_values() {
    // Loopless multigraphs on 3 vertices with m edges: 1, 1, 2, 3, 4.
    let counts: Vec<usize> = (0..5)
        .map(|m| iso_classes(3, &subset_masks(3, &[2]), m).len())
        .scan(0, |prev, total| {
            let here = total - *prev;
            *prev = total;
            Some(here)
        })
        .collect();
    assert_eq!(counts, [1, 1, 2, 3, 4]);
}
