//! Small reference universes used by tests, examples and the CLI.

use itertools::Itertools;

use crate::lattice::{Universe, Vertex};

/// The worked-example edges: the paths `(5,9) (3,8) (2,6) (3,4)` and
/// `(5,9) (3,8) (5,3)`, plus `(10,3) -> (6,5)`.
pub const SAMPLE_FRAGMENT_EDGES: [([u32; 2], [u32; 2]); 5] = [
    ([5, 9], [3, 8]),
    ([3, 8], [2, 6]),
    ([2, 6], [3, 4]),
    ([3, 8], [5, 3]),
    ([10, 3], [6, 5]),
];

/// The full `{0..=bound}^k` box of lattice points in lexicographic order.
pub fn lattice_box(k: usize, bound: u32) -> Vec<Vertex> {
    (0..k)
        .map(|_| 0..=bound)
        .multi_cartesian_product()
        .map(Vertex::from)
        .collect()
}

/// `D = {0..14}^2` with the five sample edges.
pub fn sample_fragment() -> Universe {
    Universe::new(
        2,
        lattice_box(2, 14),
        SAMPLE_FRAGMENT_EDGES
            .iter()
            .map(|&(s, t)| (Vertex::from(s), Vertex::from(t))),
    )
    .expect("sample fragment is downward-directed")
}
