//! The canonical example graphs used across the test suites and shipped as
//! JSON files under `fixtures/`.

use crate::graph::Graph;

fn build(vertices: &[&str], edges: &[(&str, &str, &str)]) -> Graph {
    Graph::new(
        vertices.iter().map(|s| s.to_string()).collect(),
        edges
            .iter()
            .map(|(n, s, d)| (n.to_string(), s.to_string(), d.to_string()))
            .collect(),
    )
    .expect("fixture graphs are valid")
}

/// One vertex `v` with a single loop `c` (the rose with one petal).
pub fn r1() -> Graph {
    build(&["v"], &[("c", "v", "v")])
}

/// One vertex `v` with loops `c`, `d`, declared in that order.
pub fn r2() -> Graph {
    build(&["v"], &[("c", "v", "v"), ("d", "v", "v")])
}

/// `u --e--> v` with a loop `c` at `v`.
pub fn g_e1() -> Graph {
    build(&["u", "v"], &[("e", "u", "v"), ("c", "v", "v")])
}

/// Loop `c` at `v` with an exit edge `h : v -> w`.
pub fn g_s() -> Graph {
    build(&["v", "w"], &[("c", "v", "v"), ("h", "v", "w")])
}

/// The two-cycle `v1 --e1--> v2 --e2--> v1`.
pub fn g_c2() -> Graph {
    build(&["v1", "v2"], &[("e1", "v1", "v2"), ("e2", "v2", "v1")])
}

/// The two-cycle plus a source `z --g--> v2`.
pub fn g_c2z() -> Graph {
    build(
        &["v1", "v2", "z"],
        &[("e1", "v1", "v2"), ("e2", "v2", "v1"), ("g", "z", "v2")],
    )
}

/// The two-cycle plus an exit `v2 --g--> w`.
pub fn g_c2x() -> Graph {
    build(
        &["v1", "v2", "w"],
        &[("e1", "v1", "v2"), ("e2", "v2", "v1"), ("g", "v2", "w")],
    )
}
