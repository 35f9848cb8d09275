//! Small graph families used as fixtures by the tests, benches and CLI.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::graph::Graph;

/// The cycle `C_n` (requires `n >= 3`).
pub fn cycle(n: usize) -> Graph {
    assert!(n >= 3, "a simple cycle needs at least 3 vertices");
    Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).expect("simple")
}

/// The complete graph `K_n`.
pub fn complete(n: usize) -> Graph {
    let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
    Graph::from_edges(n, edges).expect("simple")
}

/// `C_n` plus the chord `{0, 2}` (requires `n >= 4`).
pub fn cycle_plus_chord(n: usize) -> Graph {
    assert!(n >= 4, "the chord {{0,2}} needs n >= 4");
    Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n)).chain([(0, 2)])).expect("simple")
}

/// Two triangles `{0,1,2}` and `{3,4,5}` joined by the edges `{2,3}` and
/// `{0,5}`. Some of its bases have two components.
pub fn linked_triangles() -> Graph {
    Graph::from_edges(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (2, 3), (0, 5)])
        .expect("simple")
}

/// A uniformly shuffled spanning tree plus `m - (n - 1)` distinct extra
/// edges. Connected by construction; requires `n - 1 <= m <= n(n-1)/2`.
pub fn random_connected<R: Rng + ?Sized>(n: usize, m: usize, rng: &mut R) -> Graph {
    assert!(n >= 2 && m + 1 >= n && m <= n * (n - 1) / 2, "infeasible (n, m) = ({n}, {m})");
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut edges = Vec::with_capacity(m);
    let mut present = vec![false; n * n];
    for i in 1..n {
        let parent = order[rng.gen_range(0..i)];
        let child = order[i];
        edges.push((parent, child));
        present[parent * n + child] = true;
        present[child * n + parent] = true;
    }
    let mut missing: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .filter(|&(u, v)| !present[u * n + v])
        .collect();
    missing.shuffle(rng);
    edges.extend(missing.into_iter().take(m + 1 - n));
    Graph::from_edges(n, edges).expect("simple")
}
