//! The replica construction relating a pattern to its doubles.
//!
//! `T'` is a double of `T` when `T'[2k] = T[k]` for every `k`; odd entries of
//! `T'` are unrestricted. Doubling the graph turns every neighbor count into an
//! even one whenever replicas agree, so `(G, T)` and `(double(G), T')` have
//! non-trivial equilibria together.

use rand::Rng;

use crate::graph::Graph;
use crate::pattern::Pattern;

/// Two copies of `g` where node `i`'s replica is `n + i`, and every original
/// edge `{i, j}` also yields the cross edges `{i, n+j}` and `{j, n+i}`.
pub fn double_graph(g: &Graph) -> Graph {
    let n = g.n();
    let mut d = Graph::empty(2 * n);
    for (i, j) in g.edges() {
        for (u, v) in [(i, j), (n + i, n + j), (i, n + j), (j, n + i)] {
            d.add_edge(u, v).expect("replica edges are distinct");
        }
    }
    d
}

/// The double of `t` whose odd entries `2k+1` (for `k < odd.len()`) are `odd[k]`.
pub fn double_pattern(t: &Pattern, odd: &[bool]) -> Pattern {
    let len = (2 * t.len()).max(2 * odd.len());
    Pattern::new(
        (0..len)
            .map(|i| if i % 2 == 0 { t.query(i / 2) } else { odd.get(i / 2).copied().unwrap_or(false) })
            .collect::<Vec<_>>(),
    )
}

/// A random double of `t`, drawing each odd entry up to index `2·max(len, 1) − 1` uniformly.
pub fn random_double(rng: &mut impl Rng, t: &Pattern) -> Pattern {
    let odd: Vec<bool> = (0..t.len().max(1)).map(|_| rng.gen_bool(0.5)).collect();
    double_pattern(t, &odd)
}
