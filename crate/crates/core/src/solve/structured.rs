//! Closed-form equilibria on paths and cycles under the 0-or-2 pattern, and the
//! four-triangle chain that has none.

use crate::error::{Error, Result};
use crate::game::PggInstance;
use crate::graph::{Graph, Profile};
use crate::pattern::Pattern;

/// Path on `n` nodes with a non-trivial PNE under `[1,0,1]`.
///
/// The base is `0,1,0` / `1,0,0,1` / `0,1` for `n` ≡ 0 / 1 / 2 (mod 3), then
/// extended by `0,1,0` in the first case and `0,0,1` in the others.
pub fn build_path_pne(n: usize) -> Result<(PggInstance, Profile)> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!("path needs at least 2 nodes, got {n}")));
    }
    let (base, block): (&[u8], &[u8]) = match n % 3 {
        0 => (&[0, 1, 0], &[0, 1, 0]),
        1 => (&[1, 0, 0, 1], &[0, 0, 1]),
        _ => (&[0, 1], &[0, 0, 1]),
    };
    let mut bits = base.to_vec();
    while bits.len() < n {
        bits.extend_from_slice(block);
    }
    debug_assert_eq!(bits.len(), n);
    Ok((
        PggInstance::new(Graph::path(n), Pattern::zero_or_two()),
        Profile::from_bits(&bits),
    ))
}

/// `C_n` with every node producing: each node sees exactly two producers.
pub fn build_cycle_pne(n: usize) -> Result<(PggInstance, Profile)> {
    let g = Graph::cycle(n)?;
    Ok((PggInstance::new(g, Pattern::zero_or_two()), Profile::ones(n)))
}

/// Four triangles in a chain, consecutive triangles sharing one vertex.
pub fn four_triangle_chain() -> Graph {
    let edges = (0..4).flat_map(|t| {
        let a = 2 * t;
        [(a, a + 1), (a, a + 2), (a + 1, a + 2)]
    });
    Graph::from_edges(9, edges).expect("chain edges are simple")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn path_examples() {
        assert_eq!(build_path_pne(4).unwrap().1, Profile::from_bits(&[1, 0, 0, 1]));
        assert_eq!(build_path_pne(5).unwrap().1, Profile::from_bits(&[0, 1, 0, 0, 1]));
        assert_eq!(build_path_pne(2).unwrap().1, Profile::from_bits(&[0, 1]));
        assert_eq!(build_path_pne(3).unwrap().1, Profile::from_bits(&[0, 1, 0]));
        let (inst, s) = build_path_pne(6).unwrap();
        assert!(inst.is_ntpne(&s).unwrap());
        assert!(build_path_pne(1).is_err());
    }

    #[test]
    fn paths_up_to_300() {
        for n in 2..=300 {
            let (inst, s) = build_path_pne(n).unwrap();
            assert_eq!(s.len(), n);
            assert!(inst.is_ntpne(&s).unwrap(), "n = {n}");
        }
    }

    #[test]
    fn cycles() {
        for n in [3, 4, 100] {
            let (inst, s) = build_cycle_pne(n).unwrap();
            assert!(inst.is_ntpne(&s).unwrap());
        }
        assert!(build_cycle_pne(2).is_err());
    }

    #[test]
    fn chain_shape() {
        let g = four_triangle_chain();
        assert_eq!((g.n(), g.edge_count()), (9, 12));
        assert_eq!(g.degree_histogram(), vec![0, 0, 6, 0, 3]);
    }
}
