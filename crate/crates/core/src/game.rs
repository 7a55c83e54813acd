//! A public goods game: a graph paired with a best-response pattern.

use crate::error::{Error, Result};
use crate::graph::{Graph, Profile};
use crate::pattern::Pattern;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PggInstance {
    pub graph: Graph,
    pub pattern: Pattern,
}

impl PggInstance {
    pub fn new(graph: Graph, pattern: Pattern) -> Self {
        PggInstance { graph, pattern }
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    fn check_len(&self, s: &Profile) -> Result<()> {
        if s.len() != self.n() {
            return Err(Error::LengthMismatch {
                profile: s.len(),
                nodes: self.n(),
            });
        }
        Ok(())
    }

    pub fn best_response(&self, s: &Profile, i: usize) -> Result<bool> {
        Ok(self.pattern.query(productive_neighbors(&self.graph, s, i)?))
    }

    /// Smallest node whose strategy differs from its best response.
    pub fn first_deviator(&self, s: &Profile) -> Result<Option<usize>> {
        self.check_len(s)?;
        Ok((0..self.n()).find(|&i| s.get(i) != self.pattern.query(count_productive(&self.graph, s, i))))
    }

    pub fn is_pne(&self, s: &Profile) -> Result<bool> {
        Ok(self.first_deviator(s)?.is_none())
    }

    /// A PNE in which at least one node produces.
    pub fn is_ntpne(&self, s: &Profile) -> Result<bool> {
        Ok(self.is_pne(s)? && !s.is_all_zero())
    }
}

/// Number of neighbors of `i` playing 1.
pub fn productive_neighbors(g: &Graph, s: &Profile, i: usize) -> Result<usize> {
    if i >= g.n() {
        return Err(Error::NodeOutOfRange { node: i, n: g.n() });
    }
    if s.len() != g.n() {
        return Err(Error::LengthMismatch {
            profile: s.len(),
            nodes: g.n(),
        });
    }
    Ok(count_productive(g, s, i))
}

#[inline]
pub(crate) fn count_productive(g: &Graph, s: &Profile, i: usize) -> usize {
    g.neighbors(i).iter().filter(|&&j| s.get(j)).count()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle() -> Graph {
        Graph::complete(3)
    }

    #[test]
    fn productive_neighbor_counts() {
        assert_eq!(productive_neighbors(&triangle(), &Profile::ones(3), 0), Ok(2));
        assert_eq!(productive_neighbors(&Graph::path(2), &Profile::from_bits(&[0, 1]), 0), Ok(1));
        let isolated = Graph::empty(3);
        assert_eq!(productive_neighbors(&isolated, &Profile::ones(3), 1), Ok(0));
        assert_eq!(
            productive_neighbors(&isolated, &Profile::ones(3), 3),
            Err(Error::NodeOutOfRange { node: 3, n: 3 })
        );
    }

    #[test]
    fn pne_examples() {
        let c5 = PggInstance::new(Graph::cycle(5).unwrap(), Pattern::zero_or_two());
        assert_eq!(c5.is_pne(&Profile::ones(5)), Ok(true));

        let p2 = PggInstance::new(Graph::path(2), Pattern::zero_or_two());
        assert_eq!(p2.is_pne(&Profile::from_bits(&[0, 1])), Ok(true));

        let any = PggInstance::new(Graph::path(4), Pattern::from_bits(&[1, 0, 1, 1]));
        assert_eq!(any.is_pne(&Profile::zeros(4)), Ok(false));

        assert_eq!(
            c5.is_pne(&Profile::ones(4)),
            Err(Error::LengthMismatch { profile: 4, nodes: 5 })
        );
    }

    #[test]
    fn ntpne_examples() {
        let p5 = PggInstance::new(Graph::path(5), Pattern::zero_or_two());
        assert_eq!(p5.is_ntpne(&Profile::from_bits(&[0, 1, 0, 0, 1])), Ok(true));
        let tri = PggInstance::new(triangle(), Pattern::zero_or_two());
        assert_eq!(tri.is_ntpne(&Profile::ones(3)), Ok(true));
        let edge = PggInstance::new(Graph::path(2), Pattern::from_bits(&[0, 1]));
        assert_eq!(edge.is_pne(&Profile::zeros(2)), Ok(true));
        assert_eq!(edge.is_ntpne(&Profile::zeros(2)), Ok(false));
    }

    #[test]
    fn deviator_is_lowest_id() {
        let p5 = PggInstance::new(Graph::path(5), Pattern::zero_or_two());
        assert_eq!(p5.first_deviator(&Profile::ones(5)), Ok(Some(0)));
    }
}
