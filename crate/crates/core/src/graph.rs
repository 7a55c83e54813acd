//! Simple undirected graphs and 0/1 strategy profiles.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Undirected simple graph on nodes `0..n`.
///
/// Adjacency is stored in compressed form: the sorted neighbors of `i` are
/// `nbrs[start[i]..start[i + 1]]`. One allocation per graph keeps building
/// long paths and cycles cheap; mutation shifts the tail of `nbrs`, which is
/// fine at gadget scale, and bulk construction goes through `from_edges`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Graph {
    start: Vec<usize>,
    nbrs: Vec<usize>,
}

impl Default for Graph {
    fn default() -> Self {
        Graph::empty(0)
    }
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Graph {
            start: vec![0; n + 1],
            nbrs: Vec::new(),
        }
    }

    /// Builds a graph, rejecting self-loops, parallel edges and out-of-range ids.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut arcs = Vec::new();
        for (u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::NodeOutOfRange { node: w, n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            arcs.push((u, v));
            arcs.push((v, u));
        }
        arcs.sort_unstable();
        if let Some(w) = arcs.windows(2).find(|w| w[0] == w[1]) {
            let (u, v) = w[0];
            return Err(Error::ParallelEdge(u.min(v), u.max(v)));
        }
        let mut start = vec![0; n + 1];
        for &(u, _) in &arcs {
            start[u + 1] += 1;
        }
        for i in 0..n {
            start[i + 1] += start[i];
        }
        Ok(Graph {
            start,
            nbrs: arcs.into_iter().map(|(_, v)| v).collect(),
        })
    }

    pub fn add_node(&mut self) -> usize {
        self.start.push(self.nbrs.len());
        self.n() - 1
    }

    fn insert_arc(&mut self, u: usize, v: usize) {
        let pos = self.start[u] + self.neighbors(u).binary_search(&v).unwrap_err();
        self.nbrs.insert(pos, v);
        for s in &mut self.start[u + 1..] {
            *s += 1;
        }
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        let n = self.n();
        for w in [u, v] {
            if w >= n {
                return Err(Error::NodeOutOfRange { node: w, n });
            }
        }
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        if self.has_edge(u, v) {
            return Err(Error::ParallelEdge(u.min(v), u.max(v)));
        }
        self.insert_arc(u, v);
        self.insert_arc(v, u);
        Ok(())
    }

    /// Appends a disjoint copy of `other`; returns the id offset of its nodes.
    pub fn append(&mut self, other: &Graph) -> usize {
        let offset = self.n();
        let base = self.nbrs.len();
        self.start.extend(other.start[1..].iter().map(|&s| s + base));
        self.nbrs.extend(other.nbrs.iter().map(|&j| j + offset));
        offset
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.start.len() - 1
    }

    pub fn edge_count(&self) -> usize {
        self.nbrs.len() / 2
    }

    #[inline]
    pub fn neighbors(&self, i: usize) -> &[usize] {
        &self.nbrs[self.start[i]..self.start[i + 1]]
    }

    pub fn degree(&self, i: usize) -> usize {
        self.start[i + 1] - self.start[i]
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n()).map(|i| self.degree(i)).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n() && self.neighbors(u).binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n()).flat_map(move |u| self.neighbors(u).iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
    }

    /// `hist[d]` is the number of nodes of degree `d`.
    pub fn degree_histogram(&self) -> Vec<usize> {
        let mut hist = vec![0; self.max_degree() + 1];
        for i in 0..self.n() {
            hist[self.degree(i)] += 1;
        }
        hist
    }

    /// Relabels node `i` as `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Graph> {
        Graph::from_edges(self.n(), self.edges().map(|(u, v)| (perm[u], perm[v])))
    }

    pub fn path(n: usize) -> Graph {
        Graph::from_edges(n, (1..n).map(|i| (i - 1, i))).expect("path edges are simple")
    }

    pub fn cycle(n: usize) -> Result<Graph> {
        if n < 3 {
            return Err(Error::InvalidParameter(format!("cycle needs at least 3 nodes, got {n}")));
        }
        Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n)))
    }

    pub fn complete(n: usize) -> Graph {
        Graph::from_edges(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))))
            .expect("complete graph edges are simple")
    }

    /// Text form: a `n m` header, then one `u v` line per edge with `u < v`.
    /// The parser skips blank lines and lines starting with `#`.
    pub fn to_text(&self) -> String {
        let mut out = format!("{} {}\n", self.n(), self.edge_count());
        for (u, v) in self.edges() {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }

    pub fn parse_text(text: &str) -> Result<Graph> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (hline, header) = lines.next().ok_or_else(|| Error::parse(1, "missing `n m` header"))?;
        let [n, m] = parse_pair(hline, header)?;
        let mut edges = Vec::new();
        let mut seen = std::collections::HashSet::new();
        for (line, text) in lines {
            let [u, v] = parse_pair(line, text)?;
            let problem = if u.max(v) >= n {
                Some(Error::NodeOutOfRange { node: u.max(v), n })
            } else if u == v {
                Some(Error::SelfLoop(u))
            } else if !seen.insert((u.min(v), u.max(v))) {
                Some(Error::ParallelEdge(u.min(v), u.max(v)))
            } else {
                None
            };
            if let Some(e) = problem {
                return Err(Error::parse(line, e.to_string()));
            }
            edges.push((u, v));
        }
        if edges.len() != m {
            return Err(Error::parse(
                hline,
                format!("header declares {m} edges but {} were given", edges.len()),
            ));
        }
        Graph::from_edges(n, edges)
    }
}

fn parse_pair(line: usize, text: &str) -> Result<[usize; 2]> {
    let fields: Vec<&str> = text.split_whitespace().collect();
    if fields.len() != 2 {
        return Err(Error::parse(line, format!("expected two integers, got {text:?}")));
    }
    let num = |s: &str| {
        s.parse::<usize>()
            .map_err(|_| Error::parse(line, format!("not a non-negative integer: {s:?}")))
    };
    Ok([num(fields[0])?, num(fields[1])?])
}

/// One 0/1 strategy per node.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Profile(pub Vec<bool>);

impl Profile {
    pub fn zeros(n: usize) -> Self {
        Profile(vec![false; n])
    }

    pub fn ones(n: usize) -> Self {
        Profile(vec![true; n])
    }

    pub fn from_bits(bits: &[u8]) -> Self {
        Profile(bits.iter().map(|&b| b != 0).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_all_zero(&self) -> bool {
        self.0.iter().all(|&b| !b)
    }

    pub fn get(&self, i: usize) -> bool {
        self.0[i]
    }

    pub fn set(&mut self, i: usize, v: bool) {
        self.0[i] = v;
    }

    pub fn as_slice(&self) -> &[bool] {
        &self.0
    }

    pub fn count_ones(&self) -> usize {
        self.0.iter().filter(|&&b| b).count()
    }
}

impl fmt::Display for Profile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.0 {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl FromStr for Profile {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.trim()
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Error::parse(1, format!("invalid profile character {other:?}"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(Profile)
    }
}

impl Serialize for Profile {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Profile {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn incremental_and_bulk_construction_agree() {
        let edges = [(3, 1), (0, 4), (2, 1), (4, 3), (0, 1)];
        let mut g = Graph::empty(4);
        g.add_node();
        for (u, v) in edges {
            g.add_edge(u, v).unwrap();
        }
        assert_eq!(g, Graph::from_edges(5, edges).unwrap());
        assert_eq!(g.neighbors(1), &[0, 2, 3]);
        let mut h = Graph::path(2);
        assert_eq!(h.append(&g), 2);
        assert_eq!(h.neighbors(3), &[2, 4, 5]);
        assert_eq!(h.edge_count(), 6);
        assert_eq!(Graph::default(), Graph::empty(0));
        assert!(matches!(Graph::from_edges(3, [(0, 1), (1, 0)]), Err(Error::ParallelEdge(0, 1))));
        assert!(matches!(Graph::from_edges(3, [(2, 2)]), Err(Error::SelfLoop(2))));
        assert!(matches!(Graph::from_edges(3, [(0, 3)]), Err(Error::NodeOutOfRange { node: 3, n: 3 })));
    }

    #[test]
    fn rejects_bad_edges() {
        assert_eq!(Graph::from_edges(3, [(1, 1)]), Err(Error::SelfLoop(1)));
        assert_eq!(Graph::from_edges(3, [(0, 1), (1, 0)]), Err(Error::ParallelEdge(0, 1)));
        assert_eq!(
            Graph::from_edges(3, [(0, 3)]),
            Err(Error::NodeOutOfRange { node: 3, n: 3 })
        );
    }

    #[test]
    fn adjacency_is_sorted_and_symmetric() {
        let g = Graph::from_edges(4, [(3, 0), (0, 2), (1, 0)]).unwrap();
        assert_eq!(g.neighbors(0), &[1, 2, 3]);
        assert_eq!(g.neighbors(3), &[0]);
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(0, 1), (0, 2), (0, 3)]);
        assert_eq!(g.degree_histogram(), vec![0, 3, 0, 1]);
    }

    #[test]
    fn text_round_trip() {
        let g = Graph::cycle(5).unwrap();
        let text = g.to_text();
        assert!(text.starts_with("5 5\n"));
        assert_eq!(Graph::parse_text(&text).unwrap(), g);
    }

    #[test]
    fn text_errors() {
        assert!(Graph::parse_text("").is_err());
        assert!(Graph::parse_text("3 1\n0 x\n").is_err());
        assert!(Graph::parse_text("3 2\n0 1\n").is_err());
        assert!(Graph::parse_text("3 1\n0 1 2\n").is_err());
        assert!(Graph::parse_text("3 1\n2 2\n").is_err());
        assert!(matches!(
            Graph::parse_text("3 2\n0 1\n1 0\n"),
            Err(Error::Parse { line: 3, .. })
        ));
        assert!(matches!(Graph::parse_text("3 1\n0 3\n"), Err(Error::Parse { line: 2, .. })));
    }

    #[test]
    fn text_comments_are_skipped() {
        let g = Graph::parse_text("# ports: 0\n3 2\n\n0 1\n# mid\n1 2\n").unwrap();
        assert_eq!(g, Graph::path(3));
        assert_eq!(Graph::parse_text(&g.to_text()).unwrap(), g);
    }

    #[test]
    fn profile_text() {
        let p: Profile = "01001".parse().unwrap();
        assert_eq!(p, Profile::from_bits(&[0, 1, 0, 0, 1]));
        assert_eq!(p.to_string(), "01001");
        assert!("012".parse::<Profile>().is_err());
    }

    #[test]
    fn append_offsets_ids() {
        let mut g = Graph::path(2);
        let off = g.append(&Graph::path(3));
        assert_eq!(off, 2);
        assert_eq!(g.n(), 5);
        assert!(g.has_edge(2, 3) && g.has_edge(3, 4) && !g.has_edge(1, 2));
    }
}
