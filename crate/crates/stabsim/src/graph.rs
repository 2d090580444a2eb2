//! Undirected simple graphs with 1-based node ids, plus the edge-list file
//! format, seeded uniform G(n, m) generation, and bounded-radius
//! neighbourhood queries.
//!
//! Node ids are exactly `1..=n` and double as the tie-breaking priorities the
//! algorithms compare; only their relative order matters. Graphs are
//! immutable after construction and safe to share across concurrently
//! running simulations.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::collections::VecDeque;
use std::fmt::Write as _;
use thiserror::Error;

pub type NodeId = u32;

/// Errors constructing or generating a graph.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("node count must be at least 1")]
    EmptyGraph,
    #[error("node id {id} out of range 1..={n}")]
    NodeOutOfRange { id: u64, n: u32 },
    #[error("self-loop at node {0}")]
    SelfLoop(NodeId),
    #[error("duplicate edge {{{0}, {1}}}")]
    DuplicateEdge(NodeId, NodeId),
    #[error("requested {m} edges but a simple graph on {n} nodes has at most {max}")]
    TooManyEdges { n: u32, m: u64, max: u64 },
}

/// Errors while parsing the edge-list format; every variant names the
/// offending 1-based line.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("line {line}: expected header \"n m\"")]
    MalformedHeader { line: usize },
    #[error("line {line}: expected edge \"u v\"")]
    MalformedEdge { line: usize },
    #[error("line {line}: node id {id} out of range 1..={n}")]
    NodeOutOfRange { line: usize, id: i64, n: u32 },
    #[error("line {line}: self-loop at node {id}")]
    SelfLoop { line: usize, id: NodeId },
    #[error("line {line}: duplicate edge {u} {v}")]
    DuplicateEdge { line: usize, u: NodeId, v: NodeId },
    #[error("header declares {declared} edges, found {found}")]
    EdgeCountMismatch { declared: usize, found: usize },
}

/// An immutable undirected simple graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: u32,
    /// Normalised (u < v), sorted lexicographically.
    edges: Vec<(NodeId, NodeId)>,
    /// Sorted neighbour lists, indexed by `id - 1`.
    adj: Vec<Vec<NodeId>>,
}

impl Graph {
    /// Builds a graph from an edge list, validating the simple-graph
    /// invariants: ids in range, no self-loops, no duplicates.
    pub fn new(n: u32, edges: &[(NodeId, NodeId)]) -> Result<Self, GraphError> {
        if n == 0 {
            return Err(GraphError::EmptyGraph);
        }
        let mut norm: Vec<(NodeId, NodeId)> = Vec::with_capacity(edges.len());
        for &(u, v) in edges {
            if u == 0 || u > n {
                return Err(GraphError::NodeOutOfRange { id: u as u64, n });
            }
            if v == 0 || v > n {
                return Err(GraphError::NodeOutOfRange { id: v as u64, n });
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            norm.push((u.min(v), u.max(v)));
        }
        norm.sort_unstable();
        if let Some(w) = norm.windows(2).find(|w| w[0] == w[1]) {
            return Err(GraphError::DuplicateEdge(w[0].0, w[0].1));
        }
        let mut adj = vec![Vec::new(); n as usize];
        for &(u, v) in &norm {
            adj[(u - 1) as usize].push(v);
            adj[(v - 1) as usize].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(Graph {
            n,
            edges: norm,
            adj,
        })
    }

    /// Parses the edge-list format: a header line `n m`, then exactly `m`
    /// lines `u v`. Lines starting with `#` and blank lines are ignored.
    pub fn parse_edge_list(text: &str) -> Result<Self, ParseError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(idx, l)| (idx + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

        let (header_line, header) = lines
            .next()
            .ok_or(ParseError::MalformedHeader { line: 1 })?;
        let mut it = header.split_whitespace();
        let n: u32 = it
            .next()
            .and_then(|t| t.parse().ok())
            .filter(|&n| n >= 1)
            .ok_or(ParseError::MalformedHeader { line: header_line })?;
        let m: usize = it
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or(ParseError::MalformedHeader { line: header_line })?;
        if it.next().is_some() {
            return Err(ParseError::MalformedHeader { line: header_line });
        }

        let mut edges: Vec<(NodeId, NodeId)> = Vec::with_capacity(m);
        let mut seen: std::collections::HashSet<(NodeId, NodeId)> = Default::default();
        let mut found = 0usize;
        for (line, l) in lines {
            let mut it = l.split_whitespace();
            let u: i64 = it
                .next()
                .and_then(|t| t.parse().ok())
                .ok_or(ParseError::MalformedEdge { line })?;
            let v: i64 = it
                .next()
                .and_then(|t| t.parse().ok())
                .ok_or(ParseError::MalformedEdge { line })?;
            if it.next().is_some() {
                return Err(ParseError::MalformedEdge { line });
            }
            for id in [u, v] {
                if id < 1 || id > n as i64 {
                    return Err(ParseError::NodeOutOfRange { line, id, n });
                }
            }
            let (u, v) = (u as NodeId, v as NodeId);
            if u == v {
                return Err(ParseError::SelfLoop { line, id: u });
            }
            let key = (u.min(v), u.max(v));
            if !seen.insert(key) {
                return Err(ParseError::DuplicateEdge { line, u, v });
            }
            edges.push(key);
            found += 1;
            if found > m {
                return Err(ParseError::EdgeCountMismatch { declared: m, found });
            }
        }
        if found != m {
            return Err(ParseError::EdgeCountMismatch { declared: m, found });
        }
        Ok(Graph::new(n, &edges).expect("validated during parse"))
    }

    /// Serialises to the edge-list format; `parse_edge_list` round-trips it.
    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{} {}", self.n, self.edges.len());
        for &(u, v) in &self.edges {
            let _ = writeln!(out, "{u} {v}");
        }
        out
    }

    /// Samples a uniform simple graph with exactly `m` edges. The same
    /// `(n, m, seed)` always yields a bit-identical graph.
    pub fn gen_gnm(n: u32, m: u64, seed: u64) -> Result<Self, GraphError> {
        if n == 0 {
            return Err(GraphError::EmptyGraph);
        }
        let max = n as u64 * (n as u64 - 1) / 2;
        if m > max {
            return Err(GraphError::TooManyEdges { n, m, max });
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let picks = rand::seq::index::sample(&mut rng, max as usize, m as usize);
        let edges: Vec<(NodeId, NodeId)> = picks
            .iter()
            .map(|idx| edge_from_index(idx as u64))
            .collect();
        Graph::new(n, &edges)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn m(&self) -> u64 {
        self.edges.len() as u64
    }

    pub fn ids(&self) -> std::ops::RangeInclusive<NodeId> {
        1..=self.n
    }

    pub fn edges(&self) -> &[(NodeId, NodeId)] {
        &self.edges
    }

    pub fn adj(&self, i: NodeId) -> &[NodeId] {
        &self.adj[(i - 1) as usize]
    }

    pub fn degree(&self, i: NodeId) -> usize {
        self.adj(i).len()
    }

    pub fn has_edge(&self, u: NodeId, v: NodeId) -> bool {
        self.adj(u).binary_search(&v).is_ok()
    }

    /// All nodes `j != i` with `dist(i, j) <= k`, ascending. `k = 1` is the
    /// plain neighbour set; `i` itself is never included.
    ///
    /// Panics if `i` is not a node of this graph.
    pub fn k_neighborhood(&self, i: NodeId, k: u32) -> Vec<NodeId> {
        assert!(i >= 1 && i <= self.n, "unknown node id {i}");
        assert!(k >= 1, "radius must be at least 1");
        let mut dist = vec![u32::MAX; self.n as usize];
        dist[(i - 1) as usize] = 0;
        let mut queue = VecDeque::new();
        queue.push_back(i);
        let mut out = Vec::new();
        while let Some(u) = queue.pop_front() {
            let du = dist[(u - 1) as usize];
            if du == k {
                continue;
            }
            for &v in self.adj(u) {
                if dist[(v - 1) as usize] == u32::MAX {
                    dist[(v - 1) as usize] = du + 1;
                    out.push(v);
                    queue.push_back(v);
                }
            }
        }
        out.sort_unstable();
        out
    }
}

/// Decodes a linear index over the pairs {u, v}, 1 <= u < v <= n, ordered
/// (1,2), (1,3), (2,3), (1,4), ...
fn edge_from_index(idx: u64) -> (NodeId, NodeId) {
    // Largest r with r(r-1)/2 <= idx; then v = r + 1.
    let mut r = (((8.0 * idx as f64 + 1.0).sqrt() + 1.0) / 2.0) as u64;
    while r * (r - 1) / 2 > idx {
        r -= 1;
    }
    while (r + 1) * r / 2 <= idx {
        r += 1;
    }
    let u = idx - r * (r - 1) / 2 + 1;
    (u as NodeId, (r + 1) as NodeId)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_disjoint_edges() -> Graph {
        Graph::new(4, &[(1, 2), (3, 4)]).unwrap()
    }

    #[test]
    fn parses_two_disjoint_edges() {
        let g = Graph::parse_edge_list("4 2\n1 2\n3 4").unwrap();
        assert_eq!(g.n(), 4);
        assert_eq!(g.edges(), &[(1, 2), (3, 4)]);
        assert_eq!(g.adj(1), &[2]);
        assert_eq!(g.adj(3), &[4]);
    }

    #[test]
    fn parses_isolated_node_and_comments() {
        let g = Graph::parse_edge_list("# comment\n1 0\n").unwrap();
        assert_eq!(g.n(), 1);
        assert_eq!(g.m(), 0);
    }

    #[test]
    fn rejects_self_loop() {
        assert_eq!(
            Graph::parse_edge_list("2 1\n1 1"),
            Err(ParseError::SelfLoop { line: 2, id: 1 })
        );
    }

    #[test]
    fn rejects_duplicate_edge_even_reversed() {
        assert_eq!(
            Graph::parse_edge_list("3 2\n1 2\n2 1"),
            Err(ParseError::DuplicateEdge {
                line: 3,
                u: 2,
                v: 1
            })
        );
    }

    #[test]
    fn rejects_out_of_range_and_bad_header() {
        assert_eq!(
            Graph::parse_edge_list("2 1\n1 3"),
            Err(ParseError::NodeOutOfRange {
                line: 2,
                id: 3,
                n: 2
            })
        );
        assert_eq!(
            Graph::parse_edge_list("x y\n"),
            Err(ParseError::MalformedHeader { line: 1 })
        );
        assert_eq!(
            Graph::parse_edge_list("3 2\n1 2"),
            Err(ParseError::EdgeCountMismatch {
                declared: 2,
                found: 1
            })
        );
    }

    #[test]
    fn edge_list_round_trips() {
        let g = Graph::gen_gnm(9, 14, 7).unwrap();
        let back = Graph::parse_edge_list(&g.to_edge_list()).unwrap();
        assert_eq!(g, back);
    }

    #[test]
    fn gnm_forced_cases() {
        // 6 edges on 4 nodes force K4.
        let k4 = Graph::gen_gnm(4, 6, 123).unwrap();
        assert_eq!(k4.m(), 6);
        for i in 1..=4 {
            assert_eq!(k4.degree(i), 3);
        }
        let empty = Graph::gen_gnm(3, 0, 9).unwrap();
        assert_eq!(empty.m(), 0);
        assert!(Graph::gen_gnm(4, 7, 0).is_err());
    }

    #[test]
    fn gnm_is_deterministic() {
        let a = Graph::gen_gnm(10, 20, 1).unwrap();
        let b = Graph::gen_gnm(10, 20, 1).unwrap();
        assert_eq!(a, b);
        let c = Graph::gen_gnm(10, 20, 2).unwrap();
        assert_ne!(a.edges(), c.edges());
    }

    #[test]
    fn degree_sum_is_twice_edge_count() {
        let g = Graph::gen_gnm(12, 30, 4).unwrap();
        let sum: usize = g.ids().map(|i| g.degree(i)).sum();
        assert_eq!(sum as u64, 2 * g.m());
    }

    #[test]
    fn k_neighborhood_cases() {
        let path = Graph::new(3, &[(1, 2), (2, 3)]).unwrap();
        assert_eq!(path.k_neighborhood(1, 2), vec![2, 3]);
        assert_eq!(path.k_neighborhood(1, 1), vec![2]);

        let g4 = two_disjoint_edges();
        // Radius 4 still cannot leave the 2-node component.
        assert_eq!(g4.k_neighborhood(1, 4), vec![2]);

        let k2 = Graph::new(2, &[(1, 2)]).unwrap();
        assert_eq!(k2.k_neighborhood(1, 1), vec![2]);
    }

    #[test]
    fn k_neighborhood_matches_bfs_oracle() {
        // Independent oracle: Floyd-Warshall distances.
        let g = Graph::gen_gnm(12, 18, 42).unwrap();
        let n = g.n() as usize;
        let mut d = vec![vec![u32::MAX / 2; n]; n];
        for (i, row) in d.iter_mut().enumerate() {
            row[i] = 0;
        }
        for &(u, v) in g.edges() {
            d[(u - 1) as usize][(v - 1) as usize] = 1;
            d[(v - 1) as usize][(u - 1) as usize] = 1;
        }
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    d[i][j] = d[i][j].min(d[i][k] + d[k][j]);
                }
            }
        }
        for i in g.ids() {
            for k in 1..=4u32 {
                let expect: Vec<NodeId> = g
                    .ids()
                    .filter(|&j| j != i && d[(i - 1) as usize][(j - 1) as usize] <= k)
                    .collect();
                assert_eq!(g.k_neighborhood(i, k), expect, "node {i} radius {k}");
            }
        }
    }

    #[test]
    fn edge_index_decode_is_bijective() {
        let mut seen = std::collections::HashSet::new();
        for idx in 0..45u64 {
            let (u, v) = edge_from_index(idx);
            assert!(u < v && v <= 10);
            assert!(seen.insert((u, v)));
        }
    }
}
